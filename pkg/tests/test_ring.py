import pytest

from chronokh.ring import (EVEN, MOD2, ODD, ONE, X, Y, Z, ZINV, BiDegree, RingElem, lam, lambda_mono,
                           parse_elem)


def test_relations_of_generators():
    assert X * X == ONE
    assert Y * Y == ONE
    assert Z * ZINV == ONE
    assert (X * Y).is_unit()
    assert not (ONE + X * Y).is_unit()


def test_one_plus_xy_annihilates_one_minus_xy():
    a = ONE + X * Y
    b = ONE - X * Y
    assert (a * b).is_zero()
    assert a * a == a + a


def test_lambda_values():
    assert lam((1, 0), (1, 0)) == X
    assert lam((0, -1), (0, -1)) == Y
    assert lam((1, 0), (0, -1)) == ZINV
    assert lam((0, -1), (1, 0)) == Z
    assert lambda_mono(BiDegree(2, 3), BiDegree(0, 0)) == (0, 0, 0)


@pytest.mark.parametrize("spec, values", [(EVEN, (1, 1, 1)), (ODD, (1, -1, 1)), (MOD2, (1, 1, 1))])
def test_specialization_of_generators(spec, values):
    got = tuple(g.specialize(spec) for g in (X, Y, Z))
    if spec == MOD2:
        got = tuple(v % 2 for v in got)
    assert got == values


def test_one_plus_xy_specializations():
    e = ONE + X * Y
    assert e.specialize(EVEN) == 2
    assert e.specialize(ODD) == 0


def test_parse_round_trip():
    for text in ["1", "X", "-Y", "Z^-1", "1 + X*Y", "2*X*Y*Z^3 - Z", "-2*X*Z^-3 + 1"]:
        e = parse_elem(text)
        assert parse_elem(str(e)) == e


def test_inverse_of_unit():
    u = RingElem.mono((1, 1, 3)) * RingElem.const(-1)
    assert u.is_unit()
    assert u * u.inverse() == ONE
    with pytest.raises(Exception):
        (ONE + X).inverse()


def test_bidegree_arithmetic():
    a, b = BiDegree(1, -2), BiDegree(3, 4)
    assert (a + b).as_tuple() == (4, 2)
    assert (a - b) == -(b - a)
    assert a.q() == -1
