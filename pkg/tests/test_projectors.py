import pytest

from chronokh.complex import chi_q_tl, simplify, trace
from chronokh.homology import EVEN, ODD
from chronokh.jones import jw_expansion
from chronokh.projectors import (ResourceLimit, WindowError, check_turnback_killing, colored_unknot,
                                 idempotence_check, p2_explicit, stable_h_min, twist_bound, twist_projector)


def test_explicit_p2_shape():
    P = p2_explicit(4)
    objs = P.summary()
    assert objs[-1] == (0, "1-4 2-3", 0)
    assert [(h, q) for h, _, q in objs[:-1]] == [(-4, -7), (-3, -5), (-2, -3), (-1, -1)]
    assert P.complex.d_squared_zero()


def test_bounds():
    assert twist_bound(2, 4) == -9
    assert stable_h_min(2, 4) == -3
    assert twist_projector(2, 4).window == (-3, 0)


@pytest.mark.parametrize("m", [2, 4, 6])
def test_twist_p2_kills_turnbacks(m):
    P = twist_projector(2, m)
    assert check_turnback_killing(P, 1)


def test_explicit_p2_kills_turnbacks():
    assert check_turnback_killing(p2_explicit(6), 1)


def test_p3_kills_both_turnbacks():
    P = twist_projector(3, 3)
    assert check_turnback_killing(P, 1) and check_turnback_killing(P, 2)


def test_p2_idempotent_in_window():
    assert idempotence_check(2, 3)


def test_p2_decategorifies_to_jw():
    P = twist_projector(2, 6)
    lo = P.q_bound + 1
    chi = chi_q_tl(P.complex)
    exp = jw_expansion(2, lo)
    for t, poly in exp.items():
        got = {k: v for k, v in chi.get(t, {}).items() if k >= lo and v}
        assert got == dict(poly)


def test_colored_unknot_even_and_odd():
    even = colored_unknot(2, 8, EVEN, (-5, 0)).as_dict()
    odd = colored_unknot(2, 8, ODD, (-5, 0)).as_dict()
    assert even[(-2, -4)] == (0, (2,))
    assert all(not t for _, t in odd.values())
    assert colored_unknot(1, spec=EVEN).as_dict() == {(0, 1): (1, ()), (0, -1): (1, ())}


def test_window_and_resource_errors():
    with pytest.raises(WindowError):
        colored_unknot(2, 4, EVEN, (-9, 0))
    with pytest.raises(ResourceLimit):
        twist_projector(4, 2)


def test_trace_reduces_strands():
    T = simplify(trace(twist_projector(2, 2).complex))
    assert T.n == 1
