import pytest

from chronokh.planar import (ArityError, FlatTangle, identity_tangle, juxtapose, matchings, stack,
                             tl_generator, trace_closure)


def test_catalan_counts():
    assert [len(matchings(n)) for n in range(1, 6)] == [1, 2, 5, 14, 42]


def test_e1_shape():
    e = tl_generator(2, 1)
    assert e.partner == (1, 0, 3, 2)


def test_identity_is_neutral():
    for t in matchings(3):
        assert stack(identity_tangle(3), t)[0] == t
        assert stack(t, identity_tangle(3))[0] == t


def test_temperley_lieb_relations():
    e1, e2 = tl_generator(3, 1), tl_generator(3, 2)
    sq, loops = stack(e1, e1)
    assert sq == e1 and len(loops) == 1
    a, la = stack(e1, e2)
    b, lb = stack(a, e1)
    assert b == e1 and len(la) + len(lb) == 0


def test_trace_of_identity_and_cup():
    t, loops = trace_closure(identity_tangle(1))
    assert t.n == 0 and len(loops) == 1
    t, loops = trace_closure(tl_generator(2, 1))
    assert t == identity_tangle(1) and len(loops) == 0


def test_juxtapose_counts():
    t = juxtapose(tl_generator(2, 1), identity_tangle(1))
    assert t.n == 3
    assert t in matchings(3)


def test_bad_inputs():
    with pytest.raises(ArityError):
        stack(identity_tangle(2), identity_tangle(3))
    with pytest.raises(Exception):
        FlatTangle(2, (2, 3, 0, 1))  # crossing matching
