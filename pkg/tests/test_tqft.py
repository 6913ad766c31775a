import random

import pytest

from chronokh import relations, tqft
from chronokh.ring import ONE, X, Y, Z, RingElem
from chronokh.tqft import LinearCombo, birth, death, dot, evaluate_cobordism, merge, split

P, M = 0, 1  # v+, v-


def _eval(events, labels, order):
    r = evaluate_cobordism(events, LinearCombo({tuple(labels): ONE}), order)
    return {k: v for k, v in r.items() if v}, r.order


def test_merge_values():
    out, order = _eval([merge("a", "b", "c")], (P, P), ["a", "b"])
    assert out == {(P,): ONE}
    out, _ = _eval([merge("a", "b", "c")], (M, P), ["a", "b"])
    assert out == {(M,): X * Z}
    out, _ = _eval([merge("a", "b", "c")], (M, M), ["a", "b"])
    assert out == {}


def test_split_values():
    out, order = _eval([split("a", "x", "y")], (P,), ["a"])
    assert order == ["x", "y"]
    assert out == {(M, P): ONE, (P, M): Y * Z}
    out, _ = _eval([split("a", "x", "y")], (M,), ["a"])
    assert out == {(M, M): ONE}


def test_unit_counit_dot():
    out, _ = _eval([birth("o")], (), [])
    assert out == {(P,): ONE}
    assert _eval([death("o")], (M,), ["o"])[0] == {(): ONE}
    assert _eval([death("o")], (P,), ["o"])[0] == {}
    assert _eval([dot("o")], (P,), ["o"])[0] == {(M,): ONE}


def test_neck_values():
    assert relations.neck(False) == {(M,): str(Z * (X + Y))}
    assert relations.neck(True) == {(M,): str(Z * (X * Y + ONE))}


def test_component_mismatch():
    with pytest.raises(ValueError):
        _eval([merge("a", "b", "c")], (P,), ["a"])


@pytest.mark.parametrize("seed", range(5))
def test_relations_with_spectators(seed):
    rng = random.Random(seed)
    order = relations.random_order(rng, ["c"])
    assert relations.sphere_S0([c for c in order if c != "o"])
    assert relations.sphere_S1(order)
    assert relations.two_dots(order, "c")
    assert relations.tube_cutting(order, "c")
    for kind in ("merge", "split", "death"):
        o = relations.random_order(rng, ["a", "b"]) if kind == "merge" else order
        if kind == "merge":
            o = ["a", "b"] + [c for c in o if c not in ("a", "b")]
        else:
            o = ["c"] + [c for c in o if c != "c"]
        assert relations.framing_flip(kind, o)


def test_corrupted_counit_is_detected(monkeypatch):
    def bad(labels, framing_mono):
        return [(1, framing_mono, ())]  # counit that forgets the label

    monkeypatch.setitem(tqft.LOCAL, "death", bad)
    assert not relations.sphere_S0([])
    assert relations.sphere_S1(["s"])  # this mutant survives S1
    assert not relations.tube_cutting(["c", "s"], "c")


def test_degree_shift_each_event():
    for ev, order in [(merge("a", "b", "c"), ["a", "b"]), (split("a", "x", "y"), ["a"]),
                      (birth("o"), ["s"]), (death("a"), ["a"]), (dot("a"), ["a", "s"])]:
        assert relations.degree_shift(ev, order)
