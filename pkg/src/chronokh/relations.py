"""Local relations of the TQFT as checkable predicates.

Each check evaluates event lists on every basis state of a random ordered
1-manifold (the active circle plus spectators) and compares maps after
transporting results back to the starting order with the braiding.
"""

from __future__ import annotations

import itertools
import random
from typing import Dict, Hashable, List, Sequence, Tuple

from .ring import BiDegree, ONE, RingElem, lambda_mono, mono_mul
from .tqft import (Event, LinearCombo, birth, braid_mono, death, dot, evaluate_cobordism, merge,
                   split)


def _as_map(events: Sequence[Event], order: Sequence[Hashable], final: Sequence[Hashable]):
    """{input labels: {output labels on `final`: coefficient}}, the output
    braided into `final` order."""
    out = {}
    for labs in itertools.product((0, 1), repeat=len(order)):
        r = evaluate_cobordism(events, LinearCombo({labs: ONE}), order)
        res: Dict[Tuple[int, ...], RingElem] = {}
        for k, v in r.items():
            lab = dict(zip(r.order, k))
            m = braid_mono(r.order, final, lab)
            key = tuple(lab[c] for c in final)
            res[key] = res.get(key, RingElem()) + v.mul_mono(m)
        out[labs] = {k: v for k, v in res.items() if v}
    return out


def _add_maps(a, b):
    out = {}
    for k in set(a) | set(b):
        col = dict(a.get(k, {}))
        for j, v in b.get(k, {}).items():
            col[j] = col.get(j, RingElem()) + v
        out[k] = {j: v for j, v in col.items() if v}
    return out


def _identity(order):
    return {labs: {labs: ONE} for labs in itertools.product((0, 1), repeat=len(order))}


def random_order(rng: random.Random, active: Sequence[Hashable], max_spect: int = 2) -> List[Hashable]:
    order = list(active) + [("s", k) for k in range(rng.randint(0, max_spect))]
    rng.shuffle(order)
    return order


# ---------------------------------------------------------------- sphere relations

def sphere_S0(order: Sequence[Hashable]) -> bool:
    """birth then death is zero."""
    m = _as_map([birth("o"), death("o")], order, order)
    return all(not col for col in m.values())


def sphere_S1(order: Sequence[Hashable]) -> bool:
    """birth, dot, death is the identity."""
    return _as_map([birth("o"), dot("o"), death("o")], order, order) == _identity(order)


def two_dots(order: Sequence[Hashable], c: Hashable) -> bool:
    m = _as_map([dot(c), dot(c)], order, order)
    return all(not col for col in m.values())


def tube_cutting(order: Sequence[Hashable], c: Hashable) -> bool:
    """dot, death, birth plus death, birth, dot is the identity on V."""
    a = _as_map([dot(c), death(c), birth(c)], order, order)
    b = _as_map([death(c), birth(c), dot(c)], order, order)
    return _add_maps(a, b) == _identity(order)


# ---------------------------------------------------------------- framing and degrees

def framing_flip(kind: str, order: Sequence[Hashable]) -> bool:
    """Reversing the framing multiplies merge by X, split by Y, death by Z."""
    mult = {"merge": (1, 0, 0), "split": (0, 1, 0), "death": (0, 0, 1)}[kind]
    if kind == "merge":
        a, b = order[0], order[1]
        mk = lambda rev: [merge(a, b, "m", rev)]  # noqa: E731
    elif kind == "split":
        mk = lambda rev: [split(order[0], "p", "r", rev)]  # noqa: E731
    else:
        mk = lambda rev: [death(order[0], rev)]  # noqa: E731
    final = _final(mk(False), order)
    plain = _as_map(mk(False), order, final)
    flipped = _as_map(mk(True), order, final)
    scaled = {k: {j: v.mul_mono(mult) for j, v in col.items()} for k, col in plain.items()}
    return scaled == flipped


def _final(events, order):
    from .tqft import next_order
    o = list(order)
    for e in events:
        o = next_order(e, o)
    return o


def neck(framing_split: bool = False):
    """split then merge of the pieces on one circle: v+ -> Z(X+Y) v-, or
    Z(XY+1) v- with the split framing reversed."""
    r = evaluate_cobordism([split(0, "a", "b", framing_split), merge("a", "b", "c")],
                           LinearCombo({(0,): ONE}), [0])
    return {k: str(v) for k, v in r.items()}


def degree_shift(ev: Event, order: Sequence[Hashable]) -> bool:
    """Every nonzero output has deg_R = input deg_R + |W|."""
    final = _final([ev], order)
    m = _as_map([ev], order, final)
    d = ev.degree
    for labs, col in m.items():
        din = BiDegree(sum(1 for x in labs if x == 0), -sum(labs))
        for out in col:
            dout = BiDegree(sum(1 for x in out if x == 0), -sum(out))
            if dout != din + d:
                return False
    return True


# ---------------------------------------------------------------- lambda

def lambda_bilinear(u, u2, v) -> bool:
    lhs = lambda_mono((u[0] + u2[0], u[1] + u2[1]), v)
    rhs = mono_mul(lambda_mono(u, v), lambda_mono(u2, v))
    lhs2 = lambda_mono(v, (u[0] + u2[0], u[1] + u2[1]))
    rhs2 = mono_mul(lambda_mono(v, u), lambda_mono(v, u2))
    return lhs == rhs and lhs2 == rhs2


def lambda_antisymmetric(u, v) -> bool:
    return mono_mul(lambda_mono(u, v), lambda_mono(v, u)) == (0, 0, 0)


__all__ = [
    "sphere_S0", "sphere_S1", "two_dots", "tube_cutting", "framing_flip", "neck", "degree_shift",
    "lambda_bilinear", "lambda_antisymmetric", "random_order",
]
