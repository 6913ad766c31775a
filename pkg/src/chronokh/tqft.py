"""The unified TQFT on ordered closed 1-manifolds.

F(S) for a closed 1-manifold with k ordered circles is V^{(x)k} with
V = R<v+, v->, deg v+ = (1, 0), deg v- = (0, -1).  A basis tensor is an
integer whose bit i is 0 for v+ and 1 for v- on circle i.  Reordering
circles uses the symmetric braiding u (x) w -> lambda(|u|, |w|) w (x) u, so
every elementary cobordism is evaluated by moving its circles to the front,
acting there and moving the result back.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from .linalg import Mat
from .ring import BiDegree, Mono, RingElem, lambda_mono, mono_mul

PLUS, MINUS = 0, 1
LABEL_DEG = {PLUS: (1, 0), MINUS: (0, -1)}
# LAM[a][b] = lambda(deg a, deg b)
LAM = [[lambda_mono(LABEL_DEG[a], LABEL_DEG[b]) for b in (PLUS, MINUS)] for a in (PLUS, MINUS)]

XM: Mono = (1, 0, 0)
YM: Mono = (0, 1, 0)
ZM: Mono = (0, 0, 1)
XZ: Mono = (1, 0, 1)
YZ: Mono = (0, 1, 1)
ONE_M: Mono = (0, 0, 0)

# elementary degrees |W|
DEG = {
    "merge": BiDegree(-1, 0),
    "split": BiDegree(0, -1),
    "birth": BiDegree(1, 0),
    "death": BiDegree(0, 1),
    "dot": BiDegree(-1, -1),
}

Term = Tuple[int, Mono, Tuple[int, ...]]  # sign, monomial, produced labels


def _merge(labels, framing_mono: Mono) -> List[Term]:
    a, b = labels
    if a == PLUS and b == PLUS:
        out = [(1, ONE_M, (PLUS,))]
    elif a == PLUS and b == MINUS:
        out = [(1, ONE_M, (MINUS,))]
    elif a == MINUS and b == PLUS:
        out = [(1, XZ, (MINUS,))]
    else:
        out = []
    return [(s, mono_mul(m, framing_mono), l) for s, m, l in out]


def _split(labels, framing_mono: Mono) -> List[Term]:
    (a,) = labels
    if a == PLUS:
        out = [(1, ONE_M, (MINUS, PLUS)), (1, YZ, (PLUS, MINUS))]
    else:
        out = [(1, ONE_M, (MINUS, MINUS))]
    return [(s, mono_mul(m, framing_mono), l) for s, m, l in out]


def _birth(labels, framing_mono: Mono) -> List[Term]:
    return [(1, framing_mono, (PLUS,))]


def _death(labels, framing_mono: Mono) -> List[Term]:
    (a,) = labels
    return [(1, framing_mono, ())] if a == MINUS else []


def _dot(labels, framing_mono: Mono) -> List[Term]:
    (a,) = labels
    return [(1, framing_mono, (MINUS,))] if a == PLUS else []


LOCAL = {"merge": _merge, "split": _split, "birth": _birth, "death": _death, "dot": _dot}
# reversed framing multipliers
REVERSED = {"merge": XM, "split": YM, "death": ZM, "birth": ONE_M, "dot": ONE_M}


def braid_mono(old: Sequence[Hashable], new: Sequence[Hashable], labels: Dict[Hashable, int]) -> Mono:
    """Scalar of the braiding that reorders circles from `old` to `new`."""
    pos = {c: k for k, c in enumerate(new)}
    x = y = z = 0
    seq = [pos[c] for c in old]
    labs = [labels[c] for c in old]
    n = len(seq)
    for i in range(n):
        pi, li = seq[i], labs[i]
        row = LAM[li]
        for j in range(i + 1, n):
            if seq[j] < pi:
                m = row[labs[j]]
                x ^= m[0]
                y ^= m[1]
                z += m[2]
    return (x, y, z)


@dataclass(frozen=True)
class Event:
    """One elementary cobordism acting on named circles.

    kind: merge (consumes first, second; produces one), split (consumes one;
    produces first, second), birth, death, dot.  ``reversed`` flips the
    framing.
    """

    kind: str
    consumed: Tuple[Hashable, ...]
    produced: Tuple[Hashable, ...]
    reversed: bool = False

    @property
    def degree(self) -> BiDegree:
        return DEG[self.kind]


def merge(first, second, into, reversed: bool = False) -> Event:
    return Event("merge", (first, second), (into,), reversed)


def split(circle, first, second, reversed: bool = False) -> Event:
    return Event("split", (circle,), (first, second), reversed)


def birth(circle) -> Event:
    return Event("birth", (), (circle,))


def death(circle, reversed: bool = False) -> Event:
    return Event("death", (circle,), (), reversed)


def dot(circle, into=None) -> Event:
    return Event("dot", (circle,), (circle if into is None else into,))


def apply_event(ev: Event, order: Sequence[Hashable], labels: Dict[Hashable, int],
                new_order: Sequence[Hashable]) -> List[Tuple[int, Mono, Dict[Hashable, int]]]:
    """Apply one event to a basis tensor (given as labels on `order`).
    Returns terms (sign, monomial, labels on `new_order`)."""
    consumed = ev.consumed
    rest = [c for c in order if c not in consumed]
    front = list(consumed) + rest
    m1 = braid_mono(order, front, labels)
    fm = REVERSED[ev.kind] if ev.reversed else ONE_M
    out = []
    for s, m, prod in LOCAL[ev.kind](tuple(labels[c] for c in consumed), fm):
        lab2 = {c: labels[c] for c in rest}
        for c, l in zip(ev.produced, prod):
            lab2[c] = l
        seq2 = list(ev.produced) + rest
        m2 = braid_mono(seq2, new_order, lab2)
        out.append((s, mono_mul(mono_mul(m1, m), m2), lab2))
    return out


def index_of(order: Sequence[Hashable], labels: Dict[Hashable, int]) -> int:
    idx = 0
    for k, c in enumerate(order):
        if labels[c]:
            idx |= 1 << k
    return idx


def labels_of(order: Sequence[Hashable], idx: int) -> Dict[Hashable, int]:
    return {c: (idx >> k) & 1 for k, c in enumerate(order)}


def evaluate(events: Sequence[Event], orders: Sequence[Sequence[Hashable]], vec: Dict[int, RingElem]) -> Dict[int, RingElem]:
    """Evaluate a chronological cobordism on a vector.

    orders[0] is the circle order of the source, orders[k] the order after
    the k-th event.  Vectors are {basis index: coefficient}.
    """
    if len(orders) != len(events) + 1:
        raise ValueError("need one circle order per intermediate slice")
    cur = dict(vec)
    for ev, o_in, o_out in zip(events, orders, orders[1:]):
        known = set(o_in)
        for c in ev.consumed:
            if c not in known:
                raise ValueError(f"event {ev.kind} consumes unknown circle {c!r}")
        if len(set(ev.consumed)) != len(ev.consumed):
            raise ValueError(f"event {ev.kind} needs distinct circles")
        expect = (known - set(ev.consumed)) | set(ev.produced)
        if expect != set(o_out):
            raise ValueError(f"component mismatch after {ev.kind}")
        nxt: Dict[int, RingElem] = {}
        for idx, coeff in cur.items():
            for s, m, lab in apply_event(ev, o_in, labels_of(o_in, idx), o_out):
                j = index_of(o_out, lab)
                v = coeff.mul_mono(m, s)
                w = nxt.get(j)
                nxt[j] = v if w is None else w + v
        cur = {j: v for j, v in nxt.items() if v}
    return cur


def event_matrix(ev: Event, o_in: Sequence[Hashable], o_out: Sequence[Hashable]) -> Mat:
    cols: Dict[int, Dict[int, RingElem]] = {}
    for idx in range(1 << len(o_in)):
        col: Dict[int, RingElem] = {}
        for s, m, lab in apply_event(ev, o_in, labels_of(o_in, idx), o_out):
            j = index_of(o_out, lab)
            v = RingElem.mono(m, s)
            w = col.get(j)
            col[j] = v if w is None else w + v
        col = {j: v for j, v in col.items() if v}
        if col:
            cols[idx] = col
    return Mat(1 << len(o_out), 1 << len(o_in), cols)


def cobordism_matrix(events: Sequence[Event], orders: Sequence[Sequence[Hashable]]) -> Mat:
    m = Mat.identity(1 << len(orders[0]))
    for ev, a, b in zip(events, orders, orders[1:]):
        m = event_matrix(ev, a, b) @ m
    return m


def permutation_matrix(old: Sequence[Hashable], new: Sequence[Hashable]) -> Mat:
    """The braiding isomorphism F(old order) -> F(new order)."""
    cols = {}
    for idx in range(1 << len(old)):
        lab = labels_of(old, idx)
        m = braid_mono(old, new, lab)
        cols[idx] = {index_of(new, lab): RingElem.mono(m)}
    return Mat(1 << len(new), 1 << len(old), cols)


def q_degree(idx: int, k: int) -> int:
    """#v+ - #v- of a basis tensor on k circles."""
    minus = bin(idx).count("1")
    return (k - minus) - minus


def r_degree(idx: int, k: int) -> BiDegree:
    minus = bin(idx).count("1")
    return BiDegree(k - minus, -minus)


# ------------------------------------------------------------ spec-facing API

class LinearCombo(dict):
    """{tuple of labels on ordered circles: RingElem}."""


def _combo_apply(ev: Event, s: Dict[Tuple[int, ...], RingElem], order, new_order) -> LinearCombo:
    out = LinearCombo()
    for labs, coeff in s.items():
        for sg, m, lab in apply_event(ev, order, dict(zip(order, labs)), new_order):
            key = tuple(lab[c] for c in new_order)
            v = coeff.mul_mono(m, sg)
            w = out.get(key)
            out[key] = v if w is None else w + v
    return LinearCombo({k: v for k, v in out.items() if v})


def apply_merge(s, first_loop: int, second_loop: int, framing: str = "canonical", k: Optional[int] = None) -> LinearCombo:
    """Merge circles at positions first_loop, second_loop of a k-circle state;
    the result sits at the smaller position."""
    if first_loop == second_loop:
        raise ValueError("merge needs two distinct circles")
    k = k if k is not None else len(next(iter(s))) if s else 2
    order = list(range(k))
    into = ("m", min(first_loop, second_loop))
    new_order = [into if c == min(first_loop, second_loop) else c for c in order if c != max(first_loop, second_loop)]
    ev = merge(first_loop, second_loop, into, framing == "reversed")
    return _combo_apply(ev, s, order, new_order)


def apply_split(s, loop: int, framing: str = "canonical", k: Optional[int] = None) -> LinearCombo:
    """Split the circle at `loop` into two adjacent circles (first, second)."""
    k = k if k is not None else len(next(iter(s))) if s else 1
    order = list(range(k))
    a, b = ("s", loop, 0), ("s", loop, 1)
    new_order = []
    for c in order:
        new_order.extend([a, b] if c == loop else [c])
    ev = split(loop, a, b, framing == "reversed")
    return _combo_apply(ev, s, order, new_order)


def apply_birth(s, k: Optional[int] = None) -> LinearCombo:
    """Birth a new circle at the front."""
    k = k if k is not None else len(next(iter(s))) if s else 0
    order = list(range(k))
    return _combo_apply(birth("new"), s, order, ["new"] + order)


def apply_death(s, loop: int, framing: str = "canonical", k: Optional[int] = None) -> LinearCombo:
    k = k if k is not None else len(next(iter(s))) if s else 1
    order = list(range(k))
    return _combo_apply(death(loop, framing == "reversed"), s, order, [c for c in order if c != loop])


def apply_dot(s, loop: int, k: Optional[int] = None) -> LinearCombo:
    k = k if k is not None else len(next(iter(s))) if s else 1
    order = list(range(k))
    return _combo_apply(dot(loop), s, order, order)


def next_order(ev: Event, order: Sequence[Hashable]) -> List[Hashable]:
    """Circle order after an event: products take the slot of the first
    consumed circle, births go to the front."""
    if not ev.consumed:
        return list(ev.produced) + list(order)
    out: List[Hashable] = []
    for c in order:
        if c == ev.consumed[0]:
            out.extend(ev.produced)
        elif c not in ev.consumed:
            out.append(c)
    return out


def evaluate_cobordism(events: Sequence[Event], s, order: Optional[Sequence[Hashable]] = None) -> LinearCombo:
    """Apply events left to right to a LinearCombo keyed by label tuples on
    `order` (default: circles 0..k-1).  The result carries its circle order
    in ``.order``."""
    if order is None:
        k = len(next(iter(s))) if s else 0
        order = list(range(k))
    cur = LinearCombo(s)
    order = list(order)
    for ev in events:
        missing = [c for c in ev.consumed if c not in order]
        if missing or len(set(ev.consumed)) != len(ev.consumed):
            raise ValueError(f"component mismatch: {ev.kind} on {ev.consumed} with circles {order}")
        new = next_order(ev, order)
        cur = _combo_apply(ev, cur, order, new)
        order = new
    cur.order = order  # type: ignore[attr-defined]
    return cur
