"""Weighted-cobordism grading shifts (W, v) and their composition.

W is a chronological event list on named circles, v a BiDegree.  Composing
(W1, v1) then (W2, v2) multiplies by gamma = lambda(|W2|, v1); tubes
(a split whose two pieces are merged straight back, or a merge split straight
back into the same number of pieces) are cut, each costing (-1, -1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Hashable, List, Sequence, Tuple

from .ring import BiDegree, Mono, lambda_mono
from .tqft import Event, merge, split


@dataclass(frozen=True)
class WeightedShift:
    events: Tuple[Event, ...] = ()
    v: BiDegree = BiDegree(0, 0)

    @property
    def degree(self) -> BiDegree:
        out = BiDegree(0, 0)
        for e in self.events:
            out = out + e.degree
        return out


def _rename(events: List[Event], ren: Dict[Hashable, Hashable]) -> List[Event]:
    def r(c):
        while c in ren:
            c = ren[c]
        return c
    return [Event(e.kind, tuple(r(c) for c in e.consumed), tuple(r(c) for c in e.produced), e.reversed)
            for e in events]


def cut_tubes(events: Sequence[Event]) -> Tuple[Tuple[Event, ...], int]:
    """Remove adjacent split/merge and merge/split pairs that form tubes.
    Returns (minimal events, number of tubes)."""
    evs = list(events)
    tubes = 0
    changed = True
    while changed:
        changed = False
        for k in range(len(evs) - 1):
            a, b = evs[k], evs[k + 1]
            if a.kind == "split" and b.kind == "merge" and set(a.produced) == set(b.consumed):
                # c -> (x, y) -> d: a cylinder with a handle
                rest = _rename(evs[k + 2:], {b.produced[0]: a.consumed[0]})
                evs = evs[:k] + rest
            elif a.kind == "merge" and b.kind == "split" and a.produced == b.consumed:
                # (x, y) -> c -> (x', y'): two sheets joined by a tube
                ren = {b.produced[0]: a.consumed[0], b.produced[1]: a.consumed[1]}
                evs = evs[:k] + _rename(evs[k + 2:], ren)
            else:
                continue
            tubes += 1
            changed = True
            break
    return tuple(evs), tubes


def compose_shifts(s1: WeightedShift, s2: WeightedShift) -> Tuple[WeightedShift, Mono]:
    """(W2, v2) o (W1, v1) reduced to a minimal cobordism, with the
    compatibility scalar gamma = lambda(|W2|, v1)."""
    gamma = lambda_mono(s2.degree, s1.v)
    evs, tubes = cut_tubes(s1.events + s2.events)
    v = s1.v + s2.v + BiDegree(-tubes, -tubes)
    return WeightedShift(evs, v), gamma


def mirror_event(e: Event) -> Event:
    flip = {"merge": "split", "split": "merge", "birth": "death", "death": "birth", "dot": "dot"}
    return Event(flip[e.kind], e.produced, e.consumed, e.reversed)


def mirror_shift(s: WeightedShift) -> WeightedShift:
    """Left inverse (mirror W, -v + tau(1, 1)) with tau the tubes of
    mirror(W) o W."""
    mw = tuple(mirror_event(e) for e in reversed(s.events))
    _, tau = cut_tubes(s.events + mw)
    return WeightedShift(mw, BiDegree(-s.v.first + tau, -s.v.second + tau))


__all__ = ["WeightedShift", "compose_shifts", "cut_tubes", "mirror_shift", "mirror_event", "merge", "split"]
