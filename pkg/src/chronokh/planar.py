"""Flat diskular tangles, crossingless matchings and closed 1-manifolds.

Boundary points are numbered 1..2n counterclockwise from a basepoint at the
top right corner of the rectangle view: 1..n run along the top from right to
left, n+1..2n along the bottom from left to right.  Strand k (counted from
the left) therefore meets the top at point n+1-k and the bottom at n+k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple


class ArityError(ValueError):
    pass


def _check_planar(partner: Sequence[int]) -> None:
    m = len(partner)
    for i in range(m):
        j = partner[i]
        if not (0 <= j < m) or j == i or partner[j] != i:
            raise ValueError(f"not a perfect matching: {partner}")
    stack: List[int] = []
    for i in range(m):
        if i < partner[i]:
            stack.append(partner[i])
        elif not stack or stack.pop() != i:
            raise ValueError(f"matching is not planar: {pairs_of(partner)}")


def pairs_of(partner: Sequence[int]) -> Tuple[Tuple[int, int], ...]:
    """1-based matched pairs, sorted."""
    return tuple((i + 1, j + 1) for i, j in enumerate(partner) if i < j)


def partner_from_pairs(n: int, pairs) -> Tuple[int, ...]:
    p = [-1] * (2 * n)
    for a, b in pairs:
        a, b = int(a) - 1, int(b) - 1
        if p[a] != -1 or p[b] != -1:
            raise ValueError(f"point matched twice in {pairs}")
        p[a], p[b] = b, a
    if -1 in p:
        raise ValueError(f"matching misses points: {pairs}")
    return tuple(p)


@dataclass(frozen=True, order=True)
class FlatTangle:
    n: int
    partner: Tuple[int, ...]
    free_loops: int = 0

    def __post_init__(self):
        if len(self.partner) != 2 * self.n:
            raise ArityError(f"matching of length {len(self.partner)} for n={self.n}")
        _check_planar(self.partner)

    @staticmethod
    def from_pairs(n: int, pairs, free_loops: int = 0) -> "FlatTangle":
        return FlatTangle(n, partner_from_pairs(n, pairs), free_loops)

    @staticmethod
    def from_flat(n: int, flat: Sequence[int]) -> "FlatTangle":
        if len(flat) != 2 * n:
            raise ArityError("matching array must list 2n points")
        return FlatTangle.from_pairs(n, list(zip(flat[0::2], flat[1::2])))

    @property
    def pairs(self) -> Tuple[Tuple[int, int], ...]:
        return pairs_of(self.partner)

    def to_flat(self) -> List[int]:
        return [x for pr in self.pairs for x in pr]

    def without_loops(self) -> "FlatTangle":
        return FlatTangle(self.n, self.partner, 0)

    def __str__(self) -> str:
        s = " ".join(f"{a}-{b}" for a, b in self.pairs) or "empty"
        return s + (f" +{self.free_loops}o" if self.free_loops else "")


def identity_tangle(n: int) -> FlatTangle:
    if n < 0:
        raise ArityError("n must be nonnegative")
    return FlatTangle.from_pairs(n, [(i, 2 * n + 1 - i) for i in range(1, n + 1)])


def tl_generator(n: int, i: int) -> FlatTangle:
    if not 1 <= i <= n - 1:
        raise ArityError(f"e_{i} does not exist in TL_{n}")
    pairs = [(n + 1 - i, n - i), (n + i, n + i + 1)]
    for k in range(1, n + 1):
        if k not in (i, i + 1):
            pairs.append((n + 1 - k, n + k))
    return FlatTangle.from_pairs(n, pairs)


def through_degree(t: FlatTangle) -> int:
    return sum(1 for a, b in t.pairs if (a <= t.n) != (b <= t.n))


@lru_cache(maxsize=None)
def matchings(n: int) -> Tuple[FlatTangle, ...]:
    """All crossingless matchings of 2n points (the closures B_n), sorted."""

    def gen(pts: Tuple[int, ...]):
        if not pts:
            yield ()
            return
        a = pts[0]
        for k in range(1, len(pts), 2):
            b = pts[k]
            for inner in gen(pts[1:k]):
                for outer in gen(pts[k + 1:]):
                    yield ((a, b),) + inner + outer

    out = [FlatTangle.from_pairs(n, prs) for prs in gen(tuple(range(1, 2 * n + 1)))]
    return tuple(sorted(out, key=lambda t: t.partner))


# ---------------------------------------------------------------- closures

@dataclass(frozen=True)
class Loop:
    ident: Tuple
    arcs: Tuple[Tuple[str, int, int], ...]


@dataclass
class ClosedOneManifold:
    loops: List[Loop] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.loops)


def closure_circles(t_partner: Sequence[int], b_partner: Sequence[int]) -> List[Tuple[int, ...]]:
    """Circles of t glued to b, each as the cyclic list of 0-based points
    visited (starting at its least point); sorted by least point."""
    m = len(t_partner)
    seen = [False] * m
    circles = []
    for start in range(m):
        if seen[start]:
            continue
        cyc = []
        p = start
        while True:
            seen[p] = True
            cyc.append(p)
            q = t_partner[p]
            seen[q] = True
            cyc.append(q)
            p = b_partner[q]
            if p == start:
                break
        circles.append(tuple(cyc))
    return circles


def close(t: FlatTangle, b: FlatTangle) -> ClosedOneManifold:
    if t.n != b.n:
        raise ArityError(f"cannot close a {t.n}-tangle with a {b.n}-matching")
    loops = [Loop(("free", k), (("loop", k, k),)) for k in range(t.free_loops)]
    for cyc in closure_circles(t.partner, b.partner):
        arcs = []
        for k in range(0, len(cyc), 2):
            arcs.append(("t", cyc[k] + 1, cyc[k + 1] + 1))
            nxt = cyc[(k + 2) % len(cyc)]
            arcs.append(("b", cyc[k + 1] + 1, nxt + 1))
        loops.append(Loop(("pt", cyc[0] + 1), tuple(arcs)))
    return ClosedOneManifold(loops)


# ---------------------------------------------------------------- composition

@dataclass(frozen=True)
class LoopRecord:
    """Closed components created by a composition, each listed by the arcs
    (source tag, endpoint, endpoint) it was made of."""

    loops: Tuple[Tuple[Tuple[str, int, int], ...], ...] = ()

    def __len__(self) -> int:
        return len(self.loops)


def _glue(n: int, top: Sequence[int], bottom: Sequence[int]):
    """Stack `top` over `bottom` (partners, 0-based).  Returns the composite
    partner and the list of closed loops made of middle arcs."""
    # nodes: ('T', p) points of top, ('B', p) points of bottom
    # top's bottom point n+j (x=j) meets bottom's top point at x=j: n+1-j
    def mid_top_to_bottom(p: int) -> int:  # p: 0-based top point in n..2n-1
        j = p - n + 1
        return n - j

    def mid_bottom_to_top(p: int) -> int:  # p: 0-based bottom point in 0..n-1
        j = n - p
        return n + j - 1

    result = [-1] * (2 * n)
    used_top = [False] * (2 * n)
    used_bot = [False] * (2 * n)

    def walk(side: str, p: int):
        arcs = []
        while True:
            if side == "T":
                used_top[p] = True
                q = top[p]
                used_top[q] = True
                arcs.append(("top", p + 1, q + 1))
                if q < n:
                    return ("T", q), arcs
                side, p = "B", mid_top_to_bottom(q)
            else:
                used_bot[p] = True
                q = bottom[p]
                used_bot[q] = True
                arcs.append(("bottom", p + 1, q + 1))
                if q >= n:
                    return ("B", q), arcs
                side, p = "T", mid_bottom_to_top(q)

    for p in range(n):
        if result[p] == -1:
            (_, q), _ = walk("T", p)
            result[p] = q
            result[q] = p
    for p in range(n, 2 * n):
        if result[p] == -1:
            (_, q), _ = walk("B", p)
            result[p] = q
            result[q] = p
    loops = []
    for p in range(n, 2 * n):
        if not used_top[p]:
            # loop through the middle: follow from top's lower point p
            arcs = []
            side, cur = "T", p
            start = (side, cur)
            while True:
                if side == "T":
                    used_top[cur] = True
                    q = top[cur]
                    used_top[q] = True
                    arcs.append(("top", cur + 1, q + 1))
                    side, cur = "B", mid_top_to_bottom(q)
                else:
                    used_bot[cur] = True
                    q = bottom[cur]
                    used_bot[q] = True
                    arcs.append(("bottom", cur + 1, q + 1))
                    side, cur = "T", mid_bottom_to_top(q)
                if (side, cur) == start:
                    break
            loops.append(tuple(arcs))
    return tuple(result), loops


def stack(t: FlatTangle, s: FlatTangle) -> Tuple[FlatTangle, LoopRecord]:
    """Put t on top of s.  New closed components are returned, not stored."""
    if t.n != s.n:
        raise ArityError(f"cannot stack {t.n}-tangle on {s.n}-tangle")
    partner, loops = _glue(t.n, t.partner, s.partner)
    extra = [(("loop", k, k),) for k in range(t.free_loops + s.free_loops)]
    return FlatTangle(t.n, partner), LoopRecord(tuple(extra) + tuple(loops))


def trace_closure(t: FlatTangle) -> Tuple[FlatTangle, LoopRecord]:
    """Close the rightmost strand pair (points 1 and 2n) around the right."""
    n = t.n
    if n < 1:
        raise ArityError("trace needs n >= 1")
    m = 2 * n
    # outer arc joins 0 and m-1
    newp: Dict[int, int] = {}
    loops = []
    p = t.partner
    if p[0] == m - 1:
        loops.append((("t", 1, m), ("trace", m, 1)))
    else:
        a, c = p[0], p[m - 1]
        newp[a] = c
        newp[c] = a
    for i in range(1, m - 1):
        if i not in newp and p[i] not in (0, m - 1):
            newp[i] = p[i]
    partner = tuple(newp[i] - 1 for i in range(1, m - 1))
    extra = tuple((("loop", k, k),) for k in range(t.free_loops))
    return FlatTangle(n - 1, partner), LoopRecord(extra + tuple(loops))


def juxtapose(t: FlatTangle, s: FlatTangle) -> FlatTangle:
    """t on the left, s on the right."""
    m, n = t.n, s.n
    N = m + n

    def from_t(p: int) -> int:  # 1-based point of t -> composite
        return p + n if p <= m else N + (p - m)

    def from_s(p: int) -> int:
        return p if p <= n else N + m + (p - n)

    pairs = [(from_t(a), from_t(b)) for a, b in t.pairs]
    pairs += [(from_s(a), from_s(b)) for a, b in s.pairs]
    return FlatTangle.from_pairs(N, pairs, t.free_loops + s.free_loops)


def compose_loops(t: FlatTangle, s: FlatTangle) -> int:
    out, rec = stack(t, s)
    return len(rec)


def ascii_tangle(t: FlatTangle) -> str:
    """Small debug rendering: the matching as text."""
    return f"<{t.n}: {t}>"
