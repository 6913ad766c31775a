"""The cube of resolutions with chronology scalars.

Edge (v, j) carries sign(v, j) * iota(v, j) * F(s_j), evaluated on every
closure.  iota is the scalar of the change of chronology that moves s_j from
its slot in W_v (saddles in increasing crossing order) to the front: a product
of exchange scalars r with F(s_j) F(s_i) = r F(s_i) F(s_j), taken over the
earlier saddles i < j.  Each exchange scalar is read off the evaluated maps.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .complex import GradedComplex, GradedObject, closed_circles, closure_list
from .diagrams import REVERSED, Resolution, TangleDiagram, resolve
from .linalg import Mat
from .planar import FlatTangle
from .ring import BiDegree, Mono, RingElem, lambda_mono, mono_inv, mono_mul
from .tqft import DEG, event_matrix, merge, split

MERGE, SPLIT = "merge", "split"


class CubeError(RuntimeError):
    pass


def edge_sign(v: Sequence[int], j: int, c: Optional[int] = None) -> int:
    """(-1)^(number of 1s after position j); j is 0-based."""
    return -1 if sum(v[j + 1:]) % 2 else 1


def chronology_Wv(v: Sequence[int]) -> List[int]:
    """Saddles of W_v: the 0-positions of v in increasing order (0-based)."""
    return [i for i, b in enumerate(v) if b == 0]


def _flip(v: Tuple[int, ...], j: int) -> Tuple[int, ...]:
    return v[:j] + (1 - v[j],) + v[j + 1:]


class Cube:
    """Resolutions, circles and edge maps of a diagram, per closure."""

    def __init__(self, d: TangleDiagram):
        self.d = d
        self.closures = closure_list(d.n)
        self._res: Dict[Tuple[int, ...], Resolution] = {}
        self._circ: Dict[Tuple, Tuple[list, dict]] = {}
        self._edge: Dict[Tuple, Tuple[Mat, str]] = {}
        self._ratio: Dict[Tuple, Mono] = {}

    def resolution(self, v) -> Resolution:
        v = tuple(v)
        r = self._res.get(v)
        if r is None:
            r = self._res[v] = resolve(self.d, v)
        return r

    def circles(self, v, ci: int):
        """(ordered circle keys, {smoothing arc: key}) of close(T_v, b)."""
        key = (tuple(v), ci)
        hit = self._circ.get(key)
        if hit is not None:
            return hit
        r = self.resolution(v)
        b = self.closures[ci]
        keys: list = [("L", i) for i in range(self.d.loops)]
        where: dict = {}
        for cyc in r.cycles:
            k = ("C", frozenset(cyc))
            keys.append(k)
            for a in cyc:
                where[a] = k
        for pts in closed_circles(r.tangle.partner, b.partner):
            arcs = []
            for i in range(0, len(pts), 2):
                arcs.extend(r.paths[pts[i]])
            k = ("P", frozenset(arcs), frozenset(pts))
            keys.append(k)
            for a in arcs:
                where[a] = k
        self._circ[key] = (keys, where)
        return keys, where

    def saddle_type(self, v, j: int, ci: int = 0) -> str:
        _, where = self.circles(v, ci)
        return MERGE if where[(j, 0, 1)] != where[(j, 2, 3)] else SPLIT

    def saddle_map(self, v, j: int, ci: int) -> Tuple[Mat, str]:
        """F(s_j) from close(T_v, b) to close(T_{v+e_j}, b), unscaled."""
        v = tuple(v)
        key = (v, j, ci)
        hit = self._edge.get(key)
        if hit is not None:
            return hit
        if v[j]:
            raise CubeError("saddle needs v_j = 0")
        w = _flip(v, j)
        src, ws = self.circles(v, ci)
        tgt, wt = self.circles(w, ci)
        rev = self.d.crossings[j].framing == REVERSED
        a, b = ws[(j, 0, 1)], ws[(j, 2, 3)]
        if a != b:
            ev = merge(a, b, wt[(j, 0, 3)], rev)
            kind = MERGE
        else:
            ev = split(a, wt[(j, 0, 3)], wt[(j, 1, 2)], rev)
            kind = SPLIT
        m = event_matrix(ev, src, tgt)
        self._edge[key] = (m, kind)
        return m, kind

    def exchange_ratio(self, w, i: int, j: int, ci: int) -> Mono:
        """r with F(s_j) F(s_i) = r F(s_i) F(s_j) starting at state w (i < j)."""
        key = (tuple(w), i, j, ci)
        hit = self._ratio.get(key)
        if hit is not None:
            return hit
        w = tuple(w)
        A = self.saddle_map(_flip(w, i), j, ci)[0] @ self.saddle_map(w, i, ci)[0]
        B = self.saddle_map(_flip(w, j), i, ci)[0] @ self.saddle_map(w, j, ci)[0]
        cands = _ratios(A, B)
        if not cands:
            raise CubeError(f"saddles {i}, {j} at {w} do not commute up to a unit")
        if len(cands) > 1:
            # ladybug: the maps cannot tell 1 from XY, the arrows can
            r = self.ladybug_scalar(w, i, j, ci)
            if r not in cands:
                raise CubeError(f"ladybug scalar {r} not compatible at {w}, {i}, {j}")
        else:
            (r,) = cands
        self._ratio[key] = r
        return r

    def _walk(self, w, ci: int, k: int):
        """Directed smoothing arcs met along the circle through the arc
        (k, 0, 1), traversed from slot 0 to slot 1 (so the k-th saddle lies to
        the left)."""
        d = self.d
        other = self._slots()
        b = self.closures[ci].partner
        out = []
        cur = ("x", k, 0)
        start = cur
        while True:
            kk, s = cur[1], cur[2]
            (p0, p1), (p2, p3) = d.crossings[kk].smoothing(w[kk])
            t = {p0: p1, p1: p0, p2: p3, p3: p2}[s]
            out.append((kk, s, t))
            nxt = other[("x", kk, t)]
            while nxt[0] == "b":
                nxt = other[("b", b[nxt[1]])]
            cur = nxt
            if cur == start:
                return out

    def _slots(self):
        if not hasattr(self, "_other"):
            ends: Dict[int, list] = {}
            for p, a in enumerate(self.d.boundary):
                ends.setdefault(a, []).append(("b", p))
            for k, x in enumerate(self.d.crossings):
                for s, a in enumerate(x.arcs):
                    ends.setdefault(a, []).append(("x", k, s))
            other = {}
            for s1, s2 in ends.values():
                other[s1] = s2
                other[s2] = s1
            self._other = other
        return self._other

    def ladybug_scalar(self, w, i: int, j: int, ci: int) -> Mono:
        """1 if, walking with saddle i on the left, the chord endpoint after
        the tail of i is the tail of j; XY otherwise."""
        def tail_arc(k):
            return (2, 3) if self.d.crossings[k].framing == REVERSED else (0, 1)

        ends = []
        for kk, s, t in self._walk(w, ci, i):
            if kk in (i, j):
                pair = tuple(sorted((s, t)))
                if pair in ((0, 1), (2, 3)):
                    ends.append((kk, pair == tail_arc(kk)))
        # rotate so the tail of i comes first
        pos = ends.index((i, True))
        ends = ends[pos:] + ends[:pos]
        nxt = ends[1]
        if nxt[0] != j:
            raise CubeError("saddles do not interleave: not a ladybug")
        return (0, 0, 0) if nxt[1] else (1, 1, 0)

    def iota(self, v, j: int, ci: int = 0) -> Mono:
        v = tuple(v)
        zeros = [i for i in chronology_Wv(v) if i < j]
        acc: Mono = (0, 0, 0)
        # exchanges happen from the last earlier saddle backwards
        states = []
        w = v
        for i in zeros:
            states.append((w, i))
            w = _flip(w, i)
        for w, i in reversed(states):
            acc = mono_mul(acc, self.exchange_ratio(w, i, j, ci))
        return acc

    def iota_lambda_walk(self, v, j: int, ci: int = 0) -> Mono:
        """The pure type-walk: product of lambda(deg later, deg earlier) with
        saddle types read at each intermediate chronology."""
        v = tuple(v)
        zeros = [i for i in chronology_Wv(v) if i < j]
        acc: Mono = (0, 0, 0)
        states = []
        w = v
        for i in zeros:
            states.append((w, i))
            w = _flip(w, i)
        for w, i in reversed(states):
            ti = self.saddle_type(w, i, ci)
            tj = self.saddle_type(_flip(w, i), j, ci)
            acc = mono_mul(acc, lambda_mono(DEG[tj], DEG[ti]))
        return acc

    def edge(self, v, j: int, ci: int) -> Mat:
        m, _ = self.saddle_map(v, j, ci)
        return m.scale_mono(self.iota(v, j, ci), edge_sign(v, j))

    def shift_Wv_bidegree(self, v, ci: int = 0) -> BiDegree:
        """(-#merges, -#splits) along W_v."""
        out = BiDegree(0, 0)
        w = tuple(v)
        for i in chronology_Wv(w):
            out = out + DEG[self.saddle_type(w, i, ci)]
            w = _flip(w, i)
        return out


def _ratios(A: Mat, B: Mat) -> List[Mono]:
    """All monomials r (with sign +1) such that A == r B."""
    if A.is_zero() and B.is_zero():
        return [(0, 0, 0)]
    if A.is_zero() or B.is_zero():
        return []
    i, j, eb = next(B.entries())
    ea = A.get(i, j)
    if not ea:
        return []
    (mb, cb) = next(eb.items())
    out = []
    for ma, ca in ea.items():
        if ca != cb:
            continue
        r = mono_mul(ma, mono_inv(mb))
        if B.scale_mono(r) == A:
            out.append(r)
    return sorted(set(out))


# ---------------------------------------------------------------- public API

def saddle_type(T: TangleDiagram, v, j: int, b: Optional[FlatTangle] = None) -> str:
    cube = Cube(T)
    ci = 0 if b is None else cube.closures.index(b.without_loops())
    return cube.saddle_type(v, j, ci)


def iota_edge(T: TangleDiagram, v, j: int, b: Optional[FlatTangle] = None) -> Mono:
    cube = Cube(T)
    ci = 0 if b is None else cube.closures.index(b.without_loops())
    return cube.iota(v, j, ci)


def shift_Wv_bidegree(T: TangleDiagram, v, b: Optional[FlatTangle] = None) -> BiDegree:
    cube = Cube(T)
    ci = 0 if b is None else cube.closures.index(b.without_loops())
    return cube.shift_Wv_bidegree(v, ci)


STANDARD, PROJECTOR = "standard", "projector"


def build_complex(T: TangleDiagram, normalization: str = STANDARD, check: bool = True) -> GradedComplex:
    """One object per cube vertex, loops kept.  Standard normalization puts
    vertex v at h = |v| - n_-, q = |v| + n_+ - 2 n_-; the projector one uses
    q = |v| - n_- so that the oriented resolution of a braid sits at (0, 0)."""
    c = T.c
    cube = Cube(T)
    C = GradedComplex(T.n)
    nm, np_ = T.n_minus, T.n_plus
    ids = {}
    for k in range(1 << c):
        v = tuple((k >> (c - 1 - i)) & 1 for i in range(c))
        r = cube.resolution(v)
        wt = sum(v)
        q = wt + np_ - 2 * nm if normalization == STANDARD else wt - nm
        ids[v] = C.add_object(GradedObject(r.tangle, wt - nm, q, ("v",) + v, cube.shift_Wv_bidegree(v)))
    for v, oid in ids.items():
        for j in range(c):
            if v[j]:
                continue
            w = _flip(v, j)
            C.set_entry(oid, ids[w], [cube.edge(v, j, ci) for ci in range(len(C.closures))])
    C.cube = cube  # type: ignore[attr-defined]
    if check:
        bad = C.d_squared_failures(limit=1)
        if bad:
            raise CubeError(f"d^2 != 0 on the cube of {T.name or 'diagram'}: {bad}")
    return C
