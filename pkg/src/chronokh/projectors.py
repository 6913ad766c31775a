"""Truncated Jones-Wenzl projector complexes.

Two sources: the explicit two-strand complex (e_1 in every negative degree,
maps saddle, dot_b - dot_t, dot_b + XY dot_t, ...) and simplified complexes
of the fractional twist T_n^m.  Every projector carries its trust window:
writing m = n k + r with 0 <= r < n, the terms that T_n^(m+1) adds to
T_n^m have q-shift at most B = -2 n k - r - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .complex import (ComplexError, GradedComplex, GradedObject, closed_circles, flat_complex,
                      simplify, stack, trace)
from .cube import PROJECTOR, build_complex
from .diagrams import twist_tangle
from .homology import (EVEN, HomologyTable, RSummand, homology, homology_overR_restricted,
                       summarize_R, unit_times_1pxy)
from .linalg import Mat
from .planar import FlatTangle, identity_tangle, tl_generator
from .ring import RingElem
from .tqft import dot, event_matrix, split

XY = (1, 1, 0)


class ResourceLimit(RuntimeError):
    pass


class WindowError(ValueError):
    pass


@dataclass
class TruncatedProjector:
    n: int
    source: str  # "explicit_p2" or "twist"
    m: int  # depth for the explicit complex, number of fractional twists otherwise
    complex: GradedComplex
    q_bound: int  # objects with q_shift <= q_bound are not trusted
    stable_h_window: int  # lowest trusted homological degree

    @property
    def window(self) -> Tuple[int, int]:
        return (self.stable_h_window, 0)

    def summary(self):
        return self.complex.summary()

    def to_json(self) -> dict:
        return {"n": self.n, "source": self.source, "m": self.m,
                "q_bound": self.q_bound, "stable_h_window": [self.stable_h_window, 0],
                "objects": [{"h": h, "tangle": t, "q": q} for h, t, q in self.complex.summary()]}


def twist_bound(n: int, m: int) -> int:
    """B_(m+1) = -2nk - r - 1 with m = nk + r."""
    k, r = divmod(m, n)
    return -2 * n * k - r - 1


def stable_h_min(n: int, m: int) -> int:
    """Lowest homological degree left untouched by the next twist; -m+1 on
    two strands."""
    return (twist_bound(n, m) + 1) // 2 + 1


# ---------------------------------------------------------------- explicit P_2

def _dot_matrix(t: FlatTangle, b: FlatTangle, point: int) -> Mat:
    """Dot on the circle of close(t, b) through boundary point `point`."""
    circles = closed_circles(t.partner, b.partner)
    keys = list(range(t.free_loops)) + [("c", k) for k in range(len(circles))]
    (which,) = [k for k, c in enumerate(circles) if point in c]
    return event_matrix(dot(("c", which)), keys, keys)


def _saddle_entry() -> Tuple[Mat, ...]:
    C = build_complex(twist_tangle(2, 1), PROJECTOR)
    (src,) = C.objects_at(-1)
    (tgt,) = C.objects_at(0)
    return C.entry(src, tgt)


def p2_explicit(depth: int) -> TruncatedProjector:
    """The two-strand projector truncated to h >= -depth."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    n = 2
    e1, one = tl_generator(2, 1), identity_tangle(2)
    C = GradedComplex(n)
    ids = [C.add_object(GradedObject(one, 0, 0, ("1",)))]
    for j in range(1, depth + 1):
        ids.append(C.add_object(GradedObject(e1, -j, -(2 * j - 1), ("e1", j))))
    C.set_entry(ids[1], ids[0], _saddle_entry())
    top, bottom = 0, n  # top arc of e_1 ends at point 1, bottom arc at point n+1
    for j in range(2, depth + 1):
        mats = []
        for b in C.closures:
            db, dt = _dot_matrix(e1, b, bottom), _dot_matrix(e1, b, top)
            if j % 2 == 0:
                mats.append(db - dt)
            else:
                mats.append(db + dt.scale_mono(XY))
        C.set_entry(ids[j], ids[j - 1], mats)
    if not C.d_squared_zero():
        raise ComplexError("explicit P_2 fails d^2 = 0")
    return TruncatedProjector(n, "explicit_p2", depth, C, -(2 * depth + 1), -depth + 1)


# ---------------------------------------------------------------- twists

MAX_CROSSINGS = 14


def twist_projector(n: int, m: int, unsafe: bool = False) -> TruncatedProjector:
    """Simplified complex of T_n^m in the projector normalization."""
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    c = (n - 1) * m
    if not unsafe and (n > 3 or c > MAX_CROSSINGS):
        raise ResourceLimit(f"T_{n}^{m} has {c} crossings on {n} strands; pass unsafe to try anyway")
    C = _twist_complex(n, m).copy()
    return TruncatedProjector(n, "twist", m, C, twist_bound(n, m), stable_h_min(n, m))


@lru_cache(maxsize=16)
def _twist_complex(n: int, m: int) -> GradedComplex:
    c = (n - 1) * m
    return simplify(build_complex(twist_tangle(n, m), PROJECTOR, check=c <= 8))


def idempotence_check(n: int, m: int, unsafe: bool = False) -> bool:
    """P (x) P vs P: the diagram T^m stacked on T^m is T^(2m); its simplified
    complex must agree with P_m object by object inside the window of P_m."""
    P = twist_projector(n, m, unsafe)
    PP = twist_projector(n, 2 * m, unsafe)
    lo = P.stable_h_window
    a = [x for x in P.complex.object_data() if x[0] >= lo]
    b = [x for x in PP.complex.object_data() if x[0] >= lo]
    return a == b


# ---------------------------------------------------------------- turnbacks

def _window_of(P, window):
    if window is not None:
        return window
    if isinstance(P, TruncatedProjector):
        return P.window
    raise WindowError("a bare complex needs an explicit window")


def check_turnback_killing(P: Union[TruncatedProjector, GradedComplex], i: int = 1,
                           window: Optional[Tuple[int, int]] = None, side: str = "both") -> bool:
    """True iff e_i stacked on P (above, below or both) simplifies to
    nothing with h in the window."""
    C = P.complex if isinstance(P, TruncatedProjector) else P
    lo, hi = _window_of(P, window)
    E = flat_complex(tl_generator(C.n, i))
    sides = {"above": [(E, C)], "below": [(C, E)], "both": [(E, C), (C, E)]}[side]
    for top, bot in sides:
        S = simplify(stack(top, bot))
        if any(lo <= o.h <= hi for o in S.objs.values()):
            return False
    return True


# ---------------------------------------------------------------- traces

def full_trace(C: GradedComplex) -> GradedComplex:
    while C.n:
        C = trace(C)
    return C


def colored_unknot(m: int, M: int = 8, spec: str = EVEN, window: Optional[Tuple[int, int]] = None,
                   source: str = "twist", unsafe: bool = False) -> HomologyTable:
    """Homology of the m-fold trace of a truncated P_m, restricted to a
    window inside the stable range."""
    if m == 1:
        H = homology(full_trace(flat_complex(identity_tangle(1))), spec)
        H.meta.update({"color": 1, "source": "identity", "window": [0, 0]})
        return H
    if m > 2 and not unsafe:
        raise ResourceLimit("colors above 2 need unsafe")
    P = p2_explicit(M) if (source == "explicit" and m == 2) else twist_projector(m, M, unsafe)
    lo, hi = window if window is not None else P.window
    if lo < P.stable_h_window or hi > 0:
        raise WindowError(f"window [{lo}, {hi}] leaves the stable range [{P.stable_h_window}, 0]")
    T = simplify(full_trace(P.complex))
    H = homology(T, spec).restrict(lo, hi)
    H.meta.update({"color": m, "source": P.source, "twists" if P.source == "twist" else "depth": M,
                   "window": [lo, hi], "stable_h_window": [P.stable_h_window, 0]})
    return H


# ---------------------------------------------------------------- Tr^2(P_2) over R

@dataclass
class TraceReport:
    source: str
    depth: int
    window: Tuple[int, int]
    structure_ok: bool
    mismatches: List[str]
    summands: List[RSummand]

    def by_degree(self) -> Dict[int, List[Tuple[str, int]]]:
        lo, hi = self.window
        return {h: v for h, v in summarize_R(self.summands).items() if lo <= h <= hi}


def _unit_multiple(a: Mat, b: Mat):
    """A signed monomial u with a == u b, or None."""
    from .cube import _ratios
    for sg in (1, -1):
        r = _ratios(a, b.scale_mono((0, 0, 0), sg))
        if r:
            return r[0], sg
    return None


def _split_matrix() -> Mat:
    return event_matrix(split("a", "b", "c"), ["a"], ["b", "c"])


def check_trace_structure(T: GradedComplex, lo: int) -> List[str]:
    """Compare the (un-delooped) Tr^2 of a P_2 with: a two-circle object at
    (0, 0), a one-circle object at (-j, -(2j-1)) for each j, the map into
    degree 0 a split up to a unit, maps out of even degrees zero and maps out
    of odd degrees below -1 equal to a unit times (1 + XY) dot."""
    bad = []
    objs = {}
    for oid, o in T.objs.items():
        if o.h >= lo:
            if o.h in objs:
                bad.append(f"two objects in degree {o.h}")
            objs[o.h] = oid
    for h in range(lo, 1):
        if h not in objs:
            bad.append(f"no object in degree {h}")
            continue
        o = T.objs[objs[h]]
        want = (2, 0) if h == 0 else (1, 2 * h + 1)
        if (o.tangle.free_loops, o.q_shift) != want:
            bad.append(f"degree {h}: loops/q {(o.tangle.free_loops, o.q_shift)} != {want}")
    if bad:
        return bad
    dot1 = event_matrix(dot("a"), ["a"], ["a"])
    for h in range(lo, 0):
        e = T.entry(objs[h], objs[h + 1])
        if h == -1:
            if e is None or _unit_multiple(e[0], _split_matrix()) is None:
                bad.append("degree -1: not a unit times a split")
        elif h % 2 == 0:
            if e is not None:
                bad.append(f"degree {h}: nonzero map {e[0].to_json()}")
        else:
            m = e[0] if e is not None else None
            ok = m is not None and set(m.cols) == {0} and set(m.cols[0]) == {1} \
                and unit_times_1pxy(m.cols[0][1])
            if not ok:
                bad.append(f"degree {h}: not a unit times (1+XY) dot")
    return bad


def trace_homology_overR(depth: int = 8, source: str = "explicit") -> TraceReport:
    """Tr^2 of P_2 over R: structural check of the traced complex, then the
    staircase homology report inside the trusted window."""
    if depth < 3:
        raise ValueError("depth must be at least 3")
    P = p2_explicit(depth) if source == "explicit" else twist_projector(2, depth)
    lo = P.stable_h_window
    T = full_trace(P.complex)
    bad = check_trace_structure(T, lo)
    summands = homology_overR_restricted(simplify(T))
    return TraceReport(P.source, depth, (lo, 0), not bad, bad, summands)


__all__ = [
    "TruncatedProjector", "ResourceLimit", "WindowError", "twist_bound", "stable_h_min",
    "p2_explicit", "twist_projector", "idempotence_check", "check_turnback_killing",
    "colored_unknot", "full_trace", "trace_homology_overR", "check_trace_structure", "TraceReport",
]
