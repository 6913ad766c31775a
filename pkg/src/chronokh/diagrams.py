"""Tangle diagrams with framed crossings, given in an extended PD form.

A crossing is ``X[a, b, c, d]``: arc labels counterclockwise starting at the
incoming under-strand.  The 0-smoothing joins (a, b) and (c, d); the
1-smoothing joins (a, d) and (b, c).  ``boundary`` lists the arc label at each
boundary point 1..2n, and ``loops`` counts crossingless closed components.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .planar import FlatTangle

CANONICAL, REVERSED = "canonical", "reversed"


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    arcs: Tuple[int, int, int, int]
    sign: int  # +1 or -1
    framing: str = CANONICAL

    def smoothing(self, bit: int) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        """Slot pairs joined by the given smoothing."""
        return ((0, 1), (2, 3)) if bit == 0 else ((0, 3), (1, 2))


@dataclass(frozen=True)
class TangleDiagram:
    n: int
    crossings: Tuple[Crossing, ...]
    boundary: Tuple[int, ...] = ()
    loops: int = 0
    name: str = ""

    def __post_init__(self):
        if len(self.boundary) != 2 * self.n:
            raise DiagramError(f"boundary must list {2 * self.n} arcs, got {len(self.boundary)}")
        if self.loops < 0:
            raise DiagramError("negative loop count")
        count = Counter(self.boundary)
        for c in self.crossings:
            if len(c.arcs) != 4:
                raise DiagramError("each crossing needs four arcs")
            if c.sign not in (1, -1):
                raise DiagramError(f"bad crossing sign {c.sign}")
            if c.framing not in (CANONICAL, REVERSED):
                raise DiagramError(f"bad framing {c.framing!r}")
            count.update(c.arcs)
        bad = sorted(a for a, k in count.items() if k != 2)
        if bad:
            raise DiagramError(f"arcs must appear exactly twice; offending labels {bad}")

    @property
    def c(self) -> int:
        return len(self.crossings)

    @property
    def n_plus(self) -> int:
        return sum(1 for x in self.crossings if x.sign > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for x in self.crossings if x.sign < 0)

    def writhe(self) -> int:
        return self.n_plus - self.n_minus

    def with_framings(self, framings: Sequence[str]) -> "TangleDiagram":
        xs = tuple(Crossing(x.arcs, x.sign, f) for x, f in zip(self.crossings, framings))
        return TangleDiagram(self.n, xs, self.boundary, self.loops, self.name)

    # serialization
    def to_json(self) -> dict:
        d = {
            "n": self.n,
            "crossings": [
                {"arcs": list(x.arcs), "sign": "+" if x.sign > 0 else "-", "framing": x.framing}
                for x in self.crossings
            ],
        }
        if self.n:
            d["boundary"] = list(self.boundary)
        if self.loops:
            d["loops"] = self.loops
        return d


def parse_pd(data) -> TangleDiagram:
    """Build a diagram from the JSON form (a dict or a JSON string)."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise DiagramError(f"invalid JSON: {e}") from None
    if not isinstance(data, dict):
        raise DiagramError("diagram JSON must be an object")
    try:
        n = int(data.get("n", 0))
        xs = []
        for k, raw in enumerate(data.get("crossings", [])):
            arcs = tuple(int(a) for a in raw["arcs"])
            s = raw.get("sign", "+")
            sign = {"+": 1, "-": -1, 1: 1, -1: -1, "+1": 1, "-1": -1}.get(s)
            if sign is None:
                raise DiagramError(f"crossing {k}: bad sign {s!r}")
            xs.append(Crossing(arcs, sign, raw.get("framing", CANONICAL)))
        boundary = tuple(int(a) for a in data.get("boundary", []))
        loops = int(data.get("loops", 0))
    except (KeyError, TypeError) as e:
        raise DiagramError(f"malformed diagram: {e}") from None
    return TangleDiagram(n, tuple(xs), boundary, loops, str(data.get("name", "")))


def load_pd(path: str) -> TangleDiagram:
    with open(path) as fh:
        return parse_pd(fh.read())


# ---------------------------------------------------------------- braids

def braid_tangle(n: int, word: Sequence[int], close: bool = False, name: str = "",
                 framings: Optional[Sequence[str]] = None) -> TangleDiagram:
    """Diagram of a braid word on n strands, letters +-i for sigma_i^(+-1),
    read bottom to top.  With ``close`` the braid closure (a link)."""
    nxt = [1]

    def fresh() -> int:
        nxt[0] += 1
        return nxt[0] - 1

    bottom = [fresh() for _ in range(n)]
    cur = list(bottom)
    xs = []
    for k, g in enumerate(word):
        i = abs(g)
        if not 1 <= i < n:
            raise DiagramError(f"generator {g} out of range for {n} strands")
        fr = framings[k] if framings else CANONICAL
        a, b = cur[i - 1], cur[i]
        ya, yb = fresh(), fresh()
        if g > 0:
            xs.append(Crossing((b, yb, ya, a), 1, fr))
        else:
            xs.append(Crossing((a, b, yb, ya), -1, fr))
        cur[i - 1], cur[i] = ya, yb
    if close:
        # identify top arcs with bottom arcs
        ren = {t: b for t, b in zip(cur, bottom)}
        xs = [Crossing(tuple(ren.get(a, a) for a in x.arcs), x.sign, x.framing) for x in xs]
        # strands never touched by a crossing close into free loops
        used = {a for x in xs for a in x.arcs}
        loops = sum(1 for b in bottom if b not in used)
        return TangleDiagram(0, tuple(xs), (), loops, name)
    # strand k: top point n+1-k, bottom point n+k
    boundary = [0] * (2 * n)
    for k in range(1, n + 1):
        boundary[n + 1 - k - 1] = cur[k - 1]
        boundary[n + k - 1] = bottom[k - 1]
    return TangleDiagram(n, tuple(xs), tuple(boundary), 0, name)


def flat_diagram(t: FlatTangle, name: str = "") -> TangleDiagram:
    """A crossingless tangle as a diagram (one arc per matched pair)."""
    boundary = [0] * (2 * t.n)
    for k, (a, b) in enumerate(t.pairs, start=1):
        boundary[a - 1] = boundary[b - 1] = k
    return TangleDiagram(t.n, (), tuple(boundary), t.free_loops, name)


def stack_diagrams(top: TangleDiagram, bottom: TangleDiagram, name: str = "") -> TangleDiagram:
    """Put `top` above `bottom`; crossings of `top` come first."""
    if top.n != bottom.n:
        raise DiagramError("cannot stack diagrams of different arity")
    n = top.n
    off = max([0, *top.boundary, *(a for x in top.crossings for a in x.arcs)]) + 1

    def sh(a: int) -> int:
        return a + off

    xs_b = [Crossing(tuple(sh(a) for a in x.arcs), x.sign, x.framing) for x in bottom.crossings]
    b_bd = [sh(a) for a in bottom.boundary]
    # top's bottom point n+j meets bottom's top point n+1-j
    ren: Dict[int, int] = {}
    for j in range(1, n + 1):
        a, b = top.boundary[n + j - 1], b_bd[n + 1 - j - 1]
        ren[_find(ren, b)] = _find(ren, a)
    xs = list(top.crossings) + xs_b
    xs = [Crossing(tuple(_find(ren, a) for a in x.arcs), x.sign, x.framing) for x in xs]
    bd = [_find(ren, a) for a in top.boundary[:n]] + [_find(ren, a) for a in b_bd[n:]]
    used = Counter(a for x in xs for a in x.arcs)
    used.update(bd)
    # middle arcs that close up without touching anything become loops
    mids = {_find(ren, top.boundary[n + j - 1]) for j in range(1, n + 1)}
    extra = sum(1 for a in mids if used[a] == 0)
    return TangleDiagram(n, tuple(xs), tuple(bd), top.loops + bottom.loops + extra, name)


def _find(ren: Dict[int, int], a: int) -> int:
    while a in ren and ren[a] != a:
        a = ren[a]
    return a


def trace_diagram(d: TangleDiagram, name: str = "") -> TangleDiagram:
    """Join boundary points 1 and 2n around the right side."""
    if d.n < 1:
        raise DiagramError("trace needs n >= 1")
    a, b = d.boundary[0], d.boundary[-1]
    ren = {b: a} if a != b else {}
    xs = tuple(Crossing(tuple(ren.get(x, x) for x in c.arcs), c.sign, c.framing) for c in d.crossings)
    bd = tuple(ren.get(x, x) for x in d.boundary[1:-1])
    used = Counter(x for c in xs for x in c.arcs)
    used.update(bd)
    loops = d.loops + (1 if used[a] == 0 else 0)
    return TangleDiagram(d.n - 1, xs, bd, loops, name)


def close_braid(d: TangleDiagram, name: str = "") -> TangleDiagram:
    out = d
    while out.n:
        out = trace_diagram(out)
    return TangleDiagram(0, out.crossings, (), out.loops, name or d.name)


# ---------------------------------------------------------------- builtins

def twist_word(n: int, m: int) -> List[int]:
    """m copies of the fractional twist (sigma_1 ... sigma_{n-1})^{-1} letters,
    as negative generators."""
    return [-i for _ in range(m) for i in range(1, n)]


def twist_tangle(n: int, m: int) -> TangleDiagram:
    return braid_tangle(n, twist_word(n, m), name=f"T{n}^{m}")


BUILTINS = {
    "unknot": lambda: TangleDiagram(0, (), (), 1, "unknot"),
    "kink+": lambda: braid_tangle(2, [1], close=True, name="kink+"),
    "kink-": lambda: braid_tangle(2, [-1], close=True, name="kink-"),
    "kink2": lambda: braid_tangle(3, [1, -2], close=True, name="kink2"),
    "unlink2": lambda: TangleDiagram(0, (), (), 2, "unlink2"),
    "hopf": lambda: braid_tangle(2, [1, 1], close=True, name="hopf"),
    "hopf-": lambda: braid_tangle(2, [-1, -1], close=True, name="hopf-"),
    "trefoil": lambda: braid_tangle(2, [1, 1, 1], close=True, name="trefoil"),
    "trefoil-left": lambda: braid_tangle(2, [-1, -1, -1], close=True, name="trefoil-left"),
    "figure8": lambda: braid_tangle(3, [1, -2, 1, -2], close=True, name="figure8"),
    "torus2_4": lambda: braid_tangle(2, [1] * 4, close=True, name="torus2_4"),
    "torus2_5": lambda: braid_tangle(2, [1] * 5, close=True, name="torus2_5"),
    "torus3_2": lambda: braid_tangle(3, [1, 2] * 2, close=True, name="torus3_2"),
    "torus3_3": lambda: braid_tangle(3, [1, 2] * 3, close=True, name="torus3_3"),
}
BUILTINS["figure-eight"] = BUILTINS["figure8"]


def builtin(name: str) -> TangleDiagram:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise DiagramError(f"unknown builtin {name!r}; have {sorted(BUILTINS)}") from None


# ---------------------------------------------------------------- resolution

Slot = Tuple  # ("x", crossing, slot) or ("b", point)
ArcId = Tuple[int, int, int]  # (crossing, slot, slot) of a smoothing arc


@dataclass
class Resolution:
    """The flat diagram T_v: boundary paths and free cycles made of smoothing
    arcs.  Free cycles are sorted by their least smoothing arc."""

    n: int
    v: Tuple[int, ...]
    tangle: FlatTangle  # free_loops = number of cycles
    paths: Dict[int, Tuple[ArcId, ...]] = field(default_factory=dict)  # keyed by both endpoints (0-based)
    cycles: List[Tuple[ArcId, ...]] = field(default_factory=list)
    arc_home: Dict[ArcId, Tuple[str, int]] = field(default_factory=dict)  # ("p", least end) or ("c", k)


def resolve(d: TangleDiagram, v: Sequence[int]) -> Resolution:
    if len(v) != d.c:
        raise DiagramError(f"state has length {len(v)}, diagram has {d.c} crossings")
    # each arc label joins two slots
    ends: Dict[int, List[Slot]] = {}
    for p, a in enumerate(d.boundary):
        ends.setdefault(a, []).append(("b", p))
    for k, x in enumerate(d.crossings):
        for s, a in enumerate(x.arcs):
            ends.setdefault(a, []).append(("x", k, s))
    other: Dict[Slot, Slot] = {}
    for a, (s1, s2) in ends.items():
        other[s1] = s2
        other[s2] = s1
    # smoothing arcs at crossings
    smooth: Dict[Slot, Tuple[Slot, ArcId]] = {}
    for k, x in enumerate(d.crossings):
        for s, t in x.smoothing(v[k]):
            aid = (k, s, t)
            smooth[("x", k, s)] = (("x", k, t), aid)
            smooth[("x", k, t)] = (("x", k, s), aid)

    seen_arc = set()
    partner = [-1] * (2 * d.n)
    paths: Dict[int, Tuple[ArcId, ...]] = {}
    home: Dict[ArcId, Tuple[str, int]] = {}
    for p in range(2 * d.n):
        if partner[p] != -1:
            continue
        arcs = []
        s = other[("b", p)]
        while s[0] != "b":
            t, aid = smooth[s]
            arcs.append(aid)
            seen_arc.add(aid)
            s = other[t]
        q = s[1]
        partner[p], partner[q] = q, p
        paths[p] = paths[q] = tuple(arcs)
        for aid in arcs:
            home[aid] = ("p", min(p, q))
    cycles = []
    for k in range(d.c):
        for s, t in d.crossings[k].smoothing(v[k]):
            aid = (k, s, t)
            if aid in seen_arc:
                continue
            arcs = []
            cur = ("x", k, s)
            while True:
                nxt, a2 = smooth[cur]
                if a2 in seen_arc:
                    break
                seen_arc.add(a2)
                arcs.append(a2)
                cur = other[nxt]
            cycles.append(tuple(arcs))
    cycles.sort(key=min)
    loops = d.loops
    for ci, cyc in enumerate(cycles):
        for aid in cyc:
            home[aid] = ("c", ci + loops)
    t = FlatTangle(d.n, tuple(partner), loops + len(cycles))
    return Resolution(d.n, tuple(v), t, paths, cycles, home)
