"""The acceptance suite: one function per criterion, each returning a
Result.  Shared by ``khcli verify`` and tests/test_acceptance.py."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

from .complex import chi_q, chi_q_tl, flat_complex, simplify, stack, trace
from .cube import PROJECTOR, build_complex
from .diagrams import BUILTINS, braid_tangle, builtin, twist_tangle, CANONICAL, REVERSED
from .homology import EVEN, MOD2, ODD, homology, mod2_dimensions
from .jones import LaurentPoly, jones_normalized, jw_expansion, quantum_integer
from .moves import random_pairs
from .planar import tl_generator
from .projectors import (check_turnback_killing, colored_unknot, full_trace, p2_explicit,
                         trace_homology_overR, twist_projector)
from . import relations as rel
from .tqft import birth, death, dot, merge, split

# 2-colored unknot in h in [-5, 0], as {(h, q): (free rank, torsion)}
COLORED2_EVEN = {
    (0, 2): (1, ()), (0, 0): (1, ()), (-2, -2): (1, ()), (-2, -4): (0, (2,)),
    (-3, -6): (1, ()), (-4, -6): (1, ()), (-4, -8): (0, (2,)), (-5, -10): (1, ()),
}
COLORED2_ODD = {k: (1, ()) for k in [(0, 2), (0, 0), (-2, -2), (-2, -4), (-3, -4), (-3, -6),
                                    (-4, -6), (-4, -8), (-5, -8), (-5, -10)]}
COLORED2_WINDOW = (-5, 0)

SMALL_BUILTINS = ["unknot", "kink+", "kink-", "kink2", "unlink2", "hopf", "hopf-", "trefoil", "trefoil-left"]
JONES_BUILTINS = ["unknot", "hopf", "trefoil", "figure8"]
LINK_BUILTINS = sorted(k for k in BUILTINS if k != "figure-eight")


@dataclass
class Result:
    number: int
    name: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        return f"[{tag}] criterion {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _timed(number: int, name: str, fn: Callable[[], Tuple[bool, str]]) -> Result:
    t = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as e:  # report, do not crash the suite
        ok, detail = False, f"error: {type(e).__name__}: {e}"
    return Result(number, name, ok, detail, time.perf_counter() - t)


# ---------------------------------------------------------------- 1

def c1_colored_unknot(M: int = 8, limit: float = 60.0):
    t = time.perf_counter()
    even = colored_unknot(2, M, EVEN, COLORED2_WINDOW).as_dict()
    odd = colored_unknot(2, M, ODD, COLORED2_WINDOW).as_dict()
    dt = time.perf_counter() - t
    ok = even == COLORED2_EVEN and odd == COLORED2_ODD and dt < limit
    return ok, f"M={M} even {'=' if even == COLORED2_EVEN else '!='} reference, odd " \
               f"{'=' if odd == COLORED2_ODD else '!='} reference, {dt:.1f}s (limit {limit:.0f}s)"


# ---------------------------------------------------------------- 2

def c2_parts(depth: int = 8) -> Dict[str, Tuple[bool, str]]:
    """Each sub-claim of criterion 2, for the explicit and the twist source."""
    parts: Dict[str, Tuple[bool, str]] = {}
    for source in ("explicit", "twist"):
        rep = trace_homology_overR(depth, source)
        H = rep.by_degree()
        lo = rep.window[0]
        parts[f"{source} structure"] = (rep.structure_ok, "; ".join(rep.mismatches) or "matches")
        parts[f"{source} H0"] = (H.get(0) == [("R", 2), ("R", 0)], str(H.get(0)))
        parts[f"{source} H-1"] = (not H.get(-1), str(H.get(-1, [])))
        even = [h for h in range(lo, -1) if h % 2 == 0]
        odd = [h for h in range(lo, -1) if h % 2]
        ok_even = all(sorted(k for k, _ in H.get(h, [])) == ["R", "R/(1+XY)R"] for h in even)
        parts[f"{source} H-2k"] = (ok_even, "; ".join(f"H{h}={H.get(h)}" for h in even))
        ok_odd = all([k for k, _ in H.get(h, [])] == ["(1+XY)R"] for h in odd)
        parts[f"{source} H-2k-1"] = (ok_odd, "; ".join(f"H{h}={H.get(h)}" for h in odd))
    return parts


def c2_trace_over_R(depth: int = 8):
    parts = c2_parts(depth)
    good = [k for k, (v, _) in parts.items() if v]
    bad = [k for k, (v, _) in parts.items() if not v]
    if not bad:
        return True, "structure, H0, H-1, H-2k, H-2k-1 as expected (explicit and twist)"
    first = bad[0]
    return False, (f"{len(good)}/{len(parts)} sub-checks pass; {first}: got {parts[first][1]}, "
                   f"expected (1+XY)R" if first.endswith("H-2k-1") else
                   f"{len(good)}/{len(parts)} sub-checks pass; {first}: {parts[first][1]}")


# ---------------------------------------------------------------- 3

def _unit_between(a_mats, b_mats):
    """A single signed monomial u with b = u a on every closure, or None."""
    from .cube import _ratios
    common = None
    for a, b in zip(a_mats, b_mats):
        if a.is_zero() and b.is_zero():
            continue  # any unit will do
        cands = set()
        for sg in (1, -1):
            for r in _ratios(b, a.scale_mono((0, 0, 0), sg)):
                cands.add((r, sg))
        common = cands if common is None else common & cands
    if common is None:
        return ((0, 0, 0), 1)
    return min(common) if common else None


def c3_twist_vs_explicit(limit: float = 10.0):
    t = time.perf_counter()
    notes = []
    for k in (1, 2):
        E = p2_explicit(2 * k).complex
        S = twist_projector(2, 2 * k).complex
        if E.object_data() != S.object_data():
            notes.append(f"k={k}: objects differ")
            continue
        be = {E.objs[i].h: i for i in E.objs}
        bs = {S.objs[i].h: i for i in S.objs}
        for h in range(-2 * k, 0):
            ea, sa = E.entry(be[h], be[h + 1]), S.entry(bs[h], bs[h + 1])
            if ea is None or sa is None or _unit_between(ea, sa) is None:
                notes.append(f"k={k}: map out of h={h} is not a unit multiple")
    dt = time.perf_counter() - t
    ok = not notes and dt < limit
    return ok, (f"k=1,2 objects equal, maps equal up to units, {dt:.1f}s" if not notes else "; ".join(notes))


# ---------------------------------------------------------------- 4

def c4_turnbacks(limit: float = 30.0):
    t = time.perf_counter()
    out = []
    for m in (4, 6, 8):
        P = twist_projector(2, m)
        out.append((m, P.window, check_turnback_killing(P, 1)))
    dt = time.perf_counter() - t
    ok = all(v for _, _, v in out) and dt < limit
    return ok, ", ".join(f"m={m} window {w}: {v}" for m, w, v in out) + f", {dt:.1f}s"


# ---------------------------------------------------------------- 5

def c5_oracle():
    bad = []
    for name in SMALL_BUILTINS:
        C = build_complex(builtin(name))
        S = simplify(C)
        for spec in (EVEN, ODD, MOD2):
            if homology(C, spec).as_dict() != homology(S, spec).as_dict():
                bad.append(f"{name}/{spec}")
    return not bad, f"{len(SMALL_BUILTINS)} diagrams x 3 rings" + (f"; mismatches {bad}" if bad else " agree")


# ---------------------------------------------------------------- 6

def c6_euler():
    bad = []
    for name in JONES_BUILTINS:
        d = builtin(name)
        if LaurentPoly(chi_q(build_complex(d))) != jones_normalized(d):
            bad.append(name)
    return not bad, "chi_q = (-1)^n- q^(n+ - 2n-) <D> for " + ", ".join(JONES_BUILTINS) + \
        (f"; mismatches {bad}" if bad else "")


# ---------------------------------------------------------------- 7

def c7_mod2():
    bad = []
    for name in LINK_BUILTINS:
        S = simplify(build_complex(builtin(name)))
        e = mod2_dimensions(homology(S, EVEN))
        o = mod2_dimensions(homology(S, ODD))
        direct = {k: v[0] for k, v in homology(S, MOD2).as_dict().items()}
        if e != o or e != direct:
            bad.append(name)
    return not bad, f"{len(LINK_BUILTINS)} builtin links" + (f"; mismatches {bad}" if bad else " agree over Z/2")


# ---------------------------------------------------------------- 8

def c8_reidemeister(limit: float = 120.0):
    t = time.perf_counter()
    bad = []
    pairs = random_pairs(20)
    for p in pairs:
        a, b = p.diagrams()
        Sa, Sb = simplify(build_complex(a)), simplify(build_complex(b))
        for spec in (EVEN, ODD, MOD2):
            if homology(Sa, spec).as_dict() != homology(Sb, spec).as_dict():
                bad.append(f"{p.kind}:{p.word}->{p.word2}/{spec}")
    dt = time.perf_counter() - t
    kinds = {k: sum(1 for p in pairs if p.kind == k) for k in ("RI", "RII", "RIII")}
    return not bad and dt < limit, f"20 pairs {kinds}, {dt:.1f}s" + (f"; mismatches {bad}" if bad else "")


# ---------------------------------------------------------------- 9

def relation_instances(seed: int = 7, rounds: int = 150) -> Dict[str, List[int]]:
    """{relation: [passed, total]} over randomized instances."""
    rng = random.Random(seed)
    tally: Dict[str, List[int]] = {}

    def rec(name, ok):
        t = tally.setdefault(name, [0, 0])
        t[0] += bool(ok)
        t[1] += 1

    for _ in range(rounds):
        o = rel.random_order(rng, ["c", "d"], 2)
        rec("S0", rel.sphere_S0(o))
        rec("S1", rel.sphere_S1(o))
        rec("two dots", rel.two_dots(o, rng.choice(["c", "d"])))
        rec("tube cutting", rel.tube_cutting(o, rng.choice(["c", "d"])))
        kind = rng.choice(["merge", "split", "death"])
        rec("framing " + kind, rel.framing_flip(kind, o))
        ev = rng.choice([merge("c", "d", "m"), split("c", "p", "r"), birth("b"), death("c"), dot("c")])
        rec("degree", rel.degree_shift(ev, o))
        u = (rng.randint(-4, 4), rng.randint(-4, 4))
        u2 = (rng.randint(-4, 4), rng.randint(-4, 4))
        v = (rng.randint(-4, 4), rng.randint(-4, 4))
        rec("lambda bilinear", rel.lambda_bilinear(u, u2, v))
        rec("lambda antisymmetric", rel.lambda_antisymmetric(u, v))
    # d^2 = 0 on random framed braid closures and tangles, and after each operation
    for k in range(rounds // 3):
        n = rng.choice([2, 3])
        w = [rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(rng.randint(1, 5))]
        fr = [rng.choice((CANONICAL, REVERSED)) for _ in w]
        closed = rng.random() < 0.5
        C = build_complex(braid_tangle(n, w, close=closed, framings=fr), check=False)
        rec("d^2 = 0 (build)", C.d_squared_zero())
        S = simplify(C)
        rec("d^2 = 0 (simplify)", S.d_squared_zero())
        if not closed:
            rec("d^2 = 0 (trace)", simplify(full_trace(S)).d_squared_zero())
            st = stack(flat_complex(tl_generator(n, rng.randint(1, n - 1))), S)
            rec("d^2 = 0 (stack)", st.d_squared_zero())
    return tally


def c9_relations():
    tally = relation_instances()
    total = sum(t[1] for t in tally.values())
    failed = {k: t[1] - t[0] for k, t in tally.items() if t[0] != t[1]}
    ok = not failed and total >= 1000
    return ok, f"{total} instances over {len(tally)} relations, failures {failed or 0}"


# ---------------------------------------------------------------- 10

def _agree_tl(chi, exp, lowest):
    keys = set(chi) | set(exp)
    return all(LaurentPoly(chi.get(k, {})).window(lowest) == exp.get(k, LaurentPoly()) for k in keys)


def c10_decategorified():
    notes = []
    for n, m in ((2, 8), (3, 4)):
        P = twist_projector(n, m)
        lowest = P.q_bound + 1
        if not _agree_tl(chi_q_tl(P.complex), jw_expansion(n, lowest), lowest):
            notes.append(f"P_{n} (m={m}) != p_{n} above q={P.q_bound}")
    E = p2_explicit(8)
    if not _agree_tl(chi_q_tl(E.complex), jw_expansion(2, E.q_bound + 1), E.q_bound + 1):
        notes.append("explicit P_2 != p_2")
    P = twist_projector(2, 8)
    lowest = P.q_bound + 1 + P.n  # closing up adds up to n to q
    tr = LaurentPoly(chi_q(full_trace(P.complex))).window(lowest)
    if tr != quantum_integer(3):
        notes.append(f"chi(Tr^2 P_2) = {tr} in window")
    ok = not notes
    return ok, ("P_2, P_3 match p_2, p_3 in their q-windows; chi(Tr^2 P_2) = [3]" if ok else "; ".join(notes))


CRITERIA = [
    (1, "2-colored unknot table", c1_colored_unknot),
    (2, "Tr^2(P_2) over R", c2_trace_over_R),
    (3, "twist vs explicit projector", c3_twist_vs_explicit),
    (4, "turnback killing", c4_turnbacks),
    (5, "oracle equivalence", c5_oracle),
    (6, "Euler characteristic", c6_euler),
    (7, "mod-2 agreement", c7_mod2),
    (8, "Reidemeister invariance", c8_reidemeister),
    (9, "relation suite", c9_relations),
    (10, "decategorified cross-check", c10_decategorified),
]


def run_criterion(number: int) -> Result:
    for k, name, fn in CRITERIA:
        if k == number:
            return _timed(k, name, fn)
    raise KeyError(number)


def run_all() -> List[Result]:
    return [_timed(k, name, fn) for k, name, fn in CRITERIA]
