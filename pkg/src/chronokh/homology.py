"""Homology of closed complexes: Smith normal form over Z, ranks over GF(2),
and a restricted report over R for staircase presentations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .complex import GradedComplex, n_circles
from .ring import EVEN, MOD2, ODD, ONE, RingElem
from .tqft import q_degree


class HomologyError(ValueError):
    pass


# ---------------------------------------------------------------- SNF

@dataclass
class SNF:
    factors: List[int]  # nonzero diagonal entries, d1 | d2 | ...
    rank: int
    shape: Tuple[int, int]


def smith_normal_form(M: Sequence[Sequence[int]]) -> SNF:
    """Invariant factors of an integer matrix (smallest-pivot strategy)."""
    A = [list(map(int, row)) for row in M]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    diag = []
    t = 0
    while t < nr and t < nc:
        # smallest nonzero entry in the remaining block
        best = None
        for i in range(t, nr):
            row = A[i]
            for j in range(t, nc):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = A[t][t]
            done = True
            # clear column t
            for i in range(t + 1, nr):
                x = A[i][t]
                if x:
                    f = x // p
                    if f:
                        ri, rt = A[i], A[t]
                        for j in range(t, nc):
                            ri[j] -= f * rt[j]
                    if A[i][t]:
                        done = False
            # clear row t
            rt = A[t]
            for j in range(t + 1, nc):
                x = rt[j]
                if x:
                    f = x // p
                    if f:
                        for i in range(t, nr):
                            A[i][j] -= f * A[i][t]
                    if rt[j]:
                        done = False
            if done:
                # divisibility of the rest
                bad = None
                for i in range(t + 1, nr):
                    for j in range(t + 1, nc):
                        if A[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                ri, rt = A[bad], A[t]
                for j in range(t, nc):
                    rt[j] += ri[j]
                continue
            # move the smallest remaining entry of row/col t to the pivot
            best = (abs(A[t][t]), t, t)
            for i in range(t + 1, nr):
                if A[i][t] and abs(A[i][t]) < best[0]:
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, nc):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, bi, bj = best
            if bi != t:
                A[t], A[bi] = A[bi], A[t]
            if bj != t:
                for row in A:
                    row[t], row[bj] = row[bj], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    diag.sort()
    return SNF(diag, len(diag), (nr, nc))


def rank_mod2(M: Sequence[Sequence[int]]) -> int:
    rows = []
    for r in M:
        bits = 0
        for j, x in enumerate(r):
            if x & 1:
                bits |= 1 << j
        if bits:
            rows.append(bits)
    rank = 0
    pivots: Dict[int, int] = {}
    for bits in rows:
        while bits:
            top = bits.bit_length() - 1
            if top in pivots:
                bits ^= pivots[top]
            else:
                pivots[top] = bits
                rank += 1
                break
    return rank


# ---------------------------------------------------------------- tables

@dataclass
class Group:
    free: int = 0
    torsion: List[int] = field(default_factory=list)

    def is_zero(self) -> bool:
        return self.free == 0 and not self.torsion


@dataclass
class HomologyTable:
    ring: str
    groups: Dict[Tuple[int, int], Group]
    window: Optional[Tuple[int, int]] = None
    meta: Dict = field(default_factory=dict)

    def nonzero(self) -> Dict[Tuple[int, int], Group]:
        return {k: g for k, g in sorted(self.groups.items()) if not g.is_zero()}

    def restrict(self, hmin: int, hmax: int) -> "HomologyTable":
        g = {k: v for k, v in self.groups.items() if hmin <= k[0] <= hmax}
        return HomologyTable(self.ring, g, (hmin, hmax), dict(self.meta))

    def as_dict(self) -> Dict[Tuple[int, int], Tuple[int, Tuple[int, ...]]]:
        return {k: (g.free, tuple(g.torsion)) for k, g in self.nonzero().items()}

    def chi_q(self) -> Dict[int, int]:
        """Euler characteristic from ranks (torsion contributes nothing over Z;
        over GF(2) ranks are already dimensions)."""
        out: Dict[int, int] = {}
        for (h, q), g in self.groups.items():
            out[q] = out.get(q, 0) + (-1) ** (h % 2) * g.free
        return {k: v for k, v in sorted(out.items()) if v}

    def to_json(self) -> dict:
        d = {
            "ring": self.ring,
            "groups": [
                {"h": h, "q": q, "free": g.free, "torsion": list(g.torsion)}
                for (h, q), g in sorted(self.nonzero().items(), key=lambda kv: (-kv[0][0], -kv[0][1]))
            ],
        }
        if self.window is not None:
            d["window"] = list(self.window)
        d.update(self.meta)
        return d

    def table_text(self) -> str:
        nz = self.nonzero()
        if not nz:
            return f"[{self.ring}] zero\n"
        hs = sorted({h for h, _ in nz}, reverse=True)
        qs = sorted({q for _, q in nz}, reverse=True)
        cells = {}
        for (h, q), g in nz.items():
            parts = []
            if g.free:
                parts.append("Z" if g.free == 1 else f"Z^{g.free}")
            for t in g.torsion:
                parts.append(f"Z/{t}")
            if self.ring == MOD2:
                parts = ["F2" if g.free == 1 else f"F2^{g.free}"]
            cells[(h, q)] = "+".join(parts)
        w = max(5, max(len(c) for c in cells.values()) + 1)
        lines = [f"[{self.ring}]", "q\\h".rjust(5) + "".join(str(h).rjust(w) for h in hs)]
        for q in qs:
            lines.append(str(q).rjust(5) + "".join(cells.get((h, q), ".").rjust(w) for h in hs))
        return "\n".join(lines) + "\n"


def _basis_by_block(C: GradedComplex) -> Dict[Tuple[int, int], List[Tuple[int, int]]]:
    """(h, q) -> ordered list of (object id, basis index)."""
    if C.n != 0:
        raise HomologyError("homology needs a closed complex (n = 0)")
    b0 = C.closures[0]
    blocks: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
    for oid in C.ordered_ids():
        o = C.objs[oid]
        k = n_circles(o.tangle, b0)
        for idx in range(1 << k):
            q = o.q_shift + q_degree(idx, k)
            blocks.setdefault((o.h, q), []).append((oid, idx))
    return blocks


def block_matrices(C: GradedComplex, spec: Optional[str] = None):
    """Differential blocks d: (h, q) -> (h+1, q), as dense lists of rows.
    With spec=None the entries stay in R."""
    blocks = _basis_by_block(C)
    pos = {}
    for key, lst in blocks.items():
        for k, be in enumerate(lst):
            pos[be] = (key, k)
    mats: Dict[Tuple[int, int], list] = {}
    zero = 0 if spec else RingElem()
    for (h, q), lst in blocks.items():
        tgt = blocks.get((h + 1, q))
        if not tgt:
            continue
        mats[(h, q)] = [[zero] * len(lst) for _ in range(len(tgt))]
    for s, row in C.out.items():
        for t, mats_ in row.items():
            m = mats_[0]
            for i, j, v in m.entries():
                (ks, cj) = pos[(s, j)]
                (kt, ri) = pos[(t, i)]
                if kt != (ks[0] + 1, ks[1]):
                    raise HomologyError("differential is not q-homogeneous")
                mats[ks][ri][cj] = v.specialize(spec) if spec else v
    return blocks, mats


def homology(C: GradedComplex, spec: str = EVEN) -> HomologyTable:
    if spec not in (EVEN, ODD, MOD2):
        raise HomologyError(f"unknown ring {spec!r}")
    base = EVEN if spec == MOD2 else spec
    blocks, mats = block_matrices(C, base)
    rank_out: Dict[Tuple[int, int], int] = {}
    tors_in: Dict[Tuple[int, int], List[int]] = {}
    for (h, q), M in mats.items():
        if spec == MOD2:
            r = rank_mod2(M)
        else:
            snf = smith_normal_form(M)
            r = snf.rank
            tors_in[(h + 1, q)] = [f for f in snf.factors if f > 1]
        rank_out[(h, q)] = r
    groups = {}
    for (h, q), lst in blocks.items():
        free = len(lst) - rank_out.get((h, q), 0) - rank_out.get((h - 1, q), 0)
        groups[(h, q)] = Group(free, tors_in.get((h, q), []))
    return HomologyTable(spec, groups)


def mod2_dimensions(T: HomologyTable) -> Dict[Tuple[int, int], int]:
    """dim over GF(2) of H tensor F2, via the universal coefficient theorem
    (free + torsion in degree h, plus 2-torsion from degree h+1)."""
    if T.ring == MOD2:
        return {k: g.free for k, g in T.groups.items() if g.free}
    out: Dict[Tuple[int, int], int] = {}
    for (h, q), g in T.groups.items():
        even_t = sum(1 for t in g.torsion if t % 2 == 0)
        out[(h, q)] = out.get((h, q), 0) + g.free + even_t
        out[(h - 1, q)] = out.get((h - 1, q), 0) + even_t
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------- over R

ONE_PLUS_XY = RingElem({(0, 0, 0): 1, (1, 1, 0): 1})
ONE_MINUS_XY = RingElem({(0, 0, 0): 1, (1, 1, 0): -1})


def unit_times_1pxy(e: RingElem) -> bool:
    """e == u (1 + XY) for a unit u."""
    t = e.terms
    if len(t) != 2:
        return False
    (m1, c1), (m2, c2) = sorted(t.items())
    return c1 == c2 and abs(c1) == 1 and (m1[0] ^ m2[0], m1[1] ^ m2[1], m1[2] - m2[2]) == (1, 1, 0)


@dataclass(frozen=True)
class RSummand:
    kind: str  # "R", "R/(1+XY)R" or "(1-XY)R"
    h: int
    q: int
    bidegree: Optional[Tuple[int, int]] = None

    def __str__(self):
        return f"{self.kind}{{q={self.q}}}"


def homology_overR_restricted(C: GradedComplex) -> List[RSummand]:
    """Homology over R for complexes whose differential, after cancelling unit
    entries, has at most one nonzero entry per row and column, each of the
    form unit * (1 + XY).  Raises HomologyError('unsupported-presentation')
    otherwise."""
    blocks, mats = block_matrices(C, None)
    # vertices (h, q, k); edges with ring entries
    out: Dict[Tuple, Dict[Tuple, RingElem]] = {}
    inc: Dict[Tuple, Dict[Tuple, RingElem]] = {}
    nodes = []
    for (h, q), lst in blocks.items():
        for k in range(len(lst)):
            v = (h, q, k)
            nodes.append(v)
            out[v] = {}
            inc[v] = {}
    for (h, q), M in mats.items():
        for i, row in enumerate(M):
            for j, e in enumerate(row):
                if e:
                    s, t = (h, q, j), (h + 1, q, i)
                    out[s][t] = e
                    inc[t][s] = e
    alive = set(nodes)
    # cancel unit entries
    changed = True
    while changed:
        changed = False
        for x in sorted(alive):
            piv = next((y for y in sorted(out[x]) if out[x][y].is_unit()), None)
            if piv is None:
                continue
            y = piv
            ainv = out[x][y].inverse()
            for w in list(inc[y]):
                if w == x:
                    continue
                c = inc[y][w]
                for u in list(out[x]):
                    if u == y:
                        continue
                    val = out[w].get(u, RingElem()) - out[x][u] * ainv * c
                    if val:
                        out[w][u] = val
                        inc[u][w] = val
                    else:
                        out[w].pop(u, None)
                        inc[u].pop(w, None)
            for z in (x, y):
                for t in list(out[z]):
                    inc[t].pop(z, None)
                for s in list(inc[z]):
                    out[s].pop(z, None)
                out[z] = {}
                inc[z] = {}
                alive.discard(z)
            changed = True
            break
    summands = []
    for v in sorted(alive, key=lambda v: (-v[0], -v[1], v[2])):
        o = list(out[v].values())
        i = list(inc[v].values())
        if len(o) > 1 or len(i) > 1 or any(not unit_times_1pxy(e) for e in o + i):
            raise HomologyError("unsupported-presentation")
        if any(len(inc[t]) > 1 for t in out[v]) or any(len(out[s]) > 1 for s in inc[v]):
            raise HomologyError("unsupported-presentation")
        h, q, _ = v
        if not o and not i:
            summands.append(RSummand("R", h, q))
        elif i and not o:
            summands.append(RSummand("R/(1+XY)R", h, q))
        elif o and not i:
            summands.append(RSummand("(1-XY)R", h, q))
        else:
            raise HomologyError("unsupported-presentation")
    return summands


def summarize_R(summands: Sequence[RSummand]) -> Dict[int, List[Tuple[str, int]]]:
    out: Dict[int, List[Tuple[str, int]]] = {}
    for s in summands:
        out.setdefault(s.h, []).append((s.kind, s.q))
    return {h: sorted(v, key=lambda t: (-t[1], t[0])) for h, v in sorted(out.items(), reverse=True)}


def specialize_R_report(summands: Sequence[RSummand], spec: str) -> Dict[Tuple[int, int], Tuple[int, Tuple[int, ...]]]:
    """Even/odd groups implied by an R-report (universal coefficients are not
    needed here: the presentation is already split)."""
    acc: Dict[Tuple[int, int], List] = {}
    for s in summands:
        free, tors = acc.setdefault((s.h, s.q), [0, []])
        if s.kind == "R":
            acc[(s.h, s.q)][0] += 1
        elif s.kind == "R/(1+XY)R":
            # 1 + XY specializes to 2 (even) or 0 (odd)
            if spec == EVEN:
                acc[(s.h, s.q)][1].append(2)
            else:
                acc[(s.h, s.q)][0] += 1
        else:
            # kernel of (1+XY): zero when 1+XY is 2, everything when it is 0
            if spec == ODD:
                acc[(s.h, s.q)][0] += 1
    return {k: (v[0], tuple(sorted(v[1]))) for k, v in sorted(acc.items()) if v[0] or v[1]}
