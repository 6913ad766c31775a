"""Chain complexes over flat tangles, with maps stored per closure.

An object is a flat tangle t (free loops allowed) with homological degree h
and a q-shift.  For each crossingless closure b its module is F(close(t, b))
on the ordered circles [free loops of t] + [circles of t glued to b, by least
boundary point].  A differential entry is one matrix over R per closure.
Every transformation below acts closure by closure, so each closed complex
stays an honest chain complex of free R-modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import Mat
from .planar import FlatTangle, closure_circles, matchings, trace_closure
from .ring import BiDegree, ONE, RingElem
from .tqft import permutation_matrix, q_degree


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class GradedObject:
    tangle: FlatTangle
    h: int
    q_shift: int
    label: Tuple = ()
    bidegree_shift: BiDegree = BiDegree(0, 0)

    def sort_key(self):
        return (self.h, self.tangle.partner, self.tangle.free_loops, -self.q_shift, self.label)


@lru_cache(maxsize=None)
def closure_list(n: int) -> Tuple[FlatTangle, ...]:
    return matchings(n)


@lru_cache(maxsize=200000)
def closed_circles(partner: Tuple[int, ...], b_partner: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    return tuple(closure_circles(partner, b_partner))


def n_circles(t: FlatTangle, b: FlatTangle) -> int:
    return t.free_loops + len(closed_circles(t.partner, b.partner))


Entry = Tuple[Mat, ...]  # one matrix per closure


class GradedComplex:
    """Objects keyed by integer ids; ``d[(src, tgt)]`` holds per-closure maps."""

    def __init__(self, n: int):
        self.n = n
        self.closures = closure_list(n)
        self.objs: Dict[int, GradedObject] = {}
        self.out: Dict[int, Dict[int, Entry]] = {}
        self.inc: Dict[int, Dict[int, Entry]] = {}
        self._next = 0

    # ------------------------------------------------------------ building
    def dim(self, oid: int, ci: int) -> int:
        return 1 << n_circles(self.objs[oid].tangle, self.closures[ci])

    def add_object(self, obj: GradedObject) -> int:
        if obj.tangle.n != self.n:
            raise ComplexError(f"object with n={obj.tangle.n} in a complex with n={self.n}")
        oid = self._next
        self._next += 1
        self.objs[oid] = obj
        self.out[oid] = {}
        self.inc[oid] = {}
        return oid

    def set_entry(self, src: int, tgt: int, mats: Sequence[Mat]) -> None:
        mats = tuple(mats)
        if len(mats) != len(self.closures):
            raise ComplexError("need one matrix per closure")
        if all(m.is_zero() for m in mats):
            self.out[src].pop(tgt, None)
            self.inc[tgt].pop(src, None)
            return
        self.out[src][tgt] = mats
        self.inc[tgt][src] = mats

    def add_to_entry(self, src: int, tgt: int, mats: Sequence[Mat]) -> None:
        cur = self.out[src].get(tgt)
        if cur is None:
            self.set_entry(src, tgt, mats)
        else:
            self.set_entry(src, tgt, [a + b for a, b in zip(cur, mats)])

    def entry(self, src: int, tgt: int) -> Optional[Entry]:
        return self.out[src].get(tgt)

    def remove_object(self, oid: int) -> None:
        for t in list(self.out[oid]):
            del self.inc[t][oid]
        for s in list(self.inc[oid]):
            del self.out[s][oid]
        del self.out[oid], self.inc[oid], self.objs[oid]

    # ------------------------------------------------------------ views
    def ordered_ids(self) -> List[int]:
        return sorted(self.objs, key=lambda i: (self.objs[i].sort_key(), i))

    def degrees(self) -> List[int]:
        return sorted({o.h for o in self.objs.values()})

    def objects_at(self, h: int) -> List[int]:
        return [i for i in self.ordered_ids() if self.objs[i].h == h]

    def __len__(self) -> int:
        return len(self.objs)

    def summary(self) -> List[Tuple[int, str, int]]:
        """(h, tangle, q) for every object, sorted."""
        return sorted((o.h, str(o.tangle), o.q_shift) for o in self.objs.values())

    def object_data(self) -> List[Tuple[int, Tuple[int, ...], int, int]]:
        return sorted((o.h, o.tangle.partner, o.tangle.free_loops, o.q_shift) for o in self.objs.values())

    def copy(self) -> "GradedComplex":
        c = GradedComplex(self.n)
        c.objs = dict(self.objs)
        c.out = {k: dict(v) for k, v in self.out.items()}
        c.inc = {k: dict(v) for k, v in self.inc.items()}
        c._next = self._next
        return c

    # ------------------------------------------------------------ checks
    def check_degrees(self) -> None:
        for s, row in self.out.items():
            for t in row:
                if self.objs[t].h != self.objs[s].h + 1:
                    raise ComplexError(f"entry {s}->{t} does not raise h by one")

    def d_squared_zero(self) -> bool:
        return not self.d_squared_failures(limit=1)

    def d_squared_failures(self, limit: int = 10) -> List[Tuple[int, int, int]]:
        bad = []
        for s in self.ordered_ids():
            targets: Dict[int, List[Mat]] = {}
            for m, e1 in self.out[s].items():
                for t, e2 in self.out[m].items():
                    acc = targets.get(t)
                    prod = [b @ a for a, b in zip(e1, e2)]
                    targets[t] = prod if acc is None else [x + y for x, y in zip(acc, prod)]
            for t, mats in targets.items():
                for ci, mm in enumerate(mats):
                    if not mm.is_zero():
                        bad.append((s, t, ci))
                        if len(bad) >= limit:
                            return bad
        return bad

    def is_q_homogeneous(self) -> bool:
        """Every nonzero matrix entry preserves the q-degree."""
        for s, row in self.out.items():
            os_ = self.objs[s]
            for t, mats in row.items():
                ot = self.objs[t]
                for ci, m in enumerate(mats):
                    ks = n_circles(os_.tangle, self.closures[ci])
                    kt = n_circles(ot.tangle, self.closures[ci])
                    for i, j, _ in m.entries():
                        if q_degree(j, ks) + os_.q_shift != q_degree(i, kt) + ot.q_shift:
                            return False
        return True

    # ------------------------------------------------------------ serialization
    def to_json(self) -> dict:
        ids = self.ordered_ids()
        pos = {i: k for k, i in enumerate(ids)}
        objs = [
            {"tangle": self.objs[i].tangle.to_flat(), "loops": self.objs[i].tangle.free_loops,
             "h": self.objs[i].h, "q_shift": self.objs[i].q_shift}
            for i in ids
        ]
        entries = []
        for s in ids:
            for t in sorted(self.out[s], key=pos.get):
                entries.append({
                    "src": pos[s], "tgt": pos[t],
                    "maps": [m.to_json() for m in self.out[s][t]],
                })
        return {"n": self.n, "closures": [b.to_flat() for b in self.closures],
                "objects": objs, "entries": entries}


# ---------------------------------------------------------------- delooping

def deloop(C: GradedComplex) -> GradedComplex:
    """Replace each object with k free loops by 2^k loop-free objects.

    Free loops occupy the lowest basis bits; the summand with loop labels s
    (bit set = v-) has q-shift + k - 2*popcount(s)."""
    out = GradedComplex(C.n)
    pieces: Dict[int, List[Tuple[int, int]]] = {}  # old id -> [(s, new id)]
    for oid in C.ordered_ids():
        o = C.objs[oid]
        k = o.tangle.free_loops
        lst = []
        for s in range(1 << k):
            pc = bin(s).count("1")
            no = GradedObject(
                o.tangle.without_loops(), o.h, o.q_shift + k - 2 * pc,
                o.label + ((k, s),) if k else o.label,
                o.bidegree_shift + BiDegree(k - pc, -pc),
            )
            lst.append((s, out.add_object(no)))
        pieces[oid] = lst
    for src in C.ordered_ids():
        ks = C.objs[src].tangle.free_loops
        for tgt, mats in C.out[src].items():
            kt = C.objs[tgt].tangle.free_loops
            blocks: Dict[Tuple[int, int], List[Dict[int, Dict[int, RingElem]]]] = {}
            for ci, m in enumerate(mats):
                for i, j, v in m.entries():
                    key = (j & ((1 << ks) - 1), i & ((1 << kt) - 1))
                    cols = blocks.setdefault(key, [dict() for _ in C.closures])[ci]
                    cols.setdefault(j >> ks, {})[i >> kt] = v
            for (ss, st), per in blocks.items():
                ns = pieces[src][ss][1]
                nt = pieces[tgt][st][1]
                ms = [Mat(out.dim(nt, ci), out.dim(ns, ci), per[ci]) for ci in range(len(C.closures))]
                out.set_entry(ns, nt, ms)
    return out


# ---------------------------------------------------------------- elimination

def _is_pivot(C: GradedComplex, src: int, tgt: int, mats: Entry) -> bool:
    a, b = C.objs[src], C.objs[tgt]
    if a.tangle != b.tangle or a.q_shift != b.q_shift:
        return False
    return all(m.unit_diagonal() for m in mats)


def eliminate_pair(C: GradedComplex, x: int, y: int) -> None:
    """Gaussian elimination along the isomorphism x -> y (in place):
    d(w -> u) -= d(x -> u) a^-1 d(w -> y)."""
    a = C.out[x][y]
    ainv = [m.diag_inverse() for m in a]
    sources = [w for w in C.inc[y] if w != x]
    targets = [u for u in C.out[x] if u != y]
    for w in sources:
        c = C.out[w][y]
        ac = [ai @ ci for ai, ci in zip(ainv, c)]
        for u in targets:
            b = C.out[x][u]
            corr = [-(bi @ aci) for bi, aci in zip(b, ac)]
            C.add_to_entry(w, u, corr)
    C.remove_object(x)
    C.remove_object(y)


def gaussian_eliminate(C: GradedComplex, in_place: bool = False) -> GradedComplex:
    """Remove every unit-diagonal entry between equal loop-free tangles,
    lowest h first, then in object order."""
    if not in_place:
        C = C.copy()
    while True:
        found = None
        for x in C.ordered_ids():
            if C.objs[x].tangle.free_loops:
                continue
            for y in sorted(C.out[x], key=lambda i: (C.objs[i].sort_key(), i)):
                if _is_pivot(C, x, y, C.out[x][y]):
                    found = (x, y)
                    break
            if found:
                break
        if not found:
            return C
        eliminate_pair(C, *found)
        # sweep the rest of this pass cheaply
        _sweep(C)


def _sweep(C: GradedComplex) -> None:
    for x in C.ordered_ids():
        if x not in C.objs or C.objs[x].tangle.free_loops:
            continue
        for y in sorted(C.out[x], key=lambda i: (C.objs[i].sort_key(), i)):
            if _is_pivot(C, x, y, C.out[x][y]):
                eliminate_pair(C, x, y)
                break


def simplify(C: GradedComplex) -> GradedComplex:
    return gaussian_eliminate(deloop(C), in_place=True)


# ---------------------------------------------------------------- shifts, cones

def shift(C: GradedComplex, h: int = 0, q: int = 0) -> GradedComplex:
    out = C.copy()
    out.objs = {i: replace(o, h=o.h + h, q_shift=o.q_shift + q) for i, o in C.objs.items()}
    return out


def cone(f: Dict[Tuple[int, int], Sequence[Mat]], A: GradedComplex, B: GradedComplex) -> GradedComplex:
    """Cone of a chain map f: A -> B given by entries {(a, b): mats}.  A sits
    one degree lower with negated differential."""
    if A.n != B.n:
        raise ComplexError("cone of complexes with different n")
    for (a, b) in f:
        if B.objs[b].h != A.objs[a].h:
            raise ComplexError("chain map must preserve h")
    out = GradedComplex(A.n)
    ma, mb = {}, {}
    for i in A.ordered_ids():
        o = A.objs[i]
        ma[i] = out.add_object(replace(o, h=o.h - 1, label=("A",) + o.label))
    for i in B.ordered_ids():
        o = B.objs[i]
        mb[i] = out.add_object(replace(o, label=("B",) + o.label))
    for s, row in A.out.items():
        for t, mats in row.items():
            out.set_entry(ma[s], ma[t], [-m for m in mats])
    for s, row in B.out.items():
        for t, mats in row.items():
            out.set_entry(mb[s], mb[t], mats)
    for (a, b), mats in f.items():
        out.add_to_entry(ma[a], mb[b], mats)
    if not out.d_squared_zero():
        raise ComplexError("not a chain map: the cone fails d^2 = 0")
    return out


def identity_map(A: GradedComplex) -> Dict[Tuple[int, int], List[Mat]]:
    return {(i, i): [Mat.identity(A.dim(i, ci)) for ci in range(len(A.closures))] for i in A.objs}


# ---------------------------------------------------------------- trace

def _transport(old_keys: Sequence, new_keys: Sequence) -> Mat:
    return permutation_matrix(list(old_keys), list(new_keys))


def _trace_keys(t: FlatTangle, b_old: FlatTangle, t_new: FlatTangle, b_new: FlatTangle):
    """Circle keys of close(t, b_old) in its order and in the order of
    close(t_new, b_new); keys are tagged free loops or least point sets."""
    m = 2 * t.n
    old = [("f", k) for k in range(t.free_loops)]
    circ_old = closed_circles(t.partner, b_old.partner)
    old += [frozenset(c) for c in circ_old]
    new = [("f", k) for k in range(t.free_loops)]
    loop_circle = None
    for c in circ_old:
        if set(c) == {0, m - 1}:
            loop_circle = frozenset(c)
    if loop_circle is not None:
        new.append(loop_circle)
    lookup = {}
    for c in circ_old:
        inner = sorted(p - 1 for p in c if p not in (0, m - 1))
        if inner:
            lookup[inner[0]] = frozenset(c)
    for c in closed_circles(t_new.partner, b_new.partner):
        new.append(lookup[min(c)])
    return old, new


def trace(C: GradedComplex) -> GradedComplex:
    """Partial trace: join points 1 and 2n.  Closure b' of the result is the
    closure b' + outer arc of C."""
    n = C.n
    if n < 1:
        raise ComplexError("trace needs n >= 1")
    out = GradedComplex(n - 1)
    m = 2 * n
    # closure b' (0-based, 2n-2 points) -> old closure index
    old_index = {b.partner: ci for ci, b in enumerate(C.closures)}
    cmap = []
    for bn in out.closures:
        p = [0] * m
        p[0], p[m - 1] = m - 1, 0
        for i, j in enumerate(bn.partner):
            p[i + 1] = j + 1
        cmap.append(old_index[tuple(p)])
    ids = {}
    newt = {}
    for oid in C.ordered_ids():
        o = C.objs[oid]
        t2, rec = trace_closure(o.tangle)
        t2 = FlatTangle(n - 1, t2.partner, len(rec))
        newt[oid] = t2
        ids[oid] = out.add_object(replace(o, tangle=t2))
    perm_cache = {}

    def perm(oid, nci, inverse=False):
        key = (oid, nci, inverse)
        if key not in perm_cache:
            t = C.objs[oid].tangle
            old, new = _trace_keys(t, C.closures[cmap[nci]], newt[oid], out.closures[nci])
            perm_cache[key] = _transport(new, old) if inverse else _transport(old, new)
        return perm_cache[key]

    for s, row in C.out.items():
        for t, mats in row.items():
            ms = [perm(t, nci) @ mats[cmap[nci]] @ perm(s, nci, True) for nci in range(len(out.closures))]
            out.set_entry(ids[s], ids[t], ms)
    return out


# ---------------------------------------------------------------- gluing flat pieces

def _glue_cycles(nodes_partner: Dict, outer_edges: List[Tuple]) -> List[List]:
    """Cycles of the graph whose vertices carry one internal partner edge and
    one outer edge each; each cycle is the list of visited vertices."""
    outer = {}
    for a, b in outer_edges:
        outer[a] = b
        outer[b] = a
    seen = set()
    cycles = []
    for start in sorted(nodes_partner):
        if start in seen:
            continue
        cyc = []
        p = start
        while True:
            seen.add(p)
            cyc.append(p)
            q = nodes_partner[p]
            seen.add(q)
            cyc.append(q)
            p = outer[q]
            if p == start:
                break
        cycles.append(cyc)
    return cycles


def _composite_geometry(kind: str, top: FlatTangle, bot: FlatTangle, b: FlatTangle, active: str):
    """Circles of close(composite, b) and the outside matching seen by the
    active factor.

    kind: 'stack' (top over bot, same n) or 'juxt' (top left, bot right).
    Returns (composite circle keys in canonical order, outside partner of
    the active factor, spectator keys, active closure-circle keys)."""
    if kind == "stack":
        n = top.n
        N = n
        comp_to = lambda p: ("T", p) if p < n else ("S", p)  # noqa: E731
        middle = [(("T", n + j - 1), ("S", n - j)) for j in range(1, n + 1)]
    else:
        m, n = top.n, bot.n
        N = m + n

        def comp_to(p):  # 0-based composite point
            q = p + 1
            if q <= n:
                return ("S", q - 1)
            if q <= N:
                return ("T", q - n - 1)
            if q <= N + m:
                return ("T", m + (q - N) - 1)
            return ("S", n + (q - N - m) - 1)
        middle = []
    partner = {}
    for i, j in enumerate(top.partner):
        partner[("T", i)] = ("T", j)
    for i, j in enumerate(bot.partner):
        partner[("S", i)] = ("S", j)
    back = {comp_to(p): p for p in range(2 * N)}
    outer = list(middle)
    for p, q in enumerate(b.partner):
        if p < q:
            outer.append((comp_to(p), comp_to(q)))
    cycles = _glue_cycles(partner, outer)
    # composite canonical order
    free = [("fT", k) for k in range(top.free_loops)] + [("fS", k) for k in range(bot.free_loops)]
    mids, closed = [], []
    for cyc in cycles:
        pts = [back[v] for v in cyc if v in back]
        key = frozenset(cyc)
        if pts:
            closed.append((min(pts), key))
        else:
            mids.append((min(cyc), key))
    comp_keys = free + [k for _, k in sorted(mids)] + [k for _, k in sorted(closed)]
    # outside matching of the active factor
    tag = "T" if active == "top" else "S"
    fac = top if active == "top" else bot
    outer_map = {}
    for a, c in outer:
        outer_map[a] = c
        outer_map[c] = a
    out_partner = [-1] * (2 * fac.n)
    for i in range(2 * fac.n):
        p = outer_map[(tag, i)]
        while p[0] != tag:
            p = outer_map[partner[p]]
        out_partner[i] = p[1]
    spect = [("fS", k) for k in range(bot.free_loops)] if active == "top" else [("fT", k) for k in range(top.free_loops)]
    spect += [frozenset(cyc) for cyc in cycles if not any(v[0] == tag for v in cyc)]
    return comp_keys, tuple(out_partner), spect


def _active_keys(fac: FlatTangle, outside: Tuple[int, ...], tag: str, comp_keys) -> List:
    """Keys (in the composite's vocabulary) for the active factor's circles."""
    keys = [("f" + tag, k) for k in range(fac.free_loops)]
    by_pt = {}
    for k in comp_keys:
        if isinstance(k, frozenset):
            for v in k:
                if v[0] == tag:
                    by_pt[v[1]] = k
    for c in closed_circles(fac.partner, outside):
        keys.append(by_pt[min(c)])
    return keys


def _glue_flat(kind: str, A: GradedComplex, P: FlatTangle, active: str, n_out: int,
               h: int = 0, q: int = 0) -> GradedComplex:
    out = GradedComplex(n_out)
    ids = {}
    for oid in A.ordered_ids():
        o = A.objs[oid]
        top, bot = (o.tangle, P) if active == "top" else (P, o.tangle)
        if kind == "stack":
            from .planar import stack as pstack
            t, rec = pstack(top.without_loops(), bot.without_loops())
            t = FlatTangle(t.n, t.partner, top.free_loops + bot.free_loops + len(rec))
        else:
            from .planar import juxtapose as pjux
            t = pjux(top, bot)
        ids[oid] = out.add_object(replace(o, tangle=t, h=o.h + h, q_shift=o.q_shift + q))
    a_index = {b.partner: ci for ci, b in enumerate(A.closures)}
    geo_cache = {}

    def geo(oid, bi):
        key = (A.objs[oid].tangle, bi)
        if key not in geo_cache:
            o = A.objs[oid]
            top, bot = (o.tangle, P) if active == "top" else (P, o.tangle)
            comp_keys, outside, spect = _composite_geometry(kind, top, bot, out.closures[bi], active)
            tag = "T" if active == "top" else "S"
            act = _active_keys(o.tangle, outside, tag, comp_keys)
            fwd = _transport(spect + act, comp_keys)
            bwd = _transport(comp_keys, spect + act)
            geo_cache[key] = (a_index[outside], len(spect), fwd, bwd)
        return geo_cache[key]

    for s, row in A.out.items():
        for t, mats in row.items():
            ms = []
            for bi in range(len(out.closures)):
                ci, ns, fwd_s, bwd_s = geo(s, bi)
                ci2, nt, fwd_t, bwd_t = geo(t, bi)
                assert ci == ci2 and ns == nt
                m = _tensor_identity(mats[ci], ns)
                ms.append(fwd_t @ m @ bwd_s)
            out.set_entry(ids[s], ids[t], ms)
    return out


def _tensor_identity(m: Mat, k: int) -> Mat:
    """id on k low bits (spectators) tensor m on the high bits."""
    if k == 0:
        return m
    cols = {}
    for j, col in m.cols.items():
        for s in range(1 << k):
            cols[(j << k) | s] = {(i << k) | s: v for i, v in col.items()}
    return Mat(m.nrows << k, m.ncols << k, cols)


def flat_complex(t: FlatTangle, h: int = 0, q: int = 0) -> GradedComplex:
    C = GradedComplex(t.n)
    C.add_object(GradedObject(t, h, q))
    return C


def _single_flat(C: GradedComplex) -> Optional[GradedObject]:
    if len(C.objs) == 1:
        return next(iter(C.objs.values()))
    return None


def stack(A: GradedComplex, B: GradedComplex) -> GradedComplex:
    """A on top of B.  One factor must be a single flat object."""
    if A.n != B.n:
        raise ComplexError(f"cannot stack n={A.n} on n={B.n}")
    fa, fb = _single_flat(A), _single_flat(B)
    if fa is not None:
        return _glue_flat("stack", B, fa.tangle, "bottom", A.n, fa.h, fa.q_shift)
    if fb is not None:
        return _glue_flat("stack", A, fb.tangle, "top", A.n, fb.h, fb.q_shift)
    raise ComplexError("stacking two complexes with differentials is not supported; "
                       "stack the diagrams and build the complex instead")


def juxtapose(A: GradedComplex, B: GradedComplex) -> GradedComplex:
    """A on the left, B on the right.  One factor must be a single flat object."""
    fa, fb = _single_flat(A), _single_flat(B)
    if fa is not None:
        return _glue_flat("juxt", B, fa.tangle, "bottom", A.n + B.n, fa.h, fa.q_shift)
    if fb is not None:
        return _glue_flat("juxt", A, fb.tangle, "top", A.n + B.n, fb.h, fb.q_shift)
    raise ComplexError("juxtaposing two complexes with differentials is not supported")


# ---------------------------------------------------------------- Euler characteristic

def chi_q(C: GradedComplex) -> Dict[int, int]:
    """Graded Euler characteristic of a closed complex, {q exponent: coeff}."""
    if C.n != 0:
        raise ComplexError("chi_q of a tangle complex: use chi_q_tl")
    return chi_q_tl(C).get((), {})


def chi_q_tl(C: GradedComplex) -> Dict[Tuple[int, ...], Dict[int, int]]:
    """Euler characteristic as a TL element: {matching partner: Laurent poly},
    each free loop contributing q + 1/q."""
    out: Dict[Tuple[int, ...], Dict[int, int]] = {}
    for o in C.objs.values():
        poly = {o.q_shift: 1}
        for _ in range(o.tangle.free_loops):
            nxt: Dict[int, int] = {}
            for e, c in poly.items():
                nxt[e + 1] = nxt.get(e + 1, 0) + c
                nxt[e - 1] = nxt.get(e - 1, 0) + c
            poly = nxt
        sgn = -1 if o.h % 2 else 1
        acc = out.setdefault(o.tangle.partner, {})
        for e, c in poly.items():
            acc[e] = acc.get(e, 0) + sgn * c
    return {k: {e: c for e, c in sorted(v.items()) if c} for k, v in sorted(out.items())
            if any(v.values())}
