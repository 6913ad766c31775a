"""Brute-force even Khovanov homology over Z from the plain cube of
resolutions (Frobenius algebra Z[x]/x^2, signs (-1)^(ones before j)).

Shares nothing with the package beyond reading the PD data, so it serves as
an independent oracle for the even specialization."""

import itertools
from collections import defaultdict

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form


def _circles(d, v):
    parent = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x, bit in zip(d.crossings, v):
        for s, t in x.smoothing(bit):
            parent[find(x.arcs[s])] = find(x.arcs[t])
    groups = defaultdict(set)
    for a in list(parent):
        groups[find(a)].add(a)
    out = sorted(frozenset(g) for g in groups.values())
    out += [frozenset([("loop", k)]) for k in range(d.loops)]
    return sorted(out, key=lambda g: sorted(map(str, g)))


def _generators(d):
    """{(h, q): [(v, circles, labels)]}; label 0 is 1 (q +1), 1 is x (q -1)."""
    npos, nneg = d.n_plus, d.n_minus
    gens = defaultdict(list)
    for v in itertools.product((0, 1), repeat=d.c):
        circ = _circles(d, v)
        for labs in itertools.product((0, 1), repeat=len(circ)):
            h = sum(v) - nneg
            q = sum(v) + npos - 2 * nneg + sum(1 - 2 * l for l in labs)
            gens[(h, q)].append((v, tuple(circ), labs))
    return gens


def _image(d, gen, j):
    v, circ, labs = gen
    w = list(v)
    w[j] = 1
    w = tuple(w)
    sign = (-1) ** sum(v[:j])
    new = _circles(d, w)
    old = dict(zip(circ, labs))
    keep = {c: l for c, l in old.items() if c in new}
    gone = [c for c in circ if c not in new]
    born = [c for c in new if c not in circ]
    outs = []
    if len(gone) == 2:  # merge
        a, b = (old[c] for c in gone)
        if a + b <= 1:
            outs.append({born[0]: a + b})
    else:  # split
        (a,) = (old[c] for c in gone)
        if a == 0:
            outs += [{born[0]: 0, born[1]: 1}, {born[0]: 1, born[1]: 0}]
        else:
            outs.append({born[0]: 1, born[1]: 1})
    res = []
    for o in outs:
        lab = dict(keep)
        lab.update(o)
        res.append(((w, tuple(new), tuple(lab[c] for c in new)), sign))
    return res


def homology_even(d):
    """{(h, q): (rank, torsion tuple)} of the nonzero groups."""
    gens = _generators(d)
    index = {k: {g: i for i, g in enumerate(v)} for k, v in gens.items()}
    mats = {}
    for (h, q), lst in gens.items():
        tgt = index.get((h + 1, q), {})
        M = [[0] * len(lst) for _ in range(len(tgt))]
        for i, g in enumerate(lst):
            for j, bit in enumerate(g[0]):
                if bit == 0:
                    for img, s in _image(d, g, j):
                        M[tgt[img]][i] += s
        mats[(h, q)] = M

    def snf(M):
        if not M or not M[0]:
            return []
        S = smith_normal_form(Matrix(M), domain=ZZ)
        return [abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0]

    out = {}
    for (h, q), lst in gens.items():
        out_f = snf(mats[(h, q)])
        in_f = snf(mats.get((h - 1, q), []))
        free = len(lst) - len(out_f) - len(in_f)
        tors = tuple(sorted(f for f in in_f if f > 1))
        if free or tors:
            out[(h, q)] = (free, tors)
    return out
