"""Decategorified oracles: Laurent polynomials, the Kauffman bracket by a
state sum, quantum integers, and Jones-Wenzl elements of TL_n over Q(q).

Nothing here touches the categorified code paths; the bracket walks the PD
arcs with its own union-find so it can serve as an independent check.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, Mapping, Optional, Tuple

import sympy

from .diagrams import TangleDiagram
from .planar import FlatTangle, identity_tangle, juxtapose, matchings, stack, tl_generator

q = sympy.Symbol("q")


class LaurentPoly(dict):
    """{exponent: integer coefficient}, zero coefficients dropped."""

    def __init__(self, data: Optional[Mapping[int, int]] = None):
        super().__init__()
        for e, c in (data or {}).items():
            if c:
                self[int(e)] = c

    @classmethod
    def mono(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls({e: c})

    def __add__(self, other):
        out = dict(self)
        for e, c in other.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.items()})

    def __sub__(self, other):
        return self + (-LaurentPoly(other))

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.items()})
        out: Dict[int, int] = {}
        for e1, c1 in self.items():
            for e2, c2 in other.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = LaurentPoly({0: 1})
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self.items()})

    def window(self, lo: Optional[int] = None, hi: Optional[int] = None) -> "LaurentPoly":
        return LaurentPoly({e: c for e, c in self.items()
                            if (lo is None or e >= lo) and (hi is None or e <= hi)})

    def __str__(self) -> str:
        if not self:
            return "0"
        out = ""
        for e in sorted(self, reverse=True):
            c = self[e]
            mag = abs(c)
            if e == 0:
                term = str(mag)
            else:
                var = "q" if e == 1 else f"q^{e}"
                term = var if mag == 1 else f"{mag}*{var}"
            if not out:
                out = ("-" if c < 0 else "") + term
            else:
                out += (" - " if c < 0 else " + ") + term
        return out

    def to_sympy(self):
        return sum((c * q ** e for e, c in self.items()), sympy.Integer(0))


LOOP = LaurentPoly({1: 1, -1: 1})


def quantum_integer(k: int) -> LaurentPoly:
    """[k] = (q^k - q^-k) / (q - q^-1)."""
    if k == 0:
        return LaurentPoly()
    if k < 0:
        return -quantum_integer(-k)
    return LaurentPoly({e: 1 for e in range(-(k - 1), k, 2)})


# ---------------------------------------------------------------- bracket

def _components(d: TangleDiagram, v: Tuple[int, ...]) -> int:
    parent: Dict[int, int] = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for x, bit in zip(d.crossings, v):
        a, b, c, e = x.arcs
        if bit == 0:
            union(a, b)
            union(c, e)
        else:
            union(a, e)
            union(b, c)
        for lab in x.arcs:
            find(lab)
    return len({find(a) for a in parent}) + d.loops


def kauffman_bracket_A(d: TangleDiagram) -> LaurentPoly:
    """<D> in the variable A: <X> = A <0-smoothing> + A^-1 <1-smoothing>,
    each circle worth -A^2 - A^-2 (so the unknot is -A^2 - A^-2)."""
    if d.n:
        raise ValueError("the bracket needs a closed diagram")
    delta = LaurentPoly({2: -1, -2: -1})
    out = LaurentPoly()
    for v in product((0, 1), repeat=d.c):
        ones = sum(v)
        out = out + (delta ** _components(d, v)).shift(d.c - 2 * ones)
    return out


def kauffman_bracket(d: TangleDiagram) -> LaurentPoly:
    """A^-c <D> with A^-2 -> -q, i.e. sum over states of
    (-q)^|v| (q + 1/q)^(#circles)."""
    if d.n:
        raise ValueError("the bracket needs a closed diagram")
    out = LaurentPoly()
    for v in product((0, 1), repeat=d.c):
        ones = sum(v)
        out = out + (LOOP ** _components(d, v)).shift(ones) * (-1 if ones % 2 else 1)
    return out


def jones_normalized(d: TangleDiagram) -> LaurentPoly:
    """(-1)^{n-} q^{n+ - 2 n-} times the q-bracket: the value the graded
    Euler characteristic of the standard complex must equal."""
    sgn = -1 if d.n_minus % 2 else 1
    return kauffman_bracket(d).shift(d.n_plus - 2 * d.n_minus) * sgn


# ---------------------------------------------------------------- Temperley-Lieb

TLElement = Dict[Tuple[int, ...], sympy.Expr]  # matching partner -> coefficient


def tl_mul(n: int, a: TLElement, b: TLElement) -> TLElement:
    """a * b = a stacked on top of b, closed loops worth q + 1/q."""
    out: Dict[Tuple[int, ...], sympy.Expr] = {}
    delta = q + 1 / q
    for pa, ca in a.items():
        for pb, cb in b.items():
            t, rec = stack(FlatTangle(n, pa), FlatTangle(n, pb))
            out[t.partner] = out.get(t.partner, 0) + ca * cb * delta ** len(rec)
    return _clean(out)


def _clean(x: TLElement) -> TLElement:
    out = {}
    for k, v in x.items():
        v = sympy.cancel(sympy.together(v))
        if v != 0:
            out[k] = v
    return out


def tl_add(a: TLElement, b: TLElement, s=1) -> TLElement:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + s * v
    return _clean(out)


def tl_basis(t: FlatTangle) -> TLElement:
    return {t.partner: sympy.Integer(1)}


def _extend(n: int, a: TLElement) -> TLElement:
    """a (on n strands) next to one straight strand on the right."""
    one = identity_tangle(1)
    return {juxtapose(FlatTangle(n, p), one).partner: c for p, c in a.items()}


@lru_cache(maxsize=None)
def _jw(n: int) -> Tuple[Tuple[Tuple[int, ...], sympy.Expr], ...]:
    if n < 1:
        raise ValueError("Jones-Wenzl needs n >= 1")
    if n == 1:
        return ((identity_tangle(1).partner, sympy.Integer(1)),)
    k = n - 1
    p = _extend(k, dict(_jw(k)))
    ratio = quantum_integer(k).to_sympy() / quantum_integer(n).to_sympy()
    mid = tl_mul(n, tl_mul(n, p, tl_basis(tl_generator(n, k))), p)
    res = tl_add(p, {t: ratio * c for t, c in mid.items()}, -1)
    return tuple(sorted(res.items()))


def tl_jones_wenzl(n: int) -> TLElement:
    """p_n by p_{k+1} = p_k (x) 1 - [k]/[k+1] (p_k (x) 1) e_k (p_k (x) 1)."""
    return dict(_jw(n))


def tl_trace(n: int, a: TLElement) -> sympy.Expr:
    """Markov closure: join point i to point 2n+1-i, loops worth q + 1/q."""
    delta = q + 1 / q
    ident = identity_tangle(n)
    total = sympy.Integer(0)
    from .planar import closure_circles
    for p, c in a.items():
        k = len(closure_circles(p, ident.partner))
        total += c * delta ** k
    return sympy.cancel(total)


def expand_at_infinity(expr, lowest: int) -> LaurentPoly:
    """Expand a rational function of q as a series in 1/q, keeping the
    exponents >= lowest."""
    num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
    pn = sympy.Poly(sympy.expand(num), q)
    pd = sympy.Poly(sympy.expand(den), q)
    N = {e: Fraction(int(c)) for (e,), c in pn.terms()}
    D = {e: Fraction(int(c)) for (e,), c in pd.terms()}
    top = max(D)
    lead = D[top]
    out: Dict[int, Fraction] = {}
    rem = dict(N)
    while rem:
        e = max(rem)
        if e - top < lowest:
            break
        c = rem[e] / lead
        out[e - top] = c
        for de, dc in D.items():
            k = e - top + de
            rem[k] = rem.get(k, 0) - c * dc
            if rem[k] == 0:
                del rem[k]
    for e, c in out.items():
        if c.denominator != 1:
            raise ValueError("expansion has non-integral coefficients")
    return LaurentPoly({e: int(c) for e, c in out.items()})


def jw_expansion(n: int, lowest: int) -> Dict[Tuple[int, ...], LaurentPoly]:
    """Coefficients of p_n expanded in 1/q down to q^lowest, by matching."""
    out = {}
    for p, c in tl_jones_wenzl(n).items():
        e = expand_at_infinity(c, lowest)
        if e:
            out[p] = e
    return out


def check_jw_kills_turnbacks(n: int) -> bool:
    p = tl_jones_wenzl(n)
    for i in range(1, n):
        e = tl_basis(tl_generator(n, i))
        if tl_mul(n, p, e) or tl_mul(n, e, p):
            return False
    return True


__all__ = [
    "LaurentPoly", "quantum_integer", "kauffman_bracket", "kauffman_bracket_A",
    "jones_normalized", "tl_jones_wenzl", "tl_mul", "tl_trace", "expand_at_infinity",
    "jw_expansion", "check_jw_kills_turnbacks", "q", "matchings",
]
