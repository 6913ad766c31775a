"""Exact arithmetic in R = Z[X, Y, Z^{+-1}] / (X^2 = Y^2 = 1).

A monomial is a triple ``(x, y, z)`` with ``x, y`` in {0, 1} and ``z`` any
integer.  Ring elements are finite integer combinations of monomials.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Tuple

Mono = Tuple[int, int, int]

EVEN, ODD, MOD2 = "even", "odd", "mod2"
SPECS = (EVEN, ODD, MOD2)


@dataclass(frozen=True, order=True)
class BiDegree:
    first: int = 0
    second: int = 0

    def __add__(self, other: "BiDegree") -> "BiDegree":
        return BiDegree(self.first + other.first, self.second + other.second)

    def __sub__(self, other: "BiDegree") -> "BiDegree":
        return BiDegree(self.first - other.first, self.second - other.second)

    def __neg__(self) -> "BiDegree":
        return BiDegree(-self.first, -self.second)

    def q(self) -> int:
        return self.first + self.second

    def as_tuple(self) -> Tuple[int, int]:
        return (self.first, self.second)

    def __repr__(self) -> str:
        return f"{{{self.first},{self.second}}}"


def _bideg(u) -> Tuple[int, int]:
    if isinstance(u, BiDegree):
        return u.first, u.second
    return u[0], u[1]


def lambda_mono(u, v) -> Mono:
    """Bilinear pairing: X^(u1 v1) Y^(u2 v2) Z^(u1 v2 - u2 v1)."""
    u1, u2 = _bideg(u)
    v1, v2 = _bideg(v)
    return ((u1 * v1) & 1, (u2 * v2) & 1, u1 * v2 - u2 * v1)


def mono_mul(a: Mono, b: Mono) -> Mono:
    return (a[0] ^ b[0], a[1] ^ b[1], a[2] + b[2])


def mono_inv(a: Mono) -> Mono:
    return (a[0], a[1], -a[2])


ONE_MONO: Mono = (0, 0, 0)


class RingElem:
    """Immutable element of R, stored as {monomial: nonzero int}."""

    __slots__ = ("_t", "_h")

    def __init__(self, terms: Dict[Mono, int] | None = None, _trusted: bool = False):
        if terms is None:
            self._t: Dict[Mono, int] = {}
        elif _trusted:
            self._t = terms
        else:
            t: Dict[Mono, int] = {}
            for m, c in terms.items():
                m = (m[0] & 1, m[1] & 1, int(m[2]))
                c = t.get(m, 0) + int(c)
                if c:
                    t[m] = c
                else:
                    t.pop(m, None)
            self._t = t
        self._h = None

    # constructors
    @staticmethod
    def const(c: int) -> "RingElem":
        return RingElem({ONE_MONO: c} if c else {}, _trusted=True)

    @staticmethod
    def mono(m: Mono, c: int = 1) -> "RingElem":
        m = (m[0] & 1, m[1] & 1, m[2])
        return RingElem({m: c} if c else {}, _trusted=True)

    @staticmethod
    def lam(u, v) -> "RingElem":
        return RingElem.mono(lambda_mono(u, v))

    # inspection
    @property
    def terms(self) -> Dict[Mono, int]:
        return dict(self._t)

    def items(self) -> Iterator[Tuple[Mono, int]]:
        return iter(sorted(self._t.items(), reverse=True))

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_unit(self) -> bool:
        if len(self._t) != 1:
            return False
        (c,) = self._t.values()
        return c in (1, -1)

    def unit_parts(self) -> Tuple[int, Mono]:
        """For a unit, return (sign, monomial)."""
        if not self.is_unit():
            raise ValueError(f"{self} is not a unit")
        ((m, c),) = self._t.items()
        return c, m

    def inverse(self) -> "RingElem":
        c, m = self.unit_parts()
        return RingElem({mono_inv(m): c}, _trusted=True)

    # arithmetic
    def __add__(self, other) -> "RingElem":
        if not isinstance(other, RingElem):
            other = RingElem.const(int(other))
        if not other._t:
            return self
        if not self._t:
            return other
        t = dict(self._t)
        for m, c in other._t.items():
            c2 = t.get(m, 0) + c
            if c2:
                t[m] = c2
            else:
                del t[m]
        return RingElem(t, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "RingElem":
        return RingElem({m: -c for m, c in self._t.items()}, _trusted=True)

    def __sub__(self, other) -> "RingElem":
        if not isinstance(other, RingElem):
            other = RingElem.const(int(other))
        return self + (-other)

    def __rsub__(self, other) -> "RingElem":
        return (-self) + other

    def __mul__(self, other) -> "RingElem":
        if not isinstance(other, RingElem):
            k = int(other)
            if k == 0:
                return ZERO
            return RingElem({m: c * k for m, c in self._t.items()}, _trusted=True)
        if not self._t or not other._t:
            return ZERO
        t: Dict[Mono, int] = {}
        for (x1, y1, z1), c1 in self._t.items():
            for (x2, y2, z2), c2 in other._t.items():
                m = (x1 ^ x2, y1 ^ y2, z1 + z2)
                c = t.get(m, 0) + c1 * c2
                if c:
                    t[m] = c
                else:
                    t.pop(m, None)
        return RingElem(t, _trusted=True)

    __rmul__ = __mul__

    def mul_mono(self, m: Mono, sign: int = 1) -> "RingElem":
        x, y, z = m
        return RingElem(
            {(a ^ x, b ^ y, c + z): k * sign for (a, b, c), k in self._t.items()},
            _trusted=True,
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = RingElem.const(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self._t == other._t

    def __hash__(self) -> int:
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    # specialization
    def specialize(self, spec: str) -> int:
        total = 0
        if spec == ODD:
            for (_, y, _), c in self._t.items():
                total += -c if y else c
            return total
        for c in self._t.values():
            total += c
        if spec == MOD2:
            return total % 2
        if spec != EVEN:
            raise ValueError(f"unknown specialization {spec!r}")
        return total

    # text form
    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for (x, y, z), c in self.items():
            factors = []
            if x:
                factors.append("X")
            if y:
                factors.append("Y")
            if z == 1:
                factors.append("Z")
            elif z:
                factors.append(f"Z^{z}")
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = f"{abs(c)}*" + "*".join(factors)
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    def __repr__(self) -> str:
        return f"RingElem({self})"

    @staticmethod
    def parse(text: str) -> "RingElem":
        return parse_elem(text)


ZERO = RingElem()
ONE = RingElem.const(1)
X = RingElem.mono((1, 0, 0))
Y = RingElem.mono((0, 1, 0))
Z = RingElem.mono((0, 0, 1))
ZINV = RingElem.mono((0, 0, -1))

_FACTOR_RE = re.compile(r"^(X|Y|Z)(?:\^(-?\d+))?$")


def _split_terms(text: str) -> Iterable[Tuple[int, str]]:
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty ring element")
    i, n = 0, len(s)
    while i < n:
        sign = 1
        if s[i] in "+-":
            sign = -1 if s[i] == "-" else 1
            i += 1
        j = i
        while j < n and not (s[j] in "+-" and s[j - 1] != "^"):
            j += 1
        body = s[i:j]
        if not body:
            raise ValueError(f"bad ring element {text!r}")
        yield sign, body
        i = j


def parse_elem(text: str) -> RingElem:
    """Parse the text form, e.g. ``-2*X*Z^-3 + 1``."""
    acc: Dict[Mono, int] = {}
    for sign, body in _split_terms(text):
        coeff, x, y, z = 1, 0, 0, 0
        for f in body.split("*"):
            if f.isdigit():
                coeff *= int(f)
                continue
            m = _FACTOR_RE.match(f)
            if not m:
                raise ValueError(f"bad factor {f!r} in {text!r}")
            e = int(m.group(2)) if m.group(2) is not None else 1
            if m.group(1) == "X":
                x += e
            elif m.group(1) == "Y":
                y += e
            else:
                z += e
        key = (x & 1, y & 1, z)
        acc[key] = acc.get(key, 0) + sign * coeff
    return RingElem(acc)


def is_unit(e: RingElem) -> bool:
    return e.is_unit()


def specialize(e: RingElem, spec: str) -> int:
    return e.specialize(spec)


def lam(u, v) -> RingElem:
    """lambda(u, v) as a ring element."""
    return RingElem.lam(u, v)
