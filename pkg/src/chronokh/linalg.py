"""Sparse matrices over R, stored column-wise."""

from __future__ import annotations

from typing import Dict, Iterator, Optional, Tuple

from .ring import ONE, ZERO, Mono, RingElem


class Mat:
    """A sparse nrows x ncols matrix; ``cols[j][i]`` is entry (i, j)."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: Optional[Dict[int, Dict[int, RingElem]]] = None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols: Dict[int, Dict[int, RingElem]] = cols if cols is not None else {}

    @staticmethod
    def identity(n: int, u: RingElem = ONE) -> "Mat":
        return Mat(n, n, {i: {i: u} for i in range(n)} if u else {})

    @staticmethod
    def zero(nrows: int, ncols: int) -> "Mat":
        return Mat(nrows, ncols)

    def entries(self) -> Iterator[Tuple[int, int, RingElem]]:
        for j in sorted(self.cols):
            col = self.cols[j]
            for i in sorted(col):
                yield i, j, col[i]

    def get(self, i: int, j: int) -> RingElem:
        return self.cols.get(j, {}).get(i, ZERO)

    def add_entry(self, i: int, j: int, v: RingElem) -> None:
        if not v:
            return
        col = self.cols.setdefault(j, {})
        w = col.get(i)
        w = v if w is None else w + v
        if w:
            col[i] = w
        else:
            del col[i]
            if not col:
                del self.cols[j]

    def is_zero(self) -> bool:
        return not self.cols

    def copy(self) -> "Mat":
        return Mat(self.nrows, self.ncols, {j: dict(c) for j, c in self.cols.items()})

    def __matmul__(self, other: "Mat") -> "Mat":
        # (self o other): other first
        if other.nrows != self.ncols:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        out: Dict[int, Dict[int, RingElem]] = {}
        for j, col in other.cols.items():
            acc: Dict[int, RingElem] = {}
            for k, a in col.items():
                bcol = self.cols.get(k)
                if not bcol:
                    continue
                for i, b in bcol.items():
                    v = b * a
                    w = acc.get(i)
                    acc[i] = v if w is None else w + v
            acc = {i: v for i, v in acc.items() if v}
            if acc:
                out[j] = acc
        return Mat(self.nrows, other.ncols, out)

    def __add__(self, other: "Mat") -> "Mat":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in addition")
        out = self.copy()
        for i, j, v in other.entries():
            out.add_entry(i, j, v)
        return out

    def __neg__(self) -> "Mat":
        return Mat(self.nrows, self.ncols, {j: {i: -v for i, v in c.items()} for j, c in self.cols.items()})

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def scale(self, s: RingElem) -> "Mat":
        if not s:
            return Mat(self.nrows, self.ncols)
        out = {}
        for j, c in self.cols.items():
            nc = {i: v * s for i, v in c.items()}
            nc = {i: v for i, v in nc.items() if v}
            if nc:
                out[j] = nc
        return Mat(self.nrows, self.ncols, out)

    def scale_mono(self, m: Mono, sign: int = 1) -> "Mat":
        return Mat(
            self.nrows,
            self.ncols,
            {j: {i: v.mul_mono(m, sign) for i, v in c.items()} for j, c in self.cols.items()},
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self.cols == other.cols

    def scalar_identity(self) -> Optional[RingElem]:
        """u if self == u * Identity for a unit u, else None."""
        if self.nrows != self.ncols or len(self.cols) != self.ncols:
            return None
        u = None
        for j, c in self.cols.items():
            if len(c) != 1 or j not in c:
                return None
            v = c[j]
            if u is None:
                if not v.is_unit():
                    return None
                u = v
            elif v != u:
                return None
        return u if u is not None else (ONE if self.ncols == 0 else None)

    def unit_diagonal(self) -> bool:
        """True if square, diagonal, with unit entries everywhere on it."""
        if self.nrows != self.ncols or len(self.cols) != self.ncols:
            return False
        for j, c in self.cols.items():
            if len(c) != 1 or j not in c or not c[j].is_unit():
                return False
        return True

    def diag_inverse(self) -> "Mat":
        return Mat(self.ncols, self.nrows, {j: {j: c[j].inverse()} for j, c in self.cols.items()})

    def restrict(self, rows, cols) -> "Mat":
        """Submatrix on the given (ordered) row and column index lists."""
        rpos = {r: k for k, r in enumerate(rows)}
        out = {}
        for newj, j in enumerate(cols):
            c = self.cols.get(j)
            if not c:
                continue
            nc = {rpos[i]: v for i, v in c.items() if i in rpos}
            if nc:
                out[newj] = nc
        return Mat(len(rows), len(cols), out)

    def specialize(self, spec: str):
        """Dense integer matrix (list of rows)."""
        rows = [[0] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.entries():
            rows[i][j] = v.specialize(spec)
        return rows

    def to_json(self):
        return [[i, j, str(v)] for i, j, v in self.entries()]

    def __repr__(self) -> str:
        body = ", ".join(f"({i},{j}):{v}" for i, j, v in self.entries())
        return f"Mat[{self.nrows}x{self.ncols}]{{{body}}}"
