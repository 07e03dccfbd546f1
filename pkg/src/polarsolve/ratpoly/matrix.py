"""Rational matrices and determinants over polynomial entries."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence

from .multipoly import MultiPoly, as_rational


class RatMatrix:
    """Dense row-major matrix of Fractions.  Immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(as_rational(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows, self.cols, self.entries = rows, cols, entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [int(i == j) for i in range(n) for j in range(n)])

    def __getitem__(self, rc: tuple[int, int]) -> Fraction:
        r, c = rc
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> tuple[Fraction, ...]:
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(r)) for r in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         [self[r, c] for c in range(self.cols) for r in range(self.rows)])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        """0-based row and column selections, in the order given."""
        return RatMatrix(len(rows), len(cols), [self[r, c] for r in rows for c in cols])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return RatMatrix(self.rows, other.cols, [
            sum((self[i, k] * other[k, j] for k in range(self.cols)), Fraction(0))
            for i in range(self.rows) for j in range(other.cols)])

    def apply(self, vec: Sequence):
        """Matrix-vector product; works for any entries supporting ``*`` and ``+``."""
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        out = []
        for r in range(self.rows):
            acc = None
            for c in range(self.cols):
                a = self[r, c]
                if a:
                    term = vec[c] * a
                    acc = term if acc is None else acc + term
            out.append(acc if acc is not None else vec[0] * 0)
        return out

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return rational_det(self.to_rows())

    def inverse(self) -> "RatMatrix":
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        aug = [self.to_rows()[i] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return RatMatrix(n, n, [x for row in aug for x in row[n:]])

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in self.row(r)) for r in range(self.rows))
        return f"RatMatrix([{body}])"


def rational_det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    a = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pv = a[col][col]
        det *= pv
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] / pv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def _perm_sign(perm) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def leibniz_det(m: Sequence[Sequence[MultiPoly]], nvars: int) -> MultiPoly:
    """Permutation-sum determinant.  Exponential; used for tiny sizes and as an oracle."""
    n = len(m)
    total = MultiPoly.constant(nvars, 1 if n == 0 else 0)
    for perm in permutations(range(n)):
        term = MultiPoly.constant(nvars, _perm_sign(perm))
        for i, j in enumerate(perm):
            term = term * m[i][j]
            if not term:
                break
        total = total + term
    return total


def cofactor_det(m: Sequence[Sequence[MultiPoly]], nvars: int) -> MultiPoly:
    n = len(m)
    if n == 0:
        return MultiPoly.constant(nvars, 1)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = MultiPoly.zero(nvars)
    for j in range(n):
        if not m[0][j]:
            continue
        sub = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * cofactor_det(sub, nvars)
        total = total + term if j % 2 == 0 else total - term
    return total


def bareiss_det(m: Sequence[Sequence[MultiPoly]], nvars: int) -> MultiPoly:
    """Fraction-free elimination; every division is exact by Sylvester's identity."""
    n = len(m)
    if n == 0:
        return MultiPoly.constant(nvars, 1)
    a = [list(r) for r in m]
    sign = 1
    prev = MultiPoly.constant(nvars, 1)
    for k in range(n - 1):
        if not a[k][k]:
            piv = next((r for r in range(k + 1, n) if a[r][k]), None)
            if piv is None:
                return MultiPoly.zero(nvars)
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exquo(prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def poly_det(m: Sequence[Sequence[MultiPoly]], nvars: int | None = None) -> MultiPoly:
    """Exact determinant of a square matrix of polynomials.

    Cofactor expansion up to 4x4, fraction-free Bareiss above.  ``nvars`` is only
    needed for the empty matrix.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    if nvars is None:
        if n == 0:
            raise ValueError("nvars required for an empty matrix")
        nvars = m[0][0].nvars
    if n <= 4:
        return cofactor_det(m, nvars)
    return bareiss_det(m, nvars)
