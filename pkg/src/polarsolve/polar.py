"""Jacobian minors and the localized polar systems built from them.

Column, row and variable indices are 1-based throughout this module.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, prod
from typing import Sequence

from .ratpoly import MultiPoly, RatMatrix, poly_det, rational_det

DEFAULT_Z_BOUND = 97


class ArithmeticBug(AssertionError):
    """An exact identity that must hold did not."""


@dataclass(frozen=True)
class SystemInput:
    n: int
    p: int
    polys: tuple[MultiPoly, ...]
    degree_bound_d: int = 0

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(self.polys))
        if not 1 <= self.p <= self.n:
            raise ValueError(f"need 1 <= p <= n, got p={self.p}, n={self.n}")
        if len(self.polys) != self.p:
            raise ValueError(f"expected {self.p} polynomials, got {len(self.polys)}")
        if any(f.nvars != self.n for f in self.polys):
            raise ValueError(f"all polynomials must have {self.n} variables")
        dmax = max(f.degree() for f in self.polys)
        if not self.degree_bound_d:
            object.__setattr__(self, "degree_bound_d", dmax)
        elif self.degree_bound_d < dmax:
            raise ValueError(f"degree bound {self.degree_bound_d} below actual degree {dmax}")

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(f.degree() for f in self.polys)


@dataclass(frozen=True, order=True)
class MinorSelection:
    """A p-minor (``columns``) and the (p-1)-minor obtained by deleting one row and column.

    ``deleted_col_k`` is a position inside ``columns``, so the dropped Jacobian
    column is ``columns[deleted_col_k - 1]``.
    """
    columns: tuple[int, ...]
    deleted_row_j: int
    deleted_col_k: int

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        cols = self.columns
        if any(a >= b for a, b in zip(cols, cols[1:])) or (cols and cols[0] < 1):
            raise ValueError(f"columns must be strictly increasing positive ints: {cols}")
        p = len(cols)
        if not (1 <= self.deleted_row_j <= p and 1 <= self.deleted_col_k <= p):
            raise ValueError("deleted row/column must lie in 1..p")

    @property
    def p(self) -> int:
        return len(self.columns)

    @property
    def small_columns(self) -> tuple[int, ...]:
        """Columns of the (p-1)-minor."""
        k = self.deleted_col_k - 1
        return self.columns[:k] + self.columns[k + 1:]

    @property
    def small_rows(self) -> tuple[int, ...]:
        return tuple(r for r in range(1, self.p + 1) if r != self.deleted_row_j)

    def __str__(self):
        return ",".join(map(str, self.columns)) + f":{self.deleted_row_j},{self.deleted_col_k}"

    @classmethod
    def parse(cls, text: str) -> "MinorSelection":
        cols, _, jk = text.partition(":")
        j, k = (int(v) for v in jk.split(","))
        return cls(tuple(int(c) for c in cols.split(",")), j, k)


def enumerate_charts(n: int, p: int) -> list[MinorSelection]:
    """All ``p^2 * C(n, p)`` selections in canonical (sorted) order."""
    charts = [MinorSelection(cols, j, k)
              for cols in combinations(range(1, n + 1), p)
              for j in range(1, p + 1)
              for k in range(1, p + 1)]
    assert len(charts) == p * p * comb(n, p)
    return charts


def canonical_chart(n: int, p: int) -> MinorSelection:
    """Upper-left (p-1)-minor completed by the last column."""
    return MinorSelection(tuple(range(1, p)) + (n,), p, p)


def jacobian(s: SystemInput) -> list[list[MultiPoly]]:
    return [[f.diff(j) for j in range(1, s.n + 1)] for f in s.polys]


def _check_columns(n: int, cols: Sequence[int], size: int):
    if len(cols) != size or len(set(cols)) != size or any(not 1 <= c <= n for c in cols):
        raise ValueError(f"bad column tuple {tuple(cols)} for a {size}-minor with n={n}")


def jacobian_minor(jac, rows: Sequence[int], cols: Sequence[int], nvars: int) -> MultiPoly:
    return poly_det([[jac[r - 1][c - 1] for c in cols] for r in rows], nvars)


def minor(s: SystemInput, columns: Sequence[int], jac=None) -> MultiPoly:
    """The p-minor of the Jacobian on ``columns`` (taken in the given order)."""
    _check_columns(s.n, columns, s.p)
    jac = jac or jacobian(s)
    return jacobian_minor(jac, range(1, s.p + 1), columns, s.n)


def _leading_minor(a: RatMatrix, cols: Sequence[int]) -> Fraction:
    k = len(cols)
    return rational_det([[a[r, c - 1] for c in cols] for r in range(k)])


def exchange_identity_check(a: RatMatrix, big: Sequence[int], small: Sequence[int]) -> bool:
    """Check the minor exchange relation on ``a``.

    With ``M(I)`` the minor on the first ``|I|`` rows and the columns ``I`` in
    order, verifies exactly that

        M(small) M(big) = sum_{l : big[l] not in small} (-1)^(l+k) M(big - big[l]) M(small + big[l])

    where ``k = len(big)`` and ``l`` is 1-based.  The signs come from expanding
    ``M(small + [c])`` along its last column and contracting against the adjugate
    of the ``big`` block.
    """
    k = len(big)
    if len(small) != k - 1 or k < 1 or k > a.rows:
        raise ValueError("need index tuples of lengths k and k-1 with k <= rows")
    for idx in (big, small):
        if len(set(idx)) != len(idx) or any(not 1 <= c <= a.cols for c in idx):
            raise ValueError(f"malformed index tuple {tuple(idx)}")
    lhs = _leading_minor(a, small) * _leading_minor(a, big)
    rhs = Fraction(0)
    for l, c in enumerate(big, start=1):
        if c in small:
            continue
        eps = -1 if (l + k) % 2 else 1
        rest = [x for x in big if x != c]
        rhs += eps * _leading_minor(a, rest) * _leading_minor(a, list(small) + [c])
    return lhs == rhs


@dataclass(frozen=True)
class CoordinateChange:
    n: int
    p: int
    z: tuple[Fraction, ...]
    matrix_A: RatMatrix

    @property
    def is_identity(self) -> bool:
        return not any(self.z)


def z_positions(n: int, p: int) -> list[tuple[int, int]]:
    """Strictly-lower positions (row, col) of the active block, row-major."""
    return [(r, t) for r in range(p + 1, n + 1) for t in range(p, r)]


def coordinate_change_from_z(n: int, p: int, z: Sequence) -> CoordinateChange:
    """Assemble ``A = diag(I_{p-1}, Z)`` with ``Z`` unit lower triangular."""
    pos = z_positions(n, p)
    if len(z) != len(pos):
        raise ValueError(f"expected {len(pos)} parameters, got {len(z)}")
    z = tuple(Fraction(v) for v in z)
    rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for (r, t), v in zip(pos, z):
        rows[r - 1][t - 1] = v
    return CoordinateChange(n, p, z, RatMatrix.from_rows(rows))


def build_coordinate_change(n: int, p: int, seed: int | None,
                            bound: int = DEFAULT_Z_BOUND) -> CoordinateChange:
    """Seeded integer parameters in ``[-bound, bound]``; ``seed=None`` gives the identity."""
    s = (n - p) * (n - p + 1) // 2
    if seed is None:
        return coordinate_change_from_z(n, p, [0] * s)
    rng = random.Random(seed)
    return coordinate_change_from_z(n, p, [rng.randint(-bound, bound) for _ in range(s)])


def transform_system(s: SystemInput, c: CoordinateChange) -> SystemInput:
    """Pull back along ``X = A Y``: ``G_k(Y) = f_k(A Y)``."""
    if c.n != s.n:
        raise ValueError("coordinate change has the wrong dimension")
    if c.is_identity:
        return s
    ys = [MultiPoly.variable(s.n, j) for j in range(1, s.n + 1)]
    xs = c.matrix_A.apply(ys)
    return SystemInput(s.n, s.p, tuple(f.compose(xs) for f in s.polys), s.degree_bound_d)


@dataclass(frozen=True)
class PolarSystem:
    chart: MinorSelection
    i: int
    equations: tuple[MultiPoly, ...]
    localization_g: MultiPoly
    column_order: tuple[int, ...] = ()
    m: MultiPoly | None = None
    big_minor: MultiPoly | None = None

    @property
    def minors(self) -> tuple[MultiPoly, ...]:
        return self.equations[self.chart.p:]

    @property
    def preserves_flag(self) -> bool:
        """True when the reordered first ``p+i-1`` columns are the original ones.

        Only then do the minor equations describe the polar variety of the
        original coordinate flag.
        """
        k = self.chart.p + self.i - 1
        return set(self.column_order[:k]) == set(range(1, k + 1))


def polar_system(s: SystemInput, chart: MinorSelection, i: int, jac=None) -> PolarSystem:
    """Equations ``f_1..f_p, M(C,c_1)..M(C,c_i)`` and ``g = m * M(chart.columns)``.

    ``C`` holds the (p-1)-minor's columns; the Jacobian columns are reordered as
    ``C`` followed by the remaining columns in increasing order, and ``c_1..c_i``
    are the first ``i`` of those.
    """
    if not 0 <= i <= s.n - s.p:
        raise ValueError(f"polar index {i} outside 0..{s.n - s.p}")
    if chart.p != s.p or chart.columns[-1] > s.n:
        raise ValueError(f"chart {chart} does not fit p={s.p}, n={s.n}")
    jac = jac or jacobian(s)
    small = chart.small_columns
    rest = [c for c in range(1, s.n + 1) if c not in small]
    order = tuple(small) + tuple(rest)
    allrows = range(1, s.p + 1)
    eqs = [jacobian_minor(jac, allrows, tuple(small) + (c,), s.n) for c in rest[:i]]
    m = jacobian_minor(jac, chart.small_rows, small, s.n)
    big = jacobian_minor(jac, allrows, chart.columns, s.n)
    return PolarSystem(chart, i, tuple(s.polys) + tuple(eqs), m * big, order, m, big)


def cauchy_binet_D(s: SystemInput, jac=None) -> MultiPoly:
    """``det(J J^T)``, checked against the sum of squared p-minors."""
    jac = jac or jacobian(s)
    gram = [[sum((a * b for a, b in zip(jac[r], jac[t])), MultiPoly.zero(s.n))
             for t in range(s.p)] for r in range(s.p)]
    d = poly_det(gram, s.n)
    total = MultiPoly.zero(s.n)
    for cols in combinations(range(1, s.n + 1), s.p):
        mm = jacobian_minor(jac, range(1, s.p + 1), cols, s.n)
        total = total + mm * mm
    if d != total:
        raise ArithmeticBug("det(J J^T) differs from the sum of squared maximal minors")
    return d


@dataclass(frozen=True)
class DegreeReport:
    degrees: tuple[int, ...]
    bezout_D: int
    minor_degrees_c: tuple[int, ...]
    bezout_D_top: int
    minor_degree_cap: int
    closed_form_bound: int
    crude_bound: int

    def as_dict(self) -> dict:
        return {
            "degrees": list(self.degrees),
            "D": self.bezout_D,
            "c": list(self.minor_degrees_c),
            "D_n_minus_p": self.bezout_D_top,
            "minor_degree_cap": self.minor_degree_cap,
            "closed_form_bound": self.closed_form_bound,
            "crude_bound": self.crude_bound,
        }


def bezout_report(s: SystemInput, charts: Sequence[MinorSelection] | None = None,
                  jac=None) -> DegreeReport:
    """Bezout-type degree bounds.

    ``c_i`` is the largest total degree of the i-th minor equation over the
    flag-preserving charts (all charts if none preserves the flag).
    """
    jac = jac or jacobian(s)
    degs = s.degrees
    D = prod(degs)
    cap = sum(degs) - s.p
    top = s.n - s.p
    if charts is None:
        charts = enumerate_charts(s.n, s.p)
    c = []
    if top:
        systems = [polar_system(s, ch, top, jac) for ch in charts]
        usable = [ps for ps in systems if ps.preserves_flag] or systems
        for k in range(top):
            c.append(max(max(ps.minors[k].degree(), 0) for ps in usable))
    d = s.degree_bound_d
    return DegreeReport(
        degrees=degs,
        bezout_D=D,
        minor_degrees_c=tuple(c),
        bezout_D_top=D * prod(c),
        minor_degree_cap=cap,
        closed_form_bound=D * cap ** top,
        crude_bound=d ** s.p * (s.p * d - s.p) ** top,
    )
