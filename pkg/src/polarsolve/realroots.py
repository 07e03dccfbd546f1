"""Real roots of a univariate representation: Sturm isolation and Thom codes.

Everything is exact.  Signs of polynomials at an algebraic number are read
off an interval enclosure when it excludes zero, and otherwise from a
Sturm-Tarski query on the isolating interval.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .ratpoly import UniPoly, is_squarefree
from .zerodim import UnivariateRepresentation

Interval = tuple[Fraction, Fraction]


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def signed_remainder_sequence(a: UniPoly, b: UniPoly) -> list[UniPoly]:
    seq = [a, b]
    while seq[-1]:
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def sign_variations(polys: Sequence[UniPoly], x) -> int:
    signs = [s for s in (p.sign_at(x) for p in polys) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


@dataclass(frozen=True)
class SturmChain:
    polys: tuple[UniPoly, ...]

    def variations(self, x) -> int:
        return sign_variations(self.polys, x)

    def count(self, a, b) -> int:
        """Number of roots in ``(a, b]``; in ``(a, b)`` when ``b`` is not a root."""
        return self.variations(a) - self.variations(b)


def sturm_chain(q: UniPoly) -> SturmChain:
    if q.degree() < 1:
        raise ValueError("Sturm chain needs a polynomial of positive degree")
    if not is_squarefree(q):
        raise ValueError("Sturm chain needs a squarefree polynomial")
    return SturmChain(tuple(signed_remainder_sequence(q, q.derivative())))


def root_bound(q: UniPoly) -> Fraction:
    """Cauchy bound: every complex root has modulus below ``1 + max|a_i / a_n|``."""
    lc = q.lc
    return 1 + max((abs(c / lc) for c in q.coeffs[:-1]), default=Fraction(0))


def _non_root_between(q: UniPoly, a: Fraction, b: Fraction) -> Fraction:
    """The midpoint of ``(a, b)``, nudged by dyadic steps if it is a root."""
    mid = (a + b) / 2
    step = (b - a) / 4
    while not q(mid):
        mid, step = mid + step, step / 2
    return mid


def isolate_real_roots(q: UniPoly) -> list[Interval]:
    """Disjoint open intervals with non-root rational endpoints, one per real
    root, sorted increasingly."""
    if q.degree() < 1:
        return []
    chain = sturm_chain(q)
    B = root_bound(q)
    out: list[Interval] = []
    stack = [(-B, B, chain.count(-B, B))]
    while stack:
        a, b, k = stack.pop()
        if k == 0:
            continue
        if k == 1:
            out.append((a, b))
            continue
        m = _non_root_between(q, a, b)
        left = chain.count(a, m)
        stack.append((a, m, left))
        stack.append((m, b, k - left))
    return sorted(out)


def sign_at_root(q: UniPoly, interval: Interval, h: UniPoly) -> int:
    """Sign of ``h`` at the unique root of ``q`` in ``interval``."""
    lo, hi = h.eval_interval(*interval)
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    if h.degree() < 1:
        return _sign(h(0))
    # Sturm-Tarski: Var(sRem(q, q'h); a, b) = sum of sign h over roots in (a, b)
    seq = signed_remainder_sequence(q, q.derivative() * h)
    a, b = interval
    return sign_variations(seq, a) - sign_variations(seq, b)


def thom_encode(q: UniPoly, interval: Interval) -> tuple[int, ...]:
    """Signs of ``q', .., q^(deg q - 1)`` at the isolated root."""
    return tuple(sign_at_root(q, interval, q.derivative(k)) for k in range(1, q.degree()))


def _refine_interval(q: UniPoly, interval: Interval, eps: Fraction) -> Interval:
    a, b = interval
    sa = q.sign_at(a)
    while b - a >= eps:
        m = (a + b) / 2
        sm = q.sign_at(m)
        if sm == 0:
            delta = (b - a) / 4
            a, b = m - delta, m + delta
            sa = q.sign_at(a)
        elif sm == sa:
            a, sa = m, sm
        else:
            b = m
    return a, b


@dataclass(frozen=True)
class AlgebraicPoint:
    """The point ``(p_1(u), .., p_n(u))`` for the root ``u`` of ``q`` in
    ``root_interval``."""
    q: UniPoly
    root_interval: Interval
    thom_code: tuple[int, ...]
    coords: tuple[UniPoly, ...]

    def box(self) -> list[Interval]:
        return [p.eval_interval(*self.root_interval) for p in self.coords]

    def box_width(self) -> Fraction:
        return max((hi - lo for lo, hi in self.box()), default=Fraction(0))

    def midpoint(self) -> list[Fraction]:
        return [(lo + hi) / 2 for lo, hi in self.box()]


def refine(point: AlgebraicPoint, eps) -> AlgebraicPoint:
    """Narrow the isolating interval below width ``eps``."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    a, b = point.root_interval
    if b - a < eps:
        return point
    return replace(point, root_interval=_refine_interval(point.q, (a, b), eps))


def refine_box(point: AlgebraicPoint, eps) -> AlgebraicPoint:
    """Refine until every coordinate box is narrower than ``eps``."""
    eps = Fraction(eps)
    while point.box_width() >= eps:
        a, b = point.root_interval
        point = refine(point, (b - a) / 2)
    return point


@dataclass(frozen=True)
class RealSolutionSet:
    representation: UnivariateRepresentation
    points: tuple[AlgebraicPoint, ...]

    @property
    def empty_certificate(self) -> bool:
        return not self.points


def real_points(rep: UnivariateRepresentation, eps=None) -> RealSolutionSet:
    """Isolate and Thom-encode every real solution, refining boxes when ``eps`` is given."""
    q = rep.q
    points = []
    for iv in isolate_real_roots(q):
        pt = AlgebraicPoint(q, iv, thom_encode(q, iv), rep.params)
        if eps is not None:
            pt = refine_box(pt, eps)
        points.append(pt)
    return RealSolutionSet(rep, tuple(points))
