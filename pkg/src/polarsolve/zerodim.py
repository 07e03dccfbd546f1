"""Zero-dimensional solving: quotient rings and univariate representations.

A chart's polar system plus the Rabinowitsch equation ``T*g - 1`` is solved
through a Groebner basis of the ideal, the multiplication map of a separating
linear form on the quotient, and its minimal polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .groebner import groebner, leading_monomial, normal_form
from .polar import PolarSystem
from .ratpoly import (
    MultiPoly,
    UniPoly,
    crt_pair,
    is_squarefree,
    squarefree_part,
    uni_gcd,
)


class NotZeroDimensional(ArithmeticError):
    pass


class SeparationError(ArithmeticError):
    """The chosen linear form takes equal values on distinct solutions."""


class InconsistentCharts(ArithmeticError):
    pass


@dataclass(frozen=True)
class ZeroDimIdeal:
    """Generators in ``nvars`` variables; the first ``n`` are the geometric ones.

    When ``nvars == n + 1`` the last variable is the localization variable T.
    """
    generators: tuple[MultiPoly, ...]
    nvars: int
    n: int

    @property
    def localized(self) -> bool:
        return self.nvars == self.n + 1


def embed(f: MultiPoly, nvars: int) -> MultiPoly:
    """View ``f`` in a ring with extra trailing variables."""
    pad = (0,) * (nvars - f.nvars)
    return MultiPoly(nvars, {e + pad: c for e, c in f.terms.items()})


def univariate_in(q: UniPoly, form: MultiPoly) -> MultiPoly:
    """``q(form)`` as a multivariate polynomial."""
    acc = MultiPoly.zero(form.nvars)
    for c in reversed(q.coeffs):
        acc = acc * form + c
    return acc


def localize(ps: PolarSystem) -> ZeroDimIdeal:
    """Add ``T*g - 1`` for the chart's localization polynomial ``g``."""
    n = ps.equations[0].nvars
    if ps.i != n - ps.chart.p:
        raise ValueError(f"localize needs polar index n-p = {n - ps.chart.p}, got {ps.i}")
    gens = [embed(f, n + 1) for f in ps.equations]
    t = MultiPoly.variable(n + 1, n + 1)
    gens.append(t * embed(ps.localization_g, n + 1) - 1)
    return ZeroDimIdeal(tuple(gens), n + 1, n)


class QuotientRing:
    """``Q[X]/I`` for a zero-dimensional ideal, with a monomial basis."""

    def __init__(self, gb: list[MultiPoly], nvars: int, order="grevlex"):
        self.gb = gb
        self.nvars = nvars
        self.order = order
        lms = [leading_monomial(g, order) for g in gb]
        self.leading = lms
        if gb and any(all(e == 0 for e in m) for m in lms):
            self.basis: list[tuple[int, ...]] = []
        else:
            for k in range(nvars):
                if not any(m[k] and all(e == 0 for j, e in enumerate(m) if j != k) for m in lms):
                    raise NotZeroDimensional(f"no pure power of variable {k + 1} "
                                             f"among leading monomials")
            self.basis = self._standard_monomials(lms)
        self.index = {m: i for i, m in enumerate(self.basis)}

    def _standard_monomials(self, lms):
        start = (0,) * self.nvars
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for m in frontier:
                for k in range(self.nvars):
                    e = list(m)
                    e[k] += 1
                    e = tuple(e)
                    if e in seen or any(all(a <= b for a, b in zip(lm, e)) for lm in lms):
                        continue
                    seen.add(e)
                    nxt.append(e)
            frontier = nxt
        return sorted(seen, key=lambda e: (sum(e), e))

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def normal_form(self, f: MultiPoly) -> MultiPoly:
        return normal_form(f, self.gb, self.order)

    def coords(self, f: MultiPoly) -> list[Fraction]:
        vec = [Fraction(0)] * self.dimension
        for e, c in self.normal_form(f).terms.items():
            vec[self.index[e]] = c
        return vec

    def from_coords(self, vec: Sequence[Fraction]) -> MultiPoly:
        return MultiPoly(self.nvars, {m: c for m, c in zip(self.basis, vec) if c})

    def multiplication_matrix(self, f: MultiPoly) -> list[list[Fraction]]:
        """Column ``j`` holds the coordinates of ``f * basis[j]``."""
        cols = [self.coords(f * MultiPoly.monomial(m)) for m in self.basis]
        return [[cols[j][i] for j in range(self.dimension)] for i in range(self.dimension)]

    def power_vectors(self, f: MultiPoly, count: int) -> list[list[Fraction]]:
        """Coordinates of ``f^0 .. f^(count-1)``."""
        mat = self.multiplication_matrix(f)
        v = self.coords(MultiPoly.constant(self.nvars, 1))
        out = []
        for _ in range(count):
            out.append(v)
            v = [sum((row[j] * v[j] for j in range(len(v)) if v[j]), Fraction(0)) for row in mat]
        return out

    def minimal_polynomial(self, f: MultiPoly) -> UniPoly:
        vecs = self.power_vectors(f, self.dimension + 1)
        for k in range(1, self.dimension + 1):
            sol = solve_linear(vecs[:k], vecs[k])
            if sol is not None:
                return UniPoly([-c for c in sol] + [1])
        raise AssertionError("Cayley-Hamilton bound exceeded")


def quotient_basis(ideal: ZeroDimIdeal) -> QuotientRing:
    gb = groebner(ideal.generators)
    if not gb:
        raise NotZeroDimensional("zero ideal")
    return QuotientRing(gb, ideal.nvars)


def solve_linear(columns: Sequence[Sequence[Fraction]], target: Sequence[Fraction]):
    """Solve ``sum_i x_i * columns[i] = target`` exactly; ``None`` if inconsistent.

    Assumes the columns are linearly independent when a solution exists.
    """
    k = len(columns)
    rows = len(target)
    aug = [[columns[j][i] for j in range(k)] + [target[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, rows) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][k] for i in range(r, rows)):
        return None
    sol = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        sol[c] = aug[i][k]
    return sol


@dataclass(frozen=True)
class UnivariateRepresentation:
    """Solutions ``{(p_1(u), .., p_n(u)) : q(u) = 0}`` where ``u`` is the value of
    ``separating_form`` (coefficients on X1..Xn)."""
    q: UniPoly
    params: tuple[UniPoly, ...]
    separating_form: tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.params)

    @property
    def degree(self) -> int:
        return max(self.q.degree(), 0)

    @property
    def is_empty(self) -> bool:
        return self.q.degree() <= 0

    @classmethod
    def empty(cls, n: int, form: Sequence) -> "UnivariateRepresentation":
        return cls(UniPoly((1,)), tuple(UniPoly() for _ in range(n)),
                   tuple(Fraction(c) for c in form))


def linear_form(n: int, sep) -> tuple[Fraction, ...]:
    """Normalize a separating coordinate: 1-based index or coefficient vector."""
    if isinstance(sep, int):
        if not 1 <= sep <= n:
            raise ValueError(f"separating variable X{sep} outside 1..{n}")
        return tuple(Fraction(int(j == sep)) for j in range(1, n + 1))
    form = tuple(Fraction(c) for c in sep)
    if len(form) != n or not any(form):
        raise ValueError("separating form must be a nonzero vector of length n")
    return form


def candidate_forms(n: int) -> list[tuple[Fraction, ...]]:
    """``X_n`` first, then ``X_i + X_n`` for ``i = 1 .. n-1``."""
    forms = [linear_form(n, n)]
    for i in range(1, n):
        forms.append(tuple(Fraction(int(j in (i, n))) for j in range(1, n + 1)))
    return forms


def _form_poly(form: Sequence[Fraction], nvars: int) -> MultiPoly:
    acc = MultiPoly.zero(nvars)
    for j, c in enumerate(form, start=1):
        if c:
            acc = acc + MultiPoly.variable(nvars, j).scale(c)
    return acc


def univariate_representation(ideal: ZeroDimIdeal, sep, quotient: QuotientRing | None = None
                              ) -> UnivariateRepresentation:
    """Shape-position description of the (reduced) solution set of ``ideal``.

    The auxiliary variable, if any, is eliminated.  Raises ``SeparationError``
    when ``sep`` does not separate the solutions.
    """
    form = linear_form(ideal.n, sep)
    ring = quotient or quotient_basis(ideal)
    if ring.dimension == 0:
        return UnivariateRepresentation.empty(ideal.n, form)
    u = _form_poly(form, ideal.nvars)
    mu = ring.minimal_polynomial(u)
    q = squarefree_part(mu)
    if not (mu.degree() == ring.dimension and is_squarefree(mu)):
        # Pass to the radical: add the squarefree part of every variable's
        # minimal polynomial (zero-dimensional ideals only).
        extra = []
        for k in range(1, ideal.nvars + 1):
            xk = MultiPoly.variable(ideal.nvars, k)
            extra.append(univariate_in(squarefree_part(ring.minimal_polynomial(xk)), xk))
        extra.append(univariate_in(q, u))
        ring = QuotientRing(groebner(list(ring.gb) + extra), ideal.nvars)
        if q.degree() != ring.dimension:
            raise SeparationError(
                f"form takes {q.degree()} values on {ring.dimension} solutions")
    powers = ring.power_vectors(u, q.degree())
    params = []
    for k in range(1, ideal.n + 1):
        sol = solve_linear(powers, ring.coords(MultiPoly.variable(ideal.nvars, k)))
        if sol is None:
            raise SeparationError(f"X{k} is not a polynomial in the separating form")
        params.append(UniPoly(sol))
    return UnivariateRepresentation(q.monic(), tuple(params), form)


def eval_mod(f: MultiPoly, params: Sequence[UniPoly], q: UniPoly) -> UniPoly:
    """``f(p_1(T), .., p_n(T)) mod q(T)``."""
    if len(params) != f.nvars:
        raise ValueError("parameter count does not match polynomial arity")
    cache: dict[tuple[int, int], UniPoly] = {}

    def power(k, e):
        if e == 0:
            return UniPoly((1,))
        if (k, e) not in cache:
            cache[(k, e)] = (power(k, e - 1) * params[k]) % q
        return cache[(k, e)]

    acc = UniPoly()
    for exp, c in f.terms.items():
        term = UniPoly((c,))
        for k, e in enumerate(exp):
            if e:
                term = (term * power(k, e)) % q
        acc = acc + term
    return acc % q


def membership_residues(rep: UnivariateRepresentation, polys: Sequence[MultiPoly]) -> list[UniPoly]:
    if rep.is_empty:
        return [UniPoly() for _ in polys]
    return [eval_mod(f, rep.params, rep.q) for f in polys]


def verify_membership(rep: UnivariateRepresentation, polys: Sequence[MultiPoly]) -> bool:
    return all(not r for r in membership_residues(rep, polys))


def verify_localization(rep: UnivariateRepresentation, g: MultiPoly) -> bool:
    """``g`` is nonzero at every solution, i.e. ``gcd(g(p(T)), q) = 1``."""
    if rep.is_empty:
        return True
    return uni_gcd(eval_mod(g, rep.params, rep.q), rep.q).degree() == 0


def combine_charts(reps: Sequence[UnivariateRepresentation]) -> UnivariateRepresentation:
    """Union of several representations sharing one separating form.

    The moduli are split into pairwise coprime pieces by gcds, shared roots are
    checked for consistent coordinates, and the pieces are glued by CRT.
    """
    if not reps:
        raise ValueError("nothing to combine")
    form = reps[0].separating_form
    n = reps[0].n
    if any(r.separating_form != form for r in reps):
        raise ValueError("representations use different separating forms")
    pieces: list[tuple[UniPoly, list[UniPoly]]] = []
    for rep in reps:
        if rep.is_empty:
            continue
        rest = rep.q.monic()
        rest_params = list(rep.params)
        new_pieces = []
        for h, hp in pieces:
            g = uni_gcd(h, rest)
            if g.degree() <= 0:
                new_pieces.append((h, hp))
                continue
            if any((a - b) % g for a, b in zip(hp, rest_params)):
                raise InconsistentCharts("charts disagree on the coordinates of a shared root")
            new_pieces.append((g, [a % g for a in hp]))
            h2 = h // g
            if h2.degree() > 0:
                new_pieces.append((h2, [a % h2 for a in hp]))
            rest = rest // g
            rest_params = [b % rest for b in rest_params] if rest.degree() > 0 else rest_params
        if rest.degree() > 0:
            new_pieces.append((rest.monic(), [b % rest for b in rest_params]))
        pieces = new_pieces
    if not pieces:
        return UnivariateRepresentation.empty(n, form)
    modulus, params = pieces[0]
    for h, hp in pieces[1:]:
        params = [crt_pair(a, modulus, b, h) for a, b in zip(params, hp)]
        modulus = modulus * h
    return UnivariateRepresentation(modulus.monic(), tuple(params), form)
