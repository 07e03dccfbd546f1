from fractions import Fraction
from itertools import permutations

import pytest
import sympy

from polarsolve.polar import (
    SystemInput,
    build_coordinate_change,
    enumerate_charts,
    polar_system,
    transform_system,
)
from polarsolve.ratpoly import MultiPoly, UniPoly, is_squarefree, parse_poly
from polarsolve.zerodim import (
    InconsistentCharts,
    NotZeroDimensional,
    SeparationError,
    UnivariateRepresentation,
    ZeroDimIdeal,
    candidate_forms,
    combine_charts,
    localize,
    membership_residues,
    quotient_basis,
    univariate_representation,
    verify_localization,
    verify_membership,
)

X = UniPoly.x()


def ideal(gens, n):
    return ZeroDimIdeal(tuple(parse_poly(g, n) for g in gens), n, n)


def system(polys, n, p, seed=None):
    s = SystemInput(n, p, [parse_poly(f, n) for f in polys])
    return transform_system(s, build_coordinate_change(n, p, seed))


def chart_reps(s):
    out = []
    for ch in enumerate_charts(s.n, s.p):
        ps = polar_system(s, ch, s.n - s.p)
        if not ps.preserves_flag:
            continue
        loc = localize(ps)
        ring = quotient_basis(loc)
        for form in candidate_forms(s.n):
            try:
                rep = univariate_representation(loc, form, ring)
                break
            except SeparationError:
                continue
        out.append((ps, rep))
    return out


def oracle_count(ideal_: ZeroDimIdeal) -> int:
    syms = sympy.symbols(f"x1:{ideal_.nvars + 1}")
    exprs = []
    for f in ideal_.generators:
        exprs.append(sum(sympy.Rational(c.numerator, c.denominator)
                         * sympy.Mul(*[s ** e for s, e in zip(syms, m)])
                         for m, c in f.terms.items()))
    sols = sympy.solve(exprs, syms, dict=True)
    return len({tuple(sympy.nsimplify(s[v]) for v in syms) for s in sols})


class TestLocalize:
    def test_circle_empty_chart(self):
        s = system(["X1^2+X2^2-1"], 2, 1)
        ps = polar_system(s, enumerate_charts(2, 1)[0], 1)
        loc = localize(ps)
        assert loc.nvars == 3 and loc.localized
        assert [str(g) for g in loc.generators] == ["X1^2 + X2^2 - 1", "2*X1", "2*X1*X3 - 1"]
        assert quotient_basis(loc).dimension == 0

    def test_circle_surviving_chart(self):
        s = system(["X1^2+X2^2-1"], 2, 1)
        ps = polar_system(s, enumerate_charts(2, 1)[1], 1)
        rep = univariate_representation(localize(ps), 2)
        assert rep.q == X * X - 1
        assert rep.params == (UniPoly(), X)

    def test_trivial_localizer(self):
        n = 2
        plain = ideal(["X1", "X2^2-1"], n)
        gens = plain.generators + (MultiPoly.variable(3, 3) - 1,)
        gens = tuple(MultiPoly(3, {e + (0,) * (3 - len(e)): c for e, c in g.terms.items()})
                     for g in gens)
        lifted = ZeroDimIdeal(gens, 3, 2)
        assert univariate_representation(lifted, 2) == univariate_representation(plain, 2)

    def test_wrong_index(self):
        s = system(["X1^2+X2^2+X3^2-1"], 3, 1)
        with pytest.raises(ValueError):
            localize(polar_system(s, enumerate_charts(3, 1)[0], 1))


class TestQuotient:
    def test_point(self):
        ring = quotient_basis(ideal(["X1", "X2-1"], 2))
        assert ring.basis == [(0, 0)]
        assert ring.normal_form(parse_poly("X2", 2)) == 1

    def test_two_points(self):
        assert quotient_basis(ideal(["X1^2-1", "X2"], 2)).basis == [(0, 0), (1, 0)]

    def test_positive_dimension(self):
        with pytest.raises(NotZeroDimensional):
            quotient_basis(ideal(["X1^2+X2^2-1"], 2))

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_sphere_chart_matches_oracle(self, seed):
        s = system(["X1^2+X2^2+X3^2-1"], 3, 1, seed)
        for ch in enumerate_charts(3, 1):
            ps = polar_system(s, ch, 2)
            loc = localize(ps)
            assert quotient_basis(loc).dimension == oracle_count(loc)

    def test_multiplication_matrix(self):
        ring = quotient_basis(ideal(["X1^2-2", "X2-X1"], 2))
        m = ring.multiplication_matrix(parse_poly("X1", 2))
        assert m == [[0, 2], [1, 0]]
        assert ring.minimal_polynomial(parse_poly("X2", 2)) == X * X - 2


class TestRepresentation:
    def test_simple(self):
        rep = univariate_representation(ideal(["X1", "X2^2-1"], 2), 2)
        assert rep.q == X * X - 1 and rep.params == (UniPoly(), X)

    def test_not_separating(self):
        with pytest.raises(SeparationError):
            univariate_representation(ideal(["X1^2-1", "X2"], 2), 2)

    def test_linear_form_separates(self):
        rep = univariate_representation(ideal(["X1^2-1", "X2"], 2), [1, 1])
        assert rep.q == X * X - 1
        assert verify_membership(rep, ideal(["X1^2-1", "X2"], 2).generators)

    def test_non_radical_input(self):
        rep = univariate_representation(ideal(["X1^2", "X2^2-3*X2+2"], 2), 2)
        assert rep.q == (X - 1) * (X - 2) and rep.params[0] == UniPoly()

    def test_invalid_sep(self):
        with pytest.raises(ValueError):
            univariate_representation(ideal(["X1", "X2"], 2), 5)

    def test_invariants_on_corpus(self):
        cases = [(["X1^2+X2^2+X3^2-1"], 3, 1, 2),
                 (["((X1-3)^2+X2^2-1)*((X1+3)^2+X2^2-1)"], 2, 1, 4),
                 (["X1^2+X2^2+X3^2-4", "X1^2+X2^2-1"], 3, 2, 4),
                 (["(X1^2+X2^2+X3^2+3)^2-16*(X1^2+X2^2)"], 3, 1, 4)]
        for polys, n, p, expected in cases:
            s = system(polys, n, p, seed=7)
            reps = chart_reps(s)
            for ps, rep in reps:
                assert is_squarefree(rep.q) or rep.is_empty
                assert all(pk.degree() < rep.q.degree() for pk in rep.params)
                assert verify_membership(rep, ps.equations)
                assert verify_localization(rep, ps.localization_g)
            total = combine_charts([r for _, r in reps])
            assert total.degree == expected
            assert verify_membership(total, s.polys)


class TestCombine:
    form = (Fraction(0), Fraction(1))

    def rep(self, q, *params):
        return UnivariateRepresentation(q, tuple(params), self.form)

    def test_single(self):
        r = self.rep(X * X - 1, UniPoly(), X)
        assert combine_charts([r]) == r

    def test_coprime_interpolation(self):
        a = self.rep(X - 1, UniPoly((5,)), X)
        b = self.rep(X + 1, UniPoly((7,)), X)
        c = combine_charts([a, b])
        assert c.q == X * X - 1
        assert c.params[0](1) == 5 and c.params[0](-1) == 7
        assert c.params[1] == X

    def test_overlap_removed(self):
        s = system(["X1^2+X2^2-1"], 2, 1, seed=3)
        reps = [r for _, r in chart_reps(s)]
        both = combine_charts(reps + reps)
        assert both == combine_charts(reps)
        assert both.degree == 2

    def test_inconsistent(self):
        a = self.rep(X - 1, UniPoly((5,)), X)
        b = self.rep((X - 1) * (X - 2), UniPoly((6,)), X)
        with pytest.raises(InconsistentCharts):
            combine_charts([a, b])

    def test_order_independent_and_idempotent(self):
        reps = [self.rep(X * X - 2, X, X), self.rep((X - 1) * (X + 3), UniPoly((1,)), X),
                self.rep(X + 3, UniPoly((1,)), X)]
        results = {combine_charts(list(p)) for p in permutations(reps)}
        assert len(results) == 1
        (r,) = results
        assert combine_charts([r, r]) == r
        assert r.q.degree() == 4

    def test_empty(self):
        e = UnivariateRepresentation.empty(2, self.form)
        assert combine_charts([e, e]).is_empty
        assert membership_residues(e, [parse_poly("X1", 2)]) == [UniPoly()]
