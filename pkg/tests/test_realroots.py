import random
from fractions import Fraction

import pytest

from polarsolve.ratpoly import UniPoly, squarefree_part
from polarsolve.realroots import (
    AlgebraicPoint,
    isolate_real_roots,
    real_points,
    refine,
    refine_box,
    root_bound,
    sign_at_root,
    sturm_chain,
    thom_encode,
)
from polarsolve.zerodim import UnivariateRepresentation

X = UniPoly.x()


def point(q, iv, params=()):
    return AlgebraicPoint(q, iv, thom_encode(q, iv), tuple(params))


class TestSturm:
    def test_linear(self):
        assert sturm_chain(X).polys == (X, UniPoly((1,)))

    def test_quadratic(self):
        assert sturm_chain(X * X - 1).polys == (X * X - 1, 2 * X, UniPoly((1,)))

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            sturm_chain(UniPoly((3,)))
        with pytest.raises(ValueError):
            sturm_chain((X - 1) ** 2)

    def test_random_products(self, rng):
        for _ in range(30):
            roots = rng.sample(range(-20, 21), rng.randint(1, 6))
            q = UniPoly.from_roots([Fraction(r, 3) for r in roots]) * (X * X + rng.randint(1, 9))
            chain = sturm_chain(q)
            assert len(chain.polys) <= q.degree() + 2
            assert chain.polys[-1].degree() == 0
            B = root_bound(q) + 1
            assert chain.count(-B, B) == len(roots)


class TestIsolate:
    def test_two_roots(self):
        (a1, b1), (a2, b2) = isolate_real_roots(X * X - 1)
        assert a1 < -1 < b1 <= a2 < 1 < b2

    def test_no_roots(self):
        assert isolate_real_roots(X * X + 1) == []

    def test_cubic(self):
        ivs = isolate_real_roots(UniPoly.from_roots([1, 2, 3]))
        assert [a < r < b for (a, b), r in zip(ivs, [1, 2, 3])] == [True] * 3

    def test_random_against_constructed_roots(self, rng):
        for _ in range(40):
            roots = sorted({Fraction(rng.randint(-50, 50), rng.randint(1, 7))
                            for _ in range(rng.randint(1, 6))})
            q = UniPoly.from_roots(roots) * (X ** 2 + X + 1) * rng.randint(1, 5)
            ivs = isolate_real_roots(q)
            assert len(ivs) == len(roots)
            for (a, b), r in zip(ivs, roots):
                assert a < r < b and q(a) and q(b)
                assert q(a) * q(b) < 0
            for (_, b), (a, _) in zip(ivs, ivs[1:]):
                assert b <= a

    def test_root_at_first_midpoint(self):
        ivs = isolate_real_roots(UniPoly.from_roots([0, 1, -1]))
        assert len(ivs) == 3 and all(a < r < b for (a, b), r in zip(ivs, [-1, 0, 1]))


class TestThom:
    def test_signs_of_derivative(self):
        q = X * X - 1
        lo, hi = isolate_real_roots(q)
        assert thom_encode(q, hi) == (1,)
        assert thom_encode(q, lo) == (-1,)

    def test_close_roots_distinct(self):
        q = UniPoly.from_roots([1, Fraction(101, 100), 5]) * (X - Fraction(1001, 1000))
        codes = [thom_encode(q, iv) for iv in isolate_real_roots(q)]
        assert len(codes) == 4 and len(set(codes)) == 4

    def test_exact_fallback(self):
        # h vanishes close to the root, so a wide interval straddles zero
        q = X * X - 2
        iv = (Fraction(1), Fraction(2))
        assert sign_at_root(q, iv, X - Fraction(141, 100)) == 1
        assert sign_at_root(q, iv, X - Fraction(142, 100)) == -1
        assert sign_at_root(q, iv, X * X - 2) == 0

    def test_random_codes_distinct(self, rng):
        for _ in range(20):
            roots = {Fraction(rng.randint(-30, 30), rng.randint(1, 4)) for _ in range(5)}
            q = UniPoly.from_roots(sorted(roots))
            codes = [thom_encode(q, iv) for iv in isolate_real_roots(q)]
            assert len(set(codes)) == len(roots)


class TestRefine:
    def test_sqrt2(self):
        p = refine(point(X * X - 2, (Fraction(1), Fraction(2))), Fraction(1, 100))
        a, b = p.root_interval
        assert b - a < Fraction(1, 100)
        assert a * a < 2 < b * b
        a, b = refine(p, Fraction(1, 1000)).root_interval
        assert Fraction(141, 100) < a and b < Fraction(142, 100)

    def test_already_fine(self):
        p = point(X * X - 2, (Fraction(141, 100), Fraction(142, 100)))
        assert refine(p, Fraction(1, 10)) is p

    def test_rational_root(self):
        p = refine(point(X - 3, (Fraction(0), Fraction(7))), Fraction(1, 1000))
        a, b = p.root_interval
        assert a < 3 < b and b - a < Fraction(1, 1000)

    def test_thom_code_stable(self, rng):
        for _ in range(10):
            roots = sorted({Fraction(rng.randint(-20, 20), 3) for _ in range(4)})
            q = UniPoly.from_roots(roots) * (X * X - 3)
            for iv in isolate_real_roots(q):
                p = point(q, iv)
                assert thom_encode(q, refine(p, Fraction(1, 10 ** 6)).root_interval) == p.thom_code

    def test_boxes_shrink_and_contain(self):
        q = X * X - 2
        p = point(q, (Fraction(1), Fraction(2)), [X * X * X, X - 1])
        widths = []
        for eps in [Fraction(1, 10), Fraction(1, 1000), Fraction(1, 10 ** 6)]:
            p = refine_box(p, eps)
            (lo0, hi0), (lo1, hi1) = p.box()
            assert lo0 ** 2 < 8 < hi0 ** 2 and lo1 < 0.41421356 < hi1
            widths.append(p.box_width())
            assert widths[-1] < eps
        assert widths == sorted(widths, reverse=True)

    def test_bad_eps(self):
        with pytest.raises(ValueError):
            refine(point(X - 1, (0, 2)), 0)


class TestRealPoints:
    def test_circle(self):
        rep = UnivariateRepresentation(X * X - 1, (UniPoly(), X), (Fraction(0), Fraction(1)))
        sols = real_points(rep, eps=Fraction(1, 1000))
        assert not sols.empty_certificate
        centers = [[round(float(c), 3) for c in pt.midpoint()] for pt in sols.points]
        assert centers == [[0, -1], [0, 1]]

    def test_empty(self):
        rep = UnivariateRepresentation(X * X + 1, (UniPoly(), X), (Fraction(0), Fraction(1)))
        sols = real_points(rep)
        assert sols.empty_certificate and sols.points == ()

    def test_count_bounded_by_degree(self, rng):
        for _ in range(10):
            q = squarefree_part(UniPoly([rng.randint(-9, 9) for _ in range(7)] + [1]))
            rep = UnivariateRepresentation(q, (X,), (Fraction(1),))
            assert len(real_points(rep).points) <= q.degree()
