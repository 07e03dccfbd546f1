"""Dense univariate polynomials over Q, lowest degree first."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .multipoly import as_rational


class UniPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UniPoly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-as_rational(r), 1))
        return p

    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == UniPoly((other,)).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        try:
            return UniPoly((other,))
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = UniPoly((1,))
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree()
        lc = other.lc
        if len(rem) - 1 < dq:
            return UniPoly(), UniPoly(rem)
        quot = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lc
            quot[k] = c
            if c:
                for i, y in enumerate(other.coeffs):
                    rem[k + i] -= c * y
        return UniPoly(quot), UniPoly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        lc = self.lc
        return UniPoly([c / lc for c in self.coeffs])

    def derivative(self, k: int = 1) -> "UniPoly":
        cs = list(self.coeffs)
        for _ in range(k):
            cs = [c * i for i, c in enumerate(cs)][1:]
        return UniPoly(cs)

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, UniPoly) else UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_interval(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        """Enclosure of the range over ``[lo, hi]`` by interval Horner."""
        a = b = Fraction(0)
        for c in reversed(self.coeffs):
            prods = (a * lo, a * hi, b * lo, b * hi)
            a, b = min(prods) + c, max(prods) + c
        return a, b

    def sign_at(self, x) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            if parts:
                parts.append(f" {'-' if c < 0 else '+'} {body}")
            else:
                parts.append(("-" if c < 0 else "") + body)
        return "".join(parts)

    def __repr__(self):
        return f"UniPoly('{self}')"


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    while b:
        a, b = b, a % b
    return a.monic()


def uni_xgcd(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = UniPoly((1,)), UniPoly()
    t0, t1 = UniPoly(), UniPoly((1,))
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    lc = r0.lc
    return r0.monic(), s0 * (1 / lc), t0 * (1 / lc)


def squarefree_part(q: UniPoly) -> UniPoly:
    """Monic ``q / gcd(q, q')``."""
    if not q:
        raise ValueError("squarefree part of the zero polynomial")
    if q.degree() == 0:
        return UniPoly((1,))
    return (q // uni_gcd(q, q.derivative())).monic()


def is_squarefree(q: UniPoly) -> bool:
    return bool(q) and uni_gcd(q, q.derivative()).degree() <= 0


def invmod(a: UniPoly, m: UniPoly) -> UniPoly:
    g, s, _ = uni_xgcd(a % m, m)
    if g.degree() != 0:
        raise ZeroDivisionError("polynomial is not invertible modulo m")
    return s % m


def crt_pair(r1: UniPoly, m1: UniPoly, r2: UniPoly, m2: UniPoly) -> UniPoly:
    """The unique ``r`` mod ``m1*m2`` with ``r = r1 (m1)`` and ``r = r2 (m2)``."""
    g, s, t = uni_xgcd(m1, m2)
    if g.degree() != 0:
        raise ValueError("moduli are not coprime")
    return (r1 * t * m2 + r2 * s * m1) % (m1 * m2)


def lagrange_interpolate(xs: Sequence, ys: Sequence) -> UniPoly:
    xs = [as_rational(v) for v in xs]
    result = UniPoly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = UniPoly((1,))
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * UniPoly((-xj, 1)) * (1 / (xi - xj))
        result = result + basis * as_rational(yi)
    return result
