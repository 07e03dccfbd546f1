"""Sparse multivariate polynomials over Q.

A :class:`MultiPoly` maps exponent tuples to nonzero :class:`~fractions.Fraction`
coefficients.  Variables are named ``X1 .. Xn``; wherever a variable index is
part of the public surface it is 1-based, matching those names.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

Rational = Fraction
Exponent = tuple[int, ...]


def as_rational(value) -> Fraction:
    """Coerce a number or an ``"a/b"`` string to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC, str)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def grlex_key(exp: Exponent) -> tuple:
    return (sum(exp), exp)


class MultiPoly:
    """Immutable polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exp, coef in terms.items():
                exp = tuple(exp)
                if len(exp) != nvars or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent {exp} for {nvars} variables")
                c = as_rational(coef)
                if c:
                    clean[exp] = c
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "MultiPoly":
        # Trusted constructor: terms already canonical.
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        c = as_rational(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, j: int) -> "MultiPoly":
        """The polynomial ``Xj`` (1-based)."""
        if not 1 <= j <= nvars:
            raise IndexError(f"variable X{j} out of range 1..{nvars}")
        exp = [0] * nvars
        exp[j - 1] = 1
        return cls._raw(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Sequence[int], coef=1) -> "MultiPoly":
        return cls(len(exp), {tuple(exp): coef})

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    def items_grlex(self) -> list[tuple[Exponent, Fraction]]:
        """Terms sorted from the grlex-largest monomial down."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0,) * self.nvars in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, j: int) -> int:
        return max((e[j - 1] for e in self._terms), default=-1)

    def variables(self) -> set[int]:
        """1-based indices of the variables that actually occur."""
        used = set()
        for e in self._terms:
            used.update(k + 1 for k, ek in enumerate(e) if ek)
        return used

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self._terms, key=grlex_key)
        return exp, self._terms[exp]

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError(
                    f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        try:
            return MultiPoly.constant(self.nvars, other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

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
        if not self._terms or not other._terms:
            return MultiPoly.zero(self.nvars)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "MultiPoly":
        c = as_rational(c)
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly._raw(self.nvars, {e: v * c for e, v in self._terms.items()})

    def monic(self) -> "MultiPoly":
        if not self._terms:
            return self
        return self.scale(1 / self.leading_term()[1])

    def exquo(self, other: "MultiPoly") -> "MultiPoly":
        """Exact quotient ``self / other``; raises ``ArithmeticError`` if inexact."""
        other = self._coerce(other)
        if not other._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        lexp, lc = other.leading_term()
        rem = dict(self._terms)
        quot: dict[Exponent, Fraction] = {}
        while rem:
            exp = max(rem, key=grlex_key)
            shift = tuple(a - b for a, b in zip(exp, lexp))
            if any(s < 0 for s in shift):
                raise ArithmeticError("polynomial division is not exact")
            c = rem[exp] / lc
            quot[shift] = c
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(shift, e2))
                v = rem.get(e, 0) - c * c2
                if v:
                    rem[e] = v
                else:
                    rem.pop(e, None)
        return MultiPoly._raw(self.nvars, quot)

    # -- calculus and evaluation -----------------------------------------

    def diff(self, j: int) -> "MultiPoly":
        """Formal partial derivative with respect to ``Xj`` (1-based)."""
        if not 1 <= j <= self.nvars:
            raise IndexError(f"variable X{j} out of range 1..{self.nvars}")
        k = j - 1
        out = {}
        for exp, c in self._terms.items():
            if exp[k]:
                e = list(exp)
                e[k] -= 1
                out[tuple(e)] = c * exp[k]
        return MultiPoly._raw(self.nvars, out)

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return eval_poly(self, point)

    def compose(self, subs: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute ``Xj -> subs[j-1]``; result lives in the ring of ``subs``."""
        if len(subs) != self.nvars:
            raise ValueError(f"need {self.nvars} substitutions, got {len(subs)}")
        if not subs:
            return self
        m = subs[0].nvars
        cache: list[dict[int, MultiPoly]] = [{0: MultiPoly.constant(m, 1), 1: s} for s in subs]

        def power(k, e):
            pk = cache[k]
            if e not in pk:
                pk[e] = power(k, e - 1) * subs[k]
            return pk[e]

        result = MultiPoly.zero(m)
        for exp, c in self._terms.items():
            term = MultiPoly.constant(m, c)
            for k, e in enumerate(exp):
                if e:
                    term = term * power(k, e)
            result = result + term
        return result

    def to_coeff_list(self, j: int) -> list[Fraction]:
        """Dense coefficients (low to high) when ``Xj`` is the only variable present."""
        if self.variables() - {j}:
            raise ValueError("polynomial is not univariate in X%d" % j)
        deg = max(self.degree(), 0)
        coeffs = [Fraction(0)] * (deg + 1)
        for exp, c in self._terms.items():
            coeffs[exp[j - 1]] = c
        return coeffs

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            c = as_rational(other)
        except TypeError:
            return NotImplemented
        return self == MultiPoly.constant(self.nvars, c)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.items_grlex():
            mono = "*".join(
                f"X{k + 1}" + (f"^{e}" if e > 1 else "") for k, e in enumerate(exp) if e)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.nvars}, '{self}')"


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """Apply ``op`` in ``{"add", "sub", "mul"}`` to two polynomials of equal arity."""
    if a.nvars != b.nvars:
        raise ValueError(f"variable count mismatch: {a.nvars} vs {b.nvars}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(f: MultiPoly, j: int) -> MultiPoly:
    return f.diff(j)


def eval_poly(f: MultiPoly, x: Sequence) -> Fraction:
    """Exact value of ``f`` at ``x`` by nested Horner evaluation in X1, X2, ..."""
    if len(x) != f.nvars:
        raise ValueError(f"point has {len(x)} coordinates, polynomial has {f.nvars} variables")
    x = [as_rational(v) for v in x]
    return _horner(list(f._terms.items()), x, 0)


def _horner(terms, x, k) -> Fraction:
    if not terms:
        return Fraction(0)
    if k == len(x):
        return sum((c for _, c in terms), Fraction(0))
    by_power: dict[int, list] = {}
    for exp, c in terms:
        by_power.setdefault(exp[k], []).append((exp, c))
    acc = Fraction(0)
    for e in range(max(by_power), -1, -1):
        acc = acc * x[k]
        if e in by_power:
            acc += _horner(by_power[e], x, k + 1)
    return acc


def polys_nvars(polys: Iterable[MultiPoly]) -> int:
    sizes = {f.nvars for f in polys}
    if len(sizes) > 1:
        raise ValueError(f"polynomials disagree on variable count: {sorted(sizes)}")
    return sizes.pop() if sizes else 0
