"""Buchberger's algorithm over Q with the Gebauer-Moeller pair criteria.

Polynomials are handled internally as ``dict[exponent, Fraction]``; the public
functions take and return :class:`MultiPoly`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .ratpoly import MultiPoly

Exp = tuple[int, ...]
OrderKey = Callable[[Exp], tuple]


def grevlex(exp: Exp) -> tuple:
    return (sum(exp), tuple(-e for e in reversed(exp)))


def elimination(k: int) -> OrderKey:
    """Block order eliminating the first ``k`` variables (grevlex inside each block)."""
    def key(exp: Exp) -> tuple:
        return (grevlex(exp[:k]), grevlex(exp[k:]))
    return key


ORDERS: dict[str, OrderKey] = {"grevlex": grevlex}


def _key(order) -> OrderKey:
    return ORDERS[order] if isinstance(order, str) else order


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Exp, b: Exp) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


class _Poly:
    __slots__ = ("terms", "lm", "lc", "sugar")

    def __init__(self, terms: dict, key: OrderKey, sugar: int | None = None):
        self.terms = terms
        self.lm = max(terms, key=key)
        self.lc = terms[self.lm]
        self.sugar = sugar if sugar is not None else max(sum(e) for e in terms)


def _monic(terms: dict, key: OrderKey) -> dict:
    lc = terms[max(terms, key=key)]
    if lc == 1:
        return terms
    return {e: c / lc for e, c in terms.items()}


def _reduce(terms: dict, basis: Sequence[_Poly], key: OrderKey) -> dict:
    """Full normal form of ``terms`` modulo ``basis`` (which need not be a GB)."""
    p = dict(terms)
    rem: dict = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for g in basis:
            if _divides(g.lm, m):
                shift = tuple(x - y for x, y in zip(m, g.lm))
                coef = c / g.lc
                for e, v in g.terms.items():
                    e2 = tuple(x + y for x, y in zip(e, shift))
                    nv = p.get(e2, 0) - coef * v
                    if nv:
                        p[e2] = nv
                    else:
                        p.pop(e2, None)
                break
        else:
            rem[m] = c
            del p[m]
    return rem


def _spoly(f: _Poly, g: _Poly) -> tuple[dict, int]:
    lcm = _lcm(f.lm, g.lm)
    sf = tuple(x - y for x, y in zip(lcm, f.lm))
    sg = tuple(x - y for x, y in zip(lcm, g.lm))
    out: dict = {}
    for e, v in f.terms.items():
        out[tuple(x + y for x, y in zip(e, sf))] = v / f.lc
    for e, v in g.terms.items():
        e2 = tuple(x + y for x, y in zip(e, sg))
        nv = out.get(e2, 0) - v / g.lc
        if nv:
            out[e2] = nv
        else:
            out.pop(e2, None)
    sugar = max(f.sugar + sum(sf), g.sugar + sum(sg))
    return out, sugar


def _gm_update(polys: list[_Poly], G: list[int], B: set, h: int):
    lm = lambda i: polys[i].lm  # noqa: E731
    hlm = lm(h)
    C = list(G)
    D: list[int] = []
    while C:
        g1 = C.pop()
        l1 = _lcm(hlm, lm(g1))
        if _coprime(hlm, lm(g1)) or (
                not any(_divides(_lcm(hlm, lm(g2)), l1) for g2 in C)
                and not any(_divides(_lcm(hlm, lm(g2)), l1) for g2 in D)):
            D.append(g1)
    E = {(g, h) for g in D if not _coprime(hlm, lm(g))}
    B_new = set()
    for g1, g2 in B:
        l12 = _lcm(lm(g1), lm(g2))
        if (not _divides(hlm, l12) or _lcm(lm(g1), hlm) == l12
                or _lcm(lm(g2), hlm) == l12):
            B_new.add((g1, g2))
    B_new |= E
    G_new = [g for g in G if not _divides(hlm, lm(g))] + [h]
    return G_new, B_new


def groebner(generators: Sequence[MultiPoly], order="grevlex") -> list[MultiPoly]:
    """Reduced Groebner basis, monic, sorted by decreasing leading monomial.

    The unit ideal gives ``[1]``; the zero ideal gives ``[]``.
    """
    key = _key(order)
    gens = [f for f in generators if f]
    if not gens:
        return []
    nvars = gens[0].nvars
    polys: list[_Poly] = []
    G: list[int] = []
    B: set = set()

    for f in sorted(gens, key=lambda f: key(max(f.terms, key=key))):
        r = _reduce(dict(f.terms), [polys[i] for i in G], key)
        if not r:
            continue
        polys.append(_Poly(_monic(r, key), key))
        G, B = _gm_update(polys, G, B, len(polys) - 1)

    while B:
        pair = min(B, key=lambda ij: (
            max(polys[ij[0]].sugar, polys[ij[1]].sugar),
            key(_lcm(polys[ij[0]].lm, polys[ij[1]].lm)), ij))
        B.discard(pair)
        s, sugar = _spoly(polys[pair[0]], polys[pair[1]])
        if not s:
            continue
        r = _reduce(s, [polys[i] for i in G], key)
        if not r:
            continue
        polys.append(_Poly(_monic(r, key), key, sugar))
        if all(e == 0 for e in polys[-1].lm):
            return [MultiPoly.constant(nvars, 1)]
        G, B = _gm_update(polys, G, B, len(polys) - 1)

    # minimal, then interreduced
    basis = [polys[i] for i in G]
    basis = [g for g in basis
             if not any(h is not g and _divides(h.lm, g.lm) for h in basis)]
    reduced = []
    for g in basis:
        others = [h for h in basis if h is not g]
        r = _reduce(g.terms, others, key)
        reduced.append(_Poly(_monic(r, key), key))
    reduced.sort(key=lambda g: key(g.lm), reverse=True)
    return [MultiPoly(nvars, g.terms) for g in reduced]


def normal_form(f: MultiPoly, basis: Sequence[MultiPoly], order="grevlex") -> MultiPoly:
    key = _key(order)
    polys = [_Poly(dict(g.terms), key) for g in basis if g]
    return MultiPoly(f.nvars, _reduce(dict(f.terms), polys, key))


def leading_monomial(f: MultiPoly, order="grevlex") -> Exp:
    return max(f.terms, key=_key(order))


def is_groebner(basis: Sequence[MultiPoly], order="grevlex") -> bool:
    """Buchberger's S-pair test."""
    key = _key(order)
    polys = [_Poly(dict(g.terms), key) for g in basis if g]
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            s, _ = _spoly(polys[i], polys[j])
            if s and _reduce(s, polys, key):
                return False
    return True


def krull_dimension(basis: Sequence[MultiPoly], order="grevlex") -> int:
    """Dimension of the ideal with Groebner basis ``basis``; ``-1`` for the unit ideal.

    Largest set of variables containing the support of no leading monomial.
    """
    if not basis:
        raise ValueError("zero ideal: dimension equals the number of variables")
    nvars = basis[0].nvars
    supports = [frozenset(k for k, e in enumerate(leading_monomial(g, order)) if e)
                for g in basis]
    if any(not s for s in supports):
        return -1
    best = 0

    def search(k: int, chosen: frozenset):
        nonlocal best
        if len(chosen) + (nvars - k) <= best:
            return
        if k == nvars:
            best = max(best, len(chosen))
            return
        with_k = chosen | {k}
        if not any(s <= with_k for s in supports):
            search(k + 1, with_k)
        search(k + 1, chosen)

    search(0, frozenset())
    return best


def multivariate_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Monic-ish gcd via ``lcm = (t*a, (1-t)*b) cap Q[X]`` and ``gcd = a*b / lcm``."""
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    n = a.nvars
    lift = lambda f: MultiPoly(n + 1, {(0,) + e: c for e, c in f.terms.items()})  # noqa: E731
    t = MultiPoly.variable(n + 1, 1)
    gb = groebner([t * lift(a), (1 - t) * lift(b)], order=elimination(1))
    lcm = next(g for g in reversed(gb) if all(e[0] == 0 for e in g.terms))
    lcm = MultiPoly(n, {e[1:]: c for e, c in lcm.terms.items()})
    return (a * b).exquo(lcm).monic()
