"""Truncated power-series elimination for orbifold chart germs.

At a vertex O_i of the ambient space lying on X, quasismoothness provides
a monomial x_i^m * x_j, so on the chart x_i = 1 the hypersurface is the
graph x_j = phi(x_k, x_l) of a power series.  The germ of a coordinate
divisor {x_w = 0} on the smooth cover is then either phi itself (w = j)
or the plain coordinate x_w.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidInput, TruncationTooSmall
from .newton import PlaneGerm, germ
from .weights import QuasiPolynomial

Poly2 = dict[tuple[int, int], Fraction]


def _mul_trunc(a: Poly2, b: Poly2, n: int) -> Poly2:
    out: Poly2 = {}
    for (a1, a2), ca in a.items():
        for (b1, b2), cb in b.items():
            e = (a1 + b1, a2 + b2)
            if e[0] + e[1] > n:
                continue
            out[e] = out.get(e, Fraction(0)) + ca * cb
    return {e: c for e, c in out.items() if c}


def _pow_trunc(a: Poly2, k: int, n: int, cache: dict) -> Poly2:
    if k == 0:
        return {(0, 0): Fraction(1)}
    if k in cache:
        return cache[k]
    half = _pow_trunc(a, k // 2, n, cache)
    res = _mul_trunc(half, half, n)
    if k % 2:
        res = _mul_trunc(res, a, n)
    cache[k] = res
    return res


def solve_chart_series(f: QuasiPolynomial, i: int, j: int, trunc: int) -> Poly2:
    """Solve x_j = phi(x_k, x_l) on the chart x_i = 1, to total degree
    ``trunc``; (k, l) is the increasing complement of {i, j}.

    The x_j-linear constant coefficient (sum of x_i^m * x_j monomials)
    must be nonzero.
    """
    if not f.is_concrete:
        raise InvalidInput("chart solving needs a concrete polynomial")
    if i == j:
        raise InvalidInput("chart and eliminated variable coincide")
    k, l = (m for m in range(4) if m not in (i, j))

    # collapse to exponents (e_j, e_k, e_l)
    unit = Fraction(0)
    rest: dict[tuple[int, int, int], Fraction] = {}
    for e, c in f.terms.items():
        key = (e[j], e[k], e[l])
        if key == (1, 0, 0):
            unit += c
        else:
            rest[key] = rest.get(key, Fraction(0)) + c
    if unit == 0:
        raise InvalidInput(
            f"no unit x_{j}-linear coefficient on the chart x_{i}=1"
        )

    phi: Poly2 = {}
    for _ in range(trunc + 2):
        cache: dict = {}
        new: Poly2 = {}
        for (ej, ek, el), c in rest.items():
            if ek + el > trunc:
                continue
            if ej:
                if not phi:
                    continue
                contrib = _pow_trunc(phi, ej, trunc, cache)
            else:
                contrib = {(0, 0): Fraction(1)}
            for (m1, m2), cc in contrib.items():
                e = (m1 + ek, m2 + el)
                if e[0] + e[1] > trunc:
                    continue
                new[e] = new.get(e, Fraction(0)) + c * cc
        new = {e: -c / unit for e, c in new.items() if c}
        if new == phi:
            return phi
        phi = new
    raise InvalidInput("chart series iteration failed to stabilise")


def eliminate_and_restrict(
    f: QuasiPolynomial, chart_vertex: int, eliminated: int, target_divisor: int, trunc: int
) -> PlaneGerm:
    """Germ of the divisor {x_w = 0} on the cover chart at O_i.

    With w equal to the eliminated variable the germ is the solved series
    itself; otherwise it is the corresponding chart coordinate.  Raises
    :class:`TruncationTooSmall` when the Newton polygon of the result is
    not safely inside the truncation bound.
    """
    i, j, w = chart_vertex, eliminated, target_divisor
    if w == i:
        raise InvalidInput("the divisor coordinate does not vanish at the chart vertex")
    k, l = (m for m in range(4) if m not in (i, j))
    if w == j:
        phi = solve_chart_series(f, i, j, trunc)
        if not phi:
            raise InvalidInput("solved series vanishes identically")
        return germ(phi, trunc_bound=trunc)
    if w == k:
        return germ({(1, 0): Fraction(1)}, trunc_bound=trunc)
    return germ({(0, 1): Fraction(1)}, trunc_bound=trunc)


def back_substitution_residual(
    f: QuasiPolynomial, i: int, j: int, phi: Poly2, trunc: int
) -> Poly2:
    """f(x_i=1, x_j=phi) truncated to total degree ``trunc``; zero when the
    series solves the chart equation."""
    k, l = (m for m in range(4) if m not in (i, j))
    out: Poly2 = {}
    cache: dict = {}
    for e, c in f.terms.items():
        ej, ek, el = e[j], e[k], e[l]
        contrib = _pow_trunc(phi, ej, trunc, cache) if ej else {(0, 0): Fraction(1)}
        for (m1, m2), cc in contrib.items():
            key = (m1 + ek, m2 + el)
            if key[0] + key[1] > trunc:
                continue
            out[key] = out.get(key, Fraction(0)) + c * cc
    return {e: c for e, c in out.items() if c}
