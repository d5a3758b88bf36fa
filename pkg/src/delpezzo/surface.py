"""Global log canonical thresholds of the del Pezzo hypersurfaces.

The global threshold of a surface in the main case of the trichotomy is
the minimum of lct(X, (I/a_w) C_w) over the first three coordinate
curves; each of those is assembled from local computations on orbifold
cover charts at the special points of C_w.  The two families with
a0 = a1 go through the reducible members of |O(a0)| and |O(a2)| instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .elimination import eliminate_and_restrict
from .errors import InvalidInput, MissingGermData, TruncationTooSmall, Unsupported
from .newton import PlaneGerm, lct_concurrent_lines, lct_weighted
from .quotients import elimination_index, vertex_on_surface
from .weights import (
    GENERIC,
    QuasiPolynomial,
    Quintuple,
    Trichotomy,
    case_trichotomy,
    generic_quasismooth,
    is_hypersurface_well_formed,
    is_wps_well_formed,
    monomials_of_degree,
    restricted_support,
)

VAR_NAMES = "xyzt"

#: Condition tags with support-level or coefficient-level meaning.
KNOWN_TAGS = ("contains_yzt", "cx_ordinary_double_point", "cy_tacnodal")


@dataclass(frozen=True)
class SurfaceModel:
    """A concrete member of a family: quintuple, defining polynomial and
    the condition tags it realises."""

    quintuple: Quintuple
    poly: QuasiPolynomial
    tags: dict[str, bool] = field(default_factory=dict)
    extra_points: tuple[tuple[str, PlaneGerm | None], ...] = ()

    def __post_init__(self):
        if not self.poly.is_concrete:
            raise InvalidInput("surface models need concrete coefficients")


def _default_coefficient(index: int) -> Fraction:
    # small, distinct, deterministic values; avoids the handful of special
    # coefficient relations that change germ types
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
              61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113]
    return Fraction(1 + primes[index % len(primes)], 1 + (index // len(primes)))


def build_surface_model(q: Quintuple, tags: dict[str, bool] | None = None) -> SurfaceModel:
    """Concrete model with pseudo-generic coefficients honouring the tags.

    ``contains_yzt: False`` removes the monomial yzt from the support;
    ``cx_ordinary_double_point: False`` / ``cy_tacnodal: False`` force the
    degenerate coefficient relation on the relevant restricted quadratic.
    """
    tags = dict(tags or {})
    support = set(monomials_of_degree(q.weights, q.degree))
    if not support:
        raise InvalidInput(f"empty support for {q}")
    yzt = (0, 1, 1, 1)
    if "contains_yzt" in tags:
        if tags["contains_yzt"]:
            if yzt not in support:
                raise InvalidInput(f"{q} has no monomial yzt")
        else:
            support.discard(yzt)
    coeffs: dict[tuple, Fraction] = {}
    for idx, e in enumerate(sorted(support)):
        coeffs[e] = _default_coefficient(idx)

    def _force_square(ea, eb, ec):
        # coefficient relation beta^2 = 4*alpha*gamma on alpha*A + beta*B + gamma*C
        if all(e in coeffs for e in (ea, eb, ec)):
            coeffs[ea] = Fraction(1)
            coeffs[eb] = Fraction(2)
            coeffs[ec] = Fraction(1)

    def _ensure_not_square(ea, eb, ec):
        if all(e in coeffs for e in (ea, eb, ec)):
            if coeffs[eb] ** 2 == 4 * coeffs[ea] * coeffs[ec]:
                coeffs[eb] += 1

    if q.weights == (1, 2, 3, 5) and q.degree == 10:
        tri = ((0, 0, 0, 2), (0, 1, 1, 1), (0, 2, 2, 0))
        if tags.get("cx_ordinary_double_point", True):
            _ensure_not_square(*tri)
        else:
            _force_square(*tri)
    if q.weights == (2, 3, 5, 9) and q.degree == 18:
        tri = ((0, 0, 0, 2), (2, 0, 1, 1), (4, 0, 2, 0))
        if tags.get("cy_tacnodal", True):
            _ensure_not_square(*tri)
        else:
            _force_square(*tri)

    poly = QuasiPolynomial(q, coeffs)
    return SurfaceModel(q, poly, tags)


@dataclass(frozen=True)
class PointContribution:
    point: str
    germ: PlaneGerm | None
    local_lct: Fraction


@dataclass(frozen=True)
class CurveAnalysis:
    curve: int
    multiplier: Fraction  # lambda = I / a_w
    points: tuple[PointContribution, ...]
    value: Fraction  # lct(X, lambda * C_w)


@dataclass(frozen=True)
class GlobalLct:
    value: Fraction
    witness: str
    curves: tuple[CurveAnalysis, ...] = ()


def default_truncation(q: Quintuple) -> int:
    return 4 * (q.degree // q.weights[0] + 1)


def _vertex_germ(model: SurfaceModel, i: int, w: int, trunc: int) -> PlaneGerm:
    """Germ of C_w on the cover chart at O_i.

    When some chart leaves x_w as a coordinate (an elimination monomial in
    a different variable exists), the germ is smooth and the series solve
    is skipped; otherwise x_w is the graph direction and the solved series
    is the germ.  Its axis contents are certified against the component
    multiplicities read off the restricted support, which pins down the
    Newton polygon exactly despite truncation.
    """
    support = model.poly.support
    js = set()
    for e in support:
        others = [k for k in range(4) if k != i and e[k] > 0]
        if len(others) == 1 and e[others[0]] == 1:
            js.add(others[0])
    if not js:
        raise InvalidInput(f"no elimination monomial at O_{VAR_NAMES[i]}")
    if js - {w}:
        j = sorted(js - {w})[0]
        return eliminate_and_restrict(model.poly, i, j, w, trunc)
    g = eliminate_and_restrict(model.poly, i, w, w, trunc)
    k, l = (m for m in range(4) if m not in (i, w))
    restriction = model.poly.restrict(w)
    for axis, var in ((0, k), (1, l)):
        content = min(m[axis] for m, _ in g.terms)
        expected = min(e[var] for e in restriction)
        if content != expected:
            raise TruncationTooSmall(
                f"axis content of the chart germ at O_{VAR_NAMES[i]} not yet "
                f"witnessed at truncation {trunc}",
                trunc,
            )
    return g


def coordinate_curve_lct(model: SurfaceModel, w: int, max_trunc: int = 4096) -> CurveAnalysis:
    """lct(X, (I/a_w) C_w), assembled over the special points of C_w."""
    q = model.quintuple
    lam = Fraction(q.fano_index, q.weights[w])
    restriction = model.poly.restrict(w)
    if not restriction:
        raise InvalidInput(f"C_{VAR_NAMES[w]} is not a divisor: x_{w} divides f")

    points: list[PointContribution] = []
    values: list[Fraction] = []

    # generic points of each component; coordinate components may carry
    # multiplicity read off the restricted support
    mult_cap = 1
    for v in range(4):
        if v == w:
            continue
        mv = min(e[v] for e in restriction)
        mult_cap = max(mult_cap, mv)
    values.append(1 / (lam * mult_cap))
    points.append(PointContribution("generic point", None, 1 / (lam * mult_cap)))

    # vertices on X other than O_w
    for i in range(4):
        if i == w or not vertex_on_surface(q, model.poly.support, i):
            continue
        trunc = min(16, default_truncation(q))
        while True:
            try:
                g = _vertex_germ(model, i, w, trunc)
                local = lct_weighted([(g, lam)]).value
                break
            except TruncationTooSmall:
                trunc *= 2
                if trunc > max(max_trunc, 4 * default_truncation(q)):
                    raise
        points.append(PointContribution(f"O_{VAR_NAMES[i]}", g, local))
        values.append(local)

    # quotient points interior to edges missing w: the curve germ is a
    # chart coordinate there, hence smooth on the cover
    for i, j in itertools.combinations(range(4), 2):
        if w in (i, j):
            continue
        r = gcd(q.weights[i], q.weights[j])
        if r == 1:
            continue
        M = restricted_support(model.poly.support, (i, j))
        if not M:
            continue
        exps = [e[i] for e in M]
        if max(exps) > min(exps):
            points.append(
                PointContribution(
                    f"edge O_{VAR_NAMES[i]}O_{VAR_NAMES[j]}", None, 1 / lam
                )
            )
            values.append(1 / lam)

    for label, g in model.extra_points:
        if g is None:
            raise MissingGermData(f"extra point {label} declares no germ")
        local = lct_weighted([(g, lam)]).value
        points.append(PointContribution(label, g, local))
        values.append(local)

    return CurveAnalysis(w, lam, tuple(points), min(values))


def _reducible_member_lct(model: SurfaceModel) -> GlobalLct:
    """a0 = a1 families: the threshold of the reducible members of
    |O(a0)| and |O(a2)|, each a bundle of concurrent components through a
    quotient point."""
    q = model.quintuple
    a, d, I = q.weights, q.degree, q.fano_index
    if not (a[0] == a[1] and a[2] == a[3] and d % a[0] == 0 and d % a[2] == 0):
        raise Unsupported(
            f"a0 = a1 handling covers only the two shipped families, not {q}"
        )
    lam_a = Fraction(I, a[0])
    lam_b = Fraction(I, a[2])
    comps_a = d // a[2]  # components of a reducible member of |O(a0)|
    comps_b = d // a[0]
    val_a = lct_concurrent_lines([lam_a] * comps_a)
    val_b = lct_concurrent_lines([lam_b] * comps_b)
    value = min(val_a, val_b)
    witness = (
        f"reducible member of |O({a[0]})| ({comps_a} concurrent components)"
        if val_a <= val_b
        else f"reducible member of |O({a[2]})| ({comps_b} concurrent components)"
    )
    return GlobalLct(value, witness)


def global_lct(model: SurfaceModel, curves=(0, 1, 2)) -> GlobalLct:
    """Global log canonical threshold of the surface model.

    For a0 != a1 this is the minimum over the coordinate curves C_x, C_y,
    C_z; for the two a0 = a1 families it comes from the reducible members.
    """
    q = model.quintuple
    if case_trichotomy(q) is not Trichotomy.MAIN_CASE:
        raise Unsupported(f"{q} is outside the main case of the trichotomy")
    if q.weights[0] == q.weights[1]:
        return _reducible_member_lct(model)
    analyses = tuple(coordinate_curve_lct(model, w) for w in curves)
    best = min(analyses, key=lambda c: c.value)
    worst_pt = min(best.points, key=lambda p: p.local_lct)
    witness = f"C_{VAR_NAMES[best.curve]} at {worst_pt.point}"
    return GlobalLct(best.value, witness, analyses)


def boyer_lower_bound(model_or_q, support=None) -> Fraction:
    """Best applicable of the three support-driven lower bounds
    a0*a1/(d*I), a0*a2/(d*I), a0*a3/(d*I)."""
    if isinstance(model_or_q, SurfaceModel):
        q = model_or_q.quintuple
        support = model_or_q.poly.support
    else:
        q = model_or_q
        if support is None:
            support = monomials_of_degree(q.weights, q.degree)
    a, d, I = q.weights, q.degree, q.fano_index
    if I <= 0:
        raise InvalidInput("Boyer bound needs positive Fano index")
    bounds = [Fraction(a[0] * a[1], d * I)]
    if any(e[0] == e[1] == 0 for e in support):
        bounds.append(Fraction(a[0] * a[2], d * I))
    if any(e[0] == e[1] == e[2] == 0 for e in support):
        bounds.append(Fraction(a[0] * a[3], d * I))
    return max(bounds)


def wps_lct(weights) -> Fraction:
    """Threshold of the ambient weighted projective space itself."""
    if not is_wps_well_formed(weights):
        raise InvalidInput(f"P{tuple(weights)} is not well formed")
    return Fraction(min(weights), sum(weights))


def validity_summary(q: Quintuple, support=None) -> dict:
    """The predicates a table row must pass, in one place."""
    if support is None:
        support = monomials_of_degree(q.weights, q.degree)
    qs = generic_quasismooth(q, support)
    return {
        "wps_well_formed": is_wps_well_formed(q.weights),
        "hypersurface_well_formed": is_hypersurface_well_formed(q, support),
        "quasismooth": qs.ok,
        "quasismooth_witness": None if qs.ok else sorted(qs.witness),
        "del_pezzo": q.fano_index >= 1,
    }
