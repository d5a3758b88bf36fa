"""Log canonical thresholds of plane-curve germs via Newton polygons.

The core is an exact threshold engine for Q-divisors supported on germ
components: it collects the toric constraints read off the Newton
polygons, detects degenerate faces, and refines them through weighted
blow-up charts.  Integral slopes are handled by coordinate shifts,
non-integral ones through a cyclic cover carrying the ramification
correction.  All arithmetic is over ``fractions.Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .errors import (
    AdaptationExhausted,
    InvalidInput,
    IrrationalRoot,
    NonIntegralSlope,
    TruncationTooSmall,
)

Terms = dict[tuple[int, int], Fraction]

ONE = Fraction(1)
UNBOUNDED = Fraction(10**12)  # sentinel: no local condition at the origin


@dataclass(frozen=True)
class PlaneGerm:
    """A two-variable germ, reliable up to total degree ``trunc_bound``.

    ``trunc_bound`` of ``None`` means the germ is an exact polynomial.
    """

    terms: tuple[tuple[tuple[int, int], Fraction], ...]
    trunc_bound: int | None = None

    def __post_init__(self):
        if not self.terms:
            raise InvalidInput("empty germ")
        for (m1, m2), c in self.terms:
            if m1 == m2 == 0:
                raise InvalidInput("germ must vanish at the origin")
            if c == 0:
                raise InvalidInput("zero coefficient in germ")

    @property
    def term_map(self) -> Terms:
        return dict(self.terms)

    @property
    def multiplicity(self) -> int:
        return min(m1 + m2 for (m1, m2), _ in self.terms)


def germ(terms, trunc_bound: int | None = None) -> PlaneGerm:
    """Build a germ from a coefficient map, dropping zero coefficients."""
    cleaned = {tuple(m): Fraction(c) for m, c in terms.items() if c}
    return PlaneGerm(tuple(sorted(cleaned.items())), trunc_bound)


def germ_from_support(points, trunc_bound=None) -> PlaneGerm:
    return germ({tuple(p): ONE for p in points}, trunc_bound)


# ----------------------------------------------------------------------
# Newton polygon geometry


def _pareto(points):
    pts = sorted(set(points))
    return [
        p
        for p in pts
        if not any(q[0] <= p[0] and q[1] <= p[1] and q != p for q in pts)
    ]


def _lower_hull(points):
    """Vertices of the compact boundary of conv(support + N^2), sorted by
    first coordinate ascending."""
    pts = sorted(_pareto(points))
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (ax, ay), (bx, by) = hull[-2], hull[-1]
            if (bx - ax) * (p[1] - ay) - (by - ay) * (p[0] - ax) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


@dataclass(frozen=True)
class NewtonData:
    """Compact faces of the Newton polyhedron and the diagonal parameter."""

    vertices: tuple[tuple[int, int], ...]
    t0: Fraction

    @property
    def faces(self) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        return list(zip(self.vertices, self.vertices[1:]))


def _diagonal_parameter(hull) -> Fraction:
    first, last = hull[0], hull[-1]
    if first[0] >= first[1]:
        return Fraction(first[0])
    if last[1] >= last[0]:
        return Fraction(last[1])
    for p, q in zip(hull, hull[1:]):
        A, B = p[1] - q[1], q[0] - p[0]
        t = Fraction(A * p[0] + B * p[1], A + B)
        if p[0] <= t <= q[0]:
            return t
    raise AssertionError("diagonal must cross the Newton boundary")


def newton_data(g: PlaneGerm) -> NewtonData:
    hull = _lower_hull([m for m, _ in g.terms])
    return NewtonData(tuple(hull), _diagonal_parameter(hull))


def _edge_normals(points):
    """Primitive inner normals (w1, w2), both positive, of the compact
    hull edges; w1 weighs the first exponent."""
    hull = _lower_hull(points)
    out = []
    for p, q in zip(hull, hull[1:]):
        A, B = p[1] - q[1], q[0] - p[0]
        g = gcd(A, B)
        out.append((A // g, B // g))
    return out


# ----------------------------------------------------------------------
# Exact univariate helpers (face polynomials are tiny)


def _poly_divmod(num, den):
    num = list(num)
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    for k in range(len(num) - len(den), -1, -1):
        c = num[len(den) - 1 + k] / den[-1]
        q[k] = c
        for j, dj in enumerate(den):
            num[j + k] -= c * dj
    while num and num[-1] == 0:
        num.pop()
    return q, num


def _poly_gcd_degree(a, b):
    a, b = list(a), list(b)
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    while b:
        _, r = _poly_divmod(a, b)
        while r and r[-1] == 0:
            r.pop()
        a, b = b, r
    return len(a) - 1 if a else -1


def _divisors(n):
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return out


def rational_roots(dense):
    """Nonzero rational roots with multiplicities of a dense Fraction list,
    plus the rational-root-free cofactor."""
    poly = [Fraction(c) for c in dense]
    while poly and poly[-1] == 0:
        poly.pop()
    while poly and poly[0] == 0:
        poly.pop(0)
    if len(poly) <= 1:
        return {}, poly
    scale = lcm(*[c.denominator for c in poly])
    ipoly = [int(c * scale) for c in poly]
    candidates = set()
    for p in _divisors(ipoly[0]):
        for q in _divisors(ipoly[-1]):
            candidates.add(Fraction(p, q))
            candidates.add(Fraction(-p, q))
    roots: dict[Fraction, int] = {}
    cur = [Fraction(c) for c in ipoly]
    for r in sorted(candidates):
        while len(cur) > 1 and sum(c * r**k for k, c in enumerate(cur)) == 0:
            cur, rem = _poly_divmod(cur, [-r, Fraction(1)])
            assert not rem
            roots[r] = roots.get(r, 0) + 1
    return roots, cur


def _has_repeated_factor(dense) -> bool:
    poly = [Fraction(c) for c in dense]
    while poly and poly[-1] == 0:
        poly.pop()
    if len(poly) <= 2:
        return False
    deriv = [k * c for k, c in enumerate(poly)][1:]
    return _poly_gcd_degree(poly, deriv) >= 1


# ----------------------------------------------------------------------
# Threshold engine.
#
# A state is a list of components (terms, alpha, beta, bound): the
# component enters the divisor with coefficient alpha*c + beta, where c is
# the unknown threshold parameter, and bound is the truncation bound of
# the terms (None = exact).  The engine turns the log-canonicity
# conditions at the origin of the current chart into upper bounds on c.

Component = tuple[Terms, Fraction, Fraction, "int | None"]


@dataclass
class _Engine:
    max_depth: int = 16
    exact: bool = True
    constraints: list[tuple[Fraction, str]] = field(default_factory=list)
    log: list[str] = field(default_factory=list)

    def add(self, bound: Fraction, why: str):
        self.constraints.append((bound, why))

    def coeff_le_one(self, a: Fraction, b: Fraction, why: str):
        if a > 0:
            self.add((1 - b) / a, why)
        elif b > 1:
            self.add(Fraction(0), why + " (fixed coefficient exceeds 1)")

    def result(self):
        if not self.constraints:
            return UNBOUNDED, "no local constraint"
        return min(self.constraints, key=lambda t: t[0])


def _face_support(terms: Terms, w):
    n = min(w[0] * m1 + w[1] * m2 for (m1, m2) in terms)
    face = [(m, c) for m, c in terms.items() if w[0] * m[0] + w[1] * m[1] == n]
    return n, face


def _face_poly(face, w, swap: bool):
    """Dense face polynomial in the branch parameter.

    For integral faces w=(1,p) the branches read y = tau * x^p and the
    exponent of a monomial is its y-exponent (mirrored when swapped).  For
    non-integral faces the parameter is the step index along the edge;
    only root multiplicities matter there.
    """
    if w[0] == 1 and not swap:
        key = lambda m: m[1]
    elif swap:
        key = lambda m: m[0]
    else:
        base1 = min(m[0] for m, _ in face)
        key = lambda m: (m[0] - base1) // w[1]
    coeffs: dict[int, Fraction] = {}
    for m, c in face:
        k = key(m)
        coeffs[k] = coeffs.get(k, Fraction(0)) + c
    base = min(coeffs)
    return [coeffs.get(k, Fraction(0)) for k in range(base, max(coeffs) + 1)]


def _check_frontier(terms: Terms, bound):
    """Certify that terms hidden beyond the truncation bound cannot alter
    the Newton polygon data the engine consumes.

    Hidden terms have total degree >= bound, hence w-value at least
    bound * min(w); requiring every face level to stay strictly below that
    keeps hidden points off and above all computed face lines.
    """
    if bound is None or not terms:
        return
    hull = _lower_hull(list(terms))
    if any(m1 + m2 >= bound - 1 for m1, m2 in hull):
        raise TruncationTooSmall(
            f"Newton polygon vertex at the truncation frontier (bound {bound})",
            bound,
        )
    for w in _edge_normals(list(terms)):
        level = min(w[0] * m1 + w[1] * m2 for (m1, m2) in terms)
        if level >= bound * min(w):
            raise TruncationTooSmall(
                f"face w={w} reaches the truncation frontier (bound {bound})",
                bound,
            )


def _shift_terms(terms: Terms, p: int, tau0: Fraction, swap: bool) -> Terms:
    """Substitute y -> tau0 * x^p + y (mirrored in x when swapped)."""
    out: Terms = {}
    for (m1, m2), c in terms.items():
        if swap:
            m1, m2 = m2, m1
        binom = 1
        for j in range(m2 + 1):
            e = (m1 + p * (m2 - j), j)
            if swap:
                e = (e[1], e[0])
            out[e] = out.get(e, Fraction(0)) + c * binom * tau0 ** (m2 - j)
            binom = binom * (m2 - j) // (j + 1)
    return {m: c for m, c in out.items() if c}


def _chart_map(terms: Terms, w, n: int, swap: bool) -> Terms:
    """Monomial part of the w-blow-up chart: u is the exceptional
    coordinate, v the branch parameter; divides by u^n."""
    out: Terms = {}
    for (m1, m2), c in terms.items():
        e = (w[0] * m1 + w[1] * m2 - n, m2 if not swap else m1)
        out[e] = out.get(e, Fraction(0)) + c
    return {m: c for m, c in out.items() if c}


def _run(engine: _Engine, comps: list[Component], depth: int, tag: str):
    live = [c for c in comps if c[0]]
    if not live:
        return
    for terms, _, _, bound in live:
        _check_frontier(terms, bound)

    normals: set[tuple[int, int]] = set()
    for terms, _, _, _ in live:
        normals.update(_edge_normals(list(terms)))

    for w in sorted(normals | {(1, 0), (0, 1)}):
        A = Fraction(0)
        B = Fraction(0)
        for terms, a, b, _ in live:
            n, _ = _face_support(terms, w)
            A += a * n
            B += b * n
        rhs = Fraction(w[0] + w[1])
        if A > 0:
            engine.add((rhs - B) / A, f"{tag}: toric w={w}")
        elif B > rhs:
            engine.add(Fraction(0), f"{tag}: fixed part exceeds at w={w}")

    for w in sorted(normals):
        _process_face(engine, live, w, depth, tag)


def _process_face(engine: _Engine, live, w, depth, tag):
    integral = w[0] == 1 or w[1] == 1
    swap = integral and w[1] == 1 and w[0] > 1

    ntot_a = Fraction(0)
    ntot_b = Fraction(0)
    faces = []
    for terms, a, b, bound in live:
        n, face = _face_support(terms, w)
        ntot_a += a * n
        ntot_b += b * n
        faces.append((n, face))

    root_mult: dict[Fraction, list[int]] = {}
    irr_simple: list[int] = []
    irr_repeated = False
    residuals = []
    for idx, (n, face) in enumerate(faces):
        dense = _face_poly(face, w, swap)
        roots, residual = rational_roots(dense)
        residuals.append(residual)
        for r, m in roots.items():
            root_mult.setdefault(r, [0] * len(faces))[idx] = m
        if len(residual) > 1:
            if _has_repeated_factor(residual):
                irr_repeated = True
            else:
                irr_simple.append(idx)
    for i in range(len(residuals)):
        for j in range(i + 1, len(residuals)):
            if len(residuals[i]) > 1 and len(residuals[j]) > 1:
                if _poly_gcd_degree(residuals[i], residuals[j]) >= 1:
                    irr_repeated = True

    bad_roots = {r: m for r, m in root_mult.items() if sum(m) >= 2}

    if not integral:
        if irr_repeated or bad_roots:
            if depth >= engine.max_depth:
                _conservative(engine, live, faces, w, ntot_a, ntot_b, tag, "depth cap")
                return
            cover = w[0]
            new_comps: list[Component] = [
                ({(m1 * cover, m2): c for (m1, m2), c in terms.items()}, a, b, bound)
                for terms, a, b, bound in live
            ]
            new_comps.append(({(1, 0): ONE}, Fraction(0), Fraction(1 - cover), None))
            engine.log.append(f"cover x->u^{cover} for face w={w}")
            _run(engine, new_comps, depth + 1, tag + f"/cov{cover}")
        else:
            for idx, (n, face) in enumerate(faces):
                if len(face) > 1:
                    _, a, b, _ = live[idx]
                    engine.coeff_le_one(a, b, f"{tag}: branch at w={w}")
        return

    if irr_repeated:
        _conservative(engine, live, faces, w, ntot_a, ntot_b, tag, "irrational repeated root")

    for idx in irr_simple:
        _, a, b, _ = live[idx]
        engine.coeff_le_one(a, b, f"{tag}: branch (irr) at w={w}")

    for tau0, mults in sorted(root_mult.items()):
        total = sum(mults)
        if total == 1:
            idx = next(i for i, m in enumerate(mults) if m)
            _, a, b, _ = live[idx]
            engine.coeff_le_one(a, b, f"{tag}: branch at w={w}, tau={tau0}")
            continue
        if depth >= engine.max_depth:
            _conservative(
                engine, live, faces, w, ntot_a, ntot_b, tag, f"depth cap at tau={tau0}"
            )
            continue
        p = w[1] if not swap else w[0]
        new_comps = []
        for (terms, a, b, bound), (n, face) in zip(live, faces):
            g = _chart_map(_shift_terms(terms, p, tau0, swap), w, n, swap)
            if g and (0, 0) not in g:
                new_comps.append((g, a, b, None if bound is None else bound - n))
        new_comps.append(({(1, 0): ONE}, ntot_a, ntot_b - (w[0] + w[1] - 1), None))
        engine.log.append(f"centre tau={tau0} on face w={w}{' (swapped)' if swap else ''}")
        _run(engine, new_comps, depth + 1, tag + f"/w{w}t{tau0}")


def _conservative(engine: _Engine, live, faces, w, ntot_a, ntot_b, tag, reason):
    """Certified fallback via the multiplicity bound: the pair is log
    canonical at the refined point when its total multiplicity is <= 1."""
    engine.exact = False
    mult_a = Fraction(0)
    mult_b = Fraction(0)
    for (terms, a, b, bound), (n, face) in zip(live, faces):
        span = max(len(_face_poly(face, w, False)) - 1, 0)
        mult_a += a * span
        mult_b += b * span
    denom = mult_a + ntot_a
    if denom > 0:
        engine.add(
            (1 + Fraction(w[0] + w[1] - 1) - ntot_b - mult_b) / denom,
            f"{tag}: {reason} at w={w} (conservative)",
        )
    engine.log.append(f"{reason} at w={w}")


def lct_divisor(components, max_depth: int = 16):
    """sup { c : (C^2, c * sum(lambda_i * div(f_i))) is log canonical at 0 }.

    ``components`` is a list of (PlaneGerm, multiplicity).  Returns
    (value, exact, notes); when refinement hits the depth cap or an
    irrational repeated root, ``exact`` is False and the value is a
    certified lower bound.
    """
    comps: list[Component] = []
    for g, lam in components:
        lam = Fraction(lam)
        if lam <= 0:
            raise InvalidInput("component multiplicities must be positive")
        comps.append((g.term_map, lam, Fraction(0), g.trunc_bound))
    engine = _Engine(max_depth=max_depth)
    _run(engine, comps, 0, "origin")
    value, why = engine.result()
    return value, engine.exact, [why] + engine.log


# ----------------------------------------------------------------------
# Public operations


@dataclass(frozen=True)
class LctCertificate:
    value: Fraction
    attained_by: str
    adapted_coordinates: tuple[str, ...] = ()
    exact: bool = True


def _diagonal_faces(nd: NewtonData):
    out = []
    for p, q in nd.faces:
        A, B = p[1] - q[1], q[0] - p[0]
        if (A + B) * nd.t0 == A * p[0] + B * p[1]:
            out.append((p, q))
    return out


def _face_degeneracy(terms: Terms, w):
    """(repeated rational roots, has irrational repeated factor) for the
    face of one germ at normal w."""
    swap = w[1] == 1 and w[0] > 1
    _, face = _face_support(terms, w)
    roots, residual = rational_roots(_face_poly(face, w, swap))
    repeated = {r: m for r, m in roots.items() if m >= 2}
    return repeated, _has_repeated_factor(residual)


def _diagonal_degenerate(g: PlaneGerm, nd: NewtonData):
    """Return (w, repeated rational roots, irr flag) for a degenerate face
    meeting the diagonal, or None."""
    terms = g.term_map
    for p, q in _diagonal_faces(nd):
        A, B = p[1] - q[1], q[0] - p[0]
        d = gcd(A, B)
        w = (A // d, B // d)
        repeated, irr = _face_degeneracy(terms, w)
        if repeated or irr:
            return w, repeated, irr
    return None


def newton_adapt(g: PlaneGerm, max_iter: int = 16, best_effort: bool = False):
    """Shift coordinates until the faces meeting the diagonal carry no
    repeated torus root; returns (adapted germ, substitution log).

    Only integral-slope faces can be fixed by a shift; a repeated root on
    a face with non-integral slope raises :class:`NonIntegralSlope` (the
    threshold engine continues through a monomial substitution there), an
    irrational repeated root raises :class:`IrrationalRoot`.  With
    ``best_effort`` the germ adapted so far is returned instead.
    """
    current = g
    subs: list[str] = []
    for _ in range(max_iter):
        nd = newton_data(current)
        bad = _diagonal_degenerate(current, nd)
        if bad is None:
            return current, subs
        w, repeated, irr = bad
        if not repeated:
            if best_effort:
                return current, subs
            raise IrrationalRoot(
                f"repeated irrational root on diagonal face w={w}",
                lower_bound=Fraction(1, max(1, current.multiplicity)),
            )
        if w[0] > 1 and w[1] > 1:
            if best_effort:
                return current, subs
            raise NonIntegralSlope(f"diagonal face w={w} needs a monomial substitution")
        swap = w[1] == 1 and w[0] > 1
        tau0 = sorted(repeated)[0]
        p = w[1] if not swap else w[0]
        shifted = _shift_terms(current.term_map, p, tau0, swap)
        var, other = ("x", "y") if swap else ("y", "x")
        subs.append(f"{var} <- {var} + ({tau0})*{other}^{p}")
        current = PlaneGerm(tuple(sorted(shifted.items())), current.trunc_bound)
        _check_frontier(current.term_map, current.trunc_bound)
    if best_effort:
        return current, subs
    raise AdaptationExhausted(
        f"no stable coordinates after {max_iter} shifts",
        lower_bound=Fraction(1, max(1, current.multiplicity)),
    )


def lct_newton(g: PlaneGerm, max_iter: int = 16) -> LctCertificate:
    """lct at the origin of the pair (C^2, div(g)) for a single germ.

    Nondegenerate diagonal faces are answered straight from the polygon as
    min(1, 1/t0), after shift adaptation where needed; the remaining cases
    go through the full refinement engine.
    """
    adapted, subs = newton_adapt(g, max_iter, best_effort=True)
    nd = newton_data(adapted)
    if _diagonal_degenerate(adapted, nd) is None:
        return LctCertificate(min(ONE, 1 / nd.t0), f"t0={nd.t0}", tuple(subs))
    value, exact, log = lct_divisor([(g, 1)], max_depth=max_iter)
    if not exact:
        raise AdaptationExhausted(f"adaptation incomplete: {log}", lower_bound=value)
    return LctCertificate(min(value, ONE), log[0], tuple(subs))


def lct_weighted(components, max_depth: int = 16) -> LctCertificate:
    """lct at the origin of (C^2, sum(lambda_i * div(f_i))); the value can
    exceed 1 when the multiplicities are below 1."""
    comps = [(g, Fraction(lam)) for g, lam in components]
    value, exact, log = lct_divisor(comps, max_depth=max_depth)
    if not exact:
        raise AdaptationExhausted(f"adaptation incomplete: {log}", lower_bound=value)
    return LctCertificate(value, log[0])


def lct_igusa(n1: int, n2: int, m1: int, m2: int) -> Fraction:
    """Closed form for the germ x^{n1} y^{n2} (x^{m1} + y^{m2}), capped at 1."""
    if m1 + m2 < 1:
        raise InvalidInput("need m1 + m2 >= 1")
    cands = [ONE]
    if n1:
        cands.append(Fraction(1, n1))
    if n2:
        cands.append(Fraction(1, n2))
    den = m1 * m2 + m1 * n2 + m2 * n1
    if den:
        cands.append(Fraction(m1 + m2, den))
    return min(cands)


def lct_concurrent_lines(multiplicities) -> Fraction:
    """lct of k >= 1 distinct lines through one point with multiplicities
    lambda_i: min(min_i 1/lambda_i, 2/sum(lambda))."""
    lams = [Fraction(l) for l in multiplicities]
    if not lams or any(l <= 0 for l in lams):
        raise InvalidInput("need positive multiplicities")
    cands = [1 / l for l in lams]
    if len(lams) >= 2:
        cands.append(2 / sum(lams))
    return min(cands)
