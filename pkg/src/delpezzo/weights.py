"""Weight quadruples, monomial supports and numerical invariants.

Everything is exact: weights and exponents are Python ints, all derived
invariants are ``fractions.Fraction``.  The quadruple is kept sorted
ascending and the Fano index is always recomputed from weights and degree.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from .errors import InvalidInput, LinearCone, NonInteger

#: Marker coefficient for "a general nonzero constant".
GENERIC = object()


@dataclass(frozen=True, order=True)
class Quintuple:
    """A sorted weight quadruple together with the degree of the hypersurface."""

    weights: tuple[int, int, int, int]
    degree: int

    def __post_init__(self):
        ws = tuple(int(a) for a in self.weights)
        if len(ws) != 4 or any(a < 1 for a in ws):
            raise InvalidInput(f"need four positive weights, got {self.weights}")
        if list(ws) != sorted(ws):
            raise InvalidInput(f"weights must be sorted ascending, got {ws}")
        if self.degree < 1:
            raise InvalidInput(f"degree must be positive, got {self.degree}")
        object.__setattr__(self, "weights", ws)

    @property
    def fano_index(self) -> int:
        return sum(self.weights) - self.degree

    def __str__(self):
        a = self.weights
        return f"X_{self.degree} in P({a[0]},{a[1]},{a[2]},{a[3]})"


def make_quintuple(weights, degree) -> Quintuple:
    """Sort the weights and build a :class:`Quintuple`."""
    return Quintuple(tuple(sorted(int(a) for a in weights)), int(degree))


Exponent = tuple[int, int, int, int]


def monomials_of_degree(weights, d) -> frozenset[Exponent]:
    """All exponent vectors e in N^4 with sum(e_i * a_i) == d."""
    a0, a1, a2, a3 = weights
    out = []
    for e0 in range(d // a0 + 1):
        r0 = d - e0 * a0
        for e1 in range(r0 // a1 + 1):
            r1 = r0 - e1 * a1
            for e2 in range(r1 // a2 + 1):
                r2 = r1 - e2 * a2
                if r2 % a3 == 0:
                    out.append((e0, e1, e2, r2 // a3))
    return frozenset(out)


@dataclass(frozen=True)
class QuasiPolynomial:
    """A quasihomogeneous polynomial given by its coefficient map.

    Coefficients are nonzero :class:`~fractions.Fraction` values or the
    :data:`GENERIC` marker.  All exponents must have the same weighted
    degree for the attached quintuple.
    """

    quintuple: Quintuple
    terms: dict[Exponent, object]

    def __post_init__(self):
        if not self.terms:
            raise InvalidInput("a quasipolynomial needs at least one term")
        a = self.quintuple.weights
        d = self.quintuple.degree
        for e, c in self.terms.items():
            if sum(ei * ai for ei, ai in zip(e, a)) != d:
                raise InvalidInput(f"monomial {e} does not have weighted degree {d}")
            if c is not GENERIC and c == 0:
                raise InvalidInput(f"zero coefficient at {e}")

    @property
    def support(self) -> frozenset[Exponent]:
        return frozenset(self.terms)

    @property
    def is_concrete(self) -> bool:
        return all(c is not GENERIC for c in self.terms.values())

    def restrict(self, kill: int) -> dict[Exponent, object]:
        """Terms surviving x_kill = 0."""
        return {e: c for e, c in self.terms.items() if e[kill] == 0}


def generic_polynomial(q: Quintuple) -> QuasiPolynomial:
    """The full monomial support with generic-marker coefficients."""
    support = monomials_of_degree(q.weights, q.degree)
    if not support:
        raise InvalidInput(f"no monomials of degree {q.degree} for weights {q.weights}")
    return QuasiPolynomial(q, {e: GENERIC for e in support})


def is_wps_well_formed(weights) -> bool:
    """Every three of the four weights must be coprime."""
    return all(gcd(gcd(t[0], t[1]), t[2]) == 1 for t in itertools.combinations(weights, 3))


def restricted_support(support, pair) -> set[Exponent]:
    """Exponents supported on the variable pair only."""
    others = [k for k in range(4) if k not in pair]
    return {e for e in support if all(e[k] == 0 for k in others)}


def is_hypersurface_well_formed(q: Quintuple, support=None) -> bool:
    """X must not contain a singular curve of the ambient space: whenever two
    weights share a factor, the support restricted to that pair is nonempty."""
    if support is None:
        support = monomials_of_degree(q.weights, q.degree)
    for i, j in itertools.combinations(range(4), 2):
        if gcd(q.weights[i], q.weights[j]) > 1 and not restricted_support(support, (i, j)):
            return False
    return True


@dataclass(frozen=True)
class QuasismoothReport:
    ok: bool
    witness: frozenset[int] | None = None  # smallest failing variable subset


def generic_quasismooth(q: Quintuple, support=None) -> QuasismoothReport:
    """Combinatorial quasismoothness test for the general member.

    For every nonempty subset S of variables, either (a) some monomial is
    supported inside S (the generic zero set is then smooth along the open
    S-stratum by Bertini), or (b) there are |S| monomials of the form
    (S-monomial) * x_e with pairwise distinct e outside S.  The test-only
    brute-force oracle in the test suite validates this criterion.
    """
    a, d = q.weights, q.degree
    if support is None:
        support = monomials_of_degree(a, d)
    for i in range(4):
        if d == a[i] and any(e[i] == 1 and sum(e) == 1 for e in support):
            raise LinearCone(f"degree {d} equals weight a_{i} with x_{i} present")
    subsets = sorted(
        (frozenset(s) for r in (1, 2, 3, 4) for s in itertools.combinations(range(4), r)),
        key=lambda s: (len(s), sorted(s)),
    )
    for S in subsets:
        comp = [k for k in range(4) if k not in S]
        pure = [e for e in support if all(e[k] == 0 for k in comp)]
        if pure:
            continue
        # monomials that are linear in exactly one outside variable
        outside = set()
        for e in support:
            ext = [k for k in comp if e[k] > 0]
            if len(ext) == 1 and e[ext[0]] == 1:
                outside.add(ext[0])
        if len(outside) < len(S):
            return QuasismoothReport(False, S)
    return QuasismoothReport(True)


def is_del_pezzo(q: Quintuple) -> bool:
    """Anticanonical ampleness: d <= sum(a_i) - 1, i.e. Fano index >= 1."""
    return q.fano_index >= 1


def k_squared(q: Quintuple) -> Fraction:
    """Self-intersection of the anticanonical class, I^2 d / (a0 a1 a2 a3)."""
    if not is_del_pezzo(q):
        raise InvalidInput(f"{q} is not a del Pezzo surface (I={q.fano_index})")
    return Fraction(q.fano_index**2 * q.degree, prod(q.weights))


def degree_pairing(q: Quintuple, m: int, k: int) -> Fraction:
    """Intersection number O(m).O(k) on X: m*k*d / (a0 a1 a2 a3)."""
    if m < 0 or k < 0:
        raise InvalidInput("degrees in the pairing must be non-negative")
    return Fraction(m * k * q.degree, prod(q.weights))


def milnor_number(q: Quintuple) -> int:
    """Milnor number prod(d/a_i - 1) of the cone singularity; must be an
    integer for an isolated quasihomogeneous singularity."""
    mu = prod(Fraction(q.degree, ai) - 1 for ai in q.weights)
    if mu.denominator != 1 or mu < 0:
        raise NonInteger(f"Milnor product {mu} is not a non-negative integer")
    return int(mu)


def bishop_lichnerowicz(q: Quintuple) -> tuple[bool, bool]:
    """The two numeric obstructions to a Kaehler-Einstein metric, for a
    surface in a four-weight space: d*I^3 <= 27*prod(a) and sum(a) <= d+3*a0."""
    a, d = q.weights, q.degree
    if d >= sum(a):
        raise InvalidInput("Bishop/Lichnerowicz checks need d < sum of weights")
    I = q.fano_index
    return (d * I**3 <= 27 * prod(a), sum(a) <= d + 3 * a[0])


def excluded_family_member(q: Quintuple) -> bool:
    """Membership in the family (I-k, I+k, a, a+k, 2a+k+I), 0 <= k < I,
    a >= I+k, after sorting."""
    I = q.fano_index
    if I < 1:
        raise InvalidInput("excluded-family test needs I >= 1")
    for k in range(I):
        for a in range(I + k, q.weights[3] + 1):
            pattern = tuple(sorted((I - k, I + k, a, a + k)))
            if pattern == q.weights and q.degree == 2 * a + k + I:
                return True
    return False


class Trichotomy(enum.Enum):
    TWO_I_GEQ_THREE_A0 = "2I>=3a0"
    EXCLUDED_FAMILY = "excluded-family"
    MAIN_CASE = "main"


def case_trichotomy(q: Quintuple) -> Trichotomy:
    """Exactly one of: 2I >= 3*a0, the excluded family, or the main case."""
    if not is_del_pezzo(q):
        raise InvalidInput(f"{q} is not a del Pezzo surface")
    if 2 * q.fano_index >= 3 * q.weights[0]:
        return Trichotomy.TWO_I_GEQ_THREE_A0
    if excluded_family_member(q):
        return Trichotomy.EXCLUDED_FAMILY
    return Trichotomy.MAIN_CASE
