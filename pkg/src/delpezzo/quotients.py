"""Cyclic quotient singularities of the hypersurface and their normal form.

A type 1/r(b1, b2) is stored canonically as 1/r(1, c) where c is the
smaller of the two mutually inverse residues reachable from (b1, b2) by
unit scaling and swapping.  This makes comparison against the many
equivalent notations used for quotient singularities a plain equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, lcm

from .errors import EmptyRestriction, InvalidInput, NoEliminationMonomial, NotCoprime
from .weights import Quintuple, restricted_support


@dataclass(frozen=True, order=True)
class QuotientType:
    r: int
    b1: int
    b2: int

    def __str__(self):
        return f"1/{self.r}({self.b1},{self.b2})"


def canonical_type(r: int, b1: int, b2: int) -> QuotientType:
    """Canonical representative of 1/r(b1,b2) under unit scaling and swap."""
    if r < 2:
        raise InvalidInput(f"quotient order must be >= 2, got {r}")
    b1 %= r
    b2 %= r
    if gcd(b1, r) != 1 or gcd(b2, r) != 1:
        raise NotCoprime(f"1/{r}({b1},{b2}) has a weight sharing a factor with {r}")
    c = (b2 * pow(b1, -1, r)) % r
    cinv = pow(c, -1, r)
    return QuotientType(r, 1, min(c, cinv))


@dataclass(frozen=True)
class SingularPoint:
    """A vertex O_i or a batch of edge points on the segment O_i O_j."""

    locus: tuple[int, ...]  # (i,) for a vertex, (i, j) for an edge
    qtype: QuotientType
    count: int = 1

    def __str__(self):
        names = "xyzt"
        if len(self.locus) == 1:
            return f"O_{names[self.locus[0]]} = {self.qtype}"
        i, j = self.locus
        return f"O_{names[i]}O_{names[j]} = {self.count}x{self.qtype}"


@dataclass(frozen=True)
class SingularLocus:
    points: tuple[SingularPoint, ...]

    def type_multiset(self) -> tuple[QuotientType, ...]:
        """Canonical types with multiplicity, sorted; the comparison key
        against the classification table."""
        out = []
        for p in self.points:
            out.extend([p.qtype] * p.count)
        return tuple(sorted(out))

    def __str__(self):
        return ", ".join(str(p) for p in self.points) if self.points else "smooth"


def elimination_index(q: Quintuple, support, i: int) -> int | None:
    """Index j such that some monomial x_i^m * x_j (x_j linear, no other
    variables) lies in the support; None if no such monomial exists.

    When several j qualify, the weighted degree forces a_j = a_k mod a_i,
    so the resulting quotient type does not depend on the choice; this is
    asserted.
    """
    found = set()
    for e in support:
        others = [k for k in range(4) if k != i and e[k] > 0]
        if len(others) == 1 and e[others[0]] == 1:
            found.add(others[0])
    if not found:
        return None
    js = sorted(found)
    for j1, j2 in itertools.combinations(js, 2):
        assert (q.weights[j1] - q.weights[j2]) % q.weights[i] == 0, (
            f"elimination monomials at O_{i} disagree mod a_{i}"
        )
    return js[0]


def vertex_on_surface(q: Quintuple, support, i: int) -> bool:
    """O_i lies on X iff no pure power of x_i appears in the support."""
    return not any(sum(e) == e[i] and e[i] > 0 for e in support)


def vertex_singularity(q: Quintuple, support, i: int) -> QuotientType | None:
    """Quotient type of X at the vertex O_i, or None when O_i is off the
    surface or the vertex is a smooth point (weight 1)."""
    if not vertex_on_surface(q, support, i):
        return None
    if q.weights[i] == 1:
        return None
    j = elimination_index(q, support, i)
    if j is None:
        raise NoEliminationMonomial(
            f"O_{i} lies on X but no monomial x_{i}^m*x_j exists; "
            "support is not quasismooth"
        )
    k, l = (m for m in range(4) if m not in (i, j))
    return canonical_type(q.weights[i], q.weights[k], q.weights[l])


def edge_singularities(q: Quintuple, support, i: int, j: int) -> tuple[int, QuotientType] | None:
    """Quotient points on the open segment O_i O_j.

    Returns (count, type) or None when gcd(a_i, a_j) = 1.  The count is
    derived from the exponent range of the restricted binary form, which
    excludes roots supported at the vertices; it is the number of distinct
    points for generic coefficients.
    """
    a = q.weights
    r = gcd(a[i], a[j])
    if r == 1:
        return None
    M = restricted_support(support, (i, j))
    if not M:
        raise EmptyRestriction(
            f"edge ({i},{j}) has stabiliser of order {r} but empty restricted "
            "support; hypersurface is not well formed"
        )
    exps = [e[i] for e in M]
    count = (max(exps) - min(exps)) * a[i] // lcm(a[i], a[j])
    if count == 0:
        return None
    k, l = (m for m in range(4) if m not in (i, j))
    return count, canonical_type(r, a[k], a[l])


def singular_locus(q: Quintuple, support=None) -> SingularLocus:
    """All cyclic quotient points of X: vertex and edge strata.

    Quasismoothness plus well-formedness guarantee there are no
    singularities along two-dimensional strata, so this is the whole
    singular locus for a generic member.
    """
    from .weights import monomials_of_degree

    if support is None:
        support = monomials_of_degree(q.weights, q.degree)
    pts: list[SingularPoint] = []
    for i in range(4):
        t = vertex_singularity(q, support, i)
        if t is not None:
            pts.append(SingularPoint((i,), t))
    for i, j in itertools.combinations(range(4), 2):
        res = edge_singularities(q, support, i, j)
        if res is not None:
            count, t = res
            pts.append(SingularPoint((i, j), t, count))
    return SingularLocus(tuple(pts))
