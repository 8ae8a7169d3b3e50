"""Moment polytopes {y : <y, e_i> >= lambda_i}: vertex enumeration,
reflexivity, monotone normalization, barycentres, and facet chops."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import ceil, floor, gcd

from ._feas import feasible_point
from .errors import (
    ChopTooDeep,
    DivisibilityFails,
    EmptyPolytope,
    Inconsistent,
    Unbounded,
    ValidationError,
)
from .exact_algebra import rank as mat_rank
from .exact_algebra import solve

__all__ = [
    "MomentPolytope",
    "VertexSet",
    "vertices",
    "check_reflexive",
    "normalize_monotone",
    "barycentre",
    "chop",
    "is_bounded",
    "fano_index",
]


@dataclass(frozen=True)
class MomentPolytope:
    rank: int
    edges: tuple    # inward facet normals, primitive integer tuples
    lambdas: tuple  # support numbers, Fractions

    @staticmethod
    def make(rank, edges, lambdas):
        edges = tuple(tuple(int(x) for x in e) for e in edges)
        lambdas = tuple(Fraction(l) for l in lambdas)
        if len(edges) != len(lambdas):
            raise ValidationError("one support number per edge required")
        for e in edges:
            if len(e) != rank:
                raise ValidationError(f"edge {e} has wrong length")
            g = 0
            for x in e:
                g = gcd(g, x)
            if g != 1:
                raise ValidationError(f"edge {e} is not primitive")
        return MomentPolytope(rank, edges, lambdas)


@dataclass(frozen=True)
class VertexSet:
    vertices: tuple   # tuples of Fractions
    incidence: tuple  # per vertex, frozenset of tight facet indices


def _contains(P, y):
    return all(
        sum(Fraction(a) * b for a, b in zip(e, y)) >= l
        for e, l in zip(P.edges, P.lambdas)
    )


def _feasible(P):
    ineqs = [(list(e), l) for e, l in zip(P.edges, P.lambdas)]
    return feasible_point(ineqs, P.rank) is not None


def vertices(P):
    """All 0-dimensional faces, by intersecting facet n-subsets."""
    n = P.rank
    pts = []
    seen = set()
    for subset in combinations(range(len(P.edges)), n):
        rows = [[Fraction(x) for x in P.edges[i]] for i in subset]
        if mat_rank(rows) != n:
            continue
        try:
            y = solve(rows, [P.lambdas[i] for i in subset])
        except Inconsistent:
            continue
        y = tuple(y)
        if y in seen or not _contains(P, y):
            continue
        seen.add(y)
        tight = frozenset(
            i
            for i, (e, l) in enumerate(zip(P.edges, P.lambdas))
            if sum(Fraction(a) * b for a, b in zip(e, y)) == l
        )
        pts.append((y, tight))
    if not pts and not _feasible(P):
        raise EmptyPolytope("half-space system is infeasible")
    pts.sort(key=lambda t: t[0])
    return VertexSet(tuple(p for p, _ in pts), tuple(t for _, t in pts))


def is_bounded(P):
    """True when the recession cone {<y,e_i> >= 0} is trivial."""
    for j in range(P.rank):
        for sign in (1, -1):
            ineqs = [(list(e), 0) for e in P.edges]
            unit = [0] * P.rank
            unit[j] = sign
            ineqs.append((unit, 1))
            if feasible_point(ineqs, P.rank) is not None:
                return False
    return True


def _interior_lattice_points(P, V):
    """Strictly interior integer points, scanned over the vertex
    bounding box (bounded polytopes only)."""
    coords = list(zip(*V.vertices))
    lo = [ceil(min(c)) for c in coords]
    hi = [floor(max(c)) for c in coords]
    pts = []
    for y in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if all(
            sum(a * b for a, b in zip(e, y)) > l
            for e, l in zip(P.edges, P.lambdas)
        ):
            pts.append(y)
    return pts


def check_reflexive(P):
    """Integral vertices, every support number -1, and 0 the only
    interior lattice point."""
    if not is_bounded(P):
        raise Unbounded("reflexivity needs a bounded polytope")
    if any(l != -1 for l in P.lambdas):
        return False
    V = vertices(P)
    if any(c.denominator != 1 for v in V.vertices for c in v):
        return False
    return _interior_lattice_points(P, V) == [(0,) * P.rank]


def normalize_monotone(P, v):
    """Translate a reflexive polytope by a vertex and divide by the
    largest integer keeping the data integral; returns the normalized
    polytope and that integer (the Fano index)."""
    v = tuple(Fraction(x) for x in v)
    shifted = [
        l - sum(Fraction(a) * b for a, b in zip(e, v))
        for e, l in zip(P.edges, P.lambdas)
    ]
    V = vertices(P)
    translated = [[x - y for x, y in zip(vert, v)] for vert in V.vertices]
    values = list(shifted) + [x for vert in translated for x in vert]
    if any(x.denominator != 1 for x in values):
        raise DivisibilityFails("translated data is not integral")
    d = 0
    for x in values:
        d = gcd(d, int(x))
    d = d or 1
    lambdas = tuple(l / d for l in shifted)
    return MomentPolytope(P.rank, P.edges, lambdas), d


def barycentre(P, fano_index):
    """The unique y with <y, e_i> = lambda_i + 1/fano_index for all i."""
    rows = [[Fraction(x) for x in e] for e in P.edges]
    rhs = [l + Fraction(1, fano_index) for l in P.lambdas]
    y = solve(rows, rhs)  # raises Inconsistent when the system is overdetermined
    return tuple(y)


def fano_index(P):
    """Solve for the index from the barycentre equation: find y and a
    common gap g with <y,e_i> - lambda_i = g; returns 1/g as a positive
    integer."""
    n = P.rank
    rows = [[Fraction(x) for x in e] + [Fraction(-1)] for e in P.edges]
    # unknowns u = (y, g) with <y, e_i> - g = lambda_i
    sol = solve(rows, list(P.lambdas))
    g = sol[n]
    if g <= 0 or (1 / g).denominator != 1:
        raise Inconsistent(f"barycentre gap {g} is not a reciprocal integer")
    return int(1 / g)


def chop(P, I, epsilon):
    """Intersect with <y, e0> >= lambda0 for e0 the sum of the facets
    in I and lambda0 their support sum plus epsilon."""
    I = sorted(set(I))
    epsilon = Fraction(epsilon)
    if not I or epsilon <= 0:
        raise ValidationError("need a nonempty index set and epsilon > 0")
    e0 = tuple(sum(P.edges[i][j] for i in I) for j in range(P.rank))
    lambda0 = epsilon + sum((P.lambdas[i] for i in I), Fraction(0))
    V = vertices(P)
    for vert, tight in zip(V.vertices, V.incidence):
        if sum(Fraction(a) * b for a, b in zip(e0, vert)) >= lambda0:
            continue
        if not set(I) <= tight:
            raise ChopTooDeep(
                f"vertex {vert} away from the chopped face is removed"
            )
    return MomentPolytope.make(P.rank, P.edges + (e0,), P.lambdas + (lambda0,))
