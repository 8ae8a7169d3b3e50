"""Batyrev-style presentations of the quantum ring, localization
models of symplectic cohomology, first-Chern/symplectic-class
operators, root-of-unity family checks, the Novikov change-of-variable
homomorphism, and eigenvalue transfer from base to total space."""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import Inconsistent, NotMonotone, ToleranceExceeded
from .exact_algebra import (
    Polynomial,
    Ring,
    complex_eigen,
    groebner_basis,
    localize,
    mat_pow,
    normal_form,
    nullspace,
    quotient_algebra,
    to_numpy,
)
from .lattice_fan import batyrev_decompose, primitive_collections, validate_fan
from .polytope import fano_index

__all__ = [
    "Presentation",
    "EigenFamilyReport",
    "PhiMap",
    "qh_presentation",
    "sh_presentation",
    "c1_operator",
    "omega_operator",
    "eigen_family_check",
    "phi_check",
    "eigenvalue_transfer_check",
]


@dataclass
class Presentation:
    """Quantum presentation with the Novikov variable T kept symbolic.

    ``ring`` orders the divisor variables first and T last; relations
    at T=1 live in ``ring_t1`` (divisor variables only).
    """

    variables: tuple
    ring: Ring
    ring_t1: Ring
    linear_relations: list
    qsr_relations: list
    lam_X: int
    mode: str

    def relations(self):
        return list(self.linear_relations) + list(self.qsr_relations)

    def relations_t1(self):
        """All relations with T specialized to 1."""
        out = []
        for f in self.relations():
            terms = {}
            for m, c in f.terms.items():
                key = m[:-1]
                terms[key] = terms.get(key, Fraction(0)) + c
            out.append(
                Polynomial(self.ring_t1, {m: c for m, c in terms.items() if c})
            )
        return out

    def relations_classical(self):
        """All relations with T specialized to 0."""
        out = []
        for f in self.relations():
            terms = {m[:-1]: c for m, c in f.terms.items() if m[-1] == 0}
            out.append(Polynomial(self.ring_t1, terms))
        return out


@dataclass
class EigenFamilyReport:
    d0: int
    g: Polynomial
    holds: bool


@dataclass
class PhiMap:
    """T_B^{lam_B} maps to T_E^{lam_E} times the k-th power of the
    fiber class."""

    k: int
    fiber_class: Polynomial  # in the E symbolic ring


def qh_presentation(fan, P, mode="compact"):
    """Linear relations and quantum monomial relations of a smooth fan
    with its polytope; returns the presentation (T symbolic) and the
    quotient algebra at T=1."""
    report = validate_fan(fan)
    if not report.smooth:
        raise ValueError("presentation requires a smooth fan")
    r = len(fan.edges)
    names = tuple(f"x{i + 1}" for i in range(r))
    ring = Ring(names + ("T",))
    ring_t1 = Ring(names)
    xs = [ring.var(i) for i in range(r)]
    T = ring.var(r)

    linear = []
    for j in range(fan.rank):
        rel = ring.zero()
        for i in range(r):
            if fan.edges[i][j]:
                rel = rel + fan.edges[i][j] * xs[i]
        linear.append(rel)

    qsr = []
    for I in sorted(primitive_collections(fan), key=sorted):
        rel = batyrev_decompose(fan, I, lambdas=P.lambdas)
        lhs = ring.one()
        for i in sorted(I):
            lhs = lhs * xs[i]
        rhs = T ** rel.curve_class.c1
        for j, cq in zip(rel.J, rel.c):
            rhs = rhs * xs[j] ** cq
        qsr.append(lhs - rhs)

    try:
        lam_X = fano_index(P)
    except Inconsistent:
        lam_X = None
    pres = Presentation(names, ring, ring_t1, linear, qsr, lam_X, mode)
    A = quotient_algebra(groebner_basis(pres.relations_t1()))
    return pres, A


def sh_presentation(A, classes):
    """Iterated localization of a quantum quotient at the listed
    divisor-class polynomials (variables of A's ring)."""
    out = A
    for f in classes:
        out = localize(out, f)
    return out


def _class_poly(ring, coefficients):
    out = ring.zero()
    for i, c in enumerate(coefficients):
        if c:
            out = out + Fraction(c) * ring.var(i)
    return out


def c1_operator(A, P):
    """Matrix of multiplication by the sum of the divisor classes."""
    return A.operator(_class_poly(A.ring, [1] * len(P.edges)))


def omega_operator(A, P):
    """Matrix of multiplication by the symplectic class
    -sum(lambda_i x_i)."""
    return A.operator(_class_poly(A.ring, [-l for l in P.lambdas]))


def eigen_family_check(char, lam_X):
    """Whether chi(x) = x^{d0} g(x^{lam_X}) exactly, and the cofactor
    g; the signature of eigenvalues coming in root-of-unity families."""
    if not char.terms:
        raise ValueError("zero polynomial has no family pattern")
    exps = sorted(m[0] for m in char.terms)
    d0 = exps[0]
    holds = all((e - d0) % lam_X == 0 for e in exps)
    if holds:
        g = Polynomial(
            char.ring,
            {((m[0] - d0) // lam_X,): c for m, c in char.terms.items()},
        )
    else:
        g = char.ring.zero()
    return EigenFamilyReport(d0, g, holds)


def _map_to_total_space(f, presB, presE, phi):
    """Image of a base relation under x_i -> x_i,
    T_B^{lam_B} -> T_E^{lam_E} * fiber_class^k."""
    ringE = presE.ring
    rB = len(presB.variables)
    TE = ringE.var(len(presE.variables))
    out = ringE.zero()
    for m, c in f.terms.items():
        cT = m[rB]
        if cT % presB.lam_X:
            raise ValueError(
                "base relation has a Novikov power outside the index lattice"
            )
        q = cT // presB.lam_X
        term = ringE.constant(c)
        for i in range(rB):
            if m[i]:
                term = term * ringE.var(i) ** m[i]
        if q:
            term = term * (TE ** presE.lam_X * phi.fiber_class ** phi.k) ** q
        out = out + term
    return out


def phi_check(presB, presE, phi):
    """True when every mapped base relation lies in the total-space
    ideal (normal form zero against its symbolic Gröbner basis)."""
    GE = groebner_basis(presE.relations())
    for f in presB.relations():
        if normal_form(_map_to_total_space(f, presB, presE, phi), GE):
            return False
    return True


def _cluster(values, rel_tol):
    """Greedy clustering of complex values; returns (center, count)."""
    scale = max([abs(v) for v in values] + [1.0])
    clusters = []
    for v in sorted(values, key=lambda z: (abs(z), np.angle(z))):
        for idx, (center, cnt) in enumerate(clusters):
            if abs(v - center) <= rel_tol * scale:
                clusters[idx] = ((center * cnt + v) / (cnt + 1), cnt + 1)
                break
        else:
            clusters.append((v, 1))
    return clusters


def eigenvalue_transfer_check(
    omega_B, sh_omega_E, k, lam_B, qh_omega_E=None, sh_dim=None, tol=1e-8
):
    """Check that nonzero base eigenvalue families map onto total-space
    families: (mu_E)^(lam_B - k) = (-k)^k mu_B^lam_B, with matching
    multiplicities, plus exact dimension bookkeeping when the
    total-space quantum operator is supplied."""
    k = int(k)
    if not 1 <= k <= lam_B - 1:
        raise NotMonotone(f"need 1 <= k <= {lam_B - 1}, got {k}")
    lam_E = lam_B - k
    eigs_B = complex_eigen(to_numpy(omega_B))[0]
    eigs_E = complex_eigen(to_numpy(sh_omega_E))[0]

    zero_tol = 1e-8 * max([abs(v) for v in eigs_B + eigs_E] + [1.0])
    inv_B = [v ** lam_B for v in eigs_B if abs(v) > zero_tol]
    inv_E = [v ** lam_E / float((-k) ** k) for v in eigs_E if abs(v) > zero_tol]
    if len(eigs_E) != len(inv_E):
        return False  # localization left a zero eigenvalue behind
    cl_B = _cluster(inv_B, 1e-6)
    cl_E = _cluster(inv_E, 1e-6)
    if len(cl_B) != len(cl_E):
        return False

    used = set()
    worst = 0.0
    for center, cnt in cl_B:
        best = None
        for idx, (ce, ce_cnt) in enumerate(cl_E):
            if idx in used:
                continue
            d = abs(ce - center)
            if best is None or d < best[1]:
                best = (idx, d, ce_cnt)
        idx, dist, ce_cnt = best
        worst = max(worst, dist)
        if dist > tol * max(1.0, abs(center)):
            raise ToleranceExceeded(
                f"family invariant mismatch {dist:.3e}", residual=worst
            )
        if cnt * lam_E != ce_cnt * lam_B:
            return False
        used.add(idx)

    if qh_omega_E is not None:
        dim_qh = len(qh_omega_E)
        kernel = len(nullspace(mat_pow(qh_omega_E, dim_qh)))
        dim_sh = sh_dim if sh_dim is not None else len(sh_omega_E)
        if dim_qh != dim_sh + kernel:
            return False
    return True
