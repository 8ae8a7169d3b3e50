"""Superpotentials from moment polytopes: Jacobian rings by
saturation, critical points via multiplication-matrix eigenvectors with
Newton polish, mirror comparisons, root-of-unity family closure,
barycentre landing, the positive critical point of convex fans, and
generic separation of critical values under perturbation."""

import random
from dataclasses import dataclass
from fractions import Fraction
from math import exp

import numpy as np

from ._feas import feasible_point
from .errors import (
    HalfSpaceFan,
    MirrorMismatch,
    NewtonDiverged,
    SeparationFailed,
)
from .exact_algebra import (
    Polynomial,
    Ring,
    complex_eigen,
    groebner_basis,
    identity,
    inverse,
    mat_add,
    mat_mul,
    mat_scale,
    quotient_algebra,
    to_numpy,
    zero_matrix,
)
from .lattice_fan import batyrev_decompose, primitive_collections
from .polytope import barycentre

__all__ = [
    "Superpotential",
    "CriticalPoint",
    "JacAlgebra",
    "MirrorReport",
    "SeparationReport",
    "build_superpotential",
    "jacobian_ring",
    "critical_points",
    "mirror_check",
    "family_closure_check",
    "barycentre_landing_check",
    "galkin_point",
    "perturb_and_separate",
]


@dataclass(frozen=True)
class Superpotential:
    """One Laurent term per fan edge: t^{t_exponent} z^{edge}, with an
    optional twist exponent on the auxiliary parameter s."""

    rank: int
    terms: tuple  # (edge tuple, t_exponent Fraction, s_exponent float | None)

    def coefficients(self, t_value=1):
        """Specialized rational coefficients, one per term."""
        out = []
        for _, t_exp, s_exp in self.terms:
            if s_exp is not None:
                raise ValueError("twisted terms need explicit coefficients")
            c = Fraction(t_value) ** _integer(t_exp)
            out.append(c)
        return out

    def edges(self):
        return [e for e, _, _ in self.terms]


def _integer(x):
    x = Fraction(x)
    if x.denominator != 1:
        raise ValueError(f"exponent {x} is not an integer")
    return int(x)


@dataclass(frozen=True)
class CriticalPoint:
    coordinates: tuple  # nonzero complex numbers
    value: complex
    hessian_rank: int
    nondegenerate: bool


@dataclass
class JacAlgebra:
    """Quotient model of the Laurent Jacobian ideal (variables z_i plus
    the saturation variable u) and the multiplication matrix of the
    superpotential itself."""

    algebra: object
    W_matrix: list

    @property
    def dimension(self):
        return self.algebra.dimension

    def eigenvalues(self):
        return complex_eigen(to_numpy(self.W_matrix))[0] if self.dimension else []


def build_superpotential(P, twist=None):
    """One term per polytope edge, with t-exponent the negated support
    number; ``twist`` supplies real form values F(e_i) whose negatives
    become s-exponents."""
    if twist is not None and len(twist) != len(P.edges):
        raise ValueError("one twist value per edge required")
    terms = []
    for i, (e, l) in enumerate(zip(P.edges, P.lambdas)):
        s_exp = -float(twist[i]) if twist is not None else None
        terms.append((tuple(e), -Fraction(l), s_exp))
    return Superpotential(P.rank, tuple(terms))


def _laurent_ring(n):
    return Ring(tuple(f"z{i + 1}" for i in range(n)) + ("u",))


def _gradient_generators(ring, edges, coeffs):
    """Cleared polynomials z_j dW/dz_j plus the saturation relation."""
    n = len(edges[0]) if edges else 0
    gens = []
    for j in range(n):
        terms = {}
        for e, c in zip(edges, coeffs):
            if e[j]:
                terms[tuple(e)] = terms.get(tuple(e), Fraction(0)) + c * e[j]
        terms = {m: c for m, c in terms.items() if c}
        if not terms:
            continue
        shift = [max(0, -min(m[v] for m in terms)) for v in range(n)]
        cleared = {
            tuple(m[v] + shift[v] for v in range(n)) + (0,): c
            for m, c in terms.items()
        }
        gens.append(Polynomial(ring, cleared))
    sat = Polynomial(
        ring, {tuple([1] * n) + (1,): Fraction(1), (0,) * (n + 1): Fraction(-1)}
    )
    gens.append(sat)
    return gens


def _laurent_operator(A, edges, coeffs):
    """Matrix of a Laurent polynomial on a saturated quotient algebra,
    using exact inverses of the (invertible) variable matrices."""
    n = A.dimension
    if n == 0:
        return []
    names = A.ring.names[:-1]  # z variables
    mats = [A.mult_matrices[name] for name in names]
    inv_mats = {}
    out = zero_matrix(n, n)
    for e, c in zip(edges, coeffs):
        term = identity(n)
        for j, ej in enumerate(e):
            if ej > 0:
                for _ in range(ej):
                    term = mat_mul(mats[j], term)
            elif ej < 0:
                if j not in inv_mats:
                    inv_mats[j] = inverse(mats[j])
                for _ in range(-ej):
                    term = mat_mul(inv_mats[j], term)
        out = mat_add(out, mat_scale(term, c))
    return out


def jacobian_ring(W, t_value=1, coefficients=None):
    """Quotient by the logarithmic-derivative ideal, saturated by an
    inverse for the product of the variables."""
    edges = W.edges()
    coeffs = (
        [Fraction(c) for c in coefficients]
        if coefficients is not None
        else W.coefficients(t_value)
    )
    ring = _laurent_ring(W.rank)
    gens = _gradient_generators(ring, edges, coeffs)
    A = quotient_algebra(groebner_basis(gens))
    Wm = _laurent_operator(A, edges, coeffs)
    return JacAlgebra(A, Wm)


# -- numeric Laurent evaluation ---------------------------------------


def _eval_terms(edges, coeffs, z):
    total = 0j
    for e, c in zip(edges, coeffs):
        prod = complex(c)
        for zj, ej in zip(z, e):
            prod *= zj ** ej
        total += prod
    return total


def _log_gradient(edges, coeffs, z):
    """Vector of z_j dW/dz_j at z."""
    n = len(z)
    out = np.zeros(n, dtype=complex)
    for e, c in zip(edges, coeffs):
        prod = complex(c)
        for zj, ej in zip(z, e):
            prod *= zj ** ej
        for j in range(n):
            if e[j]:
                out[j] += e[j] * prod
    return out


def _hessian(edges, coeffs, z):
    """d2W/dz_j dz_k at z."""
    n = len(z)
    H = np.zeros((n, n), dtype=complex)
    for e, c in zip(edges, coeffs):
        prod = complex(c)
        for zj, ej in zip(z, e):
            prod *= zj ** ej
        for j in range(n):
            if not e[j]:
                continue
            for k in range(n):
                f = e[j] * (e[k] - (1 if j == k else 0))
                if f:
                    H[j, k] += f * prod / (z[j] * z[k])
    return H


def _newton_polish(edges, coeffs, z0, tol=1e-12, max_iter=100):
    z = np.array(z0, dtype=complex)
    n = len(z)
    for _ in range(max_iter):
        g = _log_gradient(edges, coeffs, z)
        grad = g / z  # dW/dz_j
        if np.linalg.norm(grad) <= tol:
            return z
        # Jacobian of the logarithmic gradient, then chain rule
        J = np.zeros((n, n), dtype=complex)
        for e, c in zip(edges, coeffs):
            prod = complex(c)
            for zj, ej in zip(z, e):
                prod *= zj ** ej
            for j in range(n):
                if e[j]:
                    for k in range(n):
                        if e[k]:
                            J[j, k] += e[j] * e[k] * prod / z[k]
        try:
            step = np.linalg.solve(J, g)
        except np.linalg.LinAlgError:
            raise NewtonDiverged("singular Newton system")
        z = z - step
        if not np.all(np.isfinite(z)) or np.any(np.abs(z) < 1e-14):
            raise NewtonDiverged("iterate left the torus")
    g = _log_gradient(edges, coeffs, z)
    if np.linalg.norm(g / z) > tol:
        raise NewtonDiverged("no convergence within the iteration budget")
    return z


def critical_points(W, t_value=1, seed=0, coefficients=None, jac=None):
    """Distinct critical points on the torus, read from simultaneous
    eigenvectors of the coordinate multiplication matrices and polished
    by Newton iteration; Hessian ranks from singular values."""
    edges = W.edges()
    coeffs = (
        [Fraction(c) for c in coefficients]
        if coefficients is not None
        else W.coefficients(t_value)
    )
    J = jac if jac is not None else jacobian_ring(W, t_value, coefficients)
    A = J.algebra
    if A.dimension == 0:
        return []
    n = W.rank
    names = A.ring.names[:-1]
    mats = [to_numpy(A.mult_matrices[name]) for name in names]

    rng = random.Random(seed)
    vecs = None
    for _ in range(10):
        r = [rng.randint(1, 99) for _ in range(n)]
        M = sum(ri * Mi for ri, Mi in zip(r, mats))
        w, v = np.linalg.eig(M)
        order = np.argsort(-np.abs(w))
        gaps = [
            abs(w[order[i]] - w[order[j]])
            for i in range(len(w))
            for j in range(i + 1, len(w))
        ]
        vecs = v
        if not gaps or min(gaps) > 1e-6 * max(1.0, max(abs(x) for x in w)):
            break
    points = []
    for idx in range(vecs.shape[1]):
        v = vecs[:, idx]
        pivot = int(np.argmax(np.abs(v)))
        try:
            z0 = [complex((Mi @ v)[pivot] / v[pivot]) for Mi in mats]
            if any(abs(z) < 1e-12 for z in z0):
                continue
            z = _newton_polish(edges, coeffs, z0)
        except NewtonDiverged:
            continue
        if any(_close(z, p.coordinates) for p in points):
            continue
        H = _hessian(edges, coeffs, z)
        sv = np.linalg.svd(H, compute_uv=False)
        rank_H = int(np.sum(sv >= 1e-8 * max(sv[0], 1e-300))) if len(sv) else 0
        points.append(
            CriticalPoint(
                tuple(complex(x) for x in z),
                complex(_eval_terms(edges, coeffs, z)),
                rank_H,
                rank_H == n,
            )
        )
    return points


def _close(z, w, tol=1e-8):
    return all(abs(complex(a) - complex(b)) <= tol * max(1.0, abs(b)) for a, b in zip(z, w))


# -- mirror comparison -------------------------------------------------


@dataclass
class MirrorReport:
    monomial_identities: bool
    derivative_match: bool
    dimension_match: bool
    eigenvalue_match: bool
    worst_eigen_residual: float

    @property
    def ok(self):
        return (
            self.monomial_identities
            and self.derivative_match
            and self.dimension_match
            and self.eigenvalue_match
        )


def mirror_check(fan, P, A, J, sh_algebra=None, tol=1e-8):
    """Compare the quantum side with the Jacobian ring.

    (a) each quantum monomial relation maps to an exact Laurent
    monomial identity under x_i -> t^{-lambda_i} z^{e_i};
    (b) each linear relation maps exactly onto z_j dW/dz_j;
    (c) dimensions agree (against the localized algebra when given);
    (d) nonzero first-Chern eigenvalues match the eigenvalues of
    multiplication by the superpotential, to tolerance.
    """
    lambdas = P.lambdas
    # (a): z-exponents match by the decomposition, t-exponents by the
    # curve-class area identity; verify both exactly.
    mono_ok = True
    for I in primitive_collections(fan):
        rel = batyrev_decompose(fan, I, lambdas=lambdas)
        lhs_z = [sum(fan.edges[i][j] for i in I) for j in range(fan.rank)]
        rhs_z = [
            sum(c * fan.edges[j][v] for j, c in zip(rel.J, rel.c))
            for v in range(fan.rank)
        ]
        lhs_t = -sum((lambdas[i] for i in I), Fraction(0))
        rhs_t = rel.curve_class.omega - sum(
            (c * lambdas[j] for j, c in zip(rel.J, rel.c)), Fraction(0)
        )
        if lhs_z != rhs_z or lhs_t != rhs_t:
            mono_ok = False
    # (b): the image of the j-th linear relation is term-for-term the
    # logarithmic derivative of W in direction j.
    W = build_superpotential(P)
    deriv_ok = True
    for j in range(fan.rank):
        image = {
            tuple(e): (Fraction(e[j]), -Fraction(l))
            for e, l in zip(P.edges, P.lambdas)
            if e[j]
        }
        derivative = {
            tuple(e): (Fraction(e[j]) , t_exp)
            for (e, t_exp, _) in W.terms
            if e[j]
        }
        if image != derivative:
            deriv_ok = False
    # (c)
    quantum = sh_algebra if sh_algebra is not None else A
    dim_ok = quantum.dimension == J.dimension
    # (d)
    from .quantum_algebra import c1_operator

    c1 = c1_operator(quantum, P)
    eig_q = complex_eigen(to_numpy(c1))[0] if quantum.dimension else []
    eig_w = J.eigenvalues()
    scale = max([abs(v) for v in list(eig_q) + list(eig_w)] + [1.0])
    nz_q = [v for v in eig_q if abs(v) > tol * scale]
    nz_w = [v for v in eig_w if abs(v) > tol * scale]
    worst = float("inf") if len(nz_q) != len(nz_w) else 0.0
    eig_ok = len(nz_q) == len(nz_w)
    if eig_ok:
        # greedy nearest matching: sorting by magnitude is unstable when
        # distinct eigenvalues share the same modulus
        remaining = list(nz_w)
        for a in nz_q:
            b = min(remaining, key=lambda z: abs(z - a))
            remaining.remove(b)
            worst = max(worst, abs(a - b))
        eig_ok = worst <= tol * scale
    report = MirrorReport(mono_ok, deriv_ok, dim_ok, eig_ok, worst)
    if not report.ok:
        failing = [
            name
            for name, ok in [
                ("monomial identities", mono_ok),
                ("derivative match", deriv_ok),
                ("dimension match", dim_ok),
                ("eigenvalue match", eig_ok),
            ]
            if not ok
        ]
        raise MirrorMismatch(", ".join(failing))
    return report


def family_closure_check(values, lam_X, tol=1e-8):
    """True when the multiset of critical values is invariant under
    multiplication by the primitive lam_X-th root of unity."""
    values = [complex(v) for v in values]
    zeta = np.exp(2j * np.pi / lam_X)
    scale = max([abs(v) for v in values] + [1.0])
    remaining = list(values)
    for v in values:
        target = zeta * v
        best = min(remaining, key=lambda w: abs(w - target), default=None)
        if best is None or abs(best - target) > tol * scale:
            return False
        remaining.remove(best)
    return True


def barycentre_landing_check(P, lam_X):
    """Exact exponent identity <y, e_i> - lambda_i = 1/lam_X at the
    barycentre, plus existence of critical points of the unit-
    coefficient superpotential."""
    y = barycentre(P, lam_X)
    for e, l in zip(P.edges, P.lambdas):
        if sum(Fraction(a) * b for a, b in zip(e, y)) - l != Fraction(1, lam_X):
            return False
    base = Superpotential(P.rank, tuple((tuple(e), Fraction(0), None) for e in P.edges))
    pts = critical_points(base)
    if not pts:
        return False
    for p in pts:
        g = _log_gradient(base.edges(), [Fraction(1)] * len(P.edges), p.coordinates)
        if np.linalg.norm(g) > 1e-8:
            return False
    return True


def galkin_point(fan, tol=1e-10, max_iter=200):
    """Positive real critical point by damped Newton minimization of
    the edge-exponential sum; raises HalfSpaceFan (with a certificate
    direction) when the fan sits in a closed half-space."""
    n = fan.rank
    for j in range(n):
        for sign in (1, -1):
            ineqs = [([-x for x in e], 0) for e in fan.edges]
            unit = [0] * n
            unit[j] = sign
            ineqs.append((unit, 1))
            cert = feasible_point(ineqs, n)
            if cert is not None:
                raise HalfSpaceFan(tuple(cert))
    E = np.array(fan.edges, dtype=float)
    u = np.zeros(n)
    for _ in range(max_iter):
        vals = np.exp(E @ u)
        grad = E.T @ vals
        if np.linalg.norm(grad) <= tol:
            break
        H = E.T @ (vals[:, None] * E)
        step = np.linalg.solve(H, grad)
        t = 1.0
        g0 = vals.sum()
        while t > 1e-12 and np.exp(E @ (u - t * step)).sum() > g0:
            t /= 2
        u = u - t * step
    vals = np.exp(E @ u)
    if np.linalg.norm(E.T @ vals) > tol:
        raise NewtonDiverged("minimization did not reach the gradient tolerance")
    return tuple(float(x) for x in u), float(vals.sum())


@dataclass
class SeparationReport:
    morse: bool
    min_gap: float
    min_abs_value: float
    values: list
    jac_dimension: int

    @property
    def ok(self):
        return self.morse and self.min_gap >= 1e-9 and self.min_abs_value > 1e-9


def perturb_and_separate(P, seed, radius=Fraction(1, 100)):
    """Perturb the support numbers with a seeded uniform draw, build
    the real-coefficient superpotential exp(-lambda'_i) z^{e_i}
    (rationalized for the exact quotient), and report on Morseness and
    the separation of the critical values."""
    rng = random.Random(seed)
    radius = float(radius)
    lam_pert = [float(l) + rng.uniform(-radius, radius) for l in P.lambdas]
    coeffs = [
        Fraction(exp(-lp)).limit_denominator(10 ** 8) for lp in lam_pert
    ]
    W = Superpotential(P.rank, tuple((tuple(e), Fraction(0), None) for e in P.edges))
    J = jacobian_ring(W, coefficients=coeffs)
    pts = critical_points(W, coefficients=coeffs, jac=J, seed=seed)
    values = [p.value for p in pts]
    gaps = [
        abs(a - b) for i, a in enumerate(values) for b in values[i + 1 :]
    ]
    report = SeparationReport(
        morse=bool(pts) and all(p.nondegenerate for p in pts)
        and len(pts) == J.dimension,
        min_gap=min(gaps) if gaps else float("inf"),
        min_abs_value=min((abs(v) for v in values), default=0.0),
        values=values,
        jac_dimension=J.dimension,
    )
    if radius > 0 and not report.ok:
        raise SeparationFailed(
            f"seed {seed} left degenerate or colliding values; retry with a new seed"
        )
    return lam_pert, report
