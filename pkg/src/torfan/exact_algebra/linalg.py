"""Exact rational linear algebra plus the numeric eigensolver.

Rational matrices are row-major lists of lists of Fraction.  Exact
routines (rref, rank, solve, kernels, characteristic/minimal polynomial,
Jordan profiles, localization) never approximate; the only numeric entry
point is :func:`complex_eigen`, whose results are residual-checked.
"""

from fractions import Fraction

import numpy as np

from ..errors import Inconsistent, NonConvergence
from .groebner import QuotientAlgebra
from .poly import Polynomial, Ring

_ZERO = Fraction(0)
_ONE = Fraction(1)

UNIVARIATE = Ring(("X",))


# -- matrix basics -----------------------------------------------------


def zero_matrix(rows, cols):
    return [[_ZERO] * cols for _ in range(rows)]


def identity(n):
    return [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, c):
    return [[a * c for a in row] for row in A]


def mat_mul(A, B):
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    out = zero_matrix(rows, cols)
    for i in range(rows):
        Ai = A[i]
        Oi = out[i]
        for k in range(inner):
            a = Ai[k]
            if a:
                Bk = B[k]
                for j in range(cols):
                    if Bk[j]:
                        Oi[j] += a * Bk[j]
    return out


def mat_pow(A, k):
    n = len(A)
    out = identity(n)
    base = [row[:] for row in A]
    while k:
        if k & 1:
            out = mat_mul(out, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return out

def mat_vec(A, v):
    return [sum((a * x for a, x in zip(row, v)), _ZERO) for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def trace(A):
    return sum((A[i][i] for i in range(len(A))), _ZERO)


def to_numpy(A, dtype=complex):
    return np.array([[dtype(x) for x in row] for row in A], dtype=dtype)


# -- elimination -------------------------------------------------------


def rref(A):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    M = [row[:] for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if M[i][c]), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        inv = _ONE / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(A):
    if not A or not A[0]:
        return 0
    return len(rref(A)[1])


def solve(A, b):
    """One exact solution of A x = b (possibly overdetermined).

    Free variables are set to zero; raises Inconsistent when no
    solution exists.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    aug = [A[i][:] + [b[i]] for i in range(rows)]
    M, pivots = rref(aug)
    if cols in pivots:
        raise Inconsistent("system has no solution")
    x = [_ZERO] * cols
    for r, c in enumerate(pivots):
        x[c] = M[r][cols]
    return x


def nullspace(A):
    """Basis of the right kernel as a list of column vectors."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if rows == 0 or cols == 0:
        return [[_ONE if i == j else _ZERO for i in range(cols)] for j in range(cols)]
    M, pivots = rref(A)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [_ZERO] * cols
        v[fc] = _ONE
        for r, pc in enumerate(pivots):
            v[pc] = -M[r][fc]
        basis.append(v)
    return basis


def inverse(A):
    n = len(A)
    aug = [A[i][:] + identity(n)[i] for i in range(n)]
    M, pivots = rref(aug)
    if pivots != list(range(n)):
        raise Inconsistent("matrix is singular")
    return [row[n:] for row in M]


# -- characteristic and minimal polynomials ---------------------------


def _poly_from_coeffs(coeffs):
    """Univariate polynomial from ascending coefficients."""
    return Polynomial(
        UNIVARIATE, {(i,): Fraction(c) for i, c in enumerate(coeffs) if c}
    )


def charpoly(M):
    """Monic characteristic polynomial det(X·I − M), exact
    (Faddeev–LeVerrier iteration)."""
    n = len(M)
    coeffs = [_ZERO] * (n + 1)
    coeffs[n] = _ONE
    N = [row[:] for row in M]
    for k in range(1, n + 1):
        if k > 1:
            N = mat_mul(M, mat_add(N, mat_scale(identity(n), c)))
        c = -trace(N) / k
        coeffs[n - k] = c
    return _poly_from_coeffs(coeffs)


def eval_matrix_poly(p, M):
    """Evaluate a univariate polynomial at a square rational matrix."""
    n = len(M)
    out = zero_matrix(n, n)
    for m, c in p.terms.items():
        out = mat_add(out, mat_scale(mat_pow(M, m[0]), c))
    return out


def minpoly(M):
    """Monic minimal polynomial, from the first linear dependency among
    vectorized powers of M."""
    n = len(M)
    if n == 0:
        return _poly_from_coeffs([1])
    powers = [identity(n)]
    for k in range(1, n + 1):
        powers.append(mat_mul(powers[-1], M))
        # columns: vec(M^0) .. vec(M^{k-1}); rhs vec(M^k)
        cols = [[P[i][j] for i in range(n) for j in range(n)] for P in powers[:-1]]
        A = transpose(cols)
        b = [powers[-1][i][j] for i in range(n) for j in range(n)]
        try:
            x = solve(A, b)
        except Inconsistent:
            continue
        coeffs = [-c for c in x] + [_ONE]
        return _poly_from_coeffs(coeffs)
    raise AssertionError("Cayley-Hamilton violated; unreachable")


def char_min_poly(M):
    """(characteristic, minimal) polynomials of a square matrix."""
    if any(len(row) != len(M) for row in M):
        raise ValueError("matrix is not square")
    return charpoly(M), minpoly(M)


# -- Jordan profiles ---------------------------------------------------


class JordanProfile:
    """Block structure per irreducible rational factor.

    ``entries`` is a list of (irreducible monic Polynomial in X,
    descending tuple of block sizes).
    """

    __slots__ = ("entries", "dimension")

    def __init__(self, entries, dimension):
        self.entries = list(entries)
        self.dimension = dimension

    def __repr__(self):
        parts = [f"({p.pretty()}): {sizes}" for p, sizes in self.entries]
        return "JordanProfile[" + "; ".join(parts) + "]"

    def factor_sizes(self, p):
        for q, sizes in self.entries:
            if q == p:
                return sizes
        return ()


def factor_rational_poly(p):
    """Irreducible monic factors of a univariate rational polynomial,
    as a list of (factor, multiplicity).  Delegates the univariate
    factorization to sympy."""
    import sympy

    X = sympy.Symbol("X")
    expr = sum(
        sympy.Rational(c.numerator, c.denominator) * X ** m[0]
        for m, c in p.terms.items()
    )
    _, factors = sympy.Poly(expr, X, domain="QQ").factor_list()
    out = []
    for fac, mult in factors:
        coeffs = fac.monic().all_coeffs()  # descending
        coeffs = [Fraction(int(c.p), int(c.q)) for c in coeffs]
        coeffs.reverse()
        out.append((_poly_from_coeffs(coeffs), int(mult)))
    out.sort(key=lambda t: (t[0].degree(), sorted(t[0].terms.items())))
    return out


def jordan_profile(M):
    """Exact Jordan block sizes per irreducible factor, recovered from
    the rank sequence of powers of each factor evaluated at M."""
    if any(len(row) != len(M) for row in M):
        raise ValueError("matrix is not square")
    n = len(M)
    chi = charpoly(M)
    entries = []
    for p, mult in factor_rational_poly(chi):
        d = p.degree()
        P = eval_matrix_poly(p, M)
        ranks = [n]
        Pk = identity(n)
        for _ in range(mult):
            Pk = mat_mul(Pk, P)
            ranks.append(rank(Pk))
            if len(ranks) >= 2 and ranks[-1] == ranks[-2]:
                break
        # number of blocks of size >= k is (ranks[k-1] - ranks[k]) / d
        atleast = []
        for k in range(1, len(ranks)):
            diff = ranks[k - 1] - ranks[k]
            assert diff % d == 0
            atleast.append(diff // d)
        sizes = []
        for k, cnt in enumerate(atleast, start=1):
            nxt = atleast[k] if k < len(atleast) else 0
            sizes.extend([k] * (cnt - nxt))
        sizes.sort(reverse=True)
        entries.append((p, tuple(sizes)))
    return JordanProfile(entries, n)


# -- localization ------------------------------------------------------


def localize(A, f):
    """Quotient of A by the generalized 0-eigenspace of multiplication
    by f; multiplication by f is invertible on the result.  A nilpotent
    f yields the zero algebra."""
    n = A.dimension
    if n == 0:
        return A
    F = A.operator(f)
    K = nullspace(mat_pow(F, n))
    s = len(K)
    if s == 0:
        return A
    if s == n:
        return QuotientAlgebra(A.ring, [], {name: [] for name in A.ring.names}, None)
    # complete the kernel to a basis with standard coordinate vectors
    cols = [list(v) for v in K]
    probe = transpose(cols + [[_ONE if i == j else _ZERO for i in range(n)] for j in range(n)])
    _, pivots = rref(probe)
    chosen = [c - s for c in pivots if c >= s]
    C = transpose(cols + [[_ONE if i == j else _ZERO for i in range(n)] for j in chosen])
    Cinv = inverse(C)
    mult = {}
    for name, M in A.mult_matrices.items():
        Q = mat_mul(Cinv, mat_mul(M, C))
        mult[name] = [[Q[i][j] for j in range(s, n)] for i in range(s, n)]
    basis = [A.basis[j] for j in chosen]
    return QuotientAlgebra(A.ring, basis, mult, None)


# -- numeric eigensolver ----------------------------------------------


def complex_eigen(M, tol=1e-10):
    """Eigenvalues and eigenvectors of a complex matrix, with residual
    guarantee ||M v - lam v|| <= tol * ||M|| per returned pair."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("matrix is not square")
    if A.shape[0] == 0:
        return [], np.zeros((0, 0), dtype=complex)
    try:
        w, v = np.linalg.eig(A)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NonConvergence(str(exc)) from exc
    scale = max(np.linalg.norm(A, 2), 1e-300)
    worst = 0.0
    for i in range(len(w)):
        res = np.linalg.norm(A @ v[:, i] - w[i] * v[:, i]) / np.linalg.norm(v[:, i])
        worst = max(worst, res / scale)
    if worst > tol:
        raise NonConvergence(f"eigenpair residual {worst:.3e} exceeds {tol:.1e}")
    return list(w), v
