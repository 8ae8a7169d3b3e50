"""Unit tests for the exact polynomial/linear-algebra layer."""

import os
import subprocess
import sys
from fractions import Fraction

import pytest
import sympy

from torfan.errors import Inconsistent, InfiniteDimensional
from torfan.exact_algebra import (
    KERNEL,
    Polynomial,
    Ring,
    char_min_poly,
    charpoly,
    complex_eigen,
    groebner_basis,
    identity,
    inverse,
    jordan_profile,
    localize,
    mat_mul,
    minpoly,
    normal_form,
    nullspace,
    quotient_algebra,
    rank,
    rref,
    solve,
    to_numpy,
)

F = Fraction


def test_kernel_selection_env_override():
    out = subprocess.run(
        [sys.executable, "-c", "import torfan; print(torfan.KERNEL)"],
        env={**os.environ, "TORFAN_PURE_PYTHON": "1"},
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"


def test_kernel_parity():
    from torfan.exact_algebra import _mono_py

    try:
        from torfan.exact_algebra import _mono_cy
    except ImportError:
        pytest.skip("compiled kernel not built")
    a, b = (3, 0, 2, 1), (1, 4, 0, 2)
    assert _mono_cy.mono_mul(a, b) == _mono_py.mono_mul(a, b)
    assert _mono_cy.mono_lcm(a, b) == _mono_py.mono_lcm(a, b)
    assert _mono_cy.mono_divides(a, b) == _mono_py.mono_divides(a, b)
    assert _mono_cy.grevlex_key(a) == _mono_py.grevlex_key(a)
    assert _mono_cy.mono_div((3, 4), (1, 2)) == _mono_py.mono_div((3, 4), (1, 2))


def test_polynomial_arithmetic():
    ring = Ring(("x", "y"))
    x, y = ring.var(0), ring.var(1)
    p = (x + y) ** 2
    assert p.terms == {(2, 0): F(1), (1, 1): F(2), (0, 2): F(1)}
    assert (p - x * x - 2 * x * y - y * y).terms == {}
    assert p.evaluate([1.0, 2.0]) == pytest.approx(9.0)
    assert p.substitute("y", F(1)).terms == {(2, 0): F(1), (1, 0): F(2), (0, 0): F(1)}


def _to_sympy(f, syms):
    expr = 0
    for m, c in f.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, m):
            term *= s ** e
        expr += term
    return sympy.expand(expr)


@pytest.mark.parametrize(
    "gens",
    [
        ["x**2 + y**2 - 1", "x*y - 1"],
        ["x**3 - 2*x*y", "x**2*y - 2*y**2 + x"],
        ["x**2 + y + z - 1", "x + y**2 + z - 1", "x + y + z**2 - 1"],
    ],
)
def test_groebner_matches_sympy(gens):
    names = ("x", "y", "z") if any("z" in g for g in gens) else ("x", "y")
    ring = Ring(names)
    syms = sympy.symbols(names)
    mine = groebner_basis(
        [
            _from_sympy(sympy.sympify(g), ring, syms)
            for g in gens
        ]
    )
    theirs = sympy.groebner(
        [sympy.sympify(g) for g in gens], *syms, order="grevlex"
    )
    from torfan.exact_algebra._kernel import grevlex_key

    def grevlex_monic(expr):
        p = sympy.Poly(expr, *syms)
        mono, coeff = max(p.terms(), key=lambda t: grevlex_key(tuple(int(e) for e in t[0])))
        return sympy.expand(expr / coeff)

    mine_set = {grevlex_monic(_to_sympy(f, syms)) for f in mine.generators}
    theirs_set = {grevlex_monic(p) for p in theirs.exprs}
    assert mine_set == theirs_set


def _from_sympy(expr, ring, syms):
    poly = sympy.Poly(expr, *syms)
    out = ring.zero()
    for mono, coeff in poly.terms():
        c = F(coeff.p, coeff.q)
        out = out + Polynomial(ring, {tuple(int(e) for e in mono): c})
    return out


def test_normal_form_is_zero_on_members():
    ring = Ring(("x", "y"))
    x, y = ring.var(0), ring.var(1)
    G = groebner_basis([x ** 2 - y, y ** 2 - 1])
    member = (x ** 2 - y) * (x + 3) + (y ** 2 - 1) * y
    assert not normal_form(member, G).terms


def test_quotient_dimension_and_commuting_matrices():
    ring = Ring(("x", "y"))
    x, y = ring.var(0), ring.var(1)
    A = quotient_algebra(groebner_basis([x ** 2 - 1, y ** 3 - 1]))
    assert A.dimension == 6
    Mx, My = A.mult_matrices["x"], A.mult_matrices["y"]
    assert mat_mul(Mx, My) == mat_mul(My, Mx)


def test_infinite_dimensional_detected():
    ring = Ring(("x", "y"))
    x, y = ring.var(0), ring.var(1)
    with pytest.raises(InfiniteDimensional):
        quotient_algebra(groebner_basis([x * y - 1]))


def test_linear_algebra_roundtrips():
    M = [[F(2), F(1)], [F(1), F(3)]]
    assert mat_mul(M, inverse(M)) == identity(2)
    assert solve(M, [F(3), F(4)]) == [F(1), F(1)]
    singular = [[F(1), F(2)], [F(2), F(4)]]
    assert rank(singular) == 1
    ns = nullspace(singular)
    assert len(ns) == 1 and ns[0][0] * 2 + ns[0][1] * 4 == 0
    with pytest.raises(Inconsistent):
        solve(singular, [F(1), F(0)])


def test_charpoly_minpoly_match_sympy():
    M = [[F(0), F(1), F(0)], [F(0), F(0), F(1)], [F(6), F(-11), F(6)]]
    chi = charpoly(M)
    X = sympy.Symbol("X")
    expected = sympy.Matrix([[0, 1, 0], [0, 0, 1], [6, -11, 6]]).charpoly(X)
    mine = sum(
        sympy.Rational(c.numerator, c.denominator) * X ** m[0]
        for m, c in chi.terms.items()
    )
    assert sympy.expand(mine - expected.as_expr()) == 0
    # distinct eigenvalues 1, 2, 3: minimal polynomial equals characteristic
    assert minpoly(M).terms == chi.terms


def test_jordan_profile():
    # one 2-block and one 1-block at 3, one 1-block at 5
    M = [
        [F(3), F(1), F(0), F(0)],
        [F(0), F(3), F(0), F(0)],
        [F(0), F(0), F(3), F(0)],
        [F(0), F(0), F(0), F(5)],
    ]
    profile = jordan_profile(M)
    got = {f.pretty(): tuple(sorted(sizes)) for f, sizes in profile.entries}
    assert got == {"X - 3": (1, 2), "X - 5": (1,)}


def test_localize_splits_nilpotent_part():
    ring = Ring(("x",))
    x = ring.var(0)
    # x^2 (x - 1): localizing at x keeps only the invertible eigenvalue 1
    A = quotient_algebra(groebner_basis([x ** 3 - x ** 2]))
    assert A.dimension == 3
    L = localize(A, x)
    assert L.dimension == 1
    chi, mu = char_min_poly(L.operator(x))
    assert chi.pretty() == "X - 1"


def test_complex_eigen_residual():
    M = [[F(0), F(-1)], [F(1), F(0)]]
    eigs, _ = complex_eigen(to_numpy(M))
    assert sorted(round(v.imag) for v in eigs) == [-1, 1]


def test_rref_idempotent():
    M = [[F(1), F(2), F(3)], [F(2), F(4), F(7)]]
    R, pivots = rref(M)
    R2, pivots2 = rref(R)
    assert R == R2 and pivots == pivots2
