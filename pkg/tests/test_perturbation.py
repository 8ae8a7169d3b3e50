"""Unit tests for the matrix-family perturbation machinery."""

from fractions import Fraction

import numpy as np
import pytest

from torfan.errors import (
    ContourHitsSpectrum,
    DimensionMismatch,
    NotSemisimple,
)
from torfan.perturbation import (
    MatrixFamily,
    Subspace,
    default_ray,
    derivative_spectrum,
    eigenprojection,
    exact_jordan_blocks,
    gevec_convergence,
    semisimple_convergence_check,
    subspace_distance,
    total_projection_limit_check,
    track_eigenvalues,
)

F = Fraction

UPPER = MatrixFamily.make([[(0, 1), (1,)], [(0,), (0,)]])  # [[x, 1], [0, 0]]
THREE = MatrixFamily.make(
    [
        [(0,), (0,), (0,)],
        [(0,), (0, 1), (1,)],
        [(0,), (0,), (0,)],
    ]
)  # [[0,0,0],[0,x,1],[0,0,0]]


def test_family_evaluation():
    A = UPPER(0.25)
    assert np.allclose(A, [[0.25, 1], [0, 0]])
    A0 = UPPER.constant_term_rational()
    assert A0 == [[F(0), F(1)], [F(0), F(0)]]


def test_eigenprojection_explicit():
    for x in (0.1, 0.01, 0.001):
        P = eigenprojection(UPPER(x), x, x / 2)
        assert np.allclose(P.matrix, [[1, 1 / x], [0, 0]], atol=1e-8 / x)
        Q = eigenprojection(UPPER(x), 0, x / 2)
        assert np.allclose(P.matrix + Q.matrix, np.eye(2), atol=1e-8)


def test_contour_hits_spectrum():
    A = np.diag([0.0, 1.0])
    with pytest.raises(ContourHitsSpectrum):
        eigenprojection(A, 0.0, 1.0)


def test_track_eigenvalues():
    paths = track_eigenvalues(UPPER)
    limits = sorted(abs(p.samples[-1][1]) for p in paths)
    assert limits[0] == 0 and limits[1] == pytest.approx(
        default_ray()[-1], rel=1e-6
    )
    assert all(p.matched for p in paths)


def test_total_projection_limit():
    rep = total_projection_limit_check(UPPER, 0)
    assert rep.ok and np.allclose(rep.limit, np.eye(2))
    assert rep.errors[-1] <= 1e-10


def test_derivative_spectrum_semisimple_guard():
    with pytest.raises(NotSemisimple):
        derivative_spectrum(UPPER, 0)


def test_derivative_spectrum_values():
    fam = MatrixFamily.make([[(0,), (0, 1)], [(0, 1), (0,)]])  # [[0,x],[x,0]]
    ders = derivative_spectrum(fam, 0)
    assert sorted(round(v.real, 6) for v in ders) == [-1.0, 1.0]


def test_semisimple_convergence():
    fam = MatrixFamily.make([[(0,), (0, 1)], [(0, 1), (0,)]])
    rep = semisimple_convergence_check(fam, 0)
    assert rep.ok and rep.limit_distance <= 1e-6


def test_subspace_distance_metric():
    e1 = Subspace.from_vectors(np.array([1.0, 0.0, 0.0]))
    e2 = Subspace.from_vectors(np.array([0.0, 1.0, 0.0]))
    mix = Subspace.from_vectors(np.array([1.0, 1.0, 0.0]))
    assert subspace_distance(e1, e1) == 0
    assert subspace_distance(e1, e2) == pytest.approx(1.0)
    d = subspace_distance(e1, mix)
    assert 0 < d < 1
    assert subspace_distance(e1, mix) <= (
        subspace_distance(e1, e2) + subspace_distance(e2, mix) + 1e-12
    )
    plane = Subspace.from_vectors(np.eye(3)[:, :2])
    with pytest.raises(DimensionMismatch):
        subspace_distance(e1, plane)


def test_exact_jordan_blocks():
    A0 = [[F(0), F(0), F(0)], [F(0), F(0), F(1)], [F(0), F(0), F(0)]]
    blocks = exact_jordan_blocks(A0, F(0))
    sizes = sorted(len(chain) for _, chain in blocks)
    assert sizes == [1, 2]
    big = next(chain for _, chain in blocks if len(chain) == 2)
    assert big[0] == [F(0), F(1), F(0)]  # eigenvector of the 2-block


def test_gevec_convergence_three_by_three():
    rep = gevec_convergence(THREE)
    assert rep.ok
    by_size = {c.size: c for c in rep.clusters}
    assert set(by_size) == {1, 2}
    for c in rep.clusters:
        assert c.block_size == c.size
        assert c.decreasing
        assert c.final_distance <= 1e-3
