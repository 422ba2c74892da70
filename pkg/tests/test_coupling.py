import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from nmodesqueeze import (
    ModeCountError,
    ParameterRangeError,
    build_coupling,
    build_kernel,
    expm_taylor,
    matrix_function,
    spectrum,
    sum_identities,
)

SWEEP_N = range(2, 9)
SWEEP_LAMBDA = (0.0, 0.1, -0.1, 0.5, -0.5, 1.0, -1.0)


def test_three_mode_matrix():
    assert build_coupling(3).entries.tolist() == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]


def test_four_mode_matrix():
    assert build_coupling(4).entries.tolist() == [
        [0, 1, 0, 1],
        [1, 0, 1, 0],
        [0, 1, 0, 1],
        [1, 0, 1, 0],
    ]


def test_two_mode_wraparound_doubles():
    # both passes of the cyclic sum hit the same pair for n = 2
    assert build_coupling(2).entries.tolist() == [[0, 2], [2, 0]]


@pytest.mark.parametrize("n", SWEEP_N)
def test_structure_invariants(n):
    entries = build_coupling(n).entries
    assert entries.dtype == np.int64
    assert np.all(np.diag(entries) == 0)
    assert np.array_equal(entries, entries.T)
    assert np.all(entries.sum(axis=1) == 2)
    if n >= 3:
        assert set(np.unique(entries)) <= {0, 1}
        assert np.all((entries == 1).sum(axis=1) == 2)


@pytest.mark.parametrize("n", [0, 1, -3])
def test_rejects_unsupported_mode_count(n):
    with pytest.raises(ModeCountError):
        build_coupling(n)


@pytest.mark.parametrize(
    "n,expected",
    [
        (2, [2.0, -2.0]),
        (3, [2.0, -1.0, -1.0]),
        (4, [2.0, 0.0, 0.0, -2.0]),
    ],
)
def test_spectrum_eigenvalues(n, expected):
    eigenvalues, _ = spectrum(build_coupling(n))
    assert_allclose(eigenvalues, expected, atol=1e-12)


@pytest.mark.parametrize("n", SWEEP_N)
def test_spectrum_orthonormal_and_reconstructs(n):
    coupling = build_coupling(n)
    w, v = coupling.eigenvalues, coupling.eigenvectors
    assert_allclose(v.T @ v, np.eye(n), atol=1e-12)
    assert_allclose((v * w) @ v.T, coupling.entries, atol=1e-12)
    assert np.all(w >= -2 - 1e-12) and np.all(w <= 2 + 1e-12)
    # the all-ones vector is always an eigenvector with eigenvalue 2
    ones = np.ones(n)
    assert_allclose(coupling.entries @ ones, 2 * ones, atol=1e-12)
    assert w[0] == pytest.approx(2.0, abs=1e-12)


def test_spectrum_descending_with_deterministic_ties():
    coupling = build_coupling(3)
    w1, v1 = spectrum(coupling)
    w2, v2 = spectrum(coupling)
    assert np.array_equal(w1, w2) and np.array_equal(v1, v2)
    assert np.all(np.diff(w1) <= 1e-12)
    # sign fix: first nonzero entry of every column is positive
    for k in range(3):
        col = v1[:, k]
        assert col[np.flatnonzero(np.abs(col) > 1e-12)[0]] > 0
    # degenerate pair ordered lexicographically
    assert tuple(np.round(v1[:, 1], 12)) <= tuple(np.round(v1[:, 2], 12))


@pytest.mark.parametrize("n", SWEEP_N)
def test_kernel_identity_at_zero(n):
    kernel = build_kernel(build_coupling(n), 0.0)
    assert_allclose(kernel.Lambda, np.eye(n), atol=1e-12)
    assert_allclose(kernel.gram, np.eye(n), atol=1e-12)
    assert kernel.detLambda == pytest.approx(1.0, abs=1e-12)
    assert kernel.detN == pytest.approx(1.0, abs=1e-12)


def test_kernel_det_n_four_mode():
    kernel = build_kernel(build_coupling(4), 0.3)
    assert kernel.detN == pytest.approx(math.cosh(0.6) ** 2, rel=1e-12)


def test_kernel_gram_three_mode():
    gram = build_kernel(build_coupling(3), 0.1).gram
    u = (2.0 / 3.0) * math.exp(0.2) + (1.0 / 3.0) * math.exp(-0.4)
    v = (1.0 / 3.0) * math.exp(-0.4) - (1.0 / 3.0) * math.exp(0.2)
    assert_allclose(np.diag(gram), u, rtol=1e-12)
    assert gram[0, 1] == pytest.approx(v, rel=1e-12)
    assert gram[1, 2] == pytest.approx(v, rel=1e-12)
    # row sums of the closed pattern must agree with the sum identity
    assert u + 2 * v == pytest.approx(math.exp(-0.4), rel=1e-12)


@pytest.mark.parametrize("lam", [25.0, -20.5, math.inf, math.nan])
def test_kernel_rejects_out_of_range_lambda(lam):
    with pytest.raises(ParameterRangeError):
        build_kernel(build_coupling(3), lam)


@pytest.mark.parametrize("n", SWEEP_N)
@pytest.mark.parametrize("lam", SWEEP_LAMBDA)
def test_kernel_internal_identities(n, lam):
    kernel = build_kernel(build_coupling(n), lam)
    assert_allclose(kernel.Lambda, kernel.Lambda.T, atol=1e-12)
    assert_allclose(kernel.gram, kernel.Lambda @ kernel.Lambda, atol=1e-12 * np.max(kernel.gram))
    assert_allclose(kernel.Nmat @ kernel.NmatInv, np.eye(n), atol=1e-10)
    assert kernel.detLambda == pytest.approx(1.0, abs=1e-12)
    expected_det_n = float(np.prod(np.cosh(lam * kernel.coupling.eigenvalues)))
    assert kernel.detN == pytest.approx(expected_det_n, rel=1e-10)


def test_sum_identity_examples():
    assert sum_identities(build_kernel(build_coupling(3), 0.1))[0] == pytest.approx(
        3 * math.exp(-0.4), rel=1e-12
    )
    assert sum_identities(build_kernel(build_coupling(4), 0.3))[1] == pytest.approx(
        4 * math.exp(1.2), rel=1e-12
    )
    assert sum_identities(build_kernel(build_coupling(5), 0.0)) == (
        pytest.approx(5.0, rel=1e-12),
        pytest.approx(5.0, rel=1e-12),
    )


@pytest.mark.parametrize("n", SWEEP_N)
@pytest.mark.parametrize("lam", SWEEP_LAMBDA)
def test_sum_identities_sweep(n, lam):
    sum_g, sum_ginv = sum_identities(build_kernel(build_coupling(n), lam))
    assert sum_g == pytest.approx(n * math.exp(-4 * lam), rel=1e-10)
    assert sum_ginv == pytest.approx(n * math.exp(4 * lam), rel=1e-10)


@pytest.mark.parametrize("n", SWEEP_N)
def test_power_sum_identity_integer_exact(n):
    doubled = 2 * build_coupling(n).entries
    power = np.eye(n, dtype=np.int64)
    for exponent in range(7):
        assert int(power.sum()) == 4**exponent * n
        power = power @ doubled


@pytest.mark.parametrize("n", SWEEP_N)
@pytest.mark.parametrize("lam", [0.5, -0.5, 0.2, 1.0])
def test_spectral_exponential_matches_taylor_oracle(n, lam):
    coupling = build_coupling(n)
    spectral = matrix_function(coupling, lambda a: np.exp(-lam * a))
    taylor = expm_taylor(-lam * coupling.entries.astype(float))
    assert_allclose(spectral, taylor, atol=1e-10)
