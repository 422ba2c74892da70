import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from nmodesqueeze import (
    PhasePoint,
    VariancePair,
    build_coupling,
    build_kernel,
    covariance_matrix,
    heisenberg_transforms,
    normalization_by_quadrature,
    variances_closed,
    variances_matrix_sum,
    wigner_from_kernel,
    wigner_log_value,
    wigner_q_marginal,
    wigner_value,
    wigner_value_alpha,
)

SWEEP_N = range(2, 9)
SWEEP_LAMBDA = (0.0, 0.1, -0.1, 0.5, -0.5, 1.0, -1.0)

# Frozen: pi^-3 * exp(-0.5 * (exp(0.4)/3 + 2 exp(-0.2)/3)) for the
# n=3, lambda=0.1 point q = (sqrt(2)/2, 0, 0), p = 0; the same number
# falls out of the three-mode closed form.
WIGNER3_POINT_VALUE = 0.019144546955626205


def _wigner(n, lam):
    return wigner_from_kernel(build_kernel(build_coupling(n), lam))


def test_heisenberg_identity_at_zero():
    q_t, p_t = heisenberg_transforms(build_kernel(build_coupling(4), 0.0))
    assert_allclose(q_t, np.eye(4), atol=1e-12)
    assert_allclose(p_t, np.eye(4), atol=1e-12)


def test_heisenberg_two_mode_hyperbolic():
    q_t, _ = heisenberg_transforms(build_kernel(build_coupling(2), 0.2))
    expected = np.array(
        [[math.cosh(0.4), -math.sinh(0.4)], [-math.sinh(0.4), math.cosh(0.4)]]
    )
    assert_allclose(q_t, expected, rtol=1e-12)


@pytest.mark.parametrize("n", SWEEP_N)
@pytest.mark.parametrize("lam", SWEEP_LAMBDA)
def test_heisenberg_symplectic(n, lam):
    q_t, p_t = heisenberg_transforms(build_kernel(build_coupling(n), lam))
    assert_allclose(q_t @ p_t.T, np.eye(n), atol=1e-10)


def test_variance_examples():
    pair = variances_matrix_sum(build_kernel(build_coupling(3), 0.25))
    assert pair.varX1 == pytest.approx(math.exp(-1) / 4, rel=1e-12)
    pair5 = variances_matrix_sum(build_kernel(build_coupling(5), 0.25))
    assert pair5.varX2 == pytest.approx(math.e / 4, rel=1e-12)
    vacuum = variances_matrix_sum(build_kernel(build_coupling(4), 0.0))
    assert (vacuum.varX1, vacuum.varX2) == (pytest.approx(0.25), pytest.approx(0.25))


def test_variances_closed_examples():
    assert variances_closed(0.0) == VariancePair(0.25, 0.25)
    pair = variances_closed(0.25)
    assert pair.varX1 == pytest.approx(0.09196986029286058, rel=1e-15)
    assert pair.varX2 == pytest.approx(0.67957045711476131, rel=1e-15)
    flipped = variances_closed(-0.25)
    assert flipped.varX1 == pair.varX2 and flipped.varX2 == pair.varX1


@pytest.mark.parametrize("n", SWEEP_N)
@pytest.mark.parametrize("lam", SWEEP_LAMBDA)
def test_matrix_sum_equals_closed(n, lam):
    by_sum = variances_matrix_sum(build_kernel(build_coupling(n), lam))
    closed = variances_closed(lam)
    assert by_sum.varX1 == pytest.approx(closed.varX1, rel=1e-10)
    assert by_sum.varX2 == pytest.approx(closed.varX2, rel=1e-10)
    assert abs(by_sum.varX1 * by_sum.varX2 - 1.0 / 16.0) <= 1e-12


@pytest.mark.parametrize("lam", [0.1, 0.5, 1.0])
@pytest.mark.parametrize("n", SWEEP_N)
def test_squeezing_beats_standard_two_mode(n, lam):
    pair = variances_matrix_sum(build_kernel(build_coupling(n), lam))
    assert pair.varX1 < math.exp(-2 * lam) / 4


def test_variance_pair_rejects_wrong_product():
    with pytest.raises(ValueError):
        VariancePair(0.3, 0.3)
    with pytest.raises(ValueError):
        VariancePair(-0.25, -0.25)


@pytest.mark.parametrize("n", SWEEP_N)
@pytest.mark.parametrize("lam", SWEEP_LAMBDA)
def test_wigner_form_invariants(n, lam):
    wig = _wigner(n, lam)
    assert_allclose(wig.qForm @ wig.pForm, np.eye(n), atol=1e-10)
    assert np.linalg.det(wig.qForm) * np.linalg.det(wig.pForm) == pytest.approx(1.0, abs=1e-10)
    origin = PhasePoint(q=np.zeros(n), p=np.zeros(n))
    assert wigner_value(wig, origin) == wig.normConst == math.pi ** (-n)


def test_wigner_vacuum_point():
    wig = _wigner(2, 0.0)
    point = PhasePoint(q=np.array([1.0, 0.0]), p=np.array([1.0, 0.0]))
    assert wigner_value(wig, point) == pytest.approx(math.pi**-2 * math.exp(-2), rel=1e-12)


def test_wigner_three_mode_point():
    wig = _wigner(3, 0.1)
    point = PhasePoint(q=np.array([math.sqrt(2) * 0.5, 0, 0]), p=np.zeros(3))
    assert wigner_value(wig, point) == pytest.approx(WIGNER3_POINT_VALUE, rel=1e-12)
    assert wigner_value_alpha(wig, np.array([0.5, 0, 0])) == pytest.approx(
        WIGNER3_POINT_VALUE, rel=1e-12
    )


def test_wigner_alpha_convention():
    wig = _wigner(3, 0.2)
    assert wigner_value_alpha(wig, np.zeros(3)) == math.pi**-3
    # purely imaginary alpha probes only the p form
    alpha = np.array([0.5j, 0.0, 0.0])
    by_point = wigner_value(wig, PhasePoint(q=np.zeros(3), p=np.array([math.sqrt(2) * 0.5, 0, 0])))
    assert wigner_value_alpha(wig, alpha) == pytest.approx(by_point, rel=1e-14)


def test_wigner_alpha_matches_point_randomly():
    rng = np.random.default_rng(11)
    wig = _wigner(4, 0.3)
    for _ in range(25):
        alpha = rng.normal(size=4) + 1j * rng.normal(size=4)
        point = PhasePoint(q=math.sqrt(2) * alpha.real, p=math.sqrt(2) * alpha.imag)
        assert wigner_value_alpha(wig, alpha) == pytest.approx(
            wigner_value(wig, point), rel=1e-14
        )


def test_wigner_dimension_errors():
    wig = _wigner(3, 0.1)
    with pytest.raises(ValueError):
        wigner_value(wig, PhasePoint(q=np.zeros(4), p=np.zeros(4)))
    with pytest.raises(ValueError):
        wigner_value_alpha(wig, np.zeros(2))


def test_wigner_bounded_and_positive():
    rng = np.random.default_rng(3)
    wig = _wigner(2, 0.4)
    for _ in range(50):
        point = PhasePoint(q=rng.normal(size=2), p=rng.normal(size=2))
        value = wigner_value(wig, point)
        assert 0.0 < value <= wig.normConst


def test_wigner_underflow_reports_zero():
    wig = _wigner(2, 0.0)
    far = PhasePoint(q=np.full(2, 30.0), p=np.full(2, 30.0))
    assert wigner_value(wig, far) == 0.0
    assert wigner_log_value(wig, far) == pytest.approx(
        -2 * math.log(math.pi) - 4 * 900.0, rel=1e-12
    )


def test_phase_point_validation():
    with pytest.raises(ValueError):
        PhasePoint(q=np.zeros(3), p=np.zeros(2))
    with pytest.raises(ValueError):
        PhasePoint(q=np.array([1.0]), p=np.array([1.0]))
    with pytest.raises(ValueError):
        PhasePoint(q=np.array([np.nan, 0.0]), p=np.zeros(2))


def test_covariance_vacuum():
    assert_allclose(covariance_matrix(_wigner(3, 0.0)), np.eye(6) / 2, atol=1e-12)


def test_covariance_three_mode_entries():
    kernel = build_kernel(build_coupling(3), 0.1)
    cov = covariance_matrix(wigner_from_kernel(kernel))
    u = (2.0 / 3.0) * math.exp(0.2) + (1.0 / 3.0) * math.exp(-0.4)
    assert cov[0, 0] == pytest.approx(u / 2, rel=1e-12)
    assert_allclose(cov[:3, 3:], 0.0, atol=1e-15)


@pytest.mark.parametrize("n", SWEEP_N)
@pytest.mark.parametrize("lam", (0.0, 0.2, -0.4))
def test_covariance_projection_recovers_variances(n, lam):
    kernel = build_kernel(build_coupling(n), lam)
    cov = covariance_matrix(wigner_from_kernel(kernel))
    pair = variances_matrix_sum(kernel)
    ones = np.ones(n) / math.sqrt(2.0 * n)
    assert ones @ cov[:n, :n] @ ones == pytest.approx(pair.varX1, abs=1e-12)
    assert ones @ cov[n:, n:] @ ones == pytest.approx(pair.varX2, abs=1e-12)


def test_normalization_by_quadrature():
    wig = _wigner(2, 0.2)
    assert normalization_by_quadrature(wig, nodes_per_axis=40) == pytest.approx(1.0, abs=1e-6)
    with pytest.raises(ValueError):
        normalization_by_quadrature(_wigner(4, 0.1))


def test_q_marginal_matches_determinants_and_quadrature():
    wig = _wigner(2, 0.2)
    # determinant identity behind the closed marginal prefactor
    assert np.linalg.det(wig.pForm) ** -0.5 == pytest.approx(
        np.linalg.det(wig.qForm) ** 0.5, rel=1e-10
    )
    nodes, weights = np.polynomial.hermite.hermgauss(48)
    for q in (np.array([0.0, 0.0]), np.array([0.3, -0.2]), np.array([1.0, 0.5])):
        total = 0.0
        for x1, w1 in zip(nodes, weights):
            for x2, w2 in zip(nodes, weights):
                point = PhasePoint(q=q, p=np.array([x1, x2]))
                total += w1 * w2 * wigner_value(wig, point) * math.exp(x1**2 + x2**2)
        assert wigner_q_marginal(wig, q) == pytest.approx(total, rel=1e-8)
