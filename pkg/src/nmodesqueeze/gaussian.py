"""Phase-space engine: quadrature transforms, variances, Wigner functions.

Conventions (fixed here, used everywhere):
    Q = (a + a~)/sqrt(2),  P = (a - a~)/(i sqrt(2)),  so [Q, P] = i,
    alpha = (q + i p)/sqrt(2),
    collective quadratures X1 = sum Q_i / sqrt(2n), X2 = sum P_i / sqrt(2n),
    vacuum variance 1/4 per collective quadrature.

The squeezed vacuum is Gaussian, so its Wigner function is
    W(q, p) = pi^-n exp(-qt qForm q - pt pForm p)
with qForm = exp(+2 lambda A) and pForm = exp(-2 lambda A).  Values are
computed in log space; anything below exp(-700) is reported as exactly 0
(``wigner_log_value`` keeps the tail accessible).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .coupling import SqueezeKernel, matrix_function
from .errors import ParameterRangeError

# Log-space floor: below this the linear-scale value is reported as 0.0.
LOG_FLOOR = -700.0


@dataclass(frozen=True)
class PhasePoint:
    """A point (q, p) in 2n-dimensional phase space."""

    q: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        p = np.asarray(self.p, dtype=float)
        if q.ndim != 1 or p.ndim != 1 or q.size != p.size:
            raise ValueError("q and p must be equal-length vectors")
        if q.size < 2:
            raise ValueError("phase points need at least 2 modes")
        if not (np.all(np.isfinite(q)) and np.all(np.isfinite(p))):
            raise ValueError("phase point entries must be finite")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)

    @classmethod
    def from_alpha(cls, alpha: np.ndarray) -> "PhasePoint":
        """Complex amplitudes alpha = (q + ip)/sqrt(2) to quadrature values."""
        alpha = np.asarray(alpha, dtype=complex)
        return cls(q=math.sqrt(2.0) * alpha.real, p=math.sqrt(2.0) * alpha.imag)


@dataclass(frozen=True)
class GaussianWigner:
    """Quadratic forms of the squeezed-vacuum Wigner function."""

    n: int
    qForm: np.ndarray
    pForm: np.ndarray
    normConst: float


@dataclass(frozen=True)
class VariancePair:
    """Variances of the collective quadratures X1 and X2.

    A valid pair is positive and saturates the uncertainty product
    varX1 * varX2 = 1/16.
    """

    varX1: float
    varX2: float

    def __post_init__(self):
        if not (self.varX1 > 0.0 and self.varX2 > 0.0):
            raise ValueError("variances must be positive")
        if abs(self.varX1 * self.varX2 - 1.0 / 16.0) > 1e-12:
            raise ValueError("uncertainty product must equal 1/16")


def heisenberg_transforms(kernel: SqueezeKernel) -> tuple[np.ndarray, np.ndarray]:
    """Matrices mapping Q and P under conjugation by the squeeze.

    Returns (exp(-lambda A), exp(+lambda A)); the Q transform is the
    inverse transpose of the P transform, so their product is the
    identity (the map is symplectic).
    """
    q_transform = kernel.Lambda
    p_transform = matrix_function(kernel.coupling, lambda a: np.exp(kernel.lam * a))
    return q_transform, p_transform


def variances_matrix_sum(kernel: SqueezeKernel) -> VariancePair:
    """Collective variances by literal all-entries summation.

    (Delta X1)^2 = sum_ij gram_ij / 4n and (Delta X2)^2 uses the inverse
    Gram matrix; no closed form is assumed here.
    """
    n = kernel.coupling.n
    gram_inv = matrix_function(kernel.coupling, lambda a: np.exp(2.0 * kernel.lam * a))
    return VariancePair(
        varX1=float(kernel.gram.sum()) / (4.0 * n),
        varX2=float(gram_inv.sum()) / (4.0 * n),
    )


def variances_closed(lam: float) -> VariancePair:
    """Closed-form collective variances exp(-4 lambda)/4 and exp(+4 lambda)/4.

    Independent of the mode count; must agree with
    ``variances_matrix_sum`` for every n.
    """
    if not math.isfinite(lam):
        raise ParameterRangeError(f"lambda must be finite, got {lam}")
    if abs(lam) > 20.0:
        raise ParameterRangeError(f"|lambda| <= 20 required, got {lam}")
    return VariancePair(varX1=math.exp(-4.0 * lam) / 4.0, varX2=math.exp(4.0 * lam) / 4.0)


def wigner_from_kernel(kernel: SqueezeKernel) -> GaussianWigner:
    """Gaussian Wigner function of the squeezed vacuum.

    qForm is the inverse Gram matrix exp(+2 lambda A), pForm the Gram
    matrix itself; the peak value at the origin is pi^-n.
    """
    q_form = matrix_function(kernel.coupling, lambda a: np.exp(2.0 * kernel.lam * a))
    q_form.setflags(write=False)
    return GaussianWigner(
        n=kernel.coupling.n,
        qForm=q_form,
        pForm=kernel.gram,
        normConst=math.pi ** (-kernel.coupling.n),
    )


def _quadratic_exponent(wig: GaussianWigner, point: PhasePoint) -> float:
    if point.q.size != wig.n:
        raise ValueError(f"point has {point.q.size} modes, Wigner function has {wig.n}")
    return float(point.q @ wig.qForm @ point.q + point.p @ wig.pForm @ point.p)


def wigner_log_value(wig: GaussianWigner, point: PhasePoint) -> float:
    """Natural log of the Wigner value (never underflows)."""
    return -wig.n * math.log(math.pi) - _quadratic_exponent(wig, point)


def wigner_value(wig: GaussianWigner, point: PhasePoint) -> float:
    """Wigner value pi^-n exp(-qt qForm q - pt pForm p).

    Strictly positive and bounded by pi^-n (the origin returns normConst
    exactly); the exponent is screened in log space and anything below
    exp(-700) is reported as exactly 0.0 instead of underflow noise.
    """
    quad = _quadratic_exponent(wig, point)
    if -quad - wig.n * math.log(math.pi) < LOG_FLOOR:
        return 0.0
    return wig.normConst * math.exp(-quad)


def wigner_value_alpha(wig: GaussianWigner, alpha: np.ndarray) -> float:
    """Wigner value at complex amplitudes alpha_i = (q_i + i p_i)/sqrt(2)."""
    alpha = np.asarray(alpha, dtype=complex)
    if alpha.ndim != 1 or alpha.size != wig.n:
        raise ValueError(f"alpha must have length {wig.n}")
    return wigner_value(wig, PhasePoint.from_alpha(alpha))


def covariance_matrix(wig: GaussianWigner) -> np.ndarray:
    """Second moments of the Gaussian, block-diagonal in (q, p).

    <q qt> = qForm^-1 / 2 (which equals pForm / 2) and <p pt> = qForm / 2;
    the cross block vanishes.  Projecting the q block onto the normalised
    all-ones direction recovers (Delta X1)^2.
    """
    n = wig.n
    cov = np.zeros((2 * n, 2 * n))
    cov[:n, :n] = wig.pForm / 2.0
    cov[n:, n:] = wig.qForm / 2.0
    return cov


def wigner_q_marginal(wig: GaussianWigner, q: np.ndarray) -> float:
    """Closed-form marginal over p: a Gaussian with form qForm.

    Integrating the p Gaussian gives pi^(n/2) det(pForm)^(-1/2), and
    det(qForm) det(pForm) = 1, hence the prefactor below.
    """
    q = np.asarray(q, dtype=float)
    det_q = float(np.linalg.det(wig.qForm))
    return math.pi ** (-wig.n / 2.0) * math.sqrt(det_q) * math.exp(-float(q @ wig.qForm @ q))


def normalization_by_quadrature(wig: GaussianWigner, nodes_per_axis: int = 40) -> float:
    """Integrate W over all 2n phase-space axes by Gauss-Hermite quadrature.

    Tensor-product rule over the full 2n-dimensional grid; the weight
    exp(-x^2) is divided back out per axis.  Memory stays bounded by
    vectorizing only the trailing three axes and looping over the rest,
    so the cost (not the footprint) grows as nodes**(2n); intended for
    small n such as the n = 2 normalization check.
    """
    if wig.n > 3:
        raise ValueError("quadrature grid is only sensible for n <= 3")
    nodes, weights = np.polynomial.hermite.hermgauss(nodes_per_axis)
    naxes = 2 * wig.n
    form = np.zeros((naxes, naxes))
    form[: wig.n, : wig.n] = wig.qForm
    form[wig.n :, wig.n :] = wig.pForm
    # Integrand relative to the Gauss-Hermite weight: W * exp(+sum x^2).
    shifted = form - np.eye(naxes)
    nvec = min(3, naxes)
    nloop = naxes - nvec
    grids = np.meshgrid(*([nodes] * nvec), indexing="ij")
    tail = np.stack([g.ravel() for g in grids], axis=0)
    wgrids = np.meshgrid(*([weights] * nvec), indexing="ij")
    tail_weight = np.prod(np.stack([g.ravel() for g in wgrids], axis=0), axis=0)
    total = 0.0
    for head_idx in itertools.product(range(nodes_per_axis), repeat=nloop):
        head = nodes[list(head_idx)]
        head_weight = float(np.prod(weights[list(head_idx)]))
        pts = np.vstack([np.tile(head[:, None], tail.shape[1]), tail]) if nloop else tail
        expo = -np.einsum("ik,ij,jk->k", pts, shifted, pts)
        total += head_weight * float(tail_weight @ np.exp(expo))
    return wig.normConst * total
