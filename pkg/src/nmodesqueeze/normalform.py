"""Normally ordered squeeze operator, squeezed vacua, and the
three- and four-mode closed forms.

The squeeze factors into
    prefactor * exp(at~ creMat at / 2) * :exp(at~ crossMat a): * exp(a~ annMat a / 2)
with creMat = Lambda Ninv Lambda~ - I, crossMat = Lambda Ninv - I and
annMat = Ninv - I.  Acting on the vacuum only the creation factor
survives, giving the two-photon state norm * exp(at~ F at / 2)|0> with
F = creMat.  The coefficient matrices are assembled from the kernel's
matrix products here; the equivalent form F = -tanh(lambda A) is left to
the tests to confirm rather than assumed.

``three_mode_closed`` / ``four_mode_closed`` carry the hand-derived n = 3
and n = 4 scalars (Gram entries, state coefficients, inverse-N pattern) as
plain numbers so each one can be compared against the generic pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coupling import SqueezeKernel
from .errors import ParameterRangeError


@dataclass(frozen=True)
class NormalOrderedForm:
    """Prefactor and coefficient matrices of the factored squeeze."""

    prefactor: float
    creMat: np.ndarray
    crossMat: np.ndarray
    annMat: np.ndarray

    def __post_init__(self):
        for name in ("creMat", "annMat"):
            mat = getattr(self, name)
            if np.max(np.abs(mat - mat.T)) > 1e-12:
                raise ValueError(f"{name} must be symmetric")
        # Normalizability of the vacuum image: spectral radius of the
        # creation block strictly below 1.
        if np.max(np.abs(np.linalg.eigvalsh(self.creMat))) >= 1.0:
            raise ValueError("creation coefficients must lie strictly inside (-1, 1)")


@dataclass(frozen=True)
class TwoPhotonState:
    """norm * exp(at~ F at / 2)|0> with symmetric two-photon matrix F."""

    n: int
    norm: float
    F: np.ndarray

    def __post_init__(self):
        if self.F.shape != (self.n, self.n):
            raise ValueError("F must be n x n")
        if np.max(np.abs(self.F - self.F.T)) > 1e-12:
            raise ValueError("two-photon matrix must be symmetric")
        f_eigs = np.linalg.eigvalsh(self.F)
        if np.max(np.abs(f_eigs)) >= 1.0:
            raise ValueError("two-photon matrix needs spectral radius < 1")
        unit_norm = float(np.prod(1.0 - f_eigs**2) ** 0.25)
        if abs(self.norm - unit_norm) > 1e-8:
            raise ValueError(
                f"norm {self.norm} does not match det(1 - F F~)^(1/4) = {unit_norm}"
            )


@dataclass(frozen=True)
class ThreeModeClosed:
    """Hand-derived n = 3 scalars: Gram entries u, v and state coefficients A1-A3."""

    lam: float
    u: float
    v: float
    A1: float
    A2: float
    A3: float

    def __post_init__(self):
        if abs(self.u + 2.0 * self.v - math.exp(-4.0 * self.lam)) > 1e-12:
            raise ValueError("row sum u + 2v must equal exp(-4 lambda)")
        if abs(self.A3**2 * math.cosh(2 * self.lam) * math.cosh(self.lam) ** 2 - 1.0) > 1e-10:
            raise ValueError("A3 normalization identity violated")


@dataclass(frozen=True)
class FourModeClosed:
    """Hand-derived n = 4 scalars: Gram pattern r, s, t, the inverse-N pattern
    (diagonal, nearest, opposite) and the state norm/tanh factors."""

    lam: float
    r: float
    s: float
    t: float
    ninv_diag: float
    ninv_near: float
    ninv_far: float
    detN: float
    stateNorm: float
    stateTanh: float

    def __post_init__(self):
        if abs(self.r - self.s - 1.0) > 1e-12:
            raise ValueError("r - s must equal 1")
        if abs(self.r + self.s + 2.0 * self.t - math.exp(-4.0 * self.lam)) > 1e-12:
            raise ValueError("row sum r + s + 2t must equal exp(-4 lambda)")
        if abs(self.detN - self.r) > 1e-12:
            raise ValueError("det N must equal r")


def normal_form(kernel: SqueezeKernel) -> NormalOrderedForm:
    """Coefficient matrices of the normally ordered squeeze.

    Everything is built from the kernel's Lambda and Nmat by plain matrix
    products; symmetry of Lambda collapses Lambda~ to Lambda.
    """
    n = kernel.coupling.n
    eye = np.eye(n)
    lam_ninv = kernel.Lambda @ kernel.NmatInv
    cre = lam_ninv @ kernel.Lambda.T - eye
    cre = (cre + cre.T) / 2.0  # symmetrize away products' rounding skew
    return NormalOrderedForm(
        prefactor=math.sqrt(kernel.detLambda / kernel.detN),
        creMat=cre,
        crossMat=lam_ninv - eye,
        annMat=kernel.NmatInv - eye,
    )


def squeezed_vacuum(kernel: SqueezeKernel) -> TwoPhotonState:
    """Squeezed vacuum as a two-photon state: F is the creation block of
    the normal form and the norm is its prefactor."""
    form = normal_form(kernel)
    return TwoPhotonState(n=kernel.coupling.n, norm=form.prefactor, F=form.creMat)


def baseline_two_mode(lam: float) -> TwoPhotonState:
    """Standard two-mode squeezed vacuum sech(lambda) exp(-a1~ a2~ tanh lambda)|00>.

    Comparison target for the enhancement claim: the n = 2 member of the
    cyclic family at lambda reproduces this baseline at 2 lambda.
    """
    if not math.isfinite(lam):
        raise ParameterRangeError(f"lambda must be finite, got {lam}")
    F = np.array([[0.0, -math.tanh(lam)], [-math.tanh(lam), 0.0]])
    return TwoPhotonState(n=2, norm=1.0 / math.cosh(lam), F=F)


def three_mode_closed(lam: float) -> ThreeModeClosed:
    """Hand-derived three-mode scalars evaluated at lambda."""
    return ThreeModeClosed(
        lam=lam,
        u=(2.0 / 3.0) * math.exp(2.0 * lam) + (1.0 / 3.0) * math.exp(-4.0 * lam),
        v=(1.0 / 3.0) * math.exp(-4.0 * lam) - (1.0 / 3.0) * math.exp(2.0 * lam),
        A1=(1.0 - 1.0 / math.cosh(2.0 * lam)) * math.tanh(lam),
        A2=math.sinh(3.0 * lam) / (2.0 * math.cosh(lam) * math.cosh(2.0 * lam)),
        A3=(1.0 / math.cosh(lam)) * math.cosh(2.0 * lam) ** -0.5,
    )


def wigner3_closed(lam: float, alpha: np.ndarray) -> float:
    """Three-mode Wigner function in its hand-derived closed form.

    The trailing complex conjugate applies to the whole secondexponent
    brace (both the alpha^2 sum and the cross terms); the generic Gaussian
    form is the test that pins this reading down.
    """
    alpha = np.asarray(alpha, dtype=complex)
    if alpha.shape != (3,):
        raise ValueError("alpha must have length 3")
    abs_sq = float(np.sum(np.abs(alpha) ** 2))
    alpha_sq = complex(np.sum(alpha**2))
    cross_mixed = complex(
        alpha[0] * alpha[1].conjugate()
        + alpha[0] * alpha[2].conjugate()
        + alpha[1] * alpha[2].conjugate()
    )
    cross_plain = complex(alpha[0] * alpha[1] + alpha[0] * alpha[2] + alpha[1] * alpha[2])
    first = -(2.0 / 3.0) * (math.cosh(4 * lam) + 2.0 * math.cosh(2 * lam)) * abs_sq
    brace = -(1.0 / 3.0) * (math.sinh(4 * lam) - 2.0 * math.sinh(2 * lam)) * alpha_sq - (
        2.0 / 3.0
    ) * (
        (math.cosh(4 * lam) - math.cosh(2 * lam)) * cross_mixed
        + (math.sinh(2 * lam) + math.sinh(4 * lam)) * cross_plain
    )
    return math.pi**-3 * math.exp(first + 2.0 * brace.real)


def four_mode_closed(lam: float) -> FourModeClosed:
    """Hand-derived four-mode scalars evaluated at lambda."""
    c2, s2, t2 = math.cosh(2.0 * lam), math.sinh(2.0 * lam), math.tanh(2.0 * lam)
    return FourModeClosed(
        lam=lam,
        r=c2**2,
        s=s2**2,
        t=-s2 * c2,
        ninv_diag=1.0,
        ninv_near=t2 / 2.0,
        ninv_far=0.0,
        detN=c2**2,
        stateNorm=1.0 / c2,
        stateTanh=t2,
    )


def wigner4_closed(lam: float, alpha: np.ndarray) -> float:
    """Four-mode Wigner function in its hand-derived closed form."""
    alpha = np.asarray(alpha, dtype=complex)
    if alpha.shape != (4,):
        raise ValueError("alpha must have length 4")
    abs_sq = float(np.sum(np.abs(alpha) ** 2))
    opposite = alpha[0] * alpha[2].conjugate() + alpha[1] * alpha[3].conjugate()
    ring = (
        alpha[0] * alpha[1]
        + alpha[0] * alpha[3]
        + alpha[1] * alpha[2]
        + alpha[2] * alpha[3]
    )
    c2, t2 = math.cosh(2.0 * lam), math.tanh(2.0 * lam)
    expo = -2.0 * c2**2 * (abs_sq + 2.0 * opposite.real * t2**2 + 2.0 * ring.real * t2)
    return math.pi**-4 * math.exp(expo)
