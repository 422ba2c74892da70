"""Truncated Fock-space brute force for cross-checking every closed form.

States live on a per-mode-truncated basis |n_1 ... n_n> with n_i <= cutoff,
flattened with mode 0 most significant.  Ladder operators are built
sparsely by Kronecker products; the raising operator simply drops the
cutoff -> cutoff+1 matrix element, so commutator identities hold exactly
on the interior (n_i < cutoff) subspace and tail mass is *measured*, never
assumed away.

The squeeze itself is realised as exp(iH) of the quadratic generator by a
dense Hermitian eigendecomposition, which is unitary to solver precision;
Wigner values come from the displaced-parity expectation
    W(alpha) = pi^-n <psi| D(alpha) (-1)^N D(alpha)~ |psi>,
with the displacement factored into per-mode unitaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .coupling import CouplingMatrix
from .errors import NumericFailureError, ResourceLimitError, TruncationError
from .normalform import NormalOrderedForm, TwoPhotonState

DIM_GUARD = 200_000


@dataclass(frozen=True)
class FockSpace:
    """Per-mode-truncated Fock basis with a flat-index bijection."""

    n: int
    cutoff: int
    dim: int

    def index_of(self, occupation) -> int:
        """Flat index of an occupation tuple (mode 0 most significant)."""
        occupation = tuple(int(v) for v in occupation)
        if len(occupation) != self.n:
            raise ValueError(f"occupation needs {self.n} entries")
        flat = 0
        for occ in occupation:
            if not 0 <= occ <= self.cutoff:
                raise ValueError(f"occupation {occ} outside 0..{self.cutoff}")
            flat = flat * (self.cutoff + 1) + occ
        return flat

    def occupation(self, index: int) -> tuple[int, ...]:
        """Occupation tuple of a flat index."""
        if not 0 <= index < self.dim:
            raise ValueError(f"index {index} outside 0..{self.dim - 1}")
        base = self.cutoff + 1
        occ = []
        for _ in range(self.n):
            index, rem = divmod(index, base)
            occ.append(rem)
        return tuple(reversed(occ))


@dataclass(frozen=True)
class FockTensor:
    """Complex amplitudes over a truncated Fock basis."""

    space: FockSpace
    amps: np.ndarray

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


@dataclass(frozen=True)
class FockOperator:
    """A (sparse) matrix acting on a truncated Fock basis."""

    space: FockSpace
    mat: sp.spmatrix


def build_space(n: int, cutoff: int) -> FockSpace:
    """Truncated basis for n modes with at most ``cutoff`` photons each.

    Raises
    ------
    ResourceLimitError
        If (cutoff + 1)**n exceeds the desk-scale guard of 2e5 states.
    """
    if n < 1:
        raise ValueError(f"need at least one mode, got n={n}")
    if cutoff < 0:
        raise ValueError(f"cutoff must be nonnegative, got {cutoff}")
    dim = (cutoff + 1) ** n
    if dim > DIM_GUARD:
        raise ResourceLimitError(f"dim {dim} exceeds guard {DIM_GUARD}")
    return FockSpace(n=n, cutoff=cutoff, dim=dim)


def occupation_table(space: FockSpace) -> np.ndarray:
    """(dim, n) array of occupations, row k = occupation of flat index k."""
    idx = np.arange(space.dim)
    base = space.cutoff + 1
    cols = [(idx // base**k) % base for k in range(space.n - 1, -1, -1)]
    return np.stack(cols, axis=1)


def vacuum(space: FockSpace) -> FockTensor:
    amps = np.zeros(space.dim, dtype=complex)
    amps[0] = 1.0
    return FockTensor(space=space, amps=amps)


def _single_mode_lowering(cutoff: int) -> sp.csr_matrix:
    data = np.sqrt(np.arange(1.0, cutoff + 1.0))
    return sp.diags(data, offsets=1, format="csr")


def ladder_ops(space: FockSpace) -> tuple[list[FockOperator], list[FockOperator]]:
    """Per-mode lowering and raising operators (exact transposes).

    The raising operator is truncated: its cutoff -> cutoff+1 element is
    dropped, so [a_i, a_i~] equals the identity only on n_i < cutoff.
    """
    base = space.cutoff + 1
    low = _single_mode_lowering(space.cutoff)
    lowering, raising = [], []
    for i in range(space.n):
        left = sp.identity(base**i, format="csr")
        right = sp.identity(base ** (space.n - 1 - i), format="csr")
        a_i = sp.kron(sp.kron(left, low, format="csr"), right, format="csr")
        lowering.append(FockOperator(space=space, mat=a_i))
        raising.append(FockOperator(space=space, mat=a_i.T.tocsr()))
    return lowering, raising


def quadrature_ops(space: FockSpace) -> tuple[list[sp.csr_matrix], list[sp.csr_matrix]]:
    """Truncated Q_i = (a_i + a_i~)/sqrt(2) and P_i = (a_i - a_i~)/(i sqrt(2))."""
    lowering, raising = ladder_ops(space)
    q_ops, p_ops = [], []
    for a_i, adag_i in zip(lowering, raising):
        q_ops.append(((a_i.mat + adag_i.mat) / math.sqrt(2.0)).tocsr())
        p_ops.append((-1j * (a_i.mat - adag_i.mat) / math.sqrt(2.0)).tocsr())
    return q_ops, p_ops


def generator(space: FockSpace, coupling: CouplingMatrix, lam: float) -> FockOperator:
    """Hermitian generator H = lambda * sum_ij A_ij Q_i P_j.

    A has zero diagonal, so every term couples distinct modes and is
    individually Hermitian; the squeeze is exp(iH).
    """
    if coupling.n != space.n:
        raise ValueError(f"coupling has {coupling.n} modes, space has {space.n}")
    q_ops, p_ops = quadrature_ops(space)
    mat = sp.csr_matrix((space.dim, space.dim), dtype=complex)
    for i in range(space.n):
        for j in range(space.n):
            aij = int(coupling.entries[i, j])
            if aij:
                mat = mat + (lam * aij) * (q_ops[i] @ p_ops[j])
    return FockOperator(space=space, mat=mat.tocsr())


def evolve_vacuum(hamiltonian: FockOperator) -> FockTensor:
    """exp(iH)|0> by dense Hermitian eigendecomposition.

    The eigendecomposition route keeps the evolution unitary to solver
    precision, which the overlap and norm checks rely on.
    """
    dense = hamiltonian.mat.toarray()
    try:
        w, v = np.linalg.eigh(dense)
    except np.linalg.LinAlgError as exc:
        raise NumericFailureError(f"eigendecomposition failed: {exc}") from exc
    vacuum_coeffs = v[0, :].conj()
    amps = v @ (np.exp(1j * w) * vacuum_coeffs)
    return FockTensor(space=hamiltonian.space, amps=amps)


def two_photon_expand(state: TwoPhotonState, space: FockSpace) -> FockTensor:
    """Amplitudes of norm * exp(at~ F at / 2)|0> on the truncated basis.

    Each application of the quadratic creation block raises the total
    photon number by 2, so the power series terminates once it clears
    n * cutoff; raising never lowers, so the truncated series equals the
    exact projection of the infinite state onto the basis.
    """
    if state.n != space.n:
        raise ValueError(f"state has {state.n} modes, space has {space.n}")
    if np.max(np.abs(state.F - state.F.T)) > 1e-12:
        raise ValueError("two-photon matrix must be symmetric")
    _, raising = ladder_ops(space)
    quad = sp.csr_matrix((space.dim, space.dim))
    for i in range(space.n):
        for j in range(space.n):
            fij = state.F[i, j]
            if fij != 0.0:
                quad = quad + (0.5 * fij) * (raising[i].mat @ raising[j].mat)
    quad = quad.tocsr()
    amps = np.zeros(space.dim, dtype=complex)
    amps[0] = 1.0
    term = amps.copy()
    for k in range(1, space.n * space.cutoff // 2 + 2):
        term = quad @ term / k
        if not np.any(term):
            break
        amps = amps + term
    return FockTensor(space=space, amps=state.norm * amps)


def tail_mass(psi: FockTensor) -> float:
    """Probability weight the truncation lost: max(0, 1 - |psi|^2)."""
    return max(0.0, 1.0 - psi.norm**2)


def normalized(psi: FockTensor) -> FockTensor:
    """Unit-norm copy (e.g. before taking truncated expectation values)."""
    norm = psi.norm
    if norm == 0.0:
        raise ValueError("cannot normalize the zero tensor")
    return FockTensor(space=psi.space, amps=psi.amps / norm)


def overlap(left: FockTensor, right: FockTensor) -> complex:
    """<left|right>, conjugate-linear in the first argument."""
    if left.space != right.space:
        raise ValueError("overlap requires tensors on the same space")
    return complex(np.vdot(left.amps, right.amps))


def collective_quadrature(space: FockSpace, which: str) -> sp.csr_matrix:
    """X1 = sum Q_i / sqrt(2n) or X2 = sum P_i / sqrt(2n) as a matrix."""
    q_ops, p_ops = quadrature_ops(space)
    ops = q_ops if which == "X1" else p_ops if which == "X2" else None
    if ops is None:
        raise ValueError(f"which must be 'X1' or 'X2', got {which!r}")
    total = ops[0]
    for op in ops[1:]:
        total = total + op
    return (total / math.sqrt(2.0 * space.n)).tocsr()


def variance_numeric(psi: FockTensor, which: str) -> float:
    """<X^2> - <X>^2 for a collective quadrature, using truncated matrices.

    Requires psi normalised within 1e-6; the second moment is evaluated
    as |X psi|^2 (X is Hermitian), so no squared matrix is formed.
    """
    if abs(psi.norm - 1.0) > 1e-6:
        raise ValueError(f"state norm {psi.norm} deviates from 1 by more than 1e-6")
    x_op = collective_quadrature(psi.space, which)
    x_psi = x_op @ psi.amps
    mean = float(np.vdot(psi.amps, x_psi).real)
    second = float(np.vdot(x_psi, x_psi).real)
    return second - mean**2


def _single_mode_displacement(alpha: complex, cutoff: int) -> np.ndarray:
    """exp(alpha a~ - conj(alpha) a) on one truncated mode, by eigh.

    The truncated generator stays anti-Hermitian, so this matrix is
    exactly unitary on the truncated mode.
    """
    low = _single_mode_lowering(cutoff).toarray().astype(complex)
    gen = alpha * low.T - np.conj(alpha) * low
    w, v = np.linalg.eigh(1j * gen)
    return (v * np.exp(-1j * w)) @ v.conj().T


def wigner_numeric(psi: FockTensor, alpha: np.ndarray, max_boundary_mass: float = 1e-6) -> float:
    """Displaced-parity Wigner value pi^-n <psi| D(alpha) (-1)^N D(alpha)~ |psi>.

    The displacement factorises over modes, so D(alpha)~ psi is computed
    by contracting one small per-mode unitary along each tensor axis.

    Raises
    ------
    TruncationError
        If the displaced state carries more than ``max_boundary_mass``
        weight on the outermost shell (some n_i = cutoff), i.e. the
        cutoff is too small for this displacement.
    """
    space = psi.space
    alpha = np.asarray(alpha, dtype=complex)
    if alpha.shape != (space.n,):
        raise ValueError(f"alpha must have length {space.n}")
    base = space.cutoff + 1
    tensor = psi.amps.reshape((base,) * space.n)
    for i in range(space.n):
        disp_dag = _single_mode_displacement(-alpha[i], space.cutoff)
        tensor = np.moveaxis(np.tensordot(disp_dag, tensor, axes=(1, i)), 0, i)
    displaced = tensor.reshape(space.dim)
    occs = occupation_table(space)
    boundary = np.any(occs == space.cutoff, axis=1)
    boundary_mass = float(np.sum(np.abs(displaced[boundary]) ** 2))
    if boundary_mass > max_boundary_mass:
        raise TruncationError(
            f"displaced state has {boundary_mass:.3e} mass on the cutoff shell"
        )
    parity = 1.0 - 2.0 * (np.sum(occs, axis=1) % 2)
    return math.pi ** (-space.n) * float(np.sum(parity * np.abs(displaced) ** 2))


def assemble_normal_form(form: NormalOrderedForm, space: FockSpace) -> np.ndarray:
    """Dense matrix of the factored squeeze on the truncated basis.

    The creation and annihilation exponentials are nilpotent on a
    truncated basis, so their series terminate exactly.  The middle
    normally ordered factor :exp(at~ X a): equals exp(at~ log(I + X) a),
    which is photon-number conserving and therefore untouched by the
    per-mode cutoff on any sector it is compared on.
    """
    n_modes = form.creMat.shape[0]
    if n_modes != space.n:
        raise ValueError(f"form has {n_modes} modes, space has {space.n}")
    lowering, raising = ladder_ops(space)
    adag = [op.mat.toarray() for op in raising]
    alow = [op.mat.toarray() for op in lowering]

    def quadratic(coeff: np.ndarray, ops: list[np.ndarray]) -> np.ndarray:
        total = np.zeros((space.dim, space.dim))
        for i in range(space.n):
            for j in range(space.n):
                if coeff[i, j] != 0.0:
                    total += 0.5 * coeff[i, j] * (ops[i] @ ops[j])
        return total

    def nilpotent_exp(mat: np.ndarray) -> np.ndarray:
        result = np.eye(space.dim)
        term = np.eye(space.dim)
        for k in range(1, space.n * space.cutoff // 2 + 2):
            term = mat @ term / k
            if not np.any(term):
                break
            result = result + term
        return result

    cre_factor = nilpotent_exp(quadratic(form.creMat, adag))
    ann_factor = nilpotent_exp(quadratic(form.annMat, alow))

    one_body = np.eye(n_modes) + form.crossMat
    w, v = np.linalg.eigh(one_body)
    if np.min(w) <= 0.0:
        raise ValueError("middle factor needs a positive definite I + crossMat")
    log_one_body = (v * np.log(w)) @ v.T
    dgamma = np.zeros((space.dim, space.dim))
    for i in range(space.n):
        for j in range(space.n):
            if log_one_body[i, j] != 0.0:
                dgamma += log_one_body[i, j] * (adag[i] @ alow[j])
    wg, vg = np.linalg.eigh(dgamma)
    mid_factor = (vg * np.exp(wg)) @ vg.conj().T

    return form.prefactor * (cre_factor @ mid_factor @ ann_factor)
