"""Cyclic nearest-neighbour coupling matrices and their matrix functions.

The n-mode squeeze generator is sum_i (Q_i P_{i+1} + Q_{i+1} P_i) with
cyclic wraparound, i.e. lambda * Qt A P where A is the adjacency matrix of
the n-cycle.  For n = 2 the wraparound makes each cross term appear twice,
so A = [[0, 2], [2, 0]] rather than the 0/1 pattern of n >= 3.

A is small, integer and symmetric, so every matrix function needed
downstream (exp, tanh, cosh of multiples of A) is evaluated through one
eigendecomposition; ``expm_taylor`` is an independent scaling-and-squaring
oracle the tests compare against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ModeCountError, NumericFailureError, ParameterRangeError

# Overflow guard: cosh(2 * LAMBDA_GUARD * max|eig|) must stay representable.
LAMBDA_GUARD = 20.0

_EIG_TIE_TOL = 1e-10


@dataclass(frozen=True)
class CouplingMatrix:
    """Adjacency matrix of the cyclic coupling with its spectral data.

    ``entries`` is integer and symmetric with zero diagonal and row sums 2;
    ``eigenvalues`` are sorted descending (ties ordered deterministically),
    ``eigenvectors`` holds the matching orthonormal columns.
    """

    n: int
    entries: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class SqueezeKernel:
    """lambda together with every matrix function of A used downstream.

    Lambda = exp(-lambda A) (symmetric, so it equals its transpose),
    gram = Lambda~ Lambda = exp(-2 lambda A), Nmat = (1 + gram)/2.
    """

    coupling: CouplingMatrix
    lam: float
    Lambda: np.ndarray
    gram: np.ndarray
    Nmat: np.ndarray
    NmatInv: np.ndarray
    detLambda: float
    detN: float


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def build_coupling(n: int) -> CouplingMatrix:
    """Accumulate the coupling matrix of the n-mode generator sum.

    Each term Q_i P_{i+1} + Q_{i+1} P_i (indices mod n) adds 1 to A[i, i+1]
    and A[i+1, i]; for n = 2 both loop passes hit the same pair, which is
    what makes the two-mode member twice as strong as the standard
    two-mode squeeze.

    Raises
    ------
    ModeCountError
        If n < 2.
    """
    if n < 2:
        raise ModeCountError(f"need at least 2 modes, got n={n}")
    entries = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        j = (i + 1) % n
        entries[i, j] += 1
        entries[j, i] += 1
    eigenvalues, eigenvectors = _sorted_eigh(entries.astype(float))
    return CouplingMatrix(
        n=n,
        entries=_freeze(entries),
        eigenvalues=_freeze(eigenvalues),
        eigenvectors=_freeze(eigenvectors),
    )


def spectrum(coupling: CouplingMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvectors of A.

    Degenerate eigenvalues are generic here (e.g. n = 3 has -1 twice), so
    ties are broken deterministically: each eigenvector is sign-fixed to
    make its first nonzero entry positive, and columns within a degenerate
    group are sorted lexicographically.
    """
    return _sorted_eigh(coupling.entries.astype(float))


def _sorted_eigh(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    try:
        w, v = np.linalg.eigh(mat)
    except np.linalg.LinAlgError as exc:
        raise NumericFailureError(f"eigendecomposition failed: {exc}") from exc
    order = np.argsort(-w, kind="stable")
    w = w[order]
    v = v[:, order]
    for k in range(v.shape[1]):
        col = v[:, k]
        nonzero = np.flatnonzero(np.abs(col) > 1e-12)
        if nonzero.size and col[nonzero[0]] < 0:
            v[:, k] = -col
    # Reorder inside each (near-)degenerate block by lexicographic entries.
    start = 0
    while start < w.size:
        stop = start + 1
        while stop < w.size and abs(w[stop] - w[start]) <= _EIG_TIE_TOL:
            stop += 1
        if stop - start > 1:
            keys = [tuple(np.round(v[:, k], 12)) for k in range(start, stop)]
            perm = sorted(range(stop - start), key=lambda i: keys[i])
            v[:, start:stop] = v[:, start + np.array(perm)]
        start = stop
    return w, v


def matrix_function(coupling: CouplingMatrix, fn: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Evaluate fn(A) through the spectral decomposition V diag(fn(a_k)) V~."""
    w = coupling.eigenvalues
    v = coupling.eigenvectors
    return (v * fn(w)) @ v.T


def build_kernel(coupling: CouplingMatrix, lam: float) -> SqueezeKernel:
    """All matrix functions of A needed by the squeeze pipeline.

    Raises
    ------
    ParameterRangeError
        If lambda is not finite or |lambda| exceeds the overflow guard.
    """
    if not math.isfinite(lam):
        raise ParameterRangeError(f"lambda must be finite, got {lam}")
    if abs(lam) > LAMBDA_GUARD:
        raise ParameterRangeError(f"|lambda| <= {LAMBDA_GUARD} required, got {lam}")
    w = coupling.eigenvalues
    Lambda = matrix_function(coupling, lambda a: np.exp(-lam * a))
    gram = matrix_function(coupling, lambda a: np.exp(-2.0 * lam * a))
    Nmat = (np.eye(coupling.n) + gram) / 2.0
    NmatInv = matrix_function(coupling, lambda a: 2.0 / (1.0 + np.exp(-2.0 * lam * a)))
    detLambda = float(np.prod(np.exp(-lam * w)))
    detN = float(np.prod((1.0 + np.exp(-2.0 * lam * w)) / 2.0))
    return SqueezeKernel(
        coupling=coupling,
        lam=lam,
        Lambda=_freeze(Lambda),
        gram=_freeze(gram),
        Nmat=_freeze(Nmat),
        NmatInv=_freeze(NmatInv),
        detLambda=detLambda,
        detN=detN,
    )


def sum_identities(kernel: SqueezeKernel) -> tuple[float, float]:
    """All-entries sums of the Gram matrix and its inverse.

    The cyclic row sum 2 makes the all-ones vector an eigenvector, so both
    sums collapse to n exp(-+4 lambda); callers compare against that.
    """
    gram_inv = matrix_function(kernel.coupling, lambda a: np.exp(2.0 * kernel.lam * a))
    return float(kernel.gram.sum()), float(gram_inv.sum())


def expm_taylor(mat: np.ndarray, ntaylor: int = 24) -> np.ndarray:
    """Scaling-and-squaring Taylor matrix exponential (test oracle).

    Independent of the spectral route: scales mat by 2**-s until the norm
    is below 1/2, sums the truncated Taylor series by Horner's rule, then
    squares s times.
    """
    norm = float(np.linalg.norm(mat, np.inf))
    nsquare = max(0, math.ceil(math.log2(max(norm, 1e-300) / 0.5)))
    scaled = mat / (2.0 ** nsquare)
    n = mat.shape[0]
    result = np.eye(n) / math.factorial(ntaylor)
    for k in range(ntaylor - 1, -1, -1):
        result = scaled @ result + np.eye(n) / math.factorial(k)
    for _ in range(nsquare):
        result = result @ result
    return result
