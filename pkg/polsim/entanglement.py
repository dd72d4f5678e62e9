"""Wootters concurrence and purity of two-qubit polarization states."""

from __future__ import annotations

from typing import Literal, Union

import numpy as np
import scipy.linalg

from polsim.dephasing import PolarizationMatrix
from polsim.errors import DomainError, NumericalError

# σ_y ⊗ σ_y in basis (HH, HV, VH, VV).
SPIN_FLIP = np.array(
    [
        [0, 0, 0, -1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
    ],
    dtype=complex,
)

EIG_RESIDUAL_TOL = 1e-9
# Eigenvalues of ρ below this are rounding noise; zeroing them keeps pure states exactly rank 1.
RANK_CUTOFF = 1e-14

StateLike = Union[PolarizationMatrix, np.ndarray]


def _as_state(rho: StateLike) -> PolarizationMatrix:
    if not isinstance(rho, PolarizationMatrix):
        rho = PolarizationMatrix(np.asarray(rho))
    return rho.validate()


def spin_flip(rho: StateLike) -> np.ndarray:
    """ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)."""
    r = _as_state(rho).entries
    return SPIN_FLIP @ r.conj() @ SPIN_FLIP


def _sqrtm_psd(r: np.ndarray) -> np.ndarray:
    herm = 0.5 * (r + r.conj().T)
    w, v = scipy.linalg.eigh(herm)
    w = np.where(w < RANK_CUTOFF, 0.0, w)
    return (v * np.sqrt(w)) @ v.conj().T


def wootters_lambdas(
    rho: StateLike, method: Literal["svd", "eig"] = "svd"
) -> np.ndarray:
    """Square roots of the eigenvalues of ρρ̃ in decreasing order.

    "svd" takes the singular values of √ρ (σ_y⊗σ_y) √ρ*, which is stable for
    pure and nearly pure states. "eig" diagonalizes ρρ̃ directly and checks
    each eigenpair's residual.
    """
    r = _as_state(rho).entries
    if method == "svd":
        root = _sqrtm_psd(r)
        lambdas = scipy.linalg.svd(root @ SPIN_FLIP @ root.conj(), compute_uv=False)
        return np.sort(lambdas)[::-1]
    if method == "eig":
        product = r @ SPIN_FLIP @ r.conj() @ SPIN_FLIP
        evals, evecs = scipy.linalg.eig(product)
        residual = float(np.max(np.linalg.norm(product @ evecs - evecs * evals, axis=0)))
        if residual > EIG_RESIDUAL_TOL:
            raise NumericalError(f"eigen-solve residual {residual:.3e} exceeds {EIG_RESIDUAL_TOL}")
        return np.sort(np.sqrt(np.abs(evals.real)))[::-1]
    raise DomainError(f"unknown method {method!r}")


def concurrence(rho: StateLike, method: Literal["svd", "eig"] = "svd") -> float:
    """C = max(0, λ₁ − λ₂ − λ₃ − λ₄), clamped to [0, 1]."""
    lam = wootters_lambdas(rho, method)
    c = lam[0] - lam[1] - lam[2] - lam[3]
    return float(min(max(c, 0.0), 1.0))


def purity(rho: StateLike) -> float:
    """Tr ρ²."""
    r = _as_state(rho).entries
    return float(np.real(np.trace(r @ r)))
