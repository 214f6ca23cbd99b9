"""Density matrices, Gibbs states and entropic quantities.

All logarithms are natural (nats) and energies are measured with k_B = 1.
Matrix functions go through the Hermitian eigendecomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, SupportViolation, ValidationError

HERMITIAN_TOL = 1e-9
TRACE_TOL = 1e-9
PSD_TOL = 1e-9
# eigenvalues of sigma below this are treated as outside its support
SUPPORT_TOL = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise ValidationError(f"density matrix must be square, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
            raise ValidationError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL:
            raise ValidationError(f"trace is {np.trace(m).real}, expected 1")
        if np.min(np.linalg.eigvalsh(m)) < -PSD_TOL:
            raise ValidationError("density matrix has a negative eigenvalue")
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_pure(cls, amplitudes: Sequence[complex]) -> "DensityMatrix":
        psi = np.asarray(amplitudes, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))

    @classmethod
    def from_populations(cls, probs: Sequence[float]) -> "DensityMatrix":
        return cls(np.diag(np.asarray(probs, dtype=float)))

    def populations(self) -> "PopulationVector":
        return PopulationVector(np.diag(self.matrix).real)

    def allclose(self, other: "DensityMatrix", atol: float = 1e-9) -> bool:
        return self.dim == other.dim and bool(np.allclose(self.matrix, other.matrix, rtol=0, atol=atol))


@dataclass(frozen=True, eq=False)
class GibbsContext:
    """Inverse temperature plus the energy levels of a Hamiltonian diagonal in the computational basis."""

    beta: float
    energies: tuple[float, ...]

    def __post_init__(self) -> None:
        energies = tuple(float(e) for e in np.atleast_1d(np.asarray(self.energies, dtype=float)))
        if not (np.isfinite(self.beta) and self.beta > 0):
            raise ValidationError(f"beta must be positive and finite, got {self.beta}")
        if len(energies) == 0 or not all(np.isfinite(energies)):
            raise ValidationError("energies must be a nonempty list of finite reals")
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "energies", energies)

    @property
    def dim(self) -> int:
        return len(self.energies)

    def boltzmann_weights(self) -> np.ndarray:
        """Unnormalised weights exp(-beta * E_x)."""
        return np.exp(-self.beta * np.asarray(self.energies))

    @property
    def partition_function(self) -> float:
        return float(np.sum(self.boltzmann_weights()))

    def gibbs_populations(self) -> np.ndarray:
        # shifted by the ground energy so large offsets cannot overflow
        e = np.asarray(self.energies)
        w = np.exp(-self.beta * (e - e.min()))
        return w / w.sum()


class PopulationVector:
    """Probability vector over energy levels.

    Entries within 1e-12 of [0, 1] are clamped; the sum must be 1 within 1e-9.
    """

    __slots__ = ("_probs",)

    def __init__(self, probs: Sequence[float]):
        p = np.asarray(probs, dtype=float).reshape(-1)
        if p.size == 0 or not np.all(np.isfinite(p)):
            raise ValidationError("population vector must be nonempty and finite")
        if np.any(p < -1e-12) or np.any(p > 1 + 1e-12):
            raise ValidationError(f"population entries out of range: {p}")
        if abs(p.sum() - 1.0) > 1e-9:
            raise ValidationError(f"populations sum to {p.sum()}, expected 1")
        self._probs = _frozen(np.clip(p, 0.0, 1.0))

    @property
    def probs(self) -> np.ndarray:
        return self._probs

    @property
    def dim(self) -> int:
        return self._probs.size

    def __array__(self, dtype=None, copy=None):
        return np.array(self._probs, dtype=dtype)

    def __len__(self) -> int:
        return self._probs.size

    def __repr__(self) -> str:
        return f"PopulationVector({self._probs.tolist()})"


def as_probs(x: PopulationVector | Sequence[float]) -> np.ndarray:
    if isinstance(x, PopulationVector):
        return x.probs
    return PopulationVector(x).probs


def gibbs_state(ctx: GibbsContext) -> DensityMatrix:
    """Thermal state exp(-beta H)/Z; Z is available as ``ctx.partition_function``."""
    return DensityMatrix.from_populations(ctx.gibbs_populations())


def dephase(rho: DensityMatrix) -> DensityMatrix:
    """Remove all coherence in the energy eigenbasis."""
    return DensityMatrix(np.diag(np.diag(rho.matrix)))


def _clamped_eigvalsh(m: np.ndarray) -> np.ndarray:
    w = np.linalg.eigvalsh(m)
    return np.where((w < 0) & (w >= -PSD_TOL), 0.0, w)


def _entropy_from_spectrum(w: np.ndarray) -> float:
    w = w[w > 0]
    return float(-np.sum(w * np.log(w)))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    return max(_entropy_from_spectrum(_clamped_eigvalsh(rho.matrix)), 0.0)


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Quantum relative entropy Tr[rho (ln rho - ln sigma)].

    Raises SupportViolation when rho has weight on the kernel of sigma.
    """
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dimensions differ: {rho.dim} vs {sigma.dim}")
    w, v = np.linalg.eigh(sigma.matrix)
    on_support = w > SUPPORT_TOL
    kernel = v[:, ~on_support]
    if kernel.size:
        leak = np.real(np.einsum("ik,ij,jk->", kernel.conj(), rho.matrix, kernel))
        if leak > 1e-10:
            raise SupportViolation(f"rho has weight {leak:.3g} outside the support of sigma")
    log_sigma = (v[:, on_support] * np.log(w[on_support])) @ v[:, on_support].conj().T
    cross = float(np.real(np.trace(rho.matrix @ log_sigma)))
    value = -von_neumann_entropy(rho) - cross
    return max(value, 0.0)


def relative_entropy_of_coherence(rho: DensityMatrix) -> float:
    """S(D(rho)) - S(rho)."""
    return max(von_neumann_entropy(dephase(rho)) - von_neumann_entropy(rho), 0.0)


def trace_distance(a: DensityMatrix | np.ndarray, b: DensityMatrix | np.ndarray) -> float:
    ma = a.matrix if isinstance(a, DensityMatrix) else np.asarray(a)
    mb = b.matrix if isinstance(b, DensityMatrix) else np.asarray(b)
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(ma - mb))))
