"""Two-level thermal operations G(E, beta, lambda) and their Kraus form.

Energies are given as the dimensionless product beta*E, so every quantity here
is evaluated at beta = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, ValidationError
from .quantum_core import DensityMatrix, GibbsContext


@dataclass(frozen=True)
class ThermalOpParams:
    """Energy gap (beta*E >= 0) and bath coupling lam in [0, 1]."""

    energy_gap: float
    lam: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.energy_gap) or self.energy_gap < 0:
            raise ValidationError(f"energy_gap must be finite and >= 0, got {self.energy_gap}")
        if not 0.0 <= self.lam <= 1.0:
            raise ValidationError(f"lambda must lie in [0, 1], got {self.lam}")

    @property
    def boltzmann_factor(self) -> float:
        return float(np.exp(-self.energy_gap))

    @property
    def partition_function(self) -> float:
        return 1.0 + self.boltzmann_factor

    @property
    def context(self) -> GibbsContext:
        return GibbsContext(beta=1.0, energies=(0.0, self.energy_gap))

    @classmethod
    def equilibrium(cls, energy_gap: float) -> "ThermalOpParams":
        """The fully thermalising operation, lam = 1/Z."""
        return cls(energy_gap, 1.0 / (1.0 + np.exp(-energy_gap)))


def gibbs_stochastic_matrix(p: ThermalOpParams) -> np.ndarray:
    """Column-stochastic G with G[x', x] the probability of x -> x'."""
    e = p.boltzmann_factor
    swap = np.array([[1.0 - e, 1.0], [e, 0.0]])
    return (1.0 - p.lam) * np.eye(2) + p.lam * swap


def kraus_operators(p: ThermalOpParams) -> list[np.ndarray]:
    """Kraus operators [k_0, k_1, k_-1], one per Bohr frequency 0, +E, -E.

    k_-1 carries sqrt(G[0, 1]); with sqrt(G[0, 0]) the set would not be
    trace preserving except at lam = 1/Z.
    """
    g = gibbs_stochastic_matrix(p)
    k0 = np.diag([np.sqrt(g[0, 0]), np.sqrt(g[1, 1])]).astype(complex)
    k_up = np.zeros((2, 2), dtype=complex)
    k_up[1, 0] = np.sqrt(g[1, 0])
    k_down = np.zeros((2, 2), dtype=complex)
    k_down[0, 1] = np.sqrt(g[0, 1])
    return [k0, k_up, k_down]


def apply_kraus(kraus: Sequence[np.ndarray], rho: np.ndarray) -> np.ndarray:
    return sum(k @ rho @ k.conj().T for k in kraus)


def apply_thermal_op(p: ThermalOpParams, rho: DensityMatrix) -> DensityMatrix:
    if rho.dim != 2:
        raise DimensionMismatch(f"thermal operation acts on a qubit, got dim {rho.dim}")
    return DensityMatrix(apply_kraus(kraus_operators(p), rho.matrix))


def check_covariance(
    p: ThermalOpParams,
    rho: DensityMatrix,
    t: float,
    kraus: Sequence[np.ndarray] | None = None,
    atol: float = 1e-9,
) -> bool:
    """Whether the channel commutes with time translation by t.

    ``kraus`` overrides the operators derived from ``p``; it exists so that
    non-covariant maps can be fed through the same check.
    """
    if rho.dim != 2:
        raise DimensionMismatch(f"expected a qubit state, got dim {rho.dim}")
    ops = kraus_operators(p) if kraus is None else list(kraus)
    u = np.diag(np.exp(-1j * np.array([0.0, p.energy_gap]) * t))
    lhs = apply_kraus(ops, u @ rho.matrix @ u.conj().T)
    rhs = u @ apply_kraus(ops, rho.matrix) @ u.conj().T
    return bool(np.max(np.abs(lhs - rhs)) <= atol)


def is_markovian(p: ThermalOpParams) -> bool:
    """lam <= 1/Z, boundary included.

    Compared as lam * e^{-beta E} <= 1 - lam with a relative tolerance, which
    keeps lam = 1 non-Markovian until 1/Z itself rounds to 1.
    """
    e = p.boltzmann_factor
    return (1.0 - p.lam) >= p.lam * e * (1.0 - 1e-9) - 1e-15
