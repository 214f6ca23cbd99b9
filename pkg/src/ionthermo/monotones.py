"""Generalised free energies and the asymmetry (coherence) monotone."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, DomainError
from .quantum_core import (
    DensityMatrix,
    GibbsContext,
    PopulationVector,
    as_probs,
    dephase,
    relative_entropy,
)

DEFAULT_ALPHAS: tuple[float, ...] = (0.0, 0.5, 1.0, 2.0, math.inf)


@dataclass(frozen=True)
class AlphaGrid:
    values: tuple[float, ...] = DEFAULT_ALPHAS

    def __post_init__(self) -> None:
        vals = tuple(float(a) for a in self.values)
        if any(a < 0 or math.isnan(a) for a in vals):
            raise DomainError(f"alpha values must be >= 0, got {vals}")
        if 1.0 not in vals:
            raise DomainError("alpha grid must contain alpha = 1")
        object.__setattr__(self, "values", vals)

    def __iter__(self):
        return iter(self.values)


def renyi_divergence_classical(
    x: PopulationVector | Sequence[float],
    g: PopulationVector | Sequence[float],
    alpha: float,
) -> float:
    """Classical Renyi divergence S_alpha(x||g) in nats.

    Uses sgn(alpha)/(alpha - 1) * ln sum x^alpha g^(1-alpha), with the
    continuous limits at alpha = 0, 1 and infinity. Returns ``math.inf`` when
    x has mass where g vanishes and alpha >= 1.
    """
    if math.isnan(alpha) or alpha < 0:
        raise DomainError(f"alpha must be >= 0, got {alpha}")
    px, pg = as_probs(x), as_probs(g)
    if px.size != pg.size:
        raise DimensionMismatch(f"dimensions differ: {px.size} vs {pg.size}")

    supp = px > 0
    if alpha == 0:
        value = -math.log(pg[supp].sum()) if pg[supp].sum() > 0 else math.inf
        return max(value, 0.0)
    if np.any(pg[supp] == 0) and alpha >= 1:
        return math.inf
    xs, gs = px[supp], pg[supp]
    if alpha == 1:
        value = float(np.sum(xs * (np.log(xs) - np.log(gs))))
    elif math.isinf(alpha):
        value = float(np.log(np.max(xs / gs)))
    else:
        keep = gs > 0
        # log-sum-exp so that large alpha cannot overflow
        logs = alpha * np.log(xs[keep]) + (1.0 - alpha) * np.log(gs[keep])
        top = logs.max()
        value = (top + math.log(float(np.exp(logs - top).sum()))) / (alpha - 1.0)
    return max(value, 0.0)


def free_energy(x: PopulationVector | Sequence[float], ctx: GibbsContext, alpha: float) -> float:
    """F_alpha(x) = -(1/beta) ln Z + (1/beta) S_alpha(x || gamma)."""
    gamma = ctx.gibbs_populations()
    div = renyi_divergence_classical(x, gamma, alpha)
    return (-math.log(ctx.partition_function) + div) / ctx.beta


def asymmetry_alpha1(rho: DensityMatrix) -> float:
    """S(rho || D(rho)); equals the relative entropy of coherence."""
    return relative_entropy(rho, dephase(rho))
