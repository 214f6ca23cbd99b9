"""Thermomajorization curves and the feasibility of diagonal transitions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch
from .quantum_core import GibbsContext, PopulationVector, as_probs

FEASIBILITY_TOL = 1e-10
ORACLE_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class ThermoCurve:
    """Concave piecewise-linear curve given by its vertices.

    ``points[:, 0]`` is the cumulative Boltzmann weight (ending at Z) and
    ``points[:, 1]`` the cumulative probability (ending at 1), in beta-order.
    ``order`` lists the level indices in the order they were accumulated.
    """

    points: np.ndarray
    order: tuple[int, ...]

    def __call__(self, x: float | np.ndarray) -> np.ndarray:
        return np.interp(x, self.points[:, 0], self.points[:, 1])

    @property
    def vertices(self) -> list[tuple[float, float]]:
        return [(float(x), float(y)) for x, y in self.points]


def _check_dims(ctx: GibbsContext, *vectors: np.ndarray) -> None:
    for v in vectors:
        if v.size != ctx.dim:
            raise DimensionMismatch(f"population has {v.size} entries, context has {ctx.dim} levels")


def beta_order(probs: np.ndarray, ctx: GibbsContext) -> np.ndarray:
    """Level indices sorted by p_i exp(beta E_i) descending, lower energy first on ties."""
    e = np.asarray(ctx.energies)
    slope = probs * np.exp(ctx.beta * (e - e.min()))
    # lexsort uses the last key as the primary one
    return np.lexsort((e, -slope))


def build_curve(pop: PopulationVector | Sequence[float], ctx: GibbsContext) -> ThermoCurve:
    probs = as_probs(pop)
    _check_dims(ctx, probs)
    order = beta_order(probs, ctx)
    weights = ctx.boltzmann_weights()[order]
    xs = np.concatenate(([0.0], np.cumsum(weights)))
    ys = np.concatenate(([0.0], np.cumsum(probs[order])))
    return ThermoCurve(points=np.column_stack((xs, ys)), order=tuple(int(i) for i in order))


def curve_dominates(upper: ThermoCurve, lower: ThermoCurve, tol: float = FEASIBILITY_TOL) -> bool:
    """Whether ``upper`` lies on or above ``lower`` everywhere.

    Both curves are piecewise linear, so checking the merged breakpoints is
    enough.
    """
    xs = np.union1d(upper.points[:, 0], lower.points[:, 0])
    return bool(np.all(upper(xs) >= lower(xs) - tol))


def thermomajorizes(
    a: PopulationVector | Sequence[float],
    b: PopulationVector | Sequence[float],
    ctx: GibbsContext,
) -> bool:
    """True iff some thermal operation maps populations ``a`` to ``b``."""
    pa, pb = as_probs(a), as_probs(b)
    _check_dims(ctx, pa, pb)
    return curve_dominates(build_curve(pa, ctx), build_curve(pb, ctx))


@lru_cache(maxsize=4)
def _lambda_grid(grid: int) -> np.ndarray:
    lams = np.linspace(0.0, 1.0, grid)
    lams.setflags(write=False)
    return lams


def qubit_feasibility_oracle(
    a: PopulationVector | Sequence[float],
    b: PopulationVector | Sequence[float],
    ctx: GibbsContext,
    grid: int,
) -> bool:
    """Brute-force qubit check: scan lam over a uniform grid on [0, 1].

    Every qubit Gibbs-stochastic matrix is G(E, beta, lam) for some lam, so a
    fine enough grid decides feasibility up to ``ORACLE_TOL`` per component.
    """
    pa, pb = as_probs(a), as_probs(b)
    _check_dims(ctx, pa, pb)
    if ctx.dim != 2:
        raise DimensionMismatch(f"qubit oracle needs 2 levels, got {ctx.dim}")
    if grid < 2:
        raise ValueError("grid must have at least two points")
    e = np.asarray(ctx.energies)
    idx = np.argsort(e, kind="stable")  # ground level first
    pa, pb = pa[idx], pb[idx]
    boltz = np.exp(-ctx.beta * (e[idx][1] - e[idx][0]))
    # G(lam) a = a + lam * (swap - I) a ; only the ground component is independent
    delta = -boltz * pa[0] + pa[1]
    shift = _lambda_grid(grid) * delta
    hit = (np.abs(shift + (pa[0] - pb[0])) <= ORACLE_TOL) & (np.abs((pa[1] - pb[1]) - shift) <= ORACLE_TOL)
    return bool(hit.any())
