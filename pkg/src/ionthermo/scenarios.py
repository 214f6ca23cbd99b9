"""Ion channel, ion pump and pump-to-channel conversion scenarios.

The transported protein is a qubit: level 0 is "first gate open" and level 1
is "second gate open". Energy gaps are dimensionless (beta*E).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, TruncationError, ValidationError
from .quantum_core import (
    DensityMatrix,
    GibbsContext,
    dephase,
    gibbs_state,
    relative_entropy,
    relative_entropy_of_coherence,
    trace_distance,
)
from .thermal_ops import ThermalOpParams, apply_thermal_op
from .thermomajorization import ThermoCurve, build_curve, curve_dominates

DECOMPOSITION_TOL = 1e-9


@dataclass(frozen=True)
class ChannelInitialState:
    """Pure state sqrt(q)|0> + sqrt(1-q)|1>."""

    q: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.q <= 1.0:
            raise ValidationError(f"q must lie in [0, 1], got {self.q}")

    def density_matrix(self) -> DensityMatrix:
        return DensityMatrix.from_pure([math.sqrt(self.q), math.sqrt(1.0 - self.q)])


@dataclass(frozen=True)
class TransportReport:
    """Yield and entropy production of one transport run, in nats.

    ``coherence`` is |<0|rho_f|1>| of the final state.
    """

    yield_Y: float
    sigma_total: float
    sigma_classical: float
    sigma_quantum: float
    coherence: float = 0.0

    def __post_init__(self) -> None:
        if not -1e-12 <= self.yield_Y <= 1 + 1e-12:
            raise ValidationError(f"yield out of range: {self.yield_Y}")
        gap = abs(self.sigma_total - self.sigma_classical - self.sigma_quantum)
        if gap > DECOMPOSITION_TOL:
            raise ValidationError(f"entropy production does not decompose (gap {gap:.3g})")


def transport_report(rho_i: DensityMatrix, rho_f: DensityMatrix, ctx: GibbsContext) -> TransportReport:
    gamma = gibbs_state(ctx)
    sigma = relative_entropy(rho_i, gamma) - relative_entropy(rho_f, gamma)
    sigma_c = relative_entropy(dephase(rho_i), gamma) - relative_entropy(dephase(rho_f), gamma)
    sigma_q = relative_entropy_of_coherence(rho_i) - relative_entropy_of_coherence(rho_f)
    return TransportReport(
        yield_Y=float(rho_f.matrix[1, 1].real),
        sigma_total=sigma,
        sigma_classical=sigma_c,
        sigma_quantum=sigma_q,
        coherence=float(abs(rho_f.matrix[0, 1])),
    )


def run_channel(q: float, p: ThermalOpParams) -> TransportReport:
    """Transport through an ion channel starting from sqrt(q)|0> + sqrt(1-q)|1>."""
    rho_i = ChannelInitialState(q).density_matrix()
    rho_f = apply_thermal_op(p, rho_i)
    return transport_report(rho_i, rho_f, p.context)


# --- pump with a two-level battery -------------------------------------------


@dataclass(frozen=True)
class BatterySpec:
    """Two-level battery H_W = w|1><1| with dimensionless gap beta*w."""

    work_gap: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.work_gap) or self.work_gap < 0:
            raise ValidationError(f"battery gap must be finite and >= 0, got {self.work_gap}")


def pump_problem(e_gap: float, battery: BatterySpec, beta: float = 1.0):
    """Joint context and initial/target populations for |0>|1>_W -> |1>|0>_W.

    The joint basis is |s>|b> at index 2*s + b with energies s*E + b*w.
    """
    if e_gap < 0:
        raise ValidationError(f"energy gap must be >= 0, got {e_gap}")
    w = battery.work_gap
    ctx = GibbsContext(beta=beta, energies=(0.0, w, e_gap, e_gap + w))
    initial = np.array([0.0, 1.0, 0.0, 0.0])
    target = np.array([0.0, 0.0, 1.0, 0.0])
    return ctx, initial, target


def pump_curves(e_gap: float, battery: BatterySpec, beta: float = 1.0) -> tuple[ThermoCurve, ThermoCurve, bool]:
    ctx, initial, target = pump_problem(e_gap, battery, beta)
    before, after = build_curve(initial, ctx), build_curve(target, ctx)
    return before, after, curve_dominates(before, after)


def pump_feasible(e_gap: float, battery: BatterySpec, beta: float = 1.0) -> bool:
    """Whether a thermal operation can drive the pump from gate 0 to gate 1 using the battery."""
    return pump_curves(e_gap, battery, beta)[2]


# --- coherent ladder reservoir -----------------------------------------------


@dataclass(frozen=True)
class LadderReservoir:
    """Equally spaced ladder of ``num_levels`` states (spacing = system gap).

    The reservoir starts in the uniform superposition of ``support_length``
    consecutive levels beginning at ``offset``.
    """

    num_levels: int
    support_length: int
    offset: int

    def __post_init__(self) -> None:
        if self.num_levels < 1 or self.support_length < 1:
            raise ValidationError("ladder size and support length must be positive")
        if self.support_length > self.num_levels:
            raise ValidationError("support length exceeds the number of ladder levels")
        if self.offset < 0 or self.offset + self.support_length > self.num_levels:
            raise ValidationError("superposition does not fit inside the ladder")

    @classmethod
    def centered(cls, support_length: int, num_levels: int | None = None) -> "LadderReservoir":
        n = 4 * support_length if num_levels is None else num_levels
        return cls(n, support_length, (n - support_length) // 2)

    def state(self) -> np.ndarray:
        alpha = np.zeros(self.num_levels, dtype=complex)
        alpha[self.offset : self.offset + self.support_length] = 1.0 / math.sqrt(self.support_length)
        return alpha


def mixing_unitary(angle: float = math.pi / 4) -> np.ndarray:
    """Real rotation mixing the two gates; pi/4 gives the equal-weight mix."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _check_unitary(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise DimensionMismatch(f"expected a 2x2 unitary, got shape {u.shape}")
    if np.max(np.abs(u.conj().T @ u - np.eye(2))) > 1e-10:
        raise ValidationError("matrix is not unitary")
    return u


def energy_conserving_embedding(u: np.ndarray, num_levels: int) -> np.ndarray:
    """V(U) on system (x) ladder, applying u_ij while moving the ladder by j - i steps.

    Total-energy shells k = i + n are two-dimensional except k = 0 and
    k = num_levels, where V acts as the identity.
    """
    n = num_levels
    v = np.zeros((2 * n, 2 * n), dtype=complex)
    v[0, 0] = 1.0
    v[2 * n - 1, 2 * n - 1] = 1.0
    for k in range(1, n):
        shell = (k, n + k - 1)  # |0>|k> and |1>|k-1>
        for a, row in enumerate(shell):
            for b, col in enumerate(shell):
                v[row, col] = u[a, b]
    return v


def embed_unitary(u: np.ndarray, reservoir: LadderReservoir, rho: DensityMatrix) -> DensityMatrix:
    """Reduced system state after V(U) acts on rho (x) sigma_R."""
    u = _check_unitary(u)
    if rho.dim != 2:
        raise DimensionMismatch(f"expected a qubit state, got dim {rho.dim}")
    reach = 1 if np.max(np.abs([u[0, 1], u[1, 0]])) > 0 else 0
    last = reservoir.offset + reservoir.support_length - 1
    if reservoir.offset < reach or last > reservoir.num_levels - 1 - reach:
        raise TruncationError(
            f"superposition over levels {reservoir.offset}..{last} is within reach of the "
            f"ladder edge (0..{reservoir.num_levels - 1})"
        )
    if reach == 0:
        # diagonal u is already energy conserving: V = u (x) 1 and the ladder is untouched
        return DensityMatrix(u @ rho.matrix @ u.conj().T)
    n = reservoir.num_levels
    alpha = reservoir.state()
    v = energy_conserving_embedding(u, n)
    joint = np.kron(rho.matrix, np.outer(alpha, alpha.conj()))
    out = (v @ joint @ v.conj().T).reshape(2, n, 2, n)
    reduced = np.einsum("injn->ij", out)
    return DensityMatrix(0.5 * (reduced + reduced.conj().T))


def covariant_part(u: np.ndarray, rho: DensityMatrix, energies: tuple[float, float] = (0.0, 1.0)) -> DensityMatrix:
    """Time-translation twirl of rho -> u rho u^dagger.

    This is what a strictly energy-conserving implementation of u achieves
    without any source of coherence.
    """
    u = _check_unitary(u)
    e = np.asarray(energies, dtype=float)
    omega = e[:, None] - e[None, :]
    out = np.zeros((2, 2), dtype=complex)
    m = rho.matrix
    for i in range(2):
        for k in range(2):
            for j in range(2):
                for l in range(2):
                    if abs(omega[i, k] - omega[j, l]) < 1e-12:
                        out[i, k] += u[i, j] * m[j, l] * np.conj(u[k, l])
    return DensityMatrix(out)


PROBES = {
    "0": DensityMatrix.from_populations([1.0, 0.0]),
    "1": DensityMatrix.from_populations([0.0, 1.0]),
    "+": DensityMatrix.from_pure([1.0, 1.0]),
}


def embedding_error(u: np.ndarray, reservoir: LadderReservoir) -> float:
    """Max trace distance between embedded and ideal outputs over the probe states."""
    u = _check_unitary(u)
    return max(
        trace_distance(embed_unitary(u, reservoir, probe).matrix, u @ probe.matrix @ u.conj().T)
        for probe in PROBES.values()
    )


def pump_to_channel_demo(
    e_gap: float,
    reservoir: LadderReservoir | None,
    u: np.ndarray | None = None,
) -> TransportReport:
    """Coherently mix the gates of a pump that has finished transport (|1><1|).

    With ``reservoir=None`` only strictly energy-conserving dynamics are
    available and no coherence can be produced.
    """
    u = mixing_unitary() if u is None else u
    rho_i = PROBES["1"]
    if reservoir is None:
        rho_f = covariant_part(u, rho_i, (0.0, e_gap))
    else:
        rho_f = embed_unitary(u, reservoir, rho_i)
    return transport_report(rho_i, rho_f, GibbsContext(beta=1.0, energies=(0.0, e_gap)))
