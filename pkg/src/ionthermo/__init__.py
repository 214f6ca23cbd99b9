"""Thermal-operation model of ion transport through membrane proteins."""

from .errors import (
    ConfigError,
    DimensionMismatch,
    DomainError,
    IoError,
    IonThermoError,
    SupportViolation,
    TruncationError,
    ValidationError,
)
from .monotones import (
    DEFAULT_ALPHAS,
    asymmetry_alpha1,
    free_energy,
    renyi_divergence_classical,
)
from .quantum_core import (
    DensityMatrix,
    GibbsContext,
    PopulationVector,
    dephase,
    gibbs_state,
    relative_entropy,
    relative_entropy_of_coherence,
    von_neumann_entropy,
)
from .scenarios import (
    BatterySpec,
    ChannelInitialState,
    LadderReservoir,
    TransportReport,
    embed_unitary,
    mixing_unitary,
    pump_feasible,
    pump_to_channel_demo,
    run_channel,
)
from .thermal_ops import (
    ThermalOpParams,
    apply_thermal_op,
    check_covariance,
    gibbs_stochastic_matrix,
    is_markovian,
    kraus_operators,
)
from .thermomajorization import (
    ThermoCurve,
    build_curve,
    qubit_feasibility_oracle,
    thermomajorizes,
)

__version__ = "0.1.0"
