"""Open linear resistive networks: Laplacians, Kron reduction, boundary problems,
prescribed-power flow, conductance identification and RLC phasor analysis."""

from .errors import (
    InputError,
    InvalidLaplacian,
    KirchhoffError,
    MissingFrequency,
    NoConvergence,
    NumericalError,
    RankDeficient,
    ResonantInterior,
    SingularInterior,
    ZeroPivot,
)
from .laplacian import (
    TAU_STRUCT,
    CircuitState,
    Laplacian,
    build_laplacian,
    dissipated_power,
    laplacian_to_network,
    network_laplacian,
    power_balance,
    validate_laplacian,
)
from .netgraph import (
    Capacitor,
    Edge,
    Inductor,
    Network,
    Partition,
    Resistor,
    flip_edges,
    incidence,
    is_connected,
)
from .reduction import BlockLaplacian, effective_resistance, eliminate_one, kron_reduce, quotient_check

__version__ = "0.1.0"

__all__ = [
    "InputError",
    "InvalidLaplacian",
    "KirchhoffError",
    "MissingFrequency",
    "NoConvergence",
    "NumericalError",
    "RankDeficient",
    "ResonantInterior",
    "SingularInterior",
    "ZeroPivot",
    "TAU_STRUCT",
    "CircuitState",
    "Laplacian",
    "build_laplacian",
    "dissipated_power",
    "laplacian_to_network",
    "network_laplacian",
    "power_balance",
    "validate_laplacian",
    "Capacitor",
    "Edge",
    "Inductor",
    "Network",
    "Partition",
    "Resistor",
    "flip_edges",
    "incidence",
    "is_connected",
    "BlockLaplacian",
    "effective_resistance",
    "eliminate_one",
    "kron_reduce",
    "quotient_check",
]
