"""Time-optimal multi-qubit gate synthesis for coupled-qubit systems.

Piecewise-constant control pulses are optimized with a quasi-Newton
gradient ascent on the squared trace fidelity, with sequential gate
decompositions as baselines and entanglement diagnostics on top.
"""

from .baselines import (
    GateSequence,
    GateStep,
    coupling_unitary,
    entanglement_schedule,
    local_decomposition_check,
    rotation,
    sequential_gate,
)
from .config import ConfigError, RunConfig, load_config, parse_config_text
from .grape import (
    ControlGrid,
    OptimizationResult,
    OptimizeOptions,
    fidelity_sq,
    gradient,
    optimize,
    propagate,
    rise_envelope_values,
    zero_grid,
)
from .linalg import log_negativity, partial_trace, partial_transpose
from .models import (
    GATE_NAMES,
    ControlModel,
    GateTarget,
    build_model,
    gate_target,
)
from .search import (
    MultiStartProtocol,
    SweepCurve,
    multistart,
    optimized_entanglement,
    random_grid,
    sweep_min_time,
)

__all__ = [
    "GATE_NAMES",
    "ConfigError",
    "ControlGrid",
    "ControlModel",
    "GateSequence",
    "GateStep",
    "GateTarget",
    "MultiStartProtocol",
    "OptimizationResult",
    "OptimizeOptions",
    "RunConfig",
    "SweepCurve",
    "build_model",
    "coupling_unitary",
    "entanglement_schedule",
    "fidelity_sq",
    "gate_target",
    "gradient",
    "load_config",
    "local_decomposition_check",
    "log_negativity",
    "multistart",
    "optimize",
    "optimized_entanglement",
    "parse_config_text",
    "partial_trace",
    "partial_transpose",
    "propagate",
    "random_grid",
    "rise_envelope_values",
    "rotation",
    "sequential_gate",
    "sweep_min_time",
    "zero_grid",
]

__version__ = "0.1.0"
