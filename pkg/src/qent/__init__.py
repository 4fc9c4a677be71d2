"""Static entanglement analysis for quantum circuits.

Parses a small circuit language, over-approximates which qubits are
entangled (and which are known to collapse together) by abstract
interpretation, and ships an exact statevector oracle for checking the
analysis against ground truth on small circuits.
"""

from .analyzer import AnalysisMode, TraceStep, analyze, analyze_traced, apply_cx_at, apply_gate
from .circuit import (
    CircuitAst,
    CircuitSyntaxError,
    Gate,
    GateKind,
    Seq,
    Tensor,
    ValidationError,
    height,
    iter_gates,
    parse_circuit,
    unparse,
    validate,
)
from .domain import AbstractState, BasisLabel, Partition, init_state
from .oracle import (
    ConcreteBasis,
    DenseState,
    SoundnessReport,
    basis_oracle,
    check_soundness,
    finest_separable_partition,
    levels_oracle,
    simulate,
)

__all__ = [
    "AbstractState",
    "AnalysisMode",
    "BasisLabel",
    "CircuitAst",
    "CircuitSyntaxError",
    "ConcreteBasis",
    "DenseState",
    "Gate",
    "GateKind",
    "Partition",
    "Seq",
    "SoundnessReport",
    "Tensor",
    "TraceStep",
    "ValidationError",
    "analyze",
    "analyze_traced",
    "apply_cx_at",
    "apply_gate",
    "basis_oracle",
    "check_soundness",
    "finest_separable_partition",
    "height",
    "init_state",
    "iter_gates",
    "levels_oracle",
    "parse_circuit",
    "simulate",
    "unparse",
    "validate",
]
