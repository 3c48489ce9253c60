"""T-count and T-depth optimization of Clifford+T circuits."""

from .ir import Circuit, Gate, Metrics, expand, gate, metrics, parse_qc, write_qc
from .driver import AncillaPolicy, OptimizeResult, optimize
from .phasepoly import CircuitSummary, summarize

__all__ = [
    "AncillaPolicy",
    "Circuit",
    "CircuitSummary",
    "Gate",
    "Metrics",
    "OptimizeResult",
    "expand",
    "gate",
    "metrics",
    "optimize",
    "parse_qc",
    "summarize",
    "write_qc",
]

__version__ = "0.1.0"
