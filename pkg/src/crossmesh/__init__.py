"""Cycle-accurate simulator for the cross-wired (2DC) mesh array for matrix
multiplication, with a standard skewed-mesh baseline and an exact efficiency
model for pipelined batches."""

from .analysis import (
    BatchMetrics,
    ComparisonReport,
    IntegrityError,
    average_steps,
    compare_report,
    efficiency_formula,
    efficiency_measured,
    idle_cells,
    total_cell_steps,
)
from .baseline import StandardMeshState, run_standard
from .engine import (
    CompletionEvent,
    MeshState,
    RunResult,
    SimulationFault,
    TraceRecord,
    discovered_assignment,
    run_batch,
    run_single,
    snapshot_symbolic,
    top_feed,
    write_trace,
)
from .matrix import Matrix, SymbolicSum, matmul_oracle, symbolic_operands
from .topology import (
    ArrivalOrderMatrix,
    AssignmentTable,
    SymmetryReport,
    WiringPattern,
    arrival_order,
    assignment_table,
    check_symmetries,
    pattern_perm,
    transition,
)

__version__ = "0.1.0"
