"""Quantum-discrete capacitor discharge with an exact integer energy ledger."""

from .analysis import AuditError, ComparisonRow, ConservationReport, audit, sweep_comparison
from .kernels import BACKEND
from .ledger import Ledger, LedgerEntry
from .photocell import (
    GuardResult,
    Photon,
    PhotonSource,
    TerminalStateError,
    emission_check,
    idealization_guard,
    run_to_discharge,
    step,
)
from .quantized import (
    CellState,
    ElementaryVoltage,
    HalfQuantum,
    field_energy,
    total_work_exact,
    total_work_paper_closed,
    total_work_paper_series,
    transfer_work_exact,
    transfer_work_paper_approx,
    voltage,
)
from .twin import TwinState, pair_step, pair_transfer_work, run_pair_to_equilibrium

__version__ = "0.1.0"
