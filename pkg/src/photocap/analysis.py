"""Continuum-approximation error tables and the conservation audit."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from .ledger import Ledger
from .quantized import (
    HalfQuantum,
    CellState,
    check_count,
    field_energy,
    total_work_exact,
    total_work_paper_series,
)
from .twin import TwinState

#: relative tolerance of the balance when residual photon energy is present
GENERAL_RTOL = 1e-12


class AuditError(ValueError):
    """The ledger violates an entry invariant; ``step`` is the first bad entry (1-based)."""

    def __init__(self, step: int, reason: str):
        super().__init__(f"entry {step}: {reason}")
        self.step = step
        self.reason = reason


@dataclass(frozen=True)
class ComparisonRow:
    N: int
    exact_total: HalfQuantum
    paper_series_total: HalfQuantum
    qv_half: HalfQuantum
    abs_error: HalfQuantum
    rel_error_exact: Fraction

    @property
    def rel_error(self) -> float:
        return float(self.rel_error_exact)


def comparison_row(N: int) -> ComparisonRow:
    N = check_count(N, "N")
    if N == 0:
        raise ValueError("comparison needs N >= 1")
    exact = total_work_exact(N)
    series = total_work_paper_series(N)
    # QV/2 = (N e)(N v)/2 = N**2 e v / 2 = N**2 half-quanta
    qv_half = N * N
    return ComparisonRow(N, exact, series, qv_half, series - exact, Fraction(series - exact, exact))


def sweep_comparison(N_values: Iterable[int]) -> list[ComparisonRow]:
    return [comparison_row(N) for N in N_values]


@dataclass(frozen=True)
class ConservationReport:
    scenario: str
    E_in: HalfQuantum
    E_fin: HalfQuantum
    total_ke: Union[int, float]
    total_k0: float
    balanced: bool

    @property
    def loss(self) -> HalfQuantum:
        """Drop in stored field energy over the run."""
        return self.E_in - self.E_fin

    @property
    def loss_fraction(self) -> Fraction:
        if self.E_in == 0:
            return Fraction(0)
        return Fraction(self.loss, self.E_in)


def _state_energy(state) -> HalfQuantum:
    if isinstance(state, TwinState):
        return field_energy(state.n1) + field_energy(state.n2)
    if isinstance(state, CellState):
        return field_energy(state.cathode_excess)
    raise TypeError(f"unsupported state {type(state).__name__}")


def _first_bad(mask: np.ndarray) -> int | None:
    if mask.size and mask.any():
        return int(np.argmax(mask)) + 1
    return None


def _donor(state) -> int:
    return state.n1 if isinstance(state, TwinState) else state.cathode_excess


def _check_entries(ledger: Ledger) -> None:
    n_before = ledger.column("n_before")
    n_after = ledger.column("n_after")
    emitted = ledger.column("emitted")
    work = ledger.column("field_work")
    k0 = ledger.column("k0_residual")
    ke = ledger.column("ke_delivered")
    cum = ledger.column("cumulative_field_work")
    energy = ledger.column("photon_energy")

    start = _donor(ledger.initial_state)
    chain = np.concatenate(([start], n_after[:-1])) if n_after.size else n_after
    problems = [
        (n_before != chain, "n_before does not continue the previous state"),
        (n_after < 0, "negative electron count"),
        (emitted & (n_after != n_before - 1), "emission must remove exactly one electron"),
        (~emitted & (n_after != n_before), "non-emitting entry changed the state"),
        (emitted != (energy >= 1.0), "emission flag disagrees with photon threshold"),
        (~emitted & ((work != 0) | (k0 != 0.0)), "non-emitting entry carries energy"),
        (k0 < 0.0, "negative residual kinetic energy"),
        (ke < 0.0, "negative delivered kinetic energy"),
        (ke != work.astype(np.float64) + k0, "ke_delivered != field_work + k0_residual"),
        (cum != np.cumsum(work, dtype=np.int64), "cumulative_field_work is not the running sum"),
    ]
    if ledger.scenario == "twin":
        total = ledger.initial_state.charge
        expected = 2 * (n_before - (total - n_before) - 1)
        problems.append((emitted & (work != expected), "field_work differs from the pair transfer work"))
        problems.append((work <= 0, "transfer released no energy"))
    else:
        problems.append((emitted & (work != 2 * n_before - 1), "field_work differs from 2n - 1"))

    bad = [(step, reason) for mask, reason in problems if (step := _first_bad(mask)) is not None]
    if bad:
        step, reason = min(bad)
        raise AuditError(step, reason)
    end = int(n_after[-1]) if n_after.size else start
    if end != _donor(ledger.final_state):
        raise AuditError(len(ledger), "last entry does not reach the final state")
    if isinstance(ledger.final_state, TwinState) and ledger.final_state.charge != ledger.initial_state.charge:
        raise AuditError(len(ledger), "charge is not conserved")


def audit(ledger: Ledger) -> ConservationReport:
    """Recompute the energy balance of a ledger from its states.

    :raises AuditError: naming the first entry that breaks an invariant
    """
    _check_entries(ledger)
    E_in = _state_energy(ledger.initial_state)
    E_fin = _state_energy(ledger.final_state)
    if ledger.exact:
        total_ke = int(ledger.column("field_work").sum(dtype=np.int64))
        balanced = E_in == E_fin + total_ke and ledger.cumulative_field_work == E_in - E_fin
        return ConservationReport(ledger.scenario, E_in, E_fin, total_ke, 0.0, balanced)
    total_ke = math.fsum(ledger.column("ke_delivered"))
    total_k0 = math.fsum(ledger.column("k0_residual"))
    lhs, rhs = E_in + total_k0, E_fin + total_ke
    scale = max(abs(lhs), abs(rhs), 1.0)
    balanced = abs(lhs - rhs) <= GENERAL_RTOL * scale and ledger.cumulative_field_work == E_in - E_fin
    return ConservationReport(ledger.scenario, E_in, E_fin, total_ke, total_k0, balanced)
