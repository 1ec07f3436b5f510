"""Discrete two-capacitor engine.

Two identical capacitors, the donor holding ``n1`` excess electrons and
the receiver ``n2``.  Electrons cross one at a time; each crossing is
allowed only while it releases a strictly positive amount of field
energy, which the electron carries as kinetic energy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .ledger import COMPLETE, Ledger, LedgerEntry, single_entry
from .photocell import MAX_ELECTRONS
from .quantized import HalfQuantum, _check_capacitance, check_count, field_energy


@dataclass(frozen=True)
class TwinState:
    n1: int
    n2: int
    capacitance: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "n1", check_count(self.n1, "n1"))
        object.__setattr__(self, "n2", check_count(self.n2, "n2"))
        object.__setattr__(self, "capacitance", _check_capacitance(self.capacitance))

    @property
    def charge(self) -> int:
        return self.n1 + self.n2

    @property
    def field_energy(self) -> HalfQuantum:
        return field_energy(self.n1) + field_energy(self.n2)


def pair_transfer_work(n1: int, n2: int) -> HalfQuantum:
    """Field energy released by moving one electron from the donor to the receiver.

    ``2 (n1 - n2 - 1)`` half-quanta; negative values mean the move is uphill.
    """
    n1 = check_count(n1, "n1")
    n2 = check_count(n2, "n2")
    if n1 == 0:
        raise ValueError("donor plate has no electron to transfer")
    return field_energy(n1) + field_energy(n2) - field_energy(n1 - 1) - field_energy(n2 + 1)


def pair_step(
    state: TwinState, *, index: int = 1, cumulative: int = 0
) -> Optional[tuple[TwinState, LedgerEntry]]:
    """Move one electron if that releases energy; return ``None`` at equilibrium."""
    if state.n1 == 0:
        return None
    work = pair_transfer_work(state.n1, state.n2)
    if work <= 0:
        return None
    entry = single_entry(index, state.n1, state.n1 - 1, 1.0, True, work, 0.0, cumulative + work)
    return TwinState(state.n1 - 1, state.n2 + 1, state.capacitance), entry


def run_pair_to_equilibrium(initial: TwinState) -> Ledger:
    """Transfer electrons until no further crossing releases energy."""
    if max(initial.n1, initial.n2) > MAX_ELECTRONS:
        raise ValueError(f"at most {MAX_ELECTRONS} electrons per plate are supported")
    n1_before, work, cum = kernels.twin_run(initial.n1, initial.n2)
    steps = n1_before.shape[0]
    columns = {
        "n_before": n1_before,
        "n_after": n1_before - 1,
        "emitted": np.ones(steps, dtype=np.bool_),
        "photon_energy": np.ones(steps, dtype=np.float64),
        "field_work": work,
        "k0_residual": np.zeros(steps, dtype=np.float64),
        "ke_delivered": work.astype(np.float64),
        "cumulative_field_work": cum,
    }
    final = TwinState(initial.n1 - steps, initial.n2 + steps, initial.capacitance)
    return Ledger("twin", initial, final, columns, COMPLETE)
