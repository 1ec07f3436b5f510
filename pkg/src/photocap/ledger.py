"""Per-step energy records shared by both engines.

A :class:`Ledger` stores its entries column-wise in read-only numpy
arrays so that runs with millions of steps stay cheap; individual
:class:`LedgerEntry` values are materialised on access.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

from .quantized import HalfQuantum

COLUMNS = (
    "n_before",
    "n_after",
    "emitted",
    "photon_energy",
    "field_work",
    "k0_residual",
    "ke_delivered",
    "cumulative_field_work",
)

_DTYPES = {
    "n_before": np.int64,
    "n_after": np.int64,
    "emitted": np.bool_,
    "photon_energy": np.float64,
    "field_work": np.int64,
    "k0_residual": np.float64,
    "ke_delivered": np.float64,
    "cumulative_field_work": np.int64,
}

#: run finished: cell discharged, or twin pair reached equilibrium
COMPLETE = "complete"
#: photon source ran dry before the cell was discharged
EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class LedgerEntry:
    step: int
    n_before: int
    n_after: int
    photon_energy: float
    emitted: bool
    work_function_cost: float
    k0_residual: float
    field_work: HalfQuantum
    ke_delivered: Union[int, float]
    cumulative_field_work: HalfQuantum


class Ledger:
    """Ordered record of one run.

    :param scenario: ``"single"`` or ``"twin"``
    :param initial_state: state before the first entry
    :param final_state: state after the last entry
    :param columns: mapping of every name in :data:`COLUMNS` to a 1-d array
    :param status: :data:`COMPLETE` or :data:`EXHAUSTED`

    For twin runs ``n_before``/``n_after`` track the donor plate.
    """

    __slots__ = ("scenario", "initial_state", "final_state", "status", "_cols", "_exact")

    def __init__(self, scenario, initial_state, final_state, columns, status=COMPLETE):
        missing = set(COLUMNS) - set(columns)
        if missing:
            raise ValueError(f"missing ledger columns: {sorted(missing)}")
        cols = {}
        size = None
        for name in COLUMNS:
            arr = np.array(columns[name], dtype=_DTYPES[name], copy=True)
            if arr.ndim != 1:
                raise ValueError(f"column {name} must be one-dimensional")
            if size is None:
                size = arr.shape[0]
            elif arr.shape[0] != size:
                raise ValueError(f"column {name} has length {arr.shape[0]}, expected {size}")
            arr.flags.writeable = False
            cols[name] = arr
        self.scenario = scenario
        self.initial_state = initial_state
        self.final_state = final_state
        self.status = status
        self._cols = cols
        self._exact = not np.any(cols["k0_residual"])

    def column(self, name: str) -> np.ndarray:
        return self._cols[name]

    @property
    def exact(self) -> bool:
        """True when no entry carries residual photon energy, so every energy is an integer."""
        return self._exact

    @property
    def complete(self) -> bool:
        return self.status == COMPLETE

    def __len__(self) -> int:
        return self._cols["n_before"].shape[0]

    def __getitem__(self, i: int) -> LedgerEntry:
        size = len(self)
        if i < 0:
            i += size
        if not 0 <= i < size:
            raise IndexError("ledger index out of range")
        c = self._cols
        emitted = bool(c["emitted"][i])
        work = int(c["field_work"][i])
        ke = work if self.exact else float(c["ke_delivered"][i])
        return LedgerEntry(
            step=i + 1,
            n_before=int(c["n_before"][i]),
            n_after=int(c["n_after"][i]),
            photon_energy=float(c["photon_energy"][i]),
            emitted=emitted,
            work_function_cost=1.0 if emitted else 0.0,
            k0_residual=float(c["k0_residual"][i]),
            field_work=work,
            ke_delivered=ke,
            cumulative_field_work=int(c["cumulative_field_work"][i]),
        )

    def __iter__(self) -> Iterator[LedgerEntry]:
        for i in range(len(self)):
            yield self[i]

    @property
    def entries(self) -> list[LedgerEntry]:
        return list(self)

    @property
    def emissions(self) -> int:
        return int(np.count_nonzero(self._cols["emitted"]))

    @property
    def total_field_work(self) -> HalfQuantum:
        return int(self._cols["field_work"].sum(dtype=np.int64))

    @property
    def cumulative_field_work(self) -> HalfQuantum:
        cum = self._cols["cumulative_field_work"]
        return int(cum[-1]) if cum.size else 0

    def __eq__(self, other):
        if not isinstance(other, Ledger):
            return NotImplemented
        return (
            self.scenario == other.scenario
            and self.initial_state == other.initial_state
            and self.final_state == other.final_state
            and self.status == other.status
            and all(
                self._cols[k].tobytes() == other._cols[k].tobytes() for k in COLUMNS
            )
        )

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"Ledger(scenario={self.scenario!r}, entries={len(self)}, "
            f"initial={self.initial_state!r}, final={self.final_state!r}, "
            f"status={self.status!r})"
        )


def empty_columns() -> dict:
    return {name: np.empty(0, dtype=_DTYPES[name]) for name in COLUMNS}


def single_entry(step, n_before, n_after, photon_energy, emitted, field_work, k0, cumulative) -> LedgerEntry:
    return LedgerEntry(
        step=step,
        n_before=n_before,
        n_after=n_after,
        photon_energy=photon_energy,
        emitted=emitted,
        work_function_cost=1.0 if emitted else 0.0,
        k0_residual=k0,
        field_work=field_work,
        ke_delivered=field_work if k0 == 0.0 else field_work + k0,
        cumulative_field_work=cumulative,
    )


__all__ = ["COLUMNS", "COMPLETE", "EXHAUSTED", "Ledger", "LedgerEntry"]
