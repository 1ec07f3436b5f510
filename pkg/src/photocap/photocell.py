"""Single photo-cell discharge engine.

Photons hit the cathode one at a time.  A photon carrying at least one
work function of energy frees one electron; the field then accelerates it
to the anode and its kinetic energy equals the drop in field energy,
``2 n - 1`` half-quanta when ``n`` charges were present.  Photon energies
are measured in work-function units, so ``1.0`` is the ideal photon that
leaves no residual kinetic energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .ledger import COMPLETE, EXHAUSTED, Ledger, LedgerEntry, single_entry
from .quantized import CellState, ElementaryVoltage, check_count, transfer_work_exact

#: largest electron count accepted by the engines (keeps ``n**2`` inside int64)
MAX_ELECTRONS = 2**31 - 1


class TerminalStateError(ValueError):
    """An emitting photon reached a fully discharged cell."""


@dataclass(frozen=True)
class Photon:
    energy: float = 1.0

    def __post_init__(self) -> None:
        if not self.energy >= 0.0:
            raise ValueError(f"photon energy must be non-negative, got {self.energy}")


IDEAL_PHOTON = Photon(1.0)


@dataclass(frozen=True, eq=False)
class PhotonSource:
    """Deterministic photon stream.

    ``mode`` is ``"ideal"`` (every photon exactly one work function),
    ``"fixed"`` (every photon ``energy``) or ``"sequence"`` (the listed
    ``energies`` in order).  ``limit`` caps the number of photons emitted
    by the source; ``None`` means unbounded for ideal and fixed modes.
    """

    mode: str = "ideal"
    energy: float = 1.0
    energies: Sequence[float] = field(default=())
    limit: Optional[int] = None

    def __post_init__(self) -> None:
        if self.mode not in ("ideal", "fixed", "sequence"):
            raise ValueError(f"unknown photon source mode {self.mode!r}")
        if self.mode == "ideal" and self.energy != 1.0:
            raise ValueError("ideal photons carry exactly one work function")
        if not self.energy >= 0.0:
            raise ValueError(f"photon energy must be non-negative, got {self.energy}")
        energies = np.array(self.energies, dtype=np.float64, copy=True).reshape(-1)
        if not (energies >= 0.0).all():
            raise ValueError("photon energies must be non-negative")
        energies.flags.writeable = False
        object.__setattr__(self, "energies", energies)
        if self.limit is not None:
            limit = check_count(self.limit, "limit")
            if limit == 0:
                raise ValueError("photon limit must be positive")
            object.__setattr__(self, "limit", limit)

    @classmethod
    def ideal(cls, limit: Optional[int] = None) -> "PhotonSource":
        return cls("ideal", limit=limit)

    @classmethod
    def fixed(cls, energy: float, limit: Optional[int] = None) -> "PhotonSource":
        return cls("fixed", energy=float(energy), limit=limit)

    @classmethod
    def sequence(cls, energies: Sequence[float], limit: Optional[int] = None) -> "PhotonSource":
        return cls("sequence", energies=energies, limit=limit)

    def photon_energies(self, n: int) -> np.ndarray:
        """Energies of the photons needed to discharge ``n`` electrons.

        An unbounded ideal/fixed source yields exactly as many photons as can
        be used; a sub-threshold unbounded source is rejected because it would
        never finish.
        """
        if self.mode == "sequence":
            return self.energies if self.limit is None else self.energies[: self.limit]
        if self.limit is None:
            if self.energy < 1.0 and n > 0:
                raise ValueError("an unbounded sub-threshold source never discharges the cell")
            count = n
        else:
            count = min(self.limit, n) if self.energy >= 1.0 else self.limit
        return np.full(count, self.energy, dtype=np.float64)


def emission_check(photon: Photon) -> bool:
    """True when the photon can free an electron (energy of at least one work function)."""
    return photon.energy >= 1.0


def _check_scale(k0_unit_scale: float) -> float:
    k0_unit_scale = float(k0_unit_scale)
    if not (k0_unit_scale >= 0.0 and math.isfinite(k0_unit_scale)):
        raise ValueError(f"k0_unit_scale must be finite and non-negative, got {k0_unit_scale}")
    return k0_unit_scale


def step(
    state: CellState,
    photon: Photon,
    k0_unit_scale: float = 0.0,
    *,
    index: int = 1,
    cumulative: int = 0,
) -> tuple[CellState, LedgerEntry]:
    """Advance the cell by one photon.

    :param k0_unit_scale: half-quanta per work function, used to convert
        photon energy above threshold into residual kinetic energy
    :param index: step number recorded in the entry
    :param cumulative: field work accumulated before this step
    :raises TerminalStateError: if an emitting photon hits an empty cell
    """
    k0_unit_scale = _check_scale(k0_unit_scale)
    n = state.cathode_excess
    if not emission_check(photon):
        entry = single_entry(index, n, n, photon.energy, False, 0, 0.0, cumulative)
        return state, entry
    if n == 0:
        raise TerminalStateError("cell is fully discharged; no electron can cross")
    work = transfer_work_exact(n)
    k0 = (photon.energy - 1.0) * k0_unit_scale
    entry = single_entry(index, n, n - 1, photon.energy, True, work, k0, cumulative + work)
    return CellState(n - 1, state.capacitance), entry


def run_to_discharge(
    initial: CellState,
    source: PhotonSource = PhotonSource.ideal(),
    k0_unit_scale: float = 0.0,
) -> Ledger:
    """Fire photons from ``source`` until the cell is empty or the source runs dry.

    The ledger status is ``"complete"`` once the cathode is discharged and
    ``"exhausted"`` otherwise.
    """
    k0_unit_scale = _check_scale(k0_unit_scale)
    n0 = initial.cathode_excess
    if n0 > MAX_ELECTRONS:
        raise ValueError(f"at most {MAX_ELECTRONS} electrons are supported, got {n0}")
    energies = source.photon_energies(n0)
    n_before, n_after, emitted, work, k0, ke, cum = kernels.single_run(n0, energies, k0_unit_scale)
    n_final = int(n_after[-1]) if n_after.size else n0
    columns = {
        "n_before": n_before,
        "n_after": n_after,
        "emitted": emitted,
        "photon_energy": energies[: n_before.shape[0]],
        "field_work": work,
        "k0_residual": k0,
        "ke_delivered": ke,
        "cumulative_field_work": cum,
    }
    status = COMPLETE if n_final == 0 else EXHAUSTED
    return Ledger("single", initial, CellState(n_final, initial.capacitance), columns, status)


@dataclass(frozen=True)
class GuardResult:
    """Outcome of :func:`idealization_guard`; ``ratio`` is ``e V_max / W``."""

    ratio: float
    epsilon: float

    @property
    def ok(self) -> bool:
        return self.ratio <= self.epsilon

    @property
    def warning(self) -> bool:
        return not self.ok

    def message(self) -> str:
        return (
            f"idealization warning: eV/W = {self.ratio:.6g} exceeds {self.epsilon:.6g}; "
            "dissipative corrections are no longer negligible"
        )


def idealization_guard(
    N: int, v: ElementaryVoltage, W: float, epsilon: float = 0.01
) -> GuardResult:
    """Compare the largest field-driven kinetic energy ``N e v`` with the work function.

    ``W`` must be in the energy unit of ``v``: half-quanta for a reduced
    voltage, joules for one built from a capacitance.
    """
    N = check_count(N, "N")
    if not W > 0.0:
        raise ValueError(f"work function must be positive, got {W}")
    if not epsilon > 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    return GuardResult(ratio=N * v.electron_energy / W, epsilon=float(epsilon))
