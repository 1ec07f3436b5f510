"""Charge- and energy-quantized values and the closed-form energy algebra.

Every energy in this package is an integer count of half-quanta,
``h_q = e**2 / (2 C) = e v / 2``.  A capacitor holding ``n`` excess
electrons stores ``n**2`` half-quanta, so all conservation statements
reduce to exact integer equalities.  Floats appear only when converting
to SI units for reporting.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Final, Optional

#: Elementary charge in coulombs (exact SI definition).
ELEMENTARY_CHARGE: Final[float] = 1.602176634e-19

#: Energy in half-quanta, ``e**2 / (2 C)``.
HalfQuantum = int


@dataclass(frozen=True)
class PhysicalConstants:
    e: float = ELEMENTARY_CHARGE


CONSTANTS: Final[PhysicalConstants] = PhysicalConstants()


def check_count(n: int, name: str = "n") -> int:
    """Validate an electron count and return it as a Python ``int``."""
    if isinstance(n, bool):
        raise TypeError(f"{name} must be an integer, got bool")
    try:
        n = operator.index(n)
    except TypeError:
        raise TypeError(f"{name} must be an integer, got {type(n).__name__}") from None
    if n < 0:
        raise ValueError(f"{name} must be non-negative, got {n}")
    return n


def _check_capacitance(capacitance: Optional[float]) -> Optional[float]:
    if capacitance is None:
        return None
    capacitance = float(capacitance)
    if not capacitance > 0.0:
        raise ValueError(f"capacitance must be positive, got {capacitance}")
    return capacitance


@dataclass(frozen=True)
class ElementaryVoltage:
    """Voltage step per elementary charge.

    ``reduced`` mode uses the dimensionless unit ``v = 1``, in which ``e v``
    is worth two half-quanta.  In SI mode ``v = e / C`` volts.
    """

    volts: float = 1.0
    reduced: bool = True

    def __post_init__(self) -> None:
        if not self.volts > 0.0:
            raise ValueError(f"elementary voltage must be positive, got {self.volts}")

    @classmethod
    def from_capacitance(cls, capacitance: float) -> "ElementaryVoltage":
        capacitance = _check_capacitance(capacitance)
        return cls(volts=CONSTANTS.e / capacitance, reduced=False)

    @property
    def electron_energy(self) -> float:
        """``e v``: in half-quanta when reduced, in joules otherwise."""
        if self.reduced:
            return 2.0 * self.volts
        return CONSTANTS.e * self.volts


@dataclass(frozen=True)
class CellState:
    """One capacitor: ``cathode_excess`` electrons on the cathode, as many missing on the anode."""

    cathode_excess: int
    capacitance: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "cathode_excess", check_count(self.cathode_excess, "cathode_excess"))
        object.__setattr__(self, "capacitance", _check_capacitance(self.capacitance))

    @property
    def field_energy(self) -> HalfQuantum:
        return field_energy(self.cathode_excess)

    def field_energy_joules(self) -> float:
        if self.capacitance is None:
            raise ValueError("field energy in joules needs a capacitance")
        return to_joules(self.field_energy, self.capacitance)


def half_quantum_joules(capacitance: float) -> float:
    """Size of one half-quantum, ``e**2 / (2 C)``, in joules."""
    capacitance = _check_capacitance(capacitance)
    return CONSTANTS.e * CONSTANTS.e / (2.0 * capacitance)


def to_joules(energy: HalfQuantum, capacitance: float) -> float:
    return energy * half_quantum_joules(capacitance)


def field_energy(n: int) -> HalfQuantum:
    """Energy stored by a capacitor holding ``n`` elementary charges: ``n**2`` half-quanta."""
    n = check_count(n)
    return n * n


def voltage(n: int, v: ElementaryVoltage = ElementaryVoltage()) -> float:
    """Capacitor voltage ``n v`` (volts, or units of ``v`` in reduced mode)."""
    return check_count(n) * v.volts


def transfer_work_exact(n: int) -> HalfQuantum:
    """Field energy released when the charge drops from ``n`` to ``n - 1``.

    Equals ``2 n - 1`` half-quanta.
    """
    n = check_count(n)
    if n == 0:
        raise ValueError("no electron to transfer from an uncharged capacitor")
    return field_energy(n) - field_energy(n - 1)


def transfer_work_paper_approx(n: int, v: ElementaryVoltage = ElementaryVoltage()) -> HalfQuantum:
    """Large-``n`` per-electron work ``e V = e n v``, which is ``2 n`` half-quanta.

    The voltage argument is accepted for symmetry with the SI form; the
    half-quantum count does not depend on it.
    """
    n = check_count(n)
    if n == 0:
        raise ValueError("no electron to transfer from an uncharged capacitor")
    return 2 * n


def total_work_exact(N: int) -> HalfQuantum:
    """Total field work discharging ``N`` electrons one at a time: ``N**2`` half-quanta."""
    N = check_count(N, "N")
    return N * N


def total_work_paper_series(N: int) -> HalfQuantum:
    """The series ``e v (N + (N - 1) + ... + 1)`` in half-quanta: ``N (N + 1)``.

    This overshoots :func:`total_work_exact` by exactly ``N`` half-quanta.
    """
    N = check_count(N, "N")
    return N * (N + 1)


def total_work_paper_closed(N: int) -> HalfQuantum:
    """The written closed form ``e v N (N - 1) / 2`` in half-quanta: ``N (N - 1)``.

    Kept alongside the series because the two disagree by ``2 N``.
    """
    N = check_count(N, "N")
    return N * (N - 1)


def approx_energy_after_first(N: int) -> HalfQuantum:
    """``E - e V`` for a capacitor that started with ``N`` charges: ``N**2 - 2 N``.

    The exact energy ``(N - 1)**2`` is larger by one half-quantum.
    """
    N = check_count(N, "N")
    return field_energy(N) - 2 * N


def relative_error(approx: int, exact: int) -> Fraction:
    """``(approx - exact) / exact`` as an exact fraction."""
    if exact == 0:
        raise ZeroDivisionError("relative error against a zero exact value")
    return Fraction(approx - exact, exact)
