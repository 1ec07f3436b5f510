from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from photocap.quantized import (
    ELEMENTARY_CHARGE,
    CellState,
    ElementaryVoltage,
    approx_energy_after_first,
    check_count,
    field_energy,
    half_quantum_joules,
    relative_error,
    to_joules,
    total_work_exact,
    total_work_paper_closed,
    total_work_paper_series,
    transfer_work_exact,
    transfer_work_paper_approx,
    voltage,
)

counts = st.integers(min_value=0, max_value=10**7)
positive = st.integers(min_value=1, max_value=10**7)


@pytest.mark.parametrize("n, expected", [(0, 0), (1, 1), (7, 49), (10**6, 10**12)])
def test_field_energy(n, expected):
    assert field_energy(n) == expected


def test_field_energy_matches_si_formula():
    C = 1e-12
    N = 1000
    joules = to_joules(field_energy(N), C)
    assert joules == pytest.approx((N * ELEMENTARY_CHARGE) ** 2 / (2 * C), rel=1e-12)
    assert CellState(N, C).field_energy_joules() == pytest.approx(joules, rel=1e-12)


@given(counts, st.floats(min_value=1e-18, max_value=1.0))
def test_si_scaling_consistent(n, C):
    assert to_joules(field_energy(n), C) == pytest.approx((n * ELEMENTARY_CHARGE) ** 2 / (2 * C), rel=1e-12)


def test_voltage():
    assert voltage(0) == 0
    assert voltage(1) == 1
    C = 2e-15
    v = ElementaryVoltage.from_capacitance(C)
    assert voltage(40, v) == pytest.approx(40 * ELEMENTARY_CHARGE / C, rel=1e-12)


@given(positive)
def test_voltage_strictly_increasing(n):
    assert voltage(n) > voltage(n - 1)


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 3), (5, 9), (100, 199)])
def test_transfer_work_exact(n, expected):
    assert transfer_work_exact(n) == expected


@pytest.mark.parametrize("n, expected", [(1, 2), (100, 200)])
def test_transfer_work_paper_approx(n, expected):
    assert transfer_work_paper_approx(n) == expected


def test_transfer_work_approx_relative_error_at_100():
    assert relative_error(transfer_work_paper_approx(100), transfer_work_exact(100)) == Fraction(1, 199)


@pytest.mark.parametrize("fn", [transfer_work_exact, transfer_work_paper_approx])
def test_transfer_rejects_empty(fn):
    with pytest.raises(ValueError):
        fn(0)


@pytest.mark.parametrize("bad", [-1, 1.5, "3", True])
def test_counts_validated(bad):
    with pytest.raises((TypeError, ValueError)):
        check_count(bad)


def test_numpy_integers_accepted():
    assert field_energy(np.int64(4)) == 16


@given(positive)
def test_approx_gap_is_one_half_quantum(n):
    exact = transfer_work_exact(n)
    approx = transfer_work_paper_approx(n)
    assert approx - exact == 1
    assert relative_error(approx, exact) == Fraction(1, 2 * n - 1)


@pytest.mark.parametrize("N, expected", [(0, 0), (5, 25)])
def test_total_work_exact(N, expected):
    assert total_work_exact(N) == expected


@pytest.mark.parametrize("N, expected", [(1, 2), (5, 30)])
def test_total_work_paper_series(N, expected):
    assert total_work_paper_series(N) == expected


def test_series_against_literal_sum():
    # e v (N + (N-1) + ... + 1), with e v = 2 half-quanta
    for N in range(0, 200):
        assert total_work_paper_series(N) == sum(2 * k for k in range(1, N + 1))


def test_written_closed_form_differs_from_series():
    for N in range(1, 50):
        assert total_work_paper_series(N) - total_work_paper_closed(N) == 2 * N


@given(counts)
def test_conservation_closed_form(N):
    assert total_work_exact(N) == field_energy(N)


def test_brute_force_sum_up_to_a_million():
    total = 0
    for n in range(1, 10**6 + 1):
        total += transfer_work_exact(n)
        if n in (1, 10, 1000, 99_999, 10**6):
            assert total == total_work_exact(n)
    assert total == 10**12


@given(positive)
def test_series_gap(N):
    assert total_work_paper_series(N) - total_work_exact(N) == N
    assert relative_error(total_work_paper_series(N), total_work_exact(N)) == Fraction(1, N)


@given(positive)
def test_field_energy_convex(n):
    assert field_energy(n + 1) - 2 * field_energy(n) + field_energy(n - 1) == 2


def test_energy_after_first_emission():
    # E - eV undershoots the exact (N-1)**2 by one half-quantum
    for N in (1, 2, 10, 12345):
        assert field_energy(N - 1) - approx_energy_after_first(N) == 1


def test_half_quantum_joules():
    assert half_quantum_joules(1.0) == pytest.approx(ELEMENTARY_CHARGE**2 / 2)
    with pytest.raises(ValueError):
        half_quantum_joules(0.0)


def test_elementary_voltage():
    assert ElementaryVoltage().electron_energy == 2.0
    v = ElementaryVoltage.from_capacitance(1e-15)
    assert v.electron_energy == pytest.approx(ELEMENTARY_CHARGE**2 / 1e-15)
    with pytest.raises(ValueError):
        ElementaryVoltage(volts=0.0)


def test_cell_state_validation():
    with pytest.raises(ValueError):
        CellState(-1)
    with pytest.raises(ValueError):
        CellState(1, capacitance=-1e-12)
    with pytest.raises(ValueError):
        CellState(3).field_energy_joules()
