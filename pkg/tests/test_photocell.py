import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from photocap.analysis import audit
from photocap.photocell import (
    IDEAL_PHOTON,
    Photon,
    PhotonSource,
    TerminalStateError,
    emission_check,
    idealization_guard,
    run_to_discharge,
    step,
)
from photocap.quantized import CellState, ElementaryVoltage, field_energy, voltage


@pytest.mark.parametrize("energy, expected", [(1.0, True), (1.7, True), (0.5, False), (0.0, False)])
def test_emission_check(energy, expected):
    assert emission_check(Photon(energy)) is expected


def test_photon_rejects_negative_energy():
    with pytest.raises(ValueError):
        Photon(-0.1)


def test_step_ideal_photon():
    state, entry = step(CellState(5), IDEAL_PHOTON)
    assert state.cathode_excess == 4
    assert entry.field_work == 9
    assert entry.k0_residual == 0
    assert entry.ke_delivered == 9
    assert entry.emitted and entry.work_function_cost == 1.0


def test_step_sub_threshold_is_noop():
    state, entry = step(CellState(3), Photon(0.9))
    assert state == CellState(3)
    assert not entry.emitted
    assert entry.ke_delivered == 0
    assert entry.work_function_cost == 0.0
    assert entry.n_before == entry.n_after == 3


def test_last_electron_empties_field():
    state, entry = step(CellState(1), IDEAL_PHOTON)
    assert state.cathode_excess == 0
    assert entry.field_work == 1
    assert state.field_energy == 0


def test_step_on_empty_cell_rejected():
    with pytest.raises(TerminalStateError):
        step(CellState(0), IDEAL_PHOTON)
    # a sub-threshold photon is harmless
    assert step(CellState(0), Photon(0.2))[0] == CellState(0)


def test_step_residual_energy():
    _, entry = step(CellState(4), Photon(1.5), k0_unit_scale=10.0)
    assert entry.k0_residual == 5.0
    assert entry.ke_delivered == 12.0


def test_run_empty_cell(backend):
    ledger = run_to_discharge(CellState(0))
    assert len(ledger) == 0
    assert ledger.complete
    assert ledger.final_state.field_energy == 0


def test_run_five(backend):
    ledger = run_to_discharge(CellState(5), PhotonSource.ideal())
    assert len(ledger) == 5
    assert [e.field_work for e in ledger] == [9, 7, 5, 3, 1]
    assert ledger.cumulative_field_work == 25
    assert ledger.final_state == CellState(0)


def test_run_total_loss_is_half_qv(backend):
    N, C = 321, 1e-15
    ledger = run_to_discharge(CellState(N, C))
    v = ElementaryVoltage.from_capacitance(C)
    Q, V = N * 1.602176634e-19, voltage(N, v)
    report = audit(ledger)
    assert report.total_ke == field_energy(N)
    assert report.total_ke * 1.602176634e-19**2 / (2 * C) == pytest.approx(Q * V / 2, rel=1e-12)


def test_run_matches_repeated_step(backend):
    energies = [1.0, 0.3, 1.2, 0.0, 1.0, 2.0, 0.99, 1.0]
    source = PhotonSource.sequence(energies)
    ledger = run_to_discharge(CellState(4), source, k0_unit_scale=3.0)
    state, cum, expected = CellState(4), 0, []
    for i, e in enumerate(energies, 1):
        if state.cathode_excess == 0:
            break
        state, entry = step(state, Photon(e), 3.0, index=i, cumulative=cum)
        cum = entry.cumulative_field_work
        expected.append(entry)
    assert ledger.entries == expected
    assert ledger.final_state == state


def test_exhausted_source(backend):
    ledger = run_to_discharge(CellState(10), PhotonSource.ideal(limit=4))
    assert ledger.status == "exhausted"
    assert ledger.final_state.cathode_excess == 6
    assert audit(ledger).balanced


def test_sequence_exhausted(backend):
    ledger = run_to_discharge(CellState(3), PhotonSource.sequence([1.0, 0.1]))
    assert not ledger.complete
    assert len(ledger) == 2


def test_unbounded_sub_threshold_source_rejected():
    with pytest.raises(ValueError):
        run_to_discharge(CellState(3), PhotonSource.fixed(0.5))


def test_bounded_sub_threshold_source(backend):
    ledger = run_to_discharge(CellState(3), PhotonSource.fixed(0.5, limit=7))
    assert len(ledger) == 7
    assert ledger.emissions == 0
    assert ledger.final_state == CellState(3)


def test_source_validation():
    with pytest.raises(ValueError):
        PhotonSource("laser")
    with pytest.raises(ValueError):
        PhotonSource.sequence([1.0, -2.0])
    with pytest.raises(ValueError):
        PhotonSource.ideal(limit=0)


photon_energy = st.one_of(
    st.sampled_from([0.0, 0.5, 0.999, 1.0]),
    st.floats(min_value=0.0, max_value=3.0, allow_nan=False),
)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 300), st.lists(photon_energy, max_size=600), st.floats(0.0, 100.0))
def test_general_energy_audit(n0, energies, scale):
    ledger = run_to_discharge(CellState(n0), PhotonSource.sequence(energies), scale)
    report = audit(ledger)
    assert report.balanced
    lhs = report.E_in + report.total_k0
    rhs = report.E_fin + report.total_ke
    assert math.isclose(lhs, rhs, rel_tol=1e-12, abs_tol=1e-12)
    assert (ledger.column("ke_delivered") >= 0).all()


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 300), st.lists(photon_energy, max_size=600))
def test_sub_threshold_filtering_equivalence(n0, energies):
    full = run_to_discharge(CellState(n0), PhotonSource.sequence(energies))
    filtered = run_to_discharge(CellState(n0), PhotonSource.sequence([e for e in energies if e >= 1.0]))
    assert full.final_state == filtered.final_state
    emitted = full.column("emitted")
    assert full.column("field_work")[emitted].tolist() == filtered.column("field_work").tolist()


@given(st.integers(0, 2000))
def test_ideal_run_properties(n0):
    ledger = run_to_discharge(CellState(n0))
    assert ledger.emissions == n0
    assert int(ledger.column("field_work").sum()) == field_energy(n0)
    after = ledger.column("n_after")
    before = ledger.column("n_before")
    assert (after < before).all()
    assert audit(ledger).balanced


def test_replay_is_bit_identical(backend):
    rng = np.random.default_rng(7)
    energies = rng.random(5000) * 2
    runs = [run_to_discharge(CellState(1800), PhotonSource.sequence(energies), 12.5) for _ in range(3)]
    assert runs[0] == runs[1] == runs[2]


def test_ledger_is_read_only():
    ledger = run_to_discharge(CellState(3))
    with pytest.raises(ValueError):
        ledger.column("field_work")[0] = 0


@pytest.mark.parametrize(
    "N, W, eps, ok",
    [(0, 10.0, 0.01, True), (1, 2000.0, 0.01, True), (25, 100.0, 0.01, False)],
)
def test_idealization_guard(N, W, eps, ok):
    result = idealization_guard(N, ElementaryVoltage(), W, eps)
    assert result.ok is ok
    assert result.ratio == pytest.approx(2 * N / W)


def test_idealization_guard_si():
    C = 1e-12
    v = ElementaryVoltage.from_capacitance(C)
    W = 4.5 * 1.602176634e-19  # 4.5 eV
    result = idealization_guard(1000, v, W)
    assert result.ratio == pytest.approx(1000 * 1.602176634e-19 * v.volts / W, rel=1e-12)


@pytest.mark.parametrize("W, eps", [(0.0, 0.01), (-1.0, 0.01), (1.0, 0.0)])
def test_idealization_guard_rejects(W, eps):
    with pytest.raises(ValueError):
        idealization_guard(3, ElementaryVoltage(), W, eps)
