"""CSV and JSON serialisation of ledgers and comparison tables."""

from __future__ import annotations

import csv
import io
import json
import os
import sys
from typing import Iterable, Optional, TextIO

import numpy as np

from .analysis import ComparisonRow, ConservationReport, audit
from .ledger import COMPLETE, Ledger
from .quantized import CellState
from .twin import TwinState

LEDGER_HEADER = (
    "step",
    "n_before",
    "n_after",
    "emitted",
    "photon_energy_W",
    "field_work_hq",
    "k0_residual_hq",
    "ke_delivered_hq",
    "cumulative_field_work_hq",
)

SWEEP_HEADER = (
    "N",
    "exact_total_hq",
    "paper_series_total_hq",
    "qv_half_hq",
    "abs_error_hq",
    "rel_error",
)


def _bool(value: bool) -> str:
    return "true" if value else "false"


def ledger_rows(ledger: Ledger) -> Iterable[tuple]:
    """Rows of ``LEDGER_HEADER`` values, energies kept as ints when the ledger is exact."""
    for e in ledger:
        yield (
            e.step,
            e.n_before,
            e.n_after,
            e.emitted,
            e.photon_energy,
            e.field_work,
            0 if ledger.exact else e.k0_residual,
            e.ke_delivered,
            e.cumulative_field_work,
        )


def _format(value) -> str:
    if isinstance(value, bool):
        return _bool(value)
    # repr of a float is its shortest round-trip form
    return repr(value) if isinstance(value, float) else str(value)


def ledger_to_csv(ledger: Ledger) -> str:
    lines = [",".join(LEDGER_HEADER)]
    lines.extend(",".join(_format(v) for v in row) for row in ledger_rows(ledger))
    return "\n".join(lines) + "\n"


def _state_dict(state) -> dict:
    if isinstance(state, TwinState):
        return {"n1": state.n1, "n2": state.n2, "capacitance": state.capacitance}
    return {"cathode_excess": state.cathode_excess, "capacitance": state.capacitance}


def _state_from_dict(data: dict):
    if "n1" in data:
        return TwinState(data["n1"], data["n2"], data.get("capacitance"))
    return CellState(data["cathode_excess"], data.get("capacitance"))


def report_dict(report: ConservationReport) -> dict:
    return {
        "E_in_hq": report.E_in,
        "E_fin_hq": report.E_fin,
        "total_ke_hq": report.total_ke,
        "total_k0_hq": report.total_k0,
        "balanced": report.balanced,
    }


def ledger_to_json(ledger: Ledger, report: Optional[ConservationReport] = None) -> str:
    if report is None:
        report = audit(ledger)
    data = {
        "scenario": ledger.scenario,
        "status": ledger.status,
        "initial_state": _state_dict(ledger.initial_state),
        "final_state": _state_dict(ledger.final_state),
        "entries": [dict(zip(LEDGER_HEADER, row)) for row in ledger_rows(ledger)],
        "audit": report_dict(report),
    }
    return json.dumps(data, indent=2) + "\n"


def _columns_from_records(records: list[dict]) -> dict:
    def col(key, dtype):
        return np.array([r[key] for r in records], dtype=dtype)

    return {
        "n_before": col("n_before", np.int64),
        "n_after": col("n_after", np.int64),
        "emitted": col("emitted", np.bool_),
        "photon_energy": col("photon_energy_W", np.float64),
        "field_work": col("field_work_hq", np.int64),
        "k0_residual": col("k0_residual_hq", np.float64),
        "ke_delivered": col("ke_delivered_hq", np.float64),
        "cumulative_field_work": col("cumulative_field_work_hq", np.int64),
    }


def ledger_from_json(text: str) -> Ledger:
    data = json.loads(text)
    return Ledger(
        data["scenario"],
        _state_from_dict(data["initial_state"]),
        _state_from_dict(data["final_state"]),
        _columns_from_records(data["entries"]),
        data["status"],
    )


def ledger_from_csv(text: str, initial_state) -> Ledger:
    """Rebuild a ledger from CSV; the initial state is not part of the CSV and must be given."""
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != LEDGER_HEADER:
        raise ValueError(f"unexpected CSV header: {reader.fieldnames}")
    records = []
    for raw in reader:
        if raw["emitted"] not in ("true", "false"):
            raise ValueError(f"bad emitted value {raw['emitted']!r}")
        records.append(
            {
                "n_before": int(raw["n_before"]),
                "n_after": int(raw["n_after"]),
                "emitted": raw["emitted"] == "true",
                "photon_energy_W": float(raw["photon_energy_W"]),
                "field_work_hq": int(raw["field_work_hq"]),
                "k0_residual_hq": float(raw["k0_residual_hq"]),
                "ke_delivered_hq": float(raw["ke_delivered_hq"]),
                "cumulative_field_work_hq": int(raw["cumulative_field_work_hq"]),
            }
        )
    last = records[-1]["n_after"] if records else None
    if isinstance(initial_state, TwinState):
        moved = initial_state.n1 - last if records else 0
        final = TwinState(initial_state.n1 - moved, initial_state.n2 + moved, initial_state.capacitance)
        scenario = "twin"
    else:
        final = CellState(initial_state.cathode_excess if last is None else last, initial_state.capacitance)
        scenario = "single"
    status = COMPLETE
    if scenario == "single" and final.cathode_excess != 0:
        status = "exhausted"
    return Ledger(scenario, initial_state, final, _columns_from_records(records), status)


def sweep_to_csv(rows: Iterable[ComparisonRow]) -> str:
    lines = [",".join(SWEEP_HEADER)]
    for r in rows:
        values = (r.N, r.exact_total, r.paper_series_total, r.qv_half, r.abs_error, r.rel_error)
        lines.append(",".join(_format(v) for v in values))
    return "\n".join(lines) + "\n"


def sweep_to_json(rows: Iterable[ComparisonRow]) -> str:
    data = {
        "rows": [
            {
                "N": r.N,
                "exact_total_hq": r.exact_total,
                "paper_series_total_hq": r.paper_series_total,
                "qv_half_hq": r.qv_half,
                "abs_error_hq": r.abs_error,
                "rel_error": r.rel_error,
                "rel_error_fraction": f"{r.rel_error_exact.numerator}/{r.rel_error_exact.denominator}",
            }
            for r in rows
        ]
    }
    return json.dumps(data, indent=2) + "\n"


def write_text(text: str, destination: Optional[str], stream: Optional[TextIO] = None) -> None:
    """Write to ``destination`` or to ``stream``; a partially written file is removed on failure."""
    if destination is None:
        (stream or sys.stdout).write(text)
        return
    try:
        with open(destination, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    except BaseException:
        try:
            os.remove(destination)
        except OSError:
            pass
        raise


def emit_ledger(ledger: Ledger, fmt: str = "csv", destination: Optional[str] = None,
                report: Optional[ConservationReport] = None) -> None:
    if fmt == "csv":
        text = ledger_to_csv(ledger)
    elif fmt == "json":
        text = ledger_to_json(ledger, report)
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    write_text(text, destination)
