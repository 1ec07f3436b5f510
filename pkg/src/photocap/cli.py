"""Command-line front end: ``photocap {single,twin,sweep}``.

Exit codes: 0 on a completed, balanced run; 1 on usage or I/O errors;
2 when the conservation audit fails.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .analysis import AuditError, audit, sweep_comparison
from .output import emit_ledger, sweep_to_csv, sweep_to_json, write_text
from .photocell import PhotonSource, idealization_guard, run_to_discharge
from .quantized import CellState, ElementaryVoltage, half_quantum_joules
from .twin import TwinState, run_pair_to_equilibrium

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_AUDIT = 2

SCENARIOS = ("single", "twin", "sweep")
FORMATS = ("csv", "json")

# config-file keys mirror the long flag names
_KEYS = {
    "n": "n",
    "format": "output_format",
    "out": "output_path",
    "photon-energy": "photon_energy",
    "work-function": "work_function_hq",
    "capacitance": "capacitance_farads",
    "epsilon": "epsilon_ideal",
    "values": "sweep_values",
}


class ConfigError(ValueError):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass
class SimConfig:
    scenario: str
    n: Optional[int] = None
    capacitance_farads: Optional[float] = None
    photon_energy: Optional[float] = None
    epsilon_ideal: float = 0.01
    work_function_hq: Optional[float] = None
    output_format: str = "csv"
    output_path: Optional[str] = None
    sweep_values: list[int] = field(default_factory=list)

    @property
    def photon_mode(self) -> str:
        return "ideal" if self.photon_energy is None else "fixed"

    def validate(self) -> "SimConfig":
        if self.scenario not in SCENARIOS:
            raise ConfigError("scenario", f"must be one of {', '.join(SCENARIOS)}")
        if self.output_format not in FORMATS:
            raise ConfigError("format", f"must be csv or json, got {self.output_format!r}")
        for key, value in (("capacitance", self.capacitance_farads), ("work_function", self.work_function_hq),
                           ("epsilon", self.epsilon_ideal)):
            if value is not None and not value > 0.0:
                raise ConfigError(key, f"must be positive, got {value}")
        if self.scenario == "sweep":
            if not self.sweep_values:
                raise ConfigError("values", "sweep needs a non-empty list of N values")
            if any(v < 1 for v in self.sweep_values):
                raise ConfigError("values", "every N must be at least 1")
            return self
        if self.n is None:
            raise ConfigError("n", "initial electron count is required")
        if self.n < 0:
            raise ConfigError("n", f"must be non-negative, got {self.n}")
        if self.sweep_values:
            raise ConfigError("values", "only valid for the sweep scenario")
        if self.photon_energy is not None:
            if self.scenario == "twin":
                raise ConfigError("photon_energy", "the twin scenario uses ideal photons only")
            if self.work_function_hq is None:
                raise ConfigError("work_function", "required when --photon-energy is given")
            if not self.photon_energy >= 1.0:
                raise ConfigError("photon_energy", "below the work function; the cell would never discharge")
        return self


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _count(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {value}")
    return value


def _values(text: str) -> list[int]:
    return [_count(part.strip()) for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="photocap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="scenario", required=True, metavar="{single,twin,sweep}")
    for name, help_text in (
        ("single", "discharge one photo-cell photon by photon"),
        ("twin", "share charge between two identical capacitors"),
        ("sweep", "compare exact and approximate total work over N values"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", metavar="PATH", help="flat key=value file; flags override it")
        p.add_argument("--n", type=_count)
        p.add_argument("--format", choices=FORMATS)
        p.add_argument("--out", metavar="PATH")
        p.add_argument("--photon-energy", type=float, metavar="X", help="photon energy in work functions")
        p.add_argument("--work-function", type=float, metavar="X", help="work function in half-quanta")
        p.add_argument("--capacitance", type=float, metavar="X", help="capacitance in farads")
        p.add_argument("--epsilon", type=float, metavar="X", help="idealization tolerance (default 0.01)")
        if name == "sweep":
            p.add_argument("--values", type=_values, metavar="a,b,c")
    return parser


def read_config_file(path: str) -> dict:
    """Parse a flat ``key = value`` file into :class:`SimConfig` field values."""
    converters = {
        "n": _count,
        "output_format": str,
        "output_path": str,
        "photon_energy": float,
        "work_function_hq": float,
        "capacitance_farads": float,
        "epsilon_ideal": float,
        "sweep_values": _values,
    }
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, raw = line.partition("=")
            key = key.strip()
            if not sep:
                raise ConfigError(key or f"line {lineno}", "expected key = value")
            attr = _KEYS.get(key.replace("_", "-"))
            if attr is None:
                raise ConfigError(key, "unknown config key")
            try:
                values[attr] = converters[attr](raw.strip())
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise ConfigError(key, str(exc)) from None
    return values


def parse_config(argv: Optional[Sequence[str]] = None) -> SimConfig:
    """Build a validated config from flags and an optional config file.

    :raises ConfigError: naming the offending key
    :raises SystemExit: with status 1 on malformed command lines
    """
    args = build_parser().parse_args(argv)
    values = {}
    if args.config:
        try:
            values.update(read_config_file(args.config))
        except OSError as exc:
            raise ConfigError("config", f"cannot read {args.config}: {exc.strerror}") from None
    flags = {
        "n": args.n,
        "output_format": args.format,
        "output_path": args.out,
        "photon_energy": args.photon_energy,
        "work_function_hq": args.work_function,
        "capacitance_farads": args.capacitance,
        "epsilon_ideal": args.epsilon,
        "sweep_values": getattr(args, "values", None),
    }
    values.update({k: v for k, v in flags.items() if v is not None})
    return SimConfig(scenario=args.scenario, **values).validate()


def _summary(report, config: SimConfig) -> str:
    parts = [
        f"{report.scenario}: N={config.n}",
        f"E_in={report.E_in} h_q",
        f"E_fin={report.E_fin} h_q",
        f"total_ke={report.total_ke} h_q",
        f"loss={report.loss} h_q ({float(report.loss_fraction) * 100:g}% of E_in)",
        f"balanced={'true' if report.balanced else 'false'}",
    ]
    if config.capacitance_farads is not None:
        hq = half_quantum_joules(config.capacitance_farads)
        parts.append(f"[h_q={hq:.6g} J, E_in={report.E_in * hq:.6g} J]")
    return " ".join(parts)


def run_cli(config: SimConfig) -> int:
    if config.scenario == "sweep":
        rows = sweep_comparison(config.sweep_values)
        text = sweep_to_csv(rows) if config.output_format == "csv" else sweep_to_json(rows)
        try:
            write_text(text, config.output_path)
        except OSError as exc:
            print(f"photocap: error: cannot write {config.output_path}: {exc.strerror}", file=sys.stderr)
            return EXIT_USAGE
        return EXIT_OK

    if config.work_function_hq is not None:
        guard = idealization_guard(config.n, ElementaryVoltage(), config.work_function_hq, config.epsilon_ideal)
        if guard.warning:
            print(f"photocap: {guard.message()}", file=sys.stderr)

    if config.scenario == "single":
        if config.photon_mode == "ideal":
            source, scale = PhotonSource.ideal(), 0.0
        else:
            source, scale = PhotonSource.fixed(config.photon_energy), config.work_function_hq
        ledger = run_to_discharge(CellState(config.n, config.capacitance_farads), source, scale)
    else:
        ledger = run_pair_to_equilibrium(TwinState(config.n, 0, config.capacitance_farads))

    try:
        report = audit(ledger)
    except AuditError as exc:
        print(f"photocap: audit failed: {exc}", file=sys.stderr)
        return EXIT_AUDIT

    try:
        emit_ledger(ledger, config.output_format, config.output_path, report)
    except OSError as exc:
        print(f"photocap: error: cannot write {config.output_path}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE

    print(_summary(report, config), file=sys.stderr)
    if not report.balanced:
        print("photocap: audit failed: energy ledger does not balance", file=sys.stderr)
        return EXIT_AUDIT
    return EXIT_OK if ledger.complete else EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config = parse_config(argv)
    except ConfigError as exc:
        print(f"photocap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run_cli(config)


if __name__ == "__main__":
    sys.exit(main())
