"""Command-line front end.

Subcommands::

    ionthermo sweep --config cfg.json [--out rows.csv]
    ionthermo pump-check --e 1.0 --w 2.0
    ionthermo embed --e 1.0 --levels 1,2,4,8 [--identity] [--out rows.csv]

Exit codes: 0 success, 1 I/O failure, 2 usage or configuration error,
3 infeasible pump transition, 4 reservoir truncation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence, TextIO

import numpy as np

from .errors import ConfigError, IoError, TruncationError, ValidationError
from .scenarios import (
    BatterySpec,
    LadderReservoir,
    embedding_error,
    mixing_unitary,
    pump_curves,
    pump_to_channel_demo,
    run_channel,
)
from .thermal_ops import ThermalOpParams

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_TRUNCATION = 4

EQUILIBRIUM = "equilibrium"
SWEEP_HEADER = [
    "q", "lambda_spec", "lambda_value", "beta_E",
    "yield", "sigma_total", "sigma_classical", "sigma_quantum",
]
EMBED_HEADER = ["L", "trace_distance", "output_coherence"]


def fmt(x: float) -> str:
    """12 significant digits, with -0 normalised to 0."""
    s = f"{x:.12g}"
    return "0" if s in ("-0", "0") else s


@dataclass(frozen=True)
class SweepConfig:
    e_start: float = 0.0
    e_stop: float = 5.0
    e_step: float = 0.1
    lambdas: tuple[float | str, ...] = (1.0, 0.2, EQUILIBRIUM)
    q_values: tuple[float, ...] = (1.0, 0.5)
    output_path: str = "sweep.csv"

    def __post_init__(self) -> None:
        if not (self.e_step > 0):
            raise ConfigError(f"e_grid.step must be > 0, got {self.e_step}")
        if self.e_start > self.e_stop:
            raise ConfigError("e_grid.start must not exceed e_grid.stop")
        if self.e_start < 0:
            raise ConfigError("energy gaps must be >= 0")
        object.__setattr__(self, "lambdas", tuple(_parse_lambda(v) for v in self.lambdas))
        qs = tuple(float(q) for q in self.q_values)
        if any(not 0 <= q <= 1 for q in qs):
            raise ConfigError(f"q values must lie in [0, 1], got {qs}")
        object.__setattr__(self, "q_values", qs)

    @classmethod
    def from_dict(cls, data: dict) -> "SweepConfig":
        known = {"e_grid", "lambdas", "q_values", "output_path"}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        kwargs: dict = {}
        grid = data.get("e_grid", {})
        if not isinstance(grid, dict):
            raise ConfigError("e_grid must be an object with start, stop, step")
        for key in ("start", "stop", "step"):
            if key in grid:
                kwargs[f"e_{key}"] = _number(grid[key], f"e_grid.{key}")
        if "lambdas" in data:
            kwargs["lambdas"] = tuple(data["lambdas"])
        if "q_values" in data:
            kwargs["q_values"] = tuple(_number(q, "q_values") for q in data["q_values"])
        if "output_path" in data:
            kwargs["output_path"] = str(data["output_path"])
        return cls(**kwargs)

    @classmethod
    def load(cls, path: str | Path) -> "SweepConfig":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(data)

    def energy_grid(self) -> list[float]:
        n = int(math.floor((self.e_stop - self.e_start) / self.e_step + 1e-9)) + 1
        return [round(self.e_start + k * self.e_step, 12) for k in range(n)]


def _number(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{name} must be numeric, got {value!r}")
    return float(value)


def _parse_lambda(value) -> float | str:
    if isinstance(value, str):
        if value.strip().lower() == EQUILIBRIUM:
            return EQUILIBRIUM
        try:
            value = float(value)
        except ValueError:
            raise ConfigError(f"lambda must be numeric or '{EQUILIBRIUM}', got {value!r}") from None
    lam = _number(value, "lambda")
    if not 0 <= lam <= 1:
        raise ConfigError(f"lambda must lie in [0, 1], got {lam}")
    return lam


def lambda_label(spec: float | str) -> str:
    return spec if isinstance(spec, str) else f"{spec:g}"


def resolve_lambda(spec: float | str, e_gap: float) -> float:
    if spec == EQUILIBRIUM:
        return 1.0 / (1.0 + math.exp(-e_gap))
    return float(spec)


def sweep_rows(cfg: SweepConfig) -> list[list[str]]:
    """Rows in (q, lambda, beta_E) order, following the order given in the config."""
    rows = []
    for q in cfg.q_values:
        for spec in cfg.lambdas:
            for e_gap in cfg.energy_grid():
                lam = resolve_lambda(spec, e_gap)
                rep = run_channel(q, ThermalOpParams(e_gap, lam))
                rows.append([
                    fmt(q), lambda_label(spec), fmt(lam), fmt(e_gap), fmt(rep.yield_Y),
                    fmt(rep.sigma_total), fmt(rep.sigma_classical), fmt(rep.sigma_quantum),
                ])
    return rows


def _write_csv(header: list[str], rows: list[list[str]], out: str | Path | TextIO) -> None:
    if not isinstance(out, (str, Path)):
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return
    buf = io.StringIO()
    _write_csv(header, rows, buf)
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    except OSError as exc:
        raise IoError(f"cannot write {out}: {exc}") from exc


def run_sweep(cfg: SweepConfig) -> Path:
    """Evaluate the channel on the configured grid and write the CSV."""
    rows = sweep_rows(cfg)
    _write_csv(SWEEP_HEADER, rows, cfg.output_path)
    log.info("wrote %d rows to %s", len(rows), cfg.output_path)
    return Path(cfg.output_path)


def run_pump_check(e_gap: float, w: float, out: TextIO = sys.stdout) -> int:
    if e_gap < 0 or w < 0 or not (math.isfinite(e_gap) and math.isfinite(w)):
        raise ValidationError("energy gaps must be finite and >= 0")
    before, after, feasible = pump_curves(e_gap, BatterySpec(w))
    print("FEASIBLE" if feasible else "INFEASIBLE", file=out)
    print(f"beta_E={fmt(e_gap)} beta_w={fmt(w)}", file=out)
    for name, curve in (("initial", before), ("target", after)):
        pts = " ".join(f"({fmt(x)}, {fmt(y)})" for x, y in curve.vertices)
        print(f"{name}: {pts}", file=out)
    return EXIT_OK if feasible else EXIT_INFEASIBLE


def embedding_rows(
    l_values: Sequence[int],
    e_gap: float,
    identity: bool = False,
    num_levels: int | None = None,
    offset: int | None = None,
) -> list[list[str]]:
    u = np.eye(2, dtype=complex) if identity else mixing_unitary()
    rows = []
    for length in l_values:
        res = LadderReservoir.centered(length, num_levels)
        if offset is not None:
            res = replace(res, offset=offset)
        dist = embedding_error(u, res)
        coh = pump_to_channel_demo(e_gap, res, u).coherence
        rows.append([str(length), fmt(dist), fmt(coh)])
    return rows


def run_embedding_sweep(
    l_values: Sequence[int],
    e_gap: float,
    out: str | Path | TextIO = sys.stdout,
    identity: bool = False,
    num_levels: int | None = None,
    offset: int | None = None,
) -> None:
    _write_csv(EMBED_HEADER, embedding_rows(l_values, e_gap, identity, num_levels, offset), out)


def _level_list(text: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("levels must be positive integers")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ionthermo", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="channel yield/entropy sweep over beta*E")
    p.add_argument("--config", help="JSON config; built-in defaults when omitted")
    p.add_argument("--out", help="output CSV (overrides output_path)")
    p.add_argument("--q-values", type=lambda s: [float(v) for v in s.split(",")],
                   help="comma list, overrides q_values")
    p.add_argument("--lambdas", type=lambda s: [v.strip() for v in s.split(",")],
                   help="comma list of numbers or 'equilibrium', overrides lambdas")

    p = sub.add_parser("pump-check", help="can a battery of gap w power the pump transition?")
    p.add_argument("--e", type=float, required=True, help="pump gap beta*E")
    p.add_argument("--w", type=float, required=True, help="battery gap beta*w")

    p = sub.add_parser("embed", help="ladder-reservoir embedding convergence")
    p.add_argument("--e", type=float, required=True, help="system gap beta*E")
    p.add_argument("--levels", type=_level_list, required=True, help="comma list of support lengths L")
    p.add_argument("--identity", action="store_true", help="embed the identity instead of the mixing unitary")
    p.add_argument("--ladder-size", type=int, help="number of ladder levels (default 4L)")
    p.add_argument("--offset", type=int, help="first level of the superposition (default centred)")
    p.add_argument("--out", help="output CSV (default stdout)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if args.command == "sweep":
            cfg = SweepConfig.load(args.config) if args.config else SweepConfig()
            overrides = {}
            if args.out:
                overrides["output_path"] = args.out
            if args.q_values is not None:
                overrides["q_values"] = tuple(args.q_values)
            if args.lambdas is not None:
                overrides["lambdas"] = tuple(args.lambdas)
            run_sweep(replace(cfg, **overrides))
            return EXIT_OK
        if args.command == "pump-check":
            return run_pump_check(args.e, args.w)
        if args.command == "embed":
            if args.e < 0:
                raise ValidationError("energy gap must be >= 0")
            run_embedding_sweep(args.levels, args.e, args.out or sys.stdout,
                                args.identity, args.ladder_size, args.offset)
            return EXIT_OK
    except TruncationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION
    except IoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser.error(f"unknown command {args.command}")
    return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
