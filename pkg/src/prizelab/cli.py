"""Command-line interface emitting CSV or JSON tables for each analysis.

Subcommands
    eval       one utility value for a single game
    sweep-n    utility versus participant count, per mechanism, plus a
               risk-neutral reference curve labelled "eut"
    optimal-k  average utility versus paid fraction for a top-k mechanism
    sweep-f    utility versus participant count for each entry fee
    sweep-r    utility versus participant count for each rake
    profit     operator profit and viability per (N, fee, rake) point
    break-even smallest participant count with non-negative utility

Every option has a default, so each subcommand runs with no configuration.
Options may also come from a JSON config file (see README); command-line
flags override it. Exit codes: 0 success, 1 runtime/domain error, 2
usage/config error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from prizelab.analysis import (
    SweepGrid,
    break_even_n,
    operator_profit,
    optimal_k,
    profit_frontier,
    utility_at,
    utility_curve,
)
from prizelab.errors import (
    GameTerminatedError,
    ParameterError,
    PrizelabError,
    UnsupportedMechanismError,
)
from prizelab.mechanisms import (
    GameConfig,
    Mechanism,
    MechanismKind,
    build_schedule,
    to_prospects,
)
from prizelab.prospects import (
    IdentityWeighting,
    PrelecWeighting,
    ProbabilityWeighting,
    TverskyKahnemanWeighting,
    ValueFunction,
    eut_utility,
)

DEFAULT_LINEAR_K = 0.16
DEFAULT_EXP_K = 0.06
DEFAULT_FEE = 1.0
DEFAULT_RAKE = 0.1

_WEIGHT_CHOICES = ("tk", "prelec", "identity")
_MECHANISM_CHOICES = tuple(kind.value for kind in MechanismKind)

_CONFIG_KEYS = {"mechanism", "value", "weighting", "game", "grid", "output"}


class ConfigError(ParameterError):
    """The run configuration cannot be parsed or validated."""


@dataclass
class RunConfig:
    """Fully resolved inputs for one CLI invocation."""

    mechanism: Mechanism | None  # None means "subcommand default"
    value_fn: ValueFunction
    weighting: ProbabilityWeighting
    entry_fee: float
    rake: float
    grid: SweepGrid
    output: str | None  # None means stdout
    fmt: str


def _default_k_for(kind: MechanismKind) -> float:
    return DEFAULT_LINEAR_K if kind is MechanismKind.TOP_K_LINEAR else DEFAULT_EXP_K


def _make_mechanism(kind_name: str, k: float | None) -> Mechanism:
    try:
        kind = MechanismKind(kind_name)
    except ValueError:
        raise ConfigError(
            f"unknown mechanism {kind_name!r}, expected one of {_MECHANISM_CHOICES}"
        ) from None
    if kind.is_top_k and k is None:
        k = _default_k_for(kind)
    return Mechanism(kind, k=k)


def _make_weighting(
    name: str,
    delta: float | None,
    prelec_alpha: float | None,
    prelec_beta: float | None,
) -> ProbabilityWeighting:
    if name == "tk":
        return TverskyKahnemanWeighting(0.65 if delta is None else delta)
    if name == "prelec":
        return PrelecWeighting(
            alpha=0.65 if prelec_alpha is None else prelec_alpha,
            beta=1.0 if prelec_beta is None else prelec_beta,
        )
    if name == "identity":
        return IdentityWeighting()
    raise ConfigError(f"unknown weighting {name!r}, expected one of {_WEIGHT_CHOICES}")


def _load_config_file(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


def _section(data: dict, key: str) -> dict:
    section = data.get(key, {})
    if not isinstance(section, dict):
        raise ConfigError(f"config section {key!r} must be an object")
    return section


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """Layer defaults, then the config file, then command-line flags."""
    data = _load_config_file(args.config) if args.config else {}

    mech_cfg = _section(data, "mechanism")
    value_cfg = _section(data, "value")
    weight_cfg = _section(data, "weighting")
    game_cfg = _section(data, "game")
    grid_cfg = _section(data, "grid")
    output_cfg = _section(data, "output")

    kind_name = args.mechanism or mech_cfg.get("kind")
    k = args.k if args.k is not None else mech_cfg.get("k")
    mechanism = _make_mechanism(kind_name, k) if kind_name else None
    if mechanism is None and k is not None:
        raise ConfigError("k was given without a mechanism kind")

    value_fn = ValueFunction(
        alpha=(
            args.value_alpha
            if args.value_alpha is not None
            else value_cfg.get("alpha", 0.88)
        ),
        loss_aversion=(
            args.value_lambda
            if args.value_lambda is not None
            else value_cfg.get("loss_aversion", 2.25)
        ),
    )

    weight_name = args.weight or weight_cfg.get("kind", "tk")
    weighting = _make_weighting(
        weight_name,
        args.weight_delta if args.weight_delta is not None else weight_cfg.get("delta"),
        args.prelec_alpha if args.prelec_alpha is not None else weight_cfg.get("alpha"),
        args.prelec_beta if args.prelec_beta is not None else weight_cfg.get("beta"),
    )

    entry_fee = (
        args.fee if args.fee is not None else game_cfg.get("entry_fee", DEFAULT_FEE)
    )
    rake = args.rake if args.rake is not None else game_cfg.get("rake", DEFAULT_RAKE)

    grid_kwargs = {}
    for field_name in ("n_min", "n_max", "k_grid", "f_values", "r_values"):
        if field_name in grid_cfg:
            value = grid_cfg[field_name]
            grid_kwargs[field_name] = (
                tuple(value) if isinstance(value, list) else value
            )
    if args.n_min is not None:
        grid_kwargs["n_min"] = args.n_min
    if args.n_max is not None:
        grid_kwargs["n_max"] = args.n_max
    # Explicit fee/rake flags narrow the profit sweep to that single value.
    if args.fee is not None:
        grid_kwargs.setdefault("f_values", (args.fee,))
    if args.rake is not None:
        grid_kwargs.setdefault("r_values", (args.rake,))
    grid = SweepGrid(**grid_kwargs)

    output = args.output if args.output is not None else output_cfg.get("path")
    fmt = args.format or output_cfg.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"format must be 'csv' or 'json', got {fmt!r}")

    return RunConfig(
        mechanism=mechanism,
        value_fn=value_fn,
        weighting=weighting,
        entry_fee=entry_fee,
        rake=rake,
        grid=grid,
        output=output,
        fmt=fmt,
    )


def _weighting_to_dict(weighting: ProbabilityWeighting) -> dict:
    if isinstance(weighting, TverskyKahnemanWeighting):
        return {"kind": "tk", "delta": weighting.delta}
    if isinstance(weighting, PrelecWeighting):
        return {"kind": "prelec", "alpha": weighting.alpha, "beta": weighting.beta}
    return {"kind": "identity"}


def run_config_to_dict(cfg: RunConfig) -> dict:
    """JSON-ready form of a run configuration; reloading it reproduces the run."""
    data: dict = {
        "value": {
            "alpha": cfg.value_fn.alpha,
            "loss_aversion": cfg.value_fn.loss_aversion,
        },
        "weighting": _weighting_to_dict(cfg.weighting),
        "game": {"entry_fee": cfg.entry_fee, "rake": cfg.rake},
        "grid": {
            "n_min": cfg.grid.n_min,
            "n_max": cfg.grid.n_max,
            "k_grid": list(cfg.grid.k_grid),
            "f_values": list(cfg.grid.f_values),
            "r_values": list(cfg.grid.r_values),
        },
        "output": {"format": cfg.fmt},
    }
    if cfg.output is not None:
        data["output"]["path"] = cfg.output
    if cfg.mechanism is not None:
        mech: dict = {"kind": cfg.mechanism.kind.value}
        if cfg.mechanism.k is not None:
            mech["k"] = cfg.mechanism.k
        data["mechanism"] = mech
    return data


def _mechanism_set(cfg: RunConfig) -> list[Mechanism]:
    """The configured mechanism, or the default four-way comparison set."""
    if cfg.mechanism is not None:
        return [cfg.mechanism]
    return [
        Mechanism(MechanismKind.WINNER_TAKE_ALL),
        Mechanism(MechanismKind.TOP_K_LINEAR, k=DEFAULT_LINEAR_K),
        Mechanism(MechanismKind.TOP_K_EXPONENTIAL, k=DEFAULT_EXP_K),
        Mechanism(MechanismKind.THREE_BANDS),
    ]


def _single_mechanism(cfg: RunConfig) -> Mechanism:
    if cfg.mechanism is not None:
        return cfg.mechanism
    return Mechanism(MechanismKind.TOP_K_LINEAR, k=DEFAULT_LINEAR_K)


def run_eval(cfg: RunConfig) -> tuple[list[str], list[list]]:
    mechanism = _single_mechanism(cfg)
    config = GameConfig(cfg.grid.n_min, cfg.entry_fee, cfg.rake)
    u = utility_at(mechanism, config, cfg.value_fn, cfg.weighting)
    return (
        ["mechanism", "n", "f", "r", "utility"],
        [[mechanism.label(), config.n_participants, cfg.entry_fee, cfg.rake, u]],
    )


def run_sweep_n(cfg: RunConfig) -> tuple[list[str], list[list]]:
    rows: list[list] = []
    for mechanism in _mechanism_set(cfg):
        curve = utility_curve(
            mechanism, cfg.value_fn, cfg.weighting, cfg.entry_fee, cfg.rake,
            cfg.grid.n_values,
        )
        rows.extend([mechanism.label(), n, u] for n, u in curve.points)
    # Risk-neutral reference: plain expectation of a pool-conserving schedule.
    wta = Mechanism(MechanismKind.WINNER_TAKE_ALL)
    for n in cfg.grid.n_values:
        config = GameConfig(n, cfg.entry_fee, cfg.rake)
        schedule = build_schedule(wta, config)
        rows.append(["eut", n, eut_utility(to_prospects(schedule, config))])
    return ["mechanism", "n", "utility"], rows


def run_optimal_k(cfg: RunConfig) -> tuple[list[str], list[list]]:
    kind = cfg.mechanism.kind if cfg.mechanism else MechanismKind.TOP_K_LINEAR
    result = optimal_k(
        kind, cfg.value_fn, cfg.weighting, cfg.entry_fee, cfg.rake,
        cfg.grid.n_values, cfg.grid.k_grid,
    )
    return ["k", "avg_utility"], [[k, avg] for k, avg in result.curve]


def run_sweep_f(cfg: RunConfig) -> tuple[list[str], list[list]]:
    mechanism = _single_mechanism(cfg)
    rows: list[list] = []
    for fee in cfg.grid.f_values:
        curve = utility_curve(
            mechanism, cfg.value_fn, cfg.weighting, fee, cfg.rake, cfg.grid.n_values
        )
        rows.extend([fee, n, u] for n, u in curve.points)
    return ["f", "n", "utility"], rows


def run_sweep_r(cfg: RunConfig) -> tuple[list[str], list[list]]:
    mechanism = _single_mechanism(cfg)
    rows: list[list] = []
    for rake in cfg.grid.r_values:
        curve = utility_curve(
            mechanism, cfg.value_fn, cfg.weighting, cfg.entry_fee, rake,
            cfg.grid.n_values,
        )
        rows.extend([rake, n, u] for n, u in curve.points)
    return ["r", "n", "utility"], rows


def run_profit(cfg: RunConfig) -> tuple[list[str], list[list]]:
    mechanism = _single_mechanism(cfg)
    frontier = profit_frontier(mechanism, cfg.value_fn, cfg.weighting, cfg.grid)
    rows = [[row.n_participants, row.entry_fee, row.rake, row.profit, row.viable]
            for row in frontier]
    return ["n", "f", "r", "profit", "viable"], rows


def run_break_even(cfg: RunConfig) -> tuple[list[str], list[list]]:
    rows: list[list] = []
    for mechanism in _mechanism_set(cfg):
        n_star = break_even_n(
            mechanism, cfg.value_fn, cfg.weighting, cfg.entry_fee, cfg.rake,
            cfg.grid.n_values,
        )
        rows.append([mechanism.label(), mechanism.k, cfg.rake, cfg.entry_fee, n_star])
    return ["mechanism", "k", "r", "f", "n_star"], rows


_RUNNERS = {
    "eval": run_eval,
    "sweep-n": run_sweep_n,
    "optimal-k": run_optimal_k,
    "sweep-f": run_sweep_f,
    "sweep-r": run_sweep_r,
    "profit": run_profit,
    "break-even": run_break_even,
}

# 12 significant digits: enough to verify 1e-9 tolerances downstream.
_NUM_FORMAT = ".12g"


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, _NUM_FORMAT)
    return str(value)


def _json_cell(value):
    if isinstance(value, float):
        return float(format(value, _NUM_FORMAT))
    return value


def render(columns: list[str], rows: list[list], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_csv_cell(cell) for cell in row])
        return buf.getvalue()
    payload = [
        {col: _json_cell(cell) for col, cell in zip(columns, row)} for row in rows
    ]
    return json.dumps(payload, indent=2) + "\n"


def _write_output(cfg: RunConfig, text: str) -> None:
    if cfg.output is None:
        sys.stdout.write(text)
    else:
        Path(cfg.output).write_text(text, newline="")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON run configuration")
    common.add_argument("--output", metavar="PATH", help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
    common.add_argument("--mechanism", choices=_MECHANISM_CHOICES,
                        help="mechanism kind (default depends on subcommand)")
    common.add_argument("--k", type=float, help="paid fraction for top-k mechanisms")
    common.add_argument("--fee", type=float, help="entry fee per participant (default 1)")
    common.add_argument("--rake", type=float, help="operator share of fees (default 0.1)")
    common.add_argument("--n-min", type=int, help="smallest participant count (default 1)")
    common.add_argument("--n-max", type=int, help="largest participant count (default 200)")
    common.add_argument("--value-alpha", type=float, help="value curvature (default 0.88)")
    common.add_argument("--value-lambda", type=float, dest="value_lambda",
                        help="loss aversion (default 2.25)")
    common.add_argument("--weight", choices=_WEIGHT_CHOICES,
                        help="probability weighting (default tk)")
    common.add_argument("--weight-delta", type=float, help="tk curvature (default 0.65)")
    common.add_argument("--prelec-alpha", type=float, help="prelec curvature (default 0.65)")
    common.add_argument("--prelec-beta", type=float, help="prelec elevation (default 1)")

    parser = argparse.ArgumentParser(
        prog="prizelab",
        description="Design and compare lottery prize mechanisms under "
                    "prospect-theory preferences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("eval", parents=[common],
                   help="utility of a single game (N is --n-min)")
    sub.add_parser("sweep-n", parents=[common],
                   help="utility vs participant count per mechanism")
    sub.add_parser("optimal-k", parents=[common],
                   help="average utility vs paid fraction")
    sub.add_parser("sweep-f", parents=[common], help="utility vs N per entry fee")
    sub.add_parser("sweep-r", parents=[common], help="utility vs N per rake")
    sub.add_parser("profit", parents=[common],
                   help="operator profit and viability per grid point")
    sub.add_parser("break-even", parents=[common],
                   help="smallest N with non-negative utility per mechanism")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_run_config(args)
        columns, rows = _RUNNERS[args.command](cfg)
        _write_output(cfg, render(columns, rows, cfg.fmt))
    except (ConfigError, UnsupportedMechanismError, ParameterError) as exc:
        print(f"prizelab: {exc}", file=sys.stderr)
        return 2
    except PrizelabError as exc:
        print(f"prizelab: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"prizelab: {exc}", file=sys.stderr)
        return 1
    return 0


def console_main() -> None:
    raise SystemExit(main())
