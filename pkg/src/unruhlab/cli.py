"""Command line front end.

Subcommands
-----------
sweep     run a sweep from a config file, write CSV
figure    run a named preset, write CSV plus a matplotlib script
validate  cross-check closed forms against the channel pipeline
state     evaluate the protocol at a single parameter point

Exit codes: 0 success, 1 a validation check failed, 2 bad usage or config.
"""

import argparse
import sys
from pathlib import Path

from .channel import AccelerationSpec, r_from_acceleration
from .errors import ConfigError, DegenerateOutcome, UnknownPreset, UnruhLabError
from .localops import REVERSE, WEAK, tied
from .pipeline import run_protocol
from .states import parse_state_preset
from .sweep import (
    FIGURE_PRESETS,
    config_to_text,
    figure_preset,
    load_config,
    plot_script,
    rows_to_csv,
    run_sweep,
)
from .validate import DEFAULT_SAMPLES, DEFAULT_SEED, run_validation


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unruhlab",
        description="weak-measurement / acceleration / reversal protocol lab")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run a sweep described by a config file")
    p_sweep.add_argument("--config", required=True, help="INI file with a [sweep] section")
    p_sweep.add_argument("--out", default="sweep.csv", help="output CSV path")
    p_sweep.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                         help="override a config key (repeatable)")

    p_fig = sub.add_parser("figure", help="run a named figure preset")
    p_fig.add_argument("preset", choices=FIGURE_PRESETS)
    p_fig.add_argument("--out-dir", default=".", help="directory for the outputs")

    p_val = sub.add_parser("validate", help="run the closed-form cross checks")
    p_val.add_argument("--out-dir", default=None,
                       help="also write report.txt and report.csv here")
    p_val.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_val.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)

    p_state = sub.add_parser("state", help="evaluate one parameter point")
    p_state.add_argument("--preset", required=True,
                         help="initial state, e.g. singlet | werner:0.7 | qutrit:1")
    group = p_state.add_mutually_exclusive_group(required=True)
    group.add_argument("--r", type=float, help="Rindler angle in [0, pi/4]")
    group.add_argument("--accel", type=float,
                       help="proper acceleration (needs --omega)")
    p_state.add_argument("--omega", type=float, default=None,
                         help="mode frequency, used with --accel")
    p_state.add_argument("--alpha", type=float, default=0.0,
                         help="weak strength, applied to every level of both parties")
    p_state.add_argument("--beta", type=float, default=0.0,
                         help="reversing strength, same tying")
    p_state.add_argument("--phi", type=float, default=0.0)
    p_state.add_argument("--out", default=None,
                         help="write the final state as i,j,re,im CSV")
    return parser


def _parse_overrides(pairs: list[str]) -> dict:
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"--set needs KEY=VALUE, got {pair!r}")
        key, _, value = pair.partition("=")
        out[key.strip()] = value
    return out


def _cmd_sweep(args) -> int:
    config = load_config(args.config, overrides=_parse_overrides(args.set))
    rows = run_sweep(config)
    Path(args.out).write_text(rows_to_csv(rows, config), encoding="utf-8")
    degenerate = sum(1 for r in rows if r.degenerate)
    print(f"wrote {args.out}: {len(rows)} rows ({degenerate} degenerate)")
    return 0


def _cmd_figure(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    config = figure_preset(args.preset)
    rows = run_sweep(config)
    csv_name = f"{args.preset}.csv"
    (out_dir / csv_name).write_text(rows_to_csv(rows, config), encoding="utf-8")
    (out_dir / f"plot_{args.preset}.py").write_text(
        plot_script(args.preset, csv_name), encoding="utf-8")
    (out_dir / f"{args.preset}.ini").write_text(config_to_text(config),
                                                encoding="utf-8")
    print(f"wrote {out_dir / csv_name}: {len(rows)} rows")
    print(f"render with: python {out_dir / f'plot_{args.preset}.py'}")
    return 0


def _cmd_validate(args) -> int:
    report = run_validation(seed=args.seed, samples=args.samples)
    text = report.to_text()
    print(text, end="")
    if args.out_dir is not None:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "report.txt").write_text(text, encoding="utf-8")
        (out_dir / "report.csv").write_text(report.to_csv(), encoding="utf-8")
    return 0 if report.passed else 1


def _cmd_state(args) -> int:
    rho0 = parse_state_preset(args.preset)
    dim = rho0.dims[0]
    if args.r is not None:
        r = args.r
    else:
        if args.omega is None:
            raise ConfigError("--accel requires --omega")
        r = r_from_acceleration(args.accel, args.omega)
    acc = AccelerationSpec(r, args.phi)
    weak = tied(WEAK, args.alpha, dim)
    reverse = tied(REVERSE, args.beta, dim)
    try:
        result = run_protocol(rho0, weak, reverse, acc)
    except DegenerateOutcome as exc:
        print(f"degenerate point: {exc}", file=sys.stderr)
        return 1
    final = result.final
    print(f"r = {r:.17g}")
    print(f"p_success = {result.p_success:.17g}")
    print(f"final dims = {final.dims}")
    if args.out is not None:
        lines = ["i,j,re,im"]
        n = final.dim
        for i in range(n):
            for j in range(n):
                v = final.matrix[i, j]
                lines.append(f"{i},{j},{v.real:.17g},{v.imag:.17g}")
        Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"wrote {args.out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "sweep": _cmd_sweep,
        "figure": _cmd_figure,
        "validate": _cmd_validate,
        "state": _cmd_state,
    }
    try:
        return handlers[args.command](args)
    except (ConfigError, UnknownPreset) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnruhLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
