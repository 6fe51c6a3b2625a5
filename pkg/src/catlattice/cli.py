"""Command-line entry point.

Subcommands: oscillator, bloch, spectrum, sweep, selftest. Scenario
parameters come from --preset or --config (mutually exclusive); without
either, documented defaults apply. Tables print to stdout or go to --out;
--format tree additionally writes a JSON sidecar next to the table.

Exit codes: 0 success, 1 configuration error, 2 numerical-contract
violation, 3 selftest failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional

from .errors import ConfigError, NumericalContractError, SelftestFailure
from . import harness
from .selftest import run_selftest

log = logging.getLogger("catlattice")


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage errors map to exit code 1."""

    def error(self, message):
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="catlattice",
        description="Decoherence of optical cat states in waveguide lattices",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("oscillator", "tight-binding boundary-defect decay and G(z)"),
        ("bloch", "BPM propagation in a tilted array and G(z)"),
        ("spectrum", "bound-state census over a parameter grid"),
        ("sweep", "run a scenario once per value of one parameter"),
        ("selftest", "run the built-in invariant suite"),
    ):
        p = sub.add_parser(name, help=help_text, add_help=True)
        p.add_argument("--config", metavar="PATH",
                       help="INI config file (see README for keys)")
        p.add_argument("--preset", metavar="NAME",
                       help="named parameter set, e.g. fig1-curve1")
        p.add_argument("--out", metavar="PATH",
                       help="write the result table here instead of stdout")
        p.add_argument("--format", choices=("table", "tree"), default="table",
                       help="tree also writes a JSON sidecar")
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads for sweep points")
        p.add_argument("--verbose", action="store_true",
                       help="progress logging on stderr")
    return parser


def _load_config(args) -> harness.ScenarioConfig:
    if args.config and args.preset:
        raise ConfigError("--config and --preset are mutually exclusive")
    if args.preset:
        return harness.load_preset(args.preset, expected_kind=args.command)
    if args.config:
        return harness.load_config_file(args.config, args.command)
    return harness.build_config(args.command)


def _emit(table: harness.ResultTable, out: Optional[str], fmt: str) -> None:
    if out:
        table.write(out)
        log.info("wrote %s", out)
        if fmt == "tree":
            sidecar = out + ".json"
            with open(sidecar, "w") as fh:
                fh.write(table.to_tree_text())
            log.info("wrote %s", sidecar)
        if table.extras is not None:
            _write_map(table, out + ".map.tsv")
    else:
        text = table.to_tree_text() if fmt == "tree" else table.to_tsv_text()
        sys.stdout.write(text)


def _write_map(table: harness.ResultTable, path: str) -> None:
    extras = table.extras
    amp = extras["map_amplitude"]
    z = extras["map_z"]
    x = extras["map_x"]
    stride = max(1, len(x) // 256)
    xs = x[::stride]
    with open(path, "w") as fh:
        fh.write(f"# normalization = {extras['map_normalization']}\n")
        fh.write("# rows: z then |u| at the x samples below\n")
        fh.write("# x = " + "\t".join(repr(float(v)) for v in xs) + "\n")
        for zi, row in zip(z, amp[:, ::stride]):
            fh.write(repr(float(zi)) + "\t"
                     + "\t".join(repr(float(v)) for v in row) + "\n")
    log.info("wrote %s", path)


def _point_path(out: str, index: int) -> str:
    stem, dot, ext = out.rpartition(".")
    if dot:
        return f"{stem}.point{index}.{ext}"
    return f"{out}.point{index}"


def main(argv=None) -> int:
    args = None
    try:
        args = _build_parser().parse_args(argv)
        logging.basicConfig(
            level=logging.INFO if args.verbose else logging.WARNING,
            format="%(levelname)s %(name)s: %(message)s",
            stream=sys.stderr,
        )
        if args.command == "selftest":
            report = run_selftest()
            for line in report.lines():
                print(line)
            if not report.all_passed:
                failed = [name for name, ok, _ in report.checks if not ok]
                raise SelftestFailure("failed: " + ", ".join(failed))
            return 0
        config = _load_config(args)
        log.info("running %s scenario", config.kind)
        if args.command == "sweep":
            tables, summary = harness.run_sweep(config, threads=args.threads)
            if args.out:
                for i, table in enumerate(tables, start=1):
                    _emit(table, _point_path(args.out, i), args.format)
            _emit(summary, args.out, args.format)
        else:
            runner = {
                "oscillator": harness.run_oscillator,
                "bloch": harness.run_bloch,
                "spectrum": harness.run_spectrum,
            }[args.command]
            _emit(runner(config), args.out, args.format)
        return 0
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except NumericalContractError as exc:
        print(f"numerical contract violated: {exc}", file=sys.stderr)
        return 2
    except SelftestFailure as exc:
        print(f"selftest failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
