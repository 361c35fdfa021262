"""Command line entry point: ``densedp run`` and ``densedp ingest``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .graph import ParseError, read_edge_list, write_edge_list, write_sidecar
from .harness import ALGORITHMS, ConfigError, ExperimentConfig, run_experiment, write_csv

EXIT_CONFIG = 2
EXIT_IO = 3


def _eps_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="densedp", description="Private densest subgraph experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment grid and write a CSV")
    src = run.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="edge-list file (.txt, .csv, optionally .gz)")
    src.add_argument("--gen", help="generator: planted:n,k | twoclique:k1,k2 | gnm:n,m[,seed]")
    run.add_argument("--alg", required=True, choices=ALGORITHMS)
    run.add_argument("--eps", type=_eps_list, default=(1.0,), help="comma-separated epsilon grid")
    run.add_argument("--sigma", type=float, default=2.0 ** -30)
    run.add_argument("--C", type=float, default=None,
                     help="threshold constant (default: smallest value meeting the noise-tail condition)")
    run.add_argument("--err-C", type=float, default=None, help="bucket width constant for dp-linear")
    run.add_argument("--err", type=int, default=None, help="explicit bucket width for dp-linear")
    run.add_argument("--trials", type=int, default=1)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--out", required=True, help="output CSV path")

    ingest = sub.add_parser("ingest", help="compact an edge list and write a JSON sidecar")
    ingest.add_argument("--input", required=True)
    ingest.add_argument("--out", required=True, help="output prefix; writes <out>.txt, <out>.json, <out>.ids")
    return parser


def _run(args) -> int:
    extra = {} if args.err_C is None else {"err_C": args.err_C}
    config = ExperimentConfig(
        algorithm=args.alg, input_path=args.input, generator=args.gen, epsilons=args.eps,
        sigma=args.sigma, C=args.C, err=args.err, trials=args.trials, seed=args.seed, out=args.out, **extra)
    records = run_experiment(config)
    write_csv(records, args.out)
    return 0


def _ingest(args) -> int:
    g = read_edge_list(args.input)
    out = Path(args.out)
    with open(out.with_suffix(".txt"), "w") as f:
        write_edge_list(g, f)
    ids = out.with_suffix(".ids")
    ids.write_text("".join(f"{v}\n" for v in g.id_map.tolist()))
    write_sidecar(g, out.with_suffix(".json"), id_map_file=ids.name)
    print(f"{g.name}: n={g.n} m={g.m} dropped={g.dropped_edges}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args) if args.command == "run" else _ingest(args)
    except ConfigError as exc:
        print(f"densedp: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, ParseError) as exc:
        print(f"densedp: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
