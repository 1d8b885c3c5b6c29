"""Command-line interface.

Subcommands: generate, discover, evaluate, benchmark, plot. Each accepts
--manifest (JSON run description), --seed (master seed override), and --out
(output directory override). Exit codes: 0 success, 1 configuration error,
2 runtime/data error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ConfigurationError, DataError
from .suite import (
    default_manifest,
    emit_plots,
    generate_suite,
    load_manifest,
    run_benchmark,
    run_discovery,
    run_evaluation,
)

_COMMANDS = {
    "generate": "materialize the dataset grid (data, masks, ground truths)",
    "discover": "run built-in discovery over a generated grid",
    "evaluate": "score available predictions and write results.csv",
    "benchmark": "generate + discover + evaluate in one pass",
    "plot": "emit bar charts and per-dataset series figures",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lagbench",
        description="Synthetic time-series causal-discovery benchmark",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in _COMMANDS.items():
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--manifest", type=Path, help="run manifest (JSON)")
        cmd.add_argument("--seed", type=int, help="master seed override")
        cmd.add_argument("--out", type=Path, help="output directory override")
    return parser


def _manifest_from(args) -> "RunManifest":
    if args.manifest is not None:
        return load_manifest(args.manifest, seed_override=args.seed, out_override=args.out)
    return default_manifest(seed=args.seed, out=args.out)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        manifest = _manifest_from(args)
        if args.command == "generate":
            dirs = generate_suite(manifest)
            print(f"generated {len(dirs)} datasets under {manifest.output_dir}")
        elif args.command == "discover":
            run_discovery(manifest)
            print(f"discovery complete under {manifest.output_dir}")
        elif args.command == "evaluate":
            results = run_evaluation(manifest)
            print(f"evaluated {len(results)} datasets; results.csv written")
        elif args.command == "benchmark":
            results = run_benchmark(manifest)
            print(f"benchmark complete: {len(results)} datasets scored")
        elif args.command == "plot":
            files = emit_plots(manifest)
            print(f"wrote {len(files)} figures under {manifest.output_dir}")
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except (DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
