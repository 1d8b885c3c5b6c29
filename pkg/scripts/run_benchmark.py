#!/usr/bin/env python3
"""Run the benchmark grid and print the aggregate table.

Quick mode (default) covers all 18 variants at n=500 on the 4-variable/lag-2
graph. --full adds the remaining sample sizes; --sweep also crosses the
variable/lag grid (4/6/8 variables x lag 2/3/4). Figures land next to the
datasets when --plots is given.
"""

import argparse
from pathlib import Path

from lagbench.suite import RunManifest, emit_plots, run_benchmark


def parse_args():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("benchmark_out"))
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--full", action="store_true", help="all sample sizes, not just 500")
    parser.add_argument("--sweep", action="store_true", help="cross vars {4,6,8} x lag {2,3,4}")
    parser.add_argument("--alpha", type=float, default=0.05, help="lag-PC significance level")
    parser.add_argument("--plots", action="store_true", help="emit SVG figures")
    return parser.parse_args()


def main():
    args = parse_args()
    sizes = (500, 1000, 3000, 5000) if args.full else (500,)
    configs = (
        tuple((nv, ml) for nv in (4, 6, 8) for ml in (2, 3, 4)) if args.sweep else ((4, 2),)
    )
    manifest = RunManifest(
        master_seed=args.seed,
        output_dir=args.out,
        sizes=sizes,
        graph_configs=configs,
        pc_alpha=args.alpha,
    )
    results = run_benchmark(manifest)

    header = f"{'variant':<8}{'n':>6}{'vars':>6}{'lag':>5}{'TPR':>8}{'FDR':>8}{'SHD':>6}"
    print(header)
    print("-" * len(header))
    for row in results:
        report, status = row["lag_pc"]
        if report is None:
            cells = f"{'--':>8}{'--':>8}{'--':>6}  {status}"
        else:
            cells = f"{report.tpr:>8.2f}{report.fdr:>8.2f}{report.shd:>6d}"
        print(
            f"{row['variant']:<8}{row['size']:>6}{row['num_variables']:>6}"
            f"{row['max_lag']:>5}{cells}"
        )
    print(f"\nfull results: {manifest.output_dir / 'results.csv'}")
    if args.plots:
        files = emit_plots(manifest, results)
        print(f"wrote {len(files)} figures")


if __name__ == "__main__":
    main()
