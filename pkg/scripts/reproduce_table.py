"""Run the fixture suite and print the overhead table plus suite averages.

    python3 scripts/reproduce_table.py [--exact] [--iterations N] [--out DIR]
"""
import argparse
import json
from pathlib import Path

from qtrojan import bench
from qtrojan.sim import NoiseModel

ROOT = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dir", default=str(ROOT / "benchmarks"))
    ap.add_argument("--iterations", type=int, default=20)
    ap.add_argument("--shots", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--exact", action="store_true", help="ideal distributions, no sampling")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", help="also write overhead.csv, tvd.csv and summary.json here")
    args = ap.parse_args()

    run = bench.RunManifest(
        inputs=[args.dir],
        seed=args.seed,
        shots=args.shots,
        noise=None if args.exact else NoiseModel(),
        iterations=args.iterations,
        exact=args.exact,
        jobs=args.jobs,
    )
    suite = bench.run_suite(args.dir, run)
    table = bench.table_csv(suite)
    print(table, end="")
    print()
    for key, value in suite["summary"].items():
        print(f"{key:>24}: {value:.4f}" if isinstance(value, float) else f"{key:>24}: {value}")
    for f in suite["failures"]:
        print(f"failed: {f['circuit']}: {f['error']}")

    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "overhead.csv").write_text(table)
        (out / "tvd.csv").write_text(bench.tvd_csv(suite))
        (out / "summary.json").write_text(json.dumps(suite["summary"], indent=2, sort_keys=True) + "\n")
    return bench.exit_code(suite)


if __name__ == "__main__":
    raise SystemExit(main())
