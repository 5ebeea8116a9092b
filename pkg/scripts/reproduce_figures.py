#!/usr/bin/env python3
"""Run every named experiment into out/ and finish with the acceptance report.

Usage:
    python scripts/reproduce_figures.py [--out OUT_DIR] [--threads N] [--force]

The per-experiment datasets land in OUT_DIR/<experiment>/; render them with
the plotting frontend afterwards, e.g.

    node frontend/dist/cli.js render --figure fig3 \
        --in out/fig3/fig3.csv --out out/fig3/fig3.svg
"""

import argparse
import sys
import time

from spinbus.cli import main as spinbus_main

EXPERIMENTS = ("fig2", "fig3", "fig4", "fig5", "parity_levels", "scaling")


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="out")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--force", action="store_true")
    args = parser.parse_args()

    for name in EXPERIMENTS:
        argv = [
            "run",
            "--experiment", name,
            "--out", f"{args.out}/{name}",
            "--threads", str(args.threads),
        ]
        if args.force:
            argv.append("--force")
        print(f"=== {name} ===", flush=True)
        start = time.time()
        code = spinbus_main(argv)
        print(f"    ({time.time() - start:.1f}s)")
        if code != 0:
            return code

    print("=== acceptance ===", flush=True)
    return spinbus_main(
        ["verify", "--threads", str(args.threads), "--out", args.out]
        + (["--force"] if args.force else [])
    )


if __name__ == "__main__":
    sys.exit(main())
