"""Scan the verification harness over several seeds and report timing.

Run:  python scripts/run_seed_scan.py [instances-per-seed] [n-seeds]
"""

import sys
import time

from logderiv.harness import run_harness


def main():
    per_seed = int(sys.argv[1]) if len(sys.argv) > 1 else 25
    n_seeds = int(sys.argv[2]) if len(sys.argv) > 2 else 4
    grand_total = 0
    failures = 0
    for seed in range(n_seeds):
        start = time.perf_counter()
        report = run_harness(per_seed, seed=seed)
        elapsed = time.perf_counter() - start
        n_claims = sum(len(inst["claims"]) for inst in report["instances"])
        n_fail = sum(
            1
            for inst in report["instances"]
            for c in inst["claims"]
            if c["verdict"] != "pass"
        )
        grand_total += n_claims
        failures += n_fail
        print(
            f"seed {seed}: {per_seed} instances, {n_claims} claims, "
            f"{n_fail} failures, {elapsed:.2f}s"
        )
    print(f"total: {grand_total} claims, {failures} failures")
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
