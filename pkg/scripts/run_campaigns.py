"""Run every verification campaign at its default bound and write JSON reports.

    python scripts/run_campaigns.py --out reports/ [--jobs 2] [--only thm12 thm15]
"""

import argparse
import time
from pathlib import Path

from copsolve.campaigns import CAMPAIGNS, run_campaign


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", type=Path, default=Path("reports"))
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--only", nargs="*", default=None)
    ap.add_argument("--n-max", type=int, default=None, help="override every campaign's bound (clamped to it)")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    failed = 0
    for name in args.only or sorted(CAMPAIGNS):
        spec = CAMPAIGNS[name]
        n_max = min(args.n_max or spec.n_max_bound, spec.n_max_bound)
        t0 = time.perf_counter()
        report = run_campaign(name, n_max, jobs=args.jobs)
        dt = time.perf_counter() - t0
        (args.out / f"{name}_n{n_max}.json").write_text(report.to_json(pretty=True))
        s = report.summary
        print(f"{name:10s} n<={n_max}  {s['passed']:6d}/{s['total']:<6d} {'ok' if report.ok else 'FAILED'}  {dt:7.1f}s")
        failed += not report.ok
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
