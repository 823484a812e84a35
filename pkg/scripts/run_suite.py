"""Run the exhaustive suite and write a JSON report.

    python3 scripts/run_suite.py --out report.json --criteria 1,2,8
"""

import argparse
import json
import time

from sylab.suite import CRITERIA, SuiteConfig, run_suite


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="suite_report.json")
    ap.add_argument("--criteria", default=",".join(map(str, CRITERIA)))
    ap.add_argument("--shards", type=int, default=1)
    ap.add_argument("--max-n", type=int, default=SuiteConfig.max_n)
    args = ap.parse_args()

    crit = tuple(int(c) for c in args.criteria.split(","))
    cfg = SuiteConfig(out=args.out, criteria=crit, shards=args.shards, max_n=args.max_n)
    t0 = time.perf_counter()
    report = run_suite(cfg)
    print(json.dumps(report["universe"]))
    for k, rep in report["criteria"].items():
        status = "PASS" if rep["passed"] else "FAIL"
        print(f"{k}: {status} checked={rep['checked']} failures={rep['failures']}")
    print(f"wrote {args.out} in {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
