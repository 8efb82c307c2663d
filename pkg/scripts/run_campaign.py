"""Run a QI campaign and write JSON and CSV reports.

    python3 scripts/run_campaign.py --rank 2 --samples 500 --max-len 30 --out results/
"""

import argparse
from collections import Counter
from pathlib import Path

from magnus_qi.qi import CampaignConfig, report_csv, report_json, run_campaign


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rank", type=int, default=2)
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--max-len", type=int, default=30)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--oracle-radius", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()

    cfg = CampaignConfig(
        rank=args.rank, samples=args.samples, max_len=args.max_len, seed=args.seed,
        oracle_radius=args.oracle_radius, workers=args.workers,
    )
    report = run_campaign(cfg)
    args.out.mkdir(parents=True, exist_ok=True)
    stem = f"qi_r{cfg.rank}_n{cfg.samples}_L{cfg.max_len}_s{cfg.seed}"
    (args.out / f"{stem}.json").write_text(report_json(report))
    (args.out / f"{stem}.csv").write_text(report_csv(report))

    failed = Counter(k for r in report["records"] for k, v in r["checks"].items() if v is False)
    for key, value in report["summary"].items():
        if key != "failedIndices":
            print(f"{key}: {value}")
    print("failed checks:", dict(failed) or "none")
    print(f"wrote {args.out / stem}.{{json,csv}}")


if __name__ == "__main__":
    main()
