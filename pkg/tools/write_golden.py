"""Regenerate assets/golden/check_all.jsonl from a full registry run."""

from __future__ import annotations

import sys
from pathlib import Path

from src.cli.qid import render_reports
from src.config import get_settings
from src.engine.claims import run_claims, select_claims

GOLDEN_PATH = Path("assets/golden/check_all.jsonl")


def main() -> None:
    settings = get_settings()
    reports = run_claims(
        select_claims(["all"]),
        depth_cap=settings.depth_cap,
        seed=settings.seed,
        jobs=settings.jobs,
        timing=False,
    )
    failing = [report.claim_id for report in reports if report.status != "pass"]
    if failing:
        print("Refusing to write a golden file with failing claims:")
        for claim_id in failing:
            print(f" - {claim_id}")
        sys.exit(1)

    GOLDEN_PATH.parent.mkdir(parents=True, exist_ok=True)
    GOLDEN_PATH.write_text(render_reports(reports, "json") + "\n", encoding="utf-8")
    print(f"Wrote {len(reports)} reports to {GOLDEN_PATH}.")


if __name__ == "__main__":
    main()
