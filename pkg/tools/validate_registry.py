"""Validate the claim registry JSON."""

from __future__ import annotations

import json
import sys
from pathlib import Path

from src.engine.claims import CHECKS, THEOREM3_ITEMS
from src.engine.claims.runtime import REGISTRY_PATH
from src.engine.dissection import QUOTIENTS, THEOREM_PARAMS
from src.engine.partitions import TRIPLES

REQUIRED_PARAMS = {
    "helper": ("identity",),
    "cf": ("name",),
    "dissection": ("t", "s", "r", "p"),
    "reduction": ("theorem",),
    "scan": ("quotient",),
    "partition": ("triple",),
}


def validate_registry(path: Path) -> list[str]:
    errors: list[str] = []
    entries = json.loads(path.read_text(encoding="utf-8"))
    seen: set[str] = set()
    for entry in entries:
        claim_id = entry.get("id")
        if not claim_id:
            errors.append(f"Entry without an id: {entry}")
            continue
        if claim_id in seen:
            errors.append(f"Duplicate claim id '{claim_id}'")
        seen.add(claim_id)

        kind = entry.get("kind")
        if kind not in CHECKS:
            errors.append(f"Claim '{claim_id}' has unknown kind '{kind}'")
            continue
        if int(entry.get("order", -1)) < 0 or int(entry.get("scale", 1)) < 1:
            errors.append(f"Claim '{claim_id}' needs order >= 0 and scale >= 1")

        params = entry.get("params", {})
        for key in REQUIRED_PARAMS.get(kind, ()):
            if key not in params:
                errors.append(f"Claim '{claim_id}' ({kind}) is missing param '{key}'")

        if kind == "scan":
            if params.get("quotient") not in QUOTIENTS:
                errors.append(f"Scan '{claim_id}' names unknown quotient '{params.get('quotient')}'")
            expected = entry.get("expected")
            if not expected or expected.get("status") not in ("AllZero", "FirstNonzero"):
                errors.append(f"Scan '{claim_id}' needs an expected outcome")
        if kind == "reduction" and params.get("theorem") not in THEOREM_PARAMS:
            errors.append(f"Reduction '{claim_id}' names unknown theorem '{params.get('theorem')}'")
        if kind == "theta" and claim_id not in THEOREM3_ITEMS:
            errors.append(f"Theta claim '{claim_id}' has no theorem item")
        if kind == "partition" and params.get("triple") not in TRIPLES:
            errors.append(f"Partition claim '{claim_id}' names unknown triple '{params.get('triple')}'")
    return errors


def main() -> None:
    if not REGISTRY_PATH.exists():
        print(f"No registry found at {REGISTRY_PATH}.")
        sys.exit(1)

    errors = validate_registry(REGISTRY_PATH)
    if errors:
        print("Registry validation failed:")
        for err in errors:
            print(f" - {err}")
        sys.exit(1)

    print("Claim registry looks consistent.")


if __name__ == "__main__":
    main()
