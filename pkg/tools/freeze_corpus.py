"""Regenerate the frozen corpus expectation table in catalog.py.

Runs the classifier over every corpus spec and verifies the prediction
against the computed primitive quotient before printing the table.
"""

import sys
import time

from brauerrel.catalog import _NAMED_EXTRAS, _grammar_specs, parse_group_spec
from brauerrel.classify import classify, verify_classification


def main() -> int:
    specs = _grammar_specs() + _NAMED_EXTRAS + ["Heis5", "wr:C3:C4"]
    rows = []
    bad = []
    for spec in specs:
        t0 = time.time()
        G = parse_group_spec(spec)
        if spec == "wr:C3:C4":
            case = classify(G)
            checked = "classify-only"
        else:
            rep = verify_classification(G)
            case = rep.case
            checked = "ok" if (rep.match and rep.generators_span) else "MISMATCH"
            if checked != "ok":
                bad.append(spec)
        rows.append((spec, case.tag, str(case.predicted)))
        print(
            f"# {spec:28s} {case.tag:12s} {case.predicted!s:24s}"
            f" {checked} ({time.time() - t0:.1f}s)",
            file=sys.stderr,
        )
    print("_EXPECTED: dict[str, tuple[str, str]] = {")
    for spec, tag, inv in rows:
        print(f'    "{spec}": ("{tag}", "{inv}"),')
    print("}")
    if bad:
        print(f"MISMATCHES: {bad}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
