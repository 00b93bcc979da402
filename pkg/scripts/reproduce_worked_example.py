#!/usr/bin/env python3
"""Recompute the full worked example on the bundled three-dimensional chart.

Runs validation, prints all eight tensor tables at symbolic parameters, and
finishes with the complete verification suite.  Exit status follows the CLI
conventions: 0 when everything lands on expectation.
"""

from pathlib import Path

from gsmc.cli import main

SPEC = Path(__file__).resolve().parents[1] / "specs" / "kenmotsu3d.json"
TENSORS = (
    "lc",
    "gsmc",
    "torsion",
    "riemann",
    "ricci",
    "scalar",
    "projective",
    "concircular",
)


def run() -> int:
    spec = str(SPEC)
    rc = main(["validate", spec])
    if rc:
        return rc
    print()
    compute_args = ["compute", spec]
    for name in TENSORS:
        compute_args += ["--tensor", name]
    rc = main(compute_args)
    if rc:
        return rc
    print()
    return main(["verify", spec])


if __name__ == "__main__":
    raise SystemExit(run())
