#!/usr/bin/env python3
"""Scan rational parameter points and summarize the suite verdict at each.

One line per (alpha, beta) grid point: pass counts, documented mismatches
and off-expectation records.  Useful for eyeballing parameter loci; every
computation is exact, so the grid can include the singular values -1, 0
and +/-1 without any numerical caveats.
"""

import argparse
import json
from fractions import Fraction
from pathlib import Path

from gsmc.analysis import run_identity_suite
from gsmc.contact import load_contact
from gsmc.manifold import load_spec

DEFAULT_SPEC = Path(__file__).resolve().parents[1] / "specs" / "kenmotsu3d.json"
DEFAULT_GRID = "-2,-1,-1/2,0,1/2,1,2"


def _values(text: str) -> list[Fraction]:
    return [Fraction(part) for part in text.split(",") if part]


def run() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("spec", nargs="?", default=str(DEFAULT_SPEC))
    ap.add_argument("--alphas", default=DEFAULT_GRID, help="comma-separated rationals")
    ap.add_argument("--betas", default=DEFAULT_GRID, help="comma-separated rationals")
    args = ap.parse_args()

    doc = json.loads(Path(args.spec).read_text(encoding="utf-8"))
    spec = load_spec(doc)
    structure = load_contact(spec)
    table = spec.table
    off_grid = 0
    for a in _values(args.alphas):
        for b in _values(args.betas):
            rep = run_identity_suite(
                spec, structure, table.constant(a), table.constant(b)
            )
            s = rep.summary()
            flag = "ok" if rep.ok else "UNEXPECTED"
            print(
                f"alpha={str(a):>5}  beta={str(b):>5}  {flag:<10} "
                f"passed={s['passed']:>2}  documented={s['documented_mismatches']:>2}  "
                f"off={s['unexpected']}"
            )
            off_grid += 0 if rep.ok else 1
    return 1 if off_grid else 0


if __name__ == "__main__":
    raise SystemExit(run())
