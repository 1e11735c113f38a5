#!/usr/bin/env python3
"""Compute the area-oracle values of the named test differentials and store them.

The stored values are regression baselines for the period method; they are
produced by direct two-dimensional integration only.
"""
import argparse
import json
import time
from pathlib import Path

from royden.cases import oracle_cases
from royden.oracle import direct_norm
from royden.quaddiff import validate

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "oracle_baselines.json"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tol", type=float, default=1e-7, help="relative oracle tolerance")
    parser.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = parser.parse_args()

    table = {}
    for name, (g, h) in oracle_cases().items():
        t0 = time.perf_counter()
        est = direct_norm(validate(g, h), tol=args.tol, max_regions=2_000_000)
        table[name] = {
            "g": [[c.real, c.imag] for c in g.coeffs],
            "h": [[c.real, c.imag] for c in h.coeffs],
            "norm": est.value,
            "tolerance": est.tolerance,
            "certified": est.certified,
        }
        print(f"{name:20s} {est.value:.12f} +- {est.tolerance:.2e} ({time.perf_counter() - t0:.1f} s)")
    args.out.write_text(json.dumps({"oracle_tol": args.tol, "cases": table}, indent=2) + "\n")


if __name__ == "__main__":
    main()
