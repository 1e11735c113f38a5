#!/usr/bin/env python3
"""Period method against the direct area integral on the named and on random differentials."""
import argparse
import time

from royden.cases import oracle_cases, random_differential
from royden.norm import royden_norm
from royden.oracle import direct_norm
from royden.quaddiff import validate


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--random", type=int, default=5, help="number of extra random differentials")
    parser.add_argument("--tol", type=float, default=1e-6, help="oracle relative tolerance")
    args = parser.parse_args()

    cases = dict(oracle_cases())
    for k in range(args.random):
        cases[f"random_{k}"] = random_differential(100 + k, 4 + k % 4)

    print(f"{'case':18s} {'periods':>16s} {'direct':>16s} {'rel gap':>9s} {'t_per':>7s} {'t_dir':>7s}")
    for name, (g, h) in cases.items():
        q = validate(g, h)
        t0 = time.perf_counter()
        res = royden_norm(q)
        t1 = time.perf_counter()
        est = direct_norm(q, tol=args.tol)
        t2 = time.perf_counter()
        gap = abs(res.value - est.value) / est.value
        print(f"{name:18s} {res.value:16.10f} {est.value:16.10f} {gap:9.1e} {t1 - t0:7.3f} {t2 - t1:7.3f}")


if __name__ == "__main__":
    main()
