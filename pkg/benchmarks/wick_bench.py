"""Timing comparison of the pairing-census engines.

Run from the repository root:

    python3 benchmarks/wick_bench.py
    python3 benchmarks/wick_bench.py --vertices 2,4,6 --workers 1,4 --pure-max 4

The census at p vertices walks (3p-1)!! matchings, so each extra vertex
pair costs a factor of ~200; the pure engine is capped separately because
p = 6 takes it minutes rather than seconds.
"""

import argparse
import sys

from cubicmaps.wick import available_engines, census


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--vertices", type=_int_list, default=[2, 4, 6])
    parser.add_argument("--workers", type=_int_list, default=[1, 4])
    parser.add_argument("--pure-max", type=int, default=4,
                        help="largest p given to the pure-Python engine")
    args = parser.parse_args(argv)

    engines = available_engines()
    print(f"engines available: {', '.join(engines)}")
    print(f"{'engine':>8} {'p':>3} {'workers':>7} {'total':>12} {'ms':>9} {'pairings/ms':>12}")
    baseline = {}
    for engine in engines:
        for p in args.vertices:
            if engine == "pure" and p > args.pure_max:
                continue
            for workers in args.workers:
                cen = census(p, workers=workers, engine=engine)
                ms = max(cen.elapsed_ms, 1)
                rate = cen.total // ms
                print(f"{engine:>8} {p:>3} {workers:>7} {cen.total:>12} {ms:>9} {rate:>12}")
                key = (p, workers)
                if engine == "compiled":
                    baseline[key] = ms
                elif key in baseline:
                    print(f"{'':>8} {'':>3} {'':>7} {'speedup':>12} {ms / baseline[key]:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
