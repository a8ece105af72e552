"""Exhaustive class counts over a grid of types and field sizes, against the
symbolic polynomial for the corresponding characteristic.

    python scripts/bruteforce_grid.py [--max-elements N]
"""

import argparse
import time

from unipotent_classes.bruteforce import MAX_ELEMENTS, count_classes, symbolic_total
from unipotent_classes.fields import prime_power
from unipotent_classes.roots import build_root_system

GRID = [
    ("A", 3, [2, 3, 4, 5]),
    ("B", 2, [2, 3, 4, 5, 7, 8, 9]),
    ("C", 2, [2, 3, 4]),
    ("G", 2, [2, 3, 4, 5, 7]),
    ("B", 3, [2, 3, 4]),
    ("C", 3, [2, 3, 4]),
    ("D", 4, [2, 3]),
    ("B", 4, [2]),
    ("C", 4, [2]),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-elements", type=int, default=MAX_ELEMENTS)
    args = parser.parse_args()

    print(f"{'type':5} {'q':>3} {'|U|':>10} {'classes':>8} {'symbolic':>8}  time")
    for t, r, qs in GRID:
        rs = build_root_system(t, r)
        for q in qs:
            if q**rs.N > args.max_elements:
                continue
            p, _ = prime_power(q)
            start = time.perf_counter()
            inv = count_classes(rs, q)
            elapsed = time.perf_counter() - start
            expected = int(symbolic_total(rs, p).at_q(q))
            flag = "" if expected == inv.total_classes else "  MISMATCH"
            print(f"{t}{r:<4} {q:>3} {inv.order:>10} {inv.total_classes:>8} {expected:>8}  {elapsed:.2f} s{flag}")


if __name__ == "__main__":
    main()
