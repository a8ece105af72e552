"""Run the classifier and analyzer for every type and prime with a published
class-count polynomial and compare the totals.

    python scripts/reproduce_class_counts.py [--good-prime P]
"""

import argparse
import time

from unipotent_classes.analyzer import analyze_family, mass_formula_holds, total_count
from unipotent_classes.classifier import classify, unresolved_steps
from unipotent_classes.golden import published_k_poly, published_types
from unipotent_classes.roots import bad_primes, build_root_system
from unipotent_classes.tables import good_prime


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--good-prime", type=int, default=None,
                        help="prime used for the good-characteristic rows (default: smallest good prime)")
    args = parser.parse_args()

    print(f"{'type':5} {'p':>3} {'families':>8} {'unres.':>6} {'mass':>5} {'match':>5}  k(U)")
    for t, r in published_types():
        rs = build_root_system(t, r)
        primes = sorted(bad_primes(t, r)) + [args.good_prime or good_prime(t, r)]
        for p in primes:
            start = time.perf_counter()
            fams = classify(rs, p)
            exprs = [analyze_family(f, p) for f in fams]
            k = total_count(exprs)
            want = published_k_poly(t, r, p)
            line = (f"{t}{r:<4} {p:>3} {len(fams):>8} {unresolved_steps(fams):>6} "
                    f"{'ok' if mass_formula_holds(exprs, rs.N) else 'FAIL':>5} "
                    f"{'yes' if k == want else 'NO':>5}  {k}")
            if k != want:
                line += f"   (printed: {want})"
            print(line + f"   [{time.perf_counter() - start:.1f} s]")


if __name__ == "__main__":
    main()
