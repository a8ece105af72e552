"""Compare the printed family tables with the generated ones.

For each type and characteristic the family sizes are summed per centralizer
order on both sides; orders where they differ are listed together with the
exhaustive centralizer histogram at the smallest field, and whether each
side satisfies the class equation sum |family| q^N / |C| = q^N.

    python scripts/compare_tables.py [--type G2]
"""

import argparse

from unipotent_classes.bruteforce import count_classes
from unipotent_classes.golden import FAMILY_TABLES, published_rows
from unipotent_classes.roots import bad_primes, build_root_system
from unipotent_classes.tables import centralizer_profile, good_prime, rows_for


def _order(m, e):
    return f"{m if m > 1 else ''}q^{e}" if e else str(m)


def _class_equation(profile, N, q):
    return sum(size.at_q(q) * q**N / (m * q**e) for (m, e), size in profile.items()) == q**N


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--type", dest="type_name")
    args = parser.parse_args()

    for t, r in FAMILY_TABLES:
        if args.type_name and args.type_name not in (t, f"{t}{r}"):
            continue
        rs = build_root_system(t, r)
        for p in sorted(bad_primes(t, r)) + [good_prime(t, r)]:
            printed = centralizer_profile(published_rows(t, r, p))
            ours = centralizer_profile(rows_for(t, r, p))
            keys = sorted(set(printed) | set(ours), key=lambda k: (k[1], k[0]))
            differing = [k for k in keys if printed.get(k) != ours.get(k)]
            print(f"{t}{r}, p = {p}: {len(differing)} centralizer orders differ")
            if not differing:
                continue
            for k in differing:
                print(f"  {_order(*k):>6}: printed {printed.get(k, 0)!s:>16}   generated {ours.get(k, 0)!s:>16}")
            q = p
            inv = count_classes(rs, q)
            print(f"  enumeration at q = {q}: {inv.centralizer_histogram}")
            print(f"  class equation at q = {q}: printed {_class_equation(printed, rs.N, q)}, "
                  f"generated {_class_equation(ours, rs.N, q)}")


if __name__ == "__main__":
    main()
