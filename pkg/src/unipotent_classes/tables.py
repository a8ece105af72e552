"""Family rows in the layout of the published class tables.

Analyzer branches are first turned into rows (one per branch), then rows
differing only in whether a coordinate j is absent or an arbitrary nonzero
value, with equal centralizers, are merged into a single row with a free
coordinate b_j.  Rows for the good characteristic and each bad prime are
finally grouped under a name and given a prime column.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .analyzer import CountExpression, ParameterKind, analyze_family
from .classifier import classify
from .golden import TableRow
from .roots import bad_primes, build_root_system
from .vpoly import ClassCountPolynomial


@dataclass(frozen=True)
class FamilyRow:
    kinds: tuple[tuple[int, ParameterKind], ...]  # nonzero coordinates only
    size: ClassCountPolynomial
    centralizer: tuple[int, int]

    def kind_map(self) -> dict[int, ParameterKind]:
        return dict(self.kinds)

    @property
    def family(self) -> str:
        if not self.kinds:
            return "1"
        return "".join(f"x_{j}({k.value}_{j})" for j, k in self.kinds)

    @property
    def name(self) -> str:
        lead = [j for j, k in self.kinds if k is ParameterKind.A]
        if not lead:
            lead = [j for j, _ in self.kinds]
        return ",".join(str(j) for j in lead) if lead else "1"

    @property
    def centralizer_str(self) -> str:
        return format_centralizer(self.centralizer)


def format_centralizer(c: tuple[int, int]) -> str:
    m, e = c
    if e == 0:
        return str(m)
    q = "q" if e == 1 else f"q^{e}"
    return q if m == 1 else f"{m}{q}"


def format_size(poly: ClassCountPolynomial) -> str:
    """Factored display such as 'v^2(v+1)' when the size is v^a (v+1)^b (v-1)^c times a constant."""
    coeffs = [Fraction(c) for c in poly.coeffs]
    if not coeffs:
        return "0"
    for a in range(len(coeffs)):
        for b in range(len(coeffs) - a):
            for c in range(len(coeffs) - a - b):
                base = (ClassCountPolynomial.v() ** a * ClassCountPolynomial.v_plus(1) ** b
                        * ClassCountPolynomial.v_plus(-1) ** c)
                if base.degree != poly.degree:
                    continue
                scale = coeffs[-1] / base.coeffs[-1]
                if all(Fraction(x) * scale == y for x, y in zip(base.coeffs, coeffs)):
                    text = ""
                    if a:
                        text += "v" if a == 1 else f"v^{a}"
                    for fac, n in (("(v+1)", b), ("(v-1)", c)):
                        if n:
                            text += fac if n == 1 else f"{fac}^{n}"
                    if not text:
                        return str(scale)
                    if text in ("(v+1)", "(v-1)") and scale == 1:
                        return text[1:-1]
                    return text if scale == 1 else f"{scale}{text}"
    return str(poly)


def branch_rows(expressions: list[CountExpression]) -> list[FamilyRow]:
    rows = []
    for expr in expressions:
        for b in expr.branches:
            kinds = tuple((j, k) for j, k in b.kinds if k is not ParameterKind.ZERO)
            rows.append(FamilyRow(kinds, b.count, b.centralizer))
    return rows


def merge_rows(rows: list[FamilyRow]) -> list[FamilyRow]:
    """Fold pairs of rows that differ in one trailing coordinate j.

    (S with a_j, S without j) becomes S with b_j, highest j first, and
    (S with e_j, S without j) becomes S with f_j.  j must be the largest
    a-coordinate of its row and not its only one, so the leading a's that
    name a row are never absorbed; the exception is x_j(a_j) against the
    identity row, which gives x_j(b_j).
    """
    rows = list(rows)
    while True:
        index = {(r.kinds, r.centralizer): i for i, r in enumerate(rows)}
        candidates = []
        for i, r in enumerate(rows):
            lead = [jj for jj, k in r.kinds if k is ParameterKind.A]
            for j, k in r.kinds:
                rest = tuple(x for x in r.kinds if x[0] != j)
                if k is ParameterKind.A:
                    if j < max(lead) or (len(lead) < 2 and rest):
                        continue
                    factor, merged = ClassCountPolynomial.v(), ParameterKind.B
                elif k is ParameterKind.E:
                    factor, merged = ClassCountPolynomial.const(1), ParameterKind.F
                else:
                    continue
                partner = index.get((rest, r.centralizer))
                if partner is not None and r.size == rows[partner].size * factor:
                    candidates.append((j, i, partner, merged))
        if not candidates:
            break
        j, i, partner, merged = max(candidates, key=lambda c: c[:3])
        r = rows[i]
        kinds = tuple((jj, merged if jj == j else k) for jj, k in r.kinds)
        new_row = FamilyRow(kinds, r.size + rows[partner].size, r.centralizer)
        rows = [x for n, x in enumerate(rows) if n not in (i, partner)] + [new_row]
    return sorted(rows, key=_row_key)


def _row_key(r: FamilyRow):
    lead = [j for j, k in r.kinds if k is ParameterKind.A] or [j for j, _ in r.kinds]
    return (-len(lead), lead, [j for j, _ in r.kinds], r.centralizer)


def rows_for(type_label: str, rank: int, p: int) -> list[FamilyRow]:
    rs = build_root_system(type_label, rank)
    exprs = [analyze_family(f, p) for f in classify(rs, p)]
    return merge_rows(branch_rows(exprs))


def good_prime(type_label: str, rank: int) -> int:
    """Smallest prime that is good for the type."""
    bad = bad_primes(type_label, rank)
    p = 2
    while p in bad or any(p % d == 0 for d in range(2, p)):
        p += 1
    return p


def centralizer_profile(rows) -> dict[tuple[int, int], ClassCountPolynomial]:
    """Total family size per centralizer order; independent of how rows are split."""
    out: dict[tuple[int, int], ClassCountPolynomial] = defaultdict(lambda: ClassCountPolynomial(()))
    for r in rows:
        if isinstance(r, TableRow):
            out[r.centralizer_pair] = out[r.centralizer_pair] + r.size_poly
        else:
            out[r.centralizer] = out[r.centralizer] + r.size
    return {k: v for k, v in out.items() if not v.is_zero()}


def table_rows(type_label: str, rank: int) -> list[TableRow]:
    """Rows for the good characteristic and every bad prime, with a prime column."""
    bad = sorted(bad_primes(type_label, rank), reverse=True)
    good = good_prime(type_label, rank)
    per_prime = {p: rows_for(type_label, rank, p) for p in [good] + bad}
    good_label = "!=" + ",".join(str(p) for p in sorted(bad))
    names: list[str] = []
    grouped: dict[str, dict[int, list[FamilyRow]]] = defaultdict(lambda: defaultdict(list))
    for p, rows in per_prime.items():
        for r in rows:
            if r.name not in names:
                names.append(r.name)
            grouped[r.name][p].append(r)
    names.sort(key=lambda n: (-len(n.split(",")), [int(x) for x in n.split(",")]))
    out = []
    for name in names:
        by_p = grouped[name]
        signature = {p: [(r.family, r.size, r.centralizer) for r in by_p.get(p, [])] for p in per_prime}
        if bad and all(signature[p] == signature[good] for p in per_prime):
            for r in by_p[good]:
                out.append(TableRow(name, "-", r.family, format_size(r.size), r.centralizer_str))
            continue
        # primes sharing identical rows are merged into one prime label
        labels: list[tuple[str, list[FamilyRow]]] = [(good_label, by_p.get(good, []))] if bad else [
            ("-", by_p.get(good, []))]
        for p in bad:
            if signature[p] == signature[good]:
                continue
            labels.append((f"={p}", by_p.get(p, [])))
        for label, rows in labels:
            for r in rows:
                out.append(TableRow(name, label, r.family, format_size(r.size), r.centralizer_str))
    return out


def render_table(type_label: str, rank: int, rows: list[TableRow] | None = None) -> str:
    rows = table_rows(type_label, rank) if rows is None else rows
    header = ("Name", "Prime", "Family", "Size of family", "Centralizer size")
    cells = [header] + [
        (r.name, _display_prime(r.prime), r.family, r.size, r.centralizer) for r in rows
    ]
    lines = [f"Conjugacy classes of U for type {type_label}{rank}"]
    lines += [" | ".join(c) for c in cells]
    return "\n".join(lines)


def _display_prime(prime: str) -> str:
    if prime == "-":
        return "−"
    if prime.startswith("!="):
        return "≠" + prime[2:]
    return prime
