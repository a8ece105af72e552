"""Exhaustive conjugacy classes of U(q) for small q.

Elements are coded as base-q integers (coordinate j is digit j).  For every
generator x_i(lam), lam running over an F_p-basis of F_q, the conjugation
map u -> x_i(lam) u x_i(lam)^{-1} is evaluated on all codes at once from the
generic normal-form formulas of the engine, giving a permutation of the
codes.  The classes are the orbits of the group these permutations generate,
i.e. the connected components of the graph with an edge u -> g(u) for each
generator g.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .analyzer import CountExpression, analyze_family, total_count
from .classifier import classify
from .engine import formulas_for
from .fields import FiniteField, field_of_order
from .golden import published_k_poly, published_rows
from .polys import Poly
from .roots import RootSystem
from .tables import centralizer_profile

MAX_ELEMENTS = 1 << 22
BURNSIDE_LIMIT = 1 << 12


class TooLarge(ValueError):
    pass


class VerificationError(AssertionError):
    pass


class OverlapDetected(VerificationError):
    pass


class CountMismatch(VerificationError):
    pass


class CentralizerMismatch(VerificationError):
    pass


@dataclass(frozen=True)
class ClassRecord:
    representative: tuple[int, ...]  # least element of the class, as field codes
    size: int
    centralizer: int


@dataclass
class ClassInventory:
    q: int
    type_label: str
    rank: int
    N: int
    total_classes: int
    class_records: list[ClassRecord]
    centralizer_histogram: dict[int, int]
    labels: np.ndarray = field(repr=False)  # class index of every element code

    @property
    def order(self) -> int:
        return self.q**self.N


# ----------------------------------------------------------------------
# vectorised evaluation of the group law
# ----------------------------------------------------------------------

class _ArrayField:
    """Table arithmetic on numpy arrays of field codes."""

    def __init__(self, F: FiniteField):
        self.F = F
        self.add, self.mul, self.neg = F.tables()
        self._pow: dict[int, np.ndarray] = {}

    def power_table(self, e: int) -> np.ndarray:
        if e not in self._pow:
            self._pow[e] = np.array([self.F.power(a, e) for a in range(self.F.q)], dtype=np.int64)
        return self._pow[e]


def _digits(q: int, N: int) -> list[np.ndarray]:
    codes = np.arange(q**N, dtype=np.int64)
    out = []
    for _ in range(N):
        out.append(codes % q)
        codes = codes // q
    return out


def _encode(coords: list[np.ndarray], q: int) -> np.ndarray:
    code = np.zeros_like(coords[0])
    for c in reversed(coords):
        code = code * q + c
    return code


def _evaluate(poly: Poly, scalars: dict[int, int], arrays: dict[int, np.ndarray],
              af: _ArrayField, size: int) -> np.ndarray:
    """Value of an integer polynomial with some variables fixed to field
    constants (``scalars``) and the others given as arrays of codes.
    Variables in neither mapping are zero."""
    F = af.F
    ring = poly.ring
    total = np.zeros(size, dtype=np.int64)
    cache: dict[tuple[int, int], np.ndarray] = {}
    for m, c in poly.terms.items():
        coeff = F.from_int(c)
        arr = None
        for i, e in enumerate(ring.exponents(m)):
            if not e:
                continue
            if i in scalars:
                coeff = F.mul(coeff, F.power(scalars[i], e))
            elif i in arrays:
                key = (i, e)
                if key not in cache:
                    cache[key] = af.power_table(e)[arrays[i]]
                arr = cache[key] if arr is None else af.mul[arr, cache[key]]
            else:
                coeff = 0
            if coeff == 0:
                break
        if coeff == 0:
            continue
        if arr is None:
            total = af.add[total, coeff]
        else:
            total = af.add[total, af.mul[coeff][arr]]
    return total


def batch_multiply(rs: RootSystem, F: FiniteField, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Coordinates of x y for batches of coordinate rows X, Y (field codes)."""
    prod, _, _ = formulas_for(rs).reduced(F.p)
    N = rs.N
    arrays = {j: X[:, j] for j in range(N)} | {N + j: Y[:, j] for j in range(N)}
    af = _ArrayField(F)
    return np.stack([_evaluate(f, {}, arrays, af, len(X)) for f in prod], axis=1)


def _generators(N: int, F: FiniteField) -> list[tuple[int, int]]:
    # all root subgroups: simple ones need not generate U in bad characteristic
    return [(i, lam) for i in range(N) for lam in F.prime_basis()]


def conjugation_permutations(rs: RootSystem, q: int) -> list[np.ndarray]:
    """For each generator g, the array code(u) -> code(g u g^{-1})."""
    F, N = _check_size(rs, q)
    _, _, conj = formulas_for(rs).reduced(F.p)
    return _action(conj, rs, F, on_left=True)


def _action(formulas: list[Poly], rs: RootSystem, F: FiniteField, *, on_left: bool) -> list[np.ndarray]:
    N, q = rs.N, F.q
    af = _ArrayField(F)
    coords = _digits(q, N)
    arrays = {(N + j if on_left else j): coords[j] for j in range(N)}
    size = q**N
    perms = []
    for i, lam in _generators(N, F):
        scalars = {(i if on_left else N + i): lam}
        image = [_evaluate(f, scalars, arrays, af, size) for f in formulas]
        perms.append(_encode(image, q))
    return perms


def _check_size(rs: RootSystem, q: int) -> tuple[FiniteField, int]:
    F = field_of_order(q)
    if q**rs.N > MAX_ELEMENTS:
        raise TooLarge(f"|U({q})| = {q}^{rs.N} exceeds {MAX_ELEMENTS}")
    return F, rs.N


def _components(perms: list[np.ndarray], size: int) -> np.ndarray:
    rows = np.concatenate([np.arange(size)] * len(perms))
    cols = np.concatenate(perms)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(size, size)).tocsr()
    _, labels = connected_components(graph, directed=True, connection="weak")
    return labels


# ----------------------------------------------------------------------
# class inventory
# ----------------------------------------------------------------------

def count_classes(rs: RootSystem, q: int) -> ClassInventory:
    """Exact partition of U(q) into conjugacy classes."""
    F, N = _check_size(rs, q)
    size = q**N
    raw = _components(conjugation_permutations(rs, q), size)
    # relabel classes by their least element so the inventory is canonical
    least = np.full(raw.max() + 1, size, dtype=np.int64)
    np.minimum.at(least, raw, np.arange(size, dtype=np.int64))
    order = np.argsort(least)
    relabel = np.empty_like(order)
    relabel[order] = np.arange(len(order))
    labels = relabel[raw]
    sizes = np.bincount(labels)
    records = []
    for k, code in enumerate(least[order]):
        rep = tuple(int(code) // q**j % q for j in range(N))
        s = int(sizes[k])
        records.append(ClassRecord(rep, s, size // s))
    hist = Counter(r.centralizer for r in records)
    return ClassInventory(q, rs.type_label, rs.rank, N, len(records), records,
                          dict(sorted(hist.items())), labels)


def generators_suffice(rs: RootSystem, q: int) -> bool:
    """Left multiplication by the generators reaches every element from 1."""
    F, N = _check_size(rs, q)
    prod, _, _ = formulas_for(rs).reduced(F.p)
    labels = _components(_action(prod, rs, F, on_left=True), q**N)
    return bool(np.all(labels == labels[0]))


def burnside_class_count(rs: RootSystem, q: int) -> int:
    """Class count as (sum over x of |C_U(x)|) / |U|, testing gx = xg directly."""
    F, N = _check_size(rs, q)
    size = q**N
    if size > BURNSIDE_LIMIT:
        raise TooLarge(f"pairwise commutation test limited to {BURNSIDE_LIMIT} elements")
    prod, _, _ = formulas_for(rs).reduced(F.p)
    af = _ArrayField(F)
    coords = _digits(q, N)
    total = 0
    for x in range(size):
        xs = [int(c[x]) for c in coords]
        # g x with g running over U, and x g
        left = {N + j: xs[j] for j in range(N)}
        right = {j: xs[j] for j in range(N)}
        gx = [_evaluate(f, left, {j: coords[j] for j in range(N)}, af, size) for f in prod]
        xg = [_evaluate(f, right, {N + j: coords[j] for j in range(N)}, af, size) for f in prod]
        same = np.ones(size, dtype=bool)
        for a, b in zip(gx, xg):
            same &= a == b
        total += int(same.sum())
    if total % size:
        raise VerificationError("centralizer sum is not divisible by |U|")
    return total // size


# ----------------------------------------------------------------------
# family checks
# ----------------------------------------------------------------------

@dataclass
class FamilyReport:
    family: str
    classes: int
    expected: int
    histogram: dict[int, int]
    expected_histogram: dict[int, int]
    class_ids: frozenset[int] = field(repr=False)

    @property
    def ok(self) -> bool:
        return self.classes == self.expected and self.histogram == self.expected_histogram


def family_codes(expr: CountExpression, q: int) -> np.ndarray:
    """Codes of all elements prod x_j(a_j) with a_j != 0 on c, any b_j on d, 0 elsewhere."""
    fam = expr.family
    codes = np.zeros(1, dtype=np.int64)
    for j in sorted(fam.support):
        values = np.arange(1, q) if j in fam.c else np.arange(q)
        codes = (codes[:, None] + values[None, :] * q ** (j - 1)).ravel()
    return codes


def predicted_histogram(expr: CountExpression, q: int) -> dict[int, int]:
    hist: Counter = Counter()
    for b in expr.branches:
        m, e = b.centralizer
        n = b.count.at_q(q)
        if n:
            hist[m * q**e] += int(n)
    return dict(sorted(hist.items()))


def verify_family(expr: CountExpression, rs: RootSystem, q: int,
                  inventory: ClassInventory | None = None) -> FamilyReport:
    """Classes met by the family's element set against its predicted count and centralizers."""
    if expr.manual:
        raise VerificationError(f"family {expr.family.representative()} was not analysed: {expr.manual}")
    inv = inventory or count_classes(rs, q)
    ids = np.unique(inv.labels[family_codes(expr, q)])
    hist = Counter(inv.class_records[k].centralizer for k in ids)
    report = FamilyReport(
        expr.family.representative(),
        len(ids),
        int(expr.total.at_q(q)),
        dict(sorted(hist.items())),
        predicted_histogram(expr, q),
        frozenset(int(k) for k in ids),
    )
    if report.classes != report.expected:
        raise CountMismatch(f"{report.family}: {report.classes} classes met, {report.expected} predicted")
    if report.histogram != report.expected_histogram:
        raise CentralizerMismatch(
            f"{report.family}: centralizers {report.histogram}, predicted {report.expected_histogram}"
        )
    return report


def verify_all_families(rs: RootSystem, p: int, q: int,
                        inventory: ClassInventory | None = None) -> list[FamilyReport]:
    """verify_family for every family, then disjointness and full cover."""
    inv = inventory or count_classes(rs, q)
    exprs = [analyze_family(f, p) for f in classify(rs, p)]
    reports = [verify_family(e, rs, q, inv) for e in exprs]
    seen: dict[int, str] = {}
    for r in reports:
        for k in r.class_ids:
            if k in seen:
                rep = inv.class_records[k].representative
                raise OverlapDetected(f"class of {rep} met by {seen[k]} and {r.family}")
            seen[k] = r.family
    if len(seen) != inv.total_classes:
        missing = [inv.class_records[k].representative for k in range(inv.total_classes) if k not in seen][:5]
        raise CountMismatch(f"{inv.total_classes - len(seen)} classes met by no family, e.g. {missing}")
    return reports


# ----------------------------------------------------------------------
# table checks
# ----------------------------------------------------------------------

@dataclass
class TableReport:
    type_label: str
    rank: int
    p: int
    counts: dict[int, int]
    expected_counts: dict[int, int]
    problems: list[str]

    @property
    def ok(self) -> bool:
        return not self.problems


def verify_tables(rs: RootSystem, p: int, qs: list[int]) -> TableReport:
    """Brute-force totals against the published class-count polynomial and,
    for rank <= 3, centralizer histograms against the published family rows."""
    published = published_k_poly(rs.type_label, rs.rank, p)
    rows = published_rows(rs.type_label, rs.rank, p) if rs.rank <= 3 else None
    counts, expected, problems = {}, {}, []
    for q in qs:
        if field_of_order(q).p != p:
            raise ValueError(f"{q} is not a power of {p}")
        inv = count_classes(rs, q)
        counts[q] = inv.total_classes
        expected[q] = int(published.at_q(q))
        if counts[q] != expected[q]:
            problems.append(f"q={q}: {counts[q]} classes, published polynomial gives {expected[q]}")
        if rows is not None:
            hist: Counter = Counter()
            for (m, e), size in centralizer_profile(rows).items():
                hist[m * q**e] += int(size.at_q(q))
            hist = Counter({k: v for k, v in hist.items() if v})
            if dict(hist) != inv.centralizer_histogram:
                problems.append(
                    f"q={q}: centralizer histogram {inv.centralizer_histogram}, "
                    f"published rows give {dict(sorted(hist.items()))}"
                )
    return TableReport(rs.type_label, rs.rank, p, counts, expected, problems)


def symbolic_total(rs: RootSystem, p: int):
    return total_count([analyze_family(f, p) for f in classify(rs, p)])

