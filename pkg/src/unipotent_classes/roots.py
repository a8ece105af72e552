"""Root systems of types A, B, C, D (rank <= 4) and G2 in the simple-root basis.

Roots are integer coefficient vectors over the simple roots, labelled as in
Bourbaki.  The positive roots are enumerated so that heights never decrease;
for B2, G2, B3 and C3 the enumeration is the one printed alongside the class
tables, and every other system uses height first, then descending
lexicographic order on the coefficient vector (which also reproduces the
printed enumerations).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property


class UnsupportedType(ValueError):
    """Raised for a (type, rank) pair outside the supported range."""


# Printed enumerations, indexed 1..N in the class tables.
FIXED_ENUMERATIONS = {
    ("B", 2): [(1, 0), (0, 1), (1, 1), (1, 2)],
    ("G", 2): [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)],
    ("B", 3): [
        (1, 0, 0), (0, 1, 0), (0, 0, 1),
        (1, 1, 0), (0, 1, 1), (1, 1, 1),
        (0, 1, 2), (1, 1, 2), (1, 2, 2),
    ],
    ("C", 3): [
        (1, 0, 0), (0, 1, 0), (0, 0, 1),
        (1, 1, 0), (0, 1, 1), (1, 1, 1),
        (0, 2, 1), (1, 2, 1), (2, 2, 1),
    ],
}

NUM_POSITIVE_ROOTS = {
    ("A", 1): 1, ("A", 2): 3, ("A", 3): 6, ("A", 4): 10,
    ("B", 2): 4, ("B", 3): 9, ("B", 4): 16,
    ("C", 2): 4, ("C", 3): 9, ("C", 4): 16,
    ("D", 4): 12, ("G", 2): 6, ("F", 4): 24,
}


def cartan_matrix(type_label: str, rank: int) -> list[list[int]]:
    """Cartan matrix with entry [i][j] = <alpha_j, alpha_i^vee>."""
    n = rank
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, a_ij=-1, a_ji=-1):
        A[i][j] = a_ij
        A[j][i] = a_ji

    if type_label == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif type_label == "B":
        for i in range(n - 2):
            link(i, i + 1)
        # alpha_n short
        link(n - 2, n - 1, a_ij=-1, a_ji=-2)
    elif type_label == "C":
        for i in range(n - 2):
            link(i, i + 1)
        # alpha_n long
        link(n - 2, n - 1, a_ij=-2, a_ji=-1)
    elif type_label == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif type_label == "G":
        # alpha_1 short, alpha_2 long
        link(0, 1, a_ij=-3, a_ji=-1)
    elif type_label == "F":
        link(0, 1)
        link(1, 2, a_ij=-1, a_ji=-2)
        link(2, 3)
    else:
        raise UnsupportedType(f"unknown type {type_label!r}")
    return A


def _simple_lengths(type_label: str, rank: int) -> list[int]:
    # squared lengths, scaled so all inner products are integers
    if type_label in ("A", "D"):
        return [2] * rank
    if type_label == "B":
        return [4] * (rank - 1) + [2]
    if type_label == "C":
        return [2] * (rank - 1) + [4]
    if type_label == "G":
        return [2, 6]
    if type_label == "F":
        return [4, 4, 2, 2]
    raise UnsupportedType(type_label)


def check_supported(type_label: str, rank: int, *, allow_f4: bool = False) -> None:
    if (type_label, rank) not in NUM_POSITIVE_ROOTS:
        raise UnsupportedType(f"unsupported root system {type_label}{rank}")
    if type_label == "F" and not allow_f4:
        raise UnsupportedType("type F4 is not supported by the classification pipeline")


@dataclass(frozen=True)
class Root:
    coeffs: tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Root":
        return Root(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "Root") -> "Root":
        return Root(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.coeffs)


def _generate_positive_roots(A: list[list[int]]) -> list[tuple[int, ...]]:
    n = len(A)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # alpha_i-string through beta: beta - p alpha_i, ..., beta + q alpha_i
                p = 0
                cur = list(beta)
                while True:
                    cur[i] -= 1
                    if tuple(cur) in roots:
                        p += 1
                    else:
                        break
                pairing = sum(beta[j] * A[i][j] for j in range(n))
                q = p - pairing
                if q > 0:
                    new = list(beta)
                    new[i] += 1
                    new = tuple(new)
                    if new not in roots:
                        roots.add(new)
                        nxt.append(new)
        layer = nxt
    return sorted(roots, key=lambda r: (sum(r), tuple(-c for c in r)))


@dataclass(frozen=True)
class RootSystem:
    """Positive roots beta_1..beta_N (0-based in code) with their order."""

    type_label: str
    rank: int
    positive_roots: tuple[Root, ...]
    cartan: tuple[tuple[int, ...], ...]
    lengths: tuple[int, ...] = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    @property
    def N(self) -> int:
        return len(self.positive_roots)

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        """Map coefficient vector -> 0-based position in the enumeration."""
        return {r.coeffs: i for i, r in enumerate(self.positive_roots)}

    @cached_property
    def all_roots(self) -> tuple[tuple[int, ...], ...]:
        pos = [r.coeffs for r in self.positive_roots]
        return tuple(pos + [tuple(-c for c in r) for r in pos])

    @cached_property
    def _root_set(self) -> frozenset:
        return frozenset(self.all_roots)

    def is_root(self, v) -> bool:
        return tuple(v) in self._root_set

    def inner(self, u, w) -> int:
        """Invariant form on the root lattice (integer-scaled)."""
        n = self.rank
        total = 0
        for i in range(n):
            if u[i] == 0:
                continue
            for j in range(n):
                if w[j]:
                    total += u[i] * w[j] * self.cartan[i][j] * self.lengths[i] // 2
        return total

    def pairing(self, v, i: int) -> int:
        """<v, alpha_i^vee> for a lattice vector v and simple index i."""
        return sum(v[j] * self.cartan[i][j] for j in range(self.rank))

    def coroot_coeffs(self, v) -> tuple:
        """Coefficients of v^vee over the simple coroots (as Fractions)."""
        from fractions import Fraction

        lv = self.inner(v, v)
        return tuple(Fraction(v[i] * self.lengths[i], lv) for i in range(self.rank))

    def root_string_p(self, alpha, beta) -> int:
        """Largest p >= 0 with beta - p*alpha a root."""
        p = 0
        cur = list(beta)
        while True:
            cur = [c - a for c, a in zip(cur, alpha)]
            if self.is_root(cur):
                p += 1
            else:
                return p

    def sum_index(self, i: int, j: int) -> int | None:
        """Index of beta_i + beta_j if it is a positive root, else None."""
        v = tuple(a + b for a, b in zip(self.positive_roots[i].coeffs, self.positive_roots[j].coeffs))
        return self.index.get(v)


def build_root_system(type_label: str, rank: int, *, allow_f4: bool = False) -> RootSystem:
    """Build the root system with the pipeline's fixed positive-root enumeration."""
    type_label = type_label.upper()
    check_supported(type_label, rank, allow_f4=allow_f4)
    if type_label == "A" and rank == 1:
        A = [[2]]
        lengths = [2]
    else:
        A = cartan_matrix(type_label, rank)
        lengths = _simple_lengths(type_label, rank)
    generated = _generate_positive_roots(A)
    embedded = FIXED_ENUMERATIONS.get((type_label, rank))
    if embedded is not None:
        assert sorted(embedded) == sorted(generated), (type_label, rank)
        order = embedded
    else:
        order = generated
    assert len(order) == NUM_POSITIVE_ROOTS[(type_label, rank)]
    return RootSystem(
        type_label=type_label,
        rank=rank,
        positive_roots=tuple(Root(tuple(r)) for r in order),
        cartan=tuple(tuple(row) for row in A),
        lengths=tuple(lengths),
    )


def dominance_leq(rs: RootSystem, i: int, j: int) -> bool:
    """beta_i <= beta_j in the dominance order (0-based indices).

    The difference must be a nonnegative integer combination of positive
    roots; since simple roots are positive, this is coefficient-wise
    comparison.
    """
    bi = rs.positive_roots[i].coeffs
    bj = rs.positive_roots[j].coeffs
    return all(a <= b for a, b in zip(bi, bj))


def bad_primes(rs: RootSystem | str, rank: int | None = None) -> frozenset[int]:
    """Primes dividing a coefficient of the highest root; accepts a root system or a type letter."""
    label = rs if isinstance(rs, str) else rs.type_label
    return {
        "A": frozenset(),
        "B": frozenset({2}),
        "C": frozenset({2}),
        "D": frozenset({2}),
        "G": frozenset({2, 3}),
        "F": frozenset({2, 3}),
    }[label]


def format_roots_table(rs: RootSystem) -> str:
    """Index and coefficient vector per line, in enumeration order."""
    lines = [f"Enumeration of positive roots for {rs.name}"]
    for i, r in enumerate(rs.positive_roots, start=1):
        lines.append(f"{i:>3}  {r}")
    return "\n".join(lines) + "\n"
