"""Published class-count data used as golden fixtures.

Polynomials are stored exactly as printed, including entries that the
pipeline and brute force disagree with; the comparisons that expose these
live in the tests and in ``scripts/compare_tables.py``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .roots import bad_primes
from .vpoly import ClassCountPolynomial, parse_vpoly

# (types, prime condition) -> k(U) as a string in v
_KU_ROWS = [
    (("B2",), "good", "2v^2+4v+1"),
    (("B2",), 2, "5v^2+4v+1"),
    (("G2",), "good", "2v^2+4v+1"),
    (("G2",), 3, "2v^3+11v^2+6v+1"),
    (("G2",), 2, "v^3+8v^2+6v+1"),
    (("B3", "C3"), "good", "v^4+8v^3+16v^2+9v+1"),
    (("B3", "C3"), 2, "2v^4+19v^3+25v^2+9v+1"),
    (("B4", "C4"), "good", "v^6+11v^5+48v^4+88v^3+64v^2+16v+1"),
    (("B4", "C4"), 2, "2v^6+31v^5+136v^4+168v^3+82v^2+16v+1"),
    (("D4",), "good", "2v^5+15v^4+36v^3+34v^2+12v+1"),
    (("D4",), 2, "2v^5+18v^4+36v^3+34v^2+12v+1"),
]


def published_k_poly(type_label: str, rank: int, p: int) -> ClassCountPolynomial:
    """k(U) for the given type and characteristic as printed in the class-count table."""
    key = f"{type_label}{rank}"
    bad = bad_primes(type_label, rank)
    want = p if p in bad else "good"
    for types, cond, text in _KU_ROWS:
        if key in types and cond == want:
            return parse_vpoly(text)
    raise KeyError(f"no published polynomial for {key} with p = {p}")


def published_types() -> list[tuple[str, int]]:
    out = []
    for types, _, _ in _KU_ROWS:
        for t in types:
            pair = (t[0], int(t[1:]))
            if pair not in out:
                out.append(pair)
    return out


# Positive-root enumerations (coefficients on the simple roots).
ROOT_TABLES = {
    ("B", 2): [(1, 0), (0, 1), (1, 1), (1, 2)],
    ("G", 2): [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)],
    ("B", 3): [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1),
               (0, 1, 2), (1, 1, 2), (1, 2, 2)],
    ("C", 3): [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1),
               (0, 2, 1), (1, 2, 1), (2, 2, 1)],
}


@dataclass(frozen=True)
class TableRow:
    name: str
    prime: str  # "-", "=2", "!=2", "!=2,3", ...
    family: str
    size: str
    centralizer: str

    def applies_to(self, p: int) -> bool:
        if self.prime == "-":
            return True
        if self.prime.startswith("!="):
            return p not in {int(x) for x in self.prime[2:].split(",")}
        return p == int(self.prime[1:])

    @property
    def size_poly(self) -> ClassCountPolynomial:
        return parse_vpoly(self.size)

    @property
    def centralizer_pair(self) -> tuple[int, int]:
        return parse_centralizer(self.centralizer)


def parse_centralizer(text: str) -> tuple[int, int]:
    """'2q^4' -> (2, 4), 'q' -> (1, 1), '3' -> (3, 0)."""
    if "q" not in text:
        return int(text), 0
    m, _, e = text.partition("q")
    return int(m or 1), int(e[1:]) if e else 1


def _rows(text: str) -> list[TableRow]:
    rows = []
    name = prime = ""
    for line in text.strip().splitlines():
        cells = [c.strip() for c in line.split("|")]
        if cells[0]:
            name = cells[0]
            prime = cells[1] or "-"
        elif cells[1]:
            prime = cells[1]
        rows.append(TableRow(name, prime, cells[2], cells[3], cells[4]))
    return rows


_B2 = """
1,2 | !=2 | x_1(a_1)x_2(a_2) | v^2 | q^2
    | =2 | x_1(a_1)x_2(a_2)x_4(c_4) | 2v^2 | 2q^2
1 | - | x_1(a_1)x_4(b_4) | v(v+1) | q^3
2 | !=2 | x_2(a_2) | v | q^2
  | =2 | x_2(a_2)x_4(b_4) | v(v+1) | q^3
3 | !=2 | x_3(a_3) | v | q^3
  | =2 | x_3(a_3)x_4(b_4) | v(v+1) | q^4
4 | - | x_4(b_4) | v+1 | q^4
"""

_G2 = """
1,2 | !=2,3 | x_1(a_1)x_2(a_2) | v^2 | q^2
    | =3 | x_1(a_1)x_2(a_2)x_5(c_5) | 3v^2 | 3q^2
    | =2 | x_1(a_1)x_2(a_2)x_4(c_4) | 2v^2 | 2q^2
1 | !=2,3 | x_1(a_1)x_6(b_6) | v(v+1) | q^3
  | =3 | x_1(a_1)x_5(b_5)x_6(b_6) | v(v+1)^2 | q^4
  | =2 | x_1(a_1)x_4(a_4)x_6(c_6) | 2v^2 | 2q^4
  |    | x_1(a_1) | v | q^3
2 | - | x_2(a_2)x_4(b_4)x_5(b_5) | v(v+1)^2 | q^4
3 | !=2,3 | x_3(a_3)x_5(b_5) | v(v+1) | q^4
  | =3 | x_3(a_3)x_5(a_5) | v^2 | q^4
  |    | x_3(a_3)x_6(b_6) | v(v+1) | q^5
  | =2 | x_3(a_3)x_4(a_4)x_5(c_5) | 2v^2 | 2q^4
  |    | x_3(a_3) | v | q^4
4 | !=3 | x_4(a_4) | v | q^4
  | =3 | x_4(a_4)x_5(a_5) | v^2 | q^5
  |    | x_4(a_4)x_5(b_6) | v(v+1) | q^6
5 | - | x_5(a_5) | v | q^5
6 | !=2,3 | x_6(b_6) | v+1 | q^6
"""

_B3 = """
1,2,3 | !=2 | x_1(a_1)x_2(a_2)x_3(a_3) | v^3 | q^3
      | =2 | x_1(a_1)x_2(a_2)x_3(a_3)x_7(c_7) | 2v^3 | 2q^3
1,2 | - | x_1(a_1)x_2(a_2)x_7(b_7) | v^2(v+1) | q^4
1,3,5 | !=2 | x_1(a_1)x_3(a_3)x_5(a_5) | v^3 | q^4
      | =2 | x_1(a_1)x_3(a_3)x_5(a_5)x_7(d_7) | v^3(v-1) | q^5
      |    | x_1(a_1)x_3(a_3)x_5(a_5)x_7(e_7)x_9(c_9) | 2v^3 | 2q^5
      |    | x_1(a_1)x_3(a_3)x_5(a_5) | v^3 | q^5
1,3 | !=2 | x_1(a_1)x_3(a_3)x_9(b_9) | v^2(v+1) | q^5
    | =2 | x_1(a_1)x_3(a_3)x_7(a_7)x_9(c_9) | 2v^3 | 2q^6
    |    | x_1(a_1)x_3(a_3) | v^2 | q^6
1,5 | !=2 | x_1(a_1)x_5(a_5) | v^2 | q^4
    | =2 | x_1(a_1)x_5(a_5)x_7(a_7) | v^3 | q^5
    |    | x_1(a_1)x_5(a_5)x_9(c_9) | 2v^2 | 2q^5
1,7 | - | x_1(a_1)x_5(a_7) | v^2 | q^5
1 | - | x_1(a_1)x_9(b_9) | v(v+1) | q^6
2,3 | !=2 | x_2(a_2)x_3(a_3) | v^2 | q^3
    | =2 | x_2(a_2)x_3(a_3)x_7(c_7)x_8(b_8) | 2v^2(v+1) | 2q^4
2 | - | x_2(a_2)x_6(b_6)x_7(b_7)x_8(b_8) | v(v+1)^3 | q^6
3,4 | !=2 | x_3(a_3)x_4(a_4) | v^2 | q^4
    | =2 | x_3(a_3)x_4(a_4)x_7(a_7) | v^3 | q^5
    |    | x_3(a_3)x_4(a_4)x_8(c_8) | 2v^2 | 2q^5
3 | !=2 | x_3(a_3)x_9(b_9) | v(v+1) | q^5
  | =2 | x_3(a_3)x_7(a_7)x_9(b_9) | v^2(v+1) | q^6
  |    | x_3(a_3)x_8(b_8)x_9(b_9) | v(v+1)^2 | q^7
4,5 | !=2 | x_4(a_4)x_5(a_5)x_8(b_8) | v^2(v+1) | q^6
    | =2 | x_4(a_4)x_5(a_5)x_7(a_7)x_8(c_8) | 2v^3 | 2q^6
    |    | x_4(a_4)x_5(a_5) | v^2 | q^6
4,7 | - | x_4(a_4)x_7(a_7) | v^2 | q^6
4 | - | x_4(a_4)x_8(b_8) | v(v+1) | q^7
5 | !=2 | x_5(a_5)x_8(b_8) | v(v+1) | q^6
  | =2 | x_5(a_5)x_7(a_7)x_8(b_8) | v^2(v+1) | q^7
  |    | x_5(a_5)x_8(a_8) | v^2 | q^7
  |    | x_5(a_5)x_9(b_9) | v(v+1) | q^8
6 | !=2 | x_6(a_6)x_7(b_7) | v(v+1) | q^7
  | =2 | x_6(a_6)x_7(a_7) | v^2 | q^7
  |    | x_6(a_6)x_8(a_8) | v^2 | q^8
  |    | x_6(a_6)x_9(b_9) | v(v+1) | q^9
7 | - | x_7(a_7) | v | q^7
8 | - | x_8(a_8) | v | q^8
9 | - | x_9(b_9) | v+1 | q^9
"""

_C3 = """
1,2,3 | !=2 | x_1(a_1)x_2(a_2)x_3(a_3) | v^3 | q^3
      | =2 | x_1(a_1)x_2(a_2)x_3(a_3)x_7(c_7) | 2v^3 | 2q^3
1,2 | - | x_1(a_1)x_2(a_2)x_7(b_7) | v^2(v+1) | q^4
1 | !=2 | x_1(a_1)x_3(b_3)x_5(b_5)x_7(b_7) | v(v+1)^3 | q^5
  | =2 | x_1(a_1)x_3(a_3)x_5(a_5)x_7(d_7) | v^3(v-1) | q^5
  |    | x_1(a_1)x_3(a_3)x_5(a_5)x_7(f_7)x_9(c_9) | 4v^3 | 2q^5
  |    | x_1(a_1)x_3(a_3)x_7(b_7) | v^2(v+1) | q^5
  |    | x_1(a_1)x_5(a_5)x_7(b_7) | v^2(v+1) | q^5
  |    | x_1(a_1)x_7(a_7)x_9(c_9) | 2v^2 | 2q^5
  |    | x_1(a_1)x_9(b_9) | v(v+1) | q^6
2,3 | !=2 | x_2(a_2)x_3(a_3)x_9(b_9) | v^2(v+1) | q^4
    | =2 | x_2(a_2)x_3(a_3)x_7(c_7)x_9(b_9) | 2v^2(v+1) | q^4
2,6 | !=2 | x_2(a_2)x_6(a_6) | v^2 | q^4
    | =2 | x_2(a_2)x_6(a_6)x_7(b_7)x_9(b_9) | v^2(v+1)^2 | q^6
2 | !=2 | x_2(a_2)x_9(b_9) | v(v+1) | q^5
  | =2 | x_2(a_2)x_7(b_7)x_9(b_9) | v(v+1)^2 | q^6
3,4 | !=2 | x_3(a_3)x_4(a_4)x_7(b_7) | v^2(v+1) | q^5
    | =2 | x_3(a_3)x_4(a_4)x_7(a_7) | v^3 | q^5
    |    | x_3(a_3)x_4(a_4)x_9(c_9) | 2v^2 | q^5
3,7 | - | x_3(a_3)x_7(a_7)x_9(b_9) | v^2(v+1) | q^5
3,8 | !=2 | x_3(a_3)x_8(a_8) | v^2 | q^6
    | =2 | x_3(a_3)x_8(a_8)x_9(b_9) | v^2(v+1) | q^5
3 | - | x_3(a_3)x_9(b_9) | v(v+1) | q^7
4,5 | !=2 | x_4(a_4)x_5(a_5) | v^2 | q^5
    | =2 | x_4(a_4)x_5(a_5)x_7(a_7)x_9(c_9) | 2v^3 | 2q^6
    |    | x_4(a_4)x_5(a_5) | v^2 | q^6
4 | !=2 | x_4(a_4)x_7(b_7) | v(v+1) | q^6
  | =2 | x_4(a_4)x_7(a_7) | v^2 | q^6
  |    | x_4(a_4)x_9(b_9) | v(v+1) | q^7
5 | !=2 | x_5(a_5)x_9(b_9) | v(v+1) | q^6
  | =2 | x_5(a_5)x_7(b_7)x_9(b_9) | v(v+1)^2 | q^7
6 | !=2 | x_6(a_6)x_7(b_7) | v(v+1) | q^7
  | =2 | x_6(a_6)x_7(a_7) | v^2 | q^7
  |    | x_6(a_6)x_9(b_9) | v(v+1) | q^7
7 | - | x_7(a_7)x_9(b_9) | v(v+1) | q^8
8 | !=2 | x_8(a_8) | v | q^8
  | =2 | x_8(a_8)x_9(b_9) | v(v+1) | q^9
9 | - | x_9(b_9) | v+1 | q^9
"""

FAMILY_TABLES: dict[tuple[str, int], list[TableRow]] = {
    ("B", 2): _rows(_B2),
    ("G", 2): _rows(_G2),
    ("B", 3): _rows(_B3),
    ("C", 3): _rows(_C3),
}


def published_rows(type_label: str, rank: int, p: int) -> list[TableRow]:
    return [r for r in FAMILY_TABLES[(type_label, rank)] if r.applies_to(p)]
