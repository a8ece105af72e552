"""JSON-serialisable report records for the command line.

Polynomials are stored as ascending coefficient lists in v next to their
display string; non-integral coefficients (possible for single branches)
are written as "n/d" strings.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .analyzer import CountExpression
from .classifier import Family
from .vpoly import ClassCountPolynomial


def poly_to_json(poly: ClassCountPolynomial) -> list:
    out = []
    for c in poly.coeffs:
        c = Fraction(c)
        out.append(int(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}")
    return out


def poly_from_json(coeffs: list) -> ClassCountPolynomial:
    return ClassCountPolynomial(tuple(Fraction(c) if isinstance(c, str) else c for c in coeffs))


@dataclass
class BranchEntry:
    conditions: list[str]
    kinds: dict[str, str]  # coordinate -> parameter kind letter ("0" when absent)
    count_poly: list
    count: str
    centralizer: list[int]  # [m, e] for m q^e
    centralizer_str: str


@dataclass
class FamilyEntry:
    c: list[int]
    d: list[int]
    normalized: list[int]
    representative: str
    residuals: dict[str, str]
    branches: list[BranchEntry] | None = None
    count_poly: list | None = None
    count: str | None = None
    manual: str | None = None


@dataclass
class ClassifyReport:
    type_label: str
    rank: int
    p: int
    families: list[FamilyEntry]
    k_poly: list | None = None
    k_poly_str: str | None = None
    manual_families: list[str] = field(default_factory=list)
    mass_formula: bool | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "ClassifyReport":
        data = json.loads(text)
        fams = []
        for f in data.pop("families"):
            branches = f.pop("branches")
            if branches is not None:
                branches = [BranchEntry(**b) for b in branches]
            fams.append(FamilyEntry(branches=branches, **f))
        return cls(families=fams, **data)


@dataclass
class BruteForceReport:
    type_label: str
    rank: int
    q: int
    total_classes: int
    centralizer_histogram: dict[str, int]  # JSON object keys are strings

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "BruteForceReport":
        return cls(**json.loads(text))


@dataclass
class VerifyReport:
    type_label: str
    rank: int
    p: int
    counts: dict[str, int]
    expected_counts: dict[str, int]
    families_checked: int
    problems: list[str]

    @property
    def ok(self) -> bool:
        return not self.problems

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "VerifyReport":
        return cls(**json.loads(text))


def family_entry(fam: Family, expr: CountExpression | None = None) -> FamilyEntry:
    entry = FamilyEntry(
        c=sorted(fam.c),
        d=sorted(fam.d),
        normalized=sorted(fam.normalized),
        representative=fam.representative(),
        residuals={str(j): str(r) for j, r in sorted(fam.residuals.items())},
    )
    if expr is not None:
        if expr.manual:
            entry.manual = expr.manual
            entry.branches = []
        else:
            entry.branches = [
                BranchEntry(
                    conditions=list(b.conditions),
                    kinds={str(j): k.value for j, k in b.kinds},
                    count_poly=poly_to_json(b.count),
                    count=str(b.count),
                    centralizer=list(b.centralizer),
                    centralizer_str=b.centralizer_str(),
                )
                for b in expr.branches
            ]
            entry.count_poly = poly_to_json(expr.total)
            entry.count = str(expr.total)
    return entry
