"""Integer polynomials in v = q - 1 (class counts and family sizes)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def _trim(coeffs: Iterable) -> tuple:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class ClassCountPolynomial:
    """Coefficients in ascending powers of v."""

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def const(cls, c) -> "ClassCountPolynomial":
        return cls((c,))

    @classmethod
    def v(cls) -> "ClassCountPolynomial":
        return cls((0, 1))

    @classmethod
    def v_plus(cls, c) -> "ClassCountPolynomial":
        """v + c."""
        return cls((c, 1))

    @classmethod
    def q_power(cls, e: int) -> "ClassCountPolynomial":
        """q^e = (v+1)^e."""
        return cls.v_plus(1) ** e

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return ClassCountPolynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return ClassCountPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __mul__(self, other):
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return ClassCountPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ClassCountPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = ClassCountPolynomial((1,))
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, v):
        total = 0
        for c in reversed(self.coeffs):
            total = total * v + c
        return total

    def at_q(self, q: int):
        return self(q - 1)

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.coeffs)

    def as_ints(self) -> list[int]:
        assert self.is_integral()
        return [int(c) for c in self.coeffs]

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = "v" if e == 1 else f"v^{e}"
                body = mono if mag == 1 else f"{mag}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self):
        return f"ClassCountPolynomial({str(self)})"


def _coerce(x) -> ClassCountPolynomial:
    if isinstance(x, ClassCountPolynomial):
        return x
    return ClassCountPolynomial((x,))


def parse_vpoly(text: str) -> ClassCountPolynomial:
    """Parse strings such as '2v^4+19v^3+25v^2+9v+1' (also 'v^3(v-1)(v+1)' products)."""
    text = text.replace(" ", "").replace("*", "")
    total = ClassCountPolynomial(())
    for sign, term in _split_terms(text):
        total = total + _parse_product(term) * sign
    return total


def _split_terms(text: str):
    depth = 0
    start = 0
    sign = 1
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start:
            yield sign, text[start:i]
            sign = 1 if ch == "+" else -1
            start = i + 1
        elif ch in "+-" and depth == 0 and i == start:
            sign = 1 if ch == "+" else -1
            start = i + 1
    yield sign, text[start:]


def _parse_product(term: str) -> ClassCountPolynomial:
    out = ClassCountPolynomial((1,))
    i = 0
    num = ""
    while i < len(term) and term[i].isdigit():
        num += term[i]
        i += 1
    if num:
        out = out * int(num)
    while i < len(term):
        if term[i] == "v":
            factor = ClassCountPolynomial.v()
            i += 1
        elif term[i] == "(":
            depth = 1
            j = i + 1
            while depth:
                depth += {"(": 1, ")": -1}.get(term[j], 0)
                j += 1
            factor = parse_vpoly(term[i + 1 : j - 1])
            i = j
        else:
            raise ValueError(f"cannot parse {term!r}")
        if i < len(term) and term[i] == "^":
            j = i + 1
            while j < len(term) and term[j].isdigit():
                j += 1
            factor = factor ** int(term[i + 1 : j])
            i = j
        out = out * factor
    return out


def fit_polynomial(points: Sequence[tuple[int, int]]) -> ClassCountPolynomial:
    """Minimal-degree polynomial in v through (q, k) data; must be integral.

    Lagrange interpolation in v = q - 1 over the rationals, then the leading
    zero coefficients are trimmed.
    """
    if not points:
        raise ValueError("no data")
    qs = [q for q, _ in points]
    if len(set(qs)) != len(qs):
        raise ValueError("duplicate q values")
    xs = [Fraction(q - 1) for q in qs]
    ys = [Fraction(k) for _, k in points]
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        # basis polynomial prod_{j != i} (v - x_j)/(x_i - x_j)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / denom
    poly = ClassCountPolynomial(tuple(coeffs))
    if not poly.is_integral():
        raise ValueError("interpolating polynomial is not integral")
    return ClassCountPolynomial(tuple(int(c) for c in poly.coeffs))
