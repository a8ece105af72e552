"""The coefficient ring F_p(a_1..a_N)[t_1..t_N] used by the orbit classifier.

An element is a fraction whose numerator may involve both variable families
and whose denominator involves only the a's.  Denominators that are a single
(Laurent) monomial are folded into the numerator, so in the common case an
element is just a Laurent polynomial in the a's with polynomial t-part and
denominator 1.  Other denominators are kept as they are; equality is always
decided by cross-multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass

from .polys import Poly, PolyRing

REDUCE_THRESHOLD = 64


class SelfReference(ValueError):
    """A substitution t_l := repl where repl itself involves t_l."""


class SymbolicRing:
    """F_p(a)[t] for N root coordinates (indices are 0-based)."""

    def __init__(self, p: int, N: int):
        self.p = p
        self.N = N
        names = [f"a_{j + 1}" for j in range(N)] + [f"t_{j + 1}" for j in range(N)]
        self.poly_ring = PolyRing(names, p)
        self._one = self.poly_ring.one()

    def __repr__(self):
        return f"SymbolicRing(p={self.p}, N={self.N})"

    def __eq__(self, other):
        return isinstance(other, SymbolicRing) and (self.p, self.N) == (other.p, other.N)

    def __hash__(self):
        return hash(("sym", self.p, self.N))

    def a_var(self, j: int) -> int:
        return j

    def t_var(self, j: int) -> int:
        return self.N + j

    def is_t_var(self, v: int) -> bool:
        return v >= self.N

    def a(self, j: int) -> "SymbolicElement":
        return SymbolicElement(self, self.poly_ring.var(j))

    def t(self, j: int) -> "SymbolicElement":
        return SymbolicElement(self, self.poly_ring.var(self.N + j))

    def zero(self) -> "SymbolicElement":
        return SymbolicElement(self, self.poly_ring.zero())

    def one(self) -> "SymbolicElement":
        return SymbolicElement(self, self.poly_ring.one())

    def from_int(self, n: int) -> "SymbolicElement":
        return SymbolicElement(self, self.poly_ring.const(n))

    def element(self, num: Poly, den: Poly | None = None) -> "SymbolicElement":
        return SymbolicElement(self, num, den)

    def parse_name(self, v: int) -> str:
        return self.poly_ring.names[v]


class SymbolicElement:
    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: SymbolicRing, num: Poly, den: Poly | None = None):
        self.ring = ring
        if den is None or (den.is_constant() and den.constant_value() == 1):
            self.num = num
            self.den = ring._one
            return
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if any(ring.is_t_var(v) for v in den.variables()):
            raise ValueError("denominator may only involve a-variables")
        if num.is_zero():
            self.num, self.den = num, ring._one
            return
        if den.is_monomial():
            (m, c), = den.terms.items()
            pr = ring.poly_ring
            inv_c = pow(c, ring.p - 2, ring.p)
            inv_m = 2 * pr.one_mono - m
            self.num = num.mul_monomial(inv_m, inv_c)
            self.den = ring._one
            return
        self.num, self.den = num, den
        if len(num) + len(den) > REDUCE_THRESHOLD:
            self._try_exact_division()

    def _try_exact_division(self):
        q = exact_quotient(self.num, self.den)
        if q is not None:
            self.num, self.den = q, self.ring._one

    # -- predicates ---------------------------------------------------
    @property
    def has_denominator(self) -> bool:
        return not (self.den.is_constant() and self.den.constant_value() == 1)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        if not isinstance(other, SymbolicElement):
            return NotImplemented
        if not self.has_denominator and not other.has_denominator:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        if self.has_denominator:
            raise TypeError("fractions with a non-monomial denominator are unhashable")
        return hash(self.num)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "SymbolicElement":
        if isinstance(other, SymbolicElement):
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        raise TypeError(type(other).__name__)

    def __add__(self, other):
        other = self._coerce(other)
        if not self.has_denominator and not other.has_denominator:
            return SymbolicElement(self.ring, self.num + other.num)
        if self.den == other.den:
            return SymbolicElement(self.ring, self.num + other.num, self.den)
        return SymbolicElement(
            self.ring, self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return SymbolicElement(self.ring, -self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.has_denominator and not other.has_denominator:
            return SymbolicElement(self.ring, self.num * other.num)
        return SymbolicElement(self.ring, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def __truediv__(self, other):
        """Division by an element free of t-variables."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        if not other.t_free():
            raise ValueError("can only divide by elements of F_p(a)")
        return SymbolicElement(self.ring, self.num * other.den, self.den * other.num)

    # -- substitution -------------------------------------------------
    def substitute(self, l: int, repl: "SymbolicElement") -> "SymbolicElement":
        """Replace t_l (0-based root index) by ``repl`` everywhere."""
        var = self.ring.t_var(l)
        if repl.num.involves(var):
            raise SelfReference(f"replacement for t_{l + 1} involves t_{l + 1}")
        if not self.num.involves(var):
            return self
        if not repl.has_denominator:
            return SymbolicElement(self.ring, self.num.substitute(var, repl.num), self.den)
        groups = self.num.coefficients_in(var)
        top = max(groups)
        pr = self.ring.poly_ring
        total = pr.zero()
        for e, coeff in groups.items():
            total = total + coeff * repl.num**e * repl.den ** (top - e)
        return SymbolicElement(self.ring, total, self.den * repl.den**top)

    def specialize_a(self, j: int) -> "SymbolicElement":
        """Set a_j := 1."""
        var = self.ring.a_var(j)
        num = self.num.specialize_to_one(var)
        den = self.den.specialize_to_one(var) if self.has_denominator else None
        return SymbolicElement(self.ring, num, den)

    def substitute_a(self, j: int, repl: "SymbolicElement") -> "SymbolicElement":
        """Replace a_j by an element of F_p(a) (used for case branches)."""
        var = self.ring.a_var(j)
        num, den = self.num, self.den
        if not num.involves(var) and not den.involves(var):
            return self
        pr = self.ring.poly_ring
        # clear negative powers of a_j first
        lo = min(0, min((pr.exponent(m, var) for m in num.terms), default=0),
                 min((pr.exponent(m, var) for m in den.terms), default=0))
        if lo < 0:
            shift = pr.monomial({var: -lo})
            num, den = num * shift, den * shift
        tn = max(0, num.degree_in(var))
        td = max(0, den.degree_in(var))
        new_num = _subst_frac(num, var, repl) * repl.den**td
        new_den = _subst_frac(den, var, repl) * repl.den**tn
        return SymbolicElement(self.ring, new_num, new_den)

    # -- structure ----------------------------------------------------
    def t_variables(self) -> set[int]:
        """0-based root indices l such that t_l occurs."""
        N = self.ring.N
        return {v - N for v in self.num.variables() if v >= N}

    def a_variables(self) -> set[int]:
        N = self.ring.N
        return {v for v in self.num.variables() | self.den.variables() if v < N}

    def involves_t(self, l: int) -> bool:
        return self.num.involves(self.ring.t_var(l))

    def t_free(self) -> bool:
        return not self.t_variables()

    def coefficients_in_t(self, l: int) -> dict[int, "SymbolicElement"]:
        groups = self.num.coefficients_in(self.ring.t_var(l))
        return {e: SymbolicElement(self.ring, g, self.den) for e, g in groups.items()}

    def is_scalar_laurent_monomial(self) -> bool:
        """Nonzero scalar times a Laurent monomial in the a-variables."""
        return (
            not self.has_denominator
            and self.num.is_monomial()
            and not any(self.ring.is_t_var(v) for v in self.num.variables())
        )

    def __str__(self):
        if self.has_denominator:
            return f"({self.num})/({self.den})"
        return str(self.num)

    __repr__ = __str__


def _clear_negative(num: Poly, den: Poly, ring: SymbolicRing) -> tuple[Poly, Poly]:
    """Multiply num and den by a monomial so den has no negative exponents."""
    pr = ring.poly_ring
    shift = {}
    for v in den.variables():
        lo = min(pr.exponent(m, v) for m in den.terms)
        if lo < 0:
            shift[v] = -lo
    if shift:
        mono = pr.monomial(shift)
        num, den = num * mono, den * mono
    return num, den


def _subst_frac(poly: Poly, var: int, repl: SymbolicElement) -> Poly:
    """poly(var := repl) times repl.den^deg, as a polynomial."""
    groups = poly.coefficients_in(var)
    top = max(groups)
    total = poly.ring.zero()
    for e, coeff in groups.items():
        total = total + coeff * repl.num**e * repl.den ** (top - e)
    return total


def _leading(poly: Poly):
    pr = poly.ring
    m = max(poly.terms, key=lambda mm: pr.exponents(mm))
    return m, poly.terms[m]


def exact_quotient(num: Poly, den: Poly) -> Poly | None:
    """num / den if den divides num exactly (lex order), else None."""
    pr = num.ring
    p = pr.mod
    # work with nonnegative exponents
    lo = {}
    for poly in (num, den):
        for v in poly.variables():
            e = min(pr.exponent(m, v) for m in poly.terms)
            if e < 0:
                lo[v] = min(lo.get(v, 0), e)
    shift = pr.monomial({v: -e for v, e in lo.items()}) if lo else pr.one()
    r = num * shift
    d = den * shift
    dm, dc = _leading(d)
    dexp = pr.exponents(dm)
    inv = pow(dc, p - 2, p)
    quotient = pr.zero()
    for _ in range(10000):
        if r.is_zero():
            return quotient
        rm, rc = _leading(r)
        rexp = pr.exponents(rm)
        diff = [a - b for a, b in zip(rexp, dexp)]
        if any(x < 0 for x in diff):
            return None
        term = pr.monomial({i: x for i, x in enumerate(diff) if x}, rc * inv)
        quotient = quotient + term
        r = r - term * d
    return None


@dataclass(frozen=True)
class Absent:
    pass


@dataclass(frozen=True)
class SingleLinearTerm:
    h: SymbolicElement


@dataclass(frozen=True)
class Other:
    pass


def analyze_linear_occurrence(g: SymbolicElement, l: int):
    """Classify how t_l occurs in g: Absent, SingleLinearTerm(h) or Other."""
    if not g.involves_t(l):
        return Absent()
    if g.has_denominator:
        return Other()
    groups = g.num.coefficients_in(g.ring.t_var(l))
    if not set(groups) <= {0, 1}:
        return Other()
    h = SymbolicElement(g.ring, groups[1])
    if h.is_scalar_laurent_monomial():
        return SingleLinearTerm(h)
    return Other()
