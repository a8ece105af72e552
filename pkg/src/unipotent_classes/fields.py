"""Finite fields F_q, q = p^k, with integer-encoded elements.

An element is the integer whose base-p digits are the coefficients of its
residue polynomial (digit m is the coefficient of x^m).  The modulus is the
least monic irreducible polynomial of degree k, ordering candidates by that
same integer encoding of their lower coefficients.  Scalar arithmetic uses
exp/log tables; vectorised arithmetic on numpy arrays uses full addition and
multiplication tables for small q.
"""

from __future__ import annotations

from functools import lru_cache
import itertools

import numpy as np


class NonPrime(ValueError):
    pass


class ZeroInverse(ZeroDivisionError):
    pass


MAX_ORDER = 1 << 20
TABLE_ORDER = 1 << 10


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p^k, or raise NonPrime."""
    if q < 2:
        raise NonPrime(q)
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k = 0
    n = q
    while n % p == 0:
        n //= p
        k += 1
    if n != 1:
        raise NonPrime(f"{q} is not a prime power")
    return p, k


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    k = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    # mod is monic of degree k
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for j in range(k + 1):
                prod[d - k + j] = (prod[d - k + j] - c * mod[j]) % p
    return (prod + [0] * k)[:k]


def _is_irreducible(coeffs: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= k/2."""
    k = len(coeffs) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            # long division
            rem = list(coeffs)
            for top in range(k, d - 1, -1):
                c = rem[top]
                if c:
                    for j in range(d + 1):
                        rem[top - d + j] = (rem[top - d + j] - c * divisor[j]) % p
            if not any(rem[:d]):
                return False
    return True


def least_irreducible(p: int, k: int) -> list[int]:
    """Coefficients (ascending, monic) of the least irreducible of degree k."""
    if k == 1:
        return [0, 1]
    for n in range(p**k):
        low = [(n // p**i) % p for i in range(k)]
        if low[0] == 0:
            continue
        cand = low + [1]
        if _is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """The field F_{p^k}."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise NonPrime(f"{p} is not prime")
        if k < 1:
            raise ValueError("degree must be >= 1")
        q = p**k
        if q > MAX_ORDER:
            raise ValueError(f"field order {q} exceeds {MAX_ORDER}")
        self.p, self.k, self.q = p, k, q
        self.modulus = least_irreducible(p, k)
        self._build_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def _encode(self, digits: list[int]) -> int:
        return sum(d * self.p**i for i, d in enumerate(digits))

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        if k == 1:
            gen = next(g for g in range(1, p) if self._order_mod_p(g) == p - 1) if p > 2 else 1
            exp = [1]
            for _ in range(q - 2):
                exp.append(exp[-1] * gen % p)
        else:
            gen = None
            for cand in range(2, q):
                exp = [1]
                g_digits = self._digits(cand)
                cur = [1] + [0] * (k - 1)
                for _ in range(q - 2):
                    cur = _poly_mulmod(cur, g_digits, self.modulus, p)
                    exp.append(self._encode(cur))
                if len(set(exp)) == q - 1:
                    gen = cand
                    break
            assert gen is not None
        self.generator = gen
        self._exp = exp + exp  # doubled to avoid a modulo in mul
        self._log = [0] * q
        for i, v in enumerate(exp):
            self._log[v] = i
        self._np_add = self._np_mul = self._np_neg = None

    def _order_mod_p(self, g: int) -> int:
        x, n = g % self.p, 1
        while x != 1:
            x = x * g % self.p
            n += 1
        return n

    # -- scalar arithmetic on encoded ints ----------------------------
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        out, mult = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._encode([(-d) % self.p for d in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("0 has no inverse")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def power(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def prime_basis(self) -> list[int]:
        """An F_p-basis of F_q: 1, x, ..., x^{k-1}."""
        return [self.p**i for i in range(self.k)]

    def frobenius(self, a: int) -> int:
        return self.power(a, self.p)

    # -- element objects ----------------------------------------------
    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def element(self, n: int) -> "FieldElement":
        """Image of the integer n (reduced mod p)."""
        return FieldElement(self, n % self.p)

    # -- numpy tables -------------------------------------------------
    def tables(self):
        """(add, mul, neg) lookup arrays for vectorised arithmetic."""
        if self._np_add is None:
            if self.q > TABLE_ORDER:
                raise ValueError("vectorised tables only for q <= 1024")
            q = self.q
            idx = np.arange(q)
            if self.k == 1:
                add = (idx[:, None] + idx[None, :]) % q
                mul = (idx[:, None] * idx[None, :]) % q
                neg = (-idx) % q
            else:
                add = np.array([[self.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
                mul = np.array([[self.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
                neg = np.array([self.neg(a) for a in range(q)], dtype=np.int64)
            self._np_add = add.astype(np.int64)
            self._np_mul = mul.astype(np.int64)
            self._np_neg = neg.astype(np.int64)
        return self._np_add, self._np_mul, self._np_neg


class FieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int):
        self.field = field
        self.value = value

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self.field.inv(self._other(other))))

    def __pow__(self, e: int):
        if e < 0:
            return FieldElement(self.field, self.field.power(self.field.inv(self.value), -e))
        return FieldElement(self.field, self.field.power(self.value, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return isinstance(other, FieldElement) and self.field == other.field and self.value == other.value

    def __hash__(self):
        return hash((self.field.q, self.value))

    def __repr__(self):
        return f"{self.value}"


@lru_cache(maxsize=None)
def ff_make(p: int, k: int = 1) -> FiniteField:
    """Cached field constructor."""
    return FiniteField(p, k)


def field_of_order(q: int) -> FiniteField:
    p, k = prime_power(q)
    return ff_make(p, k)


def image_size(F: FiniteField, phi) -> int:
    """Cardinality of phi(F_q) for a map given as a callable on encoded ints.

    ``phi`` may also be a dict {exponent: coefficient} describing a univariate
    polynomial; additive (linearised) polynomials beyond the enumeration
    limit are handled via the kernel: |image| = q / |kernel|.
    """
    if isinstance(phi, dict):
        coeffs = {e: c for e, c in phi.items() if c}
        additive = all(_is_p_power(e, F.p) for e in coeffs)

        def f(t):
            acc = 0
            for e, c in coeffs.items():
                acc = F.add(acc, F.mul(c, F.power(t, e)))
            return acc

        if F.q > (1 << 16):
            if not additive:
                raise ValueError("image of a non-additive map is only computed by enumeration")
            return F.q // kernel_size_additive(F, coeffs)
        phi = f
    return len({phi(t) for t in F.elements()})


def _is_p_power(e: int, p: int) -> bool:
    while e > 1 and e % p == 0:
        e //= p
    return e == 1


def kernel_size_additive(F: FiniteField, coeffs: dict[int, int]) -> int:
    """Number of roots in F_q of an additive polynomial sum c_e t^e.

    The map is F_p-linear, so the kernel has size p^(k - rank) where rank is
    that of its matrix on the basis 1, x, ..., x^{k-1}.
    """
    p, k = F.p, F.k
    cols = []
    for b in F.prime_basis():
        acc = 0
        for e, c in coeffs.items():
            acc = F.add(acc, F.mul(c, F.power(b, e)))
        cols.append(F._digits(acc))
    rows = [list(r) for r in zip(*cols)]
    return p ** (k - _rank_mod_p(rows, p))


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    rows = [r[:] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank
