"""Sparse multivariate (Laurent) polynomials over Z or F_p.

Monomials are packed into a single Python int: variable ``i`` occupies bits
``[W*i, W*(i+1))`` and stores ``exponent + BIAS``.  Multiplying monomials is
then integer addition minus the packed zero-exponent word, which keeps the
inner loop of polynomial multiplication cheap.  Negative exponents are
allowed so the same type carries the Laurent monomials that appear as
denominators in the symbolic ring.
"""

from __future__ import annotations

from typing import Iterable, Sequence

W = 16
BIAS = 1 << (W - 1)
MASK = (1 << W) - 1


class PolyRing:
    """Ambient variable set and coefficient domain (``mod == 0`` means Z)."""

    def __init__(self, names: Sequence[str], mod: int = 0):
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.mod = mod
        self.one_mono = sum(BIAS << (W * i) for i in range(self.nvars))
        self._var_monos = [self.one_mono + (1 << (W * i)) for i in range(self.nvars)]

    def __repr__(self):
        dom = f"F_{self.mod}" if self.mod else "Z"
        return f"PolyRing({dom}, {self.nvars} vars)"

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names and self.mod == other.mod

    def __hash__(self):
        return hash((self.names, self.mod))

    def with_mod(self, mod: int) -> "PolyRing":
        return PolyRing(self.names, mod)

    # -- constructors -------------------------------------------------
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c: int) -> "Poly":
        if self.mod:
            c %= self.mod
        return Poly(self, {self.one_mono: c} if c else {})

    def var(self, i: int) -> "Poly":
        return Poly(self, {self._var_monos[i]: 1})

    def monomial(self, exps: dict[int, int], coeff: int = 1) -> "Poly":
        m = self.one_mono
        for i, e in exps.items():
            m += e << (W * i)
        if self.mod:
            coeff %= self.mod
        return Poly(self, {m: coeff} if coeff else {})

    # -- monomial helpers ---------------------------------------------
    def exponent(self, m: int, i: int) -> int:
        return ((m >> (W * i)) & MASK) - BIAS

    def exponents(self, m: int) -> tuple[int, ...]:
        return tuple(((m >> (W * i)) & MASK) - BIAS for i in range(self.nvars))

    def pack(self, exps: Iterable[int]) -> int:
        m = self.one_mono
        for i, e in enumerate(exps):
            if e:
                m += e << (W * i)
        return m

    def strip_var(self, m: int, i: int) -> tuple[int, int]:
        """Split m into (exponent of var i, monomial with var i removed)."""
        e = self.exponent(m, i)
        return e, m - (e << (W * i))


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict[int, int]):
        self.ring = ring
        self.terms = terms

    # -- basic predicates ---------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.one_mono in self.terms)

    def constant_value(self) -> int:
        return self.terms.get(self.ring.one_mono, 0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        res = dict(self.terms)
        mod = self.ring.mod
        for m, c in other.terms.items():
            v = res.get(m, 0) + c
            if mod:
                v %= mod
            if v:
                res[m] = v
            else:
                res.pop(m, None)
        return Poly(self.ring, res)

    __radd__ = __add__

    def __neg__(self):
        mod = self.ring.mod
        if mod:
            return Poly(self.ring, {m: (mod - c) % mod for m, c in self.terms.items()})
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not self.terms or not other.terms:
            return Poly(self.ring, {})
        one = self.ring.one_mono
        mod = self.ring.mod
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        res: dict[int, int] = {}
        get = res.get
        for m2, c2 in b.items():
            shift = m2 - one
            for m1, c1 in a.items():
                m = m1 + shift
                res[m] = get(m, 0) + c1 * c2
        if mod:
            res = {m: c % mod for m, c in res.items() if c % mod}
        else:
            res = {m: c for m, c in res.items() if c}
        return Poly(self.ring, res)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Poly":
        mod = self.ring.mod
        if mod:
            c %= mod
            if not c:
                return Poly(self.ring, {})
            return Poly(self.ring, {m: (v * c) % mod for m, v in self.terms.items()})
        if not c:
            return Poly(self.ring, {})
        return Poly(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_monomial(self, mono: int, coeff: int = 1) -> "Poly":
        shift = mono - self.ring.one_mono
        mod = self.ring.mod
        if mod:
            return Poly(self.ring, {m + shift: (c * coeff) % mod for m, c in self.terms.items()})
        return Poly(self.ring, {m + shift: c * coeff for m, c in self.terms.items()})

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- structure ----------------------------------------------------
    def variables(self) -> set[int]:
        ring = self.ring
        out = set()
        for m in self.terms:
            d = m - ring.one_mono
            if d == 0:
                continue
            for i in range(ring.nvars):
                if ring.exponent(m, i):
                    out.add(i)
        return out

    def involves(self, i: int) -> bool:
        ring = self.ring
        return any(ring.exponent(m, i) for m in self.terms)

    def degree_in(self, i: int) -> int:
        ring = self.ring
        return max((ring.exponent(m, i) for m in self.terms), default=0)

    def coefficients_in(self, i: int) -> dict[int, "Poly"]:
        """Group terms by the exponent of variable i."""
        ring = self.ring
        out: dict[int, dict[int, int]] = {}
        for m, c in self.terms.items():
            e, rest = ring.strip_var(m, i)
            out.setdefault(e, {})[rest] = c
        return {e: Poly(ring, t) for e, t in out.items()}

    def without_content(self) -> "Poly":
        """Divide out the monomial gcd of the terms (Laurent exponents allowed)."""
        if not self.terms:
            return self
        ring = self.ring
        lows = [min(ring.exponent(m, i) for m in self.terms) for i in range(ring.nvars)]
        shift = ring.pack(lows) - ring.one_mono
        if not shift:
            return self
        return Poly(ring, {m - shift: c for m, c in self.terms.items()})

    def pth_root(self, p: int) -> "Poly | None":
        """The polynomial whose p-th power is self over F_p, if every exponent is divisible by p."""
        ring = self.ring
        out = {}
        for m, c in self.terms.items():
            exps = ring.exponents(m)
            if any(e % p for e in exps):
                return None
            out[ring.pack(e // p for e in exps)] = c
        return Poly(ring, out)

    def raise_vars(self, variables: Iterable[int], p: int) -> "Poly":
        """Substitute x -> x^p for each listed variable."""
        ring = self.ring
        variables = list(variables)
        out = {}
        for m, c in self.terms.items():
            exps = list(ring.exponents(m))
            for i in variables:
                exps[i] *= p
            out[ring.pack(exps)] = c
        return Poly(ring, out)

    def substitute(self, i: int, repl: "Poly") -> "Poly":
        """Replace variable i by ``repl`` (nonnegative exponents of i only)."""
        groups = self.coefficients_in(i)
        if set(groups) <= {0}:
            return self
        if min(groups) < 0:
            raise ValueError("cannot substitute into a negative power")
        result = self.ring.zero()
        powers = [self.ring.one()]
        for e in sorted(groups):
            while len(powers) <= e:
                powers.append(powers[-1] * repl)
            result = result + groups[e] * powers[e]
        return result

    def specialize_to_one(self, i: int) -> "Poly":
        """Set variable i to 1 (valid for Laurent exponents)."""
        ring = self.ring
        mod = ring.mod
        res: dict[int, int] = {}
        for m, c in self.terms.items():
            _, rest = ring.strip_var(m, i)
            v = res.get(rest, 0) + c
            res[rest] = v % mod if mod else v
        return Poly(ring, {m: c for m, c in res.items() if c})

    def reduce_mod(self, p: int, ring: PolyRing | None = None) -> "Poly":
        ring = ring or self.ring.with_mod(p)
        return Poly(ring, {m: c % p for m, c in self.terms.items() if c % p})

    def change_ring(self, ring: PolyRing) -> "Poly":
        """Reinterpret in another ring with the same variable layout."""
        if ring.mod:
            return Poly(ring, {m: c % ring.mod for m, c in self.terms.items() if c % ring.mod})
        return Poly(ring, dict(self.terms))

    def evaluate(self, values: Sequence, one, from_int) -> object:
        """Evaluate with ring elements; ``values[i] is None`` means zero."""
        ring = self.ring
        n = ring.nvars
        cache: dict[tuple[int, int], object] = {}
        total = None
        for m, c in self.terms.items():
            term = None
            skip = False
            for i in range(n):
                e = ((m >> (W * i)) & MASK) - BIAS
                if not e:
                    continue
                v = values[i]
                if v is None:
                    skip = True
                    break
                key = (i, e)
                pw = cache.get(key)
                if pw is None:
                    pw = v
                    for _ in range(e - 1):
                        pw = pw * v
                    cache[key] = pw
                term = pw if term is None else term * pw
            if skip:
                continue
            cc = from_int(c)
            term = cc if term is None else term * cc
            total = term if total is None else total + term
        return from_int(0) if total is None else total

    # -- display ------------------------------------------------------
    def sorted_terms(self):
        ring = self.ring
        items = [(ring.exponents(m), c) for m, c in self.terms.items()]
        items.sort(key=lambda it: (-sum(it[0]), tuple(-e for e in it[0])))
        return items

    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.ring
        parts = []
        for exps, c in self.sorted_terms():
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(ring.names[i])
                elif e:
                    factors.append(f"{ring.names[i]}^{e}")
            mono = "*".join(factors)
            if ring.mod and ring.mod > 2 and c > ring.mod // 2:
                c = c - ring.mod
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    __repr__ = __str__
