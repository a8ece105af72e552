"""Arithmetic in the maximal unipotent subgroup U over an arbitrary ring.

Structure constants N_{alpha,beta} of a Chevalley basis are computed over Z
from extraspecial pairs (all signed +).  The commutator coefficients
C_{ij,alpha,beta} in

    x_beta(u) x_alpha(t) = x_alpha(t) x_beta(u) prod_{i,j>0} x_{i alpha + j beta}(C_ij (-t)^i u^j)

are read off the adjoint representation over Z, so nothing is reduced mod p
until a coefficient is pushed into the target ring.  Elements are normal
forms prod_j x_j(c_j) in enumeration order; products are normalised by
collection from the left.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import random

import numpy as np

from .fields import FieldElement, FiniteField
from .polys import Poly, PolyRing
from .roots import RootSystem, build_root_system
from .symbolic import SymbolicRing


class RingMismatch(TypeError):
    pass


class CollectionOverflow(RuntimeError):
    pass


# ----------------------------------------------------------------------
# Chevalley basis structure constants
# ----------------------------------------------------------------------

def _vadd(u, w):
    return tuple(a + b for a, b in zip(u, w))


def _vneg(u):
    return tuple(-a for a in u)


def _is_positive(v) -> bool:
    return any(c > 0 for c in v)


class ChevalleyConstants:
    """N_{alpha,beta} for all roots alpha, beta with alpha+beta a root."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self._pos: dict[tuple, int] = {}
        pos = [r.coeffs for r in rs.positive_roots]
        by_height = sorted(range(len(pos)), key=lambda i: (sum(pos[i]), i))
        for xi_idx in by_height:
            xi = pos[xi_idx]
            decomps = []
            for a in range(len(pos)):
                rest = tuple(x - y for x, y in zip(xi, pos[a]))
                b = rs.index.get(rest)
                if b is not None:
                    decomps.append((a, b))
            if not decomps:
                continue
            a0, b0 = min(decomps)  # extraspecial: alpha' of least index
            alpha0, beta0 = pos[a0], pos[b0]
            n0 = rs.root_string_p(alpha0, beta0) + 1
            self._pos[(alpha0, beta0)] = n0
            self._pos[(beta0, alpha0)] = -n0
            lxi = rs.inner(xi, xi)
            for a, b in decomps:
                if a >= b or (a, b) == (a0, b0):
                    continue
                alpha, beta = pos[a], pos[b]
                acc = Fraction(0)
                s1 = tuple(x - y for x, y in zip(beta, alpha0))
                if rs.is_root(s1):
                    s2 = tuple(x - y for x, y in zip(alpha, beta0))
                    acc += Fraction(self.N(beta, _vneg(alpha0)) * self.N(alpha, _vneg(beta0)), rs.inner(s1, s1))
                s3 = tuple(x - y for x, y in zip(alpha, alpha0))
                if rs.is_root(s3):
                    s4 = tuple(x - y for x, y in zip(beta, beta0))
                    acc += Fraction(self.N(_vneg(alpha0), alpha) * self.N(beta, _vneg(beta0)), rs.inner(s3, s3))
                val = acc * lxi / n0
                assert val.denominator == 1, (alpha, beta, val)
                val = int(val)
                assert abs(val) == rs.root_string_p(alpha, beta) + 1, (alpha, beta, val)
                self._pos[(alpha, beta)] = val
                self._pos[(beta, alpha)] = -val

    def N(self, alpha, beta) -> int:
        """N_{alpha,beta}; zero when alpha+beta is not a root."""
        rs = self.rs
        alpha, beta = tuple(alpha), tuple(beta)
        gamma = _vadd(alpha, beta)
        if not rs.is_root(gamma):
            return 0
        pa, pb = _is_positive(alpha), _is_positive(beta)
        if pa and pb:
            return self._pos[(alpha, beta)]
        if not pa and not pb:
            return -self._pos[(_vneg(alpha), _vneg(beta))]
        if not pa:
            return -self.N(beta, alpha)
        # alpha > 0 > beta; use the triple (alpha, beta, -gamma)
        if _is_positive(gamma):
            val = Fraction(-rs.inner(gamma, gamma), rs.inner(alpha, alpha)) * self._pos[(_vneg(beta), gamma)]
        else:
            val = Fraction(rs.inner(gamma, gamma), rs.inner(beta, beta)) * self._pos[(_vneg(gamma), alpha)]
        assert val.denominator == 1
        return int(val)


class AdjointRepresentation:
    """Integer matrices of ad(e_alpha) on the Chevalley lattice."""

    def __init__(self, rs: RootSystem, consts: ChevalleyConstants | None = None):
        self.rs = rs
        self.consts = consts or ChevalleyConstants(rs)
        roots = list(rs.all_roots)
        self.roots = roots
        self.dim = len(roots) + rs.rank
        self.pos = {r: i for i, r in enumerate(roots)}
        self.h_offset = len(roots)

    def coroot_in_simple(self, alpha) -> list[int]:
        cs = self.rs.coroot_coeffs(alpha)
        assert all(c.denominator == 1 for c in cs)
        return [int(c) for c in cs]

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Lie bracket of two coordinate vectors in the Chevalley basis."""
        out = np.zeros(self.dim, dtype=object)
        rs = self.rs
        nr = len(self.roots)
        for i in np.nonzero(x)[0]:
            for j in np.nonzero(y)[0]:
                c = x[i] * y[j]
                out += c * self._basis_bracket(i, j)
        return out

    @lru_cache(maxsize=None)
    def _basis_bracket_cached(self, i: int, j: int) -> tuple:
        return tuple(self._basis_bracket_raw(i, j))

    def _basis_bracket(self, i, j):
        return np.array(self._basis_bracket_cached(int(i), int(j)), dtype=object)

    def _basis_bracket_raw(self, i: int, j: int) -> list[int]:
        rs = self.rs
        nr = len(self.roots)
        out = [0] * self.dim
        if i >= nr and j >= nr:
            return out
        if i >= nr:
            # [h_k, e_beta] = <beta, alpha_k^vee> e_beta
            beta = self.roots[j]
            out[j] = rs.pairing(beta, i - nr)
            return out
        if j >= nr:
            alpha = self.roots[i]
            out[i] = -rs.pairing(alpha, j - nr)
            return out
        alpha, beta = self.roots[i], self.roots[j]
        s = _vadd(alpha, beta)
        if all(c == 0 for c in s):
            for k, c in enumerate(self.coroot_in_simple(alpha)):
                out[nr + k] = c
            return out
        if rs.is_root(s):
            out[self.pos[s]] = self.consts.N(alpha, beta)
        return out

    def ad_matrix(self, alpha) -> np.ndarray:
        i = self.pos[tuple(alpha)]
        M = np.zeros((self.dim, self.dim), dtype=np.int64)
        for j in range(self.dim):
            M[:, j] = self._basis_bracket_raw(i, j)
        return M

    def exp_ad(self, alpha, t: int) -> np.ndarray:
        """exp(t ad e_alpha) as an integer matrix."""
        A = self.ad_matrix(alpha)
        out = np.eye(self.dim, dtype=np.int64)
        term = np.eye(self.dim, dtype=np.int64)
        k = 1
        while True:
            term = term @ A
            if not term.any():
                break
            # divided powers of ad e_alpha are integral on the Chevalley lattice
            scaled = term * t**k
            assert (scaled % _factorial(k) == 0).all()
            out = out + scaled // _factorial(k)
            k += 1
        return out


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


@dataclass(frozen=True)
class CommutatorTerm:
    target: int  # 0-based index of i*alpha + j*beta
    i: int
    j: int
    coeff: int


class StructureConstantTable:
    """Integer structure and commutator constants for the positive roots."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.consts = ChevalleyConstants(rs)
        pos = [r.coeffs for r in rs.positive_roots]
        self.N_pos = {}
        for a in range(rs.N):
            for b in range(rs.N):
                n = self.consts.N(pos[a], pos[b])
                if n:
                    self.N_pos[(a, b)] = n
        self.adjoint = AdjointRepresentation(rs, self.consts)
        self.comm: dict[tuple[int, int], tuple[CommutatorTerm, ...]] = {}
        for a in range(rs.N):
            for b in range(a + 1, rs.N):
                self.comm[(a, b)] = self._commutator_terms(a, b)

    def _combinations(self, a: int, b: int) -> list[tuple[int, int, int]]:
        rs = self.rs
        alpha, beta = rs.positive_roots[a].coeffs, rs.positive_roots[b].coeffs
        out = []
        for i in range(1, 5):
            for j in range(1, 5):
                v = tuple(i * x + j * y for x, y in zip(alpha, beta))
                g = rs.index.get(v)
                if g is not None:
                    out.append((g, i, j))
        return sorted(out)

    def _commutator_terms(self, a: int, b: int) -> tuple[CommutatorTerm, ...]:
        combos = self._combinations(a, b)
        if not combos:
            return ()
        first = self._peel(a, b, combos, 1, 1)
        terms = []
        for g, i, j in combos:
            C = first[g] * (-1) ** i
            terms.append(CommutatorTerm(g, i, j, C))
        check = self._peel(a, b, combos, 2, 3)
        for term in terms:
            expect = term.coeff * (-2) ** term.i * 3**term.j
            assert check[term.target] == expect, ("non-monomial commutator", a, b, term)
        return tuple(t for t in terms if t.coeff)

    def _peel(self, a: int, b: int, combos, t: int, u: int) -> dict[int, int]:
        """Coefficients c_gamma of [x_beta(u), x_alpha(t)] = prod x_gamma(c_gamma)."""
        ad = self.adjoint
        rs = self.rs
        alpha = rs.positive_roots[a].coeffs
        beta = rs.positive_roots[b].coeffs
        K = ad.exp_ad(beta, -u) @ ad.exp_ad(alpha, -t) @ ad.exp_ad(beta, u) @ ad.exp_ad(alpha, t)
        out = {}
        for g, _, _ in combos:
            gamma = rs.positive_roots[g].coeffs
            m = next(k for k in range(rs.rank) if rs.pairing(gamma, k))
            pairing = rs.pairing(gamma, m)
            entry = K[ad.pos[gamma], ad.h_offset + m]
            assert entry % pairing == 0
            c = -entry // pairing
            out[g] = int(c)
            if c:
                K = ad.exp_ad(gamma, -c) @ K
        assert (K == np.eye(ad.dim, dtype=np.int64)).all(), "commutator did not peel to identity"
        return out

    def N_of(self, a: int, b: int) -> int:
        return self.N_pos.get((a, b), 0)

    def c_of(self, a: int, b: int, i: int, j: int) -> int:
        """C_{ij, beta_a, beta_b} for a < b (0 when i*alpha+j*beta is not a root)."""
        for term in self.comm.get((a, b), ()):
            if (term.i, term.j) == (i, j):
                return term.coeff
        return 0


@lru_cache(maxsize=None)
def structure_constants(type_label: str, rank: int) -> StructureConstantTable:
    return StructureConstantTable(build_root_system(type_label, rank, allow_f4=True))


def compute_structure_constants(rs: RootSystem) -> StructureConstantTable:
    return structure_constants(rs.type_label, rs.rank)


# ----------------------------------------------------------------------
# Collection from the left
# ----------------------------------------------------------------------

def ring_const(ring, n: int):
    if isinstance(ring, FiniteField):
        return ring.element(n)
    if isinstance(ring, PolyRing):
        return ring.const(n)
    return ring.from_int(n)


MAX_COLLECTION_STEPS = 10**6


class Collector:
    """Rewrites words in root elements into ascending normal form."""

    def __init__(self, table: StructureConstantTable, ring):
        self.table = table
        self.ring = ring
        self.N = table.rs.N
        self.zero = ring_const(ring, 0)
        self._consts = {}
        self.steps = 0

    def const(self, n: int):
        c = self._consts.get(n)
        if c is None:
            c = self._consts[n] = ring_const(self.ring, n)
        return c

    def mul_gen(self, w: list, k: int, c) -> None:
        """In place: w := w * x_k(c)."""
        if not c:
            return
        self.steps += 1
        if self.steps > MAX_COLLECTION_STEPS:
            raise CollectionOverflow("collection exceeded the step ceiling")
        N = self.N
        tail = []
        for j in range(k + 1, N):
            if w[j]:
                tail.append((j, w[j]))
                w[j] = self.zero
        w[k] = w[k] + c
        if not tail:
            return
        neg_c = -c
        powers = {1: neg_c}
        comm = self.table.comm
        for j, wj in tail:
            self.mul_gen(w, j, wj)
            for term in comm[(k, j)]:
                pc = powers.get(term.i)
                if pc is None:
                    pc = neg_c
                    for _ in range(term.i - 1):
                        pc = pc * neg_c
                    powers[term.i] = pc
                val = self.const(term.coeff) * pc
                for _ in range(term.j):
                    val = val * wj
                self.mul_gen(w, term.target, val)

    def collect(self, word) -> list:
        """Normal form of a word given as (index, coefficient) pairs."""
        w = [self.zero] * self.N
        self.steps = 0
        for k, c in word:
            self.mul_gen(w, k, c)
        return w


# ----------------------------------------------------------------------
# Group elements
# ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class UnipotentElement:
    group: "UnipotentGroup"
    coeffs: tuple

    def __eq__(self, other):
        if not isinstance(other, UnipotentElement):
            return NotImplemented
        return self.group is other.group and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(tuple(getattr(c, "value", c) for c in self.coeffs))

    def __mul__(self, other):
        return self.group.multiply(self, other)

    def __repr__(self):
        parts = [f"x_{j + 1}({c})" for j, c in enumerate(self.coeffs) if c]
        return " ".join(parts) if parts else "1"


class UnipotentGroup:
    """U over a coefficient ring (FiniteField, SymbolicRing or PolyRing)."""

    def __init__(self, rs: RootSystem, ring, table: StructureConstantTable | None = None):
        self.rs = rs
        self.ring = ring
        self.table = table or compute_structure_constants(rs)
        self.collector = Collector(self.table, ring)
        self.N = rs.N
        self.zero = ring_const(ring, 0)

    def element(self, coeffs) -> UnipotentElement:
        coeffs = tuple(coeffs)
        if len(coeffs) != self.N:
            raise ValueError("wrong number of coordinates")
        return UnipotentElement(self, coeffs)

    def identity(self) -> UnipotentElement:
        return UnipotentElement(self, (self.zero,) * self.N)

    def x(self, j: int, t) -> UnipotentElement:
        coeffs = [self.zero] * self.N
        coeffs[j] = t
        return UnipotentElement(self, tuple(coeffs))

    def _check(self, *elems):
        for e in elems:
            if e.group is not self and (e.group.rs != self.rs or e.group.ring != self.ring):
                raise RingMismatch("elements belong to different groups")

    def multiply(self, x: UnipotentElement, y: UnipotentElement) -> UnipotentElement:
        self._check(x, y)
        col = self.collector
        col.steps = 0
        w = list(x.coeffs)
        for k, c in enumerate(y.coeffs):
            col.mul_gen(w, k, c)
        return UnipotentElement(self, tuple(w))

    def inverse(self, x: UnipotentElement) -> UnipotentElement:
        self._check(x)
        col = self.collector
        col.steps = 0
        w = [self.zero] * self.N
        for k in range(self.N - 1, -1, -1):
            col.mul_gen(w, k, -x.coeffs[k])
        return UnipotentElement(self, tuple(w))

    def conjugate(self, x: UnipotentElement, y: UnipotentElement) -> UnipotentElement:
        """x y x^{-1}."""
        return self.multiply(self.multiply(x, y), self.inverse(x))

    def truncate(self, x: UnipotentElement, i: int) -> UnipotentElement:
        """Image in U/M_i: coordinates beyond the first i are zeroed."""
        if not 0 <= i <= self.N:
            raise ValueError("truncation index out of range")
        return UnipotentElement(self, tuple(c if j < i else self.zero for j, c in enumerate(x.coeffs)))

    def random_element(self, rng: random.Random) -> UnipotentElement:
        if not isinstance(self.ring, FiniteField):
            raise TypeError("random elements only over finite fields")
        F = self.ring
        return UnipotentElement(self, tuple(F(rng.randrange(F.q)) for _ in range(self.N)))

    def encode(self, x: UnipotentElement) -> int:
        """Base-q positional index of an element over a finite field."""
        q = self.ring.q
        idx = 0
        for c in reversed(x.coeffs):
            idx = idx * q + c.value
        return idx

    def decode(self, idx: int) -> UnipotentElement:
        q = self.ring.q
        F = self.ring
        coeffs = []
        for _ in range(self.N):
            coeffs.append(F(idx % q))
            idx //= q
        return UnipotentElement(self, tuple(coeffs))


# ----------------------------------------------------------------------
# Generic group-law formulas over Z
# ----------------------------------------------------------------------

class GenericFormulas:
    """Normal-form coordinates of products, inverses and conjugates as
    integer polynomials in the coordinates of the inputs.

    Variables 0..N-1 are s_1..s_N (first argument), N..2N-1 are u_1..u_N.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        N = rs.N
        self.N = N
        names = [f"s_{j + 1}" for j in range(N)] + [f"u_{j + 1}" for j in range(N)]
        self.ring = PolyRing(names, 0)
        table = compute_structure_constants(rs)
        col = Collector(table, self.ring)
        s = [self.ring.var(j) for j in range(N)]
        u = [self.ring.var(N + j) for j in range(N)]
        w = list(s)
        for k in range(N):
            col.mul_gen(w, k, u[k])
        self.product = w
        w = [self.ring.zero()] * N
        for k in range(N - 1, -1, -1):
            col.mul_gen(w, k, -s[k])
        self.inverse = w
        w = list(s)
        for k in range(N):
            col.mul_gen(w, k, u[k])
        for k in range(N - 1, -1, -1):
            col.mul_gen(w, k, -s[k])
        self.conjugate = w
        self._mod_cache: dict[int, tuple] = {}

    def reduced(self, p: int):
        """(product, inverse, conjugate) reduced mod p."""
        if p not in self._mod_cache:
            ring = self.ring.with_mod(p)
            self._mod_cache[p] = tuple(
                [f.reduce_mod(p, ring) for f in fam] for fam in (self.product, self.inverse, self.conjugate)
            )
        return self._mod_cache[p]


@lru_cache(maxsize=None)
def generic_formulas(type_label: str, rank: int) -> GenericFormulas:
    return GenericFormulas(build_root_system(type_label, rank))


def formulas_for(rs: RootSystem) -> GenericFormulas:
    return generic_formulas(rs.type_label, rs.rank)
