"""Matrix realization of U for the classical types B, C, D.

The natural module has basis e_1..e_n, (e_0 for type B), e_{-n}..e_{-1},
stored in that order.  Root elements for the simple roots are written down
directly; every other positive root gets E_alpha = [E_{alpha_i}, E_beta] / N
for its first decomposition alpha = alpha_i + beta with alpha_i simple, so
the basis is a Chevalley basis with the same signs as the engine's
structure constants.  Group elements are x_alpha(t) = I + t E + t^2 E^2/2.

Nothing here goes through the collection code, so agreement of matrix
products with the engine's multiplication is an independent check of the
commutator relations.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .engine import compute_structure_constants
from .fields import FiniteField
from .roots import RootSystem, build_root_system

CLASSICAL = ("B", "C", "D")


class NotClassical(ValueError):
    pass


def _epsilon(rs: RootSystem) -> list[tuple[int, ...]]:
    """Simple roots in the epsilon basis (Bourbaki numbering)."""
    n = rs.rank
    out = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        out.append(v)
    last = [0] * n
    if rs.type_label == "B":
        last[n - 1] = 1
    elif rs.type_label == "C":
        last[n - 1] = 2
    else:
        last[n - 2] = last[n - 1] = 1
    out.append(last)
    return [tuple(v) for v in out]


class NaturalRepresentation:
    def __init__(self, rs: RootSystem):
        if rs.type_label not in CLASSICAL:
            raise NotClassical(f"no natural representation coded for type {rs.type_label}")
        self.rs = rs
        n = rs.rank
        self.dim = 2 * n + 1 if rs.type_label == "B" else 2 * n
        self.E: list[np.ndarray] = []
        self.E2: list[np.ndarray] = []  # E^2 / 2
        self._build()

    def _index(self, i: int) -> int:
        """Row of e_i for i in +-1..+-n, or 0 for the extra vector in type B."""
        n = self.rs.rank
        if i > 0:
            return i - 1
        if i == 0:
            return n
        return self.dim + i

    def _unit(self, a: int, b: int) -> np.ndarray:
        m = np.zeros((self.dim, self.dim), dtype=np.int64)
        m[self._index(a), self._index(b)] = 1
        return m

    def _simple(self, i: int) -> np.ndarray:
        n = self.rs.rank
        T = self.rs.type_label
        e = self._unit
        if i < n - 1:
            return e(i + 1, i + 2) - e(-(i + 2), -(i + 1))
        if T == "B":
            return 2 * e(n, 0) - e(0, -n)
        if T == "C":
            return e(n, -n)
        return e(n - 1, -n) - e(n, -(n - 1))

    def _build(self):
        rs = self.rs
        table = compute_structure_constants(rs)
        r = rs.rank
        for j in range(rs.N):
            if j < r:
                E = self._simple(j)
            else:
                i, b = next(
                    (i, rs.index[tuple(x - y for x, y in zip(rs.positive_roots[j].coeffs,
                                                              rs.positive_roots[i].coeffs))])
                    for i in range(r)
                    if tuple(x - y for x, y in zip(rs.positive_roots[j].coeffs,
                                                   rs.positive_roots[i].coeffs)) in rs.index
                )
                n_ib = table.N_of(i, b)
                br = self.E[i] @ self.E[b] - self.E[b] @ self.E[i]
                assert n_ib and np.all(br % n_ib == 0)
                E = br // n_ib
            sq = E @ E
            assert np.all(sq % 2 == 0) and not np.any(sq @ E), "x_alpha(t) is not I + tE + t^2 E^2/2"
            self.E.append(E)
            self.E2.append(sq // 2)

    def form(self) -> np.ndarray:
        """Gram matrix of the invariant form (symmetric for B, D; alternating for C)."""
        n = self.rs.rank
        G = np.zeros((self.dim, self.dim), dtype=np.int64)
        sign = -1 if self.rs.type_label == "C" else 1
        for i in range(1, n + 1):
            G[self._index(i), self._index(-i)] = 1
            G[self._index(-i), self._index(i)] = sign
        if self.rs.type_label == "B":
            G[n, n] = 2
        return G

    def weight_of(self, j: int) -> tuple[int, ...]:
        """Epsilon coordinates of the j-th positive root (0-based)."""
        simple = _epsilon(self.rs)
        c = self.rs.positive_roots[j].coeffs
        return tuple(sum(c[k] * simple[k][m] for k in range(self.rs.rank)) for m in range(self.rs.rank))


@lru_cache(maxsize=None)
def natural_representation(type_label: str, rank: int) -> NaturalRepresentation:
    return NaturalRepresentation(build_root_system(type_label, rank))


class BatchMatrices:
    """Batched matrix arithmetic over F_q on arrays of field codes."""

    def __init__(self, F: FiniteField):
        self.F = F
        self.add, self.mul, _ = F.tables()

    def lift(self, M: np.ndarray) -> np.ndarray:
        """Integer matrix -> field codes."""
        return np.vectorize(self.F.from_int)(M).astype(np.int64)

    def scale(self, t: np.ndarray, M: np.ndarray) -> np.ndarray:
        """t[b] * M for a batch of scalars t."""
        return self.mul[t[:, None, None], M[None, :, :]]

    def plus(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        return self.add[A, B]

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        prods = self.mul[A[..., :, :, None], B[..., None, :, :]]
        out = prods[..., :, 0, :]
        for k in range(1, prods.shape[-2]):
            out = self.add[out, prods[..., :, k, :]]
        return out


def _times_integer_matrix(bm: BatchMatrices, A: np.ndarray, M: np.ndarray) -> np.ndarray:
    """A @ M for a batch A over F_q and a sparse integer matrix M."""
    out = np.zeros_like(A)
    for k, l in zip(*np.nonzero(M)):
        c = bm.F.from_int(int(M[k, l]))
        out[..., :, l] = bm.add[out[..., :, l], bm.mul[c][A[..., :, k]]]
    return out


def element_matrices(rep: NaturalRepresentation, F: FiniteField, coords: np.ndarray) -> np.ndarray:
    """Matrices of prod_j x_j(coords[:, j]) (increasing j) for a batch of elements."""
    bm = BatchMatrices(F)
    batch = coords.shape[0]
    I = bm.lift(np.eye(rep.dim, dtype=np.int64))
    out = np.broadcast_to(I, (batch, rep.dim, rep.dim)).copy()
    sq = bm.mul[coords, coords]
    for j in range(rep.rs.N):
        # out (I + tE + t^2 E^2/2) = out + t (out E) + t^2 (out E^2/2)
        t = coords[:, j][:, None, None]
        t2 = sq[:, j][:, None, None]
        lin = bm.mul[t, _times_integer_matrix(bm, out, rep.E[j])]
        quad = bm.mul[t2, _times_integer_matrix(bm, out, rep.E2[j])]
        out = bm.add[bm.add[out, lin], quad]
    return out


def _integer_matrix_times(bm: BatchMatrices, M: np.ndarray, A: np.ndarray) -> np.ndarray:
    """M @ A for a sparse integer matrix M and a batch A over F_q."""
    out = np.zeros_like(A)
    for k, l in zip(*np.nonzero(M)):
        c = bm.F.from_int(int(M[k, l]))
        out[..., k, :] = bm.add[out[..., k, :], bm.mul[c][A[..., l, :]]]
    return out


def root_element_times(rep: NaturalRepresentation, F: FiniteField, j: int, t: int,
                       A: np.ndarray) -> np.ndarray:
    """x_j(t) A for a scalar t and a batch of matrices A."""
    bm = BatchMatrices(F)
    lin = bm.mul[t][_integer_matrix_times(bm, rep.E[j], A)]
    quad = bm.mul[F.mul(t, t)][_integer_matrix_times(bm, rep.E2[j], A)]
    return bm.add[bm.add[A, lin], quad]
