"""Smith normal form of integer matrices with a unimodular certificate."""

from __future__ import annotations

from dataclasses import dataclass

Matrix = list[list[int]]


@dataclass(frozen=True)
class SmithForm:
    """U @ M @ V == D with U, V unimodular and D diagonal, d_1 | d_2 | ..."""

    D: Matrix
    U: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


def smith_normal_form(M: Matrix) -> SmithForm:
    """Diagonalize M by integer row and column operations."""
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(row) for row in M]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        # pivot: smallest nonzero absolute value in the remaining block
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        done = False
            if not done:
                continue
            # divisibility: pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if not any(A[i][j] for i in range(t, m) for j in range(t, n)):
            break
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return SmithForm(A, U, V)


def verify_certificate(M: Matrix, form: SmithForm) -> bool:
    """Check U M V == D, that D is diagonal with dividing entries, and |det U| = |det V| = 1."""
    if matmul(matmul(form.U, M), form.V) != form.D:
        return False
    D = form.D
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            if i != j and x:
                return False
    diag = form.diagonal
    for a, b in zip(diag, diag[1:]):
        if a == 0 and b != 0:
            return False
        if a and b % a:
            return False
    return abs(_det(form.U)) == 1 and abs(_det(form.V)) == 1


def _det(A: Matrix) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def unit_invariant_factors(rows: Matrix) -> bool:
    """True when the SNF has exactly one entry equal to 1 in every row."""
    if not rows:
        return True
    diag = smith_normal_form(rows).diagonal
    return len(diag) == len(rows) and all(d == 1 for d in diag)
