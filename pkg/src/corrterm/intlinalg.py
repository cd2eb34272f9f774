"""Exact integer and rational matrix routines.

Matrices are plain nested sequences of ``int`` (or ``Fraction``); every
function returns tuples of tuples so results can be hashed and compared.
No floating point is used anywhere in this module.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]
RatMatrix = tuple[tuple[Fraction, ...], ...]


class SingularMatrixError(ArithmeticError):
    pass


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(a: Sequence[Sequence]) -> tuple:
    return tuple(zip(*a)) if a else ()


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def quad(v: Sequence, a: Sequence[Sequence], w: Sequence | None = None):
    """Return ``v a w^T`` (``w`` defaults to ``v``)."""
    if w is None:
        w = v
    return sum(vi * sum(aij * wj for aij, wj in zip(row, w)) for vi, row in zip(v, a))


def bareiss_det(a: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    m = [list(row) for row in a]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for p in range(k + 1, n):
                if m[p][k] != 0:
                    m[k], m[p] = m[p], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (pivot * m[i][j] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def det_and_adjugate(a: Sequence[Sequence[int]]) -> tuple[int, Matrix]:
    """Fraction-free Gauss-Jordan on ``[A | I]``.

    Every intermediate entry is an integer minor of the augmented matrix, so
    each division below is exact. At the end the left block is ``d*I`` and the
    right block is ``d*A^{-1}`` where ``d = ±det A``; the sign of ``d`` is
    corrected using the number of row swaps.

    Raises SingularMatrixError when ``det A == 0``.
    """
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1, ()
    m = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    sign = 1
    prev = 1
    for k in range(n):
        if m[k][k] == 0:
            for p in range(k + 1, n):
                if m[p][k] != 0:
                    m[k], m[p] = m[p], m[k]
                    sign = -sign
                    break
            else:
                raise SingularMatrixError("matrix is singular")
        pivot = m[k][k]
        for i in range(n):
            if i == k:
                continue
            factor = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(2 * n):
                row_i[j] = (pivot * row_i[j] - factor * row_k[j]) // prev
        prev = pivot
    d = m[0][0]
    # After the sweep the pivot row of every earlier step has been rescaled by
    # later pivots, so all diagonal entries coincide.
    assert all(m[i][i] == d for i in range(n)), "fraction-free sweep lost exactness"
    adj = tuple(tuple(m[i][n + j] for j in range(n)) for i in range(n))
    det = d * sign
    # the right block is d * A^{-1}; adj(A) = det * A^{-1}
    adj = tuple(tuple(x * sign for x in row) for row in adj)
    return det, adj


def det_and_inverse(a: Sequence[Sequence[int]]) -> tuple[int, RatMatrix]:
    """Exact determinant and rational inverse of a square integer matrix."""
    det, adj = det_and_adjugate(a)
    inv = tuple(tuple(Fraction(x, det) for x in row) for row in adj)
    return det, inv


def leading_minors(a: Sequence[Sequence[int]]) -> list[int]:
    return [bareiss_det([row[:k] for row in a[:k]]) for k in range(1, len(a) + 1)]


def ldl(a: Sequence[Sequence[int]]) -> tuple[RatMatrix, tuple[Fraction, ...]]:
    """Exact ``A = L D L^T`` for a symmetric positive definite matrix.

    ``L`` is unit lower triangular. Raises ValueError if a pivot is not
    positive.
    """
    n = len(a)
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D: list[Fraction] = []
    for j in range(n):
        dj = Fraction(a[j][j]) - sum(L[j][k] ** 2 * D[k] for k in range(j))
        if dj <= 0:
            raise ValueError("matrix is not positive definite")
        D.append(dj)
        for i in range(j + 1, n):
            s = Fraction(a[i][j]) - sum(L[i][k] * L[j][k] * D[k] for k in range(j))
            L[i][j] = s / dj
    return tuple(tuple(row) for row in L), tuple(D)


class SmithForm:
    """Smith normal form ``U A V = D`` with unimodular ``U`` and ``V``.

    ``diagonal`` lists ``min(m, n)`` nonnegative entries with each dividing
    the next (zeros last). ``U_inv`` is kept because lifting cokernel
    elements back to the original coordinates needs it.
    """

    __slots__ = ("diagonal", "U", "U_inv", "V", "shape")

    def __init__(self, diagonal, U, U_inv, V, shape):
        self.diagonal: tuple[int, ...] = diagonal
        self.U: Matrix = U
        self.U_inv: Matrix = U_inv
        self.V: Matrix = V
        self.shape: tuple[int, int] = shape

    def cokernel_factors(self) -> tuple[int, ...]:
        """Cyclic orders of ``Z^m / A Z^n``; ``0`` marks a free summand."""
        m = self.shape[0]
        diag = list(self.diagonal) + [0] * (m - len(self.diagonal))
        return tuple(diag)

    def __repr__(self) -> str:
        return f"SmithForm(diagonal={self.diagonal})"


def smith_normal_form(a: Sequence[Sequence[int]]) -> SmithForm:
    m = len(a)
    n = len(a[0]) if m else 0
    A = [list(row) for row in a]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    # Row op "row_i += c * row_j" is left multiplication by E; U <- E U and
    # U_inv <- U_inv E^{-1} (column op "col_j -= c * col_i").
    def add_row(i, j, c):
        if c == 0:
            return
        A[i] = [x + c * y for x, y in zip(A[i], A[j])]
        U[i] = [x + c * y for x, y in zip(U[i], U[j])]
        for row in Ui:
            row[j] -= c * row[i]

    def swap_rows(i, j):
        if i == j:
            return
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for row in Ui:
            row[i] = -row[i]

    def add_col(i, j, c):
        if c == 0:
            return
        for row in A:
            row[i] += c * row[j]
        for row in V:
            row[i] += c * row[j]

    def swap_cols(i, j):
        if i == j:
            return
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            dirty = False
            for i in range(t + 1, m):
                q = A[i][t] // A[t][t]
                add_row(i, t, -q)
                if A[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = A[t][j] // A[t][t]
                add_col(j, t, -q)
                if A[t][j]:
                    dirty = True
            if dirty:
                continue
            p = A[t][t]
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and t < n and A[t][t] < 0:
            negate_row(t)

    diagonal = tuple(A[i][i] for i in range(min(m, n)))
    return SmithForm(
        diagonal,
        tuple(map(tuple, U)),
        tuple(map(tuple, Ui)),
        tuple(map(tuple, V)),
        (m, n),
    )


def ceil_sqrt(x: Fraction) -> int:
    """Smallest integer ``r >= 0`` with ``r*r >= x``."""
    if x <= 0:
        return 0
    r = _isqrt_floor(x)
    while r * r < x:
        r += 1
    return r


def _isqrt_floor(x: Fraction) -> int:
    from math import isqrt

    return isqrt(x.numerator // x.denominator)
