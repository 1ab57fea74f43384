"""Small dense linear algebra over Q(sqrt 2).

Matrices are lists of rows of :class:`QuadScalar`.  Sizes here are tiny
(3x3 operators, 6x4 soliton systems), so plain Gaussian elimination with
exact pivots is the right tool.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactfield import ONE, ZERO, QuadScalar, as_quad

Matrix = list[list[QuadScalar]]
Vector = list[QuadScalar]


def mat(rows: Sequence[Sequence]) -> Matrix:
    return [[as_quad(x) for x in row] for row in rows]


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[ZERO] * (n if m is None else m) for _ in range(n)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def diag(entries: Sequence) -> Matrix:
    n = len(entries)
    return [[as_quad(entries[i]) if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[_dot(row, col) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence[QuadScalar]) -> Vector:
    return [_dot(row, v) for row in a]


def _dot(u: Sequence[QuadScalar], v: Sequence[QuadScalar]) -> QuadScalar:
    s = ZERO
    for x, y in zip(u, v):
        if x and y:
            s = s + x * y
    return s


def bilinear(g: Matrix, u: Sequence[QuadScalar], v: Sequence[QuadScalar]) -> QuadScalar:
    return _dot(u, matvec(g, v))


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(c, a: Matrix) -> Matrix:
    c = as_quad(c)
    return [[c * x for x in row] for row in a]


def is_zero(a: Matrix) -> bool:
    return not any(x for row in a for x in row)


def is_symmetric(a: Matrix) -> bool:
    n = len(a)
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def trace(a: Matrix) -> QuadScalar:
    s = ZERO
    for i in range(len(a)):
        s = s + a[i][i]
    return s


def det(a: Matrix) -> QuadScalar:
    """Determinant by fraction-carrying elimination."""
    m = [row[:] for row in a]
    n = len(m)
    result = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        piv = m[c][c]
        result = result * piv
        inv = piv.inverse()
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return result


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = [row[:] for row in a]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, n_rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + ident for row, ident in zip(a, identity(n))]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


@dataclass(frozen=True)
class AffineSolution:
    """Solution set ``particular + span(kernel)`` of ``A x = b``.

    ``particular`` is ``None`` when the system is inconsistent.  ``echelon``
    is the reduced augmented matrix, kept for auditing.
    """

    particular: Vector | None
    kernel: list[Vector]
    echelon: Matrix
    pivots: list[int]

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def dimension(self) -> int:
        return len(self.kernel) if self.consistent else -1


def solve_affine(a: Matrix, b: Sequence[QuadScalar]) -> AffineSolution:
    """Exact Gauss-Jordan solve; free variables are set to zero."""
    n = len(a[0])
    aug = [list(row) + [as_quad(bi)] for row, bi in zip(a, b)]
    red, piv = rref(aug)
    if n in piv:
        return AffineSolution(None, [], red, piv)
    x = [ZERO] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    free = [c for c in range(n) if c not in piv]
    kernel = []
    for fc in free:
        v = [ZERO] * n
        v[fc] = ONE
        for row, c in zip(red, piv):
            v[c] = -row[fc]
        kernel.append(v)
    return AffineSolution(x, kernel, red, piv)


def nullspace(a: Matrix) -> list[Vector]:
    return solve_affine(a, [ZERO] * len(a)).kernel


@dataclass(frozen=True)
class Inertia:
    positive: int
    negative: int
    zero: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.positive, self.negative, self.zero)


def inertia(a: Matrix) -> Inertia:
    """Signature of a symmetric matrix by exact LDL^T congruence.

    Uses a 1x1 pivot when some remaining diagonal entry is nonzero and a
    2x2 block ``[[0, c], [c, 0]]`` (one positive, one negative direction)
    when the whole remaining diagonal vanishes.
    """
    if not is_symmetric(a):
        raise ValueError("inertia needs a symmetric matrix")
    m = [row[:] for row in a]
    pos = neg = 0
    idx = list(range(len(m)))
    while idx:
        k = next((i for i in idx if m[i][i]), None)
        if k is not None:
            d = m[k][k]
            if d.sign() > 0:
                pos += 1
            else:
                neg += 1
            idx.remove(k)
            inv = d.inverse()
            for i in idx:
                f = m[i][k] * inv
                if f:
                    for j in idx:
                        m[i][j] = m[i][j] - f * m[k][j]
            continue
        pair = next(((i, j) for i in idx for j in idx if i < j and m[i][j]), None)
        if pair is None:
            break
        i0, j0 = pair
        c = m[i0][j0]
        pos += 1
        neg += 1
        idx.remove(i0)
        idx.remove(j0)
        # block inverse of [[0, c], [c, 0]] is [[0, 1/c], [1/c, 0]]
        inv = c.inverse()
        for i in idx:
            ui, vi = m[i][i0], m[i][j0]
            if not (ui or vi):
                continue
            for j in idx:
                uj, vj = m[i0][j], m[j0][j]
                m[i][j] = m[i][j] - inv * (ui * vj + vi * uj)
    return Inertia(pos, neg, len(m) - pos - neg)
