"""Exact integer matrix helpers.

Matrices are plain ``list[list[int]]`` (row major).  Nothing here ever
touches floating point; Python integers are arbitrary precision, so
intermediate growth is harmless at the sizes we work with.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

from ..errors import SingularMatrix

IntMatrix = list[list[int]]


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    return [[int(v) for v in row] for row in rows]


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def bilinear(g: Sequence[Sequence[int]], x: Sequence[int], y: Sequence[int]) -> int:
    return sum(xi * sum(gij * yj for gij, yj in zip(row, y)) for xi, row in zip(x, g) if xi)


def det(a: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def rank(a: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals (fraction-free row reduction)."""
    m = [list(row) for row in a]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            if m[i][c]:
                f, p = m[i][c], m[r][c]
                m[i] = [p * x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def inverse_fraction(a: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(a)
    m = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


def adjugate(a: Sequence[Sequence[int]]) -> IntMatrix:
    """Integer adjugate, ``adj(A) = det(A) * A^-1``."""
    d = det(a)
    if d == 0:
        raise SingularMatrix("adjugate requested for a singular matrix")
    inv = inverse_fraction(a)
    out = []
    for row in inv:
        vals = [x * d for x in row]
        assert all(v.denominator == 1 for v in vals)
        out.append([int(v) for v in vals])
    return out


def inverse_unimodular(a: Sequence[Sequence[int]]) -> IntMatrix:
    d = det(a)
    if abs(d) != 1:
        raise SingularMatrix(f"matrix is not unimodular (det {d})")
    return [[v * d for v in row] for row in adjugate(a)]


def gcd_vector(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def smith(a: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith decomposition ``U * A * V = D`` for an arbitrary integer matrix.

    The diagonal of ``D`` is nonnegative and each entry divides the next.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0 or cols == 0:
        return identity(rows), [[0] * cols for _ in range(rows)], identity(cols)
    s, u, v = smith_normal_decomp(Matrix(as_matrix(a)), domain=ZZ)
    d = [[int(x) for x in s.row(i)] for i in range(rows)]
    u_ = [[int(x) for x in u.row(i)] for i in range(rows)]
    v_ = [[int(x) for x in v.row(i)] for i in range(cols)]
    for i in range(min(rows, cols)):
        if d[i][i] < 0:
            d[i][i] = -d[i][i]
            u_[i] = [-x for x in u_[i]]
    return u_, d, v_


def smith_diagonal(d: IntMatrix) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def integer_kernel(a: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Basis of ``{x in Z^n : A x = 0}`` as a list of vectors.

    The kernel of an integer matrix is always a primitive sublattice, so the
    basis returned here spans a saturated lattice.
    """
    if not a:
        n = ncols or 0
        return [list(r) for r in identity(n)]
    n = len(a[0])
    _, d, v = smith(a)
    r = sum(1 for x in smith_diagonal(d) if x != 0)
    return [[v[i][j] for i in range(n)] for j in range(r, n)]


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int]) -> tuple[list[int], list[list[int]]] | None:
    """Solve ``A x = b`` over the integers.

    Returns ``(particular, kernel_basis)`` or ``None`` when there is no
    integral solution.
    """
    if not a:
        return None if any(b) else ([], [])
    rows, n = len(a), len(a[0])
    u, d, v = smith(a)
    ub = matvec(u, b)
    diag = smith_diagonal(d)
    y = [0] * n
    for i in range(rows):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % di:
                return None
            y[i] = ub[i] // di
    x = matvec(v, y)
    r = sum(1 for x_ in diag if x_ != 0)
    kernel = [[v[i][j] for i in range(n)] for j in range(r, n)]
    return x, kernel
