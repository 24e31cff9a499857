"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples holding Python ints or ``Fraction``s.
Nothing here uses floating point.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotPrimitive, RankDeficient

IntMatrix = tuple[tuple[int, ...], ...]
IntVector = tuple[int, ...]


def as_int_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    mat = tuple(tuple(int(x) for x in row) for row in rows)
    if mat and len({len(r) for r in mat}) != 1:
        raise ValueError("ragged matrix")
    return mat


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(mat):
    return tuple(zip(*mat))


def dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def norm_sq(x):
    return sum(a * a for a in x)


def mat_vec(mat, x):
    return tuple(dot(row, x) for row in mat)


def mat_mul(a, b):
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def scale(c, x):
    return tuple(c * a for a in x)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def bareiss_det(mat: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(mat)
    if n == 0:
        return 1
    a = [list(row) for row in mat]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def gram_matrix(rows):
    return tuple(tuple(dot(r, s) for s in rows) for r in rows)


def gram_det_sq(rows: Sequence[Sequence[int]]) -> int:
    """Exact ``det(M M^T)`` for an integer matrix ``M`` given by its rows.

    For a lattice basis this is the squared lattice determinant.
    """
    return bareiss_det(gram_matrix(rows))


def rank(mat) -> int:
    rows = [[Fraction(x) for x in row] for row in mat]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][col] / rows[r][col]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def hnf(mat: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite normal form.

    Returns ``(H, U)`` with ``H == M @ U``, ``U`` unimodular and ``H`` lower
    triangular in echelon form: pivots positive, entries right of a pivot
    zero, entries left of a pivot (in pivot columns) reduced into
    ``[0, pivot)``. Columns of ``H`` after the last pivot are zero, so the
    matching columns of ``U`` span the integer kernel of ``M``.
    """
    mat = as_int_matrix(mat)
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    # work on columns as rows
    hc = [list(col) for col in transpose(mat)] if nrows else [[] for _ in range(ncols)]
    uc = [list(col) for col in identity(ncols)]

    def combine(p, j, i):
        a, b = hc[p][i], hc[j][i]
        g, x, y = xgcd(a, b)
        ag, bg = a // g, b // g
        for cols in (hc, uc):
            cp, cj = cols[p], cols[j]
            cols[p] = [x * s + y * t for s, t in zip(cp, cj)]
            cols[j] = [ag * t - bg * s for s, t in zip(cp, cj)]

    p = 0
    for i in range(nrows):
        if p >= ncols:
            break
        for j in range(p + 1, ncols):
            if hc[j][i] == 0:
                continue
            if hc[p][i] == 0:
                hc[p], hc[j] = hc[j], hc[p]
                uc[p], uc[j] = uc[j], uc[p]
            else:
                combine(p, j, i)
        piv = hc[p][i]
        if piv == 0:
            continue
        if piv < 0:
            hc[p] = [-x for x in hc[p]]
            uc[p] = [-x for x in uc[p]]
            piv = -piv
        for j in range(p):
            q = hc[j][i] // piv
            if q:
                hc[j] = [s - q * t for s, t in zip(hc[j], hc[p])]
                uc[j] = [s - q * t for s, t in zip(uc[j], uc[p])]
        p += 1
    H = transpose(hc) if nrows else ()
    U = transpose(uc)
    return tuple(tuple(r) for r in H), tuple(tuple(r) for r in U)


def _hnf_pivots(H: IntMatrix) -> list[tuple[int, int]]:
    """(row, column) positions of the pivots of a column HNF."""
    pivots = []
    col = 0
    for i, row in enumerate(H):
        if col < len(row) and row[col] != 0:
            pivots.append((i, col))
            col += 1
    return pivots


def _full_rank_hnf(A):
    A = as_int_matrix(A)
    H, U = hnf(A)
    pivots = _hnf_pivots(H)
    if len(pivots) < len(A):
        raise RankDeficient(f"rank {len(pivots)} < {len(A)} rows")
    return A, H, U


def check_primitivity(A: Sequence[Sequence[int]]) -> bool:
    """True iff the gcd of all maximal minors of ``A`` is 1.

    Equivalently the columns of ``A`` generate ``Z^m``, i.e. every pivot of
    the column HNF equals 1.
    """
    _, H, _ = _full_rank_hnf(A)
    return all(H[i][i] == 1 for i in range(len(H)))


@dataclass(frozen=True)
class KernelLattice:
    """Integer kernel ``{x in Z^n : A x = 0}`` given by a basis."""

    ambient_dim: int
    basis: IntMatrix
    gram_det_sq: int

    @property
    def rank(self) -> int:
        return len(self.basis)


def kernel_basis(A: Sequence[Sequence[int]]) -> KernelLattice:
    A, H, U = _full_rank_hnf(A)
    m, n = len(A), len(A[0])
    basis = tuple(tuple(U[r][c] for r in range(n)) for c in range(m, n))
    return KernelLattice(n, basis, gram_det_sq(basis))


def integer_solution(A: Sequence[Sequence[int]], b: Sequence[int]) -> IntVector:
    """Some ``u in Z^n`` with ``A u == b``.

    Solves the triangular pivot block of the column HNF by forward
    substitution; integrality is guaranteed for every ``b`` only when ``A``
    is primitive.
    """
    A, H, U = _full_rank_hnf(A)
    m, n = len(A), len(A[0])
    b = [int(x) for x in b]
    if len(b) != m:
        raise ValueError("right-hand side has wrong length")
    y = []
    for i in range(m):
        r = b[i] - sum(H[i][j] * y[j] for j in range(i))
        q, rem = divmod(r, H[i][i])
        if rem:
            raise NotPrimitive("A x = b has no integer solution; A is not primitive")
        y.append(q)
    y += [0] * (n - m)
    return mat_vec(U, y)


def is_unimodular(U) -> bool:
    return abs(bareiss_det(U)) == 1
