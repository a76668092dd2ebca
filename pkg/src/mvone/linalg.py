"""Exact integer and rational linear algebra.

Everything here works on plain nested lists of ``int`` / ``Fraction`` so the
geometry code never touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_vec(m: Sequence[Sequence[int]], v: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*m)]


def vec_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> Tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = vec_gcd(v)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // g for x in v)


def echelon_transform(mat: Sequence[Sequence[int]]):
    """Integer row echelon form with a unimodular left transform.

    Returns ``(E, W, W_inv, rank)`` with ``W @ mat == E``, ``W`` unimodular,
    ``W_inv`` its exact inverse, and the nonzero rows of ``E`` being exactly
    its first ``rank`` rows.  Pivots are positive and entries above each pivot
    are reduced into ``[0, pivot)``, so ``E`` is the Hermite normal form.
    """
    a = [list(row) for row in mat]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    w = identity(nrows)
    winv = identity(nrows)

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        w[i], w[j] = w[j], w[i]
        for row in winv:
            row[i], row[j] = row[j], row[i]

    def addmul(i, j, q):
        # row_i -= q * row_j
        ai, aj = a[i], a[j]
        for c in range(ncols):
            ai[c] -= q * aj[c]
        wi, wj = w[i], w[j]
        for c in range(nrows):
            wi[c] -= q * wj[c]
        for row in winv:
            row[j] += q * row[i]

    def negate(i):
        a[i] = [-x for x in a[i]]
        w[i] = [-x for x in w[i]]
        for row in winv:
            row[i] = -row[i]

    r = 0
    pivots = []
    for col in range(ncols):
        if r == nrows:
            break
        while True:
            nz = [i for i in range(r, nrows) if a[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(a[i][col]), i))
            if piv != r:
                swap(r, piv)
            clean = True
            for i in range(r + 1, nrows):
                if a[i][col]:
                    addmul(i, r, a[i][col] // a[r][col])
                    if a[i][col]:
                        clean = False
            if clean:
                break
        if a[r][col] == 0:
            continue
        if a[r][col] < 0:
            negate(r)
        for i in range(r):
            q = a[i][col] // a[r][col]
            if q:
                addmul(i, r, q)
        pivots.append(col)
        r += 1
    return a, w, winv, r


def rank(vectors: Sequence[Sequence[int]]) -> int:
    if not vectors:
        return 0
    return echelon_transform(vectors)[3]


def bareiss_det(mat: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [list(row) for row in mat]
    n = len(a)
    if n == 0:
        return 1
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


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> Matrix:
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def bareiss_solve(a: Sequence[Sequence], b: Sequence) -> Tuple[Fraction, List[Fraction] | None]:
    """Solve ``a x = b`` exactly.

    Rows are cleared of denominators and eliminated fraction-free.  Pivoting
    takes the first nonzero entry in the column.  Returns ``(det, x)`` where
    ``det`` is the determinant of the integer-scaled system and ``x`` is
    ``None`` when the system is singular.
    """
    n = len(a)
    if n == 0:
        return Fraction(1), []
    aug = _integer_rows([list(a[i]) + [b[i]] for i in range(n)])
    sign = 1
    prev = 1
    for k in range(n):
        if aug[k][k] == 0:
            for i in range(k + 1, n):
                if aug[i][k] != 0:
                    aug[k], aug[i] = aug[i], aug[k]
                    sign = -sign
                    break
            else:
                return Fraction(0), None
        akk = aug[k][k]
        for i in range(k + 1, n):
            aik = aug[i][k]
            row_i, row_k = aug[i], aug[k]
            for j in range(k + 1, n + 1):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    det = sign * aug[n - 1][n - 1]
    x: List[Fraction] = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(aug[i][n])
        for j in range(i + 1, n):
            s -= aug[i][j] * x[j]
        x[i] = s / aug[i][i]
    return Fraction(det), x


def unimodular_inverse(m: Sequence[Sequence[int]]) -> Matrix:
    """Exact inverse of an integer matrix with determinant +-1."""
    _, w, _, r = echelon_transform(m)
    if r != len(m):
        raise ValueError("matrix is singular")
    # W m = E with E upper triangular and positive pivots; unimodular => E = I
    e = mat_mul(w, m)
    if e != identity(len(m)):
        raise ValueError("matrix is not unimodular")
    return w
