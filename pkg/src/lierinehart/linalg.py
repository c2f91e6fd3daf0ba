"""Exact Gaussian elimination over the rationals.

Matrices are lists of rows of :class:`fractions.Fraction`.  The graded pieces
handled by the cohomology code are tiny, so plain row reduction is enough.
"""

from fractions import Fraction


def rref(rows, ncols):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    m = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, ncols=None):
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols):
    """Basis of ``{v : M v = 0}`` as a list of column vectors."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(rows, ncols, rhs):
    """One solution of ``M v = rhs``, or ``None`` when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    v = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        v[pc] = row[ncols]
    return v


def columns_to_rows(cols, nrows):
    """Transpose a list of column vectors into row form."""
    return [[c[i] for c in cols] for i in range(nrows)]
