"""Exact Gaussian elimination over Gaussian rationals.

Matrices are lists of row lists of ``Scalar``.
"""

from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = ["det", "inverse", "matmul", "nullspace", "rank", "rref", "solve", "span_equal"]


def _copy(rows):
    return [[as_scalar(x) for x in r] for r in rows]


def rref(rows, ncols=None):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    a = _copy(rows)
    if ncols is None:
        ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = ONE / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(rows):
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows, ncols):
    """Basis of ``{x : A x = 0}`` as a list of vectors (lists of Scalar)."""
    if not rows:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    a, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [ZERO] * ncols
        v[fcol] = ONE
        for row, pc in zip(a, pivots):
            v[pc] = -row[fcol]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """One solution of ``A x = rhs`` (free variables zero), or ``None``."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [as_scalar(b)] for r, b in zip(rows, rhs)]
    a, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for row, pc in zip(a, pivots):
        x[pc] = row[ncols]
    return x


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(r, c)), Scalar(0)) for c in bt] for r in a]


def det(a):
    m = _copy(a)
    n = len(m)
    out = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return Scalar(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out = out * m[c][c]
        inv = ONE / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def inverse(a):
    n = len(a)
    aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(a)]
    red, pivots = rref(aug, n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def span_equal(u, v, ncols):
    """Whether two lists of vectors span the same subspace."""
    ru = rank(u) if u else 0
    rv = rank(v) if v else 0
    if ru != rv:
        return False
    both = list(u) + list(v)
    return (rank(both) if both else 0) == ru
