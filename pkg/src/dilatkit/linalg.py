"""Dense linear algebra over the rationals, for the small systems that
appear in homology computations."""

from fractions import Fraction


def _rref(rows, ncols):
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def solve(A, b):
    """Some rational x with A x = b, or None if the system is inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    m, pivots = _rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][ncols]
    return x


def rank(A):
    if not A:
        return 0
    return len(_rref(A, len(A[0]))[1])


def det(A):
    n = len(A)
    m = [[Fraction(x) for x in row] for row in A]
    d = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [a - f * bb for a, bb in zip(m[i], m[c])]
    return d


def transpose(A):
    return [list(col) for col in zip(*A)]


def matvec(A, x):
    return [sum(a * xi for a, xi in zip(row, x)) for row in A]


def dot(x, y):
    return sum(a * b for a, b in zip(x, y))
