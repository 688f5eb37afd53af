"""Exact matrix arithmetic over Q and Z.

Matrices are lists of rows; entries are ``int`` or ``fractions.Fraction``.
Nothing in here ever touches a float.
"""

from fractions import Fraction
from math import gcd, lcm


class NonIntegerMatrixError(ValueError):
    """An integer-only routine received a matrix with fractional entries."""


class SingularMatrixError(ValueError):
    pass


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def _scaled_ints(a):
    d = denominator_lcm(x for row in a for x in row)
    if d == 1:
        return 1, [[int(x) for x in row] for row in a]
    return d, [[int(x * d) for x in row] for row in a]


def mat_mul(a, b):
    # clear denominators first: integer products are much cheaper than Fractions
    da, ia = _scaled_ints(a)
    db, ib = _scaled_ints(b)
    bt = list(zip(*ib))
    out = [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in ia]
    d = da * db
    if d == 1:
        return out
    return [[normalize(Fraction(x, d)) for x in row] for row in out]


def mat_vec(a, v):
    return [row[0] for row in mat_mul(a, [[x] for x in v])]


def vec_mat(v, a):
    n = len(a[0]) if a else 0
    out = [0] * n
    for x, row in zip(v, a):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] += x * y
    return out


def normalize(x):
    """Return ``x`` as an int when it is integral, else as a Fraction."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    return x


def normalize_matrix(a):
    return [[normalize(x) for x in row] for row in a]


def is_integral(a):
    return all(Fraction(x).denominator == 1 for row in a for x in row)


def denominator_lcm(entries):
    d = 1
    for x in entries:
        if isinstance(x, Fraction):
            d = lcm(d, x.denominator)
    return d


def require_integer(a):
    if not is_integral(a):
        raise NonIntegerMatrixError("matrix has non-integer entries")
    return [[int(x) for x in row] for row in a]


def _echelon(a):
    """Gauss-Jordan over Q. Returns (reduced rows, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in a]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(a):
    if not a:
        return 0
    return len(_echelon(a)[1])


def _bareiss(m):
    n = len(m)
    sign, prev = 1, 1
    for c in range(n - 1):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (m[i][j] * m[c][c] - m[i][c] * m[c][j]) // prev
        prev = m[c][c]
    return sign * m[n - 1][n - 1]


def det(a):
    n = len(a)
    if n == 0:
        return 1
    d, ints = _scaled_ints(a)
    if d == 1:
        # fraction-free elimination keeps everything in int
        return _bareiss(ints)
    m = [[Fraction(x) for x in row] for row in a]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return normalize(d)


def inverse(a):
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    red, piv = _echelon(aug)
    if piv[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return normalize_matrix([row[n:] for row in red])


def hnf_rows(a):
    """Row-style Hermite normal form of an integer matrix.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ a == H``.  Nonzero rows
    of ``H`` come first, in echelon form with positive pivots and entries above
    each pivot reduced into ``[0, pivot)``.  Pivoting is deterministic.
    """
    h = [list(row) for row in require_integer(a)]
    m = len(h)
    n = len(h[0]) if m else 0
    u = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if h[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(h[i][c]), i))
            h[r], h[p] = h[p], h[r]
            u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, m):
                if h[i][c] != 0:
                    q = h[i][c] // h[r][c]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][c] != 0:
                        done = False
            if done:
                break
        if all(h[i][c] == 0 for i in range(r, m)):
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return h, u


def integer_left_kernel(a):
    """Basis (rows) of ``{x in Z^m : x @ a == 0}``; saturated in Z^m."""
    if not a:
        return []
    d = denominator_lcm(x for row in a for x in row)
    scaled = [[int(x * d) for x in row] for row in a]
    h, u = hnf_rows(scaled)
    return [u[i] for i in range(len(h)) if not any(h[i])]


def smith_normal_form(a):
    """Smith normal form of an integer matrix.

    Returns ``(D, U, V)`` with ``U`` and ``V`` unimodular, ``U @ a @ V == D``,
    ``D`` diagonal with nonnegative entries and ``D[i][i]`` dividing
    ``D[i+1][i+1]``.
    """
    d = [list(row) for row in require_integer(a)]
    m = len(d)
    n = len(d[0]) if m else 0
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
            if not nz:
                break
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = d[t][t]
            clean = True
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // p))
                    clean = clean and d[i][t] == 0
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // p))
                    clean = clean and d[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if d[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if all(d[i][j] == 0 for i in range(t, m) for j in range(t, n)):
            break
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return d, u, v


def fraction_to_str(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def fraction_from_str(s):
    return normalize(Fraction(s))


def matrix_to_json(a):
    """Exact JSON encoding: every entry as a ``"p/q"`` string."""
    return [[fraction_to_str(x) for x in row] for row in a]


def matrix_from_json(rows):
    return [[fraction_from_str(s) for s in row] for row in rows]


def content(v):
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g
