"""Integer lattices sitting inside an explicit rational quadratic space.

A :class:`Sublattice` is a set of linearly independent rational row vectors
in the coordinates of an :class:`AmbientSpace`.  Keeping the ambient space
around lets us compare vectors from different lattices (a dual vector of one
against the integral points of another) with plain coordinate arithmetic.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import isqrt

from . import linalg
from .linalg import normalize


class LatticeError(ValueError):
    pass


class DegenerateLatticeError(LatticeError):
    pass


class NotDefiniteError(LatticeError):
    pass


class DimensionMismatchError(LatticeError):
    pass


def _vec(v):
    return tuple(normalize(Fraction(x)) for x in v)


class AmbientSpace:
    """Q^n with a nondegenerate symmetric Gram matrix."""

    def __init__(self, gram):
        gram = linalg.normalize_matrix(gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise LatticeError("gram matrix must be square")
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(n)):
            raise LatticeError("gram matrix must be symmetric")
        if linalg.det(gram) == 0:
            raise DegenerateLatticeError("ambient gram matrix is degenerate")
        self.dim = n
        self.gram = tuple(tuple(row) for row in gram)
        self._diagonal = all(gram[i][j] == 0 for i in range(n) for j in range(n) if i != j)
        self._diag = tuple(gram[i][i] for i in range(n))

    def __repr__(self):
        return f"AmbientSpace(dim={self.dim})"

    def inner(self, u, v):
        if self._diagonal:
            return normalize(sum(a * g * b for a, g, b in zip(u, self._diag, v) if a and b))
        return normalize(sum(u[i] * self.gram[i][j] * v[j]
                             for i in range(self.dim) if u[i]
                             for j in range(self.dim) if v[j]))

    def norm(self, v):
        return self.inner(v, v)

    def lower(self, v):
        """Row vector ``v @ gram`` (pairing against it is a dot product)."""
        if self._diagonal:
            return tuple(normalize(a * g) for a, g in zip(v, self._diag))
        return tuple(normalize(x) for x in linalg.vec_mat(v, self.gram))

    def check(self, v):
        if len(v) != self.dim:
            raise DimensionMismatchError(f"expected {self.dim} coordinates, got {len(v)}")


class Sublattice:
    """The Z-span of independent rows ``basis`` in ``ambient``."""

    def __init__(self, ambient, basis):
        self.ambient = ambient
        self.basis = tuple(_vec(b) for b in basis)
        for b in self.basis:
            ambient.check(b)
        if self.basis and linalg.rank([list(b) for b in self.basis]) != len(self.basis):
            raise LatticeError("basis rows are linearly dependent")

    @classmethod
    def span(cls, ambient, generators):
        """Lattice generated by arbitrary rows, with a canonical HNF basis."""
        gens = [_vec(g) for g in generators]
        for g in gens:
            ambient.check(g)
        if not gens:
            return cls(ambient, [])
        d = linalg.denominator_lcm(x for g in gens for x in g)
        h, _ = linalg.hnf_rows([[int(x * d) for x in g] for g in gens])
        rows = [[Fraction(x, d) for x in row] for row in h if any(row)]
        return cls(ambient, rows)

    @classmethod
    def zero(cls, ambient):
        return cls(ambient, [])

    def __repr__(self):
        return f"Sublattice(rank={self.rank}, ambient_dim={self.ambient.dim})"

    @property
    def rank(self):
        return len(self.basis)

    @cached_property
    def gram(self):
        low = [self.ambient.lower(b) for b in self.basis]
        return tuple(tuple(normalize(sum(x * y for x, y in zip(lb, b))) for b in self.basis)
                     for lb in low)

    @cached_property
    def determinant(self):
        if not self.basis:
            return 1
        return linalg.det(self.gram)

    def is_integral(self):
        return linalg.is_integral(self.gram)

    def is_even(self):
        return self.is_integral() and all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @cached_property
    def _membership(self):
        d = linalg.denominator_lcm(x for b in self.basis for x in b)
        rows = [[int(x * d) for x in b] for b in self.basis]
        h, _ = linalg.hnf_rows(rows) if rows else ([], [])
        echelon = []
        for row in h:
            p = next((j for j, x in enumerate(row) if x), None)
            if p is not None:
                echelon.append((p, row))
        return d, echelon

    def contains(self, v):
        """Whether ``v`` is an integer combination of the basis rows."""
        self.ambient.check(v)
        d, echelon = self._membership
        w = []
        for x in v:
            x = Fraction(x) * d
            if x.denominator != 1:
                return False
            w.append(x.numerator)
        for p, row in echelon:
            if w[p]:
                q, r = divmod(w[p], row[p])
                if r:
                    return False
                for j in range(p, len(w)):
                    if row[j]:
                        w[j] -= q * row[j]
        return not any(w)

    def __contains__(self, v):
        return self.contains(v)

    @cached_property
    def _basis_inverse(self):
        return linalg.inverse([list(b) for b in self.basis])

    @cached_property
    def _solver(self):
        if not self.basis:
            return [], []
        # the rank-many independent columns of the basis matrix
        cols = linalg._echelon([list(b) for b in self.basis])[1]
        sub = [[b[c] for c in cols] for b in self.basis]
        return cols, linalg.inverse(sub)

    def coordinates(self, v):
        """Rational coordinates of ``v`` in this basis; raises if outside the Q-span."""
        self.ambient.check(v)
        cols, inv = self._solver
        x = [normalize(sum(v[c] * inv[k][i] for k, c in enumerate(cols)))
             for i in range(self.rank)]
        if tuple(linalg.vec_mat(x, self.basis)) != tuple(_vec(v)):
            raise LatticeError("vector is not in the rational span of the lattice")
        return tuple(x)

    def reduced(self):
        """The same lattice with an LLL reduced basis (definite lattices only)."""
        if self.rank < 2:
            return self
        t = lll_reduce(self.gram)
        return Sublattice(self.ambient, [self.combination(row) for row in t])

    def combination(self, coeffs):
        return _vec(linalg.vec_mat(list(coeffs), [list(b) for b in self.basis]))

    def is_sublattice_of(self, other):
        return all(other.contains(b) for b in self.basis)

    def same_lattice(self, other):
        return (self.rank == other.rank and self.is_sublattice_of(other)
                and other.is_sublattice_of(self))

    def pairs_integrally(self, v):
        low = self.ambient.lower(v)
        return all(Fraction(sum(x * y for x, y in zip(low, b))).denominator == 1
                   for b in self.basis)

    def in_dual(self, v):
        """``v`` lies in the rational span and pairs integrally with the lattice."""
        try:
            self.coordinates(v)
        except LatticeError:
            return False
        return self.pairs_integrally(v)


def dual_basis(lat):
    """The dual lattice L* inside the same ambient space."""
    if lat.rank == 0:
        return lat
    if lat.determinant == 0:
        raise DegenerateLatticeError("dual of a degenerate lattice")
    ginv = linalg.inverse([list(r) for r in lat.gram])
    rows = linalg.mat_mul(ginv, [list(b) for b in lat.basis])
    return Sublattice(lat.ambient, rows)


@dataclass(frozen=True)
class DiscriminantGroup:
    """L*/L as a product of cyclic groups with explicit generators in L*."""

    lattice: Sublattice = field(repr=False)
    invariant_factors: tuple
    generators: tuple
    _reduce: tuple = field(repr=False)

    @property
    def order(self):
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def reduce(self, v):
        """Coefficients of ``v + L`` over :attr:`generators` (``v`` in L*)."""
        x = self.lattice.coordinates(v)
        out = []
        for d, row in zip(self.invariant_factors, self._reduce):
            c = Fraction(sum(a * b for a, b in zip(row, x))) * d
            if c.denominator != 1:
                raise LatticeError("vector is not in the dual lattice")
            out.append(c.numerator % d)
        return tuple(out)

    def element(self, coeffs):
        v = [0] * self.lattice.ambient.dim
        for c, g in zip(coeffs, self.generators):
            if c:
                v = [a + c * b for a, b in zip(v, g)]
        return _vec(v)

    def representatives(self):
        """One dual vector per class, in lexicographic coefficient order."""
        from itertools import product
        for coeffs in product(*(range(d) for d in self.invariant_factors)):
            yield coeffs, self.element(coeffs)


def discriminant_group(lat):
    if lat.rank == 0:
        return DiscriminantGroup(lat, (), (), ())
    gram = [list(r) for r in lat.gram]
    if not linalg.is_integral(gram):
        raise LatticeError("discriminant group needs an integral lattice")
    if lat.determinant == 0:
        raise DegenerateLatticeError("degenerate gram matrix")
    d, _, v = linalg.smith_normal_form(gram)
    vinv = linalg.inverse(v)
    factors, gens, red = [], [], []
    for i in range(lat.rank):
        di = d[i][i]
        if di == 1:
            continue
        col = [Fraction(v[k][i], di) for k in range(lat.rank)]
        factors.append(di)
        gens.append(lat.combination(col))
        red.append(tuple(vinv[i]))
    return DiscriminantGroup(lat, tuple(factors), tuple(gens), tuple(red))


def orthogonal_complement(lat, sub):
    """``{x in lat : (x, s) = 0 for all s in sub}``; primitive in ``lat``."""
    if not sub.is_sublattice_of(lat):
        raise LatticeError("second lattice is not contained in the first")
    if sub.rank == 0:
        return Sublattice(lat.ambient, lat.basis)
    pair = [[lat.ambient.inner(b, s) for s in sub.basis] for b in lat.basis]
    ker = linalg.integer_left_kernel(pair)
    return Sublattice.span(lat.ambient, [lat.combination(k) for k in ker])


def _ldl(q):
    """Fincke-Pohst style decomposition of a positive definite rational form.

    Returns ``(diag, mu)`` with ``Q(x) = sum_i diag[i] * (x_i + sum_{j>i} mu[i][j] x_j)^2``.
    """
    n = len(q)
    a = [[Fraction(x) for x in row] for row in q]
    for i in range(n):
        if a[i][i] <= 0:
            raise NotDefiniteError("form is not definite")
        for j in range(i + 1, n):
            a[j][i] = a[i][j]
            a[i][j] = a[i][j] / a[i][i]
        for k in range(i + 1, n):
            for m in range(k, n):
                a[k][m] -= a[k][i] * a[i][m]
    return [a[i][i] for i in range(n)], a


def _definite_sign(gram):
    try:
        _ldl([[-x for x in row] for row in gram])
        return -1
    except NotDefiniteError:
        pass
    try:
        _ldl(gram)
        return 1
    except NotDefiniteError:
        raise NotDefiniteError("gram matrix is indefinite") from None


def _int_range(center, radius_sq):
    """Integers t with (t + center)^2 <= radius_sq, exactly."""
    r = Fraction(radius_sq)
    s = isqrt(r.numerator * r.denominator) // r.denominator + 1
    c = -Fraction(center)
    lo = (c.numerator // c.denominator) - s - 1
    hi = (c.numerator // c.denominator) + s + 2
    return [t for t in range(lo, hi + 1) if (t - c) ** 2 <= r]


def lll_reduce(gram, delta=Fraction(3, 4)):
    """Exact LLL on a definite Gram matrix.

    Returns a unimodular integer matrix ``T`` (rows are new basis vectors in
    old coordinates) such that ``T G T^T`` is LLL reduced.
    """
    sign = _definite_sign(gram)
    g = [[sign * Fraction(x) for x in row] for row in gram]
    n = len(g)
    t = linalg.identity(n)

    def inner(u, v):
        return sum(u[i] * sum(g[i][j] * v[j] for j in range(n) if v[j]) for i in range(n) if u[i])

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        bb = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                mu[i][j] = (inner(t[i], t[j]) - sum(mu[j][k] * mu[i][k] * bb[k]
                                                    for k in range(j))) / bb[j]
            bb[i] = inner(t[i], t[i]) - sum(mu[i][k] ** 2 * bb[k] for k in range(i))
        return mu, bb

    mu, bb = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                t[k] = [a - q * b for a, b in zip(t[k], t[j])]
                for i in range(j + 1):
                    mu[k][i] -= q * (mu[j][i] if i < j else 1)
        if bb[k] >= (delta - mu[k][k - 1] ** 2) * bb[k - 1]:
            k += 1
        else:
            t[k], t[k - 1] = t[k - 1], t[k]
            mu, bb = gso()
            k = max(k - 1, 1)
    return t


def short_vector_coordinates(gram, bound):
    """Integer coordinate vectors x with 0 < |x G x^T| <= bound (G definite).

    Exhaustive enumeration; both x and -x are returned.  Each item is
    ``(x, norm)`` with the signed norm.
    """
    sign = _definite_sign(gram)
    q = [[sign * Fraction(x) for x in row] for row in gram]
    diag, mu = _ldl(q)
    n = len(q)
    out = []
    x = [0] * n

    def rec(i, remaining):
        if i < 0:
            if any(x):
                val = Fraction(bound) - remaining
                out.append((tuple(x), normalize(sign * val)))
            return
        center = sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        for t in _int_range(center, remaining / diag[i]):
            x[i] = t
            rec(i - 1, remaining - diag[i] * (t + center) ** 2)
        x[i] = 0

    rec(n - 1, Fraction(bound))
    out.sort(key=lambda item: (abs(item[1]), item[0]))
    return out


def short_vectors(lat, bound):
    """Vectors of a negative definite lattice with ``0 < -(v, v) <= bound``.

    Returned as ``(ambient_vector, norm)`` pairs sorted by |norm|, then
    coordinates.
    """
    if lat.rank == 0:
        return []
    if _definite_sign(lat.gram) != -1:
        raise NotDefiniteError("short_vectors expects a negative definite lattice")
    return [(lat.combination(x), nrm)
            for x, nrm in short_vector_coordinates(lat.gram, bound)]


def _root_type(n_roots, rank):
    for name, count in (("A", lambda r: r * (r + 1)), ("D", lambda r: 2 * r * (r - 1))):
        if count(rank) == n_roots and (name == "A" or rank >= 4):
            return f"{name}{rank}"
    exceptional = {(6, 72): "E6", (7, 126): "E7", (8, 240): "E8"}
    if (rank, n_roots) in exceptional:
        return exceptional[(rank, n_roots)]
    raise LatticeError(f"no irreducible root system with {n_roots} roots in rank {rank}")


def root_system(lat):
    """Type of the (-2)-root system of a negative definite even lattice,
    as a sorted tuple such as ``("D4", "D4", "D7")``."""
    roots = [v for v, _ in short_vectors(lat, 2)]
    amb = lat.ambient
    seen = [False] * len(roots)
    parts = []
    for i in range(len(roots)):
        if seen[i]:
            continue
        comp = [i]
        seen[i] = True
        for a in comp:
            for j in range(len(roots)):
                if not seen[j] and amb.inner(roots[a], roots[j]) != 0:
                    seen[j] = True
                    comp.append(j)
        rank = linalg.rank([list(roots[k]) for k in comp])
        parts.append(_root_type(len(comp), rank))
    return tuple(sorted(parts, key=lambda t: (t[0], int(t[1:]))))


def is_negative_definite(lat):
    try:
        return _definite_sign(lat.gram) == -1
    except NotDefiniteError:
        return False


def isometry_search(lat1, lat2):
    """Find ``P`` (integer, rows = coordinates in ``lat2``) with
    ``P @ gram(lat2) @ P.T == gram(lat1)``, or ``None`` if none exists.

    Exhaustive backtracking over short vectors of ``lat2`` (candidates in
    norm-then-lexicographic order), pruned on pairings with the images
    already chosen.
    """
    if lat1.rank != lat2.rank:
        raise LatticeError("rank mismatch")
    if lat1.rank == 0:
        return []
    g1 = [list(r) for r in lat1.gram]
    g2 = [list(r) for r in lat2.gram]
    s1, s2 = _definite_sign(g1), _definite_sign(g2)
    if s1 != s2 or abs(linalg.det(g1)) != abs(linalg.det(g2)):
        return None
    return _isometry_backtrack(g1, g2)


def _isometry_backtrack(g1, g2):
    """Backtracking with forward checking: every unplaced basis vector keeps
    the list of candidates consistent with the images chosen so far, and the
    search always branches on the shortest list."""
    n = len(g1)
    bound = max(abs(g1[i][i]) for i in range(n))
    cands = short_vector_coordinates(g2, bound)
    vecs = [x for x, _ in cands]
    low = [linalg.vec_mat(list(x), g2) for x in vecs]

    def ip(a, b):
        return sum(p * q for p, q in zip(low[a], vecs[b]))

    domains = {i: [k for k, (_, nrm) in enumerate(cands) if nrm == g1[i][i]]
               for i in range(n)}
    chosen = {}

    def rec(doms):
        if not doms:
            return True
        i = min(doms, key=lambda j: (len(doms[j]), j))
        for k in doms[i]:
            pruned = {}
            for j, d in doms.items():
                if j == i:
                    continue
                t = g1[i][j]
                nd = [c for c in d if c != k and ip(k, c) == t]
                if not nd:
                    break
                pruned[j] = nd
            else:
                chosen[i] = k
                if rec(pruned):
                    return True
                del chosen[i]
        return False

    if rec(domains):
        return [list(vecs[chosen[i]]) for i in range(n)]
    return None


def eigenlattice(lat, matrix, sign):
    """``{x in lat : M x = sign * x}`` for an ambient matrix ``M`` acting on
    column coordinate vectors.  Primitive in ``lat`` by construction."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not preserves(lat, matrix):
        raise LatticeError("matrix is not an isometry of the lattice")
    rows = []
    for b in lat.basis:
        img = linalg.mat_vec(matrix, b)
        rows.append([x - sign * y for x, y in zip(img, b)])
    ker = linalg.integer_left_kernel(rows)
    return Sublattice.span(lat.ambient, [lat.combination(k) for k in ker])


def preserves(lat, matrix):
    """``M`` maps ``lat`` onto itself and preserves the ambient form on it."""
    if lat.rank == lat.ambient.dim:
        b = [list(r) for r in lat.basis]
        img = linalg.mat_mul(b, linalg.transpose(matrix))
        coords = linalg.mat_mul(img, lat._basis_inverse)
        if not linalg.is_integral(coords):
            return False
        gram = linalg.mat_mul(linalg.mat_mul(img, lat.ambient.gram), linalg.transpose(img))
        if gram != [list(r) for r in lat.gram]:
            return False
        return abs(linalg.det(coords)) == 1
    imgs = [_vec(linalg.mat_vec(matrix, b)) for b in lat.basis]
    if not all(lat.contains(v) for v in imgs):
        return False
    amb = lat.ambient
    for i, u in enumerate(imgs):
        for j in range(i, len(imgs)):
            if amb.inner(u, imgs[j]) != lat.gram[i][j]:
                return False
    coords = [lat.coordinates(v) for v in imgs]
    return abs(linalg.det(coords)) == 1 if coords else True


def standard_lattice(gram):
    """A lattice with basis e_1..e_n in its own ambient space."""
    amb = AmbientSpace(gram)
    return Sublattice(amb, linalg.identity(amb.dim))


def block_diagonal(*blocks):
    n = sum(len(b) for b in blocks)
    out = linalg.zeros(n, n)
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[k + i][k + j] = x
        k += len(b)
    return out


def scaled(gram, c):
    return [[c * x for x in row] for row in gram]


def hyperbolic_plane():
    return [[0, 1], [1, 0]]


def cartan_a(n):
    """Negative definite A_n."""
    g = linalg.zeros(n, n)
    for i in range(n):
        g[i][i] = -2
        if i + 1 < n:
            g[i][i + 1] = g[i + 1][i] = 1
    return g


def cartan_d(n):
    """Negative definite D_n (n >= 4): chain 0..n-2, node n-1 joined to node n-3."""
    g = cartan_a(n - 1)
    g = [row + [0] for row in g] + [[0] * n]
    g[n - 1][n - 1] = -2
    g[n - 1][n - 3] = g[n - 3][n - 1] = 1
    return g


def cartan_e7():
    """Negative definite E_7, ordered so each node meets an earlier one.

    Chain c1-c2-c3-c4-c5-c6 with a branch node joined to c3; order
    (c1, c2, c3, branch, c4, c5, c6).
    """
    edges = [(0, 1), (1, 2), (2, 3), (2, 4), (4, 5), (5, 6)]
    g = linalg.zeros(7, 7)
    for i in range(7):
        g[i][i] = -2
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return g


def cartan_e8():
    edges = [(0, 1), (1, 2), (2, 3), (2, 4), (4, 5), (5, 6), (6, 7)]
    g = linalg.zeros(8, 8)
    for i in range(8):
        g[i][i] = -2
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return g
