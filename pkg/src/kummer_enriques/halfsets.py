"""Index calculus of the (16)_6 configuration.

Both 2-torsion points and theta characteristics of a genus-2 curve are
labelled by partitions of {1,...,6} into two subsets.  A :class:`HalfSet` is
such a partition, stored as a 6-bit mask up to complement.  Even-size
classes are the 16 points of J(C)_2 (an F_2^4); odd-size classes are the 16
theta characteristics.  Symmetric difference is the group law.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
import re

FULL = 0b111111


class HalfSetError(ValueError):
    pass


def _canonical(mask):
    mask &= FULL
    comp = mask ^ FULL
    size = bin(mask).count("1")
    if size in (0, 1, 2):
        return mask
    if size in (4, 5, 6):
        return comp
    return mask if mask & 1 else comp


@dataclass(frozen=True)
class HalfSet:
    mask: int

    def __post_init__(self):
        if self.mask != _canonical(self.mask):
            raise HalfSetError(f"non-canonical mask {self.mask:#08b}")

    @classmethod
    def of(cls, subset):
        m = 0
        for i in subset:
            if not 1 <= i <= 6:
                raise HalfSetError(f"index {i} outside 1..6")
            m |= 1 << (i - 1)
        return cls(_canonical(m))

    @classmethod
    def parse(cls, text):
        """Parse ``[0]``, ``[12]``, ``[123]``, ``[3456]`` or bare ``12``."""
        s = text.strip()
        if s.startswith("[") and s.endswith("]"):
            s = s[1:-1]
        s = s.strip()
        if s in ("0", ""):
            return cls(0)
        if not re.fullmatch(r"[1-6]+", s):
            raise HalfSetError(f"cannot parse half-set {text!r}")
        if len(set(s)) != len(s):
            raise HalfSetError(f"repeated index in {text!r}")
        return cls.of(int(c) for c in s)

    @property
    def members(self):
        return tuple(i for i in range(1, 7) if self.mask >> (i - 1) & 1)

    @property
    def size(self):
        return len(self.members)

    @property
    def parity(self):
        """0 for points of J(C)_2, 1 for theta characteristics."""
        return self.size % 2

    @property
    def is_point(self):
        return self.parity == 0

    @property
    def is_theta(self):
        return self.parity == 1

    @property
    def is_even_theta(self):
        return self.size == 3

    @property
    def label(self):
        return "".join(map(str, self.members)) or "0"

    def __str__(self):
        return f"[{self.label}]"

    def __repr__(self):
        return f"HalfSet({self})"

    def __add__(self, other):
        return HalfSet(_canonical(self.mask ^ other.mask))

    __sub__ = __add__

    def sort_key(self):
        return (self.size, self.members)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def permuted(self, perm):
        """Image under ``perm`` (a dict or a 6-tuple, i -> perm[i])."""
        if isinstance(perm, (tuple, list)):
            return HalfSet.of(perm[i - 1] for i in self.members)
        return HalfSet.of(perm[i] for i in self.members)


ZERO = HalfSet(0)

POINTS = tuple([ZERO] + [HalfSet.of(c) for c in combinations(range(1, 7), 2)])
THETAS = tuple([HalfSet.of((i,)) for i in range(1, 7)]
               + [HalfSet.of(c) for c in combinations(range(1, 7), 3) if 1 in c])
EVEN_THETAS = tuple(b for b in THETAS if b.is_even_theta)
SINGLETONS = THETAS[:6]


def sym_diff(a, b):
    return a + b


def symplectic(a, b):
    """#(a & b) mod 2 on points; independent of the complement chosen."""
    if not (a.is_point and b.is_point):
        raise HalfSetError("symplectic form is defined on points only")
    v = bin(a.mask & b.mask).count("1") % 2
    assert v == bin((a.mask ^ FULL) & b.mask).count("1") % 2
    return v


def incidence(alpha, beta):
    """Whether node alpha meets trope beta: alpha + beta is a singleton class."""
    if not alpha.is_point or not beta.is_theta:
        raise HalfSetError("incidence needs a point and a theta characteristic")
    return (alpha + beta).size == 1


@lru_cache(maxsize=None)
def lambda_of(beta):
    """The six points whose nodes meet the trope ``beta``."""
    if not beta.is_theta:
        raise HalfSetError(f"{beta} is not a theta characteristic")
    return frozenset(beta + s for s in SINGLETONS)


def hexad_str(points, order=None):
    pts = sorted(points) if order is None else order
    return "+".join(str(p) for p in pts)


def parse_set(text):
    """``[0]+[12]+[34]+[56]`` -> frozenset of HalfSets (duplicates rejected)."""
    parts = [p for p in text.replace(" ", "").split("+") if p]
    pts = [HalfSet.parse(p) for p in parts]
    if len(set(pts)) != len(pts):
        raise HalfSetError(f"repeated element in {text!r}")
    return frozenset(pts)


def translate(points, alpha):
    return frozenset(p + alpha for p in points)


def _sorted_sets(sets):
    return sorted(sets, key=lambda s: sorted(p.sort_key() for p in s))


@lru_cache(maxsize=None)
def _subspaces_2d():
    out = set()
    for a, b in combinations(POINTS[1:], 2):
        out.add(frozenset((ZERO, a, b, a + b)))
    return out


@lru_cache(maxsize=None)
def gopel_subgroups():
    return tuple(_sorted_sets(s for s in _subspaces_2d() if _isotropic(s)))


@lru_cache(maxsize=None)
def rosenhain_subgroups():
    return tuple(_sorted_sets(s for s in _subspaces_2d() if not _isotropic(s)))


def _isotropic(s):
    return all(symplectic(a, b) == 0 for a in s for b in s)


def _cosets(subgroups):
    out = set()
    for s in subgroups:
        for a in POINTS:
            out.add(translate(s, a))
    return tuple(_sorted_sets(out))


@lru_cache(maxsize=None)
def gopel_tetrads():
    return _cosets(gopel_subgroups())


@lru_cache(maxsize=None)
def rosenhain_tetrads():
    return _cosets(rosenhain_subgroups())


@lru_cache(maxsize=None)
def weber_hexads():
    out = set()
    for g in gopel_tetrads():
        for r in rosenhain_tetrads():
            if len(g & r) == 1:
                out.add(g ^ r)
    return tuple(_sorted_sets(out))


def enumerate_sets(kind):
    table = {
        "gopel-subgroup": gopel_subgroups,
        "gopel-tetrad": gopel_tetrads,
        "rosenhain-subgroup": rosenhain_subgroups,
        "rosenhain-tetrad": rosenhain_tetrads,
        "weber-hexad": weber_hexads,
    }
    try:
        return table[kind]()
    except KeyError:
        raise HalfSetError(f"unknown enumeration {kind!r}") from None


def is_weber_hexad(points):
    return frozenset(points) in _weber_set()


@lru_cache(maxsize=None)
def _weber_set():
    return frozenset(weber_hexads())


@dataclass(frozen=True)
class WeberShape:
    """``kind`` 1: {0,ij,jk,kl,lm,mi} with witness (i,j,k,l,m);
    ``kind`` 2: {ij,jk,ki,il,jm,kn} with witness (i,j,k,l,m,n)."""

    kind: int
    witness: tuple

    def build(self):
        if self.kind == 1:
            i, j, k, l, m = self.witness
            pairs = [(i, j), (j, k), (k, l), (l, m), (m, i)]
            return frozenset([ZERO] + [HalfSet.of(p) for p in pairs])
        i, j, k, l, m, n = self.witness
        pairs = [(i, j), (j, k), (k, i), (i, l), (j, m), (k, n)]
        return frozenset(HalfSet.of(p) for p in pairs)


def weber_shape(points):
    points = frozenset(points)
    if not is_weber_hexad(points):
        raise HalfSetError(f"{hexad_str(points)} is not a Weber hexad")
    kind = 1 if ZERO in points else 2
    for p in permutations(range(1, 7)):
        shape = WeberShape(kind, p[:5] if kind == 1 else p)
        if shape.build() == points:
            return shape
    raise HalfSetError(f"{hexad_str(points)} matches neither hexad shape")


def rosenhain_pair(beta):
    """The unique unordered pair of Rosenhain subgroups with
    ``lambda_of(beta) == R1 ^ R2`` (even theta characteristics only)."""
    if not beta.is_even_theta:
        raise HalfSetError(f"{beta} is not an even theta characteristic")
    target = lambda_of(beta)
    found = [(r1, r2) for r1, r2 in combinations(rosenhain_subgroups(), 2)
             if r1 ^ r2 == target]
    if len(found) != 1:
        raise HalfSetError(f"expected one Rosenhain pair for {beta}, found {len(found)}")
    return found[0]


def perp_subspace(sub):
    return frozenset(p for p in POINTS if all(symplectic(p, s) == 0 for s in sub))


@lru_cache(maxsize=None)
def _theta_of_hexad():
    return {lambda_of(b): b for b in THETAS}


@dataclass(frozen=True)
class WeberMaps:
    hexad: frozenset
    degree_one: frozenset
    mu: dict
    mu_prime: dict
    decomposition: dict
    perp: dict


def decompose(hexad, alpha):
    """The unique ``(G, R)``, Gopel and Rosenhain tetrads, with
    ``hexad == G ^ R`` and ``G & R == {alpha}``."""
    hexad = frozenset(hexad)
    found = []
    for g0 in gopel_subgroups():
        g = translate(g0, alpha)
        r = g ^ hexad
        if len(r) == 4 and g & r == {alpha} and translate(r, alpha) in _rosenhain_set():
            found.append((g, r))
    if len(found) != 1:
        raise HalfSetError(f"{len(found)} decompositions of {hexad_str(hexad)} at {alpha}")
    return found[0]


@lru_cache(maxsize=None)
def _rosenhain_set():
    return frozenset(rosenhain_subgroups())


@lru_cache(maxsize=None)
def weber_maps(hexad):
    """Degree-one part W_1, the bijections mu and mu', and the hexads W_alpha^perp."""
    hexad = frozenset(hexad)
    if not is_weber_hexad(hexad):
        raise HalfSetError(f"{hexad_str(hexad)} is not a Weber hexad")
    w1 = frozenset(b for b in THETAS if len(lambda_of(b) & hexad) == 1)
    mu = {}
    for a in hexad:
        targets = [b for b in w1 if a in lambda_of(b)]
        if len(targets) != 1:
            raise HalfSetError("degree-one incidence is not a bijection")
        mu[a] = targets[0]
    mu_prime, decomp, perp = {}, {}, {}
    for a in POINTS:
        if a in hexad:
            continue
        g, r = decompose(hexad, a)
        r_perp = translate(perp_subspace(translate(r, a)), a)
        beta = _theta_of_hexad().get(r ^ r_perp)
        if beta is None:
            raise HalfSetError("R + R^perp is not a Rosenhain hexad")
        mu_prime[a] = beta
        decomp[a] = (g, r)
        perp[a] = g ^ r_perp
    if len(set(mu.values())) != 6 or len(set(mu_prime.values())) != 10:
        raise HalfSetError("mu or mu' is not injective")
    if set(mu_prime.values()) & w1:
        raise HalfSetError("mu' does not land in the complement of W_1")
    return WeberMaps(hexad, w1, mu, mu_prime, decomp, perp)


@lru_cache(maxsize=None)
def weber_classes():
    """The Weber hexads up to translation and ``W -> W_alpha^perp``.

    Returned as a tuple of sorted tuples of hexads, ordered by first member.
    """
    hexads = weber_hexads()
    parent = {w: w for w in hexads}

    def find(w):
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for w in hexads:
        for a in POINTS:
            union(w, translate(w, a))
        for p in weber_maps(w).perp.values():
            union(w, p)
    groups = {}
    for w in hexads:
        groups.setdefault(find(w), []).append(w)
    classes = [tuple(_sorted_sets(g)) for g in groups.values()]
    return tuple(sorted(classes, key=lambda c: sorted(p.sort_key() for p in c[0])))


def syntheme_of(gopel_subgroup):
    pairs = sorted(p.members for p in gopel_subgroup if p != ZERO)
    if len(pairs) != 3 or any(len(p) != 2 for p in pairs):
        raise HalfSetError("not a Gopel subgroup")
    return tuple(pairs)


@lru_cache(maxsize=None)
def all_synthemes():
    return tuple(sorted(syntheme_of(g) for g in gopel_subgroups()))


def is_total(synthemes):
    """Five synthemes, no two sharing a duad."""
    duads = [d for s in synthemes for d in s]
    return len(synthemes) == 5 and len(set(duads)) == 15


@lru_cache(maxsize=None)
def all_totals():
    return tuple(c for c in combinations(all_synthemes(), 5) if is_total(c))


def syntheme_duality(family):
    """Synthemes of the Gopel parts of the hexads in ``family`` avoiding [0].

    Returns ``(appearing, missing)``: sorted tuples of synthemes.
    """
    appearing = set()
    for w in family:
        if ZERO in w:
            continue
        g, _ = decompose(w, ZERO)
        appearing.add(syntheme_of(g))
    missing = tuple(s for s in all_synthemes() if s not in appearing)
    return tuple(sorted(appearing)), missing


def syntheme_str(s):
    return "".join(f"({a}{b})" for a, b in s)


def combinatorics_report():
    from .report import Report
    r = Report("Kummer combinatorics")
    counts = tuple(len(enumerate_sets(k)) for k in
                   ("gopel-subgroup", "gopel-tetrad", "rosenhain-subgroup",
                    "rosenhain-tetrad", "weber-hexad"))
    r.add("Gopel subgroups/tetrads, Rosenhain subgroups/tetrads, Weber hexads = "
          "15/60/20/80/192", counts == (15, 60, 20, 80, 192), "/".join(map(str, counts)))
    shapes_ok = True
    for w in weber_hexads():
        shapes_ok &= weber_shape(w).build() == w
    r.add("every Weber hexad has one of the two shapes (with or without [0])", shapes_ok)
    pairs_ok = True
    for b in EVEN_THETAS:
        r1, r2 = rosenhain_pair(b)
        pairs_ok &= (r1 ^ r2) == lambda_of(b)
    r.add("every even theta characteristic has a unique Rosenhain pair",
          pairs_ok and len(EVEN_THETAS) == 10, f"{len(EVEN_THETAS)} even")
    perp_ok = all(is_weber_hexad(p) for w in weber_hexads() for p in weber_maps(w).perp.values())
    r.add("every W_alpha^perp is again a Weber hexad", perp_ok)
    group_ok = all(sym_diff(sym_diff(a, b), c) == sym_diff(a, sym_diff(b, c))
                   and sym_diff(a, a) == ZERO for a in POINTS for b in POINTS for c in POINTS)
    radical = [a for a in POINTS if all(symplectic(a, b) == 0 for b in POINTS)]
    r.add("2-torsion points form F_2^4 with nondegenerate symplectic form",
          group_ok and radical == [ZERO])
    classes = weber_classes()
    totals = set()
    for c in classes:
        appearing, missing = syntheme_duality(c)
        if len(appearing) == 10 and is_total(missing):
            totals.add(missing)
    r.add("6 hexad classes, each missing a distinct total of synthemes",
          len(classes) == 6 and len(totals) == 6 and len(all_totals()) == 6,
          f"{len(classes)} classes, {len(totals)} totals")
    return r
