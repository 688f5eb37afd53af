"""Finite quadratic forms (A, q, b) and their isometries.

A form is given on generators g_1..g_k of orders d_1..d_k: values
``q(g_i)`` in Q/2Z and a symmetric matrix ``b(g_i, g_j)`` in Q/Z.  Elements
are coefficient tuples reduced mod the orders.  q values are normalized into
[0, 2), b values into [0, 1), so equal forms compare equal verbatim.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
import json

from . import permgroup
from .lattice import discriminant_group
from .linalg import fraction_to_str

MAX_ENUMERATION = 256


class FormError(ValueError):
    pass


class SizeGuardError(FormError):
    pass


def mod2(x):
    return Fraction(x) % 2


def mod1(x):
    return Fraction(x) % 1


class FiniteQuadraticForm:
    def __init__(self, orders, q, b, *, names=None, allow_degenerate=False):
        k = len(orders)
        if len(q) != k or len(b) != k or any(len(r) != k for r in b):
            raise FormError("orders, q and b have inconsistent sizes")
        self.orders = tuple(int(d) for d in orders)
        if any(d < 1 for d in self.orders):
            raise FormError("orders must be positive")
        self.q = tuple(mod2(x) for x in q)
        self.b = tuple(tuple(mod1(x) for x in row) for row in b)
        self.names = tuple(names) if names else tuple(f"g{i + 1}" for i in range(k))
        for i in range(k):
            if self.b[i][i] != self.q[i] % 1:
                raise FormError(f"b(g{i+1}, g{i+1}) does not match q(g{i+1}) mod 1")
            if (self.orders[i] ** 2 * self.q[i]) % 2:
                raise FormError(f"q(d g{i+1}) is not 0")
            for j in range(k):
                if self.b[i][j] != self.b[j][i]:
                    raise FormError("b is not symmetric")
                if (self.orders[i] * self.b[i][j]) % 1:
                    raise FormError("b is not compatible with the generator orders")
        if not allow_degenerate and self.size <= 4096 and not self.is_nondegenerate():
            raise FormError("form is degenerate")

    def __repr__(self):
        return f"FiniteQuadraticForm(orders={self.orders})"

    def __eq__(self, other):
        return (isinstance(other, FiniteQuadraticForm) and self.orders == other.orders
                and self.q == other.q and self.b == other.b)

    def __hash__(self):
        return hash((self.orders, self.q, self.b))

    @property
    def size(self):
        n = 1
        for d in self.orders:
            n *= d
        return n

    @property
    def rank(self):
        return len(self.orders)

    def elements(self):
        return list(product(*(range(d) for d in self.orders)))

    @cached_property
    def _index(self):
        return {x: i for i, x in enumerate(self.elements())}

    def index(self, x):
        return self._index[self.reduce(x)]

    def reduce(self, x):
        return tuple(c % d for c, d in zip(x, self.orders))

    def zero(self):
        return (0,) * self.rank

    def generator(self, i):
        return tuple(int(j == i) for j in range(self.rank))

    def add(self, x, y):
        return tuple((a + c) % d for a, c, d in zip(x, y, self.orders))

    def scale(self, n, x):
        return tuple((n * a) % d for a, d in zip(x, self.orders))

    def neg(self, x):
        return self.scale(-1, x)

    def qv(self, x):
        k = self.rank
        s = Fraction(0)
        for i in range(k):
            if x[i]:
                s += x[i] * x[i] * self.q[i]
                for j in range(i + 1, k):
                    if x[j]:
                        s += 2 * x[i] * x[j] * self.b[i][j]
        return s % 2

    def bv(self, x, y):
        s = Fraction(0)
        for i, a in enumerate(x):
            if a:
                row = self.b[i]
                for j, c in enumerate(y):
                    if c:
                        s += a * c * row[j]
        return s % 1

    def order_of(self, x):
        n = 1
        for a, d in zip(x, self.orders):
            if a:
                m = d // _gcd(a, d)
                n = n * m // _gcd(n, m)
        return n

    @cached_property
    def _qtab(self):
        return [self.qv(x) for x in self.elements()]

    @cached_property
    def _otab(self):
        return [self.order_of(x) for x in self.elements()]

    def is_nondegenerate(self):
        for x in self.elements():
            if any(x) and all(self.bv(x, self.generator(i)) == 0 for i in range(self.rank)):
                return False
        return True

    def check_compatibility(self, exhaustive=True):
        """q(x+y) = q(x) + q(y) + 2 b(x, y) mod 2 on all pairs (or on generators)."""
        pool = self.elements() if exhaustive else [self.generator(i) for i in range(self.rank)]
        for x in pool:
            for y in pool:
                if (self.qv(self.add(x, y)) - self.qv(x) - self.qv(y) - 2 * self.bv(x, y)) % 2:
                    return False
        return True

    def oplus(self, other):
        k, m = self.rank, other.rank
        b = [[0] * (k + m) for _ in range(k + m)]
        for i in range(k):
            for j in range(k):
                b[i][j] = self.b[i][j]
        for i in range(m):
            for j in range(m):
                b[k + i][k + j] = other.b[i][j]
        return FiniteQuadraticForm(self.orders + other.orders, self.q + other.q, b,
                                   names=self.names + other.names)

    def negated(self):
        return FiniteQuadraticForm(self.orders, [-x for x in self.q],
                                   [[-x for x in row] for row in self.b], names=self.names)

    def element_str(self, x):
        parts = []
        for c, name in zip(x, self.names):
            if c == 1:
                parts.append(name)
            elif c:
                parts.append(f"{c}{name}")
        return "+".join(parts) or "0"

    def to_json(self):
        return {
            "orders": list(self.orders),
            "names": list(self.names),
            "q": [fraction_to_str(x) for x in self.q],
            "b": [[fraction_to_str(x) for x in row] for row in self.b],
        }


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def u2():
    """u(2): the discriminant form of U(2), on its standard generator (e, f)."""
    h = Fraction(1, 2)
    return FiniteQuadraticForm((2, 2), (0, 0), ((0, h), (h, 0)), names=("e", "f"))


def one_over(two_n):
    """<1/2n>: the discriminant form of <2n>, cyclic of order 2n."""
    if two_n < 2 or two_n % 2:
        raise FormError("expected an even positive integer 2n")
    v = Fraction(1, two_n)
    return FiniteQuadraticForm((two_n,), (v,), ((v,),), names=("g",))


def trivial_form():
    return FiniteQuadraticForm((), (), ())


def standard_form(name):
    """``"u(2)"`` or ``"<1/2n>"`` (e.g. ``"<1/4>"``), optionally ``-`` prefixed."""
    s = name.replace(" ", "")
    neg = s.startswith("-")
    if neg:
        s = s[1:]
    if s == "u(2)":
        f = u2()
    elif s.startswith("<1/") and s.endswith(">"):
        f = one_over(int(s[3:-1]))
    else:
        raise FormError(f"unknown standard form {name!r}")
    return f.negated() if neg else f


def direct_sum(*forms):
    out = trivial_form()
    for f in forms:
        out = out.oplus(f)
    return out


def kummer_form(m):
    """u(2)^m + <1/4>, generators named e1, f1, ..., em, fm, g."""
    f = direct_sum(*([u2()] * m), one_over(4))
    names = [f"{n}{i + 1}" for i in range(m) for n in ("e", "f")] + ["g"]
    return FiniteQuadraticForm(f.orders, f.q, f.b, names=names)


def from_lattice(lat):
    """The discriminant form of an even lattice, with the underlying
    :class:`~kummer_enriques.lattice.DiscriminantGroup` (its ``reduce``
    maps dual vectors to elements of the form)."""
    if not lat.is_even():
        raise FormError("discriminant forms are only defined here for even lattices")
    dg = discriminant_group(lat)
    amb = lat.ambient
    k = len(dg.generators)
    q = [amb.norm(v) for v in dg.generators]
    b = [[amb.inner(dg.generators[i], dg.generators[j]) for j in range(k)] for i in range(k)]
    return FiniteQuadraticForm(dg.invariant_factors, q, b), dg


@dataclass(frozen=True)
class FqIsometry:
    """An isometry given by the images of the generators."""

    form: FiniteQuadraticForm
    images: tuple
    target: FiniteQuadraticForm = None

    def __call__(self, x):
        tgt = self.target or self.form
        out = tgt.zero()
        for c, h in zip(x, self.images):
            if c:
                out = tgt.add(out, tgt.scale(c, h))
        return out

    def permutation(self):
        f = self.form
        tgt = self.target or f
        return tuple(tgt.index(self(x)) for x in f.elements())


def _order_profile(f):
    counts = {}
    for x in f.elements():
        o = f.order_of(x)
        counts[o] = counts.get(o, 0) + 1
    return sorted(counts.items())


def _search(f1, f2, fixed=None, first=False, limit=None):
    """Backtrack over generator images f1 -> f2 preserving order, q and b.

    ``fixed`` pins some generator images.  Generators are placed in
    decreasing order.  Yields image tuples in f1's generator order.
    """
    k = f1.rank
    fixed = fixed or {}
    seq = sorted(range(k), key=lambda i: (-f1.orders[i], i))
    elems = f2.elements()
    pools = {}
    for i in range(k):
        if i in fixed:
            pools[i] = [fixed[i]]
        else:
            pools[i] = [x for x, qx, ox in zip(elems, f2._qtab, f2._otab)
                        if ox == f1.orders[i] and qx == f1.q[i]]
    need_span = not f1.is_nondegenerate() if f1.size <= 4096 else True
    images = [None] * k
    found = 0

    def rec(pos):
        nonlocal found
        if pos == k:
            if need_span and _span_size(f2, images) != f2.size:
                return
            found += 1
            yield tuple(images)
            return
        i = seq[pos]
        for h in pools[i]:
            ok = True
            for p in range(pos):
                j = seq[p]
                if f2.bv(h, images[j]) != f1.b[i][j]:
                    ok = False
                    break
            if ok:
                images[i] = h
                yield from rec(pos + 1)
                if first and found:
                    return
                if limit is not None and found >= limit:
                    return
        images[i] = None

    yield from rec(0)


def _span_size(f, gens):
    seen = {f.zero()}
    frontier = [f.zero()]
    for x in frontier:
        for g in gens:
            y = f.add(x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return len(seen)


def _guard(f):
    if f.size > MAX_ENUMERATION:
        raise SizeGuardError(f"|A| = {f.size} exceeds the enumeration guard {MAX_ENUMERATION}")


def all_isometries(f, limit=None):
    """Every isometry of ``f`` (exhaustive backtracking)."""
    _guard(f)
    return [FqIsometry(f, imgs) for imgs in _search(f, f, limit=limit)]


def forms_isometric(f1, f2):
    """A witness isometry ``f1 -> f2`` or ``None``."""
    _guard(f1)
    _guard(f2)
    if f1.size != f2.size or _order_profile(f1) != _order_profile(f2):
        return None
    for imgs in _search(f1, f2, first=True):
        return FqIsometry(f1, imgs, f2)
    return None


@dataclass(frozen=True)
class IsometryChain:
    """Generators of O(q) with the orbit lengths of the stabilizer chain
    along the generators of A (their product is |O(q)|)."""

    generators: tuple
    orbit_lengths: tuple

    @property
    def order(self):
        n = 1
        for k in self.orbit_lengths:
            n *= k
        return n


def isometry_generators(f):
    """Generators of O(q) by backtracking one stabilizer level at a time.

    Level i fixes g_1..g_{i-1}; every admissible image of g_i outside the
    current orbit is tested for extendability, so the recorded orbit length
    is exact without listing all of O(q).
    """
    _guard(f)
    k = f.rank
    seq = sorted(range(k), key=lambda i: (-f.orders[i], i))
    strong = []
    perms = []
    lengths = [0] * k
    for level in range(k - 1, -1, -1):
        i = seq[level]
        fixed = {seq[p]: f.generator(seq[p]) for p in range(level)}
        gi = f.generator(i)
        orbit = _orbit_of(f, gi, perms)
        for h in f.elements():
            if h in orbit or f._otab[f.index(h)] != f.orders[i] or f.qv(h) != f.q[i]:
                continue
            if any(f.bv(h, f.generator(j)) != f.b[i][j] for j in fixed):
                continue
            pins = dict(fixed)
            pins[i] = h
            for imgs in _search(f, f, fixed=pins, first=True):
                iso = FqIsometry(f, imgs)
                strong.append(iso)
                perms.append(iso.permutation())
                orbit = _orbit_of(f, gi, perms)
                break
        lengths[level] = len(orbit)
    return IsometryChain(tuple(strong), tuple(lengths))


def _orbit_of(f, x, perms):
    start = f.index(x)
    seen = {start}
    frontier = [start]
    for p in frontier:
        for g in perms:
            y = g[p]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    elems = f.elements()
    return {elems[i] for i in seen}


def group_order_generated(f, gens):
    """Order of the subgroup of O(q) generated by ``gens`` (Schreier-Sims
    on the permutation action on A)."""
    perms = []
    for g in gens:
        if not is_isometry(f, g.images):
            raise FormError("generator is not an isometry")
        perms.append(g.permutation())
    if not perms:
        return 1
    return permgroup.group_order(perms, f.size)


def is_isometry(f, images, target=None):
    t = target or f
    k = f.rank
    for i in range(k):
        h = images[i]
        if t.order_of(h) != f.orders[i] or t.qv(h) != f.q[i]:
            return False
        for j in range(k):
            if t.bv(h, images[j]) != f.b[i][j]:
                return False
    return _span_size(t, images) == t.size


@dataclass(frozen=True)
class Orbit:
    representative: tuple
    length: int
    square: Fraction


def orbits(f, gens=None):
    """Orbits of O(q) (or of ``<gens>``) on A, ordered by representative.

    Without ``gens`` the generators come from :func:`isometry_generators`.
    """
    if gens is None:
        gens = isometry_generators(f).generators
    perms = [g.permutation() for g in gens]
    elems = f.elements()
    out = []
    for orb in permgroup.orbits(perms, f.size):
        rep = elems[orb[0]]
        sq = f._qtab[orb[0]]
        if any(f._qtab[i] != sq for i in orb):
            raise FormError("orbit with non-constant square")
        out.append(Orbit(rep, len(orb), sq))
    return out


def distinguished_element(f):
    """The nonzero x with q(x) = 1 and b(x, y) = 0 for every y with 2y = 0."""
    two_torsion = [y for y in f.elements() if f.order_of(y) <= 2]
    found = [x for x in f.elements() if any(x) and f.qv(x) == 1
             and all(f.bv(x, y) == 0 for y in two_torsion)]
    if len(found) != 1:
        raise FormError(f"no unique distinguished element ({len(found)} candidates)")
    return found[0]


@dataclass(frozen=True)
class FqSubgroup:
    form: FiniteQuadraticForm
    elements: tuple
    generators: tuple

    def __contains__(self, x):
        return self.form.reduce(x) in self.elements

    @property
    def order(self):
        return len(self.elements)

    def is_cyclic(self):
        return any(self.form.order_of(x) == self.order for x in self.elements)


def subgroup(f, gens):
    elems = set()
    frontier = [f.zero()]
    elems.add(f.zero())
    for x in frontier:
        for g in gens:
            y = f.add(x, g)
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return FqSubgroup(f, tuple(sorted(elems)), tuple(gens))


@dataclass(frozen=True)
class Cyclic:
    """Cyclic subgroups of order 4 whose generator has the given square."""
    square: Fraction


@dataclass(frozen=True)
class TwoElementary:
    """Subgroups isomorphic to (Z/2)^2 containing the given element."""
    containing: tuple


def subgroups_order4(f, constraint):
    found = {}
    if isinstance(constraint, Cyclic):
        sq = mod2(constraint.square)
        for x in f.elements():
            if f.order_of(x) == 4 and f.qv(x) == sq:
                s = subgroup(f, [x])
                found.setdefault(s.elements, s)
    elif isinstance(constraint, TwoElementary):
        c = f.reduce(constraint.containing)
        if f.order_of(c) != 2:
            raise FormError("the required element must have order 2")
        for x in f.elements():
            if f.order_of(x) == 2 and x != c:
                s = subgroup(f, [c, x])
                found.setdefault(s.elements, s)
    else:
        raise FormError(f"malformed constraint {constraint!r}")
    return [found[k] for k in sorted(found)]


def form_summary_json(f, orbit_list=None, subgroups=None):
    data = f.to_json()
    if orbit_list is not None:
        data["orbits"] = [{"representative": list(o.representative), "length": o.length,
                           "square": fraction_to_str(o.square)} for o in orbit_list]
    if subgroups is not None:
        data["subgroups"] = [[list(x) for x in s.elements] for s in subgroups]
    return data


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True)


def expected_orbit_table(m):
    """(length, square) rows of the O(q) orbit table of u(2)^m + <1/4>."""
    n = 4 ** m
    return [(1, Fraction(0)), (1, Fraction(1)), (n - 1, Fraction(0)), (n - 1, Fraction(1)),
            (n + 2 ** m, Fraction(1, 4)), (n - 2 ** m, Fraction(5, 4))]


def orbit_table(m):
    """Computed (length, square) rows, in the order of :func:`expected_orbit_table`.

    The two length-1 orbits come first (zero, then the distinguished
    element); the rest are sorted by square, then length.
    """
    rows = [(o.length, o.square) for o in orbits(kummer_form(m))]
    ones = sorted(r for r in rows if r[0] == 1)
    rest = sorted((r for r in rows if r[0] != 1), key=lambda r: (r[1] % 1, r[1], r[0]))
    return ones + rest


def census(f=None):
    """The three order-4 subgroup families of u(2)^2 + <1/4>."""
    f = f or kummer_form(2)
    return {
        "cyclic 1/4": subgroups_order4(f, Cyclic(Fraction(1, 4))),
        "2-elementary with 2g": subgroups_order4(f, TwoElementary(distinguished_element(f))),
        "cyclic -3/4": subgroups_order4(f, Cyclic(Fraction(-3, 4))),
    }


def forms_report():
    from .report import Report
    r = Report("finite quadratic forms")
    for m in (1, 2, 3):
        got = orbit_table(m)
        want = expected_orbit_table(m)
        r.add(f"orbit table of u(2)^{m}+<1/4> (lengths and squares)", got == want,
              ", ".join(f"{n}:{s}" for n, s in got))
    u = u2()
    isos = all_isometries(u)
    r.add("O(u(2)) has order 2 (fixes e+f, may swap e and f)", len(isos) == 2, str(len(isos)))
    for name, f in (("u(2)", u), ("u(2)+<1/4>", kummer_form(1))):
        isos = all_isometries(f)
        r.add(f"generated order equals enumerated isometries for {name}",
              group_order_generated(f, isos) == len(isos), str(len(isos)))
    f = kummer_form(3)
    chain = isometry_generators(f)
    r.add("|O(u(2)^3+<1/4>)| = 2^10 3^4 5 7", chain.order == 2903040, str(chain.order))
    k2 = kummer_form(2)
    r.add("distinguished element of u(2)^2+<1/4> is 2g",
          distinguished_element(k2) == (0, 0, 0, 0, 2))
    fams = census(k2)
    sizes = tuple(len(v) for v in fams.values())
    union = {s.elements for v in fams.values() for s in v}
    r.add("order-4 subgroup census 10 / 15 / 6, disjoint, 31 in total",
          sizes == (10, 15, 6) and len(union) == 31, f"{sizes}, union {len(union)}")
    r.add("q(x+y) = q(x)+q(y)+2b(x,y) on u(2)^2+<1/4>", k2.check_compatibility())
    return r
