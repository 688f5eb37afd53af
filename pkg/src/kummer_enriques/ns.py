"""The Neron-Severi lattice of a Picard-general Jacobian Kummer surface.

Coordinates are over the orthogonal Q-basis (H, N_[0], N_[12], ..., N_[56])
with Gram matrix diag(4, -2, ..., -2).  Nodes follow ``halfsets.POINTS``:
[0] first, then [ij] in lexicographic order.  NS itself is the Z-span of the
16 nodes and 16 tropes.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import product
import json
import re

from . import forms, lattice, linalg
from .halfsets import POINTS, THETAS, HalfSet, incidence, lambda_of
from .lattice import AmbientSpace, Sublattice
from .linalg import matrix_to_json, fraction_to_str
from .report import Report

DIM = 17
NODE_INDEX = {a: i + 1 for i, a in enumerate(POINTS)}
DISC_NAMES = ("e₁", "f₁", "e₂", "f₂", "g")
DISC_ORDERS = (2, 2, 2, 2, 4)


class NsError(ValueError):
    pass


def _hs(x):
    return x if isinstance(x, HalfSet) else HalfSet.parse(str(x))


def hyperplane_vector():
    v = [0] * DIM
    v[0] = 1
    return tuple(v)


def node_vector(alpha):
    alpha = _hs(alpha)
    if not alpha.is_point:
        raise NsError(f"{alpha} does not label a node")
    v = [0] * DIM
    v[NODE_INDEX[alpha]] = 1
    return tuple(v)


def trope_vector(beta):
    """T_beta = (H - sum of the six nodes meeting it) / 2."""
    beta = _hs(beta)
    if not beta.is_theta:
        raise NsError(f"{beta} does not label a trope")
    v = [Fraction(0)] * DIM
    v[0] = Fraction(1, 2)
    for a in lambda_of(beta):
        v[NODE_INDEX[a]] = Fraction(-1, 2)
    return lattice._vec(v)


def vec(h=0, nodes=None, tropes=None):
    """Build ``h*H + sum c*N_a + sum c*T_b`` from dicts of coefficients."""
    v = [Fraction(h)] + [Fraction(0)] * (DIM - 1)
    for a, c in (nodes or {}).items():
        v[NODE_INDEX[_hs(a)]] += c
    for b, c in (tropes or {}).items():
        t = trope_vector(b)
        v = [x + c * y for x, y in zip(v, t)]
    return lattice._vec(v)


def node_sum(points, coeff=1):
    return vec(nodes={a: coeff for a in points})


def add(*vs):
    return lattice._vec([sum(xs) for xs in zip(*vs)])


def sub(u, v):
    return lattice._vec([a - b for a, b in zip(u, v)])


def smul(c, v):
    return lattice._vec([c * x for x in v])


# curves are ("N", alpha) or ("T", beta)
CURVES = tuple([("N", a) for a in POINTS] + [("T", b) for b in THETAS])


def curve_vector(curve):
    kind, idx = curve
    return node_vector(idx) if kind == "N" else trope_vector(idx)


def curve_str(curve):
    return f"{curve[0]}{curve[1].label}"


def parse_curve(text):
    text = text.strip()
    if not text or text[0] not in "NT":
        raise NsError(f"cannot parse curve {text!r}")
    hs = HalfSet.parse(text[1:])
    if (text[0] == "N") != hs.is_point:
        raise NsError(f"{text} has the wrong parity for its kind")
    return (text[0], hs)


def curve_intersection(c1, c2):
    """Intersection numbers of the (16)_6 configuration."""
    if c1 == c2:
        return -2
    if c1[0] == c2[0]:
        return 0
    a, b = (c1[1], c2[1]) if c1[0] == "N" else (c2[1], c1[1])
    return int(incidence(a, b))


@dataclass(frozen=True)
class DiscBasis:
    e1: tuple
    f1: tuple
    e2: tuple
    f2: tuple
    g: tuple

    def vectors(self):
        return (self.e1, self.f1, self.e2, self.f2, self.g)


def disc_basis_vectors():
    n = node_vector
    half = Fraction(1, 2)

    def halfsum(*labels):
        return smul(half, add(*(n(x) for x in labels)))

    return DiscBasis(
        e1=halfsum("26", "12", "36", "13"),
        f1=halfsum("16", "12", "46", "24"),
        e2=halfsum("26", "12", "46", "14"),
        f2=halfsum("16", "12", "36", "23"),
        g=add(smul(Fraction(1, 4), hyperplane_vector()), halfsum("0", "16", "26", "12")),
    )


class NsModel:
    """NS(X) with its dual, discriminant form and the (e1, f1, e2, f2, g) basis."""

    def __init__(self):
        gram = [[0] * DIM for _ in range(DIM)]
        gram[0][0] = 4
        for i in range(1, DIM):
            gram[i][i] = -2
        self.ambient = AmbientSpace(gram)
        self.curves = {c: curve_vector(c) for c in CURVES}
        self.lattice = Sublattice.span(self.ambient, list(self.curves.values()))
        self.dual = lattice.dual_basis(self.lattice)
        self.snf_form, self.disc = forms.from_lattice(self.lattice)
        self.basis = disc_basis_vectors()
        vs = self.basis.vectors()
        q = [self.ambient.norm(v) for v in vs]
        b = [[self.ambient.inner(u, v) for v in vs] for u in vs]
        self.form = forms.FiniteQuadraticForm(DISC_ORDERS, q, b, names=DISC_NAMES)
        self._to_basis = {}
        for coeffs in product(*(range(d) for d in DISC_ORDERS)):
            v = self.combination(coeffs)
            self._to_basis.setdefault(self.disc.reduce(v), coeffs)

    def inner(self, u, v):
        return self.ambient.inner(u, v)

    def combination(self, coeffs):
        v = [0] * DIM
        for c, w in zip(coeffs, self.basis.vectors()):
            if c:
                v = [x + c * y for x, y in zip(v, w)]
        return lattice._vec(v)

    def contains(self, v):
        return self.lattice.contains(v)

    def in_dual(self, v):
        return self.lattice.pairs_integrally(v)

    def disc_class(self, v):
        """Coefficients (a1, b1, a2, b2, c) of ``v + NS`` over (e1, f1, e2, f2, g)."""
        if not self.in_dual(v):
            raise NsError("vector does not lie in the dual of NS")
        key = self.disc.reduce(v)
        try:
            return self._to_basis[key]
        except KeyError:
            raise NsError("the five classes do not generate the discriminant group") from None

    def basis_generates(self):
        return len(self._to_basis) == self.disc.order == 64

    def class_str(self, coeffs):
        return disc_class_str(coeffs)

    def curve_gram(self):
        """Gram matrix of (H, 16 nodes, 16 tropes)."""
        vs = [hyperplane_vector()] + [self.curves[c] for c in CURVES]
        return [[self.inner(u, v) for v in vs] for u in vs]


@lru_cache(maxsize=None)
def build_ns():
    return NsModel()


def disc_class_str(coeffs):
    parts = []
    for c, name in zip(coeffs, DISC_NAMES):
        if c == 1:
            parts.append(name)
        elif c:
            parts.append(f"{c}{name}")
    return "+".join(parts) or "0"


_DISC_TOKENS = {"e1": 0, "f1": 1, "e2": 2, "f2": 3, "g": 4,
                "e₁": 0, "f₁": 1, "e₂": 2, "f₂": 3}
_DISC_TERM = re.compile(r"(\d*)(e1|f1|e2|f2|e₁|f₁|e₂|f₂|g)")


def parse_disc_class(text):
    """Inverse of :func:`disc_class_str` (ASCII digits accepted too)."""
    out = [0] * 5
    s = text.replace(" ", "")
    if s == "0":
        return tuple(out)
    for tok in s.split("+"):
        hit = _DISC_TERM.fullmatch(tok)
        if hit is None:
            raise NsError(f"cannot parse discriminant class {text!r}")
        i = _DISC_TOKENS[hit.group(2)]
        out[i] = (out[i] + int(hit.group(1) or 1)) % DISC_ORDERS[i]
    return tuple(out)


def _scaled_term(c, symbol):
    c = Fraction(c)
    sign = "-" if c < 0 else "+"
    c = abs(c)
    num = "" if c.numerator == 1 else str(c.numerator)
    den = "" if c.denominator == 1 else f"/{c.denominator}"
    return sign + num + symbol + den


def vector_str(v, order=None, labels=None):
    """``H/4+(N0+N12+N23+N31)/2`` style rendering of an ambient vector.

    Nodes with equal coefficients are grouped; ``order`` fixes the order of
    the nodes and ``labels`` overrides their printed indices.
    """
    v = lattice._vec(v)
    labels = labels or {}
    order = list(order or []) + [a for a in POINTS if a not in (order or [])]
    out = _scaled_term(v[0], "H") if v[0] else ""
    groups = {}
    for a in order:
        c = v[NODE_INDEX[a]]
        if c:
            groups.setdefault(c, []).append(f"N{labels.get(a, a.label)}")
    for c, names in groups.items():
        body = names[0] if len(names) == 1 else "(" + "+".join(names) + ")"
        out += _scaled_term(c, body)
    out = out.lstrip("+")
    return out or "0"


def verify_disc_basis(model=None):
    m = model or build_ns()
    r = Report("discriminant basis of NS")
    vs = dict(zip(("e1", "f1", "e2", "f2", "g"), m.basis.vectors()))
    for name, v in vs.items():
        r.add(f"{name} lies in NS*", m.in_dual(v))
    for name, d in zip(vs, DISC_ORDERS):
        v = vs[name]
        order = next(k for k in range(1, 5) if m.contains(smul(k, v)))
        r.add(f"order of {name} is {d}", order == d, f"got {order}")
    expected_q = {"e1": 0, "f1": 0, "e2": 0, "f2": 0, "g": Fraction(1, 4)}
    for name, v in vs.items():
        got = m.inner(v, v) % 2
        r.add(f"q({name}) = {expected_q[name]}", got == expected_q[name], f"got {got}")
    names = list(vs)
    for i, a in enumerate(names):
        for bname in names[i + 1:]:
            want = Fraction(1, 2) if {a, bname} in ({"e1", "f1"}, {"e2", "f2"}) else 0
            got = m.inner(vs[a], vs[bname]) % 1
            r.add(f"b({a},{bname}) = {want}", got == want, f"got {got}")
    r.add("e1, f1, e2, f2, g generate A_NS (64 classes)", m.basis_generates())
    return r


def ns_report(model=None):
    m = model or build_ns()
    r = Report("Neron-Severi lattice")
    lat = m.lattice
    r.add("rank NS = 17", lat.rank == 17)
    r.add("NS is even", lat.is_even())
    r.add("det NS = 64", lat.determinant == 64, f"got {lat.determinant}")
    r.add("A_NS = (Z/2)^4 x Z/4", m.disc.invariant_factors == (2, 2, 2, 2, 4),
          str(m.disc.invariant_factors))
    g = m.curve_gram()
    ok = g[0][0] == 4 and all(g[0][k] == 0 for k in range(1, 17))
    ok = ok and all(g[0][k] == 2 for k in range(17, 33))  # (H, T) = 2
    for i, c1 in enumerate(CURVES):
        for j, c2 in enumerate(CURVES):
            ok = ok and g[i + 1][j + 1] == curve_intersection(c1, c2)
    r.add("33x33 Gram of H, nodes and tropes matches the (16)_6 configuration", ok)
    h = hyperplane_vector()
    r.add("H = 2T_b + sum over Lambda(b) of N_a for all 16 b",
          all(add(smul(2, trope_vector(b)), node_sum(lambda_of(b))) == h for b in THETAS))
    r.add("H lies in NS", m.contains(h))
    r.add("(1/2) sum of all nodes lies in NS", m.contains(node_sum(POINTS, Fraction(1, 2))))
    r.extend(verify_disc_basis(m))
    iso = forms.forms_isometric(m.form, forms.kummer_form(2))
    r.add("A_NS is isometric to u(2)^2 + <1/4>", iso is not None)
    t = reference_lattice("T")
    q_t, _ = forms.from_lattice(t)
    r.add("-q_NS is isometric to q_T for T = U(2)^2 + <-4>",
          forms.forms_isometric(m.form.negated(), q_t) is not None)
    dist = forms.distinguished_element(m.form)
    r.add("distinguished element of A_NS is the class of H/2",
          dist == m.disc_class(smul(Fraction(1, 2), h)), disc_class_str(dist))
    return r


def reference_gram(name):
    u = lattice.hyperbolic_plane()
    e8_2 = lattice.scaled(lattice.cartan_e8(), 2)
    grams = {
        "T": lambda: lattice.block_diagonal(lattice.scaled(u, 2), lattice.scaled(u, 2), [[-4]]),
        "N": lambda: lattice.block_diagonal(u, lattice.scaled(u, 2), e8_2),
        "M": lambda: lattice.block_diagonal(lattice.scaled(u, 2), e8_2),
        "E7(2)": lambda: lattice.scaled(lattice.cartan_e7(), 2),
        "U+D4+D4+D7": lambda: lattice.block_diagonal(u, lattice.cartan_d(4),
                                                     lattice.cartan_d(4), lattice.cartan_d(7)),
        "D4+D4+D7": lambda: lattice.block_diagonal(lattice.cartan_d(4), lattice.cartan_d(4),
                                                   lattice.cartan_d(7)),
    }
    try:
        return grams[name]()
    except KeyError:
        raise NsError(f"unknown reference lattice {name!r}") from None


def reference_lattice(name):
    return lattice.standard_lattice(reference_gram(name))


SPLITTING_TARGET = "U+D4+D4+D7"


def splitting_start_vectors():
    """Isotropic classes whose splittings seed the search: H - N_[0] - N_[12]."""
    return [sub(hyperplane_vector(), add(node_vector("0"), node_vector("12")))]


def search_splitting(seed=0, max_steps=400):
    """Re-derive a basis of NS with Gram matrix U + D4 + D4 + D7 (about 30 s)."""
    from . import splittings
    return splittings.find_splitting(build_ns().lattice, splitting_start_vectors(),
                                     reference_gram("D4+D4+D7"), seed=seed,
                                     max_steps=max_steps)


def stored_splitting():
    """The frozen basis shipped in ``data/ns_splitting.json``."""
    text = resources.files("kummer_enriques").joinpath("data", "ns_splitting.json") \
        .read_text(encoding="utf-8")
    data = json.loads(text)
    return [lattice._vec([Fraction(x) for x in row]) for row in data["basis"]], data["search_seed"]


def check_splitting(basis, model=None):
    """Report on a claimed basis of NS with Gram matrix U + D4 + D4 + D7."""
    m = model or build_ns()
    r = Report("NS = U + D4 + D4 + D7")
    inside = len(basis) == DIM and all(m.lattice.contains(v) for v in basis)
    r.add("the 17 vectors lie in NS", inside)
    if not inside:
        return r
    gram = [[m.inner(u, v) for v in basis] for u in basis]
    r.add("their Gram matrix is U + D4 + D4 + D7",
          gram == [list(row) for row in reference_gram(SPLITTING_TARGET)])
    coords = [list(m.lattice.coordinates(v)) for v in basis]
    d = linalg.det(coords)
    r.add("they form a basis of NS (unimodular change of basis)", abs(d) == 1, f"det {d}")
    w = lattice.orthogonal_complement(m.lattice, Sublattice(m.ambient, basis[:2])).reduced()
    rs = lattice.root_system(w)
    r.add("the complement of the hyperbolic pair has root system D4 + D4 + D7",
          rs == ("D4", "D4", "D7"), "+".join(rs))
    return r


@lru_cache(maxsize=None)
def reconcile_abstract_model():
    """Basis of NS with Gram matrix U + D4 + D4 + D7, verified before use."""
    basis, _ = stored_splitting()
    rep = check_splitting(basis)
    if not rep.passed:
        raise NsError("stored U + D4 + D4 + D7 basis failed: "
                      + "; ".join(c.name for c in rep.failures()))
    return tuple(basis)


def reconcile_report():
    basis, _ = stored_splitting()
    return check_splitting(basis)


def ns_json(model=None):
    m = model or build_ns()
    return {
        "coordinates": ["H"] + [f"N{a.label}" for a in POINTS],
        "ambient_gram": matrix_to_json(m.ambient.gram),
        "basis": matrix_to_json(m.lattice.basis),
        "gram": matrix_to_json(m.lattice.gram),
        "determinant": m.lattice.determinant,
        "invariant_factors": list(m.disc.invariant_factors),
        "disc_basis": {name: [fraction_to_str(x) for x in v]
                       for name, v in zip(("e1", "f1", "e2", "f2", "g"), m.basis.vectors())},
        "disc_form": m.form.to_json(),
        "curves": {curve_str(c): [fraction_to_str(x) for x in v] for c, v in m.curves.items()},
    }
