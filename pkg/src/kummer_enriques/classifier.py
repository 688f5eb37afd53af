"""Patching subgroups of the free involutions and the 31-row classification."""

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from . import forms, involutions, lattice
from .halfsets import (EVEN_THETAS, POINTS, HalfSet, all_synthemes, gopel_subgroups, gopel_tetrads,
                       hexad_str, parse_set, rosenhain_pair, translate, weber_hexads)
from .ns import DISC_ORDERS, build_ns, disc_class_str, hyperplane_vector, node_sum, add, smul
from .report import Report

FAMILIES = ("switch", "hg", "hw")

# row labels of the Weber table, spelled as in the published table
HW_TABLE_ROWS = (
    "[12]+[23]+[31]+[14]+[25]+[36]",
    "[12]+[13]+[23]+[24]+[15]+[36]",
    "[23]+[13]+[12]+[34]+[25]+[16]",
    "[24]+[23]+[34]+[14]+[25]+[36]",
    "[25]+[23]+[35]+[54]+[21]+[36]",
    "[26]+[23]+[36]+[64]+[25]+[13]",
)


class ClassificationError(ValueError):
    pass


@dataclass(frozen=True)
class PatchingSubgroup:
    elements: frozenset     # coefficient tuples over (e1, f1, e2, f2, g)
    provenance: str = ""

    @property
    def order(self):
        return len(self.elements)

    def key(self):
        return tuple(sorted(self.elements))

    def is_cyclic(self):
        return any(_order(x) == 4 for x in self.elements)


def _order(x):
    k = 1
    while any((k * c) % d for c, d in zip(x, DISC_ORDERS)):
        k += 1
    return k


def _scale(k, x):
    return tuple((k * c) % d for c, d in zip(x, DISC_ORDERS))


def _subgroup_from(gens, provenance=""):
    elems = {(0,) * 5}
    frontier = list(elems)
    for x in frontier:
        for g in gens:
            y = tuple((a + b) % d for a, b, d in zip(x, g, DISC_ORDERS))
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return PatchingSubgroup(frozenset(elems), provenance)


# ---------------------------------------------------------------- lattice computation

def _ns_reps():
    m = build_ns()
    from itertools import product
    return [(c, m.combination(c)) for c in product(*(range(d) for d in DISC_ORDERS))]


def patching_subgroup(sigma, method="pairs"):
    """{[x] in A_NS : x - y in NS for some y in K*} for the involution ``sigma``.

    ``pairs`` runs over 64 x 256 coset representatives; ``projection`` tests
    whether (x + sigma x)/2 lies in the projection of NS to the invariant part.
    """
    m = build_ns()
    if method == "pairs":
        k = involutions.eigen_data(sigma).k
        dg = lattice.discriminant_group(k)
        ys = [y for _, y in dg.representatives()]
        found = set()
        for coeffs, x in _ns_reps():
            for y in ys:
                if m.contains(tuple(a - b for a, b in zip(x, y))):
                    found.add(coeffs)
                    break
    elif method == "projection":
        plus = _plus_projection(sigma)
        found = {coeffs for coeffs, x in _ns_reps()
                 if plus.contains(_half_sum(x, sigma(x)))}
    else:
        raise ClassificationError(f"unknown method {method!r}")
    sub = PatchingSubgroup(frozenset(found), str(sigma.tag))
    if sub.order != 4:
        raise ClassificationError(f"{sigma.tag}: patching subgroup has order {sub.order}")
    return sub


def _half_sum(x, y):
    return lattice._vec([Fraction(a + b, 2) for a, b in zip(x, y)])


def _plus_projection(sigma):
    m = build_ns()
    gens = [_half_sum(b, sigma(b)) for b in m.lattice.basis]
    return lattice.Sublattice.span(m.ambient, gens)


# ---------------------------------------------------------------- closed forms

def switch_generator_vector(beta, which=0):
    r = rosenhain_pair(beta)[which]
    return add(smul(Fraction(1, 4), hyperplane_vector()), node_sum(r, Fraction(1, 2)))


def hg_x_vector(tetrad):
    return node_sum(tetrad, Fraction(1, 2))


def hw_generator_vector(hexad):
    return add(smul(Fraction(3, 4), hyperplane_vector()), node_sum(hexad, Fraction(1, 2)))


def closed_form_patching(kind, datum):
    m = build_ns()
    if kind == "switch":
        beta = datum if isinstance(datum, HalfSet) else HalfSet.parse(str(datum))
        subs = [_subgroup_from([m.disc_class(switch_generator_vector(beta, i))])
                for i in (0, 1)]
        if subs[0] != subs[1]:
            raise ClassificationError(f"the two Rosenhain subgroups of {beta} disagree")
        return PatchingSubgroup(subs[0].elements, f"switch({beta})")
    if kind == "hg":
        half_h = m.disc_class(smul(Fraction(1, 2), hyperplane_vector()))
        x = m.disc_class(hg_x_vector(datum))
        return PatchingSubgroup(_subgroup_from([half_h, x]).elements, f"hg({hexad_str(datum)})")
    if kind == "hw":
        x = m.disc_class(hw_generator_vector(datum))
        return PatchingSubgroup(_subgroup_from([x]).elements, f"hw({hexad_str(datum)})")
    raise ClassificationError(f"unknown family {kind!r}")


def involution_for(kind, datum):
    if kind == "switch":
        return involutions.switch_action(datum)
    if kind == "hg":
        return involutions.hg_action(datum)
    if kind == "hw":
        return involutions.hw_action(datum)
    raise ClassificationError(f"unknown family {kind!r}")


def table_generator(kind, sub, datum=None):
    """The table entry for a subgroup.

    Cyclic subgroups: the generator with g-coefficient 1.  Two-elementary
    subgroups: the element besides 2g that has square 0 (the class of half
    the sum of the four nodes).
    """
    m = build_ns()
    if kind in ("switch", "hw"):
        gens = [x for x in sub.elements if _order(x) == 4 and x[4] == 1]
        if len(gens) != 1:
            raise ClassificationError("cyclic subgroup without a unique g-normalised generator")
        return gens[0]
    two_g = (0, 0, 0, 0, 2)
    if two_g not in sub.elements:
        raise ClassificationError("two-elementary subgroup does not contain 2g")
    cands = [x for x in sub.elements if any(x) and x != two_g and m.form.qv(x) == 0]
    if len(cands) != 1:
        raise ClassificationError("no unique square-zero element in the subgroup")
    return cands[0]


# ---------------------------------------------------------------- classification

@dataclass(frozen=True)
class Row:
    family: str
    datum: str
    generator: tuple
    subgroup: PatchingSubgroup

    def to_json(self):
        return {"family": self.family, "datum": self.datum, "generator": list(self.generator),
                "subgroupElements": [list(x) for x in sorted(self.subgroup.elements)]}


@dataclass
class ClassificationReport:
    rows: list
    report: Report
    counts: dict

    @property
    def passed(self):
        return self.report.passed


def hg_table_rows():
    """The fifteen Gopel subgroups ordered by their synthemes."""
    by_syn = {}
    for g in gopel_subgroups():
        pairs = tuple(sorted(p.members for p in g if p.members))
        by_syn[pairs] = g
    return [by_syn[s] for s in all_synthemes()]


def _hg_datum(g):
    pairs = sorted(p.members for p in g if p.members)
    return "+".join(["[0]"] + [f"[{a}{b}]" for a, b in pairs])


def classify_all(method="projection", cross_check=False):
    """Patching subgroups of all 10 + 60 + 192 involutions and the census."""
    rep = Report("classification")
    subs = {"switch": {}, "hg": {}, "hw": {}}
    mismatch = []
    data = {"switch": list(EVEN_THETAS), "hg": gopel_tetrads(), "hw": weber_hexads()}
    for kind in FAMILIES:
        for d in data[kind]:
            sigma = involution_for(kind, d)
            s = patching_subgroup(sigma, method)
            if cross_check and patching_subgroup(sigma, "pairs") != s:
                mismatch.append(str(sigma.tag))
            if closed_form_patching(kind, d).elements != s.elements:
                mismatch.append(f"closed form {sigma.tag}")
            subs[kind][d] = s
    rep.add("closed form agrees with the lattice computation on all 262 involutions",
            not mismatch, "; ".join(mismatch[:3]))
    distinct = {k: {s.key() for s in v.values()} for k, v in subs.items()}
    counts = {k: len(v) for k, v in distinct.items()}
    rep.add("10 switches give 10 distinct patching subgroups", counts["switch"] == 10,
            str(counts["switch"]))
    # constant on translation orbits of tetrads
    const = all(subs["hg"][g].elements == subs["hg"][translate(g, a)].elements
                for g in gopel_tetrads() for a in POINTS)
    rep.add("60 Gopel tetrads give 15 subgroups, constant under all 16 translations",
            counts["hg"] == 15 and const, str(counts["hg"]))
    rep.add("192 Weber hexads give 6 distinct patching subgroups", counts["hw"] == 6,
            str(counts["hw"]))
    cross = (distinct["switch"] & distinct["hg"]) | (distinct["switch"] & distinct["hw"]) \
        | (distinct["hg"] & distinct["hw"])
    rep.add("the three families are pairwise disjoint", not cross)
    total = len(distinct["switch"] | distinct["hg"] | distinct["hw"])
    rep.add("31 = 10+15+6 distinct patching subgroups", total == 31, str(total))
    types_ok = (all(s.is_cyclic() and _square_of_generator(s) == Fraction(1, 4)
                    for s in subs["switch"].values())
                and all(not s.is_cyclic() and (0, 0, 0, 0, 2) in s.elements
                        for s in subs["hg"].values())
                and all(s.is_cyclic() and _square_of_generator(s) == Fraction(5, 4)
                        for s in subs["hw"].values()))
    rep.add("each family has its subgroup type (1/4-cyclic, 2-elementary with H/2, "
            "(-3/4)-cyclic)", types_ok)

    rows = []
    for b in EVEN_THETAS:
        s = subs["switch"][b]
        rows.append(Row("switch", str(b), table_generator("switch", s), s))
    for g in hg_table_rows():
        s = subs["hg"][g]
        rows.append(Row("hg", _hg_datum(g), table_generator("hg", s), s))
    for label in HW_TABLE_ROWS:
        h = frozenset(parse_set(label))
        s = subs["hw"][h]
        rows.append(Row("hw", label, table_generator("hw", s), s))
    keys = {r.subgroup.key() for r in rows}
    rep.add("the 31 table rows carry 31 different subgroups", len(rows) == 31 == len(keys))
    return ClassificationReport(rows, rep, counts)


def _square_of_generator(s):
    f = build_ns().form
    gens = [x for x in s.elements if _order(x) == 4]
    return f.qv(gens[0])


def abstract_concrete_bijection(result=None):
    result = result or classify_all()
    f = build_ns().form
    half_h = build_ns().disc_class(smul(Fraction(1, 2), hyperplane_vector()))
    abstract = {
        "switch": forms.subgroups_order4(f, forms.Cyclic(Fraction(1, 4))),
        "hg": forms.subgroups_order4(f, forms.TwoElementary(half_h)),
        "hw": forms.subgroups_order4(f, forms.Cyclic(Fraction(-3, 4))),
    }
    r = Report("abstract and concrete patching subgroups")
    sizes = {k: len(v) for k, v in abstract.items()}
    r.add("abstract census 10 / 15 / 6", (sizes["switch"], sizes["hg"], sizes["hw"])
          == (10, 15, 6), str(sizes))
    for kind, label in (("switch", "cyclic with q = 1/4"), ("hg", "2-elementary containing H/2"),
                        ("hw", "cyclic with q = -3/4")):
        a = {tuple(sorted(s.elements)) for s in abstract[kind]}
        c = {row.subgroup.key() for row in result.rows if row.family == kind}
        r.add(f"{kind} family = all order-4 subgroups {label}", a == c)
    return r


# ---------------------------------------------------------------- rendering

TABLE_TITLES = {"switch": "Switches", "hg": "Hutchinson-Gopel involutions",
                "hw": "Hutchinson-Weber involutions"}
TABLE_HEADERS = {"switch": ("theta characteristic", "generator"),
                 "hg": ("Gopel subgroup", "patching element x"),
                 "hw": ("Weber hexad", "generator")}


def render_table(rows, kind):
    head = TABLE_HEADERS[kind]
    lines = [f"| {head[0]} | {head[1]} |", "|---|---|"]
    lines += [f"| {r.datum} | {disc_class_str(r.generator)} |" for r in rows if r.family == kind]
    return "\n".join(lines) + "\n"


def render_md(rows):
    parts = []
    for kind in FAMILIES:
        parts.append(f"## {TABLE_TITLES[kind]}\n\n{render_table(rows, kind)}")
    return "\n".join(parts)


def render_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "datum", "generator", "a1", "b1", "a2", "b2", "c"])
    for r in rows:
        w.writerow([r.family, r.datum, disc_class_str(r.generator), *r.generator])
    return buf.getvalue()


def render_json(rows):
    return json.dumps([r.to_json() for r in rows], indent=2, ensure_ascii=False) + "\n"


RENDERERS = {"md": render_md, "csv": render_csv, "json": render_json}


def golden_table(kind):
    return resources.files("kummer_enriques").joinpath("data", "golden", f"{kind}.md") \
        .read_text(encoding="utf-8")


def golden_report(rows):
    r = Report("published tables")
    for kind in FAMILIES:
        n = sum(1 for x in rows if x.family == kind)
        r.add(f"{TABLE_TITLES[kind]} table ({n} rows) matches the golden file",
              render_table(rows, kind) == golden_table(kind))
    return r
