"""The ten acceptance criteria, one test each.

Every test also prints its own PASS/FAIL line; a summary of all ten is
written at the end of the pytest run.
"""
from fractions import Fraction

import pytest

from kummer_enriques import classifier, forms, halfsets, involutions, lattice
from kummer_enriques.ns import build_ns, reference_lattice, smul, hyperplane_vector


def report(n, title, ok):
    print(f"criterion {n} ({title}): {'PASS' if ok else 'FAIL'}")
    assert ok


@pytest.fixture(scope="module")
def classification():
    return classifier.classify_all()


def test_criterion_1_thirty_one_subgroups(classification):
    rows = classification.rows
    fam = {k: {r.subgroup.key() for r in rows if r.family == k} for k in classifier.FAMILIES}
    sizes = tuple(len(fam[k]) for k in classifier.FAMILIES)
    disjoint = not (fam["switch"] & fam["hg"] or fam["switch"] & fam["hw"]
                    or fam["hg"] & fam["hw"])
    ok = (classification.passed and sizes == (10, 15, 6) and disjoint
          and classification.counts == {"switch": 10, "hg": 15, "hw": 6})
    report(1, "10 + 15 + 6 = 31 distinct patching subgroups", ok)


def test_criterion_2_tables_match_golden(classification):
    ok = all(classifier.render_table(classification.rows, k) == classifier.golden_table(k)
             for k in classifier.FAMILIES)
    report(2, "generator tables equal the golden files byte for byte", ok)


def test_criterion_3_e7_2_certification():
    isos = ([involutions.switch_action(b) for b in halfsets.EVEN_THETAS]
            + [involutions.hg_action(g) for g in halfsets.gopel_subgroups()]
            + [involutions.hw_action(w) for w in halfsets.weber_hexads()])
    assert len(isos) == 217
    e7 = involutions.standard_e7_2()
    bad = []
    for s in isos:
        k = s.eigen.k
        norms = [n for _, n in lattice.short_vectors(k, 4)]
        wit = involutions.e7_witness(k)
        ok = (k.rank == 7 and norms.count(-2) == 0 and norms.count(-4) == 126
              and wit is not None
              and [[build_ns().inner(x, y) for y in wit] for x in wit]
              == [list(r) for r in e7.gram])
        if not ok:
            bad.append(str(s.tag))
    report(3, "217 eigenlattices are E7(2) with explicit witnesses", not bad)


def test_criterion_4_orbit_tables():
    ok = True
    for m in (1, 2, 3):
        n = 4 ** m
        want = sorted([(1, Fraction(0)), (1, Fraction(1)), (n - 1, Fraction(0)),
                       (n - 1, Fraction(1)), (n + 2 ** m, Fraction(1, 4)),
                       (n - 2 ** m, Fraction(-3, 4) % 2)])
        got = sorted((o.length, o.square % 2) for o in forms.orbits(forms.kummer_form(m)))
        ok = ok and got == want and sum(o for o, _ in got) == 2 ** (2 * m + 2)
    report(4, "orbit tables of u(2)^m + <1/4> for m = 1, 2, 3", ok)


def test_criterion_5_surjectivity():
    d = involutions.surjectivity_data()
    ok = d["order_lattice"] == d["order_image"] == d["order_form"] == 2903040
    report(5, "|O(E7(2))| = |image in O(q_K)| = 2903040", ok)


def test_criterion_6_census_and_bijection(classification):
    sizes = tuple(len(v) for v in forms.census().values())
    ok = sizes == (10, 15, 6) and classifier.abstract_concrete_bijection(classification).passed
    report(6, "abstract census 10 / 15 / 6 equals the concrete families", ok)


def test_criterion_7_combinatorics():
    counts = tuple(len(halfsets.enumerate_sets(k)) for k in
                   ("gopel-subgroup", "gopel-tetrad", "rosenhain-subgroup",
                    "rosenhain-tetrad", "weber-hexad"))
    shapes = all(halfsets.weber_shape(w).build() == w for w in halfsets.weber_hexads())
    pairs = True
    for b in halfsets.EVEN_THETAS:
        lam = halfsets.lambda_of(b)
        subs = [frozenset(r) for r in halfsets.rosenhain_subgroups()]
        found = {frozenset((r1, r2)) for r1 in subs for r2 in subs
                 if r1 != r2 and (r1 ^ r2) == lam}
        pairs = pairs and len(found) == 1
    ok = counts == (15, 60, 20, 80, 192) and shapes and pairs
    report(7, "15/60/20/80/192, Weber shapes, unique Rosenhain pairs", ok)


def test_criterion_8_weyl_identities():
    m = build_ns()
    w = involutions.weyl_vector()
    ok = all(involutions.hw_action(h)(w)
             == tuple(a + 8 * b for a, b in zip(w, involutions.r_prime(h)))
             for h in halfsets.weber_hexads())
    gens = (involutions.all_translations() + involutions.all_switches()
            + involutions.all_hg() + involutions.all_hw())
    assert len(gens) == 16 + 10 + 60 + 192
    ok = ok and all(Fraction(m.inner(w, s(w))) % 4 == 0 for s in gens)
    report(8, "sigma_W(w') = w' + 8r' and (w', s w') in 4Z", ok)


def test_criterion_9_constructions_agree():
    eig, closed, pairs = involutions.hw_constructions_w0()
    lines = involutions.check_g0_action_list()
    ok = eig == closed == pairs and lines and all(line[-1] for line in lines)
    report(9, "W0 constructions agree, G0 action list reproduced", ok)


def test_criterion_10_form_identifications():
    m = build_ns()
    q_ns, _ = forms.from_lattice(m.lattice)
    q_t, _ = forms.from_lattice(reference_lattice("T"))
    dist = forms.distinguished_element(m.form)
    orbit_one = [o for o in forms.orbits(m.form) if o.length == 1]
    ok = (forms.forms_isometric(q_ns, forms.kummer_form(2)) is not None
          and forms.forms_isometric(m.form.negated(), q_t) is not None
          and dist == m.disc_class(smul(Fraction(1, 2), hyperplane_vector()))
          and len(orbit_one) == 2)
    report(10, "A_NS = u(2)^2 + <1/4>, -q_NS = q_T, H/2 distinguished", ok)
