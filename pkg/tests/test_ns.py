from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kummer_enriques import forms, lattice, linalg, ns
from kummer_enriques.halfsets import POINTS, THETAS, HalfSet, lambda_of, parse_set
from kummer_enriques.ns import (DISC_ORDERS, build_ns, disc_class_str, hyperplane_vector,
                                node_sum, node_vector, parse_disc_class, smul, trope_vector,
                                vector_str)

h = hyperplane_vector()
half = Fraction(1, 2)


@pytest.fixture(scope="module")
def model():
    return build_ns()


def n(label):
    return node_vector(label)


def half_code():
    """F2-span of the words 2*T_beta mod 2 (H bit, 16 node bits)."""
    words = {(0,) * 17}
    for b in THETAS:
        w = tuple([1] + [int(a in lambda_of(b)) for a in POINTS])
        words |= {tuple((x + y) % 2 for x, y in zip(w, v)) for v in words}
    return words


def test_basic_intersections(model):
    assert model.inner(h, h) == 4
    assert model.inner(n("12"), n("13")) == 0
    assert model.inner(h, n("0")) == 0
    assert model.inner(n("0"), n("0")) == -2


def test_tropes(model):
    for b in THETAS:
        t = trope_vector(b)
        assert model.inner(t, t) == -2
        assert model.contains(t)
    assert model.inner(n("12"), trope_vector("123")) == 1
    t6 = smul(half, ns.sub(h, node_sum(parse_set("[0]+[16]+[26]+[36]+[46]+[56]"))))
    assert trope_vector("6") == t6


def test_curve_gram_is_the_16_6_configuration(model):
    g = model.curve_gram()
    assert g[0][0] == 4
    curves = ns.CURVES
    for i, c1 in enumerate(curves):
        assert g[0][i + 1] == (0 if c1[0] == "N" else 2)
        for j, c2 in enumerate(curves):
            if c1 == c2:
                want = -2
            elif c1[0] == c2[0]:
                want = 0
            else:
                a, b = (c1[1], c2[1]) if c1[0] == "N" else (c2[1], c1[1])
                want = 1 if len((a + b).members) == 1 else 0
            assert g[i + 1][j + 1] == want


def test_ns_invariants(model):
    lat = model.lattice
    assert lat.rank == 17
    assert lat.is_even()
    assert lat.determinant == 64
    assert model.disc.invariant_factors == (2, 2, 2, 2, 4)
    assert model.contains(node_sum(POINTS, half))
    assert model.contains(h)


def test_half_integer_code(model):
    code = half_code()
    assert len(code) == 64
    weights = Counter((w[0], sum(w[1:])) for w in code)
    assert weights == {(0, 8): 30, (1, 6): 16, (1, 10): 16, (0, 0): 1, (0, 16): 1}
    for w in code:
        assert model.contains(tuple(Fraction(x, 2) for x in w))


@given(st.lists(st.integers(min_value=0, max_value=1), min_size=17, max_size=17))
def test_membership_matches_code(bits):
    v = tuple(Fraction(x, 2) for x in bits)
    assert build_ns().contains(v) == (tuple(bits) in half_code())


def test_disc_class_examples(model):
    g = model.basis.g
    assert model.disc_class(g) == (0, 0, 0, 0, 1)
    x = ns.add(smul(Fraction(1, 4), h), node_sum(parse_set("[0]+[12]+[23]+[13]"), half))
    assert model.disc_class(x) == (1, 0, 0, 1, 1)
    assert disc_class_str(model.disc_class(x)) == "e₁+f₂+g"
    assert model.disc_class(smul(half, h)) == (0, 0, 0, 0, 2)
    with pytest.raises(ns.NsError):
        model.disc_class(smul(Fraction(1, 8), h))


def test_disc_basis_values(model):
    e1, f1, e2, f2, g = model.basis.vectors()
    assert model.inner(g, g) % 2 == Fraction(1, 4)
    assert model.inner(e1, f1) % 1 == half
    assert model.inner(e1, g) % 1 == 0
    assert ns.verify_disc_basis(model).passed


def test_form_identifications(model):
    f, _ = forms.from_lattice(model.lattice)
    assert forms.forms_isometric(f, forms.kummer_form(2)) is not None
    t = ns.reference_lattice("T")
    qt, _ = forms.from_lattice(t)
    assert forms.forms_isometric(f.negated(), qt) is not None
    assert forms.distinguished_element(model.form) == model.disc_class(smul(half, h))
    assert ns.ns_report(model).passed


disc_elems = st.tuples(*(st.integers(min_value=0, max_value=d - 1) for d in DISC_ORDERS))


@given(disc_elems)
def test_disc_class_string_round_trip(c):
    assert parse_disc_class(disc_class_str(c)) == c
    ascii_ = disc_class_str(c).replace("₁", "1").replace("₂", "2")
    assert parse_disc_class(ascii_) == c


@given(disc_elems)
def test_disc_class_of_combination(c):
    m = build_ns()
    assert m.disc_class(m.combination(c)) == c


def test_parse_disc_class_errors():
    with pytest.raises(ns.NsError):
        parse_disc_class("e3+g")


def test_vector_str():
    x = ns.add(smul(Fraction(1, 4), h), node_sum(parse_set("[0]+[12]+[23]+[13]"), half))
    assert vector_str(x) == "H/4+(N0+N12+N13+N23)/2"
    y = ns.add(smul(Fraction(3, 4), h), node_sum(parse_set("[12]+[13]"), half))
    assert vector_str(y) == "3H/4+(N12+N13)/2"
    assert vector_str(ns.sub(h, n("0"))) == "H-N0"
    assert vector_str((0,) * 17) == "0"


def test_parse_curve():
    assert ns.parse_curve("N12") == ("N", HalfSet.parse("12"))
    assert ns.parse_curve("T123") == ("T", HalfSet.parse("123"))
    with pytest.raises(ns.NsError):
        ns.parse_curve("N1")


def test_reference_lattices():
    assert linalg.det(ns.reference_gram("N")) == -(2 ** 2) * 2 ** 8 * (-1)
    assert abs(linalg.det(ns.reference_gram("T"))) == 64
    with pytest.raises(ns.NsError):
        ns.reference_gram("E9")


def test_stored_splitting_certificate():
    basis, seed = ns.stored_splitting()
    assert seed == 0
    rep = ns.check_splitting(basis)
    assert rep.passed, rep.lines()
    assert ns.reconcile_abstract_model() == tuple(basis)


def test_check_splitting_rejects_bad_basis():
    basis, _ = ns.stored_splitting()
    bad = list(basis)
    bad[2] = ns.add(bad[2], bad[0])
    rep = ns.check_splitting(bad)
    assert not rep.passed
    assert not ns.check_splitting(basis[:16]).passed


@pytest.mark.slow
def test_splitting_rederived_from_seed():
    basis, seed = ns.stored_splitting()
    assert ns.search_splitting(seed=seed) == basis
