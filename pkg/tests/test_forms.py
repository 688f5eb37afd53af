from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from kummer_enriques import forms, lattice
from kummer_enriques.forms import (Cyclic, TwoElementary, FormError, SizeGuardError, all_isometries,
                                   direct_sum, distinguished_element, forms_isometric,
                                   from_lattice, group_order_generated, kummer_form, orbits,
                                   standard_form, subgroups_order4, u2)

H = Fraction(1, 2)


def test_standard_forms():
    f = standard_form("u(2)")
    assert f.orders == (2, 2)
    assert f.qv((1, 0)) == 0 and f.qv((0, 1)) == 0
    assert f.bv((1, 0), (0, 1)) == H
    g = standard_form("<1/4>")
    assert g.orders == (4,) and g.qv((1,)) == Fraction(1, 4)
    assert direct_sum(u2(), u2(), standard_form("<1/4>")).size == 64


def test_unknown_form_name():
    with pytest.raises(FormError):
        standard_form("v(3)")


def test_from_lattice_examples():
    f, _ = from_lattice(lattice.standard_lattice(lattice.scaled(lattice.hyperbolic_plane(), 2)))
    assert forms_isometric(f, u2()) is not None
    f, _ = from_lattice(lattice.standard_lattice([[-4]]))
    assert f.orders == (4,) and f.qv((1,)) == Fraction(7, 4)


def test_from_lattice_rejects_odd():
    with pytest.raises(FormError):
        from_lattice(lattice.standard_lattice([[-1]]))


def test_u2_isometries_brute_force():
    f = u2()
    # the six automorphisms of (Z/2)^2, kept when they preserve q on every element
    autos = []
    for a, b, c, d in product(range(2), repeat=4):
        if (a * d - b * c) % 2 == 0:
            continue
        img = lambda x: ((a * x[0] + c * x[1]) % 2, (b * x[0] + d * x[1]) % 2)
        if all(f.qv(img(x)) == f.qv(x) for x in f.elements()):
            autos.append((img((1, 0)), img((0, 1))))
    assert len(autos) == 2
    got = sorted(tuple(i.images) for i in all_isometries(f))
    assert got == sorted(autos)
    assert group_order_generated(f, all_isometries(f)) == 2


def test_trivial_form():
    f = forms.trivial_form()
    assert len(all_isometries(f)) == 1
    assert group_order_generated(f, []) == 1


@pytest.mark.parametrize("f", [u2(), standard_form("<1/4>"), kummer_form(1),
                               direct_sum(u2(), standard_form("<1/8>"))])
def test_generated_order_equals_enumeration(f):
    isos = all_isometries(f)
    assert group_order_generated(f, isos) == len(isos)
    assert forms.isometry_generators(f).order == len(isos)


def test_m2_order_matches_orbit_stabilizer():
    f = kummer_form(2)
    n = len(all_isometries(f))
    assert n == forms.isometry_generators(f).order
    # |O| = |orbit of g| * |Stab(g)|; the orbit of g is the length-20 orbit
    g = (0, 0, 0, 0, 1)
    stab = [i for i in all_isometries(f) if i(g) == g]
    assert n == 20 * len(stab)


def test_size_guard():
    with pytest.raises(SizeGuardError):
        all_isometries(kummer_form(4))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_orbit_tables(m):
    n = 4 ** m
    expected = [(1, 0), (1, 1), (n - 1, 0), (n - 1, 1), (n + 2 ** m, Fraction(1, 4)),
                (n - 2 ** m, Fraction(5, 4))]
    assert forms.orbit_table(m) == expected
    orbs = orbits(kummer_form(m))
    assert sum(o.length for o in orbs) == kummer_form(m).size


def test_m1_orbit_lengths():
    assert sorted(o.length for o in orbits(kummer_form(1))) == [1, 1, 2, 3, 3, 6]


def test_distinguished_element():
    assert distinguished_element(kummer_form(2)) == (0, 0, 0, 0, 2)
    with pytest.raises(FormError):
        distinguished_element(u2())


def test_subgroup_census():
    f = kummer_form(2)
    c = subgroups_order4(f, Cyclic(Fraction(1, 4)))
    t = subgroups_order4(f, TwoElementary((0, 0, 0, 0, 2)))
    h = subgroups_order4(f, Cyclic(Fraction(-3, 4)))
    assert (len(c), len(t), len(h)) == (10, 15, 6)
    keys = [s.elements for s in c + t + h]
    assert len(set(keys)) == 31
    assert all(s.order == 4 for s in c + t + h)


def test_subgroup_census_brute_force():
    # independent count: all 4-element subsets closed under addition
    f = kummer_form(2)
    elems = f.elements()
    subs = set()
    for x in elems:
        for y in elems:
            s = frozenset({f.zero(), x, y, f.add(x, y)} | {f.scale(k, x) for k in range(4)})
            if len(s) == 4 and all(f.add(a, b) in s for a in s for b in s):
                subs.add(s)
    cyc14 = [s for s in subs if any(f.order_of(x) == 4 and f.qv(x) == Fraction(1, 4) for x in s)]
    cyc34 = [s for s in subs if any(f.order_of(x) == 4 and f.qv(x) == Fraction(5, 4) for x in s)]
    two = [s for s in subs if all(f.order_of(x) <= 2 for x in s) and (0, 0, 0, 0, 2) in s]
    assert (len(cyc14), len(two), len(cyc34)) == (10, 15, 6)


def test_malformed_constraint():
    with pytest.raises(FormError):
        subgroups_order4(kummer_form(1), "cyclic")
    with pytest.raises(FormError):
        subgroups_order4(kummer_form(1), TwoElementary((0, 0, 1)))


def test_forms_isometric_examples():
    f = kummer_form(2)
    assert forms_isometric(f, f) is not None
    assert forms_isometric(u2(), direct_sum(standard_form("<1/4>"), standard_form("<1/4>"))) is None
    t = lattice.standard_lattice(lattice.block_diagonal(
        lattice.scaled(lattice.hyperbolic_plane(), 2), lattice.scaled(lattice.hyperbolic_plane(), 2),
        [[-4]]))
    qt, _ = from_lattice(t)
    assert forms_isometric(kummer_form(2).negated(), qt) is not None
    assert forms_isometric(kummer_form(2), qt) is None


small_even = st.integers(min_value=1, max_value=4).flatmap(
    lambda a: st.integers(min_value=-3, max_value=3).flatmap(
        lambda b: st.integers(min_value=1, max_value=4).map(
            lambda c: [[2 * a, b], [b, 2 * c]])))


@given(small_even)
def test_compatibility_identity_on_lattice_forms(gram):
    if gram[0][0] * gram[1][1] == gram[0][1] ** 2:
        return
    lat = lattice.standard_lattice(gram)
    f, _ = from_lattice(lat)
    if f.size > forms.MAX_ENUMERATION:
        return
    for x in f.elements():
        for y in f.elements():
            assert forms.mod2(f.qv(f.add(x, y)) - f.qv(x) - f.qv(y) - 2 * f.bv(x, y)) == 0
    orbs = orbits(f)
    assert sum(o.length for o in orbs) == f.size
