from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from kummer_enriques import halfsets
from kummer_enriques.halfsets import (EVEN_THETAS, POINTS, THETAS, ZERO, HalfSet, HalfSetError,
                                      incidence, lambda_of, parse_set, rosenhain_pair, sym_diff,
                                      symplectic, weber_hexads, weber_maps, weber_shape)

FULL = frozenset(range(1, 7))


def hs(text):
    return HalfSet.parse(text)


def pts(text):
    return parse_set(text)


# independent model: a class is the unordered pair {A, complement of A}
def cls(subset):
    s = frozenset(subset)
    return frozenset([s, FULL - s])


def model_points():
    return {cls(s) for k in (0, 2) for s in combinations(range(1, 7), k)}


def model_add(a, b):
    x, y = next(iter(a)), next(iter(b))
    return cls(x ^ y)


def model_symp(a, b):
    x, y = next(iter(a)), next(iter(b))
    return len(x & y) % 2


def to_model(h):
    return cls(h.members)


def test_sym_diff_examples():
    assert sym_diff(hs("12"), hs("13")) == hs("23")
    assert sym_diff(hs("13"), hs("56")) == hs("24")
    assert sym_diff(hs("123"), hs("1")) == hs("23")


def test_symplectic_examples():
    assert symplectic(hs("12"), hs("23")) == 1
    assert symplectic(hs("12"), hs("34")) == 0
    assert symplectic(hs("12"), hs("3456")) == 0
    with pytest.raises(HalfSetError):
        symplectic(hs("1"), hs("12"))


def test_incidence_examples():
    assert incidence(hs("0"), hs("1"))
    assert incidence(hs("12"), hs("123"))
    assert not incidence(hs("0"), hs("123"))
    with pytest.raises(HalfSetError):
        incidence(hs("1"), hs("2"))


def test_canonical_forms():
    assert str(hs("3456")) == "[12]"
    assert str(hs("234")) == "[156]"
    assert len(POINTS) == 16 and len(THETAS) == 16 and len(EVEN_THETAS) == 10
    with pytest.raises(HalfSetError):
        hs("17")
    with pytest.raises(HalfSetError):
        hs("[112]")


def test_lambda_examples():
    assert lambda_of(hs("123")) == pts("[12]+[13]+[23]+[45]+[46]+[56]")
    assert lambda_of(hs("6")) == pts("[0]+[16]+[26]+[36]+[46]+[56]")
    for b in THETAS:
        expected = {a for a in POINTS if len(next(iter(model_add(to_model(a), to_model(b))))) in (1, 5)}
        assert lambda_of(b) == expected and len(expected) == 6


point_st = st.sampled_from(POINTS)


@given(point_st, point_st, point_st)
def test_points_form_f2_4(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + ZERO == a and a + a == ZERO
    assert to_model(a + b) == model_add(to_model(a), to_model(b))


@given(point_st, point_st, point_st)
def test_symplectic_bilinear_alternating(a, b, c):
    assert symplectic(a, a) == 0
    assert symplectic(a, b) == symplectic(b, a)
    assert symplectic(a + b, c) == (symplectic(a, c) + symplectic(b, c)) % 2
    assert symplectic(a, b) == model_symp(to_model(a), to_model(b))


def test_symplectic_radical_is_trivial():
    radical = [a for a in POINTS if all(symplectic(a, b) == 0 for b in POINTS)]
    assert radical == [ZERO]


def brute_subspaces():
    pts_ = list(model_points())
    zero = cls(())
    spaces = set()
    for a, b in combinations([p for p in pts_ if p != zero], 2):
        spaces.add(frozenset([zero, a, b, model_add(a, b)]))
    return spaces


def test_enumeration_counts():
    spaces = brute_subspaces()
    iso = [s for s in spaces if all(model_symp(x, y) == 0 for x in s for y in s)]
    assert len(iso) == 15 and len(spaces) - len(iso) == 20
    assert len(halfsets.gopel_subgroups()) == 15
    assert len(halfsets.gopel_tetrads()) == 60
    assert len(halfsets.rosenhain_subgroups()) == 20
    assert len(halfsets.rosenhain_tetrads()) == 80
    assert len(weber_hexads()) == 192
    for kind in ("gopel-subgroup", "gopel-tetrad", "rosenhain-subgroup", "rosenhain-tetrad",
                 "weber-hexad"):
        items = halfsets.enumerate_sets(kind)
        assert len(set(items)) == len(items)


def test_weber_shape_examples():
    s = weber_shape(pts("[0]+[12]+[23]+[34]+[45]+[15]"))
    assert s.kind == 1 and s.witness == (1, 2, 3, 4, 5)
    s = weber_shape(pts("[12]+[23]+[13]+[14]+[25]+[36]"))
    assert s.kind == 2 and s.witness == (1, 2, 3, 4, 5, 6)
    with pytest.raises(HalfSetError):
        weber_shape(pts("[0]+[12]+[34]+[56]+[13]+[24]"))


def test_weber_shapes_round_trip():
    kinds = []
    for w in weber_hexads():
        s = weber_shape(w)
        assert s.build() == w
        kinds.append(s.kind)
    assert kinds.count(1) == 72 and kinds.count(2) == 120


def test_rosenhain_pairs():
    r1, r2 = rosenhain_pair(hs("123"))
    expected = {pts("[0]+[12]+[23]+[13]"), pts("[0]+[45]+[56]+[46]")}
    assert {r1, r2} == expected
    subs = halfsets.rosenhain_subgroups()
    for b in EVEN_THETAS:
        found = [(x, y) for x, y in combinations(subs, 2) if x ^ y == lambda_of(b)]
        assert len(found) == 1
        assert set(found[0]) == set(rosenhain_pair(b))
    with pytest.raises(HalfSetError):
        rosenhain_pair(hs("1"))


W0 = pts("[12]+[23]+[31]+[14]+[25]+[36]")
W0_PAIRS = (("0", "123"), ("56", "1"), ("46", "2"), ("45", "3"), ("15", "124"),
               ("16", "134"), ("24", "125"), ("26", "146"), ("34", "136"), ("35", "236"))


def test_weber_maps_w0():
    wm = weber_maps(W0)
    assert wm.mu_prime[hs("0")] == hs("123")
    assert wm.mu_prime[hs("56")] == hs("1")
    assert wm.mu_prime[hs("46")] == hs("2")
    assert {(a.label, str(b)[1:-1]) for a, b in wm.mu_prime.items()} == \
        {(a, str(hs(b))[1:-1]) for a, b in W0_PAIRS}
    assert len(wm.degree_one) == 6
    for a in W0:
        assert incidence(a, wm.mu[a])


def test_perp_hexads_are_weber():
    for w in weber_hexads():
        for a, p in weber_maps(w).perp.items():
            assert halfsets.is_weber_hexad(p)
            assert a not in p


def test_syntheme_duality():
    classes = halfsets.weber_classes()
    assert len(classes) == 6
    totals = set()
    for c in classes:
        appearing, missing = halfsets.syntheme_duality(c)
        assert len(appearing) == 10
        assert halfsets.is_total(missing)
        totals.add(missing)
    assert len(totals) == 6
    assert len(halfsets.all_totals()) == 6
    w0_class = next(c for c in classes if W0 in c)
    assert len(halfsets.syntheme_duality(w0_class)[0]) == 10
