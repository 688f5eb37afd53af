from fractions import Fraction
from itertools import permutations
from math import gcd

import pytest
from hypothesis import given, strategies as st

from kummer_enriques import linalg


def perm_det(a):
    """Leibniz formula; independent of the elimination code."""
    n = len(a)
    total = Fraction(0)
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = Fraction(1)
        for i in range(n):
            term *= a[i][p[i]]
        total += -term if inv % 2 else term
    return total


def minors_gcd(a, k):
    """gcd of all k x k minors (the k-th determinantal divisor)."""
    from itertools import combinations
    g = 0
    for rows in combinations(range(len(a)), k):
        for cols in combinations(range(len(a[0])), k):
            g = gcd(g, int(perm_det([[a[i][j] for j in cols] for i in rows])))
    return g


small_ints = st.integers(min_value=-6, max_value=6)


def square(n):
    return st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(min_value=1, max_value=4).flatmap(square))
def test_det_agrees_with_permutation_formula(a):
    assert linalg.det(a) == perm_det(a)


@given(st.integers(min_value=1, max_value=4).flatmap(square))
def test_inverse_when_nonsingular(a):
    if perm_det(a) == 0:
        with pytest.raises(linalg.SingularMatrixError):
            linalg.inverse(a)
        return
    inv = linalg.inverse(a)
    assert linalg.mat_mul(a, inv) == linalg.identity(len(a))


def test_snf_examples():
    d, u, v = linalg.smith_normal_form(linalg.identity(3))
    assert d == linalg.identity(3)
    d, u, v = linalg.smith_normal_form([[-2, 1], [1, -2]])
    assert [d[0][0], d[1][1]] == [1, 3]
    d, _, _ = linalg.smith_normal_form([[2, 0], [0, 4]])
    assert d == [[2, 0], [0, 4]]


def test_snf_rejects_fractions():
    with pytest.raises(linalg.NonIntegerMatrixError):
        linalg.smith_normal_form([[Fraction(1, 2), 0], [0, 1]])


@given(st.integers(min_value=1, max_value=3).flatmap(
    lambda m: st.integers(min_value=1, max_value=3).flatmap(
        lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=m, max_size=m))))
def test_snf_properties(a):
    d, u, v = linalg.smith_normal_form(a)
    assert linalg.mat_mul(linalg.mat_mul(u, a), v) == d
    assert abs(perm_det(u)) == 1 and abs(perm_det(v)) == 1
    diag = [d[i][i] for i in range(min(len(a), len(a[0])))]
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)
    for x, y in zip(diag, diag[1:]):
        assert (y == 0) or (x != 0 and y % x == 0)
    # product of the first k invariant factors is the k-th determinantal divisor
    prod = 1
    for k, x in enumerate(diag, start=1):
        prod *= x
        assert abs(prod) == minors_gcd(a, k)


@given(st.integers(min_value=1, max_value=3).flatmap(
    lambda m: st.lists(st.lists(small_ints, min_size=4, max_size=4), min_size=m, max_size=m)))
def test_hnf_keeps_row_lattice(a):
    h, u = linalg.hnf_rows(a)
    assert linalg.mat_mul(u, a) == h
    assert abs(perm_det(u)) == 1


@given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=1, max_size=4))
def test_left_kernel(a):
    ker = linalg.integer_left_kernel(a)
    for x in ker:
        assert linalg.vec_mat(x, a) == [0] * 3
    assert len(ker) == len(a) - linalg.rank(a)


def test_json_roundtrip():
    m = [[Fraction(1, 2), -3], [0, Fraction(-7, 4)]]
    enc = linalg.matrix_to_json(m)
    assert enc == [["1/2", "-3/1"], ["0/1", "-7/4"]]
    assert linalg.matrix_from_json(enc) == m
