from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from biconn.clifford import (Multivector, Signature, basis_vector, blade, commutator,
                             geometric_product, grade_project, spin_algebra_basis)
from oracles import rationals, word_product

L3 = Signature.lorentzian(3)


def blades_up_to(m, grade):
    return [b for k in range(grade + 1) for b in combinations(range(m), k)]


@st.composite
def multivectors(draw, sig, grades=None):
    pool = [b for k in (grades or range(sig.m + 1)) for b in combinations(range(sig.m), k)]
    chosen = draw(st.lists(st.sampled_from(pool), max_size=5))
    return Multivector(sig, {b: draw(rationals) for b in chosen})


def test_basis_vector():
    assert basis_vector(L3, 0).terms == {(0,): 1}
    assert basis_vector(Signature(5, 1), 5).terms == {(5,): 1}
    with pytest.raises(IndexError):
        basis_vector(L3, 4)


def test_products_of_basis_vectors():
    e = [basis_vector(L3, a) for a in range(4)]
    assert geometric_product(e[0], e[0]) == Multivector.scalar(L3, -1)
    assert geometric_product(e[1], e[2]).terms == {(1, 2): 1}
    assert geometric_product(e[2], e[1]).terms == {(1, 2): -1}
    e01 = blade(L3, 0, 1)
    assert geometric_product(e01, e01) == Multivector.scalar(L3, 1)


def test_commutator_examples():
    e12 = blade(L3, 1, 2)
    assert commutator(e12, e12) == Multivector(L3)
    x = blade(L3, 1, 2, coeff=Fraction(1, 2))
    y = blade(L3, 2, 3, coeff=Fraction(1, 2))
    # brute force: e1e2e2e3 = e1e3, e2e3e1e2 = -e1e3
    assert commutator(x, y) == blade(L3, 1, 3, coeff=Fraction(1, 2))


@given(multivectors(L3), rationals)
def test_scalars_are_central(x, c):
    assert commutator(Multivector.scalar(L3, c), x) == Multivector(L3)


def test_grade_project_examples():
    one_plus = Multivector.scalar(L3, 1) + blade(L3, 0, 1)
    assert grade_project(one_plus, 2) == blade(L3, 0, 1)
    assert grade_project(basis_vector(L3, 1), 2) == Multivector(L3)
    assert grade_project(blade(L3, 0, 1, 2), 3) == blade(L3, 0, 1, 2)


@pytest.mark.parametrize("sig,count", [(Signature(3, 1), 6), (Signature(2, 0), 1), (Signature(5, 1), 15)])
def test_spin_algebra_basis_size(sig, count):
    basis = spin_algebra_basis(sig)
    assert len(basis) == count
    assert all(x.grades() == {2} for x in basis)


@pytest.mark.parametrize("r,s", [(r, s) for m in range(1, 7) for s in range(m + 1) for r in [m - s]])
def test_anticommutation(r, s):
    sig = Signature(r, s)
    e = [basis_vector(sig, a) for a in range(sig.m)]
    for a in range(sig.m):
        for b in range(sig.m):
            lhs = geometric_product(e[a], e[b]) + geometric_product(e[b], e[a])
            expected = 2 * sig.eta(a) if a == b else 0
            assert lhs == Multivector.scalar(sig, expected)


@pytest.mark.parametrize("r,s", [(1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (6, 0), (3, 3)])
def test_associativity_exhaustive_to_grade_3(r, s):
    sig = Signature(r, s)
    pool = [blade(sig, *b) for b in blades_up_to(sig.m, 3)]
    products = {}
    for i, x in enumerate(pool):
        for j, y in enumerate(pool):
            products[i, j] = geometric_product(x, y)
    for i, x in enumerate(pool):
        for j in range(len(pool)):
            xy = products[i, j]
            for k, z in enumerate(pool):
                assert geometric_product(xy, z) == geometric_product(x, products[j, k])


@given(st.lists(st.integers(0, 5), max_size=8), st.sampled_from([(5, 1), (6, 0), (4, 2)]))
def test_product_matches_naive_word_reduction(word, rs):
    sig = Signature(*rs)
    signs = [sig.eta(a) for a in range(sig.m)]
    sign, canon = word_product(word, signs)
    out = Multivector.scalar(sig, 1)
    for a in word:
        out = geometric_product(out, basis_vector(sig, a))
    assert out.terms == {canon: sign}


@given(st.data(), st.integers(0, 4), st.integers(0, 4))
def test_grade_bound(data, j, k):
    x = data.draw(multivectors(L3, [j]))
    y = data.draw(multivectors(L3, [k]))
    for g in geometric_product(x, y).grades():
        assert g <= j + k
        assert g % 2 == (j + k) % 2


@given(multivectors(L3), multivectors(L3))
def test_coefficients_stay_rational(x, y):
    z = geometric_product(x, y) + commutator(x, y)
    assert all(type(c) is Fraction for c in z.terms.values())


@given(multivectors(Signature(5, 1)))
def test_json_round_trip(x):
    data = x.to_json()
    assert data["signature"] == [5, 1]
    assert all(isinstance(t["num"], str) and isinstance(t["den"], str) for t in data["terms"])
    assert Multivector.from_json(data) == x


def test_json_rejects_bad_blade():
    bad = {"signature": [3, 1], "terms": [{"blade": [1, 1], "num": "1", "den": "1"}]}
    with pytest.raises(ValueError):
        Multivector.from_json(bad)


def test_signature_mismatch():
    with pytest.raises(ValueError):
        geometric_product(basis_vector(L3, 0), basis_vector(Signature(4, 1), 0))
