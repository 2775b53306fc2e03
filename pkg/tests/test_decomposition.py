from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from biconn import lie
from biconn.decomposition import (bi_coefficients, change_of_basis, decompose, display_lines,
                                  recompose, splitting_coordinates, su2_basis_report)
from biconn.fields import BIPair, Grid, SpinConnectionCoeffs
from biconn.splitting import RigidSplittingError
from oracles import rationals

POINT = Grid((1, 1, 1, 1), (1.0,) * 4, (0.0,) * 4)
PAIRS = lie.basis_pairs(3)


def omega_from(values: dict, n=3, grid=POINT):
    """Connection with w^{ab}_mu = values[(a, b)] for every mu, as an object array."""
    arr = np.empty((len(lie.basis_pairs(n)), n + 1) + grid.dims, dtype=object)
    for i, p in enumerate(lie.basis_pairs(n)):
        arr[i] = Fraction(values.get(p, 0))
    return SpinConnectionCoeffs(n, arr, grid)


def exact_fields(n=3, points=1):
    shape = (len(lie.basis_pairs(n)), n + 1, points, 1, 1, 1)
    return st.lists(rationals, min_size=int(np.prod(shape)), max_size=int(np.prod(shape))).map(
        lambda xs: SpinConnectionCoeffs(n, np.array(xs, dtype=object).reshape(shape),
                                        Grid((points, 1, 1, 1), (1.0,) * 4, (0.0,) * 4)))


def test_rotation_only_example():
    c = Fraction(5, 3)
    pair = decompose(omega_from({(1, 2): c}), Fraction(11, 2))
    assert list(pair.A[:, 0].ravel()) == [0, 0, c]
    assert not pair.K.any()


def test_beta_irrelevant_without_boost_part():
    w = omega_from({(1, 2): 1, (1, 3): -2, (2, 3): Fraction(1, 7)})
    a7, a0 = decompose(w, 7), decompose(w, 0)
    assert (a7.A == a0.A).all() and not a7.K.any()


def test_boost_example():
    d, beta = Fraction(-3, 4), Fraction(2, 5)
    pair = decompose(omega_from({(0, 1): d}), beta)
    assert list(pair.A[:, 0].ravel()) == [beta * d, 0, 0]
    assert list(pair.K[:, 0].ravel()) == [d, 0, 0]


def test_zero_pair_recomposes_to_zero():
    pair = BIPair(3, 1.5, np.zeros((3, 4, 1, 1, 1, 1)), np.zeros((3, 4, 1, 1, 1, 1)), POINT)
    assert not recompose(pair).values.any()


@given(exact_fields(), rationals)
def test_exact_round_trip(w, beta):
    pair = decompose(w, beta)
    back = recompose(pair)
    assert (back.values == w.values).all()
    again = decompose(back, beta)
    assert (again.A == pair.A).all() and (again.K == pair.K).all()


@given(exact_fields(n=4, points=1))
def test_exact_round_trip_n4(w):
    assert (recompose(decompose(w, 0)).values == w.values).all()


def test_rigid_for_n4():
    w = omega_from({}, n=4, grid=Grid((1,) * 5, (1.0,) * 5, (0.0,) * 5))
    with pytest.raises(RigidSplittingError):
        decompose(w, 1)


@given(exact_fields(), exact_fields(), rationals, rationals, rationals)
def test_linearity(w1, w2, a, b, beta):
    combo = SpinConnectionCoeffs(3, a * w1.values + b * w2.values, w1.grid)
    p, p1, p2 = decompose(combo, beta), decompose(w1, beta), decompose(w2, beta)
    assert (p.A == a * p1.A + b * p2.A).all()
    assert (p.K == a * p1.K + b * p2.K).all()


@given(exact_fields(), rationals, rationals)
def test_beta_affinity(w, b1, b2):
    p1, p2 = decompose(w, b1), decompose(w, b2)
    assert (p1.A - p2.A == (b1 - b2) * p1.K).all()


@pytest.mark.parametrize("beta", [0.0, 0.3, -7 / 3, 10.0, 1e5])
def test_float_round_trip_ulps(beta):
    rng = np.random.default_rng(1)
    grid = Grid((2000, 1, 1, 1), (1.0,) * 4, (0.0,) * 4)
    w = rng.normal(size=(6, 4) + grid.dims) * np.exp(3 * rng.normal(size=(6, 4) + grid.dims))
    pair = decompose(SpinConnectionCoeffs(3, w, grid), beta)
    back = recompose(pair).values
    # ulps of the largest term entering w^ij = eps (A^k - beta K^k)
    scale = np.abs(w).copy()
    for idx, (a, b) in enumerate(PAIRS):
        if a > 0:
            k = 6 - a - b
            scale[idx] = np.maximum.reduce([scale[idx], np.abs(pair.A[k - 1]), np.abs(beta * pair.K[k - 1])])
    assert (np.abs(back - w) <= 4 * np.spacing(scale)).all()
    assert np.array_equal(back[:3], w[:3])
    if beta == 0:
        assert np.array_equal(back, w)


@given(st.fixed_dictionaries({p: rationals for p in PAIRS}), rationals)
def test_agrees_with_projection_onto_splitting(w, beta):
    assert splitting_coordinates(w, beta) == bi_coefficients(w, beta)


@pytest.mark.parametrize("beta", [0, 1, Fraction(-7, 3)])
def test_su2_basis_report(beta):
    report = su2_basis_report(beta, samples=100, seed=3)
    assert report.passed, report.failures
    assert report.samples == 100


def test_beta_zero_column():
    table = change_of_basis(0)
    # T_ij = 1/2 eps_ijk (tau_k / 2): A^k = 1/2 eps_ij^k w^ij when beta = 0
    assert table[(1, 2)]["h3"] == Fraction(1, 2)
    assert table[(1, 3)]["h2"] == Fraction(-1, 2)
    assert table[(0, 2)] == {"h1": 0, "h2": 0, "h3": 0, "m1": 0, "m2": Fraction(1, 2), "m3": 0}


def test_display_lines_agree():
    w = {p: Fraction(i + 1, 3) for i, p in enumerate(PAIRS)}
    lines = display_lines(w, Fraction(3, 2))
    assert all(line == lines[0] for line in lines)


def test_shape_mismatch():
    with pytest.raises(ValueError):
        SpinConnectionCoeffs(3, np.zeros((5, 4, 1, 1, 1, 1)), POINT)
    with pytest.raises(ValueError):
        BIPair(3, 0.0, np.zeros((3, 4, 1, 1, 1, 1)), np.zeros((2, 4, 1, 1, 1, 1)), POINT)
