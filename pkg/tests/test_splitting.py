import random
from fractions import Fraction

import pytest
from hypothesis import given

from biconn import lie, splitting
from biconn.splitting import ReductiveSplitting, RigidSplittingError
from oracles import dense_intertwiners, rationals, same_span, to_sympy

# frozen: one-parameter family only for n = 3
EXPECTED_DIM = {3: 1, 4: 0, 5: 0, 6: 0, 7: 0, 8: 0}


def flat(psi):
    return [v for row in psi for v in row]


@pytest.mark.parametrize("n", sorted(EXPECTED_DIM))
def test_intertwiner_dimension(n):
    assert splitting.solve_intertwiners(n).dim == EXPECTED_DIM[n]


def test_n2_is_reported_not_asserted_against_theory():
    # outside the classification's range; only cross-checked with the oracle
    assert splitting.solve_intertwiners(2).dim == len(dense_intertwiners(2))


@pytest.mark.parametrize("n", range(2, 7))
def test_matches_dense_oracle(n):
    ours = [to_sympy(flat(psi)) for psi in splitting.solve_intertwiners(n).basis]
    ref = dense_intertwiners(n)
    assert len(ours) == len(ref)
    assert same_span(ours, ref)


@pytest.mark.parametrize("n", range(2, 6))
def test_adjacent_generators_suffice(n):
    full = splitting.solve_intertwiners(n, list(lie.spatial_pairs(n)))
    reduced = splitting.solve_intertwiners(n)
    assert full.basis == reduced.basis


def test_n3_intertwiner_is_the_dual_map():
    psi = splitting.normalized_intertwiner()
    assert splitting.check_intertwiner(3, psi)
    space = splitting.IntertwinerSpace(3, (psi,))
    for k in (1, 2, 3):
        expected = lie.LieElement.zero(3)
        for i, j in lie.spatial_pairs(3):
            expected = expected + Fraction(-lie.levi_civita(k, i, j)) * lie.generator(3, (i, j))
        assert space.apply(0, k) == expected
    assert lie.coordinates(space.apply(0, 3))[lie.basis_pairs(3).index((1, 2))] == -1


def test_beta_zero_splitting_is_span_of_boosts():
    split = splitting.build_splitting(3, 0)
    assert split.m_basis == tuple(lie.generator(3, (0, k)) for k in (1, 2, 3))


@pytest.mark.parametrize("n,beta", [(3, 0), (3, 1), (3, Fraction(-7, 3)), (4, 0), (5, 0)])
def test_build_splitting_is_reductive(n, beta):
    report = splitting.verify_reductive(splitting.build_splitting(n, beta))
    assert report.passed and report.direct_sum
    assert report.counterexample is None
    assert len(report.decompositions) == len(lie.spatial_pairs(n)) * n


@given(rationals)
def test_random_beta_closure_with_zero_residual(beta):
    split = splitting.build_splitting(3, beta)
    report = splitting.verify_reductive(split)
    assert report.passed
    for (i, j), coords in report.decompositions.items():
        residual = lie.bracket(split.h_basis[i], split.m_basis[j])
        for c, y in zip(coords, split.m_basis):
            residual = residual - c * y
        assert residual.is_zero()


def test_twenty_seeded_betas():
    rng = random.Random(7)
    for _ in range(20):
        beta = Fraction(rng.randint(-120, 120), rng.randint(1, 12))
        split = splitting.build_splitting(3, beta)
        assert splitting.verify_reductive(split).passed
        assert splitting.direct_sum_rank(split) == 6


@pytest.mark.parametrize("n", [4, 5, 8])
def test_rigid_for_large_n(n):
    with pytest.raises(RigidSplittingError, match="rigid splitting"):
        splitting.build_splitting(n, 2)


def test_small_n_rejected():
    with pytest.raises(ValueError):
        splitting.build_splitting(2)


def test_adversarial_splitting_fails():
    g = lambda p: lie.generator(3, p)
    bad = ReductiveSplitting(3, Fraction(0), tuple(g(p) for p in lie.spatial_pairs(3)),
                             (g((0, 1)), g((0, 2)), g((1, 2))))
    report = splitting.verify_reductive(bad)
    assert not report.passed
    assert not report.direct_sum
    x, y = report.counterexample
    assert x in bad.h_basis and y in bad.m_basis
    # [T_13, T_01] has a T_03 component, which no element of m has
    c = lie.coordinates(lie.bracket(g((1, 3)), g((0, 1))))
    assert c[lie.basis_pairs(3).index((0, 3))] != 0


def test_schur_table():
    assert splitting.schur_dimension_table(6) == [(3, 1, 1), (4, 0, 0), (5, 0, 0), (6, 0, 0)]
    with pytest.raises(ValueError):
        splitting.schur_dimension_table(2)
