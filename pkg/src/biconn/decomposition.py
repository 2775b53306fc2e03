"""The correspondence w <-> (A, K) for a fixed reductive splitting.

Summation convention: ``w = w^{ab} T_ab`` summed over *all* a, b with
``w^{ab} = -w^{ba}``, which equals ``2 sum_{a<b} w^{ab} T_ab``.  Storage keeps
a < b only, and the factor bookkeeping lives here.  For n = 3 and BI
parameter beta:

    A^k = 1/2 eps_ijk w^ij + beta w^0k     (coefficients on tau_k / 2)
    K^k = w^0k                             (coefficients on -(sigma_k + beta tau_k) / 2)

With a < b storage the full sum ``1/2 eps_ijk w^ij`` becomes
``sum_{i<j} eps_ijk w^ij``: e.g. w^12 = c alone gives A^3 = c.

For n > 3 only beta = 0 exists, A is the w^{ij} block (i < j) and K^k = w^{0k}.

All arithmetic is ring arithmetic (no division), so object arrays of
Fractions go through exactly.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import lie, su2
from .fields import BIPair, SpinConnectionCoeffs
from .splitting import RigidSplittingError, build_splitting
from .exact import solve


def _check_beta(n: int, beta):
    if n < 3:
        raise ValueError("BI variables are defined for n >= 3")
    if n > 3 and beta != 0:
        raise RigidSplittingError(f"rigid splitting: beta must be 0 for n={n}, got {beta}")


def _eps_terms(k: int):
    """(pair, sign) with sum_{i<j} eps_ijk w^ij = sum sign * w^pair."""
    return [((i, j), lie.levi_civita(i, j, k)) for i, j in lie.spatial_pairs(3) if lie.levi_civita(i, j, k)]


def decompose(omega: SpinConnectionCoeffs, beta) -> BIPair:
    n = omega.n
    _check_beta(n, beta)
    pairs = lie.basis_pairs(n)
    K = np.stack([omega.values[pairs.index((0, k))] for k in range(1, n + 1)])
    if n > 3:
        A = np.stack([omega.values[pairs.index(p)] for p in lie.spatial_pairs(n)])
        return BIPair(n, beta, A, K, omega.grid)
    rot = []
    for k in (1, 2, 3):
        acc = None
        for p, sign in _eps_terms(k):
            term = omega.values[pairs.index(p)] * sign
            acc = term if acc is None else acc + term
        rot.append(acc + K[k - 1] * beta)
    return BIPair(n, beta, np.stack(rot), K, omega.grid)


def recompose(pair: BIPair) -> SpinConnectionCoeffs:
    """Inverse of :func:`decompose`: w^0k = K^k, w^ij = eps_ijk (A^k - beta K^k)."""
    n = pair.n
    _check_beta(n, pair.beta)
    pairs = lie.basis_pairs(n)
    out = [None] * len(pairs)
    for k in range(1, n + 1):
        out[pairs.index((0, k))] = pair.K[k - 1]
    if n > 3:
        for idx, p in enumerate(lie.spatial_pairs(n)):
            out[pairs.index(p)] = pair.A[idx]
    else:
        rot = [pair.A[k] - pair.K[k] * pair.beta for k in range(3)]
        for i, j in lie.spatial_pairs(3):
            k = 6 - i - j
            out[pairs.index((i, j))] = rot[k - 1] * lie.levi_civita(i, j, k)
    return SpinConnectionCoeffs(n, np.stack(out), pair.grid)


# -- pointwise exact forms --------------------------------------------------

def bi_coefficients(w: dict, beta) -> tuple[list, list]:
    """(A, K) for one set of n = 3 coefficients ``w[(a, b)]``, a < b."""
    _check_beta(3, beta)
    K = [w[(0, k)] for k in (1, 2, 3)]
    A = [sum(sign * w[p] for p, sign in _eps_terms(k)) + beta * K[k - 1] for k in (1, 2, 3)]
    return A, K


def splitting_coordinates(w: dict, beta) -> tuple[list[Fraction], list[Fraction]]:
    """Project the n = 3 connection value onto h + m_beta by an exact solve.

    Returns (A, K) read off from the solved coordinates: A in the tau/2
    basis (tau_k / 2 corresponds to sum_{i<j} 2 eps_kij T_ij) and K on the
    basis vectors 2 (T_0k + beta psi(e_k)).
    """
    split = build_splitting(3, beta)
    value = lie.from_coordinates(3, [2 * Fraction(w[p]) for p in lie.basis_pairs(3)])
    cols = [lie.coordinates(x) for x in split.h_basis + split.m_basis]
    coords = solve(cols, lie.coordinates(value))
    if coords is None:
        raise AssertionError("h + m_beta does not span so(3,1)")
    h, m = coords[:3], coords[3:]
    sp = lie.spatial_pairs(3)
    A = [sum(Fraction(lie.levi_civita(k, i, j), 2) * h[sp.index((i, j))] for i, j in sp) for k in (1, 2, 3)]
    K = [c / 2 for c in m]
    return A, K


# -- the three-line identity in the Pauli basis -----------------------------

def _image(a: int, b: int):
    if a == b:
        return su2.CZERO
    if a > b:
        return su2.cscale(-1, lie.pauli_image((b, a)))
    return lie.pauli_image((a, b))


def _full(w: dict, a: int, b: int):
    if a == b:
        return Fraction(0)
    return w[(a, b)] if a < b else -w[(b, a)]


def display_lines(w: dict, beta) -> list:
    """The connection value written four ways as 2x2 Gaussian-rational matrices.

    0: w^{ab} T_ab summed over all a, b
    1: 2 w^{0k} T_0k + w^{ij} T_ij
    2: 2 w^{0k} (-1/4 sigma_k) + w^{ij} (1/4 eps_ij^k tau_k)
    3: w^{0k} (-1/2 (sigma_k + beta tau_k)) + A^k (1/2 tau_k)
    """
    w = {p: Fraction(v) for p, v in w.items()}
    beta = Fraction(beta)
    idx = range(4)
    line0 = su2.CZERO
    for a in idx:
        for b in idx:
            line0 = su2.cadd(line0, su2.cscale(_full(w, a, b), _image(a, b)))
    line1 = su2.CZERO
    for k in (1, 2, 3):
        line1 = su2.cadd(line1, su2.cscale(2 * w[(0, k)], _image(0, k)))
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            line1 = su2.cadd(line1, su2.cscale(_full(w, i, j), _image(i, j)))
    line2 = su2.CZERO
    for k in (1, 2, 3):
        line2 = su2.cadd(line2, su2.cscale(2 * w[(0, k)] * Fraction(-1, 4), su2.PAULI[k]))
        for i in (1, 2, 3):
            for j in (1, 2, 3):
                e = lie.levi_civita(i, j, k)
                if e:
                    line2 = su2.cadd(line2, su2.cscale(_full(w, i, j) * Fraction(e, 4), su2.TAU[k]))
    A, K = bi_coefficients(w, beta)
    line3 = su2.CZERO
    for k in (1, 2, 3):
        m_k = su2.cscale(Fraction(-1, 2), su2.cadd(su2.PAULI[k], su2.cscale(beta, su2.TAU[k])))
        line3 = su2.cadd(line3, su2.cscale(K[k - 1], m_k))
        line3 = su2.cadd(line3, su2.cscale(A[k - 1] / 2, su2.TAU[k]))
    return [line0, line1, line2, line3]


@dataclass
class Su2BasisReport:
    beta: Fraction
    change_of_basis: dict
    samples: int
    passed: bool
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"beta": str(self.beta), "samples": self.samples, "passed": self.passed,
                "change_of_basis": {f"T{a}{b}": {k: str(v) for k, v in row.items()}
                                    for (a, b), row in self.change_of_basis.items()},
                "failures": self.failures}


def change_of_basis(beta) -> dict:
    """T_ab in the basis ({tau_k/2}, {-(sigma_k + beta tau_k)/2}).

    Keys ``h1..h3`` are tau_k/2 coefficients, ``m1..m3`` the m_beta ones.
    T_0k = -sigma_k/4 = 1/2 m_k + beta/2 (tau_k/2); T_ij = 1/2 eps_ijk (tau_k/2).
    """
    beta = Fraction(beta)
    table = {}
    for a, b in lie.basis_pairs(3):
        row = {f"h{k}": Fraction(0) for k in (1, 2, 3)} | {f"m{k}": Fraction(0) for k in (1, 2, 3)}
        if a == 0:
            row[f"m{b}"] = Fraction(1, 2)
            row[f"h{b}"] = beta / 2
        else:
            k = 6 - a - b
            row[f"h{k}"] = Fraction(lie.levi_civita(a, b, k), 2)
        table[(a, b)] = row
    return table


def _check_change_of_basis(table: dict, beta) -> bool:
    for p, row in table.items():
        rebuilt = su2.CZERO
        for k in (1, 2, 3):
            rebuilt = su2.cadd(rebuilt, su2.cscale(row[f"h{k}"] / 2, su2.TAU[k]))
            m_k = su2.cscale(Fraction(-1, 2), su2.cadd(su2.PAULI[k], su2.cscale(beta, su2.TAU[k])))
            rebuilt = su2.cadd(rebuilt, su2.cscale(row[f"m{k}"], m_k))
        if rebuilt != lie.pauli_image(p):
            return False
    return True


def random_rational(rng: random.Random, bound: int = 10, max_den: int = 12) -> Fraction:
    return Fraction(rng.randint(-bound * max_den, bound * max_den), rng.randint(1, max_den))


def su2_basis_report(beta=0, samples: int = 100, seed: int = 0) -> Su2BasisReport:
    beta = Fraction(beta)
    table = change_of_basis(beta)
    failures = [] if _check_change_of_basis(table, beta) else ["change_of_basis"]
    rng = random.Random(seed)
    for s in range(samples):
        w = {p: random_rational(rng) for p in lie.basis_pairs(3)}
        lines = display_lines(w, beta)
        if any(line != lines[0] for line in lines[1:]):
            failures.append(s)
    return Su2BasisReport(beta, table, samples, not failures, failures)
