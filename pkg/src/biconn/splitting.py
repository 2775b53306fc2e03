"""Reductive splittings spin(n,1) = spin(n) + m and their intertwiners.

A complement to so(n) in so(n,1) has the form ``m = {T_0k + psi(e_k)}`` for a
linear map ``psi: W -> so(n)``, ``W = span(e_1..e_n)``.  It is Ad(Spin(n))
invariant iff ``psi`` intertwines the adjoint action on so(n) with the vector
action on W.

Spin(n) is connected for n >= 2, so group equivariance is equivalent to
equivariance under its Lie algebra, and the set of X in so(n) under which
``psi`` is equivariant is closed under brackets.  It is therefore enough to
impose

    [X, psi(e_k)] = psi(X e_k)

for a generating set of so(n); the adjacent rotations T_{i,i+1} generate it.
This turns the classification into an exact homogeneous linear system.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import lie
from .exact import nullspace, rank, solve
from .lie import LieElement, Pair

PsiMatrix = tuple[tuple[Fraction, ...], ...]


class RigidSplittingError(ValueError):
    """Raised for a nonzero BI parameter when n > 3 (no such splitting exists)."""


@dataclass(frozen=True)
class IntertwinerSpace:
    n: int
    basis: tuple[PsiMatrix, ...]
    """Each element maps W coordinates (columns k = 1..n) to so(n) coordinates
    (rows, in :func:`lie.spatial_pairs` order)."""

    @property
    def dim(self) -> int:
        return len(self.basis)

    def apply(self, index: int, k: int) -> LieElement:
        """psi_index(e_k) as an so(n,1) element."""
        col = [row[k - 1] for row in self.basis[index]]
        out = LieElement.zero(self.n)
        for c, p in zip(col, lie.spatial_pairs(self.n)):
            if c:
                out = out + c * lie.generator(self.n, p)
        return out


@lru_cache(maxsize=None)
def _adjoint_on_so_n(n: int, x: Pair) -> tuple[tuple[Fraction, ...], ...]:
    """Matrix of ad(T_x) restricted to so(n), in spatial_pairs coordinates."""
    sp = lie.spatial_pairs(n)
    full = lie.basis_pairs(n)
    pos = [full.index(p) for p in sp]
    cols = []
    gx = lie.generator(n, x)
    for p in sp:
        coords = lie.coordinates(lie.bracket(gx, lie.generator(n, p)))
        if any(coords[i] for i, q in enumerate(full) if q[0] == 0):
            raise AssertionError("so(n) is not bracket closed")
        cols.append([coords[i] for i in pos])
    return tuple(tuple(cols[j][i] for j in range(len(sp))) for i in range(len(sp)))


def _vector_action(n: int, x: Pair) -> tuple[tuple[Fraction, ...], ...]:
    """Spatial block of T_x acting on W (rows/cols k = 1..n)."""
    m = lie.generator(n, x).matrix
    return tuple(tuple(m[i][j] for j in range(1, n + 1)) for i in range(1, n + 1))


def equivariance_rows(n: int, gens: list[Pair]):
    """Sparse rows of ``ad(X) psi - psi X = 0`` over the unknowns psi[p][k].

    Unknown ``psi[p][k]`` (so(n) coordinate p, W index k) has column
    ``p * n + k``.
    """
    dim_h = len(lie.spatial_pairs(n))
    for x in gens:
        ad = _adjoint_on_so_n(n, x)
        act = _vector_action(n, x)
        for k in range(n):
            for q in range(dim_h):
                row: dict[int, Fraction] = {}
                # (ad(X) psi)(e_k)_q = sum_p ad[q][p] psi[p][k]
                for p in range(dim_h):
                    if ad[q][p]:
                        row[p * n + k] = row.get(p * n + k, 0) + ad[q][p]
                # psi(X e_k)_q = sum_l act[l][k] psi[q][l]
                for l in range(n):
                    if act[l][k]:
                        row[q * n + l] = row.get(q * n + l, 0) - act[l][k]
                row = {c: v for c, v in row.items() if v}
                if row:
                    yield row


def adjacent_generators(n: int) -> list[Pair]:
    return [(i, i + 1) for i in range(1, n)]


def _to_psi(vec, n: int) -> PsiMatrix:
    dim_h = len(lie.spatial_pairs(n))
    return tuple(tuple(vec[p * n + k] for k in range(n)) for p in range(dim_h))


def solve_intertwiners(n: int, gens: list[Pair] | None = None) -> IntertwinerSpace:
    """Exact basis of the intertwiners W -> so(n).

    ``gens`` defaults to the adjacent rotations; passing every so(n) pair
    gives the unreduced system (same answer, more rows).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    dim_h = len(lie.spatial_pairs(n))
    gens = adjacent_generators(n) if gens is None else gens
    ncols = dim_h * n
    basis = nullspace(equivariance_rows(n, gens), ncols)
    return IntertwinerSpace(n, tuple(_to_psi(v, n) for v in basis))


def check_intertwiner(n: int, psi: PsiMatrix) -> bool:
    """Every so(n) generator satisfies the equivariance equation exactly."""
    flat = {p * n + k: psi[p][k] for p in range(len(psi)) for k in range(n)}
    for row in equivariance_rows(n, list(lie.spatial_pairs(n))):
        if sum(v * flat[c] for c, v in row.items()):
            return False
    return True


@lru_cache(maxsize=None)
def normalized_intertwiner() -> PsiMatrix:
    """The n = 3 intertwiner scaled so psi(e_3) has T_12 coordinate -1.

    With this sign ``m_beta = span{T_0k + beta psi(e_k)}`` is the complement
    whose coordinates reproduce A^k = 1/2 eps_ijk w^ij + beta w^0k.  The
    result is psi(e_k) = -1/2 eps_kij T_ij, i.e. psi(e_1) = -T_23,
    psi(e_2) = T_13, psi(e_3) = -T_12.
    """
    space = solve_intertwiners(3)
    if space.dim != 1:
        raise AssertionError(f"expected a 1-dimensional intertwiner space, got {space.dim}")
    psi = space.basis[0]
    row12 = lie.spatial_pairs(3).index((1, 2))
    scale = Fraction(-1) / psi[row12][2]
    return tuple(tuple(scale * v for v in row) for row in psi)


@dataclass(frozen=True)
class ReductiveSplitting:
    n: int
    beta: Fraction
    h_basis: tuple[LieElement, ...]
    m_basis: tuple[LieElement, ...]


def build_splitting(n: int, beta=0) -> ReductiveSplitting:
    if n < 3:
        raise ValueError("splittings are classified for n >= 3")
    beta = Fraction(beta)
    h = tuple(lie.generator(n, p) for p in lie.spatial_pairs(n))
    if n > 3:
        if beta:
            raise RigidSplittingError(
                f"rigid splitting: no reductive splitting with beta={beta} exists for n={n}")
        m = tuple(lie.generator(n, (0, k)) for k in range(1, n + 1))
        return ReductiveSplitting(n, beta, h, m)
    space = IntertwinerSpace(3, (normalized_intertwiner(),))
    m = tuple(lie.generator(3, (0, k)) + beta * space.apply(0, k) for k in range(1, 4))
    return ReductiveSplitting(n, beta, h, m)


def direct_sum_rank(split: ReductiveSplitting) -> int:
    rows = [lie.coordinates(x) for x in split.h_basis + split.m_basis]
    return rank(rows, len(lie.basis_pairs(split.n)))


@dataclass
class ReductiveReport:
    n: int
    beta: Fraction
    passed: bool
    direct_sum: bool
    decompositions: dict = field(default_factory=dict)
    counterexample: tuple | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.n, "beta": str(self.beta), "passed": self.passed,
            "direct_sum": self.direct_sum,
            "counterexample": None if self.counterexample is None else [
                [str(c) for c in lie.coordinates(self.counterexample[0])],
                [str(c) for c in lie.coordinates(self.counterexample[1])]],
            "decompositions": {f"{i},{j}": [str(c) for c in v] for (i, j), v in self.decompositions.items()},
        }


def verify_reductive(split: ReductiveSplitting) -> ReductiveReport:
    """Check [h, m] in span(m) exactly, basis element by basis element.

    ``decompositions[(i, j)]`` holds the m-coordinates of [h_i, m_j]; the
    first failing pair, if any, is returned as the counterexample.
    """
    m_cols = [lie.coordinates(y) for y in split.m_basis]
    ok_sum = direct_sum_rank(split) == len(lie.basis_pairs(split.n))
    report = ReductiveReport(split.n, split.beta, True, ok_sum)
    for i, x in enumerate(split.h_basis):
        for j, y in enumerate(split.m_basis):
            coords = solve(m_cols, lie.coordinates(lie.bracket(x, y)))
            if coords is None:
                report.passed = False
                report.counterexample = (x, y)
                return report
            report.decompositions[i, j] = coords
    report.passed = ok_sum
    return report


def schur_dimension_table(n_max: int) -> list[tuple[int, int, int]]:
    """Rows (n, dim of intertwiner space, dimension of the splitting family)."""
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    rows = []
    for n in range(3, n_max + 1):
        d = solve_intertwiners(n).dim
        # splittings are parametrized affinely by the intertwiner space
        rows.append((n, d, d))
    return rows


__all__ = [
    "IntertwinerSpace", "ReductiveSplitting", "ReductiveReport", "RigidSplittingError",
    "build_splitting", "check_intertwiner", "direct_sum_rank", "equivariance_rows",
    "normalized_intertwiner", "schur_dimension_table", "solve_intertwiners", "verify_reductive",
]
