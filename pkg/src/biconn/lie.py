"""Matrix realization of so(n,1) in the bivector basis T_ab.

Matrices act on column vectors; entry ``M[a][b]`` is the coefficient of
``e_a`` in ``M e_b``.  The metric is ``eta = diag(-1, 1, ..., 1)``.  The
generator ``T_ab`` acts by

    T_ab(v) = 1/2 (eta(e_a, v) e_b - eta(e_b, v) e_a)

Algebra-level objects are exact; :func:`orbit_map` is the one place that
works in floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy.linalg import expm

from . import clifford
from .su2 import CZERO, PAULI, TAU, cadd, ccomm, cscale

Pair = tuple[int, int]
ExactMatrix = tuple[tuple[Fraction, ...], ...]

HYPERBOLOID_TOL = 1e-12


def eta(n: int, a: int) -> int:
    return -1 if a == 0 else 1


@lru_cache(maxsize=None)
def basis_pairs(n: int) -> tuple[Pair, ...]:
    """All (a, b) with 0 <= a < b <= n, lexicographic."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return tuple(combinations(range(n + 1), 2))


@lru_cache(maxsize=None)
def spatial_pairs(n: int) -> tuple[Pair, ...]:
    """The so(n) pairs (i, j) with 1 <= i < j <= n."""
    return tuple(combinations(range(1, n + 1), 2))


def levi_civita(*idx: int) -> int:
    """Permutation sign of ``idx`` relative to sorted order; 0 on repeats."""
    if len(set(idx)) != len(idx):
        return 0
    sign = 1
    idx = list(idx)
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class LieElement:
    n: int
    matrix: ExactMatrix

    def __post_init__(self):
        size = self.n + 1
        if len(self.matrix) != size or any(len(r) != size for r in self.matrix):
            raise ValueError(f"matrix must be {size}x{size}")

    @classmethod
    def zero(cls, n: int) -> "LieElement":
        z = Fraction(0)
        return cls(n, tuple(tuple(z for _ in range(n + 1)) for _ in range(n + 1)))

    @classmethod
    def from_rows(cls, n: int, rows) -> "LieElement":
        return cls(n, tuple(tuple(Fraction(v) for v in r) for r in rows))

    def _check(self, other: "LieElement"):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: n={self.n} vs n={other.n}")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        return LieElement(self.n, tuple(tuple(x + y for x, y in zip(r, s))
                                        for r, s in zip(self.matrix, other.matrix)))

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __neg__(self) -> "LieElement":
        return LieElement(self.n, tuple(tuple(-x for x in r) for r in self.matrix))

    def __mul__(self, c) -> "LieElement":
        c = Fraction(c)
        return LieElement(self.n, tuple(tuple(c * x for x in r) for r in self.matrix))

    __rmul__ = __mul__

    def __matmul__(self, other: "LieElement") -> ExactMatrix:
        self._check(other)
        cols = list(zip(*other.matrix))
        return tuple(tuple(sum((x * y for x, y in zip(r, c)), Fraction(0)) for c in cols)
                     for r in self.matrix)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.matrix for x in r)

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        return tuple(sum((x * Fraction(y) for x, y in zip(r, v)), Fraction(0)) for r in self.matrix)

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.matrix])

    def to_json(self) -> dict:
        return {"n": self.n,
                "entries": [[str(x.numerator), str(x.denominator)] for r in self.matrix for x in r]}

    @classmethod
    def from_json(cls, data) -> "LieElement":
        n = data["n"]
        flat = [Fraction(int(p), int(q)) for p, q in data["entries"]]
        size = n + 1
        if len(flat) != size * size:
            raise ValueError("entry count does not match n")
        return cls(n, tuple(tuple(flat[i * size:(i + 1) * size]) for i in range(size)))


def is_eta_antisymmetric(x: LieElement) -> bool:
    """M^T eta + eta M == 0, entrywise."""
    m = x.matrix
    size = x.n + 1
    return all(m[b][a] * eta(x.n, b) + eta(x.n, a) * m[a][b] == 0
               for a in range(size) for b in range(size))


@lru_cache(maxsize=None)
def generator(n: int, idx: Pair) -> LieElement:
    a, b = idx
    if n < 1 or not 0 <= a < b <= n:
        raise IndexError(f"generator index {idx} out of range for n={n}")
    half = Fraction(1, 2)
    size = n + 1
    m = [[Fraction(0)] * size for _ in range(size)]
    # column c holds T_ab(e_c); only c = a and c = b are nonzero
    m[b][a] += half * eta(n, a)
    m[a][b] -= half * eta(n, b)
    return LieElement(n, tuple(tuple(r) for r in m))


def generators(n: int) -> list[LieElement]:
    return [generator(n, p) for p in basis_pairs(n)]


def bracket(x: LieElement, y: LieElement) -> LieElement:
    xy = x @ y
    yx = y @ x
    return LieElement(x.n, tuple(tuple(p - q for p, q in zip(r, s)) for r, s in zip(xy, yx)))


def coordinates(x: LieElement) -> tuple[Fraction, ...]:
    """Coefficients of ``x`` in the T_ab basis (order of :func:`basis_pairs`).

    Raises ValueError if ``x`` is not in so(n,1).
    """
    if not is_eta_antisymmetric(x):
        raise ValueError("matrix is not eta-antisymmetric")
    # T_ab has M[b][a] = eta_aa / 2 and no other generator touches that slot
    return tuple(2 * eta(x.n, a) * x.matrix[b][a] for a, b in basis_pairs(x.n))


def from_coordinates(n: int, coords: Sequence) -> LieElement:
    out = LieElement.zero(n)
    for c, p in zip(coords, basis_pairs(n)):
        if c:
            out = out + Fraction(c) * generator(n, p)
    return out


def structure_constants(n: int) -> dict[tuple[Pair, Pair], tuple[Fraction, ...]]:
    """[T_p, T_q] in T-coordinates for every ordered pair of basis indices."""
    gens = {p: generator(n, p) for p in basis_pairs(n)}
    return {(p, q): coordinates(bracket(gens[p], gens[q])) for p in gens for q in gens}


def bracket_table_rows(n: int):
    """(p, q, coords) for p < q lexicographically."""
    pairs = basis_pairs(n)
    consts = structure_constants(n)
    for i, p in enumerate(pairs):
        for q in pairs[i + 1:]:
            yield p, q, consts[p, q]


def bracket_table_csv(n: int) -> str:
    pairs = basis_pairs(n)
    header = "left,right," + ",".join(f"T{a}{b}" for a, b in pairs)
    lines = [header]
    for p, q, coords in bracket_table_rows(n):
        lines.append(f"\"({p[0]},{p[1]})\",\"({q[0]},{q[1]})\"," + ",".join(str(c) for c in coords))
    return "\n".join(lines) + "\n"


# -- Clifford <-> matrix ----------------------------------------------------

def _bivector_coordinates(x: clifford.Multivector, n: int) -> tuple[Fraction, ...]:
    if x.grades() - {2}:
        raise ValueError("commutator left the bivector subspace")
    return tuple(x.coefficient((a, b)) for a, b in basis_pairs(n))


@dataclass
class IsoReport:
    n: int
    alpha: Fraction | None
    passed: bool
    pairs_checked: int
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"n": self.n, "alpha": None if self.alpha is None else str(self.alpha),
                "passed": self.passed, "pairs_checked": self.pairs_checked,
                "failures": [[list(p), list(q)] for p, q in self.failures]}


def clifford_matrix_iso_check(n: int) -> IsoReport:
    """Find alpha with ``alpha * e_a e_b -> T_ab`` a Lie algebra isomorphism.

    With ``phi(e_a e_b) = T_ab / alpha`` the bracket condition reads
    ``alpha * sum_r c_r T_r = [T_p, T_q]`` where ``c`` are the Clifford
    structure constants, so one nonzero bracket fixes alpha and every other
    pair must agree.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    sig = clifford.Signature.lorentzian(n)
    pairs = basis_pairs(n)
    gens = {p: generator(n, p) for p in pairs}
    table = []
    for p in pairs:
        for q in pairs:
            cl = _bivector_coordinates(
                clifford.commutator(clifford.blade(sig, *p), clifford.blade(sig, *q)), n)
            table.append((p, q, cl, coordinates(bracket(gens[p], gens[q]))))
    alpha = next((m / c for _, _, cl, mat in table for c, m in zip(cl, mat) if c), None)
    failures = [(p, q) for p, q, cl, mat in table
                if alpha is None or any(alpha * c != m for c, m in zip(cl, mat))]
    return IsoReport(n, alpha, alpha is not None and not failures, len(pairs) ** 2, failures)


# -- Pauli identification (n = 3) -------------------------------------------

def pauli_image(p: Pair):
    """T_0k -> -1/4 sigma_k, T_ij -> 1/4 eps_ijk tau_k."""
    a, b = p
    if a == 0:
        return cscale(Fraction(-1, 4), PAULI[b])
    out = CZERO
    for k in (1, 2, 3):
        e = levi_civita(a, b, k)
        if e:
            out = cadd(out, cscale(Fraction(e, 4), TAU[k]))
    return out


@dataclass
class PauliReport:
    passed: bool
    orientation: int | None
    pairs_checked: int
    homomorphism: bool
    anti_homomorphism: bool
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "orientation": self.orientation,
                "pairs_checked": self.pairs_checked, "homomorphism": self.homomorphism,
                "anti_homomorphism": self.anti_homomorphism,
                "failures": [[list(p), list(q)] for p, q in self.failures]}


def pauli_structure_check() -> PauliReport:
    """Compare so(3,1) brackets with 2x2 brackets under the Pauli assignment.

    For each unordered pair p < q the matrix bracket [T_p, T_q] is expanded in
    the T basis and pushed through the assignment; the result is compared with
    the commutator of the images.  With the column-vector convention used here
    the two differ by a global sign (the assignment reverses brackets), which
    is still a consistent identification: ``X -> -phi(X)`` is then a
    homomorphism.  ``orientation`` is +1 or -1 accordingly and the check
    passes iff one orientation fits every pair.
    """
    n = 3
    pairs = basis_pairs(n)
    consts = structure_constants(n)
    images = {p: pauli_image(p) for p in pairs}
    plus, minus = [], []
    checked = 0
    for i, p in enumerate(pairs):
        for q in pairs[i + 1:]:
            checked += 1
            lhs = CZERO
            for c, r in zip(consts[p, q], pairs):
                if c:
                    lhs = cadd(lhs, cscale(c, images[r]))
            rhs = ccomm(images[p], images[q])
            if lhs != rhs:
                plus.append((p, q))
            if lhs != cscale(-1, rhs):
                minus.append((p, q))
    hom, anti = not plus, not minus
    orientation = 1 if hom else (-1 if anti else None)
    failures = [] if orientation else (plus if len(plus) <= len(minus) else minus)
    return PauliReport(orientation is not None, orientation, checked, hom, anti, failures)


# -- hyperboloid orbit ------------------------------------------------------

@dataclass(frozen=True)
class HyperboloidPoint:
    t: float
    x: tuple[float, ...]

    @property
    def residual(self) -> float:
        """-t^2 + |x|^2 + 1, zero on the hyperboloid."""
        return -self.t * self.t + sum(v * v for v in self.x) + 1.0

    def as_array(self) -> np.ndarray:
        return np.array((self.t,) + self.x)


@lru_cache(maxsize=None)
def _float_generators(n: int) -> np.ndarray:
    return np.stack([generator(n, p).to_numpy() for p in basis_pairs(n)])


def lie_matrix(n: int, params: Sequence[float]) -> np.ndarray:
    params = np.asarray(params, dtype=float)
    if params.shape != (len(basis_pairs(n)),):
        raise ValueError(f"expected {len(basis_pairs(n))} parameters, got shape {params.shape}")
    if not np.all(np.isfinite(params)):
        raise ValueError("parameters must be finite")
    return np.tensordot(params, _float_generators(n), axes=1)


def orbit_map(n: int, params: Sequence[float]) -> HyperboloidPoint:
    """exp(sum_ab c_ab T_ab) applied to the apex x0 = (1, 0, ..., 0)."""
    g = expm(lie_matrix(n, params))
    v = g[:, 0]
    return HyperboloidPoint(float(v[0]), tuple(float(c) for c in v[1:]))


def boost_params(n: int, direction: int, rapidity: float) -> np.ndarray:
    """Parameters of the standard boost along e_direction.

    T_0k sends e_0 to -e_k / 2, so the coefficient is -2 * rapidity.
    """
    params = np.zeros(len(basis_pairs(n)))
    params[basis_pairs(n).index((0, direction))] = -2.0 * rapidity
    return params


@dataclass
class StabilizerReport:
    n: int
    annihilating: list
    moving: list
    passed: bool

    def to_dict(self) -> dict:
        return {"n": self.n, "annihilating": [list(p) for p in self.annihilating],
                "moving": [list(p) for p in self.moving], "passed": self.passed}


def stabilizer_check(n: int) -> StabilizerReport:
    """so(n) generators fix the apex exactly; the T_0k move it."""
    if n < 2:
        raise ValueError("n must be >= 2")
    x0 = (1,) + (0,) * n
    annihilating, moving = [], []
    for p in basis_pairs(n):
        image = generator(n, p).apply(x0)
        (moving if any(image) else annihilating).append(p)
    ok = annihilating == list(spatial_pairs(n)) and moving == [(0, k) for k in range(1, n + 1)]
    return StabilizerReport(n, annihilating, moving, ok)
