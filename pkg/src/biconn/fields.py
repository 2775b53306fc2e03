"""Sampled fields on a uniform chart grid, and their JSON containers.

Every container is a JSON object with a header (``kind``, ``n``, ``dims``,
``spacing``, ``origin``, ``layout``) and flat C-order payload arrays.  A grid
axis of length 1 marks a direction the field does not depend on.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import lie


@dataclass(frozen=True)
class Grid:
    dims: tuple[int, ...]
    spacing: tuple[float, ...]
    origin: tuple[float, ...]

    def __post_init__(self):
        if not len(self.dims) == len(self.spacing) == len(self.origin):
            raise ValueError("dims, spacing and origin must have equal length")
        if any(d < 1 for d in self.dims) or any(h <= 0 for h in self.spacing):
            raise ValueError("grid needs positive sizes and spacings")

    @classmethod
    def uniform(cls, dims, lower, upper) -> "Grid":
        dims = tuple(int(d) for d in dims)
        spacing = tuple(float(u - l) / (d - 1) if d > 1 else 1.0 for d, l, u in zip(dims, lower, upper))
        return cls(dims, spacing, tuple(float(v) for v in lower))

    @property
    def ndim(self) -> int:
        return len(self.dims)

    def axis(self, mu: int) -> np.ndarray:
        return self.origin[mu] + self.spacing[mu] * np.arange(self.dims[mu])

    def mesh(self) -> list[np.ndarray]:
        return np.meshgrid(*(self.axis(mu) for mu in range(self.ndim)), indexing="ij")

    def header(self) -> dict:
        return {"dims": list(self.dims), "spacing": list(self.spacing), "origin": list(self.origin)}

    @classmethod
    def from_header(cls, data: dict) -> "Grid":
        return cls(tuple(int(d) for d in data["dims"]), tuple(float(h) for h in data["spacing"]),
                   tuple(float(o) for o in data["origin"]))


def n_rotation_components(n: int) -> int:
    return 3 if n == 3 else len(lie.spatial_pairs(n))


@dataclass
class SpinConnectionCoeffs:
    """w^{ab}_mu for a < b; ``values[pair, mu, *grid]`` with pairs in
    :func:`lie.basis_pairs` order."""
    n: int
    values: np.ndarray
    grid: Grid

    def __post_init__(self):
        expected = (len(lie.basis_pairs(self.n)), self.n + 1) + self.grid.dims
        if self.values.shape != expected:
            raise ValueError(f"connection shape {self.values.shape} != {expected}")

    def component(self, a: int, b: int) -> np.ndarray:
        """w^{ab} with the antisymmetric extension to a > b."""
        if a == b:
            return np.zeros_like(self.values[0])
        if a > b:
            return -self.values[lie.basis_pairs(self.n).index((b, a))]
        return self.values[lie.basis_pairs(self.n).index((a, b))]


@dataclass
class BIPair:
    """A^k_mu and K^k_mu over the grid.

    For n = 3, A is in the su(2) basis {1/2 tau_k} (k = 1, 2, 3).  For n > 3, A
    holds w^{ij} for i < j in :func:`lie.spatial_pairs` order.  K^k = w^{0k}.
    """
    n: int
    beta: object
    A: np.ndarray
    K: np.ndarray
    grid: Grid

    def __post_init__(self):
        tail = (self.n + 1,) + self.grid.dims
        if self.A.shape != (n_rotation_components(self.n),) + tail:
            raise ValueError(f"A has shape {self.A.shape}")
        if self.K.shape != (self.n,) + tail:
            raise ValueError(f"K has shape {self.K.shape}")


# -- JSON containers --------------------------------------------------------

def _payload(a: np.ndarray) -> list[float]:
    return [float(v) for v in np.asarray(a, dtype=float).ravel()]


def _array(data: dict, key: str, shape: tuple[int, ...]) -> np.ndarray:
    flat = np.asarray(data[key], dtype=float)
    if flat.size != int(np.prod(shape)):
        raise ValueError(f"payload '{key}' has {flat.size} entries, expected {int(np.prod(shape))}")
    return flat.reshape(shape)


def connection_to_json(omega: SpinConnectionCoeffs) -> dict:
    return {"kind": "spin_connection", "n": omega.n, **omega.grid.header(),
            "layout": "omega[pair][mu][grid...]", "pairs": [list(p) for p in lie.basis_pairs(omega.n)],
            "omega": _payload(omega.values)}


def connection_from_json(data: dict) -> SpinConnectionCoeffs:
    _expect(data, "spin_connection")
    n, grid = data["n"], Grid.from_header(data)
    shape = (len(lie.basis_pairs(n)), n + 1) + grid.dims
    return SpinConnectionCoeffs(n, _array(data, "omega", shape), grid)


def bi_to_json(pair: BIPair) -> dict:
    return {"kind": "bi_pair", "n": pair.n, "beta": float(pair.beta), **pair.grid.header(),
            "layout": "A[k][mu][grid...], K[k][mu][grid...]",
            "A": _payload(pair.A), "K": _payload(pair.K)}


def bi_from_json(data: dict) -> BIPair:
    _expect(data, "bi_pair")
    n, grid = data["n"], Grid.from_header(data)
    tail = (n + 1,) + grid.dims
    return BIPair(n, float(data["beta"]), _array(data, "A", (n_rotation_components(n),) + tail),
                  _array(data, "K", (n,) + tail), grid)


def _expect(data: dict, kind: str):
    if data.get("kind") != kind:
        raise ValueError(f"expected a '{kind}' container, got {data.get('kind')!r}")


def write_json(path, data: dict):
    Path(path).write_text(json.dumps(data, sort_keys=True) + "\n")


def read_json(path) -> dict:
    return json.loads(Path(path).read_text())
