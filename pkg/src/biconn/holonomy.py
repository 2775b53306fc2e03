"""SU(2) holonomies of a BI connection along discrete loops.

With ``A_mu = A^k_mu tau_k / 2`` (anti-Hermitian), each loop segment from
``p`` to ``q`` contributes ``exp(-A_mu(midpoint) (q - p)^mu)`` and segments
are composed in path order, later ones on the left.  This is parallel
transport for ``D = d + A``, whose curvature is

    F_{mu nu} = d_mu A_nu - d_nu A_mu + [A_mu, A_nu].

For a small square of side h traversed first along mu, then along nu, the
holonomy is ``I - h^2 F_{mu nu} + O(h^3)``; traversed nu-first it is
``I + h^2 F_{mu nu} + O(h^3)``.

The connection between grid points is multilinear interpolation of the
samples.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from . import su2
from .decomposition import decompose
from .fields import BIPair, SpinConnectionCoeffs

RENORMALIZE_EVERY = 64
_STEP_SLACK = 1e-9


@dataclass
class LoopPath:
    points: np.ndarray
    """(N, n+1) chart coordinates; first and last rows equal."""

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.points.ndim != 2 or len(self.points) < 2:
            raise ValueError("a loop needs at least two points")
        if not np.array_equal(self.points[0], self.points[-1]):
            raise ValueError("open path: first and last points differ")

    def reversed(self) -> "LoopPath":
        return LoopPath(self.points[::-1].copy())

    def repeated(self, times: int) -> "LoopPath":
        return LoopPath(np.concatenate([self.points] + [self.points[1:]] * (times - 1)))

    def subdivided(self, parts: int = 2) -> "LoopPath":
        p = self.points
        t = np.arange(parts) / parts
        fine = (p[:-1, None, :] + t[None, :, None] * (p[1:] - p[:-1])[:, None, :]).reshape(-1, p.shape[1])
        return LoopPath(np.vstack([fine, p[-1:]]))

    def to_json(self) -> list:
        return self.points.tolist()

    @classmethod
    def from_json(cls, data) -> "LoopPath":
        if isinstance(data, dict):
            data = data["points"]
        return cls(np.asarray(data, dtype=float))

    @classmethod
    def read(cls, path) -> "LoopPath":
        return cls.from_json(json.loads(Path(path).read_text()))


def square_loop(corner, mu: int, nu: int, side: float, steps_per_side: int = 1) -> LoopPath:
    """Square starting at ``corner``: +mu, +nu, -mu, -nu."""
    corner = np.asarray(corner, dtype=float)
    e_mu = np.zeros_like(corner)
    e_nu = np.zeros_like(corner)
    e_mu[mu] = side
    e_nu[nu] = side
    verts = [corner, corner + e_mu, corner + e_mu + e_nu, corner + e_nu, corner]
    t = np.arange(steps_per_side) / steps_per_side
    pts = [a + s * (b - a) for a, b in zip(verts[:-1], verts[1:]) for s in t]
    pts.append(corner.copy())
    return LoopPath(np.array(pts))


class ConnectionSampler:
    """Multilinear interpolation of A^k_mu at arbitrary chart points."""

    def __init__(self, pair: BIPair):
        if pair.n != 3:
            raise ValueError("holonomies are SU(2)-valued and need n = 3")
        grid = pair.grid
        self.grid = grid
        self.live = [mu for mu, d in enumerate(grid.dims) if d > 1]
        values = np.moveaxis(pair.A, (0, 1), (-2, -1))
        values = values.reshape(tuple(grid.dims[mu] for mu in self.live) + (3, grid.ndim))
        if self.live:
            self._interp = RegularGridInterpolator([grid.axis(mu) for mu in self.live], values)
        else:
            self._const = values
        self.lower = np.array([grid.origin[mu] for mu in self.live])
        self.upper = np.array([grid.origin[mu] + grid.spacing[mu] * (grid.dims[mu] - 1) for mu in self.live])

    def inside(self, points: np.ndarray) -> bool:
        if not self.live:
            return True
        p = points[:, self.live]
        return bool(np.all(p >= self.lower) and np.all(p <= self.upper))

    def __call__(self, points: np.ndarray) -> np.ndarray:
        """A^k_mu at each point, shape (N, 3, n+1)."""
        points = np.atleast_2d(points)
        if not self.live:
            return np.broadcast_to(self._const, (len(points),) + self._const.shape)
        if not self.inside(points):
            raise ValueError("loop exits the grid")
        return self._interp(points[:, self.live])

    def matrices(self, point) -> np.ndarray:
        """A_mu = A^k_mu tau_k / 2 at one point, shape (n+1, 2, 2)."""
        a = self(np.asarray(point, dtype=float)[None, :])[0]
        return np.einsum("km,kij->mij", a, su2.HALF_TAU)


def _check_steps(loop: LoopPath, pair: BIPair):
    grid = pair.grid
    if loop.points.shape[1] != grid.ndim:
        raise ValueError(f"loop points need {grid.ndim} coordinates")
    steps = np.abs(np.diff(loop.points, axis=0))
    for mu, d in enumerate(grid.dims):
        if d > 1 and np.any(steps[:, mu] > grid.spacing[mu] * (1 + _STEP_SLACK)):
            raise ValueError("consecutive loop points must lie within one grid cell")


def holonomy(pair: BIPair, loop: LoopPath, sampler: ConnectionSampler | None = None) -> np.ndarray:
    """Path-ordered product of segment exponentials; a 2x2 SU(2) matrix."""
    sampler = sampler or ConnectionSampler(pair)
    _check_steps(loop, pair)
    if not sampler.inside(loop.points):
        raise ValueError("loop exits the grid")
    p = loop.points
    delta = np.diff(p, axis=0)
    mids = 0.5 * (p[:-1] + p[1:])
    a = sampler(mids)
    # exponent -A^k_mu dx^mu (tau_k / 2)
    segs = su2.exp_half_tau(-np.einsum("skm,sm->sk", a, delta))
    u = np.eye(2, dtype=complex)
    for i, s in enumerate(segs, 1):
        u = s @ u
        if i % RENORMALIZE_EVERY == 0:
            u = su2.project_su2(u)
    return su2.project_su2(u)


def curvature_at(pair: BIPair, point, mu: int, nu: int, step: float = 1e-4,
                 sampler: ConnectionSampler | None = None) -> np.ndarray:
    """F_{mu nu} at ``point`` from central differences of the sampled A."""
    sampler = sampler or ConnectionSampler(pair)
    point = np.asarray(point, dtype=float)

    def d(axis: int, comp: int) -> np.ndarray:
        if pair.grid.dims[axis] == 1:
            return np.zeros((2, 2), dtype=complex)
        e = np.zeros_like(point)
        e[axis] = step
        return (sampler.matrices(point + e)[comp] - sampler.matrices(point - e)[comp]) / (2 * step)

    a = sampler.matrices(point)
    return d(mu, nu) - d(nu, mu) + a[mu] @ a[nu] - a[nu] @ a[mu]


@dataclass
class HolonomySweep:
    betas: list[float]
    matrices: list[np.ndarray]

    @property
    def traces(self) -> list[complex]:
        return [complex(np.trace(u)) for u in self.matrices]

    def to_dict(self) -> dict:
        return {"betas": [float(b) for b in self.betas],
                "traces": [[t.real, t.imag] for t in self.traces],
                "matrices": [[[[z.real, z.imag] for z in row] for row in u] for u in self.matrices]}

    def to_csv(self) -> str:
        lines = ["beta,trace_re,trace_im"]
        lines += [f"{b!r},{t.real!r},{t.imag!r}" for b, t in zip(self.betas, self.traces)]
        return "\n".join(lines) + "\n"


def compare_holonomies(omega: SpinConnectionCoeffs, betas, loop: LoopPath) -> HolonomySweep:
    mats = [holonomy(decompose(omega, float(b)), loop) for b in betas]
    return HolonomySweep([float(b) for b in betas], mats)


def holonomy_to_json(u: np.ndarray) -> dict:
    return {"matrix": [[[z.real, z.imag] for z in row] for row in u],
            "trace": [complex(np.trace(u)).real, complex(np.trace(u)).imag]}


def parse_sweep(spec: str) -> list[float]:
    """'a:b:steps' -> ``steps`` equally spaced values from a to b inclusive."""
    try:
        a, b, steps = spec.split(":")
        steps = int(steps)
        lo, hi = float(a), float(b)
    except ValueError as exc:
        raise ValueError(f"bad sweep '{spec}', expected a:b:steps") from exc
    if steps < 1:
        raise ValueError("sweep needs at least one step")
    return np.linspace(lo, hi, steps).tolist() if steps > 1 else [lo]
