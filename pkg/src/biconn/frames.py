"""Orthonormal coframes on a chart grid: metric and spin connection.

Index conventions: ``coframe[a, mu] = e^a_mu``, ``frame[a, mu] = e_a^mu``,
frame indices a, b, c in 0..n with eta = diag(-1, 1, ..., 1), chart indices
mu, nu in 0..n.  Derivatives are second-order finite differences
(central inside, one-sided at the boundary).  A grid axis of length 1 is a
direction the frame does not depend on; its derivative is zero.

The spin connection is the torsion-free one, defined by Cartan's first
structure equation ``de^a = -w^a_b ^ e^b``.  Writing
``de^a = 1/2 Om^a_bc e^b ^ e^c`` and lowering with eta,

    w_abc = 1/2 (Om_abc - Om_bac + Om_cba),   w^ab_mu = eta^aa eta^bb w_abc e^c_mu

which is antisymmetric in (a, b), i.e. metric compatible.  With this sign
the frame e^0 = x dt, e^1 = dx has w^01 = dt.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lie
from .decomposition import decompose
from .fields import BIPair, Grid, SpinConnectionCoeffs, _array, _expect, _payload

DUALITY_TOL = 1e-10
DEGENERACY_TOL = 1e-8
MIN_STENCIL_POINTS = 5


def eta_diag(n: int) -> np.ndarray:
    return np.array([-1.0] + [1.0] * n)


def _points_last(arr: np.ndarray) -> np.ndarray:
    """(a, mu, *grid) -> (*grid, a, mu)."""
    return np.moveaxis(arr, (0, 1), (-2, -1))


def _points_first(arr: np.ndarray) -> np.ndarray:
    return np.moveaxis(arr, (-2, -1), (0, 1))


@dataclass
class FrameField:
    n: int
    grid: Grid
    coframe: np.ndarray
    frame: np.ndarray | None = None

    def __post_init__(self):
        m = self.n + 1
        if self.grid.ndim != m:
            raise ValueError(f"grid must have {m} axes for n={self.n}")
        if self.coframe.shape != (m, m) + self.grid.dims:
            raise ValueError(f"coframe shape {self.coframe.shape} != {(m, m) + self.grid.dims}")
        self.coframe = np.asarray(self.coframe, dtype=float)
        det = np.linalg.det(_points_last(self.coframe))
        if not np.all(np.abs(det) > DEGENERACY_TOL):
            raise ValueError("degenerate frame: |det e| <= 1e-8 somewhere")
        if self.frame is None:
            # inv(E)[mu, a] = e_a^mu
            self.frame = _points_first(np.swapaxes(np.linalg.inv(_points_last(self.coframe)), -1, -2))
        dual = np.einsum("am...,bm...->ab...", self.coframe, self.frame)
        ident = np.eye(m).reshape((m, m) + (1,) * self.grid.ndim)
        if np.abs(dual - ident).max() > DUALITY_TOL:
            raise ValueError("frame and coframe are not dual")


@dataclass
class MetricField:
    n: int
    grid: Grid
    g: np.ndarray
    """g[mu, nu, *grid]"""

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(_points_last(self.g))

    def negative_counts(self) -> np.ndarray:
        return (self.eigenvalues() < 0).sum(axis=-1)

    def has_lorentzian_signature(self) -> bool:
        ev = self.eigenvalues()
        return bool(np.all((ev < 0).sum(axis=-1) == 1) and np.all((ev > 0).sum(axis=-1) == self.n))


def metric_from_frame(frame: FrameField) -> MetricField:
    g = np.einsum("a,am...,an...->mn...", eta_diag(frame.n), frame.coframe, frame.coframe)
    g = 0.5 * (g + np.swapaxes(g, 0, 1))
    return MetricField(frame.n, frame.grid, g)


def chart_derivative(field: np.ndarray, grid: Grid, lead: int) -> np.ndarray:
    """d_rho of ``field`` whose last ``grid.ndim`` axes are the grid.

    Returns an array with a new leading rho axis.
    """
    out = np.zeros((grid.ndim,) + field.shape, dtype=field.dtype)
    for rho, size in enumerate(grid.dims):
        if size > 1:
            out[rho] = np.gradient(field, grid.spacing[rho], axis=lead + rho, edge_order=2)
    return out


def _check_stencil(grid: Grid):
    for size in grid.dims:
        if 1 < size < MIN_STENCIL_POINTS:
            raise ValueError(f"grid too small: axes need 1 or >= {MIN_STENCIL_POINTS} points, got {grid.dims}")


def coframe_derivatives(frame: FrameField) -> np.ndarray:
    """d_rho e^a_mu as array [rho, a, mu, *grid]."""
    _check_stencil(frame.grid)
    return chart_derivative(frame.coframe, frame.grid, 2)


def spin_connection_from_frame(frame: FrameField, dcoframe: np.ndarray | None = None) -> SpinConnectionCoeffs:
    """Torsion-free spin connection coefficients w^{ab}_mu.

    ``dcoframe[rho, a, mu, *grid]`` may supply exact derivatives; by default
    they are finite differences of the sampled coframe.
    """
    n = frame.n
    de = coframe_derivatives(frame) if dcoframe is None else dcoframe
    eta = eta_diag(n)
    # Om^a_{rho mu} = d_rho e^a_mu - d_mu e^a_rho
    om_chart = np.einsum("ram...->arm...", de) - np.einsum("mar...->arm...", de)
    om = np.einsum("arm...,br...,cm...->abc...", om_chart, frame.frame, frame.frame, optimize=True)
    om = eta.reshape((-1,) + (1,) * (om.ndim - 1)) * om
    w = 0.5 * (om - np.swapaxes(om, 0, 1) + np.einsum("cba...->abc...", om))
    w_up = np.einsum("a,b,abc...->abc...", eta, eta, w)
    w_chart = np.einsum("abc...,cm...->abm...", w_up, frame.coframe, optimize=True)
    values = np.stack([w_chart[a, b] for a, b in lie.basis_pairs(n)])
    return SpinConnectionCoeffs(n, values, frame.grid)


def _mixed_connection(omega: SpinConnectionCoeffs) -> np.ndarray:
    """w^a_{b mu} as array [a, b, mu, *grid]."""
    n = omega.n
    eta = eta_diag(n)
    full = np.stack([np.stack([omega.component(a, b) for b in range(n + 1)]) for a in range(n + 1)])
    return full * eta.reshape((1, -1) + (1,) * (full.ndim - 2))


def torsion_residual(frame: FrameField, omega: SpinConnectionCoeffs, dcoframe: np.ndarray | None = None) -> float:
    """max |d_rho e^a_mu - d_mu e^a_rho + w^a_{b rho} e^b_mu - w^a_{b mu} e^b_rho|."""
    de = coframe_derivatives(frame) if dcoframe is None else dcoframe
    wm = _mixed_connection(omega)
    term = np.einsum("abr...,bm...->arm...", wm, frame.coframe)
    torsion = (np.einsum("ram...->arm...", de) - np.einsum("mar...->arm...", de)
               + term - np.einsum("arm...->amr...", term))
    return float(np.abs(torsion).max())


def metric_compatibility_residual(frame: FrameField, omega: SpinConnectionCoeffs) -> float:
    """max |nabla_rho g_{mu nu}| with the Christoffels induced by ``omega``.

    Gamma^s_{rho mu} = e_a^s (d_rho e^a_mu + w^a_{b rho} e^b_mu); the metric
    derivative is a finite difference of g itself, so the residual measures
    the discretization error of the whole chain.
    """
    de = coframe_derivatives(frame)
    wm = _mixed_connection(omega)
    inner = de.transpose((1, 0, 2) + tuple(range(3, de.ndim))) + np.einsum("abr...,bm...->arm...", wm, frame.coframe)
    gamma = np.einsum("as...,arm...->srm...", frame.frame, inner)
    g = metric_from_frame(frame).g
    dg = chart_derivative(g, frame.grid, 2)
    cov = dg - np.einsum("srm...,sv...->rmv...", gamma, g) - np.einsum("srv...,ms...->rmv...", gamma, g)
    return float(np.abs(cov).max())


def bi_pipeline(frame: FrameField, beta) -> BIPair:
    return decompose(spin_connection_from_frame(frame), beta)


# -- containers -------------------------------------------------------------

def frame_to_json(frame: FrameField) -> dict:
    return {"kind": "frame", "n": frame.n, **frame.grid.header(),
            "layout": "coframe[a][mu][grid...]", "coframe": _payload(frame.coframe)}


def frame_from_json(data: dict) -> FrameField:
    _expect(data, "frame")
    n, grid = data["n"], Grid.from_header(data)
    return FrameField(n, grid, _array(data, "coframe", (n + 1, n + 1) + grid.dims))


def metric_to_json(metric: MetricField) -> dict:
    return {"kind": "metric", "n": metric.n, **metric.grid.header(), "layout": "g[mu][nu][grid...]",
            "lorentzian": metric.has_lorentzian_signature(), "g": _payload(metric.g)}
