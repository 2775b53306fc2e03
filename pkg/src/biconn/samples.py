"""Closed-form coframes used by tests, scripts and the CLI.

Each builder maps chart coordinates ``x[mu]`` (arrays, possibly complex) to
``e^a_mu`` with shape ``(n+1, n+1, *x.shape[1:])``.  Complex support makes
complex-step differentiation available for exact reference derivatives.
"""
from __future__ import annotations

from typing import Callable

import numpy as np

from .fields import Grid
from .frames import FrameField

CoframeFn = Callable[[np.ndarray], np.ndarray]


def identity_coframe(n: int) -> CoframeFn:
    def fn(x):
        out = np.zeros((n + 1, n + 1) + x.shape[1:], dtype=x.dtype)
        for a in range(n + 1):
            out[a, a] = 1
        return out
    return fn


def rindler_coframe(n: int, lapse: Callable = lambda s: s) -> CoframeFn:
    """e^0 = lapse(x^1) dt, e^i = dx^i.  The torsion-free w^01_t is lapse'(x^1)."""
    base = identity_coframe(n)

    def fn(x):
        out = base(x)
        out[0, 0] = lapse(x[1])
        return out
    return fn


def twisted_coframe(n: int, amplitude: float = 1.0) -> CoframeFn:
    """A boosted, rotated and stretched coframe whose spatial slices are curved.

    e^a_mu = B(x)^a_b R(x)^b_c D(x)^c_mu, with B a boost in the (0, 1) plane, R a
    rotation in the (n-1, n) plane and D diagonal.  It depends only on the
    spatial coordinates, so a grid axis of length 1 along t is allowed.
    """
    def fn(x):
        shape = x.shape[1:]
        s = x[1:]
        chi = 0.3 * amplitude * np.sin(s[0] + 0.5 * s[-1])
        theta = 0.4 * amplitude * np.cos(s[-2] - s[0])
        diag = [1 + 0.2 * amplitude * np.sin(s[0] + s[1])] + [
            1 + 0.1 * amplitude * np.cos((i + 1) * s[(i + 1) % n] + 0.3) for i in range(n)]
        out = np.zeros((n + 1, n + 1) + shape, dtype=np.result_type(x, float))
        for a in range(n + 1):
            out[a, a] = diag[a]
        rot = out.copy()
        p, q = n - 1, n
        rot[p] = np.cos(theta) * out[p] - np.sin(theta) * out[q]
        rot[q] = np.sin(theta) * out[p] + np.cos(theta) * out[q]
        boosted = rot.copy()
        boosted[0] = np.cosh(chi) * rot[0] + np.sinh(chi) * rot[1]
        boosted[1] = np.sinh(chi) * rot[0] + np.cosh(chi) * rot[1]
        return boosted
    return fn


def sample_coordinates(grid: Grid) -> np.ndarray:
    return np.stack(grid.mesh())


def frame_from_function(n: int, grid: Grid, fn: CoframeFn) -> FrameField:
    return FrameField(n, grid, np.real(fn(sample_coordinates(grid))))


def exact_coframe_derivatives(grid: Grid, fn: CoframeFn, step: float = 1e-30) -> np.ndarray:
    """d_rho e^a_mu by complex-step differentiation, array [rho, a, mu, *grid].

    Axes of length 1 get zero derivative, matching the finite-difference
    convention; the frame must not depend on those coordinates.
    """
    x = sample_coordinates(grid).astype(complex)
    out = []
    for rho in range(grid.ndim):
        if grid.dims[rho] == 1:
            out.append(np.zeros((grid.ndim, grid.ndim) + grid.dims))
            continue
        xs = x.copy()
        xs[rho] += 1j * step
        out.append(np.imag(fn(xs)) / step)
    return np.stack(out)
