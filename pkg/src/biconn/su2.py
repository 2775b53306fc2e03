"""2x2 complex matrices: exact Gaussian-rational helpers and numeric SU(2).

Exact matrices are ``(re, im)`` pairs of 2x2 Fraction tuples.  Numeric
elements are plain ``complex128`` arrays.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

UNITARITY_TOL = 1e-10


# -- exact ------------------------------------------------------------------

def cmat(re, im=((0, 0), (0, 0))):
    return (tuple(tuple(Fraction(v) for v in r) for r in re),
            tuple(tuple(Fraction(v) for v in r) for r in im))


def cmul(x, y):
    def mm(a, b):
        return tuple(tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)) for i in range(2))

    def add(a, b, s=1):
        return tuple(tuple(a[i][j] + s * b[i][j] for j in range(2)) for i in range(2))
    (a, b), (c, d) = x, y
    return add(mm(a, c), mm(b, d), -1), add(mm(a, d), mm(b, c))


def cadd(x, y, s=1):
    return tuple(tuple(tuple(x[k][i][j] + s * y[k][i][j] for j in range(2)) for i in range(2))
                 for k in range(2))


def cscale(c, x):
    c = Fraction(c)
    return tuple(tuple(tuple(c * v for v in r) for r in x[k]) for k in range(2))


def ccomm(x, y):
    return cadd(cmul(x, y), cmul(y, x), -1)


def ctimes_i(x):
    re, im = x
    return cscale(-1, (im, im))[0], re


def to_complex(x) -> np.ndarray:
    re, im = x
    return np.array([[float(re[i][j]) + 1j * float(im[i][j]) for j in range(2)] for i in range(2)])


CZERO = cmat(((0, 0), (0, 0)))

PAULI = {
    1: cmat(((0, 1), (1, 0))),
    2: cmat(((0, 0), (0, 0)), ((0, -1), (1, 0))),
    3: cmat(((1, 0), (0, -1))),
}
TAU = {k: ctimes_i(s) for k, s in PAULI.items()}


# -- numeric ----------------------------------------------------------------

SIGMA = np.array([to_complex(PAULI[k]) for k in (1, 2, 3)])
HALF_TAU = 0.5j * SIGMA


def exp_half_tau(v: np.ndarray) -> np.ndarray:
    """exp(v^k * tau_k / 2) for real 3-vectors ``v`` (trailing axis), closed form.

    ``v . tau / 2 = i (v . sigma) / 2``, so the result is
    ``cos(|v|/2) I + i sin(|v|/2) (v/|v|) . sigma``.
    """
    v = np.asarray(v, dtype=float)
    theta = np.linalg.norm(v, axis=-1)
    half = 0.5 * theta
    # sin(x)/x with the removable singularity handled
    sinc = np.where(theta > 0, np.sin(half) / np.where(theta > 0, theta, 1.0), 0.5)
    out = np.empty(v.shape[:-1] + (2, 2), dtype=complex)
    c = np.cos(half)
    out[..., 0, 0] = c + 1j * sinc * v[..., 2]
    out[..., 1, 1] = c - 1j * sinc * v[..., 2]
    out[..., 0, 1] = 1j * sinc * (v[..., 0] - 1j * v[..., 1])
    out[..., 1, 0] = 1j * sinc * (v[..., 0] + 1j * v[..., 1])
    return out


def project_su2(u: np.ndarray) -> np.ndarray:
    """Nearest element of the form [[a, b], [-b*, a*]] with |a|^2 + |b|^2 = 1."""
    a = 0.5 * (u[0, 0] + np.conj(u[1, 1]))
    b = 0.5 * (u[0, 1] - np.conj(u[1, 0]))
    norm = np.sqrt(abs(a) ** 2 + abs(b) ** 2)
    a, b = a / norm, b / norm
    return np.array([[a, b], [-np.conj(b), np.conj(a)]])


def unitarity_defect(u: np.ndarray) -> float:
    return max(float(np.abs(u.conj().T @ u - np.eye(2)).max()), float(abs(np.linalg.det(u) - 1)))


def is_su2(u: np.ndarray, tol: float = UNITARITY_TOL) -> bool:
    return u.shape == (2, 2) and unitarity_defect(u) <= tol


def su2_components(x: np.ndarray) -> np.ndarray:
    """Real coordinates of an su(2) matrix in the basis {tau_k / 2}."""
    # tr((tau_k / 2) sigma_j) = i delta_jk
    return np.array([np.trace(x @ SIGMA[k]).imag for k in range(3)])
