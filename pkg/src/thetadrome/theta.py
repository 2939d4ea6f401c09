"""Genus-g theta function with characteristics and z-derivatives to 4th order.

theta[p,q](z|B) = sum over m in Z^g of
    exp{ pi*i <B(m+p), m+p> + 2*pi*i <z+q, m+p> }

The sum is truncated over an ellipsoid ||T(m - m*)|| <= R where T is the
Cholesky factor of Im B and m* the real center minimizing the Gaussian
weight; R grows until the outermost shell contributes less than the
requested tolerance. Derivatives are term-wise (polynomial prefactors),
never finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (NotPositiveDefinite, SymmetryViolation,
                     TruncationRadiusExceeded)

_R_MAX = 60.0
_R_STEP = 0.75


@dataclass(frozen=True)
class Characteristic:
    """A g x 2 characteristic [p, q]; entries live in C mod Z."""

    p: tuple
    q: tuple

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(complex(v) for v in self.p))
        object.__setattr__(self, "q", tuple(complex(v) for v in self.q))
        if len(self.p) != len(self.q):
            raise ValueError("p and q must have equal length")

    @property
    def g(self) -> int:
        return len(self.p)

    @property
    def p_vec(self) -> np.ndarray:
        return np.array(self.p, dtype=complex)

    @property
    def q_vec(self) -> np.ndarray:
        return np.array(self.q, dtype=complex)

    def is_half_integer(self, tol: float = 1e-9) -> bool:
        vals = np.concatenate([2 * self.p_vec, 2 * self.q_vec])
        return bool(np.all(np.abs(vals.imag) < tol)
                    and np.all(np.abs(vals.real - np.rint(vals.real)) < tol))

    def reduced(self) -> "Characteristic":
        """Representative with components in [0, 1) (real parts)."""
        def red(v):
            return tuple(complex(x.real - np.floor(x.real + 1e-12), x.imag)
                         for x in v)
        return Characteristic(red(self.p_vec), red(self.q_vec))

    def parity(self) -> int:
        """0 for even, 1 for odd; defined for half-integer characteristics."""
        if not self.is_half_integer():
            raise ValueError("parity is defined for half-integer characteristics")
        r = self.reduced()
        val = 4.0 * float(np.dot(r.p_vec.real, r.q_vec.real))
        return int(np.rint(val)) % 2


def zero_char(g: int) -> Characteristic:
    return Characteristic((0.0,) * g, (0.0,) * g)


@dataclass(frozen=True)
class ThetaArg:
    """Argument pair (z, B); B is validated symmetric with Im B > 0."""

    z: tuple
    B: tuple
    tol_sym: float = 1e-8

    def __post_init__(self):
        z = np.atleast_1d(np.asarray(self.z, dtype=complex))
        B = np.asarray(self.B, dtype=complex)
        if B.shape != (z.size, z.size):
            raise ValueError("B must be g x g matching len(z)")
        if np.max(np.abs(B - B.T)) > self.tol_sym:
            raise SymmetryViolation(
                f"B not symmetric: residual {np.max(np.abs(B - B.T)):.3e}")
        eigs = np.linalg.eigvalsh(B.imag)
        if np.min(eigs) <= 0:
            raise NotPositiveDefinite(
                f"Im B not positive definite: min eig {np.min(eigs):.3e}")
        object.__setattr__(self, "z", tuple(z))
        object.__setattr__(self, "B", tuple(map(tuple, B)))

    @property
    def z_vec(self) -> np.ndarray:
        return np.array(self.z, dtype=complex)

    @property
    def B_mat(self) -> np.ndarray:
        return np.array(self.B, dtype=complex)

    @property
    def g(self) -> int:
        return len(self.z)


# -- lattice enumeration ------------------------------------------------------

_BALL_CACHE: dict = {}


def _enumerate_ball(T: np.ndarray, radius: float) -> np.ndarray:
    """Integer vectors m with ||T m|| <= radius, T upper triangular g x g."""
    g = T.shape[0]
    out = []
    m = np.zeros(g, dtype=int)

    def rec(i, partial, rem2):
        # partial[j] for j > i already fixed; component i of T(m):
        # T[i,i]*m_i + sum_{j>i} T[i,j]*m_j
        tail = sum(T[i, j] * m[j] for j in range(i + 1, g))
        tii = T[i, i]
        half = np.sqrt(max(rem2, 0.0))
        lo = int(np.ceil((-half - tail) / tii))
        hi = int(np.floor((half - tail) / tii))
        for mi in range(lo, hi + 1):
            m[i] = mi
            ci = tii * mi + tail
            rem2_next = rem2 - ci * ci
            if rem2_next < 0:
                continue
            if i == 0:
                out.append(m.copy())
            else:
                rec(i - 1, partial, rem2_next)
        m[i] = 0

    rec(g - 1, None, radius * radius)
    if not out:
        return np.zeros((0, g), dtype=int)
    return np.array(out, dtype=int)


def _ball_points(B: np.ndarray, radius: float) -> np.ndarray:
    key = (B.tobytes(), int(np.ceil(radius / _R_STEP)))
    pts = _BALL_CACHE.get(key)
    if pts is None:
        Y = B.imag
        T = np.linalg.cholesky(Y).T
        pts = _enumerate_ball(T, np.ceil(radius / _R_STEP) * _R_STEP)
        if len(_BALL_CACHE) > 256:
            _BALL_CACHE.clear()
        _BALL_CACHE[key] = pts
    return pts


def _theta_raw(char: Characteristic, z: np.ndarray, B: np.ndarray,
               tol: float, derivs: tuple) -> complex:
    g = z.size
    Y = B.imag
    X = B.real
    T = np.linalg.cholesky(Y).T
    p = char.p_vec
    q = char.q_vec
    # Gaussian center of |term| over real lattice offsets
    rhs = X @ p.imag + (z + q).imag
    c = np.linalg.solve(Y, rhs)
    center = p.real + c
    shift = np.rint(center).astype(int)
    margin = float(np.linalg.norm(T, 2)) * (0.5 * np.sqrt(g)) + 0.5
    n_der = len(derivs)

    radius = np.sqrt(max(np.log(1.0 / max(tol, 1e-300)), 1.0) / np.pi) + 1.0 \
        + 0.35 * n_der
    prev_val = None
    while radius <= _R_MAX:
        ball = _ball_points(B, radius + margin)
        m = ball - shift[None, :]
        n = m + p[None, :]
        expo = (1j * np.pi * np.einsum("ij,jk,ik->i", n, B, n)
                + 2j * np.pi * (n @ (z + q)))
        re_max = float(np.max(expo.real)) if expo.size else 0.0
        vals = np.exp(expo - re_max)
        pref = np.ones(len(n), dtype=complex)
        for d in derivs:
            pref = pref * (2j * np.pi * n[:, d])
        total = np.exp(re_max) * np.sum(pref * vals)
        if prev_val is not None and abs(total - prev_val) <= 0.1 * tol * max(
                1.0, abs(total)):
            return complex(total)
        prev_val = total
        radius += _R_STEP
    raise TruncationRadiusExceeded(
        f"theta truncation radius exceeded {_R_MAX}; Im B nearly degenerate?")


def theta(char: Characteristic, arg: ThetaArg, tol: float = 1e-12) -> complex:
    """Theta with characteristic at (z | B), truncation error below tol."""
    return _theta_raw(char, arg.z_vec, arg.B_mat, tol, ())


def theta_deriv(char: Characteristic, arg: ThetaArg, dirs,
                tol: float = 1e-12) -> complex:
    """Partial derivative of theta in z along the listed indices (0-based).

    Up to 4 indices; repeated indices give higher derivatives in one
    direction. Computed term-wise on the truncated sum.
    """
    dirs = tuple(int(d) for d in dirs)
    if not 1 <= len(dirs) <= 4:
        raise ValueError("need between 1 and 4 derivative directions")
    if any(d < 0 or d >= arg.g for d in dirs):
        raise ValueError("derivative direction out of range")
    return _theta_raw(char, arg.z_vec, arg.B_mat, tol, dirs)


def theta_value_and_grad(char: Characteristic, arg: ThetaArg,
                         tol: float = 1e-12):
    """(theta, grad theta) with grad the g-vector of first z-derivatives."""
    val = theta(char, arg, tol)
    grad = np.array([theta_deriv(char, arg, (k,), tol) for k in range(arg.g)])
    return val, grad


def log_theta_hessian(char: Characteristic, arg: ThetaArg,
                      tol: float = 1e-12) -> np.ndarray:
    """Matrix of second logarithmic derivatives at the given argument."""
    g = arg.g
    val = theta(char, arg, tol)
    grad = np.array([theta_deriv(char, arg, (k,), tol) for k in range(g)])
    hess = np.empty((g, g), dtype=complex)
    for k in range(g):
        for l in range(k, g):
            hess[k, l] = hess[l, k] = theta_deriv(char, arg, (k, l), tol)
    return hess / val - np.outer(grad, grad) / (val * val)


def periodicity_check(char: Characteristic, arg: ThetaArg, j: int,
                      tol: float = 1e-12):
    """Residuals of the two quasi-periodicity laws in direction j."""
    z = arg.z_vec
    B = arg.B_mat
    base = theta(char, arg, tol)
    ej = np.zeros(arg.g)
    ej[j] = 1.0
    lhs1 = theta(char, ThetaArg(tuple(z + ej), arg.B), tol)
    rhs1 = np.exp(2j * np.pi * char.p_vec[j]) * base
    lhs2 = theta(char, ThetaArg(tuple(z + B @ ej), arg.B), tol)
    rhs2 = np.exp(-2j * np.pi * char.q_vec[j] - 1j * np.pi * B[j, j]
                  - 2j * np.pi * z[j]) * base
    return abs(lhs1 - rhs1), abs(lhs2 - rhs2)


def reduce_into_cell(z: np.ndarray, B: np.ndarray):
    """Split z = z0 + B n + m with integer n, m and z0 in the centered cell.

    Returns (z0, n, m). Useful to keep theta arguments well-scaled along
    analytic continuation; the exact quasi-periodicity factor is
    exp{2 pi i <p, m> - 2 pi i <q, n> - pi i <B n, n> - 2 pi i <n, z0 + B n ... >}
    and is reconstructed by the caller via `lattice_shift_factor`.
    """
    Y = B.imag
    n = np.rint(np.linalg.solve(Y, z.imag)).astype(int)
    z1 = z - B @ n
    m = np.rint(z1.real).astype(int)
    z0 = z1 - m
    return z0, n, m


def lattice_shift_factor(char: Characteristic, z0: np.ndarray, B: np.ndarray,
                         n: np.ndarray, m: np.ndarray) -> complex:
    """Factor f with theta(z0 + Bn + m) = f * theta(z0)."""
    p = char.p_vec
    q = char.q_vec
    return np.exp(2j * np.pi * (p @ m) - 2j * np.pi * (q @ n)
                  - 1j * np.pi * (n @ B @ n) - 2j * np.pi * (n @ z0))
