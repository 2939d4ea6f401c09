"""Low-level quadrature helpers.

Everything here works on plain callables ``f(lam) -> ndarray`` where ``lam``
is a 1-d complex array of sample points; integrands are vectorized over
nodes and may return an extra leading axis for vector-valued integrands.
"""

from __future__ import annotations

import numpy as np

from .errors import ExtrapolationNotConverged, QuadratureNotConverged

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1], cached per order."""
    got = _GL_CACHE.get(n)
    if got is None:
        got = np.polynomial.legendre.leggauss(n)
        _GL_CACHE[n] = got
    return got


def segment_quad(f, z0: complex, z1: complex, order: int = 32) -> np.ndarray:
    """Integrate f along the straight segment z0 -> z1 with Gauss-Legendre."""
    x, w = gauss_legendre(order)
    mid = 0.5 * (z0 + z1)
    half = 0.5 * (z1 - z0)
    lam = mid + half * x
    vals = np.asarray(f(lam))
    return half * (vals @ w)


def adaptive_segment_quad(f, z0, z1, order=32, tol=1e-12, max_depth=14,
                          _depth=0, _coarse=None):
    """Recursive bisection until two estimates of each component agree.

    The convergence test compares one panel against its two halves; the
    scale is the running magnitude of the integral, so ``tol`` is relative
    for O(1) results and absolute for tiny ones.
    """
    if _coarse is None:
        _coarse = segment_quad(f, z0, z1, order)
    zm = 0.5 * (z0 + z1)
    left = segment_quad(f, z0, zm, order)
    right = segment_quad(f, zm, z1, order)
    fine = left + right
    err = np.max(np.abs(fine - _coarse))
    scale = max(1.0, float(np.max(np.abs(fine))))
    if err <= tol * scale or _depth >= max_depth:
        if _depth >= max_depth and err > 100 * tol * scale:
            raise QuadratureNotConverged(
                f"segment quadrature stalled at depth {_depth}: err={err:.3e}")
        return fine
    a = adaptive_segment_quad(f, z0, zm, order, tol, max_depth, _depth + 1, left)
    b = adaptive_segment_quad(f, zm, z1, order, tol, max_depth, _depth + 1, right)
    return a + b


def trapezoid_loop_quad(f, gamma, dgamma, n0: int = 64, tol: float = 1e-12,
                        n_max: int = 8192) -> np.ndarray:
    """Integrate f over a smooth closed loop parametrized on [0, 2pi).

    gamma(theta), dgamma(theta) give the point and its theta-derivative.
    The trapezoid rule is spectrally accurate for periodic analytic
    integrands; the node count doubles until two estimates agree.
    """
    n = n0
    prev = None
    while n <= n_max:
        theta = np.arange(n) * (2 * np.pi / n)
        lam = gamma(theta)
        vals = np.asarray(f(lam)) * dgamma(theta)
        est = vals.sum(axis=-1) * (2 * np.pi / n)
        if prev is not None:
            scale = max(1.0, float(np.max(np.abs(est))))
            if np.max(np.abs(est - prev)) <= tol * scale:
                return est
        prev = est
        n *= 2
    raise QuadratureNotConverged(f"loop quadrature not converged at n={n_max}")


def richardson_limit(sample, radii, order_hint: int = 1) -> complex:
    """Extrapolate sample(r) -> limit as r -> 0 from geometric radii.

    Fits a polynomial in r through the samples (Neville scheme) and returns
    the value at r = 0 together with a convergence check between the last
    two column entries.
    """
    rs = np.asarray(radii, dtype=float)
    vals = np.array([sample(r) for r in rs], dtype=complex)
    n = len(rs)
    tab = vals.copy()
    for k in range(1, n):
        new = np.empty(n - k, dtype=complex)
        for i in range(n - k):
            num = rs[i] * tab[i + 1] - rs[i + k] * tab[i]
            new[i] = num / (rs[i] - rs[i + k])
        tab = new
    # tab[0] is the highest-order estimate; compare with one order lower
    if n >= 3:
        prev = vals.copy()
        for k in range(1, n - 1):
            nxt = np.empty(n - k, dtype=complex)
            for i in range(n - k):
                nxt[i] = (rs[i] * prev[i + 1] - rs[i + k] * prev[i]) / (rs[i] - rs[i + k])
            prev = nxt
        err = abs(tab[0] - prev[0])
        scale = max(1.0, abs(tab[0]))
        if err > 1e-5 * scale:
            raise ExtrapolationNotConverged(
                f"Richardson limit unstable: delta={err:.3e}")
    return complex(tab[0])
