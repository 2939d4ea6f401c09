"""Period matrices of the unnormalized differentials and the matrix B.

A_kj = oint_{a_j} lam^(k-1) dlam / w   over the Joukowski contour of cut j+1,
B_kj = oint_{b_j} lam^(k-1) dlam / w   as twice the open chain integral.

Orientation constants below pin the basis of Figure-1 type: a-cycles
clockwise on sheet 1, b-cycles through cuts 1 and j+1, fixed so that Im B
is positive definite and the branch-point Abel values take their standard
closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import Curve, PathOnCurve, b_path_pieces, branch_sqrt, \
    cut_loop_geometry
from .errors import (NotPositiveDefinite, QuadratureNotConverged,
                     SymmetryViolation)
from .paths import path_quad
from .quadrature import trapezoid_loop_quad

A_ORIENTATION = -1   # a_j relative to the counterclockwise Joukowski contour
B_ORIENTATION = -1   # b_j runs against the chain from point 1 to point 2j


@dataclass(frozen=True)
class PeriodData:
    A_mat: np.ndarray
    B_mat: np.ndarray
    B_norm: np.ndarray
    A_inv: np.ndarray
    cond_A: float
    sym_residual: float
    im_eigs: np.ndarray

    @property
    def genus(self) -> int:
        return self.A_mat.shape[0]

    def report(self) -> dict:
        def c2(m):
            return [[[v.real, v.imag] for v in row] for row in np.atleast_2d(m)]
        return {
            "A": c2(self.A_mat),
            "B_periods": c2(self.B_mat),
            "B": c2(self.B_norm),
            "cond_A": self.cond_A,
            "symmetry_residual": self.sym_residual,
            "im_B_eigenvalues": list(map(float, self.im_eigs)),
        }


def _monomials(g):
    def f(lam, w):
        lam = np.atleast_1d(lam)
        return np.vstack([lam ** k / w for k in range(g)])
    return f


def a_period_column(curve: Curve, j: int, quad_order: int = 64,
                    tol: float = 1e-12) -> np.ndarray:
    """Column j (1-based) of the a-period matrix of lam^(k-1) dlam / w."""
    g = curve.genus
    geo = cut_loop_geometry(curve, j)

    def f(lam):
        w = branch_sqrt(curve, lam)
        return np.vstack([lam ** k / w for k in range(g)])

    col = trapezoid_loop_quad(f, geo.gamma, geo.dgamma,
                              n0=max(64, quad_order), tol=tol)
    return A_ORIENTATION * col


def b_period_column(curve: Curve, j: int, quad_order: int = 48,
                    tol: float = 1e-12) -> np.ndarray:
    g = curve.genus
    path = PathOnCurve(curve, b_path_pieces(curve, j), 1)
    col = path_quad(path, _monomials(g), order=quad_order, tol=tol)
    return B_ORIENTATION * 2.0 * col


def compute_periods(curve: Curve, quad_order: int = 48, tol: float = 1e-11,
                    tol_sym: float = 1e-8, check: bool = True) -> PeriodData:
    """A- and b-period matrices, B = A^(-1) B_periods, and sanity data.

    Raises SymmetryViolation / NotPositiveDefinite when the invariants of a
    Riemann matrix fail, which signals a homology orientation problem.
    """
    g = curve.genus
    if quad_order < 16:
        raise ValueError("quad_order must be >= 16")
    A = np.empty((g, g), dtype=complex)
    Bp = np.empty((g, g), dtype=complex)
    for j in range(1, g + 1):
        A[:, j - 1] = a_period_column(curve, j, quad_order, tol)
        Bp[:, j - 1] = b_period_column(curve, j, quad_order, tol)
    A_inv = np.linalg.inv(A)
    B = A_inv @ Bp
    sym = float(np.max(np.abs(B - B.T)))
    B = 0.5 * (B + B.T)
    eigs = np.linalg.eigvalsh(B.imag)
    cond = float(np.linalg.cond(A))
    if check:
        if sym > tol_sym:
            raise SymmetryViolation(
                f"period matrix asymmetry {sym:.3e} exceeds {tol_sym:.1e}")
        if np.min(eigs) <= 0:
            raise NotPositiveDefinite(
                f"Im B has min eigenvalue {np.min(eigs):.3e}; homology "
                "orientation looks wrong")
    return PeriodData(A, Bp, B, A_inv, cond, sym, eigs)


def convergence_delta(curve: Curve, quad_order: int, tol: float = 1e-11
                      ) -> float:
    """Max entry change of (A, B_periods) when quad_order doubles."""
    p1 = compute_periods(curve, quad_order, tol, check=False)
    p2 = compute_periods(curve, 2 * quad_order, tol, check=False)
    d = max(float(np.max(np.abs(p1.A_mat - p2.A_mat))),
            float(np.max(np.abs(p1.B_mat - p2.B_mat))))
    if d > 1e-6:
        raise QuadratureNotConverged(
            f"period quadrature changed by {d:.3e} when doubling the order")
    return d


def dA_dlambda(curve: Curve, j: int, quad_order: int = 64,
               tol: float = 1e-12) -> np.ndarray:
    """Analytic derivative of the a-period matrix in branch point lam_j.

    d(1/w)/dlam_j = 1/(2 w (lam - lam_j)) on the same contours; lam_j is
    0-based here.
    """
    g = curve.genus
    lam_j = curve.branch_points[j]
    out = np.empty((g, g), dtype=complex)
    for m in range(1, g + 1):
        geo = cut_loop_geometry(curve, m)

        def f(lam):
            w = branch_sqrt(curve, lam)
            base = 1.0 / (2.0 * w * (lam - lam_j))
            return np.vstack([lam ** k * base for k in range(g)])

        out[:, m - 1] = A_ORIENTATION * trapezoid_loop_quad(
            f, geo.gamma, geo.dgamma, n0=max(64, quad_order), tol=tol)
    return out


def branch_chart_root(curve: Curve, j: int) -> complex:
    """Principal value of sqrt(prod_{l != j}(lam_j - lam_l)).

    Fixes the branch chart x_j = sqrt(lam - lam_j): the chart point x maps
    to the place over lam_j + x^2 whose w-value continues x * this root.
    """
    pts = curve.branch_points
    prod = np.prod([pts[j] - p for i, p in enumerate(pts) if i != j])
    return complex(np.sqrt(complex(prod)))


def du_dlambda(curve: Curve, periods: PeriodData, lam, w) -> np.ndarray:
    """Vector dU_k/dlam at given lam with given w (vectorized over nodes)."""
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    mono = np.vstack([lam ** k for k in range(curve.genus)])
    return (periods.A_inv @ mono) / w


def du_dx_branch(curve: Curve, periods: PeriodData, j: int) -> np.ndarray:
    """Vector dU_k/dx_j at the branch point lam_j (0-based j)."""
    lam_j = curve.branch_points[j]
    mono = np.array([lam_j ** k for k in range(curve.genus)])
    return 2.0 * (periods.A_inv @ mono) / branch_chart_root(curve, j)


def du_dx_infinity(periods: PeriodData, sheet: int) -> np.ndarray:
    """Vector dU_k/dx at infinity on the given sheet, x = 1/lam."""
    sgn = 1.0 if sheet == 1 else -1.0
    return -sgn * periods.A_inv[:, -1]
