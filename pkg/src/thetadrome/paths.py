"""Quadrature over lifted paths and the canonical path family.

The canonical path to a place P runs from the base branch point lam_1
straight toward P, with deterministic detour arcs near branch points; the
lift starts on whichever sheet makes the tracked end sheet match P. All
path-dependent quantities (Abel map, exponent integrals) use one shared
path object per place so their lattice representatives stay coherent.
"""

from __future__ import annotations

import numpy as np

from .curves import (Curve, InfinityTail, Place, PathOnCurve, SqrtSegment,
                     Segment, branch_sqrt, route)
from .quadrature import gauss_legendre
from .errors import QuadratureNotConverged


def piece_quad(path: PathOnCurve, piece_index: int, integrand,
               order: int = 32, tol: float = 1e-12, u0: float = 0.0,
               u1: float = 1.0, max_depth: int = 12, _depth: int = 0,
               _coarse=None):
    """Adaptive Gauss-Legendre of integrand(lam, w) * dlam over one piece."""
    piece = path.pieces[piece_index]

    def estimate(a, b, n):
        x, wgt = gauss_legendre(n)
        u = 0.5 * (a + b) + 0.5 * (b - a) * x
        lam = piece.lam(u)
        w = path.sign_at(piece_index, u) * branch_sqrt(path.curve, lam)
        vals = np.asarray(integrand(lam, w)) * piece.dlam(u)
        return 0.5 * (b - a) * (vals @ wgt)

    if _coarse is None:
        _coarse = estimate(u0, u1, order)
    um = 0.5 * (u0 + u1)
    left = estimate(u0, um, order)
    right = estimate(um, u1, order)
    fine = left + right
    err = np.max(np.abs(fine - _coarse))
    scale = max(1.0, float(np.max(np.abs(fine))))
    if err <= tol * scale or _depth >= max_depth:
        if _depth >= max_depth and err > 1e3 * tol * scale:
            raise QuadratureNotConverged(
                f"path quadrature stalled: err={err:.3e}")
        return fine
    a = piece_quad(path, piece_index, integrand, order, tol, u0, um,
                   max_depth, _depth + 1, left)
    b = piece_quad(path, piece_index, integrand, order, tol, um, u1,
                   max_depth, _depth + 1, right)
    return a + b


def path_quad(path: PathOnCurve, integrand, order: int = 32,
              tol: float = 1e-12):
    """Integral of integrand(lam, w) * dlam along the whole lifted path."""
    total = None
    for i in range(len(path.pieces)):
        part = piece_quad(path, i, integrand, order, tol)
        total = part if total is None else total + part
    return total


def far_anchor(curve: Curve) -> complex:
    """Deterministic anchor point well outside the branch-point cloud."""
    rmax = max(abs(p) for p in curve.branch_points)
    return 3.0 * rmax + 2.0 * curve.diameter + 1.0


def canonical_path(curve: Curve, place: Place) -> PathOnCurve:
    """Canonical lifted path from the base point lam_1 to the given place.

    The seed sign is chosen so the tracked end sheet matches place.sheet;
    flipping the seed mirrors the whole lift, so the two lifts of one
    projection give opposite Abel values exactly.
    """
    base = curve.branch_points[0]
    if place.at_infinity:
        anchor = far_anchor(curve)
        legs = route(curve, base, anchor, avoid_cuts=True)
        pieces = _with_sqrt_start(legs, base)
        pieces.append(InfinityTail(anchor))
    else:
        lam = complex(place.lam)
        if abs(lam - base) < 1e-14 * curve.diameter:
            # base point itself: trivial path
            eps = 1e-3 * curve.min_sep
            pieces = [SqrtSegment(base, base + eps, True),
                      SqrtSegment(base, base + eps, False)]
            return PathOnCurve(curve, pieces, 1)
        legs = route(curve, base, lam, avoid_cuts=True)
        pieces = _with_sqrt_start(legs, base)
        if curve.is_branch_point(lam):
            last = pieces.pop()
            assert isinstance(last, Segment)
            pieces.append(SqrtSegment(lam, last.z0, False))
    path = PathOnCurve(curve, pieces, 1)
    if path.end_place().sheet != place.sheet:
        path = PathOnCurve(curve, pieces, -1)
    return path


def _with_sqrt_start(legs, base):
    pieces = list(legs)
    first = pieces[0]
    assert isinstance(first, Segment) and abs(first.z0 - base) < 1e-12 * max(
        1.0, abs(base))
    pieces[0] = SqrtSegment(base, first.z1, True)
    return pieces
