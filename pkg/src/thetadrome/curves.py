"""Hyperelliptic curve w^2 = prod(lam - lam_j): sheets, paths, homology.

Conventions
-----------
* Branch points are kept in user order; cut k joins points 2k and 2k+1
  (0-based), matching the pairing (l1 l2), (l3 l4), ...
* Sheet 1 is the global branch `branch_sqrt` built as a product of per-cut
  square roots; it is analytic off the cuts and satisfies
  w(lam)/lam^(g+1) -> +1 in every direction at infinity.
* A Place is (lam, sheet) with sheet 1 meaning w = +branch_sqrt(lam); the
  two places over a branch point coincide and canonicalize to sheet 1.
  The two points over lam = infinity are Place.infinity(1|2).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (BasepointOnCut, DuplicateBranchPoint, OddCount,
                     PathTooCloseToBranchPoint)

_TRACK_JUMP = 0.35          # max relative jump of w between tracking samples
_TRACK_MAX_REFINE = 4000
_NEAR_ZERO = 1e-6           # |w| below this times the piece scale: at a branch end


def _carr(values):
    return np.asarray(values, dtype=complex)


@dataclass(frozen=True)
class Curve:
    """Branch data of w^2 = prod(lam - lam_j)."""

    branch_points: tuple
    eps_sep_factor: float = 1e-8

    def __post_init__(self):
        pts = tuple(complex(p) for p in self.branch_points)
        object.__setattr__(self, "branch_points", pts)
        n = len(pts)
        if n < 4 or n % 2 != 0:
            raise OddCount(f"need an even number >= 4 of branch points, got {n}")
        arr = np.array(pts)
        diff = np.abs(arr[:, None] - arr[None, :])
        np.fill_diagonal(diff, np.inf)
        min_sep = float(np.min(diff))
        diam = float(np.max(diff[np.isfinite(diff)]))
        if min_sep <= self.eps_sep_factor * diam:
            raise DuplicateBranchPoint(
                f"minimum branch-point separation {min_sep:.3e} below threshold")
        object.__setattr__(self, "_min_sep", min_sep)
        object.__setattr__(self, "_diam", diam)

    @property
    def genus(self) -> int:
        return (len(self.branch_points) - 2) // 2

    @property
    def min_sep(self) -> float:
        return self._min_sep

    @property
    def diameter(self) -> float:
        return self._diam

    @property
    def cuts(self):
        pts = self.branch_points
        return [(pts[2 * k], pts[2 * k + 1]) for k in range(len(pts) // 2)]

    def is_branch_point(self, lam: complex, rtol: float = 1e-12) -> bool:
        lam = complex(lam)
        tol = max(rtol * self.diameter, 1e-300)
        return any(abs(lam - p) <= tol for p in self.branch_points)

    def place(self, lam: complex, sheet: int = 1) -> "Place":
        if sheet not in (1, 2):
            raise ValueError("sheet must be 1 or 2")
        if self.is_branch_point(lam):
            sheet = 1
        return Place(complex(lam), sheet)


def make_curve(points) -> Curve:
    """Build a Curve; the input order defines the cut pairing."""
    return Curve(tuple(points))


@dataclass(frozen=True)
class Place:
    """A point of the two-sheeted cover; lam=None encodes lam=infinity."""

    lam: complex | None
    sheet: int

    @staticmethod
    def infinity(sheet: int) -> "Place":
        return Place(None, sheet)

    @property
    def at_infinity(self) -> bool:
        return self.lam is None

    @property
    def sign(self) -> int:
        return 1 if self.sheet == 1 else -1

    def conjugate(self) -> "Place":
        """The involution (lam, w) -> (lam, -w)."""
        return Place(self.lam, 3 - self.sheet)

    def __repr__(self):
        if self.at_infinity:
            return f"Place(inf^{self.sheet})"
        return f"Place({self.lam:.6g}, sheet={self.sheet})"


def branch_sqrt(curve: Curve, lam) -> np.ndarray:
    """Sheet-1 value of w, analytic off the cuts, ~ +lam^(g+1) at infinity.

    Built per cut as (lam-c)*sqrt(1-(d/(lam-c))^2), which is single-valued
    outside the segment joining the pair and needs no branch matching
    between cuts.
    """
    lam = _carr(lam)
    scalar = lam.ndim == 0
    lam = np.atleast_1d(lam)
    w = np.ones_like(lam)
    for a, b in curve.cuts:
        c = 0.5 * (a + b)
        d = 0.5 * (b - a)
        zc = lam - c
        bad = np.abs(zc) < 1e-14 * abs(d)
        if np.any(bad):
            zc = np.where(bad, 1e-13 * d * 1j, zc)
        r = d / zc
        w = w * zc * np.sqrt(1.0 - r * r)
    return w[0] if scalar else w


def omega_at(curve: Curve, place: Place) -> complex:
    """Value of w at a finite place (0 at branch points)."""
    if place.at_infinity:
        raise ValueError("omega is infinite at lam=infinity")
    if curve.is_branch_point(place.lam):
        return 0.0 + 0.0j
    return place.sign * complex(branch_sqrt(curve, place.lam))


# ---------------------------------------------------------------------------
# path pieces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    z0: complex
    z1: complex

    def lam(self, u):
        u = np.asarray(u, dtype=float)
        return self.z0 + (self.z1 - self.z0) * u

    def dlam(self, u):
        u = np.asarray(u, dtype=float)
        return np.full(u.shape, self.z1 - self.z0, dtype=complex)

    def reversed(self):
        return Segment(self.z1, self.z0)


@dataclass(frozen=True)
class Arc:
    """Circular arc center + r*exp(i*theta), theta from a0 to a1 (radians)."""

    center: complex
    radius: float
    a0: float
    a1: float

    def lam(self, u):
        u = np.asarray(u, dtype=float)
        th = self.a0 + (self.a1 - self.a0) * u
        return self.center + self.radius * np.exp(1j * th)

    def dlam(self, u):
        u = np.asarray(u, dtype=float)
        th = self.a0 + (self.a1 - self.a0) * u
        return 1j * (self.a1 - self.a0) * self.radius * np.exp(1j * th)

    def reversed(self):
        return Arc(self.center, self.radius, self.a1, self.a0)


@dataclass(frozen=True)
class SqrtSegment:
    """Straight segment reparametrized with u^2 at the singular end.

    Absorbs the 1/sqrt integrand singularity of dlam/w at a branch-point
    endpoint; the singular end is u=0 when singular_at_start else u=1.
    """

    z_sing: complex
    z_reg: complex
    singular_at_start: bool = True

    def lam(self, u):
        u = np.asarray(u, dtype=float)
        v = u if self.singular_at_start else 1.0 - u
        return self.z_sing + (self.z_reg - self.z_sing) * v * v

    def dlam(self, u):
        u = np.asarray(u, dtype=float)
        if self.singular_at_start:
            return 2.0 * (self.z_reg - self.z_sing) * u
        return -2.0 * (self.z_reg - self.z_sing) * (1.0 - u)

    def reversed(self):
        return SqrtSegment(self.z_sing, self.z_reg, not self.singular_at_start)


@dataclass(frozen=True)
class InfinityTail:
    """Ray from z_far out to lam=infinity, lam(u) = z_far/(1-u)."""

    z_far: complex

    def lam(self, u):
        u = np.asarray(u, dtype=float)
        return self.z_far / (1.0 - u)

    def dlam(self, u):
        u = np.asarray(u, dtype=float)
        return self.z_far / (1.0 - u) ** 2

    def reversed(self):  # pragma: no cover
        raise NotImplementedError("cannot reverse a tail to infinity")


@dataclass
class PathOnCurve:
    """A lift of a lam-plane path: pieces plus the starting sign of w.

    seed_sign=+1 starts on sheet 1 (w = +branch_sqrt). Sheet tracking is
    computed lazily: per piece a list [(u, sign_after_u), ...] with the
    entry sign at u=0.0 first, flips localized at cut crossings.
    """

    curve: Curve
    pieces: list
    seed_sign: int = 1
    _track: list | None = field(default=None, repr=False, compare=False)

    def start_lam(self) -> complex:
        return complex(self.pieces[0].lam(0.0))

    def end_lam(self) -> complex:
        return complex(self.pieces[-1].lam(1.0))

    def with_seed(self, seed_sign: int) -> "PathOnCurve":
        return PathOnCurve(self.curve, self.pieces, seed_sign)

    def reversed(self) -> "PathOnCurve":
        pcs = [p.reversed() for p in reversed(self.pieces)]
        return PathOnCurve(self.curve, pcs, self.end_sign())

    def _ensure_track(self):
        if self._track is None:
            self._track = _track_path(self.curve, self.pieces, self.seed_sign)
        return self._track

    def sign_at(self, piece_index: int, u):
        """Sign of w relative to branch_sqrt at parameters u of one piece."""
        flips = self._ensure_track()[piece_index]
        u = np.atleast_1d(np.asarray(u, dtype=float))
        out = np.full(u.shape, flips[0][1], dtype=int)
        for uf, s in flips[1:]:
            out = np.where(u >= uf, s, out)
        return out

    def end_sign(self) -> int:
        return int(self._ensure_track()[-1][-1][1])

    def end_place(self) -> Place:
        sheet = 1 if self.end_sign() == 1 else 2
        if isinstance(self.pieces[-1], InfinityTail):
            return Place.infinity(sheet)
        return self.curve.place(self.end_lam(), sheet)

    def omega_nodes(self, piece_index: int, u) -> np.ndarray:
        """w at nodes u of one piece with the tracked sign applied."""
        piece = self.pieces[piece_index]
        return self.sign_at(piece_index, u) * branch_sqrt(self.curve,
                                                          piece.lam(u))


def _track_piece(curve, piece, w_entry, sign_entry):
    """Track the sign of w along one piece.

    Returns (flips, exit_sign, exit_w) where flips is [(u, new_sign), ...].
    w_entry is the continuous w value carried into u=0 (0 at a branch
    endpoint) and sign_entry its sign relative to branch_sqrt.
    """
    if isinstance(piece, InfinityTail):
        # no cuts out there: the tail keeps its sheet
        return [], sign_entry, None
    us = list(np.linspace(0.0, 1.0, 17))
    vals = list(np.atleast_1d(branch_sqrt(curve, piece.lam(np.array(us)))))
    scale = max(abs(v) for v in vals) or 1.0
    flips = []
    cur_sign = sign_entry
    cur_w = w_entry if w_entry is not None else sign_entry * vals[0]
    i = 0
    refinements = 0
    while i < len(us) - 1:
        v_next = vals[i + 1]
        near_zero = min(abs(cur_w), abs(v_next)) <= _NEAR_ZERO * scale
        if near_zero:
            s = cur_sign
        else:
            d_keep = abs(cur_sign * v_next - cur_w)
            d_flip = abs(-cur_sign * v_next - cur_w)
            s = cur_sign if d_keep <= d_flip else -cur_sign
            if min(d_keep, d_flip) > _TRACK_JUMP * max(abs(cur_w), abs(v_next)):
                refinements += 1
                if refinements > _TRACK_MAX_REFINE:
                    raise PathTooCloseToBranchPoint(
                        "sheet tracking did not converge; the path passes too "
                        "close to a branch point")
                um = 0.5 * (us[i] + us[i + 1])
                us.insert(i + 1, um)
                vals.insert(i + 1, complex(branch_sqrt(curve, piece.lam(um))))
                continue
        if s != cur_sign:
            lo, hi = us[i], us[i + 1]
            w_lo = cur_w
            for _ in range(48):
                um = 0.5 * (lo + hi)
                vm = complex(branch_sqrt(curve, piece.lam(um)))
                if abs(cur_sign * vm - w_lo) <= abs(-cur_sign * vm - w_lo):
                    lo, w_lo = um, cur_sign * vm
                else:
                    hi = um
                if hi - lo < 1e-13:
                    break
            flips.append((0.5 * (lo + hi), s))
            cur_sign = s
        cur_w = cur_sign * v_next
        i += 1
    return flips, cur_sign, cur_w


def _track_path(curve, pieces, seed_sign):
    track = []
    sign = seed_sign
    w_carry = None  # None: seed applies at the first sample
    for piece in pieces:
        flips, sign, w_exit = _track_piece(curve, piece, w_carry, sign)
        entry = sign
        for _ in flips:
            entry = -entry
        track.append([(0.0, entry)] + flips)
        w_carry = w_exit
        if w_carry is not None and abs(w_carry) == 0.0:
            w_carry = None
    return track


def continue_along(curve: Curve, path: PathOnCurve) -> Place:
    """Analytically continue the start place along the path; returns the end."""
    return path.end_place()


# ---------------------------------------------------------------------------
# routing
# ---------------------------------------------------------------------------


def _seg_point_distance(z0, z1, p):
    d = z1 - z0
    length2 = abs(d) ** 2
    if length2 == 0.0:
        return abs(p - z0)
    t = ((p - z0).real * d.real + (p - z0).imag * d.imag) / length2
    t = min(1.0, max(0.0, t))
    return abs(z0 + t * d - p)


def _seg_seg_intersect(a0, a1, b0, b1):
    """Parameter t on segment a of its crossing with segment b, else None."""
    d1 = a1 - a0
    d2 = b1 - b0
    den = d1.real * d2.imag - d1.imag * d2.real
    if abs(den) < 1e-300:
        return None
    r = b0 - a0
    t = (r.real * d2.imag - r.imag * d2.real) / den
    s = (r.real * d1.imag - r.imag * d1.real) / den
    if 0.0 < t < 1.0 and 0.0 < s < 1.0:
        return t
    return None


def _detour_arc(z_in, z_out, center, radius, forbid_dir=None):
    """Arc around center from z_in to z_out; avoids the ray at forbid_dir."""
    a_in = float(np.angle(z_in - center))
    a_out = float(np.angle(z_out - center))
    sweep_ccw = (a_out - a_in) % (2 * np.pi)
    candidates = [(a_in, a_in + sweep_ccw), (a_in, a_in + sweep_ccw - 2 * np.pi)]
    if forbid_dir is not None:
        ok = []
        for a0, a1 in candidates:
            lo, hi = min(a0, a1), max(a0, a1)
            crosses = False
            k0 = int(np.floor((lo - forbid_dir) / (2 * np.pi)))
            for k in range(k0, k0 + 3):
                if lo < forbid_dir + 2 * np.pi * k < hi:
                    crosses = True
            if not crosses:
                ok.append((a0, a1))
        if ok:
            candidates = ok
    a0, a1 = min(candidates, key=lambda ab: abs(ab[1] - ab[0]))
    return Arc(center, radius, a0, a1)


def route(curve: Curve, z0: complex, z1: complex, clearance: float | None = None,
          avoid_cuts: bool = False, max_iter: int = 80):
    """Straight segments with detour arcs from z0 to z1.

    Branch points closer than `clearance` to a leg are skirted by an arc on
    the side away from their own cut. With avoid_cuts=True interior
    crossings of cut segments are removed the same way, detouring around
    the nearer cut endpoint. Endpoints may themselves be branch points.
    """
    if clearance is None:
        clearance = 0.25 * curve.min_sep
    pts = curve.branch_points
    cuts = curve.cuts
    partner = {}
    for a, b in cuts:
        partner[a] = b
        partner[b] = a
    tol_pt = 1e-12 * curve.diameter

    def _split_at(a, b, center, r):
        d = b - a
        length2 = abs(d) ** 2
        t_foot = ((center - a).real * d.real + (center - a).imag * d.imag) / length2
        h = _seg_point_distance(a, b, center)
        dt = np.sqrt(max(r * r - h * h, 0.0)) / abs(d) + 1e-9
        t_in = max(t_foot - dt, 0.0)
        t_out = min(t_foot + dt, 1.0)
        z_in = a + t_in * d
        z_out = a + t_out * d
        z_in = center + r * (z_in - center) / abs(z_in - center)
        z_out = center + r * (z_out - center) / abs(z_out - center)
        arc = _detour_arc(z_in, z_out, center, r,
                          forbid_dir=float(np.angle(partner[center] - center)))
        out = []
        if t_in > 0.0:
            out.append(Segment(a, z_in))
        out.append(arc)
        if t_out < 1.0:
            out.append(Segment(z_out, b))
        return out

    pieces = [Segment(z0, z1)]
    for _ in range(max_iter):
        changed = False
        new_pieces = []
        for piece in pieces:
            if not isinstance(piece, Segment):
                new_pieces.append(piece)
                continue
            a, b = piece.z0, piece.z1
            handled = False
            for p in pts:
                if abs(p - a) < tol_pt or abs(p - b) < tol_pt:
                    continue
                if _seg_point_distance(a, b, p) < clearance:
                    r = min(clearance, 0.45 * min(
                        abs(q - p) for q in pts if abs(q - p) > tol_pt))
                    new_pieces.extend(_split_at(a, b, p, r))
                    changed = handled = True
                    break
            if handled:
                continue
            if avoid_cuts:
                for ca, cb in cuts:
                    if min(abs(ca - a), abs(cb - a), abs(ca - b),
                           abs(cb - b)) < tol_pt:
                        continue
                    t = _seg_seg_intersect(a, b, ca, cb)
                    if t is None:
                        continue
                    x = a + t * (b - a)
                    e = ca if abs(x - ca) <= abs(x - cb) else cb
                    h = _seg_point_distance(a, b, e)
                    r = max(min(clearance, 0.45 * abs(partner[e] - e)), 1.3 * h)
                    new_pieces.extend(_split_at(a, b, e, r))
                    changed = handled = True
                    break
            if not handled:
                new_pieces.append(piece)
        pieces = new_pieces
        if not changed:
            return pieces
    raise PathTooCloseToBranchPoint(
        f"routing between {z0} and {z1} did not stabilize")


# ---------------------------------------------------------------------------
# homology basis and pi_1 generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CutLoopGeometry:
    """Joukowski ellipse around one cut: lam = c + d*cosh(xi0 + i*theta).

    theta increasing traces the ellipse once; the cut is the degenerate
    ellipse xi0 = 0, so the contour encircles exactly its own cut when xi0
    is below the elliptic radius of every other branch point.
    """

    a: complex
    b: complex
    xi0: float

    @property
    def center(self):
        return 0.5 * (self.a + self.b)

    @property
    def dhalf(self):
        return 0.5 * (self.b - self.a)

    def gamma(self, theta):
        return self.center + self.dhalf * np.cosh(self.xi0 + 1j * theta)

    def dgamma(self, theta):
        return 1j * self.dhalf * np.sinh(self.xi0 + 1j * theta)


def cut_loop_geometry(curve: Curve, cut_index: int, shrink: float = 0.5
                      ) -> CutLoopGeometry:
    a, b = curve.cuts[cut_index]
    c = 0.5 * (a + b)
    d = 0.5 * (b - a)
    xi_min = np.inf
    for p in curve.branch_points:
        if abs(p - a) < 1e-14 * curve.diameter or abs(p - b) < 1e-14 * curve.diameter:
            continue
        xi = abs(np.arccosh(complex((p - c) / d)).real)
        xi_min = min(xi_min, xi)
    xi0 = shrink * xi_min if np.isfinite(xi_min) else 1.0
    return CutLoopGeometry(a, b, min(xi0, 2.0))


def b_path_pieces(curve: Curve, j: int, offset: float | None = None):
    """Open path from branch point index 1 to index 2j (0-based), whose
    double (sheet 1 out, sheet 2 back) realizes the b_j cycle.

    Follows the chain of branch points 1, 2, ..., 2j with control points on
    the left of each chord, staying clear of the cuts along the chain.
    """
    if offset is None:
        offset = 0.3 + 0.03 * (j - 1)
    pts = curve.branch_points
    wps = [pts[m] for m in range(1, 2 * j + 1)]
    nodes = [wps[0]]
    for m in range(len(wps) - 1):
        z0, z1 = wps[m], wps[m + 1]
        nodes.append(0.5 * (z0 + z1) + 1j * offset * (z1 - z0))
    nodes.append(wps[-1])
    if len(wps) == 2:
        # single chord: two sqrt-halves meeting at the lifted midpoint
        return [SqrtSegment(nodes[0], nodes[1], True),
                SqrtSegment(nodes[2], nodes[1], False)]
    pieces = [SqrtSegment(nodes[0], nodes[1], True)]
    for m in range(1, len(nodes) - 2):
        pieces.append(Segment(nodes[m], nodes[m + 1]))
    pieces.append(SqrtSegment(nodes[-1], nodes[-2], False))
    return pieces


def _through_cut_arc(center, z_from, z_to, through_dir):
    """Arc around a branch point whose sweep crosses its cut direction.

    Crossing the cut is what moves the lift to the other sheet; the arc in
    the complementary sector would keep the sheet and change the homology
    class of the thickened loop.
    """
    r = abs(z_from - center)
    a0 = float(np.angle(z_from - center))
    a1 = float(np.angle(z_to - center))
    sweep_ccw = (a1 - a0) % (2 * np.pi)
    for a_start, a_end in ((a0, a0 + sweep_ccw), (a0, a0 + sweep_ccw - 2 * np.pi)):
        lo, hi = min(a_start, a_end), max(a_start, a_end)
        k0 = int(np.floor((lo - through_dir) / (2 * np.pi)))
        if any(lo < through_dir + 2 * np.pi * k < hi for k in range(k0, k0 + 3)):
            return Arc(center, r, a_start, a_end)
    # degenerate entry/exit along the cut direction: fall back to ccw
    return Arc(center, r, a0, a0 + sweep_ccw)


def thickened_b_loop(curve: Curve, j: int, delta_frac: float | None = None
                     ) -> PathOnCurve:
    """Closed loop homotopic to the doubled b_j chain, avoiding branch points.

    Out along the chain offset to one side, half-turn around the far branch
    point, back along the other side, half-turn around the near one. The
    offset grows with j so the nested loops stay disjoint.
    """
    if delta_frac is None:
        delta_frac = 0.05 * (1.0 + 0.5 * (j - 1))
    open_pieces = b_path_pieces(curve, j)
    nodes = [complex(open_pieces[0].lam(0.0))]
    for p in open_pieces:
        nodes.append(complex(p.lam(1.0)))
    delta = delta_frac * curve.min_sep
    offs_f = []
    offs_b = []
    for i in range(len(nodes) - 1):
        t = (nodes[i + 1] - nodes[i]) / abs(nodes[i + 1] - nodes[i])
        n = 1j * t
        offs_f.append((nodes[i] + delta * n, nodes[i + 1] + delta * n))
        offs_b.append((nodes[i] - delta * n, nodes[i + 1] - delta * n))
    fwd = []
    for i, (p0, p1) in enumerate(offs_f):
        if i > 0:
            fwd.append(Segment(offs_f[i - 1][1], p0))
        fwd.append(Segment(p0, p1))
    back = []
    for i in range(len(offs_b) - 1, -1, -1):
        p0, p1 = offs_b[i]
        back.append(Segment(p1, p0))
        if i > 0:
            back.append(Segment(p0, offs_b[i - 1][1]))
    pts = curve.branch_points
    far_idx = 2 * j
    arc_far = _through_cut_arc(nodes[-1], offs_f[-1][1], offs_b[-1][1],
                               float(np.angle(pts[far_idx + 1] - pts[far_idx])))
    arc_near = _through_cut_arc(nodes[0], offs_b[0][0], offs_f[0][0],
                                float(np.angle(pts[0] - pts[1])))
    return PathOnCurve(curve, fwd + [arc_far] + back + [arc_near], 1)


def homology_basis(curve: Curve):
    """The g a-cycles and g b-cycles of the standard nested basis.

    a_j loops clockwise around cut j+1 on sheet 1; b_j is the thickened
    double of the chain path through cuts 1 and j+1. Returned as lifted
    paths; the period quadrature uses the underlying smooth geometry.
    """
    g = curve.genus
    a_cycles = []
    b_cycles = []
    for j in range(1, g + 1):
        geo = cut_loop_geometry(curve, j)
        th = np.linspace(0.0, 2 * np.pi, 65)[::-1]   # clockwise
        zs = geo.gamma(th)
        pieces = [Segment(zs[i], zs[i + 1]) for i in range(len(zs) - 1)]
        a_cycles.append(PathOnCurve(curve, pieces, 1))
        b_cycles.append(thickened_b_loop(curve, j).reversed())
    return {"a": a_cycles, "b": b_cycles}


def monodromy_generators(curve: Curve, basepoint: complex):
    """Keyhole loops l_nu, one counterclockwise turn around each lam_nu."""
    basepoint = complex(basepoint)
    for a, b in curve.cuts:
        if _seg_point_distance(a, b, basepoint) < 0.05 * curve.min_sep:
            raise BasepointOnCut(f"basepoint {basepoint} lies on a cut")
    loops = []
    for p in curve.branch_points:
        r = 0.3 * curve.min_sep
        approach = p + r * (basepoint - p) / abs(basepoint - p)
        legs = route(curve, basepoint, approach, clearance=0.8 * r)
        circle = Arc(p, r, float(np.angle(approach - p)),
                     float(np.angle(approach - p)) + 2 * np.pi)
        back = [pc.reversed() for pc in reversed(legs)]
        loops.append(PathOnCurve(curve, list(legs) + [circle] + back, 1))
    return loops


def winding_number(pieces, point: complex, n_per_piece: int = 257) -> int:
    """Total winding of a piecewise path around a point."""
    total = 0.0
    for piece in pieces:
        u = np.linspace(0.0, 1.0, n_per_piece)
        z = piece.lam(u) - point
        total += float(np.sum(np.diff(np.unwrap(np.angle(z)))))
    return int(np.rint(total / (2 * np.pi)))


def intersection_number(path_a: PathOnCurve, path_b: PathOnCurve,
                        n_per_piece: int = 48) -> int:
    """Signed intersection count of two closed lifted loops on the curve.

    Crossings count only where both loops are on the same sheet, with the
    sign of the tangent cross product.
    """
    def _samples(path):
        segs = []
        for idx, piece in enumerate(path.pieces):
            u = np.linspace(0.0, 1.0, n_per_piece + 1)
            z = piece.lam(u)
            s = path.sign_at(idx, 0.5 * (u[:-1] + u[1:]))
            for i in range(n_per_piece):
                segs.append((z[i], z[i + 1], int(s[i])))
        return segs

    total = 0
    for a0, a1, s1 in _samples(path_a):
        for b0, b1, s2 in _samples(path_b):
            if s1 != s2:
                continue
            if _seg_seg_intersect(a0, a1, b0, b1) is None:
                continue
            da = a1 - a0
            db = b1 - b0
            cross = da.real * db.imag - da.imag * db.real
            total += 1 if cross > 0 else -1
    return total
