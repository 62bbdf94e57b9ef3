"""Vertex constructions for every polygon family, plus the angle bridge.

Conventions shared by all constructions: the first vertex sits at the
origin, the polygon lives in the half-plane y >= 0, the symmetry axis (when
there is one) is the y-axis, and the emitted vertex order is the
counterclockwise boundary order.

The two diameter-graph families are parametrized by angle sequences:

* cycle-plus-pendants ("b"): a (n/2+1)-cycle through the origin plus n/2-1
  pendant unit edges, driven by n/4+1 angles whose weighted sum is pi/2.
* odd-cycle ("q"): an (n-1)-cycle plus a single pendant unit edge along the
  symmetry axis, driven by n/2 angles summing to pi/2.

`from_angles_b` / `from_angles_q` rebuild polygons from raw angle sequences
(the bridge used by the optimizer) and `extract_angles_b` / `extract_angles_q`
invert them by walking the diameter graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bounds import b_alternation, q_alternation
from .geometry import (
    Family,
    SmallPolygon,
    diameter,
    small_polygon_violations,
    validate_small_polygon,
)

ANGLE_SUM_TOL = 1e-12   # weighted angle sums must hit pi/2 this tightly
CLOSURE_TOL = 1e-10     # half-cycle endpoint must reach abscissa +-1/2
BOX_TOL = 1e-9          # slack on the 0..pi/6 (pi/3) angle boxes
ROUNDED_TOL = 1e-5      # residual level of six-digit published angle data


class InfeasibleAnglesError(ValueError):
    """Angle sequence violates the feasibility conditions of its family.

    Carries the offending residuals so callers can report how far off the
    sequence was.
    """

    def __init__(self, message: str, angle_sum_residual: float = 0.0,
                 closure_residual: float = 0.0):
        super().__init__(message)
        self.angle_sum_residual = angle_sum_residual
        self.closure_residual = closure_residual


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def _boundary_order(verts: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Sort strictly convex vertices CCW, starting from the origin vertex."""
    cx = math.fsum(x for x, _ in verts) / len(verts)
    cy = math.fsum(y for _, y in verts) / len(verts)
    order = sorted(range(len(verts)),
                   key=lambda i: math.atan2(verts[i][1] - cy, verts[i][0] - cx))
    first = min(order, key=lambda i: math.hypot(*verts[i]))
    k = order.index(first)
    return [verts[i] for i in order[k:] + order[:k]]


def _polygon(verts, family, params) -> SmallPolygon:
    poly = SmallPolygon.from_coords(verts, family, params)
    validate_small_polygon(poly)
    return poly


# ---------------------------------------------------------------------------
# Classical constructions
# ---------------------------------------------------------------------------


def regular(n: int) -> SmallPolygon:
    """Regular small n-gon, symmetric about the y-axis, first vertex at the origin.

    For even n the circumradius is 1/2 (opposite vertices are diameters);
    for odd n it is 1/(2 cos(pi/2n)) so vertex-to-far-vertex distances are 1,
    which puts the flat edge at the top of this frame.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if n % 2 == 0:
        radius = 0.5
    else:
        radius = 1.0 / (2.0 * math.cos(math.pi / (2 * n)))
    verts = [(radius * math.sin(2 * math.pi * k / n),
              radius - radius * math.cos(2 * math.pi * k / n)) for k in range(n)]
    return _polygon(verts, Family.REGULAR, {"n": n})


def regular_plus(n: int) -> SmallPolygon:
    """Regular small (n-1)-gon with one vertex added at unit distance.

    The extra vertex rides the bisector of the origin vertex's angle (all
    choices are congruent), landing at (0, 1) in this frame and splitting the
    flat top edge of the odd (n-1)-gon.
    """
    if n < 4 or n % 2 != 0:
        raise ValueError(f"need even n >= 4, got {n}")
    base = regular(n - 1)
    verts = [(v.x, v.y) for v in base.vertices]
    top = (n - 2) // 2  # apex goes between the two topmost vertices
    verts = verts[: top + 1] + [(0.0, 1.0)] + verts[top + 1:]
    return _polygon(verts, Family.REGULAR_PLUS, {"n": n})


def _arc_interior(center: tuple[float, float], start: tuple[float, float],
                  subarcs: int, sweep: float) -> list[tuple[float, float]]:
    """Interior points subdividing a unit-radius CCW arc into equal subarcs."""
    cx, cy = center
    a0 = math.atan2(start[1] - cy, start[0] - cx)
    step = sweep / subarcs
    return [(cx + math.cos(a0 + i * step), cy + math.sin(a0 + i * step))
            for i in range(1, subarcs)]


def reuleaux_subdivision(m: int, n: int) -> SmallPolygon:
    """Equilateral n-gon inscribed in the Reuleaux m-gon over the regular m-gon.

    Each edge of the regular small m-gon is replaced by the unit-radius arc
    centered at the opposite vertex, and n/m - 1 vertices are added per arc
    at regular angular intervals.  The result has perimeter 2n sin(pi/2n)
    and width cos(pi/2n), attaining both classical bounds.
    """
    if m < 3 or m % 2 == 0:
        raise ValueError(f"need odd m >= 3, got {m}")
    if n % m != 0:
        raise ValueError(f"need m | n, got m={m}, n={n}")
    base = [(v.x, v.y) for v in regular(m).vertices]
    per_arc = n // m
    sweep = math.pi / m  # angular extent of each Reuleaux arc
    verts: list[tuple[float, float]] = []
    for i in range(m):
        opposite = base[(i + (m + 1) // 2) % m]
        verts.append(base[i])
        verts.extend(_arc_interior(opposite, base[i], per_arc, sweep))
    return _polygon(verts, Family.REULEAUX_SUB, {"m": m, "n": n})


def tamvakis(n: int) -> SmallPolygon:
    """Tamvakis n-gon: subdivided Reuleaux triangle, n a power of two.

    The three unit arcs are split into floor(n/3) or ceil(n/3) subarcs of
    equal length.  The arc whose count differs from the other two is the one
    opposite the origin corner, keeping the polygon mirror-symmetric; that
    distribution is the unique one reproducing the family's perimeter
    formula (2 sin(pi/(2n-2)) chords etc.).
    """
    if not (_is_power_of_two(n) and n >= 4):
        raise ValueError(f"need n = 2^s >= 4, got {n}")
    corner0 = (0.0, 0.0)
    corner1 = (0.5, math.sqrt(3.0) / 2.0)
    corner2 = (-0.5, math.sqrt(3.0) / 2.0)
    k, r = divmod(n, 3)
    top = k + 1 if r == 1 else k      # arc opposite the origin corner
    side = k if r == 1 else k + 1     # the two arcs meeting at the origin
    sweep = math.pi / 3
    verts = [corner0]
    verts.extend(_arc_interior(corner2, corner0, side, sweep))
    verts.append(corner1)
    verts.extend(_arc_interior(corner0, corner1, top, sweep))
    verts.append(corner2)
    verts.extend(_arc_interior(corner1, corner2, side, sweep))
    return _polygon(verts, Family.TAMVAKIS, {"n": n})


# ---------------------------------------------------------------------------
# Angle parametrizations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AngleParamB:
    """Angle sequence (a_0 .. a_{n/4}) of the cycle-plus-pendants family.

    Feasibility: a_0 + 2 sum_{k=1}^{n/4-1} a_k + a_{n/4} = pi/2 (symmetry),
    the half-cycle closure sin a_0 - sum_{k>=2} (-1)^k sin(phi_k) = -1/2
    where phi_k = a_0 + 2 sum_{j<k} a_j, and the boxes 0 <= a_k <= pi/6
    (pi/3 for the last angle).
    """

    n: int
    alphas: tuple[float, ...]

    def __init__(self, n: int, alphas: Sequence[float]):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "alphas", tuple(float(a) for a in alphas))

    def angle_sum_residual(self) -> float:
        w = [1.0] + [2.0] * (len(self.alphas) - 2) + [1.0]
        return math.fsum(wi * ai for wi, ai in zip(w, self.alphas)) - math.pi / 2

    def closure_residual(self) -> float:
        m = self.n // 4
        terms = [math.sin(self.alphas[0]), 0.5]
        run = self.alphas[0]
        for k in range(2, m + 1):
            run += 2 * self.alphas[k - 1]
            terms.append(-((-1.0) ** k) * math.sin(run))
        return math.fsum(terms)

    def validate(self, sum_tol: float = ANGLE_SUM_TOL,
                 closure_tol: float = CLOSURE_TOL) -> None:
        if not (_is_power_of_two(self.n) and self.n >= 8):
            raise InfeasibleAnglesError(f"need n = 2^s >= 8, got {self.n}")
        if len(self.alphas) != self.n // 4 + 1:
            raise InfeasibleAnglesError(
                f"need {self.n // 4 + 1} angles for n={self.n}, got {len(self.alphas)}")
        m = self.n // 4
        for k, a in enumerate(self.alphas):
            hi = math.pi / 3 if k == m else math.pi / 6
            if not (-BOX_TOL <= a <= hi + BOX_TOL):
                raise InfeasibleAnglesError(f"angle {k} = {a} outside [0, {hi}]")
        rs = self.angle_sum_residual()
        rc = self.closure_residual()
        if abs(rs) > sum_tol or abs(rc) > closure_tol:
            raise InfeasibleAnglesError(
                f"infeasible angles: sum residual {rs:.3e}, closure residual {rc:.3e}",
                angle_sum_residual=rs, closure_residual=rc)

    def is_strict(self) -> bool:
        """True when both residuals are within the exact-feasibility tolerances."""
        return (abs(self.angle_sum_residual()) <= ANGLE_SUM_TOL
                and abs(self.closure_residual()) <= CLOSURE_TOL)


@dataclass(frozen=True)
class AngleParamQ:
    """Angle sequence (a_0 .. a_{n/2-1}) of the odd-cycle family.

    Feasibility: sum a_k = pi/2, the half-cycle closure
    sum_{k=0}^{n/2-2} (-1)^k sin(A_k) = 1/2 with A_k the running sums, and
    the boxes 0 <= a_0 <= pi/6, 0 <= a_k <= pi/3 otherwise.
    """

    n: int
    alphas: tuple[float, ...]

    def __init__(self, n: int, alphas: Sequence[float]):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "alphas", tuple(float(a) for a in alphas))

    def angle_sum_residual(self) -> float:
        return math.fsum(self.alphas) - math.pi / 2

    def closure_residual(self) -> float:
        run = 0.0
        terms = [-0.5]
        for k, a in enumerate(self.alphas[:-1]):
            run += a
            terms.append(((-1.0) ** k) * math.sin(run))
        return math.fsum(terms)

    def validate(self, sum_tol: float = ANGLE_SUM_TOL,
                 closure_tol: float = CLOSURE_TOL) -> None:
        if not (_is_power_of_two(self.n) and self.n >= 4):
            raise InfeasibleAnglesError(f"need n = 2^s >= 4, got {self.n}")
        if len(self.alphas) != self.n // 2:
            raise InfeasibleAnglesError(
                f"need {self.n // 2} angles for n={self.n}, got {len(self.alphas)}")
        for k, a in enumerate(self.alphas):
            hi = math.pi / 6 if k == 0 else math.pi / 3
            if not (-BOX_TOL <= a <= hi + BOX_TOL):
                raise InfeasibleAnglesError(f"angle {k} = {a} outside [0, {hi}]")
        rs = self.angle_sum_residual()
        rc = self.closure_residual()
        if abs(rs) > sum_tol or abs(rc) > closure_tol:
            raise InfeasibleAnglesError(
                f"infeasible angles: sum residual {rs:.3e}, closure residual {rc:.3e}",
                angle_sum_residual=rs, closure_residual=rc)

    def is_strict(self) -> bool:
        """True when both residuals are within the exact-feasibility tolerances."""
        return (abs(self.angle_sum_residual()) <= ANGLE_SUM_TOL
                and abs(self.closure_residual()) <= CLOSURE_TOL)


def b_angles(n: int) -> AngleParamB:
    """Analytic angles pi/n + (-1)^k beta of the cycle-plus-pendants family."""
    if not (_is_power_of_two(n) and n >= 8):
        raise ValueError(f"need n = 2^s >= 8, got {n}")
    beta = b_alternation(n)
    return AngleParamB(n, [math.pi / n + ((-1.0) ** k) * beta for k in range(n // 4 + 1)])


def q_angles(n: int) -> AngleParamQ:
    """Analytic angles pi/n - (-1)^k gamma of the odd-cycle family."""
    if not (_is_power_of_two(n) and n >= 4):
        raise ValueError(f"need n = 2^s >= 4, got {n}")
    gamma = q_alternation(n)
    return AngleParamQ(n, [math.pi / n - ((-1.0) ** k) * gamma for k in range(n // 2)])


# ---------------------------------------------------------------------------
# Coordinate recursions
# ---------------------------------------------------------------------------


def _b_vertices(n: int, alphas: Sequence[float]) -> list[tuple[float, float]]:
    """Cycle-walk coordinates of the cycle-plus-pendants family.

    Walks the right half of the diameter cycle from the origin with unit
    steps in directions phi_k measured from the +y axis, alternating the step
    sign, then drops the pendant endpoints and mirrors everything across the
    y-axis.  The mirrored half reuses exact sign flips, so the vertex set is
    exactly symmetric.
    """
    m = n // 4
    v: dict[int, tuple[float, float]] = {0: (0.0, 0.0), n // 2 + 1: (0.0, 1.0)}
    run = 0.0  # 2 * sum of alphas[1..k-1]
    for k in range(1, m + 1):
        phi = alphas[0] + run
        sign = 1.0 if k % 2 == 1 else -1.0  # = -(-1)^k
        xk = v[k - 1][0] + sign * math.sin(phi)
        yk = v[k - 1][1] + sign * math.cos(phi)
        v[k] = (xk, yk)
        v[n // 2 - k + 1] = (-xk, yk)
        if k <= m - 1:
            psi = phi + alphas[k]
            xp = xk - sign * math.sin(psi)
            yp = yk - sign * math.cos(psi)
            v[k + n // 2 + 1] = (xp, yp)
            v[n - k] = (-xp, yp)
            run += 2 * alphas[k]
    return [v[i] for i in range(n)]


def _q_vertices(n: int, alphas: Sequence[float]) -> list[tuple[float, float]]:
    """Odd-cycle coordinates: unit steps with heading flipped each edge.

    Edge k of the cycle points along ((-1)^k sin A_k, (-1)^k cos A_k) with
    A_k the running angle sum, i.e. each step turns by pi + a_k; the right
    half is walked explicitly and the rest mirrored, with the pendant apex
    at (0, 1).
    """
    d = n // 2
    v: dict[int, tuple[float, float]] = {0: (0.0, 0.0), n - 1: (0.0, 1.0)}
    run = 0.0
    for k in range(d - 1):
        run += alphas[k]
        sign = 1.0 if k % 2 == 0 else -1.0
        v[k + 1] = (v[k][0] + sign * math.sin(run),
                    v[k][1] + sign * math.cos(run))
    for j in range(d, n - 1):
        xm, ym = v[n - 1 - j]
        v[j] = (-xm, ym)
    return [v[i] for i in range(n)]


def _angle_polygon(verts, params, strict: bool) -> SmallPolygon:
    poly = SmallPolygon.from_coords(verts, Family.FROM_ANGLES, params)
    if strict:
        validate_small_polygon(poly)
    else:
        # rounding-level infeasibility shifts the half-cycle endpoint, so the
        # diameter may exceed one by the same order; everything else must hold
        problems = [v for v in small_polygon_violations(poly)
                    if not v.startswith("diameter")]
        if problems:
            raise InfeasibleAnglesError("; ".join(problems))
        if diameter(poly)[0] > 1.0 + 8 * ROUNDED_TOL:
            raise InfeasibleAnglesError("diameter drifted too far from one")
    return poly


def from_angles_b(param: AngleParamB) -> SmallPolygon:
    """Rebuild the symmetric cycle-plus-pendants n-gon from raw angles.

    Strictly feasible sequences (residuals within the type tolerances) yield
    validated unit-diameter polygons.  Sequences feasible only to rounding
    precision -- published six-digit angle data carries residuals near 1e-6 --
    are built as-is, with the unit-diameter bound slackened accordingly.
    Anything farther off raises :class:`InfeasibleAnglesError`.
    """
    param.validate(sum_tol=ROUNDED_TOL, closure_tol=ROUNDED_TOL)
    verts = _boundary_order(_b_vertices(param.n, param.alphas))
    return _angle_polygon(
        verts, {"variant": "b", "n": param.n, "alphas": list(param.alphas)},
        param.is_strict())


def from_angles_q(param: AngleParamQ) -> SmallPolygon:
    """Rebuild the symmetric odd-cycle n-gon from raw angles.

    Feasibility handling matches :func:`from_angles_b`: exact sequences are
    fully validated, rounding-grade sequences are built with a slackened
    diameter bound, and grossly infeasible ones are rejected.
    """
    param.validate(sum_tol=ROUNDED_TOL, closure_tol=ROUNDED_TOL)
    verts = _boundary_order(_q_vertices(param.n, param.alphas))
    return _angle_polygon(
        verts, {"variant": "q", "n": param.n, "alphas": list(param.alphas)},
        param.is_strict())


def b_family(n: int) -> SmallPolygon:
    """The closed-form member of the cycle-plus-pendants family.

    Angles pi/n + (-1)^k beta with beta fixed by the closure condition; its
    perimeter is 2n sin(pi/2n) cos(beta/2) and its width cos(pi/2n + beta/2).
    """
    param = b_angles(n)
    verts = _boundary_order(_b_vertices(n, param.alphas))
    return _polygon(verts, Family.B_FAMILY, {"n": n})


def q_family(n: int) -> SmallPolygon:
    """The closed-form member of the odd-cycle family."""
    param = q_angles(n)
    verts = _boundary_order(_q_vertices(n, param.alphas))
    return _polygon(verts, Family.Q_FAMILY, {"n": n})


# ---------------------------------------------------------------------------
# Angle extraction (inverse of the recursions, via the diameter graph)
# ---------------------------------------------------------------------------


def _unit_graph(p: SmallPolygon) -> dict[int, list[int]]:
    _, edges = diameter(p)
    adj: dict[int, list[int]] = {i: [] for i in range(p.n)}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    return adj


def _cycle_walk(p: SmallPolygon, steps: int) -> tuple[list[int], int]:
    """Walk the diameter-graph cycle from the origin vertex.

    Returns (cycle vertex indices v_0 .. v_steps, apex index).  The walk
    starts toward positive x; pendant neighbors (degree one) are excluded
    from the cycle.
    """
    coords = p.coords()
    adj = _unit_graph(p)
    degree = {i: len(adj[i]) for i in adj}
    origin = min(range(p.n), key=lambda i: math.hypot(*coords[i]))
    if math.hypot(*coords[origin]) > 1e-9:
        raise ValueError("polygon has no vertex at the origin")
    pendants = [j for j in adj[origin] if degree[j] == 1]
    if len(pendants) != 1:
        raise ValueError("origin vertex must carry exactly one pendant edge")
    apex = pendants[0]
    cycle_nbrs = [j for j in adj[origin] if degree[j] >= 2]
    if len(cycle_nbrs) != 2:
        raise ValueError("origin vertex must lie on the diameter cycle")
    first = max(cycle_nbrs, key=lambda j: coords[j][0])
    path = [origin, first]
    while len(path) <= steps:
        here = path[-1]
        nxt = [j for j in adj[here] if degree[j] >= 2 and j != path[-2]]
        if len(nxt) != 1:
            raise ValueError("diameter graph is not a simple cycle with pendants")
        path.append(nxt[0])
    return path, apex


def _angle_between(u: np.ndarray, v: np.ndarray) -> float:
    return math.atan2(abs(u[0] * v[1] - u[1] * v[0]), float(u @ v))


def extract_angles_b(p: SmallPolygon) -> AngleParamB:
    """Measure the defining angles of a cycle-plus-pendants polygon.

    Walks the diameter cycle from the origin and measures interior angles
    with atan2: the first angle against the pendant axis, then half the
    turn at each interior cycle vertex, then the full turn at vertex n/4.
    """
    n = p.n
    m = n // 4
    coords = p.coords()
    path, apex = _cycle_walk(p, m + 1)
    pts = coords[path]
    alphas = [_angle_between(coords[apex] - pts[0], pts[1] - pts[0])]
    for k in range(1, m):
        alphas.append(0.5 * _angle_between(pts[k - 1] - pts[k], pts[k + 1] - pts[k]))
    alphas.append(_angle_between(pts[m - 1] - pts[m], pts[m + 1] - pts[m]))
    return AngleParamB(n, alphas)


def extract_angles_q(p: SmallPolygon) -> AngleParamQ:
    """Measure the defining angles of an odd-cycle polygon."""
    n = p.n
    d = n // 2
    coords = p.coords()
    path, apex = _cycle_walk(p, d)
    pts = coords[path]
    alphas = [_angle_between(coords[apex] - pts[0], pts[1] - pts[0])]
    for k in range(1, d):
        alphas.append(_angle_between(pts[k - 1] - pts[k], pts[k + 1] - pts[k]))
    return AngleParamQ(n, alphas)
