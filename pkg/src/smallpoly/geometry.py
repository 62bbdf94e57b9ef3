"""Coordinate-level primitives and metrics for unit-diameter ("small") polygons.

Everything here works directly on vertex coordinates: perimeters are edge
sums, widths come from edge-normal support distances, diameters from pairwise
distances, areas from the shoelace formula.  None of it knows about closed
forms, so it can serve as an independent cross-check for the analytic
expressions in :mod:`smallpoly.bounds`.

All operations are pure functions of immutable values and are safe to call
concurrently.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

# Unit-distance classification tolerance for diameter-graph edges.  Family
# constructions are accurate to ~1e-15 and the closest non-unit vertex pair
# stays more than 1e-3 away from distance one, so 1e-9 separates cleanly.
DIAMETER_TOL = 1e-9

# Cross products below this threshold count as collinear (non strictly convex).
CONVEXITY_TOL = 1e-12

# Constructions keep the polygon in the upper half-plane up to this slack.
HALF_PLANE_TOL = 1e-12

_CHUNK = 256  # row block for pairwise-distance / support-distance sweeps


class InvalidPolygonError(ValueError):
    """Input does not describe a usable polygon (too few vertices, bad data)."""


class NonConvexError(ValueError):
    """Operation defined only for convex polygons received a non-convex one."""


class Family(str, Enum):
    """Construction tag carried by every polygon."""

    REGULAR = "regular"
    REGULAR_PLUS = "regular-plus"
    REULEAUX_SUB = "reuleaux"
    TAMVAKIS = "tamvakis"
    B_FAMILY = "b"
    Q_FAMILY = "q"
    FROM_ANGLES = "from-angles"
    RAW = "raw"


@dataclass(frozen=True)
class Point2:
    """A planar point; coordinates are in unit-diameter lengths."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidPolygonError(f"non-finite point ({self.x}, {self.y})")


@dataclass(frozen=True)
class SmallPolygon:
    """An ordered (counterclockwise) vertex list plus construction metadata.

    The container itself only checks basic sanity; the per-family invariants
    (strict convexity, diameter one, first vertex at the origin) are
    guaranteed by the constructors in :mod:`smallpoly.constructions` and can
    be re-checked with :func:`small_polygon_violations`.
    """

    vertices: tuple[Point2, ...]
    family: Family = Family.RAW
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.vertices) < 3:
            raise InvalidPolygonError(
                f"a polygon needs at least 3 vertices, got {len(self.vertices)}"
            )

    @property
    def n(self) -> int:
        return len(self.vertices)

    def coords(self) -> np.ndarray:
        """Vertex coordinates as an (n, 2) float array."""
        return np.array([(p.x, p.y) for p in self.vertices], dtype=float)

    @classmethod
    def from_coords(
        cls,
        coords: Iterable[Sequence[float]],
        family: Family = Family.RAW,
        params: dict | None = None,
    ) -> "SmallPolygon":
        pts = tuple(Point2(float(x), float(y)) for x, y in coords)
        return cls(pts, family, dict(params or {}))


@dataclass(frozen=True)
class MetricsReport:
    """Perimeter, width, diameter, area, convexity and diameter-graph edges."""

    perimeter: float
    width: float
    diameter: float
    area: float
    convex: bool
    diameter_edges: tuple[tuple[int, int], ...]

    def to_json_dict(self) -> dict:
        return {
            "perimeter": self.perimeter,
            "width": self.width,
            "diameter": self.diameter,
            "area": self.area,
            "convex": self.convex,
            "diameter_edges": [list(e) for e in self.diameter_edges],
        }


def _edge_vectors(coords: np.ndarray) -> np.ndarray:
    return np.roll(coords, -1, axis=0) - coords


def perimeter(p: SmallPolygon) -> float:
    """Sum of edge lengths, closed cyclically."""
    coords = p.coords()
    e = _edge_vectors(coords)
    return math.fsum(np.hypot(e[:, 0], e[:, 1]).tolist())


def is_convex(p: SmallPolygon) -> bool:
    """True iff every consecutive cross product is strictly positive (CCW).

    Collinear corners are rejected: a cross product within ``CONVEXITY_TOL``
    of zero does not count as convex.
    """
    coords = p.coords()
    e = _edge_vectors(coords)
    nxt = np.roll(e, -1, axis=0)
    cross = e[:, 0] * nxt[:, 1] - e[:, 1] * nxt[:, 0]
    return bool(np.all(cross > CONVEXITY_TOL))


def width(p: SmallPolygon) -> float:
    """Minimum support-line distance over all boundary-edge normals.

    For a convex polygon the width direction is normal to some edge, so
    enumerating edges is exact.  Non-convex input is rejected.
    """
    if not is_convex(p):
        raise NonConvexError("width is only defined here for convex CCW polygons")
    coords = p.coords()
    e = _edge_vectors(coords)
    lengths = np.hypot(e[:, 0], e[:, 1])
    w = math.inf
    for start in range(0, len(coords), _CHUNK):
        sl = slice(start, min(start + _CHUNK, len(coords)))
        # perpendicular distance of every vertex from each edge's line
        dx = coords[None, :, 0] - coords[sl, None, 0]
        dy = coords[None, :, 1] - coords[sl, None, 1]
        cross = e[sl, None, 0] * dy - e[sl, None, 1] * dx
        support = np.max(cross, axis=1) / lengths[sl]
        w = min(w, float(np.min(support)))
    return w


def diameter(p: SmallPolygon) -> tuple[float, tuple[tuple[int, int], ...]]:
    """Largest pairwise vertex distance and all pairs achieving it.

    Returns ``(d, edges)`` where ``edges`` lists every index pair whose
    distance is within ``DIAMETER_TOL`` of ``d`` -- the diameter-graph edge
    set of the polygon.
    """
    coords = p.coords()
    n = len(coords)
    dmax = 0.0
    for start in range(0, n, _CHUNK):
        sl = slice(start, min(start + _CHUNK, n))
        dx = coords[None, :, 0] - coords[sl, None, 0]
        dy = coords[None, :, 1] - coords[sl, None, 1]
        dmax = max(dmax, float(np.max(np.hypot(dx, dy))))
    edges = []
    for start in range(0, n, _CHUNK):
        sl = slice(start, min(start + _CHUNK, n))
        dx = coords[None, :, 0] - coords[sl, None, 0]
        dy = coords[None, :, 1] - coords[sl, None, 1]
        close = np.argwhere(np.hypot(dx, dy) >= dmax - DIAMETER_TOL)
        for i, j in close:
            a, b = start + int(i), int(j)
            if a < b:
                edges.append((a, b))
    return dmax, tuple(sorted(edges))


def area(p: SmallPolygon) -> float:
    """Shoelace area; positive for simple CCW polygons."""
    coords = p.coords()
    x, y = coords[:, 0], coords[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    return 0.5 * math.fsum((x * yn - xn * y).tolist())


def to_unit_perimeter(p: SmallPolygon) -> SmallPolygon:
    """Contract the polygon so its perimeter equals one.

    Widths and diameters scale by the same factor 1/L, so the width of the
    result equals ``width(p) / perimeter(p)``.
    """
    length = perimeter(p)
    if not length > 0.0:
        raise InvalidPolygonError("cannot rescale a polygon of zero perimeter")
    pts = tuple(Point2(v.x / length, v.y / length) for v in p.vertices)
    params = dict(p.params)
    params["unit_perimeter"] = True
    return SmallPolygon(pts, p.family, params)


def measure(p: SmallPolygon) -> MetricsReport:
    """Compute the full metrics report for a convex polygon."""
    d, edges = diameter(p)
    return MetricsReport(
        perimeter=perimeter(p),
        width=width(p),
        diameter=d,
        area=area(p),
        convex=True,  # width() above rejects non-convex input
        diameter_edges=edges,
    )


def small_polygon_violations(p: SmallPolygon) -> list[str]:
    """List every violated small-polygon invariant (empty list == valid).

    Checks: strict convexity in CCW order, diameter within 1e-9 of at most
    one, first vertex at the origin, and containment in the half-plane
    ``y >= -1e-12``.
    """
    problems = []
    if not is_convex(p):
        problems.append("not strictly convex in CCW order")
    d, _ = diameter(p)
    if d > 1.0 + DIAMETER_TOL:
        problems.append(f"diameter {d!r} exceeds 1 + {DIAMETER_TOL}")
    v0 = p.vertices[0]
    if math.hypot(v0.x, v0.y) > HALF_PLANE_TOL:
        problems.append(f"first vertex ({v0.x}, {v0.y}) is not at the origin")
    if any(v.y < -HALF_PLANE_TOL for v in p.vertices):
        problems.append("polygon leaves the half-plane y >= 0")
    return problems


def validate_small_polygon(p: SmallPolygon) -> None:
    """Raise :class:`InvalidPolygonError` unless all invariants hold."""
    problems = small_polygon_violations(p)
    if problems:
        raise InvalidPolygonError("; ".join(problems))


# ---------------------------------------------------------------------------
# JSON interchange: {"n": ..., "family": ..., "params": {...}, "vertices": [[x, y], ...]}
# with floats printed at 17 significant digits (lossless for binary64).
# ---------------------------------------------------------------------------


def _json17(obj) -> str:
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return format(obj, ".17g")
    if isinstance(obj, int):
        return str(obj)
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json17(v) for v in obj) + "]"
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {_json17(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def polygon_to_json(p: SmallPolygon) -> str:
    """Serialize a polygon to its JSON interchange form."""
    doc = {
        "n": p.n,
        "family": p.family.value,
        "params": p.params,
        "vertices": [[v.x, v.y] for v in p.vertices],
    }
    return _json17(doc)


def polygon_from_json(text: str) -> SmallPolygon:
    """Parse the JSON interchange form back into a polygon."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidPolygonError(f"malformed polygon JSON: {exc}") from exc
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise InvalidPolygonError("polygon JSON must be an object with a 'vertices' array")
    vertices = doc["vertices"]
    if not isinstance(vertices, list) or any(len(v) != 2 for v in vertices):
        raise InvalidPolygonError("'vertices' must be a list of [x, y] pairs")
    if "n" in doc and doc["n"] != len(vertices):
        raise InvalidPolygonError(f"vertex count {len(vertices)} does not match n={doc['n']}")
    family_tag = doc.get("family", Family.RAW.value)
    try:
        family = Family(family_tag)
    except ValueError as exc:
        raise InvalidPolygonError(f"unknown family tag {family_tag!r}") from exc
    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise InvalidPolygonError("'params' must be an object")
    return SmallPolygon.from_coords(vertices, family, params)
