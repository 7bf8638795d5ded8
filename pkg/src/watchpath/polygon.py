"""Polygon model, validation of the standing assumptions, and test instance
generators.

A polygon is valid for route planning ("watchman polygon") when it is simple,
clockwise, has no three collinear vertices, and no two cut endpoints coincide
with each other or with a vertex. Validation checks all four exactly; nothing
is ever perturbed.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .geom import (CCW, COLLINEAR, CW, INSIDE, ON_BOUNDARY, OUTSIDE, Point,
                   RayEscapes, Segment, on_segment, orientation, point_in_polygon,
                   pt, rat, ray_shoot, segment_intersect, signed_area2, _seg_param)


class NotSimple(Exception):
    pass


class GenerationFailed(Exception):
    pass


class Polygon:
    """Simple polygon; planner inputs are stored clockwise."""

    __slots__ = ("vertices", "_reflex", "_simple")

    def __init__(self, vertices):
        self.vertices = tuple(vertices)
        self._reflex = None
        self._simple = None

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __eq__(self, other):
        return isinstance(other, Polygon) and self.vertices == other.vertices

    def __repr__(self):
        return f"Polygon({len(self.vertices)} vertices)"

    def edges(self):
        vs = self.vertices
        return [Segment(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def is_clockwise(self) -> bool:
        return signed_area2(self.vertices) < 0

    def reflex_indices(self):
        """Indices of reflex vertices (assumes clockwise storage)."""
        if self._reflex is None:
            vs = self.vertices
            n = len(vs)
            self._reflex = tuple(
                i for i in range(n)
                if orientation(vs[i - 1], vs[i], vs[(i + 1) % n]) == CCW)
        return self._reflex

    def contains(self, p: Point) -> int:
        return point_in_polygon(self.vertices, p)

    # --- boundary parameterization: edge index + position within the edge ---

    def param_of(self, p: Point, edge_hint: int = None):
        """Boundary parameter of a point on the boundary, in [0, n)."""
        vs = self.vertices
        n = len(vs)
        order = [edge_hint] if edge_hint is not None else range(n)
        for i in order:
            a, b = vs[i], vs[(i + 1) % n]
            if on_segment(p, a, b):
                return i + _seg_param(Segment(a, b), p)
        raise ValueError(f"{p} is not on the boundary")

    def point_at(self, param) -> Point:
        vs = self.vertices
        n = len(vs)
        i = int(param) % n
        t = param - int(param)
        a, b = vs[i], vs[(i + 1) % n]
        return Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))

    def arc_points(self, p_from, p_to):
        """Boundary points walked forward (clockwise) from p_from to p_to.

        Parameters are boundary params; endpoints are included.
        """
        n = self.n
        out = [self.point_at(p_from)]
        i = int(p_from)
        while True:
            i = (i + 1) % n
            v_param = i
            # is vertex i strictly inside the forward arc p_from -> p_to?
            span = (p_to - p_from) % n
            off = (v_param - p_from) % n
            if 0 < off < span:
                out.append(self.vertices[i])
            else:
                break
        end = self.point_at(p_to)
        if out[-1] != end:
            out.append(end)
        return out


@dataclass
class ValidationReport:
    is_simple: bool
    is_clockwise: bool
    no_three_collinear: bool
    extension_ok: bool
    reflex_vertices: list = field(default_factory=list)

    @property
    def is_watchman(self) -> bool:
        return (self.is_simple and self.is_clockwise
                and self.no_three_collinear and self.extension_ok)

    def flags(self):
        return {
            "isSimple": self.is_simple,
            "isClockwise": self.is_clockwise,
            "noThreeCollinear": self.no_three_collinear,
            "extensionCondition": self.extension_ok,
            "reflexVertices": list(self.reflex_vertices),
        }


def _edges_bbox(a: Point, b: Point):
    return (min(a.x, b.x), min(a.y, b.y), max(a.x, b.x), max(a.y, b.y))


def is_simple_polygon(vertices) -> bool:
    n = len(vertices)
    if n < 3:
        return False
    if len(set(vertices)) != n:
        return False
    boxes = [_edges_bbox(vertices[i], vertices[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                # adjacent edges may only share their common endpoint
                c, d = vertices[j], vertices[(j + 1) % n]
                hit = segment_intersect(Segment(a, b), Segment(c, d))
                shared = b if j == i + 1 else a
                if hit != shared:
                    return False
                continue
            bi, bj = boxes[i], boxes[j]
            if bi[2] < bj[0] or bj[2] < bi[0] or bi[3] < bj[1] or bj[3] < bi[1]:
                continue
            c, d = vertices[j], vertices[(j + 1) % n]
            if segment_intersect(Segment(a, b), Segment(c, d)) is not None:
                return False
    return True


def _no_three_collinear(vertices) -> bool:
    """No vertex may lie on the supporting line of any edge.

    This is the collinearity that matters: a vertex on an (extended) edge
    line makes a cut hit a vertex, which breaks pocket bookkeeping.
    """
    n = len(vertices)
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        for j in range(n):
            if j in (i, (i + 1) % n):
                continue
            if orientation(a, b, vertices[j]) == COLLINEAR:
                return False
    return True


def _cut_endpoints_clean(poly: Polygon) -> bool:
    """No cut endpoint may coincide with a vertex or another cut endpoint.

    This is the computable consequence of requiring that extensions of
    non-adjacent edges miss each other on the boundary.
    """
    vs = poly.vertices
    n = len(vs)
    vertex_set = set(vs)
    hits = []
    for i in poly.reflex_indices():
        v = vs[i]
        for u in (vs[i - 1], vs[(i + 1) % n]):
            d = Point(v.x - u.x, v.y - u.y)
            try:
                w, _edge = ray_shoot(vs, v, d)
            except RayEscapes:
                return False
            if w in vertex_set:
                return False
            hits.append(w)
    return len(hits) == len(set(hits))


def validate(poly: Polygon) -> ValidationReport:
    """Check every standing assumption exactly and report per-flag results."""
    simple = is_simple_polygon(poly.vertices)
    clockwise = poly.is_clockwise() if simple else False
    work = poly if clockwise else Polygon(tuple(reversed(poly.vertices)))
    collinear_ok = _no_three_collinear(poly.vertices)
    extension_ok = simple and collinear_ok and _cut_endpoints_clean(work)
    if simple:
        if clockwise:
            reflex = list(poly.reflex_indices())
        else:
            n = poly.n
            reflex = sorted((n - i) % n for i in work.reflex_indices())
    else:
        reflex = []
    return ValidationReport(simple, clockwise, collinear_ok, extension_ok, reflex)


def normalize_orientation(poly: Polygon) -> Polygon:
    """Return the same vertex cycle stored clockwise."""
    if not is_simple_polygon(poly.vertices):
        raise NotSimple("polygon is self-intersecting")
    if poly.is_clockwise():
        return poly
    vs = poly.vertices
    return Polygon((vs[0],) + tuple(reversed(vs[1:])))


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

def parse_polygon_text(text: str) -> Polygon:
    """Parse the instance format: first line n, then n lines of "x y"."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        rows.append((lineno, line))
    if not rows:
        raise ValueError("empty polygon file")
    try:
        n = int(rows[0][1])
    except ValueError:
        raise ValueError(f"line {rows[0][0]}: expected vertex count, got {rows[0][1]!r}")
    if len(rows) - 1 != n:
        raise ValueError(f"expected {n} vertices, found {len(rows) - 1}")
    verts = []
    for lineno, line in rows[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'x y', got {line!r}")
        try:
            verts.append(pt(parts[0], parts[1]))
        except ValueError:
            raise ValueError(f"line {lineno}: bad coordinate in {line!r}")
    return Polygon(verts)


def polygon_to_text(poly: Polygon, comment: str = "") -> str:
    lines = []
    if comment:
        for row in comment.splitlines():
            lines.append(f"# {row}")
    lines.append(str(poly.n))
    for v in poly.vertices:
        lines.append(f"{v.x} {v.y}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def _circle_dir(x):
    """Near-unit rational direction; x in (0,1) sweeps the circle evenly.

    Directions are snapped to a fixed 1/4096 grid so all coordinates stay
    exact rationals with small denominators.
    """
    import math
    angle = 2 * math.pi * (float(x) - rat(1, 2))
    return Point(rat(round(4096 * math.cos(angle)), 4096),
                 rat(round(4096 * math.sin(angle)), 4096))


def _mix(a: Point, b: Point, wa, wb) -> Point:
    return Point(wa * a.x + wb * b.x, wa * a.y + wb * b.y)


def _pinwheel(t: int, hub, out, lean, mouth):
    """CCW pinwheel ring: t arms leaning with the rotation, 4 vertices each.

    Each arm hangs off the hub between consecutive crotch directions; the
    trailing wall of an arm, extended past its root, crosses the arm's own
    mouth, so every arm is an independently guardable pocket. Radii carry a
    small per-arm wobble so no accidental symmetry lines up three vertices.
    """
    dirs = [_circle_dir(rat(2 * j + 1, 2 * t)) for j in range(t)]
    depth = out - hub
    ring = []
    for j in range(t):
        d0 = dirs[j]
        d1 = dirs[(j + 1) % t]
        wob = rat(j % 7 + 1, 16)  # absolute radial jitter, breaks symmetries
        lean_j = lean + rat(j % 5, 100)
        hub_j = hub + wob
        out_j = hub_j + depth + wob / 2
        crotch = _mix(d0, d1, hub_j, 0)
        tip_lead = _mix(d0, d1, out_j * (1 - lean_j), out_j * lean_j)
        tip_trail = _mix(d0, d1, out_j * (1 - lean_j - mouth),
                         out_j * (lean_j + mouth))
        root = hub_j - rat(5, 4)
        root_trail = _mix(d0, d1, root * (1 - mouth), root * mouth)
        ring.extend([crotch, tip_lead, tip_trail, root_trail])
    return ring


def generate(kind: str, t: int, variant: int = 0) -> Polygon:
    """Deterministic watchman polygon with at least t independent pockets.

    Families:
      staircase(t): pinwheel of t arms curling the same way; t=2 is the
        classic S shape. k = t; a path touching all arms needs t-1 links,
        and a t-1 link witness exists, so Opt = t-1 (Opt = 1 for t = 2).
      comb(t): fan of t leaning teeth over a flat handle. k = t, Opt = t-1.
      spiral(t): square spiral corridor, one leaning notch per winding
        plus the two corridor ends. k >= t; link depth grows with t.

    variant > 0 reshapes proportions without changing k.
    """
    if t < 2:
        raise GenerationFailed("need t >= 2")
    if kind == "staircase":
        ring = _staircase_ring(t, variant)
    elif kind == "comb":
        ring = _comb_ring(t, variant)
    elif kind == "spiral":
        ring = _spiral_ring(t, variant)
    else:
        raise GenerationFailed(f"unknown family {kind!r}")
    poly = Polygon((ring[0],) + tuple(reversed(ring[1:])))  # emit clockwise
    report = validate(poly)
    if not report.is_watchman:
        raise GenerationFailed(
            f"{kind}({t}, variant={variant}) failed validation: {report.flags()}")
    return poly


def _staircase_ring(t: int, variant: int):
    if t == 2:
        # the classic S band: two dead-end arms off a connecting column
        sx = 1 + rat(variant % 3, 4)
        sy = 1 + rat(variant % 2, 3)
        raw = [(0, 0), (10, 0), (10, 8), (-1, 8), (-1, 6), (8, 6), (8, 2), (0, 2)]
        return [Point(rat(x) * sx, rat(y) * sy) for x, y in raw]
    # hub radius grows ~t^2 so the trailing-wall ray of every arm re-hits
    # the boundary inside its own sector regardless of arm count
    hub = rat(max(9, t * t)) + rat(variant % 3)
    out = hub + 8 + rat(variant % 2, 2)
    lean = rat(3, 5) + rat(variant % 2, 25)
    mouth = rat(1, 5)
    return _pinwheel(t, hub, out, lean, mouth)


def _blade(d0, d1, hub_r, out_r, lean, mouth):
    """One leaning arm between directions d0 and d1: 4 CCW vertices."""
    crotch = _mix(d0, d1, hub_r, 0)
    tip_lead = _mix(d0, d1, out_r * (1 - lean), out_r * lean)
    tip_trail = _mix(d0, d1, out_r * (1 - lean - mouth), out_r * (lean + mouth))
    root = hub_r - rat(5, 4)
    root_trail = _mix(d0, d1, root * (1 - mouth), root * mouth)
    return [crotch, tip_lead, tip_trail, root_trail]


def _comb_ring(t: int, variant: int):
    # fan: t leaning teeth on a circular ceiling arc, handle room below;
    # the ceiling covers a third of the circle, so curvature needs (3t)^2
    hub = rat(max(24, 6 * t * t)) + rat(variant % 3)
    depth = 8 + rat(variant % 2, 2)
    lean = rat(3, 5)
    mouth = rat(1, 5)
    # ceiling spans 30..150 degrees; _circle_dir maps x=1/2 to angle 0
    x_lo, x_hi = rat(7, 12), rat(11, 12)
    dirs = [_circle_dir(x_lo + (x_hi - x_lo) * rat(j, t)) for j in range(t + 1)]
    ring = []
    side = hub + depth + 6
    ring.append(Point(-side, -hub // 2))              # bottom left
    ring.append(Point(side, -hub // 2 - 1))           # bottom right
    ring.append(Point(side - 1, hub * rat(3, 8)))     # right shoulder
    for j in range(t):
        wob = rat(j % 7 + 1, 16)
        ring.extend(_blade(dirs[j], dirs[j + 1], hub + wob,
                           hub + wob + depth + rat(j % 5, 8),
                           lean + rat(j % 5, 100), mouth))
    ring.append(_mix(dirs[t], dirs[t], hub + rat(1, 3), 0))  # ceiling end
    ring.append(Point(-side + 1, hub * rat(5, 16)))   # left shoulder
    return ring


def _spiral_ring(t: int, variant: int):
    if t == 2:
        # half a winding is just a mirrored S band
        sx = 1 + rat(variant % 3, 5)
        raw = [(0, 0), (-12, 0), (-12, 9), (1, 9), (1, 7), (-9, 7), (-9, 2), (0, 2)]
        return [Point(rat(x) * sx, rat(y)) for x, y in raw]
    # pinwheel whose hub radius grows with the angle; the wrap edge forms
    # a spiral seam, so arm depths differ along the winding
    base = rat(max(10, t * t)) + rat(variant % 3)
    growth = rat(3, 2) + rat(variant % 2, 4)
    depth = 7 + rat(variant % 2, 3)
    lean = rat(3, 5)
    mouth = rat(1, 5)
    dirs = [_circle_dir(rat(2 * j + 1, 2 * t)) for j in range(t)]
    ring = []
    for j in range(t):
        hub_j = base + growth * j + rat(j % 7, 16)
        ring.extend(_blade(dirs[j], dirs[(j + 1) % t], hub_j,
                           hub_j + depth + rat(j % 5, 8),
                           lean + rat(j % 5, 100), mouth))
    return ring
