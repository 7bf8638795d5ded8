"""Exact rational 2-D primitives: predicates, intersections, ray shooting, clipping.

All coordinates are arbitrary-precision rationals, so every predicate in here
is exact. Nothing in this module (or anything built on it) ever rounds.
"""
from __future__ import annotations

from typing import NamedTuple, Optional, Union

try:
    from gmpy2 import mpq as rat
except ImportError:  # pragma: no cover
    from fractions import Fraction as rat

# orientation() results
CW, COLLINEAR, CCW = -1, 0, 1
# point_in_polygon() results
INSIDE, ON_BOUNDARY, OUTSIDE = 1, 0, -1


class GeometryError(Exception):
    pass


class RayEscapes(GeometryError):
    """A ray shot from the boundary never re-hit the boundary."""


class TriangulationFailed(GeometryError):
    pass


class Point(NamedTuple):
    x: object
    y: object

    def __repr__(self):
        return f"({self.x}, {self.y})"


class Segment(NamedTuple):
    a: Point
    b: Point


def pt(x, y) -> Point:
    """Build a Point from ints, rationals or decimal strings, exactly."""
    return Point(rat(x), rat(y))


def cross(o: Point, a: Point, b: Point):
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def orientation(p: Point, q: Point, r: Point) -> int:
    c = cross(p, q, r)
    if c > 0:
        return CCW
    if c < 0:
        return CW
    return COLLINEAR


def dot(o: Point, a: Point, b: Point):
    return (a.x - o.x) * (b.x - o.x) + (a.y - o.y) * (b.y - o.y)


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """True iff p lies on the closed segment ab."""
    if orientation(a, b, p) != COLLINEAR:
        return False
    return (min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y))


def line_intersection(a: Point, b: Point, c: Point, d: Point) -> Optional[Point]:
    """Intersection point of lines ab and cd, or None if parallel."""
    rx, ry = b.x - a.x, b.y - a.y
    sx, sy = d.x - c.x, d.y - c.y
    denom = rx * sy - ry * sx
    if denom == 0:
        return None
    t = ((c.x - a.x) * sy - (c.y - a.y) * sx) / denom
    return Point(a.x + t * rx, a.y + t * ry)


def segment_intersect(s1: Segment, s2: Segment) -> Union[None, Point, Segment]:
    """Exact segment intersection.

    Returns None (disjoint), a Point (single shared point, endpoint contact
    included) or a Segment (collinear overlap of positive length).
    """
    a, b = s1
    c, d = s2
    d1 = orientation(c, d, a)
    d2 = orientation(c, d, b)
    d3 = orientation(a, b, c)
    d4 = orientation(a, b, d)

    if d1 != d2 and d3 != d4 and 0 not in (d1, d2, d3, d4):
        return line_intersection(a, b, c, d)

    if d1 == d2 == d3 == d4 == COLLINEAR:
        # project on the dominant axis of ab (or cd if ab degenerate)
        ref = s1 if (a.x, a.y) != (b.x, b.y) else s2
        use_x = ref.a.x != ref.b.x
        key = (lambda p: p.x) if use_x else (lambda p: p.y)
        lo1, hi1 = sorted((a, b), key=key)
        lo2, hi2 = sorted((c, d), key=key)
        lo = max(lo1, lo2, key=key)
        hi = min(hi1, hi2, key=key)
        if key(lo) > key(hi):
            return None
        if lo == hi:
            return lo
        return Segment(lo, hi)

    # non-collinear with a boundary contact
    if d1 == 0 and on_segment(a, c, d):
        return a
    if d2 == 0 and on_segment(b, c, d):
        return b
    if d3 == 0 and on_segment(c, a, b):
        return c
    if d4 == 0 and on_segment(d, a, b):
        return d
    if d1 != d2 and d3 != d4:
        return line_intersection(a, b, c, d)
    return None


def segments_cross_properly(s1: Segment, s2: Segment) -> bool:
    """True iff the open interiors of the two segments cross transversally."""
    a, b = s1
    c, d = s2
    d1 = orientation(c, d, a)
    d2 = orientation(c, d, b)
    d3 = orientation(a, b, c)
    d4 = orientation(a, b, d)
    return d1 * d2 < 0 and d3 * d4 < 0


def point_in_polygon(vertices, p: Point) -> int:
    """Exact point-vs-simple-polygon classification by crossing count."""
    n = len(vertices)
    inside = False
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        if on_segment(p, a, b):
            return ON_BOUNDARY
        if (a.y > p.y) != (b.y > p.y):
            t = (p.y - a.y) / (b.y - a.y)
            ix = a.x + t * (b.x - a.x)
            if ix > p.x:
                inside = not inside
    return INSIDE if inside else OUTSIDE


def _seg_param(s: Segment, p: Point):
    """Parameter of p along s (p assumed on the supporting line)."""
    if s.a.x != s.b.x:
        return (p.x - s.a.x) / (s.b.x - s.a.x)
    if s.a.y != s.b.y:
        return (p.y - s.a.y) / (s.b.y - s.a.y)
    return rat(0)


def seg_point_at(s: Segment, t) -> Point:
    return Point(s.a.x + t * (s.b.x - s.a.x), s.a.y + t * (s.b.y - s.a.y))


def _boundary_contact_params(vertices, s: Segment):
    """Sorted params along s where s touches the polygon boundary."""
    params = set()
    n = len(vertices)
    for i in range(n):
        hit = segment_intersect(s, Segment(vertices[i], vertices[(i + 1) % n]))
        if hit is None:
            continue
        if isinstance(hit, Point):
            params.add(_seg_param(s, hit))
        else:
            params.add(_seg_param(s, hit.a))
            params.add(_seg_param(s, hit.b))
    return sorted(params)


def segment_inside(vertices, s: Segment) -> bool:
    """True iff s lies in the closed region bounded by the polygon."""
    if point_in_polygon(vertices, s.a) == OUTSIDE:
        return False
    if point_in_polygon(vertices, s.b) == OUTSIDE:
        return False
    params = [t for t in _boundary_contact_params(vertices, s) if 0 <= t <= 1]
    checks = [rat(0), rat(1)] + params
    checks.sort()
    for t0, t1 in zip(checks, checks[1:]):
        if t0 == t1:
            continue
        mid = seg_point_at(s, (t0 + t1) / 2)
        if point_in_polygon(vertices, mid) == OUTSIDE:
            return False
    return True


def seg_region_spans(vertices, s: Segment):
    """Closed sub-intervals [t0, t1] (t0 < t1) of s inside the closed region."""
    params = [t for t in _boundary_contact_params(vertices, s) if 0 < t < 1]
    checks = sorted({rat(0), rat(1), *params})
    spans = []
    for t0, t1 in zip(checks, checks[1:]):
        mid = seg_point_at(s, (t0 + t1) / 2)
        if point_in_polygon(vertices, mid) != OUTSIDE:
            if spans and spans[-1][1] == t0:
                spans[-1] = (spans[-1][0], t1)
            else:
                spans.append((t0, t1))
    return spans


def seg_region_hit(vertices, s: Segment) -> bool:
    """True iff s touches the closed region at all (single points count)."""
    if point_in_polygon(vertices, s.a) != OUTSIDE:
        return True
    if point_in_polygon(vertices, s.b) != OUTSIDE:
        return True
    return bool(_boundary_contact_params(vertices, s))


def signed_area2(vertices):
    """Twice the signed area (positive for counterclockwise rings)."""
    total = rat(0)
    n = len(vertices)
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        total += a.x * b.y - b.x * a.y
    return total


def region_area(vertices):
    a = signed_area2(vertices)
    return (a if a >= 0 else -a) / 2


def simplify_ring(vertices):
    """Drop repeated points and collinear middle vertices from a ring."""
    pts = [p for i, p in enumerate(vertices) if p != vertices[(i + 1) % len(vertices)]]
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        out = []
        n = len(pts)
        for i in range(n):
            prv, cur, nxt = pts[i - 1], pts[i], pts[(i + 1) % n]
            if orientation(prv, cur, nxt) == COLLINEAR and dot(cur, prv, nxt) <= 0:
                changed = True
                continue
            out.append(cur)
        pts = out
    return pts


def ray_shoot(vertices, origin: Point, direction: Point):
    """First boundary point strictly beyond origin along the ray.

    Returns (hit_point, edge_index). direction is a vector, not a point.
    """
    best_t = None
    best = None
    n = len(vertices)
    dx, dy = direction.x, direction.y
    far = Point(origin.x + dx, origin.y + dy)
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        ex, ey = b.x - a.x, b.y - a.y
        denom = dx * ey - dy * ex
        if denom != 0:
            # origin + t*d == a + u*e
            wx, wy = a.x - origin.x, a.y - origin.y
            t = (wx * ey - wy * ex) / denom
            u = (wx * dy - wy * dx) / denom
            if t > 0 and 0 <= u <= 1:
                if best_t is None or t < best_t:
                    best_t = t
                    best = (seg_point_at(Segment(a, b), u), i)
        else:
            if orientation(origin, far, a) == COLLINEAR:
                for p in (a, b):
                    t = _seg_param(Segment(origin, far), p)
                    if t > 0 and (best_t is None or t < best_t):
                        best_t = t
                        best = (p, i)
    if best is None:
        raise RayEscapes(f"ray from {origin} along ({dx}, {dy}) misses the boundary")
    return best


def chord_shoot(vertices, origin: Point, direction: Point) -> Point:
    """Point where the ray from origin leaves the closed polygon.

    Unlike ray_shoot this skips grazing contacts (e.g. touching a reflex
    vertex and continuing inside).
    """
    n = len(vertices)
    dx, dy = direction.x, direction.y
    far = Point(origin.x + dx, origin.y + dy)
    events = set()
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        ex, ey = b.x - a.x, b.y - a.y
        denom = dx * ey - dy * ex
        if denom != 0:
            wx, wy = a.x - origin.x, a.y - origin.y
            t = (wx * ey - wy * ex) / denom
            u = (wx * dy - wy * dx) / denom
            if t > 0 and 0 <= u <= 1:
                events.add(t)
        else:
            if orientation(origin, far, a) == COLLINEAR:
                for p in (a, b):
                    t = _seg_param(Segment(origin, far), p)
                    if t > 0:
                        events.add(t)
    if not events:
        raise RayEscapes(f"chord from {origin} along ({dx}, {dy}) misses the boundary")
    ts = sorted(events)
    for i, t in enumerate(ts):
        t_next = ts[i + 1] if i + 1 < len(ts) else t + 1
        probe = Point(origin.x + (t + t_next) / 2 * dx, origin.y + (t + t_next) / 2 * dy)
        if point_in_polygon(vertices, probe) == OUTSIDE:
            return Point(origin.x + t * dx, origin.y + t * dy)
    raise RayEscapes("ray never leaves the polygon (not a simple region?)")


# ---------------------------------------------------------------------------
# triangulation and boolean intersection
# ---------------------------------------------------------------------------

def triangulate(vertices):
    """Ear-clip a CCW simple polygon into triangles of vertex indices."""
    n = len(vertices)
    if n < 3:
        raise TriangulationFailed("need at least 3 vertices")
    if signed_area2(vertices) <= 0:
        raise TriangulationFailed("triangulate expects a CCW ring")
    idx = list(range(n))
    tris = []
    start = 0
    while len(idx) > 3:
        m = len(idx)
        clipped = False
        for off in range(m):
            i = (start + off) % m
            ia, ib, ic = idx[i - 1], idx[i], idx[(i + 1) % m]
            a, b, c = vertices[ia], vertices[ib], vertices[ic]
            o = orientation(a, b, c)
            if o == CW:
                continue
            if o == COLLINEAR:
                if dot(b, a, c) <= 0:  # straight filler vertex
                    del idx[i]
                    start = i % (m - 1)
                    clipped = True
                    break
                continue
            ok = True
            for j in idx:
                if j in (ia, ib, ic):
                    continue
                p = vertices[j]
                if (orientation(a, b, p) != CW and orientation(b, c, p) != CW
                        and orientation(c, a, p) != CW):
                    ok = False
                    break
            if ok:
                tris.append((ia, ib, ic))
                del idx[i]
                start = i % (m - 1)
                clipped = True
                break
        if not clipped:
            raise TriangulationFailed("no ear found; ring may be non-simple")
    ia, ib, ic = idx
    if orientation(vertices[ia], vertices[ib], vertices[ic]) == CCW:
        tris.append((ia, ib, ic))
    return tris


def clip_halfplane(ring, a: Point, b: Point):
    """Part of a convex ring on or left of the directed line ab."""
    out = []
    n = len(ring)
    for i in range(n):
        cur, nxt = ring[i], ring[(i + 1) % n]
        oc = orientation(a, b, cur)
        on = orientation(a, b, nxt)
        if oc != CW:
            out.append(cur)
        if oc * on < 0:  # strict side change
            out.append(line_intersection(a, b, cur, nxt))
    return simplify_ring(out) if len(out) >= 3 else []


def _clip_tri_tri(t1, t2):
    """Intersection of two CCW triangles as a convex ring (possibly empty)."""
    ring = list(t1)
    for i in range(3):
        ring = clip_halfplane(ring, t2[i], t2[(i + 1) % 3])
        if len(ring) < 3:
            return []
    return ring


def _bbox(ring):
    xs = [p.x for p in ring]
    ys = [p.y for p in ring]
    return min(xs), min(ys), max(xs), max(ys)


def _bbox_overlap(b1, b2) -> bool:
    return not (b1[2] < b2[0] or b2[2] < b1[0] or b1[3] < b2[1] or b2[3] < b1[1])


def _ccw_ring(vertices):
    return list(vertices) if signed_area2(vertices) > 0 else list(reversed(vertices))


def _cw_sweep_key(ref: Point, v: Point):
    """Sort key: position of vector v sweeping clockwise from vector ref.

    Same-direction first, then the right half-plane, then opposite, then the
    left half-plane; within a half-plane ordered by the sweep. The second key
    component is only comparable within one bucket, which is all the sort
    needs.
    """
    c = ref.x * v.y - ref.y * v.x
    d = ref.x * v.x + ref.y * v.y
    if c == 0:
        return (0 if d > 0 else 2, rat(0))
    if c < 0:
        # angle in (0, pi): larger d/|v| comes first
        return (1, -d * d * (1 if d > 0 else -1) / (v.x * v.x + v.y * v.y))
    return (3, d * d * (1 if d > 0 else -1) / (v.x * v.x + v.y * v.y))


def glue_pieces(pieces):
    """Merge interior-disjoint convex CCW pieces into boundary rings.

    Returns one CCW ring per connected component. Pieces may meet along
    partial edges; edges are split at every piece vertex lying on them
    before opposite pairs cancel.
    """
    allpts = set()
    for ring in pieces:
        allpts.update(ring)

    def split_edges(ring):
        edges = []
        n = len(ring)
        for i in range(n):
            a, b = ring[i], ring[(i + 1) % n]
            seg = Segment(a, b)
            mids = [p for p in allpts if p not in (a, b) and on_segment(p, a, b)]
            mids.sort(key=lambda p: _seg_param(seg, p))
            chain = [a] + mids + [b]
            edges.extend(zip(chain, chain[1:]))
        return edges

    piece_edges = [split_edges(r) for r in pieces]

    # union-find over pieces sharing an (undirected) sub-edge
    owner = {}
    parent = list(range(len(pieces)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for pi, edges in enumerate(piece_edges):
        for a, b in edges:
            key = (b, a)
            if key in owner:
                ra, rb = find(owner[key]), find(pi)
                parent[ra] = rb
            owner[(a, b)] = pi

    groups = {}
    for pi in range(len(pieces)):
        groups.setdefault(find(pi), []).append(pi)

    out = []
    for members in groups.values():
        edge_count = {}
        for pi in members:
            for a, b in piece_edges[pi]:
                edge_count[(a, b)] = edge_count.get((a, b), 0) + 1
        boundary = {}
        for (a, b), cnt in edge_count.items():
            if cnt == 1 and (b, a) not in edge_count:
                boundary.setdefault(a, []).append(b)
        while boundary:
            start = min(boundary)
            ring = [start]
            cur = start
            prev = None
            while True:
                nxts = boundary[cur]
                if len(nxts) == 1 or prev is None:
                    nxt = nxts[0]
                else:
                    # pinch vertex: continue with the first outgoing edge met
                    # sweeping clockwise from the reversed incoming direction
                    ref = Point(prev.x - cur.x, prev.y - cur.y)
                    nxt = min(nxts, key=lambda cand: _cw_sweep_key(
                        ref, Point(cand.x - cur.x, cand.y - cur.y)))
                nxts.remove(nxt)
                if not nxts:
                    del boundary[cur]
                if nxt == start:
                    break
                ring.append(nxt)
                prev, cur = cur, nxt
            ring = simplify_ring(ring)
            if len(ring) >= 3 and signed_area2(ring) > 0:
                out.append(ring)
    return out


def clip_region(a_vertices, b_vertices):
    """Connected components of the intersection of two simple regions.

    Components of zero area are dropped. Vertex rings come back CCW.
    """
    a_ring = _ccw_ring(a_vertices)
    b_ring = _ccw_ring(b_vertices)
    if not _bbox_overlap(_bbox(a_ring), _bbox(b_ring)):
        return []
    tris_a = [[a_ring[i] for i in t] for t in triangulate(a_ring)]
    tris_b = [[b_ring[i] for i in t] for t in triangulate(b_ring)]
    boxes_b = [_bbox(t) for t in tris_b]
    pieces = []
    for ta in tris_a:
        box_a = _bbox(ta)
        for tb, box_b in zip(tris_b, boxes_b):
            if not _bbox_overlap(box_a, box_b):
                continue
            ring = _clip_tri_tri(ta, tb)
            if len(ring) >= 3 and signed_area2(ring) > 0:
                pieces.append(ring)
    if not pieces:
        return []
    return glue_pieces(pieces)


def representative_point(vertices) -> Point:
    """Deterministic interior point of a simple region."""
    ring = _ccw_ring(simplify_ring(vertices))
    tris = triangulate(ring)
    best = None
    best_key = None
    for ia, ib, ic in tris:
        a, b, c = ring[ia], ring[ib], ring[ic]
        area2 = cross(a, b, c)
        cx = (a.x + b.x + c.x) / 3
        cy = (a.y + b.y + c.y) / 3
        key = (-area2, cx, cy)
        if best_key is None or key < best_key:
            best_key = key
            best = Point(cx, cy)
    return best
