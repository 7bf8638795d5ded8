"""Cuts and the structures derived from them.

A cut is the extension of a polygon edge past a reflex vertex to its first
boundary hit. The portion of the polygon to the right of the directed cut
(walking the boundary clockwise, this is the arc from beta around to alpha)
is its pocket: the area a route must peek into to see past that corner.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .geom import (Point, Segment, clip_halfplane, glue_pieces,
                   point_in_polygon, rat, ray_shoot, segment_intersect,
                   signed_area2, simplify_ring, triangulate, _ccw_ring,
                   _seg_param, ON_BOUNDARY)
from .polygon import Polygon


class GroupingFailed(Exception):
    pass


class EmptyRegion(Exception):
    pass


@dataclass(frozen=True)
class Cut:
    reflex_vertex: int
    adjacent_vertex: int
    alpha: Point
    beta: Point
    hit_edge: int
    arc_start: object  # boundary param of beta
    arc_span: object   # pocket arc runs clockwise from beta to alpha

    @property
    def segment(self) -> Segment:
        return Segment(self.alpha, self.beta)

    def arc_end(self, n):
        return (self.arc_start + self.arc_span) % n


def _arc_contains(start, span, param, n, closed=False):
    off = (param - start) % n
    if closed:
        return off <= span
    return 0 < off < span


def compute_cuts(poly: Polygon):
    """Both edge-extension cuts of every reflex vertex."""
    vs = poly.vertices
    n = poly.n
    cuts = []
    for i in poly.reflex_indices():
        v = vs[i]
        for u_idx in ((i - 1) % n, (i + 1) % n):
            u = vs[u_idx]
            d = Point(v.x - u.x, v.y - u.y)
            w, edge = ray_shoot(vs, v, d)
            param_v = rat(i)
            param_w = edge + _seg_param(Segment(vs[edge], vs[(edge + 1) % n]), w)
            # pocket is the clockwise arc (v -> w) or (w -> v) that contains u
            span_vw = (param_w - param_v) % n
            if _arc_contains(param_v, span_vw, rat(u_idx), n):
                beta, alpha = v, w
                start, span = param_v, span_vw
            else:
                beta, alpha = w, v
                start, span = param_w, (param_v - param_w) % n
            cuts.append(Cut(i, u_idx, alpha, beta, edge, start, span))
    return cuts


def pocket_ring(poly: Polygon, cut: Cut):
    """Pocket boundary: the clockwise arc from beta to alpha plus the cut."""
    return poly.arc_points(cut.arc_start, cut.arc_end(poly.n))


def nonredundant_cuts(poly: Polygon, cuts):
    """Drop every cut whose pocket strictly contains another cut's pocket."""
    n = poly.n
    out = []
    for c in cuts:
        redundant = False
        for c2 in cuts:
            if c2 is c:
                continue
            off = (c2.arc_start - c.arc_start) % n
            if off + c2.arc_span <= c.arc_span and \
                    (off, c2.arc_span) != (0, c.arc_span):
                redundant = True
                break
        if not redundant:
            out.append(c)
    return out


def all_cuts_intersect(cuts) -> bool:
    """True iff every pair of cut segments shares at least one point."""
    for i, c1 in enumerate(cuts):
        for c2 in cuts[i + 1:]:
            if segment_intersect(c1.segment, c2.segment) is None:
                return False
    return True


def cuts_independent(poly: Polygon, c1: Cut, c2: Cut) -> bool:
    """Pockets disjoint as closed sets (boundary arcs must not touch)."""
    n = poly.n
    off12 = (c2.arc_start - c1.arc_start) % n
    off21 = (c1.arc_start - c2.arc_start) % n
    return off12 > c1.arc_span and off21 > c2.arc_span


def _greedy_from(poly: Polygon, cuts, first, n):
    """Pin `first` into the set, then earliest-closing greedy on the rest.

    Nonredundant pocket arcs are pairwise non-nested, so start order equals
    end order and every skipped cut starts inside the pocket of the member
    it conflicts with (which is what group_cuts later relies on).
    """
    chosen = [first]
    cut_point = first.arc_end(n)
    rest = []
    for c in cuts:
        if c is first or not cuts_independent(poly, first, c):
            continue
        start = (c.arc_start - cut_point) % n
        key = (start + c.arc_span, start, c.arc_start, c.reflex_vertex,
               c.adjacent_vertex)
        rest.append((key, c))
    rest.sort(key=lambda item: item[0])
    horizon = rat(0)
    for (end, start, *_), c in [(k, c) for k, c in rest]:
        if start > horizon and all(cuts_independent(poly, c, p) for p in chosen):
            chosen.append(c)
            horizon = end
    chosen.sort(key=lambda c: (c.arc_start, c.arc_span))
    return chosen


def max_independent_set(poly: Polygon, cuts):
    """Maximum set of cuts with pairwise disjoint pockets.

    The circular boundary is linearized at every candidate first member;
    among the pins that reach maximum cardinality, the first whose leftover
    cuts all group cleanly wins. Returns cuts sorted by pocket start.
    """
    n = poly.n
    if not cuts:
        return []
    candidates = []
    for first in sorted(cuts, key=lambda c: (c.arc_start, c.arc_span)):
        candidates.append(_greedy_from(poly, cuts, first, n))
    size = max(len(ch) for ch in candidates)
    best = None
    for chosen in candidates:
        if len(chosen) != size:
            continue
        try:
            group_cuts(poly, cuts, chosen)
        except GroupingFailed:
            continue
        best = chosen
        break
    if best is None:
        best = next(ch for ch in candidates if len(ch) == size)
    for i, c1 in enumerate(best):
        for c2 in best[i + 1:]:
            if segment_intersect(c1.segment, c2.segment) is not None:
                raise AssertionError("independent cuts with crossing segments")
    return best


def group_cuts(poly: Polygon, cuts, independent):
    """Assign each leftover cut to the pocket its start point falls in."""
    n = poly.n
    groups = [[] for _ in independent]
    members = set(id(c) for c in independent)
    for c in cuts:
        if id(c) in members:
            continue
        alpha_param = (c.arc_start + c.arc_span) % n
        home = None
        for gi, m in enumerate(independent):
            if _arc_contains(m.arc_start, m.arc_span, alpha_param, n):
                home = gi
                break
        if home is None:
            raise GroupingFailed(
                f"cut at vertex {c.reflex_vertex} fits no pocket of the "
                f"independent set")
        groups[home].append(c)
    return groups


@dataclass
class SpecialRegion:
    index: int
    polygon: list          # CCW ring
    convex_chain: list     # part of the boundary interior to P


def _halfplane_clip_pieces(regions, a: Point, b: Point):
    """Clip regions (CCW rings) to the closed half-plane left of a->b."""
    pieces = []
    for ring in regions:
        tris = [[ring[i] for i in t] for t in triangulate(ring)]
        for tri in tris:
            piece = clip_halfplane(tri, a, b)
            if len(piece) >= 3 and signed_area2(piece) > 0:
                pieces.append(piece)
    if not pieces:
        return []
    return glue_pieces(pieces)


def special_regions(poly: Polygon, independent, groups):
    """Intersect each pocket with the right half-planes of its group cuts."""
    out = []
    for gi, (m, group) in enumerate(zip(independent, groups)):
        regions = [_ccw_ring(simplify_ring(pocket_ring(poly, m)))]
        for c in group:
            # right of alpha->beta == left of beta->alpha
            regions = _halfplane_clip_pieces(regions, c.beta, c.alpha)
            if not regions:
                raise EmptyRegion(f"special region {gi} vanished")
        if len(regions) != 1:
            raise EmptyRegion(f"special region {gi} is not connected")
        ring = regions[0]
        chain = _interior_chain(poly, ring)
        out.append(SpecialRegion(gi, ring, chain))
    return out


def _interior_chain(poly: Polygon, ring):
    """The contiguous run of region boundary not lying on the polygon boundary."""
    n = len(ring)
    interior = []
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        mid = Point((a.x + b.x) / 2, (a.y + b.y) / 2)
        on_poly = (point_in_polygon(poly.vertices, mid) == ON_BOUNDARY)
        if not on_poly:
            interior.append(i)
    if not interior:
        return []
    # rotate so the interior run is contiguous in the list
    interior_set = set(interior)
    start = None
    for i in interior:
        if (i - 1) % n not in interior_set:
            start = i
            break
    if start is None:  # whole ring interior (cannot happen for real pockets)
        start = interior[0]
    chain = [ring[start]]
    i = start
    while i in interior_set:
        chain.append(ring[(i + 1) % n])
        i = (i + 1) % n
        if i == start:
            break
    return chain


@dataclass
class CutSystem:
    all_cuts: list
    nonredundant: list
    independent: list
    groups: list
    special_points: list = field(default_factory=list)
    special_regions: list = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.independent)


def build_cut_system(poly: Polygon, with_regions: bool = True) -> CutSystem:
    cuts = compute_cuts(poly)
    nonred = nonredundant_cuts(poly, cuts)
    independent = max_independent_set(poly, nonred)
    groups = group_cuts(poly, nonred, independent)
    points = [c.beta for c in independent]
    regions = special_regions(poly, independent, groups) if with_regions else []
    return CutSystem(cuts, nonred, independent, groups, points, regions)
