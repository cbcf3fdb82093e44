"""Local geometry of the tree associated with a graph of finite groups.

Vertices of the (usually infinite) tree are stored intrinsically as a
vertex orbit plus a canonical coset representative: the normal form of a
path from the base vertex with its trailing free element dropped.  All
queries (adjacency, distance, classification, axis windows) are local;
nothing global is ever materialized except small breadth-first balls used
by callers that explicitly ask for them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .gogwords import (
    GogError,
    GraphOfGroups,
    NormalForm,
    WordLike,
    end_vertex,
    normal_form,
    cyclic_reduction,
    path_invert,
    path_multiply,
    path_normal_form,
)


@dataclass(frozen=True)
class TreeVertex:
    """A tree vertex g·(lift of orbit vertex), with g the canonical
    minimal coset representative."""

    orbit: str
    coset_rep: NormalForm


@dataclass(frozen=True)
class AxisSegment:
    element: NormalForm
    vertices: tuple[TreeVertex, ...]
    period: int


@dataclass(frozen=True)
class Classification:
    kind: str  # "elliptic" or "hyperbolic"
    fixed_vertex: Optional[TreeVertex]
    translation_length: int


def vertex_from_path(gog: GraphOfGroups, p: NormalForm) -> TreeVertex:
    """The tree vertex reached by a path word from the base (the trailing
    element is dropped; it stabilizes the vertex)."""
    p = path_normal_form(gog, p.start, p.steps, p.tail)
    orbit = end_vertex(gog, p)
    rep = NormalForm(p.start, p.steps, gog.vertices[orbit].identity)
    return TreeVertex(orbit, rep)


def standard_vertex(gog: GraphOfGroups, orbit: str) -> TreeVertex:
    """The canonical lift of a quotient vertex: reached by the spanning
    tree path from the base."""
    if orbit not in gog.vertices:
        raise GogError(f"unknown vertex {orbit!r}")
    steps = [(gog.vertices[gog.near(t)].identity, t)
             for t in gog.tree_path(gog.base_vertex, orbit)]
    return vertex_from_path(
        gog, path_normal_form(gog, gog.base_vertex, steps,
                              gog.vertices[orbit].identity))


def base_vertex(gog: GraphOfGroups) -> TreeVertex:
    return standard_vertex(gog, gog.base_vertex)


def translate(gog: GraphOfGroups, g: WordLike, v: TreeVertex) -> TreeVertex:
    """The action of a group element on a tree vertex."""
    g_nf = normal_form(gog, g)
    return vertex_from_path(gog, path_multiply(gog, g_nf, v.coset_rep))


def neighbors(gog: GraphOfGroups, v: TreeVertex) -> list[TreeVertex]:
    """All adjacent tree vertices: one per coset of each incident edge
    group image (the count is the sum of the indices)."""
    out = []
    for t in gog.incident(v.orbit):
        far_id = gog.vertices[gog.far(t)].identity
        for r in gog.transversal(t):
            p = path_normal_form(gog, v.coset_rep.start,
                                 list(v.coset_rep.steps) + [(r, t)], far_id)
            out.append(vertex_from_path(gog, p))
    return out


def distance(gog: GraphOfGroups, u: TreeVertex, w: TreeVertex) -> int:
    """Tree distance, read off the normalized connecting path."""
    p = path_multiply(gog, path_invert(gog, u.coset_rep), w.coset_rep)
    return len(p.steps)


def classify(gog: GraphOfGroups, g: WordLike) -> Classification:
    """Elliptic elements come with a fixed vertex, hyperbolic ones with
    their translation length (the cyclically reduced syllable count)."""
    conj, core = cyclic_reduction(gog, g)
    if not core.steps:
        return Classification("elliptic", vertex_from_path(gog, conj), 0)
    return Classification("hyperbolic", None, len(core.steps))


def axis_window(gog: GraphOfGroups, g: WordLike, periods: int,
                anchor: Optional[TreeVertex] = None) -> AxisSegment:
    """A geodesic window of the axis covering `periods` fundamental
    domains, starting at a vertex displaced by exactly the translation
    length (the canonical anchor from cyclic reduction, or a caller-chosen
    axis vertex)."""
    if periods < 1:
        raise GogError("periods must be positive")
    g_nf = normal_form(gog, g)
    conj, core = cyclic_reduction(gog, g_nf)
    if not core.steps:
        raise GogError("no axis: element is elliptic")
    length = len(core.steps)
    if anchor is None:
        anchor = vertex_from_path(gog, conj)
    stretch = path_multiply(
        gog, path_invert(gog, anchor.coset_rep),
        path_multiply(gog, g_nf, anchor.coset_rep))
    if len(stretch.steps) != length:
        raise GogError("anchor is not on the axis")
    verts = [anchor]
    segment_base = anchor.coset_rep
    for _ in range(periods):
        for i in range(1, len(stretch.steps) + 1):
            prefix = NormalForm(stretch.start, stretch.steps[:i],
                                gog.vertices[gog.far(stretch.steps[i - 1][1])].identity)
            verts.append(vertex_from_path(
                gog, path_multiply(gog, segment_base, prefix)))
        segment_base = path_multiply(gog, segment_base, stretch)
    return AxisSegment(g_nf, tuple(verts), length)


def ball(gog: GraphOfGroups, center: TreeVertex, radius: int
         ) -> dict[TreeVertex, int]:
    """Breadth-first ball: vertex -> distance from the center.  Intended
    for small radii; the ball grows exponentially."""
    dist = {center: 0}
    frontier = [center]
    for d in range(1, radius + 1):
        nxt = []
        for v in frontier:
            for w in neighbors(gog, v):
                if w not in dist:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    return dist
