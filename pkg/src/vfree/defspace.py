"""Deformation calculus on splittings with finite vertex groups.

Reducedness and redundancy predicates, elementary collapse and expansion
with explicit word transfer, slide moves (implemented literally as an
expansion followed by a collapse), the quotient degree-sum invariant,
isomorphism of graphs of groups, a small-groups catalog, and capped
enumeration of reduced splittings up to isomorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from . import fingroup as fg
from .fingroup import FiniteGroup, GroupHom
from .gogwords import Edge, GogError, GraphOfGroups, Traversal

ENUM_VERTEX_CAP = 3
ENUM_EDGE_CAP = 3
ENUM_ORDER_CAP = 12
EXPANSION_DEPTH_CAP = 3


@dataclass(frozen=True)
class DeformationMove:
    """A collapse, expansion, or slide, with every choice named explicitly.

    collapse: `edge` (a spanning-tree edge whose group fills one endpoint).
    expansion: `vertex` w, `subgroup` (element indices of H <= G_w), `moved`
    (the (edge id, end) pairs reattached to the new vertex), plus optional
    names for the new vertex and edge.
    slide: `edge`/`end` is the moving edge end, `over`/`over_end` the
    carrying edge end at the shared vertex.
    """

    kind: str
    edge: Optional[str] = None
    end: Optional[int] = None
    over: Optional[str] = None
    over_end: Optional[int] = None
    vertex: Optional[str] = None
    subgroup: Optional[tuple[int, ...]] = None
    moved: tuple = ()
    new_vertex: Optional[str] = None
    new_edge: Optional[str] = None


def collapse_move(edge: str) -> DeformationMove:
    return DeformationMove("collapse", edge=edge)


def expansion_move(vertex: str, subgroup: Sequence[int], moved: Sequence = (),
                   new_vertex: Optional[str] = None,
                   new_edge: Optional[str] = None) -> DeformationMove:
    return DeformationMove("expansion", vertex=vertex,
                           subgroup=tuple(sorted(set(subgroup))),
                           moved=tuple((e, d) for e, d in moved),
                           new_vertex=new_vertex, new_edge=new_edge)


def slide_move(edge: str, over: str, end: Optional[int] = None,
               over_end: Optional[int] = None) -> DeformationMove:
    return DeformationMove("slide", edge=edge, end=end, over=over,
                           over_end=over_end)


@dataclass(frozen=True)
class DegreeSum:
    """Sum of (degree - 2) over the quotient graph; constant under
    elementary deformations."""

    value: int
    terms: tuple[tuple[str, int], ...]


# -- local indices and predicates --------------------------------------------


def edge_index(gog: GraphOfGroups, eid: str, end: int) -> int:
    """[G_v : image of the edge group] at the given end."""
    return len(gog.transversal(Traversal(eid, end)))


def tree_degree(gog: GraphOfGroups, vid: str) -> int:
    """Degree, in the tree, of any vertex over vid: the sum of the edge
    indices over incident ends (loops count twice)."""
    return sum(len(gog.transversal(t)) for t in gog.incident(vid))


def quotient_degree(gog: GraphOfGroups, vid: str) -> int:
    return len(gog.incident(vid))


def degree_sum(gog: GraphOfGroups) -> DegreeSum:
    terms = tuple((v, quotient_degree(gog, v)) for v in sorted(gog.vertices))
    return DegreeSum(sum(d - 2 for _, d in terms), terms)


def collapsible_edges(gog: GraphOfGroups) -> list[str]:
    """Edges with distinct endpoints whose group fills one endpoint."""
    out = []
    for eid in sorted(gog.edges):
        e = gog.edges[eid]
        if e.ends[0] == e.ends[1]:
            continue
        if edge_index(gog, eid, 0) == 1 or edge_index(gog, eid, 1) == 1:
            out.append(eid)
    return out


def is_reduced(gog: GraphOfGroups) -> bool:
    return not collapsible_edges(gog)


def is_non_redundant(gog: GraphOfGroups) -> bool:
    """No tree vertex of degree 2."""
    return all(tree_degree(gog, v) != 2 for v in gog.vertices)


def is_minimal(gog: GraphOfGroups) -> bool:
    """No dangling vertex: a quotient leaf whose single incident edge has
    index 1 spans an invariant subtree and is forbidden."""
    for vid in gog.vertices:
        inc = gog.incident(vid)
        if len(inc) == 1 and len(gog.transversal(inc[0])) == 1 \
                and len(gog.vertices) > 1:
            return False
    return True


# -- elementary moves ---------------------------------------------------------


def _fresh_name(taken, stem: str) -> str:
    if stem not in taken:
        return stem
    k = 0
    while f"{stem}{k}" in taken:
        k += 1
    return f"{stem}{k}"


def _hom_section(hom: GroupHom) -> dict[int, int]:
    """Inverse of an injective hom, defined on its image."""
    return {hom(c): c for c in range(hom.source.order)}


def _apply_collapse(gog: GraphOfGroups, move: DeformationMove):
    eid = move.edge
    if eid not in gog.edges:
        raise GogError(f"unknown edge {eid!r}")
    e = gog.edges[eid]
    if e.ends[0] == e.ends[1]:
        raise GogError("collapse requires distinct endpoints")
    if eid not in gog.spanning_tree:
        raise GogError("collapse of a non-tree edge needs a different "
                       "spanning tree; re-root the graph first")
    if edge_index(gog, eid, 1) == 1:
        gone, kept = 1, 0
    elif edge_index(gog, eid, 0) == 1:
        gone, kept = 0, 1
    else:
        raise GogError("not collapsible: the edge group image is proper "
                       "at both endpoints")
    v, w = e.ends[gone], e.ends[kept]
    grp_v, grp_w = gog.vertices[v], gog.vertices[w]
    section = _hom_section(e.inj[gone])
    phi = GroupHom(grp_v, grp_w,
                   tuple(e.inj[kept](section[g]) for g in range(grp_v.order)))

    new_edges = []
    for fid in gog.edges:
        if fid == eid:
            continue
        f = gog.edges[fid]
        if v not in f.ends:
            new_edges.append(f)
            continue
        ends = tuple(w if x == v else x for x in f.ends)
        inj = tuple(phi.compose(f.inj[k]) if f.ends[k] == v else f.inj[k]
                    for k in (0, 1))
        new_edges.append(Edge(fid, f.group, ends, inj))

    vertices = [(vid, grp) for vid, grp in gog.vertices.items() if vid != v]
    base = w if gog.base_vertex == v else gog.base_vertex
    tree = gog.spanning_tree - {eid}
    result = GraphOfGroups(vertices, new_edges, base, tree)

    word_map = {}
    for vid in gog.vertices:
        grp = gog.vertices[vid]
        for name, idx in grp.generators.items():
            if idx == grp.identity:
                continue
            word_map[name] = fg.generator_word(grp_w, phi(idx)) \
                if vid == v else name
    for fid in gog.edges:
        if fid != eid and fid not in gog.spanning_tree:
            word_map[fid] = fid
    return result, word_map


def _apply_expansion(gog: GraphOfGroups, move: DeformationMove):
    w = move.vertex
    if w not in gog.vertices:
        raise GogError(f"unknown vertex {w!r}")
    grp_w = gog.vertices[w]
    elements = tuple(sorted(set(move.subgroup or ())))
    if not elements:
        raise GogError("expansion needs a nonempty subgroup")
    if set(fg.subgroup_closure(grp_w, elements).elements) != set(elements):
        raise GogError("expansion subgroup is not closed")
    incident_ends = {(t.edge, t.dir) for t in gog.incident(w)}
    for eid, d in move.moved:
        if (eid, d) not in incident_ends:
            raise GogError(f"moved end ({eid!r}, {d}) is not attached "
                           f"to {w!r}")
        if not set(gog.edges[eid].inj[d].mapping) <= set(elements):
            raise GogError(f"moved end ({eid!r}, {d}) does not map into "
                           "the expansion subgroup")

    taken = set(gog.vertices) | set(gog.edges)
    x = move.new_vertex or _fresh_name(taken, w + "'")
    if x in taken:
        raise GogError(f"new vertex name {x!r} already in use")
    taken.add(x)
    new_eid = move.new_edge or _fresh_name(taken, "f")
    if new_eid in taken:
        raise GogError(f"new edge name {new_eid!r} already in use")

    local, embed = fg.Subgroup(grp_w, elements).as_group()
    back = {parent: k for k, parent in embed.items()}
    include = GroupHom(local, grp_w,
                       tuple(embed[k] for k in range(local.order)))

    moved = set(move.moved)
    new_edges = []
    for fid, f in gog.edges.items():
        pulls = [k for k in (0, 1) if (fid, k) in moved]
        if not pulls:
            new_edges.append(f)
            continue
        ends = tuple(x if k in pulls else f.ends[k] for k in (0, 1))
        inj = tuple(GroupHom(f.group, local,
                             tuple(back[g] for g in f.inj[k].mapping))
                    if k in pulls else f.inj[k] for k in (0, 1))
        new_edges.append(Edge(fid, f.group, ends, inj))
    new_edges.append(Edge(new_eid, local, (w, x),
                          (include, GroupHom.identity(local))))

    vertices = list(gog.vertices.items()) + [(x, local)]
    tree = set(gog.spanning_tree) | {new_eid}
    result = GraphOfGroups(vertices, new_edges, gog.base_vertex, tree)
    if not is_minimal(result):
        raise GogError("expansion creates a dangling vertex "
                       "(non-minimal splitting)")

    word_map = {}
    for vid in gog.vertices:
        grp = gog.vertices[vid]
        for name, idx in grp.generators.items():
            if idx != grp.identity:
                word_map[name] = name
    for fid in gog.edges:
        if fid not in gog.spanning_tree:
            word_map[fid] = fid
    return result, word_map


def _slide_ends(gog: GraphOfGroups, move: DeformationMove):
    f, e = gog.edges[move.edge], gog.edges[move.over]
    pairs = []
    for i in (0, 1) if move.end is None else (move.end,):
        for j in (0, 1) if move.over_end is None else (move.over_end,):
            if f.ends[i] != e.ends[j]:
                continue
            if set(f.inj[i].mapping) <= set(e.inj[j].mapping):
                pairs.append((i, j))
    if not pairs:
        raise GogError("no slidable end pair: the edges must share a vertex "
                       "with the moving image inside the carrying image")
    if len(set(pairs)) > 1 and (move.end is None or move.over_end is None):
        raise GogError("ambiguous slide; specify end and over_end")
    return pairs[0]


def _apply_slide(gog: GraphOfGroups, move: DeformationMove):
    for eid in (move.edge, move.over):
        if eid not in gog.edges:
            raise GogError(f"unknown edge {eid!r}")
    if move.edge == move.over:
        raise GogError("cannot slide an edge over itself")
    if move.over not in gog.spanning_tree:
        raise GogError("slides are supported over spanning-tree edges only")
    i, j = _slide_ends(gog, move)
    e = gog.edges[move.over]
    shared = e.ends[j]
    carrier = tuple(sorted(set(e.inj[j].mapping)))
    step = expansion_move(shared, carrier,
                          moved=[(move.over, j), (move.edge, i)])
    expanded, _ = _apply_expansion(gog, step)
    try:
        return _apply_collapse(expanded, collapse_move(move.over))
    except GogError as err:
        raise GogError(f"slide failed at the collapse stage: {err}") from err


def apply_move(gog: GraphOfGroups, move: DeformationMove) -> GraphOfGroups:
    """Perform the move; the resulting graph of groups presents the same
    group. The induced identification of fundamental groups is available
    from move_word_map."""
    return _dispatch(gog, move)[0]


def move_word_map(gog: GraphOfGroups, move: DeformationMove) -> dict[str, str]:
    """Generator-image dictionary of the isomorphism induced by the move:
    each letter of the source graph is sent to a word over the result."""
    return _dispatch(gog, move)[1]


def _dispatch(gog: GraphOfGroups, move: DeformationMove):
    if move.kind == "collapse":
        return _apply_collapse(gog, move)
    if move.kind == "expansion":
        return _apply_expansion(gog, move)
    if move.kind == "slide":
        return _apply_slide(gog, move)
    raise GogError(f"unknown move kind {move.kind!r}")


# -- isomorphism of graphs of groups ------------------------------------------


def _edge_compatible(e1: Edge, e2: Edge, alphas, flip: bool) -> bool:
    """Does some edge-group isomorphism commute with the injections up to
    conjugation at each end?"""
    if e1.group.order != e2.group.order:
        return False
    ends2 = (e2.inj[1], e2.inj[0]) if flip else e2.inj
    a0, a1 = alphas
    t0, t1 = ends2[0].target, ends2[1].target
    im0 = set(ends2[0].mapping)
    sec0 = _hom_section(ends2[0])
    dom = range(e1.group.order)
    for c0 in range(t0.order):
        twisted = [t0.conj(c0, a0(e1.inj[0](x))) for x in dom]
        if set(twisted) != im0:
            continue
        beta = [sec0[y] for y in twisted]
        if len(set(beta)) != e1.group.order:
            continue
        lhs = [ends2[1](b) for b in beta]
        for c1 in range(t1.order):
            if all(lhs[x] == t1.conj(c1, a1(e1.inj[1](x))) for x in dom):
                return True
    return False


def are_gog_isomorphic(g1: GraphOfGroups, g2: GraphOfGroups) -> bool:
    """Isomorphism of graphs of groups: a graph isomorphism together with
    vertex and edge group isomorphisms commuting with the injections up to
    conjugation in the target vertex groups."""
    v1, v2 = sorted(g1.vertices), sorted(g2.vertices)
    if len(v1) != len(v2) or len(g1.edges) != len(g2.edges):
        return False
    orders1 = sorted(g1.vertices[v].order for v in v1)
    orders2 = sorted(g2.vertices[v].order for v in v2)
    if orders1 != orders2:
        return False
    if sorted(e.group.order for e in g1.edges.values()) != \
            sorted(e.group.order for e in g2.edges.values()):
        return False

    e1_ids = sorted(g1.edges)
    for perm in itertools.permutations(v2):
        sigma = dict(zip(v1, perm))
        if any(g1.vertices[v].order != g2.vertices[sigma[v]].order
               or quotient_degree(g1, v) != quotient_degree(g2, sigma[v])
               for v in v1):
            continue
        # Match edges by the unordered pair of mapped endpoints.
        buckets: dict[tuple, list[str]] = {}
        for eid in sorted(g2.edges):
            e = g2.edges[eid]
            buckets.setdefault(tuple(sorted(e.ends)), []).append(eid)
        target_of: dict[str, tuple] = {}
        ok = True
        for eid in e1_ids:
            key = tuple(sorted(sigma[x] for x in g1.edges[eid].ends))
            if not buckets.get(key):
                ok = False
                break
            target_of[eid] = key
        if not ok:
            continue
        iso_lists = {}
        for v in v1:
            isos = list(fg.isomorphisms_iter(g1.vertices[v],
                                             g2.vertices[sigma[v]]))
            if not isos:
                break
            iso_lists[v] = isos
        if len(iso_lists) != len(v1):
            continue
        if _match_edges(g1, g2, sigma, e1_ids, buckets, iso_lists):
            return True
    return False


def _match_edges(g1, g2, sigma, e1_ids, buckets, iso_lists) -> bool:
    for alpha_choice in itertools.product(*(iso_lists[v] for v in sorted(iso_lists))):
        alpha = dict(zip(sorted(iso_lists), alpha_choice))

        def assign(idx: int, pool: dict) -> bool:
            if idx == len(e1_ids):
                return True
            e1 = g1.edges[e1_ids[idx]]
            key = tuple(sorted(sigma[x] for x in e1.ends))
            for pick in list(pool[key]):
                e2 = g2.edges[pick]
                for flip in (False, True):
                    ends2 = (e2.ends[1], e2.ends[0]) if flip else e2.ends
                    if tuple(sigma[x] for x in e1.ends) != ends2:
                        continue
                    a = (alpha[e1.ends[0]], alpha[e1.ends[1]])
                    if _edge_compatible(e1, e2, a, flip):
                        pool[key].remove(pick)
                        if assign(idx + 1, pool):
                            return True
                        pool[key].append(pick)
            return False

        pool = {k: list(v) for k, v in buckets.items()}
        if assign(0, pool):
            return True
    return False


# -- small groups and enumeration ---------------------------------------------


def _dihedral(n: int) -> FiniteGroup:
    rot = fg.build_cyclic(n, "r")
    flip = fg.build_cyclic(2, "f")
    return fg.build_semidirect(rot, flip,
                               {"f": tuple((-i) % n for i in range(n))})


def small_groups(max_order: int) -> list[FiniteGroup]:
    """All groups of order <= max_order (max 12) up to isomorphism."""
    if max_order > ENUM_ORDER_CAP:
        raise GogError(f"small-groups catalog capped at order {ENUM_ORDER_CAP}")
    groups: list[FiniteGroup] = []
    for n in range(1, max_order + 1):
        groups.append(fg.build_cyclic(n))
        if n == 4:
            groups.append(fg.build_boolean_vectors(2))
        if n == 6:
            groups.append(_dihedral(3))
        if n == 8:
            groups.append(fg.build_direct_product(fg.build_cyclic(4, "a"),
                                                  fg.build_cyclic(2, "b")))
            groups.append(fg.build_boolean_vectors(3))
            groups.append(_dihedral(4))
            groups.append(fg.build_dicyclic(2))
        if n == 9:
            groups.append(fg.build_direct_product(fg.build_cyclic(3, "a"),
                                                  fg.build_cyclic(3, "b")))
        if n == 10:
            groups.append(_dihedral(5))
        if n == 12:
            groups.append(fg.build_direct_product(fg.build_cyclic(6, "a"),
                                                  fg.build_cyclic(2, "b")))
            groups.append(_dihedral(6))
            groups.append(fg.group_from_permutations(
                {"p": (1, 2, 0, 3), "q": (1, 0, 3, 2)}))
            groups.append(fg.build_dicyclic(3))
    return groups


def _connected_shapes(p: int, q: int):
    """Connected multigraph shapes: multisets of endpoint pairs (i, j)."""
    slots = [(i, j) for i in range(p) for j in range(i, p)]
    for combo in itertools.combinations_with_replacement(slots, q):
        parent = list(range(p))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i, j in combo:
            parent[find(i)] = find(j)
        if len({find(i) for i in range(p)}) == 1:
            yield combo


def _candidate_graph(shape, vgroups, egroups, monos) -> Optional[GraphOfGroups]:
    vertices = [(f"v{k}", grp) for k, grp in enumerate(vgroups)]
    edges = []
    parent = list(range(len(vgroups)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    tree = []
    for k, ((i, j), egrp, (mi, mj)) in enumerate(zip(shape, egroups, monos)):
        eid = f"e{k}"
        edges.append(Edge(eid, egrp, (f"v{i}", f"v{j}"), (mi, mj)))
        if i != j and find(i) != find(j):
            parent[find(i)] = find(j)
            tree.append(eid)
    try:
        return GraphOfGroups(vertices, edges, "v0", tree)
    except GogError:
        return None


def enumerate_reduced(vertex_count: int, edge_count: int, max_order: int,
                      vertex_groups: Optional[Sequence[FiniteGroup]] = None,
                      edge_groups: Optional[Sequence[FiniteGroup]] = None
                      ) -> list[GraphOfGroups]:
    """All reduced minimal splittings with the given counts, up to
    isomorphism of graphs of groups.

    Optional vertex_groups / edge_groups pin the group multisets instead
    of drawing them from the small-groups catalog.
    """
    p, q, r = vertex_count, edge_count, max_order
    if p < 1 or p > ENUM_VERTEX_CAP or q < 0 or q > ENUM_EDGE_CAP \
            or r < 1 or r > ENUM_ORDER_CAP:
        raise GogError(
            f"enumeration capped at {ENUM_VERTEX_CAP} vertices, "
            f"{ENUM_EDGE_CAP} edges, order {ENUM_ORDER_CAP}")
    catalog = [g for g in small_groups(r)]
    if vertex_groups is not None and len(vertex_groups) != p:
        raise GogError("vertex_groups must list one group per vertex")
    if edge_groups is not None and len(edge_groups) != q:
        raise GogError("edge_groups must list one group per edge")

    found: list[GraphOfGroups] = []
    for shape in _connected_shapes(p, q):
        if vertex_groups is None:
            vertex_pools = itertools.product(catalog, repeat=p)
        else:
            seen = set()
            pools = []
            for perm in itertools.permutations(range(p)):
                key = tuple(id(vertex_groups[k]) for k in perm)
                if key not in seen:
                    seen.add(key)
                    pools.append([vertex_groups[k] for k in perm])
            vertex_pools = pools
        for vgroups in vertex_pools:
            for egroups in _edge_group_pools(shape, vgroups, catalog,
                                             edge_groups):
                mono_pools = []
                for (i, j), egrp in zip(shape, egroups):
                    mi = fg.all_monomorphisms(egrp, vgroups[i])
                    mj = fg.all_monomorphisms(egrp, vgroups[j])
                    if not mi or not mj:
                        mono_pools = None
                        break
                    mono_pools.append([(a, b) for a in mi for b in mj])
                if mono_pools is None:
                    continue
                for monos in itertools.product(*mono_pools):
                    cand = _candidate_graph(shape, vgroups, egroups, monos)
                    if cand is None:
                        continue
                    if not (is_reduced(cand) and is_minimal(cand)):
                        continue
                    found.append(cand)

    found.sort(key=_canonical_key)
    kept: list[GraphOfGroups] = []
    for cand in found:
        if not any(are_gog_isomorphic(cand, old) for old in kept):
            kept.append(cand)
    return kept


def _edge_group_pools(shape, vgroups, catalog, edge_groups):
    if edge_groups is not None:
        seen = set()
        for perm in itertools.permutations(range(len(shape))):
            key = tuple(id(edge_groups[k]) for k in perm)
            if key not in seen:
                seen.add(key)
                yield [edge_groups[k] for k in perm]
        return
    per_edge = []
    for i, j in shape:
        cap = min(vgroups[i].order, vgroups[j].order)
        per_edge.append([c for c in catalog if c.order <= cap])
    yield from itertools.product(*per_edge)


def _canonical_key(gog: GraphOfGroups):
    verts = sorted(gog.vertices[v].order for v in gog.vertices)
    edges = sorted((e.group.order,) + tuple(sorted(
        gog.vertices[x].order for x in e.ends)) for e in gog.edges.values())
    degs = sorted(quotient_degree(gog, v) for v in gog.vertices)
    return (verts, edges, degs)


# -- bounded expansion search --------------------------------------------------


def expansion_moves(gog: GraphOfGroups) -> list[DeformationMove]:
    """Every legal elementary expansion of the graph, with the subgroup and
    the reattached ends spelled out. Moves that would leave a dangling
    vertex are filtered here by a dry run."""
    out = []
    for w in sorted(gog.vertices):
        ends = [(t.edge, t.dir) for t in gog.incident(w)]
        for sub in fg.all_subgroups(gog.vertices[w]):
            allowed = [pair for pair in ends
                       if set(gog.edges[pair[0]].inj[pair[1]].mapping)
                       <= set(sub.elements)]
            for k in range(len(allowed) + 1):
                for moved in itertools.combinations(allowed, k):
                    move = expansion_move(w, sub.elements, moved)
                    try:
                        _apply_expansion(gog, move)
                    except GogError:
                        continue
                    out.append(move)
    return out


def nonredundant_expansions(gog: GraphOfGroups, depth: int,
                            with_report: bool = False):
    """The seed graph plus every non-redundant splitting reachable by at
    most `depth` elementary expansions, up to isomorphism.

    With with_report=True also returns {"explored": n,
    "frontier_all_redundant": bool}; the flag witnesses that continuing
    past the horizon only revisits redundant graphs.
    """
    if depth < 0 or depth > EXPANSION_DEPTH_CAP:
        raise GogError(f"expansion depth capped at {EXPANSION_DEPTH_CAP}")
    if not is_reduced(gog):
        raise GogError("expansion search expects a reduced splitting")
    seen: list[GraphOfGroups] = [gog]
    results: list[GraphOfGroups] = [gog]
    frontier: list[GraphOfGroups] = [gog]
    for _ in range(depth):
        nxt = []
        for cur in frontier:
            for move in expansion_moves(cur):
                try:
                    new = apply_move(cur, move)
                except GogError:
                    continue
                if any(are_gog_isomorphic(new, old) for old in seen):
                    continue
                seen.append(new)
                nxt.append(new)
                if is_non_redundant(new):
                    results.append(new)
        frontier = nxt
    if with_report:
        report = {"explored": len(seen),
                  "frontier_all_redundant": all(not is_non_redundant(g)
                                                for g in frontier)}
        return results, report
    return results
