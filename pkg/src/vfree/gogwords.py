"""Graphs of finite groups and exact arithmetic in their fundamental groups.

A GraphOfGroups carries a finite group at each vertex and edge, with a
verified injection of each edge group into both endpoint groups.  Elements
of the fundamental group are loop words at the base vertex; more generally
the machinery works with path words between arbitrary vertices, which is
what the tree-geometry layer needs.

Words are normalized left to right into a canonical syllable form: each
syllable is a coset representative followed by an edge traversal, with one
trailing free element.  Representatives are the minimal-index elements of
their cosets, so equality of group elements is literal equality of the
normalized data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, Union

from .fingroup import (
    FiniteGroup,
    GroupError,
    GroupHom,
    check_hom,
    coset_data,
    evaluate_word,
    generator_word,
    group_from_json,
    group_to_json,
)


class GogError(ValueError):
    """Raised for malformed graphs of groups or malformed words."""


class Traversal(NamedTuple):
    """A directed crossing of an edge: dir 0 runs ends[0] -> ends[1]."""

    edge: str
    dir: int

    def reverse(self) -> "Traversal":
        return Traversal(self.edge, 1 - self.dir)


@dataclass(frozen=True)
class Edge:
    id: str
    group: FiniteGroup
    ends: tuple[str, str]
    inj: tuple[GroupHom, GroupHom]


@dataclass(frozen=True)
class GroupWord:
    """Raw input word: a loop at the base vertex, not yet normalized.

    items entries are either ("g", vertex_id, element_index) or a Traversal.
    Spanning-tree crossings appear as explicit traversals here; the parser
    inserts them, they carry no letter in input syntax.
    """

    items: tuple


@dataclass(frozen=True)
class NormalForm:
    """Canonical path word: start vertex, (representative, traversal) steps,
    and one trailing free element in the group at the end vertex."""

    start: str
    steps: tuple[tuple[int, Traversal], ...]
    tail: int

    def syllable_length(self) -> int:
        return len(self.steps)


WordLike = Union[GroupWord, NormalForm]


class GraphOfGroups:
    """Immutable graph of finite groups with precomputed coset tables."""

    __slots__ = ("vertices", "edges", "base_vertex", "spanning_tree",
                 "_push", "_pinch", "_transversal", "_incident",
                 "_tree_step", "_letter_home")

    def __init__(self, vertices: Iterable[tuple[str, FiniteGroup]],
                 edges: Iterable[Edge], base_vertex: str,
                 spanning_tree: Iterable[str]):
        self.vertices: dict[str, FiniteGroup] = {}
        for vid, grp in vertices:
            if vid in self.vertices:
                raise GogError(f"duplicate vertex id {vid!r}")
            self.vertices[vid] = grp
        if base_vertex not in self.vertices:
            raise GogError(f"base vertex {base_vertex!r} is not a vertex")
        self.base_vertex = base_vertex

        self.edges: dict[str, Edge] = {}
        for e in edges:
            if e.id in self.edges:
                raise GogError(f"duplicate edge id {e.id!r}")
            if e.id in self.vertices:
                raise GogError(f"edge id {e.id!r} collides with a vertex id")
            for k in (0, 1):
                if e.ends[k] not in self.vertices:
                    raise GogError(f"edge {e.id!r} endpoint {e.ends[k]!r} missing")
                hom = e.inj[k]
                if hom.source is not e.group or hom.target is not self.vertices[e.ends[k]]:
                    raise GogError(f"edge {e.id!r} injection {k} connects wrong groups")
                report = check_hom(hom)
                if report.status == "invalid" or not hom.is_injective():
                    raise GogError(f"edge {e.id!r} injection {k} is not a monomorphism")
            self.edges[e.id] = e

        self.spanning_tree = frozenset(spanning_tree)
        self._validate_graph()

        self._incident: dict[str, list[Traversal]] = {v: [] for v in self.vertices}
        for eid in sorted(self.edges):
            e = self.edges[eid]
            for d in (0, 1):
                self._incident[e.ends[d]].append(Traversal(eid, d))

        self._push = {}
        self._pinch = {}
        self._transversal = {}
        for eid, e in self.edges.items():
            for d in (0, 1):
                t = Traversal(eid, d)
                near = self.vertices[e.ends[d]]
                i_near, i_far = e.inj[d], e.inj[1 - d]
                image = [i_near(c) for c in range(e.group.order)]
                preim = {h: c for c, h in enumerate(image)}
                reps, decomp = coset_data(near, image)
                self._push[t] = {g: (r, i_far(preim[h]))
                                 for g, (r, h) in decomp.items()}
                self._pinch[t] = {h: i_far(c) for c, h in enumerate(image)}
                self._transversal[t] = reps

        self._tree_step: dict[str, Optional[Traversal]] = {self.base_vertex: None}
        frontier = [self.base_vertex]
        while frontier:
            v = frontier.pop(0)
            for t in self._incident[v]:
                if t.edge not in self.spanning_tree:
                    continue
                w = self.far(t)
                if w not in self._tree_step:
                    self._tree_step[w] = t.reverse()  # step from w toward base
                    frontier.append(w)
        if len(self._tree_step) != len(self.vertices):
            raise GogError("spanning tree does not reach every vertex")

        self._letter_home: dict[str, list[str]] = {}
        for vid in sorted(self.vertices):
            for name in self.vertices[vid].generators:
                self._letter_home.setdefault(name, []).append(vid)

    def _validate_graph(self) -> None:
        if len(self.spanning_tree) != len(self.vertices) - 1:
            raise GogError("spanning tree must have (vertex count - 1) edges")
        for eid in self.spanning_tree:
            if eid not in self.edges:
                raise GogError(f"spanning tree edge {eid!r} is not an edge")
            if self.edges[eid].ends[0] == self.edges[eid].ends[1]:
                raise GogError(f"loop edge {eid!r} cannot lie in a spanning tree")
        parent = {v: v for v in self.vertices}

        def find(x: str) -> str:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for eid in self.spanning_tree:
            a, b = (find(v) for v in self.edges[eid].ends)
            if a == b:
                raise GogError("spanning tree contains a cycle")
            parent[a] = b
        for eid, e in self.edges.items():
            a, b = (find(v) for v in e.ends)
            parent[a] = b
        roots = {find(v) for v in self.vertices}
        if len(roots) != 1:
            raise GogError("underlying graph is not connected")

    # -- local accessors ---------------------------------------------------

    def group_at(self, vertex: str) -> FiniteGroup:
        return self.vertices[vertex]

    def near(self, t: Traversal) -> str:
        return self.edges[t.edge].ends[t.dir]

    def far(self, t: Traversal) -> str:
        return self.edges[t.edge].ends[1 - t.dir]

    def incident(self, vertex: str) -> list[Traversal]:
        return list(self._incident[vertex])

    def transversal(self, t: Traversal) -> tuple[int, ...]:
        """Canonical coset representatives at the near end of t."""
        return self._transversal[t]

    def tree_path(self, u: str, w: str) -> tuple[Traversal, ...]:
        """The geodesic path of spanning-tree traversals from u to w."""
        up_u: list[Traversal] = []
        v = u
        while self._tree_step[v] is not None:
            step = self._tree_step[v]
            up_u.append(step)
            v = self.far(step)
        up_w: list[Traversal] = []
        v = w
        while self._tree_step[v] is not None:
            step = self._tree_step[v]
            up_w.append(step)
            v = self.far(step)
        while up_u and up_w and up_u[-1] == up_w[-1]:
            up_u.pop()
            up_w.pop()
        return tuple(up_u) + tuple(t.reverse() for t in reversed(up_w))


# -- normalization ---------------------------------------------------------


def _reduce_raw(gog: GraphOfGroups, start: str,
                raw_steps: Iterable[tuple[int, Traversal]],
                raw_tail: int) -> NormalForm:
    """Normalize a raw path word given as (element, traversal) steps plus tail."""
    out: list[tuple[int, Traversal]] = []
    v = start
    grp = gog.vertices[v]
    acc = grp.identity
    for g, t in raw_steps:
        if gog.near(t) != v:
            raise GogError(f"traversal {t} does not start at {v!r}")
        if not 0 <= g < grp.order:
            raise GogError(f"element index {g} out of range at {v!r}")
        acc = grp.mul(acc, g)
        pinch = gog._pinch[t]
        if out and out[-1][1] == t.reverse() and acc in pinch:
            far_elt = pinch[acc]
            r_prev, t_prev = out.pop()
            v = gog.near(t_prev)
            grp = gog.vertices[v]
            acc = grp.mul(r_prev, far_elt)
        else:
            r, far_elt = gog._push[t][acc]
            out.append((r, t))
            v = gog.far(t)
            grp = gog.vertices[v]
            acc = far_elt
    if not 0 <= raw_tail < grp.order:
        raise GogError(f"tail index {raw_tail} out of range at {v!r}")
    return NormalForm(start, tuple(out), grp.mul(acc, raw_tail))


def end_vertex(gog: GraphOfGroups, nf: NormalForm) -> str:
    return gog.far(nf.steps[-1][1]) if nf.steps else nf.start


def identity_nf(gog: GraphOfGroups, vertex: Optional[str] = None) -> NormalForm:
    v = gog.base_vertex if vertex is None else vertex
    return NormalForm(v, (), gog.vertices[v].identity)


def is_identity(gog: GraphOfGroups, nf: NormalForm) -> bool:
    return not nf.steps and nf.tail == gog.vertices[nf.start].identity


def _word_to_raw(gog: GraphOfGroups, w: WordLike
                 ) -> tuple[str, list[tuple[int, Traversal]], int]:
    if isinstance(w, NormalForm):
        if w.start not in gog.vertices:
            raise GogError(f"unknown start vertex {w.start!r}")
        return w.start, list(w.steps), w.tail
    if not isinstance(w, GroupWord):
        raise GogError(f"not a word: {w!r}")
    v = gog.base_vertex
    steps: list[tuple[int, Traversal]] = []
    pending = gog.vertices[v].identity
    for item in w.items:
        if isinstance(item, Traversal):
            if item.edge not in gog.edges or item.dir not in (0, 1):
                raise GogError(f"unknown traversal {item!r}")
            if gog.near(item) != v:
                raise GogError(f"traversal {item} does not start at {v!r}")
            steps.append((pending, item))
            v = gog.far(item)
            pending = gog.vertices[v].identity
        else:
            tag, vid, idx = item
            if tag != "g":
                raise GogError(f"malformed word item {item!r}")
            if vid != v:
                raise GogError(f"element at {vid!r} but path is at {v!r}")
            grp = gog.vertices[v]
            if not 0 <= idx < grp.order:
                raise GogError(f"element index {idx} out of range at {v!r}")
            pending = grp.mul(pending, idx)
    if v != gog.base_vertex:
        raise GogError("word is not a loop at the base vertex")
    return gog.base_vertex, steps, pending


def normal_form(gog: GraphOfGroups, w: WordLike) -> NormalForm:
    """Canonical normal form of a loop word at the base vertex.

    Two words represent the same group element exactly when their normal
    forms are equal.
    """
    start, steps, tail = _word_to_raw(gog, w)
    nf = _reduce_raw(gog, start, steps, tail)
    if isinstance(w, NormalForm) and end_vertex(gog, nf) != nf.start:
        raise GogError("word is not a loop")
    return nf


# -- path-level arithmetic (used by the tree layer) -------------------------


def path_normal_form(gog: GraphOfGroups, start: str,
                     steps: Iterable[tuple[int, Traversal]],
                     tail: int) -> NormalForm:
    if start not in gog.vertices:
        raise GogError(f"unknown start vertex {start!r}")
    return _reduce_raw(gog, start, steps, tail)


def path_multiply(gog: GraphOfGroups, p: NormalForm, q: NormalForm) -> NormalForm:
    """Concatenation p * q of composable paths, renormalized."""
    if end_vertex(gog, p) != q.start:
        raise GogError("paths are not composable")
    if not q.steps:
        grp = gog.vertices[q.start]
        return NormalForm(p.start, p.steps, grp.mul(p.tail, q.tail))
    (g, t), rest = q.steps[0], q.steps[1:]
    grp = gog.vertices[q.start]
    raw = list(p.steps) + [(grp.mul(p.tail, g), t)] + list(rest)
    return _reduce_raw(gog, p.start, raw, q.tail)


def path_invert(gog: GraphOfGroups, p: NormalForm) -> NormalForm:
    """The reverse path p^-1, renormalized."""
    end = end_vertex(gog, p)
    raw: list[tuple[int, Traversal]] = []
    carry = gog.vertices[end].inv(p.tail)
    for r, t in reversed(p.steps):
        raw.append((carry, t.reverse()))
        carry = gog.vertices[gog.near(t)].inv(r)
    return _reduce_raw(gog, end, raw, carry)


def multiply(gog: GraphOfGroups, w1: WordLike, w2: WordLike) -> NormalForm:
    """Product of two group elements (loop words at the base vertex)."""
    return path_multiply(gog, normal_form(gog, w1), normal_form(gog, w2))


def invert(gog: GraphOfGroups, w: WordLike) -> NormalForm:
    """Inverse of a group element (loop word at the base vertex)."""
    return path_invert(gog, normal_form(gog, w))


def conjugate(gog: GraphOfGroups, h: WordLike, w: WordLike) -> NormalForm:
    """h * w * h^-1 for loop words."""
    h_nf = normal_form(gog, h)
    return path_multiply(gog, path_multiply(gog, h_nf, normal_form(gog, w)),
                         path_invert(gog, h_nf))


# -- cyclic reduction and orders --------------------------------------------


def cyclic_reduction(gog: GraphOfGroups, w: WordLike
                     ) -> tuple[NormalForm, NormalForm]:
    """Split w as conjugator * core * conjugator^-1 with the core cyclically
    reduced: either no traversals at all (elliptic) or no pinch across the
    wrap-around (hyperbolic).  The conjugator is a path from the base vertex
    to the core's anchor vertex."""
    cur = normal_form(gog, w)
    conj = identity_nf(gog, cur.start)
    while cur.steps:
        r1, t1 = cur.steps[0]
        rn, tn = cur.steps[-1]
        if t1 != tn.reverse():
            break
        anchor_grp = gog.vertices[cur.start]
        seam = anchor_grp.mul(cur.tail, r1)
        pinch = gog._pinch[t1]
        if seam not in pinch:
            break
        far_elt = pinch[seam]
        new_anchor = gog.far(t1)
        new_tail = gog.vertices[new_anchor].mul(rn, far_elt)
        prefix = NormalForm(cur.start, ((r1, t1),),
                            gog.vertices[new_anchor].identity)
        conj = path_multiply(gog, conj, prefix)
        cur = NormalForm(new_anchor, cur.steps[1:-1], new_tail)
    return conj, cur


def element_order(gog: GraphOfGroups, w: WordLike) -> Union[int, float]:
    """Order of the element: a positive integer, or math.inf when the
    cyclically reduced core still crosses an edge (hyperbolic)."""
    conj, core = cyclic_reduction(gog, w)
    if core.steps:
        return float("inf")
    return gog.vertices[core.start].element_order(core.tail)


# -- input words -------------------------------------------------------------


def _letter_items(gog: GraphOfGroups, at: str, name: str, power: int
                  ) -> tuple[list, str]:
    """Items realizing one parsed letter (with integer exponent) starting at
    vertex `at`; returns (items, new current vertex)."""
    items: list = []
    v = at
    if name in gog.edges:
        if name in gog.spanning_tree:
            raise GogError(f"{name!r} is a spanning-tree edge and carries no letter")
        e = gog.edges[name]
        for _ in range(abs(power)):
            d = 0 if power > 0 else 1
            items.extend(gog.tree_path(v, e.ends[d]))
            items.append(Traversal(name, d))
            v = e.ends[1 - d]
        return items, v
    homes = gog._letter_home.get(name)
    if not homes:
        raise GogError(f"unknown letter {name!r}")
    if v in homes:
        home = v
    elif len(homes) == 1:
        home = homes[0]
    else:
        raise GogError(f"letter {name!r} is ambiguous between vertices {homes}")
    grp = gog.vertices[home]
    idx = grp.generators[name]
    if power < 0:
        idx, power = grp.inv(idx), -power
    items.extend(gog.tree_path(v, home))
    items.append(("g", home, grp.power(idx, power)))
    return items, home


def parse_word(gog: GraphOfGroups, text: str) -> GroupWord:
    """Parse whitespace-separated letters into a loop word at the base.

    Letters are vertex-group generator names or non-tree edge names; a
    trailing ^k (k a nonzero integer, typically -1) inverts or repeats.
    Spanning-tree crossings are inserted automatically.
    """
    items: list = []
    v = gog.base_vertex
    for token in text.split():
        name, _, exp = token.partition("^")
        if not name:
            raise GogError(f"malformed token {token!r}")
        if exp:
            try:
                power = int(exp)
            except ValueError:
                raise GogError(f"malformed exponent in {token!r}") from None
            if power == 0:
                continue
        else:
            power = 1
        new_items, v = _letter_items(gog, v, name, power)
        items.extend(new_items)
    items.extend(gog.tree_path(v, gog.base_vertex))
    return GroupWord(tuple(items))


def generator_letters(gog: GraphOfGroups) -> list[tuple[str, NormalForm]]:
    """Canonical lifts of all letters: vertex-group generators and non-tree
    edges, as normal forms of loop words at the base."""
    out = []
    for vid in sorted(gog.vertices):
        grp = gog.vertices[vid]
        for name in sorted(grp.generators):
            if grp.generators[name] == grp.identity:
                continue
            out.append((name, normal_form(gog, parse_word(gog, name))))
    for eid in sorted(gog.edges):
        if eid not in gog.spanning_tree:
            out.append((eid, normal_form(gog, parse_word(gog, eid))))
    return out


def format_nf(gog: GraphOfGroups, nf: NormalForm) -> str:
    """Readable rendering: representatives by label, traversals as e+ / e-."""
    parts = []
    v = nf.start
    for r, t in nf.steps:
        if r != gog.vertices[v].identity:
            parts.append(gog.vertices[v].label(r))
        parts.append(t.edge + ("+" if t.dir == 0 else "-"))
        v = gog.far(t)
    if nf.tail != gog.vertices[v].identity or not parts:
        parts.append(gog.vertices[v].label(nf.tail))
    return " ".join(parts)


def nf_to_json(gog: GraphOfGroups, nf: NormalForm) -> dict:
    v = nf.start
    steps = []
    for r, t in nf.steps:
        steps.append({"rep": r, "rep_label": gog.vertices[v].label(r),
                      "edge": t.edge, "dir": t.dir})
        v = gog.far(t)
    return {"start": nf.start, "steps": steps, "tail": nf.tail,
            "tail_label": gog.vertices[v].label(nf.tail),
            "end": v, "syllables": len(nf.steps)}


# -- constructors ------------------------------------------------------------


def build_amalgam(A: FiniteGroup, B: FiniteGroup, C: FiniteGroup,
                  iA: GroupHom, iB: GroupHom) -> GraphOfGroups:
    """One-edge graph of groups with vertex groups A, B and edge group C."""
    for hom, tgt, side in ((iA, A, "iA"), (iB, B, "iB")):
        if hom.source is not C or hom.target is not tgt:
            raise GogError(f"{side} must map C into the matching vertex group")
        if check_hom(hom).status == "invalid" or not hom.is_injective():
            raise GogError(f"{side} is not a monomorphism")
    edge = Edge("e", C, ("vA", "vB"), (iA, iB))
    return GraphOfGroups([("vA", A), ("vB", B)], [edge], "vA", {"e"})


def build_rose(letters: Sequence[str]) -> GraphOfGroups:
    """Free group on the given letters: one trivial vertex, one loop each."""
    from .fingroup import build_cyclic
    trivial = build_cyclic(1, "id0")
    vertex = ("v", trivial)
    edge_triv = build_cyclic(1, "id1")
    edges = []
    for name in letters:
        inc = GroupHom.from_generator_images(edge_triv, trivial, {"id1": 0})
        edges.append(Edge(name, edge_triv, ("v", "v"), (inc, inc)))
    return GraphOfGroups([vertex], edges, "v", set())


def build_sl2z() -> GraphOfGroups:
    """Z/4 amalgamated with Z/6 over Z/2: generators a (order 4), b (order 6),
    with a^2 = b^3."""
    from .fingroup import build_cyclic
    A = build_cyclic(4, "a")
    B = build_cyclic(6, "b")
    C = build_cyclic(2, "c")
    iA = GroupHom.from_generator_images(C, A, {"c": A.power(A.generator("a"), 2)})
    iB = GroupHom.from_generator_images(C, B, {"c": B.power(B.generator("b"), 3)})
    return build_amalgam(A, B, C, iA, iB)


def build_free_product(A: FiniteGroup, B: FiniteGroup) -> GraphOfGroups:
    """A * B: amalgam over the trivial group."""
    from .fingroup import build_cyclic
    C = build_cyclic(1, "c0")
    iA = GroupHom(C, A, (A.identity,))
    iB = GroupHom(C, B, (B.identity,))
    return build_amalgam(A, B, C, iA, iB)


# -- JSON ---------------------------------------------------------------------


def _hom_from_spec(edge_group: FiniteGroup, target: FiniteGroup,
                   spec: dict) -> GroupHom:
    images = {}
    for name, word in spec.items():
        if name not in edge_group.generators:
            raise GogError(f"injection names unknown generator {name!r}")
        images[name] = evaluate_word(target, word)
    return GroupHom.from_generator_images(edge_group, target, images)


def gog_from_json(data: Union[str, dict]) -> GraphOfGroups:
    """Build a graph of groups from its JSON description.

    Expected shape: {"vertices": [{"id", "group"}...],
    "edges": [{"id", "group", "ends": [u, w], "maps": [spec0, spec1]}...],
    "base": id, "tree": [edge ids]}, where each injection spec maps edge
    generator names to words in the endpoint group's generators.
    """
    if isinstance(data, str):
        data = json.loads(data)
    try:
        vertices = [(v["id"], group_from_json(v["group"]))
                    for v in data["vertices"]]
        vgroups = dict(vertices)
        edges = []
        for e in data["edges"]:
            grp = group_from_json(e["group"])
            ends = tuple(e["ends"])
            if len(ends) != 2 or any(v not in vgroups for v in ends):
                raise GogError(f"edge {e.get('id')!r} has bad endpoints {ends}")
            inj = tuple(_hom_from_spec(grp, vgroups[v], spec)
                        for v, spec in zip(ends, e["maps"]))
            edges.append(Edge(e["id"], grp, ends, inj))
        return GraphOfGroups(vertices, edges, data["base"],
                             set(data.get("tree", ())))
    except (KeyError, TypeError) as exc:
        raise GogError(f"malformed graph-of-groups JSON: {exc}") from exc


def gog_to_json(gog: GraphOfGroups) -> dict:
    """Serialize; groups are emitted as explicit tables, injections as
    generator-image words."""
    verts = [{"id": vid, "group": group_to_json(gog.vertices[vid])}
             for vid in sorted(gog.vertices)]
    edges = []
    for eid in sorted(gog.edges):
        e = gog.edges[eid]
        maps = []
        for k in (0, 1):
            tgt = gog.vertices[e.ends[k]]
            maps.append({name: generator_word(tgt, e.inj[k](idx))
                         for name, idx in e.group.generators.items()})
        edges.append({"id": eid, "group": group_to_json(e.group),
                      "ends": list(e.ends), "maps": maps})
    return {"vertices": verts, "edges": edges, "base": gog.base_vertex,
            "tree": sorted(gog.spanning_tree)}
