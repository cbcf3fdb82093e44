"""Whitehead graphs, filling certificates, and random-walk genericity.

A hyperbolic element crosses a periodic sequence of turns at the vertices
of its axis.  Pulling one period of turns back to the standard orbit
representatives and saturating under the vertex group action yields the
exact Whitehead graph at each quotient vertex; complete graphs at every
vertex certify that the element is one-ended relative to splittings over
finite subgroups.  Seeded random walks estimate how common that
certificate is among words of a given length.
"""

from __future__ import annotations

import bisect
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .bstree import (
    TreeVertex,
    axis_window,
    ball,
    base_vertex,
    classify,
    neighbors,
    standard_vertex,
    translate,
)
from .gogwords import (
    GogError,
    GraphOfGroups,
    NormalForm,
    WordLike,
    end_vertex,
    generator_letters,
    identity_nf,
    normal_form,
    parse_word,
    path_invert,
    path_multiply,
    path_normal_form,
)

GENERATION_DEPTH_CAP = 8
GENERATION_SIZE_CAP = 20000
MASK64 = (1 << 64) - 1


def _nf_key(nf: NormalForm):
    return (len(nf.steps), nf.steps, nf.tail)


def _vertex_key(v: TreeVertex):
    return (v.orbit, _nf_key(v.coset_rep))


# -- Whitehead graphs ---------------------------------------------------------


@dataclass(frozen=True)
class WhiteheadGraph:
    """Turn graph of a hyperbolic element at one orbit vertex.

    Nodes are the tree vertices adjacent to the standard representative
    (the directions there); an unordered pair is an edge when the axis of
    some conjugate of the element runs straight through the vertex along
    those two directions.
    """

    at_vertex: TreeVertex
    nodes: frozenset
    edges: frozenset

    def missing_pairs(self) -> tuple:
        ordered = sorted(self.nodes, key=_vertex_key)
        out = []
        for i, u in enumerate(ordered):
            for w in ordered[i + 1:]:
                if frozenset((u, w)) not in self.edges:
                    out.append((u, w))
        return tuple(out)

    @property
    def is_complete(self) -> bool:
        return len(self.edges) == math.comb(len(self.nodes), 2)


def _require_hyperbolic(gog: GraphOfGroups, g_nf: NormalForm) -> None:
    if classify(gog, g_nf).kind != "hyperbolic":
        raise GogError("element is elliptic (finite order); an axis is needed")


def _axis_turns(gog: GraphOfGroups, g_nf: NormalForm) -> list:
    """One period of axis turns as (vertex, previous, next) triples.

    Every turn of the full axis is a translate of one of these by a power
    of the element, so the list is a complete set of turn orbits."""
    seg = axis_window(gog, g_nf, 1)
    verts = seg.vertices
    wrap_prev = translate(gog, path_invert(gog, g_nf), verts[-2])
    turns = []
    for i in range(seg.period):
        prv = verts[i - 1] if i else wrap_prev
        turns.append((verts[i], prv, verts[i + 1]))
    return turns


def _stabilizer_lifts(gog: GraphOfGroups, orbit: str) -> list[NormalForm]:
    """The stabilizer of the standard vertex, as based group elements."""
    rho = standard_vertex(gog, orbit).coset_rep
    rho_inv = path_invert(gog, rho)
    out = []
    for x in gog.vertices[orbit].elements():
        mid = NormalForm(orbit, (), x)
        out.append(path_multiply(gog, path_multiply(gog, rho, mid), rho_inv))
    return out


def _graph_at(gog: GraphOfGroups, orbit: str, turns: list,
              early_stop: bool = False) -> WhiteheadGraph:
    std = standard_vertex(gog, orbit)
    nodes = frozenset(neighbors(gog, std))
    complete_count = math.comb(len(nodes), 2)
    sat = _stabilizer_lifts(gog, orbit)
    rho = std.coset_rep
    edges = set()
    for w, prv, nxt in turns:
        if w.orbit != orbit:
            continue
        # w = kappa * std for the group element kappa below; pulling the
        # turn back by kappa^-1 lands it at the standard representative.
        kappa_inv = path_multiply(gog, rho, path_invert(gog, w.coset_rep))
        p0 = translate(gog, kappa_inv, prv)
        n0 = translate(gog, kappa_inv, nxt)
        for s in sat:
            edges.add(frozenset((translate(gog, s, p0), translate(gog, s, n0))))
        if early_stop and len(edges) == complete_count:
            break
    return WhiteheadGraph(std, nodes, frozenset(edges))


def whitehead_graph(gog: GraphOfGroups, g: WordLike,
                    orbit_vertex: str) -> WhiteheadGraph:
    """Exact Whitehead graph of a hyperbolic element at one quotient vertex,
    computed from one axis period and saturated by the vertex group."""
    if orbit_vertex not in gog.vertices:
        raise GogError(f"unknown vertex {orbit_vertex!r}")
    g_nf = normal_form(gog, g)
    _require_hyperbolic(gog, g_nf)
    return _graph_at(gog, orbit_vertex, _axis_turns(gog, g_nf))


# -- filling and one-endedness ------------------------------------------------


@dataclass(frozen=True)
class FillingReport:
    """Per-vertex completeness of the Whitehead graphs of one element."""

    element: NormalForm
    fills: bool
    graphs: tuple

    def missing(self) -> dict:
        return {g.at_vertex.orbit: g.missing_pairs() for g in self.graphs}

    def __bool__(self) -> bool:
        return self.fills


@dataclass(frozen=True)
class OneEndedCertificate:
    status: str  # "certified_one_ended" or "inconclusive"
    report: FillingReport

    @property
    def certified(self) -> bool:
        return self.status == "certified_one_ended"


def fills(gog: GraphOfGroups, g: WordLike) -> FillingReport:
    """Whether every orbit vertex sees a complete Whitehead graph, with the
    full per-vertex graphs for inspection of the missing turns."""
    g_nf = normal_form(gog, g)
    _require_hyperbolic(gog, g_nf)
    turns = _axis_turns(gog, g_nf)
    graphs = tuple(_graph_at(gog, orbit, turns)
                   for orbit in sorted(gog.vertices))
    return FillingReport(g_nf, all(w.is_complete for w in graphs), graphs)


def _fills_fast(gog: GraphOfGroups, g_nf: NormalForm) -> bool:
    """Completeness check with early exits; agrees with fills().fills."""
    turns = _axis_turns(gog, g_nf)
    for orbit in sorted(gog.vertices):
        if not _graph_at(gog, orbit, turns, early_stop=True).is_complete:
            return False
    return True


def one_ended_certificate(gog: GraphOfGroups, g: WordLike) -> OneEndedCertificate:
    """Certify one-endedness relative to finite splittings via filling.

    The criterion is one-sided: a complete set of Whitehead graphs
    certifies, anything less is inconclusive.  Elliptic elements are
    rejected; finite order elements always admit a splitting fixing them,
    so no certificate is possible for them."""
    report = fills(gog, g)
    status = "certified_one_ended" if report.fills else "inconclusive"
    return OneEndedCertificate(status, report)


# -- p-matches between axes ---------------------------------------------------


@dataclass(frozen=True)
class MatchResult:
    """Outcome of a bounded search for overlapping axis translates.

    status is "match" or "none-within-radius": the search only inspects
    translating elements of normal-form length at most search_radius, so a
    miss is a statement about the searched ball, not about the group."""

    status: str
    p: int
    search_radius: int
    g_translator: Optional[NormalForm]
    h_translator: Optional[NormalForm]
    overlap: tuple
    overlap_length: int

    @property
    def matched(self) -> bool:
        return self.status == "match"


def group_ball(gog: GraphOfGroups, radius: int) -> list[NormalForm]:
    """All group elements whose normal form has at most `radius` syllables,
    shortest first in a fixed deterministic order."""
    if radius < 0:
        raise GogError("radius must be nonnegative")
    base = base_vertex(gog)
    grp = gog.vertices[gog.base_vertex]
    verts = [v for v in ball(gog, base, radius) if v.orbit == gog.base_vertex]
    out = []
    for v in sorted(verts, key=_vertex_key):
        for t in grp.elements():
            out.append(path_normal_form(gog, v.coset_rep.start,
                                        v.coset_rep.steps, t))
    return out


def _two_sided_window(gog: GraphOfGroups, g_nf: NormalForm,
                      periods: int) -> list[TreeVertex]:
    fwd = axis_window(gog, g_nf, periods)
    back = axis_window(gog, path_invert(gog, g_nf), periods,
                       anchor=fwd.vertices[0])
    return list(reversed(back.vertices[1:])) + list(fwd.vertices)


def p_match(gog: GraphOfGroups, g: WordLike, h: WordLike, p: int,
            search_radius: int) -> MatchResult:
    """Search for translates of the two axes sharing a segment longer
    than p, over translating elements from the radius ball.

    Any overlap longer than p between the first axis and a ball translate
    of the second contains a witness segment within the inspected windows
    (the intersection of two lines in a tree contains the projection of
    either anchor onto the other line), so per candidate the answer is
    exact; only the candidate set is bounded."""
    if p < 1:
        raise GogError("p must be at least 1")
    g_nf = normal_form(gog, g)
    h_nf = normal_form(gog, h)
    _require_hyperbolic(gog, g_nf)
    _require_hyperbolic(gog, h_nf)
    seg_g = axis_window(gog, g_nf, 1)
    seg_h = axis_window(gog, h_nf, 1)
    d_g = len(seg_g.vertices[0].coset_rep.steps)
    d_h = len(seg_h.vertices[0].coset_rep.steps)
    reach = 2 * search_radius + 2 * d_h + d_g + p + 1
    per_g = math.ceil((reach + d_g) / seg_g.period) + 1
    per_h = math.ceil((reach + search_radius + d_h) / seg_h.period) + 1
    g_line = _two_sided_window(gog, g_nf, per_g)
    h_line = _two_sided_window(gog, h_nf, per_h)
    g_edges = [frozenset(e) for e in zip(g_line, g_line[1:])]
    for u in group_ball(gog, search_radius):
        moved = [translate(gog, u, v) for v in h_line]
        h_edge_set = {frozenset(e) for e in zip(moved, moved[1:])}
        hits = [i for i, e in enumerate(g_edges) if e in h_edge_set]
        if len(hits) > p:
            lo, hi = hits[0], hits[-1]
            # two geodesics intersect in a single segment
            assert hi - lo + 1 == len(hits)
            return MatchResult("match", p, search_radius, identity_nf(gog),
                               u, tuple(g_line[lo:hi + 2]), len(hits))
    return MatchResult("none-within-radius", p, search_radius, None, None,
                       (), 0)


# -- random walks -------------------------------------------------------------


@dataclass(frozen=True)
class RandomWalkSpec:
    """A finitely supported measure with exact rational weights, plus the
    trial count and master seed of an experiment."""

    support: tuple
    weights: tuple
    trials: int
    seed: int


@dataclass(frozen=True)
class ExperimentRow:
    n: int
    trials: int
    hyperbolic_count: int
    filling_count: int

    @property
    def hyperbolic_rate(self) -> float:
        return self.hyperbolic_count / self.trials

    @property
    def filling_rate(self) -> float:
        return self.filling_count / self.trials


def splitmix64(seed: int, index: int) -> int:
    """The index-th output of a splitmix64 stream started at seed.

    Trial t of a walk draws from random.Random(splitmix64(master, t)), so
    trials are reproducible independently of execution order and of the
    total trial count."""
    x = (seed + (index + 1) * 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def uniform_spec(gog: GraphOfGroups, words: Sequence[Union[str, NormalForm]],
                 trials: int, seed: int) -> RandomWalkSpec:
    """Uniform measure on the given words (strings are parsed)."""
    support = tuple(
        normal_form(gog, parse_word(gog, w) if isinstance(w, str) else w)
        for w in words)
    if not support:
        raise GogError("measure support must be nonempty")
    weights = tuple(Fraction(1, len(support)) for _ in support)
    return RandomWalkSpec(support, weights, trials, seed)


def _check_generation(gog: GraphOfGroups, support: Sequence[NormalForm]) -> None:
    """Bounded product closure must reach every generator letter."""
    targets = {nf for _, nf in generator_letters(gog)}
    seen = set(support)
    frontier = list(seen)
    for _ in range(GENERATION_DEPTH_CAP):
        if targets <= seen or not frontier or len(seen) > GENERATION_SIZE_CAP:
            break
        new = []
        for x in frontier:
            for s in support:
                y = path_multiply(gog, x, s)
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    if not targets <= seen:
        raise GogError("measure support does not reach every generator "
                       "letter within the bounded product closure")


def validate_walk_spec(gog: GraphOfGroups, spec: RandomWalkSpec) -> None:
    if not spec.support:
        raise GogError("measure support must be nonempty")
    if len(spec.weights) != len(spec.support):
        raise GogError("one weight per support element is required")
    for nf in spec.support:
        if nf.start != gog.base_vertex or end_vertex(gog, nf) != gog.base_vertex:
            raise GogError("support elements must be loops at the base vertex")
    fracs = [Fraction(w) for w in spec.weights]
    if any(f <= 0 for f in fracs):
        raise GogError("weights must be positive")
    if sum(fracs) != 1:
        raise GogError("weights must sum to 1")
    if spec.trials < 1:
        raise GogError("at least one trial is required")
    _check_generation(gog, spec.support)


def sample_walk(gog: GraphOfGroups, spec: RandomWalkSpec, length: int,
                trial: int) -> NormalForm:
    """The element reached by trial number `trial` after `length` steps.

    Steps multiply on the right; the walk of a shorter length is a prefix
    of the walk of a longer one at the same trial index."""
    if length < 0:
        raise GogError("walk length must be nonnegative")
    fracs = [Fraction(w) for w in spec.weights]
    denom = math.lcm(*(f.denominator for f in fracs))
    cums = list(itertools.accumulate(int(f * denom) for f in fracs))
    if cums[-1] != denom:
        raise GogError("weights must sum to 1")
    rng = random.Random(splitmix64(spec.seed, trial))
    cur = identity_nf(gog)
    for _ in range(length):
        pick = spec.support[bisect.bisect_right(cums, rng.randrange(denom))]
        cur = path_multiply(gog, cur, pick)
    return cur


def run_genericity_experiment(gog: GraphOfGroups, spec: RandomWalkSpec,
                              lengths: Sequence[int]) -> tuple:
    """Hyperbolicity and filling counts over seeded independent walks, one
    row per requested length, in the requested order."""
    validate_walk_spec(gog, spec)
    rows = []
    for n in lengths:
        if not isinstance(n, int) or n < 0:
            raise GogError("walk lengths must be nonnegative integers")
        hyp = fil = 0
        for t in range(spec.trials):
            w = sample_walk(gog, spec, n, t)
            if classify(gog, w).kind == "hyperbolic":
                hyp += 1
                if _fills_fast(gog, w):
                    fil += 1
        rows.append(ExperimentRow(n, spec.trials, hyp, fil))
    return tuple(rows)


def experiment_csv(rows: Sequence[ExperimentRow]) -> str:
    """Byte-stable CSV rendering of experiment rows."""
    lines = ["n,trials,hyperbolic_count,filling_count,filling_rate"]
    for r in rows:
        lines.append(f"{r.n},{r.trials},{r.hyperbolic_count},"
                     f"{r.filling_count},{r.filling_rate:.6f}")
    return "\n".join(lines) + "\n"
