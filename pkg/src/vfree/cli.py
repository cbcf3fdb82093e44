"""Command-line entry point and the two built-in verified case studies.

The subcommands are thin wrappers over the library: every pass/fail
decision made here is re-derivable by calling the module operations
directly. Reports, CSV tables, and fixture dumps are deterministic and
byte-stable for fixed inputs and seeds.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable, Optional

from .bstree import axis_window, base_vertex, classify as classify_element
from .defspace import (
    degree_sum,
    enumerate_reduced,
    is_minimal,
    is_non_redundant,
    is_reduced,
    nonredundant_expansions,
)
from .fingroup import (
    GroupError,
    GroupHom,
    build_cyclic,
    check_hom,
    cycle_notation,
    group_from_permutations,
)
from .folds import fold_sequence, identity_marking, marked_rose_for_basis
from .folog import (
    SL2Z_RELATORS,
    classify as classify_formula,
    emit_delta_related,
    emit_mu,
    emit_theta_sl2z,
    parse as parse_formula,
    pretty_print,
)
from .genericity import (
    RandomWalkSpec,
    experiment_csv,
    fills,
    run_genericity_experiment,
    uniform_spec,
    whitehead_graph,
)
from .gogwords import (
    GogError,
    GraphOfGroups,
    GroupWord,
    element_order,
    format_nf,
    generator_letters,
    gog_from_json,
    gog_to_json,
    identity_nf,
    invert,
    is_identity,
    multiply,
    nf_to_json,
    normal_form,
    parse_word,
)

BUILTIN_GROUPS = ("sl2z", "counterexample", "z2z3")


def load_group(spec: str) -> GraphOfGroups:
    """A graph of groups from a builtin name or a JSON file path."""
    if spec in BUILTIN_GROUPS:
        text = (resources.files("vfree") / "data" / f"{spec}.json").read_text()
        return gog_from_json(text)
    with open(spec) as fh:
        return gog_from_json(fh.read())


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _vertex_str(gog: GraphOfGroups, v) -> str:
    return f"{v.orbit}[{format_nf(gog, v.coset_rep)}]"


# -- verification reports ------------------------------------------------------


@dataclass(frozen=True)
class Check:
    check_id: str
    description: str
    status: str
    witness: dict


@dataclass(frozen=True)
class VerificationReport:
    case_name: str
    checks: tuple

    @property
    def overall(self) -> str:
        return "pass" if all(c.status == "pass" for c in self.checks) else "fail"

    def to_json(self) -> dict:
        return {"case_name": self.case_name, "overall": self.overall,
                "checks": [asdict(c) for c in self.checks]}


def report_from_json(data: dict) -> VerificationReport:
    checks = tuple(Check(c["check_id"], c["description"], c["status"],
                         c["witness"]) for c in data["checks"])
    report = VerificationReport(data["case_name"], checks)
    if report.overall != data.get("overall", report.overall):
        raise GogError("report overall flag does not match its checks")
    return report


def _run_check(checks: list, cid: str, description: str,
               fn: Callable[[], tuple]) -> None:
    try:
        ok, witness = fn()
    except Exception as exc:
        ok, witness = False, {"error": str(exc)}
    checks.append(Check(cid, description, "pass" if ok else "fail", witness))


# -- case study: the two-cyclic amalgam ----------------------------------------


def verify_sl2z(gog: Optional[GraphOfGroups] = None) -> VerificationReport:
    """Scripted checks for the order-4 / order-6 amalgam over order 2."""
    if gog is None:
        gog = load_group("sl2z")
    checks: list = []

    def check_shape():
        orders = sorted(g.order for g in gog.vertices.values())
        edge_orders = sorted(gog.edges[e].group.order for e in gog.edges)
        ok = orders == [4, 6] and edge_orders == [2]
        return ok, {"vertex_orders": orders, "edge_orders": edge_orders}

    def check_orders():
        a = normal_form(gog, parse_word(gog, "a"))
        b = normal_form(gog, parse_word(gog, "b"))
        a2 = multiply(gog, a, a)
        b3 = multiply(gog, multiply(gog, b, b), b)
        ok = (element_order(gog, a) == 4 and element_order(gog, b) == 6
              and a2 == b3
              and multiply(gog, a2, a) == multiply(gog, a, a2)
              and multiply(gog, a2, b) == multiply(gog, b, a2))
        return ok, {"order_a": element_order(gog, a),
                    "order_b": element_order(gog, b),
                    "a^2": format_nf(gog, a2), "b^3": format_nf(gog, b3)}

    def check_unique_class():
        z4, z6, z2 = build_cyclic(4, "a"), build_cyclic(6, "b"), build_cyclic(2, "c")
        found = enumerate_reduced(2, 1, 12, vertex_groups=[z4, z6],
                                  edge_groups=[z2])
        ok = is_reduced(gog) and len(found) == 1
        return ok, {"reduced": is_reduced(gog), "classes": len(found)}

    def check_no_expansions():
        out, rep = nonredundant_expansions(gog, 2, with_report=True)
        ok = len(out) == 1 and rep["frontier_all_redundant"]
        return ok, {"new_splittings": len(out) - 1,
                    "explored": rep["explored"],
                    "frontier_all_redundant": rep["frontier_all_redundant"]}

    def check_sentence():
        th = emit_theta_sl2z(SL2Z_RELATORS, ("x", "x y"))
        ok = classify_formula(th) == "existential" and len(th.free_variables) == 2
        return ok, {"classification": classify_formula(th),
                    "free_variables": list(th.free_variables),
                    "formula": pretty_print(th)}

    _run_check(checks, "a", "amalgam of an order-4 and an order-6 cyclic "
               "group over an order-2 edge group", check_shape)
    _run_check(checks, "b", "a has order 4, b has order 6, and a^2 = b^3 "
               "commutes with both generators", check_orders)
    _run_check(checks, "c", "the splitting is reduced and is the unique "
               "reduced class for this vertex/edge group shape", check_unique_class)
    _run_check(checks, "d", "no non-redundant splitting appears within two "
               "elementary expansions", check_no_expansions)
    _run_check(checks, "e", "the transport sentence is existential with one "
               "free variable per image word", check_sentence)
    return VerificationReport("sl2z", tuple(checks))


# -- case study: the endomorphism counterexample --------------------------------


def _vertex_loop(gog: GraphOfGroups, vid: str, elem: int):
    """Normal form of a vertex-group element as a loop at the base."""
    items = (tuple(gog.tree_path(gog.base_vertex, vid))
             + (("g", vid, elem),)
             + tuple(gog.tree_path(vid, gog.base_vertex)))
    return normal_form(gog, GroupWord(items))


def _edge_images(gog: GraphOfGroups):
    """Element sets of the two vertex-group copies of the edge group."""
    e = gog.edges["e"]
    return {vid: frozenset(e.inj[k](c) for c in range(e.group.order))
            for k, vid in enumerate(e.ends)}


def counterexample_psi(gog: GraphOfGroups) -> GroupHom:
    """The automorphism of the order-64 factor swapping x with y and
    acting on the normal boolean subgroup by (e1 e3)(e2 e4)."""
    a = gog.vertices["vA"]
    images = {"x": "y", "y": "x", "e1": "e3", "e2": "e4",
              "e3": "e1", "e4": "e2"}
    return GroupHom.from_generator_images(
        a, a, {src: a.generator(dst) for src, dst in images.items()})


def counterexample_phi(gog: GraphOfGroups) -> Callable:
    """The endomorphism acting as psi on the vA factor and as conjugation
    by u = z^-1 x y z on the vB factor, applied syllable by syllable."""
    psi = counterexample_psi(gog)
    u = normal_form(gog, parse_word(gog, "z^-1 x y z"))

    def syllable_image(vid: str, elem: int):
        if vid == "vA":
            return _vertex_loop(gog, "vA", psi(elem))
        return multiply(gog, multiply(gog, u, _vertex_loop(gog, "vB", elem)),
                        invert(gog, u))

    def phi(w):
        nf = normal_form(gog, w)
        out = identity_nf(gog)
        v = nf.start
        for r, t in nf.steps:
            out = multiply(gog, out, syllable_image(v, r))
            v = gog.far(t)
        return multiply(gog, out, syllable_image(v, nf.tail))

    return phi


def _phi_predicted_steps(gog: GraphOfGroups, nf) -> int:
    """Syllable length the phi image must have if no reduction occurs.

    Each vA syllable maps to one vA syllable and each vB syllable to the
    five-syllable word z^-1 . xy . (z b z^-1) . (xy)^-1 . z; concatenation
    stays alternating, so the image length is exact unless something
    collapses."""
    c_img = _edge_images(gog)
    sides = []
    v = nf.start
    for r, t in nf.steps:
        if r not in c_img[v]:
            sides.append(v)
        v = gog.far(t)
    if nf.tail not in c_img[v]:
        sides.append(v)
    if not sides:
        return 0
    total = sum(1 if s == "vA" else 5 for s in sides)
    return (total - 1) + (sides[0] == "vB") + (sides[-1] == "vB")


def _sample_reduced_forms(gog: GraphOfGroups, max_syllables: int,
                          target: int, seed: int) -> list:
    """Every vertex-group element plus seeded random loops, deduplicated,
    all of syllable length at most max_syllables, identity excluded."""
    seen = {}
    for vid in sorted(gog.vertices):
        for elem in range(gog.vertices[vid].order):
            nf = _vertex_loop(gog, vid, elem)
            if not is_identity(gog, nf):
                seen.setdefault(nf, nf)
    rng = random.Random(seed)
    letters = [name for name, _ in generator_letters(gog)]
    attempts = 0
    while len(seen) < target and attempts < 40 * target:
        attempts += 1
        text = " ".join(
            rng.choice(letters) + rng.choice(("", "^-1"))
            for _ in range(rng.randint(1, 2 * max_syllables)))
        nf = normal_form(gog, parse_word(gog, text))
        if not is_identity(gog, nf) and len(nf.steps) <= max_syllables:
            seen.setdefault(nf, nf)
    return list(seen)


def verify_counterexample(gog: Optional[GraphOfGroups] = None
                          ) -> VerificationReport:
    """Scripted checks for the amalgam of the order-64 and order-48 groups
    whose x and y are swapped by an endomorphism but by no automorphism."""
    if gog is None:
        gog = load_group("counterexample")
    checks: list = []
    basis = ("e1", "e2", "e3", "e4")

    def check_build():
        a, b = gog.vertices["vA"], gog.vertices["vB"]
        e = gog.edges["e"]
        ok = (a.order == 64 and b.order == 48 and e.group.order == 16
              and all(inj.is_injective() for inj in e.inj))
        return ok, {"order_A": a.order, "order_B": b.order,
                    "order_C": e.group.order}

    def check_psi():
        psi = counterexample_psi(gog)
        report = check_hom(psi)
        a = gog.vertices["vA"]
        image = {psi(g) for g in range(a.order)}
        ok = report.status == "valid_iso" and len(image) == a.order
        return ok, {"hom_status": report.status,
                    "bijective": len(image) == a.order,
                    "x_image": a.label(psi(a.generator("x"))),
                    "y_image": a.label(psi(a.generator("y")))}

    def check_conjugation_matches_psi():
        psi = counterexample_psi(gog)
        u = normal_form(gog, parse_word(gog, "z^-1 x y z"))
        u_inv = invert(gog, u)
        e = gog.edges["e"]
        ia = e.inj[0] if e.ends[0] == "vA" else e.inj[1]
        agreements = 0
        for c in range(e.group.order):
            lhs = multiply(gog, multiply(gog, u, _vertex_loop(gog, "vA", ia(c))),
                           u_inv)
            rhs = _vertex_loop(gog, "vA", psi(ia(c)))
            agreements += lhs == rhs
        perm = []
        a = gog.vertices["vA"]
        basis_elems = {a.generator(n): i for i, n in enumerate(basis)}
        for name in basis:
            img = multiply(gog, multiply(gog, u, _vertex_loop(
                gog, "vA", a.generator(name))), u_inv)
            perm.append(basis_elems[img.tail])
        ok = agreements == e.group.order
        return ok, {"agreements": agreements, "out_of": e.group.order,
                    "permutation": cycle_notation(perm, basis)}

    def check_phi_well_defined():
        phi = counterexample_phi(gog)
        e = gog.edges["e"]
        ia = e.inj[0] if e.ends[0] == "vA" else e.inj[1]
        ib = e.inj[1] if e.ends[0] == "vA" else e.inj[0]
        agree = all(
            phi(_vertex_loop(gog, "vA", ia(c))) == phi(_vertex_loop(gog, "vB", ib(c)))
            for c in range(e.group.order))
        x = normal_form(gog, parse_word(gog, "x"))
        y = normal_form(gog, parse_word(gog, "y"))
        swaps = phi(x) == y and phi(y) == x
        return agree and swaps, {"edge_agreements": agree, "swaps_x_y": swaps}

    def check_normal_form_preservation():
        phi = counterexample_phi(gog)
        sample = _sample_reduced_forms(gog, max_syllables=6, target=240,
                                       seed=20250814)
        preserved = nontrivial = 0
        for w in sample:
            image = phi(w)
            nontrivial += not is_identity(gog, image)
            preserved += len(image.steps) == _phi_predicted_steps(gog, w)
        ok = preserved == len(sample) and nontrivial == len(sample)
        return ok, {"sampled": len(sample), "max_syllables": 6,
                    "no_collapse": preserved, "nontrivial_images": nontrivial}

    def check_conjugation_actions():
        a, b = gog.vertices["vA"], gog.vertices["vB"]
        basis_a = {a.generator(n): i for i, n in enumerate(basis)}
        basis_b = {b.generator(n): i for i, n in enumerate(basis)}

        def action(group, g, basis_idx):
            perm = [0] * len(basis)
            for elem, i in basis_idx.items():
                img = group.mul(g, group.mul(elem, group.inv(g)))
                perm[i] = basis_idx[img]
            return tuple(perm)

        fx = action(a, a.generator("x"), basis_a)
        fy = action(a, a.generator("y"), basis_a)
        hz = action(b, b.generator("z"), basis_b)
        n_x = group_from_permutations({"s": fx, "t": hz}).order
        n_y = group_from_permutations({"s": fy, "t": hz}).order
        ok = n_x == 6 and n_y == 24
        return ok, {"f_x": cycle_notation(fx, basis),
                    "f_y": cycle_notation(fy, basis),
                    "h_z": cycle_notation(hz, basis),
                    "order_with_x": n_x, "order_with_y": n_y,
                    "non_isomorphic": n_x != n_y}

    _run_check(checks, "a", "the two factors have orders 64 and 48 over an "
               "order-16 edge group with injective inclusions", check_build)
    _run_check(checks, "b", "psi is an automorphism of the order-64 factor",
               check_psi)
    _run_check(checks, "c", "conjugation by u = z^-1 x y z agrees with psi "
               "on all 16 edge-group elements", check_conjugation_matches_psi)
    _run_check(checks, "d", "phi (psi on one factor, conjugation by u on "
               "the other) is well defined and swaps x and y",
               check_phi_well_defined)
    _run_check(checks, "e", "phi sends sampled reduced normal forms of "
               "syllable length <= 6 to reduced normal forms with the exact "
               "no-collapse syllable count, and never to the identity",
               check_normal_form_preservation)
    _run_check(checks, "f", "the conjugation actions of <x, z> and <y, z> "
               "on the edge group have orders 6 and 24, so no automorphism "
               "sends x to y", check_conjugation_actions)
    return VerificationReport("counterexample", tuple(checks))


# -- subcommand implementations --------------------------------------------------


def cmd_group(args) -> int:
    gog = load_group(args.group)
    if args.format == "json":
        print(_dump(gog_to_json(gog)))
        return 0
    print("vertices:")
    for vid in sorted(gog.vertices):
        grp = gog.vertices[vid]
        gens = " ".join(sorted(grp.generators)) or "-"
        print(f"  {vid}: order {grp.order}, generators {gens}")
    print("edges:")
    for eid in sorted(gog.edges):
        e = gog.edges[eid]
        tree = ", tree" if eid in gog.spanning_tree else ""
        print(f"  {eid}: order {e.group.order}, {e.ends[0]} -- {e.ends[1]}{tree}")
    print(f"base: {gog.base_vertex}")
    return 0


def cmd_nf(args) -> int:
    gog = load_group(args.group)
    nf = normal_form(gog, parse_word(gog, args.word))
    if args.format == "json":
        print(_dump(nf_to_json(gog, nf)))
    else:
        print(format_nf(gog, nf))
    return 0


def cmd_classify(args) -> int:
    gog = load_group(args.group)
    c = classify_element(gog, normal_form(gog, parse_word(gog, args.word)))
    if args.format == "json":
        out = {"kind": c.kind, "translation_length": c.translation_length}
        if c.fixed_vertex is not None:
            out["fixed_vertex"] = {
                "orbit": c.fixed_vertex.orbit,
                "rep": format_nf(gog, c.fixed_vertex.coset_rep)}
        print(_dump(out))
    elif c.kind == "elliptic":
        print(f"elliptic: fixes {_vertex_str(gog, c.fixed_vertex)}")
    else:
        print(f"hyperbolic: translation length {c.translation_length}")
    return 0


def cmd_axis(args) -> int:
    gog = load_group(args.group)
    seg = axis_window(gog, normal_form(gog, parse_word(gog, args.word)),
                      args.periods)
    if args.format == "json":
        print(_dump({"period": seg.period,
                     "vertices": [{"orbit": v.orbit,
                                   "rep": format_nf(gog, v.coset_rep)}
                                  for v in seg.vertices]}))
    else:
        for v in seg.vertices:
            print(_vertex_str(gog, v))
    return 0


def cmd_defspace(args) -> int:
    if args.action in ("reduced", "expand") and args.group is None:
        raise GogError(f"--group is required for {args.action!r}")
    if args.action == "reduced":
        gog = load_group(args.group)
        ds = degree_sum(gog)
        out = {"reduced": is_reduced(gog),
               "non_redundant": is_non_redundant(gog),
               "minimal": is_minimal(gog),
               "degree_sum": ds.value,
               "degrees": {v: d for v, d in ds.terms}}
        if args.format == "json":
            print(_dump(out))
        else:
            for key in ("reduced", "non_redundant", "minimal", "degree_sum"):
                print(f"{key}: {out[key]}")
            terms = " + ".join(f"({d}-2)" for _, d in ds.terms)
            print(f"degrees: {ds.value} = {terms}")
        return 0
    if args.action == "enumerate":
        found = enumerate_reduced(args.vertices, args.edges, args.max_order)
        if args.format == "json":
            print(_dump([gog_to_json(g) for g in found]))
        else:
            print(f"{len(found)} isomorphism classes")
        return 0
    gog = load_group(args.group)
    out = nonredundant_expansions(gog, args.depth)
    fresh = out[1:]
    if args.format == "json":
        print(_dump([gog_to_json(g) for g in fresh]))
    else:
        print(f"{len(fresh)} non-redundant expansions within depth {args.depth}")
    return 0


def cmd_fold(args) -> int:
    gog = load_group(args.target)
    spec = _load_json(args.source)
    kind = spec.get("marking")
    if kind == "identity":
        marked = identity_marking(gog)
    elif kind == "basis":
        words = [parse_word(gog, w) for w in spec["words"]]
        marked = marked_rose_for_basis(gog, words, hub=spec.get("hub", "u"))
    else:
        raise GogError(f"unknown marking kind {kind!r}; expected "
                       "'identity' or 'basis'")
    steps = fold_sequence(marked, gog, max_steps=args.max_steps)
    for i, (d, tree) in enumerate(steps):
        record = {"step": i + 1, "kind": d.kind,
                  "classification": d.classification,
                  "edge": d.edge, "end": d.end,
                  "edge2": d.edge2, "end2": d.end2,
                  "elements": [format_nf(gog, x) for x in d.elements],
                  "edge_orbits_after": len(tree.edges),
                  "vertex_orbits_after": len(tree.vertices)}
        if args.format == "json":
            print(json.dumps(record, sort_keys=True))
        else:
            with_part = f" with {d.edge2}@{d.end2}" if d.edge2 else ""
            print(f"{i + 1}. {d.kind} fold at {d.edge}@{d.end}{with_part} "
                  f"[{d.classification}] -> {len(tree.edges)} edge orbits")
    return 0


def cmd_whitehead(args) -> int:
    gog = load_group(args.group)
    g = normal_form(gog, parse_word(gog, args.word))
    if args.vertex is not None:
        graphs = [whitehead_graph(gog, g, args.vertex)]
        fills_flag = all(w.is_complete for w in graphs)
    else:
        report = fills(gog, g)
        graphs = list(report.graphs)
        fills_flag = report.fills
    if args.format == "json":
        print(_dump({
            "element": format_nf(gog, g),
            "fills": fills_flag,
            "graphs": [{
                "orbit": w.at_vertex.orbit,
                "nodes": len(w.nodes),
                "edges": len(w.edges),
                "complete": w.is_complete,
                "missing": [[_vertex_str(gog, p), _vertex_str(gog, q)]
                            for p, q in w.missing_pairs()],
            } for w in graphs]}))
    else:
        print(f"element: {format_nf(gog, g)}")
        print(f"fills: {'yes' if fills_flag else 'no'}")
        for w in graphs:
            print(f"  {w.at_vertex.orbit}: nodes {len(w.nodes)}, "
                  f"edges {len(w.edges)}, "
                  f"complete {'yes' if w.is_complete else 'no'}, "
                  f"missing {len(w.missing_pairs())}")
    return 0


def cmd_walk(args) -> int:
    gog = load_group(args.group)
    seed = int(os.environ.get("VFREE_SEED", args.seed))
    if args.measure is not None:
        data = _load_json(args.measure)
        support = tuple(normal_form(gog, parse_word(gog, w))
                        for w in data["support"])
        if "weights" in data:
            weights = tuple(Fraction(w) for w in data["weights"])
        else:
            weights = tuple([Fraction(1, len(support))] * len(support))
        spec = RandomWalkSpec(support, weights, args.trials, seed)
    else:
        letters = [name for name, _ in generator_letters(gog)]
        words = [w for name in letters for w in (name, f"{name}^-1")]
        spec = uniform_spec(gog, words, args.trials, seed)
    lengths = [int(part) for part in args.lengths.split(",") if part]
    rows = run_genericity_experiment(gog, spec, lengths)
    if args.format == "json":
        print(_dump([{"n": r.n, "trials": r.trials,
                      "hyperbolic_count": r.hyperbolic_count,
                      "filling_count": r.filling_count,
                      "filling_rate": float(r.filling_rate)} for r in rows]))
    else:
        print(experiment_csv(rows), end="")
    return 0


def _inner_formula(spec):
    kind = spec.get("kind", "delta")
    if kind == "delta":
        return emit_delta_related(spec["n"], spec["blocks"])
    if kind == "text":
        return parse_formula(spec["formula"])
    raise GogError(f"unknown inner formula kind {kind!r}")


def cmd_emit_formula(args) -> int:
    params = _load_json(args.params) if args.params else {}
    if args.which == "theta":
        f = emit_theta_sl2z(params.get("relators", SL2Z_RELATORS),
                            params.get("words", ["x"]),
                            tuple(params.get("orders", (4, 6))))
    elif args.which == "delta":
        f = emit_delta_related(params["n"], params["blocks"])
    else:
        f = emit_mu((params["g"]["generators"], params["g"]["relators"]),
                    (params["u"]["generators"], params["u"]["relators"]),
                    params["embedding"], params["tests"], params["kill"],
                    _inner_formula(params["inner"]))
    if args.format == "json":
        print(_dump({"formula": pretty_print(f),
                     "classification": classify_formula(f),
                     "free_variables": list(f.free_variables)}))
    else:
        print(pretty_print(f))
    return 0


def cmd_verify(args) -> int:
    report = verify_sl2z() if args.case == "sl2z" else verify_counterexample()
    if args.format == "text":
        print(f"case: {report.case_name}")
        for c in report.checks:
            print(f"[{c.status}] ({c.check_id}) {c.description}")
        print(f"overall: {report.overall}")
    else:
        print(_dump(report.to_json()))
    return 0 if report.overall == "pass" else 1


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vfree",
        description="Exact computation in virtually free groups presented "
                    "as finite graphs of finite groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, func, default_format="text"):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--format", choices=("text", "json"),
                        default=default_format)
        sp.set_defaults(func=func)
        return sp

    sp = add("group", "summarize or dump a graph of groups", cmd_group)
    sp.add_argument("--group", required=True,
                    help="JSON file or builtin: " + ", ".join(BUILTIN_GROUPS))

    sp = add("nf", "normal form of a word", cmd_nf)
    sp.add_argument("--group", required=True)
    sp.add_argument("--word", required=True)

    sp = add("classify", "elliptic or hyperbolic, with the invariant",
             cmd_classify)
    sp.add_argument("--group", required=True)
    sp.add_argument("--word", required=True)

    sp = add("axis", "vertex path along the axis of a hyperbolic element",
             cmd_axis)
    sp.add_argument("--group", required=True)
    sp.add_argument("--word", required=True)
    sp.add_argument("--periods", type=int, default=3)

    sp = add("defspace", "deformation space reports", cmd_defspace)
    sp.add_argument("action", choices=("reduced", "enumerate", "expand"))
    sp.add_argument("--group", help="required for reduced and expand")
    sp.add_argument("--vertices", type=int, default=2)
    sp.add_argument("--edges", type=int, default=1)
    sp.add_argument("--max-order", type=int, default=6)
    sp.add_argument("--depth", type=int, default=2)

    sp = add("fold", "fold a marked tree onto a presentation", cmd_fold)
    sp.add_argument("--source", required=True,
                    help="marking JSON: {\"marking\": \"identity\"} or "
                         "{\"marking\": \"basis\", \"words\": [...]}")
    sp.add_argument("--target", required=True)
    sp.add_argument("--max-steps", type=int, default=50)

    sp = add("whitehead", "Whitehead graphs and the filling certificate",
             cmd_whitehead)
    sp.add_argument("--group", required=True)
    sp.add_argument("--word", required=True)
    sp.add_argument("--vertex", help="restrict to one vertex orbit")

    sp = add("walk", "random-walk genericity experiment (CSV)", cmd_walk)
    sp.add_argument("--group", default="sl2z")
    sp.add_argument("--measure", help="JSON with support and optional weights")
    sp.add_argument("--lengths", required=True, help="comma-separated")
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0,
                    help="overridden by VFREE_SEED if set")

    sp = add("emit-formula", "render one of the built-in sentence shapes",
             cmd_emit_formula)
    sp.add_argument("which", choices=("theta", "delta", "mu"))
    sp.add_argument("--params", help="JSON parameter file")

    sp = add("verify", "run a built-in verified case study", cmd_verify,
             default_format="json")
    sp.add_argument("case", choices=("sl2z", "counterexample"))

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except KeyError as exc:
        print(f"vfree: missing required field {exc.args[0]!r}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"vfree: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
