"""Tests for the fold engine: marked-tree validation, the three fold
kinds with their stabilizer formulas, priority-ordered fold sequences,
and termination at the ambient presentation.

Free-group fold counts are cross-checked against an independent folding
oracle on labeled graphs; stabilizer growth is cross-checked against a
brute-force closure computed directly from normal-form products.
"""

import pytest

import vfree.bstree as bt
import vfree.folds as fo
import vfree.gogwords as gw

ROSE = gw.build_rose(["x", "y"])
SL2Z = gw.build_sl2z()

Z4 = ["", "a", "a a", "a a a"]
Z6 = ["", "b", "b b", "b b b", "b b b b", "b b b b b"]
Z2A = ["", "a a"]


def nf(gog, w):
    return gw.normal_form(gog, gw.parse_word(gog, w))


def mk(gog, vertices, edges):
    vs = {n: fo.marked_vertex(gog, img, stab)
          for n, (img, stab) in vertices.items()}
    es = {n: fo.marked_edge(gog, ends, tw, stab)
          for n, (ends, tw, stab) in edges.items()}
    return fo.MarkedTree(gog, vs, es)


def brute_closure(gog, words):
    elems = {nf(gog, w) for w in words} | {nf(gog, "")}
    while True:
        grown = elems | {gw.path_multiply(gog, a, b)
                         for a in elems for b in elems}
        if grown == elems:
            return elems
        elems = grown


def subdivided_sl2z(edge_stab):
    base = bt.base_vertex(SL2Z)
    vb = bt.standard_vertex(SL2Z, "vB")
    return mk(SL2Z,
              {"vA": (base, Z4), "m": (base, Z2A), "vB": (vb, Z6)},
              {"f": (("vA", "m"), "", Z2A),
               "e": (("m", "vB"), "", edge_stab)})


# -- an independent folding oracle on labeled graphs ----------------------------

def _orientations(edge):
    a, label, b = edge
    return ((a, (label, 1), b), (b, (label, -1), a))


def fold_count_oracle(basis):
    """Folds needed to carry the subdivided wedge of circles labeled by
    the given positive words onto the standard rose: repeatedly identify
    two edges sharing an origin and a label, in either orientation."""
    edges = []
    fresh = 1
    for word in basis:
        letters = word.split()
        prev = 0
        for i, ch in enumerate(letters):
            tgt = 0 if i == len(letters) - 1 else fresh
            if tgt:
                fresh += 1
            edges.append((prev, ch, tgt))
    folds = 0
    while True:
        hit = None
        for i in range(len(edges)):
            for j in range(i + 1, len(edges)):
                for a, l, b in _orientations(edges[i]):
                    for c, m, d in _orientations(edges[j]):
                        if a == c and l == m:
                            hit = (j, b, d)
                            break
                    if hit:
                        break
                if hit:
                    break
            if hit:
                break
        if hit is None:
            return folds
        j, b, d = hit
        edges.pop(j)
        if b != d:
            edges = [(x if x != d else b, l, y if y != d else b)
                     for x, l, y in edges]
        folds += 1


# -- construction and validation -------------------------------------------------

def test_identity_markings_are_terminal():
    for gog in (SL2Z, ROSE, gw.build_rose(["x", "y", "z"])):
        m = fo.identity_marking(gog)
        assert fo.is_terminal(m)
        assert fo.fold_sequence(m, gog, 5) == []
        assert all(fo.maximality_flags(m).values())


def test_marked_rose_shape():
    m = fo.marked_rose_for_basis(ROSE, ["x", "x y"])
    assert sorted(m.vertices) == ["u", "u1_1"]
    assert sorted(m.edges) == ["c0_0", "c1_0", "c1_1"]
    assert not fo.is_terminal(m)
    with pytest.raises(gw.GogError, match="fixes the base"):
        fo.marked_rose_for_basis(SL2Z, ["a"])


def test_validation_rejects_bad_markings():
    base = bt.base_vertex(SL2Z)
    vb = bt.standard_vertex(SL2Z, "vB")
    with pytest.raises(gw.GogError, match="does not fix"):
        mk(SL2Z, {"v": (base, ["", "b"])}, {})
    with pytest.raises(gw.GogError, match="not closed"):
        mk(SL2Z, {"v": (base, ["", "a"])}, {})
    with pytest.raises(gw.GogError, match="missing the identity"):
        fo.MarkedTree(SL2Z, {"v": fo.MarkedVertex(base, frozenset())}, {})
    with pytest.raises(gw.GogError, match="based group element"):
        fo.MarkedTree(
            SL2Z,
            {"v": fo.MarkedVertex(base,
                                  frozenset([gw.NormalForm("vB", (), 0)]))},
            {})
    with pytest.raises(gw.GogError, match="near vertex stabilizer"):
        mk(SL2Z, {"v": (base, [""]), "w": (vb, Z2A)},
           {"E": (("v", "w"), "", Z2A)})
    with pytest.raises(gw.GogError, match="edge or a point"):
        mk(SL2Z, {"v": (base, [""]), "w": (vb, [""])},
           {"E": (("v", "w"), "a b a b", [""])})
    with pytest.raises(gw.GogError, match="not connected"):
        mk(SL2Z, {"v": (base, [""]), "w": (vb, [""])}, {})


# -- single folds -----------------------------------------------------------------

def test_pair_fold_merges_orbits_and_stabilizers():
    base = bt.base_vertex(SL2Z)
    vb = bt.standard_vertex(SL2Z, "vB")
    two = mk(SL2Z, {"v": (base, Z2A), "w": (vb, [""]), "w2": (vb, Z2A)},
             {"E": (("v", "w"), "", [""]), "E2": (("v", "w2"), "", Z2A)})
    d = fo.pair_fold("E", 0, "E2", 0)
    assert fo.classify_fold(two, d) == "type2"
    out = fo.fold(two, d)
    # One edge orbit and one far vertex orbit disappear.
    assert sorted(out.edges) == ["E"] and sorted(out.vertices) == ["v", "w"]
    assert out.edges["E"].stab == frozenset(brute_closure(SL2Z, ["a a"]))
    assert out.vertices["w"].stab == frozenset(brute_closure(SL2Z, ["a a"]))


def test_stabilizer_fold_grows_trivial_edge_group_to_order_two():
    base = bt.base_vertex(SL2Z)
    vb = bt.standard_vertex(SL2Z, "vB")
    one = mk(SL2Z, {"v": (base, Z4), "w": (vb, Z2A)},
             {"E": (("v", "w"), "", [""])})
    d = fo.stabilizer_fold("E", 0, ("a a",))
    assert fo.classify_fold(one, d) == "type3"
    out = fo.fold(one, d)
    assert len(out.edges) == len(one.edges)
    assert out.edges["E"].stab == frozenset(brute_closure(SL2Z, ["a a"]))
    assert out.vertices["w"].stab == frozenset(brute_closure(SL2Z, ["a a"]))


def test_fold_error_conditions():
    m = fo.marked_rose_for_basis(ROSE, ["x", "x y"])
    with pytest.raises(gw.GogError, match="same orbit"):
        fo.fold(m, fo.pair_fold("c0_0", 0, "c0_0", 1))
    with pytest.raises(gw.GogError, match="common endpoint"):
        fo.fold(m, fo.pair_fold("c0_0", 0, "c1_1", 0))
    with pytest.raises(gw.GogError, match="different images"):
        fo.fold(m, fo.pair_fold("c0_0", 0, "c1_1", 1))
    with pytest.raises(gw.GogError, match="does not map to a point"):
        fo.fold(m, fo.collapse_fold("c0_0"))
    base = bt.base_vertex(SL2Z)
    vb = bt.standard_vertex(SL2Z, "vB")
    one = mk(SL2Z, {"v": (base, Z4), "w": (vb, Z2A)},
             {"E": (("v", "w"), "", [""])})
    with pytest.raises(gw.GogError, match="lie in the marked vertex"):
        fo.fold(one, fo.stabilizer_fold("E", 0, ("b",)))
    with pytest.raises(gw.GogError, match="moves the image"):
        fo.fold(one, fo.stabilizer_fold("E", 0, ("a",)))
    with pytest.raises(gw.GogError, match="at least one element"):
        fo.fold(one, fo.stabilizer_fold("E", 0, ()))


def test_closure_cap_signals_leaving_the_finite_regime():
    base = bt.base_vertex(SL2Z)
    vb = bt.standard_vertex(SL2Z, "vB")
    one = mk(SL2Z, {"v": (base, Z4), "w": (vb, Z2A)},
             {"E": (("v", "w"), "", [""])})
    with pytest.raises(gw.GogError, match="infinite-or-large stabilizer"):
        fo.fold(one, fo.stabilizer_fold("E", 0, ("a a",)), closure_cap=1)


# -- fold sequences ---------------------------------------------------------------

def _assert_priority(source, seq):
    cur = source
    for directive, after in seq:
        av = fo.available_folds(cur)
        if directive.classification == "type2":
            assert not av["collapses"]
        if directive.classification == "type3":
            assert not av["collapses"] and not av["pairs"]
        cur = after


def test_basis_fold_counts_match_labeled_graph_oracle():
    bases = [["x", "y"], ["x", "x y"], ["x y", "y"], ["y x", "y"],
             ["x", "x y x"]]
    for basis in bases:
        m = fo.marked_rose_for_basis(ROSE, basis)
        seq = fo.fold_sequence(m, ROSE, 20)
        assert len(seq) == fold_count_oracle(basis)
        final = seq[-1][1] if seq else m
        assert fo.is_terminal(final)
        # The realized loops end up at the standard basis.
        assert {me.twist for me in final.edges.values()} == \
            {nf(ROSE, "x"), nf(ROSE, "y")}
        counts = [len(m.edges)] + [len(t.edges) for _, t in seq]
        assert all(a - b == 1 for a, b in zip(counts, counts[1:]))
        assert all(d.classification == "type2" for d, _ in seq)
        _assert_priority(m, seq)


def test_two_element_basis_needs_exactly_one_fold():
    m = fo.marked_rose_for_basis(ROSE, ["x", "x y"])
    seq = fo.fold_sequence(m, ROSE, 20)
    assert len(seq) == 1
    assert seq[0][0].kind == "pair"


def test_subdivided_presentation_collapses_back():
    full = subdivided_sl2z(Z2A)
    seq = fo.fold_sequence(full, SL2Z, 10)
    assert [d.classification for d, _ in seq] == ["collapse"]
    assert fo.is_terminal(seq[-1][1])
    counts = [len(full.edges)] + [len(t.edges) for _, t in seq]
    assert counts == sorted(counts, reverse=True)


def test_subdivided_presentation_with_small_edge_marking():
    defi = subdivided_sl2z([""])
    assert fo.maximality_flags(defi) == {"f": False, "e": False}
    seq = fo.fold_sequence(defi, SL2Z, 10)
    assert [d.classification for d, _ in seq] == ["collapse", "type3"]
    assert [h for h in seq[1][0].elements] == [nf(SL2Z, "a a")]
    assert fo.is_terminal(seq[-1][1])
    assert all(fo.maximality_flags(seq[-1][1]).values())
    counts = [len(defi.edges)] + [len(t.edges) for _, t in seq]
    assert counts == sorted(counts, reverse=True)
    _assert_priority(defi, seq)
    # Stabilizers recorded along the way equal independent closures.
    final = seq[-1][1]
    assert final.edges["e"].stab == frozenset(brute_closure(SL2Z, ["a a"]))
    assert final.vertices["vB"].stab == frozenset(brute_closure(SL2Z, ["b"]))


def test_no_available_fold_is_ever_type1():
    states = [fo.marked_rose_for_basis(ROSE, ["x", "x y"]),
              subdivided_sl2z([""]), subdivided_sl2z(Z2A)]
    for m in states:
        av = fo.available_folds(m)
        for d in av["collapses"] + av["pairs"] + av["stabilizers"]:
            assert fo.classify_fold(m, d) in {"collapse", "type2", "type3"}


def test_fold_sequence_errors():
    m = fo.marked_rose_for_basis(ROSE, ["x", "x y"])
    with pytest.raises(gw.GogError, match="max_steps"):
        fo.fold_sequence(m, ROSE, 0)
    with pytest.raises(gw.GogError, match="target must present"):
        fo.fold_sequence(m, SL2Z, 10)
    base = bt.base_vertex(SL2Z)
    stuck = mk(SL2Z, {"v": (base, [""])}, {})
    with pytest.raises(gw.GogError, match="not foldable"):
        fo.fold_sequence(stuck, SL2Z, 10)
