"""Formula ASTs: word algebra, the three emitters, classification, rendering."""

import random

import pytest

from vfree.folog import (
    SL2Z_RELATORS,
    And,
    Eq,
    Exists,
    Forall,
    Formula,
    FormulaError,
    Implies,
    Neq,
    Or,
    Word,
    atoms,
    classify,
    emit_delta_related,
    emit_mu,
    emit_theta_sl2z,
    parse,
    pretty_print,
    substitute,
    winv,
    wmul,
    word,
    wpow,
    wsub,
)

THETA_K1 = (
    "FREE u1 . (EXISTS x y . (x^4 = 1 AND y^6 = 1 AND x^2 y^-3 = 1 AND "
    "u1 x^-1 = 1 AND x ~= 1 AND x^2 ~= 1 AND x^3 ~= 1 AND y ~= 1 AND "
    "y^2 ~= 1 AND y^3 ~= 1 AND y^4 ~= 1 AND y^5 ~= 1))"
)

DELTA_MIN = "FREE x1 x2 . (EXISTS u1 . x1 u1 x2^-1 u1^-1 = 1)"

MU_SMALL = (
    "FREE z1 . (FORALL x1 x2 . ((x1^4 = 1 AND x2^6 = 1 AND x1^2 x2^-3 = 1 "
    "AND z1 x1^-2 = 1) => (EXISTS y1 u1 . (y1^6 = 1 AND (y1^2 = 1 OR "
    "y1^3 = 1) AND x1 x2 u1 y1^-1 u1^-1 = 1))))"
)


def test_word_algebra():
    assert word("x y y^-1 x") == word("x^2")
    assert word("1") == Word(())
    assert str(word("x^3 y^-2")) == "x^3 y^-2"
    assert str(word("1")) == "1"
    assert winv(word("x y^-2")) == word("y^2 x^-1")
    assert wmul("x", "x^-1") == Word(())
    assert wpow(word("x y"), 2) == word("x y x y")
    assert wpow(word("x"), -3) == word("x^-3")
    assert wsub(word("x^2 y"), {"x": word("a b")}) == word("a b a b y")
    assert word(word("x")) == word("x")
    with pytest.raises(FormulaError):
        word("AND")
    with pytest.raises(FormulaError):
        Word((("x", "2"),))


def test_theta_golden_and_counts():
    th = emit_theta_sl2z(SL2Z_RELATORS, ["x"])
    assert pretty_print(th) == THETA_K1
    assert parse(THETA_K1) == th
    assert classify(th) == "existential"
    assert th.free_variables == ("u1",)
    leaves = atoms(th.body)
    assert sum(isinstance(a, Neq) for a in leaves) == 3 + 5
    assert sum(isinstance(a, Eq) for a in leaves) == len(SL2Z_RELATORS) + 1


def test_theta_free_count_matches_word_count():
    th = emit_theta_sl2z(SL2Z_RELATORS, ["x y", "y^2 x^-1", "x^-1 y x"])
    assert th.free_variables == ("u1", "u2", "u3")
    assert classify(th) == "existential"
    assert parse(pretty_print(th)) == th


def test_theta_general_orders():
    th = emit_theta_sl2z(["x^2", "y^3"], ["x y"], orders=(2, 3))
    leaves = atoms(th.body)
    assert sum(isinstance(a, Neq) for a in leaves) == 1 + 2


def test_theta_rejections():
    with pytest.raises(FormulaError):
        emit_theta_sl2z(SL2Z_RELATORS, [])
    with pytest.raises(FormulaError):
        emit_theta_sl2z(SL2Z_RELATORS, ["x z"])
    with pytest.raises(FormulaError):
        emit_theta_sl2z(["x^4 w"], ["x"])
    with pytest.raises(FormulaError):
        emit_theta_sl2z(SL2Z_RELATORS, ["x"], orders=(1, 6))


def test_delta_smallest_instance():
    de = emit_delta_related(1, [["x1"]])
    assert pretty_print(de) == DELTA_MIN
    assert parse(DELTA_MIN) == de
    assert classify(de) == "existential"
    assert de.free_variables == ("x1", "x2")


def test_delta_free_count_is_twice_n():
    de = emit_delta_related(3, [["x1 x2", "x3"], ["x2^-1 x1"]])
    assert len(de.free_variables) == 6
    assert de.free_variables == tuple(f"x{i}" for i in range(1, 7))
    assert classify(de) == "existential"
    assert parse(pretty_print(de)) == de
    # the declaration is positional: x3 gets no occurrence when the words
    # only use x1, yet the free list still has length 2n
    de2 = emit_delta_related(3, [["x1"]])
    assert len(de2.free_variables) == 6
    assert parse(pretty_print(de2)) == de2


def test_delta_rejections():
    with pytest.raises(FormulaError):
        emit_delta_related(1, [])
    with pytest.raises(FormulaError):
        emit_delta_related(2, [["x1"], []])
    with pytest.raises(FormulaError):
        emit_delta_related(2, [["x3"]])
    with pytest.raises(FormulaError):
        emit_delta_related(0, [["x1"]])


def mu_small():
    inner = emit_delta_related(1, [["x1"]])
    return emit_mu(
        (2, SL2Z_RELATORS_X12),
        (1, ["y1^6"]),
        ["x1 x2"],
        ["x1^2"],
        ["y1^2", "y1^3"],
        inner,
    )


SL2Z_RELATORS_X12 = ["x1^4", "x2^6", "x1^2 x2^-3"]


def test_mu_golden():
    mu = mu_small()
    assert pretty_print(mu) == MU_SMALL
    assert parse(MU_SMALL) == mu
    assert classify(mu) == "forall_exists"
    assert mu.free_variables == ("z1",)


def test_mu_two_subgroup_generators():
    inner = emit_delta_related(2, [["x1", "x2"]])
    mu = emit_mu(
        (2, SL2Z_RELATORS_X12),
        (2, ["y1^4", "y2^6", "y1^2 y2^-3"]),
        ["x1", "x2"],
        ["x1 x2", "x2^3"],
        ["y1^2", "y2^3"],
        inner,
    )
    assert classify(mu) == "forall_exists"
    assert mu.free_variables == ("z1", "z2")
    assert parse(pretty_print(mu)) == mu


def test_mu_quantifier_free_inner():
    inner = Formula(("a1", "a2"), Eq(word("a1 a2^-1")))
    mu = emit_mu((1, ["x1^4"]), (1, ["y1^6"]), ["x1"], ["x1"], ["y1"], inner)
    assert classify(mu) == "forall_exists"
    assert parse(pretty_print(mu)) == mu


def test_mu_rejections():
    inner = emit_delta_related(1, [["x1"]])
    with pytest.raises(FormulaError, match="kill list"):
        emit_mu((2, SL2Z_RELATORS_X12), (1, ["y1^6"]), ["x1"], ["x1"], [],
                inner)
    with pytest.raises(FormulaError, match="test word"):
        emit_mu((2, SL2Z_RELATORS_X12), (1, ["y1^6"]), ["x1"], [], ["y1"],
                inner)
    with pytest.raises(FormulaError, match="embedding word"):
        emit_mu((2, SL2Z_RELATORS_X12), (1, ["y1^6"]), ["x1", "x2"], ["x1"],
                ["y1"], inner)
    with pytest.raises(FormulaError, match="free variables"):
        emit_mu((2, SL2Z_RELATORS_X12), (2, ["y1^4"]), ["x1", "x2"], ["x1"],
                ["y1"], inner)
    with pytest.raises(FormulaError, match="kill-list"):
        emit_mu((2, SL2Z_RELATORS_X12), (1, ["y1^6"]), ["x1"], ["x1"],
                ["x1"], inner)


def test_classify_shapes():
    qf = Formula(("a",), Eq(word("a^2")))
    assert classify(qf) == "existential"
    uni = Formula((), Forall(("a",), Neq(word("a"))))
    assert classify(uni) == "universal"
    fe = Formula((), Forall(("a",), Exists(("b",), Eq(word("a b")))))
    assert classify(fe) == "forall_exists"
    ef = Formula((), Exists(("a",), Forall(("b",), Eq(word("a b")))))
    assert classify(ef) == "other"
    fef = Formula((), Forall(("a",), Exists(
        ("b",), Forall(("c",), Eq(word("a b c"))))))
    assert classify(fef) == "other"
    # a universal buried inside a conjunction is not a leading block
    buried = Formula((), Exists(("a",), And((
        Eq(word("a")), Forall(("b",), Eq(word("a b")))))))
    assert classify(buried) == "other"
    # hoisting stops when the antecedent itself carries a quantifier
    qa = Formula((), Forall(("a",), Implies(
        Exists(("b",), Eq(word("a b"))),
        Exists(("c",), Eq(word("a c"))))))
    assert classify(qa) == "other"


def test_formula_validation():
    with pytest.raises(FormulaError):
        Formula((), Eq(word("a")))
    with pytest.raises(FormulaError):
        Formula(("a",), Exists(("a",), Eq(word("a"))))
    with pytest.raises(FormulaError):
        Formula((), Exists(("a", "a"), Eq(word("a"))))
    with pytest.raises(FormulaError):
        Formula((), Exists((), Eq(Word(()))))
    with pytest.raises(FormulaError):
        Formula((), And((Eq(Word(())),)))
    with pytest.raises(FormulaError):
        Formula(("a", "a"), Eq(word("a")))


def test_substitute_refuses_capture():
    body = Exists(("u",), Eq(word("u x")))
    assert substitute(body, {"x": word("v")}) == Exists(
        ("u",), Eq(word("u v")))
    with pytest.raises(FormulaError):
        substitute(body, {"x": word("u")})
    with pytest.raises(FormulaError):
        substitute(body, {"u": word("v")})


def test_parse_rejections():
    with pytest.raises(FormulaError):
        parse("x = 1 y = 1")
    with pytest.raises(FormulaError):
        parse("(x = 1)")
    with pytest.raises(FormulaError):
        parse("(x = 1 AND y = 1")
    with pytest.raises(FormulaError):
        parse("FREE x . x = 2")
    with pytest.raises(FormulaError):
        parse("x & y")


def random_formula(rng):
    """A small well-formed formula with rng-driven shape."""
    counter = [0]

    def fresh():
        counter[0] += 1
        return f"v{counter[0]}"

    def rand_word(scope):
        k = rng.randint(1, 4)
        return wmul(*(wpow(word(rng.choice(scope)), rng.choice([-2, -1, 1, 2, 3]))
                      for _ in range(k)))

    def node(scope, depth):
        if depth == 0 or rng.random() < 0.3:
            cls = Eq if rng.random() < 0.5 else Neq
            return cls(rand_word(scope))
        kind = rng.choice(["and", "or", "implies", "exists", "forall"])
        if kind in ("and", "or"):
            parts = tuple(node(scope, depth - 1)
                          for _ in range(rng.randint(2, 3)))
            return (And if kind == "and" else Or)(parts)
        if kind == "implies":
            return Implies(node(scope, depth - 1), node(scope, depth - 1))
        names = tuple(fresh() for _ in range(rng.randint(1, 2)))
        inner = node(scope + list(names), depth - 1)
        return (Exists if kind == "exists" else Forall)(names, inner)

    free = tuple(fresh() for _ in range(rng.randint(1, 3)))
    return Formula(free, node(list(free), 3))


def test_round_trip_fuzz():
    rng = random.Random(1729)
    for _ in range(60):
        f = random_formula(rng)
        text = pretty_print(f)
        assert parse(text) == f
        assert classify(f) in {"existential", "universal",
                               "forall_exists", "other"}
