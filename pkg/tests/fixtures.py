"""Shared example objects for the test suite.

The two semidirect products and their amalgam are the running
counterexample pair: A = (Z/2)^4 x| (Z/2)^2 where x swaps e1,e2 and y
swaps e3,e4; B = (Z/2)^4 x| Z/3 where z cycles e1,e2,e3; G = A *_C B with
C = (Z/2)^4 included identically on both sides.
"""

from __future__ import annotations

import random

import vfree.fingroup as fg
import vfree.gogwords as gw


def build_A() -> fg.FiniteGroup:
    c = fg.build_boolean_vectors(4)
    q = fg.build_boolean_vectors(2, names=("x", "y"))
    return fg.build_semidirect(c, q, {
        "x": fg.basis_cycle_perm("(e1 e2)", 4),
        "y": fg.basis_cycle_perm("(e3 e4)", 4),
    })


def build_B() -> fg.FiniteGroup:
    c = fg.build_boolean_vectors(4)
    q = fg.build_cyclic(3, "z")
    return fg.build_semidirect(c, q, {"z": fg.basis_cycle_perm("(e1 e2 e3)", 4)})


def build_counterexample_gog() -> gw.GraphOfGroups:
    """A *_C B with C = (Z/2)^4 embedded as the normal subgroup of each side."""
    a = build_A()
    b = build_B()
    c = fg.build_boolean_vectors(4)
    names = ["e1", "e2", "e3", "e4"]
    ia = fg.GroupHom.from_generator_images(c, a, {n: a.generator(n) for n in names})
    ib = fg.GroupHom.from_generator_images(c, b, {n: b.generator(n) for n in names})
    return gw.build_amalgam(a, b, c, ia, ib)


def build_z2_z3() -> gw.GraphOfGroups:
    """Z/2 * Z/3 with generators s and t."""
    return gw.build_free_product(fg.build_cyclic(2, "s"), fg.build_cyclic(3, "t"))


def random_words(alphabet, count, max_len, seed):
    rng = random.Random(seed)
    return ["".join(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))
            for _ in range(count)]
