"""Finite groups as explicit multiplication tables.

Elements are dense integer indices 0..n-1. Every constructor in this module
places the identity at index 0; tables loaded from external data may put it
anywhere (validation locates it). Composition is rightmost-first everywhere:
(f∘g)(x) = f(g(x)), and the conjugation action is ad(g)(x) = g·x·g⁻¹, so
ad(gh) = ad(g)∘ad(h).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence


class GroupError(ValueError):
    """Raised when group data fails validation or an operation is illegal."""


_ASSOC_EXHAUSTIVE_LIMIT = 64
_ASSOC_SAMPLES = 20000


class FiniteGroup:
    """A finite group given by its full multiplication table.

    table[i][j] is the index of the product (element i) * (element j).
    generators maps generator names to element indices and must generate
    the whole group. Associativity is checked exhaustively up to order 64
    and on a seeded random sample of triples above that.
    """

    __slots__ = ("table", "order", "identity", "inverses", "generators",
                 "labels", "_orders")

    def __init__(self, table: Sequence[Sequence[int]],
                 generators: dict[str, int],
                 labels: Optional[Sequence[str]] = None,
                 check: bool = True):
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        if self.order == 0:
            raise GroupError("empty multiplication table")
        for row in self.table:
            if len(row) != self.order or any(not 0 <= v < self.order for v in row):
                raise GroupError("multiplication table is not square over 0..n-1")
        self.identity = self._find_identity()
        self.inverses = self._find_inverses()
        self.generators = dict(generators)
        if labels is None:
            labels = [f"g{i}" for i in range(self.order)]
        if len(labels) != self.order:
            raise GroupError("label list length does not match group order")
        self.labels = tuple(labels)
        self._orders: Optional[tuple[int, ...]] = None
        if check:
            self._check_associativity()
            self._check_generation()

    def _find_identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][x] == x and self.table[x][e] == x
                   for x in range(self.order)):
                return e
        raise GroupError("no identity element")

    def _find_inverses(self) -> tuple[int, ...]:
        inv = [-1] * self.order
        e = self.identity
        for x in range(self.order):
            for y in range(self.order):
                if self.table[x][y] == e and self.table[y][x] == e:
                    inv[x] = y
                    break
            if inv[x] < 0:
                raise GroupError(f"element {x} has no inverse")
        return tuple(inv)

    def _check_associativity(self) -> None:
        n = self.order
        t = self.table
        if n <= _ASSOC_EXHAUSTIVE_LIMIT:
            triples: Iterable[tuple[int, int, int]] = itertools.product(
                range(n), repeat=3)
        else:
            rng = random.Random(0x5EED)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(_ASSOC_SAMPLES))
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupError(f"associativity fails at ({a},{b},{c})")

    def _check_generation(self) -> None:
        for name, idx in self.generators.items():
            if not 0 <= idx < self.order:
                raise GroupError(f"generator {name!r} index out of range")
        closure = subgroup_closure(self, self.generators.values())
        if len(closure.elements) != self.order:
            raise GroupError("declared generators do not generate the group")

    # -- arithmetic -------------------------------------------------------

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self.inverses[i]

    def conj(self, g: int, x: int) -> int:
        """ad(g)(x) = g·x·g⁻¹."""
        return self.table[self.table[g][x]][self.inverses[g]]

    def power(self, i: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverses[i], -k)
        acc = self.identity
        while k:
            acc = self.table[acc][i]
            k -= 1
        return acc

    def element_order(self, i: int) -> int:
        acc = i
        n = 1
        while acc != self.identity:
            acc = self.table[acc][i]
            n += 1
            if n > self.order:
                raise GroupError("element order exceeds group order")
        return n

    def element_orders(self) -> tuple[int, ...]:
        if self._orders is None:
            self._orders = tuple(self.element_order(i) for i in range(self.order))
        return self._orders

    def label(self, i: int) -> str:
        return self.labels[i]

    def generator(self, name: str) -> int:
        if name not in self.generators:
            raise GroupError(f"unknown generator {name!r}")
        return self.generators[name]

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self) -> str:
        gens = ",".join(self.generators)
        return f"FiniteGroup(order={self.order}, gens=[{gens}])"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup recorded as a sorted tuple of element indices."""

    group: FiniteGroup
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, i: int) -> bool:
        return i in set(self.elements)

    def as_group(self) -> tuple[FiniteGroup, dict[int, int]]:
        """Realize the subgroup as a standalone FiniteGroup.

        Returns (group, embed) where embed maps local indices back to
        indices in the parent group. Local index 0 is the identity.
        """
        elts = sorted(self.elements, key=lambda i: i != self.group.identity)
        pos = {e: k for k, e in enumerate(elts)}
        table = [[pos[self.group.mul(a, b)] for b in elts] for a in elts]
        labels = [self.group.label(e) for e in elts]
        gens = {f"s{k}": k for k in range(1, len(elts))} or {"s0": 0}
        sub = FiniteGroup(table, gens, labels)
        return sub, {k: e for k, e in enumerate(elts)}


@dataclass(frozen=True)
class GroupHom:
    """A map between finite groups, recorded on every element."""

    source: FiniteGroup
    target: FiniteGroup
    mapping: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self ∘ other (other applied first)."""
        if other.target is not self.source:
            raise GroupError("composition with mismatched groups")
        return GroupHom(other.source, self.target,
                        tuple(self.mapping[v] for v in other.mapping))

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.mapping)))

    def is_injective(self) -> bool:
        return len(set(self.mapping)) == self.source.order

    @staticmethod
    def identity(group: FiniteGroup) -> "GroupHom":
        return GroupHom(group, group, tuple(range(group.order)))

    @staticmethod
    def from_generator_images(source: FiniteGroup, target: FiniteGroup,
                              images: dict[str, int]) -> "GroupHom":
        """Extend generator images to all elements along BFS words.

        The extension always exists as a map; whether it is a homomorphism
        must be checked afterwards (check_hom reports a witness if not).
        """
        if set(images) != set(source.generators):
            raise GroupError("images must be given for exactly the declared generators")
        mapping = [-1] * source.order
        mapping[source.identity] = target.identity
        frontier = [source.identity]
        gen_items = [(source.generators[n], images[n]) for n in sorted(images)]
        while frontier:
            nxt = []
            for x in frontier:
                for g, img in gen_items:
                    y = source.mul(x, g)
                    if mapping[y] < 0:
                        mapping[y] = target.mul(mapping[x], img)
                        nxt.append(y)
            frontier = nxt
        if any(v < 0 for v in mapping):
            raise GroupError("generators do not reach every element")
        return GroupHom(source, target, tuple(mapping))


@dataclass(frozen=True)
class HomReport:
    """Outcome of check_hom: status is valid_iso, valid_hom, or invalid."""

    status: str
    witness: Optional[tuple[int, int]] = None

    @property
    def is_hom(self) -> bool:
        return self.status in ("valid_hom", "valid_iso")


def check_hom(h: GroupHom) -> HomReport:
    """Classify a recorded map: isomorphism, plain homomorphism, or invalid.

    The witness for an invalid map is a pair (x, y) with
    h(x·y) ≠ h(x)·h(y).
    """
    src, tgt, m = h.source, h.target, h.mapping
    for x in range(src.order):
        for y in range(src.order):
            if m[src.mul(x, y)] != tgt.mul(m[x], m[y]):
                return HomReport("invalid", (x, y))
    bijective = len(set(m)) == src.order == tgt.order
    return HomReport("valid_iso" if bijective else "valid_hom")


def subgroup_closure(group: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """The subgroup generated by the given element indices (orbit closure)."""
    seen = {group.identity}
    gens = [g for g in gens]
    for g in gens:
        if not 0 <= g < group.order:
            raise GroupError(f"generator index {g} out of range")
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                for y in (group.mul(x, g), group.mul(x, group.inv(g))):
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
        frontier = nxt
    return Subgroup(group, tuple(sorted(seen)))


def conjugation_action(group: FiniteGroup, g: int, sub: Subgroup) -> GroupHom:
    """The automorphism ad(g): x ↦ g·x·g⁻¹ of a g-normalized subgroup."""
    if sub.group is not group:
        raise GroupError("subgroup belongs to a different group")
    elts = set(sub.elements)
    conj = {x: group.conj(g, x) for x in sub.elements}
    if set(conj.values()) != elts:
        bad = next(x for x in sub.elements if conj[x] not in elts)
        raise GroupError(
            f"conjugation by {group.label(g)} does not normalize the subgroup "
            f"(moves {group.label(bad)} outside)")
    local, embed = sub.as_group()
    back = {e: k for k, e in embed.items()}
    mapping = tuple(back[conj[embed[k]]] for k in range(local.order))
    return GroupHom(local, local, mapping)


def coset_data(group: FiniteGroup, sub_elements: Sequence[int]
               ) -> tuple[tuple[int, ...], dict[int, tuple[int, int]]]:
    """Transversal data for the cosets g·H of a subgroup H.

    Returns (reps, decompose) where reps lists the minimal-index
    representative of each coset and decompose[g] = (r, h) with g = r·h,
    h ∈ H, r the representative of g's coset.
    """
    H = sorted(set(sub_elements))
    seen: dict[int, tuple[int, int]] = {}
    reps = []
    for g in range(group.order):
        if g in seen:
            continue
        coset = sorted(group.mul(g, h) for h in H)
        r = coset[0]
        reps.append(r)
        r_inv = group.inv(r)
        for x in coset:
            seen[x] = (r, group.mul(r_inv, x))
    return tuple(reps), seen


def all_subgroups(group: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, found by closing cyclic subgroups under joins."""
    seen: dict[tuple[int, ...], Subgroup] = {}
    trivial = Subgroup(group, (group.identity,))
    seen[trivial.elements] = trivial
    frontier = [trivial]
    while frontier:
        nxt = []
        for sub in frontier:
            for g in range(group.order):
                if g in set(sub.elements):
                    continue
                bigger = subgroup_closure(group, sub.elements + (g,))
                if bigger.elements not in seen:
                    seen[bigger.elements] = bigger
                    nxt.append(bigger)
        frontier = nxt
    return sorted(seen.values(), key=lambda s: (s.order, s.elements))


def _generating_sequence(group: FiniteGroup) -> list[int]:
    """A short ordered generating sequence, chosen greedily by closure growth."""
    chosen: list[int] = []
    reached = {group.identity}
    while len(reached) < group.order:
        best, best_closure = -1, reached
        for g in range(group.order):
            if g in reached:
                continue
            closure = set(subgroup_closure(group, chosen + [g]).elements)
            if len(closure) > len(best_closure):
                best, best_closure = g, closure
                if len(closure) == group.order:
                    break
        chosen.append(best)
        reached = best_closure
    return chosen


def _extend_partial(src: FiniteGroup, tgt: FiniteGroup,
                    phi: dict[int, int], g: int, h: int,
                    injective: bool) -> Optional[dict[int, int]]:
    """Extend a partial homomorphism (defined on a subgroup) by g → h.

    Closes the domain under multiplication, defining images of new products
    and failing on the first inconsistency (or collision, when injective).
    """
    if g in phi:
        return phi if phi[g] == h else None
    phi = dict(phi)
    used = set(phi.values())
    if injective and h in used:
        return None
    phi[g] = h
    used.add(h)
    frontier = [g]
    while frontier:
        x = frontier.pop()
        fx = phi[x]
        for y, fy in list(phi.items()):
            for p, q in ((src.mul(x, y), tgt.mul(fx, fy)),
                         (src.mul(y, x), tgt.mul(fy, fx))):
                fp = phi.get(p)
                if fp is not None:
                    if fp != q:
                        return None
                else:
                    if injective and q in used:
                        return None
                    phi[p] = q
                    used.add(q)
                    frontier.append(p)
    return phi


def _homs_by_images(src: FiniteGroup, tgt: FiniteGroup,
                    injective: bool, surjective: bool) -> Iterator[GroupHom]:
    gens = _generating_sequence(src)
    src_orders = src.element_orders()
    tgt_orders = tgt.element_orders()

    def rec(phi: dict[int, int], k: int) -> Iterator[GroupHom]:
        if k == len(gens):
            if surjective and len(set(phi.values())) != tgt.order:
                return
            yield GroupHom(src, tgt, tuple(phi[i] for i in range(src.order)))
            return
        g = gens[k]
        o = src_orders[g]
        for h in range(tgt.order):
            if injective:
                if tgt_orders[h] != o:
                    continue
            elif o % tgt_orders[h] != 0:
                continue
            ext = _extend_partial(src, tgt, phi, g, h, injective)
            if ext is not None:
                yield from rec(ext, k + 1)

    yield from rec({src.identity: tgt.identity}, 0)


def all_monomorphisms(src: FiniteGroup, tgt: FiniteGroup) -> list[GroupHom]:
    """Every injective homomorphism src → tgt."""
    if tgt.order % src.order != 0:
        return []
    return list(_homs_by_images(src, tgt, injective=True, surjective=False))


def isomorphisms_iter(g1: FiniteGroup, g2: FiniteGroup) -> Iterator[GroupHom]:
    if g1.order != g2.order or sorted(g1.element_orders()) != sorted(g2.element_orders()):
        return
    yield from _homs_by_images(g1, g2, injective=True, surjective=True)


def are_isomorphic(g1: FiniteGroup, g2: FiniteGroup,
                   cap: int = 64) -> Optional[GroupHom]:
    """An isomorphism g1 → g2, or None. Refuses orders above the cap."""
    if max(g1.order, g2.order) > cap:
        raise GroupError(f"isomorphism search capped at order {cap}")
    return next(isomorphisms_iter(g1, g2), None)


# -- constructors ---------------------------------------------------------


def build_cyclic(n: int, name: str = "g") -> FiniteGroup:
    """Z/n with one generator; index k is generator^k."""
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = ["1"] + [name if k == 1 else f"{name}^{k}" for k in range(1, n)]
    gens = {name: 1 % n} if n > 1 else {name: 0}
    return FiniteGroup(table, gens, labels)


def build_boolean_vectors(k: int, names: Optional[Sequence[str]] = None
                          ) -> FiniteGroup:
    """(Z/2)^k with elements encoded as k-bit vectors (index = bitmask).

    Generator e_j is the basis vector with bit j-1 set; the default names
    are e1..ek.
    """
    if k < 1:
        raise GroupError("need at least one basis vector")
    n = 1 << k
    table = [[i ^ j for j in range(n)] for i in range(n)]
    if names is None:
        names = [f"e{j}" for j in range(1, k + 1)]
    if len(names) != k:
        raise GroupError("need one name per basis vector")
    labels = []
    for v in range(n):
        parts = [names[j] for j in range(k) if v >> j & 1]
        labels.append("+".join(parts) if parts else "1")
    gens = {names[j]: 1 << j for j in range(k)}
    return FiniteGroup(table, gens, labels)


def _is_automorphism_perm(group: FiniteGroup, perm: Sequence[int]) -> bool:
    n = group.order
    if sorted(perm) != list(range(n)):
        return False
    return all(perm[group.mul(a, b)] == group.mul(perm[a], perm[b])
               for a in range(n) for b in range(n))


def build_semidirect(c: FiniteGroup, q: FiniteGroup,
                     action: dict[str, Sequence[int]]) -> FiniteGroup:
    """C ⋊ Q for an action of Q on C by automorphisms.

    action maps each generator name of Q to a permutation of C's elements;
    the assignment is extended along words in Q and verified to be a
    homomorphism Q → Aut(C). Elements are pairs (c, q) encoded as
    index = c·|Q| + q, multiplied by (c,q)(c',q') = (c·action(q)(c'), qq').
    """
    if set(action) != set(q.generators):
        raise GroupError("action must be given on exactly Q's generators")
    for name, perm in action.items():
        if not _is_automorphism_perm(c, perm):
            raise GroupError(f"action of {name!r} is not an automorphism of C")
    # extend q ↦ action(q) along BFS words; composition is rightmost-first
    acts: dict[int, tuple[int, ...]] = {q.identity: tuple(range(c.order))}
    frontier = [q.identity]
    gen_items = [(q.generators[n], tuple(action[n])) for n in sorted(action)]
    while frontier:
        nxt = []
        for x in frontier:
            for g, perm in gen_items:
                y = q.mul(x, g)
                if y not in acts:
                    ax = acts[x]
                    acts[y] = tuple(ax[perm[i]] for i in range(c.order))
                    nxt.append(y)
        frontier = nxt
    for q1 in range(q.order):
        for q2 in range(q.order):
            a1, a2, a12 = acts[q1], acts[q2], acts[q.mul(q1, q2)]
            if any(a12[i] != a1[a2[i]] for i in range(c.order)):
                raise GroupError("action is not a homomorphism Q → Aut(C)")
    nq = q.order
    n = c.order * nq

    def enc(ci: int, qi: int) -> int:
        return ci * nq + qi

    table = []
    for ci in range(c.order):
        for qi in range(q.order):
            row = [0] * n
            aq = acts[qi]
            for cj in range(c.order):
                cc = c.mul(ci, aq[cj])
                base = cc * nq
                qrow = q.table[qi]
                for qj in range(q.order):
                    row[enc(cj, qj)] = base + qrow[qj]
            table.append(row)
    gens: dict[str, int] = {}
    for name, idx in c.generators.items():
        gens[name] = enc(idx, q.identity)
    for name, idx in q.generators.items():
        if name in gens:
            raise GroupError(f"generator name {name!r} appears in both factors")
        gens[name] = enc(c.identity, idx)
    labels = []
    for ci in range(c.order):
        for qi in range(q.order):
            lc, lq = c.label(ci), q.label(qi)
            if ci == c.identity:
                labels.append(lq)
            elif qi == q.identity:
                labels.append(lc)
            else:
                labels.append(f"{lc}·{lq}")
    return FiniteGroup(table, gens, labels)


def build_direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """G × H via the trivial action."""
    trivial = {name: tuple(range(g.order)) for name in h.generators}
    return build_semidirect(g, h, trivial)


def build_dicyclic(n: int) -> FiniteGroup:
    """Dicyclic group of order 4n: ⟨a,b | a^{2n}=1, b²=aⁿ, b⁻¹ab=a⁻¹⟩.

    n = 2 gives the quaternion group Q8.
    """
    if n < 1:
        raise GroupError("dicyclic parameter must be positive")
    m = 2 * n
    size = 4 * n

    def idx(k: int, j: int) -> int:  # a^k b^j with j in {0,1}
        return k % m + (m if j else 0)

    table = [[0] * size for _ in range(size)]
    for k in range(m):
        for l in range(m):
            table[idx(k, 0)][idx(l, 0)] = idx(k + l, 0)
            table[idx(k, 0)][idx(l, 1)] = idx(k + l, 1)
            table[idx(k, 1)][idx(l, 0)] = idx(k - l, 1)
            table[idx(k, 1)][idx(l, 1)] = idx(k - l + n, 0)
    labels = []
    for j in (0, 1):
        for k in range(m):
            base = "1" if k == 0 else ("a" if k == 1 else f"a^{k}")
            labels.append(base if j == 0 else ("b" if k == 0 else f"{base}·b"))
    return FiniteGroup(table, {"a": idx(1, 0), "b": idx(0, 1)}, labels)


def group_from_permutations(perms: dict[str, Sequence[int]]) -> FiniteGroup:
    """The permutation group generated by named permutations.

    Permutations are tuples over 0..d-1 and multiply rightmost-first:
    (p*q)(i) = p[q[i]]. The identity gets index 0; labels use cycle
    notation on the moved points.
    """
    if not perms:
        raise GroupError("need at least one permutation")
    degree = len(next(iter(perms.values())))
    items = {}
    for name, p in perms.items():
        p = tuple(p)
        if sorted(p) != list(range(degree)):
            raise GroupError(f"{name!r} is not a permutation of 0..{degree - 1}")
        items[name] = p
    ident = tuple(range(degree))
    elts = [ident]
    pos = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for p in items.values():
                y = tuple(p[x[i]] for i in range(degree))  # p * x
                if y not in pos:
                    pos[y] = len(elts)
                    elts.append(y)
                    nxt.append(y)
                z = tuple(x[p[i]] for i in range(degree))  # x * p
                if z not in pos:
                    pos[z] = len(elts)
                    elts.append(z)
                    nxt.append(z)
        frontier = nxt
    n = len(elts)
    table = [[pos[tuple(a[b[i]] for i in range(degree))] for b in elts]
             for a in elts]
    labels = [cycle_notation(p) for p in elts]
    gens = {name: pos[p] for name, p in items.items()}
    return FiniteGroup(table, gens, labels)


def cycle_notation(perm: Sequence[int], point_names: Optional[Sequence[str]] = None
                   ) -> str:
    """Cycle notation of a permutation, omitting fixed points."""
    if point_names is None:
        point_names = [str(i) for i in range(len(perm))]
    seen = set()
    out = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        cur = perm[start]
        while cur != start:
            cyc.append(cur)
            seen.add(cur)
            cur = perm[cur]
        out.append("(" + " ".join(point_names[i] for i in cyc) + ")")
    return "".join(out) if out else "()"


def basis_cycle_perm(spec: str, k: int) -> tuple[int, ...]:
    """Parse cycle notation over basis vectors e1..ek of (Z/2)^k.

    "(e1 e2)(e3 e4)" denotes the linear map permuting the named basis
    vectors and fixing the rest; the result is the induced permutation of
    all 2^k bit vectors.
    """
    spec = spec.strip()
    basis_map = list(range(k))
    if spec not in ("", "()", "id"):
        depth = 0
        cycles: list[list[int]] = []
        cur: list[str] = []
        tok = ""
        for ch in spec:
            if ch == "(":
                if depth:
                    raise GroupError("nested parentheses in cycle notation")
                depth, cur, tok = 1, [], ""
            elif ch == ")":
                if tok:
                    cur.append(tok)
                    tok = ""
                depth = 0
                cycles.append([_basis_index(t, k) for t in cur])
            elif ch.isspace():
                if tok:
                    cur.append(tok)
                    tok = ""
            else:
                if not depth:
                    raise GroupError(f"unexpected character {ch!r} in cycle notation")
                tok += ch
        if depth:
            raise GroupError("unbalanced parentheses in cycle notation")
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                basis_map[a] = b
        flat = [i for cyc in cycles for i in cyc]
        if len(flat) != len(set(flat)):
            raise GroupError("repeated basis vector in cycle notation")
    return basis_matrix_perm(
        [[1 if basis_map[j] == i else 0 for j in range(k)] for i in range(k)], k)


def _basis_index(token: str, k: int) -> int:
    if not token.startswith("e"):
        raise GroupError(f"expected basis vector like e1, got {token!r}")
    try:
        j = int(token[1:])
    except ValueError:
        raise GroupError(f"expected basis vector like e1, got {token!r}") from None
    if not 1 <= j <= k:
        raise GroupError(f"basis vector {token!r} out of range for k={k}")
    return j - 1


def basis_matrix_perm(rows: Sequence[Sequence[int]], k: int) -> tuple[int, ...]:
    """The permutation of (Z/2)^k bit vectors induced by a k×k F₂ matrix.

    Vectors are bitmasks with bit j-1 = e_j; v ↦ M·v with
    (Mv)_i = ⊕_j M[i][j]·v_j. The matrix must be invertible.
    """
    if len(rows) != k or any(len(r) != k for r in rows):
        raise GroupError(f"need a {k}×{k} matrix")
    cols = [sum((rows[i][j] & 1) << i for i in range(k)) for j in range(k)]
    out = []
    for v in range(1 << k):
        w = 0
        for j in range(k):
            if v >> j & 1:
                w ^= cols[j]
        out.append(w)
    if sorted(out) != list(range(1 << k)):
        raise GroupError("matrix is not invertible over F₂")
    return tuple(out)


# -- words and JSON ---------------------------------------------------------


def evaluate_word(group: FiniteGroup, text: str) -> int:
    """Evaluate a whitespace-separated word in generator names.

    Tokens may carry an integer exponent suffix like a^-1 or b^3; the empty
    word is the identity.
    """
    acc = group.identity
    for token in text.split():
        name, _, exp = token.partition("^")
        if name not in group.generators:
            raise GroupError(f"unknown generator {name!r}")
        power = 1
        if exp:
            try:
                power = int(exp)
            except ValueError:
                raise GroupError(f"malformed exponent in {token!r}") from None
        acc = group.mul(acc, group.power(group.generators[name], power))
    return acc


def generator_word(group: FiniteGroup, idx: int) -> str:
    """A shortest word in the generators equal to the given element.

    Deterministic (BFS in sorted generator order); empty string for the
    identity.
    """
    if not 0 <= idx < group.order:
        raise GroupError(f"element index {idx} out of range")
    words = {group.identity: ""}
    frontier = [group.identity]
    gen_items = [(name, group.generators[name]) for name in sorted(group.generators)]
    while idx not in words and frontier:
        nxt = []
        for x in frontier:
            for name, g in gen_items:
                y = group.mul(x, g)
                if y not in words:
                    words[y] = f"{words[x]} {name}".strip()
                    nxt.append(y)
        frontier = nxt
    return words[idx]


def group_to_json(group: FiniteGroup) -> dict:
    """Serialize as an explicit multiplication table."""
    return {"kind": "table",
            "table": [list(row) for row in group.table],
            "generators": dict(group.generators),
            "labels": list(group.labels)}


def _action_perm(c: FiniteGroup, spec) -> tuple[int, ...]:
    """Interpret a JSON action value as a permutation of C's elements.

    Accepts cycle notation over basis vectors (C must be (Z/2)^k with
    index = bitmask), a k×k F₂ matrix, or an explicit permutation list.
    """
    if isinstance(spec, str):
        k = c.order.bit_length() - 1
        if 1 << k != c.order:
            raise GroupError("cycle-notation actions need a (Z/2)^k factor")
        return basis_cycle_perm(spec, k)
    if isinstance(spec, (list, tuple)):
        if spec and isinstance(spec[0], (list, tuple)):
            k = c.order.bit_length() - 1
            if 1 << k != c.order:
                raise GroupError("matrix actions need a (Z/2)^k factor")
            return basis_matrix_perm(spec, k)
        return tuple(spec)
    raise GroupError(f"cannot interpret action spec {spec!r}")


def group_from_json(data) -> FiniteGroup:
    """Build a finite group from a JSON description.

    Kinds: {"kind":"cyclic","n":4[,"name":"a"]},
    {"kind":"boolean","k":4[,"names":[...]]},
    {"kind":"semidirect","c":...,"q":...,"action":{gen: spec}},
    {"kind":"direct","factors":[...,...]},
    {"kind":"dicyclic","n":2},
    {"kind":"permutations","perms":{name:[...]}},
    {"kind":"table","table":[[...]],"generators":{...}[,"labels":[...]]}.
    """
    if isinstance(data, str):
        data = json.loads(data)
    try:
        kind = data["kind"]
        if kind == "cyclic":
            return build_cyclic(data["n"], data.get("name", "g"))
        if kind == "boolean":
            return build_boolean_vectors(data["k"], data.get("names"))
        if kind == "semidirect":
            c = group_from_json(data["c"])
            q = group_from_json(data["q"])
            action = {name: _action_perm(c, spec)
                      for name, spec in data["action"].items()}
            return build_semidirect(c, q, action)
        if kind == "direct":
            factors = [group_from_json(f) for f in data["factors"]]
            if len(factors) < 2:
                raise GroupError("direct product needs at least two factors")
            out = factors[0]
            for f in factors[1:]:
                out = build_direct_product(out, f)
            return out
        if kind == "dicyclic":
            return build_dicyclic(data["n"])
        if kind == "permutations":
            return group_from_permutations(
                {name: tuple(p) for name, p in data["perms"].items()})
        if kind == "table":
            return FiniteGroup(data["table"], data["generators"],
                               data.get("labels"))
        raise GroupError(f"unknown group kind {kind!r}")
    except (KeyError, TypeError) as exc:
        raise GroupError(f"malformed group JSON: {exc}") from exc
