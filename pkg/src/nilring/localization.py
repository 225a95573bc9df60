"""Rings of fractions of finite commutative rings.

Two fractions r/s and r'/s' are identified when u(rs' - r's) = 0 for some u
in S. That holds exactly when rs' - r's lies in the S-torsion ideal
{x : ux = 0 for some u in S}, which is what the class builder tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import InternalInconsistency, InvalidParameter, NotCommutative, ZeroInClosure
from .ideals import Ideal, Sidedness, generate_ideal, mask_from_bool, mask_from_indices
from .ring import FiniteRing, RingHom, build_ring_from_tables


@dataclass(frozen=True)
class MultiplicativeSet:
    ring: FiniteRing
    mask: int
    seed: tuple[int, ...] = ()

    @cached_property
    def members(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.ring.order) if self.mask >> x & 1)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def __len__(self) -> int:
        return len(self.members)

    def names(self) -> list[str]:
        return [self.ring.name(x) for x in self.members]


def _require_commutative(ring: FiniteRing) -> None:
    if not ring.commutative:
        raise NotCommutative("localization is only implemented for commutative rings")


def multiplicative_closure(ring: FiniteRing, seed) -> MultiplicativeSet:
    """Smallest multiplicatively closed set containing ``seed`` and 1; refuses closures containing 0."""
    _require_commutative(ring)
    seed = tuple(int(s) for s in seed)
    for s in seed:
        if not 0 <= s < ring.order:
            raise InvalidParameter(f"element {s} is not in the ring")
    if ring.order == 1:
        raise ZeroInClosure([ring.name(ring.one)])
    # breadth-first over products of seed elements, remembering one factorisation each
    parent: dict[int, tuple[int, int] | None] = {ring.one: None}
    frontier = [ring.one]
    while frontier:
        nxt = []
        for x in frontier:
            for s in seed:
                y = ring.mul(x, s)
                if y in parent:
                    continue
                parent[y] = (x, s)
                if y == ring.zero:
                    raise ZeroInClosure(_chain(ring, parent, y))
                nxt.append(y)
        frontier = nxt
    return MultiplicativeSet(ring, mask_from_indices(parent), seed)


def _chain(ring: FiniteRing, parent: dict, y: int) -> list[str]:
    path = []
    while parent[y] is not None:
        path.append(y)
        y = parent[y][0]
    return [ring.name(v) for v in reversed(path)]


def non_zero_divisors(ring: FiniteRing) -> MultiplicativeSet:
    _require_commutative(ring)
    zero_products = ring.mul_table == ring.zero
    # s is regular iff only x = 0 gives s*x = 0
    regular = zero_products.sum(axis=1) == 1
    if ring.order == 1:
        regular[:] = False
    return MultiplicativeSet(ring, mask_from_bool(regular))


def enumerate_multiplicative_sets(ring: FiniteRing, limit: int | None = None, within: MultiplicativeSet | None = None) -> list[MultiplicativeSet]:
    """Every multiplicatively closed subset containing 1 and not 0, in canonical order.

    Built by adjoining one element at a time to already-found sets. With
    ``within`` only subsets of that (closed) set are produced. Raises
    ``InvalidParameter`` if more than ``limit`` sets exist.
    """
    _require_commutative(ring)
    if ring.order == 1:
        return []
    mul = ring.mul_table

    def close(members: set[int], x: int) -> int | None:
        members = set(members)
        frontier = [x]
        members.add(x)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(members):
                    p = int(mul[a, b])
                    if p not in members:
                        if p == ring.zero:
                            return None
                        members.add(p)
                        nxt.append(p)
            frontier = nxt
        return mask_from_indices(members)

    start = 1 << ring.one
    found = {start}
    work = [start]
    while work:
        mask = work.pop()
        members = {x for x in range(ring.order) if mask >> x & 1}
        for x in range(ring.order):
            if x in members or ring.nilpotent_elements[x] or (within is not None and x not in within):
                continue
            new = close(members, x)
            if new is not None and new not in found:
                found.add(new)
                work.append(new)
                if limit is not None and len(found) > limit:
                    raise InvalidParameter(f"more than {limit} multiplicative sets")
    sets = [MultiplicativeSet(ring, m) for m in found]
    sets.sort(key=lambda S: (len(S), S.members))
    return sets


@dataclass(frozen=True, eq=False)
class LocalizedRing:
    base: FiniteRing
    s_set: MultiplicativeSet
    result: FiniteRing
    canonical: RingHom
    class_table: tuple[tuple[int, int], ...]
    torsion: Ideal

    def fraction(self, r: int, s: int) -> int:
        """Index in ``result`` of the class of r/s."""
        if s not in self.s_set:
            raise InvalidParameter(f"{self.base.name(s)} is not in S")
        base, torsion = self.base, self.torsion.bool
        for k, (r2, s2) in enumerate(self.class_table):
            if torsion[base.sub(base.mul(r, s2), base.mul(r2, s))]:
                return k
        raise InternalInconsistency("fraction matches no class")

    def to_json(self) -> dict:
        base = self.base
        return {
            "base": base.construction_tag,
            "S": self.s_set.names(),
            "kernel": self.torsion.names(),
            "kernel_generators": [base.name(g) for g in self.torsion.canonical_generators],
            "result_order": self.result.order,
            "canonical": self.canonical.to_json(),
        }


def localize_ring(ring: FiniteRing, s_set: MultiplicativeSet) -> LocalizedRing:
    _require_commutative(ring)
    if s_set.ring is not ring:
        raise InvalidParameter("multiplicative set belongs to another ring")
    if ring.zero in s_set or ring.one not in s_set:
        raise InvalidParameter("multiplicative set must contain 1 and avoid 0")
    add, mul, neg = ring.add_table, ring.mul_table, ring.neg
    S = np.array(s_set.members, dtype=np.int64)
    torsion_bool = np.any(mul[S] == ring.zero, axis=0)
    torsion = Ideal(ring, mask_from_bool(torsion_bool), Sidedness.TWO_SIDED)

    # pairs in lexicographic (r, s) order; pair k = (k // |S|, S[k % |S|])
    r_of = np.repeat(np.arange(ring.order), len(S))
    s_of = np.tile(S, ring.order)
    cross = add[mul[r_of[:, None], s_of[None, :]], neg[mul[r_of[None, :], s_of[:, None]]]]
    related = torsion_bool[cross]
    label = np.argmax(related, axis=1)
    if not np.array_equal(related, label[:, None] == label[None, :]):
        raise InternalInconsistency("fraction relation is not an equivalence")
    reps = np.unique(label)
    relabel = np.full(len(r_of), -1, dtype=np.int64)
    relabel[reps] = np.arange(len(reps))
    cls = relabel[label]
    pos_in_s = {int(s): k for k, s in enumerate(S)}
    rr, ss = r_of[reps], s_of[reps]

    def pair_index(r, s):
        return cls[r * len(S) + np.vectorize(pos_in_s.get, otypes=[np.int64])(s)]

    new_s = mul[ss[:, None], ss[None, :]]
    add_t = pair_index(add[mul[rr[:, None], ss[None, :]], mul[rr[None, :], ss[:, None]]], new_s)
    mul_t = pair_index(mul[rr[:, None], rr[None, :]], new_s)
    one_pos = pos_in_s[ring.one]
    names = [f"{ring.name(int(r))}/{ring.name(int(s))}" for r, s in zip(rr, ss)]
    result = build_ring_from_tables(
        add_t, mul_t,
        zero=int(cls[ring.zero * len(S) + one_pos]),
        one=int(cls[ring.one * len(S) + one_pos]),
        names=names,
        construction_tag=f"localization:{ring.construction_tag}",
    )
    canonical = RingHom(ring, result, tuple(int(cls[x * len(S) + one_pos]) for x in range(ring.order)), unital=True)
    loc = LocalizedRing(ring, s_set, result, canonical, tuple((int(r), int(s)) for r, s in zip(rr, ss)), torsion)
    _verify_localization(loc)
    return loc


def _verify_localization(loc: LocalizedRing) -> None:
    f, base, result = loc.canonical, loc.base, loc.result
    if not f.verify():
        raise InternalInconsistency("canonical map is not a unital ring homomorphism")
    for s in loc.s_set.members:
        if not result.unit_elements[f(s)]:
            raise InternalInconsistency(f"image of {base.name(s)} is not a unit")
    kernel = mask_from_indices(x for x in range(base.order) if f(x) == result.zero)
    if kernel != loc.torsion.mask:
        raise InternalInconsistency("kernel of the canonical map differs from the S-torsion ideal")


def localize_ideal(loc: LocalizedRing, ideal: Ideal) -> Ideal:
    """Ideal of the fraction ring generated by the images of ``ideal``."""
    if ideal.ring is not loc.base:
        raise InvalidParameter("ideal does not belong to the localized ring's base")
    images = sorted({loc.canonical(a) for a in ideal.indices})
    return generate_ideal(loc.result, images, Sidedness.TWO_SIDED)
