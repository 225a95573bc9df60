"""Nilpotency, essentiality, nil-essentiality and the classical radicals.

Zero ring convention: in the order-1 ring the only ideal is both 0 and R;
it is nilpotent, essential and nil-essential, and the element criterion
accepts it (its non-zero hypothesis is vacuous there).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any

import numpy as np

from .errors import InternalInconsistency, InvalidParameter, NotCommutative, ZeroIdealNotCovered
from .ideals import (
    Ideal,
    IdealLattice,
    Sidedness,
    enumerate_ideals,
    ideal_from_members,
    ideal_product,
    ideal_sum,
    mask_from_bool,
    maximal_proper_ideals,
    minimal_nonzero_ideals,
    zero_ideal,
)
from .ring import FiniteRing


@dataclass(frozen=True)
class NilpotencyResult:
    nilpotent: bool
    index: int | None
    stable_power: Ideal | None

    def __bool__(self) -> bool:
        return self.nilpotent


@dataclass(frozen=True)
class Verdict:
    """A boolean answer plus the canonically-first counterexample, if any."""

    holds: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.holds


@lru_cache(maxsize=65536)
def is_nilpotent_ideal(ideal: Ideal) -> NilpotencyResult:
    power, k = ideal, 1
    while True:
        if power.is_zero:
            return NilpotencyResult(True, k, None)
        nxt = ideal_product(power, ideal)
        if nxt.mask == power.mask:
            return NilpotencyResult(False, None, power)
        power, k = nxt, k + 1


@lru_cache(maxsize=1024)
def _nilpotent_flags(lattice: IdealLattice) -> tuple[bool, ...]:
    return tuple(is_nilpotent_ideal(I).nilpotent for I in lattice)


def _within_mask(ideal: Ideal, within: Ideal | None) -> int:
    if within is None:
        return (1 << ideal.ring.order) - 1
    if within.ring is not ideal.ring:
        raise InvalidParameter("ideal and ambient ideal belong to different rings")
    if ideal.mask & ~within.mask:
        raise InvalidParameter("ideal is not contained in the ambient ideal")
    return within.mask


@lru_cache(maxsize=65536)
def _scan(ideal: Ideal, within_mask: int, nil: bool) -> Verdict:
    lattice = enumerate_ideals(ideal.ring, ideal.sidedness)
    zero_bit = 1 << ideal.ring.zero
    flags = _nilpotent_flags(lattice)
    for mu, nilpotent in zip(lattice, flags):
        if mu.mask & ~within_mask or ideal.mask & mu.mask != zero_bit:
            continue
        if nilpotent if nil else mu.is_zero:
            continue
        return Verdict(False, mu)
    return Verdict(True)


def is_essential(ideal: Ideal, within: Ideal | None = None) -> Verdict:
    """Every non-zero ideal inside ``within`` meets ``ideal`` non-trivially."""
    return _scan(ideal, _within_mask(ideal, within), False)


def is_nil_essential(ideal: Ideal, within: Ideal | None = None) -> Verdict:
    """Every ideal inside ``within`` meeting ``ideal`` trivially is nilpotent.

    ``mu`` ranges over ideals of the whole ring (same sidedness as ``ideal``)
    contained in ``within``, not over submodules of ``within``.
    """
    return _scan(ideal, _within_mask(ideal, within), True)


def nil_essential_by_element_criterion(ideal: Ideal, within: Ideal | None = None) -> Verdict:
    """Element test: each non-nilpotent x in ``within`` has some r with r*x in ``ideal``, r*x != 0.

    The witness on failure is the first offending element index.
    """
    ring = ideal.ring
    if not ring.commutative:
        raise NotCommutative("the element criterion assumes a commutative ring")
    within_mask = _within_mask(ideal, within)
    if ring.order == 1:
        return Verdict(True)
    if ideal.is_zero:
        raise ZeroIdealNotCovered("the element criterion is stated for non-zero ideals")
    mul, members, nil = ring.mul_table, ideal.bool, ring.nilpotent_elements
    for x in range(ring.order):
        if not within_mask >> x & 1 or nil[x]:
            continue
        products = mul[:, x]
        if not np.any(members[products] & (products != ring.zero)):
            return Verdict(False, x)
    return Verdict(True)


def _sum_all(ring: FiniteRing, ideals: list[Ideal], sidedness: Sidedness) -> Ideal:
    total = zero_ideal(ring, sidedness)
    for I in ideals:
        total = ideal_sum(total, I)
    return total


def socle(ring: FiniteRing, sidedness: "Sidedness | str" = Sidedness.LEFT) -> Ideal:
    """Sum of minimal non-zero ideals, cross-checked against the meet of essential ideals."""
    lattice = enumerate_ideals(ring, sidedness)
    sidedness = lattice.sidedness
    by_sum = _sum_all(ring, minimal_nonzero_ideals(lattice), sidedness)
    meet = (1 << ring.order) - 1
    for I in lattice:
        if is_essential(I):
            meet &= I.mask
    if meet != by_sum.mask:
        raise InternalInconsistency(f"socle by sum {by_sum!r} differs from the meet of essential ideals")
    return by_sum


def jacobson_radical(ring: FiniteRing) -> Ideal:
    """Intersection of the maximal left ideals.

    Cross-checked against quasi-regularity: x is in the radical iff 1 - r*x
    is a unit for every r.
    """
    lattice = enumerate_ideals(ring, Sidedness.LEFT)
    meet = (1 << ring.order) - 1
    for M in maximal_proper_ideals(lattice):
        meet &= M.mask
    units = ring.unit_elements
    one_minus = ring.add_table[ring.one, ring.neg[ring.mul_table]]
    quasi = units[one_minus].all(axis=0)
    if mask_from_bool(quasi) != meet:
        raise InternalInconsistency("maximal-ideal and quasi-regular Jacobson radicals disagree")
    return Ideal(ring, meet, Sidedness.TWO_SIDED)


def nilradical(ring: FiniteRing) -> Ideal:
    if not ring.commutative:
        raise NotCommutative("the nilradical is computed for commutative rings only")
    return ideal_from_members(ring, np.flatnonzero(ring.nilpotent_elements), Sidedness.TWO_SIDED)


def is_reduced(ring: FiniteRing) -> bool:
    nil = ring.nilpotent_elements
    return int(nil.sum()) == 1


def is_semisimple(ring: FiniteRing) -> bool:
    return jacobson_radical(ring).is_zero


@dataclass(frozen=True)
class ClassificationFlags:
    nilpotent: bool
    essential: bool
    nil_essential: bool
    minimal: bool
    maximal: bool
    nilpotency_index: int | None

    def __post_init__(self):
        if self.essential and not self.nil_essential:
            raise InternalInconsistency("an essential ideal must be nil-essential")

    def to_json(self) -> dict:
        return {
            "nilpotent": self.nilpotent,
            "essential": self.essential,
            "nil_essential": self.nil_essential,
            "minimal": self.minimal,
            "maximal": self.maximal,
            "nilpotency_index": self.nilpotency_index,
        }


def classify_lattice(lattice: IdealLattice) -> list[ClassificationFlags]:
    minimal = {I.mask for I in minimal_nonzero_ideals(lattice)}
    maximal = {I.mask for I in maximal_proper_ideals(lattice)}
    out = []
    for I in lattice:
        nil = is_nilpotent_ideal(I)
        out.append(
            ClassificationFlags(
                nilpotent=nil.nilpotent,
                essential=is_essential(I).holds,
                nil_essential=is_nil_essential(I).holds,
                minimal=I.mask in minimal,
                maximal=I.mask in maximal,
                nilpotency_index=nil.index,
            )
        )
    return out

