"""Left, right and two-sided ideals of a FiniteRing.

Membership sets are stored as Python integer bitmasks (bit ``x`` set iff
element ``x`` belongs), which makes intersection and containment single
integer operations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import config
from .errors import CapExceeded, InvalidParameter, MixedRing, MixedSidedness, NotCommutative, SidednessError
from .ring import FiniteRing


class Sidedness(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    TWO_SIDED = "two-sided"

    @classmethod
    def parse(cls, value: "str | Sidedness") -> "Sidedness":
        if isinstance(value, Sidedness):
            return value
        aliases = {"left": cls.LEFT, "right": cls.RIGHT, "two-sided": cls.TWO_SIDED, "two_sided": cls.TWO_SIDED, "both": cls.TWO_SIDED}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise InvalidParameter(f"unknown sidedness {value!r}") from None

    @property
    def acts_left(self) -> bool:
        return self is not Sidedness.RIGHT

    @property
    def acts_right(self) -> bool:
        return self is not Sidedness.LEFT


def mask_from_bool(arr: np.ndarray) -> int:
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


def bool_from_mask(mask: int, n: int) -> np.ndarray:
    raw = np.frombuffer(mask.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def mask_from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << int(i)
    return mask


@dataclass(frozen=True)
class Ideal:
    ring: FiniteRing = field(repr=False)
    mask: int
    sidedness: Sidedness
    generators: tuple[int, ...] = field(default=(), compare=False)

    @cached_property
    def bool(self) -> np.ndarray:
        return bool_from_mask(self.mask, self.ring.order)

    @cached_property
    def indices(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.bool))

    @property
    def members(self) -> frozenset[int]:
        return frozenset(self.indices)

    @property
    def size(self) -> int:
        return len(self.indices)

    def __len__(self) -> int:
        return self.size

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> int(x) & 1)

    @property
    def is_zero(self) -> bool:
        return self.mask == 1 << self.ring.zero

    @property
    def is_whole(self) -> bool:
        return self.size == self.ring.order

    def issubset(self, other: "Ideal") -> bool:
        return self.mask & ~other.mask == 0

    @cached_property
    def canonical_generators(self) -> tuple[int, ...]:
        """Greedy generating set: scan members in index order, keep those not yet generated."""
        gens: list[int] = []
        span = 1 << self.ring.zero
        for x in self.indices:
            if not span >> x & 1:
                gens.append(x)
                span = _closure_mask(self.ring, gens, self.sidedness)
            if span == self.mask:
                break
        return tuple(gens)

    def names(self) -> list[str]:
        return [self.ring.name(x) for x in self.indices]

    def label(self) -> str:
        gens = self.canonical_generators
        return "(" + ",".join(self.ring.name(g) for g in gens) + ")" if gens else "(0)"

    def to_json(self) -> dict:
        return {
            "generators": [self.ring.name(g) for g in self.canonical_generators],
            "members": self.names(),
            "sidedness": self.sidedness.value,
        }

    def __repr__(self) -> str:
        return f"Ideal({self.label()}, size={self.size}, {self.sidedness.value})"


def _close_bool(ring: FiniteRing, mem: np.ndarray, sidedness: Sidedness) -> np.ndarray:
    add, mul = ring.add_table, ring.mul_table
    mem = mem.copy()
    mem[ring.zero] = True
    while True:
        idx = np.flatnonzero(mem)
        new = mem.copy()
        new[add[idx[:, None], idx[None, :]].ravel()] = True
        if sidedness.acts_left:
            new[mul[:, idx].ravel()] = True
        if sidedness.acts_right:
            new[mul[idx, :].ravel()] = True
        if np.array_equal(new, mem):
            return mem
        mem = new


def _closure_mask(ring: FiniteRing, gens: Sequence[int], sidedness: Sidedness) -> int:
    seed = np.zeros(ring.order, dtype=bool)
    seed[list(gens)] = True
    return mask_from_bool(_close_bool(ring, seed, sidedness))


def _check_elements(ring: FiniteRing, elems: Iterable[int]) -> list[int]:
    out = [int(g) for g in elems]
    for g in out:
        if not 0 <= g < ring.order:
            raise InvalidParameter(f"element {g} is not in {ring.construction_tag}")
    return out


def generate_ideal(ring: FiniteRing, gens: Iterable[int], sidedness: "Sidedness | str" = Sidedness.TWO_SIDED) -> Ideal:
    """Smallest ideal of the given sidedness containing ``gens``."""
    sidedness = Sidedness.parse(sidedness)
    gens = _check_elements(ring, gens)
    return Ideal(ring, _closure_mask(ring, gens, sidedness), sidedness, tuple(gens))


def ideal_from_members(ring: FiniteRing, members: Iterable[int], sidedness: "Sidedness | str") -> Ideal:
    """Wrap an explicit member set, refusing sets that are not ideals of that sidedness."""
    sidedness = Sidedness.parse(sidedness)
    mask = mask_from_indices(_check_elements(ring, members))
    if _closure_mask(ring, [i for i in range(ring.order) if mask >> i & 1], sidedness) != mask:
        raise SidednessError(f"member set is not a {sidedness.value} ideal")
    return Ideal(ring, mask, sidedness)


def as_sidedness(ideal: Ideal, sidedness: "Sidedness | str") -> Ideal:
    """Relabel ``ideal`` with another sidedness after checking closure."""
    sidedness = Sidedness.parse(sidedness)
    if sidedness is ideal.sidedness:
        return ideal
    return ideal_from_members(ideal.ring, ideal.indices, sidedness)


def zero_ideal(ring: FiniteRing, sidedness: "Sidedness | str" = Sidedness.TWO_SIDED) -> Ideal:
    return Ideal(ring, 1 << ring.zero, Sidedness.parse(sidedness), ())


def whole_ring(ring: FiniteRing, sidedness: "Sidedness | str" = Sidedness.TWO_SIDED) -> Ideal:
    return Ideal(ring, (1 << ring.order) - 1, Sidedness.parse(sidedness), (ring.one,))


def _same_context(i: Ideal, j: Ideal) -> None:
    if i.ring is not j.ring:
        raise MixedRing("ideals belong to different rings")
    if i.sidedness is not j.sidedness:
        raise MixedSidedness(f"cannot combine a {i.sidedness.value} ideal with a {j.sidedness.value} ideal")


def ideal_sum(i: Ideal, j: Ideal) -> Ideal:
    _same_context(i, j)
    ring = i.ring
    a, b = np.array(i.indices), np.array(j.indices)
    mem = np.zeros(ring.order, dtype=bool)
    mem[ring.add_table[a[:, None], b[None, :]].ravel()] = True
    return Ideal(ring, mask_from_bool(mem), i.sidedness, i.generators + j.generators)


def ideal_intersection(i: Ideal, j: Ideal) -> Ideal:
    _same_context(i, j)
    return Ideal(i.ring, i.mask & j.mask, i.sidedness)


def ideal_product(i: Ideal, j: Ideal) -> Ideal:
    """Ideal generated by all products ``x*y`` with x in ``i`` and y in ``j``."""
    _same_context(i, j)
    ring = i.ring
    a, b = np.array(i.indices), np.array(j.indices)
    seed = np.zeros(ring.order, dtype=bool)
    seed[ring.mul_table[a[:, None], b[None, :]].ravel()] = True
    return Ideal(ring, mask_from_bool(_close_bool(ring, seed, i.sidedness)), i.sidedness)


def ideal_power(i: Ideal, n: int) -> Ideal:
    if n < 1:
        raise InvalidParameter(f"ideal power needs n >= 1, got {n}")
    out = i
    for _ in range(n - 1):
        out = ideal_product(out, i)
    return out


def _require_commutative(ring: FiniteRing, what: str) -> None:
    if not ring.commutative:
        raise NotCommutative(f"{what} is only defined here for commutative rings")


def ideal_quotient(i: Ideal, a: int) -> Ideal:
    """The colon ideal ``(i : a) = {r : r*a in i}``."""
    ring = i.ring
    _require_commutative(ring, "the ideal quotient")
    (a,) = _check_elements(ring, [a])
    mem = i.bool[ring.mul_table[:, a]]
    return Ideal(ring, mask_from_bool(mem), Sidedness.TWO_SIDED)


def radical_of_ideal(i: Ideal) -> Ideal:
    """``{x : x^k in i for some 1 <= k <= order}``."""
    ring = i.ring
    _require_commutative(ring, "the radical of an ideal")
    hit = np.zeros(ring.order, dtype=bool)
    cur = ring.elements.copy()
    for _ in range(ring.order):
        hit |= i.bool[cur]
        cur = ring.mul_table[cur, ring.elements]
    return Ideal(ring, mask_from_bool(hit), Sidedness.TWO_SIDED)


@dataclass(frozen=True, eq=False)
class IdealLattice:
    ring: FiniteRing
    sidedness: Sidedness
    ideals: tuple[Ideal, ...]

    def __len__(self) -> int:
        return len(self.ideals)

    def __iter__(self):
        return iter(self.ideals)

    def __getitem__(self, k: int) -> Ideal:
        return self.ideals[k]

    @cached_property
    def _by_mask(self) -> dict[int, int]:
        return {I.mask: k for k, I in enumerate(self.ideals)}

    def position(self, ideal: Ideal) -> int:
        return self._by_mask[ideal.mask]

    def find(self, mask: int) -> Ideal | None:
        k = self._by_mask.get(mask)
        return None if k is None else self.ideals[k]

    def __contains__(self, ideal: Ideal) -> bool:
        return ideal.mask in self._by_mask

    @property
    def zero(self) -> Ideal:
        return self.ideals[0]

    @property
    def whole(self) -> Ideal:
        return self.ideals[-1]

    def within(self, ideal: Ideal) -> list[Ideal]:
        return [I for I in self.ideals if I.mask & ~ideal.mask == 0]

    def to_json(self) -> list[dict]:
        return [I.to_json() for I in self.ideals]


def canonical_key(ideal: Ideal) -> tuple[int, tuple[int, ...]]:
    return ideal.size, ideal.indices


def enumerate_ideals(ring: FiniteRing, sidedness: "Sidedness | str" = Sidedness.TWO_SIDED) -> IdealLattice:
    """Every ideal of the given sidedness.

    Starts from the principal ideals and closes the family under pairwise
    sums; every ideal of a finite ring is a finite sum of principal ones.
    """
    return _enumerate_ideals(ring, Sidedness.parse(sidedness))


@lru_cache(maxsize=256)
def _enumerate_ideals(ring: FiniteRing, sidedness: Sidedness) -> IdealLattice:
    cap = config.max_order()
    if ring.order > cap:
        raise CapExceeded(f"ring order {ring.order} exceeds the order cap {cap}")
    found: dict[int, Ideal] = {}
    for x in range(ring.order):
        I = generate_ideal(ring, [x], sidedness)
        found.setdefault(I.mask, I)
    work = list(found.values())
    while work:
        I = work.pop()
        for J in list(found.values()):
            S = ideal_sum(I, J)
            if S.mask not in found:
                found[S.mask] = S
                work.append(S)
    ideals = sorted(found.values(), key=canonical_key)
    return IdealLattice(ring, sidedness, tuple(ideals))


def minimal_nonzero_ideals(lattice: IdealLattice) -> list[Ideal]:
    nonzero = [I for I in lattice if not I.is_zero]
    return [I for I in nonzero if not any(J.mask != I.mask and J.issubset(I) for J in nonzero)]


def maximal_proper_ideals(lattice: IdealLattice) -> list[Ideal]:
    proper = [I for I in lattice if not I.is_whole]
    return [I for I in proper if not any(J.mask != I.mask and I.issubset(J) for J in proper)]
