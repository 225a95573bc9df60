"""Finite unital rings stored as dense addition/multiplication tables.

Elements are the integers ``0..order-1``; every structural question is
answered by table lookups, so downstream code never needs to know how a
ring was constructed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import config
from .errors import AxiomViolation, CapExceeded, InvalidParameter, SidednessError

# Upper bound on the size of the (block, n, n) scratch arrays used by the
# axiom scan.
_SCAN_BLOCK_CELLS = 1 << 22


@dataclass(frozen=True, eq=False)
class FiniteRing:
    order: int
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    zero: int
    one: int
    element_names: tuple[str, ...] = field(repr=False)
    commutative: bool
    construction_tag: str

    def __repr__(self) -> str:
        return f"FiniteRing({self.construction_tag}, order={self.order})"

    @cached_property
    def neg(self) -> np.ndarray:
        out = np.argmax(self.add_table == self.zero, axis=1)
        out.flags.writeable = False
        return out

    @cached_property
    def elements(self) -> np.ndarray:
        return np.arange(self.order)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg[b]])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            raise InvalidParameter("negative exponent")
        result = self.one
        for _ in range(k):
            result = int(self.mul_table[result, x])
        return result

    def name(self, x: int) -> str:
        return self.element_names[x]

    def index(self, name: str) -> int:
        try:
            return self._name_index[name]
        except KeyError:
            raise InvalidParameter(f"no element named {name!r} in {self.construction_tag}") from None

    @cached_property
    def _name_index(self) -> dict[str, int]:
        return {n: i for i, n in enumerate(self.element_names)}

    @cached_property
    def nilpotent_elements(self) -> np.ndarray:
        """Boolean vector: ``x`` has some power equal to zero.

        Powers x^1..x^order are enough since the power sequence of any element
        must repeat within ``order`` steps.
        """
        n = self.order
        hit = np.zeros(n, dtype=bool)
        cur = self.elements.copy()
        for _ in range(n):
            hit |= cur == self.zero
            cur = self.mul_table[cur, self.elements]
        hit.flags.writeable = False
        return hit

    @cached_property
    def unit_elements(self) -> np.ndarray:
        is_one = self.mul_table == self.one
        out = np.any(is_one & is_one.T, axis=1)
        out.flags.writeable = False
        return out

    @cached_property
    def idempotent_elements(self) -> np.ndarray:
        out = self.mul_table[self.elements, self.elements] == self.elements
        out.flags.writeable = False
        return out

    def additive_order(self, x: int) -> int:
        k, cur = 1, x
        while cur != self.zero:
            cur = int(self.add_table[cur, x])
            k += 1
        return k


def _check_order(order: int) -> None:
    cap = config.max_order()
    if order > cap:
        raise CapExceeded(f"ring order {order} exceeds the order cap {cap}")


def _first_mismatch(lhs: np.ndarray, rhs: np.ndarray, offset: int) -> tuple[int, ...] | None:
    bad = np.argwhere(lhs != rhs)
    if bad.size == 0:
        return None
    first = bad[0]
    return (int(first[0]) + offset, *(int(v) for v in first[1:]))


def _scan_triples(n: int, compute):
    """Run ``compute(a_block)`` over blocks of the first index; return first failing triple."""
    step = max(1, _SCAN_BLOCK_CELLS // max(1, n * n))
    for start in range(0, n, step):
        a = np.arange(start, min(n, start + step))
        lhs, rhs = compute(a)
        hit = _first_mismatch(lhs, rhs, start)
        if hit is not None:
            return hit
    return None


def validate_tables(add: np.ndarray, mul: np.ndarray, zero: int, one: int) -> None:
    """Exhaustively check the unital ring axioms, raising on the first failure."""
    n = add.shape[0]
    idx = np.arange(n)
    if not (0 <= zero < n and 0 <= one < n):
        raise AxiomViolation("identity-in-range", (zero, one))
    if n > 1 and zero == one:
        raise AxiomViolation("one-neq-zero", (zero, one))

    bad = np.flatnonzero(add[zero] != idx)
    if bad.size:
        raise AxiomViolation("additive-identity", (int(bad[0]),))
    hit = _first_mismatch(add, add.T, 0)
    if hit is not None:
        raise AxiomViolation("additive-commutativity", hit)
    bad = np.flatnonzero(~np.any(add == zero, axis=1))
    if bad.size:
        raise AxiomViolation("additive-inverse", (int(bad[0]),))
    for axiom, compute in (
        ("additive-associativity", lambda a: (add[add[a][:, :, None], idx[None, None, :]], add[a[:, None, None], add[None, :, :]])),
        ("multiplicative-associativity", lambda a: (mul[mul[a][:, :, None], idx[None, None, :]], mul[a[:, None, None], mul[None, :, :]])),
        ("left-distributivity", lambda a: (mul[a[:, None, None], add[None, :, :]], add[mul[a][:, :, None], mul[a][:, None, :]])),
        ("right-distributivity", lambda a: (mul[add[a][:, :, None], idx[None, None, :]], add[mul[a][:, None, :], mul[None, :, :]])),
    ):
        hit = _scan_triples(n, compute)
        if hit is not None:
            raise AxiomViolation(axiom, hit)
    bad = np.flatnonzero((mul[one] != idx) | (mul[:, one] != idx))
    if bad.size:
        raise AxiomViolation("multiplicative-identity", (int(bad[0]),))


def build_ring_from_tables(
    add_table: Sequence[Sequence[int]] | np.ndarray,
    mul_table: Sequence[Sequence[int]] | np.ndarray,
    zero: int,
    one: int,
    names: Sequence[str] | None = None,
    construction_tag: str = "tables",
) -> FiniteRing:
    add = np.array(add_table, dtype=np.int64)
    mul = np.array(mul_table, dtype=np.int64)
    if add.ndim != 2 or add.shape[0] != add.shape[1] or add.shape[0] == 0:
        raise InvalidParameter("addition table must be a non-empty square table")
    if mul.shape != add.shape:
        raise InvalidParameter("multiplication table must match the addition table's shape")
    n = add.shape[0]
    _check_order(n)
    if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
        raise InvalidParameter("table entries out of range")
    if names is None:
        names = [str(i) for i in range(n)]
    names = tuple(str(s) for s in names)
    if len(names) != n or len(set(names)) != n:
        raise InvalidParameter("element names must be distinct and one per element")
    validate_tables(add, mul, int(zero), int(one))
    add.flags.writeable = False
    mul.flags.writeable = False
    return FiniteRing(
        order=n,
        add_table=add,
        mul_table=mul,
        zero=int(zero),
        one=int(one),
        element_names=names,
        commutative=bool(np.array_equal(mul, mul.T)),
        construction_tag=construction_tag,
    )


def make_cyclic_ring(n: int) -> FiniteRing:
    """The integers modulo ``n``."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidParameter(f"cyclic ring needs n >= 1, got {n!r}")
    n = int(n)
    _check_order(n)
    i = np.arange(n)
    return build_ring_from_tables(
        (i[:, None] + i[None, :]) % n,
        (i[:, None] * i[None, :]) % n,
        zero=0,
        one=1 % n,
        names=[str(k) for k in range(n)],
        construction_tag=f"cyclic:{n}",
    )


def ut3_index(m: int, a: int, b: int, c: int, d: int) -> int:
    """Index of the matrix a*1 + b*E12 + c*E13 + d*E23 in ``make_ut3_ring(m)``."""
    return (a % m) + m * (c % m) + m * m * (b % m) + m ** 3 * (d % m)


def ut3_coords(m: int, x: int) -> tuple[int, int, int, int]:
    """Inverse of :func:`ut3_index`: returns ``(a, b, c, d)``."""
    a, rest = x % m, x // m
    c, rest = rest % m, rest // m
    b, d = rest % m, rest // m
    return a, b, c, d


def _ut3_name(a: int, b: int, c: int, d: int) -> str:
    terms = [str(a)] if a else []
    for coef, unit in ((b, "E12"), (c, "E13"), (d, "E23")):
        if coef:
            terms.append(unit if coef == 1 else f"{coef}{unit}")
    return "+".join(terms) or "0"


def make_ut3_ring(m: int) -> FiniteRing:
    """Upper-triangular 3x3 matrices over Z/m with a constant diagonal.

    The element ``a*1 + b*E12 + c*E13 + d*E23`` multiplies as
    (a,b,c,d)(a',b',c',d') = (aa', ab'+ba', ac'+bd'+ca', ad'+da').
    Indices put E13 before E12 so the socle line sorts first.
    """
    if not isinstance(m, (int, np.integer)) or m < 2:
        raise InvalidParameter(f"ut3 needs coefficient modulus m >= 2, got {m!r}")
    m = int(m)
    n = m ** 4
    _check_order(n)
    coords = np.array([ut3_coords(m, x) for x in range(n)])
    a, b, c, d = (coords[:, k] for k in range(4))

    def encode(a_, b_, c_, d_):
        return (a_ % m) + m * (c_ % m) + m * m * (b_ % m) + m ** 3 * (d_ % m)

    add = encode(a[:, None] + a[None, :], b[:, None] + b[None, :], c[:, None] + c[None, :], d[:, None] + d[None, :])
    mul = encode(
        a[:, None] * a[None, :],
        a[:, None] * b[None, :] + b[:, None] * a[None, :],
        a[:, None] * c[None, :] + b[:, None] * d[None, :] + c[:, None] * a[None, :],
        a[:, None] * d[None, :] + d[:, None] * a[None, :],
    )
    names = [_ut3_name(*map(int, coords[x])) for x in range(n)]
    return build_ring_from_tables(add, mul, zero=0, one=encode(1, 0, 0, 0), names=names, construction_tag=f"ut3:{m}")


def make_product_ring(factors: Sequence[FiniteRing]) -> FiniteRing:
    factors = list(factors)
    if len(factors) < 2:
        raise InvalidParameter("a product ring needs at least two factors")
    orders = tuple(f.order for f in factors)
    n = int(np.prod(orders))
    _check_order(n)
    coords = np.array(np.unravel_index(np.arange(n), orders)).T
    add_parts, mul_parts = [], []
    for k, f in enumerate(factors):
        col = coords[:, k]
        add_parts.append(f.add_table[col[:, None], col[None, :]])
        mul_parts.append(f.mul_table[col[:, None], col[None, :]])
    add = np.ravel_multi_index(tuple(add_parts), orders)
    mul = np.ravel_multi_index(tuple(mul_parts), orders)
    zero = int(np.ravel_multi_index(tuple(f.zero for f in factors), orders))
    one = int(np.ravel_multi_index(tuple(f.one for f in factors), orders))
    names = ["(" + ",".join(factors[k].name(int(coords[x, k])) for k in range(len(factors))) + ")" for x in range(n)]
    tag = "product:" + "+".join(f.construction_tag for f in factors)
    return build_ring_from_tables(add, mul, zero=zero, one=one, names=names, construction_tag=tag)


@dataclass(frozen=True, eq=False)
class RingHom:
    source: FiniteRing
    target: FiniteRing
    map: tuple[int, ...]
    unital: bool

    def __call__(self, x: int) -> int:
        return self.map[x]

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.map, dtype=np.int64)

    def verify(self) -> bool:
        """Exhaustive additivity/multiplicativity check over all pairs."""
        f, s, t = self.array, self.source, self.target
        if len(f) != s.order or f.min(initial=0) < 0 or f.max(initial=0) >= t.order:
            return False
        if not np.array_equal(f[s.add_table], t.add_table[f[:, None], f[None, :]]):
            return False
        if not np.array_equal(f[s.mul_table], t.mul_table[f[:, None], f[None, :]]):
            return False
        return not self.unital or f[s.one] == t.one

    def compose(self, inner: "RingHom") -> "RingHom":
        """``self`` after ``inner``."""
        return RingHom(inner.source, self.target, tuple(int(self.map[x]) for x in inner.map), self.unital and inner.unital)

    def to_json(self) -> dict:
        return {self.source.name(x): self.target.name(y) for x, y in enumerate(self.map)}


def make_quotient_ring(ring: FiniteRing, ideal) -> tuple[FiniteRing, RingHom]:
    """Coset ring ``ring / ideal`` and its canonical surjection.

    Cosets are labelled by their least element index, then renumbered in
    that order; names are ``[rep]``.
    """
    from .ideals import Sidedness

    if ideal.ring is not ring:
        raise InvalidParameter("ideal belongs to a different ring")
    if ideal.sidedness is not Sidedness.TWO_SIDED:
        raise SidednessError("quotients need a two-sided ideal")
    members = np.array(ideal.indices, dtype=np.int64)
    rep_of = ring.add_table[:, members].min(axis=1)
    reps = np.unique(rep_of)
    relabel = np.full(ring.order, -1, dtype=np.int64)
    relabel[reps] = np.arange(len(reps))
    label = relabel[rep_of]
    add = label[ring.add_table[reps[:, None], reps[None, :]]]
    mul = label[ring.mul_table[reps[:, None], reps[None, :]]]
    names = [f"[{ring.name(int(r))}]" for r in reps]
    quotient = build_ring_from_tables(
        add, mul, zero=int(label[ring.zero]), one=int(label[ring.one]), names=names,
        construction_tag=f"quotient:{ring.construction_tag}",
    )
    return quotient, RingHom(ring, quotient, tuple(int(v) for v in label), unital=True)
