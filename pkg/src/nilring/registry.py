"""Executable checks for every statement about nil-essential ideals, plus hunts.

Each check instantiates its statement's quantifiers exhaustively over one
finite ring. Theorem checks end ``verified`` or ``refuted``; existence
checks (ids starting with ``X``) look for a counterexample to a claim that
is known to fail and end ``confirmed`` or ``exhausted``. Checks whose
hypotheses the ring does not meet end ``skipped`` with the reason.

Sidedness: commutative rings use two-sided ideals, noncommutative rings use
left ideals. Finite rings are noetherian, so that hypothesis is discharged
automatically and noted in the report.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable

from . import config
from .errors import BudgetExhausted, CapExceeded, NilringError
from .homs import all_kernels, enumerate_ring_endomorphisms, image, inclusion, is_nil_essential_mono, iter_module_homs, mono_characterization, preimage_ideal
from .ideals import (
    Ideal,
    IdealLattice,
    Sidedness,
    as_sidedness,
    enumerate_ideals,
    ideal_product,
    ideal_quotient,
    ideal_sum,
    maximal_proper_ideals,
    radical_of_ideal,
)
from .localization import enumerate_multiplicative_sets, localize_ideal, multiplicative_closure, localize_ring, non_zero_divisors
from .predicates import is_essential, is_nil_essential, is_nilpotent_ideal, is_semisimple, jacobson_radical, nil_essential_by_element_criterion, nilradical
from .reports import CheckReport, Fact, HuntResult
from .ring import FiniteRing, ut3_coords
from .specs import RingSpec, build_ring, parse_spec

NOETHERIAN_NOTE = "finite ring: the noetherian hypothesis holds automatically"


class Tally:
    """Counts evaluated instances; raises BudgetExhausted past ``budget``."""

    def __init__(self, budget: int | None = None):
        self.budget = budget
        self.count = 0

    def tick(self, n: int = 1) -> None:
        self.count += n
        if self.budget is not None and self.count > self.budget:
            self.count = self.budget
            raise BudgetExhausted(f"instance budget {self.budget} spent")


@dataclass
class Witness:
    ideals: dict[str, Ideal]
    facts: list[Fact]
    data: dict = field(default_factory=dict)


class Skip(Exception):
    pass


class Context:
    """Per-ring caches shared by all checks on that ring."""

    def __init__(self, ring: FiniteRing):
        self.ring = ring
        self.sidedness = Sidedness.TWO_SIDED if ring.commutative else Sidedness.LEFT
        self.stats: dict = {}
        self.notes: list[str] = []

    @cached_property
    def lattice(self) -> IdealLattice:
        return enumerate_ideals(self.ring, self.sidedness)

    @cached_property
    def two_sided(self) -> IdealLattice:
        return enumerate_ideals(self.ring, Sidedness.TWO_SIDED)

    def ne(self, ideal: Ideal, within: Ideal | None = None) -> bool:
        return is_nil_essential(ideal, within).holds

    def nilpotent(self, ideal: Ideal) -> bool:
        return is_nilpotent_ideal(ideal).nilpotent

    def meet(self, a: Ideal, b: Ideal) -> Ideal:
        return self.lattice.find(a.mask & b.mask)

    def trivial(self, a: Ideal, b: Ideal) -> bool:
        return a.mask & b.mask == 1 << self.ring.zero

    @cached_property
    def maximal(self) -> list[Ideal]:
        return maximal_proper_ideals(self.lattice)

    @cached_property
    def jacobson(self) -> Ideal:
        return as_sidedness(jacobson_radical(self.ring), self.sidedness)

    def tuples(self, n: int) -> Iterable[tuple[Ideal, ...]]:
        if self.ring.commutative:
            return itertools.combinations_with_replacement(self.lattice.ideals, n)
        return itertools.product(self.lattice.ideals, repeat=n)

    def chains(self) -> Iterable[tuple[Ideal, Ideal]]:
        for J in self.lattice:
            for I in self.lattice.within(J):
                yield I, J

    @cached_property
    def multiplicative_sets(self):
        return enumerate_multiplicative_sets(self.ring)

    @cached_property
    def regular_sets(self):
        return enumerate_multiplicative_sets(self.ring, within=non_zero_divisors(self.ring))

    _localizations: dict

    def localization(self, S):
        cache = self.__dict__.setdefault("_localizations", {})
        if S.mask not in cache:
            cache[S.mask] = localize_ring(self.ring, S)
        return cache[S.mask]

    @cached_property
    def endomorphisms(self):
        return enumerate_ring_endomorphisms(self.ring, unital=True)

    def kernels(self, ambient: Ideal):
        cache = self.__dict__.setdefault("_kernels", {})
        if ambient.mask not in cache:
            cache[ambient.mask] = all_kernels(ambient)
        return cache[ambient.mask]


def _facts(*items) -> list[Fact]:
    return [Fact(p, tuple(a), e) for p, a, e in items]


# --- individual checks -------------------------------------------------------
# Each returns a Witness when an instance violates (theorem) or exhibits
# (existence) the statement, and None otherwise.


def check_p201(ctx: Context, tally: Tally):
    for I, J in ctx.chains():
        if not ctx.ne(I):
            continue
        tally.tick()
        if not ctx.ne(J):
            return Witness({"I": I, "J": J}, _facts(("nil_essential", ["I"], True), ("subset", ["I", "J"], True), ("nil_essential", ["J"], False)))
    return None


def _meet_all(ctx: Context, ideals) -> Ideal:
    mask = (1 << ctx.ring.order) - 1
    for I in ideals:
        mask &= I.mask
    return ctx.lattice.find(mask)


def check_c202(ctx: Context, tally: Tally):
    for n in (2, 3):
        for combo in ctx.tuples(n):
            tally.tick()
            X = _meet_all(ctx, combo)
            if not ctx.ne(X):
                continue
            for j, I in enumerate(combo):
                if not ctx.ne(I):
                    names = {f"I{k + 1}": c for k, c in enumerate(combo)}
                    facts = _facts(("nil_essential", ["X"], True), ("subset", ["X", f"I{j + 1}"], True), ("nil_essential", [f"I{j + 1}"], False))
                    return Witness({**names, "X": X}, facts)
    return None


def check_x202(ctx: Context, tally: Tally):
    L = ctx.lattice
    for a in range(len(L)):
        for b in range(a + 1, len(L)):
            I, J = L[a], L[b]
            tally.tick()
            X = ctx.meet(I, J)
            if ctx.ne(I) and ctx.ne(J) and not ctx.ne(X):
                return Witness(
                    {"I": I, "J": J, "X": X},
                    _facts(
                        ("nil_essential", ["I"], True),
                        ("nil_essential", ["J"], True),
                        ("intersection_equals", ["I", "J", "X"], True),
                        ("nil_essential", ["X"], False),
                    ),
                )
    return None


def check_c203(ctx: Context, tally: Tally):
    for n in (2, 3):
        for combo in ctx.tuples(n):
            if not any(ctx.ne(I) for I in combo):
                continue
            tally.tick()
            total = combo[0]
            for I in combo[1:]:
                total = ideal_sum(total, I)
            if not ctx.ne(total):
                k = next(i for i, I in enumerate(combo) if ctx.ne(I))
                names = {f"I{i + 1}": c for i, c in enumerate(combo)}
                return Witness({**names, "S": total}, _facts(("nil_essential", [f"I{k + 1}"], True), ("subset", [f"I{k + 1}", "S"], True), ("nil_essential", ["S"], False)))
    return None


def check_c204(ctx: Context, tally: Tally):
    for n in (2, 3):
        for combo in ctx.tuples(n):
            tally.tick()
            prod = combo[0]
            for I in combo[1:]:
                prod = ideal_product(prod, I)
            if not ctx.ne(prod):
                continue
            for j, I in enumerate(combo):
                if not ctx.ne(I):
                    names = {f"I{i + 1}": c for i, c in enumerate(combo)}
                    facts = [Fact("nil_essential", ("P",), True), Fact("nil_essential", (f"I{j + 1}",), False)]
                    if n == 2:
                        facts.insert(0, Fact("product_equals", ("I1", "I2", "P"), True))
                    return Witness({**names, "P": prod}, facts)
    return None


def _powers(ideal: Ideal) -> list[Ideal]:
    """I, I^2, ... up to the first repeat."""
    out = [ideal]
    while True:
        nxt = ideal_product(out[-1], ideal)
        if nxt.mask == out[-1].mask:
            return out
        out.append(nxt)


def check_c205(ctx: Context, tally: Tally):
    for I in ctx.lattice:
        for n, P in enumerate(_powers(I), start=1):
            tally.tick()
            if ctx.ne(P) and not ctx.ne(I):
                return Witness({"I": I, "P": P}, _facts(("power_equals", ["I", n, "P"], True), ("nil_essential", ["P"], True), ("nil_essential", ["I"], False)), {"n": n})
    return None


def check_x205(ctx: Context, tally: Tally):
    for I in ctx.lattice:
        if not ctx.ne(I):
            continue
        for n, P in enumerate(_powers(I)[1:], start=2):
            tally.tick()
            if not ctx.ne(P):
                return Witness({"I": I, "P": P}, _facts(("nil_essential", ["I"], True), ("power_equals", ["I", n, "P"], True), ("nil_essential", ["P"], False)), {"n": n})
    return None


def check_p206(ctx: Context, tally: Tally):
    L = ctx.lattice
    for K in L:
        inside = L.within(K)
        for J in inside:
            for I in L.within(J):
                tally.tick()
                if ctx.ne(I, K) and not (ctx.ne(I, J) and ctx.ne(J, K)):
                    return Witness(
                        {"I": I, "J": J, "K": K},
                        _facts(("nil_essential", ["I", "K"], True), ("nil_essential", ["I", "J"], ctx.ne(I, J)), ("nil_essential", ["J", "K"], ctx.ne(J, K))),
                    )
        for I, M in itertools.combinations_with_replacement(inside, 2):
            tally.tick()
            X = ctx.meet(I, M)
            if ctx.ne(X, K) and not (ctx.ne(I, K) and ctx.ne(M, K)):
                return Witness(
                    {"I": I, "L": M, "K": K, "X": X},
                    _facts(
                        ("intersection_equals", ["I", "L", "X"], True),
                        ("nil_essential", ["X", "K"], True),
                        ("nil_essential", ["I", "K"], ctx.ne(I, K)),
                        ("nil_essential", ["L", "K"], ctx.ne(M, K)),
                    ),
                )
    return None


def check_p206_converse(ctx: Context, tally: Tally):
    """Converse probe: transitivity and closure under intersection."""
    L = ctx.lattice
    for K in L:
        inside = L.within(K)
        for J in inside:
            for I in L.within(J):
                tally.tick()
                if ctx.ne(I, J) and ctx.ne(J, K) and not ctx.ne(I, K):
                    return Witness({"I": I, "J": J, "K": K}, _facts(("nil_essential", ["I", "J"], True), ("nil_essential", ["J", "K"], True), ("nil_essential", ["I", "K"], False)))
        for I, M in itertools.combinations(inside, 2):
            tally.tick()
            X = ctx.meet(I, M)
            if ctx.ne(I, K) and ctx.ne(M, K) and not ctx.ne(X, K):
                return Witness(
                    {"I": I, "L": M, "K": K, "X": X},
                    _facts(("nil_essential", ["I", "K"], True), ("nil_essential", ["L", "K"], True), ("intersection_equals", ["I", "L", "X"], True), ("nil_essential", ["X", "K"], False)),
                )
    return None


def check_p207(ctx: Context, tally: Tally):
    for M in ctx.maximal:
        for mu in ctx.lattice:
            tally.tick()
            if ctx.trivial(mu, M) and not mu.is_zero and ctx.nilpotent(mu):
                return Witness({"M": M, "mu": mu}, _facts(("maximal", ["M"], True), ("meets_trivially", ["mu", "M"], True), ("is_zero", ["mu"], False), ("nilpotent", ["mu"], True)))
    return None


def check_c208(ctx: Context, tally: Tally):
    for M in ctx.maximal:
        if not ctx.ne(M):
            continue
        for mu in ctx.lattice:
            tally.tick()
            if not mu.is_zero and ctx.trivial(mu, M):
                return Witness({"M": M, "mu": mu}, _facts(("maximal", ["M"], True), ("nil_essential", ["M"], True), ("is_zero", ["mu"], False), ("meets_trivially", ["mu", "M"], True)))
    return None


def check_c209(ctx: Context, tally: Tally):
    proper = [I for I in ctx.lattice if not I.is_whole]
    tally.tick(len(proper) + len(ctx.maximal) + 1)
    proper_ne = [I for I in proper if ctx.ne(I)]
    maximal_ne = [M for M in ctx.maximal if ctx.ne(M)]
    c1, c2, c3 = not proper_ne, not maximal_ne, is_semisimple(ctx.ring)
    ctx.stats.update({"no_proper_nil_essential": c1, "no_maximal_nil_essential": c2, "semisimple": c3})
    if c1 == c2 == c3:
        return None
    ideals = {"Jac": as_sidedness(jacobson_radical(ctx.ring), ctx.sidedness)}
    facts = [Fact("semisimple", (), c3), Fact("jacobson_equals", ("Jac",), True)]
    if proper_ne:
        ideals["P"] = proper_ne[0]
        facts.append(Fact("nil_essential", ("P",), True))
    if maximal_ne:
        ideals["M"] = maximal_ne[0]
        facts += [Fact("maximal", ("M",), True), Fact("nil_essential", ("M",), True)]
    for k, I in enumerate(proper if not proper_ne else []):
        ideals[f"Q{k}"] = I
        facts.append(Fact("nil_essential", (f"Q{k}",), False))
    return Witness(ideals, facts)


def check_c210(ctx: Context, tally: Tally):
    J = ctx.jacobson
    for mu in ctx.lattice:
        tally.tick()
        if ctx.trivial(mu, J) and not mu.is_zero and ctx.nilpotent(mu):
            return Witness({"Jac": J, "mu": mu}, _facts(("jacobson_equals", ["Jac"], True), ("meets_trivially", ["mu", "Jac"], True), ("is_zero", ["mu"], False), ("nilpotent", ["mu"], True)))
    return None


def check_r211a(ctx: Context, tally: Tally):
    if ctx.ring.order == 1:
        raise Skip("zero ring: its only ideal is both 0 and R")
    J = ctx.jacobson
    if ctx.ne(J):
        for mu in ctx.lattice:
            tally.tick()
            if not mu.is_zero and ctx.trivial(mu, J):
                return Witness({"Jac": J, "mu": mu}, _facts(("jacobson_equals", ["Jac"], True), ("nil_essential", ["Jac"], True), ("is_zero", ["mu"], False), ("meets_trivially", ["mu", "Jac"], True)))
    if not is_semisimple(ctx.ring):
        return None
    tally.tick()
    if ctx.ne(J):
        return Witness({"Jac": J}, _facts(("semisimple", [], True), ("jacobson_equals", ["Jac"], True), ("nil_essential", ["Jac"], True)))
    if ctx.ring.commutative:
        N = nilradical(ctx.ring)
        tally.tick()
        if ctx.ne(N):
            return Witness({"N": N}, _facts(("semisimple", [], True), ("nil_essential", ["N"], True)))
    for M in ctx.maximal:
        tally.tick()
        if ctx.ne(M):
            # maximal ideals are the prime ideals of a finite commutative ring
            return Witness({"M": M}, _facts(("semisimple", [], True), ("maximal", ["M"], True), ("nil_essential", ["M"], True)))
    return None


def check_l212(ctx: Context, tally: Tally):
    for I in ctx.lattice:
        if I.is_zero:
            continue
        tally.tick()
        a, b = ctx.ne(I), nil_essential_by_element_criterion(I).holds
        if a != b:
            return Witness({"I": I}, _facts(("nil_essential", ["I"], a), ("nil_essential_by_elements", ["I"], b)))
    return None


def check_l213(ctx: Context, tally: Tally):
    for I, J in ctx.chains():
        if I.is_zero:
            continue
        tally.tick()
        a, b = ctx.ne(I, J), nil_essential_by_element_criterion(I, J).holds
        if a != b:
            return Witness({"I": I, "J": J}, _facts(("nil_essential", ["I", "J"], a), ("nil_essential_by_elements", ["I", "J"], b)))
    return None


def check_p214(ctx: Context, tally: Tally):
    for I in ctx.lattice:
        tally.tick()
        rad = radical_of_ideal(I)
        if not ctx.ne(I, rad):
            return Witness({"I": I, "Rad": rad}, _facts(("radical_equals", ["I", "Rad"], True), ("nil_essential", ["I", "Rad"], False)))
    return None


def check_p215(ctx: Context, tally: Tally):
    L = ctx.lattice
    for J1 in L:
        for J2 in L:
            if not ctx.trivial(J1, J2):
                continue
            SJ = ideal_sum(J1, J2)
            for I1 in L.within(J1):
                for I2 in L.within(J2):
                    tally.tick()
                    SI = ideal_sum(I1, I2)
                    left = ctx.ne(I1, J1) and ctx.ne(I2, J2)
                    right = ctx.ne(SI, SJ)
                    if left != right:
                        return Witness(
                            {"I1": I1, "J1": J1, "I2": I2, "J2": J2, "SI": SI, "SJ": SJ},
                            _facts(
                                ("meets_trivially", ["J1", "J2"], True),
                                ("nil_essential", ["I1", "J1"], ctx.ne(I1, J1)),
                                ("nil_essential", ["I2", "J2"], ctx.ne(I2, J2)),
                                ("sum_equals", ["I1", "I2", "SI"], True),
                                ("sum_equals", ["J1", "J2", "SJ"], True),
                                ("nil_essential", ["SI", "SJ"], right),
                            ),
                        )
    return None


def check_p216(ctx: Context, tally: Tally):
    colon: dict[tuple[int, int], Ideal] = {}
    for I, J in ctx.chains():
        if not ctx.ne(I, J):
            continue
        for a in J.indices:
            tally.tick()
            key = (I.mask, a)
            if key not in colon:
                colon[key] = ideal_quotient(I, a)
            Q = colon[key]
            if not ctx.ne(Q):
                return Witness(
                    {"I": I, "J": J, "Q": Q},
                    _facts(("nil_essential", ["I", "J"], True), ("colon_equals", ["I", "a", "Q"], True), ("nil_essential", ["Q"], False)),
                    {"elements": {"a": ctx.ring.name(a)}},
                )
    return None


def check_d217(ctx: Context, tally: Tally):
    monos = nil_essential = 0
    for I, J in ctx.chains():
        tally.tick()
        if not is_nil_essential_mono(inclusion(I, J)).holds == ctx.ne(I, J):
            return Witness({"I": I, "J": J}, _facts(("subset", ["I", "J"], True), ("nil_essential", ["I", "J"], ctx.ne(I, J))))
        for f in iter_module_homs(I, J):
            if not f.is_injective():
                continue
            tally.tick()
            monos += 1
            im = image(f)
            if im not in enumerate_ideals(ctx.ring, im.sidedness) or not im.issubset(J):
                return Witness({"I": I, "J": J, "Im": im}, _facts(("subset", ["Im", "J"], im.issubset(J))), {"map": f.to_json()})
            nil_essential += is_nil_essential_mono(f).holds
    ctx.stats.update({"monomorphisms": monos, "nil_essential_monomorphisms": nil_essential})
    return None


def check_p218(ctx: Context, tally: Tally):
    homs = 0
    for I, J in ctx.chains():
        tally.tick()
        result = mono_characterization(I, J, kernels=ctx.kernels(J))
        homs = max(homs, result.homs_examined)
        if not result.agree:
            ideals = {"I": I, "J": J}
            facts = [Fact("nil_essential", ("I", "J"), result.clause_nil_essential)]
            data = {}
            if result.witness is not None:
                ideals.update({"K": result.witness["K"], "ker": result.witness["kernel"]})
                facts += [Fact("meets_trivially", ("ker", "I"), True), Fact("nilpotent", ("ker",), False)]
                data["map"] = result.witness["f"].to_json()
            return Witness(ideals, facts, data)
    ctx.stats["max_homs_per_ambient"] = homs
    return None


def check_p219(ctx: Context, tally: Tally):
    lattice = ctx.two_sided
    targets = [J for J in lattice if is_nil_essential(J).holds]
    for f in ctx.endomorphisms:
        for J in targets:
            tally.tick()
            if not is_nil_essential(preimage_ideal(f, J)).holds:
                return Witness(
                    {"J": J},
                    _facts(("nil_essential", ["J"], True), ("preimage_nil_essential", ["f", "J"], False)),
                    {"maps": {"f": f.to_json()}},
                )
    ctx.stats["unital_endomorphisms"] = len(ctx.endomorphisms)
    if ctx.ring.order <= 64:
        loose = enumerate_ring_endomorphisms(ctx.ring, unital=False)
        failures = 0
        for f in loose:
            for J in targets:
                failures += not is_nil_essential(preimage_ideal(f, J)).holds
        ctx.stats["nonunital_endomorphisms"] = len(loose)
        ctx.stats["nonunital_violations"] = failures
    else:
        ctx.notes.append("non-unital endomorphisms not enumerated above order 64")
    return None


# Left ideal shapes I1..I9 of ut3 over a prime field F_m, written on the (b, c, d) strict-upper part.
def _ut3_shape(m: int, coords: set[tuple[int, int, int, int]]) -> str | None:
    if len(coords) == m ** 4:
        return "I1"
    if any(a for a, *_ in coords):
        return None
    vecs = {(b, c, d) for _, b, c, d in coords}
    if vecs == {(0, 0, 0)}:
        return "I2"
    fixed = {
        "I3": {(0, c, 0) for c in range(m)},
        "I4": {(b, 0, 0) for b in range(m)},
        "I5": {(b, c, 0) for b in range(m) for c in range(m)},
        "I6": {(0, c, d) for c in range(m) for d in range(m)},
        "I8": {(b, c, d) for b in range(m) for c in range(m) for d in range(m)},
    }
    for name, shape in fixed.items():
        if vecs == shape:
            return name
    for lam in range(1, m):
        if vecs == {(b, lam * b % m, 0) for b in range(m)}:
            return "I7" if lam == 1 else f"I7[c={lam}b]"
        if vecs == {(b, c, lam * b % m) for b in range(m) for c in range(m)}:
            return "I9" if lam == 1 else f"I9[d={lam}b]"
    return None


def _ut3_modulus(ring: FiniteRing) -> int:
    tag = ring.construction_tag
    if not tag.startswith("ut3:"):
        raise Skip("statement concerns the constant-diagonal upper-triangular ring")
    m = int(tag.split(":", 1)[1])
    if m < 2 or any(m % p == 0 for p in range(2, int(m ** 0.5) + 1)):
        raise Skip("ideal shapes are listed for a field of coefficients; modulus is not prime")
    return m


def ut3_shape_names(ring: FiniteRing, lattice: IdealLattice) -> list[str] | None:
    """Shape label per left ideal of ut3 over a prime field, or None when not applicable."""
    try:
        m = _ut3_modulus(ring)
    except Skip:
        return None
    if lattice.sidedness is not Sidedness.LEFT:
        return None
    return [_ut3_shape(m, {ut3_coords(m, x) for x in I.indices}) or "?" for I in lattice]


def check_r220(ctx: Context, tally: Tally):
    m = _ut3_modulus(ctx.ring)
    lattice = enumerate_ideals(ctx.ring, Sidedness.LEFT)
    shapes: dict[str, Ideal] = {}
    for I in lattice:
        tally.tick()
        shape = _ut3_shape(m, {ut3_coords(m, x) for x in I.indices})
        if shape is None or shape in shapes:
            return Witness({"X": I}, _facts(("lattice_size", ["left"], len(lattice))), {"unmatched": I.names()})
        shapes[shape] = I
    expected = 2 * m + 5
    two_sided = sorted(k for k, I in shapes.items() if I in ctx.two_sided)
    ctx.stats.update({"left_ideals": len(lattice), "expected": expected, "two_sided_shapes": two_sided})
    one_sided = sorted(k for k in shapes if k not in two_sided and "[" not in k)
    ctx.notes.append("left ideals that are not two-sided: " + ", ".join(one_sided))
    I3, I4 = shapes.get("I3"), shapes.get("I4")
    if len(lattice) != expected or I3 is None or I4 is None:
        return Witness({}, _facts(("lattice_size", ["left"], len(lattice))))
    for name, I in (("I3", I3), ("I4", I4)):
        if not is_nil_essential(I).holds or is_essential(I).holds:
            return Witness({name: I}, _facts(("nil_essential", [name], is_nil_essential(I).holds), ("essential", [name], is_essential(I).holds)))
    partners = sorted(k for k, I in shapes.items() if I3.mask & I.mask == 1 << ctx.ring.zero)
    wanted = sorted(["I2", "I4"] + [k for k in shapes if k.startswith("I7")])
    ctx.stats["trivial_meet_with_I3"] = partners
    if partners != wanted or not all(is_nilpotent_ideal(shapes[k]).nilpotent for k in partners):
        return Witness({"I3": I3}, _facts(("nil_essential", ["I3"], True)), {"partners": partners})
    return None


def _sets_data(S) -> dict:
    return {"sets": {"S": S.names()}}


def check_p222(ctx: Context, tally: Tally):
    S = non_zero_divisors(ctx.ring)
    loc = ctx.localization(S)
    for I in ctx.lattice:
        tally.tick()
        a, b = ctx.ne(I), is_nil_essential(localize_ideal(loc, I)).holds
        if a != b:
            return Witness({"I": I}, _facts(("nil_essential", ["I"], a), ("localized_nil_essential", ["I", "S"], b)), _sets_data(S))
    ctx.stats["localized_order"] = loc.result.order
    return None


def check_c223(ctx: Context, tally: Tally):
    """S^-1 I nil-essential gives I nil-essential, for S made of regular elements.

    For general S the implication fails (the X223 hunt exhibits it), so the
    check covers the regime in which it follows from the equivalence at the
    full set of regular elements.
    """
    for S in ctx.regular_sets:
        loc = ctx.localization(S)
        for I in ctx.lattice:
            tally.tick()
            if is_nil_essential(localize_ideal(loc, I)).holds and not ctx.ne(I):
                return Witness({"I": I}, _facts(("localized_nil_essential", ["I", "S"], True), ("nil_essential", ["I"], False)), _sets_data(S))
    ctx.stats["regular_sets"] = len(ctx.regular_sets)
    return None


def _single_generated_sets(ring: FiniteRing) -> list:
    found = {}
    for x in range(ring.order):
        if ring.nilpotent_elements[x]:
            continue
        S = multiplicative_closure(ring, [x])
        found.setdefault(S.mask, S)
    return sorted(found.values(), key=lambda S: (len(S), S.members))


def check_x223(ctx: Context, tally: Tally):
    # sets generated by one element first; the full enumeration can be large
    singles = _single_generated_sets(ctx.ring) if ctx.ring.order > 1 else []
    seen = {S.mask for S in singles}

    def candidates():
        yield from singles
        yield from (S for S in ctx.multiplicative_sets if S.mask not in seen)

    for S in candidates():
        loc = ctx.localization(S)
        for I in ctx.lattice:
            tally.tick()
            if ctx.ne(I) or not is_nil_essential(localize_ideal(loc, I)).holds:
                continue
            mu = is_nil_essential(I).witness
            return Witness(
                {"I": I, "mu": mu},
                _facts(
                    ("localized_nil_essential", ["I", "S"], True),
                    ("nil_essential", ["I"], False),
                    ("meets_trivially", ["I", "mu"], True),
                    ("nilpotent", ["mu"], False),
                ),
                _sets_data(S),
            )
    return None


def _prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return n == 1


def check_e224(ctx: Context, tally: Tally):
    ring = ctx.ring
    # Z/p^n: commutative, additively cyclic (1 has full additive order), prime-power order
    if not (ring.commutative and _prime_power(ring.order) and ring.additive_order(ring.one) == ring.order):
        raise Skip("statement concerns the integers modulo a prime power")
    for S in ctx.multiplicative_sets:
        loc = ctx.localization(S)
        for I in ctx.lattice:
            tally.tick()
            a, b = is_essential(I).holds, is_nil_essential(localize_ideal(loc, I)).holds
            if a != b:
                return Witness({"I": I}, _facts(("essential", ["I"], a), ("localized_nil_essential", ["I", "S"], b)), _sets_data(S))
    ctx.stats["multiplicative_sets"] = len(ctx.multiplicative_sets)
    ctx.stats["all_sets_are_units"] = all(all(ring.unit_elements[x] for x in S.members) for S in ctx.multiplicative_sets)
    # a set containing 0 gives the zero fraction ring, where (0) is nil-essential
    if not is_essential(ctx.lattice.zero).holds:
        ctx.notes.append("multiplicative sets exclude 0; allowing 0 in S would break the equivalence at I = (0)")
    return None


@dataclass(frozen=True)
class CheckSpec:
    check_id: str
    statement: str
    run: Callable[[Context, Tally], Witness | None]
    existence: bool = False
    commutative: bool = False
    noetherian: bool = False


REGISTRY: tuple[CheckSpec, ...] = (
    CheckSpec("P201", "an ideal containing a nil-essential ideal is nil-essential", check_p201),
    CheckSpec("C202", "if I1 ∩ ... ∩ In is nil-essential then every Ij is", check_c202),
    CheckSpec("X202", "two nil-essential ideals can meet in a non-nil-essential ideal", check_x202, existence=True),
    CheckSpec("C203", "a sum with a nil-essential summand is nil-essential", check_c203),
    CheckSpec("C204", "if I1 ... In is nil-essential then every Ij is", check_c204),
    CheckSpec("C205", "if some power I^n is nil-essential then I is", check_c205),
    CheckSpec("X205", "a nil-essential ideal can have a non-nil-essential power", check_x205, existence=True),
    CheckSpec("P206", "I ⊴nil K gives I ⊴nil J and J ⊴nil K; (I∩L) ⊴nil K gives I, L ⊴nil K", check_p206),
    CheckSpec("P207", "an ideal meeting a maximal ideal trivially is zero or non-nilpotent", check_p207),
    CheckSpec("C208", "a nil-essential maximal ideal meets every non-zero ideal", check_c208),
    CheckSpec("C209", "no proper nil-essential ideal ⇔ no maximal nil-essential ideal ⇔ semisimple", check_c209),
    CheckSpec("C210", "an ideal meeting the Jacobson radical trivially is zero or non-nilpotent", check_c210),
    CheckSpec("R211a", "a nil-essential Jacobson radical meets every non-zero ideal; semisimple rings have no nil-essential radical or maximal ideal", check_r211a),
    CheckSpec("L212", "for non-zero I: nil-essential ⇔ element criterion", check_l212, commutative=True, noetherian=True),
    CheckSpec("L213", "for non-zero I ⊆ J: I ⊴nil J ⇔ element criterion inside J", check_l213, commutative=True, noetherian=True),
    CheckSpec("P214", "I ⊴nil rad(I)", check_p214, commutative=True, noetherian=True),
    CheckSpec("P215", "for J1 ∩ J2 = 0: I1 ⊴nil J1 and I2 ⊴nil J2 ⇔ I1+I2 ⊴nil J1+J2", check_p215, noetherian=True),
    CheckSpec("P216", "I ⊴nil J gives (I:a) ⊴nil R for every a in J", check_p216, commutative=True, noetherian=True),
    CheckSpec("D217", "monomorphisms into J have ideal images; inclusion is nil-essential iff I ⊴nil J", check_d217),
    CheckSpec("P218", "I ⊴nil J ⇔ inclusion is a nil-essential mono ⇔ kernels meeting I trivially are nilpotent", check_p218),
    CheckSpec("P219", "preimages of nil-essential ideals under unital endomorphisms are nil-essential", check_p219),
    CheckSpec("R220", "left ideal lattice of the upper-triangular ring; I3, I4 nil-essential but not essential", check_r220),
    CheckSpec("P222", "S = regular elements: I nil-essential ⇔ S^-1 I nil-essential", check_p222, commutative=True, noetherian=True),
    CheckSpec("C223", "S^-1 I nil-essential gives I nil-essential (S of regular elements)", check_c223, commutative=True, noetherian=True),
    CheckSpec("X223", "S^-1 I can be nil-essential while I is not", check_x223, existence=True, commutative=True),
    CheckSpec("E224", "Z/p^n, any S: I essential ⇔ S^-1 I nil-essential", check_e224, commutative=True),
)

BY_ID = {c.check_id: c for c in REGISTRY}

# Statements registered for documentation only: they concern infinite rings.
OUT_OF_SCOPE = {
    "R211b": "every non-zero ideal of the integers is nil-essential; infinite ring, no finite surrogate is substituted",
}

PROBES = {
    "P206-converse": CheckSpec("P206-converse", "transitivity and intersection-closure of nil-essentiality", check_p206_converse, existence=True),
}

EXISTENCE_IDS = tuple(c.check_id for c in REGISTRY if c.existence)


def _lookup(check_id: str) -> CheckSpec:
    spec = BY_ID.get(check_id) or PROBES.get(check_id)
    if spec is None:
        if check_id in OUT_OF_SCOPE:
            raise KeyError(f"{check_id} is out of scope: {OUT_OF_SCOPE[check_id]}")
        raise KeyError(f"unknown check id {check_id!r}")
    return spec


def _evaluate(spec: CheckSpec, ctx: Context, label: str, tally: Tally) -> CheckReport:
    ring = ctx.ring
    sidedness = ctx.sidedness.value
    if spec.check_id in ("P219",):
        sidedness = Sidedness.TWO_SIDED.value
    if spec.check_id == "R220":
        sidedness = Sidedness.LEFT.value
    notes = [NOETHERIAN_NOTE] if spec.noetherian else []
    if spec.commutative and not ring.commutative:
        return CheckReport(spec.check_id, label, "skipped", sidedness, reason="statement assumes a commutative ring", notes=notes)
    ctx.stats, ctx.notes = {}, []
    start = time.perf_counter()
    try:
        witness = spec.run(ctx, tally)
    except Skip as exc:
        return CheckReport(spec.check_id, label, "skipped", sidedness, reason=str(exc), notes=notes, elapsed=time.perf_counter() - start)
    except CapExceeded as exc:
        return CheckReport(spec.check_id, label, "skipped", sidedness, reason=f"cap: {exc}", notes=notes, elapsed=time.perf_counter() - start)
    elapsed = time.perf_counter() - start
    stats = {"instances": tally.count, **ctx.stats}
    notes = notes + ctx.notes
    if witness is None:
        status = "exhausted" if spec.existence else "verified"
        return CheckReport(spec.check_id, label, status, sidedness, statistics=stats, notes=notes, elapsed=elapsed)
    status = "confirmed" if spec.existence else "refuted"
    return CheckReport(
        spec.check_id, label, status, sidedness, statistics=stats, notes=notes,
        witness_ideals=witness.ideals, witness_data=witness.data, facts=witness.facts, elapsed=elapsed,
    )


def _ring_and_label(ring_or_spec) -> tuple[FiniteRing, str]:
    if isinstance(ring_or_spec, FiniteRing):
        return ring_or_spec, ring_or_spec.construction_tag
    spec = parse_spec(ring_or_spec)
    return build_ring(spec), spec.label


def run_check(check_id: str, ring_or_spec, budget: int | None = None, context: Context | None = None) -> CheckReport:
    spec = _lookup(check_id)
    ring, label = _ring_and_label(ring_or_spec)
    ctx = context if context is not None and context.ring is ring else Context(ring)
    return _evaluate(spec, ctx, label, Tally(budget))


def _apply_caps(caps: dict | None) -> None:
    if not caps:
        return
    if "max_order" in caps:
        config.set_max_order(min(caps["max_order"], config.DEFAULT_MAX_ORDER))
    if "endomorphism_max_order" in caps:
        config.ENDOMORPHISM_MAX_ORDER = caps["endomorphism_max_order"]
    if "hom_max_candidates" in caps:
        config.HOM_MAX_CANDIDATES = caps["hom_max_candidates"]


def _run_ring(args) -> list[dict]:
    spec_json, selection, caps, max_order = args
    if max_order is not None:
        config.set_max_order(max_order)
    _apply_caps(caps)
    spec = parse_spec(spec_json)
    try:
        ring = build_ring(spec)
    except NilringError as exc:
        return [CheckReport(cid, spec.label, "skipped", reason=f"construction: {exc}").to_json(timings=True) for cid in selection]
    ctx = Context(ring)
    return [_evaluate(_lookup(cid), ctx, spec.label, Tally()).to_json(timings=True) for cid in selection]


def run_suite(corpus: Iterable[RingSpec | str | dict], selection: Iterable[str] | None = None, jobs: int = 1, caps: dict | None = None) -> list[dict]:
    """Run the selected checks over every corpus ring; reports come back in corpus × registry order.

    Returns JSON-ready dicts (with ``elapsed_seconds``; strip it for
    byte-stable output).
    """
    ids = [c.check_id for c in REGISTRY] if selection is None else list(selection)
    for cid in ids:
        _lookup(cid)
    order = {c.check_id: k for k, c in enumerate(REGISTRY)}
    ids.sort(key=lambda c: order.get(c, len(order)))
    specs = [parse_spec(s) for s in corpus]
    work = [(s.to_json(), ids, caps, config._override) for s in specs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_ring, work))
    else:
        chunks = [_run_ring(w) for w in work]
    return [report for chunk in chunks for report in chunk]


def summarize(reports: list[dict]) -> dict:
    counts: dict[str, int] = {}
    for r in reports:
        counts[r["status"]] = counts.get(r["status"], 0) + 1
    confirmed = sorted({r["check_id"] for r in reports if r["status"] == "confirmed"})
    refuted = [f"{r['check_id']}@{r['ring']}" for r in reports if r["status"] == "refuted"]
    return {"counts": counts, "confirmed_existence_checks": confirmed, "refuted": refuted, "success": not refuted}


def hunt_counterexample(claim_id: str, corpus: Iterable[RingSpec | str | dict], budget: int = 100_000) -> HuntResult:
    """Search corpus rings in order for a witness of ``claim_id``.

    Existence ids and probes look for their counterexample; theorem ids look
    for a refutation. Budget counts evaluated instances across all rings.
    """
    spec = _lookup(claim_id)
    specs = [parse_spec(s) for s in corpus]
    labels = [s.label for s in specs]
    tally = Tally(budget)
    for rs in specs:
        try:
            ring = build_ring(rs)
        except NilringError:
            continue
        try:
            report = _evaluate(spec, Context(ring), rs.label, tally)
        except BudgetExhausted:
            return HuntResult(claim_id, labels, None, False, tally.count)
        if report.status in ("confirmed", "refuted"):
            return HuntResult(claim_id, labels, report.to_json(), False, tally.count)
    return HuntResult(claim_id, labels, None, True, tally.count)
