"""Ring endomorphisms and module homomorphisms between ideals.

Both enumerations assign images to a small generating set and extend by
linearity, rejecting an assignment as soon as the extension stops being a
well-defined function; every survivor is then checked exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import numpy as np

from . import config
from .errors import CapExceeded, InvalidParameter, MixedRing, NotMono, SidednessError
from .ideals import Ideal, Sidedness, enumerate_ideals, ideal_from_members
from .predicates import Verdict, is_nil_essential, is_nilpotent_ideal
from .ring import FiniteRing, RingHom


def _extend(add: np.ndarray, dom: np.ndarray, img: np.ndarray, steps: np.ndarray, step_imgs: np.ndarray, n: int):
    """Extend ``dom -> img`` by ``s + t -> f(s) + t'`` for paired ``steps``/``step_imgs``.

    Returns the new (domain, images) or None when two representations of one
    element receive different images.
    """
    elems = add[dom[:, None], steps[None, :]].ravel()
    imgs = add[img[:, None], step_imgs[None, :]].ravel()
    table = np.full(n, -1, dtype=np.int64)
    table[elems] = imgs
    if not np.array_equal(table[elems], imgs):
        return None
    new_dom = np.flatnonzero(table >= 0)
    return new_dom, table[new_dom]


def _additive_generators(ring: FiniteRing, first: list[int]) -> list[int]:
    gens = list(first)
    span = np.zeros(ring.order, dtype=bool)
    span[ring.zero] = True
    for g in gens:
        span = _add_span(ring, span, g)
    for x in range(ring.order):
        if not span[x]:
            gens.append(x)
            span = _add_span(ring, span, x)
    return gens


def _multiples(ring: FiniteRing, g: int) -> np.ndarray:
    out = [ring.zero]
    cur = g
    while cur != ring.zero:
        out.append(cur)
        cur = int(ring.add_table[cur, g])
    return np.array(out, dtype=np.int64)


def _add_span(ring: FiniteRing, span: np.ndarray, g: int) -> np.ndarray:
    idx = np.flatnonzero(span)
    out = np.zeros(ring.order, dtype=bool)
    out[ring.add_table[idx[:, None], _multiples(ring, g)[None, :]].ravel()] = True
    return out


def enumerate_ring_endomorphisms(ring: FiniteRing, unital: bool = True, cap: int | None = None) -> list[RingHom]:
    """All ring endomorphisms (unital ones only, by default)."""
    cap = config.ENDOMORPHISM_MAX_ORDER if cap is None else cap
    if ring.order > cap:
        raise CapExceeded(f"endomorphism enumeration is capped at order {cap}")
    n, add, mul = ring.order, ring.add_table, ring.mul_table
    if n == 1:
        return [RingHom(ring, ring, (0,), unital=True)]
    gens = _additive_generators(ring, [ring.one] if unital else [])
    found: list[RingHom] = []

    def consistent(dom_mask: np.ndarray, table: np.ndarray, assigned: list[tuple[int, int]]) -> bool:
        for g, y in assigned:
            for h, z in assigned:
                p = mul[g, h]
                if dom_mask[p] and table[p] != mul[y, z]:
                    return False
        return True

    def search(k: int, dom: np.ndarray, img: np.ndarray, assigned: list[tuple[int, int]]) -> None:
        if k == len(gens):
            hom = RingHom(ring, ring, tuple(int(v) for v in _dense(dom, img, n)), unital=unital)
            if hom.verify():
                found.append(hom)
            return
        g = gens[k]
        steps = _multiples(ring, g)
        candidates = [ring.one] if unital and g == ring.one else range(n)
        for y in candidates:
            step_imgs = np.array([ring.zero] + [0] * (len(steps) - 1), dtype=np.int64)
            cur = ring.zero
            for j in range(1, len(steps)):
                cur = int(add[cur, y])
                step_imgs[j] = cur
            ext = _extend(add, dom, img, steps, step_imgs, n)
            if ext is None:
                continue
            new_dom, new_img = ext
            dom_mask = np.zeros(n, dtype=bool)
            dom_mask[new_dom] = True
            table = _dense(new_dom, new_img, n)
            pairs = assigned + [(g, y)]
            if consistent(dom_mask, table, pairs):
                search(k + 1, new_dom, new_img, pairs)

    search(0, np.array([ring.zero]), np.array([ring.zero]), [])
    found.sort(key=lambda h: h.map)
    return found


def _dense(dom: np.ndarray, img: np.ndarray, n: int) -> np.ndarray:
    table = np.full(n, -1, dtype=np.int64)
    table[dom] = img
    return table


def preimage_ideal(f: RingHom, ideal: Ideal) -> Ideal:
    """``{x : f(x) in ideal}`` as an ideal of the source, same sidedness."""
    if ideal.ring is not f.target:
        raise MixedRing("ideal does not live in the homomorphism's target")
    mem = ideal.bool[f.array]
    return ideal_from_members(f.source, np.flatnonzero(mem), ideal.sidedness)


def module_side(ideal: Ideal) -> Sidedness:
    """Two-sided ideals are handled as left modules."""
    return Sidedness.RIGHT if ideal.sidedness is Sidedness.RIGHT else Sidedness.LEFT


@dataclass(frozen=True, eq=False)
class ModuleHom:
    source: Ideal
    target: Ideal
    images: tuple[int, ...]

    @cached_property
    def table(self) -> dict[int, int]:
        return dict(zip(self.source.indices, self.images))

    def __call__(self, x: int) -> int:
        return self.table[x]

    @property
    def side(self) -> Sidedness:
        return module_side(self.source)

    def verify(self) -> bool:
        ring = self.source.ring
        src = np.array(self.source.indices)
        f = _dense(src, np.array(self.images), ring.order)
        if np.any(~self.target.bool[np.array(self.images)]):
            return False
        sums = ring.add_table[src[:, None], src[None, :]]
        if not np.array_equal(f[sums], ring.add_table[f[src][:, None], f[src][None, :]]):
            return False
        if self.side is Sidedness.LEFT:
            acted, acted_img = ring.mul_table[:, src], ring.mul_table[:, f[src]]
        else:
            acted, acted_img = ring.mul_table[src, :].T, ring.mul_table[f[src], :].T
        return bool(np.array_equal(f[acted], acted_img))

    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def to_json(self) -> dict:
        ring = self.source.ring
        return {ring.name(x): ring.name(y) for x, y in zip(self.source.indices, self.images)}


def _submodule(ring: FiniteRing, dom: np.ndarray, g: int, side: Sidedness) -> np.ndarray:
    acted = ring.mul_table[:, g] if side is Sidedness.LEFT else ring.mul_table[g, :]
    out = np.zeros(ring.order, dtype=bool)
    out[ring.add_table[dom[:, None], acted[None, :]].ravel()] = True
    return out


def _module_generators(ideal: Ideal, side: Sidedness) -> list[int]:
    """Greedy generating set: each step adds the element enlarging the span most (ties by index)."""
    ring = ideal.ring
    span = np.zeros(ring.order, dtype=bool)
    span[ring.zero] = True
    gens = []
    while span.sum() < ideal.size:
        dom = np.flatnonzero(span)
        best, best_span = None, None
        for x in ideal.indices:
            if span[x]:
                continue
            cand = _submodule(ring, dom, x, side)
            if best_span is None or cand.sum() > best_span.sum():
                best, best_span = x, cand
        gens.append(best)
        span = best_span
    return gens


def count_hom_candidates(source: Ideal, target: Ideal) -> int:
    return target.size ** len(_module_generators(source, module_side(source)))


def iter_module_homs(source: Ideal, target: Ideal, max_candidates: int | None = None) -> Iterator[ModuleHom]:
    if source.ring is not target.ring:
        raise MixedRing("module homs are only enumerated between ideals of one ring")
    ring = source.ring
    side = module_side(source)
    gens = _module_generators(source, side)
    limit = config.HOM_MAX_CANDIDATES if max_candidates is None else max_candidates
    if target.size ** len(gens) > limit:
        raise CapExceeded(f"{target.size}^{len(gens)} candidate maps exceed the hom cap {limit}")
    n, add, mul = ring.order, ring.add_table, ring.mul_table
    targets = target.indices

    def search(k: int, dom: np.ndarray, img: np.ndarray):
        if k == len(gens):
            hom = ModuleHom(source, target, tuple(int(v) for v in _dense(dom, img, n)[list(source.indices)]))
            if hom.verify():
                yield hom
            return
        g = gens[k]
        steps = mul[:, g] if side is Sidedness.LEFT else mul[g, :]
        for y in targets:
            step_imgs = mul[:, y] if side is Sidedness.LEFT else mul[y, :]
            ext = _extend(add, dom, img, steps, step_imgs, n)
            if ext is not None:
                yield from search(k + 1, *ext)

    yield from search(0, np.array([ring.zero]), np.array([ring.zero]))


def enumerate_module_homs(source: Ideal, target: Ideal, max_candidates: int | None = None) -> list[ModuleHom]:
    """All additive, side-action-compatible maps ``source -> target``."""
    return list(iter_module_homs(source, target, max_candidates))


def inclusion(source: Ideal, target: Ideal) -> ModuleHom:
    if source.mask & ~target.mask:
        raise InvalidParameter("inclusion needs source contained in target")
    return ModuleHom(source, target, source.indices)


def _relabel(ring: FiniteRing, mask: int, preferred: Sidedness, side: Sidedness) -> Ideal:
    members = [x for x in range(ring.order) if mask >> x & 1]
    try:
        return ideal_from_members(ring, members, preferred)
    except SidednessError:
        return ideal_from_members(ring, members, side)


def kernel(f: ModuleHom) -> Ideal:
    """Kernel as an ideal; keeps the source's sidedness when closed under it, else the module side."""
    ring = f.source.ring
    mask = 0
    for x, y in zip(f.source.indices, f.images):
        if y == ring.zero:
            mask |= 1 << x
    return _relabel(ring, mask, f.source.sidedness, f.side)


def image(f: ModuleHom) -> Ideal:
    ring = f.source.ring
    mask = 0
    for y in f.images:
        mask |= 1 << y
    return _relabel(ring, mask, f.target.sidedness, f.side)


def is_nil_essential_mono(f: ModuleHom) -> Verdict:
    if not f.is_injective():
        raise NotMono("map is not injective")
    return is_nil_essential(image(f), within=f.target)


@dataclass(frozen=True)
class MonoCharacterization:
    clause_nil_essential: bool
    clause_inclusion_mono: bool
    clause_kernels: bool
    witness: dict | None
    homs_examined: int

    @property
    def agree(self) -> bool:
        return self.clause_nil_essential == self.clause_inclusion_mono == self.clause_kernels


def kernel_clause(ideal: Ideal, ambient: Ideal, max_candidates: int | None = None, kernels: list | None = None):
    """For every ideal K and every f: ambient -> K with ker f meeting ``ideal`` trivially, ker f is nilpotent.

    Returns ``(holds, witness, homs_examined)``; the witness is the first
    ``(K, f)`` whose kernel is non-nilpotent. ``kernels`` may carry a
    precomputed ``[(K, f, ker)]`` list for ``ambient``.
    """
    if kernels is None:
        kernels = all_kernels(ambient, max_candidates)
    zero_bit = 1 << ideal.ring.zero
    for K, f, ker in kernels:
        if ker.mask & ideal.mask == zero_bit and not is_nilpotent_ideal(ker).nilpotent:
            return False, {"K": K, "f": f, "kernel": ker}, len(kernels)
    return True, None, len(kernels)


def all_kernels(ambient: Ideal, max_candidates: int | None = None) -> list[tuple[Ideal, ModuleHom, Ideal]]:
    lattice = enumerate_ideals(ambient.ring, ambient.sidedness)
    out = []
    for K in lattice:
        for f in iter_module_homs(ambient, K, max_candidates):
            out.append((K, f, kernel(f)))
    return out


def check_mono_characterization(ideal: Ideal, ambient: Ideal, max_candidates: int | None = None):
    """Evaluate the three equivalent descriptions of ``ideal`` being nil-essential in ``ambient``.

    Returns a CheckReport: verified when all three agree, refuted with the
    distinguishing data otherwise, skipped when the hom cap is hit.
    """
    from .reports import CheckReport, Fact, ring_label

    spec = ring_label(ideal.ring)
    try:
        result = mono_characterization(ideal, ambient, max_candidates)
    except CapExceeded as exc:
        return CheckReport("P218", spec, "skipped", reason=str(exc), sidedness=ideal.sidedness.value)
    stats = {
        "clause_nil_essential": result.clause_nil_essential,
        "clause_inclusion_mono": result.clause_inclusion_mono,
        "clause_kernels": result.clause_kernels,
        "homs_examined": result.homs_examined,
    }
    if result.agree:
        return CheckReport("P218", spec, "verified", statistics=stats, sidedness=ideal.sidedness.value)
    ideals = {"I": ideal, "J": ambient}
    facts = [Fact("nil_essential", ("I", "J"), result.clause_nil_essential)]
    if result.witness is not None:
        ideals.update({"K": result.witness["K"], "ker": result.witness["kernel"]})
        facts.append(Fact("nilpotent", ("ker",), False))
        facts.append(Fact("meets_trivially", ("ker", "I"), True))
    return CheckReport("P218", spec, "refuted", statistics=stats, sidedness=ideal.sidedness.value, witness_ideals=ideals, facts=facts)


def mono_characterization(ideal: Ideal, ambient: Ideal, max_candidates: int | None = None, kernels=None) -> MonoCharacterization:
    c1 = is_nil_essential(ideal, within=ambient).holds
    c2 = is_nil_essential_mono(inclusion(ideal, ambient)).holds
    c3, witness, examined = kernel_clause(ideal, ambient, max_candidates, kernels)
    return MonoCharacterization(c1, c2, c3, witness, examined)
