"""Check/hunt report records and witness replay.

A witness is a set of named ideals (stored by member names), optional extra
data (element names, multiplicative sets, maps) and a list of facts. Each
fact is a predicate call with its expected value; replaying a witness
rebuilds the ring from its spec and re-evaluates every fact in isolation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

STATUSES = ("verified", "refuted", "skipped", "confirmed", "exhausted")


def ring_label(ring) -> str:
    return ring.construction_tag


@dataclass(frozen=True)
class Fact:
    predicate: str
    args: tuple
    expected: Any

    def to_json(self) -> list:
        return [self.predicate, list(self.args), self.expected]


@dataclass
class CheckReport:
    check_id: str
    ring_spec: str
    status: str
    sidedness: str | None = None
    reason: str | None = None
    statistics: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    witness_ideals: dict = field(default_factory=dict)
    witness_data: dict = field(default_factory=dict)
    facts: list[Fact] = field(default_factory=list)
    elapsed: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status in ("refuted", "confirmed") and not self.facts:
            raise ValueError(f"a {self.status} report needs a witness")

    @property
    def has_witness(self) -> bool:
        return bool(self.facts)

    def witness_json(self) -> dict | None:
        if not self.facts:
            return None
        return {
            "ideals": {k: v.to_json() for k, v in self.witness_ideals.items()},
            "data": self.witness_data,
            "facts": [f.to_json() for f in self.facts],
        }

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "check_id": self.check_id,
            "ring": self.ring_spec,
            "status": self.status,
            "sidedness": self.sidedness,
            "reason": self.reason,
            "statistics": self.statistics,
            "notes": self.notes,
            "witness": self.witness_json(),
        }
        if timings:
            out["elapsed_seconds"] = round(self.elapsed, 6)
        return out

    def to_text(self) -> str:
        line = f"{self.check_id:<6} {self.ring_spec:<28} {self.status}"
        if self.sidedness:
            line += f"  [{self.sidedness}]"
        if "instances" in self.statistics:
            line += f"  instances={self.statistics['instances']}"
        if self.reason:
            line += f"  ({self.reason})"
        if self.facts:
            line += "\n    witness: " + "; ".join(
                f"{k}={v.label()}" for k, v in self.witness_ideals.items()
            )
            for key, value in self.witness_data.items():
                line += f"; {key}={value}"
        return line


@dataclass
class HuntResult:
    claim_id: str
    corpus: list[str]
    witness: dict | None
    exhausted: bool
    budget_consumed: int

    def to_json(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "corpus": self.corpus,
            "witness": self.witness,
            "exhausted": self.exhausted,
            "budget_consumed": self.budget_consumed,
        }

    def to_text(self) -> str:
        if self.witness is None:
            state = "exhausted" if self.exhausted else "budget spent without a witness"
            return f"hunt {self.claim_id}: {state} after {self.budget_consumed} instances"
        w = self.witness
        parts = [f"{k}={v['generators'] or ['0']}" for k, v in w["witness"]["ideals"].items()]
        parts += [f"{k}={v}" for k, v in w["witness"]["data"].items()]
        return f"hunt {self.claim_id}: witness in {w['ring']} after {self.budget_consumed} instances: " + ", ".join(parts)


def dumps(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)


def _evaluate(pred: str, args: list, ring, ideals: dict, data: dict):
    from . import homs, ideals as ideal_mod, localization, predicates

    def ideal(name):
        return ideals[name]

    def element(name):
        return ring.index(data["elements"][name])

    if pred == "nil_essential":
        return predicates.is_nil_essential(ideal(args[0]), ideal(args[1]) if len(args) > 1 else None).holds
    if pred == "essential":
        return predicates.is_essential(ideal(args[0]), ideal(args[1]) if len(args) > 1 else None).holds
    if pred == "nil_essential_by_elements":
        return predicates.nil_essential_by_element_criterion(ideal(args[0]), ideal(args[1]) if len(args) > 1 else None).holds
    if pred == "nilpotent":
        return predicates.is_nilpotent_ideal(ideal(args[0])).nilpotent
    if pred == "is_zero":
        return ideal(args[0]).is_zero
    if pred == "subset":
        return ideal(args[0]).issubset(ideal(args[1]))
    if pred == "equal":
        return ideal(args[0]).mask == ideal(args[1]).mask
    if pred == "meets_trivially":
        return ideal(args[0]).mask & ideal(args[1]).mask == 1 << ring.zero
    if pred == "intersection_equals":
        return ideal(args[0]).mask & ideal(args[1]).mask == ideal(args[2]).mask
    if pred == "sum_equals":
        return ideal_mod.ideal_sum(ideal(args[0]), ideal(args[1])).mask == ideal(args[2]).mask
    if pred == "product_equals":
        return ideal_mod.ideal_product(ideal(args[0]), ideal(args[1])).mask == ideal(args[2]).mask
    if pred == "power_equals":
        return ideal_mod.ideal_power(ideal(args[0]), int(args[1])).mask == ideal(args[2]).mask
    if pred == "maximal":
        lattice = ideal_mod.enumerate_ideals(ring, ideal(args[0]).sidedness)
        return any(M.mask == ideal(args[0]).mask for M in ideal_mod.maximal_proper_ideals(lattice))
    if pred == "lattice_size":
        return len(ideal_mod.enumerate_ideals(ring, args[0]))
    if pred == "semisimple":
        return predicates.is_semisimple(ring)
    if pred == "jacobson_equals":
        return predicates.jacobson_radical(ring).mask == ideal(args[0]).mask
    if pred == "radical_equals":
        return ideal_mod.radical_of_ideal(ideal(args[0])).mask == ideal(args[1]).mask
    if pred == "colon_equals":
        return ideal_mod.ideal_quotient(ideal(args[0]), element(args[1])).mask == ideal(args[2]).mask
    if pred in ("localized_nil_essential", "localized_essential"):
        S = localization.multiplicative_closure(ring, [ring.index(x) for x in data["sets"][args[1]]])
        loc = localization.localize_ring(ring, S)
        local = localization.localize_ideal(loc, ideal(args[0]))
        check = predicates.is_nil_essential if pred == "localized_nil_essential" else predicates.is_essential
        return check(local).holds
    if pred == "preimage_nil_essential":
        from .ring import RingHom

        table = data["maps"][args[0]]
        f = RingHom(ring, ring, tuple(ring.index(table[ring.name(x)]) for x in range(ring.order)), unital=True)
        if not f.verify():
            raise ValueError(f"map {args[0]} is not a ring homomorphism")
        return predicates.is_nil_essential(homs.preimage_ideal(f, ideal(args[1]))).holds
    raise ValueError(f"unknown witness predicate {pred!r}")


def replay_witness(report: dict) -> bool:
    """Rebuild the ring and the named ideals, then re-evaluate every recorded fact."""
    from .ideals import ideal_from_members
    from .specs import build_ring, parse_spec

    witness = report.get("witness")
    if not witness:
        raise ValueError("report carries no witness")
    ring = build_ring(parse_spec(report["ring"]))
    ideals = {
        name: ideal_from_members(ring, [ring.index(m) for m in payload["members"]], payload["sidedness"])
        for name, payload in witness["ideals"].items()
    }
    data = witness.get("data", {})
    return all(_evaluate(pred, args, ring, ideals, data) == expected for pred, args, expected in witness["facts"])
