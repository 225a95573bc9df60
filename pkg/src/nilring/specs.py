"""Ring specifications: inline strings, JSON objects, table files and corpora.

Inline grammar::

    cyclic:N                 integers mod N
    ut3:M                    constant-diagonal upper-triangular 3x3 over Z/M
    product:A+B[+C...]       direct product of inline specs (no nesting)
    quotient:SPEC/g1,g2      SPEC modulo the two-sided ideal generated by g1, g2
    tables:PATH              table file

JSON objects use ``{"kind": "cyclic", "n": 12}``, ``{"kind": "ut3", "m": 2}``,
``{"kind": "product", "factors": [...]}``, ``{"kind": "quotient", "ring": {...},
"generators": [...]}`` and ``{"kind": "tables", "path": "ring.tbl"}``.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .errors import CorpusParseError, InvalidParameter
from .ring import FiniteRing, build_ring_from_tables, make_cyclic_ring, make_product_ring, make_quotient_ring, make_ut3_ring

KINDS = ("cyclic", "ut3", "product", "quotient", "tables")


@dataclass(frozen=True)
class RingSpec:
    kind: str
    n: int | None = None
    m: int | None = None
    factors: tuple["RingSpec", ...] = ()
    ring: "RingSpec | None" = None
    generators: tuple[str, ...] = ()
    path: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParameter(f"unknown ring kind {self.kind!r}")
        if self.kind == "cyclic" and (not isinstance(self.n, int) or self.n < 1):
            raise InvalidParameter(f"cyclic ring needs n >= 1, got {self.n!r}")
        if self.kind == "ut3" and (not isinstance(self.m, int) or self.m < 2):
            raise InvalidParameter(f"ut3 ring needs m >= 2, got {self.m!r}")
        if self.kind == "product" and len(self.factors) < 2:
            raise InvalidParameter("product ring needs at least two factors")
        if self.kind == "quotient" and self.ring is None:
            raise InvalidParameter("quotient spec needs a base ring")
        if self.kind == "tables" and not self.path:
            raise InvalidParameter("tables spec needs a path")

    @property
    def label(self) -> str:
        if self.kind == "cyclic":
            return f"cyclic:{self.n}"
        if self.kind == "ut3":
            return f"ut3:{self.m}"
        if self.kind == "product":
            return "product:" + "+".join(f.label for f in self.factors)
        if self.kind == "quotient":
            return f"quotient:{self.ring.label}/" + ",".join(self.generators)
        return f"tables:{self.path}"

    def to_json(self) -> dict[str, Any]:
        if self.kind == "cyclic":
            return {"kind": "cyclic", "n": self.n}
        if self.kind == "ut3":
            return {"kind": "ut3", "m": self.m}
        if self.kind == "product":
            return {"kind": "product", "factors": [f.to_json() for f in self.factors]}
        if self.kind == "quotient":
            return {"kind": "quotient", "ring": self.ring.to_json(), "generators": list(self.generators)}
        return {"kind": "tables", "path": self.path}


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except (TypeError, ValueError):
        raise InvalidParameter(f"{what} must be an integer, got {text!r}") from None


def parse_inline(text: str) -> RingSpec:
    text = text.strip()
    kind, sep, rest = text.partition(":")
    if not sep:
        raise InvalidParameter(f"ring spec {text!r} is missing ':'")
    if kind == "cyclic":
        return RingSpec("cyclic", n=_int(rest, "cyclic n"))
    if kind == "ut3":
        return RingSpec("ut3", m=_int(rest, "ut3 modulus"))
    if kind == "product":
        return RingSpec("product", factors=tuple(parse_inline(part) for part in rest.split("+")))
    if kind == "quotient":
        base, sep, gens = rest.rpartition("/")
        if not sep:
            raise InvalidParameter("quotient spec needs '/generators'")
        return RingSpec("quotient", ring=parse_inline(base), generators=tuple(g for g in gens.split(",") if g))
    if kind == "tables":
        return RingSpec("tables", path=rest)
    raise InvalidParameter(f"unknown ring kind {kind!r}")


def parse_json_spec(obj: Any) -> RingSpec:
    if isinstance(obj, str):
        return parse_inline(obj)
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InvalidParameter(f"ring spec must be an object with 'kind', got {obj!r}")
    kind = obj["kind"]
    if kind == "cyclic":
        return RingSpec("cyclic", n=obj.get("n"))
    if kind == "ut3":
        return RingSpec("ut3", m=obj.get("m"))
    if kind == "product":
        return RingSpec("product", factors=tuple(parse_json_spec(f) for f in obj.get("factors", [])))
    if kind == "quotient":
        return RingSpec("quotient", ring=parse_json_spec(obj.get("ring")), generators=tuple(str(g) for g in obj.get("generators", [])))
    if kind == "tables":
        return RingSpec("tables", path=obj.get("path"))
    raise InvalidParameter(f"unknown ring kind {kind!r}")


def parse_spec(value: Any) -> RingSpec:
    """Accept an inline string, a JSON string, a dict, or a RingSpec."""
    if isinstance(value, RingSpec):
        return value
    if isinstance(value, str) and value.lstrip().startswith("{"):
        try:
            value = json.loads(value)
        except json.JSONDecodeError as exc:
            raise InvalidParameter(f"bad JSON ring spec: {exc}") from None
    return parse_json_spec(value)


def read_table_file(path: str | Path, tag: str | None = None) -> FiniteRing:
    """Order, then order^2 addition entries, order^2 multiplication entries, then zero and one."""
    try:
        tokens = Path(path).read_text().split()
    except OSError as exc:
        raise InvalidParameter(f"cannot read table file {path}: {exc}") from None
    values = [_int(t, "table entry") for t in tokens]
    if not values:
        raise InvalidParameter("empty table file")
    n = values[0]
    if n < 1 or len(values) != 1 + 2 * n * n + 2:
        raise InvalidParameter(f"table file {path} has {len(values)} integers, expected {1 + 2 * n * n + 2}")
    add = [values[1 + i * n:1 + (i + 1) * n] for i in range(n)]
    mul = [values[1 + n * n + i * n:1 + n * n + (i + 1) * n] for i in range(n)]
    zero, one = values[-2], values[-1]
    return build_ring_from_tables(add, mul, zero, one, construction_tag=tag or f"tables:{path}")


def write_table_file(ring: FiniteRing, path: str | Path) -> None:
    lines = [str(ring.order)]
    lines += [" ".join(str(int(v)) for v in row) for row in ring.add_table]
    lines += [" ".join(str(int(v)) for v in row) for row in ring.mul_table]
    lines.append(f"{ring.zero} {ring.one}")
    Path(path).write_text("\n".join(lines) + "\n")


def _element(ring: FiniteRing, token: str) -> int:
    if token in ring._name_index:
        return ring.index(token)
    value = _int(token, "generator")
    if not 0 <= value < ring.order:
        raise InvalidParameter(f"generator {value} out of range")
    return value


def build_ring(spec: RingSpec | str | dict) -> FiniteRing:
    from .ideals import generate_ideal

    spec = parse_spec(spec)
    if spec.kind == "cyclic":
        ring = make_cyclic_ring(spec.n)
    elif spec.kind == "ut3":
        ring = make_ut3_ring(spec.m)
    elif spec.kind == "product":
        ring = make_product_ring([build_ring(f) for f in spec.factors])
    elif spec.kind == "quotient":
        base = build_ring(spec.ring)
        ideal = generate_ideal(base, [_element(base, g) for g in spec.generators], "two-sided")
        ring, _ = make_quotient_ring(base, ideal)
    else:
        ring = read_table_file(spec.path)
    return dataclasses.replace(ring, construction_tag=spec.label)


@dataclass
class CorpusFile:
    specs: list[RingSpec]
    caps: dict[str, int] = field(default_factory=dict)
    selection: list[str] | None = None


CAP_KEYS = ("max_order", "endomorphism_max_order", "hom_max_candidates")


def load_corpus(path: str | Path) -> CorpusFile:
    """Read a corpus: a JSON list of specs, or an object with ``rings``, ``caps`` and ``checks``."""
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CorpusParseError(f"cannot read corpus {path}: {exc}") from None
    if isinstance(raw, list):
        raw = {"rings": raw}
    if not isinstance(raw, dict) or not isinstance(raw.get("rings"), list):
        raise CorpusParseError("corpus must be a list of ring specs or an object with a 'rings' list")
    base = Path(path).parent
    specs = []
    for entry in raw["rings"]:
        try:
            spec = parse_spec(entry)
        except InvalidParameter as exc:
            raise CorpusParseError(f"bad ring spec {entry!r}: {exc}") from None
        if spec.kind == "tables" and not Path(spec.path).is_absolute():
            spec = RingSpec("tables", path=str(base / spec.path))
        specs.append(spec)
    caps = raw.get("caps", {})
    if not isinstance(caps, dict) or any(k not in CAP_KEYS or not isinstance(v, int) or v <= 0 for k, v in caps.items()):
        raise CorpusParseError(f"caps must map {CAP_KEYS} to positive integers")
    selection = raw.get("checks")
    if selection is not None and (not isinstance(selection, list) or not all(isinstance(s, str) for s in selection)):
        raise CorpusParseError("'checks' must be a list of check ids")
    return CorpusFile(specs, caps, selection)


def default_corpus_path() -> Path:
    return Path(__file__).with_name("data") / "default_corpus.json"
