"""JSON recipes: a field, m, one subset spec per part, a transform and a subfield flag.

Part grammar (coordinates are 1-based subsets of [m]):

    "1,2"                 the simplex Delta_{1,2}
    "{}"                  {0}, the simplex of the empty set
    "facets:1,2|2,3"      the complex generated by several facets
    "vectors:1100,0101"   explicit vectors, first character = coordinate 1
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field as dc_field

from .code import (
    MESSAGE_BUDGET,
    DefiningSet,
    LinearCode,
    build_code,
    complement,
    defining_set_from_parts,
    puncture,
)
from .errors import UsageError
from .field import FieldSpec, gf
from .simplicial import SupportVector, complex_from_maximal, subset_mask
from .subfield import SubfieldCode, build_subfield_code

SCHEMA_VERSION = 1
TRANSFORMS = ("none", "puncture", "complement")


def _subset(text: str, m: int) -> int:
    text = text.strip()
    if text in ("{}", ""):
        return 0
    try:
        coords = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise UsageError(f"bad subset {text!r}") from None
    return subset_mask(coords, m)


def parse_part(spec: str, m: int) -> tuple[int, ...]:
    """Masks of the vectors in one part, sorted."""
    spec = spec.strip()
    if spec.startswith("vectors:"):
        masks = set()
        for tok in spec[len("vectors:"):].split(","):
            v = SupportVector.from_string(tok)
            if v.m != m:
                raise UsageError(f"vector {tok!r} has length {v.m}, expected {m}")
            masks.add(v.bits)
        return tuple(sorted(masks))
    if spec.startswith("facets:"):
        facets = [_subset(f, m) for f in spec[len("facets:"):].split("|")]
        return complex_from_maximal(facets, m).members
    return complex_from_maximal([_subset(spec, m)], m).members


@dataclass
class Recipe:
    n: int
    m: int
    parts: list[str]
    transform: str = "none"
    subfield: bool = False
    modulus: int | None = None
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self):
        if self.schema_version != SCHEMA_VERSION:
            raise UsageError(f"unsupported recipe schema_version {self.schema_version}")
        if self.transform not in TRANSFORMS:
            raise UsageError(f"transform must be one of {TRANSFORMS}, got {self.transform!r}")
        if not isinstance(self.m, int) or self.m < 1:
            raise UsageError(f"m must be a positive integer, got {self.m!r}")
        if len(self.parts) != self.n:
            raise UsageError(f"need exactly n = {self.n} parts, got {len(self.parts)}")

    @property
    def field(self) -> FieldSpec:
        try:
            return gf(self.n, self.modulus)
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    def text(self) -> str:
        body = " | ".join(self.parts)
        extra = " subfield" if self.subfield else ""
        return f"n={self.n} m={self.m} parts[{body}] transform={self.transform}{extra}"

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["modulus"] is None:
            del d["modulus"]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> Recipe:
        d = dict(d)
        if "field" in d:  # {"field": {"n": 3, "modulus": 11}}
            fld = d.pop("field")
            d.setdefault("n", fld.get("n"))
            if fld.get("modulus") is not None:
                d.setdefault("modulus", fld["modulus"])
        known = {"n", "m", "parts", "transform", "subfield", "modulus", "schema_version"}
        unknown = set(d) - known
        if unknown:
            raise UsageError(f"unknown recipe keys: {sorted(unknown)}")
        missing = {"n", "m", "parts"} - set(d)
        if missing:
            raise UsageError(f"recipe is missing {sorted(missing)}")
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> Recipe:
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise UsageError(f"recipe is not valid JSON: {exc}") from None


@dataclass
class Built:
    recipe: Recipe
    base: DefiningSet
    defining_set: DefiningSet
    code: LinearCode
    subfield: SubfieldCode | None = None
    notes: list[str] = dc_field(default_factory=list)


def defining_set(recipe: Recipe) -> tuple[DefiningSet, DefiningSet]:
    """(parts-built D, D after the transform)."""
    F = recipe.field
    parts = [parse_part(p, recipe.m) for p in recipe.parts]
    if any(not p for p in parts):
        raise UsageError("defining-set parts must be nonempty")
    D = defining_set_from_parts(parts, F, recipe.m)
    if recipe.transform == "puncture":
        return D, puncture(D)
    if recipe.transform == "complement":
        return D, complement(D)
    return D, D


def build(recipe: Recipe, verify: bool = True, budget: int = MESSAGE_BUDGET) -> Built:
    base, D = defining_set(recipe)
    if len(D) == 0:
        raise UsageError(f"the {recipe.transform} defining set is empty")
    code = build_code(D, budget)
    sub = build_subfield_code(D, verify=verify, budget=budget) if recipe.subfield else None
    return Built(recipe, base, D, code, sub)
