"""Bounds and property checks: Griesmer, Ashikhmin-Barg, exhaustive minimality,
and the complement weight relations."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .code import (
    DefiningSet,
    LinearCode,
    _pack_bits,
    build_code,
    complement,
    message_at,
    puncture,
)
from .errors import UsageError
from .subfield import build_subfield_code

MINIMALITY_BUDGET = 1 << 34


def griesmer_sum(k: int, d: int, q: int) -> int:
    """Sum of ceil(d / q^i) for i = 0 .. k-1."""
    if k < 1 or d < 1 or q < 2:
        raise UsageError(f"griesmer_sum needs k >= 1, d >= 1, q >= 2 (got {k}, {d}, {q})")
    return sum(-(-d // q**i) for i in range(k))


def _kd(code: LinearCode) -> tuple[int, int]:
    if code.dimension == 0:
        raise UsageError("bounds are undefined for the zero code")
    return code.dimension, code.min_distance


def is_griesmer(code: LinearCode) -> bool:
    k, d = _kd(code)
    return griesmer_sum(k, d, code.q) == code.length


def distance_optimal_by_griesmer(code: LinearCode) -> bool:
    """True certifies distance optimality; False only means 'not certified'."""
    k, d = _kd(code)
    return griesmer_sum(k, d + 1, code.q) > code.length


def ashikhmin_barg(code: LinearCode) -> bool:
    """wmin / wmax > (q-1)/q, compared as integers."""
    nz = code.distribution.nonzero_weights
    if not nz:
        raise UsageError("Ashikhmin-Barg is undefined for the zero code")
    return code.q * nz[0] > (code.q - 1) * nz[-1]


def is_minimal_exhaustive(code: LinearCode, budget: int = MINIMALITY_BUDGET) -> bool | None:
    """Check every pair of nonzero codewords for a proper cover.

    Returns None (skipped) when |C|^2 * length exceeds ``budget``.  Codewords are
    first reduced to one representative per scalar class, so any cover between
    two distinct representatives is a witness of non-minimality.
    """
    count = code.q ** code.dimension
    if count * count * code.length > budget:
        return None
    words = code.codewords()
    nonzero = words[np.any(words != 0, axis=1)]
    if len(nonzero) == 0:
        return True
    f = code.field
    lead = nonzero[np.arange(len(nonzero)), np.argmax(nonzero != 0, axis=1)]
    reps = np.unique(f.mul_table[f.inv_table[lead][:, None], nonzero], axis=0)
    supports = _pack_bits(reps != 0)
    for i in range(len(supports)):
        covered = ~np.any(supports[i] & ~supports, axis=1)
        covered[i] = False
        if covered.any():
            return False
    return True


def minimality(code: LinearCode, budget: int = MINIMALITY_BUDGET) -> tuple[bool | None, str]:
    """Best available minimality verdict and how it was obtained."""
    if ashikhmin_barg(code):
        return True, "ashikhmin-barg"
    verdict = is_minimal_exhaustive(code, budget)
    return verdict, "exhaustive" if verdict is not None else "skipped"


# ---------------------------------------------------------------------------
# weight relations between D* and D^c


@dataclass(frozen=True)
class RelationCheck:
    holds: bool
    messages: int
    counterexample: tuple | None = None
    detail: str = ""

    def __bool__(self):
        return self.holds


def _weights_or_zero(code: LinearCode | None, size: int) -> np.ndarray:
    if code is None:
        return np.zeros(size, dtype=np.int64)
    return code.message_weights


def compare_relation(w_c: np.ndarray, w_star: np.ndarray, total: int, q: int, k: int) -> RelationCheck:
    """Check w_c + w_star == total for every nonzero message and 0 at the zero message."""
    rhs = np.full(len(w_c), total, dtype=np.int64)
    rhs[0] = 0
    bad = np.flatnonzero(w_c + w_star != rhs)
    if len(bad):
        i = int(bad[0])
        msg = message_at(i, q, k)
        return RelationCheck(False, len(w_c), msg,
                             f"message {msg}: {int(w_c[i])} + {int(w_star[i])} != {int(rhs[i])}")
    return RelationCheck(True, len(w_c))


def check_weight_relation(D: DefiningSet, star: LinearCode | None = None,
                          comp: LinearCode | None = None) -> RelationCheck:
    """wt(c_{D^c}(v)) + wt(c_{D*}(v)) = (q-1) q^(m-1) (1 - delta_{0,v}) for all v."""
    if D.kind != "parts":
        raise UsageError("check_weight_relation needs a parts-built defining set")
    q, m = D.field.q, D.m
    if star is None:
        Dstar = puncture(D)
        star = build_code(Dstar) if len(Dstar) else None
    if comp is None:
        Dc = complement(D)
        comp = build_code(Dc) if len(Dc) else None
    size = q ** m
    return compare_relation(_weights_or_zero(comp, size), _weights_or_zero(star, size),
                            (q - 1) * q ** (m - 1), q, m)


def check_subfield_weight_relation(D: DefiningSet, star: LinearCode | None = None,
                                   comp: LinearCode | None = None) -> RelationCheck:
    """Binary analogue: the right side is 2^(nm-1) (1 - delta) over all (F_2^m)^n messages."""
    if D.kind != "parts":
        raise UsageError("check_subfield_weight_relation needs a parts-built defining set")
    nm = D.field.n * D.m
    if star is None:
        Dstar = puncture(D)
        star = build_subfield_code(Dstar).code if len(Dstar) else None
    if comp is None:
        Dc = complement(D)
        comp = build_subfield_code(Dc).code if len(Dc) else None
    size = 1 << nm
    return compare_relation(_weights_or_zero(comp, size), _weights_or_zero(star, size),
                            1 << (nm - 1), 2, nm)


# ---------------------------------------------------------------------------
# reports


@dataclass
class CodeReport:
    field_n: int
    modulus: int
    m: int | None
    recipe: str
    q: int
    length: int
    dimension: int
    distance: int | None
    weights: list[dict]
    is_griesmer: bool | None
    distance_optimal_griesmer: bool | None
    ashikhmin_barg: bool | None
    minimal_exhaustive: bool | None
    weight_relation_holds: bool | None = None
    parent_ref: str | None = None
    notes: list[str] = dc_field(default_factory=list)

    @property
    def parameters(self) -> tuple[int, int, int | None]:
        return self.length, self.dimension, self.distance

    def to_dict(self) -> dict:
        flags = {
            "griesmer": self.is_griesmer,
            "distance_optimal_griesmer": self.distance_optimal_griesmer,
            "ashikhmin_barg": self.ashikhmin_barg,
            "minimal_exhaustive": self.minimal_exhaustive,
        }
        if self.weight_relation_holds is not None:
            flags["weight_relation"] = self.weight_relation_holds
        out = {
            "field": {"n": self.field_n, "modulus": self.modulus},
            "m": self.m,
            "recipe": self.recipe,
            "length": self.length,
            "dimension": self.dimension,
            "min_distance": self.distance,
            "weights": self.weights,
            "flags": flags,
        }
        if self.parent_ref is not None:
            out["parent_ref"] = self.parent_ref
        if self.notes:
            out["notes"] = self.notes
        return out

    def to_text(self) -> str:
        def yn(x):
            return "skipped" if x is None else ("yes" if x else "no")

        lines = [
            f"code      [{self.length}, {self.dimension}, {self.distance}] over GF({self.q})",
            f"recipe    {self.recipe}",
        ]
        if self.parent_ref:
            lines.append(f"parent    {self.parent_ref}")
        lines.append("weights   " + ", ".join(f"{r['w']}:{r['A']}" for r in self.weights))
        lines.append(f"griesmer  {yn(self.is_griesmer)}")
        lines.append(f"optimal   {yn(self.distance_optimal_griesmer)} (Griesmer-certified)")
        lines.append(f"AB        {yn(self.ashikhmin_barg)}")
        lines.append(f"minimal   {yn(self.minimal_exhaustive)} (exhaustive)")
        if self.weight_relation_holds is not None:
            lines.append(f"relation  {yn(self.weight_relation_holds)}")
        lines.extend(f"note      {n}" for n in self.notes)
        return "\n".join(lines)


def make_report(code: LinearCode, recipe: str = "", m: int | None = None,
                exhaustive: bool = True, weight_relation: bool | None = None,
                parent_ref: str | None = None,
                minimal_budget: int = MINIMALITY_BUDGET) -> CodeReport:
    dist = code.distribution
    if code.dimension == 0:
        griesmer = optimal = ab = minimal = None
        distance = None
    else:
        distance = code.min_distance
        griesmer = is_griesmer(code)
        optimal = distance_optimal_by_griesmer(code)
        ab = ashikhmin_barg(code)
        minimal = is_minimal_exhaustive(code, minimal_budget) if exhaustive else None
        if griesmer and not optimal:
            raise AssertionError("a Griesmer code must be Griesmer-certified optimal")
        if ab and minimal is False:
            raise AssertionError("Ashikhmin-Barg holds but an exhaustive cover was found")
    notes = []
    if optimal is False:
        notes.append("distance optimality not certified by the Griesmer bound")
    return CodeReport(
        field_n=code.field.n,
        modulus=code.field.modulus,
        m=m,
        recipe=recipe or code.label,
        q=code.q,
        length=code.length,
        dimension=code.dimension,
        distance=distance,
        weights=dist.rows(),
        is_griesmer=griesmer,
        distance_optimal_griesmer=optimal,
        ashikhmin_barg=ab,
        minimal_exhaustive=minimal,
        weight_relation_holds=weight_relation,
        parent_ref=parent_ref,
        notes=notes,
    )
