"""Exhaustive (or seeded random) sweeps over simplex-part recipes.

Every instance is a tuple (M_1, ..., M_n) of nonempty subsets of [m] defining
D = Delta_{M_1} + eta Delta_{M_2} + ... over GF(2^n).  Each instance is
scored against the conjectured families below; a mismatch is a finding, not
an error.

    one-weight-equal-parts    C_{D*} with all M_i equal and proper
    weight-relation           wt C_{D^c}(v) + wt C_{D*}(v) = (q-1) q^(m-1) for v != 0
    complement-weights        C_{D^c} with proper M_i and proper union
    subfield-dimension        binary C^(2)_{D*}
    subfield-weight-relation  binary analogue of weight-relation
    subfield-complement       binary C^(2)_{D^c} when some M_i is proper
"""

from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .analysis import (
    check_subfield_weight_relation,
    check_weight_relation,
    MINIMALITY_BUDGET,
    is_griesmer,
    minimality,
)
from .code import LinearCode, build_code, complement, defining_set_from_parts, puncture
from .errors import CapacityError
from .field import gf
from .simplicial import mask_to_subset, popcount, simplex_of
from .subfield import build_subfield_code

DEFAULT_SEED = 20230417
CONJECTURES = (
    "one-weight-equal-parts",
    "weight-relation",
    "complement-weights",
    "subfield-dimension",
    "subfield-weight-relation",
    "subfield-complement",
)
POLICIES = ("exhaustive-subsets", "random-K-subsets")


@dataclass
class SweepReport:
    records: list[dict]
    tallies: dict[str, dict[str, int]]
    skipped: list[dict]
    seed: int
    policy: str
    instances: int

    def counterexamples(self) -> list[dict]:
        return [r for r in self.records if r["verdict"] == "counterexample"]

    def footer(self) -> dict:
        return {
            "summary": True,
            "policy": self.policy,
            "seed": self.seed,
            "instances": self.instances,
            "skipped": self.skipped,
            "tallies": self.tallies,
        }

    def jsonl(self) -> Iterator[str]:
        for r in self.records:
            yield json.dumps(r, sort_keys=True)
        yield json.dumps(self.footer(), sort_keys=True)


def instance_parts(n: int, m: int, max_sum: int | None = None) -> list[tuple[int, ...]]:
    """All n-tuples of nonempty subsets of [m] (as masks), in lexicographic order."""
    subsets = range(1, 1 << m)
    out = []
    for parts in itertools.product(subsets, repeat=n):
        if max_sum is None or sum(popcount(p) for p in parts) <= max_sum:
            out.append(parts)
    return out


def _weights_list(code: LinearCode) -> list[list[int]]:
    A = code.distribution.A
    return [[w, A[w]] for w in sorted(A) if w]


def _params(code: LinearCode | None) -> dict:
    if code is None:
        return {"length": 0, "k": 0, "d": None, "weights": []}
    nz = code.distribution.nonzero_weights
    return {"length": code.length, "k": code.dimension, "d": nz[0] if nz else None,
            "weights": _weights_list(code)}


def _verdict(predicted: dict, measured: dict) -> str:
    undetermined = False
    for key, want in predicted.items():
        if want is None:
            continue
        got = measured.get(key)
        if got is None:
            undetermined = True
        elif got != want:
            return "counterexample"
    return "undetermined" if undetermined else "agree"


def _minimal_if(claim: bool, code: LinearCode, budget: int) -> tuple[bool | None, bool | None]:
    """(predicted, measured) minimality; nothing is measured when nothing is claimed."""
    if not claim:
        return None, None
    return True, minimality(code, budget)[0]


def evaluate_instance(n: int, m: int, parts: Sequence[int], seed: int,
                      minimal_budget: int = MINIMALITY_BUDGET) -> list[dict]:
    """Score one recipe against every conjecture that applies to it."""
    F = gf(n)
    q = F.q
    full = (1 << m) - 1
    s = sum(popcount(p) for p in parts)
    D = defining_set_from_parts([simplex_of(p, m) for p in parts], F)
    Dstar, Dc = puncture(D), complement(D)
    star = build_code(Dstar)
    comp = build_code(Dc) if len(Dc) else None
    sub_star = build_subfield_code(Dstar, verify=False).code
    sub_comp = build_subfield_code(Dc, verify=False).code if len(Dc) else None

    base = {"n": n, "m": m, "parts": [list(mask_to_subset(p)) for p in parts], "seed": seed}
    records = []

    def emit(cid: str, code: LinearCode | None, predicted: dict, measured: dict):
        rec = dict(base, conjecture_id=cid, **_params(code))
        rec["predicted"], rec["measured"] = predicted, measured
        rec["verdict"] = _verdict(predicted, measured)
        records.append(rec)

    all_proper = all(p != full for p in parts)
    union = 0
    for p in parts:
        union |= p

    if len(set(parts)) == 1 and all_proper:
        size = popcount(parts[0])
        pmin, mmin = _minimal_if(True, star, minimal_budget)
        nz = star.distribution.nonzero_weights
        emit("one-weight-equal-parts", star,
             {"length": 2 ** (n * size) - 1, "k": size,
              "weights": [(q - 1) * 2 ** (n * (size - 1))], "griesmer": True,
              "minimal": pmin, "z0": 2 ** (n * (m - size))},
             {"length": star.length, "k": star.dimension, "weights": nz,
              "griesmer": is_griesmer(star), "minimal": mmin,
              "z0": star.distribution.z0})

    rel = check_weight_relation(D, star=star, comp=comp)
    emit("weight-relation", comp, {"holds": True},
         {"holds": rel.holds, "counterexample": rel.counterexample})

    if all_proper and union != full:
        t = star.distribution.num_weights
        claim = s <= n * m - (n + 1)
        pmin, mmin = _minimal_if(claim, comp, minimal_budget)
        emit("complement-weights", comp,
             {"length": 2 ** (n * m) - 2 ** s, "k": m,
              "d": (q - 1) * (2 ** (n * (m - 1)) - 2 ** (s - n)),
              "num_weights": t + 1, "griesmer": True, "minimal": pmin},
             {"length": comp.length, "k": comp.dimension, "d": comp.min_distance,
              "num_weights": comp.distribution.num_weights, "griesmer": is_griesmer(comp),
              "minimal": mmin, "star_num_weights": t})

    sd = sub_star.distribution
    emit("subfield-dimension", sub_star,
         {"length": 2 ** s - 1, "k": s, "griesmer": True, "z0": 2 ** (n * m - s)},
         {"length": sub_star.length, "k": sub_star.dimension, "d": sub_star.min_distance,
          "num_weights": sd.num_weights, "griesmer": is_griesmer(sub_star), "z0": sd.z0})

    srel = check_subfield_weight_relation(D, star=sub_star, comp=sub_comp)
    emit("subfield-weight-relation", sub_comp, {"holds": True},
         {"holds": srel.holds, "counterexample": srel.counterexample})

    if not all(p == full for p in parts):
        claim = s <= n * m - 2
        pmin, mmin = _minimal_if(claim, sub_comp, minimal_budget)
        emit("subfield-complement", sub_comp,
             {"length": 2 ** (n * m) - 2 ** s, "k": n * m,
              "d": 2 ** (n * m - 1) - 2 ** (s - 1), "num_weights": 2,
              "griesmer": True, "minimal": pmin},
             {"length": sub_comp.length, "k": sub_comp.dimension, "d": sub_comp.min_distance,
              "num_weights": sub_comp.distribution.num_weights,
              "griesmer": is_griesmer(sub_comp), "minimal": mmin})
    return records


def _run(task):
    n, m, parts, seed = task
    try:
        return task, evaluate_instance(n, m, parts, seed), None
    except CapacityError as exc:
        return task, [], str(exc)


def conjecture_sweep(n_range: Iterable[int], m_range: Iterable[int],
                     policy: str = "exhaustive-subsets", k: int = 50,
                     seed: int = DEFAULT_SEED, max_sum: int | None = None,
                     workers: int = 1) -> SweepReport:
    """Run every instance in the ranges; ``k`` is the per-(n, m) sample size for random policy."""
    if policy not in POLICIES:
        raise ValueError(f"unknown subset policy {policy!r}; expected one of {POLICIES}")
    rng = random.Random(seed)
    tasks = []
    for n in n_range:
        for m in m_range:
            candidates = instance_parts(n, m, max_sum)
            if policy == "random-K-subsets" and len(candidates) > k:
                candidates = sorted(rng.sample(candidates, k))
            tasks.extend((n, m, parts, seed) for parts in candidates)

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run, tasks, chunksize=8))
    else:
        results = [_run(t) for t in tasks]

    records, skipped = [], []
    tallies = {c: {"checked": 0, "agree": 0, "counterexample": 0, "undetermined": 0}
               for c in CONJECTURES}
    for (n, m, parts, _), recs, err in results:
        if err is not None:
            skipped.append({"n": n, "m": m, "parts": [list(mask_to_subset(p)) for p in parts],
                            "reason": err})
            continue
        for r in recs:
            t = tallies[r["conjecture_id"]]
            t["checked"] += 1
            t[r["verdict"]] += 1
        records.extend(recs)
    return SweepReport(records, tallies, skipped, seed, policy, len(tasks))
