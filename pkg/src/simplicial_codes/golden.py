"""The bundled manifest of worked examples and a runner that checks each one.

Case kinds:
    proved               a mismatch fails verification
    conjecture           reported, never fails
    source-inconsistent  the printed values contradict their own inputs; reported, never fails
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path

import numpy as np

from .analysis import make_report
from .field import gf
from .recipe import Recipe, build, defining_set
from .subfield import subfield_defining_set, subfield_generator

FAILING_KINDS = ("proved",)


@dataclass
class CaseResult:
    id: str
    kind: str
    passed: bool
    mismatches: list[str] = dc_field(default_factory=list)
    seconds: float = 0.0

    @property
    def fails_build(self) -> bool:
        return not self.passed and self.kind in FAILING_KINDS

    def line(self) -> str:
        verdict = "PASS" if self.passed else ("FAIL" if self.fails_build else "MISMATCH")
        tail = "; ".join(self.mismatches)
        return f"{verdict:8} {self.id} [{self.kind}] {self.seconds * 1000:.0f} ms" + (f"  {tail}" if tail else "")


def load_manifest(path: str | Path | None = None) -> dict:
    if path is None:
        text = resources.files(__package__).joinpath("data/golden.json").read_text()
    else:
        text = Path(path).read_text()
    return json.loads(text)


def _compare(label: str, want, got, out: list[str]):
    if want != got:
        out.append(f"{label}: expected {want}, got {got}")


def _check_code(case: dict, out: list[str]):
    built = build(Recipe.from_dict(case["recipe"]), verify=True)
    code = built.subfield.code if case.get("target") == "subfield" else built.code
    report = make_report(code)
    exp = case["expected"]
    for key, got in (("length", code.length), ("dimension", code.dimension),
                     ("distance", report.distance)):
        if key in exp:
            _compare(key, exp[key], got, out)
    A = code.distribution.A
    nonzero = sorted(w for w in A if w)
    if "weights" in exp:
        _compare("weights", exp["weights"], nonzero, out)
    if "counts" in exp:
        _compare("counts", {int(w): c for w, c in exp["counts"].items()},
                 {w: A[w] for w in nonzero}, out)
    flags = report.to_dict()["flags"]
    for name, want in exp.get("flags", {}).items():
        _compare(f"flag {name}", want, flags.get(name), out)


def _check_matrix(case: dict, out: list[str]):
    spec = case["matrix"]
    F = gf(spec["n"], spec.get("modulus"))
    G2 = subfield_generator(np.asarray(spec["rows"], dtype=np.uint8), F)
    _compare("binary_rows", case["expected"]["binary_rows"], G2.tolist(), out)


def _check_binary_set(case: dict, out: list[str]):
    D, _ = defining_set(Recipe.from_dict(case["recipe"]))
    got = sorted(map(list, subfield_defining_set(D).tolist()))
    _compare("binary_set", sorted(case["expected"]["binary_set"]), got, out)


def run_case(case: dict) -> CaseResult:
    t = time.perf_counter()
    out: list[str] = []
    if "matrix" in case:
        _check_matrix(case, out)
    elif "binary_set" in case.get("expected", {}):
        _check_binary_set(case, out)
    else:
        _check_code(case, out)
    return CaseResult(case["id"], case.get("kind", "proved"), not out, out,
                      time.perf_counter() - t)


def verify_manifest(manifest: dict) -> list[CaseResult]:
    return [run_case(c) for c in manifest.get("cases", [])]
