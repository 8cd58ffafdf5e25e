"""Command-line front end.

    simplicial-codes report --field-n 3 --m 4 --parts 1,2 --parts 2,3 --parts 2 --transform puncture
    simplicial-codes verify-paper
    simplicial-codes sweep --n-range 1-2 --m-range 1-3
    simplicial-codes export --field-n 3 --m 2 --parts 1 --parts 2 --parts 2 --target subfield -o g2.txt

Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 budget exceeded,
4 output path not writable.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analysis import check_subfield_weight_relation, check_weight_relation, make_report
from .code import MESSAGE_BUDGET, matrix_text
from .errors import CapacityError, UsageError
from .golden import load_manifest, verify_manifest
from .recipe import TRANSFORMS, Recipe, build
from .sweep import DEFAULT_SEED, POLICIES, conjecture_sweep

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_BUDGET, EXIT_PATH = 0, 1, 2, 3, 4


class OutputError(Exception):
    pass


def parse_range(text: str, lo: int, hi: int, name: str) -> list[int]:
    """'3', '1-4' or '1,2,4'; an empty string (or a reversed span) is an empty range."""
    text = text.strip()
    if not text:
        return []
    out = []
    try:
        for tok in text.split(","):
            if "-" in tok:
                a, b = (int(x) for x in tok.split("-", 1))
                out.extend(range(a, b + 1))
            else:
                out.append(int(tok))
    except ValueError:
        raise UsageError(f"bad {name} range {text!r}") from None
    bad = [x for x in out if not lo <= x <= hi]
    if bad:
        raise UsageError(f"{name} values {bad} outside {lo}..{hi}")
    return sorted(set(out))


def _recipe_from_args(args) -> Recipe:
    if args.recipe:
        try:
            text = Path(args.recipe).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read recipe: {exc}") from None
        return Recipe.from_json(text)
    if args.field_n is None or args.m is None or not args.parts:
        raise UsageError("give --recipe FILE, or --field-n, --m and one --parts per field coordinate")
    return Recipe(n=args.field_n, m=args.m, parts=list(args.parts), transform=args.transform,
                  subfield=args.subfield, modulus=args.modulus)


def _write(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from None


def cmd_report(args) -> int:
    recipe = _recipe_from_args(args)
    built = build(recipe, budget=args.budget)
    relation = None
    sub_relation = None
    if recipe.transform != "none":
        relation = check_weight_relation(built.base).holds
        if recipe.subfield:
            sub_relation = check_subfield_weight_relation(built.base).holds
    parent = make_report(built.code, recipe=recipe.text(), m=recipe.m, weight_relation=relation)
    doc = {"recipe": recipe.to_dict(), "code": parent.to_dict()}
    texts = [parent.to_text()]
    if built.subfield is not None:
        sub = make_report(built.subfield.code, recipe=recipe.text(), m=recipe.m,
                          weight_relation=sub_relation, parent_ref=str(built.code))
        doc["subfield"] = sub.to_dict()
        texts.append(sub.to_text())
    if args.format == "json":
        _write(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.output)
    else:
        _write("\n\n".join(texts) + "\n", args.output)
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    try:
        manifest = load_manifest(args.manifest)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot load manifest: {exc}") from None
    results = verify_manifest(manifest)
    if not results:
        print("warning: manifest has no cases", file=sys.stderr)
    failed = [r for r in results if r.fails_build]
    if args.format == "json":
        doc = [{"id": r.id, "kind": r.kind, "passed": r.passed, "mismatches": r.mismatches}
               for r in results]
        _write(json.dumps(doc, indent=2) + "\n", args.output)
    else:
        lines = [r.line() for r in results]
        passed = sum(r.passed for r in results)
        lines.append(f"{passed}/{len(results)} cases match; {len(failed)} failing")
        _write("\n".join(lines) + "\n", args.output)
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_sweep(args) -> int:
    n_range = parse_range(args.n_range, 1, 8, "n")
    m_range = parse_range(args.m_range, 1, 16, "m")
    report = conjecture_sweep(n_range, m_range, policy=args.policy, k=args.k, seed=args.seed,
                              max_sum=args.max_sum, workers=args.workers)
    _write("".join(line + "\n" for line in report.jsonl()), args.output)
    return EXIT_OK


def cmd_export(args) -> int:
    recipe = _recipe_from_args(args)
    if args.target == "subfield":
        recipe.subfield = True
    built = build(recipe, verify=False, budget=args.budget)
    if args.target == "subfield":
        text = matrix_text(built.subfield.gen_matrix_2, built.subfield.code.field)
    else:
        text = matrix_text(built.code.gen_matrix, built.code.field)
    _write(text, args.output)
    return EXIT_OK


def _recipe_flags(p: argparse.ArgumentParser):
    p.add_argument("--recipe", help="JSON recipe file (overrides the flags below)")
    p.add_argument("--field-n", type=int, help="extension degree n of GF(2^n)")
    p.add_argument("--modulus", type=int, help="defining polynomial as an integer bitmask")
    p.add_argument("--m", type=int, help="ambient dimension m")
    p.add_argument("--parts", action="append",
                   help="one subset spec per part: '1,2', '{}', 'facets:1,2|2,3' or 'vectors:110,011'")
    p.add_argument("--transform", choices=TRANSFORMS, default="none")
    p.add_argument("--subfield", action="store_true", help="also build the binary subfield code")
    p.add_argument("--budget", type=int, default=MESSAGE_BUDGET,
                   help="maximum number of messages to enumerate")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="simplicial-codes",
                                     description="Codes over GF(2^n) from simplicial complexes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", help="parameters, weight distribution and flags of one code")
    _recipe_flags(p)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("verify-paper", help="check the bundled worked examples")
    p.add_argument("--manifest", help="alternative manifest file")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("sweep", help="score conjectured families over many recipes (JSON lines)")
    p.add_argument("--n-range", default="1-2")
    p.add_argument("--m-range", default="1-3")
    p.add_argument("--policy", choices=POLICIES, default="exhaustive-subsets")
    p.add_argument("--k", type=int, default=50, help="sample size per (n, m) for random-K-subsets")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--max-sum", type=int, help="skip recipes with sum |M_j| above this")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("export", help="write a generator matrix as plain text")
    _recipe_flags(p)
    p.add_argument("--target", choices=("parent", "subfield"), default="parent")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OutputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PATH


if __name__ == "__main__":
    sys.exit(main())
