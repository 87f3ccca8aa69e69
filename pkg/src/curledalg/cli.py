"""Command-line front end.

Subcommands: check a single algebra file, print expansion coefficients,
run the engine selfcheck, differentially verify the decider trio over
enumerated table spaces, and export per-type classification counts.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
from fractions import Fraction

from .algebra import CurledTable, CurledType, is_curled_bruteforce, is_curled_symbolic
from .conditions import condition_report
from .field import GF, RATIONALS, FieldDescriptor, FieldElement
from .formal import FormalWord
from .ledger import LEDGER_ROWS, LEDGER_WORD_ORDER, computed_vectors
from .oracle import (
    BudgetExceededError,
    differential_test,
    classify_counts,
    is_ec_bruteforce,
    is_ec_polynomial,
    is_zeropotent_bruteforce,
)
from .selfcheck import run_all

SCHEMA_VERSION = 1
PRODUCT_KEYS = ("ef", "eg", "fe", "fg", "ge", "gf")
_FRACTION_RE = re.compile(r"^(-?\d+)/(\d+)$")


class AlgebraFileError(ValueError):
    """Structurally malformed algebra file (exit code 2)."""


class FieldValidationError(ValueError):
    """Field or scalar literal invalid for the declared field (exit code 3)."""


def _parse_scalar(raw, desc: FieldDescriptor) -> FieldElement:
    if isinstance(raw, bool):
        raise FieldValidationError(f"scalar literal {raw!r} is not a number")
    if isinstance(raw, int):
        return desc.from_int(raw)
    if isinstance(raw, str) and desc.kind == "rational":
        match = _FRACTION_RE.match(raw.strip())
        if match:
            num, den = int(match.group(1)), int(match.group(2))
            if den == 0:
                raise FieldValidationError(f"zero denominator in {raw!r}")
            return desc.from_fraction(num, den)
        raise FieldValidationError(f"bad rational literal {raw!r}")
    raise FieldValidationError(f"scalar literal {raw!r} invalid for {desc!r}")


def _scalar_literal(value: FieldElement):
    if isinstance(value.value, Fraction):
        frac = value.value
        return int(frac) if frac.denominator == 1 else f"{frac.numerator}/{frac.denominator}"
    return int(value.value)


def parse_algebra_dict(doc) -> CurledTable:
    """Validate and build a table from a decoded algebra JSON document."""
    if not isinstance(doc, dict):
        raise AlgebraFileError("top level must be an object")
    for key in ("field", "type", "products"):
        if key not in doc:
            raise AlgebraFileError(f"missing key {key!r}")
    type_raw = doc["type"]
    if (
        not isinstance(type_raw, list)
        or len(type_raw) != 3
        or any(not isinstance(b, int) or isinstance(b, bool) or b not in (0, 1) for b in type_raw)
    ):
        raise AlgebraFileError(f"type must be a list of three bits, got {type_raw!r}")
    products = doc["products"]
    if not isinstance(products, dict) or set(products) != set(PRODUCT_KEYS):
        raise AlgebraFileError(f"products must have exactly the keys {PRODUCT_KEYS}")
    for key in PRODUCT_KEYS:
        if not isinstance(products[key], list) or len(products[key]) != 3:
            raise AlgebraFileError(f"product {key!r} must be a 3-element array")

    field_raw = doc["field"]
    if not isinstance(field_raw, dict) or "kind" not in field_raw:
        raise AlgebraFileError("field must be an object with a kind")
    kind = field_raw["kind"]
    try:
        if kind == "prime":
            desc = GF(field_raw.get("p"))
        elif kind == "rational":
            desc = RATIONALS
        else:
            raise FieldValidationError(f"unknown field kind {kind!r}")
    except ValueError as exc:
        raise FieldValidationError(str(exc)) from exc

    from .algebra import Element

    els = {}
    for key, name in zip(PRODUCT_KEYS, "ABCDEF"):
        coords = tuple(_parse_scalar(raw, desc) for raw in products[key])
        els[name] = Element(coords)
    return CurledTable(desc, CurledType(*type_raw), **els)


def load_algebra_file(path: str) -> CurledTable:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise AlgebraFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise AlgebraFileError(f"invalid JSON in {path}: {exc}") from exc
    return parse_algebra_dict(doc)


def table_to_dict(table: CurledTable) -> dict:
    field = (
        {"kind": "prime", "p": table.desc.p}
        if table.desc.is_prime_field
        else {"kind": "rational"}
    )
    products = {
        key: [_scalar_literal(c) for c in getattr(table, name).coords]
        for key, name in zip(PRODUCT_KEYS, "ABCDEF")
    }
    return {
        "schema_version": SCHEMA_VERSION,
        "field": field,
        "type": list(table.ctype),
        "products": products,
    }


def _check_payload(table: CurledTable) -> dict:
    finite = table.desc.is_prime_field
    report = condition_report(table)
    curled: dict = {"symbolic": is_curled_symbolic(table)}
    if finite:
        curled["bruteforce"] = is_curled_bruteforce(table)
        curled["symbolic_caveat"] = "sufficient only over finite fields"
    ec = {
        "theorem": report.theorem_holds,
        "polynomial": is_ec_polynomial(table),
    }
    if finite:
        ec["bruteforce"] = is_ec_bruteforce(table)
    zp = {"condition": report.zeropotent_holds}
    if finite:
        zp["bruteforce"] = is_zeropotent_bruteforce(table)
    return {
        "schema_version": SCHEMA_VERSION,
        "field": {"kind": "prime", "p": table.desc.p} if finite else {"kind": "rational"},
        "type": list(table.ctype),
        "curled": curled,
        "endo_commutative": ec,
        "zeropotent": zp,
        "conditions": report.to_json_dict(),
    }


def _render_check_text(payload: dict) -> str:
    lines = []
    field = payload["field"]
    lines.append(
        "field: " + (f"GF({field['p']})" if field["kind"] == "prime" else "rationals")
    )
    lines.append("type: ({}, {}, {})".format(*payload["type"]))

    def flag(value: bool) -> str:
        return "true" if value else "false"

    lines.append("curled:")
    curled = payload["curled"]
    if "bruteforce" in curled:
        lines.append(f"  bruteforce: {flag(curled['bruteforce'])}")
        lines.append(
            f"  symbolic ({curled['symbolic_caveat']}): {flag(curled['symbolic'])}"
        )
    else:
        lines.append(f"  symbolic: {flag(curled['symbolic'])}")
    lines.append("endo-commutative:")
    for method in ("bruteforce", "theorem", "polynomial"):
        if method in payload["endo_commutative"]:
            lines.append(f"  {method}: {flag(payload['endo_commutative'][method])}")
    lines.append("zeropotent:")
    for method in ("bruteforce", "condition"):
        if method in payload["zeropotent"]:
            lines.append(f"  {method}: {flag(payload['zeropotent'][method])}")

    conditions = payload["conditions"]
    entries = {**conditions["cond10"], **conditions["cond17"]}
    held = sum(1 for v in entries.values() if v["holds"])
    lines.append(f"conditions 10 and 17: {held}/{len(entries)} hold")
    for label in sorted(entries, key=_label_key):
        v = entries[label]
        if not v["holds"]:
            lines.append(
                f"  {label}: FAIL lhs=({', '.join(map(str, v['lhs']))})"
                f" rhs=({', '.join(map(str, v['rhs']))})"
            )
    zp18 = conditions["zeropotent18"]
    zp_held = sum(1 for v in zp18.values() if v["holds"])
    lines.append(f"condition 18: {zp_held}/{len(zp18)} hold")
    for label in sorted(zp18, key=_label_key):
        v = zp18[label]
        if not v["holds"]:
            lines.append(
                f"  {label}: FAIL lhs=({', '.join(map(str, v['lhs']))})"
                f" rhs=({', '.join(map(str, v['rhs']))})"
            )
    return "\n".join(lines)


def _label_key(label: str):
    major, minor = label.split("-")
    return int(major), int(minor)


def cmd_check(args) -> int:
    try:
        table = load_algebra_file(args.path)
    except AlgebraFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FieldValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    payload = _check_payload(table)
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(_render_check_text(payload))
    return 0


def _expand_row(word_str: str) -> str:
    word = FormalWord.parse(word_str)
    xy2, sq, diff = computed_vectors()
    return "{} : {} | {} | {}".format(
        word_str,
        xy2.coefficient(word).to_str(),
        sq.coefficient(word).to_str(),
        diff.coefficient(word).to_str(),
    )


def cmd_expand(args) -> int:
    if args.all:
        for word_str in LEDGER_WORD_ORDER:
            print(_expand_row(word_str))
        return 0
    try:
        word = FormalWord.parse(args.word)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(_expand_row(str(word)))
    return 0


def cmd_selfcheck(args) -> int:
    results = run_all()
    failures = 0
    for result in results:
        status = "PASS" if result.ok else "FAIL"
        suffix = f": {result.detail}" if result.detail else ""
        print(f"{status} {result.name}{suffix}")
        failures += 0 if result.ok else 1
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 1 if failures else 0


def _parse_types(raw: str):
    if raw == "all":
        from .algebra import ALL_TYPES

        return list(ALL_TYPES)
    parts = raw.split(",")
    if len(parts) != 3:
        raise ValueError(f"types must be 'all' or 'i,j,k', got {raw!r}")
    try:
        bits = [int(part) for part in parts]
        return [CurledType(*bits)]
    except ValueError as exc:
        raise ValueError(f"bad type triple {raw!r}") from exc


def cmd_verify(args) -> int:
    try:
        types = _parse_types(args.types)
        if args.mode == "sample" and args.n < 0:
            raise ValueError("--n must be nonnegative")
        desc = GF(args.field)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    reports = []
    total_mismatches = 0
    try:
        for ctype in types:
            report = differential_test(
                desc,
                ctype,
                mode=args.mode,
                n=args.n if args.mode == "sample" else None,
                seed=args.seed if args.mode == "sample" else None,
                population=args.population,
                workers=args.threads,
            )
            reports.append(report.to_json_dict())
            total_mismatches += report.mismatch_total
    except (BudgetExceededError, OverflowError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    doc = {
        "schema_version": SCHEMA_VERSION,
        "total_mismatches": total_mismatches,
        "reports": reports,
    }
    text = json.dumps(doc, sort_keys=True, indent=2)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    else:
        print(text)
    return 1 if total_mismatches else 0


CSV_COLUMNS = (
    "field",
    "type_i",
    "type_j",
    "type_k",
    "tables",
    "curled",
    "ec_bruteforce",
    "ec_theorem",
    "ec_polynomial",
    "zeropotent_bruteforce",
    "zeropotent_condition",
    "mismatches",
)


def cmd_classify(args) -> int:
    try:
        desc = GF(args.field)
        if args.mode == "sample" and args.n < 0:
            raise ValueError("--n must be nonnegative")
        rows = classify_counts(
            desc,
            mode=args.mode,
            n=args.n if args.mode == "sample" else None,
            seed=args.seed if args.mode == "sample" else None,
            workers=args.threads,
        )
    except (BudgetExceededError, OverflowError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
        try:
            writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS)
            writer.writeheader()
            writer.writerows(rows)
        finally:
            if args.out:
                out.close()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curledalg",
        description="Deciders and verification harness for 3-dimensional curled algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="evaluate every decider on one algebra file")
    p_check.add_argument("path", help="algebra JSON file")
    p_check.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p_check.set_defaults(func=cmd_check)

    p_expand = sub.add_parser("expand", help="print expansion coefficients of formal words")
    group = p_expand.add_mutually_exclusive_group(required=True)
    group.add_argument("--word", help="one word, e.g. e, A, eA, AB or A^2")
    group.add_argument("--all", action="store_true", help="the full coefficient table")
    p_expand.set_defaults(func=cmd_expand)

    p_self = sub.add_parser("selfcheck", help="run the symbolic engine consistency suite")
    p_self.set_defaults(func=cmd_selfcheck)

    def add_sweep_flags(p):
        p.add_argument("--field", type=int, required=True, help="prime field modulus")
        p.add_argument(
            "--mode", choices=("exhaustive", "sample"), default="exhaustive"
        )
        p.add_argument("--n", type=int, default=100000, help="samples per type")
        p.add_argument("--seed", type=int, default=0, help="sampler seed")
        p.add_argument(
            "--threads",
            type=int,
            default=os.cpu_count(),
            help="worker processes (default: all cores)",
        )

    p_verify = sub.add_parser(
        "verify", help="differentially test the decider trio over a table space"
    )
    add_sweep_flags(p_verify)
    p_verify.add_argument("--types", default="all", help="'all' or a triple like 1,0,1")
    p_verify.add_argument("--population", choices=("all", "curled"), default="all")
    p_verify.add_argument("--out", help="write the JSON report here instead of stdout")
    p_verify.set_defaults(func=cmd_verify)

    p_classify = sub.add_parser(
        "classify", help="per-type decider counts as CSV, over all eight types"
    )
    add_sweep_flags(p_classify)
    p_classify.add_argument("--out", help="CSV output path (default: stdout)")
    p_classify.set_defaults(func=cmd_classify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    return args.func(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
