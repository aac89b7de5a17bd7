"""Command-line front end.

Subcommands: info, check, eval, congruent, enumerate, selftest.  Exit codes:
0 success (verdicts are payload, never exit codes), 2 input error, 3 resource
cap exceeded, 4 internal invariant or selftest failure.  JSON output is
canonical: identical inputs and seed produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import GstarError, InternalCheckError, ParseError, ResourceCapError
from .freealg import format_poly, multihomogeneous_components, parse_poly
from .freealg import evaluate as evaluate_poly
from .gradings import Grading, grading_from_json
from .identities import (
    basis_reduce,
    congruent_mod_neutral,
    derivation_mod_neutral,
    enumerate_monomial_identities,
    is_monomial_identity,
    word_monomial,
    word_to_strings,
)
from .rings import parse_field
from .selftest import run_selftest

SCHEMA = "gstar-report/1"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_INTERNAL = 4


@dataclass
class RunConfig:
    """Common run options shared by every subcommand."""

    config: Path
    field: object
    max_deg: int | None
    minimal: bool
    json_out: bool
    seed: int

    def load_grading(self) -> Grading:
        with open(self.config, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
        return grading_from_json(obj)


def _emit(payload: dict, cfg: RunConfig, out) -> None:
    if cfg.json_out:
        print(json.dumps(payload, sort_keys=True, indent=2), file=out)
    else:
        _print_text(payload, out)


def _print_text(payload: dict, out, indent: int = 0) -> None:
    pad = "  " * indent
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, dict):
            print(f"{pad}{key}:", file=out)
            _print_text(value, out, indent + 1)
        elif isinstance(value, list):
            print(f"{pad}{key}:", file=out)
            for item in value:
                if isinstance(item, dict):
                    print(f"{pad}  -", file=out)
                    _print_text(item, out, indent + 2)
                else:
                    print(f"{pad}  {item}", file=out)
        else:
            print(f"{pad}{key}: {value}", file=out)


def cmd_info(cfg, args, out) -> int:
    grading = cfg.load_grading()
    group = grading.group
    support = grading.support_sorted()
    payload = {
        "schema": SCHEMA,
        "command": "info",
        "group": {"order": group.order, "elements": list(group.names)},
        "tuple": [group.name_of(g) for g in grading.defining_tuple],
        "n": grading.n,
        "support": [group.name_of(g) for g in support],
        "off_support": [group.name_of(g) for g in grading.off_support()],
        "hats": [
            {
                "element": group.name_of(g),
                "d_set": sorted(grading.d_set(g)),
                "im_set": sorted(grading.im_set(g)),
                "map": {str(i): j for i, j in sorted(grading.hat(g).as_dict().items())},
            }
            for g in support
        ],
    }
    _emit(payload, cfg, out)
    return EXIT_OK


def cmd_check(cfg, args, out) -> int:
    grading = cfg.load_grading()
    field = cfg.field
    poly = parse_poly(args.expression, grading.group, field)
    components = multihomogeneous_components(poly)
    comp_reports = []
    overall = True
    certified = True
    for comp in components:
        red = basis_reduce(comp, grading, field)
        overall = overall and red.is_identity
        if red.is_identity:
            certified = certified and red.fully_certified
        entry = red.to_json(grading.group)
        entry["component"] = format_poly(comp, grading.group)
        comp_reports.append(entry)
    payload = {
        "schema": SCHEMA,
        "command": "check",
        "expression": format_poly(poly, grading.group),
        "coefficients": field.name,
        "identity": overall,
        "fully_certified": overall and certified,
        "components": comp_reports,
    }
    _emit(payload, cfg, out)
    return EXIT_OK


def cmd_eval(cfg, args, out) -> int:
    grading = cfg.load_grading()
    field = cfg.field
    poly = parse_poly(args.expression, grading.group, field)
    matrix = evaluate_poly(poly, grading, field)
    payload = {
        "schema": SCHEMA,
        "command": "eval",
        "expression": format_poly(poly, grading.group),
        "coefficients": field.name,
        "n": grading.n,
        "zero": matrix.is_zero,
        "entries": [
            {"row": r, "col": c, "value": p.render()} for (r, c), p in matrix.nonzero_items()
        ],
    }
    _emit(payload, cfg, out)
    return EXIT_OK


def _single_monomial(text: str, grading: Grading, field):
    poly = parse_poly(text, grading.group, field)
    terms = poly.terms_sorted()
    if len(terms) != 1 or terms[0][1] != field.one:
        raise ParseError(f"expected a single monic monomial, got {text!r}", 0)
    return terms[0][0]


def cmd_congruent(cfg, args, out) -> int:
    grading = cfg.load_grading()
    field = cfg.field
    m1 = _single_monomial(args.first, grading, field)
    m2 = _single_monomial(args.second, grading, field)
    v1 = is_monomial_identity(m1, grading)
    v2 = is_monomial_identity(m2, grading)
    payload: dict = {
        "schema": SCHEMA,
        "command": "congruent",
        "first": m1.render(grading.group),
        "second": m2.render(grading.group),
    }
    if v1.is_identity or v2.is_identity:
        payload["congruent"] = None
        payload["note"] = "congruence is only defined for non-identity monomials"
        _emit(payload, cfg, out)
        return EXIT_OK
    flag = congruent_mod_neutral(m1, m2, grading, field)
    payload["congruent"] = flag
    if flag:
        chain = derivation_mod_neutral(m1, m2, grading)
        payload["derivation"] = (
            [step.to_json(grading.group) for step in chain] if chain is not None else None
        )
        if chain is None:
            payload["note"] = "no certificate within the depth cap; inconclusive"
    _emit(payload, cfg, out)
    return EXIT_OK


def cmd_enumerate(cfg, args, out) -> int:
    grading = cfg.load_grading()
    max_deg = cfg.max_deg if cfg.max_deg is not None else 2 * grading.n - 1
    words = enumerate_monomial_identities(grading, max_deg, minimal_only=cfg.minimal)
    group = grading.group
    payload = {
        "schema": SCHEMA,
        "command": "enumerate",
        "max_degree": max_deg,
        "minimal_only": cfg.minimal,
        "count": len(words),
        "max_identity_degree": max((len(w) for w in words), default=0),
        "words": [word_to_strings(w, group) for w in words],
        "monomials": [word_monomial(w).render(group) for w in words],
    }
    _emit(payload, cfg, out)
    return EXIT_OK


def cmd_selftest(cfg, args, out) -> int:
    grading = cfg.load_grading()
    report = run_selftest(grading, cfg.field, seed=cfg.seed)
    payload = {"schema": SCHEMA, "command": "selftest", **report.to_json()}
    _emit(payload, cfg, out)
    return EXIT_OK if report.passed else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gstar",
        description="Decide and certify graded polynomial identities of matrix "
        "algebras with the transpose involution.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", type=Path, required=True, help="grading config JSON")
        p.add_argument("--coeff", default="q", help="coefficient ring: q or modp:P")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("--seed", type=int, default=1, help="seed for randomized suites")

    p = sub.add_parser("info", help="describe the grading: support, patterns")
    common(p)
    p.set_defaults(handler=cmd_info)

    p = sub.add_parser("check", help="identity test with a basis certificate")
    common(p)
    p.add_argument("expression")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("eval", help="print the generic evaluation of an expression")
    common(p)
    p.add_argument("expression")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("congruent", help="congruence of two monomials, with derivation")
    common(p)
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(handler=cmd_congruent)

    p = sub.add_parser("enumerate", help="monomial identities up to a degree")
    common(p)
    p.add_argument("--max-deg", type=int, default=None, help="degree bound (default 2n-1)")
    p.add_argument("--minimal", action="store_true", help="only subword-minimal words")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("selftest", help="run every module's invariant suite")
    common(p)
    p.set_defaults(handler=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        field = parse_field(args.coeff)
    except GstarError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    cfg = RunConfig(
        config=args.config,
        field=field,
        max_deg=getattr(args, "max_deg", None),
        minimal=getattr(args, "minimal", False),
        json_out=args.json,
        seed=args.seed,
    )
    try:
        return args.handler(cfg, args, sys.stdout)
    except ResourceCapError as err:
        print(f"resource cap: {err}", file=sys.stderr)
        return EXIT_RESOURCE
    except InternalCheckError as err:
        print(f"internal check failed: {err}", file=sys.stderr)
        return EXIT_INTERNAL
    except (GstarError, OSError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
