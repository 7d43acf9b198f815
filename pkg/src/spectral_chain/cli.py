"""Command-line entry point: JSON in, JSON (or SVG) out.

Exit status: 0 on success, 1 on a domain error (error JSON on stderr),
2 on a usage error or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Sequence, TextIO

from . import __version__
from .catalog import catalog_entries, find_entry, run_catalog_validation
from .chain import chain_report, classify_point, drazin, point_spectrum_region, rational_eigenvalues
from .engine import SpectraProfile, apply_rules, derived_kinds, verify_all
from .engine.profile import SCHEMA
from .errors import ERROR_CODES, IncompleteFactorization, InvalidInput, SpectralChainError
from .linalg import ExactMatrix
from .region import (
    SpectralRegion,
    accumulation,
    boundary,
    check_pocetna,
    connected_hull,
    difference,
    interior,
    intersection,
    isolated_points,
    subset,
    union,
)
from .region.svg import render_svg
from .scalar import ExactScalar

CLI_ERROR_CODES = {
    "MALFORMED_JSON": "Input is not valid JSON.",
    "USAGE_ERROR": "Bad command line or unreadable input file.",
}


class UsageError(Exception):
    def __init__(self, code: str, message: str) -> None:
        super().__init__(message)
        self.code = code
        self.message = message


def error_codes() -> dict[str, str]:
    """Every error code the command line can emit, with a one-line meaning."""
    return dict(sorted({**ERROR_CODES, **CLI_ERROR_CODES}.items()))


def _dump(obj: object) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _read_json(path: str, stdin: TextIO) -> object:
    try:
        text = stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError("USAGE_ERROR", f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError("MALFORMED_JSON", f"{path}: {exc.msg} at line {exc.lineno}") from None


def _matrix(args, stdin) -> ExactMatrix:
    return ExactMatrix.from_json(_read_json(args.input, stdin))


def _region(path: str, stdin) -> SpectralRegion:
    return SpectralRegion.from_json(_read_json(path, stdin))


def _envelope(command: str, body: dict) -> dict:
    return {"schema": SCHEMA, "command": command, **body}


# ---------------------------------------------------------------- commands


def cmd_invariants(args, stdin):
    return _envelope("invariants", chain_report(_matrix(args, stdin)).to_json())


def cmd_drazin(args, stdin):
    return _envelope("drazin", drazin(_matrix(args, stdin)).to_json())


def cmd_classify(args, stdin):
    lam = ExactScalar.parse(args.lam)
    return _envelope("classify", classify_point(_matrix(args, stdin), lam).to_json())


def cmd_spectrum(args, stdin):
    m = _matrix(args, stdin)
    rep = rational_eigenvalues(m)
    body = rep.to_json()
    body["points"] = [classify_point(m, v).to_json() for v in rep.values()]
    if rep.complete:
        body["region"] = point_spectrum_region(m).to_json()
    elif args.strict:
        raise IncompleteFactorization(
            "characteristic polynomial does not split over the Gaussian rationals",
            found=sum(k for _, k in rep.eigenvalues),
            dim=m.rows,
        )
    return _envelope("spectrum", body)


UNARY: dict[str, Callable] = {
    "canonical": lambda r: r,
    "boundary": boundary,
    "interior": interior,
    "acc": accumulation,
    "iso": isolated_points,
    "hull": connected_hull,
}


def _binary(op2: str, a: SpectralRegion, b: SpectralRegion) -> dict:
    if op2 == "union":
        return {"result": union(a, b).to_json()}
    if op2 == "intersect":
        return {"result": intersection(a, b).to_json()}
    if op2 == "subset":
        return {"result": subset(a, b)}
    if op2 == "diff":
        d = difference(a, b)
        return {"result": d.to_json(), "closed": isinstance(d, SpectralRegion)}
    return {"result": check_pocetna(a, b).to_json()}


def cmd_region(args, stdin):
    r = _region(args.input, stdin)
    body: dict = {"input": r.to_json()}
    current: object = r
    if args.op:
        current = UNARY[args.op](r)
        body["op"] = args.op
        body["result"] = current.to_json()
    if args.other is not None:
        if not args.op2:
            raise UsageError("USAGE_ERROR", "--other needs --op2")
        if not isinstance(current, SpectralRegion):
            raise UsageError("USAGE_ERROR", f"--op {args.op} does not produce a closed region for --op2")
        other = _region(args.other, stdin)
        body["other"] = other.to_json()
        body["op2"] = args.op2
        body["binary"] = _binary(args.op2, current, other)
    elif args.op2:
        raise UsageError("USAGE_ERROR", "--op2 needs --other")
    if not args.op and args.other is None:
        body["result"] = r.to_json()
    return _envelope("region", body)


def cmd_derive(args, stdin):
    strict = not args.lenient
    given = SpectraProfile.from_json(_read_json(args.profile, stdin), strict=strict)
    prof = apply_rules(given, strict=strict)
    body: dict = {
        "operator": prof.operator_name,
        "profile": prof.to_json(),
        "derived": [
            {"kind": str(k), "rule": prof.provenance[k].rule, "inputs": list(prof.provenance[k].inputs)}
            for k in derived_kinds(prof)
        ],
    }
    if args.verify:
        body["verification"] = verify_all(prof, args.verify)
        eta = body["verification"].get("eta", {})
        body["common_hull"] = eta.get("common_hull")
    return _envelope("derive", body)


def cmd_catalog(args, stdin):
    if args.action == "list":
        return _envelope(
            "catalog",
            {
                "entries": [
                    {"name": e.name, "description": e.description, "kind": "memberships" if e.is_membership_entry else "profile"}
                    for e in catalog_entries()
                ]
            },
        )
    if args.action == "validate":
        report = run_catalog_validation()
        return _envelope("catalog", report.to_json()), (0 if report.passed else 1)
    if not args.name:
        raise UsageError("USAGE_ERROR", "catalog show needs an entry name")
    return _envelope("catalog", {"entry": find_entry(args.name).to_json()})


def cmd_render_svg(args, stdin):
    return render_svg(_region(args.input, stdin))


def cmd_errors(args, stdin):
    return _envelope("errors", {"codes": error_codes()})


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spectral-chain", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text, takes_input=True):
        p = sub.add_parser(name, help=help_text)
        if takes_input:
            p.add_argument("input", help="JSON input file, or - for stdin")
        p.add_argument("-o", "--output", help="write the result here instead of stdout")
        p.set_defaults(func=func)
        return p

    add("invariants", cmd_invariants, "chain dimensions, ascent, descent and Drazin index of a matrix")
    add("drazin", cmd_drazin, "Drazin inverse with its core-nilpotent split")
    p = add("classify", cmd_classify, "classify one point λ against a matrix")
    p.add_argument("--lambda", dest="lam", required=True, help='complex point as "a/b,c/d"')
    p = add("spectrum", cmd_spectrum, "eigenvalues over the Gaussian rationals with pole orders")
    p.add_argument("--strict", action="store_true", help="fail when the characteristic polynomial does not split")
    p = add("region", cmd_region, "region calculus")
    p.add_argument("--op", choices=sorted(UNARY), help="unary operation on the input region")
    p.add_argument("--other", help="second region file")
    p.add_argument("--op2", choices=["diff", "intersect", "pocetna", "subset", "union"], help="binary operation")
    p = add("derive", cmd_derive, "apply the derivation rules to a spectra profile", takes_input=False)
    p.add_argument("--profile", required=True, help="profile JSON file, or - for stdin")
    p.add_argument("--verify", choices=["all", "boundary", "eta", "moved"], help="run verification reports")
    p.add_argument("--lenient", action="store_true", help="record conflicts as diagnostics instead of failing")
    p = add("catalog", cmd_catalog, "list, validate or show the operator catalog", takes_input=False)
    p.add_argument("action", choices=["list", "show", "validate"])
    p.add_argument("name", nargs="?")
    add("render-svg", cmd_render_svg, "render a region as SVG")
    add("errors", cmd_errors, "list every error code", takes_input=False)
    return parser


def _emit(text: str, output: str | None, stdout: TextIO) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)


def run(
    argv: Sequence[str] | None = None,
    stdin: TextIO | None = None,
    stdout: TextIO | None = None,
    stderr: TextIO | None = None,
) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.func(args, stdin)
        status = 0
        if isinstance(result, tuple):
            result, status = result
        text = result if isinstance(result, str) else _dump(result)
        _emit(text, args.output, stdout)
        return status
    except UsageError as exc:
        stderr.write(_dump({"schema": SCHEMA, "error": {"code": exc.code, "message": exc.message}}))
        return 2
    except InvalidInput as exc:
        stderr.write(_dump({"schema": SCHEMA, "error": exc.to_json()}))
        return 2
    except SpectralChainError as exc:
        stderr.write(_dump({"schema": SCHEMA, "error": exc.to_json()}))
        return 1


def main() -> None:
    sys.exit(run())


__all__ = ["CLI_ERROR_CODES", "build_parser", "error_codes", "main", "run"]
