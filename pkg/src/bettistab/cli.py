"""Command-line front end.

Subcommands: formula, oracle, decompose, polytope, scan, verify-paper.
Results go to stdout (JSON unless --table), logs to stderr.  Exit codes:
0 success, 1 domain error (with a machine-readable error object on stdout),
2 usage error.  BETTI_THREADS sets the default worker count; --threads
overrides it.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass

from .decomposition import (
    build_polytope,
    candidate_degree_sequences,
    enumerate_vertices,
    greedy_decompose,
    prune,
)
from .diagram import BettiDiagram, render_table
from .errors import BettiStabError, InputError
from .koszul_oracle import betti_oracle
from .monomial_ideal import MonomialIdeal, parse_ideal, power
from .path_formula import path_diagram, path_ideal
from .stability import compare_reference, path6_reference, scan_powers


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    options: dict


def _default_threads() -> int:
    raw = os.environ.get("BETTI_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        value = 1
    return max(value, 1)


def _log(message: str) -> None:
    print(message, file=sys.stderr)


def _emit_json(obj, path=None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        _log(f"wrote {path}")
    else:
        print(text)


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_ideal(path: str, num_vars=None) -> MonomialIdeal:
    """Ideal files hold either the JSON schema or the generator text syntax."""
    text = _read_text(path).strip()
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON in {path}: {exc}") from exc
        return MonomialIdeal.from_json_dict(data)
    if num_vars is None:
        indices = [int(m) for m in re.findall(r"x(\d+)", text)]
        if not indices:
            raise InputError(f"no variables found in {path}")
        num_vars = max(indices)
    return parse_ideal(text, num_vars)


def _load_diagram(path: str) -> BettiDiagram:
    try:
        data = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc
    return BettiDiagram.from_json_dict(data)


def _parse_fit_deg(text: str):
    try:
        num, den = (int(part) for part in text.split(","))
    except ValueError as exc:
        raise InputError(f"--fit-deg expects 'N,D', got {text!r}") from exc
    if num < 0 or den < 0:
        raise InputError("--fit-deg degrees must be nonnegative")
    return num, den


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="betti-stab",
        description="Exact Betti diagrams of monomial ideal powers, "
        "decomposition polytopes, and stabilization scans.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("formula", help="closed-form diagram for the path family")
    p.add_argument("--n", type=int, required=True, help="number of variables")
    p.add_argument("--k", type=int, required=True, help="power of the ideal")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--table", action="store_true", help="pretty table output")

    p = sub.add_parser("oracle", help="Betti diagram via Koszul strand homology")
    p.add_argument("--ideal", required=True, help="ideal file (JSON or text syntax)")
    p.add_argument("--power", type=int, default=1, help="power of the ideal")
    p.add_argument("--num-vars", type=int, help="variable count for text input")
    p.add_argument("--degree-bound", type=int, help="truncate at this total degree")
    p.add_argument("--no-filter", action="store_true", help="disable the lcm pruning")
    p.add_argument("--threads", type=int, help="worker threads")

    p = sub.add_parser("decompose", help="greedy decomposition of a diagram")
    p.add_argument("--diagram", required=True, help="diagram JSON file")

    p = sub.add_parser("polytope", help="polytope of all decompositions")
    p.add_argument("--diagram", required=True, help="diagram JSON file")
    p.add_argument("--prune", action="store_true", help="drop always-zero coordinates")

    p = sub.add_parser("scan", help="stabilization scan over a power range")
    p.add_argument("--ideal", required=True, help="ideal file (JSON or text syntax)")
    p.add_argument("--kmin", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--num-vars", type=int, help="variable count for text input")
    p.add_argument("--formula", action="store_true", help="use the path closed form")
    p.add_argument("--fit-deg", default="3,3", help="trajectory fit degrees 'N,D'")
    p.add_argument("--json", metavar="OUT", help="write the report to this file")
    p.add_argument("--threads", type=int, help="worker threads")

    p = sub.add_parser(
        "verify-paper",
        help="scan the 6-variable path family and compare against the "
        "built-in reference vertex formulas",
    )
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--kmin", type=int, default=4)
    p.add_argument("--kmax", type=int, default=10)

    return parser


def run(config: RunConfig) -> int:
    opts = config.options
    threads = opts.get("threads") or _default_threads()

    if config.subcommand == "formula":
        diagram = path_diagram(opts["n"], opts["k"])
        if opts.get("table"):
            print(render_table(diagram))
        else:
            _emit_json(diagram.to_json_dict())
        return 0

    if config.subcommand == "oracle":
        ideal = _load_ideal(opts["ideal"], opts.get("num_vars"))
        if opts["power"] > 1:
            ideal = power(ideal, opts["power"])
        elif opts["power"] < 1:
            raise InputError("--power must be >= 1")
        _log(f"oracle over {ideal.num_vars} variables, {len(ideal.generators)} generators")
        diagram = betti_oracle(
            ideal,
            degree_bound=opts.get("degree_bound"),
            use_lcm_filter=not opts.get("no_filter", False),
            threads=threads,
        )
        _emit_json(diagram.to_json_dict())
        return 0

    if config.subcommand == "decompose":
        diagram = _load_diagram(opts["diagram"])
        _emit_json(greedy_decompose(diagram).to_json_dict())
        return 0

    if config.subcommand == "polytope":
        diagram = _load_diagram(opts["diagram"])
        polytope = enumerate_vertices(
            build_polytope(diagram, candidate_degree_sequences(diagram))
        )
        if opts.get("prune"):
            polytope = prune(polytope)
        _emit_json(polytope.to_json_dict())
        return 0

    if config.subcommand == "scan":
        ideal = _load_ideal(opts["ideal"], opts.get("num_vars"))
        fit_num, fit_den = _parse_fit_deg(opts.get("fit_deg", "3,3"))
        report = scan_powers(
            ideal,
            opts["kmin"],
            opts["kmax"],
            use_formula=opts.get("formula", False),
            fit_num_deg=fit_num,
            fit_den_deg=fit_den,
            threads=threads,
        )
        _log(
            "scan done: "
            + ("stable window %s..%s" % report.window if report.window else "not stabilized in range")
        )
        _emit_json(report.to_json_dict(), opts.get("json"))
        return 0

    if config.subcommand == "verify-paper":
        if opts["n"] != 6:
            raise InputError("the built-in reference family covers n = 6 only")
        if opts["kmin"] < 4:
            raise InputError("reference comparison needs kmin >= 4")
        report = scan_powers(
            path_ideal(6), opts["kmin"], opts["kmax"], use_formula=True
        )
        record = compare_reference(report, path6_reference())
        _log(
            "zero patterns match: %s; reconstruction ok: %s"
            % (record["all_zero_patterns_match"], record["reconstruction_ok"])
        )
        _emit_json(record)
        return 0

    raise InputError(f"unknown subcommand {config.subcommand!r}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    options = {k: v for k, v in vars(args).items() if k != "subcommand"}
    config = RunConfig(subcommand=args.subcommand, options=options)
    try:
        return run(config)
    except BettiStabError as exc:
        _emit_json({"error": {"type": type(exc).__name__, "message": str(exc)}})
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
