"""Command-line front end.

Exit codes: 0 success, 2 solution space of dimension > 1, 3 inconsistent
constraints, 4 audit failure, 5 I/O or format error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import corpus, invariants
from .matroid import CodimensionError
from .polyring import GradedPolynomial
from .restriction import TestConfiguration
from .schubert import FlagSpec, schubert_class
from .solver import (ExclusionError, InconsistentSystem, KnownCount, NormalizationError, SolveOptions,
                     assemble, save_checkpoint, solve)
from .stabilize import localize_up, raise_stabilize
from .symfunc import schur_expand, schur_to_json

EXIT_OK, EXIT_UNDERDETERMINED, EXIT_INCONSISTENT, EXIT_AUDIT, EXIT_IO = 0, 2, 3, 4, 5

log = logging.getLogger("matvar")


class CliError(Exception):
    def __init__(self, code: int, message: str, payload: dict | None = None):
        super().__init__(message)
        self.code = code
        self.payload = payload or {}


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1)


def _emit_poly(p: GradedPolynomial, fmt: str) -> str:
    return p.to_text() if fmt == "text" else _dumps(p.to_json())


def _write_report(path, report: dict) -> None:
    if path:
        try:
            Path(path).write_text(_dumps(report) + "\n")
        except OSError as exc:
            raise CliError(EXIT_IO, f"cannot write report: {exc}")


def _entry(path: str) -> corpus.CorpusEntry:
    try:
        return corpus.load_entry(path)
    except FileNotFoundError:
        raise CliError(EXIT_IO, f"configuration not found: {path}")
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(EXIT_IO, f"malformed configuration {path}: {exc}")


def _tests_file(path: str, k: int) -> dict:
    """A tests file is either a list of tests or an object with "tests",
    optional "known" and optional "kernel_only"."""
    try:
        obj = json.loads(Path(path).read_text()) if Path(path).exists() else corpus.read_json(path)[0]
    except FileNotFoundError:
        raise CliError(EXIT_IO, f"tests file not found: {path}")
    except ValueError as exc:
        raise CliError(EXIT_IO, f"malformed tests file {path}: {exc}")
    if isinstance(obj, list):
        obj = {"tests": obj}
    try:
        tests = [TestConfiguration.from_json(t, k) for t in obj.get("tests", [])]
        known = [KnownCount.from_json(q) for q in obj.get("known", [])]
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(EXIT_IO, f"malformed tests file {path}: {exc}")
    return {"tests": tests, "known": known, "kernel_only": bool(obj.get("kernel_only", False))}


def _class_for(entry: corpus.CorpusEntry, class_path: str | None, threads: int) -> GradedPolynomial:
    if class_path:
        try:
            return corpus.load_class(class_path)
        except (OSError, ValueError, KeyError) as exc:
            raise CliError(EXIT_IO, f"cannot read class {class_path}: {exc}")
    cls = corpus.bundled_class(entry)
    if cls is not None:
        return cls
    report, cls = _run_class(entry, None, SolveOptions(threads=threads))
    if cls is None:
        raise CliError(EXIT_UNDERDETERMINED, "class is not determined by the available constraints", report)
    return cls


def _run_class(entry, tests_path, options, auto_tests=True):
    tests, known, kernel_only = list(entry.tests), list(entry.known), False
    if tests_path:
        extra = _tests_file(tests_path, entry.config.k)
        kernel_only = extra["kernel_only"]
        if kernel_only:
            tests, known = extra["tests"], extra["known"]
        else:
            tests += extra["tests"]
            known += extra["known"]
    try:
        system = assemble(entry.config, tests, known, auto_tests=auto_tests and not kernel_only,
                          kernel_only=kernel_only, symmetry=entry.symmetry)
        if options.checkpoint:
            save_checkpoint(system, options.checkpoint)
        result = solve(system, options)
    except ExclusionError as exc:
        raise CliError(EXIT_IO, str(exc))
    except InconsistentSystem as exc:
        raise CliError(EXIT_INCONSISTENT, str(exc), {"diagnosis": "inconsistent", "detail": str(exc)})
    except NormalizationError as exc:
        raise CliError(EXIT_AUDIT, str(exc), {"diagnosis": "normalization", "detail": str(exc)})
    # timings stay out of the report so identical inputs give identical bytes
    report = {"config": entry.name, "codimension": system.codim, **result.to_json()}
    return report, result.normalized_class


# ---------------------------------------------------------------- commands

def cmd_class(args) -> int:
    entry = _entry(args.config)
    options = SolveOptions(threads=args.threads, checkpoint=args.checkpoint)
    report, cls = _run_class(entry, args.tests, options, auto_tests=not args.no_auto_tests)
    if cls is None:
        report["diagnosis"] = "underdetermined" if report["dimension"] > 1 else "no normalization"
        _write_report(args.report, report)
        print(_dumps({k: report[k] for k in ("dimension", "undetermined_pure_d", "rows_by_provenance")
                      if k in report}))
        return EXIT_UNDERDETERMINED if report["dimension"] > 1 else EXIT_INCONSISTENT
    checks = corpus.audit_class(entry, cls, kernels=False)
    report["audits"].update(checks)
    _write_report(args.report, report)
    print(_emit_poly(cls, args.format))
    return EXIT_OK if corpus.all_ok(checks) else EXIT_AUDIT


def _verify_one(entry, cls, args) -> dict:
    checks = corpus.audit_class(entry, cls, kernels=True, max_rank_tests=args.max_rank_tests)
    return {"config": entry.name, "ok": corpus.all_ok(checks), "checks": checks}


def cmd_verify(args) -> int:
    if args.corpus:
        results = []
        for name in corpus.bundled_names():
            entry = corpus.load_entry(name)
            cls = corpus.bundled_class(entry)
            if cls is None:
                continue
            results.append(_verify_one(entry, cls, args))
        report = {"ok": all(r["ok"] for r in results), "entries": results}
    else:
        if not args.config or not args.cls:
            raise CliError(EXIT_IO, "verify needs a configuration and a class file (or --corpus)")
        entry = _entry(args.config)
        report = _verify_one(entry, _class_for(entry, args.cls, args.threads), args)
    _write_report(args.report, report)
    if args.format == "text":
        entries = report.get("entries", [report])
        for r in entries:
            for name, c in r["checks"].items():
                print(f"{r['config']:<24} {name:<36} {'pass' if c['ok'] else 'FAIL'}")
    else:
        print(_dumps(report))
    return EXIT_OK if report["ok"] else EXIT_AUDIT


def cmd_gw(args) -> int:
    entry = _entry(args.config)
    cls = _class_for(entry, args.cls, args.threads)
    try:
        q = [int(x) for x in args.q.split(",")]
        value = invariants.gw(cls, q, entry.config.codimension())
    except invariants.AuditFailure as exc:
        raise CliError(EXIT_AUDIT, str(exc))
    except ValueError as exc:
        raise CliError(EXIT_IO, str(exc))
    _write_report(args.report, {"config": entry.name, "q": q, "count": value})
    print(value)
    return EXIT_OK


def cmd_degree(args) -> int:
    entry = _entry(args.config)
    cls = _class_for(entry, args.cls, args.threads)
    a, b = invariants.degree_substitutions(cls)
    _write_report(args.report, {"config": entry.name, "chern_substitution": str(a),
                                "scale_substitution": str(b), "agree": a == b})
    if a != b:
        print(f"degree substitutions disagree: {a} vs {b}", file=sys.stderr)
        return EXIT_AUDIT
    print(a)
    return EXIT_OK


def cmd_schur(args) -> int:
    entry = _entry(args.config)
    cls = _class_for(entry, args.cls, args.threads)
    if args.with_d:
        exp = invariants.schur_d_expand(cls)
        items = [{"lambda": list(mu), "w": list(w), "coeff": str(a)} for (mu, w), a in exp.items()]
        negatives = invariants.schur_d_negatives(exp)
        out = {"expansion": items, "nonnegative": not negatives}
        code = EXIT_OK if not negatives else EXIT_AUDIT
    else:
        exp = schur_expand(invariants.pure_c(cls), entry.config.n)
        out = {"expansion": schur_to_json(exp)}
        code = EXIT_OK
    _write_report(args.report, out)
    if args.format == "text":
        src = out["expansion"]
        print(" + ".join(f"{t['coeff']}*S({','.join(map(str, t['lambda']))})"
                         + (f"*w({','.join(map(str, t['w']))})" if "w" in t else "") for t in src) or "0")
    else:
        print(_dumps(out))
    return code


def cmd_schubert(args) -> int:
    try:
        flag = FlagSpec.parse(args.ell)
        n = args.n if args.n is not None else flag.n
        k = args.k if args.k is not None else flag.k
        p = schubert_class(flag, n, k)
    except ValueError as exc:
        raise CliError(EXIT_IO, str(exc))
    print(_emit_poly(p, args.format))
    return EXIT_OK


def cmd_stabilize(args) -> int:
    entry = _entry(args.config)
    config = entry.config
    s = config.spanning_rank()
    if s != config.n:
        raise CliError(EXIT_IO, "stabilize expects a configuration spanning its ambient space")
    cls = _class_for(entry, args.cls, args.threads)
    if args.to_n < s:
        raise CliError(EXIT_IO, f"--to-n must be at least {s}")
    if args.method == "raise":
        out = raise_stabilize(invariants.pure_c(cls), s, args.to_n, config.k)
    else:
        out = localize_up(cls, s, args.to_n, config.k, threads=args.threads)
    print(_emit_poly(out, args.format))
    return EXIT_OK


def cmd_probe(args) -> int:
    entry = _entry(args.config)
    cls = _class_for(entry, args.cls, args.threads)
    try:
        D = TestConfiguration.from_blocks(args.test, entry.config.k)
        verdict = invariants.hierarchy_probe(cls, D)
    except ValueError as exc:
        raise CliError(EXIT_IO, str(exc))
    print(verdict)
    return EXIT_OK


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--report", help="write a JSON report to this path")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="matvar", description="Equivariant classes of matrix matroid varieties.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("class", parents=[common], help="compute the class of a configuration")
    p.add_argument("config")
    p.add_argument("--tests", help="extra tests, or a kernel_only test set")
    p.add_argument("--checkpoint", help="directory for the assembled system")
    p.add_argument("--no-auto-tests", action="store_true")
    p.set_defaults(func=cmd_class)

    p = sub.add_parser("verify", parents=[common], help="audit a class against its configuration")
    p.add_argument("config", nargs="?")
    p.add_argument("cls", nargs="?", metavar="class")
    p.add_argument("--corpus", action="store_true", help="replay every bundled class")
    p.add_argument("--max-rank-tests", type=int, default=64)
    p.set_defaults(func=cmd_verify)

    for name, func, helptext in [("gw", cmd_gw, "enumerative count for a query"),
                                 ("degree", cmd_degree, "degree of the projectivization"),
                                 ("schur", cmd_schur, "Schur expansion"),
                                 ("stabilize", cmd_stabilize, "class in a larger ambient space"),
                                 ("probe", cmd_probe, "containment probe for a test configuration")]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--config", required=True)
        p.add_argument("--class", dest="cls", help="class JSON (default: bundled or computed)")
        p.set_defaults(func=func)
        if name == "gw":
            p.add_argument("--q", required=True, help="comma separated, e.g. 1,1,1,1,0,0")
        elif name == "schur":
            p.add_argument("--with-d", action="store_true", help="expand in Schur times d monomials")
        elif name == "stabilize":
            p.add_argument("--to-n", type=int, required=True)
            p.add_argument("--method", choices=["localize", "raise"], default="localize")
        elif name == "probe":
            p.add_argument("--test", required=True, help="block notation, e.g. 124|356")

    p = sub.add_parser("schubert", parents=[common], help="matrix Schubert class from level counts")
    p.add_argument("--ell", required=True, help="level counts l_0..l_n, e.g. 0,3,0")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_schubert)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        payload = {"error": str(exc), "exit_code": exc.code, **exc.payload}
        print(_dumps(payload), file=sys.stderr)
        if getattr(args, "report", None) and exc.code != EXIT_IO:
            try:
                Path(args.report).write_text(_dumps(payload) + "\n")
            except OSError:
                pass
        return exc.code
    except CodimensionError as exc:
        print(_dumps({"error": str(exc), "exit_code": EXIT_IO}), file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
