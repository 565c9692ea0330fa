"""Command-line front end.

Exit codes: 0 verdict true or success, 1 verdict false, 2 input error,
3 internal invariant violation.  The JSON report goes to standard output (or
``-o``); a one-line summary goes to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import io
from . import repmod as rm
from . import silting as si
from . import torsion as to
from . import twoterm as tt
from .config import DEFAULT_SEED, settings
from .indec import CatalogError, InconsistentDecomposition, NotRepresentationFinite, StrategyMismatch, enumerate_indecomposables
from .report import Report, Route, dumps, recheck
from .verify import verify_all

EXIT_TRUE, EXIT_FALSE, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3

VERBS = (
    "check-tau-rigid",
    "check-partial-silting",
    "check-silting",
    "check-tilting",
    "check-quasitilting",
    "complete",
    "approximate",
    "check-presilting",
    "check-2silting",
    "enumerate",
    "verify-bijection",
    "hrs-report",
    "verify-all",
)

INVARIANT_ERRORS = (
    si.VerdictDisagreement,
    si.CertificationFailure,
    si.ApproximationFailure,
    tt.BijectionFailure,
    to.TorsionPairFailure,
    InconsistentDecomposition,
    CatalogError,
    rm.LiftFailure,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="siltmod", description="Silting theory for bound quiver algebras over F_p.")
    parser.add_argument("--recheck", metavar="FILE", help="re-verify every certificate in a report file")
    sub = parser.add_subparsers(dest="verb")
    for verb in VERBS:
        p = sub.add_parser(verb)
        p.add_argument("-A", "--algebra", required=True, help="algebra JSON file")
        if verb in ("check-tau-rigid", "check-partial-silting", "check-silting", "check-tilting",
                    "check-quasitilting", "complete", "approximate", "hrs-report"):
            p.add_argument("-M", "--module", required=True, help="module JSON file")
        if verb in ("check-partial-silting", "check-silting", "complete", "approximate"):
            p.add_argument("-C", "--complex", help="presentation of the module (default: minimal or sigma-tilde)")
        if verb in ("check-presilting", "check-2silting"):
            p.add_argument("-C", "--complex", required=True, help="two-term complex JSON file")
        if verb == "enumerate":
            p.add_argument("--kind", choices=("silting", "two-silting", "indecomposables"), default="silting")
            p.add_argument("--export", metavar="DIR", help="write the enumerated objects as files")
        p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
        p.add_argument("--random-seed", action="store_true", help="seed from the clock instead of --seed")
        p.add_argument("--p", type=int, help="override the field modulus recorded in the algebra file")
        p.add_argument("--strategy", help="catalog strategy for indecomposables")
        p.add_argument("-o", "--output", help="write the report here instead of standard output")
    return parser


class _Run:
    def __init__(self, args):
        self.args = args
        self.algebra = io.load_algebra(args.algebra, args.p)
        self._ind = None

    @property
    def ind(self):
        if self._ind is None:
            self._ind = enumerate_indecomposables(self.algebra, self.args.strategy)
        return self._ind

    def module(self):
        return io.load_module(self.args.module, self.algebra)

    def complex(self):
        c = getattr(self.args, "complex", None)
        return io.load_complex(c, self.algebra) if c else None


def _approx_doc(ap: si.ApproximationSequence) -> dict:
    return {"t0": ap.components, "t1_dims": list(ap.t1.dim_vector()), "certificate": ap.certificate}


def dispatch(run: _Run) -> tuple[Report, dict]:
    """Run one verb; returns the report and extra top-level fields."""
    verb = run.args.verb
    extra: dict = {}
    if verb == "check-tau-rigid":
        t = run.module()
        claim = si.tau_rigidity_claim(t)
        rigid = claim["value"] == claim["shape"][1]
        return Report(rigid, [Route("hom-to-tau", rigid, {"claims": [claim]})]), extra
    if verb == "check-partial-silting":
        return si.is_partial_silting(run.module(), run.complex()), extra
    if verb == "check-silting":
        sigma = run.complex()
        t = run.module()
        return (si.is_silting_wrt(t, sigma, run.ind) if sigma else si.is_silting(t, run.ind)), extra
    if verb == "check-tilting":
        return si.is_tilting(run.module(), run.ind), extra
    if verb == "check-quasitilting":
        return si.is_quasitilting(run.module(), run.ind), extra
    if verb == "complete":
        t = run.module()
        sigma = run.complex() or rm.min_presentation(t)
        try:
            c = si.bongartz_complete(t, sigma, run.ind)
        except si.NotPartialSilting as exc:
            return Report(False, [], {"reason": str(exc)}), extra
        extra["complement"] = io.module_to_dict(c.complement, Path(run.args.algebra).name)
        return Report(True, [Route("bongartz", True, c.certificate)]), extra
    if verb == "approximate":
        t = run.module()
        sigma = run.complex() or si.sigma_tilde(t)
        try:
            ap = si.left_approximation(t, sigma, run.ind)
        except si.NotSilting as exc:
            return Report(False, [], {"reason": str(exc)}), extra
        return Report(True, [Route("left-approximation", True, _approx_doc(ap))]), extra
    if verb == "check-presilting":
        return tt.is_presilting(run.complex()), extra
    if verb == "check-2silting":
        return tt.is_two_silting(run.complex(), run.ind), extra
    if verb == "enumerate":
        return _enumerate(run, extra), extra
    if verb == "verify-bijection":
        return tt.verify_h0_bijection(run.algebra, run.ind), extra
    if verb == "hrs-report":
        return to.hrs_report(run.module(), run.ind), extra
    if verb == "verify-all":
        return verify_all(run.algebra, run.ind), extra
    raise ValueError(f"unknown verb {verb}")


def _enumerate(run: _Run, extra: dict) -> Report:
    kind, ind = run.args.kind, run.ind
    alg_name = Path(run.args.algebra).name
    export = Path(run.args.export) if run.args.export else None
    if kind == "indecomposables":
        items = [{"name": m.name, "dims": list(m.dim_vector())} for m in ind.modules]
        if export:
            io.export_indset(ind, export, alg_name)
    elif kind == "silting":
        classes = to.enumerate_silting_classes(run.algebra, ind)
        items = [c.as_dict() for c in classes]
        if export:
            export.mkdir(parents=True, exist_ok=True)
            io.write_json(export / alg_name, io.algebra_to_dict(run.algebra))
            listing = []
            for k, c in enumerate(classes):
                name = f"silting_{k}.json"
                io.write_json(export / name, io.module_to_dict(c.module, alg_name))
                listing.append({"module": name, "class": c.torsion_class.sorted(), "ext_projectives": c.ext_projectives.sorted()})
            io.write_json(export / "classes.json", listing)
    else:
        complexes = tt.enumerate_two_silting(run.algebra, ind)
        items = [{"complex": s.label(), "h0_dims": list(tt.h0(s).dim_vector())} for s in complexes]
        if export:
            export.mkdir(parents=True, exist_ok=True)
            io.write_json(export / alg_name, io.algebra_to_dict(run.algebra))
            for k, s in enumerate(complexes):
                io.write_json(export / f"two_silting_{k}.json", io.complex_to_dict(s.underlying, alg_name))
    extra["count"] = len(items)
    extra["items"] = items
    return Report(True, [Route(f"enumerate-{kind}", True, {"count": len(items), "catalog": ind.names})])


def _emit(doc: dict, output: str | None) -> None:
    text = dumps(doc) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _recheck_file(path: str) -> int:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        _emit({"error": "input", "file": path, "field": "", "reason": str(exc)}, None)
        return EXIT_INPUT
    results = recheck(doc)
    failed = [p for p, ok in results if not ok]
    _emit({"claims": len(results), "failed": failed, "verdict": not failed}, None)
    print(f"recheck: {len(results) - len(failed)}/{len(results)} claims verified", file=sys.stderr)
    return EXIT_TRUE if not failed else EXIT_INVARIANT


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.recheck:
        return _recheck_file(args.recheck)
    if not args.verb:
        parser.print_usage(sys.stderr)
        return EXIT_INPUT
    settings.seed = int(time.time_ns()) & 0xFFFFFFFF if args.random_seed else args.seed
    try:
        run = _Run(args)
        report, extra = dispatch(run)
    except io.InputError as exc:
        _emit(exc.as_dict(), None)
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (si.PresentationMismatch, StrategyMismatch, NotRepresentationFinite) as exc:
        _emit({"error": "input", "file": args.algebra, "field": type(exc).__name__, "reason": str(exc)}, None)
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except INVARIANT_ERRORS as exc:
        doc = {"error": "invariant", "type": type(exc).__name__, "reason": str(exc)}
        if getattr(exc, "report", None) is not None:
            doc["report"] = exc.report.as_dict()
        _emit(doc, None)
        print(f"invariant violation: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    doc = {"command": args.verb, "field": {"p": run.algebra.p}, "seed": settings.seed, **report.as_dict(), **extra}
    _emit(doc, args.output)
    failing = [r.name for r in report.routes if not r.verdict]
    note = f" (failing: {', '.join(failing)})" if args.verb == "verify-all" and failing else ""
    print(f"{args.verb}: verdict {'true' if report.verdict else 'false'}{note}", file=sys.stderr)
    if args.verb == "verify-all" and not report.verdict:
        return EXIT_INVARIANT
    return EXIT_TRUE if report.verdict else EXIT_FALSE


if __name__ == "__main__":
    sys.exit(main())
