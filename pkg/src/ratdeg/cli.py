"""Command-line front end.

Exit codes: 0 success, 1 domain error (reported as a typed error object),
2 parse or usage error, 3 when a degree-formula invariant or a self-test is
violated.
"""

import argparse
import json
import sys
import time

from . import chainmod, ratmap, versch
from .errors import ParseError, RatdegError
from .field import field_from_spec
from .ideal import set_default_budget
from .parse import parse_map_file

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_VIOLATION = 3


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return v


def _nonneg(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be non-negative")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trials", type=_positive, default=5, help="fiber samples per map (default 5)")
    common.add_argument("--seed", type=_nonneg, default=0, help="random seed (default 0)")
    common.add_argument("--max-ext", type=_positive, default=4, help="largest extension degree for base points (default 4)")
    common.add_argument("--json", metavar="PATH", help="also write the JSON report to PATH")
    common.add_argument("--csv", metavar="PATH", help="write the census table as CSV to PATH")
    common.add_argument("--budget", type=_positive, help="S-pair budget for Groebner computations")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")

    p = _ArgumentParser(prog="ratdeg", description="Degrees and base loci of rational maps of projective space.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    for name, hlp in (
        ("analyze", "base locus, bound and exact degree of a map file"),
        ("baselocus", "base scheme length and local structure of a map file"),
        ("degree", "exact degree of a map file from fiber lengths"),
    ):
        c = sub.add_parser(name, parents=[common], help=hlp)
        c.add_argument("mapfile")
    c = sub.add_parser("census", parents=[common], help="analyse seeded random maps")
    c.add_argument("--n", type=_positive, default=2, help="projective dimension (default 2)")
    c.add_argument("--d", type=_positive, default=2, help="degree of the maps (default 2)")
    c.add_argument("--field", default="5", help="field p or p^k (default 5)")
    c.add_argument("--count", type=_positive, default=100, help="number of maps (default 100)")
    c.add_argument("--workers", type=_positive, default=1, help="worker processes (default 1)")
    c = sub.add_parser("versch-table", parents=[common], help="Verschiebung degree table for odd primes")
    c.add_argument("primes", nargs="+", type=_positive)
    c = sub.add_parser("lemma32", parents=[common], help="symbolic check of the dual-number kernel matrix")
    c.add_argument("--field", type=_positive, default=5, help="prime p (default 5)")
    c.add_argument("--specializations", type=_nonneg, default=0, help="extra random specializations of e_ij")
    c = sub.add_parser("chainmod-selftest", parents=[common], help="kernel rank checks over chain rings")
    c.add_argument("--count", type=_positive, default=50, help="instances per ring (default 50)")
    return p


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _inputs(args):
    keep = {}
    for k, v in sorted(vars(args).items()):
        if k in ("json", "csv", "timings", "command"):
            continue
        keep[k] = v
    return keep


def cmd_analyze(args):
    f = parse_map_file(_read(args.mapfile))
    rep = ratmap.analyze(f, trials=args.trials, seed=args.seed, max_ext=args.max_ext)
    code = EXIT_VIOLATION if rep.violations else EXIT_OK
    return rep.to_dict(), code


def cmd_baselocus(args):
    f = parse_map_file(_read(args.mapfile))
    delta, base = ratmap.base_locus(f, args.max_ext, args.seed)
    out = base.to_dict()
    out.update({"field": f.field.spec(), "n": f.n, "d": f.d, "delta": delta, "bound": f.d**f.n - delta})
    out["lci"] = all(loc.is_lci for loc in base.locals)
    out["gorenstein"] = all(loc.is_gorenstein for loc in base.locals)
    return out, EXIT_OK


def cmd_degree(args):
    f = parse_map_file(_read(args.mapfile))
    deg, samples = ratmap.degree_exact(f, args.trials, args.seed)
    return {
        "field": f.field.spec(),
        "n": f.n,
        "d": f.d,
        "degree": deg,
        "samples": [s.to_dict() for s in samples],
    }, EXIT_OK


def cmd_census(args):
    F = field_from_spec(args.field)
    res = ratmap.census(args.n, args.d, F, args.count, seed=args.seed, trials=args.trials, max_ext=args.max_ext, workers=args.workers)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(ratmap.census_csv(res))
    code = EXIT_VIOLATION if res.violations else EXIT_OK
    return res.to_dict(), code


def versch_table_text(profiles):
    header = ("p", "delta", "degree", "p^2", "p^3")
    rows = [header] + [tuple(str(x) for x in (v.p, v.delta, v.degree, v.lower, v.upper)) for v in profiles]
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows) + "\n"


def cmd_versch_table(args):
    profiles = [versch.versch_profile(p) for p in args.primes]
    return {"rows": [v.to_dict() for v in profiles]}, EXIT_OK


def cmd_kernel_identity(args):
    rep = versch.verify_kernel_identity(args.field)
    out = rep.to_dict()
    if args.specializations:
        import random

        rng = random.Random(f"kernel-identity:{args.seed}:{args.field}")
        passed = 0
        for _ in range(args.specializations):
            spec = tuple(rng.randrange(args.field) for _ in range(4))
            passed += versch.verify_kernel_identity(args.field, spec).passed
        out["specializations"] = {"count": args.specializations, "passed": passed}
    return out, EXIT_OK


def cmd_chainmod_selftest(args):
    rows = chainmod.selftest_rows(count=args.count, seed=args.seed)
    ok = all(r["pass"] for r in rows)
    return {"rows": rows, "all_pass": ok}, EXIT_OK if ok else EXIT_VIOLATION


COMMANDS = {
    "analyze": cmd_analyze,
    "baselocus": cmd_baselocus,
    "degree": cmd_degree,
    "census": cmd_census,
    "versch-table": cmd_versch_table,
    "lemma32": cmd_kernel_identity,
    "chainmod-selftest": cmd_chainmod_selftest,
}


def _dump(report):
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def run(argv=None, stdout=None):
    """Run one command; returns the exit code and writes the report to stdout."""
    stdout = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    report = {"schema_version": SCHEMA_VERSION}
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        report["error"] = {"kind": "UsageError", "message": str(exc)}
        stdout.write(_dump(report))
        return EXIT_USAGE
    report["command"] = args.command
    report["inputs"] = _inputs(args)
    report["seed"] = args.seed
    set_default_budget(args.budget)
    start = time.perf_counter()
    code = EXIT_OK
    try:
        results, code = COMMANDS[args.command](args)
        report["results"] = results
    except (ParseError, UsageError) as exc:
        report["error"] = _error(exc)
        code = EXIT_USAGE
    except RatdegError as exc:
        report["error"] = _error(exc)
        code = EXIT_DOMAIN
    finally:
        set_default_budget(None)
    if args.timings:
        report["timings"] = {"total_seconds": round(time.perf_counter() - start, 6)}
    text = _dump(report)
    if args.json and args.json != "-":
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.command == "versch-table" and "results" in report and args.json != "-":
        stdout.write(versch_table_text([versch.versch_profile(p) for p in args.primes]))
    else:
        stdout.write(text)
    return code


def _error(exc):
    out = {"kind": getattr(exc, "kind", type(exc).__name__), "message": str(exc)}
    if isinstance(exc, ParseError):
        out["line"] = exc.line
        out["column"] = exc.column
    return out


def main():
    sys.exit(run())
