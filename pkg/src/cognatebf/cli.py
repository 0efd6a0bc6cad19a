"""Command-line front end: ``cognate analyze|ensemble|search|sbox|select``.

Exit codes: 0 success, 1 search budget exhausted, 2 input or validation error.
"""
from __future__ import annotations

import argparse
import datetime
import hashlib
import json
import os
import sys

from . import __version__
from .ahp import CR_THRESHOLD, consistency_ratio, read_decision, synthesize
from .boolean import format_truth_table, parse_truth_table, read_truth_table
from .cognate import filter_ensemble, format_ensemble, initial_ensemble, parse_ensemble
from .constraints import read_constraints
from .errors import CognateError, SearchFailure
from .properties import classify
from .sbox import build_sbox, format_sbox, parse_sbox, read_sbox, sbox_report
from .search import SearchConfig, constrained_search, parse_sampling

EXIT_OK, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2


class UsageError(CognateError):
    pass


def _digest(path) -> dict:
    with open(path, "rb") as fh:
        return {"path": str(path), "sha256": hashlib.sha256(fh.read()).hexdigest()}


def _timestamp(args):
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        moment = datetime.datetime.fromtimestamp(int(epoch), tz=datetime.timezone.utc)
    elif getattr(args, "timestamp", False):
        moment = datetime.datetime.now(tz=datetime.timezone.utc)
    else:
        return None
    return moment.replace(microsecond=0).isoformat()


def manifest(args, subcommand, config, inputs, seed=None) -> dict:
    return {
        "tool": "cognatebf",
        "version": __version__,
        "subcommand": subcommand,
        "config": config,
        "seed": seed,
        "inputs": [_digest(p) for p in inputs],
        "timestamp": _timestamp(args),
    }


def _token(f):
    return format_truth_table(f, hex_form=f.n >= 6)


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, payload):
    _emit(args, json.dumps(payload, indent=2) + "\n")


def _note(args, message):
    if not args.quiet:
        print(message, file=sys.stderr)


# -- subcommands ---------------------------------------------------------

def cmd_analyze(args) -> int:
    f = read_truth_table(args.input)
    report = classify(f)
    _emit_json(args, {
        "function": _token(f),
        "report": report.to_dict(),
        "manifest": manifest(args, "analyze", {}, [args.input]),
    })
    return EXIT_OK


def cmd_ensemble(args) -> int:
    nominal = read_truth_table(args.nominal)
    cs = read_constraints(args.constraints).for_n(nominal.n)
    working = filter_ensemble(initial_ensemble(nominal), cs, workers=args.workers)
    total = 2 << nominal.n
    summary = f"kept {len(working)} of {total}"
    man = manifest(args, "ensemble", {"constraints": cs.active(), "n": nominal.n,
                                      "include_rejected": args.all},
                   [args.nominal, args.constraints])
    header = [
        f"nominal pass={str(working.nominal_passes).lower()}",
        summary,
        "manifest: " + json.dumps(man, separators=(",", ":")),
    ]
    _emit(args, format_ensemble(working, include_rejected=args.all, header_lines=header))
    _note(args, summary)
    if not working.nominal_passes:
        _note(args, "warning: the nominal function itself fails the constraints: "
              + "; ".join(str(v) for v in working.nominal_violations))
    if len(working) == 0:
        _note(args, "warning: the working ensemble is empty")
        if args.verbose:
            for line in working.diagnostics():
                _note(args, line)
    return EXIT_OK


def cmd_search(args) -> int:
    cs = read_constraints(args.constraints)
    if cs.n is None:
        raise UsageError(f"{args.constraints}: the constraint file must set n for a search")
    if not cs.is_feasible():
        raise UsageError("infeasible constraints: " + "; ".join(cs.feasibility_warnings()))
    for w in cs.feasibility_warnings():
        _note(args, "warning: " + w)
    cfg = SearchConfig(seed=args.seed, max_iterations=args.max_iter, max_restarts=args.restarts,
                       candidate_sampling=parse_sampling(args.sampling))
    man = manifest(args, "search", {"constraints": cs.active(), "n": cs.n, "search": cfg.to_dict()},
                   [args.constraints], seed=args.seed)
    code = EXIT_OK
    try:
        result = constrained_search(cs, cfg, workers=args.workers)
        f, report, status = result.function, result.report, "ok"
        _note(args, f"found after {result.total_iterations} iterations (restart {result.restart})")
    except SearchFailure as exc:
        f, report, status = exc.best, exc.report, "failed"
        _note(args, f"search failed: {exc}")
        code = EXIT_BUDGET
    lines = [
        f"# status: {status}",
        "# report: " + json.dumps(report.to_dict(), separators=(",", ":")),
        "# manifest: " + json.dumps(man, separators=(",", ":")),
        _token(f),
    ]
    _emit(args, "\n".join(lines) + "\n")
    return code


def cmd_sbox_build(args) -> int:
    components = [read_truth_table(p) for p in args.components]
    s = build_sbox(components)
    man = manifest(args, "sbox build", {"m": s.m, "n": s.n}, args.components)
    _emit(args, format_sbox(s, header_lines=["manifest: " + json.dumps(man, separators=(",", ":"))]))
    return EXIT_OK


def cmd_sbox_analyze(args) -> int:
    s = read_sbox(args.table)
    payload = sbox_report(s).to_dict()
    payload["manifest"] = manifest(args, "sbox analyze", {}, [args.table])
    _emit_json(args, payload)
    return EXIT_OK


def _load_alternatives(paths):
    """[(label, metrics, function token or None)] from ensembles, tables or JSON reports."""
    out = []
    for path in paths:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        stripped = text.lstrip()
        if stripped.startswith("{"):
            try:
                data = json.loads(text)
            except json.JSONDecodeError as exc:
                raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
            metrics = data.get("report", data)
            out.append((str(path), {k: v for k, v in metrics.items() if k != "manifest"},
                        data.get("function")))
        elif any(line.strip().startswith("# nominal:") for line in text.splitlines()):
            _, rows = parse_ensemble(text, source=str(path))
            k = 0
            for member, flag in rows:
                if flag is False:
                    continue
                out.append((f"{path}#{k}", classify(member).to_dict(), _token(member)))
                k += 1
        elif any(line.strip().startswith("n=") for line in text.splitlines()):
            s = parse_sbox(text, source=str(path))
            metrics = sbox_report(s).to_dict()
            metrics.pop("combinations")
            out.append((str(path), metrics, None))
        else:
            f = parse_truth_table(text, source=str(path))
            out.append((str(path), classify(f).to_dict(), _token(f)))
    if not out:
        raise UsageError("no alternatives to choose from")
    return out


def cmd_select(args) -> int:
    decision = read_decision(args.problem)
    alternatives = _load_alternatives(args.alternatives)
    try:
        problem = decision.bind([(label, metrics) for label, metrics, _ in alternatives])
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    ranking = synthesize(problem)
    pv = ranking.criteria_priority
    criteria_cr = consistency_ratio(pv)
    criteria = []
    for c, weight, local in zip(decision.criteria, pv.weights, ranking.local_scores):
        entry = {"name": c.name, "kind": c.kind, "weight": weight, "local_scores": list(local)}
        if c.kind == "measured":
            entry.update(direction=c.direction, metric=c.metric)
        else:
            jp = ranking.judgment_priorities[c.name]
            entry.update(lambda_max=jp.lambda_max, consistency_ratio=jp.consistency_ratio)
        criteria.append(entry)
    tokens = [t for _, _, t in alternatives]
    ranked = []
    for rank, j in enumerate(ranking.order, start=1):
        row = {"rank": rank, "label": ranking.alternatives[j], "score": ranking.scores[j]}
        if tokens[j] is not None:
            row["function"] = tokens[j]
        ranked.append(row)
    warnings = ranking.warnings()
    for w in warnings:
        _note(args, "warning: " + w)
    _emit_json(args, {
        "elected": ranking.elected,
        "ranking": ranked,
        "criteria": criteria,
        "criteria_consistency": {
            "lambda_max": pv.lambda_max,
            "consistency_index": pv.consistency_index,
            "consistency_ratio": criteria_cr,
            "consistent": criteria_cr <= CR_THRESHOLD,
        },
        "warnings": warnings,
        "manifest": manifest(args, "select", {"alternatives": list(args.alternatives)},
                             [args.problem, *args.alternatives]),
    })
    return EXIT_OK


# -- argument parsing ----------------------------------------------------

def _u64(text):
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output path (default: standard output)")
    common.add_argument("--seed", type=_u64, default=0, help="64-bit seed for randomized steps")
    common.add_argument("--quiet", action="store_true", help="suppress notes and warnings on stderr")
    common.add_argument("--timestamp", action="store_true",
                        help="record the wall-clock time in the manifest (breaks byte-determinism)")

    parser = argparse.ArgumentParser(prog="cognate", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="cryptographic property report of a function")
    p.add_argument("input")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("ensemble", parents=[common], help="initial cognate ensemble filtered by constraints")
    p.add_argument("nominal")
    p.add_argument("constraints")
    p.add_argument("--all", action="store_true", help="also list rejected members with pass=false")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--verbose", action="store_true", help="list the binding constraint per rejected member")
    p.set_defaults(func=cmd_ensemble)

    p = sub.add_parser("search", parents=[common], help="constrained hill-climbing search")
    p.add_argument("constraints")
    p.add_argument("--max-iter", type=int, default=10_000, help="iterations per restart")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--sampling", default="all", help="'all' or 'sampled(k)'")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("sbox", help="build or analyze substitution tables")
    sbox_sub = p.add_subparsers(dest="sbox_command", required=True)
    q = sbox_sub.add_parser("build", parents=[common], help="assemble a table from component files")
    q.add_argument("components", nargs="+")
    q.set_defaults(func=cmd_sbox_build)
    q = sbox_sub.add_parser("analyze", parents=[common], help="table-level report")
    q.add_argument("table")
    q.set_defaults(func=cmd_sbox_analyze)

    p = sub.add_parser("select", parents=[common], help="elect the optimal variant by AHP")
    p.add_argument("problem")
    p.add_argument("alternatives", nargs="+")
    p.set_defaults(func=cmd_select)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CognateError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
