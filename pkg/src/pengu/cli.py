"""Command-line front end.

Subcommands::

    pengu check <kb>                          consistency + inconsistency report
    pengu query <kb> -q "<axiom>"             full pipeline for one query
    pengu oracle <kb> -q "<axiom>"            brute-force reference pipeline
    pengu bench gen --n N --setting sX -o F   write a synthetic chain KB
    pengu bench run ... --out-dir DIR         batch runs, CSV + PNG figure

Exit codes: 0 success, 2 parse/input error, 3 resource or size limit,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import bench, semantics
from .errors import (
    InternalInvariantError,
    ParseError,
    PenguError,
    ResourceLimitError,
    TooLargeError,
)
from .justify import all_justifications, oracle_all_justifications
from .kbformat import format_probability, parse_kb, parse_query, serialize_axiom
from .model import KnowledgeBase
from .tableau import DEFAULT_BUDGET, is_consistent

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_LIMIT = 3
EXIT_INTERNAL = 4

UNDEFINED_REASON = "certainly inconsistent"


def _load_kb(path: str) -> KnowledgeBase:
    return parse_kb(Path(path).read_text(encoding="utf-8"))


def _axiom_line(kb: KnowledgeBase, aid: int) -> str:
    ann = kb.axiom(aid)
    line = f"{aid}: {serialize_axiom(ann.axiom)}"
    if ann.probability is not None:
        line += f" [p={format_probability(ann.probability)}]"
    return line


def _just_lists(justs) -> list[list[int]]:
    return [sorted(j) for j in justs]


def _render_justifications(kb: KnowledgeBase, title: str, justs, out: list[str]) -> None:
    out.append(f"{title} ({len(justs)}):")
    for j in justs:
        ids = sorted(j)
        out.append("  {" + ", ".join(str(i) for i in ids) + "}")
        for aid in ids:
            out.append("    " + _axiom_line(kb, aid))


# --------------------------------------------------------------------------
# Reports
# --------------------------------------------------------------------------

def _timings(t_start, t_just, t_prob, t_rep) -> dict:
    return {
        "justification_ms": (t_just - t_start) * 1000.0,
        "disponte_ms": (t_prob - t_just) * 1000.0,
        "repair_ms": (t_rep - t_prob) * 1000.0,
        "total_ms": (t_rep - t_start) * 1000.0,
    }


def _query_report(kb: KnowledgeBase, query_text: str, *, semantics_mode: str,
                  max_justifications, removable_mode: str, budget: int) -> dict:
    query = parse_query(query_text)
    rem = semantics.removable_ids(kb, removable_mode)
    t_start = time.perf_counter()
    bundle = all_justifications(kb, query, max_justifications=max_justifications,
                                budget=budget)
    t_just = time.perf_counter()
    prob = semantics.prob_report(kb, bundle)
    t_prob = time.perf_counter()
    vdt = None
    if semantics_mode in ("repairs", "all"):
        vdt = semantics.verdict(kb, bundle, rem)
    norep = semantics.no_repair(kb, bundle, rem)
    t_rep = time.perf_counter()
    if bundle.incons_justs:
        consistent = False
    elif bundle.partial:
        consistent = is_consistent(kb, budget=budget)
    else:
        consistent = True
    return {
        "query": query_text,
        "consistent": consistent,
        "p_incons": prob.p_incons,
        "p_cons": prob.p_cons,
        "p_q_and_cons": prob.p_q_and_cons,
        "p_c": prob.p_c,
        "p_c_undefined_reason": None if prob.p_c is not None else UNDEFINED_REASON,
        "verdict": None if vdt is None else vdt.value,
        "no_repair": norep,
        "partial": bundle.partial,
        "query_justifications": _just_lists(bundle.query_justs),
        "incons_justifications": _just_lists(bundle.incons_justs),
        "timings": _timings(t_start, t_just, t_prob, t_rep),
    }


def _oracle_report(kb: KnowledgeBase, query_text: str, *, max_prob_axioms: int,
                   max_axioms: int, removable_mode: str, budget: int) -> dict:
    query = parse_query(query_text)
    rem = semantics.removable_ids(kb, removable_mode)
    t_start = time.perf_counter()
    bundle = oracle_all_justifications(kb, query, max_axioms=max_axioms, budget=budget)
    t_just = time.perf_counter()
    prob = semantics.oracle_world_probs(kb, query, max_prob_axioms=max_prob_axioms,
                                        budget=budget)
    t_prob = time.perf_counter()
    repairs = semantics.oracle_repairs(kb, rem, budget=budget)
    vdt = semantics.oracle_verdict(kb, query, rem, budget=budget)
    t_rep = time.perf_counter()
    return {
        "query": query_text,
        "consistent": not bundle.incons_justs,
        "p_incons": prob.p_incons,
        "p_cons": prob.p_cons,
        "p_q_and_cons": prob.p_q_and_cons,
        "p_c": prob.p_c,
        "p_c_undefined_reason": None if prob.p_c is not None else UNDEFINED_REASON,
        "verdict": vdt.value,
        "no_repair": not repairs,
        "partial": False,
        "query_justifications": _just_lists(bundle.query_justs),
        "incons_justifications": _just_lists(bundle.incons_justs),
        "oracle": True,
        "timings": _timings(t_start, t_just, t_prob, t_rep),
    }


def _render_report_text(kb: KnowledgeBase, report: dict) -> str:
    out = [f"query: {report['query']}",
           f"consistent: {'true' if report['consistent'] else 'false'}",
           f"P(Incons) = {report['p_incons']!r}",
           f"P(Cons) = {report['p_cons']!r}",
           f"P(Q, Cons) = {report['p_q_and_cons']!r}"]
    if report["p_c"] is None:
        out.append(f"P_C(Q) = undefined ({report['p_c_undefined_reason']})")
    else:
        out.append(f"P_C(Q) = {report['p_c']!r}")
    if report["verdict"] is not None:
        out.append(f"verdict: {report['verdict']}")
    if report["no_repair"]:
        out.append("no repair exists (the non-removable part is inconsistent)")
    if report["partial"]:
        out.append("partial: justification cap hit; probabilities are lower bounds")
    _render_justifications(kb, "query justifications",
                           report["query_justifications"], out)
    _render_justifications(kb, "inconsistency justifications",
                           report["incons_justifications"], out)
    t = report["timings"]
    out.append("timings: justification %.1f ms, disponte %.1f ms, repair %.1f ms, "
               "total %.1f ms" % (t["justification_ms"], t["disponte_ms"],
                                  t["repair_ms"], t["total_ms"]))
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------

def cmd_check(args) -> int:
    kb = _load_kb(args.kb)
    bundle = all_justifications(kb, parse_query("Consistent()"), budget=args.budget)
    prob = semantics.prob_report(kb, bundle)
    consistent = not bundle.incons_justs
    if args.format == "json":
        print(json.dumps({
            "consistent": consistent,
            "p_incons": prob.p_incons,
            "incons_justifications": _just_lists(bundle.incons_justs),
        }, indent=2))
        return EXIT_OK
    out = [f"consistent: {'true' if consistent else 'false'}",
           f"P(Incons) = {prob.p_incons!r}"]
    _render_justifications(kb, "inconsistency justifications", bundle.incons_justs, out)
    print("\n".join(out))
    return EXIT_OK


def cmd_query(args) -> int:
    kb = _load_kb(args.kb)
    report = _query_report(kb, args.query, semantics_mode=args.semantics,
                           max_justifications=args.max_justifications,
                           removable_mode=args.removable, budget=args.budget)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(_render_report_text(kb, report), end="")
    return EXIT_OK


def cmd_oracle(args) -> int:
    kb = _load_kb(args.kb)
    report = _oracle_report(kb, args.query, max_prob_axioms=args.max_prob_axioms,
                            max_axioms=args.max_axioms,
                            removable_mode=args.removable, budget=args.budget)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(_render_report_text(kb, report), end="")
    return EXIT_OK


def cmd_bench_gen(args) -> int:
    query = bench.write_chain_kb(args.out, args.n, args.setting,
                                 args.prob_mode, args.p)
    print(f"wrote {args.out} (query: {query})")
    return EXIT_OK


def cmd_bench_run(args) -> int:
    settings = [s.strip() for s in args.settings.split(",") if s.strip()]
    for s in settings:
        if s not in bench.SETTINGS:
            raise ValueError(f"unknown setting {s!r}; expected a subset of {bench.SETTINGS}")
    n_values = list(range(args.n_min, args.n_max + 1))
    rows = bench.run_benchmark(settings, n_values, args.prob_mode, args.p,
                               args.removable)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "results.csv"
    fig_path = out_dir / "scaling.png"
    bench.write_csv(rows, csv_path)
    bench.plot_scaling(rows, fig_path)
    print(f"wrote {csv_path} and {fig_path} ({len(rows)} runs)")
    return EXIT_OK


# --------------------------------------------------------------------------
# Argument parsing and dispatch
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pengu",
        description="Probabilistic ALC reasoner for possibly inconsistent KBs")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help="tableau rule-application budget per consistency call")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p_check = sub.add_parser("check", help="KB consistency and P(Incons)")
    p_check.add_argument("kb")
    common(p_check)
    p_check.set_defaults(func=cmd_check)

    p_query = sub.add_parser("query", help="answer one Boolean query")
    p_query.add_argument("kb")
    p_query.add_argument("-q", "--query", required=True,
                         help='e.g. "ClassAssertion(Bird, pingu)"')
    p_query.add_argument("--semantics", choices=("disponte", "repairs", "all"),
                         default="all")
    p_query.add_argument("--max-justifications", type=int, default=None)
    p_query.add_argument("--removable", choices=semantics.REMOVABLE_MODES,
                         default="prob")
    common(p_query)
    p_query.set_defaults(func=cmd_query)

    p_oracle = sub.add_parser("oracle", help="brute-force reference pipeline")
    p_oracle.add_argument("kb")
    p_oracle.add_argument("-q", "--query", required=True)
    p_oracle.add_argument("--max-prob-axioms", type=int, default=20,
                          help="guard for world enumeration")
    p_oracle.add_argument("--max-axioms", type=int, default=14,
                          help="guard for justification subset enumeration")
    p_oracle.add_argument("--removable", choices=semantics.REMOVABLE_MODES,
                          default="prob")
    common(p_oracle)
    p_oracle.set_defaults(func=cmd_oracle)

    p_bench = sub.add_parser("bench", help="synthetic chain benchmarks")
    bench_sub = p_bench.add_subparsers(dest="bench_command", required=True)

    p_gen = bench_sub.add_parser("gen", help="generate one chain KB file")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--setting", choices=bench.SETTINGS, required=True)
    p_gen.add_argument("--prob-mode", choices=bench.PROB_MODES, default="none")
    p_gen.add_argument("--p", type=float, default=0.5)
    p_gen.add_argument("-o", "--out", required=True)
    p_gen.set_defaults(func=cmd_bench_gen)

    p_run = bench_sub.add_parser("run", help="run the pipeline over chain KBs "
                                             "and write results.csv + scaling.png")
    p_run.add_argument("--settings", default="s1,s3",
                       help="comma-separated subset of s1,s2,s3,s4")
    p_run.add_argument("--n-min", type=int, default=2)
    p_run.add_argument("--n-max", type=int, default=6)
    p_run.add_argument("--prob-mode", choices=bench.PROB_MODES, default="all")
    p_run.add_argument("--p", type=float, default=0.5)
    p_run.add_argument("--removable", choices=semantics.REMOVABLE_MODES,
                       default="prob")
    p_run.add_argument("--out-dir", required=True)
    p_run.set_defaults(func=cmd_bench_run)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (TooLargeError, ResourceLimitError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except InternalInvariantError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (PenguError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
