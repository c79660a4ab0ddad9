"""Synthetic chain benchmarks: generation, batch runs, CSV and figures.

A chain KB of size n derives ``x : Bn`` from ``x : B0`` through n levels,
each offering two routes::

    B{i-1} [= Pi  and  Qi        Pi [= Bi        Qi [= Bi

so the query ``x : Bn`` has exactly 2^n justifications. Settings add a
disjointness axiom ``Bj [= ~Bk`` that makes the KB inconsistent:

    s1   no disjointness (consistent baseline)
    s2   B0 vs B1: two small inconsistency justifications
    s3   Bn vs B{n-1}: as many inconsistency justifications as the query has
    s4   s3 plus a fixed-size side chain (query x : C1) so only the
         inconsistency grows

Probability modes: ``none`` (all certain), ``assertional`` (only the class
assertions annotated), ``all`` (every axiom annotated), default p = 0.5.
"""

from __future__ import annotations

import csv
import time
from pathlib import Path
from typing import Iterable, Optional

from .kbformat import parse_query, serialize_kb
from .model import And, Atomic, ConceptAssertion, Gci, KnowledgeBase, Not

SETTINGS = ("s1", "s2", "s3", "s4")
PROB_MODES = ("none", "assertional", "all")

MIN_N, MAX_N = 2, 16


def chain_kb(n: int, setting: str, prob_mode: str = "none",
             p_default: float = 0.5) -> tuple[KnowledgeBase, str]:
    """Build the chain KB and return it with its natural query string."""
    if not MIN_N <= n <= MAX_N:
        raise ValueError(f"n must be in {MIN_N}..{MAX_N}, got {n}")
    if setting not in SETTINGS:
        raise ValueError(f"unknown setting {setting!r}; expected one of {SETTINGS}")
    if prob_mode not in PROB_MODES:
        raise ValueError(f"unknown prob-mode {prob_mode!r}; expected one of {PROB_MODES}")

    def b(i: int) -> Atomic:
        return Atomic(f"B{i}")

    def prob_for(assertional: bool) -> Optional[float]:
        if prob_mode == "all" or (prob_mode == "assertional" and assertional):
            return p_default
        return None

    kb = KnowledgeBase()
    for i in range(1, n + 1):
        kb.add(Gci(b(i - 1), And((Atomic(f"P{i}"), Atomic(f"Q{i}")))), prob_for(False))
        kb.add(Gci(Atomic(f"P{i}"), b(i)), prob_for(False))
        kb.add(Gci(Atomic(f"Q{i}"), b(i)), prob_for(False))
    kb.add(ConceptAssertion("x", b(0)), prob_for(True))
    if setting == "s2":
        kb.add(Gci(b(0), Not(b(1))), prob_for(False))
    elif setting in ("s3", "s4"):
        kb.add(Gci(b(n), Not(b(n - 1))), prob_for(False))
    if setting == "s4":
        kb.add(Gci(Atomic("C0"), And((Atomic("C0_1"), Atomic("C0_2")))), prob_for(False))
        kb.add(Gci(Atomic("C0_1"), Atomic("C1")), prob_for(False))
        kb.add(Gci(Atomic("C0_2"), Atomic("C1")), prob_for(False))
        kb.add(ConceptAssertion("x", Atomic("C0")), prob_for(True))
    query = "ClassAssertion(C1, x)" if setting == "s4" else f"ClassAssertion(B{n}, x)"
    return kb, query


def write_chain_kb(path: str | Path, n: int, setting: str,
                   prob_mode: str = "none", p_default: float = 0.5) -> str:
    """Generate a chain KB file; returns its natural query string."""
    kb, query = chain_kb(n, setting, prob_mode, p_default)
    text = f"# chain benchmark: n={n} setting={setting} prob-mode={prob_mode}\n" \
           f"# query: {query}\n" + serialize_kb(kb)
    Path(path).write_text(text, encoding="utf-8")
    return query


# --------------------------------------------------------------------------
# Batch runs with delimited output and figures
# --------------------------------------------------------------------------

CSV_FIELDS = [
    "setting", "n", "axioms", "query", "consistent",
    "n_query_justs", "n_incons_justs",
    "p_incons", "p_cons", "p_q_and_cons", "p_c", "verdict", "no_repair",
    "justification_ms", "disponte_ms", "repair_ms", "total_ms",
]


def run_benchmark(settings: Iterable[str], n_values: Iterable[int],
                  prob_mode: str = "all", p_default: float = 0.5,
                  removable_mode: str = "prob") -> list[dict]:
    """Run the full pipeline per (setting, n) and collect one row each."""
    from . import semantics
    from .justify import all_justifications

    rows = []
    for setting in settings:
        for n in n_values:
            kb, query_text = chain_kb(n, setting, prob_mode, p_default)
            query = parse_query(query_text)
            rem = semantics.removable_ids(kb, removable_mode)
            t0 = time.perf_counter()
            bundle = all_justifications(kb, query)
            t1 = time.perf_counter()
            prob = semantics.prob_report(kb, bundle)
            t2 = time.perf_counter()
            vdt = semantics.verdict(kb, bundle, rem)
            norep = semantics.no_repair(kb, bundle, rem)
            t3 = time.perf_counter()
            rows.append({
                "setting": setting,
                "n": n,
                "axioms": len(kb),
                "query": query_text,
                "consistent": not bundle.incons_justs,
                "n_query_justs": len(bundle.query_justs),
                "n_incons_justs": len(bundle.incons_justs),
                "p_incons": prob.p_incons,
                "p_cons": prob.p_cons,
                "p_q_and_cons": prob.p_q_and_cons,
                "p_c": "" if prob.p_c is None else prob.p_c,
                "verdict": vdt.value,
                "no_repair": norep,
                "justification_ms": (t1 - t0) * 1000.0,
                "disponte_ms": (t2 - t1) * 1000.0,
                "repair_ms": (t3 - t2) * 1000.0,
                "total_ms": (t3 - t0) * 1000.0,
            })
    return rows


def write_csv(rows: list[dict], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        writer.writeheader()
        writer.writerows(rows)


def plot_scaling(rows: list[dict], path: str | Path) -> None:
    """Per-setting runtime curves (total and per phase) against chain size."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    settings = sorted({r["setting"] for r in rows})
    fig, axes = plt.subplots(1, len(settings), figsize=(4.2 * len(settings), 3.4),
                             squeeze=False, sharey=True)
    for ax, setting in zip(axes[0], settings):
        sub = sorted((r for r in rows if r["setting"] == setting), key=lambda r: r["n"])
        ns = [r["n"] for r in sub]
        for field, style in (("total_ms", "o-"), ("justification_ms", "s--"),
                             ("disponte_ms", "^:"), ("repair_ms", "v-.")):
            ax.plot(ns, [max(r[field], 1e-3) for r in sub], style,
                    label=field.replace("_ms", ""))
        ax.set_yscale("log")
        ax.set_xlabel("chain size n")
        ax.set_title(setting)
        ax.grid(True, alpha=0.3)
    axes[0][0].set_ylabel("time (ms)")
    axes[0][-1].legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
