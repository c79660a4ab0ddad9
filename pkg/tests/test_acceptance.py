"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines alongside pytest's own verdicts.
"""

import random
import time

import numpy as np
import pytest

from pengu import (
    Atomic,
    BddManager,
    Verdict,
    all_justifications,
    ar_check,
    brave_check,
    iar_check,
    no_repair,
    oracle_all_justifications,
    oracle_repairs,
    oracle_verdict,
    oracle_world_probs,
    parse_kb,
    parse_query,
    prob_report,
    verdict,
)
from pengu.bench import chain_kb
from pengu.kbformat import ConceptAssertionQuery
from conftest import (
    PENGUIN_1,
    PENGUIN_1_1,
    PENGUIN_3,
    PENGUIN_3_CERTAIN,
    UNIVERSITY_PROB,
    UNIVERSITY_PROB_CONSISTENT,
    UNIVERSITY_QUERIES,
)
from kbgen import random_kb, CONCEPTS, INDIVIDUALS


def _passed(n: int, message: str) -> None:
    print(f"criterion {n}: PASS — {message}")


def _pipeline_probability(kb_text: str, query_text: str):
    kb = parse_kb(kb_text)
    q = parse_query(query_text)
    return prob_report(kb, all_justifications(kb, q)), oracle_world_probs(kb, q)


def test_criterion_01_flying_penguins_1():
    r, o = _pipeline_probability(PENGUIN_1, "ClassAssertion(Bird, pingu)")
    assert r.p_q_and_cons == pytest.approx(0.54, abs=1e-9)
    assert r.p_c == pytest.approx(0.54, abs=1e-9)
    assert o.p_q_and_cons == pytest.approx(0.54, abs=1e-9)
    assert o.p_c == pytest.approx(0.54, abs=1e-9)
    _passed(1, "P(pingu:Bird) = 0.54 via pipeline and world enumeration")


def test_criterion_02_flying_penguins_1_1():
    r, o = _pipeline_probability(PENGUIN_1_1, "ClassAssertion(Bird, pingu)")
    assert r.p_c == pytest.approx(0.816, abs=1e-9)
    assert o.p_c == pytest.approx(0.816, abs=1e-9)
    _passed(2, "P(pingu:Bird) = 0.816 with direct evidence added")


def test_criterion_03_flying_penguins_3():
    r, o = _pipeline_probability(PENGUIN_3, "ClassAssertion(Not(Fly), pingu)")
    for rep in (r, o):
        assert rep.p_cons == pytest.approx(0.19, abs=1e-9)
        assert rep.p_q_and_cons == pytest.approx(0.09, abs=1e-9)
        assert rep.p_c == pytest.approx(0.09 / 0.19, abs=1e-9)
    r1, o1 = _pipeline_probability(PENGUIN_3_CERTAIN, "ClassAssertion(Not(Fly), pingu)")
    assert r1.p_c == pytest.approx(1.0, abs=1e-9)
    assert o1.p_c == pytest.approx(1.0, abs=1e-9)
    r0, o0 = _pipeline_probability(PENGUIN_3_CERTAIN, "ClassAssertion(Fly, pingu)")
    assert r0.p_c == pytest.approx(0.0, abs=1e-9)
    assert o0.p_c == pytest.approx(0.0, abs=1e-9)
    _passed(3, "P(Cons)=0.19, P(Q,Cons)=0.09, P_C=0.09/0.19; certain variant 1.0/0.0")


def test_criterion_04_university_probabilities():
    rounded = {"q1": 0.0, "q2": 0.04286, "q3": 0.80952, "q4": 0.9}
    exact = {"q1": 0.0, "q2": 0.036 / 0.84, "q3": 0.68 / 0.84, "q4": 0.9}
    kb = parse_kb(UNIVERSITY_PROB)
    for key, text in UNIVERSITY_QUERIES.items():
        r = prob_report(kb, all_justifications(kb, parse_query(text)))
        assert r.p_incons == pytest.approx(0.16, abs=1e-9), key
        assert r.p_c == pytest.approx(rounded[key], abs=1e-5), key
        assert r.p_c == pytest.approx(exact[key], abs=1e-9), key
    consistent_expected = {"q1": 0.16, "q2": 0.18, "q3": 0.84, "q4": 0.9}
    kb2 = parse_kb(UNIVERSITY_PROB_CONSISTENT)
    for key, text in UNIVERSITY_QUERIES.items():
        r = prob_report(kb2, all_justifications(kb2, parse_query(text)))
        assert r.p_c == pytest.approx(consistent_expected[key], abs=1e-9), key
    _passed(4, "P(Incons)=0.16; P_C(Q1..Q4) and the consistent variant match")


def test_criterion_05_university_verdicts_and_repairs():
    kb = parse_kb(UNIVERSITY_PROB)
    expected = {"q1": Verdict.NOT_ENTAILED, "q2": Verdict.BRAVE,
                "q3": Verdict.AR, "q4": Verdict.IAR}
    for key, text in UNIVERSITY_QUERIES.items():
        b = all_justifications(kb, parse_query(text))
        assert verdict(kb, b) is expected[key], key
    # ids 4,5,6 are the ABox; the repairs drop one conflicting assertion each
    assert oracle_repairs(kb) == (frozenset({4, 5}), frozenset({4, 6}))
    _passed(5, "verdicts NotEntailed/Brave/AR/IAR and the two repairs")


def test_criterion_06_benchmark_scaling():
    t0 = time.perf_counter()
    for n in range(2, 9):
        kb, query = chain_kb(n, "s1")
        bundle = all_justifications(kb, parse_query(query))
        assert len(bundle.query_justs) == 2 ** n, n
        assert bundle.incons_justs == ()
    kb, query = chain_kb(8, "s3", "all", 0.5)
    q = parse_query(query)
    bundle = all_justifications(kb, q)
    assert len(bundle.query_justs) == 2 ** 8
    assert len(bundle.incons_justs) == 2 ** 8
    prob_report(kb, bundle)
    verdict(kb, bundle)
    elapsed = time.perf_counter() - t0
    assert elapsed < 120.0, f"benchmark pipeline took {elapsed:.1f}s"
    _passed(6, f"2^n counts for n=2..8 and full n=8 pipeline in {elapsed:.1f}s")


def test_criterion_07_random_corpus_vs_oracles():
    rng = random.Random(20260810)
    seen = {v: 0 for v in Verdict}
    for i in range(200):
        kb = random_kb(rng, max_tbox=5, max_abox=6, max_prob=10)
        q = ConceptAssertionQuery(rng.choice(INDIVIDUALS), Atomic(rng.choice(CONCEPTS)))
        bundle = all_justifications(kb, q)
        reference = oracle_all_justifications(kb, q)
        assert bundle.query_justs == reference.query_justs, i
        assert bundle.incons_justs == reference.incons_justs, i
        r = prob_report(kb, bundle)
        o = oracle_world_probs(kb, q)
        assert r.p_incons == pytest.approx(o.p_incons, abs=1e-9), i
        assert r.p_cons == pytest.approx(o.p_cons, abs=1e-9), i
        assert r.p_q_and_cons == pytest.approx(o.p_q_and_cons, abs=1e-9), i
        assert (r.p_c is None) == (o.p_c is None), i
        if r.p_c is not None:
            assert r.p_c == pytest.approx(o.p_c, abs=1e-9), i
        v = verdict(kb, bundle)
        assert v is oracle_verdict(kb, q), i
        seen[v] += 1
        if iar_check(kb, bundle):
            assert ar_check(kb, bundle), i
        if ar_check(kb, bundle):
            assert brave_check(kb, bundle), i
        assert r.p_q_and_cons <= r.p_cons + 1e-12, i
    assert sum(seen.values()) == 200
    _passed(7, "200 random KBs: justifications, probabilities, verdicts, ladder")


def test_criterion_08_bdd_engine_against_truth_tables():
    from test_bdd import build, random_formula

    rng = random.Random(20260811)
    for k in range(1000):
        n = rng.randint(2, 12)
        f = random_formula(rng, n, rng.randint(1, 6))
        m = BddManager(n)
        r1 = build(m, f)
        r2 = build(m, f, order="swapped")
        assert r1 == r2, k  # canonicity: same function, same ref
        assignments = np.arange(1 << n, dtype=np.int64)
        bits = [(assignments >> i) & 1 for i in range(n)]

        def truth(node):
            vec = {}

            def walk(idx):
                if idx in vec:
                    return vec[idx]
                if idx < 2:
                    v = np.full(1 << n, bool(idx))
                else:
                    v = np.where(bits[m._var[idx]] == 1,
                                 walk(m._hi[idx]), walk(m._lo[idx]))
                vec[idx] = v
                return v

            return walk(node.idx)

        def formula_truth(g):
            if g[0] == "var":
                return bits[g[1]] == 1
            if g[0] == "not":
                return ~formula_truth(g[1])
            a, b = formula_truth(g[1]), formula_truth(g[2])
            return (a & b) if g[0] == "and" else (a | b)

        tv = truth(r1)
        assert np.array_equal(tv, formula_truth(f)), k
        weights = {i: rng.uniform(0.05, 0.95) for i in range(n)}
        wvec = np.ones(1 << n)
        for i in range(n):
            wvec *= np.where(bits[i] == 1, weights[i], 1.0 - weights[i])
        expected = float(wvec[tv].sum())
        p = m.probability(r1, weights)
        assert p == pytest.approx(expected, abs=1e-12), k
        assert p + m.probability(m.not_(r1), weights) == pytest.approx(1.0, abs=1e-12), k
    _passed(8, "1000 random formulas: canonicity and weighted counts within 1e-12")


def test_criterion_09_undefined_probability_and_no_repair():
    kb = parse_kb(PENGUIN_3_CERTAIN.replace("0.9 :: ", ""))  # everything certain
    q = parse_query("ClassAssertion(Fly, pingu)")
    bundle = all_justifications(kb, q)
    assert any(j <= kb.certain_ids for j in bundle.incons_justs)
    r = prob_report(kb, bundle)
    assert r.p_c is None
    assert no_repair(kb, bundle)
    assert verdict(kb, bundle) is Verdict.NOT_ENTAILED
    # mixed KB whose inconsistency is nevertheless certain
    kb2 = parse_kb(
        "SubClassOf(A, Not(B))\nClassAssertion(A, a)\nClassAssertion(B, a)\n"
        "0.5 :: ClassAssertion(C, a)\n")
    b2 = all_justifications(kb2, parse_query("ClassAssertion(C, a)"))
    r2 = prob_report(kb2, b2)
    assert r2.p_c is None
    assert no_repair(kb2, b2)
    assert verdict(kb2, b2) is Verdict.NOT_ENTAILED
    _passed(9, "all-certain inconsistency: P_C undefined and no repair")
