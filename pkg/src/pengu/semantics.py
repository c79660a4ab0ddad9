"""Query probabilities and repair-semantics verdicts from justification bundles.

Probabilities follow the annotated-axiom semantics: independent Bernoulli
variables select probabilistic axioms, a world is the certain axioms plus the
selected ones, and

    P_C(Q) = P(Q, Cons) / P(Cons),

undefined when no consistent world exists. All probabilities are computed by
weighted model counting over BDDs of the justification DNFs.

Repair checks treat the *removable* axioms as the ones a repair may drop; by
default removable = probabilistic (an annotation strictly below 1 marks an
axiom as retractable), with an alternative classical mode where the whole
ABox is removable. Verdicts form a ladder: IAR implies AR implies Brave.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .bdd import BddManager
from .errors import InternalInvariantError, TooLargeError
from .justify import EntailmentChecker, JustificationBundle
from .kbformat import IsConsistent, Query
from .model import KnowledgeBase, World, world_probability
from .tableau import DEFAULT_BUDGET, is_consistent


class Verdict(Enum):
    NOT_ENTAILED = "not_entailed"
    BRAVE = "brave"
    AR = "ar"
    IAR = "iar"


@dataclass(frozen=True)
class ProbReport:
    p_incons: float
    p_cons: float
    p_q_and_cons: float
    p_c: Optional[float]  # None: certainly inconsistent, probability undefined
    partial: bool = False


REMOVABLE_MODES = ("prob", "abox")


def removable_ids(kb: KnowledgeBase, mode: str = "prob") -> frozenset[int]:
    if mode == "prob":
        return kb.probabilistic_ids
    if mode == "abox":
        return kb.abox_ids
    raise ValueError(f"unknown removable mode {mode!r}; expected one of {REMOVABLE_MODES}")


# --------------------------------------------------------------------------
# Probabilities
# --------------------------------------------------------------------------

def _prob_space(kb: KnowledgeBase) -> tuple[BddManager, dict[int, int], frozenset[int], dict[int, float]]:
    prob = sorted(kb.probabilistic_ids)
    m = BddManager(len(prob))
    var_of = {aid: i for i, aid in enumerate(prob)}
    certain = frozenset(kb.ids) - kb.probabilistic_ids
    weights = {i: kb.axiom(aid).probability for aid, i in var_of.items()}
    return m, var_of, certain, weights


def prob_report(kb: KnowledgeBase, bundle: JustificationBundle) -> ProbReport:
    """P(Incons), P(Cons), P(Q, Cons) and P_C(Q) from a justification bundle."""
    m, var_of, certain, weights = _prob_space(kb)
    f_q = m.from_justifications(bundle.query_justs, var_of, certain)
    f_i = m.from_justifications(bundle.incons_justs, var_of, certain)
    f_c = m.not_(f_i)
    p_incons = m.probability(f_i, weights)
    p_cons = m.probability(f_c, weights)
    if abs(p_cons - (1.0 - p_incons)) > 1e-12:
        raise InternalInvariantError("P(Cons) and 1 - P(Incons) diverged")
    p_q_and_cons = m.probability(m.and_(f_q, f_c), weights)
    if p_q_and_cons > p_cons + 1e-12:
        raise InternalInvariantError("P(Q, Cons) exceeds P(Cons)")
    p_c = None if m.is_zero(f_c) else p_q_and_cons / p_cons
    return ProbReport(p_incons, p_cons, p_q_and_cons, p_c, bundle.partial)


# --------------------------------------------------------------------------
# Repair-semantics checks
# --------------------------------------------------------------------------

def _minimal(sets) -> list[frozenset[int]]:
    kept: list[frozenset[int]] = []
    for s in sorted(set(sets), key=lambda s: (len(s), tuple(sorted(s)))):
        if not any(k <= s for k in kept):
            kept.append(s)
    return kept


def _repair_space(kb: KnowledgeBase, rem: frozenset[int]) -> tuple[BddManager, dict[int, int], frozenset[int]]:
    rem_sorted = sorted(rem)
    m = BddManager(len(rem_sorted))
    var_of = {aid: i for i, aid in enumerate(rem_sorted)}
    certain = frozenset(kb.ids) - rem
    return m, var_of, certain


def no_repair(kb: KnowledgeBase, bundle: JustificationBundle,
              removable: Optional[frozenset[int]] = None) -> bool:
    """True iff the non-removable part is itself inconsistent (no repair exists)."""
    rem = kb.probabilistic_ids if removable is None else removable
    return any(not (j & rem) for j in bundle.incons_justs)


def brave_check(kb: KnowledgeBase, bundle: JustificationBundle,
                removable: Optional[frozenset[int]] = None) -> bool:
    """True iff some justification survives in some consistent removable choice."""
    rem = kb.probabilistic_ids if removable is None else removable
    m, var_of, certain = _repair_space(kb, rem)
    f_q = m.from_justifications(bundle.query_justs, var_of, certain)
    f_i = m.from_justifications(bundle.incons_justs, var_of, certain)
    return not m.is_zero(m.and_(f_q, m.not_(f_i)))


def iar_check(kb: KnowledgeBase, bundle: JustificationBundle,
              removable: Optional[frozenset[int]] = None) -> bool:
    """True iff some query justification avoids every tainted removable axiom.

    Tainted axioms are those in some *minimal* conflict (the inclusion-minimal
    removable projections of the inconsistency justifications): exactly the
    axioms missing from at least one repair. A raw projection can strictly
    contain another conflict; its extra axioms survive in every repair and
    must not be treated as tainted. Gated on Brave so the ladder
    IAR => AR => Brave holds on every KB, including ones without any repair.
    """
    if not brave_check(kb, bundle, removable):
        return False
    rem = kb.probabilistic_ids if removable is None else removable
    tainted: set[int] = set()
    for conflict in _minimal(j & rem for j in bundle.incons_justs):
        tainted |= conflict
    return any(not (j & rem & tainted) for j in bundle.query_justs)


def ar_check(kb: KnowledgeBase, bundle: JustificationBundle,
             removable: Optional[frozenset[int]] = None) -> bool:
    """True iff the query holds in every repair.

    The test compiles "every cause is contradicted inside a consistent world"
    and reports AR when it is unsatisfiable: one auxiliary variable per
    (cause, overlapping conflict) pair asserts that the conflict's remaining
    axioms are all present, which forces the repair to drop part of the
    cause. Pairs whose obligation set is a superset of another pair's for the
    same cause cannot enable any extra assignment and are pruned before
    allocation. Gated on Brave like :func:`iar_check`.
    """
    if not brave_check(kb, bundle, removable):
        return False
    rem = kb.probabilistic_ids if removable is None else removable
    conflicts = _minimal(j & rem for j in bundle.incons_justs)
    causes_raw = {j & rem for j in bundle.query_justs}
    if any(not c for c in causes_raw):
        return True  # a fully certain justification survives every repair
    causes = _minimal(c for c in causes_raw
                      if not any(b <= c for b in conflicts))
    m, var_of, certain = _repair_space(kb, rem)
    f_i = m.from_justifications(bundle.incons_justs, var_of, certain)
    formula = m.not_(f_i)
    for cause in causes:
        overlapping = [b for b in conflicts if b & cause]
        if not overlapping:
            return True  # nothing can contradict this cause
        disjunction = m.zero
        kept_obligations: list[frozenset[int]] = []
        for conflict in sorted(overlapping,
                               key=lambda b: (len(b - cause), tuple(sorted(b - cause)))):
            obligation = conflict - cause
            if any(k <= obligation for k in kept_obligations):
                continue
            kept_obligations.append(obligation)
            term = m.var(m.add_var())
            for aid in sorted(obligation):
                term = m.and_(term, m.var(var_of[aid]))
            disjunction = m.or_(disjunction, term)
        formula = m.and_(formula, disjunction)
        if m.is_zero(formula):
            return True
    return m.is_zero(formula)


def verdict(kb: KnowledgeBase, bundle: JustificationBundle,
            removable: Optional[frozenset[int]] = None) -> Verdict:
    """Strongest semantics under which the query holds, checked Brave-first."""
    if not brave_check(kb, bundle, removable):
        return Verdict.NOT_ENTAILED
    if iar_check(kb, bundle, removable):
        return Verdict.IAR
    if ar_check(kb, bundle, removable):
        return Verdict.AR
    return Verdict.BRAVE


# --------------------------------------------------------------------------
# Brute-force oracles
# --------------------------------------------------------------------------

def oracle_world_probs(kb: KnowledgeBase, q: Query, *,
                       max_prob_axioms: int = 20,
                       budget: int = DEFAULT_BUDGET) -> ProbReport:
    """Exhaustive world enumeration; the reference for probability tests."""
    prob = sorted(kb.probabilistic_ids)
    if len(prob) > max_prob_axioms:
        raise TooLargeError(
            f"{len(prob)} probabilistic axioms exceed the world-enumeration "
            f"guard of {max_prob_axioms}")
    checker = None if isinstance(q, IsConsistent) else EntailmentChecker(kb, q, budget)
    certain = kb.certain_ids
    cache: dict = {}
    p_incons = p_cons = p_q = 0.0
    consistent_worlds = 0
    for bits in range(1 << len(prob)):
        selection = frozenset(aid for i, aid in enumerate(prob) if bits >> i & 1)
        pw = world_probability(kb, World(selection))
        active = certain | selection
        if is_consistent(kb, active_ids=active, budget=budget, cache=cache):
            consistent_worlds += 1
            p_cons += pw
            if checker is not None and checker.entails(active):
                p_q += pw
        else:
            p_incons += pw
    p_c = (p_q / p_cons) if consistent_worlds else None
    return ProbReport(p_incons, p_cons, p_q, p_c, False)


def oracle_repairs(kb: KnowledgeBase, removable: Optional[frozenset[int]] = None, *,
                   max_removable: int = 16,
                   budget: int = DEFAULT_BUDGET) -> tuple[frozenset[int], ...]:
    """All maximal removable subsets consistent with the fixed part.

    Empty when the fixed part is itself inconsistent: such a KB has no repair.
    """
    from itertools import combinations

    rem = sorted(kb.probabilistic_ids if removable is None else removable)
    if len(rem) > max_removable:
        raise TooLargeError(
            f"{len(rem)} removable axioms exceed the repair-enumeration "
            f"guard of {max_removable}")
    fixed = frozenset(kb.ids) - frozenset(rem)
    cache: dict = {}
    repairs: list[frozenset[int]] = []
    for r in range(len(rem), -1, -1):
        for combo in combinations(rem, r):
            s = frozenset(combo)
            if any(s <= kept for kept in repairs):
                continue
            if is_consistent(kb, active_ids=fixed | s, budget=budget, cache=cache):
                repairs.append(s)
    return tuple(sorted(repairs, key=lambda s: tuple(sorted(s))))


def oracle_verdict(kb: KnowledgeBase, q: Query,
                   removable: Optional[frozenset[int]] = None, *,
                   budget: int = DEFAULT_BUDGET) -> Verdict:
    """Evaluate Brave/AR/IAR literally over the enumerated repairs."""
    rem = kb.probabilistic_ids if removable is None else removable
    repairs = oracle_repairs(kb, rem, budget=budget)
    if not repairs or isinstance(q, IsConsistent):
        return Verdict.NOT_ENTAILED
    checker = EntailmentChecker(kb, q, budget)
    fixed = frozenset(kb.ids) - rem
    entailed = [checker.entails(fixed | r) for r in repairs]
    if not any(entailed):
        return Verdict.NOT_ENTAILED
    core = frozenset.intersection(*repairs)
    if checker.entails(fixed | core):
        return Verdict.IAR
    if all(entailed):
        return Verdict.AR
    return Verdict.BRAVE
