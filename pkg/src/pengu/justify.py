"""Complete enumeration of query and inconsistency justifications.

The query is reduced to inconsistency: for a query ``a : C`` two certain
axioms ``a : ?Q`` and ``?Q [= ~C`` are injected, with ``?Q`` a concept name
outside the user lexical space (names starting with ``?`` cannot be written
in the KB format). Minimal inconsistent subsets of the extended KB that
contain the injected axioms are justifications for the query (injected ids
stripped); those without them are justifications for the inconsistency of
the original KB.

A hitting-set tree drives completeness: each node removes a set of axioms,
extracts one minimal inconsistent subset of what remains, and branches by
removing one of its non-injected axioms per child. Extraction is two-phase:
a node first looks for a pure inconsistency justification among the
non-injected axioms and only consults the injected ones when that sub-KB is
consistent. Without this, a node whose justification differs from a pure
target only by injected (non-removable) axioms would have no branch left to
reach it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import InternalInvariantError, TooLargeError
from .kbformat import ConceptAssertionQuery, IsConsistent, Query, SubsumptionQuery
from .model import (
    And,
    Atomic,
    ConceptAssertion,
    Gci,
    KnowledgeBase,
    Origin,
    complement,
    nnf,
)
from .tableau import DEFAULT_BUDGET, find_one_incons_justification, is_consistent


@dataclass(frozen=True)
class QueryTransform:
    """The extended KB plus the ids of the injected axioms."""

    base_kb: KnowledgeBase
    kb: KnowledgeBase
    fresh_ids: frozenset[int]
    query: Query


@dataclass(frozen=True)
class JustificationBundle:
    """All minimal justifications for a query and for the inconsistency.

    Both tuples are sorted by (size, ids) and pairwise subset-incomparable.
    ``partial`` marks bundles truncated by a justification cap; probabilities
    computed from a partial bundle are lower bounds.
    """

    query_justs: tuple[frozenset[int], ...]
    incons_justs: tuple[frozenset[int], ...]
    partial: bool = False


def _canonical(sets) -> tuple[frozenset[int], ...]:
    return tuple(sorted(set(sets), key=lambda s: (len(s), tuple(sorted(s)))))


def _fresh_name(taken: frozenset[str], stem: str) -> str:
    name = stem
    k = 1
    while name in taken:
        k += 1
        name = f"{stem}{k}"
    return name


def transform_query(kb: KnowledgeBase, q: Query) -> QueryTransform:
    """Inject the negation of the query as certain axioms over a fresh concept."""
    if isinstance(q, IsConsistent):
        raise ValueError("consistency is tested directly, not via a transform")
    ext = kb.copy()
    marker = Atomic(_fresh_name(kb.concept_names(), "?Q"))
    if isinstance(q, ConceptAssertionQuery):
        a1 = ext.add(ConceptAssertion(q.individual, marker), origin=Origin.FRESH_QUERY)
        a2 = ext.add(Gci(marker, complement(q.concept)), origin=Origin.FRESH_QUERY)
    elif isinstance(q, SubsumptionQuery):
        ind = _fresh_name(kb.individual_names(), "?q0")
        a1 = ext.add(ConceptAssertion(ind, marker), origin=Origin.FRESH_QUERY)
        a2 = ext.add(Gci(marker, And((nnf(q.sub), complement(q.sup)))),
                     origin=Origin.FRESH_QUERY)
    else:
        raise TypeError(f"not a query: {q!r}")
    return QueryTransform(base_kb=kb, kb=ext, fresh_ids=frozenset({a1, a2}), query=q)


class EntailmentChecker:
    """Reusable entailment tests against sub-KBs of one base KB."""

    def __init__(self, kb: KnowledgeBase, q: Query, budget: int = DEFAULT_BUDGET):
        self.transform = transform_query(kb, q)
        self.budget = budget
        self.cache: dict = {}

    def entails(self, active_ids) -> bool:
        active = frozenset(active_ids) | self.transform.fresh_ids
        return not is_consistent(self.transform.kb, active_ids=active,
                                 budget=self.budget, cache=self.cache)


def _hst(ext: KnowledgeBase, fresh_ids: frozenset[int],
         cap: Optional[int], budget: int) -> tuple[list, list, bool]:
    all_ids = frozenset(ext.ids)
    nonfresh = all_ids - fresh_ids
    cache: dict = {}
    pure: list[frozenset[int]] = []
    querylike: list[frozenset[int]] = []
    partial = False

    # Consistency is downward closed: a consistent root rules out pure
    # inconsistency justifications at every node.
    pure_possible = not is_consistent(ext, active_ids=nonfresh, budget=budget, cache=cache)

    def cap_hit() -> bool:
        return cap is not None and len(pure) + len(querylike) >= cap

    explored: set[frozenset[int]] = set()
    queue: deque[tuple[frozenset[int], bool]] = deque([(frozenset(), pure_possible)])
    while queue:
        removed, try_pure = queue.popleft()
        if removed in explored:
            continue
        explored.add(removed)
        if cap_hit():
            partial = True
            break
        just = None
        pure_here = False
        if try_pure:
            for j in pure:
                if not (j & removed):
                    just = j
                    pure_here = True
                    break
            if just is None:
                just = find_one_incons_justification(
                    ext, active_ids=nonfresh - removed, budget=budget, cache=cache)
                if just is not None:
                    pure.append(just)
                    pure_here = True
        if just is None and fresh_ids:
            for j in querylike:
                if not (j & removed):
                    just = j
                    break
            if just is None:
                just = find_one_incons_justification(
                    ext, active_ids=all_ids - removed, budget=budget, cache=cache)
                if just is not None:
                    if not fresh_ids <= just:
                        raise InternalInvariantError(
                            "query-phase justification misses an injected axiom"
                        )
                    querylike.append(just)
        if just is None:
            continue  # consistent: this node closes the path
        child_try_pure = try_pure and pure_here
        for aid in sorted(just - fresh_ids):
            grown = removed | {aid}
            if grown not in explored:
                queue.append((grown, child_try_pure))
    return pure, querylike, partial


def all_justifications(kb: KnowledgeBase, q: Query, *,
                       max_justifications: Optional[int] = None,
                       budget: int = DEFAULT_BUDGET) -> JustificationBundle:
    """Every minimal justification for ``q`` and for the inconsistency of ``kb``."""
    if isinstance(q, IsConsistent):
        pure, _, partial = _hst(kb, frozenset(), max_justifications, budget)
        return JustificationBundle((), _canonical(pure), partial)
    t = transform_query(kb, q)
    pure, querylike, partial = _hst(t.kb, t.fresh_ids, max_justifications, budget)
    return JustificationBundle(
        _canonical(j - t.fresh_ids for j in querylike), _canonical(pure), partial)


def oracle_all_justifications(kb: KnowledgeBase, q: Query, *,
                              max_axioms: int = 14,
                              budget: int = DEFAULT_BUDGET) -> JustificationBundle:
    """Brute-force reference: enumerate all axiom subsets by increasing size.

    Minimal inconsistent subsets are the inconsistency justifications; minimal
    consistent subsets entailing the query are the query justifications.
    """
    from itertools import combinations

    ids = kb.ids
    if len(ids) > max_axioms:
        raise TooLargeError(
            f"{len(ids)} axioms exceed the subset-enumeration guard of {max_axioms}")
    checker = None if isinstance(q, IsConsistent) else EntailmentChecker(kb, q, budget)
    cache: dict = {}
    incons_min: list[frozenset[int]] = []
    query_min: list[frozenset[int]] = []
    for r in range(len(ids) + 1):
        for combo in combinations(ids, r):
            s = frozenset(combo)
            if any(m <= s for m in incons_min):
                continue  # strict superset of a minimal inconsistent set
            if not is_consistent(kb, active_ids=s, budget=budget, cache=cache):
                incons_min.append(s)
                continue
            if checker is not None and not any(m <= s for m in query_min) \
                    and checker.entails(s):
                query_min.append(s)
    return JustificationBundle(_canonical(query_min), _canonical(incons_min), False)
