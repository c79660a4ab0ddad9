"""ALC tableau with justification tracing.

Decides KB consistency and, for inconsistent KBs, extracts one
subset-minimal inconsistent axiom set. Every label in the tableau carries a
tracing value: a set of alternative justifications (axiom-id sets) that
produced it. When a branch closes, the traces of the clashing labels are
joined; when all branches close, the union of one clash justification per
branch is an inconsistent candidate that a deletion-based shrink pass
reduces to a subset-minimal one.

Expansion rules and their fixed priority:

  1. conjunction: ``And`` label adds its missing arguments.
  2. universal:   ``All(R, C)`` adds ``C`` to every R-successor.
  3. inclusion:   each GCI ``C [= D`` injects ``nnf(~C | D)`` into every node.
  4. disjunction: ``Or`` label branches over its arguments. Arguments whose
     complement is already present close immediately; their traces are folded
     into the surviving branches so per-branch justifications stay sound.
  5. existential: ``Some(R, C)`` creates a fresh successor unless the node is
     blocked (an ancestor's label set subsumes its own).

Nodes are visited in creation order; everything is deterministic.

Labels also carry the set of disjunction choice points they depend on.
When a branch closes with a clash that does not depend on the choice made
at the current branch point, the same clash closes every sibling branch, so
they are skipped (dependency-directed backjumping). This keeps inconsistent
KBs with many irrelevant disjunctions from exploding exponentially.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .errors import ResourceLimitError
from .model import (
    All,
    And,
    Bottom,
    ConceptAssertion,
    Gci,
    KnowledgeBase,
    Or,
    RoleAssertion,
    Some,
    complement,
    nnf,
)

Justification = frozenset  # set of axiom ids
Tau = frozenset  # set of Justification: alternative derivations of one label

DEFAULT_BUDGET = 1_000_000

_NO_DEPS: frozenset[int] = frozenset()


def _minimize(sets: Iterable[frozenset]) -> Tau:
    """Keep only inclusion-minimal members."""
    kept: list[frozenset] = []
    for s in sorted(set(sets), key=len):
        if not any(k <= s for k in kept):
            kept.append(s)
    return frozenset(kept)


def _tau_product(t1: Tau, t2: Tau) -> Tau:
    return _minimize(a | b for a in t1 for b in t2)


def _best(justs: Tau) -> Justification:
    """Deterministic pick: smallest cardinality, then lexicographic on ids."""
    return min(justs, key=lambda j: (len(j), tuple(sorted(j))))


class _State:
    """One branch of the search: labelled nodes, edges, bookkeeping.

    ``labels[nid]`` maps each concept to ``(tau, deps)`` where ``tau`` is the
    tracing value and ``deps`` the branch points the label depends on.
    """

    __slots__ = ("order", "labels", "edges", "parent", "node_deps",
                 "fired_some", "gci_mark", "clash")

    def __init__(self):
        self.order: list[int] = []
        self.labels: dict[int, dict] = {}
        self.edges: dict[tuple[int, str], dict[int, tuple]] = {}
        self.parent: dict[int, Optional[int]] = {}
        self.node_deps: dict[int, frozenset[int]] = {}
        self.fired_some: set[tuple[int, Some]] = set()
        self.gci_mark: set[tuple[int, int]] = set()
        self.clash: Optional[tuple[Justification, frozenset[int]]] = None

    def clone(self) -> "_State":
        s = _State.__new__(_State)
        s.order = list(self.order)
        s.labels = {nid: dict(m) for nid, m in self.labels.items()}
        s.edges = {k: dict(v) for k, v in self.edges.items()}
        s.parent = dict(self.parent)
        s.node_deps = dict(self.node_deps)
        s.fired_some = set(self.fired_some)
        s.gci_mark = set(self.gci_mark)
        s.clash = self.clash
        return s

    def new_node(self, parent: Optional[int], deps: frozenset[int]) -> int:
        nid = self.order[-1] + 1 if self.order else 0
        self.order.append(nid)
        self.labels[nid] = {}
        self.parent[nid] = parent
        self.node_deps[nid] = deps
        return nid


class _TableauRun:
    def __init__(self, kb: KnowledgeBase, active: frozenset, budget: int):
        self.kb = kb
        self.active = active
        self.budget = budget
        self.steps = 0
        self.branch_points = 0
        self.gci_disjs: list[tuple[int, Or]] = []
        for aid in sorted(active):
            ax = kb.axiom(aid).axiom
            if isinstance(ax, Gci):
                self.gci_disjs.append((aid, Or((complement(ax.sub), nnf(ax.sup)))))

    # -- state construction --------------------------------------------------

    def initial_state(self) -> _State:
        st = _State()
        individuals: dict[str, int] = {}
        names = set()
        for aid in self.active:
            ax = self.kb.axiom(aid).axiom
            if isinstance(ax, ConceptAssertion):
                names.add(ax.individual)
            elif isinstance(ax, RoleAssertion):
                names.add(ax.subject)
                names.add(ax.object)
        for name in sorted(names):
            individuals[name] = st.new_node(None, _NO_DEPS)
        if not individuals:
            st.new_node(None, _NO_DEPS)  # fresh element: the domain is nonempty
        for aid in sorted(self.active):
            ax = self.kb.axiom(aid).axiom
            tau = frozenset({frozenset({aid})})
            if isinstance(ax, ConceptAssertion):
                self.add_label(st, individuals[ax.individual], nnf(ax.concept),
                               tau, _NO_DEPS)
            elif isinstance(ax, RoleAssertion):
                key = (individuals[ax.subject], ax.role)
                st.edges.setdefault(key, {})[individuals[ax.object]] = (tau, _NO_DEPS)
        return st

    # -- labels and clash detection -------------------------------------------

    def add_label(self, st: _State, nid: int, c, tau: Tau, deps: frozenset[int]) -> None:
        nl = st.labels[nid]
        existing = nl.get(c)
        if existing is not None:
            # Alternative derivation: merge traces, keep the first (already
            # valid in this branch) dependency set.
            merged = _minimize(existing[0] | tau)
            if merged != existing[0]:
                nl[c] = (merged, existing[1])
            return
        tau = _minimize(tau)
        nl[c] = (tau, deps)
        if st.clash is None:
            if isinstance(c, Bottom):
                st.clash = (_best(tau), deps)
            else:
                partner = nl.get(complement(c))
                if partner is not None:
                    st.clash = (_best(_tau_product(tau, partner[0])),
                                deps | partner[1])

    def blocked(self, st: _State, nid: int) -> bool:
        mine = st.labels[nid].keys()
        anc = st.parent[nid]
        while anc is not None:
            if mine <= st.labels[anc].keys():
                return True
            anc = st.parent[anc]
        return False

    # -- rule scheduling -------------------------------------------------------

    def next_step(self, st: _State):
        labels = st.labels
        for nid in st.order:
            for c in labels[nid]:
                if type(c) is And:
                    missing = [a for a in c.args if a not in labels[nid]]
                    if missing:
                        return ("and", nid, c, missing)
        for nid in st.order:
            for c in labels[nid]:
                if type(c) is All:
                    succ = st.edges.get((nid, c.role))
                    if succ:
                        for dst in succ:
                            if c.filler not in labels[dst]:
                                return ("forall", nid, c, dst)
        for nid in st.order:
            for gid, disj in self.gci_disjs:
                if (nid, gid) not in st.gci_mark:
                    return ("gci", nid, gid, disj)
        for nid in st.order:
            for c in labels[nid]:
                if type(c) is Or and not any(d in labels[nid] for d in c.args):
                    return ("or", nid, c)
        for nid in st.order:
            blocked = None
            for c in labels[nid]:
                if type(c) is Some and (nid, c) not in st.fired_some:
                    if blocked is None:
                        blocked = self.blocked(st, nid)
                    if not blocked:
                        return ("some", nid, c)
        return None

    def tick(self) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise ResourceLimitError(
                f"tableau exceeded the budget of {self.budget} rule applications"
            )

    # -- branch exploration ------------------------------------------------------

    def explore(self, st: _State):
        """Returns ``(open, pick, deps)``. An open branch proves consistency;
        otherwise ``pick`` is the union of one clash justification per branch
        of the closed subtree and ``deps`` the branch points it depends on."""
        while True:
            if st.clash is not None:
                pick, deps = st.clash
                return False, pick, deps
            step = self.next_step(st)
            if step is None:
                return True, None, None
            self.tick()
            kind = step[0]
            if kind == "and":
                _, nid, c, missing = step
                tau, deps = st.labels[nid][c]
                for a in missing:
                    self.add_label(st, nid, a, tau, deps)
                    if st.clash is not None:
                        break
            elif kind == "forall":
                _, nid, c, dst = step
                tau, deps = st.labels[nid][c]
                etau, edeps = st.edges[(nid, c.role)][dst]
                self.add_label(st, dst, c.filler, _tau_product(tau, etau),
                               deps | edeps)
            elif kind == "gci":
                _, nid, gid, disj = step
                st.gci_mark.add((nid, gid))
                self.add_label(st, nid, disj, frozenset({frozenset({gid})}),
                               st.node_deps[nid])
            elif kind == "some":
                _, nid, c = step
                tau, deps = st.labels[nid][c]
                st.fired_some.add((nid, c))
                child = st.new_node(nid, deps)
                st.edges.setdefault((nid, c.role), {})[child] = (tau, deps)
                self.add_label(st, child, c.filler, tau, deps)
            else:  # "or"
                _, nid, c = step
                tau, deps = st.labels[nid][c]
                nl = st.labels[nid]
                viable = []
                for d in c.args:
                    if isinstance(d, Bottom):
                        pass  # closes with no extra trace
                    else:
                        partner = nl.get(complement(d))
                        if partner is None:
                            if d not in viable:
                                viable.append(d)
                            continue
                        tau = _tau_product(tau, partner[0])
                        deps = deps | partner[1]
                if not viable:
                    st.clash = (_best(tau), deps)
                    continue
                if len(viable) == 1:
                    self.add_label(st, nid, viable[0], tau, deps)
                    continue
                bp = self.branch_points
                self.branch_points += 1
                picks: set[int] = set()
                all_deps: set[int] = set()
                for d in viable:
                    sub = st.clone()
                    self.add_label(sub, nid, d, tau, deps | {bp})
                    open_, pick, cdeps = self.explore(sub)
                    if open_:
                        return True, None, None
                    if bp not in cdeps:
                        # The clash is independent of this choice: it closes
                        # every sibling branch as well.
                        return False, pick, cdeps
                    picks |= pick
                    all_deps |= cdeps
                return False, frozenset(picks), frozenset(all_deps - {bp})


def _run(kb: KnowledgeBase, active: frozenset, budget: int) -> tuple[bool, Optional[frozenset]]:
    run = _TableauRun(kb, active, budget)
    open_, pick, _ = run.explore(run.initial_state())
    return (True, None) if open_ else (False, pick)


def _active_set(kb: KnowledgeBase, active_ids) -> frozenset:
    return frozenset(kb.ids) if active_ids is None else frozenset(active_ids)


def is_consistent(kb: KnowledgeBase, *, active_ids=None,
                  budget: int = DEFAULT_BUDGET, cache: Optional[dict] = None) -> bool:
    """True iff the KB (restricted to ``active_ids`` if given) has a model.

    ``cache`` maps frozen active-id sets to booleans and may be shared across
    calls on the same KB within one enumeration session.
    """
    active = _active_set(kb, active_ids)
    if cache is not None:
        hit = cache.get(active)
        if hit is not None:
            return hit
    ok, _ = _run(kb, active, budget)
    if cache is not None:
        cache[active] = ok
    return ok


def find_one_incons_justification(kb: KnowledgeBase, *, active_ids=None,
                                  budget: int = DEFAULT_BUDGET,
                                  cache: Optional[dict] = None) -> Optional[frozenset]:
    """A subset-minimal inconsistent axiom-id set, or None if consistent."""
    active = _active_set(kb, active_ids)
    ok, candidate = _run(kb, active, budget)
    if cache is not None:
        cache[active] = ok
    if ok:
        return None
    # The traced candidate is inconsistent by construction; fall back to the
    # full active set if tracing ever under-approximates.
    if is_consistent(kb, active_ids=candidate, budget=budget, cache=cache):
        candidate = active
    current = set(candidate)
    for aid in sorted(candidate):
        trial = frozenset(current - {aid})
        if not is_consistent(kb, active_ids=trial, budget=budget, cache=cache):
            current.remove(aid)
    return frozenset(current)
