"""Core domain types: ALC concepts, annotated axioms, knowledge bases, worlds.

All values are immutable after construction and safe to share between
concurrent readers. Structural equality of concepts is order-sensitive:
``And(A, B)`` and ``And(B, A)`` are distinct terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Union

from .errors import (
    DuplicateAxiomError,
    InternalInvariantError,
    ProbabilityOutOfRangeError,
    UnknownAxiomIdError,
)


# --------------------------------------------------------------------------
# Concepts
# --------------------------------------------------------------------------

class Concept:
    """Base class of ALC concept expressions."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Atomic(Concept):
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("concept name must be nonempty")


@dataclass(frozen=True, slots=True)
class Top(Concept):
    pass


@dataclass(frozen=True, slots=True)
class Bottom(Concept):
    pass


@dataclass(frozen=True, slots=True)
class Not(Concept):
    arg: Concept


@dataclass(frozen=True, slots=True)
class And(Concept):
    args: tuple[Concept, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) < 2:
            raise ValueError("And requires at least two arguments")


@dataclass(frozen=True, slots=True)
class Or(Concept):
    args: tuple[Concept, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) < 2:
            raise ValueError("Or requires at least two arguments")


@dataclass(frozen=True, slots=True)
class Some(Concept):
    role: str
    filler: Concept


@dataclass(frozen=True, slots=True)
class All(Concept):
    role: str
    filler: Concept


TOP = Top()
BOTTOM = Bottom()


@lru_cache(maxsize=None)
def nnf(c: Concept) -> Concept:
    """Negation normal form: negation occurs only directly above atomic names."""
    if isinstance(c, (Atomic, Top, Bottom)):
        return c
    if isinstance(c, And):
        return And(tuple(nnf(a) for a in c.args))
    if isinstance(c, Or):
        return Or(tuple(nnf(a) for a in c.args))
    if isinstance(c, Some):
        return Some(c.role, nnf(c.filler))
    if isinstance(c, All):
        return All(c.role, nnf(c.filler))
    if isinstance(c, Not):
        a = c.arg
        if isinstance(a, Atomic):
            return c
        if isinstance(a, Top):
            return BOTTOM
        if isinstance(a, Bottom):
            return TOP
        if isinstance(a, Not):
            return nnf(a.arg)
        if isinstance(a, And):
            return Or(tuple(nnf(Not(x)) for x in a.args))
        if isinstance(a, Or):
            return And(tuple(nnf(Not(x)) for x in a.args))
        if isinstance(a, Some):
            return All(a.role, nnf(Not(a.filler)))
        if isinstance(a, All):
            return Some(a.role, nnf(Not(a.filler)))
    raise TypeError(f"not a concept: {c!r}")


@lru_cache(maxsize=None)
def complement(c: Concept) -> Concept:
    """The NNF of the negation of ``c``."""
    return nnf(Not(c))


def subconcepts(c: Concept) -> Iterator[Concept]:
    """Yield ``c`` and every concept nested inside it."""
    yield c
    if isinstance(c, Not):
        yield from subconcepts(c.arg)
    elif isinstance(c, (And, Or)):
        for a in c.args:
            yield from subconcepts(a)
    elif isinstance(c, (Some, All)):
        yield from subconcepts(c.filler)


# --------------------------------------------------------------------------
# Axioms
# --------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Gci:
    """General concept inclusion: ``sub`` is subsumed by ``sup``."""

    sub: Concept
    sup: Concept


@dataclass(frozen=True, slots=True)
class ConceptAssertion:
    individual: str
    concept: Concept


@dataclass(frozen=True, slots=True)
class RoleAssertion:
    role: str
    subject: str
    object: str


Axiom = Union[Gci, ConceptAssertion, RoleAssertion]


class Origin(Enum):
    SOURCE = "source"
    FRESH_QUERY = "fresh_query"


@dataclass(frozen=True, slots=True)
class AnnotatedAxiom:
    id: int
    axiom: Axiom
    probability: Optional[float]
    origin: Origin = Origin.SOURCE

    @property
    def certain(self) -> bool:
        return self.probability is None


def _check_probability(p: float) -> float:
    p = float(p)
    if not math.isfinite(p) or not (0.0 < p < 1.0):
        raise ProbabilityOutOfRangeError(
            f"probability must satisfy 0 < p < 1, got {p!r}; "
            "omit the annotation entirely for a certain axiom"
        )
    return p


class KnowledgeBase:
    """Ordered collection of annotated axioms with stable integer ids.

    Ids are assigned densely in declaration order; sub-KBs built with
    :meth:`restricted_to` keep the parent's ids. Two axioms with an identical
    payload are rejected: independent evidence for the same axiom must be
    combined into a single annotation (p = 1-(1-p1)*(1-p2)) by the caller.
    """

    __slots__ = ("_by_id", "_payload_to_id")

    def __init__(self):
        self._by_id: dict[int, AnnotatedAxiom] = {}
        self._payload_to_id: dict[Axiom, int] = {}

    def add(self, axiom: Axiom, probability: Optional[float] = None, *,
            origin: Origin = Origin.SOURCE) -> int:
        if probability is not None:
            probability = _check_probability(probability)
        if origin is Origin.FRESH_QUERY and probability is not None:
            raise InternalInvariantError("injected query axioms must be certain")
        existing = self._payload_to_id.get(axiom)
        if existing is not None:
            raise DuplicateAxiomError(
                f"axiom already present with id {existing}; combine independent "
                "evidence into one annotation with p = 1-(1-p1)*(1-p2)",
                existing_id=existing,
            )
        aid = max(self._by_id) + 1 if self._by_id else 0
        self._by_id[aid] = AnnotatedAxiom(aid, axiom, probability, origin)
        self._payload_to_id[axiom] = aid
        return aid

    def _insert(self, ann: AnnotatedAxiom) -> None:
        # Internal: used by restricted_to/copy to preserve ids.
        self._by_id[ann.id] = ann
        self._payload_to_id[ann.axiom] = ann.id

    # -- access ------------------------------------------------------------

    def __len__(self) -> int:
        return len(self._by_id)

    def __iter__(self) -> Iterator[AnnotatedAxiom]:
        for aid in self.ids:
            yield self._by_id[aid]

    def __contains__(self, aid: int) -> bool:
        return aid in self._by_id

    def axiom(self, aid: int) -> AnnotatedAxiom:
        try:
            return self._by_id[aid]
        except KeyError:
            raise UnknownAxiomIdError(f"no axiom with id {aid}") from None

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(sorted(self._by_id))

    @property
    def tbox_ids(self) -> frozenset[int]:
        return frozenset(a.id for a in self._by_id.values() if isinstance(a.axiom, Gci))

    @property
    def abox_ids(self) -> frozenset[int]:
        return frozenset(a.id for a in self._by_id.values() if not isinstance(a.axiom, Gci))

    @property
    def probabilistic_ids(self) -> frozenset[int]:
        return frozenset(a.id for a in self._by_id.values() if a.probability is not None)

    @property
    def certain_ids(self) -> frozenset[int]:
        return frozenset(a.id for a in self._by_id.values() if a.probability is None)

    @property
    def fresh_ids(self) -> frozenset[int]:
        return frozenset(a.id for a in self._by_id.values() if a.origin is Origin.FRESH_QUERY)

    # -- derived KBs ---------------------------------------------------------

    def restricted_to(self, ids: Iterable[int]) -> "KnowledgeBase":
        sub = KnowledgeBase()
        for aid in sorted(set(ids)):
            sub._insert(self.axiom(aid))
        return sub

    def copy(self) -> "KnowledgeBase":
        return self.restricted_to(self._by_id)

    # -- name inventories (used for fresh-name generation and generators) ----

    def concept_names(self) -> frozenset[str]:
        names = set()
        for ann in self._by_id.values():
            ax = ann.axiom
            cs = (ax.sub, ax.sup) if isinstance(ax, Gci) else \
                 (ax.concept,) if isinstance(ax, ConceptAssertion) else ()
            for c in cs:
                for s in subconcepts(c):
                    if isinstance(s, Atomic):
                        names.add(s.name)
        return frozenset(names)

    def individual_names(self) -> frozenset[str]:
        names = set()
        for ann in self._by_id.values():
            ax = ann.axiom
            if isinstance(ax, ConceptAssertion):
                names.add(ax.individual)
            elif isinstance(ax, RoleAssertion):
                names.add(ax.subject)
                names.add(ax.object)
        return frozenset(names)

    def role_names(self) -> frozenset[str]:
        names = set()
        for ann in self._by_id.values():
            ax = ann.axiom
            if isinstance(ax, RoleAssertion):
                names.add(ax.role)
            else:
                cs = (ax.sub, ax.sup) if isinstance(ax, Gci) else (ax.concept,)
                for c in cs:
                    for s in subconcepts(c):
                        if isinstance(s, (Some, All)):
                            names.add(s.role)
        return frozenset(names)


# --------------------------------------------------------------------------
# Worlds
# --------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class World:
    """A choice of probabilistic axioms: ids whose Boolean variable is 1."""

    selection: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "selection", frozenset(self.selection))


def _check_world(kb: KnowledgeBase, w: World) -> frozenset[int]:
    prob = kb.probabilistic_ids
    bad = w.selection - prob
    if bad:
        raise UnknownAxiomIdError(
            f"world selects ids that are not probabilistic axioms of this KB: {sorted(bad)}"
        )
    return prob


def world_probability(kb: KnowledgeBase, w: World) -> float:
    """Product of p over selected axioms and (1-p) over unselected ones."""
    prob_ids = _check_world(kb, w)
    p = 1.0
    for aid in prob_ids:
        pi = kb.axiom(aid).probability
        p *= pi if aid in w.selection else 1.0 - pi
    return p


def world_kb(kb: KnowledgeBase, w: World) -> KnowledgeBase:
    """The sub-KB of all certain axioms plus the selected probabilistic ones."""
    _check_world(kb, w)
    return kb.restricted_to(kb.certain_ids | w.selection)
