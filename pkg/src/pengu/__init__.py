"""Probabilistic ALC reasoning over possibly inconsistent knowledge bases.

The pipeline: enumerate all justifications for a query and for the
inconsistency, compile both sets into BDDs, weight-count them into
P(Incons), P(Cons), P(Q, Cons) and P_C(Q), and check the query under the
Brave, AR and IAR repair semantics from the same two justification sets.
"""

from .errors import (
    DuplicateAxiomError,
    ForeignRefError,
    FreshAxiomPresentError,
    InternalInvariantError,
    MissingWeightError,
    ParseError,
    ParseErrorKind,
    PenguError,
    ProbabilityOutOfRangeError,
    ResourceLimitError,
    TooLargeError,
    UnknownAxiomIdError,
    UnmappedAxiomError,
)
from .model import (
    All,
    And,
    AnnotatedAxiom,
    Atomic,
    Axiom,
    BOTTOM,
    Bottom,
    Concept,
    ConceptAssertion,
    Gci,
    KnowledgeBase,
    Not,
    Or,
    Origin,
    RoleAssertion,
    Some,
    TOP,
    Top,
    World,
    complement,
    nnf,
    world_kb,
    world_probability,
)
from .kbformat import (
    ConceptAssertionQuery,
    IsConsistent,
    Query,
    SubsumptionQuery,
    parse_kb,
    parse_query,
    serialize_axiom,
    serialize_concept,
    serialize_kb,
    serialize_query,
)
from .tableau import find_one_incons_justification, is_consistent
from .justify import (
    EntailmentChecker,
    JustificationBundle,
    QueryTransform,
    all_justifications,
    oracle_all_justifications,
    transform_query,
)
from .bdd import BddManager, BddRef
from .semantics import (
    ProbReport,
    Verdict,
    ar_check,
    brave_check,
    iar_check,
    no_repair,
    oracle_repairs,
    oracle_verdict,
    oracle_world_probs,
    prob_report,
    removable_ids,
    verdict,
)

__version__ = "0.1.0"
