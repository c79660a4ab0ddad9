"""Seeded random generators shared by the test modules.

Random KBs mix plain inclusions, disjointness-style inclusions and
assertions over a small vocabulary so that a good fraction of them are
inconsistent and queries have several alternative derivations.
"""

from __future__ import annotations

import random

from pengu import (
    All,
    And,
    Atomic,
    ConceptAssertion,
    DuplicateAxiomError,
    Gci,
    KnowledgeBase,
    Not,
    Or,
    RoleAssertion,
    Some,
)

CONCEPTS = ["A", "B", "C", "D"]
ROLES = ["R", "S"]
INDIVIDUALS = ["a", "b"]


def random_concept(rng: random.Random, depth: int = 2, roles: bool = True):
    atoms = [Atomic(n) for n in CONCEPTS]
    if depth <= 0:
        pick = rng.random()
        return Not(rng.choice(atoms)) if pick < 0.25 else rng.choice(atoms)
    kind = rng.randrange(6 if roles else 4)
    if kind == 0:
        return rng.choice(atoms)
    if kind == 1:
        return Not(random_concept(rng, depth - 1, roles))
    if kind == 2:
        return And(tuple(random_concept(rng, depth - 1, roles) for _ in range(2)))
    if kind == 3:
        return Or(tuple(random_concept(rng, depth - 1, roles) for _ in range(2)))
    if kind == 4:
        return Some(rng.choice(ROLES), random_concept(rng, depth - 1, roles))
    return All(rng.choice(ROLES), random_concept(rng, depth - 1, roles))


def random_kb(rng: random.Random, *, max_tbox: int = 4, max_abox: int = 5,
              max_prob: int = 10, roles: bool = True, depth: int = 2) -> KnowledgeBase:
    kb = KnowledgeBase()
    n_tbox = rng.randint(1, max_tbox)
    n_abox = rng.randint(1, max_abox)
    axioms = []
    if rng.random() < 0.25:
        # Two direct routes to a goal concept from mutually exclusive
        # assertions: the pattern that separates AR from Brave and IAR.
        x, y = rng.sample(CONCEPTS, 2)
        goal = rng.choice(CONCEPTS)
        ind = rng.choice(INDIVIDUALS)
        axioms += [Gci(Or((Atomic(x), Atomic(y))), Atomic(goal)),
                   Gci(Atomic(x), Not(Atomic(y))),
                   ConceptAssertion(ind, Atomic(x)),
                   ConceptAssertion(ind, Atomic(y))]
        n_tbox = max(0, n_tbox - 2)
        n_abox = max(0, n_abox - 2)
    for _ in range(n_tbox):
        kind = rng.random()
        if kind < 0.3:  # disjointness-style inclusion: the inconsistency driver
            left, right = rng.sample(CONCEPTS, 2)
            axioms.append(Gci(Atomic(left), Not(Atomic(right))))
        elif kind < 0.5:  # disjunctive antecedent: several causes per query
            left, mid, right = rng.sample(CONCEPTS, 3)
            axioms.append(Gci(Or((Atomic(left), Atomic(mid))), Atomic(right)))
        else:
            axioms.append(Gci(random_concept(rng, depth - 1, roles),
                              random_concept(rng, depth, roles)))
    for _ in range(n_abox):
        pick = rng.random()
        if roles and pick < 0.15:
            axioms.append(RoleAssertion(rng.choice(ROLES), rng.choice(INDIVIDUALS),
                                        rng.choice(INDIVIDUALS)))
        elif pick < 0.55:  # bare atomic assertions feed the disjointness axioms
            axioms.append(ConceptAssertion(rng.choice(INDIVIDUALS),
                                           Atomic(rng.choice(CONCEPTS))))
        else:
            axioms.append(ConceptAssertion(rng.choice(INDIVIDUALS),
                                           random_concept(rng, rng.randint(0, depth), roles)))
    n_prob = min(max_prob, len(axioms))
    prob_slots = set(rng.sample(range(len(axioms)), rng.randint(0, n_prob)))
    for i, ax in enumerate(axioms):
        p = round(rng.uniform(0.1, 0.9), 2) if i in prob_slots else None
        try:
            kb.add(ax, p)
        except DuplicateAxiomError:
            pass
    return kb
