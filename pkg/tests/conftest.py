"""Shared KB fixtures: the bundled worked examples used across test modules."""

import pytest

from pengu import parse_kb

# Penguins, consistent: P(pingu:Bird) = 0.54
PENGUIN_1 = """\
0.9 :: SubClassOf(Penguin, Bird)
0.9 :: SubClassOf(Penguin, Not(Fly))
0.6 :: ClassAssertion(Penguin, pingu)
"""

# Variant with direct evidence: P(pingu:Bird) = 0.816
PENGUIN_1_1 = """\
0.9 :: SubClassOf(Penguin, Bird)
0.6 :: ClassAssertion(Penguin, pingu)
0.6 :: ClassAssertion(Bird, pingu)
"""

# Possibly inconsistent: P(Cons) = 0.19, P_C(pingu:Not(Fly)) = 0.09/0.19
PENGUIN_3 = """\
0.9 :: SubClassOf(Bird, Fly)
SubClassOf(Penguin, Bird)
0.9 :: SubClassOf(Penguin, Not(Fly))
ClassAssertion(Penguin, pingu)
"""

# Same with axiom 2 certain: P_C(pingu:Not(Fly)) = 1.0
PENGUIN_3_CERTAIN = """\
0.9 :: SubClassOf(Bird, Fly)
SubClassOf(Penguin, Bird)
SubClassOf(Penguin, Not(Fly))
ClassAssertion(Penguin, pingu)
"""

# All-certain and inconsistent: no repair, P_C undefined
PENGUIN_4 = """\
SubClassOf(Bird, Fly)
SubClassOf(Penguin, Bird)
SubClassOf(Penguin, Not(Fly))
ClassAssertion(Penguin, pingu)
"""

# University KB, everything certain (classical ABox-repair reading)
UNIVERSITY = """\
SubClassOf(And(Professor, Tutor), Lecturer)
SubClassOf(And(Person, Professor), PhD)
SubClassOf(Or(Professor, Tutor), UniversityEmployee)
SubClassOf(Professor, Not(Tutor))
ClassAssertion(Person, alice)
ClassAssertion(Professor, alice)
ClassAssertion(Tutor, alice)
"""

# University KB with probabilistic ABox: P(Incons) = 0.16
UNIVERSITY_PROB = """\
SubClassOf(And(Professor, Tutor), Lecturer)
SubClassOf(And(Person, Professor), PhD)
SubClassOf(Or(Professor, Tutor), UniversityEmployee)
SubClassOf(Professor, Not(Tutor))
0.9 :: ClassAssertion(Person, alice)
0.2 :: ClassAssertion(Professor, alice)
0.8 :: ClassAssertion(Tutor, alice)
"""

# The consistent variant: the disjointness axiom dropped
UNIVERSITY_PROB_CONSISTENT = """\
SubClassOf(And(Professor, Tutor), Lecturer)
SubClassOf(And(Person, Professor), PhD)
SubClassOf(Or(Professor, Tutor), UniversityEmployee)
0.9 :: ClassAssertion(Person, alice)
0.2 :: ClassAssertion(Professor, alice)
0.8 :: ClassAssertion(Tutor, alice)
"""

UNIVERSITY_QUERIES = {
    "q1": "ClassAssertion(Lecturer, alice)",
    "q2": "ClassAssertion(PhD, alice)",
    "q3": "ClassAssertion(UniversityEmployee, alice)",
    "q4": "ClassAssertion(Person, alice)",
}

ALL_KB_TEXTS = {
    "penguin_1": PENGUIN_1,
    "penguin_1_1": PENGUIN_1_1,
    "penguin_3": PENGUIN_3,
    "penguin_3_certain": PENGUIN_3_CERTAIN,
    "penguin_4": PENGUIN_4,
    "university": UNIVERSITY,
    "university_prob": UNIVERSITY_PROB,
    "university_prob_consistent": UNIVERSITY_PROB_CONSISTENT,
}


@pytest.fixture
def penguin_1():
    return parse_kb(PENGUIN_1)


@pytest.fixture
def penguin_1_1():
    return parse_kb(PENGUIN_1_1)


@pytest.fixture
def penguin_3():
    return parse_kb(PENGUIN_3)


@pytest.fixture
def penguin_3_certain():
    return parse_kb(PENGUIN_3_CERTAIN)


@pytest.fixture
def penguin_4():
    return parse_kb(PENGUIN_4)


@pytest.fixture
def university():
    return parse_kb(UNIVERSITY)


@pytest.fixture
def university_prob():
    return parse_kb(UNIVERSITY_PROB)


@pytest.fixture
def university_prob_consistent():
    return parse_kb(UNIVERSITY_PROB_CONSISTENT)
