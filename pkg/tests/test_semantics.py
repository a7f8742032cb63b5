import itertools
import random

import pytest
from hypothesis import given, settings

import oracles
from generators import programs, random_program
from superasp import (
    GuardExceeded,
    Interpretation,
    Program,
    UniverseMismatch,
    answer_sets,
    is_answer_set,
    parse_program,
    query,
    reduct,
    satisfies,
)
from superasp.semantics import models


def interp(p, names):
    return Interpretation.from_names(p.atoms, names)


def sets(report):
    return {frozenset(s) for s in report.name_sets()}


@pytest.mark.parametrize("text,true,expected", [
    ("a :- b.", ["a"], True),
    ("a :- b.", ["b"], False),
    ("a | c :- b, not d.", ["a", "b"], True),
])
def test_satisfies(text, true, expected):
    p = parse_program(text)
    assert satisfies(interp(p, true), p) is expected


def test_satisfies_rejects_small_universe():
    p = parse_program("a :- b.")
    with pytest.raises(UniverseMismatch):
        satisfies(Interpretation(0, 1), p)


def test_interpretation_bits_must_fit():
    with pytest.raises(ValueError):
        Interpretation(4, 2)


def test_reduct_examples():
    p = parse_program("a :- not b.")
    assert reduct(p, interp(p, [])).canonical() == parse_program("a.").canonical()
    assert reduct(p, interp(p, ["b"])).rules == ()
    q = parse_program("_fail :- _t_a, not a.")
    assert reduct(q, interp(q, ["_t_a"])).canonical() == parse_program("_fail :- _t_a.").canonical()


def test_reduct_mismatch():
    p = parse_program("a :- not b.")
    with pytest.raises(UniverseMismatch):
        reduct(p, Interpretation(0, 1))


@pytest.mark.parametrize("true,expected", [(["a"], True), (["a", "b"], False), ([], False)])
def test_is_answer_set_choice(true, expected):
    p = parse_program("a | b.")
    assert is_answer_set(p, interp(p, true)) is expected
    assert oracles.is_answer_set(oracles.named(p), frozenset(true)) is expected


def test_is_answer_set_odd_loop():
    p = parse_program("a :- not a.")
    assert not is_answer_set(p, interp(p, ["a"]))


@pytest.mark.parametrize("text,expected", [
    ("", [[]]),
    ("a | b.", [["a"], ["b"]]),
    ("a :- not a.", []),
    ("a :- not b. b :- not a.", [["a"], ["b"]]),
])
def test_answer_sets_examples(text, expected):
    p = parse_program(text)
    report = answer_sets(p)
    assert report.name_sets() == expected
    assert sets(report) == oracles.answer_sets(p)


def test_answer_set_report_json():
    report = answer_sets(parse_program("a :- not b. b :- not a."))
    assert report.to_json() == {"answer_sets": [["a"], ["b"]], "enumerated": 4}


def test_canonical_order():
    p = parse_program("a | b | c. a :- b. c :- b.")
    report = answer_sets(p)
    keys = [(len(m), m.bits) for m in report.answer_sets]
    assert keys == sorted(keys)


@pytest.mark.parametrize("text,q,mode,expected", [
    ("a | b.", "a", "brave", True),
    ("a | b.", "a", "cautious", False),
    ("a :- not a.", "a", "cautious", True),
    ("a :- not a.", "a", "brave", False),
    ("a.", "z", "brave", False),
    ("a.", "z", "cautious", False),
    ("a :- not a.", "z", "cautious", True),
])
def test_query(text, q, mode, expected):
    assert query(parse_program(text), q, mode) is expected


def test_query_bad_mode():
    with pytest.raises(ValueError):
        query(parse_program("a."), "a", "sometimes")


def test_guard():
    p = Program.from_names([([f"a{i}"], [], []) for i in range(6)])
    with pytest.raises(GuardExceeded):
        answer_sets(p, max_atoms=5)
    assert sets(answer_sets(p, max_atoms=6)) == {frozenset(f"a{i}" for i in range(6))}


def test_default_guard_is_24():
    p = Program.from_names([([f"a{i}"], [], []) for i in range(25)])
    with pytest.raises(GuardExceeded):
        answer_sets(p)


def test_parallel_matches_sequential():
    rng = random.Random(7)
    for _ in range(5):
        p = random_program(rng)
        assert answer_sets(p, workers=3) == answer_sets(p)


def test_unused_table_atoms_are_not_enumerated():
    p = Program.from_names([(["b"], [], [])], atoms=["a", "b", "c"])
    report = answer_sets(p)
    assert report.enumerated == 2
    assert report.name_sets() == [["b"]]


@settings(max_examples=300, deadline=None)
@given(programs())
def test_answer_sets_match_oracle(p):
    assert sets(answer_sets(p)) == oracles.answer_sets(p)


@settings(max_examples=200, deadline=None)
@given(programs())
def test_models_match_oracle(p):
    rules = oracles.named(p)
    expected = {i for i in oracles.subsets(oracles.universe(p)) if oracles.satisfies(i, rules)}
    assert {frozenset(m.names(p.atoms)) for m in models(p)} == expected


@settings(max_examples=200, deadline=None)
@given(programs())
def test_answer_sets_are_models_and_antichain(p):
    found = answer_sets(p).answer_sets
    for m in found:
        assert satisfies(m, p)
    for m, n in itertools.permutations(found, 2):
        assert m.bits & n.bits != m.bits


@settings(max_examples=200, deadline=None)
@given(programs())
def test_reduct_is_positive(p):
    n = len(p.atoms)
    for bits in range(1 << n):
        assert all(not r.neg for r in reduct(p, Interpretation(bits, n)).rules)


@settings(max_examples=100, deadline=None)
@given(programs(negation=False))
def test_reduct_of_positive_program_is_itself(p):
    n = len(p.atoms)
    for bits in range(1 << n):
        assert reduct(p, Interpretation(bits, n)).rules == p.rules
