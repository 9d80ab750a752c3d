import random

import pytest

from conftest import answer_sets, corpus_text, ground, lits
from oracles import random_program
from dlpinh.errors import TooLarge
from dlpinh.grounder import ground_program
from dlpinh.model import Literal, program_for
from dlpinh.parser import parse_knowledge_base
from dlpinh.semantics import is_answer_set
from dlpinh.solver import (
    SolveOptions, brave, brute_force_answer_sets, cautious, derivable, enumerate_answer_sets,
)

SEC_ANN = lits("authorize(ann)", "-authorize(bob)", "authorize(amy)")
SEC_TOM = lits("authorize(tom)", "-authorize(bob)", "authorize(amy)")


@pytest.fixture
def sec3():
    return ground(corpus_text("security"), "o3")


def test_penguin():
    assert answer_sets(corpus_text("penguin")) == [lits("-flies")]


def test_nixon_has_no_answer_set():
    assert answer_sets(corpus_text("nixon")) == []


def test_example5_defeasible_variant():
    assert answer_sets(corpus_text("example5_defeasible")) == [lits("a", "-b"), lits("b", "-a")]


def test_brute_force_example1(ex1):
    assert brute_force_answer_sets(ex1).answer_sets == [lits("a", "b", "c", "e")]


def test_brute_force_security_o3(sec3):
    assert set(map(frozenset, brute_force_answer_sets(sec3).answer_sets)) == {SEC_ANN, SEC_TOM}


def test_empty_program_has_empty_answer_set():
    g = ground("o { }")
    assert brute_force_answer_sets(g).answer_sets == [frozenset()]
    assert enumerate_answer_sets(g).answer_sets == [frozenset()]


def test_brute_force_bound():
    g = ground("o { " + " ".join(f"p{i}." for i in range(5)) + " }")
    with pytest.raises(TooLarge) as exc:
        brute_force_answer_sets(g, bound=4)
    assert exc.value.atoms == 5


def test_brave(sec3):
    ok, witness = brave(sec3, Literal("authorize", ("ann",)))
    assert ok and witness == SEC_ANN
    assert brave(sec3, Literal("authorize", ("bob",))) == (False, None)


def test_brave_on_program_without_answer_sets():
    assert brave(ground(corpus_text("nixon")), Literal("pacifist")) == (False, None)


def test_cautious(sec3):
    assert cautious(sec3, Literal("authorize", ("amy",))) == (True, None)
    ok, counter = cautious(sec3, Literal("authorize", ("ann",)))
    assert not ok and counter == SEC_TOM


def test_cautious_is_vacuous_without_answer_sets():
    assert cautious(ground(corpus_text("nixon")), Literal("pacifist")) == (True, None)


def test_literal_outside_base():
    g = ground(corpus_text("penguin"))
    assert brave(g, Literal("swims")) == (False, None)
    assert cautious(g, Literal("swims"))[0] is False


def test_oracle_mode_agrees(sec3):
    assert brave(sec3, Literal("authorize", ("tom",)), oracle=True)[0]
    assert cautious(sec3, Literal("authorize", ("amy",)), oracle=True) == (True, None)
    res = enumerate_answer_sets(sec3, SolveOptions(oracle_mode=True))
    assert res.answer_sets == enumerate_answer_sets(sec3).answer_sets


def test_query_filter(sec3):
    res = enumerate_answer_sets(sec3, SolveOptions(query_filter=(Literal("authorize", ("tom",)),)))
    assert res.answer_sets == [SEC_TOM]
    res = enumerate_answer_sets(sec3, SolveOptions(query_filter=(Literal("nobody"),)))
    assert res.answer_sets == []


def test_max_models_truncates(sec3):
    res = enumerate_answer_sets(sec3, SolveOptions(max_models=1))
    assert len(res.answer_sets) == 1 and not res.complete
    res = enumerate_answer_sets(sec3, SolveOptions(max_models=2))
    assert len(res.answer_sets) == 2 and res.complete


def test_max_models_must_be_positive():
    with pytest.raises(ValueError):
        SolveOptions(max_models=0)


def test_derivable_ignores_naf():
    g = ground("o { a :- not b. c :- a, d. -e :- a. }")
    assert derivable(g) == lits("a", "-e")


def test_canonical_order_and_determinism(sec3):
    sets = enumerate_answer_sets(sec3).answer_sets
    keys = [m.sort_key() for m in sets]
    assert keys == sorted(keys)
    assert [str(m) for m in sets] == [str(m) for m in enumerate_answer_sets(sec3).answer_sets]


def _random_ground(seed, **kw):
    text, target = random_program(random.Random(seed), **kw)
    return ground_program(program_for(parse_knowledge_base(text), target))


def test_search_matches_brute_force_on_random_programs():
    for seed in range(150):
        g = _random_ground(seed, atoms=5)
        assert enumerate_answer_sets(g).answer_sets == brute_force_answer_sets(g).answer_sets, seed


def test_random_answer_sets_valid_and_incomparable():
    for seed in range(150):
        g = _random_ground(seed)
        sets = enumerate_answer_sets(g).answer_sets
        for m in sets:
            assert is_answer_set(g, m)
        for a in sets:
            for b in sets:
                assert a == b or not a < b


def test_brave_cautious_match_union_and_intersection():
    for seed in range(80):
        g = _random_ground(seed, atoms=4)
        sets = enumerate_answer_sets(g).answer_sets
        union = frozenset().union(*sets)
        for lit in sorted(g.base, key=Literal.sort_key):
            assert brave(g, lit)[0] == (lit in union)
            assert cautious(g, lit)[0] == all(lit in m for m in sets)
