import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import corpus_kb, corpus_text
from oracles import random_program
from dlpinh import CORPUS
from dlpinh.errors import KnowledgeBaseError, ParseError, UnknownObject
from dlpinh.model import MAXINT, Builtin, Literal, Rule, Variable
from dlpinh.parser import (
    desugar_constraint, format_kb, format_rule, is_constraint_atom, parse_knowledge_base,
    parse_literal, parse_sources,
)


def test_example1_structure():
    kb = corpus_kb("example1")
    assert list(kb.objects) == ["o1", "o2"]
    o1, o2 = kb.objects.values()
    assert len(o1.rules) == 2 and len(o2.rules) == 3
    assert o2.parents == ("o1",)
    first = o1.rules[0]
    assert [str(l) for l in first.head] == ["a", "-b"]
    assert [str(l) for l in first.body_pos] == ["c"]
    assert [str(l) for l in first.body_naf] == ["d"]
    assert not first.strict and o1.rules[1].strict


def test_one_line_rendering_matches_corpus_file():
    text = "o1 { a v -b :- c, not d. e :- b! }  o2 : o1 { b. -a v c. c :- b. }"
    assert parse_knowledge_base(text) == corpus_kb("example1")


def test_undeclared_parent_reports_span():
    with pytest.raises(UnknownObject) as exc:
        parse_knowledge_base("x : y { p. }", "kb.dlp")
    assert exc.value.oid == "y"
    assert str(exc.value.span) == "kb.dlp:1:5"


def test_forward_reference_is_rejected():
    with pytest.raises(UnknownObject):
        parse_knowledge_base("b : a { } a { }")


@pytest.mark.parametrize("text, fragment", [
    ("o { p. } o { q. }", "declared twice"),
    ("o { p(a). p. }", "arity"),
    ("p? q?", "more than one query"),
    ("p(X)?", "variables"),
    ("#maxint = 1. #maxint = 2.", "#maxint"),
    ("p. o { q. }", "mixed"),
    ("o { p__. }", "reserved"),
    ("a { } b : a, a { }", "twice"),
    ("o { p :- q }", "unexpected"),
    ("o { P. }", "unexpected"),
    ("o { p v q :- r? }", "unexpected"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as exc:
        parse_knowledge_base(text)
    assert fragment in str(exc.value)
    assert exc.value.span is not None


def test_desugar_constraint_in_object():
    kb = parse_knowledge_base("o3 { a. :- b. }")
    rule = kb.objects["o3"].rules[1]
    c = rule.head[0]
    assert is_constraint_atom(c)
    assert rule.body_pos == (Literal("b"),)
    assert rule.body_naf == (c,)
    assert not rule.strict


def test_desugar_constraint_direct():
    body = (Literal("move", (Variable("B"), Variable("B"), Variable("T"))),)
    rule = desugar_constraint(Rule((), body), 7)
    assert str(rule.head[0]) == "_c7"
    assert rule.body_pos == body and rule.body_naf == rule.head


def test_constraints_get_distinct_symbols():
    kb = corpus_kb("bw_domain")
    heads = [r.head[0] for o in kb.objects.values() for r in o.rules if is_constraint_atom(r.head[0])]
    assert len(heads) == 5 and len(set(heads)) == 5


def test_fresh_symbols_occur_once_and_never_in_input():
    kb = corpus_kb("bw_domain")
    rules = [r for o in kb.objects.values() for r in o.rules]
    for c in {l for r in rules for l in r.head if is_constraint_atom(l)}:
        assert sum(c in r.literals for r in rules) == 1
    with pytest.raises(ParseError):
        parse_knowledge_base("o { _c1. }")


def test_constraint_prints_back():
    kb = parse_knowledge_base("o { :- a, not b. }")
    assert format_rule(kb.objects["o"].rules[0]) == ":- a, not b."


def test_builtins_and_maxint():
    kb = parse_knowledge_base("o { p(T1) :- p(T), #succ(T,T1), T <> #maxint, T < 3, T = T. }")
    rule = kb.objects["o"].rules[0]
    ops = [b.op for b in rule.builtins]
    assert ops == ["#succ", "<>", "<", "="]
    assert rule.builtins[1] == Builtin("<>", Variable("T"), MAXINT)


def test_query_and_maxint_statement():
    kb = corpus_kb("bw_domain", "sussman")
    assert kb.maxint is None
    assert [str(q) for q in kb.query] == ["on(c,b,#maxint)", "on(b,a,#maxint)", "on(a,table,#maxint)"]
    assert parse_knowledge_base("#maxint = 4. o { }").maxint == 4


def test_top_level_rules_form_implicit_object():
    kb = parse_knowledge_base("a. b :- a.")
    assert list(kb.objects) == ["main"]


def test_comments_and_numerals():
    kb = parse_knowledge_base("% header\no { p(0, 12). % trailing\n }")
    assert kb.objects["o"].rules[0].head[0].args == (0, 12)


def test_duplicate_rules_in_object_collapse():
    kb = parse_knowledge_base("o { p. p. q. }")
    assert len(kb.objects["o"].rules) == 2


def test_parse_literal():
    assert parse_literal("-authorize(bob)") == Literal("authorize", ("bob",), True)
    assert parse_literal("p") == Literal("p")


def test_parse_sources_maps_spans_to_files():
    with pytest.raises(ParseError) as exc:
        parse_sources([("a.dlp", "o { p. }\n"), ("b.dlp", "q : o {\n  r :- . }\n")])
    assert exc.value.span.file == "b.dlp"
    assert exc.value.span.line == 2


def test_parse_sources_concatenates():
    kb = corpus_kb("bw_domain", "sussman")
    assert list(kb.objects) == ["bw_inertia", "bw_domain", "sussman"]


@pytest.mark.parametrize("path", sorted(CORPUS.glob("*.dlp")), ids=lambda p: p.stem)
def test_corpus_round_trip(path):
    text = path.read_text()
    if path.stem == "sussman":
        text = corpus_text("bw_domain") + text
    kb = parse_knowledge_base(text)
    again = parse_knowledge_base(format_kb(kb))
    assert again == kb
    assert format_kb(again) == format_kb(kb)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_random_round_trip(seed):
    text, _ = random_program(random.Random(seed))
    kb = parse_knowledge_base(text)
    assert parse_knowledge_base(format_kb(kb)) == kb


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 200), st.sampled_from(["", "(", "}", "?", ":-", "!", "X", "#", "v v"]))
def test_error_spans_stay_in_bounds(seed, cut, junk):
    text, _ = random_program(random.Random(seed))
    pos = cut % (len(text) + 1)
    broken = text[:pos] + junk + text[pos + 1:]
    try:
        parse_knowledge_base(broken)
    except KnowledgeBaseError as exc:
        if exc.span is not None:
            lines = broken.split("\n")
            assert 1 <= exc.span.line <= len(lines)
            assert 1 <= exc.span.column <= max(1, len(lines[exc.span.line - 1]) + 1)
