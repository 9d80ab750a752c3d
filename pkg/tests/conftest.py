import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dlpinh import (  # noqa: E402
    CORPUS, enumerate_answer_sets, ground_program, parse_knowledge_base, parse_literal,
    parse_sources, program_for,
)
from dlpinh.model import bottom_object  # noqa: E402
from dlpinh.parser import format_rule  # noqa: E402


def corpus_text(*names: str) -> str:
    return "".join((CORPUS / f"{n}.dlp").read_text() for n in names)


def corpus_kb(*names: str):
    return parse_sources([(str(CORPUS / f"{n}.dlp"), (CORPUS / f"{n}.dlp").read_text())
                          for n in names])


def lits(*texts: str) -> frozenset:
    return frozenset(parse_literal(t) for t in texts)


def ground(text: str, target: str | None = None, maxint: int | None = None):
    kb = parse_knowledge_base(text)
    return ground_program(program_for(kb, target or bottom_object(kb)), maxint)


def answer_sets(text: str, target: str | None = None, maxint: int | None = None) -> list:
    return [frozenset(m) for m in enumerate_answer_sets(ground(text, target, maxint)).answer_sets]


def rule_of(g, text: str, owner: str | None = None):
    """The ground rule printed as ``text`` (optionally owned by ``owner``)."""
    hits = [r for r in g.rules if format_rule(r.rule) == text and owner in (None, r.owner)]
    assert len(hits) == 1, f"{text!r} matched {len(hits)} rules"
    return hits[0]


@pytest.fixture
def ex1():
    return ground(corpus_text("example1"))


@pytest.fixture
def ex5():
    return ground(corpus_text("example5"))
