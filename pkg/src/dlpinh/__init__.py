"""Disjunctive logic programs with strong negation, negation as failure and
object inheritance: parsing, grounding, answer sets and plain-program
compilation."""

from pathlib import Path

from .errors import (
    CyclicHierarchy, DlpError, GroundingError, KnowledgeBaseError, MissingMaxint,
    ParseError, SafetyError, SourceSpan, TooLarge, TranslationError, UnknownObject,
)
from .grounder import GroundProgram, GroundRule, check_safety, ground_program
from .model import (
    MAXINT, Builtin, Interpretation, KnowledgeBase, Literal, ObjectDef, Program, Rule,
    Variable, bottom_object, complement, less_than, program_for, validate_hierarchy,
)
from .parser import desugar_constraint, format_kb, parse_knowledge_base, parse_literal, parse_sources
from .semantics import (
    is_answer_set, is_minimal_model_positive, is_model, overridden, overrides, pos_version,
    reduct, satisfied, threatens,
)
from .solver import (
    SolveOptions, SolveResult, brave, brute_force_answer_sets, cautious, enumerate_answer_sets,
)
from .translator import PlainProgram, emit, project, rewrite, threatened_predicates

CORPUS = Path(__file__).with_name("corpus")

__version__ = "0.1.0"
