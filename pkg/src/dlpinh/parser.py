"""Concrete syntax: text to :class:`KnowledgeBase` and back.

Grammar summary (``%`` starts a comment)::

    kb        ::= (object | rule | query | '#maxint' '=' INT '.')*
    object    ::= oid [':' oid (',' oid)*] '{' rule* '}'
    rule      ::= head '.' | head '!' | head ':-' body ('.'|'!') | ':-' body ('.'|'!')
    head      ::= literal ('v' literal)*
    body      ::= item (',' item)*
    item      ::= literal | 'not' literal | '#succ(' term ',' term ')' | term ('<>'|'<'|'=') term
    literal   ::= ['-'] name ['(' term (',' term)* ')']
    query     ::= literal (',' literal)* '?'

Rules written outside any object block form the implicit object ``main``;
mixing them with explicit objects is rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from .errors import ParseError, SourceSpan, UnknownObject
from .model import (
    MAXINT, Builtin, KnowledgeBase, Literal, ObjectDef, Rule, Variable, validate_hierarchy,
)

IMPLICIT_OBJECT = "main"
RESERVED_SUFFIX = "__"
CONSTRAINT_PREFIX = "_c"

GRAMMAR = r"""
start: _item*
_item: object | rule | query | maxint_decl

object: NAME [":" NAME ("," NAME)*] "{" rule* "}"

rule: head TERMINATOR                  -> fact
    | head ":-" body TERMINATOR        -> normal
    | ":-" body TERMINATOR             -> constraint

head: literal ("v" literal)*
body: _body_item ("," _body_item)*
_body_item: literal | naf | builtin
naf: "not" literal
builtin: SUCC "(" term "," term ")"    -> succ
       | term CMP term                 -> compare

literal: [NEG] NAME ["(" term ("," term)* ")"]
query: literal ("," literal)* "?"
maxint_decl: MAXINT "=" INT "."

term: VAR | NAME | INT | MAXINT

TERMINATOR: "." | "!"
CMP: "<>" | "<" | "="
NEG: "-"
SUCC: "#succ"
MAXINT: "#maxint"
NAME: /[a-z][A-Za-z0-9_]*/
VAR: /[A-Z][A-Za-z0-9_]*/
INT: /[0-9]+/
COMMENT: /%[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

_LARK = Lark(GRAMMAR, parser="lalr", propagate_positions=True, maybe_placeholders=True)
_LITERAL_LARK = Lark(GRAMMAR, parser="lalr", start="literal", maybe_placeholders=True)


@dataclass
class _RawRule:
    head: list
    pos: list
    naf: list
    strict: bool
    line: int
    column: int
    constraint: bool = False


@dataclass
class _RawObject:
    name: Token
    parents: list[Token]
    rules: list[_RawRule]


@dataclass
class _RawKb:
    items: list = field(default_factory=list)


def _strict(tok: Token) -> bool:
    return str(tok) == "!"


@v_args(inline=True)
class _ToRaw(Transformer):
    def term(self, tok: Token):
        if tok.type == "VAR":
            return Variable(str(tok))
        if tok.type == "INT":
            return int(tok)
        if tok.type == "MAXINT":
            return MAXINT
        return str(tok)

    def literal(self, neg, name, *args):
        terms = tuple(a for a in args if a is not None)
        return (Literal(str(name), terms, neg is not None), name)

    def naf(self, lit):
        return ("naf", lit)

    def succ(self, _kw, a, b):
        return Builtin("#succ", a, b)

    def compare(self, a, op, b):
        return Builtin(str(op), a, b)

    def head(self, *lits):
        return list(lits)

    def body(self, *items):
        return list(items)

    @v_args(meta=True, inline=False)
    def fact(self, meta, children):
        head, term = children
        return _RawRule(head, [], [], _strict(term), meta.line, meta.column)

    @v_args(meta=True, inline=False)
    def normal(self, meta, children):
        head, body, term = children
        pos, naf = _split_body(body)
        return _RawRule(head, pos, naf, _strict(term), meta.line, meta.column)

    @v_args(meta=True, inline=False)
    def constraint(self, meta, children):
        body, term = children
        pos, naf = _split_body(body)
        return _RawRule([], pos, naf, _strict(term), meta.line, meta.column, constraint=True)

    def object(self, name, *rest):
        parents = []
        rules = []
        for item in rest:
            if isinstance(item, Token):
                parents.append(item)
            elif isinstance(item, _RawRule):
                rules.append(item)
        return _RawObject(name, parents, rules)

    def query(self, *lits):
        return ("query", list(lits))

    def maxint_decl(self, kw, value):
        return ("maxint", int(value), kw)

    def start(self, *items):
        return _RawKb(list(items))


def _split_body(items) -> tuple[list, list]:
    pos, naf = [], []
    for item in items:
        if isinstance(item, tuple) and item and item[0] == "naf":
            naf.append(item[1])
        else:
            pos.append(item)
    return pos, naf


class _Builder:
    """Second pass: name checks, arities, object order and constraint desugaring."""

    def __init__(self, filename: str, allow_reserved: bool):
        self.filename = filename
        self.allow_reserved = allow_reserved
        self.arity: dict[str, int] = {}
        self.constraints = 0

    def span(self, line: int, column: int) -> SourceSpan:
        return SourceSpan(self.filename, line, column)

    def tok_span(self, tok: Token) -> SourceSpan:
        return self.span(tok.line, tok.column)

    def check_literal(self, lit: Literal, tok: Token) -> Literal:
        name = lit.predicate
        reserved = name.endswith(RESERVED_SUFFIX)
        if reserved and not self.allow_reserved:
            raise ParseError(f"predicate names ending in '{RESERVED_SUFFIX}' are reserved: {name}",
                             self.tok_span(tok))
        if not reserved:
            known = self.arity.setdefault(name, lit.arity)
            if known != lit.arity:
                raise ParseError(f"predicate '{name}' used with arity {lit.arity} and {known}",
                                 self.tok_span(tok))
        return lit

    def rule(self, raw: _RawRule) -> Rule:
        span = self.span(raw.line, raw.column)
        head = tuple(self.check_literal(l, t) for l, t in raw.head)
        pos = tuple(self.check_literal(*b) if isinstance(b, tuple) else b for b in raw.pos)
        naf = tuple(self.check_literal(*b) for b in raw.naf)
        rule = Rule(head, pos, naf, raw.strict, span)
        if raw.constraint:
            self.constraints += 1
            rule = desugar_constraint(rule, self.constraints)
        return rule

    def build(self, raw: _RawKb) -> KnowledgeBase:
        objects: dict[str, ObjectDef] = {}
        top_rules: list[Rule] = []
        top_span: Optional[SourceSpan] = None
        maxint = None
        query = None
        for item in raw.items:
            if isinstance(item, _RawObject):
                oid = str(item.name)
                span = self.tok_span(item.name)
                if oid in objects:
                    raise ParseError(f"object '{oid}' declared twice", span)
                parents = []
                for p in item.parents:
                    if str(p) not in objects:
                        raise UnknownObject(str(p), self.tok_span(p))
                    if str(p) in parents:
                        raise ParseError(f"parent '{p}' listed twice", self.tok_span(p))
                    parents.append(str(p))
                rules = _dedupe(self.rule(r) for r in item.rules)
                objects[oid] = ObjectDef(oid, tuple(parents), rules, span)
            elif isinstance(item, _RawRule):
                if top_span is None:
                    top_span = self.span(item.line, item.column)
                top_rules.append(self.rule(item))
            elif item[0] == "query":
                lits = item[1]
                first = lits[0][1]
                if query is not None:
                    raise ParseError("more than one query", self.tok_span(first))
                for lit, tok in lits:
                    self.check_literal(lit, tok)
                    if any(True for _ in lit.variables()):
                        raise ParseError(f"query literal {lit} contains variables", self.tok_span(tok))
                query = tuple(l for l, _ in lits)
            elif item[0] == "maxint":
                if maxint is not None:
                    raise ParseError("more than one #maxint statement", self.tok_span(item[2]))
                maxint = item[1]
        if top_rules:
            if objects:
                raise ParseError("rules outside object blocks cannot be mixed with objects", top_span)
            objects[IMPLICIT_OBJECT] = ObjectDef(IMPLICIT_OBJECT, (), _dedupe(top_rules), top_span)
        kb = KnowledgeBase(objects, maxint, query)
        validate_hierarchy(kb)
        return kb


def _dedupe(rules: Iterable[Rule]) -> tuple[Rule, ...]:
    # an object's rules form a set
    return tuple(dict.fromkeys(rules))


def desugar_constraint(rule: Rule, k: int) -> Rule:
    """``:- B.`` becomes the defeasible rule ``_ck :- B, not _ck.``"""
    fresh = Literal(f"{CONSTRAINT_PREFIX}{k}")
    return Rule((fresh,), rule.body_pos, rule.body_naf + (fresh,), False, rule.span)


def is_constraint_atom(lit: Literal) -> bool:
    return re.fullmatch(re.escape(CONSTRAINT_PREFIX) + r"\d+", lit.predicate) is not None


def is_desugared_constraint(rule: Rule) -> bool:
    return len(rule.head) == 1 and is_constraint_atom(rule.head[0])


def _error_from_lark(exc: UnexpectedInput, text: str, filename: str) -> ParseError:
    line = getattr(exc, "line", None)
    column = getattr(exc, "column", None)
    if not isinstance(line, int) or line < 1:
        # end of input: point at the last character
        lines = text.splitlines() or [""]
        line, column = len(lines), max(1, len(lines[-1]))
    if isinstance(exc, UnexpectedCharacters):
        msg = f"unexpected character {text[exc.pos_in_stream]!r}"
    elif isinstance(exc, UnexpectedToken):
        kind = exc.token.type.lower()
        if kind.startswith("__anon"):
            kind = "token"
        msg = f"unexpected {kind} {str(exc.token)!r}" if exc.token.type != "$END" \
            else "unexpected end of input"
    elif isinstance(exc, UnexpectedEOF):
        msg = "unexpected end of input"
    else:
        msg = "syntax error"
    return ParseError(msg, SourceSpan(filename, line, max(1, column)))


def parse_knowledge_base(text: str, filename: str = "<input>", *,
                         allow_reserved: bool = False) -> KnowledgeBase:
    """Parse and validate a knowledge base.

    ``allow_reserved`` admits ``__``-suffixed predicates (with free arity),
    which is what translator output uses.
    """
    try:
        tree = _LARK.parse(text)
    except UnexpectedInput as exc:
        raise _error_from_lark(exc, text, filename) from None
    raw = _ToRaw().transform(tree)
    return _Builder(filename, allow_reserved).build(raw)


def parse_sources(sources: Sequence[tuple[str, str]], *, allow_reserved: bool = False) -> KnowledgeBase:
    """Parse several (name, text) pieces concatenated in order.

    Error spans are mapped back to the originating piece.
    """
    texts = []
    offsets = []
    line = 1
    for name, text in sources:
        if not text.endswith("\n"):
            text += "\n"
        offsets.append((line, name))
        texts.append(text)
        line += text.count("\n")
    joined = "".join(texts)
    name = sources[0][0] if len(sources) == 1 else "<input>"
    try:
        return parse_knowledge_base(joined, name, allow_reserved=allow_reserved)
    except ParseError as exc:
        raise _remap(exc, offsets)
    except UnknownObject as exc:
        raise _remap(exc, offsets)


def _remap(exc, offsets):
    span = exc.span
    if span is not None and len(offsets) > 1:
        start, name = max((o for o in offsets if o[0] <= span.line), key=lambda o: o[0])
        exc.span = SourceSpan(name, span.line - start + 1, span.column)
    return exc


def parse_literal(text: str) -> Literal:
    try:
        tree = _LITERAL_LARK.parse(text.strip())
    except UnexpectedInput as exc:
        raise _error_from_lark(exc, text, "<literal>") from None
    lit, _ = _ToRaw().transform(tree)
    return lit


# -- pretty printing ---------------------------------------------------------

def format_literal(lit: Literal) -> str:
    return str(lit)


def format_body(rule: Rule, *, drop_constraint_naf: bool = False) -> list[str]:
    parts = [str(b) for b in rule.body_pos]
    for lit in rule.body_naf:
        if drop_constraint_naf and is_constraint_atom(lit):
            continue
        parts.append(f"not {lit}")
    return parts


def format_rule(rule: Rule, *, terminator: Optional[str] = None) -> str:
    term = terminator or ("!" if rule.strict else ".")
    if is_desugared_constraint(rule):
        return ":- " + ", ".join(format_body(rule, drop_constraint_naf=True)) + term
    head = " v ".join(str(l) for l in rule.head)
    body = format_body(rule)
    if not head:
        return f":- {', '.join(body)}{term}"
    if not body:
        return head + term
    return f"{head} :- {', '.join(body)}{term}"


def format_kb(kb: KnowledgeBase) -> str:
    out = []
    if kb.maxint is not None:
        out.append(f"#maxint = {kb.maxint}.")
    for obj in kb.objects.values():
        header = obj.oid if not obj.parents else f"{obj.oid} : {', '.join(obj.parents)}"
        out.append(header + " {")
        out.extend("    " + format_rule(r) for r in obj.rules)
        out.append("}")
    if kb.query is not None:
        out.append(", ".join(str(l) for l in kb.query) + "?")
    return "\n".join(out) + "\n"
