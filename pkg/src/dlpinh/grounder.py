"""Instantiation of a DLP< program over its Herbrand universe.

Grounding is deliberately naive: every rule is instantiated over all
substitutions of its variables by universe constants, and only builtin
atoms filter instances.  Instances whose positive body can never hold are
kept, because their heads still take part in threatening.  A rule with
``v`` variables therefore costs ``|U|**v`` candidate substitutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator, Optional

from .errors import MissingMaxint, SafetyError
from .model import (
    MAXINT, Builtin, Constant, Literal, Program, Rule, Variable, term_key,
)


@dataclass(frozen=True)
class GroundRule:
    rule: Rule
    owner: str
    ordinal: int

    @property
    def head(self) -> tuple[Literal, ...]:
        return self.rule.head

    @property
    def body_pos(self) -> tuple[Literal, ...]:
        return self.rule.body_pos  # type: ignore[return-value]

    @property
    def body_naf(self) -> tuple[Literal, ...]:
        return self.rule.body_naf

    @property
    def strict(self) -> bool:
        return self.rule.strict

    def __str__(self) -> str:
        from .parser import format_rule
        return f"obj={self.owner} {format_rule(self.rule)}"


@dataclass(frozen=True, eq=False)
class GroundProgram:
    rules: tuple[GroundRule, ...]
    universe: frozenset
    order: frozenset[tuple[str, str]]
    maxint: Optional[int] = None

    @cached_property
    def predicates(self) -> frozenset[tuple[str, int]]:
        return frozenset((l.predicate, l.arity) for r in self.rules for l in r.rule.literals)

    @cached_property
    def base(self) -> frozenset[Literal]:
        consts = sorted(self.universe, key=term_key)
        lits = set()
        for name, arity in self.predicates:
            for args in product(consts, repeat=arity):
                lits.add(Literal(name, args, False))
                lits.add(Literal(name, args, True))
        return frozenset(lits)

    @cached_property
    def atoms(self) -> frozenset[Literal]:
        """Positive atoms underlying the base."""
        return frozenset(l for l in self.base if not l.strong_neg)

    @cached_property
    def head_literals(self) -> frozenset[Literal]:
        return frozenset(l for r in self.rules for l in r.head)

    @cached_property
    def head_owners(self) -> dict[Literal, frozenset[str]]:
        """For each head literal, the objects owning a rule with it in the head."""
        owners: dict[Literal, set[str]] = {}
        for r in self.rules:
            for l in r.head:
                owners.setdefault(l, set()).add(r.owner)
        return {l: frozenset(o) for l, o in owners.items()}

    def less_than(self, a: str, b: str) -> bool:
        return (a, b) in self.order

    def dump(self) -> str:
        return "".join(f"{r}\n" for r in self.rules)


def check_safety(rule: Rule) -> None:
    """Every variable must occur in a positive ordinary literal or in ``#succ``."""
    bound: set[Variable] = set()
    for item in rule.body_pos:
        if isinstance(item, Literal) or item.op == "#succ":
            bound.update(item.variables())
    for v in rule.variables():
        if v not in bound:
            raise SafetyError(v.name, rule.span)


def _uses_maxint(rule: Rule) -> bool:
    for item in rule.body_pos:
        if isinstance(item, Builtin):
            if item.op == "#succ" or MAXINT in (item.left, item.right):
                return True
    return any(MAXINT in lit.args for lit in rule.literals)


def program_constants(program: Program) -> set[Constant]:
    consts: set[Constant] = set()
    for _, _, rule in program.rules():
        for lit in rule.literals:
            consts.update(a for a in lit.args if isinstance(a, (str, int)))
        for b in rule.builtins:
            consts.update(a for a in (b.left, b.right) if isinstance(a, (str, int)))
    return consts


def eval_builtin(op: str, a: Constant, b: Constant, maxint: Optional[int]) -> bool:
    if op == "#succ":
        return (isinstance(a, int) and isinstance(b, int) and maxint is not None
                and b == a + 1 and b <= maxint)
    if op == "<>":
        return a != b
    if op == "=":
        return a == b
    if op == "<":
        return term_key(a) < term_key(b)
    raise ValueError(f"unknown builtin {op}")


def _substitute(t, sub: dict, maxint):
    if isinstance(t, Variable):
        return sub[t]
    if t is MAXINT:
        return maxint
    return t


def _instances(rule: Rule, universe: list, maxint: Optional[int]) -> Iterator[dict]:
    """Substitutions satisfying every builtin, in lexicographic universe order."""
    variables = rule.variables()
    position = {v: i for i, v in enumerate(variables)}

    def ready_at(b: Builtin) -> int:
        return max((position[v] for v in b.variables()), default=-1)

    builtins = rule.builtins
    for b in builtins:
        if ready_at(b) < 0 and not eval_builtin(b.op, _substitute(b.left, {}, maxint),
                                                _substitute(b.right, {}, maxint), maxint):
            return
    checks: list[list[Builtin]] = [[] for _ in variables]
    # #succ with one side fixed earlier pins the other side to one value
    pinned: list[list[tuple[Builtin, bool]]] = [[] for _ in variables]
    for b in builtins:
        at = ready_at(b)
        if at >= 0:
            checks[at].append(b)
        if b.op == "#succ":
            for side, other, forward in ((b.right, b.left, True), (b.left, b.right, False)):
                if isinstance(side, Variable):
                    pos = position[side]
                    if not isinstance(other, Variable) or position[other] < pos:
                        pinned[pos].append((b, forward))

    sub: dict = {}
    members = set(universe)

    def domain(i: int):
        for b, forward in pinned[i]:
            other = _substitute(b.left if forward else b.right, sub, maxint)
            if not isinstance(other, int):
                return []
            value = other + 1 if forward else other - 1
            return [value] if value in members else []
        return universe

    def extend(i: int) -> Iterator[dict]:
        if i == len(variables):
            yield dict(sub)
            return
        v = variables[i]
        for c in domain(i):
            sub[v] = c
            if all(eval_builtin(b.op, _substitute(b.left, sub, maxint),
                                _substitute(b.right, sub, maxint), maxint) for b in checks[i]):
                yield from extend(i + 1)
        sub.pop(v, None)

    yield from extend(0)


def _ground_literal(lit: Literal, sub: dict, maxint) -> Literal:
    return Literal(lit.predicate, tuple(_substitute(a, sub, maxint) for a in lit.args), lit.strong_neg)


def ground_rule(rule: Rule, sub: dict, maxint: Optional[int]) -> Rule:
    return Rule(
        tuple(_ground_literal(l, sub, maxint) for l in rule.head),
        tuple(_ground_literal(l, sub, maxint) for l in rule.body_pos if isinstance(l, Literal)),
        tuple(_ground_literal(l, sub, maxint) for l in rule.body_naf),
        rule.strict,
        rule.span,
    )


def check_program(program: Program, maxint: Optional[int] = None) -> None:
    """Safety of every rule, and a bound whenever integer builtins are used."""
    if maxint is None:
        maxint = program.maxint
    for _, _, rule in program.rules():
        check_safety(rule)
        if maxint is None and _uses_maxint(rule):
            raise MissingMaxint(rule.span)


def ground_program(program: Program, maxint: Optional[int] = None) -> GroundProgram:
    """Instantiate ``program``; ``maxint`` defaults to the program's own."""
    if maxint is None:
        maxint = program.maxint
    check_program(program, maxint)
    consts = program_constants(program)
    if maxint is not None:
        consts.update(range(maxint + 1))
    universe = sorted(consts, key=term_key)

    rules: list[GroundRule] = []
    for obj in program.objects:
        seen: set[Rule] = set()
        for k, rule in enumerate(obj.rules, 1):
            for sub in _instances(rule, universe, maxint):
                g = ground_rule(rule, sub, maxint)
                if g not in seen:
                    seen.add(g)
                    rules.append(GroundRule(g, obj.oid, k))
    return GroundProgram(tuple(rules), frozenset(consts), program.order, maxint)
