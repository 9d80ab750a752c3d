"""Compilation of a DLP< program into a plain disjunctive program.

Each head literal is primed and tagged with the object that derived it
(``a`` in ``o1`` becomes ``a__(o1)``).  A defeasible rule all of whose head
literals are threatened by lower objects gets an extra ``not ovr__(...)``
guard, and ``ovr__`` rules record when a lower object derived the
complementary primed literal.  Projection rules recover the unprimed
literals, and one constraint per complementary pair of head predicates
keeps the result consistent.

Naming in the emitted text:

==================  ============================
primed ``a``        ``a__``
primed ``-a``       ``-a__``
order facts         ``prec__(lower,upper)``
override atoms      ``ovr__(id,object,args...)``
reified ``a``       ``a``
reified ``-a``      ``neg_a``
rule identifier     ``r<k>_<oid>`` (k counts from 1 per object)
==================  ============================
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import TranslationError
from .model import Interpretation, Literal, Program, Rule, Variable
from .parser import RESERVED_SUFFIX, format_rule, is_constraint_atom, is_desugared_constraint

Adorned = tuple[str, bool]  # (predicate, strongly negated)

PREC = "prec" + RESERVED_SUFFIX
OVR = "ovr" + RESERVED_SUFFIX


def neg(phi: Adorned) -> Adorned:
    return (phi[0], not phi[1])


@dataclass(frozen=True)
class NameMap:
    """The renaming conventions applied by :func:`rewrite`."""

    suffix: str = RESERVED_SUFFIX
    prec: str = PREC
    ovr: str = OVR
    neg_prefix: str = "neg_"

    def primed(self, pred: str) -> str:
        return pred + self.suffix

    def reify(self, phi: Adorned) -> str:
        return self.neg_prefix + phi[0] if phi[1] else phi[0]

    def rule_id(self, oid: str, k: int) -> str:
        return f"r{k}_{oid}"

    def is_plumbing(self, pred: str) -> bool:
        return pred in (self.prec, self.ovr) or pred.endswith(self.suffix)


@dataclass(frozen=True)
class PlainProgram:
    rules: tuple[Rule, ...]
    name_map: NameMap = field(default_factory=NameMap)
    maxint: Optional[int] = None
    query: Optional[tuple[Literal, ...]] = None


def _user_rules(program: Program):
    for obj, k, rule in program.rules():
        if not is_desugared_constraint(rule):
            yield obj, k, rule


def _head_adorned(program: Program) -> dict[str, set[Adorned]]:
    heads: dict[str, set[Adorned]] = {}
    for obj, _, rule in _user_rules(program):
        heads.setdefault(obj.oid, set()).update(l.adorned for l in rule.head)
    return heads


def threatened_predicates(program: Program) -> dict[str, frozenset[Adorned]]:
    """Adorned head predicates of defeasible rules contradicted in a lower object."""
    heads = _head_adorned(program)
    out: dict[str, set[Adorned]] = {o.oid: set() for o in program.objects}
    for obj, _, rule in _user_rules(program):
        if rule.strict:
            continue
        for lit in rule.head:
            phi = lit.adorned
            if any(neg(phi) in heads.get(lower, ()) for lower in program.oids
                   if program.less_than(lower, obj.oid)):
                out[obj.oid].add(phi)
    return {oid: frozenset(s) for oid, s in out.items()}


def is_threatened_rule(rule: Rule, threatened: frozenset[Adorned]) -> bool:
    return not rule.strict and all(l.adorned in threatened for l in rule.head)


def _variables(prefix: str, n: int, start: int = 1) -> tuple[Variable, ...]:
    return tuple(Variable(f"{prefix}{i}") for i in range(start, start + n))


def _check_names(program: Program, nm: NameMap) -> None:
    preds = {l.predicate for _, _, r in program.rules() for l in r.literals}
    for p in sorted(preds):
        if p in ("prec", "ovr"):
            raise TranslationError(f"predicate '{p}' clashes with a primed plumbing predicate")
    consts: dict[str, str] = {}
    for p in sorted(preds):
        for phi in ((p, False), (p, True)):
            name = nm.reify(phi)
            owner = ("-" if phi[1] else "") + p
            if consts.setdefault(name, owner) != owner:
                raise TranslationError(
                    f"reified names of '{consts[name]}' and '{owner}' coincide as '{name}'")
    for obj, k, _ in program.rules():
        name = nm.rule_id(obj.oid, k)
        if name in consts:
            raise TranslationError(f"rule identifier '{name}' clashes with a reified predicate")
        consts[name] = name


def rewrite(program: Program, nm: NameMap = NameMap()) -> PlainProgram:
    """Rewrite ``program`` into an inheritance-free program."""
    _check_names(program, nm)
    threatened = threatened_predicates(program)
    arity: dict[Adorned, int] = {}
    for _, _, rule in program.rules():
        for lit in rule.literals:
            if not is_constraint_atom(lit):
                arity.setdefault(lit.adorned, lit.arity)
    out: list[Rule] = []

    def prime(lit: Literal, oid: str) -> Literal:
        return Literal(nm.primed(lit.predicate), (oid,) + lit.args, lit.strong_neg)

    for lower in program.oids:
        for upper in program.oids:
            if program.less_than(lower, upper):
                out.append(Rule((Literal(nm.prec, (lower, upper)),)))

    for obj in program.objects:
        oid = obj.oid
        phis = sorted(threatened[oid])
        for phi in phis:
            xs = _variables("X", arity[phi])
            x = Variable("X")
            out.append(Rule(
                (Literal(nm.ovr, (nm.reify(phi), oid) + xs),),
                (Literal(nm.primed(phi[0]), (x,) + xs, not phi[1]), Literal(nm.prec, (x, oid))),
            ))
        for k, rule in enumerate(obj.rules, 1):
            if is_desugared_constraint(rule):
                out.append(Rule((), rule.body_pos, rule.body_naf[:-1]))
                continue
            head = tuple(prime(l, oid) for l in rule.head)
            if is_threatened_rule(rule, threatened[oid]):
                args = tuple(a for l in rule.head for a in l.args)
                guard = Literal(nm.ovr, (nm.rule_id(oid, k), oid) + args)
                out.append(Rule(head, rule.body_pos, rule.body_naf + (guard,)))
                out.append(Rule((guard,), tuple(
                    Literal(nm.ovr, (nm.reify(l.adorned), oid) + l.args) for l in rule.head)))
            else:
                out.append(Rule(head, rule.body_pos, rule.body_naf))

    for phi in sorted(arity):
        xs = _variables("X", arity[phi])
        out.append(Rule(
            (Literal(phi[0], xs, phi[1]),),
            (Literal(nm.primed(phi[0]), (Variable("X0"),) + xs, phi[1]),),
        ))

    heads = set().union(*_head_adorned(program).values()) if program.objects else set()
    for phi in sorted(heads):
        if not phi[1] and neg(phi) in heads:
            xs = _variables("X", arity[phi])
            out.append(Rule((), (Literal(phi[0], xs, False), Literal(phi[0], xs, True))))

    return PlainProgram(tuple(out), nm, program.maxint, program.query)


def project(m: Iterable[Literal], nm: NameMap = NameMap()) -> Interpretation:
    """Drop every literal over a plumbing or primed predicate."""
    return Interpretation(l for l in m if not nm.is_plumbing(l.predicate))


def emit(plain: PlainProgram) -> str:
    lines = []
    if plain.maxint is not None:
        lines.append(f"#maxint = {plain.maxint}.")
    lines.extend(format_rule(r) for r in plain.rules)
    if plain.query:
        lines.append(", ".join(str(l) for l in plain.query) + "?")
    return "\n".join(lines) + "\n"
