"""Answer-set semantics with overriding.

A rule is *overridden* in an interpretation when every head literal is
contradicted by a true complementary literal that heads some rule of a
strictly more specific object, the overridden rule being defeasible and its
body true.  Models satisfy or override every ground rule; answer sets are
models that are minimal for the positive version of their own reduct.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, Container, Iterable, Sequence

from .grounder import GroundProgram, GroundRule
from .model import Literal, Rule, complement

Interp = AbstractSet[Literal]


def head_true(rule: GroundRule, interp: Interp) -> bool:
    return any(l in interp for l in rule.head)


def body_true(rule: GroundRule, interp: Interp) -> bool:
    return (all(l in interp for l in rule.body_pos)
            and not any(l in interp for l in rule.body_naf))


def satisfied(rule: GroundRule, interp: Interp) -> bool:
    return head_true(rule, interp) or not body_true(rule, interp)


def threatens(r1: GroundRule, r2: GroundRule, lit: Literal,
              order: Container[tuple[str, str]]) -> bool:
    return (complement(lit) in r1.head and lit in r2.head
            and (r1.owner, r2.owner) in order and not r2.strict)


def overrides(r1: GroundRule, r2: GroundRule, lit: Literal, interp: Interp,
              order: Container[tuple[str, str]]) -> bool:
    return (threatens(r1, r2, lit, order) and complement(lit) in interp
            and body_true(r2, interp))


def threatened_on(rule: GroundRule, lit: Literal, g: GroundProgram) -> bool:
    """Whether some rule of ``g`` threatens ``rule`` on ``lit``."""
    if rule.strict or lit not in rule.head:
        return False
    owners = g.head_owners.get(complement(lit), ())
    return any((o, rule.owner) in g.order for o in owners)


def overridden(rule: GroundRule, g: GroundProgram, interp: Interp) -> bool:
    if rule.strict or not body_true(rule, interp):
        return False
    return all(complement(l) in interp and threatened_on(rule, l, g) for l in rule.head)


def is_model(g: GroundProgram, interp: Interp) -> bool:
    return all(satisfied(r, interp) or overridden(r, g, interp) for r in g.rules)


def reduct(g: GroundProgram, interp: Interp) -> list[GroundRule]:
    out = []
    for r in g.rules:
        if overridden(r, g, interp):
            continue
        if any(l in interp for l in r.body_naf):
            continue
        rule = r.rule
        out.append(GroundRule(Rule(rule.head, rule.body_pos, (), rule.strict, rule.span),
                              r.owner, r.ordinal))
    return out


# -- positive version --------------------------------------------------------

NEG_PREFIX = "¬"


def pos_atom(lit: Literal) -> Literal:
    """Rename ``-p(t)`` to the positive atom ``¬p(t)``."""
    if not lit.strong_neg:
        return lit
    return Literal(NEG_PREFIX + lit.predicate, lit.args, False)


@dataclass(frozen=True)
class PosRule:
    head: tuple[Literal, ...]
    body: tuple[Literal, ...]


@dataclass(frozen=True)
class PositiveProgram:
    rules: tuple[PosRule, ...]
    atom_of: dict
    literal_of: dict


def pos_version(rules: Iterable[GroundRule]) -> PositiveProgram:
    atom_of: dict[Literal, Literal] = {}

    def rename(lit: Literal) -> Literal:
        a = atom_of.get(lit)
        if a is None:
            a = atom_of[lit] = pos_atom(lit)
        return a

    out = []
    for r in rules:
        if r.body_naf:
            raise ValueError("positive version requires NAF-free rules")
        out.append(PosRule(tuple(rename(l) for l in r.head), tuple(rename(l) for l in r.body_pos)))
    return PositiveProgram(tuple(out), atom_of, {a: l for l, a in atom_of.items()})


def is_minimal_model_positive(p: PositiveProgram, m: Interp) -> bool:
    """``m`` satisfies ``p`` and no proper subset of ``m`` does.

    Atoms outside ``m`` stay false, so only rules whose body lies inside
    ``m`` constrain the subset search, which runs as a small DPLL.
    """
    atoms = {pos_atom(l) for l in m}
    index = {a: i + 1 for i, a in enumerate(sorted(atoms, key=Literal.sort_key))}
    clauses: list[list[int]] = []
    for r in p.rules:
        if not all(b in atoms for b in r.body):
            continue
        heads = [index[h] for h in r.head if h in atoms]
        if not heads:
            return False  # m itself violates the rule
        clauses.append([-index[b] for b in r.body] + heads)
    if not atoms:
        return True
    clauses.append([-i for i in index.values()])
    return not _satisfiable(clauses)


def _satisfiable(clauses: Sequence[list[int]]) -> bool:
    assignment: dict[int, bool] = {}
    return _dpll(list(clauses), assignment)


def _dpll(clauses: list[list[int]], assignment: dict[int, bool]) -> bool:
    trail: list[int] = []
    try:
        while True:
            unit = None
            for clause in clauses:
                unassigned = None
                count = 0
                sat = False
                for lit in clause:
                    val = assignment.get(abs(lit))
                    if val is None:
                        count += 1
                        unassigned = lit
                    elif val == (lit > 0):
                        sat = True
                        break
                if sat:
                    continue
                if count == 0:
                    return False
                if count == 1:
                    unit = unassigned
                    break
            if unit is None:
                break
            assignment[abs(unit)] = unit > 0
            trail.append(abs(unit))
        free = None
        for clause in clauses:
            if any(assignment.get(abs(l)) == (l > 0) for l in clause):
                continue
            free = next(abs(l) for l in clause if abs(l) not in assignment)
            break
        if free is None:
            return True
        for value in (False, True):
            assignment[free] = value
            if _dpll(clauses, assignment):
                return True
            del assignment[free]
        return False
    finally:
        for v in trail:
            assignment.pop(v, None)


def is_answer_set(g: GroundProgram, m: Interp) -> bool:
    if any(l.strong_neg and complement(l) in m for l in m):
        return False
    if not is_model(g, m):
        return False
    return is_minimal_model_positive(pos_version(reduct(g, m)), m)


def is_minimal_model(g: GroundProgram, m: Interp) -> bool:
    """Minimality among models of the program itself, by subset enumeration."""
    from itertools import combinations
    lits = sorted(m, key=Literal.sort_key)
    if not is_model(g, m):
        return False
    for size in range(len(lits)):
        for subset in combinations(lits, size):
            if is_model(g, frozenset(subset)):
                return False
    return True
