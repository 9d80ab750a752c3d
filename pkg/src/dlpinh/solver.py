"""Answer-set enumeration, brave and cautious reasoning.

The search assigns a truth value to every literal that could possibly be
derived: the least set ``D`` closed under heads of rules whose positive
body lies in ``D`` (negation as failure ignored).  Every answer set is a
subset of ``D``, since intersecting it with ``D`` still gives a model of
the positive reduct.

Three kinds of constraints prune the search:

* consistency: a literal and its complement are never both true;
* model clauses: a rule whose body holds must have a true head literal,
  unless it can be overridden, i.e. every head literal is threatened and
  its complement is true;
* support: a true literal needs a rule with that literal in the head,
  a true body and no other true head literal (a necessary condition for
  minimality of the positive reduct).

Every complete assignment that survives is confirmed with
:func:`semantics.is_answer_set` before it is reported.

Worst case: the search visits up to ``2**|D|`` leaves and each leaf runs a
minimality check that is itself a satisfiability search over ``D``, so
brave and cautious queries take exponential time on hard disjunctive
programs.  Non-disjunctive programs are usually settled by propagation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Optional, Sequence

from .errors import TooLarge
from .grounder import GroundProgram, GroundRule
from .model import Interpretation, Literal, complement
from .semantics import is_answer_set, threatened_on


@dataclass(frozen=True)
class SolveOptions:
    max_models: Optional[int] = None
    oracle_mode: bool = False
    query_filter: Optional[tuple[Literal, ...]] = None

    def __post_init__(self):
        if self.max_models is not None and self.max_models < 1:
            raise ValueError("max_models must be at least 1")


@dataclass(frozen=True)
class SolveResult:
    answer_sets: list[Interpretation] = field(default_factory=list)
    complete: bool = True


def canonical(sets) -> list[Interpretation]:
    unique = {frozenset(s) for s in sets}
    return sorted((Interpretation(s) for s in unique), key=Interpretation.sort_key)


def derivable(g: GroundProgram) -> frozenset[Literal]:
    """Least set closed under heads of rules whose positive body it contains."""
    waiting: dict[Literal, list[int]] = {}
    missing = []
    queue: list[Literal] = []
    derived: set[Literal] = set()
    for i, r in enumerate(g.rules):
        body = set(r.body_pos)
        missing.append(len(body))
        for b in body:
            waiting.setdefault(b, []).append(i)
        if not body:
            queue.extend(r.head)
    while queue:
        lit = queue.pop()
        if lit in derived:
            continue
        derived.add(lit)
        for i in waiting.get(lit, ()):
            missing[i] -= 1
            if missing[i] == 0:
                queue.extend(g.rules[i].head)
    return frozenset(derived)


class _Search:
    """Propositional search over the literals of ``D``."""

    def __init__(self, g: GroundProgram, assume_true: Sequence[Literal] = (),
                 assume_false: Sequence[Literal] = ()):
        self.g = g
        d = derivable(g)
        self.lits = sorted(d, key=Literal.sort_key)
        self.var = {l: i for i, l in enumerate(self.lits)}
        n = len(self.lits)
        self.value: list[Optional[bool]] = [None] * n
        self.trail: list[int] = []
        self.clauses: list[tuple[int, ...]] = []   # signed: v+1 true, -(v+1) false
        self.occ: list[list[int]] = [[] for _ in range(n)]
        self.support: list[list[tuple[tuple[int, bool], ...]]] = [[] for _ in range(n)]
        self.watch: list[set[int]] = [set() for _ in range(n)]
        self.disjunctive: set[int] = set()
        self.unsat = False

        for l in self.lits:
            c = complement(l)
            if c in self.var and not l.strong_neg:
                self._clause((-(self.var[l] + 1), -(self.var[c] + 1)))

        for r in g.rules:
            if not all(b in d for b in r.body_pos):
                continue
            self._encode(r, d)

        for l in assume_true:
            if l not in self.var:
                self.unsat = True
            else:
                self._clause((self.var[l] + 1,))
        for l in assume_false:
            if l in self.var:
                self._clause((-(self.var[l] + 1),))

    def _clause(self, clause: tuple[int, ...]) -> None:
        idx = len(self.clauses)
        self.clauses.append(clause)
        for s in clause:
            self.occ[abs(s) - 1].append(idx)

    def _encode(self, r: GroundRule, d: frozenset[Literal]) -> None:
        var = self.var
        pos = [var[b] for b in dict.fromkeys(r.body_pos)]
        naf = [var[n] for n in dict.fromkeys(r.body_naf) if n in d]
        heads = [var[h] for h in dict.fromkeys(r.head)]
        if len(heads) > 1:
            self.disjunctive.update(heads)
        base = tuple(-(b + 1) for b in pos) + tuple(n + 1 for n in naf) + tuple(h + 1 for h in heads)
        escapes = None
        if not r.strict and all(complement(h) in d and threatened_on(r, h, self.g) for h in r.head):
            escapes = [var[complement(h)] for h in dict.fromkeys(r.head)]
        if escapes is None:
            self._clause(base)
        else:
            for c in escapes:
                self._clause(base + (c + 1,))

        for h in heads:
            cond = tuple([(b, True) for b in pos] + [(n, False) for n in naf]
                         + [(o, False) for o in heads if o != h])
            if any(v == h for v, want in cond if want is False):
                continue  # the literal would block its own support
            self.support[h].append(cond)
            for v, _ in cond:
                self.watch[v].add(h)

    # -- propagation ---------------------------------------------------------

    def _assign(self, v: int, val: bool, queue: list[int]) -> bool:
        cur = self.value[v]
        if cur is not None:
            return cur == val
        self.value[v] = val
        self.trail.append(v)
        queue.append(v)
        return True

    def _check_clause(self, clause: tuple[int, ...], queue: list[int]) -> bool:
        free = None
        nfree = 0
        for s in clause:
            val = self.value[abs(s) - 1]
            if val is None:
                nfree += 1
                free = s
            elif val == (s > 0):
                return True
        if nfree == 0:
            return False
        if nfree == 1:
            return self._assign(abs(free) - 1, free > 0, queue)
        return True

    def _check_support(self, h: int, queue: list[int]) -> bool:
        if self.value[h] is False:
            return True
        alive = None
        count = 0
        for cond in self.support[h]:
            if all(self.value[v] is None or self.value[v] == want for v, want in cond):
                count += 1
                alive = cond
                if count > 1:
                    break
        if count == 0:
            return self._assign(h, False, queue)
        if count == 1 and self.value[h] is True:
            return all(self._assign(v, want, queue) for v, want in alive)
        return True

    def propagate(self, queue: list[int]) -> bool:
        while queue:
            v = queue.pop()
            for ci in self.occ[v]:
                if not self._check_clause(self.clauses[ci], queue):
                    return False
            for h in self.watch[v]:
                if not self._check_support(h, queue):
                    return False
            if not self._check_support(v, queue):
                return False
        return True

    def initial(self) -> bool:
        if self.unsat:
            return False
        queue: list[int] = []
        for clause in self.clauses:
            if not self._check_clause(clause, queue):
                return False
        for h in range(len(self.lits)):
            if not self._check_support(h, queue):
                return False
        return self.propagate(queue)

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            self.value[self.trail.pop()] = None

    def choose(self) -> Optional[int]:
        first = None
        for v, val in enumerate(self.value):
            if val is None:
                if v in self.disjunctive:
                    return v
                if first is None:
                    first = v
        return first

    def leaves(self) -> Iterator[frozenset[Literal]]:
        if not self.initial():
            return
        yield from self._branch()

    def _branch(self) -> Iterator[frozenset[Literal]]:
        v = self.choose()
        if v is None:
            yield frozenset(self.lits[i] for i, val in enumerate(self.value) if val)
            return
        for val in (False, True):
            mark = len(self.trail)
            queue: list[int] = []
            self._assign(v, val, queue)
            if self.propagate(queue):
                yield from self._branch()
            self.undo(mark)


def _answer_sets(g: GroundProgram, assume_true=(), assume_false=()) -> Iterator[frozenset[Literal]]:
    for m in _Search(g, assume_true, assume_false).leaves():
        if is_answer_set(g, m):
            yield m


def enumerate_answer_sets(g: GroundProgram, opts: SolveOptions = SolveOptions()) -> SolveResult:
    """All answer sets of ``g`` containing every query literal, canonically ordered.

    With ``max_models`` the search stops after that many answer sets and
    the result is marked incomplete if more might exist.
    """
    if opts.oracle_mode:
        res = brute_force_answer_sets(g)
        sets = res.answer_sets
        if opts.query_filter:
            sets = [m for m in sets if all(q in m for q in opts.query_filter)]
        if opts.max_models is not None and len(sets) > opts.max_models:
            return SolveResult(sets[:opts.max_models], False)
        return SolveResult(sets, True)
    found = []
    complete = True
    for m in _answer_sets(g, assume_true=opts.query_filter or ()):
        if opts.max_models is not None and len(found) == opts.max_models:
            complete = False
            break
        found.append(m)
    return SolveResult(canonical(found), complete)


def brute_force_answer_sets(g: GroundProgram, bound: int = 18) -> SolveResult:
    """Check every consistent subset of the base; for small programs only."""
    atoms = sorted(g.atoms, key=Literal.sort_key)
    if len(atoms) > bound:
        raise TooLarge(len(atoms), bound)
    found = []
    for choice in product((0, 1, 2), repeat=len(atoms)):
        m = frozenset(a if c == 1 else complement(a) for a, c in zip(atoms, choice) if c)
        if is_answer_set(g, m):
            found.append(m)
    return SolveResult(canonical(found), True)


def brave(g: GroundProgram, lit: Literal, oracle: bool = False) -> tuple[bool, Optional[Interpretation]]:
    """Whether some answer set contains ``lit``, with one such set as witness."""
    if oracle:
        for m in brute_force_answer_sets(g).answer_sets:
            if lit in m:
                return True, m
        return False, None
    witnesses = canonical(_answer_sets(g, assume_true=(lit,)))
    if witnesses:
        return True, witnesses[0]
    return False, None


def cautious(g: GroundProgram, lit: Literal, oracle: bool = False) -> tuple[bool, Optional[Interpretation]]:
    """Whether every answer set contains ``lit``; vacuously true if there are none.

    On failure the second component is an answer set lacking ``lit``.
    """
    if oracle:
        for m in brute_force_answer_sets(g).answer_sets:
            if lit not in m:
                return False, m
        return True, None
    counter = canonical(_answer_sets(g, assume_false=(lit,)))
    if counter:
        return False, counter[0]
    return True, None


def has_answer_set(g: GroundProgram) -> bool:
    return next(_answer_sets(g), None) is not None
