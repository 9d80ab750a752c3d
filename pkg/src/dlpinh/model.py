"""Abstract syntax of DLP< knowledge bases and the inheritance order.

Constants are plain Python values: a ``str`` for symbolic constants and an
``int`` for numerals.  Variables are :class:`Variable` instances and the
``#maxint`` placeholder is the singleton :data:`MAXINT`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional, Union

from .errors import CyclicHierarchy, SourceSpan, UnknownObject


@dataclass(frozen=True)
class Variable:
    name: str

    def __str__(self) -> str:
        return self.name


class _Maxint:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "MAXINT"

    def __str__(self) -> str:
        return "#maxint"

    def __reduce__(self):
        return (_Maxint, ())


MAXINT = _Maxint()

Constant = Union[str, int]
Term = Union[str, int, Variable, _Maxint]


def term_key(t: Term) -> tuple:
    """Sort key placing numerals before symbols and variables last."""
    if isinstance(t, int):
        return (0, t, "")
    if isinstance(t, str):
        return (1, 0, t)
    if isinstance(t, Variable):
        return (2, 0, t.name)
    return (3, 0, "")


def is_ground_term(t: Term) -> bool:
    return isinstance(t, (str, int))


@dataclass(frozen=True)
class Literal:
    predicate: str
    args: tuple = ()
    strong_neg: bool = False
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.predicate, self.args, self.strong_neg)))

    def __hash__(self) -> int:
        return self._hash

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def adorned(self) -> tuple[str, bool]:
        return (self.predicate, self.strong_neg)

    @property
    def is_ground(self) -> bool:
        return all(is_ground_term(a) for a in self.args)

    def variables(self) -> Iterator[Variable]:
        return (a for a in self.args if isinstance(a, Variable))

    def sort_key(self) -> tuple:
        return (self.predicate, self.strong_neg, tuple(term_key(a) for a in self.args))

    def __lt__(self, other: "Literal") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        sign = "-" if self.strong_neg else ""
        if not self.args:
            return sign + self.predicate
        return f"{sign}{self.predicate}({','.join(str(a) for a in self.args)})"


def complement(lit: Literal) -> Literal:
    return Literal(lit.predicate, lit.args, not lit.strong_neg)


@dataclass(frozen=True)
class Builtin:
    """``#succ``, ``<>``, ``<`` or ``=`` over two terms; only in positive bodies."""

    op: str
    left: Term
    right: Term

    OPS = ("#succ", "<>", "<", "=")

    def variables(self) -> Iterator[Variable]:
        return (a for a in (self.left, self.right) if isinstance(a, Variable))

    def __str__(self) -> str:
        if self.op == "#succ":
            return f"#succ({self.left},{self.right})"
        return f"{self.left} {self.op} {self.right}"


BodyAtom = Union[Literal, Builtin]


@dataclass(frozen=True)
class Rule:
    head: tuple[Literal, ...]
    body_pos: tuple[BodyAtom, ...] = ()
    body_naf: tuple[Literal, ...] = ()
    strict: bool = False
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)

    @property
    def literals(self) -> Iterator[Literal]:
        yield from self.head
        yield from (b for b in self.body_pos if isinstance(b, Literal))
        yield from self.body_naf

    @property
    def builtins(self) -> tuple[Builtin, ...]:
        return tuple(b for b in self.body_pos if isinstance(b, Builtin))

    def variables(self) -> list[Variable]:
        """Variables in first-occurrence order (head, positive body, NAF body)."""
        seen: dict[Variable, None] = {}
        for part in (self.head, self.body_pos, self.body_naf):
            for item in part:
                for v in item.variables():
                    seen.setdefault(v, None)
        return list(seen)

    @property
    def is_ground(self) -> bool:
        return not self.variables()


@dataclass(frozen=True)
class ObjectDef:
    oid: str
    parents: tuple[str, ...] = ()
    rules: tuple[Rule, ...] = ()
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, eq=False)
class KnowledgeBase:
    objects: Mapping[str, ObjectDef]
    maxint: Optional[int] = None
    query: Optional[tuple[Literal, ...]] = None

    def __eq__(self, other) -> bool:
        if not isinstance(other, KnowledgeBase):
            return NotImplemented
        return (list(self.objects.items()) == list(other.objects.items())
                and self.maxint == other.maxint and self.query == other.query)

    def __hash__(self) -> int:
        return hash((tuple(self.objects.items()), self.maxint, self.query))

    @cached_property
    def _above(self) -> dict[str, frozenset[str]]:
        above: dict[str, frozenset[str]] = {}
        for oid in self.objects:
            seen: set[str] = set()
            stack = list(self.objects[oid].parents)
            while stack:
                p = stack.pop()
                if p in seen:
                    continue
                seen.add(p)
                if p in self.objects:
                    stack.extend(self.objects[p].parents)
            above[oid] = frozenset(seen)
        return above

    def _require(self, oid: str) -> None:
        if oid not in self.objects:
            raise UnknownObject(oid)

    def above(self, oid: str) -> frozenset[str]:
        """Object ids strictly greater than ``oid``."""
        self._require(oid)
        return self._above[oid]

    def less_than(self, a: str, b: str) -> bool:
        self._require(a)
        self._require(b)
        return b in self._above[a]


def less_than(kb: KnowledgeBase, a: str, b: str) -> bool:
    return kb.less_than(a, b)


def validate_hierarchy(kb: KnowledgeBase) -> None:
    """Raise unless every parent resolves and the parent graph is acyclic."""
    for obj in kb.objects.values():
        for p in obj.parents:
            if p not in kb.objects:
                raise UnknownObject(p, obj.span)

    # iterative DFS with colours; the stack doubles as the current path
    colour = {oid: 0 for oid in kb.objects}
    for root in kb.objects:
        if colour[root]:
            continue
        path = [root]
        iters = [iter(kb.objects[root].parents)]
        colour[root] = 1
        while iters:
            nxt = next(iters[-1], None)
            if nxt is None:
                colour[path.pop()] = 2
                iters.pop()
                continue
            if colour[nxt] == 1:
                cycle = path[path.index(nxt):] + [nxt]
                raise CyclicHierarchy(cycle, kb.objects[path[-1]].span)
            if colour[nxt] == 0:
                colour[nxt] = 1
                path.append(nxt)
                iters.append(iter(kb.objects[nxt].parents))


@dataclass(frozen=True)
class Program:
    """The objects visible from ``target``, plus the order restricted to them."""

    target: str
    objects: tuple[ObjectDef, ...]
    order: frozenset[tuple[str, str]]
    maxint: Optional[int] = None
    query: Optional[tuple[Literal, ...]] = None

    @property
    def oids(self) -> tuple[str, ...]:
        return tuple(o.oid for o in self.objects)

    def less_than(self, a: str, b: str) -> bool:
        return (a, b) in self.order

    def rules(self) -> Iterator[tuple[ObjectDef, int, Rule]]:
        """(object, 1-based index, rule) over the whole program."""
        for obj in self.objects:
            for k, rule in enumerate(obj.rules, 1):
                yield obj, k, rule


def program_for(kb: KnowledgeBase, oid: str) -> Program:
    above = kb.above(oid)
    objs = tuple(o for o in kb.objects.values() if o.oid == oid or o.oid in above)
    ids = {o.oid for o in objs}
    order = frozenset((a, b) for a in ids for b in kb.above(a) if b in ids)
    return Program(oid, objs, order, kb.maxint, kb.query)


def bottom_object(kb: KnowledgeBase) -> Optional[str]:
    others = len(kb.objects) - 1
    for oid in kb.objects:
        if len(kb.above(oid)) == others:
            return oid
    return None


def single_object_program(rules: Iterable[Rule], oid: str = "main") -> Program:
    obj = ObjectDef(oid, (), tuple(rules))
    return Program(oid, (obj,), frozenset())


class Interpretation(frozenset):
    """A consistent set of ground literals, printed in canonical order."""

    def __new__(cls, literals: Iterable[Literal] = ()):
        self = super().__new__(cls, literals)
        for lit in self:
            if lit.strong_neg and complement(lit) in self:
                raise ValueError(f"inconsistent interpretation: contains {lit} and its complement")
        return self

    def sorted(self) -> list[Literal]:
        return sorted(self, key=Literal.sort_key)

    def sort_key(self) -> tuple:
        return tuple(lit.sort_key() for lit in self.sorted())

    def positive(self) -> "Interpretation":
        return Interpretation(lit for lit in self if not lit.strong_neg)

    def __str__(self) -> str:
        return "{" + ", ".join(str(lit) for lit in self.sorted()) + "}"

    def __repr__(self) -> str:
        return f"Interpretation({self})"


def is_consistent(literals: Iterable[Literal]) -> bool:
    s = set(literals)
    return not any(lit.strong_neg and complement(lit) in s for lit in s)
