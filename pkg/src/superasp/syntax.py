"""Propositional rules and programs, their text format, and constraint elimination.

A program is a finite list of disjunctive rules over an interned atom table.
Atom ids are dense integers, so interpretations can be handled as plain
Python ints used as bit vectors (bit ``i`` set means atom ``i`` is true).

Names starting with ``_`` are reserved for atoms minted by the transforms in
this package. The parser accepts them so that generated programs can be read
back, and :func:`fresh_name` resolves any clash by suffixing.
"""
from __future__ import annotations

import bisect
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import ParseError

ATOM_RE = re.compile(r"[a-z_][A-Za-z0-9_]*\Z")


class AtomTable:
    """Ordered, duplicate-free list of atom names with a reverse index."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str] = ()):
        names = tuple(names)
        index = {}
        for i, name in enumerate(names):
            if not ATOM_RE.match(name):
                raise ValueError(f"invalid atom name {name!r}")
            if name in index:
                raise ValueError(f"duplicate atom name {name!r}")
            index[name] = i
        self.names = names
        self._index = index

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AtomTable) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"AtomTable({list(self.names)!r})"

    def __reduce__(self):
        return (AtomTable, (self.names,))

    def id(self, name: str) -> int:
        return self._index[name]

    def mask(self, names: Iterable[str]) -> int:
        bits = 0
        for name in names:
            bits |= 1 << self._index[name]
        return bits

    def names_of(self, bits: int) -> list[str]:
        """Names of the atoms whose bits are set, in lexicographic order."""
        return sorted(self.names[i] for i in iter_bits(bits))

    def extend(self, names: Iterable[str]) -> AtomTable:
        """Return a table with any new names appended (existing ids kept)."""
        extra = []
        seen = set(self._index)
        for name in names:
            if name not in seen:
                seen.add(name)
                extra.append(name)
        if not extra:
            return self
        return AtomTable(self.names + tuple(extra))


def iter_bits(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@dataclass(frozen=True)
class Rule:
    """``head[0] | ... :- pos..., not neg...`` with atoms given as ids."""

    head: frozenset[int] = frozenset()
    pos: frozenset[int] = frozenset()
    neg: frozenset[int] = frozenset()

    def __post_init__(self):
        for name in ("head", "pos", "neg"):
            value = getattr(self, name)
            if not isinstance(value, frozenset):
                object.__setattr__(self, name, frozenset(value))

    @property
    def is_constraint(self) -> bool:
        return not self.head

    @property
    def is_fact(self) -> bool:
        return len(self.head) == 1 and not self.pos and not self.neg

    @property
    def atoms(self) -> frozenset[int]:
        return self.head | self.pos | self.neg

    def masks(self) -> tuple[int, int, int]:
        return _mask(self.head), _mask(self.pos), _mask(self.neg)


def _mask(ids: Iterable[int]) -> int:
    bits = 0
    for i in ids:
        bits |= 1 << i
    return bits


NamedRule = tuple[Iterable[str], Iterable[str], Iterable[str]]


@dataclass(frozen=True)
class Program:
    atoms: AtomTable = field(default_factory=AtomTable)
    rules: tuple[Rule, ...] = ()

    def __post_init__(self):
        if not isinstance(self.rules, tuple):
            object.__setattr__(self, "rules", tuple(self.rules))
        n = len(self.atoms)
        for rule in self.rules:
            for i in rule.atoms:
                if not 0 <= i < n:
                    raise ValueError(f"rule references unknown atom id {i}")

    @classmethod
    def from_names(
        cls, rules: Iterable[NamedRule], atoms: AtomTable | Iterable[str] = ()
    ) -> Program:
        """Build a program from ``(head, pos, neg)`` name triples.

        Atoms not yet in ``atoms`` are appended in order of first appearance.
        """
        rules = [tuple(tuple(part) for part in r) for r in rules]
        table = atoms if isinstance(atoms, AtomTable) else AtomTable(atoms)
        table = table.extend(name for r in rules for part in r for name in part)
        built = tuple(
            Rule(
                frozenset(table.id(a) for a in head),
                frozenset(table.id(a) for a in pos),
                frozenset(table.id(a) for a in neg),
            )
            for head, pos, neg in rules
        )
        return cls(table, built)

    def __len__(self) -> int:
        return len(self.rules)

    def __str__(self) -> str:
        return render_program(self)

    @cached_property
    def masks(self) -> tuple[tuple[int, int, int], ...]:
        """Per-rule ``(head, pos, neg)`` bit masks."""
        return tuple(r.masks() for r in self.rules)

    @cached_property
    def atom_mask(self) -> int:
        bits = 0
        for h, p, n in self.masks:
            bits |= h | p | n
        return bits

    def named(self, rule: Rule) -> tuple[frozenset[str], frozenset[str], frozenset[str]]:
        names = self.atoms.names
        return (
            frozenset(names[i] for i in rule.head),
            frozenset(names[i] for i in rule.pos),
            frozenset(names[i] for i in rule.neg),
        )

    def named_rules(self) -> list[tuple[frozenset[str], frozenset[str], frozenset[str]]]:
        return [self.named(r) for r in self.rules]

    def canonical(self) -> frozenset:
        """Rule set keyed by names: equal iff equal up to order and renumbering."""
        return frozenset(self.named_rules())

    def normalize(self) -> Program:
        """Drop duplicate rules, keeping the first occurrence."""
        seen = set()
        kept = []
        for rule in self.rules:
            if rule not in seen:
                seen.add(rule)
                kept.append(rule)
        return Program(self.atoms, tuple(kept))

    def over(self, table: AtomTable) -> Program:
        """Re-express this program over ``table``, which must contain its atoms."""
        if table == self.atoms:
            return self
        return Program.from_names(self.named_rules(), table)

    def with_rules(self, rules: Iterable[NamedRule]) -> Program:
        """Append rules given as name triples."""
        extra = Program.from_names(rules, self.atoms)
        return Program(extra.atoms, self.rules + extra.rules)

    def with_facts(self, names: Iterable[str]) -> Program:
        """The program ``P ∪ F``; facts already present are not repeated."""
        names = list(dict.fromkeys(names))
        table = self.atoms.extend(names)
        existing = {next(iter(r.head)) for r in self.rules if r.is_fact}
        facts = tuple(
            Rule(frozenset((table.id(a),))) for a in names if table.id(a) not in existing
        )
        return Program(table, self.rules + facts)

    @property
    def has_constraints(self) -> bool:
        return any(not r.head for r in self.rules)


def atoms_of(p: Program) -> frozenset[str]:
    """Names of all atoms occurring in some rule of ``p``."""
    return frozenset(p.atoms.names[i] for i in iter_bits(p.atom_mask))


def fresh_name(base: str, taken) -> str:
    """``base`` unless already taken, else the first free ``base_<k>``."""
    if base not in taken:
        return base
    k = 1
    while f"{base}_{k}" in taken:
        k += 1
    return f"{base}_{k}"


def eliminate_constraints(p: Program) -> Program:
    """Replace every ``:- body`` by ``_co<k> :- body, not _co<k>``."""
    if not p.has_constraints:
        return p
    taken = set(p.atoms.names)
    rules = []
    k = 0
    for rule in p.rules:
        head, pos, neg = p.named(rule)
        if not head:
            co = fresh_name(f"_co{k}", taken)
            taken.add(co)
            k += 1
            head = (co,)
            neg = sorted(neg) + [co]
        rules.append((head, pos, neg))
    return Program.from_names(rules, p.atoms)


# -- text format -------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<if>:-)
  | (?P<bar>\|)
  | (?P<comma>,)
  | (?P<dot>\.)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<bad>.)
    """,
    re.VERBOSE,
)


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.line_starts = [0] + [m.end() for m in re.finditer("\n", text)]
        self.toks: list[tuple[str, str, int]] = []
        for m in _TOKEN.finditer(text):
            kind = m.lastgroup
            if kind in ("ws", "comment"):
                continue
            if kind == "bad":
                self.error(m.start(), f"unexpected character {m.group()!r}")
            self.toks.append((kind, m.group(), m.start()))
        self.toks.append(("eof", "", len(text)))
        self.i = 0

    def where(self, offset: int) -> tuple[int, int]:
        line = bisect.bisect_right(self.line_starts, offset)
        return line, offset - self.line_starts[line - 1] + 1

    def error(self, offset: int, message: str):
        raise ParseError(*self.where(offset), message)

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def atom(self) -> str:
        kind, value, off = self.take()
        if kind != "name":
            self.error(off, f"expected an atom, found {value or 'end of input'!r}")
        if value == "not":
            self.error(off, "'not' is reserved and cannot be used as an atom")
        if not ATOM_RE.match(value):
            self.error(off, f"atom {value!r} must start with a lowercase letter or '_'")
        return value


def parse_program(text: str) -> Program:
    """Parse rules of the form ``a | b :- c, not d.``; ``%`` starts a comment.

    The empty rule ``:- .`` is accepted as a constraint that is always violated.
    """
    toks = _Tokens(text)
    rules: list[NamedRule] = []
    while toks.peek()[0] != "eof":
        start = toks.peek()
        if start[0] == "dot":
            toks.error(start[2], "empty statement")
        head, pos, neg = [], [], []
        if start[0] == "name":
            head.append(toks.atom())
            while toks.peek()[0] == "bar":
                toks.take()
                head.append(toks.atom())
        if toks.peek()[0] == "if":
            toks.take()
            kind, _, off = toks.peek()
            if kind == "dot":
                if head:
                    toks.error(off, "empty rule body after ':-'")
            else:
                while True:
                    kind, value, off = toks.peek()
                    if kind == "name" and value == "not" and toks.toks[toks.i + 1][0] == "name":
                        toks.take()
                        neg.append(toks.atom())
                    else:
                        pos.append(toks.atom())
                    if toks.peek()[0] != "comma":
                        break
                    toks.take()
        elif not head:
            toks.error(start[2], f"expected a rule, found {start[1] or 'end of input'!r}")
        kind, value, off = toks.take()
        if kind != "dot":
            toks.error(off, f"expected '.', found {value or 'end of input'!r}")
        rules.append((head, pos, neg))
    return Program.from_names(rules)


def render_rule(p: Program, rule: Rule) -> str:
    head, pos, neg = p.named(rule)
    text = " | ".join(sorted(head))
    body = sorted(pos) + [f"not {a}" for a in sorted(neg)]
    if body:
        text = f"{text} :- {', '.join(body)}" if text else f":- {', '.join(body)}"
    elif not text:
        text = ":- "
    return text + "."


def render_program(p: Program) -> str:
    return "".join(render_rule(p, r) + "\n" for r in p.rules)


def parse_atom_list(text: str) -> list[str]:
    """Parse a comma-separated atom list such as ``a,b,c`` (empty allowed)."""
    names = [t.strip() for t in text.split(",") if t.strip()]
    for name in names:
        if not ATOM_RE.match(name):
            raise ParseError(1, 1, f"invalid atom name {name!r}")
    return names

