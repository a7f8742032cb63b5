"""QBFs of shape ∀X∃Y∀Z (DNF) and ∀X∃Y (CNF), and their program encodings.

A QBF ``Φ`` is turned into a program that is super-coherent exactly when
``Φ`` is true: :func:`encode_disjunctive` for the three-block DNF shape and
:func:`encode_normal` (a normal program) for the two-block CNF shape. The
``verify_*`` functions check by exhaustive enumeration that a program has the
model structure those encodings are built around.

Variable ``v`` becomes atom ``v``, its complement becomes ``_n_v``; the
auxiliary atoms are ``_u``, ``_v`` and ``_w``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GuardExceeded, InvariantViolation, ParseError, UniverseMismatch
from .semantics import canonical_key, is_model, is_positive_model, reduct_masks
from .syntax import AtomTable, Program, atoms_of

VAR_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
MAX_QBF_VARS = 20
MAX_VERIFY_ATOMS = 12

U, V, W = "_u", "_v", "_w"

Literal = tuple[str, bool]


def bar(var: str) -> str:
    return f"_n_{var}"


def lit_atom(lit: Literal) -> str:
    var, positive = lit
    return var if positive else bar(var)


def complement_atom(lit: Literal) -> str:
    var, positive = lit
    return bar(var) if positive else var


def _check_blocks(blocks: dict[str, Sequence[str]]):
    seen: dict[str, str] = {}
    for label, names in blocks.items():
        if not names:
            raise InvariantViolation(f"quantifier block {label} must be nonempty")
        for name in names:
            if not VAR_RE.match(name) or name == "not":
                raise InvariantViolation(f"invalid variable name {name!r}")
            if name in seen:
                raise InvariantViolation(
                    f"variable {name!r} occurs in blocks {seen[name]} and {label}"
                )
            seen[name] = label


def _check_matrix(
    rows: Sequence[Sequence[Literal]], blocks: dict[str, Sequence[str]], kind: str
):
    if not rows:
        raise InvariantViolation(f"the matrix needs at least one {kind}")
    block_of = {v: label for label, names in blocks.items() for v in names}
    for n, row in enumerate(rows, 1):
        names = [v for v, _ in row]
        for v in names:
            if v not in block_of:
                raise InvariantViolation(f"{kind} {n}: variable {v!r} is not quantified")
        if len(set(names)) != len(names):
            raise InvariantViolation(f"{kind} {n} mentions a variable twice")
        covered = {block_of[v] for v in names}
        for label in blocks:
            if label not in covered:
                raise InvariantViolation(
                    f"{kind} {n} must contain a variable from every block; {label} is missing"
                )


def _freeze(rows) -> tuple[tuple[Literal, ...], ...]:
    return tuple(tuple((str(v), bool(s)) for v, s in row) for row in rows)


@dataclass(frozen=True)
class Qbf3:
    """``∀X ∃Y ∀Z`` over a DNF matrix; ``terms`` are conjunctions of literals."""

    x_vars: tuple[str, ...]
    y_vars: tuple[str, ...]
    z_vars: tuple[str, ...]
    terms: tuple[tuple[Literal, ...], ...]

    def __post_init__(self):
        for name in ("x_vars", "y_vars", "z_vars"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "terms", _freeze(self.terms))
        blocks = {"X": self.x_vars, "Y": self.y_vars, "Z": self.z_vars}
        _check_blocks(blocks)
        _check_matrix(self.terms, blocks, "term")

    @property
    def variables(self) -> tuple[str, ...]:
        return self.x_vars + self.y_vars + self.z_vars

    def satisfied_by(self, true_vars: Iterable[str]) -> bool:
        true_vars = set(true_vars)
        return any(all((v in true_vars) == s for v, s in t) for t in self.terms)

    def render(self) -> str:
        return _render("dnf", [("forall", self.x_vars), ("exists", self.y_vars),
                               ("forall", self.z_vars)], self.terms)


@dataclass(frozen=True)
class Qbf2:
    """``∀X ∃Y`` over a CNF matrix; ``clauses`` are disjunctions of literals."""

    x_vars: tuple[str, ...]
    y_vars: tuple[str, ...]
    clauses: tuple[tuple[Literal, ...], ...]

    def __post_init__(self):
        for name in ("x_vars", "y_vars"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "clauses", _freeze(self.clauses))
        blocks = {"X": self.x_vars, "Y": self.y_vars}
        _check_blocks(blocks)
        _check_matrix(self.clauses, blocks, "clause")

    @property
    def variables(self) -> tuple[str, ...]:
        return self.x_vars + self.y_vars

    def satisfied_by(self, true_vars: Iterable[str]) -> bool:
        true_vars = set(true_vars)
        return all(any((v in true_vars) == s for v, s in c) for c in self.clauses)

    def render(self) -> str:
        return _render("cnf", [("forall", self.x_vars), ("exists", self.y_vars)], self.clauses)


def _render(kind, prefix, rows) -> str:
    lines = [f"{q} {' '.join(names)}" for q, names in prefix]
    lines.append(kind)
    lines += [" ".join(v if s else f"-{v}" for v, s in row) for row in rows]
    return "\n".join(lines) + "\n"


# -- text format ----------------------------------------------------------------

_SHAPES = {"dnf": ("forall", "exists", "forall"), "cnf": ("forall", "exists")}


def parse_qbf(text: str) -> Qbf3 | Qbf2:
    """Parse the line-oriented QBF format.

    Quantifier lines (``forall a b`` / ``exists c``) come first, then ``dnf`` or
    ``cnf``, then one term or clause per line with ``-`` marking negation.
    ``%`` starts a comment and ``/`` may stand in for a line break.
    """
    segments: list[tuple[int, int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        raw = raw.split("%", 1)[0]
        col = 1
        for piece in raw.split("/"):
            if piece.strip():
                segments.append((lineno, col + len(piece) - len(piece.lstrip()), piece.strip()))
            col += len(piece) + 1

    prefix: list[tuple[str, list[str]]] = []
    kind = None
    rows: list[list[Literal]] = []
    for lineno, col, seg in segments:
        words = seg.split()
        if kind is None:
            head = words[0]
            if head in _SHAPES and len(words) == 1:
                kind = head
                shape = tuple(q for q, _ in prefix)
                if shape != _SHAPES[kind]:
                    raise ParseError(
                        lineno, col,
                        f"{kind} matrix needs prefix {' '.join(_SHAPES[kind])}, got {' '.join(shape) or 'none'}",
                    )
            elif head in ("forall", "exists"):
                if len(words) == 1:
                    raise ParseError(lineno, col, f"'{head}' needs at least one variable")
                prefix.append((head, words[1:]))
            else:
                raise ParseError(lineno, col, f"expected forall, exists, dnf or cnf, got {head!r}")
            continue
        row = []
        for word in words:
            var, positive = (word[1:], False) if word.startswith("-") else (word, True)
            if not VAR_RE.match(var):
                raise ParseError(lineno, col, f"invalid literal {word!r}")
            row.append((var, positive))
        rows.append(row)
    if kind is None:
        raise ParseError(len(text.splitlines()) or 1, 1, "missing 'dnf' or 'cnf' line")
    blocks = [names for _, names in prefix]
    if kind == "dnf":
        return Qbf3(*blocks, rows)
    return Qbf2(*blocks, rows)


# -- brute-force truth ----------------------------------------------------------

def _compile(variables: Sequence[str], rows) -> list[tuple[int, int]]:
    index = {v: i for i, v in enumerate(variables)}
    out = []
    for row in rows:
        pos = neg = 0
        for v, s in row:
            if s:
                pos |= 1 << index[v]
            else:
                neg |= 1 << index[v]
        out.append((pos, neg))
    return out


def _guard_vars(n: int):
    if n > MAX_QBF_VARS:
        raise GuardExceeded(n, MAX_QBF_VARS, "QBF truth-table evaluation")


def qbf3_valid(f: Qbf3) -> bool:
    """Truth of ``∀X∃Y∀Z φ`` by full truth-table expansion."""
    nx_, ny, nz = len(f.x_vars), len(f.y_vars), len(f.z_vars)
    _guard_vars(nx_ + ny + nz)
    terms = _compile(f.variables, f.terms)

    def phi(a: int) -> bool:
        return any(not (p & ~a) and not (n & a) for p, n in terms)

    return all(
        any(all(phi(x | y << nx_ | z << (nx_ + ny)) for z in range(1 << nz)) for y in range(1 << ny))
        for x in range(1 << nx_)
    )


def qbf2_valid(f: Qbf2) -> bool:
    """Truth of ``∀X∃Y φ`` by full truth-table expansion."""
    nx_, ny = len(f.x_vars), len(f.y_vars)
    _guard_vars(nx_ + ny)
    clauses = _compile(f.variables, f.clauses)

    def phi(a: int) -> bool:
        return all(p & a or n & ~a for p, n in clauses)

    return all(any(phi(x | y << nx_) for y in range(1 << ny)) for x in range(1 << nx_))


# -- encodings --------------------------------------------------------------------

def disjunctive_universe(f: Qbf3) -> list[str]:
    return (list(f.x_vars) + [bar(x) for x in f.x_vars]
            + list(f.y_vars) + [bar(y) for y in f.y_vars]
            + list(f.z_vars) + [bar(z) for z in f.z_vars] + [U, V, W])


def normal_universe(f: Qbf2) -> list[str]:
    return (list(f.x_vars) + [bar(x) for x in f.x_vars]
            + list(f.y_vars) + [bar(y) for y in f.y_vars] + [V, W])


def encode_disjunctive(f: Qbf3) -> Program:
    """Disjunctive program that is super-coherent iff ``f`` is true."""
    rules = []
    for x in f.x_vars:
        nx_ = bar(x)
        rules += [
            ((x, nx_), (), ()),
            ((U,), (x, nx_), ()),
            ((W,), (x, nx_), ()),
            ((x,), (U, W), ()),
            ((nx_,), (U, W), ()),
        ]
    for y in f.y_vars:
        ny = bar(y)
        rules += [
            ((y, ny), (V,), ()),
            ((U,), (y, ny), ()),
            ((W,), (y, ny), ()),
            ((y,), (U, W), ()),
            ((ny,), (U, W), ()),
            ((V,), (y,), ()),
            ((V,), (ny,), ()),
        ]
    for z in f.z_vars:
        nz = bar(z)
        rules += [
            ((z, nz), (V,), ()),
            ((U,), (z,), (W,)),
            ((U,), (nz,), (W,)),
            ((V,), (z,), ()),
            ((V,), (nz,), ()),
            ((z,), (W,), ()),
            ((nz,), (W,), ()),
            ((z,), (U,), ()),
            ((nz,), (U,), ()),
            ((W, U), (z, nz), ()),
        ]
    for term in f.terms:
        rules.append(((W, U), tuple(lit_atom(l) for l in term), ()))
    rules += [((V,), (W,), ()), ((V,), (U,), ()), ((V,), (), (U,))]
    return Program.from_names(rules, disjunctive_universe(f))


def encode_normal(f: Qbf2) -> Program:
    """Normal program that is super-coherent iff ``f`` is true."""
    rules = []
    for x in f.x_vars:
        rules += [((x,), (), (bar(x),)), ((bar(x),), (), (x,))]
    for y in f.y_vars:
        ny = bar(y)
        rules += [
            ((y,), (W,), (ny,)),
            ((ny,), (W,), (y,)),
            ((W,), (y,), ()),
            ((W,), (ny,), ()),
        ]
    saturated = list(f.x_vars) + [bar(x) for x in f.x_vars] + [V, W]
    for z in saturated:
        rules.append(((z,), (V, W), ()))
        rules += [((z,), (x, bar(x)), ()) for x in f.x_vars]
        rules += [((z,), (y, bar(y)), ()) for y in f.y_vars]
    for clause in f.clauses:
        rules.append(((V,), tuple(complement_atom(l) for l in clause), ()))
    rules.append(((W,), (), (V,)))
    return Program.from_names(rules, normal_universe(f))


# -- model-structure verification ------------------------------------------------

@dataclass(frozen=True)
class Violation:
    item: str
    interpretation: tuple[str, ...]
    detail: str

    def to_json(self) -> dict:
        return {"item": self.item, "interpretation": list(self.interpretation),
                "detail": self.detail}


@dataclass(frozen=True)
class ReductionReport:
    violations: tuple[Violation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.passed

    def items(self) -> set[str]:
        return {v.item for v in self.violations}

    def to_json(self) -> dict:
        return {"passed": self.passed, "violations": [v.to_json() for v in self.violations]}


class _Checker:
    """Shared plumbing: a fixed universe, its bit masks and violation collection."""

    def __init__(self, p: Program, universe: list[str]):
        extra = atoms_of(p) - set(universe)
        if extra:
            raise UniverseMismatch(f"atoms outside the expected universe: {sorted(extra)}")
        if len(universe) > MAX_VERIFY_ATOMS:
            raise GuardExceeded(len(universe), MAX_VERIFY_ATOMS, "reduction verification")
        self.table = AtomTable(universe)
        self.masks = p.over(self.table).masks
        self.full = (1 << len(universe)) - 1
        self.found: list[tuple[str, int, str]] = []

    def bits(self, names: Iterable[str]) -> int:
        return self.table.mask(names)

    def label(self, bits: int) -> str:
        return "{" + ", ".join(self.table.names_of(bits)) + "}"

    def models(self) -> set[int]:
        return {i for i in range(self.full + 1) if is_model(self.masks, i)}

    def submodels(self, m: int) -> set[int]:
        """Models ``N ⊆ m`` of the reduct w.r.t. ``m``."""
        red = reduct_masks(self.masks, m)
        out = set()
        sub = m
        while True:
            if is_positive_model(red, sub):
                out.add(sub)
            if not sub:
                return out
            sub = (sub - 1) & m

    def compare(self, item: str, what: str, found: set[int], expected: set[int]):
        for i in expected - found:
            self.found.append((item, i, f"expected {what} is missing"))
        for i in found - expected:
            self.found.append((item, i, f"unexpected {what}"))

    def flag(self, item: str, i: int, detail: str):
        self.found.append((item, i, detail))

    def report(self) -> ReductionReport:
        ordered = sorted(self.found, key=lambda v: (v[0], canonical_key(v[1]), v[2]))
        return ReductionReport(tuple(
            Violation(item, tuple(self.table.names_of(i)), detail) for item, i, detail in ordered
        ))


def _subsets(names: Sequence[str]) -> list[tuple[str, ...]]:
    return [c for k in range(len(names) + 1) for c in itertools.combinations(names, k)]


def _assign(vars_: Sequence[str], chosen: Sequence[str]) -> list[str]:
    """Atoms for the assignment making exactly ``chosen`` true."""
    chosen = set(chosen)
    return [v if v in chosen else bar(v) for v in vars_]


def verify_phi_reduction(p: Program, f: Qbf3) -> ReductionReport:
    """Check the model and reduct-model structure that makes ``p`` encode ``f``."""
    universe = disjunctive_universe(f)
    ck = _Checker(p, universe)
    b = ck.bits
    top = b(universe)
    zz = b(f.z_vars) | b(bar(z) for z in f.z_vars)
    u, v, w = b([U]), b([V]), b([W])

    states = []
    for i_set in _subsets(f.x_vars):
        o = b(_assign(f.x_vars, i_set))
        for j_set in _subsets(f.y_vars):
            ij = o | b(_assign(f.y_vars, j_set))
            ns = {
                ij | b(_assign(f.z_vars, k_set)) | v
                for k_set in _subsets(f.z_vars)
                if not f.satisfied_by(i_set + j_set + k_set)
            }
            states.append((i_set, j_set, o, ij | zz | u | v, ij | zz | v | w, ns))

    expected = {top}
    for *_, m, m2, _ns in states:
        expected |= {m, m2}
    ck.compare("2", "model of the program", ck.models(), expected)

    for i_set, j_set, o, m, m2, ns in states:
        tag = f"I={ck.label(b(i_set))}, J={ck.label(b(j_set))}"
        ck.compare("3", f"reduct model below M[{tag}] {ck.label(m)}", ck.submodels(m), {m, o})
        ck.compare("4", f"reduct model below M'[{tag}] {ck.label(m2)}", ck.submodels(m2),
                   {m2} | ns)

    below_top = {top}
    for _i, _j, o, m, m2, ns in states:
        below_top |= {o, m, m2} | ns
    ck.compare("5", "model of the reduct w.r.t. the full universe", ck.submodels(top), below_top)
    return ck.report()


def verify_phi_norm_reduction(p: Program, f: Qbf2) -> ReductionReport:
    """Check the model and reduct-model structure that makes normal ``p`` encode ``f``."""
    universe = normal_universe(f)
    ck = _Checker(p, universe)
    b = ck.bits
    xx = b(f.x_vars) | b(bar(x) for x in f.x_vars)
    v, w = b([V]), b([W])
    y_pairs = [(b([y]), b([bar(y)])) for y in f.y_vars]
    x_pairs = [(b([x]), b([bar(x)])) for x in f.x_vars]

    # J* ranges over subsets of Y ∪ Ȳ holding at least one of y, ȳ for every y.
    o_sets = set()
    for choice in itertools.product(*[(yb, nb, yb | nb) for yb, nb in y_pairs]):
        j_star = 0
        for part in choice:
            j_star |= part
        o_sets.add(xx | j_star | v | w)
    m_sets = {}
    n_sets = {}
    for i_set in _subsets(f.x_vars):
        base = b(_assign(f.x_vars, i_set))
        m_sets[i_set] = base | v
        for j_set in _subsets(f.y_vars):
            if f.satisfied_by(i_set + j_set):
                n_sets[i_set, j_set] = base | b(_assign(f.y_vars, j_set)) | w

    ck.compare("2", "model of the program", ck.models(),
               o_sets | set(m_sets.values()) | set(n_sets.values()))

    for m in m_sets.values():
        ck.compare("3", f"reduct model below {ck.label(m)}", ck.submodels(m), {m, m & ~v})
    for n in n_sets.values():
        ck.compare("3", f"reduct model below {ck.label(n)}", ck.submodels(n), {n})

    clause_bodies = [b(complement_atom(l) for l in c) for c in f.clauses]
    saturated = xx | v | w
    yy = 0
    for yb, nb in y_pairs:
        yy |= yb | nb
    for o in sorted(o_sets):
        where = f"below {ck.label(o)}"
        for m in ck.submodels(o):
            for yb, nb in y_pairs:
                if o & yb and not o & nb and m & w and not m & yb:
                    ck.flag("4a", m, f"reduct model {where} has w but lacks {ck.label(yb)}")
                if o & nb and not o & yb and m & w and not m & nb:
                    ck.flag("4b", m, f"reduct model {where} has w but lacks {ck.label(nb)}")
            if m & yy and not m & w:
                ck.flag("4c", m, f"reduct model {where} has a Y atom but lacks w")
            if any(not body & ~m for body in clause_bodies) and not m & v:
                ck.flag("4d", m, f"reduct model {where} falsifies a clause but lacks v")
            clash = any(m & a and m & c for a, c in x_pairs + y_pairs) or (m & v and m & w)
            if clash and saturated & ~m:
                ck.flag("4e", m, f"reduct model {where} is inconsistent but not saturated")
    return ck.report()
