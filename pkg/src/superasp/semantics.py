"""Models, Gelfond-Lifschitz reducts and exhaustive answer-set enumeration.

Everything here is brute force on purpose: these routines serve as the
reference semantics that the transforms and decision procedures are checked
against. Interpretations are bit vectors over atom ids.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ._parallel import run_chunks, split_range
from .errors import GuardExceeded, UniverseMismatch
from .syntax import AtomTable, Program, Rule, iter_bits

DEFAULT_MAX_ATOMS = 24

Masks = Sequence[tuple[int, int, int]]


@dataclass(frozen=True)
class Interpretation:
    """Set of true atoms as a bit vector of width ``universe_size``."""

    bits: int
    universe_size: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.universe_size:
            raise ValueError("interpretation has bits outside its universe")

    @classmethod
    def from_names(cls, table: AtomTable, names: Iterable[str]) -> Interpretation:
        return cls(table.mask(names), len(table))

    def __contains__(self, atom_id: int) -> bool:
        return bool(self.bits >> atom_id & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self):
        return iter_bits(self.bits)

    def names(self, table: AtomTable) -> list[str]:
        return table.names_of(self.bits)

    def format(self, table: AtomTable) -> str:
        return "{" + ", ".join(self.names(table)) + "}"


def canonical_key(bits: int) -> tuple[int, int]:
    """Sort key for the (cardinality, numeric value) order of interpretations."""
    return bits.bit_count(), bits


def _check_universe(i: Interpretation, p: Program):
    if i.universe_size < len(p.atoms):
        raise UniverseMismatch(
            f"interpretation over {i.universe_size} atoms cannot evaluate a program "
            f"over {len(p.atoms)} atoms"
        )


# -- bit-level kernels --------------------------------------------------------

def is_model(masks: Masks, i: int) -> bool:
    for h, pos, neg in masks:
        if not (pos & ~i or neg & i or h & i):
            return False
    return True


def reduct_masks(masks: Masks, m: int) -> list[tuple[int, int]]:
    """``(head, pos)`` masks of the rules kept in the reduct w.r.t. ``m``."""
    return [(h, pos) for h, pos, neg in masks if not neg & m]


def is_positive_model(red: Sequence[tuple[int, int]], i: int) -> bool:
    for h, pos in red:
        if not (pos & ~i or h & i):
            return False
    return True


def forced_core(red: Sequence[tuple[int, int]], m: int) -> int:
    """Atoms contained in every model ``N ⊆ m`` of the positive program ``red``.

    A rule whose body holds in ``N`` and whose head meets ``m`` in a single atom
    forces that atom into ``N``; iterate to a fixpoint.
    """
    core = 0
    changed = True
    while changed:
        changed = False
        for h, pos in red:
            if pos & ~core:
                continue
            hm = h & m
            if hm and not hm & (hm - 1) and not hm & core:
                core |= hm
                changed = True
    return core


def is_minimal(red: Sequence[tuple[int, int]], m: int) -> bool:
    """True iff no proper subset of ``m`` is a model of ``red`` (``m`` is one)."""
    core = forced_core(red, m)
    free = m & ~core
    if not free:
        return True
    sub = (free - 1) & free
    while True:
        if is_positive_model(red, core | sub):
            return False
        if not sub:
            return True
        sub = (sub - 1) & free


def is_stable(masks: Masks, m: int) -> bool:
    return is_model(masks, m) and is_minimal(reduct_masks(masks, m), m)


def compact(p: Program) -> tuple[list[int], list[tuple[int, int, int]]]:
    """Renumber the atoms occurring in ``p`` densely, preserving their order.

    Returns the original atom id of each compact position and the rule masks
    over compact positions.
    """
    positions = list(iter_bits(p.atom_mask))
    where = {a: k for k, a in enumerate(positions)}

    def squeeze(bits: int) -> int:
        out = 0
        for a in iter_bits(bits):
            out |= 1 << where[a]
        return out

    masks = [(squeeze(h), squeeze(pos), squeeze(neg)) for h, pos, neg in p.masks]
    return positions, masks


def expand(bits: int, positions: Sequence[int]) -> int:
    out = 0
    for k in iter_bits(bits):
        out |= 1 << positions[k]
    return out


def _stable_in_range(masks: Masks, lo: int, hi: int) -> list[int]:
    found = []
    for m in range(lo, hi):
        if is_model(masks, m) and is_minimal(reduct_masks(masks, m), m):
            found.append(m)
    return found


def _models_in_range(masks: Masks, lo: int, hi: int) -> list[int]:
    return [i for i in range(lo, hi) if is_model(masks, i)]


def guard(size: int, limit: int | None, default: int, what: str = "enumeration"):
    limit = default if limit is None else limit
    if size > limit:
        raise GuardExceeded(size, limit, what)


# -- public operations ----------------------------------------------------------

def satisfies(i: Interpretation, p: Program) -> bool:
    _check_universe(i, p)
    return is_model(p.masks, i.bits)


def reduct(p: Program, i: Interpretation) -> Program:
    """The reduct ``P^I``: drop rules blocked by ``I``, strip negation from the rest."""
    _check_universe(i, p)
    kept = tuple(Rule(r.head, r.pos) for r in p.rules if not (r.neg and any(a in i for a in r.neg)))
    return Program(p.atoms, kept)


def is_answer_set(p: Program, m: Interpretation) -> bool:
    _check_universe(m, p)
    return is_stable(p.masks, m.bits)


@dataclass(frozen=True)
class AnswerSetReport:
    answer_sets: tuple[Interpretation, ...]
    universe: AtomTable
    enumerated: int

    def __len__(self) -> int:
        return len(self.answer_sets)

    def __bool__(self) -> bool:
        return bool(self.answer_sets)

    def name_sets(self) -> list[list[str]]:
        return [i.names(self.universe) for i in self.answer_sets]

    def frozensets(self) -> set[frozenset[str]]:
        return {frozenset(s) for s in self.name_sets()}

    def to_json(self) -> dict:
        return {"answer_sets": self.name_sets(), "enumerated": self.enumerated}


def answer_sets(p: Program, max_atoms: int | None = None, workers: int = 1) -> AnswerSetReport:
    """All answer sets of ``p`` by enumerating every interpretation of ``At(p)``.

    Raises GuardExceeded when ``|At(p)|`` exceeds ``max_atoms`` (default 24).
    Results are sorted by (cardinality, numeric value) and do not depend on
    ``workers``.
    """
    positions, masks = compact(p)
    k = len(positions)
    guard(k, max_atoms, DEFAULT_MAX_ATOMS)
    total = 1 << k
    chunks = [(masks, lo, hi) for lo, hi in split_range(total, workers)]
    found = [m for part in run_chunks(_stable_in_range, chunks, workers) for m in part]
    bits = sorted((expand(m, positions) for m in found), key=canonical_key)
    n = len(p.atoms)
    return AnswerSetReport(tuple(Interpretation(b, n) for b in bits), p.atoms, total)


def models(p: Program, max_atoms: int | None = None, workers: int = 1) -> list[Interpretation]:
    """Classical models of ``p`` over ``At(p)``, in canonical order."""
    positions, masks = compact(p)
    k = len(positions)
    guard(k, max_atoms, DEFAULT_MAX_ATOMS)
    chunks = [(masks, lo, hi) for lo, hi in split_range(1 << k, workers)]
    found = [m for part in run_chunks(_models_in_range, chunks, workers) for m in part]
    n = len(p.atoms)
    return [Interpretation(expand(m, positions), n) for m in sorted(found, key=canonical_key)]


def query(p: Program, q: str, mode: str, max_atoms: int | None = None, workers: int = 1) -> bool:
    """Brave or cautious truth of atom ``q``; cautious is vacuously true if incoherent."""
    if mode not in ("brave", "cautious"):
        raise ValueError(f"unknown query mode {mode!r}")
    report = answer_sets(p, max_atoms, workers)
    if q not in p.atoms:
        return mode == "cautious" and not report.answer_sets
    qid = p.atoms.id(q)
    if mode == "brave":
        return any(qid in m for m in report.answer_sets)
    return all(qid in m for m in report.answer_sets)
