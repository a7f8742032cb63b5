"""Deciding super-coherence and uniform equivalence with projection.

A program is super-coherent when ``P ∪ F`` has an answer set for every set of
facts ``F``. Only ``F ⊆ At(P)`` needs checking: facts over other atoms are
split off and simply join an answer set.

The check below avoids solving ``P ∪ F`` from scratch for each ``F``. An
answer set of ``P ∪ F`` is a model ``M`` of ``P`` with ``F ⊆ M`` such that no
model ``N ⊊ M`` of the reduct ``P^M`` contains ``F``. So per model ``M`` it is
enough to know the maximal such ``N`` ("countermodels"); each ``F`` is then a
cheap containment test.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ._parallel import run_chunks, split_range
from .semantics import (
    DEFAULT_MAX_ATOMS,
    Interpretation,
    Masks,
    canonical_key,
    compact,
    expand,
    forced_core,
    guard,
    is_minimal,
    is_model,
    is_positive_model,
    reduct_masks,
    _models_in_range,
)
from .syntax import AtomTable, Program, iter_bits

DEFAULT_SC_MAX_ATOMS = 16


def canonical_subsets(k: int) -> list[int]:
    """All subsets of ``k`` bits ordered by (cardinality, numeric value)."""
    return sorted(range(1 << k), key=canonical_key)


@dataclass(frozen=True)
class ScVerdict:
    holds: bool
    witness: Interpretation | None
    facts_checked: int
    atoms: AtomTable

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {
            "super_coherent": self.holds,
            "witness": None if self.witness is None else self.witness.names(self.atoms),
            "facts_checked": self.facts_checked,
        }


def exists_coherent_extension(p: Program, max_atoms: int | None = None) -> bool:
    """Whether some ``P ∪ F`` is coherent, i.e. whether ``P`` has a classical model."""
    positions, masks = compact(p)
    guard(len(positions), max_atoms, DEFAULT_MAX_ATOMS)
    return any(is_model(masks, i) for i in range(1 << len(positions)))


def maximal_countermodels(masks: Masks, m: int) -> list[int]:
    """Maximal proper subsets of model ``m`` that are models of the reduct ``P^m``."""
    red = reduct_masks(masks, m)
    core = forced_core(red, m)
    free = m & ~core
    found: list[int] = []
    if not free:
        return found
    # Descending numeric order visits every superset before its subsets.
    sub = (free - 1) & free
    while True:
        n = core | sub
        if all(n & ~c for c in found) and is_positive_model(red, n):
            found.append(n)
        if not sub:
            return found
        sub = (sub - 1) & free


def _countermodels_for(masks: Masks, ms: Sequence[int]) -> list[list[int]]:
    return [maximal_countermodels(masks, m) for m in ms]


def _first_uncovered(table: Sequence[tuple[int, list[int]]], facts: Sequence[int]) -> int | None:
    for idx, f in enumerate(facts):
        for m, counters in table:
            if f & ~m:
                continue
            if all(f & ~c for c in counters):
                break
        else:
            return idx
    return None


def _chunked(seq: Sequence, workers: int) -> list[Sequence]:
    return [seq[lo:hi] for lo, hi in split_range(len(seq), workers)] or [seq]


def is_super_coherent(p: Program, max_atoms: int | None = None, workers: int = 1) -> ScVerdict:
    """Decide super-coherence by checking every ``F ⊆ At(p)``.

    On failure the witness is the first incoherent fact set in (cardinality,
    numeric value) order and ``facts_checked`` is its 1-based position in that
    order; on success every one of the ``2^|At(p)|`` sets was checked.
    """
    positions, masks = compact(p)
    k = len(positions)
    guard(k, max_atoms, DEFAULT_SC_MAX_ATOMS, "super-coherence check")
    chunks = [(masks, lo, hi) for lo, hi in split_range(1 << k, workers)]
    ms = sorted(m for part in run_chunks(_models_in_range, chunks, workers) for m in part)
    parts = run_chunks(_countermodels_for, [(masks, c) for c in _chunked(ms, workers)], workers)
    table = list(zip(ms, (c for part in parts for c in part)))

    facts = canonical_subsets(k)
    pieces = split_range(len(facts), workers)
    hits = run_chunks(_first_uncovered, [(table, facts[lo:hi]) for lo, hi in pieces], workers)
    for (lo, _), hit in zip(pieces, hits):
        if hit is not None:
            idx = lo + hit
            witness = Interpretation(expand(facts[idx], positions), len(p.atoms))
            return ScVerdict(False, witness, idx + 1, p.atoms)
    return ScVerdict(True, None, len(facts), p.atoms)


# -- uniform equivalence with projection ---------------------------------------

@dataclass(frozen=True)
class EquivVerdict:
    holds: bool
    witness: Interpretation | None
    lhs_projection: frozenset[frozenset[str]] | None
    rhs_projection: frozenset[frozenset[str]] | None
    atoms: AtomTable
    context: tuple[str, ...]
    projection: tuple[str, ...]
    facts_checked: int

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        def family(fam):
            if fam is None:
                return None
            return sorted((sorted(s) for s in fam), key=lambda s: (len(s), s))

        return {
            "equivalent": self.holds,
            "witness": None if self.witness is None else self.witness.names(self.atoms),
            "lhs_projection": family(self.lhs_projection),
            "rhs_projection": family(self.rhs_projection),
            "context": list(self.context),
            "projection": list(self.projection),
            "facts_checked": self.facts_checked,
        }


def stable_supersets(masks: Masks, universe: int, facts: int) -> list[int]:
    """Answer sets of ``P ∪ F`` (``F`` given as ``facts``) among subsets of ``universe``."""
    fact_rules = [(1 << a, 0, 0) for a in iter_bits(facts)]
    full = list(masks) + fact_rules
    free = universe & ~facts
    found = []
    sub = free
    while True:
        m = facts | sub
        if is_model(full, m) and is_minimal(reduct_masks(full, m), m):
            found.append(m)
        if not sub:
            return found
        sub = (sub - 1) & free


def _projected(masks: Masks, universe: int, facts: int, proj: int) -> frozenset[int]:
    return frozenset(m & proj for m in stable_supersets(masks, universe, facts))


def _first_difference(lhs: Masks, rhs: Masks, universe: int, proj: int, facts: Sequence[int]):
    for idx, f in enumerate(facts):
        a = _projected(lhs, universe, f, proj)
        b = _projected(rhs, universe, f, proj)
        if a != b:
            return idx, a, b
    return None


def _scatter(bits: int, ids: Sequence[int]) -> int:
    out = 0
    for k in iter_bits(bits):
        out |= 1 << ids[k]
    return out


def projected_uniform_equiv(
    p: Program,
    q: Program,
    context: Iterable[str],
    projection: Iterable[str],
    max_atoms: int | None = None,
    workers: int = 1,
) -> EquivVerdict:
    """Check ``{I∩B | I ∈ AS(p∪F)} = {I∩B | I ∈ AS(q∪F)}`` for every ``F ⊆ A``.

    ``A`` is ``context`` and ``B`` is ``projection``; both may name atoms that
    occur in neither program.
    """
    context = tuple(dict.fromkeys(context))
    projection = tuple(dict.fromkeys(projection))
    table = p.atoms.extend(q.atoms).extend(context).extend(projection)
    pp, qq = p.over(table), q.over(table)
    guard(len(context), max_atoms, DEFAULT_SC_MAX_ATOMS, "uniform equivalence check")
    universe = pp.atom_mask | qq.atom_mask | table.mask(context)
    guard(universe.bit_count(), max_atoms, DEFAULT_MAX_ATOMS)

    ctx_ids = [table.id(a) for a in context]
    facts = [_scatter(f, ctx_ids) for f in canonical_subsets(len(ctx_ids))]
    proj = table.mask(projection)
    pieces = split_range(len(facts), workers)
    args = [(pp.masks, qq.masks, universe, proj, facts[lo:hi]) for lo, hi in pieces]
    hits = run_chunks(_first_difference, args, workers)
    for (lo, _), hit in zip(pieces, hits):
        if hit is not None:
            idx, a, b = hit

            def names(fam):
                return frozenset(frozenset(table.names_of(s)) for s in fam)

            return EquivVerdict(
                False, Interpretation(facts[lo + idx], len(table)), names(a), names(b),
                table, context, projection, lo + idx + 1,
            )
    return EquivVerdict(True, None, None, None, table, context, projection, len(facts))

