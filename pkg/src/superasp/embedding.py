"""Embedding arbitrary programs into super-coherent ones.

``strat(P)`` replaces every negative literal ``not a`` by a fresh atom
``_f_a`` and adds, per atom ``a``, a guess ``_t_a | _f_a.``, the link
``_t_a :- a.`` and the check ``_fail :- _t_a, not a.``. The result is
stratified, hence super-coherent, and its answer sets without ``_fail``
project onto the answer sets of ``P``. Coherence, brave and cautious
queries over ``P`` become queries over the embedded program.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable

from .analysis import classify
from .errors import ConstraintPresent, NotNormal, UnknownAtom
from .semantics import answer_sets
from .syntax import ATOM_RE, Program, atoms_of, eliminate_constraints, fresh_name, render_program

FAIL = "_fail"
QUERY_PRIME = "_q_prime"


class NotHeadCycleFreeWarning(UserWarning):
    """Shifting a program with head cycles may change its answer sets."""


@dataclass(frozen=True)
class EmbeddingArtifact:
    program: Program
    original_universe: frozenset[str]
    fail_atom: str | None
    query_atom: str | None = None
    transform: str = "strat"
    warnings: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "program": render_program(self.program),
            "universe": sorted(self.original_universe),
            "fail_atom": self.fail_atom,
            "query_atom": self.query_atom,
            "transform": self.transform,
            "warnings": list(self.warnings),
        }


def _prepare(p: Program, universe: Iterable[str] | None, eliminate: bool):
    extra = list(universe or ())
    for name in extra:
        if not ATOM_RE.match(name):
            raise ValueError(f"invalid atom name {name!r}")
    notes = []
    original = atoms_of(p) | frozenset(extra)
    if p.has_constraints:
        if not eliminate:
            raise ConstraintPresent("program has constraints; eliminate them first")
        p = eliminate_constraints(p)
        notes.append("constraints were rewritten into rules over fresh _co atoms")
    return p, original, sorted(atoms_of(p) | frozenset(extra)), notes


def _strat(p: Program, universe: list[str], disjunctive_guess: bool):
    taken = set(p.atoms.names) | set(universe)

    def mint(base: str) -> str:
        name = fresh_name(base, taken)
        taken.add(name)
        return name

    true_of = {a: mint(f"_t_{a}") for a in universe}
    false_of = {a: mint(f"_f_{a}") for a in universe}
    fail = mint(FAIL)

    rules = []
    for head, pos, neg in p.named_rules():
        rules.append((sorted(head), sorted(pos) + [false_of[a] for a in sorted(neg)], ()))
    for a in universe:
        t, f = true_of[a], false_of[a]
        if disjunctive_guess:
            rules.append(((t, f), (), ()))
        else:
            rules += [((t,), (), (f,)), ((f,), (), (t,))]
        rules.append(((t,), (a,), ()))
        rules.append(((fail,), (t,), (a,)))
    return Program.from_names(rules, p.atoms.names), fail


def strat_transform(
    p: Program, universe: Iterable[str] | None = None, eliminate: bool = True
) -> EmbeddingArtifact:
    """Stratified, super-coherent program whose fail-free answer sets recover ``AS(p)``.

    ``universe`` adds atoms beyond ``At(p)`` to the guessed set. Constraints are
    eliminated first unless ``eliminate`` is false, in which case they raise
    ConstraintPresent.
    """
    p, original, universe, notes = _prepare(p, universe, eliminate)
    program, fail = _strat(p, universe, disjunctive_guess=True)
    return EmbeddingArtifact(program, original, fail, None, "strat", tuple(notes))


def shift_transform(p: Program) -> Program:
    """Split each disjunctive rule into one rule per head atom.

    The other head atoms move to the negative body. Answer sets are preserved
    under any added facts only for head-cycle-free input; otherwise a
    NotHeadCycleFreeWarning is issued.
    """
    if not classify(p).is_head_cycle_free:
        warnings.warn("program is not head-cycle-free", NotHeadCycleFreeWarning, stacklevel=2)
    rules = []
    for head, pos, neg in p.named_rules():
        if not head:
            rules.append(((), pos, neg))
            continue
        for a in sorted(head):
            rules.append(((a,), sorted(pos), sorted(neg | (head - {a}))))
    return Program.from_names(rules, p.atoms)


def shift_embedding(p: Program) -> EmbeddingArtifact:
    """:func:`shift_transform` packaged with its head-cycle warning."""
    notes = () if classify(p).is_head_cycle_free else ("program is not head-cycle-free",)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotHeadCycleFreeWarning)
        shifted = shift_transform(p)
    return EmbeddingArtifact(shifted, atoms_of(p), None, None, "shift", notes)


def strat_shift(
    p: Program, universe: Iterable[str] | None = None, eliminate: bool = True
) -> EmbeddingArtifact:
    """Normal super-coherent counterpart of a normal program.

    Same as shifting :func:`strat_transform`'s output: each guess
    ``_t_a | _f_a.`` becomes ``_t_a :- not _f_a.`` and ``_f_a :- not _t_a.``
    """
    if any(len(r.head) > 1 for r in p.rules):
        raise NotNormal("strat_shift needs a normal program")
    p, original, universe, notes = _prepare(p, universe, eliminate)
    program, fail = _strat(p, universe, disjunctive_guess=False)
    return EmbeddingArtifact(program, original, fail, None, "strat_shift", tuple(notes))


def recover_answer_sets(
    art: EmbeddingArtifact, max_atoms: int | None = None, workers: int = 1
) -> set[frozenset[str]]:
    """Answer sets without the fail atom, projected back to the original universe."""
    report = answer_sets(art.program, max_atoms, workers)
    out = set()
    for names in report.name_sets():
        if art.fail_atom in names:
            continue
        out.add(frozenset(a for a in names if a in art.original_universe))
    return out


def embed_coherence(p: Program, universe: Iterable[str] | None = None) -> EmbeddingArtifact:
    """``AS(p)`` is empty iff the fail atom is a cautious consequence of the result."""
    return strat_transform(p, universe)


def _embed_query(p, q, universe, rules_for) -> EmbeddingArtifact:
    art = strat_transform(p, universe)
    if q not in art.original_universe:
        raise UnknownAtom(q)
    q_prime = fresh_name(QUERY_PRIME, set(art.program.atoms.names))
    program = art.program.with_rules(rules_for(q_prime, art.fail_atom))
    return EmbeddingArtifact(
        program, art.original_universe, art.fail_atom, q_prime, art.transform, art.warnings
    )


def embed_brave_query(p: Program, q: str, universe: Iterable[str] | None = None) -> EmbeddingArtifact:
    """``q`` is brave for ``p`` iff the query atom is brave for the result."""
    return _embed_query(p, q, universe, lambda qp, fail: [((qp,), (q,), (fail,))])


def embed_cautious_query(
    p: Program, q: str, universe: Iterable[str] | None = None
) -> EmbeddingArtifact:
    """``q`` is cautious for ``p`` iff the query atom is cautious for the result."""
    return _embed_query(p, q, universe, lambda qp, fail: [((qp,), (q,), ()), ((qp,), (fail,), ())])
