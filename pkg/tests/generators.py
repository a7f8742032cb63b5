"""Random and exhaustive instance families shared by the test modules."""
from __future__ import annotations

import itertools
import random

from hypothesis import strategies as st

from superasp.qbf import Qbf2, Qbf3
from superasp.syntax import Program

ATOMS = ("a", "b", "c", "d", "e", "f")


def random_program(
    rng: random.Random,
    n_atoms: int = 4,
    max_rules: int = 6,
    max_head: int = 2,
    constraints: bool = False,
    negation: bool = True,
) -> Program:
    atoms = ATOMS[:n_atoms]
    rules = []
    for _ in range(rng.randint(1, max_rules)):
        lo = 0 if constraints else 1
        head = rng.sample(atoms, rng.randint(lo, max_head))
        rest = [a for a in atoms]
        pos = rng.sample(rest, rng.randint(0, min(2, len(rest))))
        neg = []
        if negation:
            left = [a for a in rest if a not in pos]
            neg = rng.sample(left, rng.randint(0, min(2, len(left))))
        if not head and not pos and not neg:
            pos = [atoms[0]]
        rules.append((head, pos, neg))
    return Program.from_names(rules)


def program_sample(seed: int, count: int, **kw) -> list[Program]:
    rng = random.Random(seed)
    return [random_program(rng, **kw) for _ in range(count)]


@st.composite
def programs(draw, n_atoms: int = 4, max_rules: int = 5, max_head: int = 2,
             constraints: bool = True, negation: bool = True) -> Program:
    atoms = list(ATOMS[:n_atoms])
    subset = st.lists(st.sampled_from(atoms), unique=True, max_size=2)
    rules = []
    for _ in range(draw(st.integers(0, max_rules))):
        head = draw(st.lists(st.sampled_from(atoms), unique=True,
                             min_size=0 if constraints else 1, max_size=max_head))
        pos = draw(subset)
        neg = draw(subset) if negation else []
        rules.append((head, pos, neg))
    return Program.from_names(rules)


# -- QBF families ---------------------------------------------------------------

def width3_terms() -> list[tuple]:
    """The 8 terms with one literal of each of x, y, z."""
    return [
        (("x", sx), ("y", sy), ("z", sz))
        for sx, sy, sz in itertools.product((True, False), repeat=3)
    ]


def qbf3_family(max_terms: int = 3) -> list[Qbf3]:
    """Every ∀x∃y∀z DNF with 1..max_terms distinct width-3 terms."""
    terms = width3_terms()
    return [
        Qbf3(("x",), ("y",), ("z",), combo)
        for k in range(1, max_terms + 1)
        for combo in itertools.combinations(terms, k)
    ]


def qbf2_exhaustive_11() -> list[Qbf2]:
    """Every ∀x∃y CNF built from the 4 clauses mixing one x- and one y-literal."""
    clauses = [(("x", a), ("y", b)) for a, b in itertools.product((True, False), repeat=2)]
    return [
        Qbf2(("x",), ("y",), combo)
        for k in range(1, len(clauses) + 1)
        for combo in itertools.combinations(clauses, k)
    ]


def random_qbf2(rng: random.Random, nx: int, ny: int) -> Qbf2:
    xs = [f"x{i}" for i in range(1, nx + 1)]
    ys = [f"y{i}" for i in range(1, ny + 1)]
    clauses = []
    for _ in range(rng.randint(1, 4)):
        chosen = [rng.choice(xs), rng.choice(ys)]
        others = [v for v in xs + ys if v not in chosen]
        chosen += rng.sample(others, rng.randint(0, min(1, len(others))))
        clauses.append([(v, rng.random() < 0.5) for v in chosen])
    return Qbf2(xs, ys, clauses)


def random_qbf3(rng: random.Random, nx: int, ny: int, nz: int) -> Qbf3:
    xs = [f"x{i}" for i in range(1, nx + 1)]
    ys = [f"y{i}" for i in range(1, ny + 1)]
    zs = [f"z{i}" for i in range(1, nz + 1)]
    terms = []
    for _ in range(rng.randint(1, 5)):
        chosen = [rng.choice(xs), rng.choice(ys), rng.choice(zs)]
        terms.append([(v, rng.random() < 0.5) for v in chosen])
    return Qbf3(xs, ys, zs, terms)
