"""Atom dependency graphs and recognition of syntactic program classes."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import networkx as nx

from .syntax import AtomTable, Program, eliminate_constraints, iter_bits


@dataclass(frozen=True)
class DependencyGraph:
    """Head atoms depend positively/negatively on their body atoms.

    Built on the constraint-eliminated program, so ``atoms`` may contain
    ``_co<k>`` atoms that the input program did not.
    """

    atoms: AtomTable
    nodes: frozenset[int]
    pos_edges: frozenset[tuple[int, int]]
    neg_edges: frozenset[tuple[int, int]]

    def named(self, edges) -> set[tuple[str, str]]:
        names = self.atoms.names
        return {(names[a], names[b]) for a, b in edges}

    def digraph(self, positive_only: bool = False) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from(self.pos_edges)
        if not positive_only:
            g.add_edges_from(self.neg_edges)
        return g


def dependency_graph(p: Program) -> DependencyGraph:
    p = eliminate_constraints(p)
    pos_edges, neg_edges = set(), set()
    for rule in p.rules:
        for h in rule.head:
            pos_edges.update((h, b) for b in rule.pos)
            neg_edges.update((h, b) for b in rule.neg)
    return DependencyGraph(
        p.atoms, frozenset(iter_bits(p.atom_mask)), frozenset(pos_edges), frozenset(neg_edges)
    )


@dataclass(frozen=True)
class ClassReport:
    is_normal: bool
    is_positive: bool
    is_stratified: bool
    is_odd_cycle_free: bool
    is_head_cycle_free: bool
    is_definite_horn: bool

    def to_json(self) -> dict:
        return asdict(self)


def _component_index(g: nx.DiGraph) -> dict[int, int]:
    index = {}
    for k, comp in enumerate(nx.strongly_connected_components(g)):
        for node in comp:
            index[node] = k
    return index


def _odd_cycle_free(dg: DependencyGraph, comp: dict[int, int]) -> bool:
    # Inside one SCC a closed walk with an odd number of negative edges exists
    # iff no node labelling satisfies label(v) = label(u) xor neg(u, v).
    adjacent: dict[int, list[tuple[int, int]]] = {}
    for edges, parity in ((dg.pos_edges, 0), (dg.neg_edges, 1)):
        for u, v in edges:
            if comp[u] == comp[v]:
                adjacent.setdefault(u, []).append((v, parity))
                adjacent.setdefault(v, []).append((u, parity))
    label: dict[int, int] = {}
    for start in adjacent:
        if start in label:
            continue
        label[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for v, parity in adjacent[u]:
                want = label[u] ^ parity
                if v not in label:
                    label[v] = want
                    stack.append(v)
                elif label[v] != want:
                    return False
    return True


def classify(p: Program) -> ClassReport:
    normal = all(len(r.head) <= 1 for r in p.rules)
    positive = all(not r.neg for r in p.rules)
    definite = normal and positive and all(len(r.head) == 1 for r in p.rules)

    dg = dependency_graph(p)
    comp = _component_index(dg.digraph())
    stratified = all(comp[u] != comp[v] for u, v in dg.neg_edges)
    odd_free = stratified or _odd_cycle_free(dg, comp)

    pos_comp = _component_index(dg.digraph(positive_only=True))
    hcf = True
    for rule in p.rules:
        seen = set()
        for h in rule.head:
            if h in pos_comp:
                if pos_comp[h] in seen:
                    hcf = False
                seen.add(pos_comp[h])
    return ClassReport(normal, positive, stratified, odd_free, hcf, definite)
