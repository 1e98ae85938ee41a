"""Shared fixtures: graph builders and independent brute-force oracles."""

from __future__ import annotations

from collections import Counter, defaultdict

import numpy as np
import pytest

from cumuldyn.core import InventionNode, KnowledgeGraph


def make_graph(
    n_nodes: int,
    edges: list[tuple[int, int]],
    external: list[int] | None = None,
    years: list[int | None] | None = None,
) -> KnowledgeGraph:
    """Build a graph directly from ordinals, for fixtures."""
    nodes = tuple(
        InventionNode(
            node_id=f"n{i}",
            ordinal=i,
            year=None if years is None else years[i],
        )
        for i in range(n_nodes)
    )
    return KnowledgeGraph(
        nodes=nodes,
        internal_edges=tuple(edges),
        external_backlink_counts=tuple(external or [0] * n_nodes),
    )


def brute_force_path_counts(graph: KnowledgeGraph, n: int) -> dict[int, int]:
    """Enumerate every path over the first n nodes by forward DFS.

    Deliberately independent of the production dynamic program: walks every
    chain explicitly from every node without backward links.
    """
    forward: dict[int, list[int]] = defaultdict(list)
    has_backlink = [False] * n
    for citing, cited in graph.internal_edges:
        if citing < n:
            forward[cited].append(citing)
            has_backlink[citing] = True
    counts: Counter[int] = Counter()

    def walk(node: int, length: int) -> None:
        counts[length] += 1
        for nxt in forward[node]:
            walk(nxt, length + 1)

    for start in range(n):
        if not has_backlink[start]:
            walk(start, 0)
    return dict(counts)


def random_dag(rng: np.random.Generator, n_max: int = 12, density: float = 0.5) -> KnowledgeGraph:
    """Random backward-edge DAG with n <= n_max and edge density <= `density`."""
    n = int(rng.integers(1, n_max + 1))
    d = float(rng.uniform(0.0, density))
    edges = [
        (i, j) for i in range(n) for j in range(i) if rng.random() < d
    ]
    return make_graph(n, edges)


@pytest.fixture
def example_graph() -> KnowledgeGraph:
    """Four nodes a,b,c,d with c->a, d->a, d->c: the worked example graph."""
    return make_graph(4, [(2, 0), (3, 0), (3, 2)])
