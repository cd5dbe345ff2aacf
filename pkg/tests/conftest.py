import random

import pytest

from unionpower import demo_graph, validate
from unionpower.graph import UnionGraph


def graph_1based(nodes, unions, edges, labels=None):
    """Build a graph from 1-based ids, the way the drawings are written."""
    lbl = {int(k) - 1: v for k, v in labels.items()} if labels else None
    return validate(
        nodes,
        [[v - 1 for v in block] for block in unions],
        [(i - 1, j - 1) for i, j in edges],
        lbl,
    )


def random_union_graph(
    rng: random.Random,
    n_lo: int = 4,
    n_hi: int = 10,
    r_choices=(2, 3),
    edge_prob=None,
) -> UnionGraph:
    """Seeded random graph: surjective union assignment, Bernoulli edges."""
    n = rng.randint(n_lo, n_hi)
    r = rng.choice([r for r in r_choices if r <= n])
    assignment = list(range(r)) + [rng.randrange(r) for _ in range(n - r)]
    rng.shuffle(assignment)
    blocks = [[] for _ in range(r)]
    for v, b in enumerate(assignment):
        blocks[b].append(v)
    p = edge_prob if edge_prob is not None else rng.uniform(0.2, 0.7)
    edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
    ]
    return validate(n, blocks, edges)


@pytest.fixture(scope="session")
def example1():
    return demo_graph("example1")


@pytest.fixture(scope="session")
def figure2a():
    return demo_graph("figure2a")


@pytest.fixture(scope="session")
def figure2b():
    return demo_graph("figure2b")


@pytest.fixture(scope="session")
def figure3():
    return demo_graph("figure3")
