"""Built-in example graphs.

The demo registry holds the six graphs the CLI can emit; the extended set
adds the small constructions used by the axiom checker's default universe.
All definitions use the 1-based file format so they read like the drawings
they come from.
"""

from __future__ import annotations

from .errors import UnknownFixture
from .graph import UnionGraph, from_file_dict

_TECH_MARKET = {
    "nodes": 10,
    "unions": [[1, 2, 3], [4, 5, 6], [7, 8, 9, 10]],
    "edges": [
        [1, 2], [1, 4], [1, 5], [1, 6], [1, 7],
        [2, 4], [3, 4], [3, 10], [4, 7], [5, 8],
        [6, 9], [6, 10], [4, 5], [5, 6],
    ],
    "labels": {
        "1": "Toyota", "2": "Ford", "3": "BMW",
        "4": "NVIDIA", "5": "Intel", "6": "Waymo",
        "7": "Verizon", "8": "AT&T", "9": "Ericsson", "10": "Huawei",
    },
}

_TWO_SECTOR_BRIDGE = {
    "nodes": 6,
    "unions": [[1, 2, 3], [4, 5, 6]],
    "edges": [[1, 2], [1, 3], [1, 4], [4, 5], [5, 6]],
}

_TWO_SECTOR_BRIDGE_EXTENDED = {
    "nodes": 6,
    "unions": [[1, 2, 3], [4, 5, 6]],
    "edges": [[1, 2], [1, 3], [1, 4], [4, 5], [5, 6], [1, 6]],
}

_RESTRICTED_SPILLOVER = {
    "nodes": 12,
    "unions": [[1], [2, 3], [4, 5, 6, 7], [8, 9], [10, 11, 12]],
    "edges": [[1, 4], [2, 5], [2, 7], [3, 9], [6, 10], [6, 12], [8, 11]],
}

_HUB_STAR = {
    "nodes": 8,
    "unions": [[1, 2, 3, 8], [4, 5, 6, 7]],
    "edges": [[1, 2], [1, 3], [1, 4], [1, 5], [1, 6]],
}

_HUB_STAR_EXTERNAL_ONLY = {
    "nodes": 8,
    "unions": [[1, 2, 3, 8], [4, 5, 6, 7]],
    "edges": [[1, 4], [1, 5], [1, 6]],
}

DEMO_DOCS = {
    "example1": _TECH_MARKET,
    "figure2a": _TWO_SECTOR_BRIDGE,
    "figure2b": _TWO_SECTOR_BRIDGE_EXTENDED,
    "figure3": _RESTRICTED_SPILLOVER,
    "unanimity4a": _HUB_STAR,
    "local-unanimity4b": _HUB_STAR_EXTERNAL_ONLY,
}


def demo_names() -> tuple[str, ...]:
    return tuple(DEMO_DOCS)


def demo_graph(name: str) -> UnionGraph:
    try:
        doc = DEMO_DOCS[name]
    except KeyError:
        raise UnknownFixture(
            f"unknown fixture {name!r}; choose from {', '.join(DEMO_DOCS)}"
        ) from None
    return from_file_dict(doc)


def demo_doc(name: str) -> dict:
    if name not in DEMO_DOCS:
        raise UnknownFixture(
            f"unknown fixture {name!r}; choose from {', '.join(DEMO_DOCS)}"
        )
    return dict(DEMO_DOCS[name])


# Small constructions from the axiom independence arguments and the
# characterization walk-through; they extend the checker's universe with
# partitions of three or more blocks so merge-based checks have bite.

_AXIOM_DOCS = [
    # four nodes on a path, middle pair split across three unions
    {
        "nodes": 4,
        "unions": [[1], [2, 4], [3]],
        "edges": [[1, 2], [2, 3], [3, 4]],
    },
    # one hub with two external contacts, hub alone in its union
    {
        "nodes": 3,
        "unions": [[1], [2, 3]],
        "edges": [[1, 2], [1, 3]],
    },
    # seven-node two-sector graphs of increasing density
    {
        "nodes": 7,
        "unions": [[1, 2, 3], [4, 5, 6, 7]],
        "edges": [[2, 3], [1, 4], [6, 7], [5, 6]],
    },
    {
        "nodes": 7,
        "unions": [[1, 2, 3], [4, 5, 6, 7]],
        "edges": [[1, 4], [1, 5], [2, 3]],
    },
    {
        "nodes": 7,
        "unions": [[1, 2, 3], [4, 5, 6, 7]],
        "edges": [[2, 3], [1, 4], [1, 2], [1, 5]],
    },
    {
        "nodes": 7,
        "unions": [[1, 2, 3], [4, 5, 6, 7]],
        "edges": [[2, 3], [1, 4], [1, 2], [1, 3], [1, 5]],
    },
    {
        "nodes": 7,
        "unions": [[1, 2, 3], [4, 5, 6, 7]],
        "edges": [
            [2, 3], [1, 4], [1, 2], [1, 3], [1, 5],
            [4, 7], [4, 6], [5, 7], [6, 7], [5, 6],
        ],
    },
    {
        "nodes": 7,
        "unions": [[1, 2, 3], [4, 5, 6, 7]],
        "edges": [
            [2, 3], [1, 4], [1, 2], [1, 3], [1, 5], [2, 7], [2, 5],
            [4, 7], [4, 6], [5, 7], [6, 7], [5, 6],
        ],
    },
    # ten nodes, three sectors
    {
        "nodes": 10,
        "unions": [[1, 2, 3], [4, 5, 6, 7], [8, 9, 10]],
        "edges": [
            [2, 3], [1, 4], [1, 2], [1, 3], [1, 5], [2, 7], [2, 5],
            [4, 7], [4, 6], [5, 7], [6, 7], [5, 6],
            [7, 10], [7, 9], [2, 8], [8, 9], [8, 10],
        ],
    },
]


def axiom_universe_fixtures() -> tuple[UnionGraph, ...]:
    graphs = [from_file_dict(doc) for doc in _AXIOM_DOCS]
    graphs.extend(demo_graph(name) for name in DEMO_DOCS)
    return tuple(graphs)
