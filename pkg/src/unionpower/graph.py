"""Graphs with a priori unions.

A :class:`UnionGraph` is an undirected graph on nodes ``0..n-1`` together
with a partition of the node set into at least two nonempty blocks (the
unions).  Instances are immutable after construction; every operation either
reads topology or returns a fresh graph.  All derived quantities consumed by
the index and game modules (per-union degrees, bridge nodes, external edge
counts) live here.

Node ids are 0-based in memory.  The JSON file format and all user-facing
output use 1-based ids; :func:`from_file_dict` / :func:`to_file_dict` do the
translation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    EmptyUnion,
    NoExternalEdges,
    NodeOutOfRange,
    NotABijection,
    OverlappingUnions,
    SameUnion,
    SelfLoop,
    TooFewNodes,
    TooFewUnions,
    UncoveredNode,
    WouldLeaveSingleUnion,
)

Edge = tuple[int, int]


def _norm_edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class DegreeProfile:
    """Degree counts of one node, split by union."""

    node: int
    d_total: int
    d_int: int
    d_ext: int
    per_union: tuple[int, ...]


class UnionGraph:
    """Immutable graph with a priori unions.

    Do not call the constructor with untrusted data; go through
    :func:`validate` (or :func:`from_file_dict`) instead.  Internal callers
    that already know their input is sound use ``_trusted=True`` to skip the
    checks, which matters when axiom checks build millions of small variants.
    """

    __slots__ = ("n", "edges", "partition", "labels", "_union_of", "_nbrs", "_key")

    def __init__(
        self,
        n: int,
        edges: Iterable[Edge],
        partition: Sequence[Iterable[int]],
        labels: Optional[dict[int, str]] = None,
        *,
        _trusted: bool = False,
    ):
        if not _trusted:
            edges = [tuple(e) for e in edges]
            _check(n, partition, edges, id_offset=0)
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(sorted({_norm_edge(i, j) for i, j in edges}))
        self.partition: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(block)) for block in partition
        )
        self.labels: dict[int, str] = dict(labels) if labels else {}
        union_of = [0] * n
        for idx, block in enumerate(self.partition):
            for v in block:
                union_of[v] = idx
        self._union_of = tuple(union_of)
        nbrs = [set() for _ in range(n)]
        for i, j in self.edges:
            nbrs[i].add(j)
            nbrs[j].add(i)
        self._nbrs = tuple(frozenset(s) for s in nbrs)
        self._key = None

    # -- identity ---------------------------------------------------------

    @property
    def r(self) -> int:
        return len(self.partition)

    def cache_key(self):
        """Hashable identity: (n, edge bitmask, sorted union bitmasks).

        Block order is deliberately ignored so that graphs differing only in
        the listing order of their unions compare equal.
        """
        if self._key is None:
            n = self.n
            em = 0
            for i, j in self.edges:
                em |= 1 << (i * n + j)
            blocks = tuple(sorted(_mask(block) for block in self.partition))
            self._key = (n, em, blocks)
        return self._key

    def __eq__(self, other):
        return isinstance(other, UnionGraph) and self.cache_key() == other.cache_key()

    def __hash__(self):
        return hash(self.cache_key())

    def __repr__(self):
        return f"UnionGraph(n={self.n}, r={self.r}, edges={len(self.edges)})"

    # -- topology queries --------------------------------------------------

    def union_of(self, i: int) -> int:
        return self._union_of[i]

    def union_members(self, ell: int) -> tuple[int, ...]:
        return self.partition[ell]

    def neighbors(self, i: int, restrict: Optional[Iterable[int]] = None) -> frozenset[int]:
        base = self._nbrs[i]
        if restrict is None:
            return base
        return base & frozenset(restrict)

    def outside_union(self, i: int) -> frozenset[int]:
        """All nodes outside i's own union."""
        own = self._union_of[i]
        return frozenset(v for v in range(self.n) if self._union_of[v] != own)

    def degree_in(self, i: int, nodes: Iterable[int]) -> int:
        nbrs = self._nbrs[i]
        return sum(1 for v in nodes if v in nbrs)

    def degree_profile(self, i: int) -> DegreeProfile:
        nbrs = self._nbrs[i]
        per_union = [0] * self.r
        for v in nbrs:
            per_union[self._union_of[v]] += 1
        own = self._union_of[i]
        d_int = per_union[own]
        d_total = len(nbrs)
        return DegreeProfile(i, d_total, d_int, d_total - d_int, tuple(per_union))

    def external_degree(self, i: int) -> int:
        own = self._union_of[i]
        return sum(1 for v in self._nbrs[i] if self._union_of[v] != own)

    def internal_degree(self, i: int) -> int:
        own = self._union_of[i]
        return sum(1 for v in self._nbrs[i] if self._union_of[v] == own)

    def bridge_nodes(self) -> frozenset[int]:
        return frozenset(i for i in range(self.n) if self.external_degree(i) > 0)

    def external_edge_count(self) -> int:
        uo = self._union_of
        return sum(1 for i, j in self.edges if uo[i] != uo[j])

    def is_incomplete_bridge(self, i: int) -> bool:
        """True when i partially touches some foreign union and reaches beyond it."""
        nbrs = self._nbrs[i]
        own = self._union_of[i]
        for ell, block in enumerate(self.partition):
            if ell == own:
                continue
            inside = nbrs.intersection(block)
            if not inside or len(inside) == len(block):
                continue
            if any(self._union_of[v] != ell for v in nbrs):
                return True
        return False

    def restricted_spillover_map(self) -> Optional[dict[int, int]]:
        """Map node -> foreign union holding its whole neighborhood, if one exists.

        Returns None as soon as some node with edges has neighbors in more
        than one union, or any neighbor inside its own union.  Nodes with no
        edges are exempt and never appear in the map.
        """
        psi: dict[int, int] = {}
        for i in range(self.n):
            nbrs = self._nbrs[i]
            if not nbrs:
                continue
            targets = {self._union_of[v] for v in nbrs}
            if len(targets) != 1:
                return None
            (target,) = targets
            if target == self._union_of[i]:
                return None
            psi[i] = target
        return psi

    # -- derived graphs -----------------------------------------------------

    def apply_permutation(self, sigma: Sequence[int]) -> "UnionGraph":
        n = self.n
        if len(sigma) != n or set(sigma) != set(range(n)):
            raise NotABijection(f"sigma must be a bijection on 0..{n - 1}")
        edges = [(_norm_edge(sigma[i], sigma[j])) for i, j in self.edges]
        partition = [[sigma[v] for v in block] for block in self.partition]
        labels = {sigma[i]: name for i, name in self.labels.items()}
        return UnionGraph(n, edges, partition, labels, _trusted=True)

    def merge_unions(self, a: int, b: int) -> "UnionGraph":
        if a == b:
            raise SameUnion(f"cannot merge union {a} with itself")
        if self.r - 1 < 2:
            raise WouldLeaveSingleUnion("merging would leave a single union")
        lo, hi = min(a, b), max(a, b)
        blocks = []
        for idx, block in enumerate(self.partition):
            if idx == lo:
                blocks.append(tuple(sorted(block + self.partition[hi])))
            elif idx != hi:
                blocks.append(block)
        return UnionGraph(self.n, self.edges, blocks, self.labels, _trusted=True)

    def inter_union_restriction(self, i: int) -> tuple[Edge, ...]:
        """Edges with at least one endpoint among i's external neighbors."""
        ext = self.neighbors(i, self.outside_union(i))
        return tuple(e for e in self.edges if e[0] in ext or e[1] in ext)

    def restrict_to(self, edges: Iterable[Edge]) -> "UnionGraph":
        return UnionGraph(self.n, edges, self.partition, self.labels, _trusted=True)

    def with_edge(self, i: int, j: int) -> "UnionGraph":
        return self.restrict_to(self.edges + (_norm_edge(i, j),))

    def linearity_family(self, i: int) -> tuple[tuple[Edge, ...], ...]:
        """One edge set per external neighbor of i, keeping only that contact.

        Member h equals the full edge set minus all of i's external edges
        except the one to the h-th external neighbor (sorted by neighbor id).
        """
        own = self._union_of[i]
        ext_nbrs = sorted(v for v in self._nbrs[i] if self._union_of[v] != own)
        if not ext_nbrs:
            raise NoExternalEdges(f"node {i} has no external edges")
        ext_edges = {_norm_edge(i, v) for v in ext_nbrs}
        family = []
        for keep in ext_nbrs:
            kept = _norm_edge(i, keep)
            family.append(tuple(e for e in self.edges if e not in ext_edges or e == kept))
        return tuple(family)


def _mask(nodes: Iterable[int]) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


def permuted_cache_key(g: UnionGraph, sigma: Sequence[int]):
    """cache_key of ``g.apply_permutation(sigma)`` without building the graph."""
    n = g.n
    em = 0
    for i, j in g.edges:
        a, b = sigma[i], sigma[j]
        em |= 1 << (a * n + b if a < b else b * n + a)
    blocks = tuple(sorted(_mask(sigma[v] for v in block) for block in g.partition))
    return (n, em, blocks)


def _check(n, partition, edges, id_offset: int) -> None:
    def show(x):
        return x + id_offset

    if not isinstance(n, int) or n < 3:
        raise TooFewNodes(f"need at least 3 nodes, got {n}")
    blocks = [list(b) for b in partition]
    if len(blocks) < 2:
        raise TooFewUnions(f"need at least 2 unions, got {len(blocks)}")
    seen: dict[int, int] = {}
    for idx, block in enumerate(blocks):
        if not block:
            raise EmptyUnion(f"union {idx + 1} is empty")
        for v in block:
            if not isinstance(v, int) or not 0 <= v < n:
                raise NodeOutOfRange(f"union {idx + 1} lists node {show(v)} outside 1..{n}"
                                     if id_offset else
                                     f"union {idx} lists node {v} outside 0..{n - 1}")
            if v in seen:
                raise OverlappingUnions(
                    f"node {show(v)} appears in unions {seen[v] + 1} and {idx + 1}"
                )
            seen[v] = idx
    for v in range(n):
        if v not in seen:
            raise UncoveredNode(f"node {show(v)} belongs to no union")
    for e in edges:
        i, j = e
        for v in (i, j):
            if not isinstance(v, int) or not 0 <= v < n:
                raise NodeOutOfRange(f"edge ({show(i)}, {show(j)}) has endpoint outside the node range")
        if i == j:
            raise SelfLoop(f"edge ({show(i)}, {show(j)}) is a self-loop")


def validate(
    n: int,
    partition: Sequence[Iterable[int]],
    edges: Iterable[Edge],
    labels: Optional[dict[int, str]] = None,
) -> UnionGraph:
    """Build a UnionGraph from untrusted 0-based input, or raise."""
    edges = [tuple(e) for e in edges]
    _check(n, partition, edges, id_offset=0)
    return UnionGraph(n, edges, partition, labels, _trusted=True)


# -- JSON file format ------------------------------------------------------
#
#   { "nodes": 10,
#     "unions": [[1,2,3], [4,5,6], [7,8,9,10]],
#     "edges":  [[1,2], [1,4], ...],
#     "labels": {"1": "Toyota", ...} }        <- optional
#
# ids are 1-based in files.


class GraphFormatError(ValueError):
    """Malformed graph document (missing keys, wrong types)."""


def from_file_dict(doc: dict) -> UnionGraph:
    try:
        n = doc["nodes"]
        unions_raw = doc["unions"]
        edges_raw = doc["edges"]
    except (KeyError, TypeError) as exc:
        raise GraphFormatError(f"graph document needs nodes/unions/edges: missing {exc}") from None
    if not isinstance(n, int):
        raise GraphFormatError("'nodes' must be an integer")
    _check(
        n,
        [[v - 1 for v in block] for block in unions_raw],
        [(i - 1, j - 1) for i, j in edges_raw],
        id_offset=1,
    )
    labels = None
    if doc.get("labels"):
        labels = {int(k) - 1: str(v) for k, v in doc["labels"].items()}
    return UnionGraph(
        n,
        [(i - 1, j - 1) for i, j in edges_raw],
        [[v - 1 for v in block] for block in unions_raw],
        labels,
        _trusted=True,
    )


def to_file_dict(g: UnionGraph) -> dict:
    doc = {
        "nodes": g.n,
        "unions": [[v + 1 for v in block] for block in g.partition],
        "edges": [[i + 1, j + 1] for i, j in g.edges],
    }
    if g.labels:
        doc["labels"] = {str(i + 1): g.labels[i] for i in sorted(g.labels)}
    return doc


def load_graph(path) -> UnionGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return from_file_dict(json.load(fh))
