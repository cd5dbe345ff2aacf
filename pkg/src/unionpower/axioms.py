"""Axiom checking for power indices on graphs with a priori unions.

The checker runs a candidate index over a finite universe of graphs (an
exhaustive enumeration of small two-union graphs plus a set of hand-built
constructions) and tests each axiom's defining equation on every applicable
configuration.  Seven bundled fixture indices, one per axiom, reproduce the
independence argument; the two-coefficient index itself passes everything.

Axioms
    EN     zero on edgeless graphs
    IUN    value at i only depends on edges touching i's external neighbors
    A      equivariance under node relabeling
    Li     value at i splits over i's external contacts taken one at a time
    UI     merging two foreign unions i does not touch leaves i's value alone
    ConI   adding one internal edge at a maximal hub shifts the hub's
           external neighborhood by a graph-independent total
    Ba     on external-star graphs the hub's value equals its neighbors' sum
    EP     EN plus nonnegativity everywhere
    PConI  ConI with nonnegative shift
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import NoIncompleteBridge, UniverseTooLarge, UnknownAxiom
from .fixtures import axiom_universe_fixtures
from .graph import UnionGraph, permuted_cache_key
from .index import power_index
from .linform import LinearForm

AXIOMS = ("EN", "IUN", "A", "Li", "UI", "ConI", "Ba")
EXTRA_AXIOMS = ("EP", "PConI")

Values = tuple[Fraction, ...]


@dataclass(frozen=True)
class IndexFunction:
    """A deterministic map from graphs to one rational per node."""

    name: str
    fn: Callable[[UnionGraph], Values]

    def __call__(self, g: UnionGraph) -> Values:
        return self.fn(g)


def alpha_beta_index(alpha, beta) -> IndexFunction:
    a = Fraction(alpha)
    b = Fraction(beta)

    def fn(g: UnionGraph) -> Values:
        return tuple(f.evaluate(a, b) for f in power_index(g))

    return IndexFunction(f"power({a},{b})", fn)


# -- unanimity graphs -------------------------------------------------------


def unanimity_hubs(g: UnionGraph) -> tuple[int, ...]:
    """Nodes witnessing the unanimity-graph conditions; empty if none.

    Such a graph has exactly two unions and a hub carrying every external
    edge; the hub's internal neighbors touch nothing else inside, and every
    other node is internally isolated.  The hub's own internal degree is
    unconstrained here; the local variant pins it to zero.
    """
    if g.r != 2:
        return ()
    eps = g.external_edge_count()
    if eps == 0:
        return ()
    hubs = []
    for i in range(g.n):
        if g.external_degree(i) != eps:
            continue
        own_block = g.union_members(g.union_of(i))
        internal_nbrs = g.neighbors(i, own_block)
        ok = True
        for j in range(g.n):
            if j == i:
                continue
            d_int = g.internal_degree(j)
            if j in internal_nbrs:
                if d_int != 1:
                    ok = False
                    break
            elif d_int != 0:
                ok = False
                break
        if ok:
            hubs.append(i)
    return tuple(hubs)


def is_unanimity_graph(g: UnionGraph) -> Optional[int]:
    hubs = unanimity_hubs(g)
    return hubs[0] if hubs else None


def is_local_unanimity_graph(g: UnionGraph) -> Optional[int]:
    for i in unanimity_hubs(g):
        if g.internal_degree(i) == 0:
            return i
    return None


# -- fixture indices --------------------------------------------------------


def _in_marked_family(g: UnionGraph) -> bool:
    """Graphs carrying both edges (0,1), (0,2) with 1,2 together apart from 0."""
    if g.n < 3:
        return False
    es = set(g.edges)
    return (
        (0, 1) in es
        and (0, 2) in es
        and g.union_of(1) == g.union_of(2) != g.union_of(0)
    )


def _ext_degree_values(g: UnionGraph) -> list[Fraction]:
    return [Fraction(g.external_degree(i)) for i in range(g.n)]


def _v_en(g: UnionGraph) -> Values:
    if not g.edges:
        return tuple(Fraction(1) for _ in range(g.n))
    return tuple(f.evaluate(1, 1) for f in power_index(g))


def _v_a(g: UnionGraph) -> Values:
    vals = _ext_degree_values(g)
    if _in_marked_family(g):
        vals[1] += Fraction(1, 2)
        vals[2] -= Fraction(1, 2)
    return tuple(vals)


def _v_iun(g: UnionGraph) -> Values:
    out = []
    for i in range(g.n):
        outside = g.outside_union(i)
        total = 0
        for h in g.neighbors(i, outside):
            for j in g.neighbors(h, outside):
                total += len(g.neighbors(j))
        out.append(Fraction(total))
    return tuple(out)


def _v_li(g: UnionGraph) -> Values:
    out = []
    for i in range(g.n):
        outside = g.outside_union(i)
        ext = g.neighbors(i, outside)
        if not ext:
            out.append(Fraction(0))
            continue
        own_block = g.union_members(g.union_of(i))
        denom = sum(g.degree_in(j, own_block) for j in ext)
        out.append(Fraction(len(ext), denom * denom))
    return tuple(out)


def _v_ui(g: UnionGraph) -> Values:
    return tuple(Fraction(g.r * g.external_degree(i)) for i in range(g.n))


def _v_coni(g: UnionGraph) -> Values:
    out = []
    for i in range(g.n):
        outside = g.outside_union(i)
        out.append(
            Fraction(sum(len(g.neighbors(j)) for j in g.neighbors(i, outside)))
        )
    return tuple(out)


def _v_ba(g: UnionGraph) -> Values:
    vals = _ext_degree_values(g)
    if _in_marked_family(g):
        vals[1] += 1
        vals[2] += 1
    return tuple(vals)


_VIOLATORS = {
    "EN": IndexFunction("one-on-empty", _v_en),
    "A": IndexFunction("half-shift-on-marked", _v_a),
    "IUN": IndexFunction("two-hop-degree-sum", _v_iun),
    "Li": IndexFunction("squared-ratio", _v_li),
    "UI": IndexFunction("union-count-scaled", _v_ui),
    "ConI": IndexFunction("neighbor-degree-sum", _v_coni),
    "Ba": IndexFunction("unit-shift-on-marked", _v_ba),
}


def violating_index(axiom: str) -> IndexFunction:
    try:
        return _VIOLATORS[axiom]
    except KeyError:
        raise UnknownAxiom(
            f"no violating fixture for {axiom!r}; choose from {', '.join(_VIOLATORS)}"
        ) from None


# -- the graph universe -----------------------------------------------------


@dataclass(frozen=True)
class UniverseSpec:
    """What to enumerate: all (edges, partition) pairs for 3 <= n <= max_n
    with block counts in r_values, plus the bundled fixture graphs."""

    max_n: int = 5
    r_values: tuple[int, ...] = (2,)
    include_fixtures: bool = True
    extra: tuple[UnionGraph, ...] = ()
    exhaustive_perm_n: int = 5
    perm_samples: int = 100
    seed: int = 1729


def _partitions_into_blocks(n: int, r: int):
    """Unordered set partitions of range(n) into exactly r nonempty blocks."""
    if r == 2:
        # first block holds node 0, the complement is nonempty
        rest = range(1, n)
        for size in range(0, n - 1):
            for extra in itertools.combinations(rest, size):
                a = (0,) + extra
                b = tuple(v for v in range(n) if v not in a)
                yield (a, b)
        return
    # restricted-growth strings, filtered to r blocks
    def rec(v: int, blocks: list[list[int]]):
        if v == n:
            if len(blocks) == r:
                yield tuple(tuple(b) for b in blocks)
            return
        if len(blocks) + (n - v) < r:
            return
        for b in blocks:
            b.append(v)
            yield from rec(v + 1, blocks)
            b.pop()
        if len(blocks) < r:
            blocks.append([v])
            yield from rec(v + 1, blocks)
            blocks.pop()

    yield from rec(0, [])


_universe_memo: dict[UniverseSpec, tuple[UnionGraph, ...]] = {}


def enumerate_universe(spec: UniverseSpec) -> tuple[UnionGraph, ...]:
    cached = _universe_memo.get(spec)
    if cached is not None:
        return cached
    if spec.max_n > 6:
        raise UniverseTooLarge(f"exhaustive enumeration beyond n=6 is not tractable")
    graphs: list[UnionGraph] = []
    seen = set()
    for n in range(3, spec.max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        edge_sets = []
        for mask in range(1 << len(pairs)):
            edge_sets.append(tuple(p for b, p in enumerate(pairs) if mask >> b & 1))
        for r in spec.r_values:
            if r < 2 or r > n:
                continue
            for partition in _partitions_into_blocks(n, r):
                for edges in edge_sets:
                    g = UnionGraph(n, edges, partition, _trusted=True)
                    graphs.append(g)
                    seen.add(g.cache_key())
    tail = list(spec.extra)
    if spec.include_fixtures:
        tail.extend(axiom_universe_fixtures())
    for g in tail:
        if g.cache_key() not in seen:
            seen.add(g.cache_key())
            graphs.append(g)
    if not graphs:
        raise ValueError("empty universe")
    result = tuple(graphs)
    _universe_memo[spec] = result
    return result


# -- reports ----------------------------------------------------------------


@dataclass(frozen=True)
class AxiomWitness:
    detail: str
    graphs: tuple[UnionGraph, ...]
    node: Optional[int] = None


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    index_name: str
    passed: bool
    checks: int
    witness: Optional[AxiomWitness] = None


class _FCache:
    """Memoizes index vectors by graph identity key."""

    def __init__(self, fn: IndexFunction):
        self.fn = fn
        self.by_key: dict = {}

    def values(self, g: UnionGraph) -> Values:
        key = g.cache_key()
        hit = self.by_key.get(key)
        if hit is None:
            hit = self.fn(g)
            self.by_key[key] = hit
        return hit


def _permutations_for(n: int, spec: UniverseSpec):
    if n <= spec.exhaustive_perm_n:
        return itertools.permutations(range(n))
    rng = random.Random(spec.seed * 1000003 + n)
    out = []
    base = list(range(n))
    for _ in range(spec.perm_samples):
        rng.shuffle(base)
        out.append(tuple(base))
    return out


# individual checkers: each returns (checks, witness-or-None)


def _check_en(cache, graphs, spec):
    checks = 0
    for g in _empty_variants(graphs):
        checks += 1
        vals = cache.values(g)
        if any(vals):
            node = next(i for i, v in enumerate(vals) if v)
            return checks, AxiomWitness(
                f"edgeless graph assigns {vals[node]} to node {node + 1}", (g,), node
            )
    return checks, None


def _empty_variants(graphs):
    seen = set()
    for g in graphs:
        key = (g.n, tuple(sorted(tuple(b) for b in g.partition)))
        if key in seen:
            continue
        seen.add(key)
        yield g.restrict_to(())


def _check_ep(cache, graphs, spec):
    checks, witness = _check_en(cache, graphs, spec)
    if witness is not None:
        return checks, witness
    for g in graphs:
        checks += 1
        vals = cache.values(g)
        for i, v in enumerate(vals):
            if v < 0:
                return checks, AxiomWitness(
                    f"negative value {v} at node {i + 1}", (g,), i
                )
    return checks, None


def _check_iun(cache, graphs, spec):
    checks = 0
    for g in graphs:
        vals = cache.values(g)
        for i in range(g.n):
            restricted = g.restrict_to(g.inter_union_restriction(i))
            checks += 1
            if cache.values(restricted)[i] != vals[i]:
                return checks, AxiomWitness(
                    f"node {i + 1} scores {vals[i]} but "
                    f"{cache.values(restricted)[i]} on its external-neighborhood "
                    "restriction",
                    (g, restricted),
                    i,
                )
    return checks, None


def _check_a(cache, graphs, spec):
    checks = 0
    for g in graphs:
        vals = cache.values(g)
        n = g.n
        for sigma in _permutations_for(n, spec):
            image_vals = cache.by_key.get(permuted_cache_key(g, sigma))
            if image_vals is None:
                image_vals = cache.values(g.apply_permutation(sigma))
            checks += 1
            for i in range(n):
                if vals[i] != image_vals[sigma[i]]:
                    return checks, AxiomWitness(
                        f"relabeling by {tuple(s + 1 for s in sigma)} moves node "
                        f"{i + 1} from {vals[i]} to {image_vals[sigma[i]]}",
                        (g, g.apply_permutation(sigma)),
                        i,
                    )
    return checks, None


def _check_li(cache, graphs, spec):
    checks = 0
    for g in graphs:
        vals = cache.values(g)
        for i in range(g.n):
            if g.external_degree(i) < 1:
                continue
            total = Fraction(0)
            members = []
            for edges in g.linearity_family(i):
                member = g.restrict_to(edges)
                members.append(member)
                total += cache.values(member)[i]
            checks += 1
            if total != vals[i]:
                return checks, AxiomWitness(
                    f"node {i + 1} scores {vals[i]} jointly but {total} summed "
                    "over single-contact graphs",
                    (g, *members),
                    i,
                )
    return checks, None


def _check_ui(cache, graphs, spec):
    checks = 0
    for g in graphs:
        if g.r < 3:
            continue
        vals = cache.values(g)
        for i in range(g.n):
            own = g.union_of(i)
            prof = g.degree_profile(i)
            for ell in range(g.r):
                if ell == own or prof.per_union[ell] != 0:
                    continue
                for m in range(g.r):
                    if m in (ell, own):
                        continue
                    merged = g.merge_unions(ell, m)
                    checks += 1
                    if cache.values(merged)[i] != vals[i]:
                        return checks, AxiomWitness(
                            f"merging unions {ell + 1} and {m + 1} moves node "
                            f"{i + 1} from {vals[i]} to {cache.values(merged)[i]}",
                            (g, merged),
                            i,
                        )
    return checks, None


def _coni_triples(graphs):
    """(group key, graph, max-degree node, new partner) per applicable setup.

    The node i ranges over every node whose external degree equals the
    graph's external edge count, not only the nodes witnessing the
    unanimity-graph definition.
    """
    for g in graphs:
        if not unanimity_hubs(g):
            continue
        eps = g.external_edge_count()
        hubs = [i for i in range(g.n) if g.external_degree(i) == eps]
        partition_key = tuple(sorted(tuple(b) for b in g.partition))
        for i in hubs:
            es = set(g.edges)
            for k in g.union_members(g.union_of(i)):
                if k == i or tuple(sorted((i, k))) in es:
                    continue
                yield (g.n, partition_key, i, k), g, i, k


def _increment(cache, g, i, k) -> Fraction:
    extended = g.with_edge(i, k)
    before = cache.values(g)
    after = cache.values(extended)
    ext_nbrs = g.neighbors(i, g.outside_union(i))
    return sum((after[j] - before[j] for j in ext_nbrs), Fraction(0))


def _check_coni(cache, graphs, spec, require_nonneg: bool = False):
    groups: dict = {}
    for key, g, i, k in _coni_triples(graphs):
        groups.setdefault(key, []).append((g, i, k))
    checks = 0
    for key, setups in groups.items():
        first_val = None
        first_setup = None
        for g, i, k in setups:
            inc = _increment(cache, g, i, k)
            checks += 1
            if require_nonneg and inc < 0:
                return checks, AxiomWitness(
                    f"adding edge ({i + 1},{k + 1}) shifts the external "
                    f"neighborhood of node {i + 1} by {inc} < 0",
                    (g, g.with_edge(i, k)),
                    i,
                )
            if first_val is None:
                first_val = inc
                first_setup = (g, i, k)
            elif inc != first_val:
                g0, i0, k0 = first_setup
                return checks, AxiomWitness(
                    f"adding edge ({i + 1},{k + 1}) shifts node {i + 1}'s "
                    f"external neighborhood by {inc} in one graph and by "
                    f"{first_val} in another with the same partition, hub and "
                    "partner",
                    (g0, g),
                    i,
                )
    return checks, None


def _check_pconi(cache, graphs, spec):
    return _check_coni(cache, graphs, spec, require_nonneg=True)


def _check_ba(cache, graphs, spec):
    checks = 0
    for g in graphs:
        hub = is_local_unanimity_graph(g)
        if hub is None:
            continue
        vals = cache.values(g)
        eps = g.external_edge_count()
        for i in range(g.n):
            if g.external_degree(i) != eps:
                continue
            nbr_sum = sum(
                (vals[j] for j in g.neighbors(i, g.outside_union(i))), Fraction(0)
            )
            checks += 1
            if vals[i] != nbr_sum:
                return checks, AxiomWitness(
                    f"hub {i + 1} scores {vals[i]} but its external neighbors "
                    f"sum to {nbr_sum}",
                    (g,),
                    i,
                )
    return checks, None


_CHECKERS = {
    "EN": _check_en,
    "IUN": _check_iun,
    "A": _check_a,
    "Li": _check_li,
    "UI": _check_ui,
    "ConI": _check_coni,
    "Ba": _check_ba,
    "EP": _check_ep,
    "PConI": _check_pconi,
}


def _resolve_universe(universe) -> tuple[Sequence[UnionGraph], UniverseSpec]:
    if isinstance(universe, UniverseSpec):
        return enumerate_universe(universe), universe
    graphs = tuple(universe)
    if not graphs:
        raise ValueError("empty universe")
    return graphs, UniverseSpec()


def check_axiom(axiom: str, index_fn: IndexFunction, universe=None) -> AxiomReport:
    """Test one axiom for one index over a universe (spec or explicit list)."""
    if axiom not in _CHECKERS:
        raise UnknownAxiom(f"unknown axiom {axiom!r}")
    graphs, spec = _resolve_universe(universe if universe is not None else UniverseSpec())
    cache = _FCache(index_fn)
    for g in graphs:  # warm the cache so permutation lookups mostly hit
        cache.values(g)
    checks, witness = _CHECKERS[axiom](cache, graphs, spec)
    return AxiomReport(axiom, index_fn.name, witness is None, checks, witness)


def check_axioms(
    index_fn: IndexFunction, axioms: Sequence[str] = AXIOMS, universe=None
) -> dict[str, AxiomReport]:
    graphs, spec = _resolve_universe(universe if universe is not None else UniverseSpec())
    cache = _FCache(index_fn)
    for g in graphs:
        cache.values(g)
    out = {}
    for axiom in axioms:
        if axiom not in _CHECKERS:
            raise UnknownAxiom(f"unknown axiom {axiom!r}")
        checks, witness = _CHECKERS[axiom](cache, graphs, spec)
        out[axiom] = AxiomReport(axiom, index_fn.name, witness is None, checks, witness)
    return out


def coni_increments(index_fn: IndexFunction, universe=None) -> frozenset[Fraction]:
    """Every external-neighborhood shift observed across applicable setups."""
    graphs, _ = _resolve_universe(universe if universe is not None else UniverseSpec())
    cache = _FCache(index_fn)
    values = set()
    for _, g, i, k in _coni_triples(graphs):
        values.add(_increment(cache, g, i, k))
    return frozenset(values)


# -- independence matrix ----------------------------------------------------


@dataclass(frozen=True)
class IndependenceMatrix:
    axioms: tuple[str, ...]
    rows: tuple[str, ...]
    reports: dict

    def passed(self, row: str, axiom: str) -> bool:
        return self.reports[(row, axiom)].passed

    def failing_cells(self) -> tuple[tuple[str, str], ...]:
        return tuple(
            (row, ax)
            for row in self.rows
            for ax in self.axioms
            if not self.passed(row, ax)
        )

    def is_exactly_diagonal_fail(self) -> bool:
        return set(self.failing_cells()) == {(ax, ax) for ax in self.axioms}


def independence_matrix(universe=None, include_power_row: bool = False,
                        extra_axioms: bool = False) -> IndependenceMatrix:
    """Run every bundled fixture through every axiom.

    One row per fixture (labeled by the axiom it targets), one column per
    axiom.  ``include_power_row`` appends the two-coefficient index at
    (1, 1); ``extra_axioms`` appends the EP and PConI columns.
    """
    graphs, spec = _resolve_universe(universe if universe is not None else UniverseSpec())
    axioms = AXIOMS + (EXTRA_AXIOMS if extra_axioms else ())
    rows = list(AXIOMS)
    functions = {ax: violating_index(ax) for ax in AXIOMS}
    if include_power_row:
        rows.append("power")
        functions["power"] = alpha_beta_index(1, 1)
    reports = {}
    for row in rows:
        per_axiom = check_axioms(functions[row], axioms, graphs)
        for ax, report in per_axiom.items():
            reports[(row, ax)] = report
    return IndependenceMatrix(tuple(axioms), tuple(rows), reports)


# -- non-monotonicity construction ------------------------------------------


@dataclass(frozen=True)
class MonotonicityReport:
    graph: UnionGraph
    extended: UnionGraph
    added_edge: tuple[int, int]
    increased_node: int
    increased_before: LinearForm
    increased_after: LinearForm
    decreased_node: int
    decreased_before: LinearForm
    decreased_after: LinearForm


def monotonicity_demo(g: UnionGraph) -> MonotonicityReport:
    """Add one cross-union edge that raises one index and lowers another.

    Picks the smallest incomplete bridge i, its smallest partially-touched
    foreign union, the smallest established contact j there, and the largest
    untouched node m; the new edge (i, m) strictly raises the alpha part at
    i and strictly lowers the beta part at j.
    """
    for i in range(g.n):
        nbrs = g.neighbors(i)
        own = g.union_of(i)
        for ell, block in enumerate(g.partition):
            if ell == own:
                continue
            inside = sorted(nbrs.intersection(block))
            if not inside or len(inside) == len(block):
                continue
            if not any(g.union_of(v) != ell for v in nbrs):
                continue
            j = inside[0]
            m = max(v for v in block if v not in nbrs)
            extended = g.with_edge(i, m)
            before = power_index(g)
            after = power_index(extended)
            return MonotonicityReport(
                g,
                extended,
                (i, m),
                i,
                before[i],
                after[i],
                j,
                before[j],
                after[j],
            )
    raise NoIncompleteBridge("graph has no incomplete bridge node")
