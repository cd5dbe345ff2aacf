"""The cooperative game attached to a graph with a priori unions.

A coalition's worth splits by union.  Within one union, the one-step worth
pays ``alpha`` per external contact of each member and the two-step worth
pays ``beta`` times the outward degree of every distinct external neighbor
the coalition reaches.  Cross-union coalitions are worth the sum of their
per-union slices, so the whole game is determined by the within-union
pieces.

Four independent routes to the Shapley value live here:

* the closed-form index (imported from :mod:`unionpower.index`),
* marginals of an explicit potential built from harmonic numbers,
* dividend sums (the Moebius transform of the worth function),
* the classical factorial-weighted subset formula (the brute-force oracle).

They agree exactly, as linear forms, on every graph; the test suite leans on
that agreement hard.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Optional

from .errors import CoalitionSpansUnions, GraphTooLarge, UnionTooLarge
from .graph import UnionGraph
from .linform import LinearForm

DEFAULT_BRUTEFORCE_MAX_N = 16
DEFAULT_MAX_UNION_SIZE = 20


@dataclass(frozen=True)
class Coalition:
    """A node subset with bitset semantics."""

    mask: int = 0

    @staticmethod
    def from_nodes(nodes: Iterable[int]) -> "Coalition":
        m = 0
        for v in nodes:
            m |= 1 << v
        return Coalition(m)

    @staticmethod
    def full(n: int) -> "Coalition":
        return Coalition((1 << n) - 1)

    def members(self) -> tuple[int, ...]:
        out = []
        m = self.mask
        v = 0
        while m:
            if m & 1:
                out.append(v)
            m >>= 1
            v += 1
        return tuple(out)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: int) -> bool:
        return bool(self.mask >> v & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    def __or__(self, other: "Coalition") -> "Coalition":
        return Coalition(self.mask | other.mask)

    def __and__(self, other: "Coalition") -> "Coalition":
        return Coalition(self.mask & other.mask)

    def __sub__(self, other: "Coalition") -> "Coalition":
        return Coalition(self.mask & ~other.mask)

    def add(self, v: int) -> "Coalition":
        return Coalition(self.mask | 1 << v)

    def remove(self, v: int) -> "Coalition":
        return Coalition(self.mask & ~(1 << v))

    def isdisjoint(self, other: "Coalition") -> bool:
        return not self.mask & other.mask

    def render(self) -> str:
        return "{" + ",".join(str(v + 1) for v in self.members()) + "}"


def _iter_bits(mask: int) -> Iterator[int]:
    v = 0
    while mask:
        if mask & 1:
            yield v
        mask >>= 1
        v += 1


class GameValueTable:
    """Lazily memoized characteristic function of the game.

    Worths are additive across unions, so only within-union pieces are
    cached, keyed by their bitmask.  Entries are immutable once written and
    recomputing one is idempotent, which keeps concurrent readers safe.
    """

    def __init__(self, g: UnionGraph):
        self.graph = g
        n = g.n
        self._full_mask = (1 << n) - 1
        self._union_masks = [0] * g.r
        for ell, block in enumerate(g.partition):
            for v in block:
                self._union_masks[ell] |= 1 << v
        self._nbr_masks = [0] * n
        for i in range(n):
            for j in g.neighbors(i):
                self._nbr_masks[i] |= 1 << j
        # d_ext per node and, per union, the outward degree of every node
        # measured against that union (the two-step weights).
        self._d_ext = [g.external_degree(i) for i in range(n)]
        self._outward = []
        for ell in range(g.r):
            um = self._union_masks[ell]
            self._outward.append(
                [(self._nbr_masks[i] & ~um).bit_count() for i in range(n)]
            )
        self._piece_cache: dict[int, tuple[int, int]] = {0: (0, 0)}

    # pieces ---------------------------------------------------------------

    def _piece_union(self, mask: int) -> int:
        for ell, um in enumerate(self._union_masks):
            if mask & um == mask:
                return ell
        raise CoalitionSpansUnions(
            f"coalition {Coalition(mask).render()} is not inside a single union"
        )

    def piece_pair(self, mask: int) -> tuple[int, int]:
        """(alpha count, beta count) for a within-union coalition mask."""
        hit = self._piece_cache.get(mask)
        if hit is not None:
            return hit
        ell = self._piece_union(mask)
        a = 0
        reach = 0
        for v in _iter_bits(mask):
            a += self._d_ext[v]
            reach |= self._nbr_masks[v]
        reach &= ~self._union_masks[ell]
        w = self._outward[ell]
        b = sum(w[h] for h in _iter_bits(reach))
        pair = (a, b)
        self._piece_cache[mask] = pair
        return pair

    def value_pair(self, mask: int) -> tuple[int, int]:
        a = 0
        b = 0
        for um in self._union_masks:
            piece = mask & um
            if piece:
                pa, pb = self.piece_pair(piece)
                a += pa
                b += pb
        return (a, b)

    def value(self, coalition: Coalition) -> LinearForm:
        if coalition.mask & ~self._full_mask:
            raise ValueError("coalition contains nodes outside the graph")
        a, b = self.value_pair(coalition.mask)
        return LinearForm.of(a, b)

    def grand_value(self) -> LinearForm:
        a, b = self.value_pair(self._full_mask)
        return LinearForm.of(a, b)


def characteristic(g: UnionGraph) -> GameValueTable:
    return GameValueTable(g)


def _single_union_mask(g: UnionGraph, coalition: Coalition) -> int:
    """Union index containing the coalition, or raise; empty picks union 0."""
    members = coalition.members()
    if not members:
        return 0
    ells = {g.union_of(v) for v in members}
    if len(ells) != 1:
        raise CoalitionSpansUnions(
            f"coalition {coalition.render()} spans unions {sorted(e + 1 for e in ells)}"
        )
    return ells.pop()


def one_step_worth(g: UnionGraph, coalition: Coalition) -> LinearForm:
    """alpha times the total external degree of the coalition's members."""
    _single_union_mask(g, coalition)
    a = sum(g.external_degree(v) for v in coalition)
    return LinearForm.of(a, 0)


def two_step_worth(g: UnionGraph, coalition: Coalition) -> LinearForm:
    """beta times the summed outward degree of the coalition's external neighbors.

    Each external neighbor counts once no matter how many members reach it.
    """
    ell = _single_union_mask(g, coalition)
    block = set(g.union_members(ell))
    reached = set()
    for v in coalition:
        reached |= g.neighbors(v)
    reached -= block
    outside = [u for u in range(g.n) if g.union_of(u) != ell]
    b = sum(g.degree_in(h, outside) for h in reached)
    return LinearForm.of(0, b)


def subadditivity_witness(
    g: UnionGraph,
) -> Optional[tuple[Coalition, Coalition]]:
    """Two singletons whose union is worth strictly less than the parts.

    Candidates are bridge nodes of one union sharing an external neighbor;
    the shared neighbor is double-counted by the separate two-step worths.
    Sharing alone is not enough: when every shared neighbor has outward
    degree zero against that union the double count is zero, so the pair is
    emitted only after the strict beta inequality is confirmed.  Returns the
    lexicographically first verified pair.
    """
    table = characteristic(g)
    for ell, block in enumerate(g.partition):
        for idx, i in enumerate(block):
            ni = {v for v in g.neighbors(i) if g.union_of(v) != ell}
            if not ni:
                continue
            for j in block[idx + 1 :]:
                nj = {v for v in g.neighbors(j) if g.union_of(v) != ell}
                if not ni & nj:
                    continue
                t = Coalition.from_nodes([i])
                s = Coalition.from_nodes([j])
                if table.value(t | s).b < (table.value(t) + table.value(s)).b:
                    return (t, s)
    return None


@dataclass(frozen=True)
class DividendTable:
    """All nonzero dividends of the game, keyed by coalition mask."""

    graph: UnionGraph
    entries: dict[int, LinearForm]

    def get(self, coalition: Coalition) -> LinearForm:
        return self.entries.get(coalition.mask, LinearForm.zero())

    def sorted_items(self) -> list[tuple[Coalition, LinearForm]]:
        """Entries ordered by (union index, cardinality, members)."""
        g = self.graph

        def key(mask: int):
            members = Coalition(mask).members()
            return (g.union_of(members[0]), len(members), members)

        return [
            (Coalition(m), self.entries[m]) for m in sorted(self.entries, key=key)
        ]

    def __len__(self) -> int:
        return len(self.entries)


def harsanyi_dividends(
    g: UnionGraph, max_union_size: int = DEFAULT_MAX_UNION_SIZE
) -> DividendTable:
    """Moebius transform of the worth function, nonzero entries only.

    Cross-union coalitions carry zero dividend because the game is additive
    across unions, so the transform runs inside each union separately; the
    cost is near 2^k per union of size k.
    """
    for block in g.partition:
        if len(block) > max_union_size:
            raise UnionTooLarge(
                f"union of size {len(block)} exceeds the dividend bound {max_union_size}"
            )
    table = characteristic(g)
    entries: dict[int, LinearForm] = {}
    for block in g.partition:
        k = len(block)
        bits = [1 << v for v in block]
        size = 1 << k
        global_mask = [0] * size
        vals: list[tuple[int, int]] = [(0, 0)] * size
        for sub in range(1, size):
            low = sub & -sub
            global_mask[sub] = global_mask[sub ^ low] | bits[low.bit_length() - 1]
            vals[sub] = table.piece_pair(global_mask[sub])
        # in-place subset Moebius transform on the (a, b) integer pairs
        for pos in range(k):
            bit = 1 << pos
            for sub in range(size):
                if sub & bit:
                    a0, b0 = vals[sub]
                    a1, b1 = vals[sub ^ bit]
                    vals[sub] = (a0 - a1, b0 - b1)
        for sub in range(1, size):
            a, b = vals[sub]
            if a or b:
                entries[global_mask[sub]] = LinearForm.of(a, b)
    return DividendTable(g, entries)


def shapley_via_dividends(
    g: UnionGraph, max_union_size: int = DEFAULT_MAX_UNION_SIZE
) -> tuple[LinearForm, ...]:
    """Shapley vector as the per-member equal split of every dividend."""
    table = harsanyi_dividends(g, max_union_size)
    acc = [LinearForm.zero()] * g.n
    for mask, form in table.entries.items():
        share = form.scaled(Fraction(1, mask.bit_count()))
        for v in _iter_bits(mask):
            acc[v] = acc[v] + share
    return tuple(acc)


@lru_cache(maxsize=4096)
def _harmonic(k: int) -> Fraction:
    if k <= 0:
        return Fraction(0)
    return _harmonic(k - 1) + Fraction(1, k)


def coalition_potential(g: UnionGraph, coalition: Coalition) -> LinearForm:
    """Potential of the subgame on the coalition.

    Additive across unions.  Within a union, the alpha part sums the
    members' external degrees and the beta part weighs every outside node h
    by its outward degree times the harmonic number of its contact count
    into the coalition.  Per-member marginals of this map recover the
    Shapley value.
    """
    a = Fraction(0)
    b = Fraction(0)
    for ell, block in enumerate(g.partition):
        piece = [v for v in block if v in coalition]
        if not piece:
            continue
        outside = [u for u in range(g.n) if g.union_of(u) != ell]
        a += sum(g.external_degree(v) for v in piece)
        reached = set()
        for v in piece:
            reached |= g.neighbors(v)
        for h in reached.difference(block):
            contacts = g.degree_in(h, piece)
            b += _harmonic(contacts) * g.degree_in(h, outside)
    return LinearForm(a, b)


def shapley_via_potential(g: UnionGraph) -> tuple[LinearForm, ...]:
    full = Coalition.full(g.n)
    p_full = coalition_potential(g, full)
    return tuple(
        p_full - coalition_potential(g, full.remove(i)) for i in range(g.n)
    )


def verify_potential_identity(g: UnionGraph, coalition: Coalition) -> bool:
    """Check that summed potential marginals over the coalition equal its worth."""
    p_t = coalition_potential(g, coalition)
    lhs = LinearForm.zero()
    for i in coalition:
        lhs = lhs + (p_t - coalition_potential(g, coalition.remove(i)))
    rhs = characteristic(g).value(coalition)
    return lhs == rhs


def shapley_bruteforce(
    g: UnionGraph, max_n: int = DEFAULT_BRUTEFORCE_MAX_N
) -> tuple[LinearForm, ...]:
    """Exact Shapley value straight from the factorial-weighted subset sum.

    Independent of the dividend and potential code paths; this is the oracle
    the other routes are tested against.  Work is 2^n, hence the cap.
    """
    n = g.n
    if n > max_n:
        raise GraphTooLarge(f"brute force needs n <= {max_n}, got {n}")
    table = characteristic(g)
    full = (1 << n) - 1
    values = [table.value_pair(mask) for mask in range(full + 1)]
    # group marginal contributions by |T| so the exact weights multiply once
    marg_a = [[0] * n for _ in range(n)]
    marg_b = [[0] * n for _ in range(n)]
    for mask in range(full + 1):
        t = mask.bit_count()
        if t == n:
            continue
        va, vb = values[mask]
        rest = full & ~mask
        for i in _iter_bits(rest):
            wa, wb = values[mask | 1 << i]
            marg_a[t][i] += wa - va
            marg_b[t][i] += wb - vb
    fact = [factorial(k) for k in range(n + 1)]
    weights = [Fraction(fact[t] * fact[n - t - 1], fact[n]) for t in range(n)]
    out = []
    for i in range(n):
        a = sum((weights[t] * marg_a[t][i] for t in range(n)), Fraction(0))
        b = sum((weights[t] * marg_b[t][i] for t in range(n)), Fraction(0))
        out.append(LinearForm(a, b))
    return tuple(out)
