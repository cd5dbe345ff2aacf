"""Dense rankings and rank-reversal sweeps.

The relative order of two nodes depends on (alpha, beta) only through the
ratio rho = beta/alpha, so sweeps fix alpha = 1 and move rho.  A pair of
nodes whose alpha- and beta-coefficients order in opposite directions swaps
rank at exactly one positive threshold; collecting all pairwise thresholds
inside the window yields the full piecewise-constant ranking structure:
a closed column at rho = 0, alternating open-interval and breakpoint
columns, and a closed column at rho_max.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import SpilloverPropertyAbsent
from .graph import UnionGraph
from .index import MarketParams, power_index
from .linform import LinearForm


@dataclass(frozen=True)
class Ranking:
    """Dense ranking: groups[0] is rank 1; tied nodes share a group."""

    groups: tuple[tuple[int, ...], ...]
    params: MarketParams

    def rank_of(self, node: int) -> int:
        for idx, grp in enumerate(self.groups):
            if node in grp:
                return idx + 1
        raise KeyError(node)

    def same_order(self, other: "Ranking") -> bool:
        return self.groups == other.groups


def _dense_groups(values) -> tuple[tuple[int, ...], ...]:
    by_value: dict[Fraction, list[int]] = {}
    for node, v in enumerate(values):
        by_value.setdefault(v, []).append(node)
    ordered = sorted(by_value.items(), key=lambda kv: kv[0], reverse=True)
    return tuple(tuple(sorted(nodes)) for _, nodes in ordered)


def ranking_at(g: UnionGraph, params: MarketParams) -> Ranking:
    values = [f.evaluate(params.alpha, params.beta) for f in power_index(g)]
    return Ranking(_dense_groups(values), params)


def reversal_threshold(g: UnionGraph, i: int, j: int) -> Optional[Fraction]:
    """Positive rho where nodes i and j swap order, if their coefficients oppose.

    Returns None when the two alpha-coefficient and beta-coefficient
    differences do not have strictly opposite signs (including i == j and
    the constant-order case where only one coefficient differs).
    """
    forms = power_index(g)
    return _threshold(forms[i], forms[j])


def _threshold(fi: LinearForm, fj: LinearForm) -> Optional[Fraction]:
    da = fi.a - fj.a
    db = fi.b - fj.b
    if da == 0 or db == 0 or (da > 0) == (db > 0):
        return None
    return -da / db


@dataclass(frozen=True)
class SweepColumn:
    """One column of a sweep: either a point rho or an open interval."""

    kind: str  # "point" | "interval"
    lo: Fraction
    hi: Fraction
    ranking: Ranking

    @property
    def value(self) -> Fraction:
        assert self.kind == "point"
        return self.lo

    def header(self) -> str:
        if self.kind == "point":
            return f"r = {self.lo}"
        return f"{self.lo} < r < {self.hi}"


@dataclass(frozen=True)
class RankSweep:
    breakpoints: tuple[Fraction, ...]
    columns: tuple[SweepColumn, ...]


def rank_sweep(g: UnionGraph, rho_max: Fraction) -> RankSweep:
    """All rankings for rho in [0, rho_max], with alpha fixed to 1.

    Breakpoints are the pairwise reversal thresholds strictly inside
    (0, rho_max); a threshold landing exactly on rho_max shows up as the tie
    in the closing column instead of as a breakpoint.  Breakpoints whose
    flanking interval rankings coincide are dropped.
    """
    rho_max = Fraction(rho_max)
    if rho_max <= 0:
        raise ValueError("rho_max must be positive")
    forms = power_index(g)
    points = set()
    for i in range(g.n):
        for j in range(i + 1, g.n):
            t = _threshold(forms[i], forms[j])
            if t is not None and 0 < t < rho_max:
                points.add(t)
    breakpoints = sorted(points)

    def rank(rho: Fraction) -> Ranking:
        return ranking_at(g, MarketParams.of(1, rho))

    # pruned pass: a breakpoint is kept only if its flanking interval
    # rankings differ (always true for genuine reversals, cheap to verify)
    while True:
        edges = [Fraction(0)] + breakpoints + [rho_max]
        mids = [(lo + hi) / 2 for lo, hi in zip(edges, edges[1:])]
        interval_rankings = [rank(m) for m in mids]
        drop = None
        for idx in range(len(breakpoints)):
            if interval_rankings[idx].same_order(interval_rankings[idx + 1]):
                drop = idx
                break
        if drop is None:
            break
        del breakpoints[drop]

    columns = [SweepColumn("point", Fraction(0), Fraction(0), rank(Fraction(0)))]
    edges = [Fraction(0)] + breakpoints + [rho_max]
    for idx, (lo, hi) in enumerate(zip(edges, edges[1:])):
        columns.append(SweepColumn("interval", lo, hi, interval_rankings[idx]))
        if hi != rho_max:
            columns.append(SweepColumn("point", hi, hi, rank(hi)))
    columns.append(SweepColumn("point", rho_max, rho_max, rank(rho_max)))
    return RankSweep(tuple(breakpoints), tuple(columns))


def spillover_invariance_check(g: UnionGraph, grid=None) -> bool:
    """Verify that restricted spillovers freeze the ranking.

    Requires the restricted spillover property; raises otherwise.  Checks
    that every beta-coefficient vanishes and that the ranking is identical
    across a grid of positive-alpha parameter pairs.
    """
    if g.restricted_spillover_map() is None:
        raise SpilloverPropertyAbsent("graph does not have the restricted spillover property")
    forms = power_index(g)
    if any(f.b for f in forms):
        return False
    if grid is None:
        alphas = [Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(7, 2)]
        betas = [Fraction(0), Fraction(1, 4), Fraction(1), Fraction(3), Fraction(100)]
        grid = [(a, b) for a in alphas for b in betas]
    reference = ranking_at(g, MarketParams.of(1, 0))
    return all(
        ranking_at(g, MarketParams.of(a, b)).same_order(reference) for a, b in grid
    )
