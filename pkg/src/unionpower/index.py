"""The two-coefficient power index on graphs with a priori unions.

Node i earns ``alpha`` per neighbor outside its own union (direct licensing
reach) plus, for each such neighbor j, ``beta`` times the ratio of j's
external degree to j's degree back into i's union (sublicensing leverage).
Nodes with no external neighbors score zero.  Everything is returned as a
:class:`~unionpower.linform.LinearForm`, so results are exact and stay
symbolic in (alpha, beta).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import UnionGraph
from .linform import LinearForm, parse_rational, sum_forms


@dataclass(frozen=True)
class MarketParams:
    """A concrete (alpha, beta) pair for evaluating linear forms."""

    alpha: Fraction
    beta: Fraction

    @staticmethod
    def parse(alpha: str, beta: str) -> "MarketParams":
        return MarketParams(parse_rational(alpha), parse_rational(beta))

    @staticmethod
    def of(alpha, beta) -> "MarketParams":
        return MarketParams(Fraction(alpha), Fraction(beta))

    def require_market(self) -> "MarketParams":
        """Reject negative coefficients; used by the economic CLI modes."""
        if self.alpha < 0 or self.beta < 0:
            raise ValueError(
                f"market coefficients must be nonnegative, got ({self.alpha}, {self.beta})"
            )
        return self

    @property
    def rho(self) -> Fraction:
        if self.alpha == 0:
            raise ZeroDivisionError("rho is undefined when alpha is 0")
        return self.beta / self.alpha


def evaluate(form: LinearForm, params: MarketParams) -> Fraction:
    return form.evaluate(params.alpha, params.beta)


def power_index(g: UnionGraph) -> tuple[LinearForm, ...]:
    """Index vector, entry i = d_i^ext * alpha + (sum of ratio terms) * beta.

    The ratio term for external neighbor j is d_j(outside own union of i)
    over d_j(own union of i); the denominator is at least 1 because i itself
    is such a neighbor of j.
    """
    out = []
    for i in range(g.n):
        own = g.union_of(i)
        outside = g.outside_union(i)
        ext_nbrs = g.neighbors(i, outside)
        if not ext_nbrs:
            out.append(LinearForm.zero())
            continue
        b = Fraction(0)
        own_block = g.union_members(own)
        for j in sorted(ext_nbrs):
            b += Fraction(g.degree_in(j, outside), g.degree_in(j, own_block))
        out.append(LinearForm(Fraction(len(ext_nbrs)), b))
    return tuple(out)


def symmetric_index(g: UnionGraph) -> tuple[Fraction, ...]:
    """Coefficient of alpha when both coefficients coincide.

    Entry i is the sum over external neighbors j of d_j / d_j(own union of i),
    which equals evaluating the full index at beta = alpha = 1.
    """
    out = []
    for i in range(g.n):
        own_block = g.union_members(g.union_of(i))
        outside = g.outside_union(i)
        total = Fraction(0)
        for j in sorted(g.neighbors(i, outside)):
            total += Fraction(len(g.neighbors(j)), g.degree_in(j, own_block))
        out.append(total)
    return tuple(out)


def total_power(g: UnionGraph) -> LinearForm:
    """Closed form for the sum of all index entries.

    The alpha part counts every external edge twice.  The beta part sums,
    over each node i and each foreign union it touches, the degree of i
    outside that union ("shadow" reach if i defected into it).
    """
    a = Fraction(2 * g.external_edge_count())
    b = Fraction(0)
    for i in range(g.n):
        prof = g.degree_profile(i)
        own = g.union_of(i)
        for ell, cnt in enumerate(prof.per_union):
            if ell == own or cnt == 0:
                continue
            b += prof.d_total - prof.per_union[ell]
    return LinearForm(a, b)


def index_sum(g: UnionGraph) -> LinearForm:
    return sum_forms(power_index(g))
