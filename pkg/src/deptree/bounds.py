"""Analytic bounds relating hubiness, dependency length and crossings.

All values are exact: integers where the quantity is a count, otherwise
:class:`~fractions.Fraction`.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from deptree.arrangement import CrossingStats, LengthStats, LinearArrangement, crossing_count, length_stats
from deptree.baseline import analytic_baseline
from deptree.tree import DegreeStats, Tree, degree_stats


class BoundViolation(AssertionError):
    """A measured statistic contradicts one of the proven bounds."""


@dataclass(frozen=True)
class BoundsReport:
    n: int
    dmin_star_ensemble: Fraction
    dmin_hubiness: Fraction
    dmax_noncrossing: Fraction
    cmax_simple: int
    cmax_uncrossable: int
    cmax_length: Fraction
    cpairs_degree: Fraction
    crossings_impossible: bool
    E_d: Fraction
    V_d: Fraction

    @property
    def crossing_cap(self) -> int:
        """Tightest integer cap on C implied by the crossing bounds."""
        return math.floor(min(self.cmax_simple, self.cmax_uncrossable, self.cmax_length, self.cpairs_degree))


def _require_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"bound needs n >= 2, got {n}")


def dmin_lower_star_ensemble(degrees: Sequence[int]) -> Fraction:
    """Lower bound on the minimum mean length from each vertex's best local star."""
    n = len(degrees)
    _require_n(n)
    if sum(degrees) != 2 * (n - 1) or min(degrees) < 1:
        raise ValueError(f"{list(degrees)} is not the degree sequence of a tree")
    total = Fraction(0)
    for k in degrees:
        half = k // 2
        total += half * (half + 1) + Fraction(k + 1, 2) * (k % 2)
    return total / (2 * (n - 1))


def dmin_lower_hubiness(n: int, mean_k2: Fraction) -> Fraction:
    _require_n(n)
    return Fraction(n) * mean_k2 / (8 * (n - 1)) + Fraction(1, 2)


def star_dmin_exact(n: int) -> Fraction:
    """Minimum mean length of a star tree on ``n`` vertices (hub in the middle)."""
    _require_n(n)
    if n % 2 == 0:
        return Fraction(n * n, 4 * (n - 1))
    return Fraction(n + 1, 4)


def dmax_noncrossing(n: int) -> Fraction:
    """Maximum mean length over non-crossing arrangements of any tree."""
    _require_n(n)
    return Fraction(n, 2)


def dmax0_noncrossing(n: int) -> Fraction:
    return dmax_noncrossing(n) - 1


def cmax_simple(n: int) -> int:
    _require_n(n)
    return (n - 1) * (n - 2) // 2


def _check_M(n: int, M: int) -> None:
    _require_n(n)
    if not 0 <= M <= n - 1:
        raise ValueError(f"uncrossable edge count must lie in 0..{n - 1}, got {M}")


def cmax_from_uncrossable(n: int, M: int) -> int:
    _check_M(n, M)
    return math.comb(n - 1 - M, 2)


def crossings_impossible(n: int, M: int) -> bool:
    _check_M(n, M)
    return n - 1 - M <= 1


def cmax_from_length_moments(n: int, mean_d: Fraction, mean_d2: Fraction) -> Fraction:
    return Fraction(n - 1, 2) * (n * mean_d - mean_d2 - n + 1)


def arc_crossing_capacity(n: int, d: int) -> int:
    """Vertices under an arc of length ``d`` times vertices off it."""
    if not 1 <= d <= n - 1:
        raise ValueError(f"arc length must lie in 1..{n - 1}, got {d}")
    return (d - 1) * (n - d - 1)


def cpairs_from_degrees(n: int, mean_k2: Fraction) -> Fraction:
    """Number of edge pairs that share no vertex."""
    _require_n(n)
    return Fraction(n, 2) * (n - 1 - mean_k2)


def compute_bounds(tree: Tree, dstats: DegreeStats, lstats: LengthStats, cstats: CrossingStats) -> BoundsReport:
    n = tree.n
    _require_n(n)
    if n <= 3 and cstats.C != 0:
        raise BoundViolation(f"C={cstats.C} on a tree with n={n} <= 3")
    base = analytic_baseline(n)
    return BoundsReport(
        n=n,
        dmin_star_ensemble=dmin_lower_star_ensemble(dstats.degrees),
        dmin_hubiness=dmin_lower_hubiness(n, dstats.mean_k2),
        dmax_noncrossing=dmax_noncrossing(n),
        cmax_simple=cmax_simple(n),
        cmax_uncrossable=cmax_from_uncrossable(n, cstats.M),
        cmax_length=cmax_from_length_moments(n, lstats.mean_d, lstats.mean_d2),
        cpairs_degree=cpairs_from_degrees(n, dstats.mean_k2),
        crossings_impossible=crossings_impossible(n, cstats.M),
        E_d=base.E_d,
        V_d=base.V_d,
    )


def bounds_report(tree: Tree, arr: LinearArrangement | None = None) -> BoundsReport:
    if arr is None:
        arr = LinearArrangement.identity(tree.n)
    return compute_bounds(tree, degree_stats(tree), length_stats(tree, arr), crossing_count(tree, arr))


def bound_violations(
    dstats: DegreeStats, lstats: LengthStats, cstats: CrossingStats, report: BoundsReport
) -> list[str]:
    """Every bound relation that the measured statistics break (empty when consistent)."""
    n = report.n
    C = cstats.C
    out = []
    if C > report.cmax_simple:
        out.append(f"C={C} exceeds pair count {report.cmax_simple}")
    if C > report.cmax_uncrossable:
        out.append(f"C={C} exceeds uncrossable-edge bound {report.cmax_uncrossable}")
    if C > report.cmax_length:
        out.append(f"C={C} exceeds length-moment bound {report.cmax_length}")
    if C > report.cpairs_degree:
        out.append(f"C={C} exceeds degree bound {report.cpairs_degree}")
    if report.crossings_impossible and C != 0:
        out.append(f"C={C} although at most one edge is crossable")
    if n <= 3 and C != 0:
        out.append(f"C={C} with n={n} <= 3")
    if report.dmin_hubiness > report.dmin_star_ensemble:
        out.append(f"hubiness bound {report.dmin_hubiness} exceeds star-ensemble bound {report.dmin_star_ensemble}")
    if report.dmin_star_ensemble > lstats.mean_d:
        out.append(f"mean length {lstats.mean_d} is below star-ensemble bound {report.dmin_star_ensemble}")
    if C == 0 and lstats.mean_d > report.dmax_noncrossing:
        out.append(f"non-crossing mean length {lstats.mean_d} exceeds {report.dmax_noncrossing}")
    if dstats.K2 < 4 * n - 6:
        out.append(f"K2={dstats.K2} below 4n-6={4 * n - 6}")
    if dstats.mean_k2 > n - 1:
        out.append(f"<k^2>={dstats.mean_k2} exceeds n-1={n - 1}")
    return out
