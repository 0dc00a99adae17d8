"""Exhaustive certification of the bounds on small trees.

Every labeled tree of a given size is paired with every arrangement of its
vertices. Sizes above the exhaustive cap use a seeded sample of trees, still
with all arrangements of each.
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from deptree import bounds as B
from deptree.tree import Tree, degree_stats, enumerate_trees, prufer_decode

EXHAUSTIVE_MAX_N = 6
SAMPLED_MAX_N = 9

INVARIANTS = (
    "tree_count",
    "degree_sum",
    "k2_lower_path",
    "k2_upper_star",
    "small_n_planar",
    "c_le_pairs",
    "c_le_uncrossable",
    "c_le_length_moments",
    "c_le_degree_pairs",
    "dmin_chain",
    "noncrossing_D_le_delta",
)


@dataclass
class InvariantResult:
    name: str
    checked: int = 0
    failures: int = 0
    witness: str | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass
class TreeSummary:
    """Per-tree outcome of the arrangement sweep."""

    n: int
    edges: tuple[tuple[int, int], ...]
    checks: dict[str, int] = field(default_factory=dict)
    failures: dict[str, tuple[int, str]] = field(default_factory=dict)
    min_D: int = 0
    max_planar_D: int = 0
    max_C: int = 0

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks[name] = self.checks.get(name, 0) + 1
        if not ok:
            count, first = self.failures.get(name, (0, detail))
            self.failures[name] = (count + 1, first)


def _crosses(a: int, b: int, x: int, y: int) -> bool:
    return a < x < b < y or x < a < y < b


def sweep_tree(tree: Tree) -> TreeSummary:
    n = tree.n
    m = n - 1
    dstats = degree_stats(tree)
    s = TreeSummary(n, tree.edges)
    label = f"tree n={n} edges={list(tree.edges)}"

    s.record("degree_sum", sum(dstats.degrees) == 2 * m and dstats.mean_k == 2 - Fraction(2, n), label)
    s.record("k2_lower_path", dstats.K2 >= 4 * n - 6 and (dstats.K2 == 4 * n - 6) == tree.is_path(), label)
    s.record("k2_upper_star", dstats.mean_k2 <= m and (dstats.mean_k2 == m) == tree.is_star(), label)

    cmax_simple = B.cmax_simple(n)
    cpairs = B.cpairs_from_degrees(n, dstats.mean_k2)
    dmin_hub = B.dmin_lower_hubiness(n, dstats.mean_k2)
    dmin_star = B.dmin_lower_star_ensemble(dstats.degrees)
    delta = n * (n - 1) // 2

    edges = [(u - 1, v - 1) for u, v in tree.edges]
    pairs = list(itertools.combinations(range(m), 2))
    min_D = None
    max_planar_D = 0
    max_C = 0
    by_M: dict[int, tuple[int, bool]] = {}
    by_moments: dict[tuple[int, int], int] = {}
    cpairs_cap = math.floor(cpairs)
    for p in itertools.permutations(range(1, n + 1)):
        lo = []
        hi = []
        D = D2 = M = 0
        for u, v in edges:
            a, b = p[u], p[v]
            if a > b:
                a, b = b, a
            d = b - a
            lo.append(a)
            hi.append(b)
            D += d
            D2 += d * d
            if d == 1 or d == m:
                M += 1
        C = 0
        for i, j in pairs:
            if _crosses(lo[i], hi[i], lo[j], hi[j]):
                C += 1
        where = f"{label} positions={p} C={C}"
        s.record("small_n_planar", n > 3 or C == 0, where)
        s.record("c_le_pairs", C <= cmax_simple, where)
        if M not in by_M:
            by_M[M] = (B.cmax_from_uncrossable(n, M), B.crossings_impossible(n, M))
        cap_M, impossible = by_M[M]
        s.record("c_le_uncrossable", C <= cap_M and (C == 0 or not impossible), where)
        if (D, D2) not in by_moments:
            by_moments[D, D2] = math.floor(B.cmax_from_length_moments(n, Fraction(D, m), Fraction(D2, m)))
        s.record("c_le_length_moments", C <= by_moments[D, D2], where)
        s.record("c_le_degree_pairs", C <= cpairs_cap, where)
        if C == 0:
            s.record("noncrossing_D_le_delta", D <= delta, f"{where} D={D}")
            max_planar_D = max(max_planar_D, D)
        if min_D is None or D < min_D:
            min_D = D
        max_C = max(max_C, C)

    oracle_min = Fraction(min_D, m)
    s.record(
        "dmin_chain",
        dmin_hub <= dmin_star <= oracle_min,
        f"{label} hubiness={dmin_hub} star_ensemble={dmin_star} oracle_min={oracle_min}",
    )
    s.min_D, s.max_planar_D, s.max_C = min_D, max_planar_D, max_C
    return s


@dataclass
class SizeReport:
    n: int
    trees: int
    arrangements: int
    exhaustive: bool
    delta_attained: int
    max_C_path: int | None
    max_C_any: int


@dataclass
class VerifyReport:
    max_n: int
    seed: int
    samples: int
    invariants: dict[str, InvariantResult]
    sizes: list[SizeReport]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.invariants.values())


def sample_trees(n: int, count: int, seed: int) -> list[Tree]:
    rng = random.Random(f"{seed}:{n}")
    return [prufer_decode([rng.randint(1, n) for _ in range(n - 2)], n) for _ in range(count)]


def verify(
    max_n: int,
    seed: int = 0,
    samples: int = 5,
    jobs: int = 1,
    exhaustive_max_n: int = EXHAUSTIVE_MAX_N,
) -> VerifyReport:
    """Run every invariant for ``2 <= n <= max_n``.

    Sizes up to ``exhaustive_max_n`` cover all ``n**(n-2)`` labeled trees;
    larger sizes (at most 9) draw ``samples`` random trees from ``seed``.
    """
    if not 2 <= max_n <= SAMPLED_MAX_N:
        raise ValueError(f"max_n must lie in 2..{SAMPLED_MAX_N}, got {max_n}")
    results = {name: InvariantResult(name) for name in INVARIANTS}
    sizes = []
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for n in range(2, max_n + 1):
            exhaustive = n <= exhaustive_max_n
            trees = list(enumerate_trees(n)) if exhaustive else sample_trees(n, samples, seed)
            if exhaustive:
                count = results["tree_count"]
                count.checked += 1
                distinct = len(set(trees))
                if distinct != n ** (n - 2) or len(trees) != distinct:
                    count.failures += 1
                    count.witness = count.witness or f"n={n}: {len(trees)} trees, {distinct} distinct, expected {n ** (n - 2)}"
            summaries = pool.map(sweep_tree, trees, chunksize=16) if pool else map(sweep_tree, trees)
            delta = n * (n - 1) // 2
            attained = 0
            max_C_path = None
            max_C_any = 0
            for s in summaries:
                for name, checked in s.checks.items():
                    results[name].checked += checked
                for name, (failures, first) in s.failures.items():
                    r = results[name]
                    r.failures += failures
                    r.witness = r.witness or first
                attained += s.max_planar_D == delta
                max_C_any = max(max_C_any, s.max_C)
                if Tree(n, s.edges).is_path():
                    max_C_path = max(max_C_path or 0, s.max_C)
            sizes.append(SizeReport(n, len(trees), len(trees) * math.factorial(n), exhaustive, attained, max_C_path, max_C_any))
    finally:
        if pool:
            pool.shutdown()
    return VerifyReport(max_n, seed, samples, results, sizes)
