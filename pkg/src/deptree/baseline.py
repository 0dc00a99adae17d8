"""Dependency length under uniformly random linear arrangements.

Closed forms are exact rationals. The Monte Carlo estimator draws each trial
from its own generator so that results do not depend on how trials are
sharded across workers:

* trial ``t`` under seed ``s`` seeds a :class:`random.Random` (MT19937) with
  the integer read from the first 8 bytes (big-endian) of
  ``sha256(f"{s}:{t}")``;
* the arrangement is ``random.shuffle`` (Fisher-Yates) of ``[1..n]``, read as
  ``positions[i - 1]`` for vertex ``i``.
"""

from __future__ import annotations

import hashlib
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from deptree.arrangement import count_crossings
from deptree.tree import Tree

RNG_NAME = "mt19937-sha256-substream"


@dataclass(frozen=True)
class RandomBaseline:
    n: int
    E_d: Fraction
    E_d2: Fraction
    V_d: Fraction
    E_d0: Fraction
    E_d0_sq: Fraction
    V_d0: Fraction


@dataclass(frozen=True)
class MonteCarloReport:
    n: int
    trials: int
    seed: int
    rng: str
    mean_d: Fraction
    se_mean_d: float
    mean_C: Fraction
    se_C: float
    max_C: int
    expected_d: Fraction

    @property
    def z_score(self) -> float:
        """Distance of the empirical mean from the analytic value, in standard errors."""
        diff = float(self.mean_d - self.expected_d)
        if self.se_mean_d == 0:
            return 0.0 if diff == 0 else math.inf
        return diff / self.se_mean_d


def length_pmf(n: int, d: int) -> Fraction:
    """Probability that two distinct uniformly placed vertices are ``d`` apart."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if not 1 <= d <= n - 1:
        return Fraction(0)
    return Fraction(2 * (n - d), n * (n - 1))


def analytic_baseline(n: int) -> RandomBaseline:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    E_d = Fraction(n + 1, 3)
    E_d2 = Fraction(n * (n + 1), 6)
    V_d = E_d2 - E_d * E_d
    # E[(d-1)^2] expanded directly; reduces to (n-1)(n-2)/6.
    E_d0_sq = E_d2 - 2 * E_d + 1
    E_d0 = E_d - 1
    return RandomBaseline(n, E_d, E_d2, V_d, E_d0, E_d0_sq, E_d0_sq - E_d0 * E_d0)


def exact_pair_average(n: int) -> Fraction:
    """Mean of ``|i - j|`` over all unordered position pairs, by brute force."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    total = 0
    pairs = 0
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            total += j - i
            pairs += 1
    return Fraction(total, pairs)


def trial_rng(seed: int, trial: int) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{trial}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _run_trials(edges: tuple[tuple[int, int], ...], n: int, seed: int, start: int, stop: int) -> tuple[int, int, int, int, int]:
    sum_D = sum_D2 = sum_C = sum_C2 = max_C = 0
    for t in range(start, stop):
        positions = list(range(1, n + 1))
        trial_rng(seed, t).shuffle(positions)
        D = 0
        spans = []
        for u, v in edges:
            a, b = positions[u - 1], positions[v - 1]
            if a > b:
                a, b = b, a
            D += b - a
            spans.append((a, b))
        C = count_crossings(spans)
        sum_D += D
        sum_D2 += D * D
        sum_C += C
        sum_C2 += C * C
        if C > max_C:
            max_C = C
    return sum_D, sum_D2, sum_C, sum_C2, max_C


def _standard_error(s1: int, s2: int, count: int, scale: int) -> float:
    if count < 2:
        return 0.0
    var = Fraction(s2 * count - s1 * s1, count * (count - 1) * scale * scale)
    return math.sqrt(var / count)


def monte_carlo_baseline(tree: Tree, trials: int, seed: int, jobs: int = 1) -> MonteCarloReport:
    """Empirical mean length and crossings over uniformly random arrangements.

    Sums are kept as integers so the result is identical for any ``jobs``.
    """
    n = tree.n
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if jobs <= 1:
        parts = [_run_trials(tree.edges, n, seed, 0, trials)]
    else:
        step = -(-trials // jobs)
        bounds = [(lo, min(lo + step, trials)) for lo in range(0, trials, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_trials, tree.edges, n, seed, lo, hi) for lo, hi in bounds]
            parts = [f.result() for f in futures]
    sum_D = sum(p[0] for p in parts)
    sum_D2 = sum(p[1] for p in parts)
    sum_C = sum(p[2] for p in parts)
    sum_C2 = sum(p[3] for p in parts)
    max_C = max(p[4] for p in parts)
    m = n - 1
    return MonteCarloReport(
        n=n,
        trials=trials,
        seed=seed,
        rng=RNG_NAME,
        mean_d=Fraction(sum_D, trials * m),
        se_mean_d=_standard_error(sum_D, sum_D2, trials, m),
        mean_C=Fraction(sum_C, trials),
        se_C=_standard_error(sum_C, sum_C2, trials, 1),
        max_C=max_C,
        expected_d=Fraction(n + 1, 3),
    )
