"""Extremal constructions and exhaustive search over arrangements.

The brute-force searches walk position tuples in lexicographic order and keep
the first optimum met, so the witness is the lexicographically smallest
optimal arrangement. Mirror images share every length and crossing, hence only
tuples with ``positions[0] <= ceil(n / 2)`` are visited; the lexicographically
smallest optimum always lies in that half.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Literal

from deptree.arrangement import LinearArrangement, count_crossings
from deptree.tree import Tree

DEFAULT_MAX_N = 9


class SizeLimitError(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    value: Fraction | int
    witness: LinearArrangement
    explored: int


def delta(x: int) -> int:
    """Maximum total length of a non-crossing arrangement on ``x`` vertices."""
    return x * (x - 1) // 2


def arrange_star(n: int, mode: Literal["hub_end", "hub_center"] = "hub_end") -> LinearArrangement:
    """Arrangement of :func:`~deptree.tree.make_star_tree` (hub is vertex 1).

    ``hub_end`` puts the hub first; ``hub_center`` puts it at ``(n + 1) // 2``
    for odd n and ``n // 2`` for even n. Leaves fill the free positions in
    vertex order.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if mode == "hub_end":
        hub = 1
    elif mode == "hub_center":
        hub = (n + 1) // 2 if n % 2 else n // 2
    else:
        raise ValueError(f"unknown star mode {mode!r}")
    leaves = [p for p in range(1, n + 1) if p != hub]
    return LinearArrangement((hub, *leaves))


def arrange_linear(n: int, mode: Literal["identity", "zigzag"] = "identity") -> LinearArrangement:
    """Arrangement of :func:`~deptree.tree.make_linear_tree`.

    ``zigzag`` takes path vertices alternately from the left and right ends of
    the sequence (positions 1, n, 2, n-1, ...), giving lengths n-1, n-2, ..., 1.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if mode == "identity":
        return LinearArrangement.identity(n)
    if mode == "zigzag":
        return LinearArrangement(tuple((i + 1) // 2 if i % 2 else n + 1 - i // 2 for i in range(1, n + 1)))
    raise ValueError(f"unknown linear mode {mode!r}")


def decomposition_max_D(n: int, v: int, kind: Literal["a", "b"]) -> int:
    """Best total length when a non-crossing tree splits at sequence position ``v``.

    Kind ``a`` glues two subtrees sharing vertex ``v`` (2 <= v <= n-1); kind
    ``b`` joins disjoint blocks ``1..v`` and ``v+1..n`` with an edge between
    the outermost vertices (1 <= v <= n-1).
    """
    if kind == "a":
        if not 2 <= v <= n - 1:
            raise ValueError(f"kind a needs 2 <= v <= {n - 1}, got {v}")
        return v * v - (n + 1) * v + n * (n + 1) // 2
    if kind == "b":
        if not 1 <= v <= n - 1:
            raise ValueError(f"kind b needs 1 <= v <= {n - 1}, got {v}")
        return v * v - n * v + n * (n + 1) // 2 - 1
    raise ValueError(f"unknown decomposition kind {kind!r}")


def half_permutations(n: int):
    """Position tuples in lexicographic order, stopping after the mirror half."""
    half = (n + 1) // 2
    for p in itertools.permutations(range(1, n + 1)):
        if p[0] > half:
            return
        yield p


def _search(
    tree: Tree,
    max_n: int,
    score: Callable[[tuple[int, ...], int], int | None],
    maximize: bool,
) -> tuple[int, tuple[int, ...], int]:
    n = tree.n
    if n > max_n:
        raise SizeLimitError(f"exhaustive search is capped at n={max_n}, got n={n}")
    if n < 2:
        raise ValueError("exhaustive search needs at least one edge")
    best: int | None = None
    witness: tuple[int, ...] = ()
    explored = 0
    for p in half_permutations(n):
        explored += 1
        s = score(p, best if best is not None else (-1 if maximize else 1 << 62))
        if s is None:
            continue
        if best is None or (s > best if maximize else s < best):
            best, witness = s, p
    assert best is not None
    return best, witness, explored


def _index_edges(tree: Tree) -> list[tuple[int, int]]:
    return [(u - 1, v - 1) for u, v in tree.edges]


def brute_min_mean_length(tree: Tree, max_n: int = DEFAULT_MAX_N) -> OracleResult:
    """True minimum mean dependency length by exhaustive search."""
    edges = _index_edges(tree)

    def total(p, _best):
        return sum(abs(p[u] - p[v]) for u, v in edges)

    D, witness, explored = _search(tree, max_n, total, maximize=False)
    return OracleResult(Fraction(D, tree.n - 1), LinearArrangement(witness), explored)


def brute_max_noncrossing_D(tree: Tree, max_n: int = DEFAULT_MAX_N) -> OracleResult:
    """Largest total length over arrangements without crossings."""
    edges = _index_edges(tree)

    def total_if_planar(p, best):
        D = sum(abs(p[u] - p[v]) for u, v in edges)
        if D <= best:
            return None
        spans = [(p[u], p[v]) if p[u] < p[v] else (p[v], p[u]) for u, v in edges]
        return D if count_crossings(spans) == 0 else None

    D, witness, explored = _search(tree, max_n, total_if_planar, maximize=True)
    return OracleResult(D, LinearArrangement(witness), explored)


def brute_max_crossings(tree: Tree, max_n: int = DEFAULT_MAX_N) -> OracleResult:
    edges = _index_edges(tree)

    def crossings(p, _best):
        spans = [(p[u], p[v]) if p[u] < p[v] else (p[v], p[u]) for u, v in edges]
        return count_crossings(spans)

    C, witness, explored = _search(tree, max_n, crossings, maximize=True)
    return OracleResult(C, LinearArrangement(witness), explored)
