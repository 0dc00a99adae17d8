"""Dependency lengths and crossings of a tree under a linear arrangement."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from deptree.tree import Tree


class ArrangementError(ValueError):
    pass


@dataclass(frozen=True)
class LinearArrangement:
    """Bijection from vertex IDs to positions.

    ``positions[i - 1]`` is the position of vertex ``i``; both run over ``1..n``.
    """

    positions: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.positions)
        if sorted(self.positions) != list(range(1, n + 1)):
            raise ArrangementError(f"positions {self.positions} are not a permutation of 1..{n}")

    @classmethod
    def from_positions(cls, positions: Sequence[int]) -> LinearArrangement:
        return cls(tuple(int(p) for p in positions))

    @classmethod
    def identity(cls, n: int) -> LinearArrangement:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_order(cls, order: Sequence[int]) -> LinearArrangement:
        """Build from the sequence of vertices read left to right."""
        positions = [0] * len(order)
        for p, v in enumerate(order, start=1):
            positions[v - 1] = p
        return cls(tuple(positions))

    @property
    def n(self) -> int:
        return len(self.positions)

    @property
    def order(self) -> tuple[int, ...]:
        """Vertex placed at each position, left to right."""
        order = [0] * self.n
        for v, p in enumerate(self.positions, start=1):
            order[p - 1] = v
        return tuple(order)

    def __call__(self, vertex: int) -> int:
        return self.positions[vertex - 1]


@dataclass(frozen=True)
class LengthStats:
    """Edge length moments. The mean fields are ``None`` for a tree without edges."""

    lengths: tuple[int, ...]
    D: int
    mean_d: Fraction | None
    mean_d2: Fraction | None
    mean_d0: Fraction | None

    @property
    def D2(self) -> int:
        return sum(d * d for d in self.lengths)


@dataclass(frozen=True)
class CrossingStats:
    C: int
    M: int
    planar: bool


def _check(tree: Tree, arr: LinearArrangement) -> None:
    if arr.n != tree.n:
        raise ArrangementError(f"arrangement covers {arr.n} vertices but the tree has {tree.n}")


def edge_lengths(tree: Tree, arr: LinearArrangement) -> tuple[int, ...]:
    _check(tree, arr)
    pos = arr.positions
    return tuple(abs(pos[u - 1] - pos[v - 1]) for u, v in tree.edges)


def length_stats(tree: Tree, arr: LinearArrangement) -> LengthStats:
    lengths = edge_lengths(tree, arr)
    m = len(lengths)
    D = sum(lengths)
    if m == 0:
        return LengthStats(lengths, 0, None, None, None)
    mean_d = Fraction(D, m)
    mean_d2 = Fraction(sum(d * d for d in lengths), m)
    return LengthStats(lengths, D, mean_d, mean_d2, mean_d - 1)


def crossing_pairs(tree: Tree, arr: LinearArrangement) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Every unordered pair of edges whose endpoint positions strictly interleave."""
    _check(tree, arr)
    pos = arr.positions
    spans = []
    for u, v in tree.edges:
        a, b = pos[u - 1], pos[v - 1]
        spans.append((a, b) if a < b else (b, a))
    out = []
    m = len(spans)
    for i in range(m):
        a, b = spans[i]
        for j in range(i + 1, m):
            x, y = spans[j]
            if a < x < b < y or x < a < y < b:
                out.append((tree.edges[i], tree.edges[j]))
    return out


def count_crossings(spans: Sequence[tuple[int, int]]) -> int:
    """Crossing count for position spans given as ``(left, right)`` pairs."""
    c = 0
    m = len(spans)
    for i in range(m):
        a, b = spans[i]
        for j in range(i + 1, m):
            x, y = spans[j]
            if a < x < b < y or x < a < y < b:
                c += 1
    return c


def crossing_count(tree: Tree, arr: LinearArrangement) -> CrossingStats:
    _check(tree, arr)
    n = tree.n
    pos = arr.positions
    spans = []
    M = 0
    for u, v in tree.edges:
        a, b = pos[u - 1], pos[v - 1]
        if a > b:
            a, b = b, a
        spans.append((a, b))
        if b - a == 1 or b - a == n - 1:
            M += 1
    C = count_crossings(spans)
    return CrossingStats(C, M, C == 0)


def compose_reverse(arr: LinearArrangement) -> LinearArrangement:
    n = arr.n
    return LinearArrangement(tuple(n + 1 - p for p in arr.positions))
