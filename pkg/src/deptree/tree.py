"""Labeled undirected trees, degree moments and exhaustive enumeration."""

from __future__ import annotations

import heapq
import itertools
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from fractions import Fraction

MAX_ENUMERATION_N = 8


class TreeError(ValueError):
    """Base class for invalid tree input."""


class SelfLoopError(TreeError):
    pass


class DuplicateEdgeError(TreeError):
    pass


class VertexRangeError(TreeError):
    pass


class EdgeCountError(TreeError):
    pass


class CycleError(TreeError):
    """The edge set contains a cycle (with n-1 edges, equivalently it is disconnected)."""


@dataclass(frozen=True)
class Tree:
    """A labeled tree on vertices ``1..n``.

    Edges are stored as sorted ``(u, v)`` pairs with ``u < v``, in sorted order.
    Build instances through :func:`validate_tree` or the generators below.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    @property
    def degrees(self) -> list[int]:
        """Degree of each vertex, ``degrees[i - 1]`` for vertex ``i``."""
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u - 1] += 1
            deg[v - 1] += 1
        return deg

    def is_path(self) -> bool:
        return self.n <= 2 or max(self.degrees) == 2

    def is_star(self) -> bool:
        return self.n <= 2 or max(self.degrees) == self.n - 1


@dataclass(frozen=True)
class DegreeStats:
    degrees: tuple[int, ...]
    K2: int
    mean_k: Fraction
    mean_k2: Fraction
    var_k: Fraction


def validate_tree(n: int, edges: Iterable[tuple[int, int]]) -> Tree:
    """Check that ``edges`` form a labeled tree on ``1..n`` and return it.

    Raises a distinct :class:`TreeError` subclass for self-loops, duplicate
    edges, out-of-range vertex IDs, a wrong number of edges and cycles.
    """
    if n < 1:
        raise VertexRangeError(f"vertex count must be >= 1, got {n}")
    normalized: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise VertexRangeError(f"edge ({u}, {v}) has a vertex outside 1..{n}")
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise DuplicateEdgeError(f"duplicate edge {e}")
        seen.add(e)
        normalized.append(e)
    if len(normalized) != n - 1:
        raise EdgeCountError(f"a tree on {n} vertices needs {n - 1} edges, got {len(normalized)}")

    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in normalized:
        ru, rv = find(u), find(v)
        if ru == rv:
            raise CycleError(f"edge ({u}, {v}) closes a cycle; the graph is not a tree")
        parent[ru] = rv
    return Tree(n, tuple(sorted(normalized)))


def degree_stats(tree: Tree) -> DegreeStats:
    degrees = tree.degrees
    n = tree.n
    K2 = sum(k * k for k in degrees)
    mean_k = Fraction(sum(degrees), n)
    mean_k2 = Fraction(K2, n)
    return DegreeStats(tuple(degrees), K2, mean_k, mean_k2, mean_k2 - mean_k * mean_k)


def make_linear_tree(n: int) -> Tree:
    if n < 1:
        raise VertexRangeError(f"vertex count must be >= 1, got {n}")
    return Tree(n, tuple((i, i + 1) for i in range(1, n)))


def make_star_tree(n: int) -> Tree:
    """Star with vertex 1 as the hub."""
    if n < 1:
        raise VertexRangeError(f"vertex count must be >= 1, got {n}")
    return Tree(n, tuple((1, j) for j in range(2, n + 1)))


def prufer_decode(seq: tuple[int, ...] | list[int], n: int) -> Tree:
    """Decode a Prüfer sequence of length ``n - 2`` over ``1..n`` into a tree."""
    if len(seq) != n - 2:
        raise ValueError(f"Prüfer sequence for n={n} must have length {n - 2}")
    remaining = [0] * (n + 1)
    for x in seq:
        remaining[x] += 1
    leaves = [v for v in range(1, n + 1) if remaining[v] == 0]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x) if leaf < x else (x, leaf))
        remaining[x] -= 1
        if remaining[x] == 0:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v) if u < v else (v, u))
    return Tree(n, tuple(sorted(edges)))


def enumerate_trees(n: int, max_n: int = MAX_ENUMERATION_N) -> Iterator[Tree]:
    """Yield all ``n**(n-2)`` labeled trees on ``n`` vertices.

    Order follows the lexicographic order of the Prüfer sequences.
    """
    if not 2 <= n <= max_n:
        raise ValueError(f"enumeration supports 2 <= n <= {max_n}, got {n}")
    for seq in itertools.product(range(1, n + 1), repeat=n - 2):
        yield prufer_decode(seq, n)
