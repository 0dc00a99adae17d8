"""Bundled reference trees and fixture files.

``T1`` is the nine-word example sentence "She loved me for the dangers I had
passed": max degree 3, mean squared degree 4, and under its own word order
lengths 1,1,2,1,2,1,2,1 with no crossings. ``FIG2_POSITIONS`` rearranges it
into an order with 9 crossings, total length 29 and squared length 133; it is
the lexicographically smallest such permutation with exactly one uncrossable
edge.
"""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

from deptree.arrangement import LinearArrangement
from deptree.tree import Tree, validate_tree

FIXTURES_ENV = "DEPTREE_FIXTURES"

T1_N = 9
T1_EDGES = ((1, 2), (2, 3), (2, 4), (4, 5), (4, 6), (6, 7), (6, 8), (8, 9))
T1_WORDS = ("She", "loved", "me", "for", "the", "dangers", "I", "had", "passed")
# head of each word when rooted at "loved"; direction is not used by any metric
T1_HEADS = (2, 0, 2, 2, 4, 4, 6, 6, 8)
FIG2_POSITIONS = (1, 4, 8, 3, 6, 9, 7, 2, 5)


def t1_tree() -> Tree:
    return validate_tree(T1_N, T1_EDGES)


def fig2_arrangement() -> LinearArrangement:
    return LinearArrangement(FIG2_POSITIONS)


def fixtures_dir() -> Path:
    """Directory holding the bundled fixture files; ``$DEPTREE_FIXTURES`` overrides it."""
    override = os.environ.get(FIXTURES_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("deptree") / "data"))


def fixture_path(name: str) -> Path:
    return fixtures_dir() / name
