"""Slow, independent reference computations used to cross-check the fast paths.

Nothing here touches canonical codes or the splitting enumeration.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import factorial

from .trees import StableTree


def brute_force_isomorphic(t1: StableTree, t2: StableTree) -> bool:
    """Search every vertex bijection for one that maps edges onto edges and fixes tails."""
    if t1.tail_labels != t2.tail_labels:
        return False
    if len(t1.vertices) != len(t2.vertices) or len(t1.edges) != len(t2.edges):
        return False
    vs1 = list(t1.vertices)
    for image in permutations(t2.vertices):
        phi = dict(zip(vs1, image))
        if any(phi[v] != t2.tails[label] for label, v in t1.tails.items()):
            continue
        if all(frozenset(phi[x] for x in e) in t2.edges for e in t1.edges):
            return True
    return False


def bipartition_count(n: int) -> int:
    """Unordered splits of ``{1..n}`` into two blocks of size >= 2, by subset enumeration."""
    count = 0
    for mask in range(1 << n):
        size = bin(mask).count("1")
        if mask & 1 and 2 <= size <= n - 2:
            count += 1
    return count


def trivalent_count(n: int) -> int:
    """Trivalent trees on ``n`` labeled tails: ``T(3) = 1``, ``T(n) = T(n-1) * (2n - 5)``."""
    if n < 3:
        return 0
    t = 1
    for k in range(4, n + 1):
        t *= 2 * k - 5
    return t


def double_factorial(m: int) -> int:
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def stable_tree_count(n: int) -> int:
    """Number of stable trees with tails ``{1..n}``.

    Rooting at tail ``n`` turns them into series-reduced rooted trees on
    ``n - 1`` labeled leaves, whose exponential generating function solves
    ``A = x + exp(A) - 1 - A``.  The coefficients are found by fixed-point
    iteration on truncated power series.
    """
    if n < 3:
        return 0
    m = n - 1
    a = [Fraction(0)] * (m + 1)
    a[1] = Fraction(1)
    for _ in range(m):
        e = _exp_series(a, m)
        nxt = [e[k] - a[k] for k in range(m + 1)]
        nxt[0] = Fraction(0)
        nxt[1] += 1
        a = nxt
    return int(a[m] * factorial(m))


def _exp_series(a, m):
    # exp of a series with zero constant term, via e' = a' e
    e = [Fraction(0)] * (m + 1)
    e[0] = Fraction(1)
    for k in range(1, m + 1):
        e[k] = sum(j * a[j] * e[k - j] for j in range(1, k + 1)) / k
    return e


def nontrivial_splits(n: int) -> list[frozenset]:
    """Each split as the block not containing tail 1."""
    rest = range(2, n + 1)
    return [frozenset(c) for size in range(2, n - 1) for c in combinations(rest, size)]


def compatible(a: frozenset, b: frozenset, n: int) -> bool:
    full = frozenset(range(1, n + 1))
    return not (a & b) or a <= b or b <= a or not (full - a - b)


def split_systems(n: int) -> list[frozenset]:
    """All families of pairwise compatible splits; these correspond to stable trees."""
    splits = nontrivial_splits(n)
    out = []

    def extend(chosen, start):
        out.append(frozenset(chosen))
        for i in range(start, len(splits)):
            s = splits[i]
            if all(compatible(s, c, n) for c in chosen):
                chosen.append(s)
                extend(chosen, i + 1)
                chosen.pop()

    extend([], 0)
    return out


def tree_splits(tree: StableTree) -> frozenset:
    """The split of tail labels induced by each edge, as the side without the smallest label."""
    lowest = min(tree.tail_labels)
    out = set()
    for e in tree.edges:
        u, v = tuple(e)
        side = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for y in tree.neighbors(x):
                if y not in side and frozenset((x, y)) != e:
                    side.add(y)
                    stack.append(y)
        labels = frozenset(l for l, w in tree.tails.items() if w in side)
        if lowest in labels:
            labels = tree.tail_labels - labels
        out.add(labels)
    return frozenset(out)
