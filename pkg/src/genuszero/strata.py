"""Boundary strata of the moduli spaces of stable genus zero curves.

Strata of the n-pointed space are indexed by stable trees with tails
``{1..n}``; a stratum lies in the closure of another exactly when the second
tree is a contraction of the first.  The codimension of a stratum is the edge
count of its tree, and the open stratum is the corolla.

Two relations live here and are kept apart on purpose: the contraction order
(:class:`StratumPoset`) and the grafting relation :func:`operadic_less`.
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import combinations

from .errors import OutOfRange, TailLabelClash
from .trees import (
    StableTree,
    _encode,
    are_isomorphic,
    canonical_code,
    canonical_form,
    contract_edge,
    corolla,
    cut,
    describe,
    glue,
    relabel_tails,
)

__all__ = [
    "DEFAULT_MAX_N",
    "StratumPoset",
    "enumerate_trees",
    "build_poset",
    "codim_profile",
    "operadic_less",
    "operadic_compose",
    "export_dot",
    "export_json",
]

DEFAULT_MAX_N = 12


def _check_n(n, max_n):
    if not isinstance(n, int) or n < 3:
        raise OutOfRange(f"n must be an integer >= 3, got {n!r}")
    if n > max_n:
        raise OutOfRange(f"n = {n} exceeds the enumeration bound {max_n}")


def _splits(flags):
    """Unordered splittings of ``flags`` into two blocks of size >= 2.

    The first flag always stays in the complement, so each unordered pair of
    blocks is produced once.
    """
    rest = flags[1:]
    for size in range(2, len(flags) - 1):
        for moved in combinations(rest, size):
            yield moved


def enumerate_trees(n: int, max_n: int = DEFAULT_MAX_N) -> tuple[StableTree, ...]:
    """One tree per isomorphism class of stable trees with tails ``{1..n}``.

    Starts from the corolla and repeatedly splits the flags at a vertex into
    two blocks of size at least two joined by a new edge, deduplicating each
    layer by canonical code.  Trees are returned in canonical vertex form,
    ordered by edge count and then by code.
    """
    _check_n(n, max_n)
    layer = {canonical_code(t): t for t in [corolla(range(1, n + 1))]}
    out = list(layer.values())
    while layer:
        nxt = {}
        for tree in layer.values():
            new_v = len(tree.vertices)
            adj = {v: set(tree.neighbors(v)) for v in tree.vertices}
            tails_at = {v: tree.tails_at(v) for v in tree.vertices}
            for v in sorted(tree.vertices):
                flags = [("t", l) for l in tails_at[v]] + [("e", u) for u in sorted(adj[v])]
                if len(flags) < 4:
                    continue
                for moved in _splits(flags):
                    code, new_adj, new_tails = _split_vertex(adj, tails_at, v, new_v, moved)
                    if code in nxt:
                        continue
                    edges = {frozenset((a, b)) for a, ns in new_adj.items() for b in ns}
                    tails = {l: w for w, ls in new_tails.items() for l in ls}
                    nxt[code] = canonical_form(StableTree._make(new_adj, edges, tails))
        layer = {code: nxt[code] for code in sorted(nxt)}
        out.extend(layer.values())
    return tuple(out)


def _split_vertex(adj, tails_at, v, w, moved):
    new_adj = {x: set(ns) for x, ns in adj.items()}
    new_tails = {x: list(ls) for x, ls in tails_at.items()}
    new_adj[w] = {v}
    new_adj[v].add(w)
    new_tails[w] = []
    for kind, item in moved:
        if kind == "t":
            new_tails[v].remove(item)
            new_tails[w].append(item)
        else:
            new_adj[v].discard(item)
            new_adj[item].discard(v)
            new_adj[item].add(w)
            new_adj[w].add(item)
    root = next(x for x, ls in new_tails.items() if 1 in ls)
    code = _encode(new_adj, new_tails, root, None).encode("ascii")
    return code, new_adj, new_tails


@dataclass(frozen=True)
class StratumPoset:
    """Strata of the n-pointed space ordered by contraction.

    ``covers`` holds pairs ``(lower, upper)`` of canonical codes where
    ``upper`` is obtained from ``lower`` by contracting one edge; the open
    stratum (corolla) is the unique maximum.
    """

    n: int
    trees: dict = field(repr=False)
    covers: frozenset = field(repr=False)

    @property
    def nodes(self) -> tuple[bytes, ...]:
        return tuple(sorted(self.trees))

    @property
    def top(self) -> bytes:
        return canonical_code(corolla(range(1, self.n + 1)))

    def codim(self, code: bytes) -> int:
        return len(self.trees[code].edges)

    def upper_covers(self, code: bytes) -> frozenset:
        return self._up.get(code, frozenset())

    def lower_covers(self, code: bytes) -> frozenset:
        return self._down.get(code, frozenset())

    def __post_init__(self):
        up, down = {}, {}
        for lo, hi in self.covers:
            up.setdefault(lo, set()).add(hi)
            down.setdefault(hi, set()).add(lo)
        object.__setattr__(self, "_up", {k: frozenset(v) for k, v in up.items()})
        object.__setattr__(self, "_down", {k: frozenset(v) for k, v in down.items()})
        object.__setattr__(self, "_upsets", {})

    def upset(self, code: bytes) -> frozenset:
        """All nodes ``>= code`` (reflexive-transitive closure of the covers)."""
        cache = self._upsets
        if code not in cache:
            for c in sorted(self.trees, key=self.codim):
                if c in cache:
                    continue
                acc = {c}
                for hi in self.upper_covers(c):
                    acc |= cache[hi]
                cache[c] = frozenset(acc)
        return cache[code]

    def leq(self, a: bytes, b: bytes) -> bool:
        return b in self.upset(a)

    def maximal_chains(self):
        """Yield every maximal chain, listed from a minimal node up to the top."""
        minimal = [c for c in self.nodes if not self.lower_covers(c)]
        stack = [[c] for c in reversed(minimal)]
        while stack:
            chain = stack.pop()
            ups = sorted(self.upper_covers(chain[-1]))
            if not ups:
                yield tuple(chain)
            for hi in reversed(ups):
                stack.append(chain + [hi])


def build_poset(n: int, max_n: int = DEFAULT_MAX_N) -> StratumPoset:
    """Enumerate the strata for ``n`` tails and their single-edge contraction covers."""
    trees = {canonical_code(t): t for t in enumerate_trees(n, max_n)}
    covers = set()
    for code, tree in trees.items():
        for e in tree.edges:
            upper, _ = contract_edge(tree, e)
            covers.add((code, canonical_code(upper)))
    return StratumPoset(n, trees, frozenset(covers))


def codim_profile(poset: StratumPoset) -> tuple[int, ...]:
    """Number of strata in each codimension ``0..n-3``."""
    counts = [0] * (poset.n - 2)
    for code in poset.trees:
        counts[poset.codim(code)] += 1
    return tuple(counts)


def operadic_less(pi: StableTree, tau: StableTree) -> bool:
    """Whether ``pi`` is a grafting ``(sigma, t1) * (tau, t2)``.

    Cutting an edge of ``pi`` leaves two components; the relation holds when
    one of them, with the cut edge turned into the single tail label of
    ``tau`` that it lacks, is isomorphic to ``tau``.
    """
    target = tau.tail_labels
    for e in pi.edges:
        # 0 is never a tail label, so it marks the cut end unambiguously.
        for part in cut(pi, e, 0, 0):
            missing = target - part.tail_labels
            extra = part.tail_labels - target
            if len(missing) == 1 and extra == {0}:
                (t2,) = missing
                if are_isomorphic(relabel_tails(part, {0: t2}), tau):
                    return True
    return False


def operadic_compose(target: StableTree, inputs: Sequence[tuple[int, StableTree, int]]) -> StableTree:
    """Graft each ``(target_tail, tree, tree_tail)`` onto ``target`` in turn."""
    named = [t for t, _, _ in inputs]
    if len(set(named)) != len(named):
        raise TailLabelClash("target tails named in the inputs must be distinct")
    result = target
    for target_tail, tree, tree_tail in inputs:
        result = glue(result, target_tail, tree, tree_tail)
    return result


def export_dot(poset: StratumPoset) -> str:
    """Graphviz digraph of the cover relation, arcs pointing from lower to upper."""
    nodes = poset.nodes
    index = {c: i for i, c in enumerate(nodes)}
    lines = [f"digraph strata_{poset.n} {{", "  rankdir=BT;"]
    for i, c in enumerate(nodes):
        lines.append(f'  s{i} [label="{describe(poset.trees[c])}"];')
    for lo, hi in sorted(poset.covers, key=lambda p: (index[p[0]], index[p[1]])):
        lines.append(f"  s{index[lo]} -> s{index[hi]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(poset: StratumPoset) -> str:
    nodes = poset.nodes
    index = {c: i for i, c in enumerate(nodes)}
    covers = sorted([index[lo], index[hi]] for lo, hi in poset.covers)
    return json.dumps({"n": poset.n, "nodes": [c.hex() for c in nodes], "covers": covers})
