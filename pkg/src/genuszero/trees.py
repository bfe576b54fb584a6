"""Stable labeled trees, their canonical codes, gluing and contraction morphisms.

A stable tree is the dual graph of a stable genus zero curve: one vertex per
component, one edge per node and one labeled tail per marked point.  Free ends
of tails are not vertices; a tail is simply a ``label -> vertex`` entry.

Vertex identifiers are opaque hashable values.  Tail labels are positive
integers, which gives the total order used to root the canonical encoding.
"""

from __future__ import annotations

import json
import random
from collections.abc import Callable, Hashable, Iterable, Mapping
from dataclasses import dataclass
from types import MappingProxyType

from .errors import (
    CyclicTree,
    DisconnectedTree,
    DuplicateTailLabel,
    MalformedTree,
    MissingTail,
    MorphismError,
    NoSuchEdge,
    NonInjectiveRelabeling,
    OutOfRange,
    SourceTargetMismatch,
    TailContracted,
    TailLabelClash,
    UnstableVertex,
)

__all__ = [
    "StableTree",
    "TreeMorphism",
    "edge",
    "validate",
    "corolla",
    "canonical_code",
    "describe",
    "canonical_form",
    "are_isomorphic",
    "glue",
    "cut",
    "contract_edge",
    "contract_edges",
    "identity_morphism",
    "compose_morphisms",
    "glue_morphisms",
    "relabel_tails",
    "random_tree",
]

CanonicalCode = bytes


def edge(u, v) -> frozenset:
    return frozenset((u, v))


def vertex_sort_key(v):
    """Total order on opaque vertex ids: ints first, then everything by repr."""
    if isinstance(v, int) and not isinstance(v, bool):
        return (0, v, "")
    return (1, 0, repr(v))


def _is_label(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and x >= 1


class StableTree:
    """Immutable stable tree of genus zero.

    Construction validates every invariant (connected, acyclic, stable,
    distinct labels) and raises a :class:`~genuszero.errors.TreeError`
    subclass naming the violated one.

    Equality is equality of the representation, vertex ids included.  Use
    :func:`are_isomorphic` for equality up to tail-preserving isomorphism.
    """

    __slots__ = ("_vertices", "_edges", "_tails", "_adj", "_code")

    def __init__(self, vertices: Iterable[Hashable], edges: Iterable, tails):
        vertices = frozenset(vertices)
        if not vertices:
            raise MalformedTree("a tree needs at least one vertex")
        edge_set = set()
        for e in edges:
            pair = tuple(e)
            if len(pair) != 2:
                raise MalformedTree(f"edge {e!r} does not have two endpoints")
            u, v = pair
            if u == v:
                raise MalformedTree(f"self-loop at vertex {u!r}")
            for x in pair:
                if x not in vertices:
                    raise MalformedTree(f"edge endpoint {x!r} is not a vertex")
            fe = frozenset(pair)
            if fe in edge_set:
                raise MalformedTree(f"duplicate edge {sorted(pair, key=vertex_sort_key)}")
            edge_set.add(fe)

        items = tails.items() if isinstance(tails, Mapping) else tails
        tail_map = {}
        for label, v in items:
            if not _is_label(label):
                raise MalformedTree(f"tail label {label!r} is not a positive integer")
            if label in tail_map:
                raise DuplicateTailLabel(label)
            if v not in vertices:
                raise MalformedTree(f"tail {label} is attached to unknown vertex {v!r}")
            tail_map[label] = v

        self._init(vertices, frozenset(edge_set), tail_map)
        self._check_shape()

    def _init(self, vertices, edges, tail_map):
        self._vertices = vertices
        self._edges = edges
        self._tails = MappingProxyType(dict(sorted(tail_map.items())))
        adj = {v: set() for v in vertices}
        for e in edges:
            u, v = e
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}
        self._code = None

    @classmethod
    def _make(cls, vertices, edges, tail_map):
        # Internal constructor for operations that preserve the invariants.
        obj = object.__new__(cls)
        obj._init(frozenset(vertices), frozenset(edges), tail_map)
        return obj

    def _check_shape(self):
        parent = {v: v for v in self._vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in sorted(self._edges, key=lambda e: sorted(map(vertex_sort_key, e))):
            u, v = e
            ru, rv = find(u), find(v)
            if ru == rv:
                raise CyclicTree(f"edge {sorted(e, key=vertex_sort_key)} closes a cycle")
            parent[ru] = rv
        roots = {find(v) for v in self._vertices}
        if len(roots) > 1:
            raise DisconnectedTree(f"graph has {len(roots)} connected components")
        counts = {v: len(ns) for v, ns in self._adj.items()}
        for v in self._tails.values():
            counts[v] += 1
        for v in sorted(self._vertices, key=vertex_sort_key):
            if counts[v] < 3:
                raise UnstableVertex(v, counts[v])

    # -- accessors ------------------------------------------------------------

    @property
    def vertices(self) -> frozenset:
        return self._vertices

    @property
    def edges(self) -> frozenset:
        return self._edges

    @property
    def tails(self) -> Mapping[int, Hashable]:
        return self._tails

    @property
    def tail_labels(self) -> frozenset:
        return frozenset(self._tails)

    def neighbors(self, v) -> frozenset:
        return self._adj[v]

    def tails_at(self, v) -> list[int]:
        return [label for label, w in self._tails.items() if w == v]

    def valence(self, v) -> int:
        return len(self._adj[v]) + sum(1 for w in self._tails.values() if w == v)

    def is_corolla(self) -> bool:
        return len(self._vertices) == 1

    def __len__(self):
        return len(self._tails)

    def __eq__(self, other):
        if not isinstance(other, StableTree):
            return NotImplemented
        return (
            self._vertices == other._vertices
            and self._edges == other._edges
            and self._tails == other._tails
        )

    def __hash__(self):
        return hash((self._vertices, self._edges, frozenset(self._tails.items())))

    def __repr__(self):
        return f"StableTree{describe(self)}"

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        """Plain-data form ``{"vertices", "edges", "tails"}``; vertex ids kept as is."""
        return {
            "vertices": sorted(self._vertices, key=vertex_sort_key),
            "edges": sorted(
                (sorted(e, key=vertex_sort_key) for e in self._edges),
                key=lambda pair: [vertex_sort_key(x) for x in pair],
            ),
            "tails": {str(label): v for label, v in self._tails.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data) -> StableTree:
        if isinstance(data, _Pairs):
            data = data.as_dict("tree")
        if not isinstance(data, Mapping):
            raise MalformedTree("tree data must be an object")
        for name in ("vertices", "edges", "tails"):
            if name not in data:
                raise MalformedTree(f"missing field {name!r}")
        vertices, edges, tails = data["vertices"], data["edges"], data["tails"]
        if not isinstance(vertices, list):
            raise MalformedTree("field 'vertices' must be a list")
        if not isinstance(edges, list) or not all(isinstance(e, list) for e in edges):
            raise MalformedTree("field 'edges' must be a list of vertex pairs")
        if isinstance(tails, _Pairs):
            pairs = list(tails)
        elif isinstance(tails, Mapping):
            pairs = list(tails.items())
        else:
            raise MalformedTree("field 'tails' must be an object mapping label to vertex")
        converted = []
        for key, v in pairs:
            try:
                label = int(key)
            except (TypeError, ValueError):
                raise MalformedTree(f"field 'tails': label {key!r} is not an integer") from None
            converted.append((label, _hashable(v)))
        return cls(
            [_hashable(v) for v in vertices],
            [[_hashable(x) for x in e] for e in edges],
            converted,
        )

    @classmethod
    def from_json(cls, text: str) -> StableTree:
        try:
            data = json.loads(text, object_pairs_hook=_Pairs)
        except json.JSONDecodeError as exc:
            raise MalformedTree(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)


class _Pairs(list):
    """JSON object kept as its list of pairs so duplicate keys stay visible."""

    def as_dict(self, what):
        out = {}
        for k, v in self:
            if k in out:
                raise MalformedTree(f"duplicate field {k!r} in {what}")
            out[k] = v
        return out


def _hashable(x):
    if isinstance(x, list):
        return tuple(_hashable(y) for y in x)
    if isinstance(x, _Pairs):
        raise MalformedTree("vertex ids must be scalars or lists")
    return x


def validate(data) -> StableTree:
    """Return a :class:`StableTree` built from raw data, or raise a TreeError.

    ``data`` may be a tree, a mapping with ``vertices``, ``edges`` and
    ``tails`` fields, or a JSON string of that mapping.
    """
    if isinstance(data, StableTree):
        return data
    if isinstance(data, str):
        return StableTree.from_json(data)
    return StableTree.from_dict(data)


def corolla(labels: Iterable[int], vertex: Hashable = 0) -> StableTree:
    return StableTree([vertex], [], {label: vertex for label in labels})


# -- canonical encoding -------------------------------------------------------

def _tails_by_vertex(tree):
    at = {}
    for label, v in tree.tails.items():
        at.setdefault(v, []).append(label)
    return at


def _encode(adj, tails_at, v, parent) -> str:
    parts = [str(label) for label in tails_at.get(v, ())]
    parts.sort(key=int)
    kids = [_encode(adj, tails_at, u, v) for u in adj[v] if u != parent]
    kids.sort()
    return "(" + " ".join(parts + kids) + ")"


def _encode_ordered(adj, tails_at, v, parent):
    kids = sorted(
        (_encode_ordered(adj, tails_at, u, v) for u in adj[v] if u != parent),
        key=lambda pair: pair[0],
    )
    parts = [str(label) for label in sorted(tails_at.get(v, ()))]
    text = "(" + " ".join(parts + [k[0] for k in kids]) + ")"
    order = [v]
    for _, sub in kids:
        order.extend(sub)
    return text, order


def _root(tree):
    return tree.tails[min(tree.tails)]


def describe(tree: StableTree) -> str:
    """Nested-parenthesis description, rooted at the vertex of the smallest tail.

    Each vertex prints as ``(tails... children...)`` with its tail labels in
    increasing order followed by the child descriptions in sorted order, so
    ``12|34`` reads ``(1 2 (3 4))``.
    """
    if tree._code is None:
        tree._code = _encode(tree._adj, _tails_by_vertex(tree), _root(tree), None).encode("ascii")
    return tree._code.decode("ascii")


def canonical_code(tree: StableTree) -> CanonicalCode:
    """Bytes identifying ``tree`` up to isomorphism fixing every tail label."""
    describe(tree)
    return tree._code


def canonical_form(tree: StableTree) -> StableTree:
    """Isomorphic copy with vertices renumbered ``0..k-1`` in canonical preorder."""
    _, order = _encode_ordered(tree._adj, _tails_by_vertex(tree), _root(tree), None)
    index = {v: i for i, v in enumerate(order)}
    return StableTree._make(
        range(len(order)),
        [frozenset(index[x] for x in e) for e in tree.edges],
        {label: index[v] for label, v in tree.tails.items()},
    )


def are_isomorphic(t1: StableTree, t2: StableTree) -> bool:
    return canonical_code(t1) == canonical_code(t2)


# -- gluing -------------------------------------------------------------------

def _renamers(t1, t2):
    if t1.vertices.isdisjoint(t2.vertices):
        return (lambda v: v), (lambda v: v)
    return (lambda v: (0, v)), (lambda v: (1, v))


def _glue(t1, tail1, t2, tail2):
    if tail1 not in t1.tails:
        raise MissingTail(f"tail {tail1} is not a tail of the first tree")
    if tail2 not in t2.tails:
        raise MissingTail(f"tail {tail2} is not a tail of the second tree")
    clash = (t1.tail_labels - {tail1}) & (t2.tail_labels - {tail2})
    if clash:
        raise TailLabelClash(f"remaining tail labels overlap: {sorted(clash)}")
    r1, r2 = _renamers(t1, t2)
    new_edge = edge(r1(t1.tails[tail1]), r2(t2.tails[tail2]))
    vertices = [r1(v) for v in t1.vertices] + [r2(v) for v in t2.vertices]
    edges = [frozenset(map(r1, e)) for e in t1.edges]
    edges += [frozenset(map(r2, e)) for e in t2.edges]
    edges.append(new_edge)
    tails = {label: r1(v) for label, v in t1.tails.items() if label != tail1}
    tails.update((label, r2(v)) for label, v in t2.tails.items() if label != tail2)
    return StableTree._make(vertices, edges, tails), r1, r2, new_edge


def glue(t1: StableTree, tail1: int, t2: StableTree, tail2: int) -> StableTree:
    """Graft ``t1`` and ``t2`` by fusing ``tail1`` and ``tail2`` into a new edge.

    Vertex ids are kept when the two vertex sets are disjoint; otherwise the
    vertices of ``t1`` become ``(0, v)`` and those of ``t2`` become ``(1, v)``.
    Overlapping residual tail labels raise :class:`TailLabelClash`; relabel
    one side first.
    """
    return _glue(t1, tail1, t2, tail2)[0]


def _component(tree, start, removed):
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in tree.neighbors(v):
            if u not in seen and edge(u, v) != removed:
                seen.add(u)
                stack.append(u)
    return seen


def cut(tree: StableTree, e, label_a: int, label_b: int) -> tuple[StableTree, StableTree]:
    """Inverse of :func:`glue`: remove edge ``e`` and put new tails on its ends.

    For ``e = {a, b}`` (in vertex-sort order) the first returned tree contains
    ``a`` and gets tail ``label_a``; the second contains ``b`` and gets ``label_b``.
    """
    e = frozenset(e)
    if e not in tree.edges:
        raise NoSuchEdge(f"{sorted(e, key=vertex_sort_key)} is not an edge")
    a, b = sorted(e, key=vertex_sort_key)
    out = []
    for end, label in ((a, label_a), (b, label_b)):
        side = _component(tree, end, e)
        tails = {l: v for l, v in tree.tails.items() if v in side}
        if label in tails:
            raise TailLabelClash(f"label {label} already used on the cut component")
        tails[label] = end
        out.append(StableTree._make(side, [x for x in tree.edges if x <= side], tails))
    return out[0], out[1]


# -- morphisms ----------------------------------------------------------------

@dataclass(frozen=True)
class TreeMorphism:
    """Morphism ``source -> target`` of stable trees.

    ``vertex_map`` acts covariantly and surjectively on vertices;
    ``edge_section`` (target edges to source edges) and ``tail_section``
    (target labels to source labels) act contravariantly and injectively.
    Source edges outside the image of ``edge_section`` are contracted.
    """

    source: StableTree
    target: StableTree
    vertex_map: Mapping
    edge_section: Mapping
    tail_section: Mapping

    def __post_init__(self):
        for name in ("vertex_map", "edge_section", "tail_section"):
            object.__setattr__(self, name, MappingProxyType(dict(getattr(self, name))))
        self._check()

    def _check(self):
        src, tgt, vm = self.source, self.target, self.vertex_map
        if set(vm) != src.vertices:
            raise MorphismError("vertex_map must be defined on every source vertex")
        if set(vm.values()) != tgt.vertices:
            raise MorphismError("vertex_map must be onto the target vertices")

        es = self.edge_section
        if set(es) != tgt.edges:
            raise MorphismError("edge_section must be defined on every target edge")
        if len(set(es.values())) != len(es) or not set(es.values()) <= src.edges:
            raise MorphismError("edge_section must be an injection into source edges")
        for e_t, e_s in es.items():
            if frozenset(vm[x] for x in e_s) != e_t:
                raise MorphismError(f"edge_section is incompatible with vertex_map at {set(e_t)}")
        for e in src.edges - set(es.values()):
            u, v = e
            if vm[u] != vm[v]:
                raise MorphismError(f"source edge {set(e)} is neither kept nor contracted")

        ts = self.tail_section
        if set(ts) != tgt.tail_labels:
            raise MorphismError("tail_section must be defined on every target tail")
        if len(set(ts.values())) != len(ts) or not set(ts.values()) <= src.tail_labels:
            raise MorphismError("tail_section must be an injection into source tails")
        for label, s in ts.items():
            if vm[src.tails[s]] != tgt.tails[label]:
                raise MorphismError(f"tail {label} is attached incompatibly with vertex_map")

    @property
    def contracted_edges(self) -> frozenset:
        return self.source.edges - frozenset(self.edge_section.values())


def identity_morphism(tree: StableTree) -> TreeMorphism:
    return TreeMorphism(
        tree,
        tree,
        {v: v for v in tree.vertices},
        {e: e for e in tree.edges},
        {label: label for label in tree.tails},
    )


def contract_edges(tree: StableTree, edges: Iterable) -> tuple[StableTree, TreeMorphism]:
    """Contract a set of edges at once.

    Each block of merged vertices is represented by its smallest vertex id
    (in :func:`vertex_sort_key` order), so iterated single contractions and a
    direct multi-edge contraction produce identical trees and morphisms.
    """
    edges = {frozenset(e) for e in edges}
    for e in edges:
        if e not in tree.edges:
            raise NoSuchEdge(f"{sorted(e, key=vertex_sort_key)} is not an edge")
    parent = {v: v for v in tree.vertices}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for e in edges:
        u, v = sorted(map(find, e), key=vertex_sort_key)
        parent[v] = u
    rep = {v: find(v) for v in tree.vertices}

    kept = {frozenset(rep[x] for x in e): e for e in tree.edges - edges}
    result = StableTree._make(
        set(rep.values()),
        kept,
        {label: rep[v] for label, v in tree.tails.items()},
    )
    morphism = TreeMorphism(tree, result, rep, kept, {label: label for label in tree.tails})
    return result, morphism


def contract_edge(tree: StableTree, e) -> tuple[StableTree, TreeMorphism]:
    e = frozenset(e)
    if e not in tree.edges:
        raise NoSuchEdge(f"{sorted(e, key=vertex_sort_key)} is not an edge")
    return contract_edges(tree, [e])


def compose_morphisms(f: TreeMorphism, g: TreeMorphism) -> TreeMorphism:
    """``f`` then ``g``: vertex maps compose forwards, sections backwards."""
    if f.target != g.source:
        raise SourceTargetMismatch("target of the first morphism is not the source of the second")
    return TreeMorphism(
        f.source,
        g.target,
        {v: g.vertex_map[w] for v, w in f.vertex_map.items()},
        {e: f.edge_section[m] for e, m in g.edge_section.items()},
        {label: f.tail_section[m] for label, m in g.tail_section.items()},
    )


def _surviving(f, tail):
    if tail not in f.source.tails:
        raise MissingTail(f"tail {tail} is not a tail of the source tree")
    for label, s in f.tail_section.items():
        if s == tail:
            return label
    raise TailContracted(f"tail {tail} is contracted by the morphism")


def glue_morphisms(f1: TreeMorphism, tail1: int, f2: TreeMorphism, tail2: int) -> TreeMorphism:
    """The morphism ``f1 * f2`` between glued sources and glued targets."""
    s1, s2 = _surviving(f1, tail1), _surviving(f2, tail2)
    src, r1, r2, new_src = _glue(f1.source, tail1, f2.source, tail2)
    tgt, q1, q2, new_tgt = _glue(f1.target, s1, f2.target, s2)

    vertex_map = {r1(v): q1(w) for v, w in f1.vertex_map.items()}
    vertex_map.update((r2(v), q2(w)) for v, w in f2.vertex_map.items())
    edge_section = {
        frozenset(map(q1, e)): frozenset(map(r1, m)) for e, m in f1.edge_section.items()
    }
    edge_section.update(
        (frozenset(map(q2, e)), frozenset(map(r2, m))) for e, m in f2.edge_section.items()
    )
    edge_section[new_tgt] = new_src
    tail_section = {l: s for l, s in f1.tail_section.items() if l != s1}
    tail_section.update((l, s) for l, s in f2.tail_section.items() if l != s2)
    return TreeMorphism(src, tgt, vertex_map, edge_section, tail_section)


# -- relabeling and sampling --------------------------------------------------

def relabel_tails(tree: StableTree, perm: Mapping[int, int] | Callable[[int], int]) -> StableTree:
    """Rename every tail ``l`` to ``perm(l)``; labels missing from a mapping stay fixed."""
    if isinstance(perm, Mapping):
        image = {label: perm.get(label, label) for label in tree.tails}
    else:
        image = {label: perm(label) for label in tree.tails}
    if len(set(image.values())) != len(image):
        raise NonInjectiveRelabeling("relabeling identifies two tails")
    for label in image.values():
        if not _is_label(label):
            raise NonInjectiveRelabeling(f"relabeling produced invalid label {label!r}")
    return StableTree._make(
        tree.vertices, tree.edges, {image[label]: v for label, v in tree.tails.items()}
    )


def random_tree(labels: Iterable[int], rng: random.Random, contract_prob: float = 0.5) -> StableTree:
    """Random stable tree on ``labels``.

    A trivalent tree is grown by attaching each new tail to a uniformly chosen
    edge or tail, then every edge is contracted independently with
    probability ``contract_prob``.
    """
    labels = list(labels)
    if len(labels) < 3:
        raise OutOfRange("a stable tree needs at least 3 tails")
    rng.shuffle(labels)
    edges = []
    tails = {labels[0]: 0, labels[1]: 0, labels[2]: 0}
    nxt = 1
    for label in labels[3:]:
        slots = [("e", e) for e in edges] + [("t", t) for t in sorted(tails)]
        kind, item = rng.choice(slots)
        w = nxt
        nxt += 1
        if kind == "e":
            edges.remove(item)
            a, b = item
            edges += [(a, w), (w, b)]
        else:
            edges.append((tails[item], w))
            tails[item] = w
        tails[label] = w
    tree = StableTree(range(nxt), edges, tails)
    chosen = [e for e in sorted(tree.edges, key=lambda e: sorted(e)) if rng.random() < contract_prob]
    if chosen:
        tree = contract_edges(tree, chosen)[0]
    return tree
