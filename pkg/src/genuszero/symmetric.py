"""Cofinite maps of the positive integers, the group S_inf and its actions.

Composition is read left to right throughout: ``f * g`` and
``compose_cf(f, g)`` mean "apply ``f``, then ``g``".  With this convention
``act_on_tree(f * g, t) == act_on_tree(g, act_on_tree(f, t))``.

The second half of the module models the category whose objects are the
finite sets ``{1..n}`` and whose morphisms are injections, checks that it is a
poset in groupoids, and collapses such categories to thin ones.
"""

from __future__ import annotations

import re
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from itertools import permutations

from .errors import GenusZeroError, NotBijective, NotPosetInGroupoids, OutOfRange
from .report import Report
from .trees import StableTree, are_isomorphic, glue, relabel_tails

__all__ = [
    "CfMap",
    "FinPermutation",
    "compose_cf",
    "invert",
    "minimal_degree",
    "swap",
    "cycle",
    "parse_cycles",
    "act_on_tree",
    "NcfObject",
    "NcfMorphism",
    "hom_membership",
    "hom_set",
    "factor_injection",
    "ncf_category",
    "verify_poset_in_groupoids",
    "ThinCategory",
    "Arrow",
    "thin_collapse",
    "equivariance_check",
]

MAX_HOM_N = 9


class CfMap:
    """Self-map of {1, 2, ...} that is the identity outside a finite set.

    Only the points that move are stored, so equality and hashing compare the
    normalized support.
    """

    __slots__ = ("_support",)

    def __init__(self, mapping: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        support = {}
        for x, y in items:
            for v in (x, y):
                if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                    raise GenusZeroError(f"cf-maps act on positive integers, got {v!r}")
            if x != y:
                support[x] = y
        self._support = dict(sorted(support.items()))

    @property
    def support(self) -> dict[int, int]:
        return dict(self._support)

    def __call__(self, x: int) -> int:
        return self._support.get(x, x)

    def __mul__(self, other: CfMap) -> CfMap:
        return compose_cf(self, other)

    def __eq__(self, other):
        if not isinstance(other, CfMap):
            return NotImplemented
        return self._support == other._support

    def __hash__(self):
        return hash(frozenset(self._support.items()))

    def is_identity(self) -> bool:
        return not self._support

    def is_bijective(self) -> bool:
        keys = set(self._support)
        values = list(self._support.values())
        return set(values) == keys and len(values) == len(keys)

    def __repr__(self):
        if self.is_bijective():
            return f"FinPermutation('{_cycle_text(self._support)}')"
        return f"CfMap({self._support})"


class FinPermutation(CfMap):
    """Bijective cf-map, i.e. an element of S_inf."""

    __slots__ = ()

    def __init__(self, mapping=()):
        super().__init__(mapping)
        if not self.is_bijective():
            raise NotBijective(f"{self._support} is not a bijection")

    @classmethod
    def identity(cls) -> FinPermutation:
        return cls()

    def cycles(self) -> list[tuple[int, ...]]:
        return _cycles(self._support)

    def __str__(self):
        return _cycle_text(self._support)


def _cycles(support):
    seen = set()
    out = []
    for start in support:
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        x = support[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = support[x]
        out.append(tuple(cyc))
    return out


def _cycle_text(support):
    cycs = _cycles(support)
    if not cycs:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)


def _wrap(support):
    f = CfMap(support)
    return FinPermutation(f._support) if f.is_bijective() else f


def compose_cf(f: CfMap, g: CfMap) -> CfMap:
    """``f`` then ``g``.  The result is a :class:`FinPermutation` when bijective."""
    points = set(f._support) | set(g._support)
    return _wrap({x: g(f(x)) for x in points})


def invert(p: CfMap) -> FinPermutation:
    if not p.is_bijective():
        raise NotBijective(f"{p!r} has no inverse")
    return FinPermutation({y: x for x, y in p._support.items()})


def minimal_degree(p: CfMap) -> int:
    """Smallest ``n`` such that ``p`` fixes every point above ``n`` (0 for the identity)."""
    return max(p._support, default=0)


def swap(i: int, j: int) -> FinPermutation:
    return FinPermutation({i: j, j: i})


def cycle(*points: int) -> FinPermutation:
    if len(set(points)) != len(points):
        raise GenusZeroError("cycle entries must be distinct")
    return FinPermutation({x: points[(k + 1) % len(points)] for k, x in enumerate(points)})


_CYCLE_RE = re.compile(r"\(\s*([0-9 ,]*?)\s*\)")


def parse_cycles(text: str) -> FinPermutation:
    """Parse cycle notation such as ``"(1 2)(3 7 5)"``; ``"()"`` is the identity.

    Cycles are multiplied left to right, consistent with :func:`compose_cf`.
    """
    stripped = text.strip()
    result = FinPermutation()
    pos = 0
    if not stripped:
        raise GenusZeroError("empty permutation text; use '()' for the identity")
    for m in _CYCLE_RE.finditer(stripped):
        if stripped[pos : m.start()].strip():
            raise GenusZeroError(f"cannot parse permutation {text!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        if body:
            try:
                result = compose_cf(result, cycle(*map(int, body)))
            except GenusZeroError as exc:
                raise GenusZeroError(f"cannot parse permutation {text!r}: {exc}") from None
    if stripped[pos:].strip():
        raise GenusZeroError(f"cannot parse permutation {text!r}")
    return result


def act_on_tree(p: FinPermutation, tree: StableTree) -> StableTree:
    """Relabel every tail ``i`` as ``p(i)``."""
    return relabel_tails(tree, p)


# -- the category of finite sets {1..n} with injections ------------------------

@dataclass(frozen=True, order=True)
class NcfObject:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise OutOfRange(f"object size must be >= 1, got {self.n!r}")


@dataclass(frozen=True, order=True)
class NcfMorphism:
    """Injection ``{1..source} -> {1..target}``; ``images[i - 1]`` is the image of ``i``."""

    source: int
    target: int
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.source:
            raise GenusZeroError("images must list one value per source point")
        if not hom_membership(self.source, self.target, self.images):
            raise GenusZeroError(f"{self.images} is not an injection into 1..{self.target}")

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def then(self, other: NcfMorphism) -> NcfMorphism:
        if self.target != other.source:
            raise GenusZeroError("morphisms are not composable")
        # composites of injections are injections; skip re-validation
        out = object.__new__(NcfMorphism)
        object.__setattr__(out, "source", self.source)
        object.__setattr__(out, "target", other.target)
        object.__setattr__(out, "images", tuple(other.images[y - 1] for y in self.images))
        return out

    @classmethod
    def identity(cls, n: int) -> NcfMorphism:
        return cls(n, n, tuple(range(1, n + 1)))

    @classmethod
    def embedding(cls, m: int, n: int) -> NcfMorphism:
        return cls(m, n, tuple(range(1, m + 1)))


def _size(x):
    return x.n if isinstance(x, NcfObject) else x


def hom_membership(m, n, f: Callable[[int], int] | Sequence[int] | Mapping[int, int]) -> bool:
    """Whether ``f`` on ``{1..m}`` is a morphism ``m -> n``, i.e. an injection into ``{1..n}``.

    ``f`` may be a callable, a mapping, or a sequence listing the images of
    ``1..m`` in order.
    """
    m, n = _size(m), _size(n)
    if isinstance(f, Mapping):
        get = f.get
    elif isinstance(f, Sequence):
        if len(f) != m:
            return False
        get = lambda i: f[i - 1]  # noqa: E731
    else:
        get = f
    values = [get(i) for i in range(1, m + 1)]
    if any(not isinstance(v, int) or not 1 <= v <= n for v in values):
        return False
    return len(set(values)) == m


def hom_set(m, n) -> frozenset[NcfMorphism]:
    """All injections ``{1..m} -> {1..n}``; enumeration is limited to ``n <= 9``."""
    m, n = _size(m), _size(n)
    if n > MAX_HOM_N:
        raise OutOfRange(f"hom-set enumeration is limited to n <= {MAX_HOM_N}")
    if m > n:
        return frozenset()
    return frozenset(NcfMorphism(m, n, imgs) for imgs in permutations(range(1, n + 1), m))


def factor_injection(f: NcfMorphism) -> tuple[FinPermutation, FinPermutation]:
    """Write ``f`` as permutation of ``m``, then standard embedding, then permutation of ``n``.

    Returns ``(pre, post)``; ``pre`` is the identity and ``post`` sends ``i`` to
    ``f(i)`` for ``i <= m`` and the remaining points of ``{m+1..n}`` to the
    unused values in increasing order.
    """
    unused = sorted(set(range(1, f.target + 1)) - set(f.images))
    post = {i: f(i) for i in range(1, f.source + 1)}
    post.update(zip(range(f.source + 1, f.target + 1), unused))
    return FinPermutation(), FinPermutation(post)


def ncf_category(sizes: Iterable[int]):
    """Objects and complete hom-sets of the injection category on the given sizes."""
    objects = [NcfObject(k) for k in sorted(set(sizes))]
    homs = {(x, y): hom_set(x, y) for x in objects for y in objects}
    return objects, homs


def _then(f, g):
    return f.then(g)


def _identity_in(endos, compose):
    for e in sorted(endos, key=repr):
        if all(compose(e, h) == h and compose(h, e) == h for h in endos):
            return e
    return None


def _is_unit(f, e, compose, bound):
    # in a finite monoid f is invertible iff some power of f is the identity
    power = f
    for _ in range(bound):
        if power == e:
            return True
        power = compose(power, f)
    return False


def verify_poset_in_groupoids(objects, homs=None, compose=_then) -> Report:
    """Check both axioms of a poset in groupoids on finite category data.

    ``homs`` maps every ordered pair of objects to its hom-set; when omitted
    the objects must be :class:`NcfObject` and the injection hom-sets are
    used.  (a) morphisms between isomorphic objects are invertible;
    (b) each nonempty hom-set between non-isomorphic objects is one orbit
    under pre- and postcomposition with automorphisms.
    """
    objects = list(objects)
    if homs is None:
        objects, homs = ncf_category(_size(x) for x in objects)
    homs = {k: frozenset(v) for k, v in homs.items()}

    ident = {}
    for x in objects:
        e = _identity_in(homs[(x, x)], compose)
        if e is None:
            return Report(False, f"no identity morphism on {x}", x)
        ident[x] = e

    def inverse(f, x, y):
        for g in homs[(y, x)]:
            if compose(f, g) == ident[x] and compose(g, f) == ident[y]:
                return g
        return None

    def isomorphic(x, y):
        if x == y:
            return True
        return any(inverse(f, x, y) is not None for f in homs[(x, y)]) if homs[(y, x)] else False

    iso = {(x, y): isomorphic(x, y) for x in objects for y in objects}
    aut = {}
    for x in objects:
        endos = homs[(x, x)]
        for f in sorted(endos, key=repr):
            if not _is_unit(f, ident[x], compose, len(endos)):
                return Report(False, f"non-invertible endomorphism of {x}", f)
        aut[x] = endos
    for x in objects:
        for y in objects:
            if x != y and iso[(x, y)]:
                for f in sorted(homs[(x, y)], key=repr):
                    if inverse(f, x, y) is None:
                        return Report(False, f"non-invertible morphism between isomorphic {x}, {y}", f)

    checked = 0
    for x in objects:
        for y in objects:
            hom = homs[(x, y)]
            if iso[(x, y)] or not hom:
                continue
            seed = min(hom, key=repr)
            left = {compose(a, seed) for a in aut[x]}
            orbit = {compose(l, b) for l in left for b in aut[y]}
            checked += 1
            if orbit != hom:
                odd = sorted(orbit ^ hom, key=repr)[0]
                return Report(False, f"Hom({x}, {y}) is not a single orbit", (x, y, odd))
    return Report(True, f"poset in groupoids: {len(objects)} objects, {checked} orbit checks")


@dataclass(frozen=True)
class Arrow:
    """The unique morphism ``source -> target`` of a thin category."""

    source: object
    target: object

    def then(self, other: Arrow) -> Arrow:
        if self.target != other.source:
            raise GenusZeroError("arrows are not composable")
        return Arrow(self.source, other.target)


@dataclass(frozen=True)
class ThinCategory:
    objects: tuple
    arrows: frozenset

    def hom(self, x, y) -> frozenset:
        a = Arrow(x, y)
        return frozenset([a]) if a in self.arrows else frozenset()

    def homs(self) -> dict:
        return {(x, y): self.hom(x, y) for x in self.objects for y in self.objects}

    def leq(self, x, y) -> bool:
        return Arrow(x, y) in self.arrows

    def check_axioms(self) -> Report:
        for a in self.arrows:
            if a.source != a.target and Arrow(a.target, a.source) in self.arrows:
                return Report(False, "two-way arrows between distinct objects", a)
        for a in self.arrows:
            for b in self.arrows:
                if a.target == b.source and a.then(b) not in self.arrows:
                    return Report(False, "arrows are not closed under composition", (a, b))
        return Report(True, "thin category")


def thin_collapse(objects, homs=None, compose=_then) -> ThinCategory:
    """Identify all morphisms in each nonempty hom-set.

    Raises :class:`NotPosetInGroupoids` if the input fails the axioms.
    """
    objects = list(objects)
    if homs is None:
        objects, homs = ncf_category(_size(x) for x in objects)
    report = verify_poset_in_groupoids(objects, homs, compose)
    if not report:
        raise NotPosetInGroupoids(report.message)
    arrows = frozenset(Arrow(x, y) for (x, y), hom in homs.items() if hom)
    return ThinCategory(tuple(objects), arrows)


def equivariance_check(p: FinPermutation, t1: StableTree, tail1: int, t2: StableTree, tail2: int) -> bool:
    """Whether relabeling by ``p`` commutes with gluing at ``tail1`` and ``tail2``."""
    if p(tail1) != tail1 or p(tail2) != tail2:
        raise GenusZeroError("the permutation must fix both grafting tails")
    before = act_on_tree(p, glue(t1, tail1, t2, tail2))
    after = glue(act_on_tree(p, t1), tail1, act_on_tree(p, t2), tail2)
    return are_isomorphic(before, after)
