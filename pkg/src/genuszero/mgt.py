"""The residue tower Z/qZ and the permutation groups mGT_q.

``mGT_q`` is the group of permutations of ``Z/qZ = {0, .., q-1}`` generated by
the unit multiplications ``x -> d*x`` and the involution ``theta_q: x -> 1 - x``.
For ``p | q`` reduction mod ``p`` induces homomorphisms ``u_qp: mGT_q -> mGT_p``;
their projective limit is represented by finite truncations
(:class:`CoherentFamily`).

Elements are stored as full image tables, and composition reads left to
right: ``e1 * e2`` applies ``e1`` first.
"""

from __future__ import annotations

import json
import random
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .errors import (
    DoesNotDescend,
    GenusZeroError,
    InvalidFamily,
    LevelMismatch,
    ModulusMismatch,
    NotADivisor,
    OutOfRange,
)
from .report import Report

__all__ = [
    "DEFAULT_MAX_Q",
    "Residue",
    "MgtElement",
    "AffineMap",
    "LevelPoset",
    "CoherentFamily",
    "t_qp",
    "units",
    "totient",
    "generators",
    "closure",
    "affine_group",
    "is_multiplication",
    "compose",
    "u_qp",
    "kernel",
    "image",
    "validate_family",
    "family_compose",
    "family_inverse",
    "identity_family",
    "random_family",
    "extend_family",
    "root_of_unity_angle",
]

DEFAULT_MAX_Q = 200


def _check_divisor(q, p):
    if p < 1 or q % p:
        raise NotADivisor(f"{p} does not divide {q}")


@dataclass(frozen=True)
class Residue:
    value: int
    q: int

    def __post_init__(self):
        if self.q < 1 or not 0 <= self.value < self.q:
            raise GenusZeroError(f"{self.value} is not a residue mod {self.q}")

    @classmethod
    def of(cls, a: int, q: int) -> Residue:
        return cls(a % q, q)

    def _same(self, other):
        if other.q != self.q:
            raise ModulusMismatch(f"moduli {self.q} and {other.q} differ")

    def __add__(self, other):
        self._same(other)
        return Residue((self.value + other.value) % self.q, self.q)

    def __mul__(self, other):
        self._same(other)
        return Residue((self.value * other.value) % self.q, self.q)


def t_qp(a: Residue, p: int) -> Residue:
    """Reduction ``Z/qZ -> Z/pZ`` for ``p | q``."""
    _check_divisor(a.q, p)
    return Residue(a.value % p, p)


def root_of_unity_angle(a: Residue) -> Fraction:
    """``a mod q`` as the root of unity ``exp(2 pi i * angle)``; purely a relabeling."""
    return Fraction(a.value, a.q)


def units(q: int) -> list[int]:
    return [d for d in range(q) if gcd(d, q) == 1]


def totient(q: int) -> int:
    return len(units(q))


@dataclass(frozen=True)
class MgtElement:
    """Permutation of ``Z/qZ`` given by its table of images."""

    q: int
    table: tuple[int, ...]

    def __post_init__(self):
        table = tuple(int(x) for x in self.table)
        object.__setattr__(self, "table", table)
        if len(table) != self.q or sorted(table) != list(range(self.q)):
            raise GenusZeroError(f"{table} is not a permutation of Z/{self.q}Z")

    @classmethod
    def identity(cls, q: int) -> MgtElement:
        return cls(q, tuple(range(q)))

    @classmethod
    def multiplication(cls, d: int, q: int) -> MgtElement:
        if gcd(d, q) != 1:
            raise GenusZeroError(f"{d} is not a unit mod {q}")
        return cls(q, tuple(d * x % q for x in range(q)))

    @classmethod
    def theta(cls, q: int) -> MgtElement:
        return cls(q, tuple((1 - x) % q for x in range(q)))

    def __call__(self, x: int) -> int:
        return self.table[x % self.q]

    def __mul__(self, other: MgtElement) -> MgtElement:
        return compose(self, other)

    def inverse(self) -> MgtElement:
        inv = [0] * self.q
        for x, y in enumerate(self.table):
            inv[y] = x
        return MgtElement(self.q, tuple(inv))

    def to_dict(self) -> dict:
        return {"q": self.q, "table": list(self.table)}

    @classmethod
    def from_dict(cls, data: Mapping) -> MgtElement:
        return cls(int(data["q"]), tuple(data["table"]))


@dataclass(frozen=True)
class AffineMap:
    """``x -> a*x + b`` on ``Z/qZ`` with ``a`` a unit."""

    q: int
    a: int
    b: int

    def __post_init__(self):
        if gcd(self.a, self.q) != 1:
            raise GenusZeroError(f"{self.a} is not a unit mod {self.q}")

    def element(self) -> MgtElement:
        return MgtElement(self.q, tuple((self.a * x + self.b) % self.q for x in range(self.q)))


def _check_q(q, max_q):
    if not isinstance(q, int) or q < 2:
        raise OutOfRange(f"modulus must be an integer >= 2, got {q!r}")
    if q > max_q:
        raise OutOfRange(f"modulus {q} exceeds the bound {max_q}")


def generators(q: int) -> list[MgtElement]:
    """Multiplication by each unit (in increasing order), then ``theta_q``."""
    _check_q(q, float("inf"))
    return [MgtElement.multiplication(d, q) for d in units(q)] + [MgtElement.theta(q)]


def closure(q: int, max_q: int = DEFAULT_MAX_Q) -> frozenset[MgtElement]:
    """The group generated by :func:`generators`, by breadth-first search."""
    _check_q(q, max_q)
    return _closure(q)


@lru_cache(maxsize=None)
def _closure(q):
    gens = np.array([g.table for g in generators(q)], dtype=np.int64)
    ident = np.arange(q, dtype=np.int64)
    seen = {ident.tobytes()}
    found = [ident]
    frontier = ident[None, :]
    while len(frontier):
        fresh = []
        for g in gens:
            # each row e becomes "e then g"
            for row in g[frontier]:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    fresh.append(row)
        found.extend(fresh)
        frontier = np.array(fresh, dtype=np.int64).reshape(-1, q)
    return frozenset(MgtElement(q, tuple(row.tolist())) for row in found)


def affine_group(q: int) -> frozenset[MgtElement]:
    """All maps ``x -> a*x + b`` with ``a`` a unit, built directly from the formula."""
    _check_q(q, float("inf"))
    return frozenset(AffineMap(q, a, b).element() for a in units(q) for b in range(q))


def is_multiplication(e: MgtElement) -> int | None:
    """The unit ``d`` with ``e(x) = d*x`` for all ``x``, or ``None``."""
    d = e.table[1 % e.q]
    if gcd(d, e.q) != 1:
        return None
    if all(e.table[x] == d * x % e.q for x in range(e.q)):
        return d
    return None


def compose(e1: MgtElement, e2: MgtElement) -> MgtElement:
    """``e1`` then ``e2``."""
    if e1.q != e2.q:
        raise ModulusMismatch(f"moduli {e1.q} and {e2.q} differ")
    t2 = e2.table
    return MgtElement(e1.q, tuple(t2[y] for y in e1.table))


def u_qp(e: MgtElement, p: int) -> MgtElement:
    """Permutation of ``Z/pZ`` induced by ``e`` through reduction mod ``p``."""
    _check_divisor(e.q, p)
    return _reduce(e, p)


@lru_cache(maxsize=1 << 17)
def _reduce(e, p):
    reduced = [None] * p
    for a, image in enumerate(e.table):
        r, s = a % p, image % p
        if reduced[r] is None:
            reduced[r] = s
        elif reduced[r] != s:
            raise DoesNotDescend(f"element does not respect reduction mod {p} at {a}")
    return MgtElement(p, tuple(reduced))


def image(q: int, p: int, max_q: int = DEFAULT_MAX_Q) -> frozenset[MgtElement]:
    return frozenset(u_qp(e, p) for e in closure(q, max_q))


def kernel(q: int, p: int, max_q: int = DEFAULT_MAX_Q) -> frozenset[MgtElement]:
    ident = MgtElement.identity(p)
    return frozenset(e for e in closure(q, max_q) if u_qp(e, p) == ident)


# -- projective-limit truncations ------------------------------------------------

class LevelPoset:
    """Finite set of moduli ordered by divisibility."""

    __slots__ = ("levels",)

    def __init__(self, levels: Iterable[int]):
        levels = frozenset(levels)
        for q in levels:
            if not isinstance(q, int) or q < 2:
                raise OutOfRange(f"levels must be integers >= 2, got {q!r}")
        self.levels = levels

    @staticmethod
    def leq(p: int, q: int) -> bool:
        return q % p == 0

    def pairs(self) -> list[tuple[int, int]]:
        """All ``(p, q)`` with ``p | q``, ``p != q``, in increasing order."""
        ls = sorted(self.levels)
        return [(p, q) for q in ls for p in ls if p != q and q % p == 0]

    def __iter__(self):
        return iter(sorted(self.levels))

    def __len__(self):
        return len(self.levels)

    def __contains__(self, q):
        return q in self.levels

    def __eq__(self, other):
        return isinstance(other, LevelPoset) and self.levels == other.levels

    def __hash__(self):
        return hash(self.levels)

    def __repr__(self):
        return f"LevelPoset({sorted(self.levels)})"


@dataclass(frozen=True)
class CoherentFamily:
    """Elements of ``mGT_q`` for each level ``q``, meant to agree under every ``u_qp``.

    Construction does not enforce coherence; use :func:`validate_family`.
    """

    levels: LevelPoset
    elements: Mapping[int, MgtElement]

    def __post_init__(self):
        if not isinstance(self.levels, LevelPoset):
            object.__setattr__(self, "levels", LevelPoset(self.levels))
        elements = dict(sorted(self.elements.items()))
        if set(elements) != self.levels.levels:
            raise LevelMismatch("elements must be given for exactly the listed levels")
        for q, e in elements.items():
            if e.q != q:
                raise ModulusMismatch(f"element at level {q} acts on Z/{e.q}Z")
        object.__setattr__(self, "elements", elements)

    def __getitem__(self, q: int) -> MgtElement:
        return self.elements[q]

    def __eq__(self, other):
        return isinstance(other, CoherentFamily) and self.elements == other.elements

    def __hash__(self):
        return hash(tuple(self.elements.items()))

    def to_json(self) -> str:
        return json.dumps(
            {
                "levels": sorted(self.levels.levels),
                "elements": {str(q): list(e.table) for q, e in self.elements.items()},
            }
        )

    @classmethod
    def from_json(cls, text: str) -> CoherentFamily:
        data = json.loads(text)
        elements = {int(q): MgtElement(int(q), tuple(t)) for q, t in data["elements"].items()}
        return cls(LevelPoset(data["levels"]), elements)


def validate_family(f: CoherentFamily, max_q: int = DEFAULT_MAX_Q) -> Report:
    for q, e in f.elements.items():
        if e not in closure(q, max_q):
            return Report(False, f"element at level {q} is not in mGT_{q}", (q,))
    for p, q in f.levels.pairs():
        try:
            reduced = u_qp(f[q], p)
        except DoesNotDescend:
            return Report(False, f"element at level {q} does not descend to {p}", (q, p))
        if reduced != f[p]:
            return Report(False, f"levels {q} and {p} are not coherent", (q, p))
    return Report(True, f"coherent over levels {sorted(f.levels.levels)}")


def _require_valid(f):
    report = validate_family(f)
    if not report:
        raise InvalidFamily(report.message)


def family_compose(f: CoherentFamily, g: CoherentFamily) -> CoherentFamily:
    """Levelwise ``f`` then ``g``."""
    if f.levels != g.levels:
        raise LevelMismatch("families live on different level sets")
    _require_valid(f)
    _require_valid(g)
    return CoherentFamily(f.levels, {q: compose(f[q], g[q]) for q in f.levels})


def family_inverse(f: CoherentFamily) -> CoherentFamily:
    _require_valid(f)
    return CoherentFamily(f.levels, {q: e.inverse() for q, e in f.elements.items()})


def identity_family(levels: Iterable[int]) -> CoherentFamily:
    levels = LevelPoset(levels)
    return CoherentFamily(levels, {q: MgtElement.identity(q) for q in levels})


def _lcm(values):
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def random_family(levels: Iterable[int], rng: random.Random, max_q: int = DEFAULT_MAX_Q) -> CoherentFamily:
    """Pick a random element at the lcm of the levels and reduce it to each level."""
    levels = LevelPoset(levels)
    top = _lcm(levels.levels)
    group = sorted(closure(top, max_q), key=lambda e: e.table)
    e = rng.choice(group)
    return CoherentFamily(levels, {q: u_qp(e, q) for q in levels})


def extend_family(f: CoherentFamily, q_new: int, max_q: int = DEFAULT_MAX_Q) -> list[CoherentFamily]:
    """Every way to add a level ``q_new`` coherently with the related existing levels.

    The result is ordered by the table chosen at ``q_new``; an empty list means
    no coherent extension exists.
    """
    if q_new in f.levels:
        raise GenusZeroError(f"level {q_new} is already present")
    below = [p for p in f.levels if q_new % p == 0]
    above = [r for r in f.levels if r % q_new == 0]
    forced = {u_qp(f[r], q_new) for r in above}
    if len(forced) > 1:
        return []
    out = []
    for e in sorted(closure(q_new, max_q), key=lambda e: e.table):
        if forced and e not in forced:
            continue
        if all(u_qp(e, p) == f[p] for p in below):
            elements = dict(f.elements)
            elements[q_new] = e
            out.append(CoherentFamily(LevelPoset(f.levels.levels | {q_new}), elements))
    return out
