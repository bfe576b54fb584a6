import json
import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genuszero.errors import (
    DoesNotDescend,
    GenusZeroError,
    InvalidFamily,
    LevelMismatch,
    ModulusMismatch,
    NotADivisor,
    OutOfRange,
)
from genuszero.mgt import (
    AffineMap,
    CoherentFamily,
    LevelPoset,
    MgtElement,
    Residue,
    affine_group,
    closure,
    compose,
    extend_family,
    family_compose,
    family_inverse,
    generators,
    identity_family,
    image,
    is_multiplication,
    kernel,
    random_family,
    root_of_unity_angle,
    t_qp,
    totient,
    u_qp,
    units,
    validate_family,
)


def slow_closure(q):
    """Plain-Python closure from the defining generators, independent of the numpy search."""
    gens = [tuple(d * x % q for x in range(q)) for d in range(1, q) if gcd(d, q) == 1]
    gens.append(tuple((1 - x) % q for x in range(q)))
    seen = {tuple(range(q))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                h = tuple(g[y] for y in e)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


def divisor_chains(limit):
    for r in range(2, limit + 1):
        for q in range(2, r + 1):
            if r % q:
                continue
            for p in range(2, q + 1):
                if q % p == 0:
                    yield p, q, r


# -- residues -------------------------------------------------------------------

def test_t_qp_examples():
    assert t_qp(Residue(5, 6), 3) == Residue(2, 3)
    assert t_qp(Residue(7, 12), 4) == Residue(3, 4)
    with pytest.raises(NotADivisor):
        t_qp(Residue(1, 6), 4)


def test_t_relation():
    for p, q, r in divisor_chains(60):
        for a in range(r):
            x = Residue(a, r)
            assert t_qp(t_qp(x, q), p) == t_qp(x, p)


def test_t_is_a_ring_map():
    for a in range(12):
        for b in range(12):
            x, y = Residue(a, 12), Residue(b, 12)
            assert t_qp(x + y, 4) == t_qp(x, 4) + t_qp(y, 4)
            assert t_qp(x * y, 4) == t_qp(x, 4) * t_qp(y, 4)


def test_residue_validation():
    assert Residue.of(-1, 5) == Residue(4, 5)
    with pytest.raises(GenusZeroError):
        Residue(5, 5)
    with pytest.raises(ModulusMismatch):
        Residue(1, 5) + Residue(1, 6)


def test_root_of_unity_angle():
    assert root_of_unity_angle(Residue(3, 12)) == root_of_unity_angle(Residue(1, 4))
    assert root_of_unity_angle(Residue(0, 7)) == 0


# -- generators and closure ----------------------------------------------------------

def test_generator_tables():
    assert MgtElement.theta(5).table == (1, 0, 4, 3, 2)
    assert MgtElement.multiplication(3, 4).table == (0, 3, 2, 1)
    with pytest.raises(GenusZeroError):
        MgtElement.multiplication(2, 4)


@pytest.mark.parametrize("q", range(2, 30))
def test_generator_count(q):
    gens = generators(q)
    assert len(gens) == totient(q) + 1
    assert gens[-1] == MgtElement.theta(q)
    assert [is_multiplication(g) for g in gens[:-1]] == units(q)


def test_closure_examples():
    assert len(closure(3)) == 6
    assert len(closure(4)) == 8
    assert len(closure(5)) == 20
    assert len(closure(2)) == 2


def test_affine_group_small():
    assert affine_group(2) == {MgtElement(2, (0, 1)), MgtElement(2, (1, 0))}
    assert len(affine_group(3)) == 6
    assert len(affine_group(4)) == 8


@pytest.mark.parametrize("q", range(2, 41))
def test_closure_matches_slow_oracle_and_affine(q):
    tables = {e.table for e in closure(q)}
    assert tables == slow_closure(q)
    assert closure(q) == affine_group(q)
    assert len(tables) == q * totient(q)


def test_closure_bounds():
    with pytest.raises(OutOfRange):
        closure(1)
    with pytest.raises(OutOfRange):
        closure(201)
    with pytest.raises(OutOfRange):
        closure(20, max_q=10)


def test_is_multiplication():
    assert is_multiplication(MgtElement.multiplication(5, 6)) == 5
    assert is_multiplication(MgtElement.theta(5)) is None
    assert is_multiplication(AffineMap(7, 3, 1).element()) is None


def test_compose_reads_left_to_right():
    theta, mult2 = MgtElement.theta(5), MgtElement.multiplication(2, 5)
    assert compose(theta, mult2)(0) == 2
    assert compose(mult2, theta)(0) == 1
    assert (theta * mult2) == compose(theta, mult2)
    with pytest.raises(ModulusMismatch):
        compose(theta, MgtElement.theta(6))


def test_group_axioms_on_closure():
    group = closure(12)
    ident = MgtElement.identity(12)
    for e in group:
        assert e * e.inverse() == ident == e.inverse() * e
        assert e.inverse() in group
    sample = sorted(group, key=lambda e: e.table)[:12]
    for a in sample:
        for b in sample:
            assert a * b in group


def test_element_json():
    e = AffineMap(9, 4, 7).element()
    assert MgtElement.from_dict(json.loads(json.dumps(e.to_dict()))) == e
    with pytest.raises(GenusZeroError):
        MgtElement(3, (0, 0, 1))


# -- reduction homomorphisms -----------------------------------------------------------

def test_u_examples():
    assert u_qp(MgtElement.multiplication(5, 6), 3) == MgtElement.multiplication(2, 3)
    assert u_qp(MgtElement.theta(6), 3) == MgtElement.theta(3)
    assert u_qp(AffineMap(6, 5, 3).element(), 3) == MgtElement.multiplication(2, 3)
    with pytest.raises(DoesNotDescend):
        u_qp(MgtElement(6, (1, 0, 2, 3, 4, 5)), 3)
    with pytest.raises(NotADivisor):
        u_qp(MgtElement.theta(6), 4)


def test_u_relation():
    for p, q, r in divisor_chains(36):
        for e in closure(r):
            assert u_qp(u_qp(e, q), p) == u_qp(e, p)


@pytest.mark.parametrize("q,p", [(q, p) for q in range(2, 25) for p in range(2, q + 1) if q % p == 0])
def test_u_is_homomorphism_and_surjective(q, p):
    group = sorted(closure(q), key=lambda e: e.table)
    rng = random.Random(q * 100 + p)
    for _ in range(200):
        a, b = rng.choice(group), rng.choice(group)
        assert u_qp(a * b, p) == u_qp(a, p) * u_qp(b, p)
    assert image(q, p) == closure(p)
    assert len(kernel(q, p)) == len(group) // len(closure(p))


@given(st.integers(2, 40), st.data())
@settings(max_examples=60)
def test_u_by_formula(q, data):
    # reduction of an affine map is the affine map with reduced coefficients
    p = data.draw(st.sampled_from([d for d in range(2, q + 1) if q % d == 0]))
    a = data.draw(st.sampled_from(units(q)))
    b = data.draw(st.integers(0, q - 1))
    assert u_qp(AffineMap(q, a, b).element(), p) == AffineMap(p, a % p, b % p).element()


# -- coherent families -------------------------------------------------------------

def test_validate_family_examples():
    good = CoherentFamily(LevelPoset([3, 6]), {6: AffineMap(6, 5, 3).element(), 3: MgtElement.multiplication(2, 3)})
    assert validate_family(good)
    bad = CoherentFamily(LevelPoset([3, 6]), {6: AffineMap(6, 5, 3).element(), 3: MgtElement.identity(3)})
    report = validate_family(bad)
    assert not report and report.witness == (6, 3)
    assert validate_family(identity_family([2, 3, 4, 6, 12]))
    outside = CoherentFamily(LevelPoset([6]), {6: MgtElement(6, (1, 0, 2, 3, 4, 5))})
    assert validate_family(outside).witness == (6,)


def test_family_construction_errors():
    with pytest.raises(LevelMismatch):
        CoherentFamily(LevelPoset([3, 6]), {3: MgtElement.identity(3)})
    with pytest.raises(ModulusMismatch):
        CoherentFamily(LevelPoset([3]), {3: MgtElement.identity(4)})
    with pytest.raises(OutOfRange):
        LevelPoset([1, 3])


def test_family_compose_and_inverse():
    levels = [2, 4, 8]
    theta = CoherentFamily(LevelPoset(levels), {q: MgtElement.theta(q) for q in levels})
    assert validate_family(theta)
    assert family_compose(theta, theta) == identity_family(levels)
    rng = random.Random(3)
    for _ in range(20):
        f, g = random_family([2, 3, 6, 12], rng), random_family([2, 3, 6, 12], rng)
        assert validate_family(family_compose(f, g))
        assert family_compose(f, family_inverse(f)) == identity_family([2, 3, 6, 12])
    bad = CoherentFamily(LevelPoset([3, 6]), {6: MgtElement.identity(6), 3: MgtElement.theta(3)})
    with pytest.raises(InvalidFamily):
        family_inverse(bad)
    with pytest.raises(LevelMismatch):
        family_compose(theta, identity_family([2, 4]))


def test_family_json_round_trip():
    f = random_family([2, 5, 10], random.Random(1))
    assert CoherentFamily.from_json(f.to_json()) == f


def test_extend_family():
    base = identity_family([3])
    lifts = extend_family(base, 6)
    assert {f[6] for f in lifts} == kernel(6, 3)
    empty = CoherentFamily(LevelPoset([]), {})
    assert len(extend_family(empty, 5)) == 20
    # a chain 2 | 4 | 8: each step multiplies the count by the kernel size
    fams = extend_family(identity_family([2]), 4)
    assert len(fams) == len(kernel(4, 2)) == 4
    assert all(validate_family(f) for f in fams)
    with pytest.raises(GenusZeroError):
        extend_family(base, 3)


def test_extend_family_forced_from_above():
    f = CoherentFamily(LevelPoset([12]), {12: AffineMap(12, 5, 7).element()})
    (only,) = extend_family(f, 4)
    assert only[4] == AffineMap(4, 1, 3).element()
