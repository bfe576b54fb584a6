"""Seeded invariant suites, shared by the command line and the notebooks.

Each suite returns a list of ``(property name, Report)`` pairs.  Sizes are
chosen so that ``run("all")`` finishes in well under a minute.
"""

from __future__ import annotations

import random
from itertools import combinations

from . import mgt, strata, symmetric, trees
from .errors import GenusZeroError
from .oracles import bipartition_count, brute_force_isomorphic, trivalent_count
from .report import Report

SUITES = ("trees", "symmetric", "mgt")
DEFAULT_SEED = 0


def _first_failure(cases, check):
    for case in cases:
        witness = check(case)
        if witness is not None:
            return witness
    return None


def _result(witness, ok_message):
    if witness is None:
        return Report(True, ok_message)
    return Report(False, "counterexample found", witness)


def _shuffled_ids(tree, rng):
    ids = list(range(100, 100 + len(tree.vertices)))
    rng.shuffle(ids)
    ren = dict(zip(sorted(tree.vertices, key=trees.vertex_sort_key), ids))
    return trees.StableTree(
        [ren[v] for v in tree.vertices],
        [[ren[x] for x in e] for e in tree.edges],
        {label: ren[v] for label, v in tree.tails.items()},
    )


def trees_suite(seed: int = DEFAULT_SEED):
    rng = random.Random(seed)
    out = []

    samples = [trees.random_tree(range(1, rng.randint(3, 8) + 1), rng) for _ in range(200)]

    def stability(t):
        try:
            for e in t.edges:
                trees.validate(trees.contract_edge(t, e)[0].to_dict())
            perm = dict(zip(sorted(t.tails), rng.sample(range(1, 30), len(t.tails))))
            trees.validate(trees.relabel_tails(t, perm).to_dict())
            other = trees.random_tree(range(50, 50 + rng.randint(3, 5)), rng)
            glued = trees.glue(t, min(t.tails), other, 50)
            trees.validate(glued.to_dict())
            if len(glued.edges) != len(t.edges) + len(other.edges) + 1:
                return ("edge count of glue", t, other)
            if len(glued.tails) != len(t.tails) + len(other.tails) - 2:
                return ("tail count of glue", t, other)
        except GenusZeroError as exc:
            return (t, repr(exc))
        return None

    out.append(("stability preserved by glue/contract/relabel",
                _result(_first_failure(samples, stability), "200 random trees")))
    out.append(("edges = vertices - 1",
                _result(_first_failure(samples, lambda t: None if len(t.edges) == len(t.vertices) - 1 else t),
                        "200 random trees")))

    def iso_agrees(pair):
        a, b = pair
        if trees.are_isomorphic(a, b) != brute_force_isomorphic(a, b):
            return pair
        return None

    pairs = []
    for n in range(3, 6):
        reps = strata.enumerate_trees(n)
        pairs += [(a, _shuffled_ids(b, rng)) for a in reps for b in reps]
    for _ in range(100):
        n = rng.randint(6, 8)
        a = trees.random_tree(range(1, n + 1), rng)
        b = _shuffled_ids(a, rng) if rng.random() < 0.5 else trees.random_tree(range(1, n + 1), rng)
        pairs.append((a, b))
    out.append(("canonical code agrees with brute-force isomorphism",
                _result(_first_failure(pairs, iso_agrees), f"{len(pairs)} pairs")))

    def counts(n):
        profile = strata.codim_profile(strata.build_poset(n))
        if profile[1] != bipartition_count(n) or profile[-1] != trivalent_count(n):
            return (n, profile)
        return None

    out.append(("codim-1 and trivalent counts match oracles for n = 4..7",
                _result(_first_failure(range(4, 8), counts), "n = 4..7")))

    def graded(n):
        poset = strata.build_poset(n)
        lengths = {len(c) - 1 for c in poset.maximal_chains()}
        if lengths != {n - 3}:
            return (n, sorted(lengths))
        if [c for c in poset.nodes if not poset.upper_covers(c)] != [poset.top]:
            return (n, "top is not unique")
        return None

    out.append(("stratum poset graded with unique maximum, n = 3..6",
                _result(_first_failure(range(3, 7), graded), "n = 3..6")))

    poset5 = strata.build_poset(5)

    def relabel_automorphism(p):
        image = {c: trees.canonical_code(symmetric.act_on_tree(p, t)) for c, t in poset5.trees.items()}
        if set(image.values()) != set(poset5.trees):
            return (str(p), "not a bijection on nodes")
        moved = {(image[a], image[b]) for a, b in poset5.covers}
        if moved != poset5.covers:
            return (str(p), "covers not preserved")
        return None

    perms = [symmetric.FinPermutation(dict(zip(range(1, 6), rng.sample(range(1, 6), 5)))) for _ in range(20)]
    out.append(("relabeling acts by poset automorphisms (n = 5)",
                _result(_first_failure(perms, relabel_automorphism), "20 random permutations")))
    return out


def _random_perm(rng, n=10):
    return symmetric.FinPermutation(dict(zip(range(1, n + 1), rng.sample(range(1, n + 1), n))))


def symmetric_suite(seed: int = DEFAULT_SEED):
    rng = random.Random(seed)
    out = []
    triples = [(_random_perm(rng), _random_perm(rng), _random_perm(rng)) for _ in range(1000)]
    ident = symmetric.FinPermutation()

    def laws(t):
        f, g, h = t
        if (f * g) * h != f * (g * h):
            return ("associativity", t)
        if f * ident != f or ident * f != f:
            return ("identity", t)
        if not (f * symmetric.invert(f)).is_identity():
            return ("inverse", t)
        if not set((f * g).support) <= set(f.support) | set(g.support):
            return ("support", t)
        return None

    out.append(("group laws for cofinite permutations",
                _result(_first_failure(triples, laws), "1000 random triples")))

    def action(t):
        f, g, _ = t
        tree = trees.random_tree(range(1, rng.randint(3, 7) + 1), rng)
        lhs = symmetric.act_on_tree(f * g, tree)
        rhs = symmetric.act_on_tree(g, symmetric.act_on_tree(f, tree))
        if lhs != rhs or symmetric.act_on_tree(ident, tree) != tree:
            return (str(f), str(g), tree)
        return None

    out.append(("relabeling is a group action", _result(_first_failure(triples[:300], action), "300 cases")))

    def equivariant(_):
        t1, a, t2, b, p = random_glue_instance(rng)
        if not symmetric.equivariance_check(p, t1, a, t2, b):
            return (t1, a, t2, b, str(p))
        return None

    out.append(("relabeling commutes with gluing",
                _result(_first_failure(range(300), equivariant), "300 random gluings")))

    def factorization(mn):
        m, n = mn
        for f in symmetric.hom_set(m, n):
            pre, post = symmetric.factor_injection(f)
            if any(post(pre(i)) != f(i) for i in range(1, m + 1)):
                return f
        return None

    sizes = [(m, n) for n in range(1, 7) for m in range(1, n + 1)]
    out.append(("injections factor as permutation, embedding, permutation",
                _result(_first_failure(sizes, factorization), "all m <= n <= 6")))
    out.append(("injection category on 1..6 is a poset in groupoids",
                symmetric.verify_poset_in_groupoids([symmetric.NcfObject(k) for k in range(1, 7)])))
    thin = symmetric.thin_collapse([symmetric.NcfObject(k) for k in range(1, 7)])
    chain = all(thin.leq(x, y) == (x.n <= y.n) for x in thin.objects for y in thin.objects)
    axioms = thin.check_axioms()
    out.append(("thin collapse is the chain 1 < 2 < ... < 6",
                Report(chain and axioms.ok, axioms.message, None if chain else "order differs")))
    return out


def random_glue_instance(rng, max_tails=7):
    """Two random trees whose gluing has at most ``max_tails`` tails on ``{1..n}``,
    grafted at labels ``n + 1`` and ``n + 2``, and a random permutation of ``{1..n}``."""
    n = rng.randint(4, max_tails)
    k = rng.randint(2, n - 2)
    labels = rng.sample(range(1, n + 1), n)
    t1 = trees.random_tree(labels[:k] + [n + 1], rng)
    t2 = trees.random_tree(labels[k:] + [n + 2], rng)
    p = symmetric.FinPermutation(dict(zip(range(1, n + 1), rng.sample(range(1, n + 1), n))))
    return t1, n + 1, t2, n + 2, p


def mgt_suite(seed: int = DEFAULT_SEED):
    rng = random.Random(seed)
    out = []

    def same(q):
        return None if mgt.closure(q) == mgt.affine_group(q) else q

    out.append(("closure == affine for q in 2..60", _result(_first_failure(range(2, 61), same), "q = 2..60")))

    def theta_not_mult(q):
        th = mgt.MgtElement.theta(q)
        if th not in mgt.closure(q) or mgt.is_multiplication(th) is not None or th(0) != 1:
            return q
        return None

    out.append(("theta_q is never a multiplication", _result(_first_failure(range(2, 61), theta_not_mult), "q = 2..60")))

    def nonabelian(q):
        th, d = mgt.MgtElement.theta(q), mgt.MgtElement.multiplication(q - 1, q)
        return None if th * d != d * th else q

    out.append(("mGT_q is nonabelian for q in 3..60", _result(_first_failure(range(3, 61), nonabelian), "q = 3..60")))

    def descends(q):
        for p in range(1, q + 1):
            if q % p == 0:
                for e in mgt.closure(q):
                    try:
                        mgt.u_qp(e, p)
                    except mgt.DoesNotDescend:
                        return (q, p, e.table)
        return None

    out.append(("u_qp is defined on all of mGT_q for p | q <= 60",
                _result(_first_failure(range(2, 61), descends), "q = 2..60")))

    def homomorphism(q):
        group = sorted(mgt.closure(q), key=lambda e: e.table)
        for _ in range(50):
            e1, e2 = rng.choice(group), rng.choice(group)
            for p in range(1, q + 1):
                if q % p == 0 and mgt.u_qp(e1 * e2, p) != mgt.u_qp(e1, p) * mgt.u_qp(e2, p):
                    return (q, p, e1.table, e2.table)
        return None

    out.append(("u_qp is a homomorphism (random pairs, q in 2..60)",
                _result(_first_failure(range(2, 61), homomorphism), "50 pairs per q")))
    out.append(("tower relations for all chains with s <= 36", check_relations(36)))

    def families(_):
        base = rng.choice((24, 36))
        levels = rng.sample(_divisors(base)[1:], rng.randint(1, 4))
        f = mgt.random_family(levels, rng)
        g = mgt.random_family(levels, rng)
        if not (mgt.validate_family(f) and mgt.validate_family(mgt.family_compose(f, g))
                and mgt.validate_family(mgt.family_inverse(f))):
            return sorted(levels)
        return None

    out.append(("coherent families closed under composition and inversion",
                _result(_first_failure(range(200), families), "200 random families")))
    return out


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def relation_chains(s_max: int, q: int | None = None):
    """Yield ``(p, q, r, s)`` with ``p | q | s`` and ``p | r | s``, ``s <= s_max``.

    With ``q`` given, only chains through that middle level are produced.
    """
    for s in range(1, s_max + 1):
        divs = _divisors(s)
        middles = divs if q is None else ([q] if s % q == 0 else [])
        for qq in middles:
            for r in divs:
                for p in _divisors(qq):
                    if r % p == 0:
                        yield p, qq, r, s


def check_relations(s_max: int, q: int | None = None) -> Report:
    """Check ``t_qp t_sq = t_rp t_sr = t_sp`` and the same for ``u`` on every chain."""
    count = 0
    for p, qq, r, s in relation_chains(s_max, q):
        count += 1
        for a in range(s):
            x = mgt.Residue(a, s)
            via_q = mgt.t_qp(mgt.t_qp(x, qq), p)
            via_r = mgt.t_qp(mgt.t_qp(x, r), p)
            if not via_q == via_r == mgt.t_qp(x, p):
                return Report(False, "t relation fails", (p, qq, r, s, a))
        if s >= 2:
            for e in mgt.closure(s):
                via_q = mgt.u_qp(mgt.u_qp(e, qq), p)
                via_r = mgt.u_qp(mgt.u_qp(e, r), p)
                if not via_q == via_r == mgt.u_qp(e, p):
                    return Report(False, "u relation fails", (p, qq, r, s, e.table))
    if count == 0:
        return Report(False, "no chains to check", (s_max, q))
    return Report(True, f"{count} chains")


def run(suite: str = "all", seed: int = DEFAULT_SEED):
    names = SUITES if suite == "all" else (suite,)
    funcs = {"trees": trees_suite, "symmetric": symmetric_suite, "mgt": mgt_suite}
    results = []
    for name in names:
        results += [(f"{name}: {prop}", report) for prop, report in funcs[name](seed)]
    return results
