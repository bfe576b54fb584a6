# %% [markdown]
# # Permutations, injections, and the action on trees
#
# Products read left to right: `a * b` applies `a` first.

# %%
from itertools import permutations

from genuszero.symmetric import (
    FinPermutation,
    act_on_tree,
    parse_cycles,
    swap,
    thin_collapse,
    verify_poset_in_groupoids,
)
from genuszero.trees import StableTree, canonical_code, describe

# %%
p = swap(1, 2) * swap(2, 3)
print(p, [p(i) for i in (1, 2, 3)])
print(parse_cycles("(1 2)(2 3)") == p)

# %% [markdown]
# Permutations act on trees by relabeling tails.  The orbit of 12|34 under
# S4 has three elements.

# %%
t = StableTree([0, 1], [[0, 1]], {1: 0, 2: 0, 3: 1, 4: 1})
orbit = {}
for images in permutations(range(1, 5)):
    image = act_on_tree(FinPermutation(dict(zip(range(1, 5), images))), t)
    orbit[canonical_code(image)] = describe(image)
print(sorted(orbit.values()))

# %% [markdown]
# Finite sets with injections form a poset in groupoids: all endomorphisms
# are invertible, and each hom-set between different sizes is a single orbit.
# Collapsing each hom-set to a point leaves the chain 1 < 2 < ... < n.

# %%
print(verify_poset_in_groupoids(range(1, 6)).message)
thin = thin_collapse(range(1, 6))
print(sorted((a.source.n, a.target.n) for a in thin.arrows))
