# %% [markdown]
# # The stratum poset
#
# Isomorphism classes of stable trees with tails 1..n index the boundary
# strata of the n-pointed moduli space.  Codimension is the number of edges,
# and contracting an edge moves to a bigger stratum.

# %%
from genuszero.oracles import bipartition_count, trivalent_count
from genuszero.strata import build_poset, codim_profile, export_dot

# %%
for n in range(3, 8):
    print(n, codim_profile(build_poset(n)))

# %% [markdown]
# The divisors (one edge) split the tails into two blocks of at least two;
# the points (n - 3 edges) are the trivalent trees.

# %%
for n in range(4, 8):
    profile = codim_profile(build_poset(n))
    print(n, profile[1], bipartition_count(n), profile[-1], trivalent_count(n))

# %% [markdown]
# For n = 4 there are three points, one per way to pair off the tails.

# %%
print(export_dot(build_poset(4)))

# %% [markdown]
# Every maximal chain runs from a point up to the open stratum in n - 3 steps.

# %%
p = build_poset(5)
chains = list(p.maximal_chains())
print(len(chains), {len(c) for c in chains})
