# %% [markdown]
# # Stable trees
#
# A stable tree is a finite tree with labeled tails in which every vertex
# has valence at least three (edges plus tails).  Each one records how a
# genus-zero curve breaks into components.

# %%
from genuszero.trees import (
    StableTree,
    are_isomorphic,
    canonical_code,
    canonical_form,
    contract_edges,
    corolla,
    cut,
    describe,
    glue,
)

# %% [markdown]
# The tree 12|34: two vertices joined by an edge, tails 1, 2 on one side
# and 3, 4 on the other.

# %%
t = StableTree([0, 1], [[0, 1]], {1: 0, 2: 0, 3: 1, 4: 1})
print(describe(t))
print(canonical_code(t).hex())

# %% [markdown]
# Vertex names carry no meaning: renaming them gives the same canonical code.

# %%
renamed = StableTree(["a", "b"], [["a", "b"]], {1: "b", 2: "b", 3: "a", 4: "a"})
assert are_isomorphic(t, renamed)
print(canonical_form(renamed).to_json())

# %% [markdown]
# Gluing fuses tail 9 of one corolla with tail 10 of another into a new
# edge, and `cut` undoes it.

# %%
left, right = corolla([1, 2, 9]), corolla([10, 3, 4])
glued = glue(left, 9, right, 10)
assert are_isomorphic(glued, t)
(e,) = glued.edges
a, b = cut(glued, e, 9, 10)
print(describe(a), "+", describe(b))

# %% [markdown]
# Contracting the edge collapses the tree to the corolla; the morphism
# records where each vertex goes.

# %%
small, morphism = contract_edges(t, t.edges)
print(describe(small), morphism.vertex_map)
