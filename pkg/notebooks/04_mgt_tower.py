# %% [markdown]
# # The groups mGT_q and their tower
#
# mGT_q is generated by multiplication by units of Z/qZ and the flip
# a -> 1 - a.  It turns out to be the full affine group.

# %%
import random

from genuszero.mgt import (
    AffineMap,
    CoherentFamily,
    LevelPoset,
    MgtElement,
    affine_group,
    closure,
    extend_family,
    identity_family,
    kernel,
    random_family,
    totient,
    u_qp,
    validate_family,
)

# %%
for q in range(2, 13):
    print(q, len(closure(q)), q * totient(q), closure(q) == affine_group(q))

# %% [markdown]
# The flip does not commute with multiplication: for q = 5 and d = 4,
# flipping then multiplying sends 0 to 4, the other order sends 0 to 1.

# %%
theta, mult = MgtElement.theta(5), MgtElement.multiplication(4, 5)
print((theta * mult)(0), (mult * theta)(0))

# %% [markdown]
# Reduction mod p is a surjective homomorphism mGT_q -> mGT_p for p | q.

# %%
print(u_qp(AffineMap(6, 5, 3).element(), 3).table)
for q, p in [(6, 3), (12, 4), (24, 2)]:
    print(q, p, len(kernel(q, p)), len(closure(q)) // len(closure(p)))

# %% [markdown]
# A finite piece of the projective limit is a family of elements, one per
# level, compatible under every reduction.

# %%
f = CoherentFamily(LevelPoset([3, 6]), {6: AffineMap(6, 5, 3).element(), 3: MgtElement.multiplication(2, 3)})
print(validate_family(f))
g = random_family([2, 4, 8], random.Random(0))
print(g.to_json(), validate_family(g).ok)
print(len(extend_family(identity_family([3]), 6)))
