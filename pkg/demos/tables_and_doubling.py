"""Octonion table, the doubling chain and the real matrix picture."""
# %%
import random

from cayleycr.algebra import conjugate, random_element, structure_tensor
from cayleycr.cayley_dickson import double, find_isomorphism
from cayleycr.matrix_rep import conjugate_by_epsilon, embed, homomorphism_check

o = structure_tensor(8)
names = [f"e{i}" for i in range(8)]
for m in range(8):
    row = []
    for n in range(8):
        p = o.basis(m) * o.basis(n)
        k = next(i for i, v in enumerate(p.coeffs) if v)
        row.append(("-" if p.coeffs[k] < 0 else " ") + names[k])
    print(" ".join(row))

# %% [markdown]
# Doubling the quaternions with alpha = -1 lands on the same table, so the
# isomorphism search returns the identity permutation with all signs +1.

# %%
d = double(structure_tensor(4), -1)
print("doubled quaternions -> octonions:", find_isomorphism(d, o))

# %%
rng = random.Random(0)
x, y = random_element(o, rng), random_element(o, rng)
lhs = x * y
print("|xy|^2 == |x|^2 |y|^2:", (lhs * conjugate(lhs)).coeffs[0] == (x * conjugate(x)).coeffs[0] * (y * conjugate(y)).coeffs[0])
print("flexible law x(yx) == (xy)x:", x * (y * x) == (x * y) * x)

# %%
print(homomorphism_check(50, seed=1))
e3 = o.basis(3)
print("epsilon sandwich gives the conjugate:", conjugate_by_epsilon(embed(e3), check=False) == embed(conjugate(e3)))
