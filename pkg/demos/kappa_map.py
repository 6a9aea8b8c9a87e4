"""The kappa family of first-order systems and the rescaling map between them."""
# %%
from cayleycr.cr.kappa import solve_kappa_polynomials, symbol_of, t_map, t_map_factors, apply_symbol
from cayleycr.cr.residuals import laplacian

for n in (4, 8):
    for kappa in (n, 2, 0):
        basis = solve_kappa_polynomials(n, kappa, 2)
        harmonic = all(laplacian(u).is_zero() for u in basis)
        print(f"N={n} kappa={kappa}: {len(basis)} solutions of degree <= 2, harmonic: {harmonic}")

# %% [markdown]
# Scaling the real component by m = (kappa - 1)/(kappa' - 1) carries one
# solution space onto the other.  The alternative factors fail.

# %%
n = 8
f = t_map_factors(n, 2, n)
print("\n".join(f.lines()))
target = symbol_of("kappa", n, kappa=2)
basis = solve_kappa_polynomials(n, n, 2)
print("images solving kappa=2:", sum(apply_symbol(target, t_map(u, n, 2)).is_zero() for u in basis), "of", len(basis))
wrong = [u.__class__([u[0] * f.product_form] + list(u)[1:]) for u in basis]
print("with the alternative factor:", sum(apply_symbol(target, w).is_zero() for w in wrong), "of", len(basis))
