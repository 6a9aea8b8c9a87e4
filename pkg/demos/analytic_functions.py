"""Which octonion functions satisfy the Cauchy-Riemann system, in every formulation."""
# %%
from cayleycr.cr.kappa import generate_analytic_family, solve_analytic_polynomials
from cayleycr.cr.operators import dirac_matrix
from cayleycr.cr.residuals import check_function
from cayleycr.expr import lower

# %% [markdown]
# x^2 is analytic for complex numbers only.  In higher dimension the residual
# picks up a constant in the real component.

# %%
for n in (2, 4, 8):
    rep = check_function(lower("x^2", n), samples=5)
    print(n, rep.verdict, rep.max_residual)

# %%
print(dirac_matrix(8, "antianalytic").to_strings()[0])
for n in (2, 4, 8):
    sizes = [len(solve_analytic_polynomials(n, k)) for k in range(3)]
    print(f"N={n}: analytic polynomial solutions up to degree 0,1,2 -> {sizes}")

# %% [markdown]
# Analytic octonion functions assembled from quaternion pieces, checked in
# every block decomposition.

# %%
fam = generate_analytic_family(8, 3, seed=5, degree=2)
print("discarded candidates:", fam.discarded)
for u in fam.functions:
    print([check_function(u, form=f, samples=5).verdict for f in ("real", "quat", "complex", "vector")],
          "kappa=2:", check_function(u, form="kappa", kappa=2, samples=5).verdict)
