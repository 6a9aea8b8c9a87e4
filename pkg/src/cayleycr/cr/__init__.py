"""Cauchy-Riemann systems over the composition algebras."""
from .forms import (
    FORMS,
    block_reshuffle,
    circle_product,
    complex_form,
    cross7,
    form_function,
    form_symbol,
    jacobian,
    jacobian_fd,
    jadczyk_form,
    kappa_form,
    quaternionic_form,
    real_form,
    same_zero_set,
    vector_form,
)
from .kappa import (
    FAMILY_PAIRING,
    apply_symbol,
    generate_analytic_family,
    same_solution_space,
    solve_analytic_polynomials,
    solve_form_polynomials,
    solve_kappa_polynomials,
    symbol_of,
    t_map,
    t_map_factor,
    t_map_factors,
)
from .operators import (
    CR_DIMENSIONS,
    VARIANTS,
    SymbolicOperator,
    dirac_matrix,
    factorization_check,
    laplacian_operator,
    lemma2_identity_check,
)
from .residuals import (
    ResidualReport,
    check_function,
    laplacian,
    laplacian_residual,
    left_multiplication_matrix,
    trace_derivative_check,
    residual_blocks,
    residual_fd,
    residual_jadczyk,
    residual_kappa,
    residual_real,
    residual_vector_form,
    sample_points,
    sign_diagonal_survey,
    trace_commutation_check,
)
