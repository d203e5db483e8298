//! The classification theorems as executable checks: double pyramid
//! families, the explicit planar formulas, one-dimensional representations,
//! functional equations and exact basis fits.

mod dim1;
mod fit;
mod functional;
mod planar;
mod pyramid;

pub use dim1::{
    dim1_even_representation, dim1_odd_representation, segment_handle, two_adic_log_handle, two_adic_valuation,
    Dim1Segment,
};
pub use fit::{
    fit_linear_span, fit_matrix_classification, fit_scalar_classification, fit_vector_classification, holdout_set,
    matrix_training_set, scalar_basis, scalar_training_set, vector_basis, vector_training_set, FitResult,
};
pub use functional::{
    check_cauchy_additive, check_homogeneous_solution, check_homogeneous_solution_for,
    check_inhomogeneous_functional_eq, check_inhomogeneous_functional_eq_for, functional_eq_sides, homogeneous_sides,
    VectorFn,
};
pub use planar::{
    asymmetric_r2_instance, check_q2_against_moment, eval_q2_formula, eval_r2_formula, extract_f_from_moment,
    fit_f_quadratic, fit_r2_family, q2_pyramid_terms, random_r2_family, verify_r2_against_moment, ScalarFn,
};
pub use pyramid::{is_double_pyramid, make_double_pyramid, DoublePyramidParams};
