//! Exact linear algebra over 𝔽ₚ, ℚ and ℤ.

pub mod domain;
pub mod matrix;
pub mod reduce;
pub mod subquotient;

pub use domain::{Domain, Scalar};
pub use matrix::{Matrix, MatrixJson};
pub use reduce::{
    in_span, inverse, is_invertible, kernel, rank, rank_kernel_image, smith_normal_form, solve, solve_matrix,
    span_basis, Inconsistency, SmithDecomposition,
};
pub use subquotient::{exactness_at, induced_map, ExactnessCertificate, HomologyGroup, Presented, Subquotient};
