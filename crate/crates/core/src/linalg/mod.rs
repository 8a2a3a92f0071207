//! Dense complex linear algebra on small ambient spaces.

mod eigen;
mod matrix;
mod solve;
mod svd;
mod vector;

pub use eigen::{extremal_eigenvalues, hermitian_eigen, operator_norm, EigenDecomposition};
pub use matrix::{HermMatrix, Matrix, HERMITIAN_TOL};
pub use solve::{solve_hpd, Cholesky};
pub use svd::{numerical_rank, singular_values, svd_columns, ColumnSvd};
pub use vector::{inner_product, project_complement, Scalar, Vector};
