//! Dense linear algebra kernels used by the operator and invertibility
//! modules.

mod eigen;
mod matrix;
mod svd;

pub use eigen::{balance, hessenberg_eigenvalues, polynomial_roots};
pub use matrix::DenseMatrix;
pub use svd::{
    bidiagonal_max_singular_value, largest_singular_value, largest_singular_value_dense,
    largest_singular_value_lanczos, DENSE_SVD_LIMIT,
};
