//! Dense symmetric eigensolver, square-root-endpoint quadrature and bracketed
//! root finding.

mod eigen;
mod matrix;
mod quadrature;
mod roots;

pub use eigen::{eig_symmetric, EigenDecomposition};
pub use matrix::{SparseVector, SymmetricMatrix};
pub use quadrature::{integrate_adaptive, integrate_sqrt_barrier, DEFAULT_QUAD_TOL};
pub use roots::find_root_bracketed;
