//! Matrix arithmetic over the three division algebras: the canonical
//! orthonormal basis, eigenvalues, elementary symmetric functions with their
//! gradients, and the Psi endomorphism. All operations are pure functions of
//! their inputs.

mod basis;
mod endo;
pub mod fd;
mod matrix;
pub mod quat;
mod sigma;

pub use basis::{canonical_basis, canonical_basis_entries};
pub use endo::{psi_apply, SymEndo};
pub use matrix::{check_beta, inner, space_dim, MatrixH, QMatrix};
pub use sigma::{
    elementary_symmetric, power_sums, sigma, sigma_grad, sigma_grad_with, SigmaPoint,
};
