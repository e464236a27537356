//! Meixner matrix ensembles on real symmetric, complex Hermitian and
//! quaternionic Hermitian matrices.
//!
//! The crate implements the six families of rotation-invariant laws whose
//! i.i.d. copies satisfy the quadratic regression identity
//! `E((X-Y)^2 | X+Y) = A (X+Y)^2 + B (X+Y) + C I`, together with
//!
//! * samplers for the families with exact finite constructions (Bernoulli
//!   projection mixtures, binomial, Poisson, negative binomial, Gaussian),
//! * closed-form Laplace transforms and their domains for every family,
//! * the Psi endomorphism that turns cumulant Hessians into conditional
//!   second moments, and residual checks of the transform equations,
//! * the second-order differential operator acting on functions of the
//!   elementary symmetric coordinates, with the closed 2x2 solutions,
//! * one-part Jack polynomials and the Jack series for rank-one projections,
//! * a statistical verification engine producing machine-readable reports.
//!
//! Start with the runnable examples (`cargo run --example ...`) or the thin
//! `meixner` binary for batch runs.

pub mod algebra;
pub mod ensembles;
pub mod error;
pub mod special;

pub use error::{Error, Result};
