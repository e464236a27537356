//! Canonical orthonormal basis of the Hermitian matrix space.

use super::matrix::{check_beta, space_dim, MatrixH, QMatrix};
use crate::error::Result;

/// The canonical orthonormal basis under `<x|y> = Re tr(xy)`.
///
/// Ordering: diagonal units `E_ii` for i = 1..n, then for every pair i < j in
/// lexicographic order the matrices `(u E_ij + conj(u) E_ji) / sqrt(2)` with
/// the unit u running through 1 (beta >= 1), i (beta >= 2), j, k (beta = 4).
/// All serialization of coordinates depends on this ordering.
pub fn canonical_basis(n: usize, beta: usize) -> Result<Vec<MatrixH>> {
    check_beta(beta)?;
    let dim = space_dim(n, beta);
    let mut basis = Vec::with_capacity(dim);
    for a in 0..dim {
        let mut coords = vec![0.0; dim];
        coords[a] = 1.0;
        basis.push(MatrixH::from_coords(n, beta, coords)?);
    }
    Ok(basis)
}

/// Entry arrays of the canonical basis, cached by callers that take many
/// products (the coordinate unit vectors expand to these Hermitian matrices).
pub fn canonical_basis_entries(n: usize, beta: usize) -> Result<Vec<QMatrix>> {
    Ok(canonical_basis(n, beta)?
        .iter()
        .map(MatrixH::to_entries)
        .collect())
}
