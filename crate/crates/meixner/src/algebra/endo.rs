//! Symmetric endomorphisms of the matrix space and the Psi operator.
//!
//! Psi is the unique linear map on symmetric endomorphisms sending every
//! rank-one tensor `y (x) y` (h -> y tr(yh)) to the two-sided conjugation
//! `h -> y h y`. It converts Hessians of cumulant transforms into conditional
//! second moments; only its value at the identity matrix is ever needed here.

use super::basis::canonical_basis_entries;
use super::matrix::{space_dim, MatrixH, QMatrix};
use crate::error::{Error, Result};

/// A symmetric endomorphism, stored as its coefficient matrix
/// `coeff[a][b] = <e_a | phi(e_b)>` in the canonical basis.
#[derive(Debug, Clone)]
pub struct SymEndo {
    n: usize,
    beta: usize,
    dim: usize,
    coeff: Vec<f64>, // dim x dim, row-major
}

impl SymEndo {
    pub fn new(n: usize, beta: usize, coeff: Vec<f64>) -> Result<Self> {
        let dim = space_dim(n, beta);
        if coeff.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "endomorphism for n={n}, beta={beta} needs {}x{dim} coefficients",
                dim
            )));
        }
        Ok(SymEndo {
            n,
            beta,
            dim,
            coeff,
        })
    }

    pub fn zero(n: usize, beta: usize) -> Self {
        let dim = space_dim(n, beta);
        SymEndo {
            n,
            beta,
            dim,
            coeff: vec![0.0; dim * dim],
        }
    }

    pub fn identity(n: usize, beta: usize) -> Self {
        let mut e = SymEndo::zero(n, beta);
        for a in 0..e.dim {
            e.coeff[a * e.dim + a] = 1.0;
        }
        e
    }

    /// Rank-one tensor `y (x) y` with `coeff[a][b] = y_a y_b`.
    pub fn tensor_square(y: &MatrixH) -> Self {
        let dim = y.dim();
        let mut coeff = vec![0.0; dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                coeff[a * dim + b] = y.coord(a) * y.coord(b);
            }
        }
        SymEndo {
            n: y.n(),
            beta: y.beta(),
            dim,
            coeff,
        }
    }

    /// Two-sided conjugation `h -> y h y` with `coeff[a][b] = <e_a | y e_b y>`.
    pub fn conjugation(y: &MatrixH) -> Result<Self> {
        let (n, beta) = (y.n(), y.beta());
        let dim = y.dim();
        let basis = canonical_basis_entries(n, beta)?;
        let ye = y.to_entries();
        let mut coeff = vec![0.0; dim * dim];
        for b in 0..dim {
            let col = MatrixH::from_entries(&ye.mul(&basis[b]).mul(&ye), beta);
            for a in 0..dim {
                coeff[a * dim + b] = col.coord(a);
            }
        }
        Ok(SymEndo {
            n,
            beta,
            dim,
            coeff,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.coeff[a * self.dim + b]
    }

    pub fn set(&mut self, a: usize, b: usize, v: f64) {
        self.coeff[a * self.dim + b] = v;
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in 0..self.dim {
            for b in (a + 1)..self.dim {
                worst = worst.max((self.get(a, b) - self.get(b, a)).abs());
            }
        }
        worst
    }

    /// Apply the endomorphism to a matrix (coefficient-matrix times
    /// coordinate vector).
    pub fn apply(&self, h: &MatrixH) -> MatrixH {
        let mut out = MatrixH::zero(self.n, self.beta);
        for a in 0..self.dim {
            let mut acc = 0.0;
            for b in 0..self.dim {
                acc += self.get(a, b) * h.coord(b);
            }
            out.set_coord(a, acc);
        }
        out
    }

    pub fn add(&self, other: &SymEndo) -> SymEndo {
        assert_eq!((self.n, self.beta), (other.n, other.beta));
        SymEndo {
            n: self.n,
            beta: self.beta,
            dim: self.dim,
            coeff: self
                .coeff
                .iter()
                .zip(&other.coeff)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn scale(&self, s: f64) -> SymEndo {
        SymEndo {
            n: self.n,
            beta: self.beta,
            dim: self.dim,
            coeff: self.coeff.iter().map(|x| x * s).collect(),
        }
    }
}

/// Evaluate `Psi(phi)(I_n)` for a symmetric endomorphism.
///
/// Polarization of the defining relation gives
/// `Psi(phi)(I) = 1/2 sum_{a,b} coeff[a][b] (e_a e_b + e_b e_a)`,
/// i.e. the Hermitian part of `sum_a e_a phi(e_a)`.
pub fn psi_apply(phi: &SymEndo) -> Result<MatrixH> {
    let worst = phi.max_asymmetry();
    let scale = phi.coeff.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if worst > 1e-12 * (1.0 + scale) {
        return Err(Error::InvalidParam(format!(
            "endomorphism coefficient matrix is not symmetric (max asymmetry {worst:e})"
        )));
    }
    let basis = canonical_basis_entries(phi.n, phi.beta)?;
    let n = phi.n;
    let mut acc = QMatrix::zero(n);
    for a in 0..phi.dim {
        // v_a = phi(e_a) has coordinates given by column a == row a of coeff
        let row = MatrixH::from_coords(
            n,
            phi.beta,
            (0..phi.dim).map(|b| phi.get(a, b)).collect(),
        )?;
        acc = acc.add(&basis[a].mul(&row.to_entries()));
    }
    // Hermitian part: the antisymmetric remainder cancels in the polarized sum
    Ok(MatrixH::from_entries(&acc, phi.beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::basis::canonical_basis;
    use rand::prelude::*;
    use rand_chacha::ChaCha12Rng;

    fn random_matrix(n: usize, beta: usize, rng: &mut impl Rng) -> MatrixH {
        let dim = space_dim(n, beta);
        let coords = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        MatrixH::from_coords(n, beta, coords).unwrap()
    }

    #[test]
    fn tensor_square_maps_to_matrix_square() {
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        for &beta in &[1usize, 2, 4] {
            for n in 2..=4usize {
                for _ in 0..20 {
                    let y = random_matrix(n, beta, &mut rng);
                    let out = psi_apply(&SymEndo::tensor_square(&y)).unwrap();
                    let want = y.square();
                    let err = out.sub(&want).max_abs_coord();
                    assert!(err < 1e-12, "n={n} beta={beta}: {err:e}");
                }
            }
        }
    }

    #[test]
    fn conjugation_identity() {
        // Psi(P_y) = (beta/2) y (x) y + (1 - beta/2) P_y, evaluated at I:
        // (beta/2) y tr(y) + (1 - beta/2) y^2.
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        for &beta in &[1usize, 2, 4] {
            for n in 2..=4usize {
                for _ in 0..20 {
                    let y = random_matrix(n, beta, &mut rng);
                    let out = psi_apply(&SymEndo::conjugation(&y).unwrap()).unwrap();
                    let b2 = beta as f64 / 2.0;
                    let want = y.scale(b2 * y.trace()).add(&y.square().scale(1.0 - b2));
                    let err = out.sub(&want).max_abs_coord();
                    assert!(err < 1e-12, "n={n} beta={beta}: {err:e}");
                }
            }
        }
    }

    #[test]
    fn identity_endomorphism_matches_direct_summation() {
        // Psi(id)(I) = sum_a e_a^2, a rotation-invariant multiple of I.
        for &beta in &[1usize, 2, 4] {
            for n in 2..=3usize {
                let out = psi_apply(&SymEndo::identity(n, beta)).unwrap();
                let basis = canonical_basis(n, beta).unwrap();
                let mut oracle = MatrixH::zero(n, beta);
                for e in &basis {
                    oracle = oracle.add(&e.square());
                }
                assert!(out.sub(&oracle).max_abs_coord() < 1e-12);
                // known multiple: 1 + beta (n - 1) / 2 on the diagonal
                let c = 1.0 + beta as f64 * (n as f64 - 1.0) / 2.0;
                let want = MatrixH::identity(n, beta).scale(c);
                assert!(out.sub(&want).max_abs_coord() < 1e-12);
            }
        }
    }

    #[test]
    fn asymmetric_coefficients_rejected() {
        let mut phi = SymEndo::identity(2, 1);
        phi.set(0, 1, 1.0);
        assert!(psi_apply(&phi).is_err());
    }
}
