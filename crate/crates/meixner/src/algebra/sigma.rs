//! Elementary symmetric functions of the spectrum and their gradients.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::matrix::{MatrixH, QMatrix};
use crate::error::{Error, Result};

/// A point `(sigma_1, ..., sigma_n)` in elementary-symmetric coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaPoint {
    pub n: usize,
    pub sigma: Vec<f64>,
}

impl SigmaPoint {
    pub fn new(sigma: Vec<f64>) -> Self {
        SigmaPoint {
            n: sigma.len(),
            sigma,
        }
    }

    /// `sigma_j` with the convention `sigma_0 = 1` and `sigma_j = 0` for
    /// j < 0 or j > n.
    pub fn get(&self, j: isize) -> f64 {
        if j == 0 {
            1.0
        } else if j < 0 || j as usize > self.n {
            0.0
        } else {
            self.sigma[j as usize - 1]
        }
    }

    /// Roots of the associated monic polynomial
    /// `x^n - sigma_1 x^(n-1) + ... + (-1)^n sigma_n`,
    /// computed from the companion matrix.
    pub fn roots(&self) -> Result<Vec<num_complex::Complex64>> {
        let n = self.n;
        if n == 0 {
            return Ok(vec![]);
        }
        // monic coefficients a_k of x^k, k = 0..n-1: a_{n-m} = (-1)^m sigma_m
        let mut a = vec![0.0f64; n];
        for m in 1..=n {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            a[n - m] = sign * self.sigma[m - 1];
        }
        let mut c = DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            c[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            c[(i, n - 1)] = -a[i];
        }
        let ev = c.complex_eigenvalues();
        Ok(ev.iter().map(|z| num_complex::Complex64::new(z.re, z.im)).collect())
    }

    /// Membership in the open region where the associated polynomial has n
    /// distinct real roots. `Distinct` uses the separation floor
    /// `1e-9 * (1 + spectral radius)`; imaginary parts are measured against
    /// the same floor.
    pub fn in_distinct_real_region(&self) -> Result<bool> {
        let roots = self.roots()?;
        let radius = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let floor = 1e-9 * (1.0 + radius);
        if roots.iter().any(|z| z.im.abs() > floor) {
            return Ok(false);
        }
        let mut re: Vec<f64> = roots.iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(re.windows(2).all(|w| w[1] - w[0] > floor))
    }
}

/// Elementary symmetric functions `e_1, ..., e_n` of a list of reals
/// (coefficients of `prod_i (1 + z x_i)`).
pub fn elementary_symmetric(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut e = vec![0.0f64; n + 1];
    e[0] = 1.0;
    for (count, &x) in values.iter().enumerate() {
        for j in (1..=count + 1).rev() {
            e[j] += x * e[j - 1];
        }
    }
    e.remove(0);
    e
}

/// The sigma coordinates of a matrix: coefficients of `det(I + z theta)`,
/// so `sigma_1 = tr theta` and `sigma_n = det theta`.
pub fn sigma(theta: &MatrixH) -> Result<SigmaPoint> {
    let ev = theta.eigenvalues()?;
    Ok(SigmaPoint::new(elementary_symmetric(&ev)))
}

/// Gradient matrix of `sigma_m` with respect to `<.|.>`:
/// `sigma_m'(theta) = sum_{i=0}^{m-1} (-1)^{m-1-i} sigma_i(theta) theta^{m-1-i}`.
///
/// For m = 1 this is the identity; for m > n the Cayley-Hamilton relation
/// collapses the sum to zero, returned exactly.
pub fn sigma_grad(theta: &MatrixH, m: usize) -> Result<MatrixH> {
    if m == 0 {
        return Err(Error::InvalidParam("sigma index must be >= 1".into()));
    }
    let n = theta.n();
    if m > n {
        return Ok(MatrixH::zero(n, theta.beta()));
    }
    let s = sigma(theta)?;
    Ok(sigma_grad_with(theta, m, &s))
}

/// Same as [`sigma_grad`] with precomputed sigma coordinates; also accepts
/// m > n, where the alternating sum is evaluated literally.
pub fn sigma_grad_with(theta: &MatrixH, m: usize, s: &SigmaPoint) -> MatrixH {
    let n = theta.n();
    let entries = theta.to_entries();
    let mut power = QMatrix::identity(n); // theta^0
    let mut powers = vec![power.clone()];
    for _ in 1..m {
        power = power.mul(&entries);
        powers.push(power.clone());
    }
    let mut acc = QMatrix::zero(n);
    for i in 0..m {
        let sign = if (m - 1 - i) % 2 == 0 { 1.0 } else { -1.0 };
        acc = acc.add(&powers[m - 1 - i].scale(sign * s.get(i as isize)));
    }
    MatrixH::from_entries(&acc, theta.beta())
}

/// Power sums `tr(theta^k)` for k = 1..=kmax, computed by repeated matrix
/// multiplication (independent of the eigenvalue route).
pub fn power_sums(theta: &MatrixH, kmax: usize) -> Vec<f64> {
    let entries = theta.to_entries();
    let mut acc = QMatrix::identity(theta.n());
    let mut out = Vec::with_capacity(kmax);
    for _ in 1..=kmax {
        acc = acc.mul(&entries);
        out.push(acc.trace_re());
    }
    out
}
