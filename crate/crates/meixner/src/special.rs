//! Normalized Bessel functions, their positive zeros, Pochhammer symbols and
//! integer partitions.
//!
//! The normalized Bessel functions are
//! `J~_nu(x) = Gamma(nu+1) (2/x)^nu J_nu(x)` and
//! `I~_nu(x) = Gamma(nu+1) (2/x)^nu I_nu(x)`,
//! entire functions of x^2 with value 1 at the origin. Everything is
//! evaluated through the single power series in z = x^2,
//! `phi_nu(z) = sum_k z^k / (4^k k! (nu+1)_k)`,
//! which also handles slightly negative arguments without branch issues.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_SERIES_TERMS: usize = 200;

/// Gamma function by the Lanczos approximation (g = 7, 9 coefficients,
/// relative accuracy around 1e-13 on the arguments used here).
pub fn gamma(x: f64) -> f64 {
    const P: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut t = P[0];
        for (i, p) in P.iter().enumerate().skip(1) {
            t += p / (x + i as f64);
        }
        let w = x + 7.5;
        (2.0 * std::f64::consts::PI).sqrt() * w.powf(x + 0.5) * (-w).exp() * t
    }
}

/// `I~_nu(sqrt(z))` as a function of z; for z < 0 this equals
/// `J~_nu(sqrt(-z))`. Entire in z, so near-degenerate arguments are safe.
pub fn bessel_i_norm_sq(nu: f64, z: f64) -> Result<f64> {
    check_nu(nu)?;
    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    for k in 1..=MAX_SERIES_TERMS {
        let kf = k as f64;
        term *= z / (4.0 * kf * (nu + kf));
        sum += term;
        if term.abs() < 1e-16 * sum.abs().max(1.0) {
            break;
        }
    }
    Ok(sum)
}

/// Complex-argument variant of [`bessel_i_norm_sq`].
pub fn bessel_i_norm_sq_complex(nu: f64, z: Complex64) -> Result<Complex64> {
    check_nu(nu)?;
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for k in 1..=MAX_SERIES_TERMS {
        let kf = k as f64;
        term *= z / Complex64::new(4.0 * kf * (nu + kf), 0.0);
        sum += term;
        if term.norm() < 1e-16 * sum.norm().max(1.0) {
            break;
        }
    }
    Ok(sum)
}

fn check_nu(nu: f64) -> Result<()> {
    if nu <= -1.0 {
        return Err(Error::InvalidParam(format!(
            "Bessel order must exceed -1, got nu={nu}"
        )));
    }
    Ok(())
}

/// Normalized modified Bessel function `I~_nu(x)`, even in x.
pub fn bessel_i_norm(nu: f64, x: f64) -> Result<f64> {
    bessel_i_norm_sq(nu, x * x)
}

/// Normalized Bessel function `J~_nu(x)`, even in x.
pub fn bessel_j_norm(nu: f64, x: f64) -> Result<f64> {
    bessel_i_norm_sq(nu, -(x * x))
}

pub fn bessel_i_norm_complex(nu: f64, x: Complex64) -> Result<Complex64> {
    bessel_i_norm_sq_complex(nu, x * x)
}

pub fn bessel_j_norm_complex(nu: f64, x: Complex64) -> Result<Complex64> {
    bessel_i_norm_sq_complex(nu, -(x * x))
}

/// First `count` positive zeros of `J~_nu`, found by scanning with step 0.5
/// and bisecting each bracket to absolute accuracy ~1e-12.
pub fn bessel_j_norm_zeros(nu: f64, count: usize) -> Result<Vec<f64>> {
    check_nu(nu)?;
    let mut zeros = Vec::with_capacity(count);
    let mut x = 0.25f64;
    let mut fx = bessel_i_norm_sq(nu, -(x * x))?;
    let step = 0.5;
    while zeros.len() < count {
        let x_next = x + step;
        let f_next = bessel_i_norm_sq(nu, -(x_next * x_next))?;
        if fx == 0.0 {
            zeros.push(x);
        } else if fx * f_next < 0.0 {
            let (mut lo, mut hi) = (x, x_next);
            let mut flo = fx;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let fmid = bessel_i_norm_sq(nu, -(mid * mid))?;
                if flo * fmid <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fmid;
                }
                if hi - lo < 1e-13 {
                    break;
                }
            }
            zeros.push(0.5 * (lo + hi));
        }
        x = x_next;
        fx = f_next;
    }
    Ok(zeros)
}

/// The first positive zero of `J~_{(beta-1)/2}`, which bounds the domain of
/// the hyperbolic family: about 2.40483 (beta=1), pi (beta=2), 4.49341
/// (beta=4).
pub fn bessel_first_zero(beta: usize) -> Result<f64> {
    crate::algebra::check_beta(beta)?;
    let nu = (beta as f64 - 1.0) / 2.0;
    Ok(bessel_j_norm_zeros(nu, 1)?[0])
}

/// Rising factorial `(b)_k = b (b+1) ... (b+k-1)`, with `(b)_0 = 1`.
pub fn pochhammer(b: f64, k: usize) -> f64 {
    let mut p = 1.0;
    for i in 0..k {
        p *= b + i as f64;
    }
    p
}

/// An integer partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParam(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// Multiplicity vector `(nu_1, ..., nu_k)` with `nu_j` = number of parts
    /// equal to j; `sum_j j nu_j` is the weight.
    pub fn multiplicities(&self) -> Vec<usize> {
        let k = self.parts.first().copied().unwrap_or(0);
        let mut nu = vec![0usize; k];
        for &p in &self.parts {
            nu[p - 1] += 1;
        }
        nu
    }
}

/// Generalized Pochhammer symbol
/// `(b)_{lambda; beta} = prod_j (b - (beta/2)(j-1))_{lambda_j}`.
pub fn beta_pochhammer(b: f64, lambda: &Partition, beta: usize) -> f64 {
    let half = beta as f64 / 2.0;
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(idx, &part)| pochhammer(b - half * idx as f64, part))
        .product()
}

/// All partitions of k in reverse lexicographic order, i.e. starting from
/// `(k)` and ending at `(1, 1, ..., 1)`. k up to 40 (desk scale).
pub fn partitions(k: usize) -> Result<Vec<Partition>> {
    if k > 40 {
        return Err(Error::InvalidParam(format!(
            "partition enumeration limited to k <= 40, got {k}"
        )));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        let top = remaining.min(max_part);
        for p in (1..=top).rev() {
            current.push(p);
            rec(remaining - p, p, current, out);
            current.pop();
        }
    }
    rec(k, k.max(1), &mut current, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_small_values() {
        assert!((gamma(1.0) - 1.0).abs() < 1e-13);
        assert!((gamma(5.0) - 24.0).abs() < 24.0 * 1e-13);
        assert!((gamma(0.5) - std::f64::consts::PI.sqrt()).abs() < 1e-13);
        assert!((gamma(1.5) - 0.5 * std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn normalized_bessel_at_zero_and_parity() {
        for &nu in &[0.0, 0.5, 1.5, 2.0] {
            assert_eq!(bessel_i_norm(nu, 0.0).unwrap(), 1.0);
            assert_eq!(bessel_j_norm(nu, 0.0).unwrap(), 1.0);
            for &x in &[0.3, 1.0, 2.7] {
                let a = bessel_i_norm(nu, x).unwrap();
                let b = bessel_i_norm(nu, -x).unwrap();
                assert!((a - b).abs() <= 1e-14 * a.abs());
            }
        }
        assert!(bessel_i_norm(-1.0, 1.0).is_err());
    }

    #[test]
    fn half_integer_closed_forms() {
        // I~_{1/2}(x) = sinh(x)/x and J~_{1/2}(x) = sin(x)/x
        for &x in &[0.5, 1.0, 2.0] {
            let i = bessel_i_norm(0.5, x).unwrap();
            assert!((i - x.sinh() / x).abs() < 1e-12, "x={x}");
        }
        let j = bessel_j_norm(0.5, 1.0).unwrap();
        assert!((j - 1.0f64.sin()).abs() < 1e-12);
    }

    #[test]
    fn first_zero_matches_classical_values() {
        let l1 = bessel_first_zero(1).unwrap();
        let l2 = bessel_first_zero(2).unwrap();
        let l4 = bessel_first_zero(4).unwrap();
        assert!((l1 - 2.40483).abs() < 1e-4, "{l1}");
        assert!((l2 - std::f64::consts::PI).abs() < 1e-10, "{l2}");
        assert!((l4 - 4.49341).abs() < 1e-4, "{l4}");
        for &(beta, l) in &[(1usize, l1), (2, l2), (4, l4)] {
            let nu = (beta as f64 - 1.0) / 2.0;
            assert!(bessel_j_norm(nu, l).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn derivative_recurrence_by_finite_differences() {
        // d/dz I~_nu(sqrt z) = I~_{nu+1}(sqrt z) / (4 (nu + 1))
        let h = 1e-6;
        for &nu in &[0.0, 0.5, 1.5] {
            for &z in &[-2.0, -0.5, 0.4, 1.7, 3.0] {
                let fd = (bessel_i_norm_sq(nu, z + h).unwrap()
                    - bessel_i_norm_sq(nu, z - h).unwrap())
                    / (2.0 * h);
                let rhs = bessel_i_norm_sq(nu + 1.0, z).unwrap() / (4.0 * (nu + 1.0));
                assert!((fd - rhs).abs() < 1e-7, "nu={nu} z={z}: {fd} vs {rhs}");
            }
        }
    }

    #[test]
    fn product_over_zeros_approximates_series() {
        // J~_nu(z) = prod_k (1 - z^2/j_k^2). Truncating after K zeros leaves
        // a relative error ~ z^2 sum_{k>K} 1/j_k^2 ~ z^2/(pi^2 K), i.e. a few
        // 1e-3 at K = 50 inside the first zero and below 1e-3 at K = 250.
        for &beta in &[1usize, 2, 4] {
            let nu = (beta as f64 - 1.0) / 2.0;
            let zeros = bessel_j_norm_zeros(nu, 250).unwrap();
            let l = zeros[0];
            for &frac in &[0.2, 0.5, 0.8, 0.95] {
                let z = frac * l;
                let series = bessel_j_norm(nu, z).unwrap();
                let prod50: f64 = zeros[..50]
                    .iter()
                    .map(|jk| 1.0 - z * z / (jk * jk))
                    .product();
                assert!(
                    (prod50 - series).abs() < 5e-3,
                    "beta={beta} z={z}: {prod50} vs {series}"
                );
                let prod250: f64 = zeros.iter().map(|jk| 1.0 - z * z / (jk * jk)).product();
                assert!(
                    (prod250 - series).abs() < 1e-3,
                    "beta={beta} z={z}: {prod250} vs {series}"
                );
            }
        }
    }

    // Double-double (compensated) reference summation of the series, kept
    // independent of the production path.
    fn bessel_sq_dd(nu: f64, z: f64) -> f64 {
        fn two_sum(a: f64, b: f64) -> (f64, f64) {
            let s = a + b;
            let bb = s - a;
            (s, (a - (s - bb)) + (b - bb))
        }
        fn two_prod(a: f64, b: f64) -> (f64, f64) {
            let p = a * b;
            (p, a.mul_add(b, -p))
        }
        // value as unevaluated sum hi+lo
        let (mut hi, mut lo) = (1.0f64, 0.0f64);
        let (mut thi, mut tlo) = (1.0f64, 0.0f64);
        for k in 1..=400 {
            let kf = k as f64;
            let denom = 4.0 * kf * (nu + kf);
            // term *= z / denom in double-double
            let (p1, e1) = two_prod(thi, z / denom);
            let p2 = tlo * (z / denom) + e1;
            thi = p1 + p2;
            tlo = p2 - (thi - p1);
            let (s, e) = two_sum(hi, thi);
            hi = s;
            lo += e + tlo;
            if thi.abs() < 1e-40 * hi.abs().max(1.0) {
                break;
            }
        }
        hi + lo
    }

    #[test]
    fn series_matches_compensated_reference_on_grid() {
        for &nu in &[0.0, 0.5, 1.5] {
            let mut z = -16.0;
            while z <= 16.0 {
                let fast = bessel_i_norm_sq(nu, z).unwrap();
                let slow = bessel_sq_dd(nu, z);
                assert!(
                    (fast - slow).abs() <= 1e-13 * (1.0 + slow.abs()),
                    "nu={nu} z={z}: {fast} vs {slow}"
                );
                z += 1.0;
            }
        }
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(3.7, 0), 1.0);
        assert_eq!(pochhammer(1.0, 5), 120.0);
        assert!((pochhammer(1.5, 2) - 3.75).abs() < 1e-15);
    }

    #[test]
    fn beta_pochhammer_values() {
        let one_part = Partition::new(vec![3]).unwrap();
        assert_eq!(beta_pochhammer(2.5, &one_part, 2), pochhammer(2.5, 3));
        assert_eq!(beta_pochhammer(2.5, &Partition::empty(), 4), 1.0);
        // b = 2, lambda = (2,1), beta = 2: (2)_2 * (1)_1 = 6
        let lam = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(beta_pochhammer(2.0, &lam, 2), 6.0);
    }

    // Independent counting oracle: DP over maximal part.
    fn count_partitions(k: usize) -> usize {
        let mut table = vec![vec![0usize; k + 1]; k + 1];
        for row in table.iter_mut() {
            row[0] = 1;
        }
        for max in 1..=k {
            for total in 1..=k {
                table[max][total] =
                    table[max - 1][total] + if total >= max { table[max][total - max] } else { 0 };
            }
        }
        table[k][k]
    }

    #[test]
    fn partition_enumeration_counts_and_order() {
        assert_eq!(partitions(0).unwrap().len(), 1);
        assert_eq!(partitions(4).unwrap().len(), 5);
        assert_eq!(partitions(10).unwrap().len(), 42);
        for k in 0..=12 {
            assert_eq!(partitions(k).unwrap().len(), count_partitions(k), "k={k}");
        }
        let p4 = partitions(4).unwrap();
        let listed: Vec<Vec<usize>> = p4.iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(
            listed,
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
        assert!(partitions(41).is_err());
    }

    #[test]
    fn multiplicity_vectors() {
        let p = Partition::new(vec![3, 1, 1]).unwrap();
        assert_eq!(p.multiplicities(), vec![2, 0, 1]);
        assert_eq!(p.weight(), 5);
        assert_eq!(p.length(), 3);
    }
}
