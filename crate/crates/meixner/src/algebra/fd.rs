//! Central-difference gradients and Hessians for scalar functions, both on
//! the matrix space (along the canonical basis) and on plain coordinate
//! vectors (used by the sigma-space differential operator).

use super::endo::SymEndo;
use super::matrix::MatrixH;
use crate::error::Result;

/// Step sizes used by the verification routines: gradients at
/// `1e-5 * (1 + |x|)`, Hessians at `1e-4 * (1 + |x|)`.
#[derive(Debug, Clone, Copy)]
pub struct FdOptions {
    pub grad_step: f64,
    pub hess_step: f64,
    /// One level of Richardson extrapolation on the Hessian stencil.
    pub richardson: bool,
}

impl Default for FdOptions {
    fn default() -> Self {
        FdOptions {
            grad_step: 1e-5,
            hess_step: 1e-4,
            richardson: false,
        }
    }
}

/// Gradient of `f` at `theta`, assembled as a matrix in the canonical basis.
pub fn gradient<F>(f: F, theta: &MatrixH, opts: &FdOptions) -> Result<MatrixH>
where
    F: Fn(&MatrixH) -> Result<f64>,
{
    let h = opts.grad_step * (1.0 + theta.norm());
    let dim = theta.dim();
    let mut out = MatrixH::zero(theta.n(), theta.beta());
    let mut point = theta.clone();
    for a in 0..dim {
        let base = theta.coord(a);
        point.set_coord(a, base + h);
        let fp = f(&point)?;
        point.set_coord(a, base - h);
        let fm = f(&point)?;
        point.set_coord(a, base);
        out.set_coord(a, (fp - fm) / (2.0 * h));
    }
    Ok(out)
}

/// Hessian of `f` at `theta` as a symmetric endomorphism in the canonical
/// basis.
pub fn hessian<F>(f: F, theta: &MatrixH, opts: &FdOptions) -> Result<SymEndo>
where
    F: Fn(&MatrixH) -> Result<f64>,
{
    let h = opts.hess_step * (1.0 + theta.norm());
    if opts.richardson {
        // H(h) has O(h^2) error: combine h and h/2.
        let coarse = hessian_step(&f, theta, h)?;
        let fine = hessian_step(&f, theta, h / 2.0)?;
        Ok(fine.scale(4.0 / 3.0).add(&coarse.scale(-1.0 / 3.0)))
    } else {
        hessian_step(&f, theta, h)
    }
}

fn hessian_step<F>(f: &F, theta: &MatrixH, h: f64) -> Result<SymEndo>
where
    F: Fn(&MatrixH) -> Result<f64>,
{
    let dim = theta.dim();
    let mut endo = SymEndo::zero(theta.n(), theta.beta());
    let f0 = f(theta)?;
    let mut point = theta.clone();
    for a in 0..dim {
        let base_a = theta.coord(a);
        point.set_coord(a, base_a + h);
        let fp = f(&point)?;
        point.set_coord(a, base_a - h);
        let fm = f(&point)?;
        point.set_coord(a, base_a);
        endo.set(a, a, (fp - 2.0 * f0 + fm) / (h * h));
    }
    for a in 0..dim {
        for b in (a + 1)..dim {
            let base_a = theta.coord(a);
            let base_b = theta.coord(b);
            let mut eval = |da: f64, db: f64| -> Result<f64> {
                point.set_coord(a, base_a + da);
                point.set_coord(b, base_b + db);
                let v = f(&point);
                point.set_coord(a, base_a);
                point.set_coord(b, base_b);
                v
            };
            let fpp = eval(h, h)?;
            let fpm = eval(h, -h)?;
            let fmp = eval(-h, h)?;
            let fmm = eval(-h, -h)?;
            let val = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
            endo.set(a, b, val);
            endo.set(b, a, val);
        }
    }
    Ok(endo)
}

/// Gradient of a scalar function of plain coordinates, per-component relative
/// step `scale * (1 + |x_i|)`.
pub fn gradient_vec<F>(f: F, x: &[f64], scale: f64) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let mut out = Vec::with_capacity(x.len());
    let mut point = x.to_vec();
    for i in 0..x.len() {
        let h = scale * (1.0 + x[i].abs());
        point[i] = x[i] + h;
        let fp = f(&point)?;
        point[i] = x[i] - h;
        let fm = f(&point)?;
        point[i] = x[i];
        out.push((fp - fm) / (2.0 * h));
    }
    Ok(out)
}

/// Hessian of a scalar function of plain coordinates (symmetric matrix as
/// nested Vec).
pub fn hessian_vec<F>(f: F, x: &[f64], scale: f64) -> Result<Vec<Vec<f64>>>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let n = x.len();
    let mut out = vec![vec![0.0; n]; n];
    let f0 = f(x)?;
    let mut point = x.to_vec();
    for i in 0..n {
        let h = scale * (1.0 + x[i].abs());
        point[i] = x[i] + h;
        let fp = f(&point)?;
        point[i] = x[i] - h;
        let fm = f(&point)?;
        point[i] = x[i];
        out[i][i] = (fp - 2.0 * f0 + fm) / (h * h);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let hi = scale * (1.0 + x[i].abs());
            let hj = scale * (1.0 + x[j].abs());
            let mut eval = |di: f64, dj: f64| -> Result<f64> {
                point[i] = x[i] + di;
                point[j] = x[j] + dj;
                let v = f(&point);
                point[i] = x[i];
                point[j] = x[j];
                v
            };
            let fpp = eval(hi, hj)?;
            let fpm = eval(hi, -hj)?;
            let fmp = eval(-hi, hj)?;
            let fmm = eval(-hi, -hj)?;
            let val = (fpp - fpm - fmp + fmm) / (4.0 * hi * hj);
            out[i][j] = val;
            out[j][i] = val;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::inner;

    #[test]
    fn gradient_of_quadratic() {
        // f(x) = <x|x> has gradient 2x
        let theta = MatrixH::from_coords(2, 2, vec![0.4, -0.3, 0.2, 0.9]).unwrap();
        let g = gradient(|x| inner(x, x), &theta, &FdOptions::default()).unwrap();
        assert!(g.sub(&theta.scale(2.0)).max_abs_coord() < 1e-9);
    }

    #[test]
    fn hessian_of_quadratic_is_twice_identity() {
        let theta = MatrixH::from_coords(2, 1, vec![0.1, 0.2, -0.5]).unwrap();
        for richardson in [false, true] {
            let opts = FdOptions {
                richardson,
                ..FdOptions::default()
            };
            let hess = hessian(|x| inner(x, x), &theta, &opts).unwrap();
            for a in 0..3 {
                for b in 0..3 {
                    let want = if a == b { 2.0 } else { 0.0 };
                    assert!((hess.get(a, b) - want).abs() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn vector_hessian_of_cubic() {
        // f = x0^2 x1: f_00 = 2 x1, f_01 = 2 x0, f_11 = 0
        let f = |x: &[f64]| Ok(x[0] * x[0] * x[1]);
        let x = [0.7, -0.4];
        let h = hessian_vec(f, &x, 1e-4).unwrap();
        assert!((h[0][0] + 0.8).abs() < 1e-6);
        assert!((h[0][1] - 1.4).abs() < 1e-6);
        assert!(h[1][1].abs() < 1e-6);
    }
}
