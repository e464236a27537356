//! Quaternion scalars.
//!
//! All three division algebras are represented by one type: a real number
//! uses only `w`, a complex number uses `(w, x)`, and a full quaternion uses
//! all four components. This keeps the matrix arithmetic uniform across the
//! Peirce constants beta = 1, 2, 4.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// A quaternion `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quat {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quat {
    pub const ZERO: Quat = Quat::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quat = Quat::new(1.0, 0.0, 0.0, 0.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quat { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quat::new(w, 0.0, 0.0, 0.0)
    }

    /// The `u`-th imaginary unit: 1, i, j, k for u = 0..4.
    pub fn unit(u: usize) -> Self {
        match u {
            0 => Quat::new(1.0, 0.0, 0.0, 0.0),
            1 => Quat::new(0.0, 1.0, 0.0, 0.0),
            2 => Quat::new(0.0, 0.0, 1.0, 0.0),
            3 => Quat::new(0.0, 0.0, 0.0, 1.0),
            _ => panic!("quaternion unit index out of range: {u}"),
        }
    }

    pub fn conj(self) -> Self {
        Quat::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn scale(self, s: f64) -> Self {
        Quat::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// Component along the `u`-th unit (0 => real part).
    pub fn component(self, u: usize) -> f64 {
        match u {
            0 => self.w,
            1 => self.x,
            2 => self.y,
            3 => self.z,
            _ => panic!("quaternion component index out of range: {u}"),
        }
    }
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, o: Quat) -> Quat {
        Quat::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quat {
    fn add_assign(&mut self, o: Quat) {
        *self = *self + o;
    }
}

impl Sub for Quat {
    type Output = Quat;
    fn sub(self, o: Quat) -> Quat {
        Quat::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quat {
    type Output = Quat;
    fn mul(self, o: Quat) -> Quat {
        // Hamilton product: i^2 = j^2 = k^2 = ijk = -1.
        Quat::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}
