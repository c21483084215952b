//! Unit quaternions as SU(2) elements.
//!
//! `q = (q0, q1, q2, q3)` stands for the matrix `U = q0·1 − i q·σ`, so the
//! imaginary units map to `I_a = −iσ_a = 2 T_a` with `T_a = σ_a / 2i`, and
//! the Hamilton product is the matrix product.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quat(pub [f64; 4]);

impl Quat {
    pub const IDENTITY: Quat = Quat([1.0, 0.0, 0.0, 0.0]);
    pub const ZERO: Quat = Quat([0.0; 4]);

    pub fn new(q0: f64, q1: f64, q2: f64, q3: f64) -> Self {
        Quat([q0, q1, q2, q3])
    }

    /// Pure quaternion with vector part `v`.
    pub fn pure(v: [f64; 3]) -> Self {
        Quat([0.0, v[0], v[1], v[2]])
    }

    pub fn scalar(&self) -> f64 {
        self.0[0]
    }

    pub fn vector(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    pub fn conj(&self) -> Self {
        Quat([self.0[0], -self.0[1], -self.0[2], -self.0[3]])
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Quat(self.0.map(|x| x * s))
    }

    pub fn normalized(&self) -> Self {
        self.scale(1.0 / self.norm())
    }

    /// `exp(Σ_a x_a T_a)` for `T_a = σ_a / 2i`.
    pub fn exp_algebra(x: [f64; 3]) -> Self {
        let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        let half = 0.5 * r;
        // sin(r/2)/r, smooth at r = 0.
        let s = if r < 1e-8 { 0.5 - r * r / 48.0 } else { half.sin() / r };
        Quat([half.cos(), s * x[0], s * x[1], s * x[2]])
    }

    /// The 2×2 matrix `q0·1 − i q·σ`, row-major.
    pub fn to_matrix(&self) -> [[Complex64; 2]; 2] {
        let [q0, q1, q2, q3] = self.0;
        [
            [Complex64::new(q0, -q3), Complex64::new(-q2, -q1)],
            [Complex64::new(q2, -q1), Complex64::new(q0, q3)],
        ]
    }

    pub fn max_abs_diff(&self, other: &Quat) -> f64 {
        (0..4).map(|i| (self.0[i] - other.0[i]).abs()).fold(0.0, f64::max)
    }
}

impl Mul for Quat {
    type Output = Quat;
    fn mul(self, b: Quat) -> Quat {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = b.0;
        Quat([
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ])
    }
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, b: Quat) -> Quat {
        Quat([self.0[0] + b.0[0], self.0[1] + b.0[1], self.0[2] + b.0[2], self.0[3] + b.0[3]])
    }
}

impl Sub for Quat {
    type Output = Quat;
    fn sub(self, b: Quat) -> Quat {
        self + (-b)
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        self.scale(-1.0)
    }
}
