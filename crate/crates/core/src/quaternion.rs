//! Hamilton quaternions over `f64`.
//!
//! Multiplication follows `i² = j² = k² = -1`, `ij = k = -ji`, `jk = i = -kj`,
//! `ki = j = -ik`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Imaginary axis used by the one-parameter exponentials `e^{uθ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    I,
    J,
}

/// A quaternion `r0 + i r1 + j r2 + k r3`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub r0: f64,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(r0: f64, r1: f64, r2: f64, r3: f64) -> Self {
        Self { r0, r1, r2, r3 }
    }

    pub const fn real(r0: f64) -> Self {
        Self::new(r0, 0.0, 0.0, 0.0)
    }

    /// `cos θ + u sin θ` for the imaginary unit `u` selected by `axis`.
    pub fn exp_axis(axis: Axis, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        match axis {
            Axis::I => Self::new(c, s, 0.0, 0.0),
            Axis::J => Self::new(c, 0.0, s, 0.0),
        }
    }

    /// Scalar (real) part.
    #[inline]
    pub fn sc(self) -> f64 {
        self.r0
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.r0, -self.r1, -self.r2, -self.r3)
    }

    /// Squared modulus `q q̄`.
    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.r0 * self.r0 + self.r1 * self.r1 + self.r2 * self.r2 + self.r3 * self.r3
    }

    #[inline]
    pub fn modulus(self) -> f64 {
        // hypot chain avoids overflow for very large components
        self.r0.hypot(self.r1).hypot(self.r2.hypot(self.r3))
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Self::new(self.r0 * s, self.r1 * s, self.r2 * s, self.r3 * s)
    }

    pub fn is_finite(self) -> bool {
        self.r0.is_finite() && self.r1.is_finite() && self.r2.is_finite() && self.r3.is_finite()
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        (self.r0 - other.r0)
            .abs()
            .max((self.r1 - other.r1).abs())
            .max((self.r2 - other.r2).abs())
            .max((self.r3 - other.r3).abs())
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.r0, self.r1, self.r2, self.r3]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.r0 + o.r0, self.r1 + o.r1, self.r2 + o.r2, self.r3 + o.r3)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.r0 - o.r0, self.r1 - o.r1, self.r2 - o.r2, self.r3 - o.r3)
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.r0, -self.r1, -self.r2, -self.r3)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    /// Hamilton product; not commutative.
    #[inline]
    fn mul(self, o: Self) -> Self {
        let (a0, a1, a2, a3) = (self.r0, self.r1, self.r2, self.r3);
        let (b0, b1, b2, b3) = (o.r0, o.r1, o.r2, o.r3);
        Self::new(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )
    }
}

impl MulAssign for Quaternion {
    #[inline]
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |acc, q| acc + q)
    }
}

impl From<f64> for Quaternion {
    fn from(r0: f64) -> Self {
        Self::real(r0)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.r0, self.r1, self.r2, self.r3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Quaternion = Quaternion::new(2.0, 3.0, -1.0, 0.5);

    #[test]
    fn unit_products() {
        assert_eq!(Quaternion::I * Quaternion::J, Quaternion::K);
        assert_eq!(Quaternion::J * Quaternion::I, -Quaternion::K);
        assert_eq!(Quaternion::J * Quaternion::K, Quaternion::I);
        assert_eq!(Quaternion::K * Quaternion::J, -Quaternion::I);
        assert_eq!(Quaternion::K * Quaternion::I, Quaternion::J);
        assert_eq!(Quaternion::I * Quaternion::K, -Quaternion::J);
        for u in [Quaternion::I, Quaternion::J, Quaternion::K] {
            assert_eq!(u * u, -Quaternion::ONE);
        }
    }

    #[test]
    fn identity_element() {
        assert_eq!(Quaternion::ONE * Q, Q);
        assert_eq!(Q * Quaternion::ONE, Q);
    }

    #[test]
    fn sum_difference_product() {
        // (i + j)(i - j) = i² - ij + ji - j² = -1 - k - k + 1 = -2k
        let a = Quaternion::I + Quaternion::J;
        let b = Quaternion::I - Quaternion::J;
        assert_eq!(a * b, Quaternion::new(0.0, 0.0, 0.0, -2.0));
    }

    #[test]
    fn conjugate_and_modulus() {
        let q = Quaternion::new(1.0, 1.0, 1.0, 1.0);
        assert_eq!(q.conj(), Quaternion::new(1.0, -1.0, -1.0, -1.0));
        assert_eq!(q.modulus(), 2.0);
        assert_eq!(Quaternion::ZERO.modulus(), 0.0);
        let p = Q * Q.conj();
        assert!((p.r0 - Q.norm_sqr()).abs() < 1e-12);
        assert_eq!((p.r1, p.r2, p.r3), (0.0, 0.0, 0.0));
    }

    #[test]
    fn scalar_part() {
        assert_eq!(Quaternion::new(3.0, -2.0, 1.0, 0.0).sc(), 3.0);
        assert_eq!(Quaternion::I.sc(), 0.0);
    }

    #[test]
    fn axis_exponentials() {
        assert_eq!(Quaternion::exp_axis(Axis::I, 0.0), Quaternion::ONE);
        let j = Quaternion::exp_axis(Axis::J, std::f64::consts::FRAC_PI_2);
        assert!(j.max_abs_diff(Quaternion::J) < 1e-15);
        let a = Quaternion::exp_axis(Axis::I, 0.7) * Quaternion::exp_axis(Axis::I, -1.9);
        assert!(a.max_abs_diff(Quaternion::exp_axis(Axis::I, -1.2)) < 1e-15);
    }
}
