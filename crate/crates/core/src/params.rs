//! Quadratic-phase parameter quintuples and the kernel/phase factors built from them.
//!
//! One axis of the transform is parameterized by `Λ = (A, B, C, D, E)` with `B ≠ 0`;
//! the kernel phase is `A t² + B t ξ + C ξ² + D t + E ξ`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::quaternion::{Axis, Quaternion};

/// Smallest admissible `|B|`.
pub const MIN_ABS_B: f64 = 1e-12;

/// `1/√(2π)`, the kernel amplitude.
pub fn kernel_amplitude() -> f64 {
    1.0 / (2.0 * PI).sqrt()
}

/// One-axis parameter quintuple `(A, B, C, D, E)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamSet {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
}

impl ParamSet {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64) -> Result<Self> {
        if [a, b, c, d, e].iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParam("parameters must be finite".into()));
        }
        if b.abs() < MIN_ABS_B {
            return Err(Error::InvalidParam(format!(
                "B ≠ 0 is required (|B| >= {MIN_ABS_B:e}), got B = {b}"
            )));
        }
        Ok(Self { a, b, c, d, e })
    }

    /// `(0, 1, 0, 0, 0)`: the plain Fourier kernel.
    pub const fn fourier() -> Self {
        Self { a: 0.0, b: 1.0, c: 0.0, d: 0.0, e: 0.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }
    pub fn e(&self) -> f64 {
        self.e
    }

    pub fn to_array(&self) -> [f64; 5] {
        [self.a, self.b, self.c, self.d, self.e]
    }

    pub fn from_array(v: [f64; 5]) -> Result<Self> {
        Self::new(v[0], v[1], v[2], v[3], v[4])
    }

    /// `A t² + B t ξ + C ξ² + D t + E ξ`.
    #[inline]
    pub fn phase(&self, t: f64, xi: f64) -> f64 {
        self.a * t * t + self.b * t * xi + self.c * xi * xi + self.d * t + self.e * xi
    }

    /// Chirp part of the phase that depends on `t` only: `A t² + D t`.
    #[inline]
    pub fn time_chirp(&self, t: f64) -> f64 {
        self.a * t * t + self.d * t
    }

    /// Part of the phase that depends on `ξ` only: `C ξ² + E ξ`.
    #[inline]
    pub fn freq_chirp(&self, xi: f64) -> f64 {
        self.c * xi * xi + self.e * xi
    }

    pub fn is_fourier(&self) -> bool {
        *self == Self::fourier()
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{}", self.a, self.b, self.c, self.d, self.e)
    }
}

impl FromStr for ParamSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(Error::InvalidParam(format!(
                "expected five comma-separated values A,B,C,D,E, got {s:?}"
            )));
        }
        let mut v = [0.0; 5];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .map_err(|_| Error::InvalidParam(format!("not a number: {p:?}")))?;
        }
        Self::from_array(v)
    }
}

/// The pair `(Λ1, Λ2)`: `Λ1` drives the left `i`-kernel, `Λ2` the right `j`-kernel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamPair {
    pub l1: ParamSet,
    pub l2: ParamSet,
}

impl ParamPair {
    pub const fn new(l1: ParamSet, l2: ParamSet) -> Self {
        Self { l1, l2 }
    }

    pub const fn fourier() -> Self {
        Self::new(ParamSet::fourier(), ParamSet::fourier())
    }

    /// `|B1 B2|`.
    pub fn b_product_abs(&self) -> f64 {
        (self.l1.b * self.l2.b).abs()
    }

    pub fn axis(&self, l: usize) -> &ParamSet {
        if l == 0 {
            &self.l1
        } else {
            &self.l2
        }
    }

    pub fn map<F: Fn(&ParamSet) -> Result<ParamSet>>(&self, f: F) -> Result<Self> {
        Ok(Self::new(f(&self.l1)?, f(&self.l2)?))
    }

    pub fn to_array(&self) -> [f64; 10] {
        let mut out = [0.0; 10];
        out[..5].copy_from_slice(&self.l1.to_array());
        out[5..].copy_from_slice(&self.l2.to_array());
        out
    }

    pub fn from_array(v: [f64; 10]) -> Result<Self> {
        Ok(Self::new(
            ParamSet::from_array([v[0], v[1], v[2], v[3], v[4]])?,
            ParamSet::from_array([v[5], v[6], v[7], v[8], v[9]])?,
        ))
    }

    pub fn is_fourier(&self) -> bool {
        self.l1.is_fourier() && self.l2.is_fourier()
    }
}

impl fmt::Display for ParamPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.l1, self.l2)
    }
}

impl FromStr for ParamPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once(';').ok_or_else(|| {
            Error::InvalidParam(format!("expected \"A,B,C,D,E;A,B,C,D,E\", got {s:?}"))
        })?;
        Ok(Self::new(a.parse()?, b.parse()?))
    }
}

/// `(1/√(2π)) · e^{−u(A t² + B t ξ + C ξ² + D t + E ξ)}` with `u = i` or `j`.
#[inline]
pub fn kernel(axis: Axis, l: &ParamSet, t: f64, xi: f64) -> Quaternion {
    Quaternion::exp_axis(axis, -l.phase(t, xi)).scale(kernel_amplitude())
}

#[inline]
pub fn conj_kernel(axis: Axis, l: &ParamSet, t: f64, xi: f64) -> Quaternion {
    Quaternion::exp_axis(axis, l.phase(t, xi)).scale(kernel_amplitude())
}

/// Frequency offset `2 r k A / B` produced by shifting the time argument by `r k`.
#[inline]
pub fn shift_offset(l: &ParamSet, r: f64, k: f64) -> f64 {
    2.0 * r * k * l.a / l.b
}

/// Unit factor `φ` with `kernel(t + r k, ξ) = kernel(t, ξ + 2 r k A / B) · φ` for every `t`.
///
/// Obtained by expanding both kernels and completing the square in `t`; the residual
/// phase is `A r²k² + D r k + B r k ξ − 4 r² A² C k² / B² − 4 r A C k ξ / B − 2 r A E k / B`.
pub fn shift_phase(axis: Axis, l: &ParamSet, r: f64, k: f64, xi: f64) -> Quaternion {
    let (a, b, c, d, e) = (l.a, l.b, l.c, l.d, l.e);
    let rk = r * k;
    let phase = a * rk * rk + d * rk + b * rk * xi
        - 4.0 * a * a * c * rk * rk / (b * b)
        - 4.0 * a * c * rk * xi / b
        - 2.0 * a * e * rk / b;
    Quaternion::exp_axis(axis, -phase)
}

/// Unit factor `ψ` with `kernel(Λ, 2(t − x), ξ) = kernel(Λ', t, ξ − 4 A x / B) · ψ`,
/// where `Λ' = (4A, 2B, C, 2D, E)`.
pub fn wvd_phase(axis: Axis, l: &ParamSet, x: f64, xi: f64) -> Quaternion {
    let (a, b, c, d, e) = (l.a, l.b, l.c, l.d, l.e);
    let phase = 4.0 * a * x * x - 2.0 * b * x * xi - 2.0 * d * x
        - 16.0 * a * a * c * x * x / (b * b)
        + 8.0 * a * c * x * xi / b
        + 4.0 * a * e * x / b;
    Quaternion::exp_axis(axis, -phase)
}

/// `(λ²A, λB, C, λD, E)`, so that `kernel(Λ, λt, ξ) = kernel(Λ', t, ξ)`.
pub fn scaled_params(l: &ParamSet, lambda: f64) -> Result<ParamSet> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::InvalidParam(format!("scale factor must be nonzero, got {lambda}")));
    }
    ParamSet::new(lambda * lambda * l.a, lambda * l.b, l.c, lambda * l.d, l.e)
}

/// `(4A, 2B, C, 2D, E)`.
pub fn wvd_params(l: &ParamSet) -> ParamSet {
    ParamSet { a: 4.0 * l.a, b: 2.0 * l.b, c: l.c, d: 2.0 * l.d, e: l.e }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: f64, b: f64, c: f64, d: f64, e: f64) -> ParamSet {
        ParamSet::new(a, b, c, d, e).unwrap()
    }

    #[test]
    fn rejects_zero_b() {
        let err = ParamSet::new(1.0, 0.0, 1.0, 1.0, 1.0).unwrap_err();
        assert!(err.to_string().contains("B ≠ 0"));
        assert!(ParamSet::new(0.0, 1e-13, 0.0, 0.0, 0.0).is_err());
        assert!("1,0,1,1,1".parse::<ParamSet>().is_err());
    }

    #[test]
    fn parses_text_forms() {
        let pair: ParamPair = "0.3,1.1,0.2,-0.4,0.5;-0.2,0.9,0.1,0.3,-0.6".parse().unwrap();
        assert_eq!(pair.l1, p(0.3, 1.1, 0.2, -0.4, 0.5));
        assert_eq!(pair.l2, p(-0.2, 0.9, 0.1, 0.3, -0.6));
        assert_eq!(pair.to_string().parse::<ParamPair>().unwrap(), pair);
        assert!("1,2,3".parse::<ParamSet>().is_err());
        assert!("1,2,3,4,x".parse::<ParamSet>().is_err());
        assert!("0,1,0,0,0".parse::<ParamPair>().is_err());
    }

    #[test]
    fn kernel_values() {
        let amp = kernel_amplitude();
        assert!((amp - 0.398_942_280_401_432_7).abs() < 1e-15);
        let k = kernel(Axis::I, &p(0.0, 1.0, 0.0, 0.0, 0.0), 0.0, 3.7);
        assert!(k.max_abs_diff(Quaternion::real(amp)) < 1e-15);

        // phase at t = 1, ξ = 0 is A + D = 2
        let k = kernel(Axis::I, &p(1.0, 1.0, 1.0, 1.0, 1.0), 1.0, 0.0);
        let expected = Quaternion::new(2f64.cos(), -(2f64.sin()), 0.0, 0.0).scale(amp);
        assert!(k.max_abs_diff(expected) < 1e-15);
    }

    #[test]
    fn conj_kernel_relations() {
        let l = p(0.4, -1.3, 0.2, 0.7, -0.1);
        let amp = kernel_amplitude();
        assert!(conj_kernel(Axis::I, &l, 0.0, 0.0).max_abs_diff(Quaternion::real(amp)) < 1e-15);
        for (t, xi) in [(0.3, -2.0), (4.0, 1.5)] {
            let k = kernel(Axis::J, &l, t, xi);
            let kc = conj_kernel(Axis::J, &l, t, xi);
            assert!(kc.max_abs_diff(k.conj()) < 1e-15);
            let prod = k * kc;
            assert!(prod.max_abs_diff(Quaternion::real(1.0 / (2.0 * PI))) < 1e-15);
        }
    }

    #[test]
    fn fourier_specialization() {
        let l = ParamSet::fourier();
        for (t, xi) in [(0.5, 2.0), (-3.0, 1.25)] {
            let expected = Quaternion::exp_axis(Axis::I, -t * xi).scale(kernel_amplitude());
            assert_eq!(kernel(Axis::I, &l, t, xi), expected);
        }
    }

    #[test]
    fn shift_phase_trivial_cases() {
        let l = p(0.4, -1.3, 0.2, 0.7, -0.1);
        assert_eq!(shift_phase(Axis::I, &l, 0.0, 2.0, 1.0), Quaternion::ONE);
        assert_eq!(shift_phase(Axis::J, &l, 1.0, 0.0, 1.0), Quaternion::ONE);

        let l0 = p(0.0, 1.7, 0.3, -0.8, 0.6);
        let (r, k, xi) = (0.5, 1.2, -0.9);
        let expected =
            Quaternion::exp_axis(Axis::I, -(l0.d() * r * k + l0.b() * r * k * xi));
        assert!(shift_phase(Axis::I, &l0, r, k, xi).max_abs_diff(expected) < 1e-15);
    }

    #[test]
    fn shift_phase_identity_at_two_times() {
        let l = p(0.45, 1.3, -0.35, 0.8, 0.9);
        let (r, k, xi) = (-0.5, 1.7, 0.6);
        let phi = shift_phase(Axis::J, &l, r, k, xi);
        for t in [-2.0, 3.5] {
            let lhs = kernel(Axis::J, &l, t + r * k, xi);
            let rhs = kernel(Axis::J, &l, t, xi + shift_offset(&l, r, k)) * phi;
            assert!(lhs.max_abs_diff(rhs) < 1e-13);
        }
    }

    #[test]
    fn shift_phase_needs_the_e_term() {
        // same residual without the E factor in the last term
        let without_e = |l: &ParamSet, r: f64, k: f64, xi: f64| {
            let (a, b, c, d) = (l.a(), l.b(), l.c(), l.d());
            let rk = r * k;
            let phase = a * rk * rk + d * rk + b * rk * xi
                - 4.0 * a * a * c * rk * rk / (b * b)
                - 4.0 * a * c * rk * xi / b
                - 2.0 * a * rk / b;
            Quaternion::exp_axis(Axis::I, -phase)
        };
        let (r, k, xi, t) = (1.0, 0.8, 0.3, 0.6);
        let with_e = p(0.4, 1.1, 0.2, -0.3, 0.7);
        let lhs = kernel(Axis::I, &with_e, t + r * k, xi);
        let shifted = kernel(Axis::I, &with_e, t, xi + shift_offset(&with_e, r, k));
        assert!(lhs.max_abs_diff(shifted * shift_phase(Axis::I, &with_e, r, k, xi)) < 1e-13);
        assert!(lhs.max_abs_diff(shifted * without_e(&with_e, r, k, xi)) > 1e-2);

        let unit_e = p(0.4, 1.1, 0.2, -0.3, 1.0);
        let diff = shift_phase(Axis::I, &unit_e, r, k, xi).max_abs_diff(without_e(&unit_e, r, k, xi));
        assert!(diff < 1e-14);
    }

    #[test]
    fn wvd_phase_trivial_cases() {
        let l = p(0.4, -1.3, 0.2, 0.7, -0.1);
        assert_eq!(wvd_phase(Axis::I, &l, 0.0, 3.0), Quaternion::ONE);

        let l0 = p(0.0, 1.7, 0.3, 0.0, 0.6);
        let (x, xi) = (0.8, -1.1);
        let expected = Quaternion::exp_axis(Axis::J, 2.0 * l0.b() * x * xi);
        assert!(wvd_phase(Axis::J, &l0, x, xi).max_abs_diff(expected) < 1e-15);
    }

    #[test]
    fn scaled_and_wvd_params() {
        let l = p(1.0, 2.0, 3.0, 4.0, 5.0);
        assert_eq!(scaled_params(&l, 1.0).unwrap(), l);
        assert_eq!(scaled_params(&l, 2.0).unwrap(), p(4.0, 4.0, 3.0, 8.0, 5.0));
        assert!(scaled_params(&l, 0.0).is_err());

        assert_eq!(wvd_params(&ParamSet::fourier()), p(0.0, 2.0, 0.0, 0.0, 0.0));
        assert_eq!(wvd_params(&p(1.0, 1.0, 1.0, 1.0, 1.0)), p(4.0, 2.0, 1.0, 2.0, 1.0));
        let w = wvd_params(&l);
        let s = scaled_params(&l, 2.0).unwrap();
        assert_eq!((w.a(), w.b(), w.d()), (s.a(), s.b(), s.d()));
        assert_eq!((w.c(), w.e()), (l.c(), l.e()));
    }

    #[test]
    fn scaling_moves_into_parameters() {
        let l = p(0.3, -0.7, 0.25, 1.1, -0.4);
        for lambda in [2.0, -0.5, 0.25] {
            let ls = scaled_params(&l, lambda).unwrap();
            for (t, xi) in [(0.7, 1.3), (-2.2, 0.4)] {
                let a = kernel(Axis::I, &l, lambda * t, xi);
                let b = kernel(Axis::I, &ls, t, xi);
                assert!(a.max_abs_diff(b) < 1e-12);
            }
        }
    }
}
