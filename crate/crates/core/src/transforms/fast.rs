//! Separable chirp-modulated FFT evaluation on the canonical frequency grid.
//!
//! The left `i`-kernel acts on the split `f = (r0 + i r1) + (r2 + i r3) j`, where
//! left multiplication by an `i`-complex number is ordinary complex multiplication
//! of both parts. The right `j`-kernel acts on `f = (r0 + r2 j) + i (r1 + r3 j)`,
//! where right multiplication by a `j`-complex number is again complex
//! multiplication of both parts. Each axis therefore reduces to complex 1D FFTs.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::params::{kernel_amplitude, ParamPair, ParamSet};
use crate::quaternion::Quaternion;

/// Sampling lattice of one transform input: `t_l[m] = origin[l] + m · spacing`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Plane {
    pub n: usize,
    pub origin: [f64; 2],
    pub spacing: f64,
}

impl Plane {
    #[inline]
    pub fn coord(&self, l: usize, m: usize) -> f64 {
        self.origin[l] + m as f64 * self.spacing
    }
}

/// FFT angular-frequency samples `η_k = (k − n/2) · 2π/(n Δ)`.
pub(crate) fn fft_eta(n: usize, spacing: f64, k: usize) -> f64 {
    (k as f64 - (n / 2) as f64) * 2.0 * PI / (n as f64 * spacing)
}

/// Increasing canonical `ξ` axis: the FFT grid divided by `B`, reversed when `B < 0`.
pub(crate) fn canonical_axis(n: usize, spacing: f64, b: f64) -> Vec<f64> {
    (0..n)
        .map(|k| {
            let idx = if b < 0.0 { n - 1 - k } else { k };
            fft_eta(n, spacing, idx) / b
        })
        .collect()
}

#[derive(Clone, Copy)]
enum View {
    /// `(r0 + ι r1, r2 + ι r3)`.
    Left,
    /// `(r0 + ι r2, r1 + ι r3)`.
    Right,
}

impl View {
    #[inline]
    fn split(self, q: Quaternion) -> (Complex64, Complex64) {
        match self {
            View::Left => (Complex64::new(q.r0, q.r1), Complex64::new(q.r2, q.r3)),
            View::Right => (Complex64::new(q.r0, q.r2), Complex64::new(q.r1, q.r3)),
        }
    }

    #[inline]
    fn join(self, a: Complex64, b: Complex64) -> Quaternion {
        match self {
            View::Left => Quaternion::new(a.re, a.im, b.re, b.im),
            View::Right => Quaternion::new(a.re, b.re, a.im, b.im),
        }
    }
}

/// Cached forward and inverse FFT plans for one transform length.
#[derive(Clone)]
pub(crate) struct FastEngine {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl FastEngine {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self { n, forward: planner.plan_fft_forward(n), inverse: planner.plan_fft_inverse(n) }
    }

    /// Forward transform of row-major samples on `plane`, returned on the canonical grid.
    pub fn forward(&self, samples: &[Quaternion], plane: &Plane, params: &ParamPair) -> Vec<Quaternion> {
        debug_assert_eq!(plane.n, self.n);
        let mut data = samples.to_vec();
        for l in 0..2 {
            let (pre, post) = forward_factors(self.n, plane, l, params.axis(l));
            self.pass(&mut data, l, false, &pre, &post, params.axis(l).b() < 0.0, false);
        }
        data
    }

    /// Inverse of [`FastEngine::forward`]: canonical-grid values back to samples on `plane`.
    pub fn inverse(&self, values: &[Quaternion], plane: &Plane, params: &ParamPair) -> Vec<Quaternion> {
        debug_assert_eq!(plane.n, self.n);
        let mut data = values.to_vec();
        for l in 0..2 {
            let (pre, post) = inverse_factors(self.n, plane, l, params.axis(l));
            self.pass(&mut data, l, true, &pre, &post, false, params.axis(l).b() < 0.0);
        }
        data
    }

    /// One separable pass along axis `l` (0: index `m1`, left view; 1: index `m2`, right view).
    #[allow(clippy::too_many_arguments)]
    fn pass(
        &self,
        data: &mut [Quaternion],
        l: usize,
        inverse: bool,
        pre: &[Complex64],
        post: &[Complex64],
        reverse_out: bool,
        reverse_in: bool,
    ) {
        let n = self.n;
        let view = if l == 0 { View::Left } else { View::Right };
        let (stride, step) = if l == 0 { (n, 1) } else { (1, n) };
        let fft = if inverse { &self.inverse } else { &self.forward };
        let mut a = vec![Complex64::new(0.0, 0.0); n];
        let mut b = vec![Complex64::new(0.0, 0.0); n];
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        for line in 0..n {
            let base = line * step;
            for m in 0..n {
                let src = if reverse_in { n - 1 - m } else { m };
                let (x, y) = view.split(data[base + src * stride]);
                a[m] = x * pre[m];
                b[m] = y * pre[m];
            }
            fft.process_with_scratch(&mut a, &mut scratch);
            fft.process_with_scratch(&mut b, &mut scratch);
            for k in 0..n {
                let dst = if reverse_out { n - 1 - k } else { k };
                data[base + dst * stride] = view.join(a[k] * post[k], b[k] * post[k]);
            }
        }
    }
}

#[inline]
fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

#[inline]
fn alternating(m: usize) -> f64 {
    if m.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `t_m η_k = t0 η_k + 2π m k / n − π m`, so the `t`-dependent pieces go before the
/// FFT and the `ξ`-dependent pieces after it.
fn forward_factors(n: usize, plane: &Plane, l: usize, p: &ParamSet) -> (Vec<Complex64>, Vec<Complex64>) {
    let t0 = plane.origin[l];
    let pre = (0..n)
        .map(|m| cis(-p.time_chirp(plane.coord(l, m))) * alternating(m))
        .collect();
    let scale = plane.spacing * kernel_amplitude();
    let post = (0..n)
        .map(|k| {
            let eta = fft_eta(n, plane.spacing, k);
            cis(-(t0 * eta + p.freq_chirp(eta / p.b()))) * scale
        })
        .collect();
    (pre, post)
}

fn inverse_factors(n: usize, plane: &Plane, l: usize, p: &ParamSet) -> (Vec<Complex64>, Vec<Complex64>) {
    let t0 = plane.origin[l];
    let pre = (0..n)
        .map(|k| {
            let eta = fft_eta(n, plane.spacing, k);
            cis(t0 * eta + p.freq_chirp(eta / p.b()))
        })
        .collect();
    // |B| Δξ with Δξ = 2π / (n Δ |B|)
    let scale = 2.0 * PI / (n as f64 * plane.spacing) * kernel_amplitude();
    let post = (0..n)
        .map(|m| cis(p.time_chirp(plane.coord(l, m))) * (alternating(m) * scale))
        .collect();
    (pre, post)
}

/// Largest per-sample chirp phase increment `|2 A t Δ|` over the lattice, per axis.
pub(crate) fn chirp_increment(plane: &Plane, params: &ParamPair) -> f64 {
    (0..2)
        .map(|l| {
            let a = params.axis(l).a();
            let ends = [plane.coord(l, 0), plane.coord(l, plane.n - 1)];
            ends.iter().map(|t| (2.0 * a * t * plane.spacing).abs()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}
