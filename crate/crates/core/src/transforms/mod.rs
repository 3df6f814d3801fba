//! Two-sided QFT/QQPFT: direct quadrature, the chirp-modulated FFT path, and inversion.
//!
//! `Q f(ξ) = Σ_t K^i(Λ1, t1, ξ1) · f(t) · K^j(Λ2, t2, ξ2) · Δ²`, with the `i`-kernel on
//! the left and the `j`-kernel on the right.

mod fast;

pub(crate) use fast::{canonical_axis, FastEngine, Plane};

use crate::error::{Error, Result};
use crate::grid::{lp_norm_of, CompensatedSum, FreqGridSpec, GridSpec, QSignal2D};
use crate::params::{conj_kernel, kernel, ParamPair};
use crate::quaternion::{Axis, Quaternion};

/// Phase increment per sample above which the chirp factors are considered under-sampled.
pub const CHIRP_ALIAS_LIMIT: f64 = std::f64::consts::FRAC_PI_4;

/// Transform values on a frequency grid, with the parameters and input grid that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct QQPFTResult {
    params: ParamPair,
    freq: FreqGridSpec,
    values: Vec<Quaternion>,
    source: GridSpec,
    chirp_aliasing: bool,
}

impl QQPFTResult {
    pub fn new(
        params: ParamPair,
        freq: FreqGridSpec,
        values: Vec<Quaternion>,
        source: GridSpec,
        chirp_aliasing: bool,
    ) -> Result<Self> {
        if values.len() != freq.len() {
            return Err(Error::InvalidGrid(format!(
                "expected {} transform values, got {}",
                freq.len(),
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|q| !q.is_finite()) {
            return Err(Error::InvalidGrid(format!("non-finite transform value at {pos}")));
        }
        Ok(Self { params, freq, values, source, chirp_aliasing })
    }

    pub fn params(&self) -> &ParamPair {
        &self.params
    }

    pub fn freq(&self) -> &FreqGridSpec {
        &self.freq
    }

    pub fn values(&self) -> &[Quaternion] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Quaternion> {
        self.values
    }

    /// Grid of the signal this result was computed from.
    pub fn source(&self) -> &GridSpec {
        &self.source
    }

    /// Set when the chirp factors exceeded [`CHIRP_ALIAS_LIMIT`] per sample on the fast path.
    pub fn chirp_aliasing(&self) -> bool {
        self.chirp_aliasing
    }

    #[inline]
    pub fn get(&self, k1: usize, k2: usize) -> Quaternion {
        self.values[k1 * self.freq.n() + k2]
    }

    /// Quadrature `Lq` norm with cell `Δξ1 · Δξ2`.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        lp_norm_of(&self.values, self.freq.cell_area(), p)
    }

    pub fn l2_norm(&self) -> f64 {
        self.lp_norm(2.0).expect("p = 2 is valid")
    }

    pub fn scalar_inner(&self, other: &Self) -> Result<f64> {
        if self.freq != other.freq {
            return Err(Error::GridMismatch("frequency grids differ".into()));
        }
        let s: CompensatedSum = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.r0 * b.r0 + a.r1 * b.r1 + a.r2 * b.r2 + a.r3 * b.r3)
            .collect();
        Ok(s.value() * self.freq.cell_area())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.max_abs_diff(*b))
            .fold(0.0, f64::max)
    }
}

pub(crate) fn plane_of(spec: &GridSpec) -> Plane {
    Plane { n: spec.n(), origin: [spec.origin(); 2], spacing: spec.spacing() }
}

/// Frequency grid on which the fast path is exact for signals on `spec`.
pub fn canonical_freq(spec: &GridSpec, params: &ParamPair) -> FreqGridSpec {
    canonical_freq_for(spec.n(), spec.spacing(), params)
}

pub(crate) fn canonical_freq_for(n: usize, spacing: f64, params: &ParamPair) -> FreqGridSpec {
    FreqGridSpec::from_axes(
        canonical_axis(n, spacing, params.l1.b()),
        canonical_axis(n, spacing, params.l2.b()),
    )
    .expect("canonical axes are uniform and increasing")
}

/// Separable quadrature: the left `i`-kernel is summed over `t1`, then the right
/// `j`-kernel over `t2`. Cost `O(n² · N)` for `N` output frequencies per axis.
pub(crate) fn direct_on_plane(
    samples: &[Quaternion],
    plane: &Plane,
    params: &ParamPair,
    freq: &FreqGridSpec,
) -> Vec<Quaternion> {
    let n = plane.n;
    let nk = freq.n();
    let d = plane.spacing;
    let k1: Vec<Vec<Quaternion>> = freq
        .xi1()
        .iter()
        .map(|&xi| (0..n).map(|m| kernel(Axis::I, &params.l1, plane.coord(0, m), xi)).collect())
        .collect();
    let k2: Vec<Vec<Quaternion>> = freq
        .xi2()
        .iter()
        .map(|&xi| (0..n).map(|m| kernel(Axis::J, &params.l2, plane.coord(1, m), xi)).collect())
        .collect();

    // partial[k1][m2] = Σ_{m1} K^i · f(m1, m2) · Δ
    let mut partial = vec![Quaternion::ZERO; nk * n];
    for (a, row) in k1.iter().enumerate() {
        for m2 in 0..n {
            let mut acc = Quaternion::ZERO;
            for (m1, &k) in row.iter().enumerate() {
                acc += k * samples[m1 * n + m2];
            }
            partial[a * n + m2] = acc.scale(d);
        }
    }
    let mut out = vec![Quaternion::ZERO; nk * nk];
    for a in 0..nk {
        for (b, col) in k2.iter().enumerate() {
            let mut acc = Quaternion::ZERO;
            for (m2, &k) in col.iter().enumerate() {
                acc += partial[a * n + m2] * k;
            }
            out[a * nk + b] = acc.scale(d);
        }
    }
    out
}

/// Plain double sum at one frequency pair, `O(n²)`.
pub(crate) fn point_on_plane(
    samples: &[Quaternion],
    plane: &Plane,
    params: &ParamPair,
    xi1: f64,
    xi2: f64,
) -> Quaternion {
    let n = plane.n;
    let left: Vec<Quaternion> =
        (0..n).map(|m| kernel(Axis::I, &params.l1, plane.coord(0, m), xi1)).collect();
    let right: Vec<Quaternion> =
        (0..n).map(|m| kernel(Axis::J, &params.l2, plane.coord(1, m), xi2)).collect();
    let mut acc = Quaternion::ZERO;
    for (m1, &kl) in left.iter().enumerate() {
        for (m2, &kr) in right.iter().enumerate() {
            acc += kl * samples[m1 * n + m2] * kr;
        }
    }
    acc.scale(plane.spacing * plane.spacing)
}

pub(crate) fn check_chirp(plane: &Plane, params: &ParamPair) -> bool {
    let inc = fast::chirp_increment(plane, params);
    let flagged = inc > CHIRP_ALIAS_LIMIT;
    if flagged {
        log::warn!(
            "chirp phase advances {inc:.3} rad per sample (limit {CHIRP_ALIAS_LIMIT:.3}); \
             results may alias"
        );
    }
    flagged
}

fn require_power_of_two(spec: &GridSpec) -> Result<()> {
    if !spec.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(spec.n()));
    }
    Ok(())
}

/// Reference quadrature on an arbitrary frequency grid.
pub fn qqpft_direct(f: &QSignal2D, params: &ParamPair, freq: &FreqGridSpec) -> QQPFTResult {
    let plane = plane_of(f.spec());
    let values = direct_on_plane(f.samples(), &plane, params, freq);
    QQPFTResult {
        params: *params,
        freq: freq.clone(),
        values,
        source: *f.spec(),
        chirp_aliasing: false,
    }
}

/// Transform at a single frequency pair.
pub fn qqpft_at(f: &QSignal2D, params: &ParamPair, xi: [f64; 2]) -> Quaternion {
    point_on_plane(f.samples(), &plane_of(f.spec()), params, xi[0], xi[1])
}

/// Two-sided QFT on the canonical FFT grid.
pub fn qft_fast(f: &QSignal2D) -> Result<QQPFTResult> {
    qqpft_fast(f, &ParamPair::fourier())
}

/// QQPFT via chirp modulation and FFTs on the canonical grid.
pub fn qqpft_fast(f: &QSignal2D, params: &ParamPair) -> Result<QQPFTResult> {
    require_power_of_two(f.spec())?;
    let plane = plane_of(f.spec());
    let chirp_aliasing = check_chirp(&plane, params);
    let engine = FastEngine::new(f.n());
    let values = engine.forward(f.samples(), &plane, params);
    Ok(QQPFTResult {
        params: *params,
        freq: canonical_freq(f.spec(), params),
        values,
        source: *f.spec(),
        chirp_aliasing,
    })
}

/// Transform on the canonical grid: the fast path for power-of-two grids, quadrature otherwise.
pub fn qqpft_canonical(f: &QSignal2D, params: &ParamPair) -> QQPFTResult {
    match qqpft_fast(f, params) {
        Ok(r) => r,
        Err(_) => qqpft_direct(f, params, &canonical_freq(f.spec(), params)),
    }
}

/// Inversion `f(t) = |B1 B2| Σ_ξ K̄^i · F(ξ) · K̄^j · Δξ1 Δξ2` onto `target`.
///
/// Uses inverse FFTs when `F` lives on the canonical grid of `target`, quadrature otherwise.
pub fn qqpft_inverse(result: &QQPFTResult, target: &GridSpec) -> Result<QSignal2D> {
    let plane = plane_of(target);
    QSignal2D::new(*target, inverse_on_plane(&result.values, &result.freq, &plane, &result.params))
}

/// Inverse onto `plane`, through inverse FFTs when `freq` is the canonical grid of `plane`.
pub(crate) fn inverse_on_plane(
    values: &[Quaternion],
    freq: &FreqGridSpec,
    plane: &Plane,
    params: &ParamPair,
) -> Vec<Quaternion> {
    if plane.n.is_power_of_two() && *freq == canonical_freq_for(plane.n, plane.spacing, params) {
        return FastEngine::new(plane.n).inverse(values, plane, params);
    }
    inverse_direct(values, freq, plane, params)
}

fn inverse_direct(
    values: &[Quaternion],
    freq: &FreqGridSpec,
    plane: &Plane,
    params: &ParamPair,
) -> Vec<Quaternion> {
    let n = plane.n;
    let nk = freq.n();
    let left: Vec<Vec<Quaternion>> = (0..n)
        .map(|m| {
            let t = plane.coord(0, m);
            freq.xi1().iter().map(|&xi| conj_kernel(Axis::I, &params.l1, t, xi)).collect()
        })
        .collect();
    let right: Vec<Vec<Quaternion>> = (0..n)
        .map(|m| {
            let t = plane.coord(1, m);
            freq.xi2().iter().map(|&xi| conj_kernel(Axis::J, &params.l2, t, xi)).collect()
        })
        .collect();
    let scale = params.b_product_abs() * freq.cell_area();
    let mut partial = vec![Quaternion::ZERO; n * nk];
    for (m1, row) in left.iter().enumerate() {
        for b in 0..nk {
            let mut acc = Quaternion::ZERO;
            for (a, &k) in row.iter().enumerate() {
                acc += k * values[a * nk + b];
            }
            partial[m1 * nk + b] = acc;
        }
    }
    let mut out = vec![Quaternion::ZERO; n * n];
    for m1 in 0..n {
        for (m2, col) in right.iter().enumerate() {
            let mut acc = Quaternion::ZERO;
            for (b, &k) in col.iter().enumerate() {
                acc += partial[m1 * nk + b] * k;
            }
            out[m1 * n + m2] = acc.scale(scale);
        }
    }
    out
}
