//! Windowed transforms on the `(x, ξ)` lattice: STQQPFT, QQPAF and QQPWVD.
//!
//! Window centers, half-shifts and lags are whole numbers of samples, so every
//! product `f(·) · conj(g(·))` is formed from grid values without interpolation.
//! Samples that fall outside the grid are zero.

use crate::error::{Error, Result};
use crate::grid::{FreqGridSpec, GridSpec, QSignal2D, TFGrid4D, TfField, TfKind};
use crate::params::{scaled_params, shift_offset, shift_phase, wvd_params, wvd_phase, ParamPair};
use crate::quaternion::{Axis, Quaternion};
use crate::transforms::{
    canonical_freq_for, check_chirp, direct_on_plane, inverse_on_plane, plane_of,
    point_on_plane, FastEngine, Plane,
};

/// Signal, window and parameters of a short-time transform.
#[derive(Clone, Debug)]
pub struct WindowedPair {
    f: QSignal2D,
    g: QSignal2D,
    params: ParamPair,
}

impl WindowedPair {
    pub fn new(f: QSignal2D, g: QSignal2D, params: ParamPair) -> Result<Self> {
        f.ensure_same_grid(&g)?;
        require_even(f.spec())?;
        if g.l2_norm() == 0.0 {
            return Err(Error::ZeroField);
        }
        if !g.sup_norm().is_finite() {
            return Err(Error::InvalidParam("window must be bounded".into()));
        }
        Ok(Self { f, g, params })
    }

    pub fn f(&self) -> &QSignal2D {
        &self.f
    }

    pub fn g(&self) -> &QSignal2D {
        &self.g
    }

    pub fn params(&self) -> &ParamPair {
        &self.params
    }
}

/// How each slice is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Chirp-modulated FFTs; needs a power-of-two grid.
    Fast,
    /// Separable quadrature on the same frequency grid.
    Direct,
}

fn require_even(spec: &GridSpec) -> Result<()> {
    if !spec.n().is_multiple_of(2) {
        return Err(Error::InvalidGrid(format!(
            "windowed transforms need an even grid size, got n = {}",
            spec.n()
        )));
    }
    Ok(())
}

/// `f(t) · conj(g(t − sΔ))` for an integer window shift `s`.
fn windowed_product(f: &QSignal2D, g: &QSignal2D, shift: [i64; 2]) -> Vec<Quaternion> {
    let n = f.n();
    let mut out = Vec::with_capacity(n * n);
    for m1 in 0..n as i64 {
        for m2 in 0..n as i64 {
            let w = g.get_or_zero(m1 - shift[0], m2 - shift[1]);
            out.push(f.get(m1 as usize, m2 as usize) * w.conj());
        }
    }
    out
}

/// Lazily evaluated time-frequency field; slices are computed on request.
#[derive(Clone)]
pub struct TfPlan {
    kind: TfKind,
    f: QSignal2D,
    g: QSignal2D,
    params: ParamPair,
    xspec: GridSpec,
    xispec: FreqGridSpec,
    engine: Option<FastEngine>,
    chirp_aliasing: bool,
}

impl TfPlan {
    fn build(kind: TfKind, f: &QSignal2D, g: &QSignal2D, params: &ParamPair, method: Method) -> Result<Self> {
        f.ensure_same_grid(g)?;
        let spec = *f.spec();
        require_even(&spec)?;
        let n = spec.n();
        let (xspec, lag_spacing) = match kind {
            TfKind::Stqqpft => (spec, spec.spacing()),
            TfKind::Qqpaf => {
                if !n.is_multiple_of(4) {
                    return Err(Error::InvalidGrid(format!(
                        "the ambiguity function needs n divisible by 4, got n = {n}"
                    )));
                }
                (GridSpec::new(n / 2, spec.extent())?, spec.spacing())
            }
            TfKind::Qqpwvd => (spec, 2.0 * spec.spacing()),
        };
        let engine = match method {
            Method::Fast if !spec.is_power_of_two() => return Err(Error::NotPowerOfTwo(n)),
            Method::Fast => Some(FastEngine::new(n)),
            Method::Direct => None,
        };
        let probe = Plane { n, origin: [-(n as f64) * lag_spacing; 2], spacing: lag_spacing };
        let chirp_aliasing = engine.is_some() && check_chirp(&probe, params);
        Ok(Self {
            kind,
            f: f.clone(),
            g: g.clone(),
            params: *params,
            xspec,
            xispec: canonical_freq_for(n, lag_spacing, params),
            engine,
            chirp_aliasing,
        })
    }

    pub fn stqqpft(wp: &WindowedPair, method: Method) -> Result<Self> {
        Self::build(TfKind::Stqqpft, &wp.f, &wp.g, &wp.params, method)
    }

    pub fn qqpaf(f: &QSignal2D, g: &QSignal2D, params: &ParamPair, method: Method) -> Result<Self> {
        Self::build(TfKind::Qqpaf, f, g, params, method)
    }

    pub fn qqpwvd(f: &QSignal2D, g: &QSignal2D, params: &ParamPair, method: Method) -> Result<Self> {
        Self::build(TfKind::Qqpwvd, f, g, params, method)
    }

    /// Fast evaluation when the grid allows it, quadrature otherwise.
    pub fn auto(kind: TfKind, f: &QSignal2D, g: &QSignal2D, params: &ParamPair) -> Result<Self> {
        let method = if f.spec().is_power_of_two() { Method::Fast } else { Method::Direct };
        Self::build(kind, f, g, params, method)
    }

    pub fn f(&self) -> &QSignal2D {
        &self.f
    }

    pub fn g(&self) -> &QSignal2D {
        &self.g
    }

    pub fn chirp_aliasing(&self) -> bool {
        self.chirp_aliasing
    }

    /// Integrand samples and their lattice for the slice at `(ix1, ix2)`.
    fn integrand(&self, ix1: usize, ix2: usize) -> (Vec<Quaternion>, Plane) {
        let spec = self.f.spec();
        let n = spec.n();
        let half = (n / 2) as i64;
        let (d, t0) = (spec.spacing(), spec.origin());
        match self.kind {
            TfKind::Stqqpft => {
                let shift = [ix1 as i64 - half, ix2 as i64 - half];
                (windowed_product(&self.f, &self.g, shift), plane_of(spec))
            }
            TfKind::Qqpaf => {
                // x = 2sΔ; the lattice t_m − x/2 puts f(t + x/2) on sample m
                let quarter = (n / 4) as i64;
                let s = [ix1 as i64 - quarter, ix2 as i64 - quarter];
                let values = windowed_product(&self.f, &self.g, [2 * s[0], 2 * s[1]]);
                let origin = [t0 - s[0] as f64 * d, t0 - s[1] as f64 * d];
                (values, Plane { n, origin, spacing: d })
            }
            TfKind::Qqpwvd => {
                // lag t_j = 2Δ(j − n/2): f(x + t/2) at sample ix + j − n/2, g(x − t/2) at ix − j + n/2
                let mut values = Vec::with_capacity(n * n);
                for j1 in 0..n as i64 {
                    for j2 in 0..n as i64 {
                        let a = self.f.get_or_zero(ix1 as i64 + j1 - half, ix2 as i64 + j2 - half);
                        let b = self.g.get_or_zero(ix1 as i64 - j1 + half, ix2 as i64 - j2 + half);
                        values.push(a * b.conj());
                    }
                }
                (values, Plane { n, origin: [2.0 * t0; 2], spacing: 2.0 * d })
            }
        }
    }
}

impl TfField for TfPlan {
    fn xspec(&self) -> &GridSpec {
        &self.xspec
    }

    fn xispec(&self) -> &FreqGridSpec {
        &self.xispec
    }

    fn params(&self) -> &ParamPair {
        &self.params
    }

    fn kind(&self) -> TfKind {
        self.kind
    }

    fn slice(&self, ix1: usize, ix2: usize) -> Vec<Quaternion> {
        let (values, plane) = self.integrand(ix1, ix2);
        match &self.engine {
            Some(engine) => engine.forward(&values, &plane, &self.params),
            None => direct_on_plane(&values, &plane, &self.params, &self.xispec),
        }
    }
}

/// Full STQQPFT on the window-center lattice (the signal grid) and the canonical frequency grid.
pub fn stqqpft(wp: &WindowedPair) -> Result<TFGrid4D> {
    Ok(TFGrid4D::collect(&TfPlan::auto(TfKind::Stqqpft, &wp.f, &wp.g, &wp.params)?))
}

/// Ambiguity function on the half-rate lattice `x = 2sΔ`.
pub fn qqpaf(f: &QSignal2D, g: &QSignal2D, params: &ParamPair) -> Result<TFGrid4D> {
    Ok(TFGrid4D::collect(&TfPlan::auto(TfKind::Qqpaf, f, g, params)?))
}

/// Wigner–Ville distribution; lags are sampled at `2Δ`, so its frequency grid is half-band.
pub fn qqpwvd(f: &QSignal2D, g: &QSignal2D, params: &ParamPair) -> Result<TFGrid4D> {
    Ok(TFGrid4D::collect(&TfPlan::auto(TfKind::Qqpwvd, f, g, params)?))
}

/// STQQPFT at one frequency pair, for a window shifted by `shift` samples.
///
/// The shift may exceed the grid; the window is then zero wherever it leaves it.
pub fn stqqpft_point(
    f: &QSignal2D,
    g: &QSignal2D,
    params: &ParamPair,
    shift: [i64; 2],
    xi: [f64; 2],
) -> Result<Quaternion> {
    f.ensure_same_grid(g)?;
    let values = windowed_product(f, g, shift);
    Ok(point_on_plane(&values, &plane_of(f.spec()), params, xi[0], xi[1]))
}

/// Window-averaged inversion: each slice is inverted, multiplied by the shifted
/// window and summed over centers, then divided by `‖g‖²`.
pub fn stqqpft_inverse<F: TfField + ?Sized>(field: &F, g: &QSignal2D, params: &ParamPair) -> Result<QSignal2D> {
    if field.kind() != TfKind::Stqqpft {
        return Err(Error::InvalidParam(format!("expected an stqqpft field, got {}", field.kind().name())));
    }
    let spec = *g.spec();
    if *field.xspec() != spec {
        return Err(Error::GridMismatch("window grid differs from the window-center lattice".into()));
    }
    let norm2 = g.l2_norm().powi(2);
    if norm2 == 0.0 {
        return Err(Error::ZeroField);
    }
    let n = spec.n();
    let half = (n / 2) as i64;
    let plane = plane_of(&spec);
    let mut acc = vec![Quaternion::ZERO; n * n];
    let xispec = field.xispec().clone();
    field.for_each_slice(|ix1, ix2, slice| {
        let h = inverse_on_plane(slice, &xispec, &plane, params);
        let s = [ix1 as i64 - half, ix2 as i64 - half];
        for m1 in 0..n {
            for m2 in 0..n {
                let w = g.get_or_zero(m1 as i64 - s[0], m2 as i64 - s[1]);
                acc[m1 * n + m2] += h[m1 * n + m2] * w;
            }
        }
    });
    let scale = spec.cell_area() / norm2;
    QSignal2D::new(spec, acc.into_iter().map(|q| q.scale(scale)).collect())
}

/// `(τ_k f)(t) = f(t − kΔ)`, zero where the shifted grid leaves the original one.
pub fn translate(f: &QSignal2D, k: [i64; 2]) -> QSignal2D {
    let n = f.n();
    let mut samples = Vec::with_capacity(n * n);
    for m1 in 0..n as i64 {
        for m2 in 0..n as i64 {
            samples.push(f.get_or_zero(m1 - k[0], m2 - k[1]));
        }
    }
    QSignal2D::new(*f.spec(), samples).expect("shifted samples stay finite")
}

/// `f_λ(t) = f(t/λ) / λ` for `λ = 2^m`, sampled on the grid of extent `λ T`.
pub fn dilate(f: &QSignal2D, lambda: f64) -> Result<QSignal2D> {
    let m = lambda.log2();
    if !(lambda > 0.0 && m.is_finite() && m == m.round()) {
        return Err(Error::InvalidParam(format!("dilation factor must be a power of two, got {lambda}")));
    }
    let spec = GridSpec::new(f.n(), lambda * f.spec().extent())?;
    QSignal2D::new(spec, f.samples().iter().map(|q| q.scale(1.0 / lambda)).collect())
}

/// `g̃(t) = g(−t)`; the sample at `−T/2` has no mirror on the grid and becomes zero.
pub fn reflect(g: &QSignal2D) -> Result<QSignal2D> {
    require_even(g.spec())?;
    let n = g.n() as i64;
    let mut samples = Vec::with_capacity(g.spec().len());
    for m1 in 0..n {
        for m2 in 0..n {
            samples.push(g.get_or_zero(n - m1, n - m2));
        }
    }
    QSignal2D::new(*g.spec(), samples)
}

/// Lattice coordinate of window center `ix` of an STQQPFT on `spec`, as a sample shift.
pub fn center_shift(spec: &GridSpec, ix: [usize; 2]) -> [i64; 2] {
    let half = (spec.n() / 2) as i64;
    [ix[0] as i64 - half, ix[1] as i64 - half]
}

/// The STQQPFT side of the translation covariance:
/// `φ^i · S(x − k, ξ + 2Ak/B) · φ^j` with the shift factor taken at `r = 1`.
pub fn translation_rhs(
    f: &QSignal2D,
    g: &QSignal2D,
    params: &ParamPair,
    shift: [i64; 2],
    k: [i64; 2],
    xi: [f64; 2],
) -> Result<Quaternion> {
    let d = f.spec().spacing();
    let kk = [k[0] as f64 * d, k[1] as f64 * d];
    let xi_s = [
        xi[0] + shift_offset(&params.l1, 1.0, kk[0]),
        xi[1] + shift_offset(&params.l2, 1.0, kk[1]),
    ];
    let s = stqqpft_point(f, g, params, [shift[0] - k[0], shift[1] - k[1]], xi_s)?;
    Ok(shift_phase(Axis::I, &params.l1, 1.0, kk[0], xi[0]) * s * shift_phase(Axis::J, &params.l2, 1.0, kk[1], xi[1]))
}

/// The STQQPFT side of the ambiguity-function relation at lattice point `ix` of the
/// QQPAF: `φ^i · S(x, ξ − Ax/B) · φ^j` with the shift factor taken at `r = −1/2`.
pub fn af_via_stqqpft(
    f: &QSignal2D,
    g: &QSignal2D,
    params: &ParamPair,
    ix: [usize; 2],
    xi: [f64; 2],
) -> Result<Quaternion> {
    let n = f.n();
    let quarter = (n / 4) as i64;
    let d = f.spec().spacing();
    let s = [2 * (ix[0] as i64 - quarter), 2 * (ix[1] as i64 - quarter)];
    let x = [s[0] as f64 * d, s[1] as f64 * d];
    let xi_s = [
        xi[0] + shift_offset(&params.l1, -0.5, x[0]),
        xi[1] + shift_offset(&params.l2, -0.5, x[1]),
    ];
    let st = stqqpft_point(f, g, params, s, xi_s)?;
    Ok(shift_phase(Axis::I, &params.l1, -0.5, x[0], xi[0]) * st * shift_phase(Axis::J, &params.l2, -0.5, x[1], xi[1]))
}

/// The STQQPFT side of the Wigner–Ville relation at lattice point `ix`:
/// `4 ψ^i · S'(2x, ξ − 4Ax/B) · ψ^j`, where `S'` uses the reflected window and
/// the doubled parameters `(4A, 2B, C, 2D, E)`.
pub fn wvd_via_stqqpft(
    f: &QSignal2D,
    g: &QSignal2D,
    params: &ParamPair,
    ix: [usize; 2],
    xi: [f64; 2],
) -> Result<Quaternion> {
    let spec = f.spec();
    let s = center_shift(spec, ix);
    let x = [s[0] as f64 * spec.spacing(), s[1] as f64 * spec.spacing()];
    let p2 = ParamPair::new(wvd_params(&params.l1), wvd_params(&params.l2));
    let xi_s = [
        xi[0] - 4.0 * params.l1.a() * x[0] / params.l1.b(),
        xi[1] - 4.0 * params.l2.a() * x[1] / params.l2.b(),
    ];
    f.ensure_same_grid(g)?;
    // g̃(t − 2x) = g(2x − t) sits at sample 2s + n − m of g
    let n = spec.n() as i64;
    let mut values = Vec::with_capacity(spec.len());
    for m1 in 0..n {
        for m2 in 0..n {
            let w = g.get_or_zero(2 * s[0] + n - m1, 2 * s[1] + n - m2);
            values.push(f.get(m1 as usize, m2 as usize) * w.conj());
        }
    }
    let st = point_on_plane(&values, &plane_of(spec), &p2, xi_s[0], xi_s[1]);
    Ok((wvd_phase(Axis::I, &params.l1, x[0], xi[0]) * st * wvd_phase(Axis::J, &params.l2, x[1], xi[1])).scale(4.0))
}

/// Parameters that absorb a dilation by `λ` into the kernels.
pub fn scaled_pair(params: &ParamPair, lambda: f64) -> Result<ParamPair> {
    params.map(|l| scaled_params(l, lambda))
}
