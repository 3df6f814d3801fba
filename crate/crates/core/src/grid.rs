//! Sampled quaternion signals on centered square grids and their quadrature norms.
//!
//! Samples are stored row-major: index `m1 * n + m2` holds `f(t1[m1], t2[m2])`.
//! Every integral is a rectangle-rule sum over the grid.

use crate::error::{Error, Result};
use crate::params::ParamPair;
use crate::quaternion::Quaternion;

/// Neumaier-compensated running sum. Summation order is the caller's iteration order.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    #[inline]
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub(crate) fn value(self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Quaternion sum with compensated components.
pub(crate) fn quaternion_sum<I: IntoIterator<Item = Quaternion>>(iter: I) -> Quaternion {
    let mut acc = [CompensatedSum::default(); 4];
    for q in iter {
        acc[0].add(q.r0);
        acc[1].add(q.r1);
        acc[2].add(q.r2);
        acc[3].add(q.r3);
    }
    Quaternion::new(acc[0].value(), acc[1].value(), acc[2].value(), acc[3].value())
}

fn check_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidParam(format!("Lp exponent must satisfy p >= 1, got {p}")));
    }
    Ok(())
}

/// `(Σ |v|^p · cell)^(1/p)`, or the max modulus for `p = ∞`.
pub(crate) fn lp_norm_of<'a, I>(values: I, cell: f64, p: f64) -> Result<f64>
where
    I: IntoIterator<Item = &'a Quaternion>,
{
    check_exponent(p)?;
    if p.is_infinite() {
        return Ok(values.into_iter().map(|q| q.modulus()).fold(0.0, f64::max));
    }
    let s: CompensatedSum = if p == 2.0 {
        values.into_iter().map(|q| q.norm_sqr()).collect()
    } else {
        values.into_iter().map(|q| q.modulus().powf(p)).collect()
    };
    Ok((s.value() * cell).powf(1.0 / p))
}

/// Uniform centered grid: `n` samples per axis over `[-extent/2, extent/2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    n: usize,
    extent: f64,
}

impl GridSpec {
    pub fn new(n: usize, extent: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGrid(format!("need n >= 2 samples per axis, got {n}")));
        }
        if !(extent.is_finite() && extent > 0.0) {
            return Err(Error::InvalidGrid(format!("extent must be positive, got {extent}")));
        }
        Ok(Self { n, extent })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn extent(&self) -> f64 {
        self.extent
    }

    #[inline]
    pub fn spacing(&self) -> f64 {
        self.extent / self.n as f64
    }

    /// Leftmost sample coordinate, `-extent/2`.
    #[inline]
    pub fn origin(&self) -> f64 {
        -0.5 * self.extent
    }

    #[inline]
    pub fn coord(&self, m: usize) -> f64 {
        self.origin() + m as f64 * self.spacing()
    }

    pub fn coords(&self) -> Vec<f64> {
        (0..self.n).map(|m| self.coord(m)).collect()
    }

    /// Area of one grid cell, `Δ²`.
    #[inline]
    pub fn cell_area(&self) -> f64 {
        let d = self.spacing();
        d * d
    }

    /// Index of the `t = 0` sample, present for even `n`.
    pub fn center_index(&self) -> Option<usize> {
        self.n.is_multiple_of(2).then_some(self.n / 2)
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_power_of_two(&self) -> bool {
        self.n.is_power_of_two()
    }
}

/// Quaternion-valued samples of a function on `ℝ²`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSignal2D {
    spec: GridSpec,
    samples: Vec<Quaternion>,
}

impl QSignal2D {
    pub fn new(spec: GridSpec, samples: Vec<Quaternion>) -> Result<Self> {
        if samples.len() != spec.len() {
            return Err(Error::InvalidGrid(format!(
                "expected {} samples for n = {}, got {}",
                spec.len(),
                spec.n(),
                samples.len()
            )));
        }
        if let Some(pos) = samples.iter().position(|q| !q.is_finite()) {
            return Err(Error::InvalidGrid(format!("non-finite sample at index {pos}")));
        }
        Ok(Self { spec, samples })
    }

    pub fn zeros(spec: GridSpec) -> Self {
        Self { spec, samples: vec![Quaternion::ZERO; spec.len()] }
    }

    /// Samples `f(t1, t2)` at every grid point.
    pub fn from_fn<F: FnMut(f64, f64) -> Quaternion>(spec: GridSpec, mut f: F) -> Result<Self> {
        let coords = spec.coords();
        let mut samples = Vec::with_capacity(spec.len());
        for &t1 in &coords {
            for &t2 in &coords {
                samples.push(f(t1, t2));
            }
        }
        Self::new(spec, samples)
    }

    #[inline]
    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.spec.n
    }

    #[inline]
    pub fn samples(&self) -> &[Quaternion] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Quaternion> {
        self.samples
    }

    #[inline]
    pub fn get(&self, m1: usize, m2: usize) -> Quaternion {
        self.samples[m1 * self.spec.n + m2]
    }

    /// Sample at signed indices, zero outside the grid.
    #[inline]
    pub fn get_or_zero(&self, m1: i64, m2: i64) -> Quaternion {
        let n = self.spec.n as i64;
        if (0..n).contains(&m1) && (0..n).contains(&m2) {
            self.samples[(m1 * n + m2) as usize]
        } else {
            Quaternion::ZERO
        }
    }

    pub fn map<F: FnMut(Quaternion) -> Quaternion>(&self, f: F) -> Self {
        Self { spec: self.spec, samples: self.samples.iter().copied().map(f).collect() }
    }

    /// `c · f(t)`.
    pub fn left_mul(&self, c: Quaternion) -> Self {
        self.map(|q| c * q)
    }

    /// `f(t) · c`.
    pub fn right_mul(&self, c: Quaternion) -> Self {
        self.map(|q| q * c)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|q| q.scale(s))
    }

    /// Pointwise binary operation on two signals sharing one grid.
    pub fn zip_with<F>(&self, other: &Self, mut f: F) -> Result<Self>
    where
        F: FnMut(Quaternion, Quaternion) -> Quaternion,
    {
        self.ensure_same_grid(other)?;
        let samples = self.samples.iter().zip(&other.samples).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { spec: self.spec, samples })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn ensure_same_grid(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::GridMismatch(format!(
                "(n = {}, extent = {}) vs (n = {}, extent = {})",
                self.spec.n, self.spec.extent, other.spec.n, other.spec.extent
            )));
        }
        Ok(())
    }

    /// Quadrature `Lp` norm; `p = f64::INFINITY` gives the sup norm.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        lp_norm_of(&self.samples, self.spec.cell_area(), p)
    }

    pub fn l2_norm(&self) -> f64 {
        self.lp_norm(2.0).expect("p = 2 is valid")
    }

    pub fn sup_norm(&self) -> f64 {
        self.samples.iter().map(|q| q.modulus()).fold(0.0, f64::max)
    }

    /// `Σ f(t) · conj(g(t)) · Δ²`.
    pub fn inner_product(&self, g: &Self) -> Result<Quaternion> {
        self.ensure_same_grid(g)?;
        let s = quaternion_sum(self.samples.iter().zip(&g.samples).map(|(&a, &b)| a * b.conj()));
        Ok(s.scale(self.spec.cell_area()))
    }

    /// Symmetric real part of the inner product.
    pub fn scalar_inner(&self, g: &Self) -> Result<f64> {
        self.ensure_same_grid(g)?;
        // Sc(a b̄) is the 4-vector dot product.
        let s: CompensatedSum = self
            .samples
            .iter()
            .zip(&g.samples)
            .map(|(a, b)| a.r0 * b.r0 + a.r1 * b.r1 + a.r2 * b.r2 + a.r3 * b.r3)
            .collect();
        Ok(s.value() * self.spec.cell_area())
    }

    /// Copy rescaled to unit `L²` norm.
    pub fn normalized(&self) -> Result<Self> {
        let nrm = self.l2_norm();
        if nrm == 0.0 {
            return Err(Error::ZeroField);
        }
        Ok(self.scale(1.0 / nrm))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a.max_abs_diff(*b))
            .fold(0.0, f64::max)
    }

    /// `‖self − other‖₂ / ‖other‖₂`.
    pub fn relative_l2_error(&self, reference: &Self) -> Result<f64> {
        let diff = self.zip_with(reference, |a, b| a - b)?;
        let r = reference.l2_norm();
        if r == 0.0 {
            return Ok(diff.l2_norm());
        }
        Ok(diff.l2_norm() / r)
    }
}

/// Uniform, strictly increasing frequency samples on each axis.
#[derive(Clone, Debug, PartialEq)]
pub struct FreqGridSpec {
    xi1: Vec<f64>,
    xi2: Vec<f64>,
}

fn uniform_step(axis: &[f64], name: &str) -> Result<f64> {
    if axis.len() < 2 {
        return Err(Error::InvalidGrid(format!("{name} needs at least two samples")));
    }
    if axis.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidGrid(format!("{name} has non-finite entries")));
    }
    let n = axis.len();
    let step = (axis[n - 1] - axis[0]) / (n - 1) as f64;
    if step <= 0.0 {
        return Err(Error::InvalidGrid(format!("{name} must be strictly increasing")));
    }
    let scale = axis[0].abs().max(axis[n - 1].abs()).max(step);
    for (k, w) in axis.windows(2).enumerate() {
        let d = w[1] - w[0];
        if d <= 0.0 {
            return Err(Error::InvalidGrid(format!("{name} must be strictly increasing at {k}")));
        }
        if (d - step).abs() > 1e-9 * scale {
            return Err(Error::InvalidGrid(format!("{name} is not uniformly spaced at {k}")));
        }
    }
    Ok(step)
}

impl FreqGridSpec {
    pub fn from_axes(xi1: Vec<f64>, xi2: Vec<f64>) -> Result<Self> {
        if xi1.len() != xi2.len() {
            return Err(Error::InvalidGrid(format!(
                "frequency axes differ in length: {} vs {}",
                xi1.len(),
                xi2.len()
            )));
        }
        uniform_step(&xi1, "xi1")?;
        uniform_step(&xi2, "xi2")?;
        Ok(Self { xi1, xi2 })
    }

    pub fn uniform(n: usize, start: [f64; 2], step: [f64; 2]) -> Result<Self> {
        let axis = |a: f64, d: f64| (0..n).map(|k| a + k as f64 * d).collect::<Vec<_>>();
        Self::from_axes(axis(start[0], step[0]), axis(start[1], step[1]))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.xi1.len()
    }

    pub fn xi1(&self) -> &[f64] {
        &self.xi1
    }

    pub fn xi2(&self) -> &[f64] {
        &self.xi2
    }

    pub fn axis(&self, l: usize) -> &[f64] {
        if l == 0 {
            &self.xi1
        } else {
            &self.xi2
        }
    }

    pub fn step1(&self) -> f64 {
        (self.xi1[self.n() - 1] - self.xi1[0]) / (self.n() - 1) as f64
    }

    pub fn step2(&self) -> f64 {
        (self.xi2[self.n() - 1] - self.xi2[0]) / (self.n() - 1) as f64
    }

    /// `Δξ1 · Δξ2`.
    pub fn cell_area(&self) -> f64 {
        self.step1() * self.step2()
    }

    pub fn len(&self) -> usize {
        self.n() * self.n()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Which time-frequency representation a 4D field holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TfKind {
    Stqqpft,
    Qqpaf,
    Qqpwvd,
}

impl TfKind {
    pub fn name(self) -> &'static str {
        match self {
            TfKind::Stqqpft => "stqqpft",
            TfKind::Qqpaf => "qqpaf",
            TfKind::Qqpwvd => "qqpwvd",
        }
    }

    pub fn code(self) -> u32 {
        match self {
            TfKind::Stqqpft => 0,
            TfKind::Qqpaf => 1,
            TfKind::Qqpwvd => 2,
        }
    }

    pub fn from_code(code: u32) -> Option<Self> {
        match code {
            0 => Some(TfKind::Stqqpft),
            1 => Some(TfKind::Qqpaf),
            2 => Some(TfKind::Qqpwvd),
            _ => None,
        }
    }
}

impl std::str::FromStr for TfKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stqqpft" | "stft" => Ok(TfKind::Stqqpft),
            "qqpaf" | "af" => Ok(TfKind::Qqpaf),
            "qqpwvd" | "wvd" => Ok(TfKind::Qqpwvd),
            other => Err(Error::InvalidParam(format!("unknown transform kind {other:?}"))),
        }
    }
}

/// Source of `x`-slices of a field on the `(x, ξ)` lattice.
///
/// Implemented by stored grids and by lazy transform plans, so reductions can
/// run without materializing all `n⁴` values.
pub trait TfField {
    fn xspec(&self) -> &GridSpec;
    fn xispec(&self) -> &FreqGridSpec;
    fn params(&self) -> &ParamPair;
    fn kind(&self) -> TfKind;
    /// Values `F(x1[ix1], x2[ix2], ·, ·)`, row-major over `(ξ1, ξ2)`.
    fn slice(&self, ix1: usize, ix2: usize) -> Vec<Quaternion>;

    /// `Δx² · Δξ1 · Δξ2`.
    fn cell_measure(&self) -> f64 {
        self.xspec().cell_area() * self.xispec().cell_area()
    }

    fn for_each_slice<F: FnMut(usize, usize, &[Quaternion])>(&self, mut f: F) {
        let nx = self.xspec().n();
        for ix1 in 0..nx {
            for ix2 in 0..nx {
                let s = self.slice(ix1, ix2);
                f(ix1, ix2, &s);
            }
        }
    }
}

/// Quaternion field on the 4D lattice `(x1, x2, ξ1, ξ2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TFGrid4D {
    xspec: GridSpec,
    xispec: FreqGridSpec,
    params: ParamPair,
    kind: TfKind,
    values: Vec<Quaternion>,
}

impl TFGrid4D {
    pub fn new(
        xspec: GridSpec,
        xispec: FreqGridSpec,
        params: ParamPair,
        kind: TfKind,
        values: Vec<Quaternion>,
    ) -> Result<Self> {
        let expected = xspec.len() * xispec.len();
        if values.len() != expected {
            return Err(Error::InvalidGrid(format!(
                "expected {expected} lattice values, got {}",
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|q| !q.is_finite()) {
            return Err(Error::InvalidGrid(format!("non-finite value at index {pos}")));
        }
        Ok(Self { xspec, xispec, params, kind, values })
    }

    /// Materializes every slice of a field.
    pub fn collect<F: TfField + ?Sized>(field: &F) -> Self {
        let mut values = Vec::with_capacity(field.xspec().len() * field.xispec().len());
        let nx = field.xspec().n();
        for ix1 in 0..nx {
            for ix2 in 0..nx {
                values.extend(field.slice(ix1, ix2));
            }
        }
        Self {
            xspec: *field.xspec(),
            xispec: field.xispec().clone(),
            params: *field.params(),
            kind: field.kind(),
            values,
        }
    }

    pub fn values(&self) -> &[Quaternion] {
        &self.values
    }

    #[inline]
    pub fn get(&self, ix1: usize, ix2: usize, k1: usize, k2: usize) -> Quaternion {
        let nx = self.xspec.n();
        let nk = self.xispec.n();
        self.values[((ix1 * nx + ix2) * nk + k1) * nk + k2]
    }

    pub fn slice_ref(&self, ix1: usize, ix2: usize) -> &[Quaternion] {
        let nx = self.xspec.n();
        let len = self.xispec.len();
        let start = (ix1 * nx + ix2) * len;
        &self.values[start..start + len]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.max_abs_diff(*b))
            .fold(0.0, f64::max)
    }
}

impl TfField for TFGrid4D {
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
        self.slice_ref(ix1, ix2).to_vec()
    }
    fn for_each_slice<F: FnMut(usize, usize, &[Quaternion])>(&self, mut f: F) {
        let nx = self.xspec.n();
        for ix1 in 0..nx {
            for ix2 in 0..nx {
                f(ix1, ix2, self.slice_ref(ix1, ix2));
            }
        }
    }
}

/// Quadrature `Lp` norm over the `(x, ξ)` lattice.
pub fn lp_norm_4d<F: TfField + ?Sized>(field: &F, p: f64) -> Result<f64> {
    check_exponent(p)?;
    let cell = field.cell_measure();
    if p.is_infinite() {
        let mut m = 0.0f64;
        field.for_each_slice(|_, _, s| {
            m = s.iter().map(|q| q.modulus()).fold(m, f64::max);
        });
        return Ok(m);
    }
    let mut acc = CompensatedSum::default();
    field.for_each_slice(|_, _, s| {
        for q in s {
            acc.add(if p == 2.0 { q.norm_sqr() } else { q.modulus().powf(p) });
        }
    });
    Ok((acc.value() * cell).powf(1.0 / p))
}

/// `Sc Σ F1 · conj(F2) · cell` over two fields on one lattice.
pub fn scalar_inner_4d<F, G>(a: &F, b: &G) -> Result<f64>
where
    F: TfField + ?Sized,
    G: TfField + ?Sized,
{
    if a.xspec() != b.xspec() || a.xispec() != b.xispec() {
        return Err(Error::GridMismatch("time-frequency lattices differ".into()));
    }
    let nx = a.xspec().n();
    let mut acc = CompensatedSum::default();
    for ix1 in 0..nx {
        for ix2 in 0..nx {
            let sa = a.slice(ix1, ix2);
            let sb = b.slice(ix1, ix2);
            for (p, q) in sa.iter().zip(&sb) {
                acc.add(p.r0 * q.r0 + p.r1 * q.r1 + p.r2 * q.r2 + p.r3 * q.r3);
            }
        }
    }
    Ok(acc.value() * a.cell_measure())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ParamPair;

    fn gaussian(n: usize, extent: f64) -> QSignal2D {
        let spec = GridSpec::new(n, extent).unwrap();
        QSignal2D::from_fn(spec, |a, b| Quaternion::real((-(a * a + b * b) / 2.0).exp())).unwrap()
    }

    #[test]
    fn grid_spec_validation() {
        assert!(GridSpec::new(1, 1.0).is_err());
        assert!(GridSpec::new(4, 0.0).is_err());
        assert!(GridSpec::new(4, f64::NAN).is_err());
        let g = GridSpec::new(8, 4.0).unwrap();
        assert_eq!(g.spacing(), 0.5);
        assert_eq!(g.coord(0), -2.0);
        assert_eq!(g.coord(g.center_index().unwrap()), 0.0);
    }

    #[test]
    fn zero_signal_norms() {
        let z = QSignal2D::zeros(GridSpec::new(8, 3.0).unwrap());
        for p in [1.0, 1.5, 2.0, 4.0, f64::INFINITY] {
            assert_eq!(z.lp_norm(p).unwrap(), 0.0);
        }
    }

    #[test]
    fn indicator_l2_norm_is_extent() {
        let spec = GridSpec::new(16, 3.5).unwrap();
        let f = QSignal2D::from_fn(spec, |_, _| Quaternion::ONE).unwrap();
        assert!((f.lp_norm(2.0).unwrap() - 3.5).abs() < 1e-12);
    }

    #[test]
    fn gaussian_l2_norm() {
        let f = gaussian(128, 20.0);
        let expected = std::f64::consts::PI.sqrt();
        assert!((f.lp_norm(2.0).unwrap() / expected - 1.0).abs() < 1e-6);
    }

    #[test]
    fn quadrature_refinement_is_stable() {
        let a = gaussian(64, 20.0).l2_norm();
        let b = gaussian(128, 20.0).l2_norm();
        assert!((a - b).abs() < 1e-8);
    }

    #[test]
    fn rejects_small_exponent() {
        let f = gaussian(8, 4.0);
        assert!(f.lp_norm(0.5).is_err());
        assert!(f.lp_norm(f64::NAN).is_err());
    }

    #[test]
    fn inner_product_properties() {
        let f = gaussian(16, 6.0).left_mul(Quaternion::new(0.3, 1.0, -0.5, 0.2));
        let ff = f.inner_product(&f).unwrap();
        let n2 = f.l2_norm().powi(2);
        assert!((ff.r0 - n2).abs() < 1e-10 * n2);
        assert!(ff.r1.abs().max(ff.r2.abs()).max(ff.r3.abs()) < 1e-10 * n2);
        assert!((f.scalar_inner(&f).unwrap() - n2).abs() < 1e-10 * n2);

        let zero = QSignal2D::zeros(*f.spec());
        assert_eq!(zero.inner_product(&f).unwrap(), Quaternion::ZERO);
    }

    #[test]
    fn real_against_i_multiple_is_orthogonal() {
        let f = gaussian(16, 6.0);
        let g = f.left_mul(Quaternion::I);
        assert!(f.scalar_inner(&g).unwrap().abs() < 1e-14);
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let a = gaussian(8, 4.0);
        let b = gaussian(8, 5.0);
        assert!(matches!(a.inner_product(&b), Err(Error::GridMismatch(_))));
        assert!(a.scalar_inner(&b).is_err());
    }

    #[test]
    fn freq_grid_validation() {
        assert!(FreqGridSpec::from_axes(vec![0.0, 1.0, 3.0], vec![0.0, 1.0, 2.0]).is_err());
        assert!(FreqGridSpec::from_axes(vec![2.0, 1.0, 0.0], vec![0.0, 1.0, 2.0]).is_err());
        assert!(FreqGridSpec::from_axes(vec![0.0, 1.0], vec![0.0, 1.0, 2.0]).is_err());
        let g = FreqGridSpec::uniform(4, [-1.0, 0.0], [0.5, 0.25]).unwrap();
        assert!((g.cell_area() - 0.125).abs() < 1e-15);
    }

    #[test]
    fn lp_norm_4d_basics() {
        let xspec = GridSpec::new(2, 2.0).unwrap();
        let xispec = FreqGridSpec::uniform(2, [0.0, 0.0], [1.0, 1.0]).unwrap();
        let zeros = TFGrid4D::new(
            xspec,
            xispec.clone(),
            ParamPair::fourier(),
            TfKind::Stqqpft,
            vec![Quaternion::ZERO; 16],
        )
        .unwrap();
        assert_eq!(lp_norm_4d(&zeros, 2.0).unwrap(), 0.0);
        assert!(lp_norm_4d(&zeros, 0.9).is_err());

        // 16 cells of measure 1/16 each: unit total measure
        let xspec = GridSpec::new(2, 1.0).unwrap();
        let xispec = FreqGridSpec::uniform(2, [0.0, 0.0], [0.5, 0.5]).unwrap();
        let ones = TFGrid4D::new(
            xspec,
            xispec,
            ParamPair::fourier(),
            TfKind::Stqqpft,
            vec![Quaternion::ONE; 16],
        )
        .unwrap();
        for p in [1.0, 2.0, 3.0] {
            assert!((lp_norm_4d(&ones, p).unwrap() - 1.0).abs() < 1e-14);
        }
    }
}
