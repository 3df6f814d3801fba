//! Entropy functionals and the inequality checkers.
//!
//! Every checker returns a [`VerificationReport`] whose margin is oriented so that a
//! nonnegative value means the inequality holds; `passed` allows a recorded slack.

use std::f64::consts::{E, PI};
use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::grid::{lp_norm_4d, CompensatedSum, QSignal2D, TfField, TfKind};
use crate::params::ParamPair;
use crate::time_frequency::{TfPlan, WindowedPair};
use crate::transforms::{qqpft_canonical, QQPFTResult};

/// Allowed deviation of a density's total mass from one.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// Relative slack for identities that hold exactly on the canonical grid.
pub const EXACT_SLACK: f64 = 1e-6;
/// Relative slack for bounds evaluated by quadrature.
pub const QUADRATURE_SLACK: f64 = 1e-3;
/// Absolute slack for strict lower bounds.
pub const STRICT_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityDomain {
    /// `ℝ²`, time or frequency plane.
    Plane,
    /// `ℝ² × ℝ²`, the time-frequency lattice.
    Lattice,
}

/// Nonnegative weights with a common cell measure.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityGrid {
    domain: DensityDomain,
    cell_measure: f64,
    weights: Vec<f64>,
}

impl DensityGrid {
    pub fn new(domain: DensityDomain, cell_measure: f64, weights: Vec<f64>) -> Result<Self> {
        if !(cell_measure.is_finite() && cell_measure > 0.0) {
            return Err(Error::InvalidParam(format!("cell measure must be positive, got {cell_measure}")));
        }
        if let Some(pos) = weights.iter().position(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::InvalidParam(format!("weight {pos} is negative or not finite")));
        }
        Ok(Self { domain, cell_measure, weights })
    }

    /// `|f(t)|²` on the signal grid.
    pub fn from_signal(f: &QSignal2D) -> Self {
        let weights = f.samples().iter().map(|q| q.norm_sqr()).collect();
        Self { domain: DensityDomain::Plane, cell_measure: f.spec().cell_area(), weights }
    }

    /// `|B1 B2| · |Q f(ξ)|²` on the frequency grid.
    pub fn from_transform(r: &QQPFTResult) -> Self {
        let b = r.params().b_product_abs();
        let weights = r.values().iter().map(|q| b * q.norm_sqr()).collect();
        Self { domain: DensityDomain::Plane, cell_measure: r.freq().cell_area(), weights }
    }

    /// `|F(x, ξ)|²` over the whole lattice.
    pub fn from_field<F: TfField + ?Sized>(field: &F) -> Self {
        let mut weights = Vec::with_capacity(field.xspec().len() * field.xispec().len());
        field.for_each_slice(|_, _, s| weights.extend(s.iter().map(|q| q.norm_sqr())));
        Self { domain: DensityDomain::Lattice, cell_measure: field.cell_measure(), weights }
    }

    pub fn domain(&self) -> DensityDomain {
        self.domain
    }

    pub fn cell_measure(&self) -> f64 {
        self.cell_measure
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `Σ P · cell`.
    pub fn mass(&self) -> f64 {
        self.weights.iter().copied().collect::<CompensatedSum>().value() * self.cell_measure
    }

    /// Copy rescaled to unit mass.
    pub fn normalize(&self) -> Result<Self> {
        let m = self.mass();
        if m == 0.0 {
            return Err(Error::ZeroField);
        }
        Ok(Self {
            domain: self.domain,
            cell_measure: self.cell_measure,
            weights: self.weights.iter().map(|w| w / m).collect(),
        })
    }

    fn ensure_normalized(&self) -> Result<()> {
        let m = self.mass();
        if (m - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::Unnormalized(m));
        }
        Ok(())
    }
}

/// `(1/(1−α)) · log Σ P^α · cell`.
pub fn renyi_entropy(p: &DensityGrid, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) || alpha == 1.0 {
        return Err(Error::InvalidParam(format!("Rényi order must be positive and not 1, got {alpha}")));
    }
    p.ensure_normalized()?;
    let s: CompensatedSum = p.weights.iter().filter(|w| **w > 0.0).map(|w| w.powf(alpha)).collect();
    Ok((s.value() * p.cell_measure).ln() / (1.0 - alpha))
}

/// `−Σ P · log P · cell`, with `0 · log 0 = 0`.
pub fn shannon_entropy(p: &DensityGrid) -> Result<f64> {
    p.ensure_normalized()?;
    Ok(plogp_sum(&p.weights) * p.cell_measure)
}

fn plogp_sum(weights: &[f64]) -> f64 {
    weights
        .iter()
        .filter(|w| **w > 0.0)
        .map(|w| -w * w.ln())
        .collect::<CompensatedSum>()
        .value()
}

/// Which way a check compares its two sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `lhs ≤ rhs`; margin `rhs − lhs`.
    AtMost,
    /// `lhs ≥ rhs`; margin `lhs − rhs`.
    AtLeast,
    /// `lhs = rhs`; margin `−|lhs − rhs|`.
    Equal,
}

/// Outcome of one inequality or identity check.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub inequality_id: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    /// Absolute slack: the check passes iff `margin ≥ −slack`.
    pub slack: f64,
    pub passed: bool,
    pub inputs_digest: String,
    pub params: ParamPair,
    pub seed: Option<u64>,
}

impl VerificationReport {
    pub fn new(
        id: impl Into<String>,
        relation: Relation,
        lhs: f64,
        rhs: f64,
        slack: f64,
        params: ParamPair,
        inputs_digest: String,
    ) -> Self {
        let margin = match relation {
            Relation::AtMost => rhs - lhs,
            Relation::AtLeast => lhs - rhs,
            Relation::Equal => -(lhs - rhs).abs(),
        };
        Self {
            inequality_id: id.into(),
            lhs,
            rhs,
            margin,
            slack,
            passed: margin >= -slack,
            inputs_digest,
            params,
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.inequality_id = id.into();
        self
    }
}

impl fmt::Display for VerificationReport {
    /// Tab-separated: id, lhs, rhs, margin, passed, seed, params, digest.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seed = self.seed.map_or_else(|| "-".to_string(), |s| s.to_string());
        write!(
            f,
            "{}\t{:.16e}\t{:.16e}\t{:.16e}\t{}\t{}\t{}\t{}",
            self.inequality_id,
            self.lhs,
            self.rhs,
            self.margin,
            if self.passed { "pass" } else { "fail" },
            seed,
            self.params,
            self.inputs_digest
        )
    }
}

/// SHA-256 over the exact bit patterns of a check's inputs.
#[derive(Clone, Default)]
pub struct InputsDigest(Sha256);

impl InputsDigest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tag(mut self, s: &str) -> Self {
        self.0.update((s.len() as u64).to_le_bytes());
        self.0.update(s.as_bytes());
        self
    }

    pub fn value(mut self, v: f64) -> Self {
        self.0.update(v.to_le_bytes());
        self
    }

    pub fn params(mut self, p: &ParamPair) -> Self {
        for v in p.to_array() {
            self.0.update(v.to_le_bytes());
        }
        self
    }

    pub fn signal(mut self, f: &QSignal2D) -> Self {
        self.0.update((f.n() as u64).to_le_bytes());
        self.0.update(f.spec().extent().to_le_bytes());
        for q in f.samples() {
            for v in q.to_array() {
                self.0.update(v.to_le_bytes());
            }
        }
        self
    }

    /// First 16 hex digits.
    pub fn finish(self) -> String {
        self.0.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

fn ensure_unit_norm(f: &QSignal2D) -> Result<()> {
    let m = f.l2_norm().powi(2);
    if (m - 1.0).abs() > MASS_TOLERANCE {
        return Err(Error::Unnormalized(m));
    }
    Ok(())
}

/// `|B1 B2| · ‖Q f‖² = ‖f‖²`.
pub fn check_parseval(f: &QSignal2D, params: &ParamPair) -> VerificationReport {
    let q = qqpft_canonical(f, params);
    let lhs = params.b_product_abs() * q.l2_norm().powi(2);
    let rhs = f.l2_norm().powi(2);
    let digest = InputsDigest::new().tag("parseval").signal(f).params(params).finish();
    VerificationReport::new("parseval", Relation::Equal, lhs, rhs, EXACT_SLACK * rhs, *params, digest)
}

/// `|B1 B2| · Sc⟨Q f, Q g⟩ = Sc⟨f, g⟩`.
pub fn check_parseval_inner(f: &QSignal2D, g: &QSignal2D, params: &ParamPair) -> Result<VerificationReport> {
    let rhs = f.scalar_inner(g)?;
    let qf = qqpft_canonical(f, params);
    let qg = qqpft_canonical(g, params);
    let lhs = params.b_product_abs() * qf.scalar_inner(&qg)?;
    let scale = f.l2_norm() * g.l2_norm();
    let digest = InputsDigest::new().tag("parseval-inner").signal(f).signal(g).params(params).finish();
    Ok(VerificationReport::new(
        "parseval-inner",
        Relation::Equal,
        lhs,
        rhs,
        EXACT_SLACK * scale,
        *params,
        digest,
    ))
}

/// Conjugate exponent `p/(p − 1)`, infinite at `p = 1`.
pub fn conjugate_exponent(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else {
        p / (p - 1.0)
    }
}

/// `(2π)^{1/q − 1/p} · A_p² / |B1 B2|^{1/q}` with `A_p² = p^{1/p} / q^{1/q}`.
pub fn hausdorff_young_constant(p: f64, b_product_abs: f64) -> f64 {
    let q = conjugate_exponent(p);
    let inv_q = if q.is_infinite() { 0.0 } else { 1.0 / q };
    let q_pow = if q.is_infinite() { 1.0 } else { q.powf(inv_q) };
    let ap2 = p.powf(1.0 / p) / q_pow;
    (2.0 * PI).powf(inv_q - 1.0 / p) * ap2 / b_product_abs.powf(inv_q)
}

/// `‖Q f‖_q ≤ (2π)^{1/q − 1/p} · A_p² · ‖f‖_p / |B1 B2|^{1/q}` for `1 ≤ p ≤ 2`.
pub fn check_hausdorff_young(f: &QSignal2D, params: &ParamPair, p: f64) -> Result<VerificationReport> {
    if !(1.0..=2.0).contains(&p) {
        return Err(Error::InvalidParam(format!("Hausdorff-Young exponent must lie in [1, 2], got {p}")));
    }
    let q = conjugate_exponent(p);
    if q.is_infinite() {
        log::info!("Hausdorff-Young at p = 1 compares sup norms");
    }
    let lhs = qqpft_canonical(f, params).lp_norm(q)?;
    let rhs = hausdorff_young_constant(p, params.b_product_abs()) * f.lp_norm(p)?;
    let digest = InputsDigest::new().tag("hausdorff-young").signal(f).params(params).value(p).finish();
    Ok(VerificationReport::new(
        format!("hausdorff-young(p={})", fmt_exponent(p)),
        Relation::AtMost,
        lhs,
        rhs,
        QUADRATURE_SLACK * rhs,
        *params,
        digest,
    ))
}

fn fmt_exponent(p: f64) -> String {
    if (p - 4.0 / 3.0).abs() < 1e-12 {
        "4/3".to_string()
    } else {
        format!("{p}")
    }
}

/// Lower bound of the Rényi entropy sum for orders `α` and `β = α/(2α − 1)`.
pub fn renyi_bound(alpha: f64, b_product_abs: f64) -> f64 {
    let beta = alpha / (2.0 * alpha - 1.0);
    -b_product_abs.ln()
        - 2.0 * (2.0 * PI).ln()
        - ((2.0 * alpha).ln() / (1.0 - alpha) + (2.0 * beta).ln() / (1.0 - beta))
}

/// `H_α(|f|²) + H_β(|B1 B2| |Q f|²) ≥ renyi_bound(α)` for unit-norm `f`, `1/2 < α < 1`.
pub fn check_renyi_up(f: &QSignal2D, params: &ParamPair, alpha: f64) -> Result<VerificationReport> {
    if !(alpha > 0.5 && alpha < 1.0) {
        return Err(Error::InvalidParam(format!("Rényi order must lie in (1/2, 1), got {alpha}")));
    }
    ensure_unit_norm(f)?;
    let beta = alpha / (2.0 * alpha - 1.0);
    let q = qqpft_canonical(f, params);
    let lhs = renyi_entropy(&DensityGrid::from_signal(f), alpha)?
        + renyi_entropy(&DensityGrid::from_transform(&q), beta)?;
    let rhs = renyi_bound(alpha, params.b_product_abs());
    let digest = InputsDigest::new().tag("renyi").signal(f).params(params).value(alpha).finish();
    Ok(VerificationReport::new(
        format!("renyi(alpha={alpha})"),
        Relation::AtLeast,
        lhs,
        rhs,
        STRICT_SLACK,
        *params,
        digest,
    ))
}

/// `log(e² / (16 π² |B1 B2|))`.
pub fn shannon_bound(b_product_abs: f64) -> f64 {
    (E * E / (16.0 * PI * PI * b_product_abs)).ln()
}

/// `E(|f|²) + E(|B1 B2| |Q f|²) ≥ shannon_bound` for unit-norm `f`.
pub fn check_shannon_up(f: &QSignal2D, params: &ParamPair) -> Result<VerificationReport> {
    ensure_unit_norm(f)?;
    let q = qqpft_canonical(f, params);
    let lhs = shannon_entropy(&DensityGrid::from_signal(f))? + shannon_entropy(&DensityGrid::from_transform(&q))?;
    let rhs = shannon_bound(params.b_product_abs());
    let digest = InputsDigest::new().tag("shannon").signal(f).params(params).finish();
    Ok(VerificationReport::new("shannon", Relation::AtLeast, lhs, rhs, STRICT_SLACK, *params, digest))
}

/// `(2π)^{1/q − 1/p} · (2/q)^{2/q} / |B1 B2|^{1/q}`, `1/p + 1/q = 1`.
pub fn lieb_constant(q: f64, b_product_abs: f64) -> f64 {
    let p = q / (q - 1.0);
    (2.0 * PI).powf(1.0 / q - 1.0 / p) * (2.0 / q).powf(2.0 / q) / b_product_abs.powf(1.0 / q)
}

/// Lieb's bound on an already computed STQQPFT field.
pub fn check_lieb_field<F: TfField + ?Sized>(
    field: &F,
    f_norm: f64,
    g_norm: f64,
    q: f64,
    digest: InputsDigest,
) -> Result<VerificationReport> {
    if !(q >= 2.0 && q.is_finite()) {
        return Err(Error::InvalidParam(format!("Lieb exponent must satisfy q >= 2, got {q}")));
    }
    let params = *field.params();
    let lhs = lp_norm_4d(field, q)?;
    let rhs = lieb_constant(q, params.b_product_abs()) * f_norm * g_norm;
    Ok(VerificationReport::new(
        format!("lieb(q={q})"),
        Relation::AtMost,
        lhs,
        rhs,
        QUADRATURE_SLACK * rhs,
        params,
        digest.value(q).finish(),
    ))
}

/// `‖S_g f‖_q ≤ lieb_constant(q) · ‖g‖₂ ‖f‖₂` for `q ≥ 2`.
pub fn check_lieb_inequality(f: &QSignal2D, g: &QSignal2D, params: &ParamPair, q: f64) -> Result<VerificationReport> {
    let wp = WindowedPair::new(f.clone(), g.clone(), *params)?;
    let plan = TfPlan::auto(TfKind::Stqqpft, f, g, params)?;
    let digest = InputsDigest::new().tag("lieb").signal(wp.f()).signal(wp.g()).params(params);
    check_lieb_field(&plan, f.l2_norm(), g.l2_norm(), q, digest)
}

/// `|B1 B2| · ‖S_g f‖₂² = ‖f‖₂² ‖g‖₂²`.
pub fn check_energy_identity<F: TfField + ?Sized>(
    field: &F,
    f_norm: f64,
    g_norm: f64,
    digest: InputsDigest,
) -> Result<VerificationReport> {
    let params = *field.params();
    let lhs = params.b_product_abs() * lp_norm_4d(field, 2.0)?.powi(2);
    let rhs = (f_norm * g_norm).powi(2);
    Ok(VerificationReport::new(
        "energy",
        Relation::Equal,
        lhs,
        rhs,
        QUADRATURE_SLACK * rhs,
        params,
        digest.finish(),
    ))
}

/// Smallest lattice measure carrying all but an `ε²` share of the field's energy.
///
/// Cells are dropped from the weakest upward while the dropped energy stays within
/// `ε²` of the total; the remaining count times the cell measure is returned.
pub fn essential_support_measure<F: TfField + ?Sized>(field: &F, epsilon: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::InvalidParam(format!("epsilon must lie in [0, 1), got {epsilon}")));
    }
    let mut energy = DensityGrid::from_field(field).weights;
    let total: f64 = energy.iter().copied().collect::<CompensatedSum>().value();
    if total == 0.0 {
        return Err(Error::ZeroField);
    }
    energy.sort_by(f64::total_cmp);
    let budget = epsilon * epsilon * total;
    let mut dropped = CompensatedSum::default();
    let mut count = 0;
    for w in &energy {
        dropped.add(*w);
        if dropped.value() > budget {
            break;
        }
        count += 1;
    }
    Ok((energy.len() - count) as f64 * field.cell_measure())
}

/// Lower bound on the `ε`-essential support for the given field kind.
///
/// At `ε = 0` the bound is the supremum over `q`, reached as `q → 2`.
pub fn concentration_bound(kind: TfKind, epsilon: f64, q: f64, b_product_abs: f64) -> f64 {
    let base = if epsilon == 0.0 {
        (2.0 * PI * E).powi(2)
    } else {
        (2.0 * PI).powi(2) * (1.0 - epsilon * epsilon).powf(q / (q - 2.0)) * (q / 2.0).powf(4.0 / (q - 2.0))
    };
    let divisor = if kind == TfKind::Qqpwvd { 16.0 } else { 1.0 };
    base / (divisor * b_product_abs)
}

/// `|Ω| ≥ concentration_bound` for the `ε`-essential support `Ω` of the field.
pub fn check_concentration_up<F: TfField + ?Sized>(
    field: &F,
    epsilon: f64,
    q: f64,
    digest: InputsDigest,
) -> Result<VerificationReport> {
    if q.is_nan() || q <= 2.0 {
        return Err(Error::InvalidParam(format!("concentration exponent must exceed 2, got {q}")));
    }
    let params = *field.params();
    let kind = field.kind();
    let lhs = essential_support_measure(field, epsilon)?;
    let rhs = concentration_bound(kind, epsilon, q, params.b_product_abs());
    Ok(VerificationReport::new(
        format!("concentration-{}(eps={epsilon},q={q})", kind.name()),
        Relation::AtLeast,
        lhs,
        rhs,
        STRICT_SLACK,
        params,
        digest.value(epsilon).value(q).finish(),
    ))
}

/// `2/|B1 B2|`, or `(2 − log 16)/|B1 B2|` for the Wigner–Ville distribution.
pub fn entropy_tf_bound(kind: TfKind, b_product_abs: f64) -> f64 {
    match kind {
        TfKind::Qqpwvd => (2.0 - 16f64.ln()) / b_product_abs,
        _ => 2.0 / b_product_abs,
    }
}

/// `−Σ |F|² log |F|² · cell` over the lattice.
pub fn lattice_entropy<F: TfField + ?Sized>(field: &F) -> f64 {
    let mut acc = CompensatedSum::default();
    field.for_each_slice(|_, _, s| {
        let w: Vec<f64> = s.iter().map(|q| q.norm_sqr()).collect();
        acc.add(plogp_sum(&w));
    });
    acc.value() * field.cell_measure()
}

/// Entropy bound on a computed field with `‖f‖₂ ‖g‖₂ = 1`.
pub fn check_entropy_field<F: TfField + ?Sized>(
    field: &F,
    norm_product: f64,
    digest: InputsDigest,
) -> Result<VerificationReport> {
    if (norm_product - 1.0).abs() > MASS_TOLERANCE {
        return Err(Error::Unnormalized(norm_product));
    }
    let params = *field.params();
    let kind = field.kind();
    let lhs = lattice_entropy(field);
    let rhs = entropy_tf_bound(kind, params.b_product_abs());
    Ok(VerificationReport::new(
        format!("entropy-{}", kind.name()),
        Relation::AtLeast,
        lhs,
        rhs,
        STRICT_SLACK,
        params,
        digest.finish(),
    ))
}

/// Entropy bound for the chosen representation of `(f, g)`.
pub fn check_entropy_up_tf(
    f: &QSignal2D,
    g: &QSignal2D,
    params: &ParamPair,
    kind: TfKind,
) -> Result<VerificationReport> {
    let plan = TfPlan::auto(kind, f, g, params)?;
    let digest = InputsDigest::new().tag(kind.name()).signal(f).signal(g).params(params);
    check_entropy_field(&plan, f.l2_norm() * g.l2_norm(), digest)
}
