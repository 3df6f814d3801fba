//! Seeded verification suites over random smooth signals and parameter pairs.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{
    check_concentration_up, check_energy_identity, check_entropy_field, check_hausdorff_young,
    check_lieb_field, check_parseval, check_parseval_inner, check_renyi_up, check_shannon_up,
    InputsDigest, Relation, VerificationReport,
};
use crate::error::{Error, Result};
use crate::grid::{GridSpec, QSignal2D, TFGrid4D, TfField, TfKind};
use crate::params::{kernel, shift_offset, shift_phase, wvd_params, wvd_phase, ParamPair, ParamSet};
use crate::quaternion::Axis;
use crate::signals::{gaussian, random_smooth};
use crate::time_frequency::{af_via_stqqpft, wvd_via_stqqpft, TfPlan};

/// Tolerance of the kernel identities at random points.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Tolerance of the lattice relations between the representations.
pub const RELATION_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Battery {
    Parseval,
    Hy,
    Renyi,
    Shannon,
    Lieb,
    Concentration,
    EntropyTf,
    Lemma41,
    Thm45,
    Thm46,
    All,
}

impl Battery {
    pub const ALL: [Battery; 11] = [
        Battery::Parseval,
        Battery::Hy,
        Battery::Renyi,
        Battery::Shannon,
        Battery::Lieb,
        Battery::Concentration,
        Battery::EntropyTf,
        Battery::Lemma41,
        Battery::Thm45,
        Battery::Thm46,
        Battery::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Battery::Parseval => "parseval",
            Battery::Hy => "hy",
            Battery::Renyi => "renyi",
            Battery::Shannon => "shannon",
            Battery::Lieb => "lieb",
            Battery::Concentration => "concentration",
            Battery::EntropyTf => "entropy-tf",
            Battery::Lemma41 => "lemma41",
            Battery::Thm45 => "thm45",
            Battery::Thm46 => "thm46",
            Battery::All => "all",
        }
    }

    fn includes(self, other: Battery) -> bool {
        self == other || self == Battery::All
    }
}

impl FromStr for Battery {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Battery::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::InvalidParam(format!("unknown battery {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BatteryConfig {
    pub n: usize,
    pub extent: f64,
    pub seed: u64,
    pub signals: usize,
    pub pairs: usize,
    pub alphas: Vec<f64>,
    pub hy_exponents: Vec<f64>,
    pub lieb_exponents: Vec<f64>,
    pub epsilons: Vec<f64>,
    /// Exponent of the concentration bound for `ε > 0`.
    pub q: f64,
    /// Random points per kernel identity.
    pub identity_points: usize,
    /// Lattice points per representation relation and case.
    pub relation_points: usize,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        Self {
            n: 32,
            extent: 10.0,
            seed: 7,
            signals: 20,
            pairs: 5,
            alphas: vec![0.6, 0.8],
            hy_exponents: vec![1.0, 4.0 / 3.0, 2.0],
            lieb_exponents: vec![2.0, 3.0, 4.0],
            epsilons: vec![0.0, 0.2, 0.5],
            q: 4.0,
            identity_points: 1000,
            relation_points: 8,
        }
    }
}

/// One signal, window and parameter pair of a suite.
#[derive(Clone, Debug)]
pub struct Case {
    pub label: String,
    pub f: QSignal2D,
    pub g: QSignal2D,
    pub params: ParamPair,
    pub seed: u64,
    /// Position in the suite; seeds the choice of relation test points.
    pub index: u64,
}

/// SplitMix64 step, used to derive independent sub-seeds.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `|A| ≤ 1/4`, `1/2 ≤ |B| ≤ 2` with random sign, `|C|, |D|, |E| ≤ 1/2`.
pub fn random_param_set(rng: &mut ChaCha8Rng) -> ParamSet {
    let a = rng.random_range(-0.25..=0.25);
    let b = rng.random_range(0.5..=2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    let c = rng.random_range(-0.5..=0.5);
    let d = rng.random_range(-0.5..=0.5);
    let e = rng.random_range(-0.5..=0.5);
    ParamSet::new(a, b, c, d, e).expect("B is bounded away from zero")
}

pub fn random_pair(seed: u64) -> ParamPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l1 = random_param_set(&mut rng);
    let l2 = random_param_set(&mut rng);
    ParamPair::new(l1, l2)
}

/// Unit-norm Gaussian window of unit width.
pub fn standard_window(spec: GridSpec) -> Result<QSignal2D> {
    gaussian(spec, 1.0, [0.0, 0.0])?.normalized()
}

/// The `signals × pairs` cases of the random suite.
pub fn random_cases(config: &BatteryConfig) -> Result<Vec<Case>> {
    let spec = GridSpec::new(config.n, config.extent)?;
    let g = standard_window(spec)?;
    let pairs: Vec<ParamPair> =
        (0..config.pairs).map(|j| random_pair(mix_seed(config.seed, 1_000_000 + j as u64))).collect();
    let mut cases = Vec::with_capacity(config.signals * config.pairs);
    for s in 0..config.signals {
        let f = random_smooth(spec, mix_seed(config.seed, s as u64))?;
        for (j, params) in pairs.iter().enumerate() {
            cases.push(Case {
                label: format!("s{s:02}p{j}"),
                f: f.clone(),
                g: g.clone(),
                params: *params,
                seed: config.seed,
                index: cases.len() as u64,
            });
        }
    }
    Ok(cases)
}

fn field_digest(kind: TfKind, case: &Case) -> InputsDigest {
    InputsDigest::new().tag(kind.name()).signal(&case.f).signal(&case.g).params(&case.params)
}

/// Runs the per-case part of a battery on one case.
pub fn run_case(battery: Battery, case: &Case, config: &BatteryConfig) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let (f, g, p) = (&case.f, &case.g, &case.params);
    if battery.includes(Battery::Parseval) {
        out.push(check_parseval(f, p));
        out.push(check_parseval_inner(f, g, p)?);
    }
    if battery.includes(Battery::Hy) {
        for &e in &config.hy_exponents {
            out.push(check_hausdorff_young(f, p, e)?);
        }
    }
    if battery.includes(Battery::Renyi) {
        for &a in &config.alphas {
            out.push(check_renyi_up(f, p, a)?);
        }
    }
    if battery.includes(Battery::Shannon) {
        out.push(check_shannon_up(f, p)?);
    }
    let needs_fields = [Battery::Lieb, Battery::Concentration, Battery::EntropyTf]
        .iter()
        .any(|b| battery.includes(*b));
    if needs_fields {
        let (fn_, gn) = (f.l2_norm(), g.l2_norm());
        let kinds: &[TfKind] = if battery == Battery::Lieb {
            &[TfKind::Stqqpft]
        } else {
            &[TfKind::Stqqpft, TfKind::Qqpaf, TfKind::Qqpwvd]
        };
        for &kind in kinds {
            let field = TFGrid4D::collect(&TfPlan::auto(kind, f, g, p)?);
            if kind == TfKind::Stqqpft && battery.includes(Battery::Lieb) {
                out.push(check_energy_identity(&field, fn_, gn, field_digest(kind, case))?);
                for &q in &config.lieb_exponents {
                    out.push(check_lieb_field(&field, fn_, gn, q, field_digest(kind, case))?);
                }
            }
            if battery.includes(Battery::EntropyTf) {
                out.push(check_entropy_field(&field, fn_ * gn, field_digest(kind, case))?);
            }
            if battery.includes(Battery::Concentration) {
                for &eps in &config.epsilons {
                    out.push(check_concentration_up(&field, eps, config.q, field_digest(kind, case))?);
                }
            }
        }
    }
    if battery.includes(Battery::Thm45) {
        out.extend(relation_reports(TfKind::Qqpaf, case, config)?);
    }
    if battery.includes(Battery::Thm46) {
        out.extend(relation_reports(TfKind::Qqpwvd, case, config)?);
    }
    Ok(out
        .into_iter()
        .map(|r| {
            let id = format!("{}/{}", case.label, r.inequality_id);
            r.with_id(id).with_seed(case.seed)
        })
        .collect())
}

/// Worst phase-exact and modulus deviations between a bilinear representation and
/// its STQQPFT expression, over random lattice points.
fn relation_reports(kind: TfKind, case: &Case, config: &BatteryConfig) -> Result<Vec<VerificationReport>> {
    let plan = TfPlan::auto(kind, &case.f, &case.g, &case.params)?;
    let nx = plan.xspec().n();
    let nk = plan.xispec().n();
    let xis = plan.xispec().clone();
    let digest = field_digest(kind, case);
    let stream = 3_000_000 + 4 * case.index + u64::from(kind.code());
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(case.seed, stream));
    let (mut phase_err, mut modulus_err) = (0.0f64, 0.0f64);
    for _ in 0..config.relation_points {
        let ix = [rng.random_range(0..nx), rng.random_range(0..nx)];
        let slice = plan.slice(ix[0], ix[1]);
        for _ in 0..4 {
            let k = [rng.random_range(0..nk), rng.random_range(0..nk)];
            let xi = [xis.xi1()[k[0]], xis.xi2()[k[1]]];
            let lhs = slice[k[0] * nk + k[1]];
            let rhs = match kind {
                TfKind::Qqpaf => af_via_stqqpft(&case.f, &case.g, &case.params, ix, xi)?,
                _ => wvd_via_stqqpft(&case.f, &case.g, &case.params, ix, xi)?,
            };
            phase_err = phase_err.max(lhs.max_abs_diff(rhs));
            modulus_err = modulus_err.max((lhs.modulus() - rhs.modulus()).abs());
        }
    }
    let id = if kind == TfKind::Qqpaf { "thm45" } else { "thm46" };
    let d = digest.finish();
    Ok(vec![
        VerificationReport::new(format!("{id}-phase"), Relation::AtMost, phase_err, RELATION_TOL, 0.0, case.params, d.clone()),
        VerificationReport::new(format!("{id}-modulus"), Relation::AtMost, modulus_err, RELATION_TOL, 0.0, case.params, d),
    ])
}

/// Kernel shift and Wigner–Ville factor identities at random points, both axes.
pub fn kernel_identity_reports(seed: u64, points: usize) -> Vec<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, 2_000_000));
    let (mut shift_err, mut wvd_err, mut t_dependence) = (0.0f64, 0.0f64, 0.0f64);
    let mut digest = InputsDigest::new().tag("kernel-identities");
    for i in 0..points {
        let axis = if i % 2 == 0 { Axis::I } else { Axis::J };
        let l = random_param_set(&mut rng);
        let t = rng.random_range(-5.0..=5.0);
        let t2 = rng.random_range(-5.0..=5.0);
        let xi = rng.random_range(-5.0..=5.0);
        let r = rng.random_range(-1.0..=1.0);
        let k = rng.random_range(-3.0..=3.0);
        let x = rng.random_range(-3.0..=3.0);
        digest = digest.value(t).value(xi).value(r).value(k).value(x);

        let phi = shift_phase(axis, &l, r, k, xi);
        let off = shift_offset(&l, r, k);
        for (tt, slot) in [(t, &mut shift_err), (t2, &mut t_dependence)] {
            let lhs = kernel(axis, &l, tt + r * k, xi);
            let rhs = kernel(axis, &l, tt, xi + off) * phi;
            *slot = slot.max(lhs.max_abs_diff(rhs));
        }

        let lp = wvd_params(&l);
        let psi = wvd_phase(axis, &l, x, xi);
        let lhs = kernel(axis, &l, 2.0 * (t - x), xi);
        let rhs = kernel(axis, &lp, t, xi - 4.0 * l.a() * x / l.b()) * psi;
        wvd_err = wvd_err.max(lhs.max_abs_diff(rhs));
    }
    let d = digest.finish();
    let p = ParamPair::fourier();
    [("lemma41-shift", shift_err), ("lemma41-shift-second-t", t_dependence), ("thm46-psi", wvd_err)]
        .into_iter()
        .map(|(id, err)| {
            VerificationReport::new(id, Relation::AtMost, err, IDENTITY_TOL, 0.0, p, d.clone()).with_seed(seed)
        })
        .collect()
}

/// Runs a battery over the random suite.
pub fn run_battery(battery: Battery, config: &BatteryConfig) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    if battery.includes(Battery::Lemma41) {
        out.extend(kernel_identity_reports(config.seed, config.identity_points));
        if battery == Battery::Lemma41 {
            return Ok(out);
        }
    }
    for case in random_cases(config)? {
        log::debug!("battery {} case {}", battery.name(), case.label);
        out.extend(run_case(battery, &case, config)?);
    }
    Ok(out)
}

/// Runs the per-case checks of a battery on explicit inputs; `f` is normalized first
/// when the battery contains entropy checks.
pub fn run_on_inputs(
    battery: Battery,
    f: &QSignal2D,
    g: Option<&QSignal2D>,
    params: &ParamPair,
    config: &BatteryConfig,
) -> Result<Vec<VerificationReport>> {
    let g = match g {
        Some(g) => g.clone(),
        None => standard_window(*f.spec())?,
    };
    let needs_unit = [Battery::Renyi, Battery::Shannon, Battery::EntropyTf]
        .iter()
        .any(|b| battery.includes(*b));
    let f = if needs_unit { f.normalized()? } else { f.clone() };
    let g = if battery.includes(Battery::EntropyTf) { g.normalized()? } else { g };
    let case = Case { label: "input".into(), f, g, params: *params, seed: config.seed, index: 0 };
    let mut out = Vec::new();
    if battery.includes(Battery::Lemma41) {
        out.extend(kernel_identity_reports(config.seed, config.identity_points));
    }
    if battery != Battery::Lemma41 {
        out.extend(run_case(battery, &case, config)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> BatteryConfig {
        BatteryConfig { n: 16, extent: 8.0, signals: 2, pairs: 2, identity_points: 50, relation_points: 2, ..Default::default() }
    }

    #[test]
    fn names_round_trip() {
        for b in Battery::ALL {
            assert_eq!(b.name().parse::<Battery>().unwrap(), b);
        }
        assert!("everything".parse::<Battery>().is_err());
    }

    #[test]
    fn seeds_mix() {
        assert_ne!(mix_seed(7, 0), mix_seed(7, 1));
        assert_ne!(mix_seed(7, 0), mix_seed(8, 0));
        assert_eq!(random_pair(3), random_pair(3));
    }

    #[test]
    fn random_params_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let l = random_param_set(&mut rng);
            assert!(l.a().abs() <= 0.25 && (0.5..=2.0).contains(&l.b().abs()));
            assert!(l.c().abs() <= 0.5 && l.d().abs() <= 0.5 && l.e().abs() <= 0.5);
        }
    }

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let a = run_battery(Battery::All, &small()).unwrap();
        let b = run_battery(Battery::All, &small()).unwrap();
        assert_eq!(a, b);
        for r in &a {
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn lemma41_only_runs_identities() {
        let r = run_battery(Battery::Lemma41, &small()).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|r| r.passed));
    }
}
