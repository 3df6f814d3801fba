//! Test-signal generators.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::{GridSpec, QSignal2D};
use crate::quaternion::{Axis, Quaternion};

/// `e^{−|t − c|²/(2w²)}`.
pub fn gaussian(spec: GridSpec, width: f64, center: [f64; 2]) -> Result<QSignal2D> {
    if !(width > 0.0 && width.is_finite()) {
        return Err(Error::InvalidParam(format!("width must be positive, got {width}")));
    }
    QSignal2D::from_fn(spec, |a, b| {
        let r2 = (a - center[0]).powi(2) + (b - center[1]).powi(2);
        Quaternion::real((-r2 / (2.0 * width * width)).exp())
    })
}

/// Gaussian envelope sandwiched between `e^{i a t1²}` and `e^{j a t2²}`.
pub fn chirp(spec: GridSpec, rate: f64, width: f64) -> Result<QSignal2D> {
    let env = gaussian(spec, width, [0.0, 0.0])?;
    let coords = spec.coords();
    let n = spec.n();
    let samples = env
        .samples()
        .iter()
        .enumerate()
        .map(|(idx, &q)| {
            let (t1, t2) = (coords[idx / n], coords[idx % n]);
            Quaternion::exp_axis(Axis::I, rate * t1 * t1) * q * Quaternion::exp_axis(Axis::J, rate * t2 * t2)
        })
        .collect();
    QSignal2D::new(spec, samples)
}

/// Single sample `1/Δ²` at the origin: unit mass under the rectangle rule.
pub fn impulse(spec: GridSpec) -> Result<QSignal2D> {
    let c = spec
        .center_index()
        .ok_or_else(|| Error::InvalidGrid("an impulse at the origin needs an even grid".into()))?;
    let mut samples = vec![Quaternion::ZERO; spec.len()];
    samples[c * spec.n() + c] = Quaternion::real(1.0 / spec.cell_area());
    QSignal2D::new(spec, samples)
}

fn random_unit_box(rng: &mut ChaCha8Rng) -> Quaternion {
    Quaternion::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    )
}

/// Unit-norm sum of two or three Gaussian bumps with random quaternion amplitudes,
/// widths in `[0.6, 1.0]` and centers within `1` of the origin per axis.
pub fn random_smooth(spec: GridSpec, seed: u64) -> Result<QSignal2D> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.random_range(2..=3);
    let bumps: Vec<(Quaternion, [f64; 2], f64)> = (0..count)
        .map(|_| {
            let amp = random_unit_box(&mut rng);
            let c = [rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)];
            let w = rng.random_range(0.6..=1.0);
            (amp, c, w)
        })
        .collect();
    let f = QSignal2D::from_fn(spec, |a, b| {
        bumps
            .iter()
            .map(|(amp, c, w)| {
                let r2 = (a - c[0]).powi(2) + (b - c[1]).powi(2);
                amp.scale((-r2 / (2.0 * w * w)).exp())
            })
            .sum()
    })?;
    f.normalized()
}

/// Independent components uniform on `[−1, 1]` at every sample.
pub fn quaternion_random(spec: GridSpec, seed: u64) -> Result<QSignal2D> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = (0..spec.len()).map(|_| random_unit_box(&mut rng)).collect();
    QSignal2D::new(spec, samples)
}

/// Generator names accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Gaussian,
    Chirp,
    Impulse,
    RandomSmooth,
    QuaternionRandom,
}

impl Generator {
    pub const ALL: [Generator; 5] = [
        Generator::Gaussian,
        Generator::Chirp,
        Generator::Impulse,
        Generator::RandomSmooth,
        Generator::QuaternionRandom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Gaussian => "gaussian",
            Generator::Chirp => "chirp",
            Generator::Impulse => "impulse",
            Generator::RandomSmooth => "random-smooth",
            Generator::QuaternionRandom => "quaternion-random",
        }
    }

    pub fn generate(self, spec: GridSpec, width: f64, rate: f64, seed: u64) -> Result<QSignal2D> {
        match self {
            Generator::Gaussian => gaussian(spec, width, [0.0, 0.0]),
            Generator::Chirp => chirp(spec, rate, width),
            Generator::Impulse => impulse(spec),
            Generator::RandomSmooth => random_smooth(spec, seed),
            Generator::QuaternionRandom => quaternion_random(spec, seed),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::InvalidParam(format!("unknown generator {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spec() -> GridSpec {
        GridSpec::new(32, 10.0).unwrap()
    }

    #[test]
    fn gaussian_norm() {
        let f = gaussian(GridSpec::new(128, 20.0).unwrap(), 1.0, [0.0, 0.0]).unwrap();
        assert!((f.l2_norm() - PI.sqrt()).abs() < 1e-6);
        assert!(gaussian(spec(), 0.0, [0.0, 0.0]).is_err());
    }

    #[test]
    fn impulse_has_unit_mass() {
        let f = impulse(spec()).unwrap();
        assert!((f.lp_norm(1.0).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(f.samples().iter().filter(|q| **q != Quaternion::ZERO).count(), 1);
        assert_eq!(f.get(16, 16), Quaternion::real(1.0 / spec().cell_area()));
    }

    #[test]
    fn chirp_keeps_envelope_modulus() {
        let c = chirp(spec(), 0.3, 1.0).unwrap();
        let g = gaussian(spec(), 1.0, [0.0, 0.0]).unwrap();
        for (a, b) in c.samples().iter().zip(g.samples()) {
            assert!((a.modulus() - b.modulus()).abs() < 1e-15);
        }
    }

    #[test]
    fn random_generators_are_deterministic() {
        assert_eq!(random_smooth(spec(), 5).unwrap(), random_smooth(spec(), 5).unwrap());
        assert_ne!(random_smooth(spec(), 5).unwrap(), random_smooth(spec(), 6).unwrap());
        assert_eq!(quaternion_random(spec(), 5).unwrap(), quaternion_random(spec(), 5).unwrap());
        assert!((random_smooth(spec(), 9).unwrap().l2_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn generator_names_round_trip() {
        for g in Generator::ALL {
            assert_eq!(g.name().parse::<Generator>().unwrap(), g);
        }
        assert!("noise".parse::<Generator>().is_err());
    }
}
