//! Analytic test functions sampled on a grid.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::field::{idft, SampledField, SpectralCoefficients};
use crate::grid::{wavenumber_index, DomainSpec};

/// Declarative description of a test function.
///
/// Centers default to the origin; their length must match the domain
/// dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeneratorSpec {
    /// `exp(i xi_k . x)` with integer wavevector `k`.
    FourierMode { k: Vec<i64> },
    /// Heat kernel at time `sigma^2`: `(4 pi sigma^2)^{-n/2} exp(-|x - c|^2 / (4 sigma^2))`.
    Gaussian {
        sigma: f64,
        #[serde(default)]
        center: Vec<f64>,
    },
    /// `exp(1 - 1 / (1 - rho^2))` for `rho = |x - c| / radius < 1`, zero outside.
    SmoothBump {
        radius: f64,
        #[serde(default)]
        center: Vec<f64>,
    },
    /// Real trigonometric polynomial with seeded random coefficients on
    /// every mode with `1 <= max_i |k_i| <= max_band`.
    RandomBandLimited { seed: u64, max_band: usize },
    Constant { value: f64 },
    Sum { terms: Vec<GeneratorSpec> },
}

/// Names and one-line descriptions of every generator kind.
pub const GENERATOR_CATALOG: &[(&str, &str)] = &[
    ("fourier_mode", "k: integer wavevector; exp(i 2 pi k.x / L)"),
    (
        "gaussian",
        "sigma > 0, center; heat kernel (4 pi sigma^2)^(-n/2) exp(-|x-c|^2 / (4 sigma^2)), needs sigma >= 2h",
    ),
    (
        "smooth_bump",
        "radius, center; exp(1 - 1/(1 - |x-c|^2/radius^2)) inside the ball, needs 2h <= radius <= L/2",
    ),
    (
        "random_band_limited",
        "seed, max_band; real trigonometric polynomial on modes 1 <= |k|_inf <= max_band < N/2",
    ),
    ("constant", "value; the constant function"),
    ("sum", "terms: list of generators; pointwise sum"),
];

/// Evaluate `generator` at every grid point of `domain`.
pub fn sample(domain: &DomainSpec, generator: &GeneratorSpec) -> Result<SampledField> {
    domain.validate()?;
    match generator {
        GeneratorSpec::FourierMode { k } => fourier_mode(domain, k),
        GeneratorSpec::Gaussian { sigma, center } => gaussian(domain, *sigma, center),
        GeneratorSpec::SmoothBump { radius, center } => smooth_bump(domain, *radius, center),
        GeneratorSpec::RandomBandLimited { seed, max_band } => {
            random_band_limited(domain, *seed, *max_band)
        }
        GeneratorSpec::Constant { value } => {
            if !value.is_finite() {
                return Err(Error::InvalidGenerator(format!("constant {value} is not finite")));
            }
            Ok(SampledField::constant(*domain, *value))
        }
        GeneratorSpec::Sum { terms } => {
            let (first, rest) = terms
                .split_first()
                .ok_or_else(|| Error::InvalidGenerator("sum needs at least one term".into()))?;
            rest.iter().try_fold(sample(domain, first)?, |acc, t| {
                acc.add(&sample(domain, t)?)
                    .map(|f| f.with_mean_zero_flag(false))
            })
        }
    }
}

/// Flat spectral index of wavevector `k`, if representable on the grid.
pub fn mode_index(domain: &DomainSpec, k: &[i64]) -> Option<usize> {
    if k.len() != domain.dimension {
        return None;
    }
    let n = domain.points_per_axis;
    let i = wavenumber_index(k[0], n)?;
    let j = if domain.dimension == 2 {
        wavenumber_index(k[1], n)?
    } else {
        0
    };
    Some(domain.flat_index([i, j]))
}

fn fourier_mode(domain: &DomainSpec, k: &[i64]) -> Result<SampledField> {
    if k.len() != domain.dimension {
        return Err(Error::InvalidGenerator(format!(
            "mode {k:?} has {} components, domain has dimension {}",
            k.len(),
            domain.dimension
        )));
    }
    if mode_index(domain, k).is_none() {
        return Err(Error::InvalidGenerator(format!(
            "mode {k:?} outside the Nyquist range [-{n}, {n})",
            n = domain.points_per_axis / 2
        )));
    }
    let n = domain.points_per_axis as i64;
    // xi . x_m = 2 pi k m / N - pi k; reduce k m mod N before scaling
    let phase = |k: i64, m: usize| {
        let turn = (k * m as i64).rem_euclid(n) as f64 / n as f64;
        2.0 * PI * turn - PI * k.rem_euclid(2) as f64
    };
    let values = (0..domain.len())
        .map(|flat| {
            let [i, j] = domain.multi_index(flat);
            let mut theta = phase(k[0], i);
            if domain.dimension == 2 {
                theta += phase(k[1], j);
            }
            Complex64::from_polar(1.0, theta)
        })
        .collect();
    SampledField::from_values(*domain, values)
}

fn center_point(domain: &DomainSpec, center: &[f64]) -> Result<[f64; 2]> {
    match (center.len(), domain.dimension) {
        (0, _) => Ok([0.0, 0.0]),
        (1, 1) => Ok([center[0], 0.0]),
        (2, 2) => Ok([center[0], center[1]]),
        (len, dim) => Err(Error::InvalidGenerator(format!(
            "center has {len} components, domain has dimension {dim}"
        ))),
    }
}

fn gaussian(domain: &DomainSpec, sigma: f64, center: &[f64]) -> Result<SampledField> {
    let h = domain.spacing();
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidGenerator(format!("gaussian sigma must be positive, got {sigma}")));
    }
    if sigma < 2.0 * h {
        return Err(Error::InvalidGenerator(format!(
            "gaussian sigma {sigma} under-resolved: needs sigma >= 2h = {}",
            2.0 * h
        )));
    }
    let c = center_point(domain, center)?;
    let n = domain.dimension as i32;
    let norm = (4.0 * PI * sigma * sigma).powf(-0.5 * n as f64);
    Ok(SampledField::from_fn(*domain, |x| {
        let d = domain.torus_displacement(x, c);
        let r2 = d[0] * d[0] + d[1] * d[1];
        Complex64::new(norm * (-r2 / (4.0 * sigma * sigma)).exp(), 0.0)
    }))
}

fn smooth_bump(domain: &DomainSpec, radius: f64, center: &[f64]) -> Result<SampledField> {
    let h = domain.spacing();
    if !(radius.is_finite() && radius >= 2.0 * h && radius <= 0.5 * domain.period) {
        return Err(Error::InvalidGenerator(format!(
            "bump radius {radius} must lie in [2h, L/2] = [{}, {}]",
            2.0 * h,
            0.5 * domain.period
        )));
    }
    let c = center_point(domain, center)?;
    Ok(SampledField::from_fn(*domain, |x| {
        let d = domain.torus_displacement(x, c);
        let rho2 = (d[0] * d[0] + d[1] * d[1]) / (radius * radius);
        let v = if rho2 < 1.0 {
            (1.0 - 1.0 / (1.0 - rho2)).exp()
        } else {
            0.0
        };
        Complex64::new(v, 0.0)
    }))
}

/// Modes in the half space `k_last > 0 or (k_last == 0 and k_0 > 0)`, in a
/// fixed order independent of the grid size.
fn half_space_modes(dimension: usize, band: i64) -> Vec<[i64; 2]> {
    match dimension {
        1 => (1..=band).map(|k| [k, 0]).collect(),
        _ => (0..=band)
            .flat_map(|k1| (-band..=band).map(move |k0| [k0, k1]))
            .filter(|&[k0, k1]| k1 > 0 || k0 > 0)
            .collect(),
    }
}

fn random_band_limited(domain: &DomainSpec, seed: u64, max_band: usize) -> Result<SampledField> {
    let n = domain.points_per_axis;
    if max_band == 0 || max_band >= n / 2 {
        return Err(Error::InvalidGenerator(format!(
            "max_band must lie in [1, N/2) = [1, {}), got {max_band}",
            n / 2
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = SpectralCoefficients::zeros(*domain);
    let dim = domain.dimension;
    for [k0, k1] in half_space_modes(dim, max_band as i64) {
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let k = &[k0, k1][..dim];
        let neg: Vec<i64> = k.iter().map(|v| -v).collect();
        let (i, j) = (
            mode_index(domain, k).expect("band below Nyquist"),
            mode_index(domain, &neg).expect("band below Nyquist"),
        );
        coeffs.coefficients_mut()[i] = c;
        coeffs.coefficients_mut()[j] = c.conj();
    }
    let f = idft(&coeffs);
    let real: Vec<f64> = f.values().iter().map(|v| v.re).collect();
    SampledField::from_real(*domain, &real)
}
