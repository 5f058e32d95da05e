//! Variable-exponent modulars and Luxemburg norms, Sobolev functionals, mixed
//! norms, and Orlicz norms.

mod orlicz;

pub use orlicz::{
    nabla2_constant, nabla2_scan_grid, orlicz_luxemburg_norm, orlicz_modular, rescaled_orlicz_norm,
    YoungFunction,
};

use crate::error::{Error, Result};
use crate::exponent::VariableExponent;
use crate::field::{lp_norm, SampledField};
use crate::spectral::fractional_laplacian;

const MAX_STEPS: usize = 200;

/// Smallest `lambda > 0` with `cell * sum_i phi_i(u_i / lambda) <= 1`, where
/// `phi(i, v)` is continuous and non-decreasing in `v` and vanishes at zero.
///
/// Values are normalised by their maximum, then the bracket on `ln lambda`
/// is shrunk until it is a few ulps wide. Steps are Illinois-type regula
/// falsi on `ln rho`, which is close to linear in `ln lambda`, with a
/// bisection whenever a step fails to halve the bracket. The upper end of
/// the final bracket is returned, so the unit-ball condition holds.
pub(crate) fn luxemburg_solve(
    moduli: &[f64],
    cell: f64,
    phi: impl Fn(usize, f64) -> f64,
) -> Result<f64> {
    let peak = moduli.iter().copied().fold(0.0, f64::max);
    if peak == 0.0 {
        return Ok(0.0);
    }
    if !peak.is_finite() {
        return Err(Error::Numerical("field has non-finite values".into()));
    }
    let u: Vec<f64> = moduli.iter().map(|m| m / peak).collect();
    let total = u.len() as f64 * cell;
    let modular = |mu: f64| -> f64 {
        cell * u
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.0)
            .map(|(i, &v)| phi(i, v / mu))
            .sum::<f64>()
    };
    let mut lo = 1e-6;
    let mut hi = total.max(1.0) * 1e6;
    let mut guard = 0;
    let mut f_hi = modular(hi);
    while f_hi > 1.0 {
        hi *= 1e3;
        f_hi = modular(hi);
        guard += 1;
        if guard > 100 {
            return Err(Error::Numerical("no upper bracket for the Luxemburg norm".into()));
        }
    }
    let mut f_lo = modular(lo);
    while f_lo <= 1.0 {
        lo *= 1e-3;
        f_lo = modular(lo);
        guard += 1;
        if guard > 200 {
            return Err(Error::Numerical("no lower bracket for the Luxemburg norm".into()));
        }
    }
    // g(x) = ln rho(e^x): positive at lo, non-positive at hi
    let g = |rho: f64| if rho > 0.0 { rho.ln() } else { f64::NEG_INFINITY };
    let (mut a, mut b) = (lo.ln(), hi.ln());
    let (mut ga, mut gb) = (g(f_lo), g(f_hi));
    let mut bisect_next = false;
    let mut last_side = 0i8;
    for _ in 0..MAX_STEPS {
        if b - a <= 4.0 * f64::EPSILON * a.abs().max(1.0) || hi <= lo * (1.0 + 4.0 * f64::EPSILON) {
            break;
        }
        let width = b - a;
        let secant = a - ga * (b - a) / (gb - ga);
        let mid = 0.5 * (a + b);
        let mut x = if bisect_next || !secant.is_finite() || secant <= a || secant >= b {
            mid
        } else {
            secant
        };
        let mut mu = x.exp();
        if mu <= lo || mu >= hi {
            x = mid;
            mu = x.exp();
            if mu <= lo || mu >= hi {
                break;
            }
        }
        let gx = g(modular(mu));
        if gx <= 0.0 {
            b = x;
            hi = mu;
            gb = gx;
            if last_side == 1 {
                ga *= 0.5;
            }
            last_side = 1;
        } else {
            a = x;
            lo = mu;
            ga = gx;
            if last_side == -1 {
                gb *= 0.5;
            }
            last_side = -1;
        }
        bisect_next = b - a > 0.5 * width;
    }
    Ok(peak * hi)
}

fn check_grid(field: &SampledField, p: &VariableExponent) -> Result<()> {
    if !field.domain().same_grid(p.domain()) {
        return Err(Error::GridMismatch(format!(
            "field on {:?}, exponent on {:?}",
            field.domain(),
            p.domain()
        )));
    }
    Ok(())
}

/// `rho_p(f) = h^n sum |f(x_m)|^{p(x_m)}`.
pub fn modular(field: &SampledField, p: &VariableExponent) -> Result<f64> {
    check_grid(field, p)?;
    let cell = field.domain().cell_volume();
    Ok(cell
        * field
            .abs()
            .iter()
            .zip(p.values())
            .map(|(a, q)| a.powf(*q))
            .sum::<f64>())
}

/// `||f||_{p(.)} = inf { lambda > 0 : rho_p(f / lambda) <= 1 }`.
pub fn luxemburg_norm(field: &SampledField, p: &VariableExponent) -> Result<f64> {
    check_grid(field, p)?;
    luxemburg_of_moduli(&field.abs(), p)
}

pub(crate) fn luxemburg_of_moduli(moduli: &[f64], p: &VariableExponent) -> Result<f64> {
    let exps = p.values();
    luxemburg_solve(moduli, p.domain().cell_volume(), |i, v| v.powf(exps[i]))
}

/// `||(-Delta)^{s/2} f||_{p(.)}`, a semi-norm vanishing on constants.
pub fn sobolev_norm(field: &SampledField, s: f64, p: &VariableExponent) -> Result<f64> {
    luxemburg_norm(&fractional_laplacian(field, s)?, p)
}

/// Variable exponent `p(.)` paired with a constant exponent `frak_p`, and an
/// optional smoothness for the Sobolev version.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedSpaceSpec {
    pub p: VariableExponent,
    pub frak_p: f64,
    pub s: f64,
}

impl MixedSpaceSpec {
    pub fn new(p: VariableExponent, frak_p: f64, s: f64) -> Result<Self> {
        if !(frak_p > 1.0 && frak_p.is_finite()) {
            return Err(Error::param("frak_p", format!("must lie in (1, inf), got {frak_p}")));
        }
        if !(s >= 0.0 && s.is_finite()) {
            return Err(Error::param("s", format!("smoothness must be >= 0, got {s}")));
        }
        Ok(MixedSpaceSpec { p, frak_p, s })
    }
}

/// `max(||f||_{p(.)}, ||f||_{frak_p})`.
pub fn mixed_lebesgue_norm(field: &SampledField, spec: &MixedSpaceSpec) -> Result<f64> {
    Ok(luxemburg_norm(field, &spec.p)?.max(lp_norm(field, spec.frak_p)?))
}

/// `max(||(-Delta)^{s/2} f||_{p(.)}, ||(-Delta)^{s/2} f||_{frak_p})`.
pub fn mixed_sobolev_norm(field: &SampledField, spec: &MixedSpaceSpec) -> Result<f64> {
    let d = fractional_laplacian(field, spec.s)?;
    Ok(luxemburg_norm(&d, &spec.p)?.max(lp_norm(&d, spec.frak_p)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::ExponentDescriptor;
    use crate::generators::{sample, GeneratorSpec};
    use crate::grid::DomainSpec;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn unit(n: usize) -> DomainSpec {
        DomainSpec::new(1, 1.0, n).unwrap()
    }

    fn sinusoid(d: &DomainSpec, mean: f64, amp: f64) -> VariableExponent {
        ExponentDescriptor::Sinusoid {
            mean,
            amplitude: amp,
            wavenumber: 1,
        }
        .sample(d)
        .unwrap()
    }

    #[test]
    fn modular_examples() {
        let d = unit(32);
        let p = sinusoid(&d, 2.5, 0.7);
        assert_relative_eq!(modular(&SampledField::constant(d, 1.0), &p).unwrap(), 1.0, max_relative = 1e-14);
        assert_eq!(modular(&SampledField::zeros(d), &p).unwrap(), 0.0);
        let three = VariableExponent::constant(d, 3.0).unwrap();
        assert_relative_eq!(modular(&SampledField::constant(d, 2.0), &three).unwrap(), 8.0, max_relative = 1e-14);
        let other = VariableExponent::constant(unit(16), 3.0).unwrap();
        assert!(modular(&SampledField::constant(d, 2.0), &other).is_err());
    }

    #[test]
    fn two_phase_norm_is_two() {
        // 1/2 (2/l)^2 + 1/2 (2/l)^4 = 1  =>  (2/l)^2 = 1
        let d = unit(64);
        let p = ExponentDescriptor::TwoPhase { left: 2.0, right: 4.0 }.sample(&d).unwrap();
        let n = luxemburg_norm(&SampledField::constant(d, 2.0), &p).unwrap();
        assert_relative_eq!(n, 2.0, max_relative = 1e-12);
    }

    #[test]
    fn constant_exponent_reduces_to_lebesgue() {
        let d = DomainSpec::new(2, 3.0, 16).unwrap();
        let f = sample(&d, &GeneratorSpec::RandomBandLimited { seed: 4, max_band: 5 }).unwrap();
        for p0 in [1.2, 2.0, 3.7] {
            let p = VariableExponent::constant(d, p0).unwrap();
            assert_relative_eq!(luxemburg_norm(&f, &p).unwrap(), lp_norm(&f, p0).unwrap(), max_relative = 1e-12);
        }
    }

    #[test]
    fn root_on_a_bracket_edge_still_converges() {
        let d = DomainSpec::new(1, 6.0, 128).unwrap();
        for seed in 0..60 {
            let f = sample(&d, &GeneratorSpec::RandomBandLimited { seed, max_band: 9 }).unwrap().project_mean_zero();
            for p0 in [1.5, 2.0, 4.0] {
                let p = VariableExponent::constant(d, p0).unwrap();
                assert_relative_eq!(luxemburg_norm(&f, &p).unwrap(), lp_norm(&f, p0).unwrap(), max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn sobolev_examples() {
        let d = DomainSpec::new(1, 2.0 * PI, 32).unwrap();
        let p2 = VariableExponent::constant(d, 2.0).unwrap();
        assert_eq!(sobolev_norm(&SampledField::constant(d, 3.0), 0.7, &p2).unwrap(), 0.0);
        let f = sample(&d, &GeneratorSpec::FourierMode { k: vec![3] }).unwrap();
        assert_relative_eq!(
            sobolev_norm(&f, 0.5, &p2).unwrap(),
            3f64.sqrt() * (2.0 * PI).sqrt(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn mixed_norms() {
        let d = unit(64);
        let f = sample(&d, &GeneratorSpec::RandomBandLimited { seed: 8, max_band: 6 }).unwrap();
        let same = MixedSpaceSpec::new(VariableExponent::constant(d, 2.0).unwrap(), 2.0, 0.0).unwrap();
        assert_relative_eq!(mixed_lebesgue_norm(&f, &same).unwrap(), lp_norm(&f, 2.0).unwrap(), max_relative = 1e-14);
        assert_eq!(mixed_lebesgue_norm(&SampledField::zeros(d), &same).unwrap(), 0.0);
        let var = MixedSpaceSpec::new(sinusoid(&d, 2.2, 0.5), 3.0, 0.4).unwrap();
        let m = mixed_sobolev_norm(&f, &var).unwrap();
        assert!(m >= sobolev_norm(&f, 0.4, &var.p).unwrap());
        assert!(MixedSpaceSpec::new(var.p.clone(), 1.0, 0.0).is_err());
    }

    fn arb_case() -> impl Strategy<Value = (SampledField, VariableExponent)> {
        (prop::collection::vec(-4.0f64..4.0, 64), 1.1f64..4.0, 0.0f64..1.5).prop_map(|(v, mean, amp)| {
            let d = DomainSpec::new(1, 3.0, 64).unwrap();
            let amp = amp.min(0.9 * (mean - 1.0));
            (SampledField::from_real(d, &v).unwrap(), sinusoid(&d, mean, amp))
        })
    }

    proptest! {
        #[test]
        fn homogeneous((f, p) in arb_case(), c in -5.0f64..5.0) {
            prop_assume!(c != 0.0);
            let a = luxemburg_norm(&f.scale(c), &p).unwrap();
            let b = c.abs() * luxemburg_norm(&f, &p).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * b);
        }

        #[test]
        fn unit_ball((f, p) in arb_case()) {
            let n = luxemburg_norm(&f, &p).unwrap();
            let m = modular(&f.scale(1.0 / n), &p).unwrap();
            prop_assert!((1.0 - 1e-8..=1.0 + 1e-12).contains(&m));
        }

        #[test]
        fn order_preserving((f, p) in arb_case(), shrink in prop::collection::vec(0.0f64..=1.0, 64)) {
            let g = SampledField::from_values(*f.domain(), f.values().iter().zip(&shrink).map(|(v, s)| v * s).collect()).unwrap();
            prop_assert!(luxemburg_norm(&g, &p).unwrap() <= luxemburg_norm(&f, &p).unwrap() * (1.0 + 1e-12));
        }

        #[test]
        fn power_identity((f, p) in arb_case(), alpha in 1.0f64..3.0) {
            let pow = SampledField::from_real(*f.domain(), &f.abs().iter().map(|a| a.powf(alpha)).collect::<Vec<_>>()).unwrap();
            let lhs = luxemburg_norm(&pow, &p).unwrap();
            let rhs = luxemburg_norm(&f, &p.scaled(alpha).unwrap()).unwrap().powf(alpha);
            prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs);
        }
    }
}
