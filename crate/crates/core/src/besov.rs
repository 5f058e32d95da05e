//! Littlewood-Paley blocks, Besov norms of negative smoothness, square-function
//! norms, and the weighted-sequence interpolation estimate.

use crate::error::{Error, Result};
use crate::exponent::VariableExponent;
use crate::field::{dft, idft, SampledField};
use crate::grid::{DomainSpec, LogGrid};
use crate::norms::luxemburg_norm;
use crate::spectral::apply_radial;

/// Radial cutoff: 1 on `|xi| <= 1/2`, 0 on `|xi| >= 1`, quintic smoothstep
/// in between.
pub fn phi_hat(xi: f64) -> f64 {
    let r = xi.abs();
    if r <= 0.5 {
        1.0
    } else if r >= 1.0 {
        0.0
    } else {
        let u = 2.0 * r - 1.0;
        1.0 - u * u * u * (10.0 - 15.0 * u + 6.0 * u * u)
    }
}

/// `psi_j(xi) = phi(xi / 2^{j+1}) - phi(xi / 2^j)`, supported where
/// `2^{j-1} < |xi| < 2^{j+1}` and equal to 1 at `|xi| = 2^j`.
pub fn psi_hat(j: i32, xi: f64) -> f64 {
    phi_hat(xi / 2f64.powi(j + 1)) - phi_hat(xi / 2f64.powi(j))
}

/// The dyadic blocks needed to resolve every nonzero frequency of a grid.
///
/// `j_min` is the largest `j` with `2^j <= 2 pi / L` and `j_max` the smallest
/// with `2^j >= max |xi|` (the corner of the frequency square in two
/// dimensions), so the blocks sum to exactly 1 away from the zero mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LittlewoodPaleyBasis {
    j_min: i32,
    j_max: i32,
}

impl LittlewoodPaleyBasis {
    pub fn for_domain(domain: &DomainSpec) -> Self {
        let freqs = domain.frequencies();
        LittlewoodPaleyBasis {
            j_min: freqs.min_nonzero().log2().floor() as i32,
            j_max: freqs.max_magnitude().log2().ceil() as i32,
        }
    }

    pub fn j_min(&self) -> i32 {
        self.j_min
    }

    pub fn j_max(&self) -> i32 {
        self.j_max
    }

    pub fn indices(&self) -> impl Iterator<Item = i32> {
        self.j_min..=self.j_max
    }

    fn check(&self, j: i32) -> Result<()> {
        if j < self.j_min || j > self.j_max {
            return Err(Error::param(
                "j",
                format!("block {j} outside [{}, {}]", self.j_min, self.j_max),
            ));
        }
        Ok(())
    }
}

/// `Delta_j f`: spectral multiplication by `psi_j`.
pub fn dyadic_block(field: &SampledField, j: i32, basis: &LittlewoodPaleyBasis) -> Result<SampledField> {
    basis.check(j)?;
    Ok(apply_radial(field, |xi| psi_hat(j, xi), true))
}

/// All blocks `Delta_j f`, `j = j_min..=j_max`, from a single forward transform.
pub fn dyadic_blocks(field: &SampledField, basis: &LittlewoodPaleyBasis) -> Vec<SampledField> {
    let coeffs = dft(field);
    let mags = field.domain().frequencies().magnitudes().to_vec();
    let real = field.values().iter().all(|v| v.im == 0.0);
    basis
        .indices()
        .map(|j| {
            let c = coeffs.multiplied(|i| if i == 0 { 0.0 } else { psi_hat(j, mags[i]) });
            let b = idft(&c);
            if real {
                b.map(|v| v.re.into())
            } else {
                b
            }
        })
        .collect()
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::param("beta", format!("must be positive, got {beta}")));
    }
    Ok(())
}

/// `max_t t^{beta/2} ||h_t * (f - mean f)||_inf` over the nodes of `t_grid`
/// (at least 100).
pub fn besov_norm_thermic(field: &SampledField, beta: f64, t_grid: &LogGrid) -> Result<f64> {
    check_beta(beta)?;
    t_grid.validate()?;
    if t_grid.count < 100 {
        return Err(Error::param(
            "t_grid",
            format!("thermic norm needs at least 100 times, got {}", t_grid.count),
        ));
    }
    let coeffs = dft(field);
    let mags = field.domain().frequencies().magnitudes().to_vec();
    let mut best = 0.0f64;
    for t in t_grid.nodes() {
        let c = coeffs.multiplied(|i| if i == 0 { 0.0 } else { (-t * mags[i] * mags[i]).exp() });
        best = best.max(t.powf(0.5 * beta) * idft(&c).sup_norm());
    }
    Ok(best)
}

/// `max_j 2^{-beta j} ||Delta_j f||_inf`.
pub fn besov_norm_lp(field: &SampledField, beta: f64, basis: &LittlewoodPaleyBasis) -> Result<f64> {
    check_beta(beta)?;
    Ok(basis
        .indices()
        .zip(dyadic_blocks(field, basis))
        .map(|(j, b)| 2f64.powf(-beta * j as f64) * b.sup_norm())
        .fold(0.0, f64::max))
}

/// Luxemburg norm of `(sum_j 2^{2sj} |Delta_j f|^2)^{1/2}`.
pub fn lp_square_function_norm(
    field: &SampledField,
    s: f64,
    p: &VariableExponent,
    basis: &LittlewoodPaleyBasis,
) -> Result<f64> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::param("s", format!("smoothness must be >= 0, got {s}")));
    }
    let mut square = vec![0.0; field.domain().len()];
    for (j, b) in basis.indices().zip(dyadic_blocks(field, basis)) {
        let w = 2f64.powf(2.0 * s * j as f64);
        for (acc, v) in square.iter_mut().zip(b.values()) {
            *acc += w * v.norm_sqr();
        }
    }
    let root: Vec<f64> = square.iter().map(|v| v.sqrt()).collect();
    luxemburg_norm(&SampledField::from_real(*field.domain(), &root)?, p)
}

/// Both sides of the interpolation estimate for weighted sequences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / rhs`; absent when `rhs = 0`.
    pub ratio: Option<f64>,
}

/// Parameters `s0, s1, theta, r, r1, r2` of the interpolation estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationParams {
    pub s0: f64,
    pub s1: f64,
    pub theta: f64,
    pub r: f64,
    pub r1: f64,
    pub r2: f64,
}

/// `(sum_j |2^{js} a_j|^r)^{1/r}`, or the max for `r = inf`.
fn weighted_lr(a: &[f64], first: i64, s: f64, r: f64) -> f64 {
    let w: Vec<f64> = a
        .iter()
        .enumerate()
        .map(|(i, v)| 2f64.powf(s * (first + i as i64) as f64) * v.abs())
        .collect();
    crate::field::lp_norm_of_moduli(&w, 1.0, r)
}

/// `lhs = ||2^{js} a_j||_{l^r}` with `s = (1 - theta) s0 + theta s1`,
/// `rhs = ||2^{j s0} a_j||_{l^{r1}}^{1-theta} ||2^{j s1} a_j||_{l^{r2}}^theta`;
/// `a[i]` is the entry at `j = first + i`.
pub fn sequence_interpolation_check(
    a: &[f64],
    first: i64,
    params: &InterpolationParams,
) -> Result<InterpolationCheck> {
    let InterpolationParams { s0, s1, theta, r, r1, r2 } = *params;
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::param("theta", format!("must lie in (0, 1), got {theta}")));
    }
    if s0 == s1 {
        return Err(Error::param("s1", "s0 and s1 must differ"));
    }
    for (name, v) in [("r", r), ("r1", r1), ("r2", r2)] {
        if v.is_nan() || v < 1.0 {
            return Err(Error::param(name, format!("must lie in [1, inf], got {v}")));
        }
    }
    let s = (1.0 - theta) * s0 + theta * s1;
    let lhs = weighted_lr(a, first, s, r);
    let rhs = weighted_lr(a, first, s0, r1).powf(1.0 - theta) * weighted_lr(a, first, s1, r2).powf(theta);
    Ok(InterpolationCheck {
        lhs,
        rhs,
        ratio: (rhs > 0.0).then(|| lhs / rhs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{sample, GeneratorSpec};
    use std::f64::consts::PI;

    #[test]
    fn profile_shape() {
        assert_eq!(phi_hat(0.0), 1.0);
        assert_eq!(phi_hat(0.5), 1.0);
        assert_eq!(phi_hat(1.0), 0.0);
        assert!((phi_hat(0.75) - 0.5).abs() < 1e-15);
        let mut prev = 1.0;
        for i in 0..=1000 {
            let v = phi_hat(0.5 + 0.5 * i as f64 / 1000.0);
            assert!(v <= prev);
            prev = v;
        }
        assert_eq!(psi_hat(3, 8.0), 1.0);
        assert_eq!(psi_hat(3, 4.0), 0.0);
        assert_eq!(psi_hat(3, 16.0), 0.0);
    }

    #[test]
    fn partition_of_unity_on_grids() {
        for dom in [
            DomainSpec::new(1, 5.0, 256).unwrap(),
            DomainSpec::new(2, 2.0 * PI, 64).unwrap(),
            DomainSpec::new(2, 16.0, 128).unwrap(),
        ] {
            let basis = LittlewoodPaleyBasis::for_domain(&dom);
            for &xi in dom.frequencies().magnitudes().iter().skip(1) {
                let sum: f64 = basis.indices().map(|j| psi_hat(j, xi)).sum();
                assert!((sum - 1.0).abs() < 1e-12, "xi = {xi}: {sum}");
            }
        }
    }

    #[test]
    fn blocks_reconstruct_and_separate() {
        let dom = DomainSpec::new(2, 4.0, 32).unwrap();
        let basis = LittlewoodPaleyBasis::for_domain(&dom);
        let f = sample(&dom, &GeneratorSpec::RandomBandLimited { seed: 2, max_band: 15 })
            .unwrap()
            .add(&SampledField::constant(dom, 0.7))
            .unwrap();
        let blocks = dyadic_blocks(&f, &basis);
        let sum = blocks
            .iter()
            .skip(1)
            .fold(blocks[0].clone(), |acc, b| acc.add(b).unwrap());
        let err = sum.sub(&f.project_mean_zero()).unwrap().sup_norm();
        assert!(err < 1e-10 * f.sup_norm());
        let j = basis.j_min() + 1;
        let far = dyadic_block(&dyadic_block(&f, j, &basis).unwrap(), j + 2, &basis).unwrap();
        assert!(far.sup_norm() < 1e-14 * f.sup_norm());
        assert!(dyadic_block(&f, basis.j_max() + 1, &basis).is_err());
    }

    #[test]
    fn lp_besov_of_mode_in_annulus_bulk() {
        // xi = 2 pi k / L = 4 = 2^2 exactly
        let dom = DomainSpec::new(1, PI, 64).unwrap();
        let f = sample(&dom, &GeneratorSpec::FourierMode { k: vec![2] }).unwrap();
        let basis = LittlewoodPaleyBasis::for_domain(&dom);
        let v = besov_norm_lp(&f, 0.5, &basis).unwrap();
        assert!((v - 0.5).abs() < 1e-13);
        assert_eq!(besov_norm_lp(&SampledField::zeros(dom), 0.5, &basis).unwrap(), 0.0);
    }

    #[test]
    fn thermic_besov_of_unit_mode() {
        let dom = DomainSpec::new(1, 2.0 * PI, 64).unwrap();
        let f = sample(&dom, &GeneratorSpec::FourierMode { k: vec![1] }).unwrap();
        let grid = LogGrid::new(1e-3, 1e2, 20001).unwrap();
        let v = besov_norm_thermic(&f, 1.0, &grid).unwrap();
        let oracle = (0.5 / std::f64::consts::E).sqrt();
        assert!((v - oracle).abs() < 1e-8);
        assert!(besov_norm_thermic(&f, 1.0, &LogGrid::new(1e-3, 1.0, 50).unwrap()).is_err());
        assert!(besov_norm_thermic(&f, 0.0, &grid).is_err());
    }

    #[test]
    fn square_function_examples() {
        let dom = DomainSpec::new(1, 2.0 * PI, 64).unwrap();
        let basis = LittlewoodPaleyBasis::for_domain(&dom);
        let p2 = VariableExponent::constant(dom, 2.0).unwrap();
        assert_eq!(lp_square_function_norm(&SampledField::constant(dom, 2.0), 0.0, &p2, &basis).unwrap(), 0.0);
        for k in [1i64, 3, 5, 11] {
            let f = sample(&dom, &GeneratorSpec::FourierMode { k: vec![k] }).unwrap();
            let overlap: f64 = basis.indices().map(|j| psi_hat(j, k as f64).powi(2)).sum();
            assert!((0.5..=1.0).contains(&overlap));
            let expect = overlap.sqrt() * (2.0 * PI).sqrt();
            let got = lp_square_function_norm(&f, 0.0, &p2, &basis).unwrap();
            assert!((got - expect).abs() < 1e-10 * expect);
        }
    }

    #[test]
    fn interpolation_examples() {
        let params = InterpolationParams {
            s0: 1.0,
            s1: -1.0,
            theta: 0.5,
            r: 2.0,
            r1: 2.0,
            r2: f64::INFINITY,
        };
        let delta = sequence_interpolation_check(&[1.0], 0, &params).unwrap();
        assert_eq!((delta.lhs, delta.rhs, delta.ratio), (1.0, 1.0, Some(1.0)));
        let zero = sequence_interpolation_check(&[0.0; 5], -2, &params).unwrap();
        assert_eq!((zero.lhs, zero.rhs, zero.ratio), (0.0, 0.0, None));
        let a: Vec<f64> = (0..=20).map(|j| 2f64.powi(-j)).collect();
        let c = sequence_interpolation_check(&a, 0, &params).unwrap();
        let lhs: f64 = (0..=20).map(|j| 4f64.powi(-j)).sum::<f64>().sqrt();
        let rhs = 21f64.sqrt().sqrt();
        assert!((c.lhs - lhs).abs() < 1e-14 && (c.rhs - rhs).abs() < 1e-14);
        assert!(c.ratio.unwrap() < 4.0);
        let bad = InterpolationParams { theta: 1.0, ..params };
        assert!(sequence_interpolation_check(&a, 0, &bad).is_err());
        let same = InterpolationParams { s1: 1.0, ..params };
        assert!(sequence_interpolation_check(&a, 0, &same).is_err());
    }
}
