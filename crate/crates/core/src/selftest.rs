//! The acceptance suite: each criterion is a function returning a
//! [`CriterionOutcome`], and [`run_all`] evaluates them in order.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

use crate::besov::{
    dyadic_blocks, psi_hat, sequence_interpolation_check, InterpolationParams, LittlewoodPaleyBasis,
};
use crate::error::Result;
use crate::exponent::{ExponentDescriptor, VariableExponent};
use crate::field::{dilate, lp_norm, SampledField};
use crate::generators::{sample, GeneratorSpec};
use crate::grid::{DomainSpec, LogGrid};
use crate::harness::{to_csv, CaseSpec, FunctionFamily, InequalityReport, TheoremKind, STANDARD_FAMILY_SIZE};
use crate::maximal::SmoothProfile;
use crate::norms::{
    luxemburg_norm, modular, nabla2_constant, nabla2_scan_grid, orlicz_luxemburg_norm, rescaled_orlicz_norm,
    YoungFunction,
};
use crate::relations::consistency_check;
use crate::spectral::{fractional_laplacian, riemann_liouville_fraclap, riesz_potential};

/// Default seed of the standard family.
pub const DEFAULT_SEED: u64 = 20240501;

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {:>2} [{status}] {}: {}", self.id, self.name, self.detail)
    }
}

fn outcome(id: u8, name: &'static str, passed: bool, detail: String) -> CriterionOutcome {
    CriterionOutcome { id, name, passed, detail }
}

fn error_outcome(id: u8, name: &'static str, e: crate::Error) -> CriterionOutcome {
    outcome(id, name, false, format!("error: {e}"))
}

/// One-dimensional standard grid: `L = 32`, `N = 128`.
pub fn standard_domain_1d() -> DomainSpec {
    DomainSpec::new(1, 32.0, 128).expect("valid domain")
}

/// Two-dimensional standard grid: `L = 16`, `N = 64`.
pub fn standard_domain_2d() -> DomainSpec {
    DomainSpec::new(2, 16.0, 64).expect("valid domain")
}

pub fn standard_family(domain: DomainSpec, seed: u64) -> FunctionFamily {
    FunctionFamily::standard(domain, seed, STANDARD_FAMILY_SIZE).expect("standard family is valid")
}

fn sinusoid(mean: f64, amplitude: f64) -> ExponentDescriptor {
    ExponentDescriptor::Sinusoid {
        mean,
        amplitude,
        wavenumber: 1,
    }
}

/// Every inequality at the parameters of the standard suite (one space
/// dimension).
pub fn standard_cases() -> Vec<CaseSpec> {
    use TheoremKind::*;
    vec![
        CaseSpec::new("modified_hedberg", ModifiedHedberg).with_s(0.8).with_s1(0.3).with_beta(0.5),
        CaseSpec::new("variable_sobolev", VariableSobolev)
            .with_p(sinusoid(1.8, 0.3))
            .with_s(0.4)
            .with_s1(0.1)
            .with_beta(0.5),
        CaseSpec::new("variable_sobolev_p2", VariableSobolev)
            .with_constant_p(2.0)
            .with_s(0.8)
            .with_s1(0.3)
            .with_beta(0.5),
        CaseSpec::new("mixed_sobolev", MixedSobolev).with_p(sinusoid(1.8, 0.2)).with_frak_p(2.0).with_s(0.3),
        CaseSpec::new("mixed_hls", MixedHls).with_p(sinusoid(1.8, 0.2)).with_frak_p(2.0).with_s(0.3),
        CaseSpec::new("orlicz_sobolev", OrliczSobolev)
            .with_young(YoungFunction::CappedPower {
                p_low: 2.0,
                p_high: 3.0,
                knee: 0.1,
            })
            .with_s(0.8)
            .with_s1(0.3)
            .with_beta(0.5),
        CaseSpec::new("orlicz_sobolev_t2", OrliczSobolev)
            .with_young(YoungFunction::Power { p: 2.0 })
            .with_s(0.8)
            .with_s1(0.3)
            .with_beta(0.5),
        CaseSpec::new("classical_hedberg", ClassicalHedberg).with_s(0.25).with_constant_p(2.0),
        CaseSpec::new("hls", Hls).with_s(0.25).with_constant_p(2.0),
        CaseSpec::new("hls_variable", HlsVariable).with_s(0.25).with_p(sinusoid(1.8, 0.2)),
        CaseSpec::new("phi_maximal_heat", PhiMaximal).with_profile(SmoothProfile::Heat),
        CaseSpec::new("phi_maximal_heat_laplacian", PhiMaximal).with_profile(SmoothProfile::HeatLaplacian { k: 1 }),
        CaseSpec::new("phi_maximal_lp", PhiMaximal).with_profile(SmoothProfile::LittlewoodPaley),
        CaseSpec::new("maximal_bound_p1.5", MaximalBound).with_constant_p(1.5),
        CaseSpec::new("maximal_bound_p2", MaximalBound).with_constant_p(2.0),
        CaseSpec::new("maximal_bound_p4", MaximalBound).with_constant_p(4.0),
        CaseSpec::new("young_oneil", YoungOneil).with_s(0.25).with_constant_p(2.0),
        CaseSpec::new("besov_equivalence", BesovEquivalence).with_s(0.5).with_beta(0.5),
    ]
}


/// Standard cases on both standard families, ids prefixed `1d/` and `2d/`.
pub fn standard_reports_all(seed: u64) -> Vec<InequalityReport> {
    let mut out = Vec::new();
    for (tag, domain) in [("1d", standard_domain_1d()), ("2d", standard_domain_2d())] {
        let family = standard_family(domain, seed);
        for case in standard_cases() {
            let mut r = case.run_or_fail(&family, true);
            r.case_id = format!("{tag}/{}", r.case_id);
            out.push(r);
        }
    }
    out
}

fn random_field(domain: &DomainSpec, seed: u64, band: usize) -> Result<SampledField> {
    Ok(sample(domain, &GeneratorSpec::RandomBandLimited { seed, max_band: band })?.project_mean_zero())
}

fn rel_sup(a: &SampledField, b: &SampledField) -> Result<f64> {
    Ok(a.sub(b)?.sup_norm() / b.sup_norm())
}

fn spectral_identities() -> Result<f64> {
    let mut worst = 0.0f64;
    // (domain, band, (a, b) semigroup, (s2, s3) Riesz semigroup, inversion s, (s0, s1))
    let setups = [
        (DomainSpec::new(1, 32.0, 256)?, 40, (0.7, 1.1), (0.3, 0.4), 0.5, (0.8, 0.3)),
        (DomainSpec::new(2, 16.0, 64)?, 12, (0.7, 1.1), (0.6, 0.9), 1.2, (1.5, 0.5)),
    ];
    for (dom, band, (a, b), (s2, s3), s, (s0, s1)) in setups {
        for seed in 0..100 {
            let f = random_field(&dom, seed, band)?;
            let frac = |g: &SampledField, t: f64| fractional_laplacian(g, t);
            let riesz = |g: &SampledField, t: f64| riesz_potential(g, t);
            let checks = [
                (frac(&frac(&f, a)?, b)?, frac(&f, a + b)?),
                (riesz(&riesz(&f, s2)?, s3)?, riesz(&f, s2 + s3)?),
                (riesz(&frac(&f, s)?, s)?, f.clone()),
                (frac(&riesz(&f, s)?, s)?, f.clone()),
                (frac(&riesz(&f, s1)?, s0)?, frac(&f, s0 - s1)?),
            ];
            for (lhs, rhs) in &checks {
                worst = worst.max(rel_sup(lhs, rhs)?);
            }
        }
    }
    Ok(worst)
}

/// Semigroup and inversion identities of the spectral operators on 100
/// band-limited fields per grid.
pub fn criterion_1() -> CriterionOutcome {
    const NAME: &str = "spectral identities";
    let start = std::time::Instant::now();
    match spectral_identities() {
        Ok(worst) => {
            let secs = start.elapsed().as_secs_f64();
            outcome(
                1,
                NAME,
                worst <= 1e-10 && secs < 10.0,
                format!("max relative error {worst:.3e} (<= 1e-10), {secs:.2} s (< 10 s)"),
            )
        }
        Err(e) => error_outcome(1, NAME, e),
    }
}

/// Nodes of the coarser Riemann-Liouville grid in the refinement check.
pub const RL_COARSE_NODES: usize = 200;

fn riemann_liouville_errors() -> Result<(f64, f64)> {
    let (mut coarse_worst, mut min_gain) = (0.0f64, f64::INFINITY);
    let domains = [(DomainSpec::new(1, 32.0, 256)?, 40), (DomainSpec::new(2, 16.0, 64)?, 12)];
    for (s1, s, k) in [(0.3, 1.0, 1), (0.7, 1.4, 1), (1.2, 1.8, 1)] {
        for (dom, band) in domains {
            for seed in 0..5 {
                let f = random_field(&dom, seed, band)?;
                let exact = fractional_laplacian(&f, s1)?;
                let err = |count: usize| -> Result<f64> {
                    let q = LogGrid::riemann_liouville(&dom, count);
                    rel_sup(&riemann_liouville_fraclap(&f, s1, s, k, q)?, &exact)
                };
                let coarse = err(RL_COARSE_NODES)?;
                let fine = err(2 * RL_COARSE_NODES)?;
                coarse_worst = coarse_worst.max(coarse);
                min_gain = min_gain.min(coarse / fine.max(f64::MIN_POSITIVE));
            }
        }
    }
    Ok((coarse_worst, min_gain))
}

/// Riemann-Liouville quadrature against the spectral fractional Laplacian,
/// and the gain from doubling the number of quadrature nodes.
pub fn criterion_2() -> CriterionOutcome {
    const NAME: &str = "Riemann-Liouville consistency";
    match riemann_liouville_errors() {
        Ok((worst, gain)) => outcome(
            2,
            NAME,
            worst <= 1e-3 && gain >= 2.0,
            format!("max relative error {worst:.3e} (<= 1e-3) at {RL_COARSE_NODES} nodes, min gain from doubling {gain:.3e} (>= 2)"),
        ),
        Err(e) => error_outcome(2, NAME, e),
    }
}

fn luxemburg_properties() -> Result<(f64, f64, f64)> {
    let dom = DomainSpec::new(1, 3.0, 64)?;
    let exponents = [
        sinusoid(2.5, 0.7),
        ExponentDescriptor::TwoPhase { left: 1.5, right: 3.0 },
        ExponentDescriptor::Radial {
            center: 3.0,
            far: 1.5,
            width: 0.5,
        },
        ExponentDescriptor::Constant { value: 2.0 },
        ExponentDescriptor::Sinusoid {
            mean: 1.3,
            amplitude: 0.2,
            wavenumber: 3,
        },
    ]
    .iter()
    .map(|d| d.sample(&dom))
    .collect::<Result<Vec<VariableExponent>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let values: Vec<f64> = (0..dom.len()).map(|_| rng.gen_range(-4.0..4.0)).collect();
        let f = SampledField::from_real(dom, &values)?;
        let shrink: Vec<f64> = values.iter().map(|v| v * rng.gen_range(0.0..=1.0)).collect();
        let g = SampledField::from_real(dom, &shrink)?;
        let c: f64 = rng.gen_range(-5.0..5.0);
        let alpha: f64 = rng.gen_range(1.0..3.0);
        let pow = SampledField::from_real(dom, &f.abs().iter().map(|a| a.powf(alpha)).collect::<Vec<_>>())?;
        for p in &exponents {
            let nf = luxemburg_norm(&f, p)?;
            let homog = (luxemburg_norm(&f.scale(c), p)? - c.abs() * nf).abs() / (c.abs() * nf);
            let order = ((luxemburg_norm(&g, p)? - nf) / nf).max(0.0);
            let target = luxemburg_norm(&f, &p.scaled(alpha)?)?.powf(alpha);
            let power = (luxemburg_norm(&pow, p)? - target).abs() / target;
            let unit = (modular(&f.scale(1.0 / nf), p)? - 1.0).max(0.0);
            worst = worst.max(homog).max(order).max(power).max(unit);
        }
    }
    let two_phase = {
        let d = DomainSpec::new(1, 1.0, 64)?;
        let p = ExponentDescriptor::TwoPhase { left: 2.0, right: 4.0 }.sample(&d)?;
        (luxemburg_norm(&SampledField::constant(d, 2.0), &p)? - 2.0).abs() / 2.0
    };
    let mut reduction = 0.0f64;
    for (i, dom) in [DomainSpec::new(1, 3.0, 128)?, DomainSpec::new(2, 3.0, 32)?].iter().enumerate() {
        let f = random_field(dom, 10 + i as u64, 6)?;
        for p0 in [1.2, 2.0, 3.7] {
            let lux = luxemburg_norm(&f, &VariableExponent::constant(*dom, p0)?)?;
            let lp = lp_norm(&f, p0)?;
            reduction = reduction.max((lux - lp).abs() / lp);
        }
    }
    Ok((worst, two_phase, reduction))
}

/// Homogeneity, order preservation and the power identity of the Luxemburg
/// norm; the two-phase example; reduction to `L^p` at constant exponent.
pub fn criterion_3() -> CriterionOutcome {
    const NAME: &str = "Luxemburg norm engine";
    match luxemburg_properties() {
        Ok((props, two_phase, reduction)) => outcome(
            3,
            NAME,
            props <= 1e-9 && two_phase <= 1e-9 && reduction <= 1e-10,
            format!(
                "properties {props:.3e} (<= 1e-9) over 200 x 5, two-phase {two_phase:.3e} (<= 1e-9), constant exponent {reduction:.3e} (<= 1e-10)"
            ),
        ),
        Err(e) => error_outcome(3, NAME, e),
    }
}

fn orlicz_properties() -> Result<(f64, f64, f64)> {
    let dom = DomainSpec::new(1, 6.0, 128)?;
    let fields = (0..5).map(|seed| random_field(&dom, 20 + seed, 9)).collect::<Result<Vec<_>>>()?;
    let mut reduction = 0.0f64;
    for f in &fields {
        for p in [1.5, 2.0, 4.0] {
            let a = orlicz_luxemburg_norm(f, &YoungFunction::power(p)?)?;
            let b = lp_norm(f, p)?;
            reduction = reduction.max((a - b).abs() / b);
        }
    }
    let youngs = [
        YoungFunction::power(2.0)?,
        YoungFunction::capped_power(2.0, 3.0, 0.5)?,
        YoungFunction::ExpType,
    ];
    let mut rescale = 0.0f64;
    for f in &fields {
        for a in &youngs {
            for sigma in [0.75, 1.5, 2.5] {
                let pow = SampledField::from_real(dom, &f.abs().iter().map(|v| v.powf(sigma)).collect::<Vec<_>>())?;
                let lhs = orlicz_luxemburg_norm(&pow, a)?;
                let rhs = rescaled_orlicz_norm(f, a, sigma)?.powf(sigma);
                rescale = rescale.max((lhs - rhs).abs() / rhs);
            }
        }
    }
    let mut nabla = 0.0f64;
    for p in [1.5, 2.0, 3.0, 4.0] {
        let exact = 2f64.powf(1.0 / (p - 1.0));
        let found = nabla2_constant(&YoungFunction::power(p)?, &nabla2_scan_grid())?.unwrap_or(f64::INFINITY);
        // in units of the scan step 2^{1/64}, found must lie in [exact, exact * 2^{1/64}]
        let steps = 64.0 * (found / exact).log2();
        nabla = nabla.max(if steps < -1e-9 { f64::INFINITY } else { steps });
    }
    Ok((reduction, rescale, nabla))
}

/// Power Young functions reduce to `L^p`; the rescaling identity; the
/// nabla-2 constant of `t^p` against `2^{1/(p-1)}`.
pub fn criterion_4() -> CriterionOutcome {
    const NAME: &str = "Orlicz engine";
    match orlicz_properties() {
        Ok((reduction, rescale, nabla)) => outcome(
            4,
            NAME,
            reduction <= 1e-10 && rescale <= 1e-9 && nabla <= 1.0 + 1e-9,
            format!(
                "power reduction {reduction:.3e} (<= 1e-10), rescaling {rescale:.3e} (<= 1e-9), nabla-2 offset {nabla:.3} scan steps (<= 1)"
            ),
        ),
        Err(e) => error_outcome(4, NAME, e),
    }
}

fn littlewood_paley_identities() -> Result<(f64, f64)> {
    let mut unity = 0.0f64;
    let mut recon = 0.0f64;
    for (dom, band) in [(DomainSpec::new(1, 32.0, 256)?, 40), (DomainSpec::new(2, 16.0, 64)?, 12)] {
        let basis = LittlewoodPaleyBasis::for_domain(&dom);
        for &xi in dom.frequencies().magnitudes().iter().skip(1) {
            let sum: f64 = basis.indices().map(|j| psi_hat(j, xi)).sum();
            unity = unity.max((sum - 1.0).abs());
        }
        for seed in 0..20 {
            let f = random_field(&dom, seed, band)?;
            let mut total = SampledField::zeros(dom);
            for b in dyadic_blocks(&f, &basis) {
                total = total.add(&b)?;
            }
            recon = recon.max(rel_sup(&total, &f)?);
        }
    }
    Ok((unity, recon))
}

/// Width of the thermic/LP band (`C_up * C_down`) and the larger drift of
/// the two directions under refinement, over besov-equivalence reports.
fn besov_band(reports: &[InequalityReport]) -> Option<(f64, f64)> {
    let mut width = 0.0f64;
    let mut drift = 0.0f64;
    let mut seen = false;
    for r in reports.iter().filter(|r| r.theorem == TheoremKind::BesovEquivalence) {
        let up = r.link("thermic_over_lp")?;
        let down = r.link("lp_over_thermic")?;
        width = width.max(up.fit.c_fit? * down.fit.c_fit?);
        for l in [up, down] {
            drift = drift.max((l.refinement_ratio? - 1.0).abs());
        }
        seen = true;
    }
    seen.then_some((width, drift))
}

/// Partition of unity, reconstruction, and the thermic/LP Besov band over
/// the standard family.
pub fn criterion_5(reports: &[InequalityReport]) -> CriterionOutcome {
    const NAME: &str = "Littlewood-Paley";
    let (unity, recon) = match littlewood_paley_identities() {
        Ok(v) => v,
        Err(e) => return error_outcome(5, NAME, e),
    };
    let (width, drift) = besov_band(reports).unwrap_or((f64::INFINITY, f64::INFINITY));
    outcome(
        5,
        NAME,
        unity <= 1e-12 && recon <= 1e-10 && width < 10.0 && drift < 0.1,
        format!(
            "partition of unity {unity:.3e} (<= 1e-12), reconstruction {recon:.3e} (<= 1e-10), band width {width:.3} (< 10), drift {:.2}% (< 10%)",
            100.0 * drift
        ),
    )
}

/// Least-squares slope of `y` against `x`.
fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

fn dilation_slopes() -> Result<f64> {
    let lambdas = [1u32, 2, 4, 8];
    let logs: Vec<f64> = lambdas.iter().map(|&l| (l as f64).ln()).collect();
    let mut worst = 0.0f64;
    for (dom, band) in [(DomainSpec::new(1, 32.0, 256)?, 6), (DomainSpec::new(2, 16.0, 128)?, 3)] {
        let n = dom.dimension as f64;
        for seed in 0..10 {
            let f = sample(&dom, &GeneratorSpec::RandomBandLimited { seed, max_band: band })?;
            for q in [2.0, 3.0, 4.0] {
                let norms = lambdas
                    .iter()
                    .map(|&l| Ok(lp_norm(&dilate(&f, l)?, q)?.ln()))
                    .collect::<Result<Vec<f64>>>()?;
                worst = worst.max((slope(&logs, &norms) + n / q).abs());
            }
        }
    }
    Ok(worst)
}

/// `log ||f_lambda||_q` against `log lambda` has slope `-n/q`.
pub fn criterion_6() -> CriterionOutcome {
    const NAME: &str = "dilation homogeneity";
    match dilation_slopes() {
        Ok(worst) => outcome(6, NAME, worst <= 1e-3, format!("max slope error {worst:.3e} (<= 1e-3)")),
        Err(e) => error_outcome(6, NAME, e),
    }
}

const SEQ_LEN: usize = 41;
const SEQ_FIRST: i64 = -20;

fn interpolation_params(theta: f64) -> InterpolationParams {
    InterpolationParams {
        s0: -1.0,
        s1: 1.0,
        theta,
        r: 1.0,
        r1: f64::INFINITY,
        r2: f64::INFINITY,
    }
}

/// Largest ratio over 1000 random sequences: random weights on the
/// two-sided profile `min(2^{(j-c)}, 2^{-(j-c)})` around a random centre.
fn interpolation_fit(seed: u64, theta: f64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = interpolation_params(theta);
    let mut best = 0.0f64;
    for _ in 0..1000 {
        let c: f64 = rng.gen_range(-5.0..5.0);
        let a: Vec<f64> = (0..SEQ_LEN)
            .map(|i| {
                let j = SEQ_FIRST as f64 + i as f64 - c;
                rng.gen_range(0.0..1.0) * 2f64.powf(-j.abs())
            })
            .collect();
        if let Some(r) = sequence_interpolation_check(&a, SEQ_FIRST, &params)?.ratio {
            best = best.max(r);
        }
    }
    Ok(best)
}

fn interpolation_drift() -> Result<(f64, f64)> {
    let mut drift = 0.0f64;
    let mut delta = 0.0f64;
    for theta in [0.25, 0.5, 0.75] {
        let a = interpolation_fit(1, theta)?;
        let b = interpolation_fit(2, theta)?;
        drift = drift.max((a - b).abs() / a.max(b));
        let mut e = vec![0.0; SEQ_LEN];
        e[(-SEQ_FIRST) as usize] = 1.0;
        let r = sequence_interpolation_check(&e, SEQ_FIRST, &interpolation_params(theta))?.ratio;
        delta = delta.max(r.map_or(f64::INFINITY, |r| (r - 1.0).abs()));
    }
    Ok((drift, delta))
}

/// The interpolation estimate for sequences: fitted constant stable under
/// re-seeding, and equality on a unit delta.
pub fn criterion_7() -> CriterionOutcome {
    const NAME: &str = "sequence interpolation";
    match interpolation_drift() {
        Ok((drift, delta)) => outcome(
            7,
            NAME,
            drift < 0.05 && delta == 0.0,
            format!("re-seed drift {:.2}% (< 5%), delta ratio offset {delta:e} (= 0)", 100.0 * drift),
        ),
        Err(e) => error_outcome(7, NAME, e),
    }
}

/// Every standard report passes (finite constant, refinement ratio in
/// `[1/2, 2]`, links and route agreement), and the Orlicz inequality with
/// `A(t) = t^2` reproduces the variable-exponent one at `p = 2`.
pub fn criterion_8(reports: &[InequalityReport]) -> CriterionOutcome {
    const NAME: &str = "inequality verifiers";
    let failing: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.case_id.as_str()).collect();
    let mut orlicz_gap = 0.0f64;
    let mut pairs = 0;
    for r in reports.iter().filter(|r| r.case_id.ends_with("/orlicz_sobolev_t2")) {
        let twin = r.case_id.replace("orlicz_sobolev_t2", "variable_sobolev_p2");
        let gap = match (r.c_fit(), reports.iter().find(|o| o.case_id == twin).and_then(|o| o.c_fit())) {
            (Some(a), Some(b)) => (a - b).abs() / b,
            _ => f64::INFINITY,
        };
        orlicz_gap = orlicz_gap.max(gap);
        pairs += 1;
    }
    let ratios: Vec<f64> = reports.iter().filter_map(|r| r.refinement_ratio).collect();
    let (lo, hi) = ratios
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &r| (lo.min(r), hi.max(r)));
    outcome(
        8,
        NAME,
        !reports.is_empty() && failing.is_empty() && pairs > 0 && orlicz_gap <= 1e-6,
        format!(
            "{} of {} reports pass, refinement ratios in [{lo:.4}, {hi:.4}], Orlicz t^2 vs p = 2 gap {orlicz_gap:.3e} (<= 1e-6){}",
            reports.len() - failing.len(),
            reports.len(),
            if failing.is_empty() {
                String::new()
            } else {
                format!("; failing: {}", failing.join(", "))
            }
        ),
    )
}

fn exponent_scan() -> Result<(usize, usize)> {
    let (mut total, mut held) = (0, 0);
    for n in 1..=4usize {
        for p in [Ratio::new(3i64, 2), Ratio::from(2i64), Ratio::from(3i64)] {
            for i in 1..20i64 {
                let s = Ratio::from(n as i64) / p * Ratio::new(i, 20);
                total += 1;
                if consistency_check(n, s, p)?.all_hold() {
                    held += 1;
                }
            }
        }
    }
    Ok((held, total))
}

/// The exponent relations agree exactly in rational arithmetic over
/// `n in 1..=4`, `p in {3/2, 2, 3}`, `s = (n/p) i/20`.
pub fn criterion_9() -> CriterionOutcome {
    const NAME: &str = "exponent arithmetic";
    match exponent_scan() {
        Ok((held, total)) => outcome(9, NAME, held == total, format!("{held} of {total} scan points consistent")),
        Err(e) => error_outcome(9, NAME, e),
    }
}

/// Two renderings of the standard reports are byte-identical.
pub fn criterion_10(first: &str, second: &str) -> CriterionOutcome {
    let same = first == second;
    outcome(
        10,
        "determinism",
        same && !first.is_empty(),
        format!(
            "{} bytes, {}",
            first.len(),
            if same { "identical" } else { "differ" }
        ),
    )
}

/// Results of a full suite run.
#[derive(Debug, Clone)]
pub struct SuiteRun {
    pub outcomes: Vec<CriterionOutcome>,
    pub reports: Vec<InequalityReport>,
    pub csv: String,
}

impl SuiteRun {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

/// Evaluate every criterion; the standard reports are computed twice to
/// check determinism.
pub fn run_all(seed: u64) -> SuiteRun {
    let reports = standard_reports_all(seed);
    let csv = to_csv(&reports);
    let again = to_csv(&standard_reports_all(seed));
    let outcomes = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(&reports),
        criterion_6(),
        criterion_7(),
        criterion_8(&reports),
        criterion_9(),
        criterion_10(&csv, &again),
    ];
    SuiteRun { outcomes, reports, csv }
}
