//! One function per inequality. Each samples the family on its grid and on
//! the refined grid, fits the constant on both, and assembles a report.

use rayon::prelude::*;

use super::family::FunctionFamily;
use super::fit::{ratio_stable, refinement_ratio, Fit};
use super::report::{CheckReport, InequalityReport, LinkReport, ParameterRecord, TheoremKind};
use crate::besov::{besov_norm_lp, besov_norm_thermic, lp_square_function_norm, LittlewoodPaleyBasis};
use crate::error::{Error, Result};
use crate::exponent::{log_holder_constants, ExponentDescriptor, VariableExponent};
use crate::field::{lp_norm, SampledField};
use crate::grid::{DomainSpec, LogGrid};
use crate::maximal::{hl_maximal, phi_maximal, weak_lorentz_norm, BallFamily, SmoothProfile};
use crate::norms::{
    luxemburg_norm, nabla2_constant, nabla2_scan_grid, orlicz_luxemburg_norm, rescaled_orlicz_norm,
    YoungFunction,
};
use crate::relations::{
    hedberg_theta, lorentz_exponent, mixed_theta, sigma_exponent, smoothness_in_range, sobolev_conjugate,
    young_oneil_exponent, GATE_NABLA2,
};
use crate::spectral::{default_rl_order, fractional_laplacian, riesz_kernel_eval, riesz_potential, RiemannLiouville};

/// Nodes of the Riemann-Liouville quadrature used by the harness.
pub const RL_NODES: usize = 400;

/// Relative tolerance on the agreement between the spectral and
/// Littlewood-Paley routes.
const ROUTE_SLACK: f64 = 1e-9;

/// What one grid level contributes to a report.
#[derive(Debug, Default)]
struct Measurement {
    main: Fit,
    links: Vec<(String, Fit)>,
    checks: Vec<CheckReport>,
}

fn per_member<T: Send>(
    fields: &[SampledField],
    work: impl Fn(&SampledField) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    fields.par_iter().map(&work).collect()
}

fn powered(g: &SampledField, e: f64) -> Vec<f64> {
    g.abs().iter().map(|v| v.powf(e)).collect()
}

fn thermic(f: &SampledField, beta: f64) -> Result<f64> {
    besov_norm_thermic(f, beta, &LogGrid::heat_times(f.domain()))
}

fn base_record(family: &FunctionFamily) -> ParameterRecord {
    ParameterRecord {
        n: family.domain.dimension,
        points_per_axis: family.domain.points_per_axis,
        ..Default::default()
    }
}

fn exponent_diagnostics(p: &VariableExponent) -> Vec<(String, f64)> {
    if p.is_constant() {
        return Vec::new();
    }
    let lh = log_holder_constants(p);
    let mut out = vec![("log_holder_local".to_string(), lh.local)];
    if let Some(c) = lh.infinity {
        out.push(("log_holder_infinity".to_string(), c));
    }
    out
}

fn drive(
    family: &FunctionFamily,
    refinement: bool,
    theorem: TheoremKind,
    params: ParameterRecord,
    mut diagnostics: Vec<(String, f64)>,
    measure: impl Fn(&DomainSpec, &[SampledField]) -> Result<Measurement>,
) -> Result<InequalityReport> {
    let coarse = measure(&family.domain, &family.sample_all()?)?;
    let fine = if refinement {
        let refined = family.refined();
        Some(measure(&refined.domain, &refined.sample_all()?)?)
    } else {
        None
    };
    let stable = |c: &Fit, f: Option<&Fit>| -> (Option<f64>, bool) {
        match f {
            Some(f) => {
                let r = refinement_ratio(c, f);
                (r, c.is_finite() && f.is_finite() && ratio_stable(r))
            }
            None => (None, c.is_finite()),
        }
    };
    let (ratio, main_ok) = stable(&coarse.main, fine.as_ref().map(|m| &m.main));
    let links: Vec<LinkReport> = coarse
        .links
        .iter()
        .enumerate()
        .map(|(i, (name, fit))| {
            let (r, pass) = stable(fit, fine.as_ref().map(|m| &m.links[i].1));
            LinkReport {
                name: name.clone(),
                fit: *fit,
                refinement_ratio: r,
                pass,
            }
        })
        .collect();
    let mut checks = coarse.checks;
    if let Some(f) = fine {
        checks.extend(f.checks.into_iter().map(|c| CheckReport {
            name: format!("{}_refined", c.name),
            ..c
        }));
    }
    diagnostics.push(("boundary_leak".to_string(), family.localized_boundary_leak()?));
    let pass = main_ok && links.iter().all(|l| l.pass) && checks.iter().all(|c| c.pass);
    Ok(InequalityReport {
        case_id: theorem.tag().to_string(),
        theorem,
        params,
        members: family.len(),
        inconclusive: coarse.main.c_fit.is_none(),
        fit: coarse.main,
        refinement_ratio: ratio,
        links,
        checks,
        diagnostics,
        pass,
        error: None,
    })
}

/// Parameter gates, shared with case validation so that configurations are
/// rejected before any numerical work.
pub(crate) mod gates {
    use super::*;

    pub fn modified_hedberg(n: usize, s: f64, s1: f64, beta: f64) -> Result<f64> {
        smoothness_in_range(n, s)?;
        hedberg_theta(s, s1, beta)
    }

    pub fn variable_sobolev(n: usize, p: &ExponentDescriptor, s: f64, s1: f64, beta: f64) -> Result<f64> {
        p.validate()?;
        modified_hedberg(n, s, s1, beta)
    }

    /// Returns `theta = s frak_p / n`.
    pub fn mixed(n: usize, p: &ExponentDescriptor, frak_p: f64, s: f64) -> Result<f64> {
        p.validate()?;
        sigma_exponent(n, s, frak_p, p.bounds().1)?;
        sobolev_conjugate(n, s, p.bounds().1)?;
        mixed_theta(n, s, frak_p)
    }

    pub fn orlicz_sobolev(n: usize, young: &YoungFunction, s: f64, s1: f64, beta: f64) -> Result<f64> {
        young.validate()?;
        let theta = modified_hedberg(n, s, s1, beta)?;
        if nabla2_constant(young, &nabla2_scan_grid())?.is_none() {
            return Err(Error::gate(GATE_NABLA2, format!("{young} has no nabla-2 constant up to 2^10")));
        }
        Ok(theta)
    }

    pub fn constant_exponent(p: f64) -> Result<()> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(Error::param("p", format!("must lie in (1, inf), got {p}")));
        }
        Ok(())
    }

    pub fn hls(n: usize, s: f64, p: f64) -> Result<f64> {
        sobolev_conjugate(n, s, p)
    }

    pub fn hls_variable(n: usize, s: f64, p: &ExponentDescriptor) -> Result<()> {
        p.validate()?;
        sobolev_conjugate(n, s, p.bounds().1).map(|_| ())
    }

    /// Returns `(r, q)`.
    pub fn young_oneil(n: usize, s: f64, p: f64) -> Result<(f64, f64)> {
        constant_exponent(p)?;
        let r = lorentz_exponent(n, s)?;
        Ok((r, young_oneil_exponent(r, p)?))
    }

    pub fn besov_equivalence(s: f64, beta: f64) -> Result<()> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::param("s", format!("must be positive, got {s}")));
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::param("beta", format!("must be positive, got {beta}")));
        }
        Ok(())
    }
}

/// `|(-Delta)^{s1/2} f|^{1/(1-theta)} <= C M((-Delta)^{s/2} f) ||f||_{B^{-beta}}^{theta/(1-theta)}`
/// pointwise, with `theta = (s - s1)/(beta + s)` and the thermic Besov norm.
///
/// Links `riemann_liouville_k{k}` and `riemann_liouville_k{k+1}` repeat the
/// fit with the left side computed by the Riemann-Liouville quadrature.
pub fn verify_modified_hedberg(
    family: &FunctionFamily,
    s: f64,
    s1: f64,
    beta: f64,
    refinement: bool,
) -> Result<InequalityReport> {
    let n = family.domain.dimension;
    let theta = gates::modified_hedberg(n, s, s1, beta)?;
    let e = 1.0 / (1.0 - theta);
    let k = default_rl_order(s);
    let params = ParameterRecord {
        s: Some(s),
        s1: Some(s1),
        beta: Some(beta),
        theta: Some(theta),
        target_desc: Some(format!("power {e}")),
        ..base_record(family)
    };
    drive(family, refinement, TheoremKind::ModifiedHedberg, params, Vec::new(), |dom, fields| {
        let balls = BallFamily::dyadic(dom);
        let rl = [k, k + 1]
            .iter()
            .map(|&k| RiemannLiouville::new(dom, s1, s, k, LogGrid::riemann_liouville(dom, RL_NODES)))
            .collect::<Result<Vec<_>>>()?;
        let rows = per_member(fields, |f| {
            let b = thermic(f, beta)?;
            let m = hl_maximal(&fractional_laplacian(f, s)?, &balls);
            let rhs: Vec<f64> = m.abs().iter().map(|v| v * b.powf(theta * e)).collect();
            let lhs = powered(&fractional_laplacian(f, s1)?, e);
            let via_rl: Vec<Vec<f64>> = rl.iter().map(|op| powered(&op.apply(f), e)).collect();
            Ok((lhs, via_rl, rhs))
        })?;
        let mut main = Fit::new();
        let mut links = [Fit::new(), Fit::new()];
        for (lhs, via_rl, rhs) in &rows {
            main.pointwise(lhs, rhs);
            for (fit, l) in links.iter_mut().zip(via_rl) {
                fit.pointwise(l, rhs);
            }
        }
        Ok(Measurement {
            main,
            links: vec![
                (format!("riemann_liouville_k{k}"), links[0]),
                (format!("riemann_liouville_k{}", k + 1), links[1]),
            ],
            checks: Vec::new(),
        })
    })
}

/// `||(-Delta)^{s1/2} f||_{q(.)} <= C ||(-Delta)^{s/2} f||_{p(.)}^{1-theta} ||f||_{B^{-beta}}^theta`
/// with `q = p / (1 - theta)`.
///
/// The `littlewood_paley` link replaces both Sobolev norms by square-function
/// norms and the Besov norm by its dyadic version. Check `route_agreement`
/// confirms the ratio of the two fitted constants lies within the range of
/// per-member conversion factors between the routes.
pub fn verify_variable_sobolev(
    family: &FunctionFamily,
    p: &ExponentDescriptor,
    s: f64,
    s1: f64,
    beta: f64,
    refinement: bool,
) -> Result<InequalityReport> {
    let n = family.domain.dimension;
    let theta = gates::variable_sobolev(n, p, s, s1, beta)?;
    let params = ParameterRecord {
        s: Some(s),
        s1: Some(s1),
        beta: Some(beta),
        theta: Some(theta),
        p_desc: Some(p.to_string()),
        target_desc: Some(p.scaled(1.0 / (1.0 - theta)).to_string()),
        ..base_record(family)
    };
    let diagnostics = exponent_diagnostics(&p.sample(&family.domain)?);
    drive(family, refinement, TheoremKind::VariableSobolev, params, diagnostics, |dom, fields| {
        let pe = p.sample(dom)?;
        let qe = pe.scaled(1.0 / (1.0 - theta))?;
        let basis = LittlewoodPaleyBasis::for_domain(dom);
        let rows = per_member(fields, |f| {
            let lhs = luxemburg_norm(&fractional_laplacian(f, s1)?, &qe)?;
            let rhs = luxemburg_norm(&fractional_laplacian(f, s)?, &pe)?.powf(1.0 - theta)
                * thermic(f, beta)?.powf(theta);
            let lhs_lp = lp_square_function_norm(f, s1, &qe, &basis)?;
            let rhs_lp = lp_square_function_norm(f, s, &pe, &basis)?.powf(1.0 - theta)
                * besov_norm_lp(f, beta, &basis)?.powf(theta);
            Ok((f.sup_norm(), lhs, rhs, lhs_lp, rhs_lp))
        })?;
        let mut main = Fit::new();
        let mut lp = Fit::new();
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for &(scale, lhs, rhs, lhs_lp, rhs_lp) in &rows {
            main.norm(lhs, rhs, scale);
            lp.norm(lhs_lp, rhs_lp, scale);
            if [lhs, rhs, lhs_lp, rhs_lp].iter().all(|v| *v > 0.0) {
                let factor = (lhs / lhs_lp) * (rhs_lp / rhs);
                lo = lo.min(factor);
                hi = hi.max(factor);
            }
        }
        let value = match (main.c_fit, lp.c_fit) {
            (Some(a), Some(b)) if b > 0.0 => a / b,
            _ => f64::NAN,
        };
        let check = CheckReport {
            name: "route_agreement".into(),
            value,
            lower: lo,
            upper: hi,
            pass: value >= lo * (1.0 - ROUTE_SLACK) && value <= hi * (1.0 + ROUTE_SLACK),
        };
        Ok(Measurement {
            main,
            links: vec![("littlewood_paley".into(), lp)],
            checks: vec![check],
        })
    })
}

fn mixed_record(family: &FunctionFamily, p: &ExponentDescriptor, frak_p: f64, s: f64, theta: f64) -> ParameterRecord {
    let n = family.domain.dimension as f64;
    ParameterRecord {
        s: Some(s),
        theta: Some(theta),
        p_desc: Some(p.to_string()),
        frak_p: Some(frak_p),
        target_desc: Some(p.scaled(n / (n - s * frak_p)).to_string()),
        ..base_record(family)
    }
}

/// `||f||_{sigma(.)} <= C max(||(-Delta)^{s/2} f||_{p(.)}, ||(-Delta)^{s/2} f||_{frak_p})`
/// with `sigma = n p / (n - s frak_p)`.
///
/// Links: `sobolev_embedding` (`||f||_r <= C ||(-Delta)^{s/2} f||_{frak_p}`,
/// `r = n frak_p / (n - s frak_p)`) and `besov_inclusion`
/// (`||f||_{B^{-n/r}} <= C ||f||_r`).
pub fn verify_mixed_sobolev(
    family: &FunctionFamily,
    p: &ExponentDescriptor,
    frak_p: f64,
    s: f64,
    refinement: bool,
) -> Result<InequalityReport> {
    let n = family.domain.dimension;
    let theta = gates::mixed(n, p, frak_p, s)?;
    let r = sobolev_conjugate(n, s, frak_p)?;
    let scale = n as f64 / (n as f64 - s * frak_p);
    let params = mixed_record(family, p, frak_p, s, theta);
    let diagnostics = exponent_diagnostics(&p.sample(&family.domain)?);
    drive(family, refinement, TheoremKind::MixedSobolev, params, diagnostics, |dom, fields| {
        let pe = p.sample(dom)?;
        let sigma = pe.scaled(scale)?;
        let rows = per_member(fields, |f| {
            let d = fractional_laplacian(f, s)?;
            let d_frak = lp_norm(&d, frak_p)?;
            let f_r = lp_norm(f, r)?;
            Ok((
                f.sup_norm(),
                luxemburg_norm(f, &sigma)?,
                luxemburg_norm(&d, &pe)?.max(d_frak),
                f_r,
                d_frak,
                thermic(f, n as f64 / r)?,
            ))
        })?;
        let (mut main, mut emb, mut inc) = (Fit::new(), Fit::new(), Fit::new());
        for &(sc, lhs, rhs, f_r, d_frak, b) in &rows {
            main.norm(lhs, rhs, sc);
            emb.norm(f_r, d_frak, sc);
            inc.norm(b, f_r, sc);
        }
        Ok(Measurement {
            main,
            links: vec![("sobolev_embedding".into(), emb), ("besov_inclusion".into(), inc)],
            checks: Vec::new(),
        })
    })
}

/// `||I_s f||_{sigma(.)} <= C max(||f||_{p(.)}, ||f||_{frak_p})`.
///
/// Links: `hls_embedding` (`||I_s f||_r <= C ||f||_{frak_p}`) and
/// `besov_inclusion` (`||I_s f||_{B^{-n/r}} <= C ||I_s f||_r`).
pub fn verify_mixed_hls(
    family: &FunctionFamily,
    p: &ExponentDescriptor,
    frak_p: f64,
    s: f64,
    refinement: bool,
) -> Result<InequalityReport> {
    let n = family.domain.dimension;
    let theta = gates::mixed(n, p, frak_p, s)?;
    let r = sobolev_conjugate(n, s, frak_p)?;
    let scale = n as f64 / (n as f64 - s * frak_p);
    let params = mixed_record(family, p, frak_p, s, theta);
    let diagnostics = exponent_diagnostics(&p.sample(&family.domain)?);
    drive(family, refinement, TheoremKind::MixedHls, params, diagnostics, |dom, fields| {
        let pe = p.sample(dom)?;
        let sigma = pe.scaled(scale)?;
        let rows = per_member(fields, |f| {
            let g = riesz_potential(f, s)?;
            let f_frak = lp_norm(f, frak_p)?;
            let g_r = lp_norm(&g, r)?;
            Ok((
                f.sup_norm(),
                luxemburg_norm(&g, &sigma)?,
                luxemburg_norm(f, &pe)?.max(f_frak),
                g_r,
                f_frak,
                thermic(&g, n as f64 / r)?,
            ))
        })?;
        let (mut main, mut emb, mut inc) = (Fit::new(), Fit::new(), Fit::new());
        for &(sc, lhs, rhs, g_r, f_frak, b) in &rows {
            main.norm(lhs, rhs, sc);
            emb.norm(g_r, f_frak, sc);
            inc.norm(b, g_r, sc);
        }
        Ok(Measurement {
            main,
            links: vec![("hls_embedding".into(), emb), ("besov_inclusion".into(), inc)],
            checks: Vec::new(),
        })
    })
}

/// `||(-Delta)^{s1/2} f||_{A, 1/(1-theta)} <= C ||(-Delta)^{s/2} f||_A^{1-theta} ||f||_{B^{-beta}}^theta`,
/// where `||.||_{A, sigma}` is the Luxemburg norm of `A(t^sigma)`.
///
/// With `A(t) = t^p` the left side is the `L^{p/(1-theta)}` norm, matching
/// the variable-exponent inequality at constant `p`.
pub fn verify_orlicz_sobolev(
    family: &FunctionFamily,
    young: &YoungFunction,
    s: f64,
    s1: f64,
    beta: f64,
    refinement: bool,
) -> Result<InequalityReport> {
    let n = family.domain.dimension;
    let theta = gates::orlicz_sobolev(n, young, s, s1, beta)?;
    let sigma = 1.0 / (1.0 - theta);
    let params = ParameterRecord {
        s: Some(s),
        s1: Some(s1),
        beta: Some(beta),
        theta: Some(theta),
        p_desc: Some(format!("A={young}")),
        target_desc: Some(format!("A(t^{sigma})")),
        ..base_record(family)
    };
    let nabla2 = nabla2_constant(young, &nabla2_scan_grid())?.unwrap_or(f64::NAN);
    let diagnostics = vec![("nabla2_constant".to_string(), nabla2)];
    drive(family, refinement, TheoremKind::OrliczSobolev, params, diagnostics, |_, fields| {
        let rows = per_member(fields, |f| {
            let lhs = rescaled_orlicz_norm(&fractional_laplacian(f, s1)?, young, sigma)?;
            let rhs = orlicz_luxemburg_norm(&fractional_laplacian(f, s)?, young)?.powf(1.0 - theta)
                * thermic(f, beta)?.powf(theta);
            Ok((f.sup_norm(), lhs, rhs))
        })?;
        let mut main = Fit::new();
        for &(sc, lhs, rhs) in &rows {
            main.norm(lhs, rhs, sc);
        }
        Ok(Measurement {
            main,
            ..Default::default()
        })
    })
}

/// `|I_s f| <= C (Mf)^{1 - sp/n} ||f||_p^{sp/n}` pointwise.
pub fn verify_classical_hedberg(family: &FunctionFamily, s: f64, p: f64, refinement: bool) -> Result<InequalityReport> {
    let n = family.domain.dimension;
    gates::hls(n, s, p)?;
    let a = s * p / n as f64;
    let params = ParameterRecord {
        s: Some(s),
        theta: Some(a),
        p_desc: Some(format!("const({p})")),
        ..base_record(family)
    };
    drive(family, refinement, TheoremKind::ClassicalHedberg, params, Vec::new(), |dom, fields| {
        let balls = BallFamily::dyadic(dom);
        let rows = per_member(fields, |f| {
            let norm = lp_norm(f, p)?;
            let m = hl_maximal(f, &balls);
            let rhs: Vec<f64> = m.abs().iter().map(|v| v.powf(1.0 - a) * norm.powf(a)).collect();
            Ok((riesz_potential(f, s)?.abs(), rhs))
        })?;
        let mut main = Fit::new();
        for (lhs, rhs) in &rows {
            main.pointwise(lhs, rhs);
        }
        Ok(Measurement {
            main,
            ..Default::default()
        })
    })
}

/// `||I_s f||_q <= C ||f||_p` with `1/q = 1/p - s/n`.
pub fn verify_hls(family: &FunctionFamily, s: f64, p: f64, refinement: bool) -> Result<InequalityReport> {
    let n = family.domain.dimension;
    let q = gates::hls(n, s, p)?;
    let params = ParameterRecord {
        s: Some(s),
        p_desc: Some(format!("const({p})")),
        target_desc: Some(format!("const({q})")),
        ..base_record(family)
    };
    drive(family, refinement, TheoremKind::Hls, params, Vec::new(), |_, fields| {
        let rows = per_member(fields, |f| Ok((f.sup_norm(), lp_norm(&riesz_potential(f, s)?, q)?, lp_norm(f, p)?)))?;
        let mut main = Fit::new();
        for &(sc, lhs, rhs) in &rows {
            main.norm(lhs, rhs, sc);
        }
        Ok(Measurement {
            main,
            ..Default::default()
        })
    })
}

/// `||I_s f||_{q(.)} <= C ||f||_{p(.)}` with `1/q(x) = 1/p(x) - s/n`.
pub fn verify_hls_variable(
    family: &FunctionFamily,
    s: f64,
    p: &ExponentDescriptor,
    refinement: bool,
) -> Result<InequalityReport> {
    let n = family.domain.dimension;
    gates::hls_variable(n, s, p)?;
    let shift = s / n as f64;
    let params = ParameterRecord {
        s: Some(s),
        p_desc: Some(p.to_string()),
        target_desc: Some(format!("1/q = 1/p - {shift}")),
        ..base_record(family)
    };
    let diagnostics = exponent_diagnostics(&p.sample(&family.domain)?);
    drive(family, refinement, TheoremKind::HlsVariable, params, diagnostics, |dom, fields| {
        let pe = p.sample(dom)?;
        let qe = pe.from_reciprocal(|r| r - shift)?;
        let rows = per_member(fields, |f| {
            Ok((f.sup_norm(), luxemburg_norm(&riesz_potential(f, s)?, &qe)?, luxemburg_norm(f, &pe)?))
        })?;
        let mut main = Fit::new();
        for &(sc, lhs, rhs) in &rows {
            main.norm(lhs, rhs, sc);
        }
        Ok(Measurement {
            main,
            ..Default::default()
        })
    })
}

/// `M_phi f <= C Mf` pointwise, over the default heat-time grid.
pub fn verify_phi_maximal(family: &FunctionFamily, profile: SmoothProfile, refinement: bool) -> Result<InequalityReport> {
    let params = ParameterRecord {
        p_desc: Some(format!("phi={}", profile.name())),
        ..base_record(family)
    };
    drive(family, refinement, TheoremKind::PhiMaximal, params, Vec::new(), |dom, fields| {
        let balls = BallFamily::dyadic(dom);
        let grid = LogGrid::heat_times(dom);
        let rows = per_member(fields, |f| Ok((phi_maximal(f, profile, &grid)?.abs(), hl_maximal(f, &balls).abs())))?;
        let mut main = Fit::new();
        for (lhs, rhs) in &rows {
            main.pointwise(lhs, rhs);
        }
        Ok(Measurement {
            main,
            ..Default::default()
        })
    })
}

/// `||Mf||_p <= C ||f||_p`.
pub fn verify_maximal_bound(family: &FunctionFamily, p: f64, refinement: bool) -> Result<InequalityReport> {
    gates::constant_exponent(p)?;
    let params = ParameterRecord {
        p_desc: Some(format!("const({p})")),
        ..base_record(family)
    };
    drive(family, refinement, TheoremKind::MaximalBound, params, Vec::new(), |dom, fields| {
        let balls = BallFamily::dyadic(dom);
        let rows = per_member(fields, |f| Ok((f.sup_norm(), lp_norm(&hl_maximal(f, &balls), p)?, lp_norm(f, p)?)))?;
        let mut main = Fit::new();
        for &(sc, lhs, rhs) in &rows {
            main.norm(lhs, rhs, sc);
        }
        Ok(Measurement {
            main,
            ..Default::default()
        })
    })
}

/// The Riesz kernel `c |x|^{s-n}` sampled at torus distances, zero at the
/// origin; its convolution with `f` is `I_s f`.
pub fn sampled_riesz_kernel(domain: &DomainSpec, s: f64) -> Result<SampledField> {
    let n = domain.dimension;
    let values = (0..domain.len())
        .map(|i| {
            let d = domain.torus_displacement(domain.point(i), [0.0; 2]);
            if d[..n].iter().all(|v| *v == 0.0) {
                Ok(0.0)
            } else {
                riesz_kernel_eval(&d[..n], n, s)
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    SampledField::from_real(*domain, &values)
}

/// `||K_s * f||_q <= C ||K_s||_{L^{r,inf}} ||f||_p` with `K_s = |x|^{s-n}`,
/// `r = n/(n-s)` and `1 + 1/q = 1/r + 1/p`. The convolution is evaluated
/// spectrally as the Riesz potential, so constant factors land in `C`.
pub fn verify_young_oneil(family: &FunctionFamily, s: f64, p: f64, refinement: bool) -> Result<InequalityReport> {
    let n = family.domain.dimension;
    let (r, q) = gates::young_oneil(n, s, p)?;
    let params = ParameterRecord {
        s: Some(s),
        p_desc: Some(format!("const({p})")),
        target_desc: Some(format!("const({q}); kernel in L^({r},inf)")),
        ..base_record(family)
    };
    let kernel = weak_lorentz_norm(&sampled_riesz_kernel(&family.domain, s)?, r)?;
    let diagnostics = vec![("kernel_weak_lorentz".to_string(), kernel)];
    drive(family, refinement, TheoremKind::YoungOneil, params, diagnostics, |dom, fields| {
        let k = weak_lorentz_norm(&sampled_riesz_kernel(dom, s)?, r)?;
        let rows = per_member(fields, |f| Ok((f.sup_norm(), lp_norm(&riesz_potential(f, s)?, q)?, k * lp_norm(f, p)?)))?;
        let mut main = Fit::new();
        for &(sc, lhs, rhs) in &rows {
            main.norm(lhs, rhs, sc);
        }
        Ok(Measurement {
            main,
            ..Default::default()
        })
    })
}

/// `||(-Delta)^{s/2} f||_{B^{-(beta+s)}} <= C ||f||_{B^{-beta}}`, thermic norms.
///
/// Links: `lower` (the reverse inequality), `thermic_over_lp` and
/// `lp_over_thermic` (thermic against dyadic Besov norm, both directions).
pub fn verify_besov_equivalence(family: &FunctionFamily, s: f64, beta: f64, refinement: bool) -> Result<InequalityReport> {
    gates::besov_equivalence(s, beta)?;
    let params = ParameterRecord {
        s: Some(s),
        beta: Some(beta),
        ..base_record(family)
    };
    drive(family, refinement, TheoremKind::BesovEquivalence, params, Vec::new(), |dom, fields| {
        let basis = LittlewoodPaleyBasis::for_domain(dom);
        let rows = per_member(fields, |f| {
            Ok((
                f.sup_norm(),
                thermic(&fractional_laplacian(f, s)?, beta + s)?,
                thermic(f, beta)?,
                besov_norm_lp(f, beta, &basis)?,
            ))
        })?;
        let (mut up, mut down, mut t_lp, mut lp_t) = (Fit::new(), Fit::new(), Fit::new(), Fit::new());
        for &(sc, lifted, base, lp) in &rows {
            up.norm(lifted, base, sc);
            down.norm(base, lifted, sc);
            t_lp.norm(base, lp, sc);
            lp_t.norm(lp, base, sc);
        }
        Ok(Measurement {
            main: up,
            links: vec![
                ("lower".into(), down),
                ("thermic_over_lp".into(), t_lp),
                ("lp_over_thermic".into(), lp_t),
            ],
            checks: Vec::new(),
        })
    })
}
