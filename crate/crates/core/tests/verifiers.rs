use hedberg::exponent::ExponentDescriptor;
use hedberg::generators::GeneratorSpec;
use hedberg::grid::DomainSpec;
use hedberg::harness::*;
use hedberg::norms::YoungFunction;
use hedberg::relations::{sobolev_conjugate, GATE_NABLA2};
use hedberg::selftest::{standard_domain_1d, DEFAULT_SEED};
use std::f64::consts::{E, PI};

fn family(domain: DomainSpec, members: Vec<GeneratorSpec>) -> FunctionFamily {
    FunctionFamily::explicit(domain, members, 0).unwrap()
}

fn gaussian(sigma: f64) -> GeneratorSpec {
    GeneratorSpec::Gaussian { sigma, center: vec![] }
}

#[test]
fn modified_hedberg_single_mode_closed_form() {
    // f = e^{i 2 x_0} on the 2 pi torus: |D^{s1} f| = 2^{s1}, M(D^s f) = 2^s,
    // and the thermic norm is sup_t t^{beta/2} e^{-4t} = (beta/8)^{beta/2} e^{-beta/2}
    let (s, s1, beta) = (1.0, 0.5, 1.0);
    let dom = DomainSpec::new(2, 2.0 * PI, 64).unwrap();
    let fam = family(dom, vec![GeneratorSpec::FourierMode { k: vec![2, 0] }]);
    let report = verify_modified_hedberg(&fam, s, s1, beta, false).unwrap();
    let theta = (s - s1) / (beta + s);
    let e = 1.0 / (1.0 - theta);
    let besov = (beta / 8.0f64).powf(beta / 2.0) * (-beta / 2.0f64).exp();
    let exact = 2f64.powf(s1 * e) / (2f64.powf(s) * besov.powf(theta * e));
    let c = report.c_fit().unwrap();
    // the t-grid can only under-resolve the Besov supremum, which raises C
    assert!(c >= exact * (1.0 - 1e-12) && c <= exact * (1.0 + 1e-3), "{c} vs {exact}");
    assert_eq!(report.params.theta, Some(theta));
    for link in &report.links {
        let rel = (link.fit.c_fit.unwrap() - c).abs() / c;
        assert!(rel < 1e-3, "{}: {rel}", link.name);
    }
}

#[test]
fn zero_member_is_skipped() {
    let dom = DomainSpec::new(2, 16.0, 64).unwrap();
    // the constant is projected to zero, so only the Gaussian counts
    let fam = family(dom, vec![GeneratorSpec::Constant { value: 2.0 }, gaussian(0.6)]);
    let report = verify_variable_sobolev(&fam, &ExponentDescriptor::Constant { value: 2.0 }, 1.0, 0.0, 1.0, false).unwrap();
    assert_eq!(report.fit.skipped, 1);
    assert_eq!(report.fit.observed, 1);
    assert!(report.pass);
    let empty = family(dom, vec![GeneratorSpec::Constant { value: 2.0 }]);
    let report = verify_hls(&empty, 0.5, 2.0, false).unwrap();
    assert!(report.inconclusive);
    assert!(!report.pass);
}

#[test]
fn single_gaussian_routes_agree() {
    let dom = DomainSpec::new(2, 16.0, 64).unwrap();
    let fam = family(dom, vec![gaussian(0.6)]);
    let report = verify_variable_sobolev(&fam, &ExponentDescriptor::Constant { value: 2.0 }, 1.0, 0.0, 1.0, true).unwrap();
    let check = report.checks.iter().find(|c| c.name == "route_agreement").unwrap();
    assert!(check.pass, "{check:?}");
    assert!(report.pass);
}

#[test]
fn hls_single_mode_and_dilation() {
    let dom = standard_domain_1d();
    let (s, p) = (0.25, 2.0);
    let q = sobolev_conjugate(1, s, p).unwrap();
    assert_eq!(q, 4.0);
    let mode = verify_hls(&family(dom, vec![GeneratorSpec::FourierMode { k: vec![1] }]), s, p, false).unwrap();
    assert!(mode.c_fit().unwrap().is_finite());
    // f(2x) for a heat kernel of width sigma is a multiple of the one of width
    // sigma/2; both sides are homogeneous of degree one in f. The torus breaks
    // dilation invariance by an amount that shrinks as L grows.
    let wide_dom = DomainSpec::new(1, 128.0, 2048).unwrap();
    let wide = verify_hls(&family(wide_dom, vec![gaussian(1.0)]), s, p, false).unwrap();
    let narrow = verify_hls(&family(wide_dom, vec![gaussian(0.5)]), s, p, false).unwrap();
    let drift = (wide.c_fit().unwrap() / narrow.c_fit().unwrap() - 1.0).abs();
    assert!(drift < 0.05, "{drift}");
}

#[test]
fn mixed_with_constant_exponent_targets_sobolev_conjugate() {
    let dom = DomainSpec::new(2, 16.0, 64).unwrap();
    let fam = FunctionFamily::standard(dom, DEFAULT_SEED, 8).unwrap();
    let (s, frak_p) = (0.5, 2.0);
    let report = verify_mixed_sobolev(&fam, &ExponentDescriptor::Constant { value: frak_p }, frak_p, s, false).unwrap();
    let q = sobolev_conjugate(2, s, frak_p).unwrap();
    assert_eq!(q, 4.0);
    assert!(report.params.target_desc.as_deref().unwrap().contains("const(4)"), "{:?}", report.params.target_desc);
    assert!(report.c_fit().unwrap().is_finite());
    assert!(report.link("besov_inclusion").unwrap().fit.c_fit.unwrap().is_finite());
}

#[test]
fn linear_young_function_rejected() {
    let case = CaseSpec::new("linear", TheoremKind::OrliczSobolev)
        .with_s(1.0)
        .with_beta(1.0)
        .with_young(YoungFunction::power(1.0).unwrap());
    let err = case.validate(2).unwrap_err();
    assert_eq!(err.gate_name(), Some(GATE_NABLA2));
}

#[test]
fn maximal_bound_p2_stable_under_refinement() {
    let fam = FunctionFamily::standard(standard_domain_1d(), DEFAULT_SEED, 20).unwrap();
    let report = verify_maximal_bound(&fam, 2.0, true).unwrap();
    let ratio = report.refinement_ratio.unwrap();
    assert!((ratio - 1.0).abs() < 0.1, "{ratio}");
}

#[test]
fn phi_maximal_domination_stable_on_random_fields() {
    let dom = standard_domain_1d();
    let members = (0..20)
        .map(|seed| GeneratorSpec::RandomBandLimited { seed, max_band: 10 })
        .collect();
    let report = verify_phi_maximal(&family(dom, members), hedberg::maximal::SmoothProfile::Heat, true).unwrap();
    let ratio = report.refinement_ratio.unwrap();
    assert!((ratio - 1.0).abs() < 0.05, "{ratio}");
}

#[test]
fn young_oneil_exponents() {
    let dom = DomainSpec::new(2, 16.0, 64).unwrap();
    let fam = FunctionFamily::standard(dom, DEFAULT_SEED, 4).unwrap();
    // n = 2, s = 1: r = 2; p = 4/3 gives 1 + 1/q = 1/2 + 3/4, q = 4
    let report = verify_young_oneil(&fam, 1.0, 4.0 / 3.0, false).unwrap();
    let target = report.params.target_desc.clone().unwrap();
    assert!(target.starts_with("const(4"), "{target}");
    assert!(target.contains("L^(2,inf)"), "{target}");
    assert!(report.c_fit().unwrap().is_finite());
}

#[test]
fn riesz_kernel_weak_norm_stable_under_refinement() {
    // s = 1/2 in one dimension: K_s = |x|^{-1/2} lies in L^{2,inf}
    let coarse = DomainSpec::new(1, 32.0, 256).unwrap();
    let a = hedberg::maximal::weak_lorentz_norm(&sampled_riesz_kernel(&coarse, 0.5).unwrap(), 2.0).unwrap();
    let b = hedberg::maximal::weak_lorentz_norm(&sampled_riesz_kernel(&coarse.refined(), 0.5).unwrap(), 2.0).unwrap();
    assert!(a.is_finite() && b.is_finite());
    assert!((b / a - 1.0).abs() < 0.1, "{a} vs {b}");
    assert_eq!(sampled_riesz_kernel(&coarse, 0.5).unwrap().values()[128].re, 0.0);
}

#[test]
fn log_holder_matches_pair_scan() {
    let dom = DomainSpec::new(1, 4.0, 64).unwrap();
    let p = ExponentDescriptor::Sinusoid {
        mean: 3.0,
        amplitude: 1.0,
        wavenumber: 1,
    }
    .sample(&dom)
    .unwrap();
    let h = dom.spacing();
    let x = |i: usize| -2.0 + i as f64 * h;
    let mut best = 0.0f64;
    for i in 0..64 {
        for j in 0..64 {
            if i != j {
                let raw = (x(i) - x(j)).abs();
                let dist = raw.min(4.0 - raw);
                let v = (1.0 / p.values()[i] - 1.0 / p.values()[j]).abs() * (E + 1.0 / dist).ln();
                best = best.max(v);
            }
        }
    }
    let lh = hedberg::exponent::log_holder_constants(&p);
    assert!((lh.local - best).abs() <= 1e-14 * best, "{} vs {best}", lh.local);
}

#[test]
fn classical_hedberg_and_besov_equivalence_run() {
    let dom = DomainSpec::new(2, 16.0, 64).unwrap();
    let fam = FunctionFamily::standard(dom, DEFAULT_SEED, 8).unwrap();
    let hedberg = verify_classical_hedberg(&fam, 0.5, 2.0, false).unwrap();
    assert!(hedberg.pass);
    let besov = verify_besov_equivalence(&fam, 0.5, 1.0, false).unwrap();
    assert!(besov.pass);
    let reports = [hedberg, besov];
    let csv = to_csv(&reports);
    assert_eq!(csv.lines().next(), Some(CSV_HEADER));
    assert_eq!(csv, to_csv(&reports));
}
