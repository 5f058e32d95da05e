use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use super::fit::Fit;

/// The inequality a case checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremKind {
    /// Pointwise Hedberg estimate with a negative-smoothness Besov factor.
    ModifiedHedberg,
    /// Gagliardo-Nirenberg-type Sobolev inequality in `L^{p(.)}`.
    VariableSobolev,
    /// Embedding of the mixed Sobolev space into `L^{sigma(.)}`.
    MixedSobolev,
    /// Riesz potential from the mixed Lebesgue space into `L^{sigma(.)}`.
    MixedHls,
    /// Sobolev inequality in Orlicz spaces.
    OrliczSobolev,
    /// `|I_s f| <= C (Mf)^{1 - sp/n} ||f||_p^{sp/n}`.
    ClassicalHedberg,
    /// Hardy-Littlewood-Sobolev with constant exponents.
    Hls,
    /// Hardy-Littlewood-Sobolev with a variable exponent.
    HlsVariable,
    /// Smooth maximal function against the ball maximal function.
    PhiMaximal,
    /// Boundedness of the maximal function on `L^p`.
    MaximalBound,
    /// Young's inequality for weak-type kernels.
    YoungOneil,
    /// Lifting by `(-Delta)^{s/2}` shifts Besov smoothness by `s`.
    BesovEquivalence,
}

impl TheoremKind {
    pub const ALL: [TheoremKind; 12] = [
        TheoremKind::ModifiedHedberg,
        TheoremKind::VariableSobolev,
        TheoremKind::MixedSobolev,
        TheoremKind::MixedHls,
        TheoremKind::OrliczSobolev,
        TheoremKind::ClassicalHedberg,
        TheoremKind::Hls,
        TheoremKind::HlsVariable,
        TheoremKind::PhiMaximal,
        TheoremKind::MaximalBound,
        TheoremKind::YoungOneil,
        TheoremKind::BesovEquivalence,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            TheoremKind::ModifiedHedberg => "modified_hedberg",
            TheoremKind::VariableSobolev => "variable_sobolev",
            TheoremKind::MixedSobolev => "mixed_sobolev",
            TheoremKind::MixedHls => "mixed_hls",
            TheoremKind::OrliczSobolev => "orlicz_sobolev",
            TheoremKind::ClassicalHedberg => "classical_hedberg",
            TheoremKind::Hls => "hls",
            TheoremKind::HlsVariable => "hls_variable",
            TheoremKind::PhiMaximal => "phi_maximal",
            TheoremKind::MaximalBound => "maximal_bound",
            TheoremKind::YoungOneil => "young_oneil",
            TheoremKind::BesovEquivalence => "besov_equivalence",
        }
    }
}

/// Parameters a report was produced with. Absent entries do not apply.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct ParameterRecord {
    pub n: usize,
    pub points_per_axis: usize,
    pub s: Option<f64>,
    pub s1: Option<f64>,
    pub beta: Option<f64>,
    pub theta: Option<f64>,
    /// Exponent or Young function of the right-hand side.
    pub p_desc: Option<String>,
    pub frak_p: Option<f64>,
    /// Exponent or norm of the left-hand side (`q`, `sigma`, rescaling).
    pub target_desc: Option<String>,
}

/// A named auxiliary inequality measured alongside the main one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinkReport {
    pub name: String,
    #[serde(flatten)]
    pub fit: Fit,
    pub refinement_ratio: Option<f64>,
    pub pass: bool,
}

/// A yes/no consistency condition evaluated on the measured data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub case_id: String,
    pub theorem: TheoremKind,
    #[serde(flatten)]
    pub params: ParameterRecord,
    pub members: usize,
    #[serde(flatten)]
    pub fit: Fit,
    pub refinement_ratio: Option<f64>,
    pub links: Vec<LinkReport>,
    pub checks: Vec<CheckReport>,
    /// Named scalar diagnostics (boundary leak, log-Hoelder constants, ...).
    pub diagnostics: Vec<(String, f64)>,
    /// Every member was skipped, so no constant could be fitted.
    pub inconclusive: bool,
    pub pass: bool,
    /// Numerical failure that aborted the case, if any.
    pub error: Option<String>,
}

impl InequalityReport {
    pub fn c_fit(&self) -> Option<f64> {
        self.fit.c_fit
    }

    pub fn link(&self, name: &str) -> Option<&LinkReport> {
        self.links.iter().find(|l| l.name == name)
    }

    pub fn diagnostic(&self, name: &str) -> Option<f64> {
        self.diagnostics.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    /// A failed report for a case whose evaluation raised an error.
    pub fn failed(case_id: &str, theorem: TheoremKind, params: ParameterRecord, error: String) -> Self {
        InequalityReport {
            case_id: case_id.to_string(),
            theorem,
            params,
            members: 0,
            fit: Fit::new(),
            refinement_ratio: None,
            links: Vec::new(),
            checks: Vec::new(),
            diagnostics: Vec::new(),
            inconclusive: false,
            pass: false,
            error: Some(error),
        }
    }
}

pub const CSV_HEADER: &str = "case_id,theorem,n,s,s1,beta,theta,p_desc,frak_p,lhs_max,rhs_at_max,c_fit,refinement_ratio,skipped,pass";

fn num(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.16e}")).unwrap_or_default()
}

fn text(v: &Option<String>) -> String {
    match v {
        None => String::new(),
        Some(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Some(s) => s.clone(),
    }
}

fn csv_row(out: &mut String, id: &str, r: &InequalityReport, fit: &Fit, ratio: Option<f64>, pass: bool) {
    let p = &r.params;
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        text(&Some(id.to_string())),
        r.theorem.tag(),
        p.n,
        num(p.s),
        num(p.s1),
        num(p.beta),
        num(p.theta),
        text(&p.p_desc),
        num(p.frak_p),
        num(fit.c_fit.map(|_| fit.lhs_max)),
        num(fit.c_fit.map(|_| fit.rhs_at_max)),
        num(fit.c_fit),
        num(ratio),
        fit.skipped,
        pass
    );
}

/// One row per report, followed by one row per link with id `case/link`.
pub fn to_csv(reports: &[InequalityReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        csv_row(&mut out, &r.case_id, r, &r.fit, r.refinement_ratio, r.pass);
        for l in &r.links {
            csv_row(&mut out, &format!("{}/{}", r.case_id, l.name), r, &l.fit, l.refinement_ratio, l.pass);
        }
    }
    out
}

pub fn to_json(reports: &[InequalityReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialise")
}
