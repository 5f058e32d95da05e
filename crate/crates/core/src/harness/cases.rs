use serde::{Deserialize, Serialize};

use super::family::FunctionFamily;
use super::report::{InequalityReport, ParameterRecord, TheoremKind};
use super::verifiers::{self, gates};
use crate::error::{Error, Result};
use crate::exponent::ExponentDescriptor;
use crate::maximal::SmoothProfile;
use crate::norms::YoungFunction;

/// An exponent given either as a bare number or as a descriptor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExponentInput {
    Constant(f64),
    Descriptor(ExponentDescriptor),
}

impl ExponentInput {
    pub fn descriptor(&self) -> ExponentDescriptor {
        match self {
            ExponentInput::Constant(value) => ExponentDescriptor::Constant { value: *value },
            ExponentInput::Descriptor(d) => d.clone(),
        }
    }

    /// The value of a constant exponent.
    pub fn constant(&self) -> Result<f64> {
        let d = self.descriptor();
        if !d.is_constant() {
            return Err(Error::param("p", format!("a constant exponent is required, got {d}")));
        }
        Ok(d.bounds().0)
    }
}

/// One inequality to check, with the parameters it needs. Parameters a
/// given inequality does not use are ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseSpec {
    pub id: String,
    pub theorem: TheoremKind,
    #[serde(default)]
    pub s: Option<f64>,
    /// Smoothness on the left-hand side; defaults to 0.
    #[serde(default)]
    pub s1: Option<f64>,
    #[serde(default)]
    pub beta: Option<f64>,
    #[serde(default)]
    pub p: Option<ExponentInput>,
    #[serde(default)]
    pub frak_p: Option<f64>,
    #[serde(default)]
    pub young: Option<YoungFunction>,
    /// Profile for the smooth maximal function; defaults to the heat kernel.
    #[serde(default)]
    pub profile: Option<SmoothProfile>,
}

fn need<T: Clone>(v: &Option<T>, name: &'static str, theorem: TheoremKind) -> Result<T> {
    v.clone()
        .ok_or_else(|| Error::param(name, format!("required by {}", theorem.tag())))
}

impl CaseSpec {
    pub fn new(id: impl Into<String>, theorem: TheoremKind) -> Self {
        CaseSpec {
            id: id.into(),
            theorem,
            s: None,
            s1: None,
            beta: None,
            p: None,
            frak_p: None,
            young: None,
            profile: None,
        }
    }

    pub fn with_s(mut self, s: f64) -> Self {
        self.s = Some(s);
        self
    }

    pub fn with_s1(mut self, s1: f64) -> Self {
        self.s1 = Some(s1);
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = Some(beta);
        self
    }

    pub fn with_p(mut self, p: ExponentDescriptor) -> Self {
        self.p = Some(ExponentInput::Descriptor(p));
        self
    }

    pub fn with_constant_p(mut self, p: f64) -> Self {
        self.p = Some(ExponentInput::Constant(p));
        self
    }

    pub fn with_frak_p(mut self, frak_p: f64) -> Self {
        self.frak_p = Some(frak_p);
        self
    }

    pub fn with_young(mut self, young: YoungFunction) -> Self {
        self.young = Some(young);
        self
    }

    pub fn with_profile(mut self, profile: SmoothProfile) -> Self {
        self.profile = Some(profile);
        self
    }

    fn s(&self) -> Result<f64> {
        need(&self.s, "s", self.theorem)
    }

    fn s1(&self) -> f64 {
        self.s1.unwrap_or(0.0)
    }

    fn beta(&self) -> Result<f64> {
        need(&self.beta, "beta", self.theorem)
    }

    fn p(&self) -> Result<ExponentDescriptor> {
        Ok(need(&self.p, "p", self.theorem)?.descriptor())
    }

    fn p_constant(&self) -> Result<f64> {
        need(&self.p, "p", self.theorem)?.constant()
    }

    fn frak_p(&self) -> Result<f64> {
        need(&self.frak_p, "frak_p", self.theorem)
    }

    /// Check every parameter and gate for a family in `dimension`
    /// dimensions, without numerical work beyond the nabla-2 scan.
    pub fn validate(&self, dimension: usize) -> Result<()> {
        let n = dimension;
        match self.theorem {
            TheoremKind::ModifiedHedberg => gates::modified_hedberg(n, self.s()?, self.s1(), self.beta()?).map(drop),
            TheoremKind::VariableSobolev => {
                gates::variable_sobolev(n, &self.p()?, self.s()?, self.s1(), self.beta()?).map(drop)
            }
            TheoremKind::MixedSobolev | TheoremKind::MixedHls => {
                gates::mixed(n, &self.p()?, self.frak_p()?, self.s()?).map(drop)
            }
            TheoremKind::OrliczSobolev => {
                let young = need(&self.young, "young", self.theorem)?;
                gates::orlicz_sobolev(n, &young, self.s()?, self.s1(), self.beta()?).map(drop)
            }
            TheoremKind::ClassicalHedberg | TheoremKind::Hls => {
                let p = self.p_constant()?;
                gates::constant_exponent(p)?;
                gates::hls(n, self.s()?, p).map(drop)
            }
            TheoremKind::HlsVariable => gates::hls_variable(n, self.s()?, &self.p()?),
            TheoremKind::PhiMaximal => Ok(()),
            TheoremKind::MaximalBound => gates::constant_exponent(self.p_constant()?),
            TheoremKind::YoungOneil => gates::young_oneil(n, self.s()?, self.p_constant()?).map(drop),
            TheoremKind::BesovEquivalence => gates::besov_equivalence(self.s()?, self.beta()?),
        }
    }

    /// Run the verifier; errors (gates included) propagate.
    pub fn run(&self, family: &FunctionFamily, refinement: bool) -> Result<InequalityReport> {
        let f = family;
        let r = refinement;
        let mut report = match self.theorem {
            TheoremKind::ModifiedHedberg => {
                verifiers::verify_modified_hedberg(f, self.s()?, self.s1(), self.beta()?, r)
            }
            TheoremKind::VariableSobolev => {
                verifiers::verify_variable_sobolev(f, &self.p()?, self.s()?, self.s1(), self.beta()?, r)
            }
            TheoremKind::MixedSobolev => verifiers::verify_mixed_sobolev(f, &self.p()?, self.frak_p()?, self.s()?, r),
            TheoremKind::MixedHls => verifiers::verify_mixed_hls(f, &self.p()?, self.frak_p()?, self.s()?, r),
            TheoremKind::OrliczSobolev => verifiers::verify_orlicz_sobolev(
                f,
                &need(&self.young, "young", self.theorem)?,
                self.s()?,
                self.s1(),
                self.beta()?,
                r,
            ),
            TheoremKind::ClassicalHedberg => verifiers::verify_classical_hedberg(f, self.s()?, self.p_constant()?, r),
            TheoremKind::Hls => verifiers::verify_hls(f, self.s()?, self.p_constant()?, r),
            TheoremKind::HlsVariable => verifiers::verify_hls_variable(f, self.s()?, &self.p()?, r),
            TheoremKind::PhiMaximal => {
                verifiers::verify_phi_maximal(f, self.profile.unwrap_or(SmoothProfile::Heat), r)
            }
            TheoremKind::MaximalBound => verifiers::verify_maximal_bound(f, self.p_constant()?, r),
            TheoremKind::YoungOneil => verifiers::verify_young_oneil(f, self.s()?, self.p_constant()?, r),
            TheoremKind::BesovEquivalence => verifiers::verify_besov_equivalence(f, self.s()?, self.beta()?, r),
        }?;
        report.case_id = self.id.clone();
        Ok(report)
    }

    /// Like [`CaseSpec::run`], but a failure becomes a failed report so a
    /// batch can carry on.
    pub fn run_or_fail(&self, family: &FunctionFamily, refinement: bool) -> InequalityReport {
        self.run(family, refinement).unwrap_or_else(|e| {
            let params = ParameterRecord {
                n: family.domain.dimension,
                points_per_axis: family.domain.points_per_axis,
                s: self.s,
                s1: self.s1,
                beta: self.beta,
                p_desc: self.p.as_ref().map(|p| p.descriptor().to_string()),
                frak_p: self.frak_p,
                ..Default::default()
            };
            InequalityReport::failed(&self.id, self.theorem, params, e.to_string())
        })
    }
}
