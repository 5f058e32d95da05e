//! Variable exponents `p(x)` sampled on a grid, and their log-Hoelder constants.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{E, PI};
use std::fmt;

use crate::error::{Error, Result};
use crate::grid::DomainSpec;

/// Closed-form or tabulated description of an exponent function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ExponentDescriptor {
    Constant {
        value: f64,
    },
    /// `mean + amplitude sin(2 pi k x_0 / L)`.
    Sinusoid {
        mean: f64,
        amplitude: f64,
        #[serde(default = "one")]
        wavenumber: i64,
    },
    /// `left` for `x_0 < 0`, `right` otherwise.
    TwoPhase { left: f64, right: f64 },
    /// `far + (center - far) exp(-|x|^2 / width^2)`, with limit `far` at infinity.
    Radial { center: f64, far: f64, width: f64 },
    /// Explicit values in flat grid order.
    Table {
        values: Vec<f64>,
        #[serde(default)]
        p_infty: Option<f64>,
    },
}

fn one() -> i64 {
    1
}

impl ExponentDescriptor {
    /// Lower and upper bounds of the function (before sampling).
    pub fn bounds(&self) -> (f64, f64) {
        match self {
            ExponentDescriptor::Constant { value } => (*value, *value),
            ExponentDescriptor::Sinusoid { mean, amplitude, .. } => {
                (mean - amplitude.abs(), mean + amplitude.abs())
            }
            ExponentDescriptor::TwoPhase { left, right } => (left.min(*right), left.max(*right)),
            ExponentDescriptor::Radial { center, far, .. } => (center.min(*far), center.max(*far)),
            ExponentDescriptor::Table { values, .. } => values
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v))),
        }
    }

    /// Checks `1 < p- <= p+ < inf` on the bounds.
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.bounds();
        check_range(lo, hi)?;
        match self {
            ExponentDescriptor::Radial { width, .. } if width.is_nan() || *width <= 0.0 => Err(Error::InvalidExponent(
                format!("radial width must be positive, got {width}"),
            )),
            ExponentDescriptor::Table { p_infty: Some(p), .. } if !(*p > 1.0 && p.is_finite()) => {
                Err(Error::InvalidExponent(format!("p_infty must lie in (1, inf), got {p}")))
            }
            _ => Ok(()),
        }
    }

    pub fn is_constant(&self) -> bool {
        let (lo, hi) = self.bounds();
        lo == hi
    }

    /// The declared limit at infinity, where the descriptor has one.
    pub fn p_infty(&self) -> Option<f64> {
        match self {
            ExponentDescriptor::Constant { value } => Some(*value),
            ExponentDescriptor::Radial { far, .. } => Some(*far),
            ExponentDescriptor::Table { p_infty, .. } => *p_infty,
            _ => None,
        }
    }

    /// Descriptor of `scale * p(x)`.
    pub fn scaled(&self, scale: f64) -> ExponentDescriptor {
        match self {
            ExponentDescriptor::Constant { value } => ExponentDescriptor::Constant { value: value * scale },
            ExponentDescriptor::Sinusoid {
                mean,
                amplitude,
                wavenumber,
            } => ExponentDescriptor::Sinusoid {
                mean: mean * scale,
                amplitude: amplitude * scale,
                wavenumber: *wavenumber,
            },
            ExponentDescriptor::TwoPhase { left, right } => ExponentDescriptor::TwoPhase {
                left: left * scale,
                right: right * scale,
            },
            ExponentDescriptor::Radial { center, far, width } => ExponentDescriptor::Radial {
                center: center * scale,
                far: far * scale,
                width: *width,
            },
            ExponentDescriptor::Table { values, p_infty } => ExponentDescriptor::Table {
                values: values.iter().map(|v| v * scale).collect(),
                p_infty: p_infty.map(|p| p * scale),
            },
        }
    }

    pub fn sample(&self, domain: &DomainSpec) -> Result<VariableExponent> {
        self.validate()?;
        let values: Vec<f64> = match self {
            ExponentDescriptor::Constant { value } => vec![*value; domain.len()],
            ExponentDescriptor::Sinusoid {
                mean,
                amplitude,
                wavenumber,
            } => (0..domain.len())
                .map(|i| {
                    let x = domain.point(i)[0];
                    mean + amplitude * (2.0 * PI * *wavenumber as f64 * x / domain.period).sin()
                })
                .collect(),
            ExponentDescriptor::TwoPhase { left, right } => (0..domain.len())
                .map(|i| if domain.point(i)[0] < 0.0 { *left } else { *right })
                .collect(),
            ExponentDescriptor::Radial { center, far, width } => (0..domain.len())
                .map(|i| {
                    let [x, y] = domain.point(i);
                    far + (center - far) * (-(x * x + y * y) / (width * width)).exp()
                })
                .collect(),
            ExponentDescriptor::Table { values, .. } => values.clone(),
        };
        VariableExponent::new(*domain, values, self.p_infty())
    }
}

impl fmt::Display for ExponentDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentDescriptor::Constant { value } => write!(f, "const({value})"),
            ExponentDescriptor::Sinusoid {
                mean,
                amplitude,
                wavenumber,
            } => write!(f, "sin({mean}+{amplitude}*sin(2pi*{wavenumber}x/L))"),
            ExponentDescriptor::TwoPhase { left, right } => write!(f, "two_phase({left}|{right})"),
            ExponentDescriptor::Radial { center, far, width } => {
                write!(f, "radial({center}->{far};w={width})")
            }
            ExponentDescriptor::Table { values, .. } => {
                let (lo, hi) = self.bounds();
                write!(f, "table(n={};{lo}..{hi})", values.len())
            }
        }
    }
}

fn check_range(lo: f64, hi: f64) -> Result<()> {
    if !(lo > 1.0 && hi.is_finite() && lo <= hi) {
        return Err(Error::InvalidExponent(format!(
            "exponent range [{lo}, {hi}] must satisfy 1 < p- <= p+ < inf"
        )));
    }
    Ok(())
}

/// An exponent function sampled on a grid, with `1 < p- <= p+ < inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct VariableExponent {
    domain: DomainSpec,
    values: Vec<f64>,
    p_minus: f64,
    p_plus: f64,
    p_infty: Option<f64>,
}

impl VariableExponent {
    pub fn new(domain: DomainSpec, values: Vec<f64>, p_infty: Option<f64>) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::GridMismatch(format!(
                "exponent has {} values, grid has {}",
                values.len(),
                domain.len()
            )));
        }
        let (p_minus, p_plus) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::InvalidExponent("exponent contains NaN".into()));
        }
        check_range(p_minus, p_plus)?;
        Ok(VariableExponent {
            domain,
            values,
            p_minus,
            p_plus,
            p_infty,
        })
    }

    pub fn constant(domain: DomainSpec, p: f64) -> Result<Self> {
        Self::new(domain, vec![p; domain.len()], Some(p))
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn p_minus(&self) -> f64 {
        self.p_minus
    }

    pub fn p_plus(&self) -> f64 {
        self.p_plus
    }

    pub fn p_infty(&self) -> Option<f64> {
        self.p_infty
    }

    pub fn is_constant(&self) -> bool {
        self.p_minus == self.p_plus
    }

    /// `c p(x)`; used for `q(x) = p(x) / (1 - theta)` and `alpha p(x)`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(
            self.domain,
            self.values.iter().map(|p| c * p).collect(),
            self.p_infty.map(|p| c * p),
        )
    }

    /// Exponent defined pointwise through its reciprocal: `1/q(x) = g(1/p(x))`.
    pub fn from_reciprocal(&self, g: impl Fn(f64) -> f64) -> Result<Self> {
        let map = |p: f64| 1.0 / g(1.0 / p);
        Self::new(
            self.domain,
            self.values.iter().map(|&p| map(p)).collect(),
            self.p_infty.map(map),
        )
    }
}

/// Log-Hoelder constants of an exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogHolder {
    /// `max |1/p(x) - 1/p(y)| ln(e + 1/|x - y|)` over grid pairs, torus distance.
    pub local: f64,
    /// `max |1/p(x) - 1/p_inf| ln(e + |x|)`, absent without a declared `p_inf`.
    pub infinity: Option<f64>,
}

pub fn log_holder_constants(p: &VariableExponent) -> LogHolder {
    let dom = p.domain;
    let recip: Vec<f64> = p.values.iter().map(|v| 1.0 / v).collect();
    let points: Vec<[f64; 2]> = (0..dom.len()).map(|i| dom.point(i)).collect();
    let local = (0..dom.len())
        .into_par_iter()
        .map(|i| {
            let mut best = 0.0f64;
            for j in (i + 1)..dom.len() {
                let diff = (recip[i] - recip[j]).abs();
                if diff == 0.0 {
                    continue;
                }
                let d = dom.torus_displacement(points[i], points[j]);
                let dist = (d[0] * d[0] + d[1] * d[1]).sqrt();
                best = best.max(diff * (E + 1.0 / dist).ln());
            }
            best
        })
        .reduce(|| 0.0, f64::max);
    let infinity = p.p_infty.map(|pi| {
        recip
            .iter()
            .zip(&points)
            .map(|(r, x)| (r - 1.0 / pi).abs() * (E + (x[0] * x[0] + x[1] * x[1]).sqrt()).ln())
            .fold(0.0, f64::max)
    });
    LogHolder { local, infinity }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn dom() -> DomainSpec {
        DomainSpec::new(1, 4.0, 64).unwrap()
    }

    #[test]
    fn standing_assumption_enforced() {
        let d = dom();
        assert!(VariableExponent::constant(d, 1.0).is_err());
        assert!(VariableExponent::constant(d, f64::INFINITY).is_err());
        assert!(VariableExponent::new(d, vec![2.0; 3], None).is_err());
        assert!(ExponentDescriptor::Sinusoid {
            mean: 1.5,
            amplitude: 0.6,
            wavenumber: 1
        }
        .validate()
        .is_err());
    }

    #[test]
    fn constant_exponent_has_zero_constants() {
        let lh = log_holder_constants(&VariableExponent::constant(dom(), 2.5).unwrap());
        assert_eq!(lh.local, 0.0);
        assert_eq!(lh.infinity, Some(0.0));
    }

    #[test]
    fn descriptors_sample_and_parse() {
        let d = dom();
        let json = r#"{"kind":"two_phase","left":2,"right":4}"#;
        let desc: ExponentDescriptor = serde_json::from_str(json).unwrap();
        let p = desc.sample(&d).unwrap();
        assert_eq!(p.values()[0], 2.0);
        assert_eq!(p.values()[32], 4.0);
        assert_eq!((p.p_minus(), p.p_plus()), (2.0, 4.0));
        let s: ExponentDescriptor =
            serde_json::from_str(r#"{"kind":"sinusoid","mean":3,"amplitude":1}"#).unwrap();
        let ps = s.sample(&d).unwrap();
        assert_relative_eq!(ps.p_plus(), 4.0, max_relative = 1e-12);
        assert_eq!(s.to_string(), "sin(3+1*sin(2pi*1x/L))");
        let r = ExponentDescriptor::Radial {
            center: 1.5,
            far: 2.5,
            width: 1.0,
        };
        assert_eq!(r.sample(&d).unwrap().p_infty(), Some(2.5));
    }

    #[test]
    fn scaling_reciprocal_scales_constant() {
        let d = dom();
        let p = ExponentDescriptor::Sinusoid {
            mean: 3.0,
            amplitude: 1.0,
            wavenumber: 1,
        }
        .sample(&d)
        .unwrap();
        let theta = 0.375;
        let q = p.scaled(1.0 / (1.0 - theta)).unwrap();
        let (cp, cq) = (log_holder_constants(&p).local, log_holder_constants(&q).local);
        assert_relative_eq!(cq, (1.0 - theta) * cp, max_relative = 1e-12);
    }
}
