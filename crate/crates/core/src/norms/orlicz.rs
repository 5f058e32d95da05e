use serde::{Deserialize, Serialize};
use std::fmt;

use super::luxemburg_solve;
use crate::error::{Error, Result};
use crate::field::SampledField;
use crate::grid::LogGrid;

/// A Young function `A(t) = int_0^t a(u) du` with non-decreasing density `a`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum YoungFunction {
    /// `A(t) = t^p`, `p >= 1`.
    Power { p: f64 },
    /// `t^{p_low}` up to `knee`, then `knee^{p_low} (t / knee)^{p_high}`.
    CappedPower { p_low: f64, p_high: f64, knee: f64 },
    /// `A(t) = e^t - 1 - t`.
    ExpType,
    /// Density `a` given at nodes `t` (starting at 0), linear in between and
    /// constant past the last node.
    Table { t: Vec<f64>, a: Vec<f64> },
}

impl YoungFunction {
    pub fn power(p: f64) -> Result<Self> {
        let a = YoungFunction::Power { p };
        a.validate()?;
        Ok(a)
    }

    pub fn capped_power(p_low: f64, p_high: f64, knee: f64) -> Result<Self> {
        let a = YoungFunction::CappedPower { p_low, p_high, knee };
        a.validate()?;
        Ok(a)
    }

    pub fn table(t: Vec<f64>, a: Vec<f64>) -> Result<Self> {
        let y = YoungFunction::Table { t, a };
        y.validate()?;
        Ok(y)
    }

    /// Parameter checks, then convexity and monotonicity of `A` sampled on a
    /// log grid over `[1e-6, 1e6]`.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidYoungFunction(msg));
        match self {
            YoungFunction::Power { p } if !(*p >= 1.0 && p.is_finite()) => {
                return bad(format!("power must be >= 1, got {p}"))
            }
            YoungFunction::CappedPower { p_low, p_high, knee }
                if !(*p_low >= 1.0 && p_high >= p_low && p_high.is_finite() && *knee > 0.0) =>
            {
                return bad(format!(
                    "capped power needs 1 <= p_low <= p_high < inf and knee > 0, got ({p_low}, {p_high}, {knee})"
                ))
            }
            YoungFunction::Table { t, a } => {
                if t.len() != a.len() || t.len() < 2 {
                    return bad("density table needs matching t and a with at least two nodes".into());
                }
                if t[0] != 0.0 || a[0] != 0.0 {
                    return bad("density table must start at t = 0 with a(0) = 0".into());
                }
                if !t.windows(2).all(|w| w[1] > w[0]) || t.iter().any(|v| !v.is_finite()) {
                    return bad("table nodes must be finite and strictly increasing".into());
                }
                if !a.windows(2).all(|w| w[1] >= w[0]) || a.iter().any(|v| !v.is_finite()) {
                    return bad("density must be finite and non-decreasing".into());
                }
                if *a.last().unwrap() == 0.0 {
                    return bad("density vanishes identically".into());
                }
            }
            _ => {}
        }
        let grid = LogGrid::new(1e-6, 1e6, 241)?.nodes();
        let vals: Vec<f64> = grid.iter().map(|&t| self.value(t)).collect();
        let tol = |v: f64| 1e-12 * v.abs().max(f64::MIN_POSITIVE);
        for i in 1..grid.len() {
            if vals[i] < vals[i - 1] - tol(vals[i]) {
                return bad(format!("A decreases near t = {}", grid[i]));
            }
            if i + 1 < grid.len() && vals[i + 1].is_finite() {
                // slopes of consecutive chords must not decrease
                let left = (vals[i] - vals[i - 1]) / (grid[i] - grid[i - 1]);
                let right = (vals[i + 1] - vals[i]) / (grid[i + 1] - grid[i]);
                if right < left - 1e-9 * left.abs() {
                    return bad(format!("A is not convex near t = {}", grid[i]));
                }
            }
        }
        Ok(())
    }

    /// `A(t)` for `t >= 0`.
    pub fn value(&self, t: f64) -> f64 {
        match self {
            YoungFunction::Power { p } => t.powf(*p),
            YoungFunction::CappedPower { p_low, p_high, knee } => {
                if t <= *knee {
                    t.powf(*p_low)
                } else {
                    knee.powf(*p_low) * (t / knee).powf(*p_high)
                }
            }
            YoungFunction::ExpType => t.exp_m1() - t,
            YoungFunction::Table { t: nodes, a } => table_integral(nodes, a, t),
        }
    }

    /// The density `a(t)`.
    pub fn density(&self, t: f64) -> f64 {
        match self {
            YoungFunction::Power { p } => p * t.powf(p - 1.0),
            YoungFunction::CappedPower { p_low, p_high, knee } => {
                if t <= *knee {
                    p_low * t.powf(p_low - 1.0)
                } else {
                    p_high * knee.powf(p_low - 1.0) * (t / knee).powf(p_high - 1.0)
                }
            }
            YoungFunction::ExpType => t.exp_m1(),
            YoungFunction::Table { t: nodes, a } => {
                let k = nodes.partition_point(|&x| x <= t);
                if k >= nodes.len() {
                    *a.last().unwrap()
                } else {
                    let (t0, t1) = (nodes[k - 1], nodes[k]);
                    a[k - 1] + (a[k] - a[k - 1]) * (t - t0) / (t1 - t0)
                }
            }
        }
    }
}

/// Exact integral of the piecewise-linear density: trapezoid sums over whole
/// intervals plus the partial interval containing `t`.
fn table_integral(nodes: &[f64], a: &[f64], t: f64) -> f64 {
    let mut acc = 0.0;
    for k in 1..nodes.len() {
        let (t0, t1) = (nodes[k - 1], nodes[k]);
        if t <= t1 {
            let at = a[k - 1] + (a[k] - a[k - 1]) * (t - t0) / (t1 - t0);
            return acc + 0.5 * (a[k - 1] + at) * (t - t0);
        }
        acc += 0.5 * (a[k - 1] + a[k]) * (t1 - t0);
    }
    acc + a.last().unwrap() * (t - nodes.last().unwrap())
}

impl fmt::Display for YoungFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            YoungFunction::Power { p } => write!(f, "t^{p}"),
            YoungFunction::CappedPower { p_low, p_high, knee } => {
                write!(f, "capped_power({p_low},{p_high};knee={knee})")
            }
            YoungFunction::ExpType => write!(f, "exp_type"),
            YoungFunction::Table { t, .. } => write!(f, "table(n={})", t.len()),
        }
    }
}

/// `int A(|f|) dx` as a Riemann sum.
pub fn orlicz_modular(field: &SampledField, young: &YoungFunction) -> f64 {
    field.domain().cell_volume() * field.abs().iter().map(|&v| young.value(v)).sum::<f64>()
}

/// `||f||_{L^A} = inf { lambda > 0 : int A(|f| / lambda) <= 1 }`.
pub fn orlicz_luxemburg_norm(field: &SampledField, young: &YoungFunction) -> Result<f64> {
    luxemburg_solve(&field.abs(), field.domain().cell_volume(), |_, v| young.value(v))
}

/// Luxemburg norm for `A_sigma(t) = A(t^sigma)`.
pub fn rescaled_orlicz_norm(field: &SampledField, young: &YoungFunction, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::param("sigma", format!("rescaling exponent must be positive, got {sigma}")));
    }
    luxemburg_solve(&field.abs(), field.domain().cell_volume(), |_, v| {
        young.value(v.powf(sigma))
    })
}

/// Default scan for the nabla-2 search: `[1e-6, 1e6]`, 1201 log-spaced nodes.
pub fn nabla2_scan_grid() -> LogGrid {
    LogGrid {
        min: 1e-6,
        max: 1e6,
        count: 1201,
    }
}

/// Smallest `C = 2^{i/64}`, `i = 1..=640`, with `A(r) <= A(C r) / (2C)` at
/// every scan node, or `None` if no such `C <= 2^10` exists.
///
/// Comparisons allow a relative slack of `1e-12` so that identities such as
/// `r^2 = (2r)^2 / 4` are not lost to rounding.
pub fn nabla2_constant(young: &YoungFunction, scan: &LogGrid) -> Result<Option<f64>> {
    scan.validate()?;
    if scan.min > 1e-6 || scan.max < 1e6 || scan.count < 1000 {
        return Err(Error::param(
            "scan",
            format!(
                "nabla-2 scan must cover [1e-6, 1e6] with >= 1000 nodes, got [{:e}, {:e}] x {}",
                scan.min, scan.max, scan.count
            ),
        ));
    }
    let nodes = scan.nodes();
    let base: Vec<f64> = nodes.iter().map(|&r| young.value(r)).collect();
    Ok((1..=640).map(|i| 2f64.powf(i as f64 / 64.0)).find(|&c| {
        nodes
            .iter()
            .zip(&base)
            .all(|(&r, &ar)| ar <= young.value(c * r) / (2.0 * c) * (1.0 + 1e-12))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::lp_norm;
    use crate::generators::{sample, GeneratorSpec};
    use crate::grid::DomainSpec;
    use approx::assert_relative_eq;

    fn random(seed: u64) -> SampledField {
        let d = DomainSpec::new(1, 6.0, 128).unwrap();
        sample(&d, &GeneratorSpec::RandomBandLimited { seed, max_band: 9 }).unwrap()
    }

    #[test]
    fn power_reduces_to_lebesgue() {
        let f = random(1);
        for p in [1.5, 2.0, 4.0] {
            let a = YoungFunction::power(p).unwrap();
            assert_relative_eq!(orlicz_luxemburg_norm(&f, &a).unwrap(), lp_norm(&f, p).unwrap(), max_relative = 1e-12);
        }
        let z = SampledField::zeros(*f.domain());
        assert_eq!(orlicz_luxemburg_norm(&z, &YoungFunction::ExpType).unwrap(), 0.0);
    }

    #[test]
    fn homogeneity_with_negative_scale() {
        let a = YoungFunction::capped_power(2.0, 3.0, 1.0).unwrap();
        for seed in 0..5 {
            let f = random(seed);
            let n = orlicz_luxemburg_norm(&f, &a).unwrap();
            assert_relative_eq!(orlicz_luxemburg_norm(&f.scale(-3.0), &a).unwrap(), 3.0 * n, max_relative = 1e-12);
        }
    }

    #[test]
    fn nabla2_examples() {
        let scan = nabla2_scan_grid();
        let c2 = nabla2_constant(&YoungFunction::power(2.0).unwrap(), &scan).unwrap();
        assert_eq!(c2, Some(2.0));
        assert_eq!(nabla2_constant(&YoungFunction::power(1.0).unwrap(), &scan).unwrap(), None);
        let c3 = nabla2_constant(&YoungFunction::power(3.0).unwrap(), &scan).unwrap().unwrap();
        assert!((c3 - 2f64.sqrt()).abs() <= c3 * (2f64.powf(1.0 / 64.0) - 1.0));
        let short = LogGrid::new(1e-3, 1e3, 2000).unwrap();
        assert!(nabla2_constant(&YoungFunction::ExpType, &short).is_err());
    }

    #[test]
    fn rescaling() {
        let f = random(3);
        let a2 = YoungFunction::power(2.0).unwrap();
        assert_relative_eq!(rescaled_orlicz_norm(&f, &a2, 2.0).unwrap(), lp_norm(&f, 4.0).unwrap(), max_relative = 1e-12);
        let cap = YoungFunction::capped_power(1.5, 2.5, 0.5).unwrap();
        assert_relative_eq!(
            rescaled_orlicz_norm(&f, &cap, 1.0).unwrap(),
            orlicz_luxemburg_norm(&f, &cap).unwrap(),
            max_relative = 1e-15
        );
        assert!(rescaled_orlicz_norm(&f, &cap, 0.0).is_err());
    }

    #[test]
    fn invalid_young_functions_rejected() {
        assert!(YoungFunction::power(0.5).is_err());
        assert!(YoungFunction::capped_power(3.0, 2.0, 1.0).is_err());
        assert!(YoungFunction::table(vec![0.0, 1.0, 2.0], vec![0.0, 2.0, 1.0]).is_err());
        assert!(YoungFunction::table(vec![0.0, 1.0], vec![0.0, 0.0]).is_err());
        assert!(YoungFunction::table(vec![0.5, 1.0], vec![0.0, 1.0]).is_err());
        assert!(YoungFunction::ExpType.validate().is_ok());
    }

    #[test]
    fn table_density_integrates_exactly() {
        // a(t) = 2t on [0, 10]: A(t) = t^2 there
        let y = YoungFunction::table(vec![0.0, 1.0, 5.0, 10.0], vec![0.0, 2.0, 10.0, 20.0]).unwrap();
        for t in [0.0, 0.3, 1.0, 2.5, 9.9] {
            assert_relative_eq!(y.value(t), t * t, max_relative = 1e-14, epsilon = 1e-300);
            assert_relative_eq!(y.density(t), 2.0 * t, max_relative = 1e-14, epsilon = 1e-300);
        }
        assert_relative_eq!(y.value(12.0), 100.0 + 40.0, max_relative = 1e-14);
    }

    #[test]
    fn capped_power_is_continuous_and_nabla2() {
        let y = YoungFunction::capped_power(2.0, 3.0, 1.0).unwrap();
        assert_relative_eq!(y.value(1.0 + 1e-12), 1.0, max_relative = 1e-10);
        let c = nabla2_constant(&y, &nabla2_scan_grid()).unwrap();
        assert_eq!(c, Some(2.0));
    }
}
