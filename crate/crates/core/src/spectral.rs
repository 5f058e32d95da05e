//! Fourier-multiplier operators: fractional Laplacian, Riesz potential, heat
//! semigroup, and the Riemann-Liouville integral for fractional powers.

use statrs::function::gamma::gamma;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{dft, idft, SampledField};
use crate::grid::{DomainSpec, LogGrid};

/// A radial Fourier multiplier.
///
/// The homogeneous symbols `|xi|^s` and `|xi|^{-s}` annihilate the zero mode;
/// the heat symbol `exp(-t |xi|^2)` keeps it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Multiplier {
    /// `|xi|^s`, the fractional Laplacian `(-Delta)^{s/2}`.
    FractionalLaplacian(f64),
    /// `|xi|^{-s}`, the Riesz potential `I_s`.
    RieszPotential(f64),
    /// `exp(-t |xi|^2)`, convolution with the heat kernel at time `t`.
    Heat(f64),
}

impl Multiplier {
    pub fn symbol(&self, xi: f64) -> f64 {
        match *self {
            Multiplier::FractionalLaplacian(_) | Multiplier::RieszPotential(_) if xi == 0.0 => 0.0,
            Multiplier::FractionalLaplacian(s) => xi.powf(s),
            Multiplier::RieszPotential(s) => xi.powf(-s),
            Multiplier::Heat(t) => (-t * xi * xi).exp(),
        }
    }

    fn annihilates_mean(&self) -> bool {
        !matches!(self, Multiplier::Heat(_))
    }

    pub fn apply(&self, field: &SampledField) -> SampledField {
        apply_radial(field, |xi| self.symbol(xi), self.annihilates_mean())
    }
}

/// Multiply the spectrum of `field` by `symbol(|xi|)`.
pub(crate) fn apply_radial(
    field: &SampledField,
    symbol: impl Fn(f64) -> f64,
    annihilate_mean: bool,
) -> SampledField {
    let freqs = field.domain().frequencies();
    // symbols can be costly (quadrature sums), and radial grids repeat magnitudes
    let mut cache = HashMap::new();
    let table: Vec<f64> = freqs
        .magnitudes()
        .iter()
        .map(|&m| *cache.entry(m.to_bits()).or_insert_with(|| symbol(m)))
        .collect();
    let coeffs = dft(field).multiplied(|i| if i == 0 && annihilate_mean { 0.0 } else { table[i] });
    let out = idft(&coeffs);
    let out = if field.values().iter().all(|v| v.im == 0.0) {
        out.map(|v| v.re.into())
    } else {
        out
    };
    out.with_mean_zero_flag(annihilate_mean || field.is_mean_zero())
}

/// `(-Delta)^{s/2} f`: multiplier `|xi|^s` with the zero mode removed.
pub fn fractional_laplacian(field: &SampledField, s: f64) -> Result<SampledField> {
    if !(s.is_finite() && s >= 0.0) {
        return Err(Error::param("s", format!("smoothness must be >= 0, got {s}")));
    }
    Ok(Multiplier::FractionalLaplacian(s).apply(field))
}

/// `I_s f`: multiplier `|xi|^{-s}` on the mean-zero part of `f`.
pub fn riesz_potential(field: &SampledField, s: f64) -> Result<SampledField> {
    let n = field.domain().dimension as f64;
    if !(s > 0.0 && s < n) {
        return Err(Error::gate(
            "riesz-order",
            format!("Riesz potential needs 0 < s < n = {n}, got s = {s}"),
        ));
    }
    Ok(Multiplier::RieszPotential(s).apply(field))
}

/// `h_t * f` with `h_t(x) = (4 pi t)^{-n/2} exp(-|x|^2 / (4t))`.
pub fn heat_convolve(field: &SampledField, t: f64) -> Result<SampledField> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::param("t", format!("heat time must be positive, got {t}")));
    }
    Ok(Multiplier::Heat(t).apply(field))
}

/// Riesz kernel `K_s(x) = |x|^{s-n}`.
pub fn riesz_kernel_eval(x: &[f64], n: usize, s: f64) -> Result<f64> {
    let nf = n as f64;
    if !(s > 0.0 && s < nf) {
        return Err(Error::gate(
            "riesz-order",
            format!("Riesz kernel needs 0 < s < n = {n}, got s = {s}"),
        ));
    }
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if r == 0.0 {
        return Err(Error::param("x", "Riesz kernel is singular at the origin"));
    }
    Ok(r.powf(s - nf))
}

/// The integer `k = floor(s/2) + 1`, the smallest integer above `s/2`.
pub fn default_rl_order(s: f64) -> u32 {
    (0.5 * s).floor() as u32 + 1
}

/// Quadrature of
/// `(-Delta)^{s1/2} f = Gamma(k - s1/2)^{-1} int_0^inf t^{k - s1/2 - 1} (-Delta)^k (h_t * f) dt`
/// on log-spaced `t` nodes with trapezoid weights in `ln t`.
#[derive(Debug, Clone, PartialEq)]
pub struct RiemannLiouville {
    s1: f64,
    k: u32,
    quadrature: LogGrid,
}

impl RiemannLiouville {
    /// Validates `0 < s1 < 2k`, `s < 2k`, and that `quadrature` resolves
    /// the grid: `t_min <= (h/pi)^2`, `t_max >= (L / 2 pi)^2`, at least 200 nodes.
    pub fn new(domain: &DomainSpec, s1: f64, s: f64, k: u32, quadrature: LogGrid) -> Result<Self> {
        if !(s1 > 0.0 && s1.is_finite()) {
            return Err(Error::param("s1", format!("order must be positive, got {s1}")));
        }
        let half_k = k as f64;
        if half_k <= 0.5 * s1 {
            return Err(Error::param(
                "k",
                format!("need k > s1/2 for a positive Gamma argument, got k = {k}, s1 = {s1}"),
            ));
        }
        if half_k <= 0.5 * s {
            return Err(Error::param("k", format!("need k > s/2, got k = {k}, s = {s}")));
        }
        quadrature.validate()?;
        let h = domain.spacing();
        let lo = (h / std::f64::consts::PI).powi(2);
        let hi = (domain.period / (2.0 * std::f64::consts::PI)).powi(2);
        if quadrature.count < 200 || quadrature.min > lo || quadrature.max < hi {
            return Err(Error::param(
                "quadrature",
                format!(
                    "t grid [{:e}, {:e}] with {} nodes must cover [{lo:e}, {hi:e}] with >= 200 nodes",
                    quadrature.min, quadrature.max, quadrature.count
                ),
            ));
        }
        Ok(RiemannLiouville { s1, k, quadrature })
    }

    /// Default setup: `k = floor(s/2) + 1` and a 400-node grid.
    pub fn with_defaults(domain: &DomainSpec, s1: f64, s: f64) -> Result<Self> {
        Self::new(
            domain,
            s1,
            s,
            default_rl_order(s),
            LogGrid::riemann_liouville(domain, 400),
        )
    }

    pub fn order(&self) -> u32 {
        self.k
    }

    pub fn quadrature(&self) -> &LogGrid {
        &self.quadrature
    }

    /// The multiplier the quadrature actually applies at frequency `|xi|`.
    pub fn effective_symbol(&self, xi: f64) -> f64 {
        if xi == 0.0 {
            return 0.0;
        }
        let a = self.k as f64 - 0.5 * self.s1;
        let xi2 = xi * xi;
        let sum: f64 = self
            .quadrature
            .nodes()
            .iter()
            .zip(self.quadrature.log_trapezoid_weights())
            .map(|(&t, w)| w * t.powf(a) * (-t * xi2).exp())
            .sum();
        xi2.powi(self.k as i32) * sum / gamma(a)
    }

    pub fn apply(&self, field: &SampledField) -> SampledField {
        apply_radial(field, |xi| self.effective_symbol(xi), true)
    }
}

/// `(-Delta)^{s1/2} f` through the Riemann-Liouville quadrature.
pub fn riemann_liouville_fraclap(
    field: &SampledField,
    s1: f64,
    s: f64,
    k: u32,
    quadrature: LogGrid,
) -> Result<SampledField> {
    Ok(RiemannLiouville::new(field.domain(), s1, s, k, quadrature)?.apply(field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::lp_norm;
    use crate::generators::{sample, GeneratorSpec};
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn mode(dom: &DomainSpec, k: Vec<i64>) -> SampledField {
        sample(dom, &GeneratorSpec::FourierMode { k }).unwrap()
    }

    fn random(dom: &DomainSpec, seed: u64, band: usize) -> SampledField {
        sample(dom, &GeneratorSpec::RandomBandLimited { seed, max_band: band }).unwrap()
    }

    fn rel_sup(a: &SampledField, b: &SampledField) -> f64 {
        a.sub(b).unwrap().sup_norm() / b.sup_norm()
    }

    #[test]
    fn single_mode_multipliers() {
        let dom = DomainSpec::new(1, 5.0, 64).unwrap();
        let f = mode(&dom, vec![3]);
        let xi = 2.0 * PI * 3.0 / 5.0;
        let checks = [
            (fractional_laplacian(&f, 0.7).unwrap(), xi.powf(0.7)),
            (riesz_potential(&f, 0.4).unwrap(), xi.powf(-0.4)),
            (heat_convolve(&f, 0.05).unwrap(), (-0.05 * xi * xi).exp()),
        ];
        for (g, factor) in checks {
            assert!(rel_sup(&g, &f.scale(factor)) < 1e-13);
        }
    }

    #[test]
    fn order_zero_is_identity_on_mean_zero_fields() {
        let dom = DomainSpec::new(2, 4.0, 32).unwrap();
        let f = random(&dom, 5, 7);
        assert!(rel_sup(&fractional_laplacian(&f, 0.0).unwrap(), &f) < 1e-13);
    }

    #[test]
    fn riesz_gate_and_kernel() {
        let dom = DomainSpec::new(1, 5.0, 64).unwrap();
        let f = random(&dom, 1, 4);
        let err = riesz_potential(&f, 1.0).unwrap_err();
        assert_eq!(err.gate_name(), Some("riesz-order"));
        assert!(fractional_laplacian(&f, -0.1).is_err());
        assert!(heat_convolve(&f, 0.0).is_err());
        assert_eq!(riesz_kernel_eval(&[1.0], 1, 0.5).unwrap(), 1.0);
        assert_eq!(riesz_kernel_eval(&[0.0, 2.0, 0.0], 3, 1.0).unwrap(), 0.25);
        assert!(riesz_kernel_eval(&[0.0, 0.0], 2, 1.0).is_err());
    }

    #[test]
    fn heat_preserves_mean_and_composes() {
        let dom = DomainSpec::new(1, 6.0, 128).unwrap();
        let f = random(&dom, 9, 10).add(&SampledField::constant(dom, 0.3)).unwrap();
        let a = heat_convolve(&heat_convolve(&f, 0.1).unwrap(), 0.1).unwrap();
        let b = heat_convolve(&f, 0.2).unwrap();
        assert!(a.sub(&b).unwrap().sup_norm() < 1e-12 * f.sup_norm());
        assert_relative_eq!(b.mean().re, 0.3, max_relative = 1e-13);
    }

    #[test]
    fn heat_on_gaussian_is_wider_gaussian() {
        // h_{sigma^2} * h_t = h_{sigma^2 + t}
        let dom = DomainSpec::new(2, 16.0, 64).unwrap();
        let g = |sigma: f64| {
            sample(
                &dom,
                &GeneratorSpec::Gaussian {
                    sigma,
                    center: vec![0.5, -1.0],
                },
            )
            .unwrap()
        };
        let out = heat_convolve(&g(0.6), 0.45).unwrap();
        let exact = g((0.36f64 + 0.45).sqrt());
        assert!(out.sub(&exact).unwrap().sup_norm() < 1e-8 * exact.sup_norm());
        assert_relative_eq!(out.sup_norm(), 1.0 / (4.0 * PI * 0.81), max_relative = 1e-8);
    }

    /// `(-Delta)^{1/2}` of the plane heat kernel at time `sigma^2`, by
    /// quadrature of the radial inversion integral. Both integrands are
    /// analytic and either periodic or even and Gaussian-decaying, so the
    /// trapezoid rule converges geometrically.
    fn half_laplacian_gaussian_plane(r: f64, sigma: f64) -> f64 {
        const ANGLES: usize = 512;
        const RADII: usize = 3000;
        let j0 = |z: f64| {
            (0..ANGLES).map(|i| (z * (PI * i as f64 / ANGLES as f64).sin()).cos()).sum::<f64>() / ANGLES as f64
        };
        let h = 9.0 / sigma / RADII as f64;
        let sum: f64 = (1..RADII)
            .map(|i| {
                let rho = i as f64 * h;
                rho * rho * (-sigma * sigma * rho * rho).exp() * j0(rho * r)
            })
            .sum();
        sum * h / (2.0 * PI)
    }

    /// Far field `e^{sigma^2 Delta} (-|x|^{-3} / 2 pi)`, using
    /// `Delta^k r^{-3} = prod_{j<k} (3 + 2j)^2 r^{-3-2k}` in the plane.
    fn half_laplacian_gaussian_far(r: f64, sigma: f64) -> f64 {
        let mut term = r.powi(-3);
        let mut sum = term;
        for k in 0..8 {
            let c = (3 + 2 * k) as f64;
            term *= sigma * sigma * c * c / ((k + 1) as f64 * r * r);
            sum += term;
        }
        -sum / (2.0 * PI)
    }

    #[test]
    fn half_laplacian_of_gaussian_matches_periodised_quadrature() {
        // the grid operator is the periodisation of the plane operator, whose
        // |x|^{-3} tail is summed over images: exactly up to |m|_inf = M, then
        // as the integral of r^{-3} outside the square of half side (M + 1/2) L
        let (sigma, period) = (0.5, 16.0);
        let dom = DomainSpec::new(2, period, 256).unwrap();
        let g = sample(&dom, &GeneratorSpec::Gaussian { sigma, center: vec![] }).unwrap();
        let out = fractional_laplacian(&g, 1.0).unwrap();
        let peak = half_laplacian_gaussian_plane(0.0, sigma);
        const M: i64 = 120;
        let tail = 4.0 * 2f64.sqrt() / ((M as f64 + 0.5) * period.powi(3)) / (2.0 * PI);
        for idx in [[128, 128], [136, 128], [144, 139], [176, 96], [250, 20]] {
            let flat = dom.flat_index(idx);
            let [x, y] = dom.point(flat);
            let mut images = 0.0;
            for i in -M..=M {
                for j in -M..=M {
                    if i != 0 || j != 0 {
                        let r = (x + i as f64 * period).hypot(y + j as f64 * period);
                        images += half_laplacian_gaussian_far(r, sigma);
                    }
                }
            }
            let exact = half_laplacian_gaussian_plane(x.hypot(y), sigma) + images - tail;
            let got = out.values()[flat].re;
            assert!((got - exact).abs() <= 1e-6 * peak, "at ({x}, {y}): {got} vs {exact}");
        }
    }

    #[test]
    fn outputs_flagged_mean_zero() {
        let dom = DomainSpec::new(1, 6.0, 32).unwrap();
        let f = SampledField::constant(dom, 2.0);
        let g = fractional_laplacian(&f, 1.0).unwrap();
        assert!(g.is_mean_zero());
        assert_eq!(g.sup_norm(), 0.0);
        assert!(!heat_convolve(&f, 1.0).unwrap().is_mean_zero());
    }

    #[test]
    fn rl_gamma_argument_half() {
        assert_relative_eq!(gamma(0.5), PI.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn rl_recovers_mode_multiplier() {
        let dom = DomainSpec::new(1, 2.0 * PI, 64).unwrap();
        let f = mode(&dom, vec![2]);
        let g = riemann_liouville_fraclap(&f, 0.7, 1.4, 1, LogGrid::riemann_liouville(&dom, 200)).unwrap();
        let c = dft(&g).coefficients()[2].re;
        assert_relative_eq!(c, 2f64.powf(0.7), max_relative = 1e-3);
    }

    #[test]
    fn rl_rejects_bad_setups() {
        let dom = DomainSpec::new(1, 10.0, 64).unwrap();
        let q = LogGrid::riemann_liouville(&dom, 300);
        assert!(RiemannLiouville::new(&dom, 2.0, 1.5, 1, q).is_err());
        assert!(RiemannLiouville::new(&dom, 0.5, 2.5, 1, q).is_err());
        assert!(RiemannLiouville::new(&dom, 0.5, 1.0, 1, LogGrid::riemann_liouville(&dom, 100)).is_err());
        let short = LogGrid::new(1e-2, 1e3, 400).unwrap();
        assert!(RiemannLiouville::new(&dom, 0.5, 1.0, 1, short).is_err());
        assert_eq!(default_rl_order(1.8), 1);
        assert_eq!(default_rl_order(2.0), 2);
    }

    #[test]
    fn rl_result_does_not_depend_on_k() {
        let dom = DomainSpec::new(1, 8.0, 128).unwrap();
        let f = random(&dom, 4, 12);
        let q = LogGrid::riemann_liouville(&dom, 400);
        let a = riemann_liouville_fraclap(&f, 0.5, 1.0, 1, q).unwrap();
        let b = riemann_liouville_fraclap(&f, 0.5, 1.0, 2, q).unwrap();
        assert!(rel_sup(&a, &b) < 1e-6);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn fraclap_semigroup(seed in 0u64..1000, s0 in 0.0f64..2.0, s1 in 0.0f64..2.0) {
            let dom = DomainSpec::new(1, 7.0, 64).unwrap();
            let f = random(&dom, seed, 12);
            let a = fractional_laplacian(&fractional_laplacian(&f, s0).unwrap(), s1).unwrap();
            let b = fractional_laplacian(&f, s0 + s1).unwrap();
            prop_assert!(rel_sup(&a, &b) < 1e-10);
        }

        #[test]
        fn riesz_inverts_fraclap(seed in 0u64..1000, s in 0.05f64..1.95) {
            let dom = DomainSpec::new(2, 3.0, 16).unwrap();
            let f = random(&dom, seed, 5).add(&SampledField::constant(dom, 1.0)).unwrap();
            let target = f.project_mean_zero();
            let a = riesz_potential(&fractional_laplacian(&f, s).unwrap(), s).unwrap();
            let b = fractional_laplacian(&riesz_potential(&f, s).unwrap(), s).unwrap();
            prop_assert!(rel_sup(&a, &target) < 1e-10);
            prop_assert!(rel_sup(&b, &target) < 1e-10);
        }

        #[test]
        fn multipliers_are_linear(seed in 0u64..1000, c in -3.0f64..3.0, s in 0.1f64..0.9) {
            let dom = DomainSpec::new(1, 4.0, 32).unwrap();
            let f = random(&dom, seed, 6);
            let g = random(&dom, seed + 1, 6);
            let lhs = riesz_potential(&f.scale(c).add(&g).unwrap(), s).unwrap();
            let rhs = riesz_potential(&f, s).unwrap().scale(c).add(&riesz_potential(&g, s).unwrap()).unwrap();
            prop_assert!(lhs.sub(&rhs).unwrap().sup_norm() <= 1e-12 * (1.0 + lp_norm(&rhs, f64::INFINITY).unwrap()));
        }
    }
}
