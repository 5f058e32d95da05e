//! Discrete Hardy-Littlewood maximal function, maximal functions with respect
//! to a smooth profile, and the weak-Lorentz quasi-norm.

use rayon::prelude::*;

use crate::besov::phi_hat;
use crate::error::{Error, Result};
use crate::field::{dft, idft, SampledField};
use crate::grid::{DomainSpec, LogGrid};

/// Euclidean balls on the torus, centred at grid points.
///
/// Radii are measured in grid cells. A ball of radius `rho` holds every cell
/// whose integer displacement `d` satisfies `|d| < rho`, so radius 1 is the
/// centre cell alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallFamily {
    radii: Vec<usize>,
}

impl BallFamily {
    /// Radii `L/2, L/4, ..., h`, i.e. `N/2, N/4, ..., 1` cells.
    pub fn dyadic(domain: &DomainSpec) -> Self {
        let mut radii = Vec::new();
        let mut r = domain.points_per_axis / 2;
        while r >= 1 {
            radii.push(r);
            r /= 2;
        }
        BallFamily { radii }
    }

    /// Arbitrary strictly decreasing radii in cells, ending at 1 and not
    /// exceeding `N/2`.
    pub fn from_cells(domain: &DomainSpec, radii: Vec<usize>) -> Result<Self> {
        let decreasing = radii.windows(2).all(|w| w[0] > w[1]);
        let fits = radii.first().is_some_and(|&r| r <= domain.points_per_axis / 2);
        if !decreasing || !fits || radii.last() != Some(&1) {
            return Err(Error::param(
                "radii",
                format!(
                    "ball radii must decrease strictly from at most N/2 = {} down to 1 cell, got {radii:?}",
                    domain.points_per_axis / 2
                ),
            ));
        }
        Ok(BallFamily { radii })
    }

    pub fn radii_cells(&self) -> &[usize] {
        &self.radii
    }

    /// Radii in length units.
    pub fn radii(&self, domain: &DomainSpec) -> Vec<f64> {
        let h = domain.spacing();
        self.radii.iter().map(|&r| r as f64 * h).collect()
    }
}

/// Half-width of the row at vertical offset `dy` inside the open ball of
/// radius `rho`: the largest `w` with `w^2 + dy^2 < rho^2`.
fn half_width(rho: usize, dy: usize) -> usize {
    let room = rho * rho - dy * dy - 1;
    let mut w = (room as f64).sqrt() as usize;
    while w * w > room {
        w -= 1;
    }
    while (w + 1) * (w + 1) <= room {
        w += 1;
    }
    w
}

/// Cells in the open ball of radius `rho` in dimension `dim`.
pub fn ball_cell_count(dim: usize, rho: usize) -> usize {
    match dim {
        1 => 2 * rho - 1,
        _ => (0..rho)
            .map(|dy| {
                let row = 2 * half_width(rho, dy) + 1;
                if dy == 0 {
                    row
                } else {
                    2 * row
                }
            })
            .sum(),
    }
}

/// `M f(x) = max_r (cells in B(x, r))^{-1} sum_{y in B(x, r)} |f(y)|`.
pub fn hl_maximal(field: &SampledField, balls: &BallFamily) -> SampledField {
    let domain = *field.domain();
    let n = domain.points_per_axis;
    let rows = if domain.dimension == 1 { 1 } else { n };
    let moduli = field.abs();
    // periodic prefix sums per row, over the row repeated twice
    let prefix: Vec<Vec<f64>> = moduli
        .chunks(n)
        .map(|row| {
            let mut p = Vec::with_capacity(2 * n + 1);
            p.push(0.0);
            let mut acc = 0.0;
            for &v in row.iter().chain(row) {
                acc += v;
                p.push(acc);
            }
            p
        })
        .collect();
    let window = |row: usize, x: usize, w: usize| {
        let start = (x + n - w) % n;
        prefix[row][start + 2 * w + 1] - prefix[row][start]
    };

    let mut out = moduli.clone();
    for &rho in balls.radii_cells().iter().filter(|&&r| r > 1) {
        let count = ball_cell_count(domain.dimension, rho) as f64;
        let max_dy = if domain.dimension == 1 { 0 } else { rho - 1 };
        let widths: Vec<usize> = (0..=max_dy).map(|dy| half_width(rho, dy)).collect();
        out.par_chunks_mut(n).enumerate().for_each(|(y, out_row)| {
            for (x, best) in out_row.iter_mut().enumerate() {
                let mut sum = window(y, x, widths[0]);
                for (dy, &w) in widths.iter().enumerate().skip(1) {
                    sum += window((y + dy) % rows, x, w) + window((y + rows - dy) % rows, x, w);
                }
                *best = best.max(sum / count);
            }
        });
    }
    SampledField::from_real(domain, &out).expect("same grid")
}

/// Radial profile `phi` given through its Fourier transform; `phi_t` has
/// transform `phi_hat(sqrt(t) xi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SmoothProfile {
    /// `exp(-|xi|^2)`: `phi_t` is the heat kernel at time `t`.
    Heat,
    /// `|xi|^{2k} exp(-|xi|^2)`: the kernel of `(-Delta)^k h_t`, rescaled.
    HeatLaplacian { k: u32 },
    /// The Littlewood-Paley cutoff: 1 on `|xi| <= 1/2`, 0 beyond 1.
    LittlewoodPaley,
}

impl SmoothProfile {
    pub fn fourier(&self, xi: f64) -> f64 {
        match *self {
            SmoothProfile::Heat => (-xi * xi).exp(),
            SmoothProfile::HeatLaplacian { k } => (xi * xi).powi(k as i32) * (-xi * xi).exp(),
            SmoothProfile::LittlewoodPaley => phi_hat(xi),
        }
    }

    pub fn name(&self) -> String {
        match self {
            SmoothProfile::Heat => "heat".into(),
            SmoothProfile::HeatLaplacian { k } => format!("heat_laplacian_{k}"),
            SmoothProfile::LittlewoodPaley => "littlewood_paley".into(),
        }
    }
}

/// `M_phi f(x) = max_t |f * phi_t(x)|` over the nodes of `t_grid`.
pub fn phi_maximal(field: &SampledField, phi: SmoothProfile, t_grid: &LogGrid) -> Result<SampledField> {
    t_grid.validate()?;
    let coeffs = dft(field);
    let mags = field.domain().frequencies().magnitudes().to_vec();
    let mut best = vec![0.0f64; field.domain().len()];
    for t in t_grid.nodes() {
        let root = t.sqrt();
        let g = idft(&coeffs.multiplied(|i| phi.fourier(root * mags[i])));
        for (b, v) in best.iter_mut().zip(g.values()) {
            *b = b.max(v.norm());
        }
    }
    SampledField::from_real(*field.domain(), &best)
}

/// `sup_{lambda > 0} lambda d_f(lambda)^{1/r}` with `d_f` the Riemann-sum
/// measure of `{|f| > lambda}`.
///
/// The supremum is attained as `lambda` approaches one of the values of
/// `|f|` from below, so only those values are scanned.
pub fn weak_lorentz_norm(field: &SampledField, r: f64) -> Result<f64> {
    if r.is_nan() || r < 1.0 {
        return Err(Error::param("r", format!("Lorentz exponent must be >= 1, got {r}")));
    }
    let mut moduli = field.abs();
    moduli.sort_by(|a, b| b.total_cmp(a));
    if r.is_infinite() {
        return Ok(moduli.first().copied().unwrap_or(0.0));
    }
    let cell = field.domain().cell_volume();
    let mut best = 0.0f64;
    let mut i = 0;
    while i < moduli.len() && moduli[i] > 0.0 {
        let v = moduli[i];
        while i < moduli.len() && moduli[i] == v {
            i += 1;
        }
        best = best.max(v * (cell * i as f64).powf(1.0 / r));
    }
    Ok(best)
}
