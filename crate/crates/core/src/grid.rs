//! Periodic grids, their frequency lattices, and log-uniform parameter grids.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// A uniform periodic grid on the cube `[-L/2, L/2)^n`.
///
/// Grid points are `x_m = -L/2 + m h` with `h = L / N` on every axis. Flat
/// storage is row-major with axis 0 varying fastest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainSpec {
    pub dimension: usize,
    pub period: f64,
    pub points_per_axis: usize,
}

impl DomainSpec {
    pub fn new(dimension: usize, period: f64, points_per_axis: usize) -> Result<Self> {
        let d = DomainSpec {
            dimension,
            period,
            points_per_axis,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dimension == 1 || self.dimension == 2) {
            return Err(Error::InvalidDomain(format!(
                "dimension must be 1 or 2, got {}",
                self.dimension
            )));
        }
        if !(self.period.is_finite() && self.period > 0.0) {
            return Err(Error::InvalidDomain(format!(
                "period must be positive, got {}",
                self.period
            )));
        }
        let n = self.points_per_axis;
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidDomain(format!(
                "points per axis must be a power of two >= 8, got {n}"
            )));
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        self.period / self.points_per_axis as f64
    }

    /// Total number of grid points, `N^n`.
    pub fn len(&self) -> usize {
        self.points_per_axis.pow(self.dimension as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Riemann-sum weight of one cell, `h^n`.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dimension as i32)
    }

    /// Measure of the whole cube, `L^n`.
    pub fn measure(&self) -> f64 {
        self.period.powi(self.dimension as i32)
    }

    pub fn coordinate(&self, m: usize) -> f64 {
        -0.5 * self.period + m as f64 * self.spacing()
    }

    /// Per-axis indices of a flat index.
    pub fn multi_index(&self, flat: usize) -> [usize; 2] {
        let n = self.points_per_axis;
        match self.dimension {
            1 => [flat, 0],
            _ => [flat % n, flat / n],
        }
    }

    pub fn flat_index(&self, idx: [usize; 2]) -> usize {
        match self.dimension {
            1 => idx[0],
            _ => idx[0] + self.points_per_axis * idx[1],
        }
    }

    /// Coordinates of a flat grid index (unused axes are zero).
    pub fn point(&self, flat: usize) -> [f64; 2] {
        let [i, j] = self.multi_index(flat);
        match self.dimension {
            1 => [self.coordinate(i), 0.0],
            _ => [self.coordinate(i), self.coordinate(j)],
        }
    }

    /// Minimal-image displacement `x - c` on the torus, per axis.
    pub fn torus_displacement(&self, x: [f64; 2], c: [f64; 2]) -> [f64; 2] {
        let l = self.period;
        let wrap = |d: f64| d - l * (d / l).round();
        match self.dimension {
            1 => [wrap(x[0] - c[0]), 0.0],
            _ => [wrap(x[0] - c[0]), wrap(x[1] - c[1])],
        }
    }

    /// Same cube with twice as many points per axis.
    pub fn refined(&self) -> Self {
        DomainSpec {
            points_per_axis: 2 * self.points_per_axis,
            ..*self
        }
    }

    pub fn frequencies(&self) -> FrequencyGrid {
        FrequencyGrid::new(*self)
    }

    pub fn same_grid(&self, other: &DomainSpec) -> bool {
        self.dimension == other.dimension
            && self.points_per_axis == other.points_per_axis
            && self.period == other.period
    }
}

/// Integer wavenumber for array index `i` of an `n`-point FFT, in `[-n/2, n/2)`.
pub fn wavenumber(i: usize, n: usize) -> i64 {
    if i < n / 2 {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

/// Array index holding wavenumber `k`, if `k` lies in `[-n/2, n/2)`.
pub fn wavenumber_index(k: i64, n: usize) -> Option<usize> {
    let half = (n / 2) as i64;
    if k < -half || k >= half {
        None
    } else if k >= 0 {
        Some(k as usize)
    } else {
        Some((k + n as i64) as usize)
    }
}

/// Angular frequencies `xi_k = 2 pi k / L` of a [`DomainSpec`], in FFT order.
#[derive(Debug, Clone)]
pub struct FrequencyGrid {
    domain: DomainSpec,
    /// `|xi|` per flat index.
    magnitude: Vec<f64>,
}

impl FrequencyGrid {
    pub fn new(domain: DomainSpec) -> Self {
        let n = domain.points_per_axis;
        let unit = 2.0 * PI / domain.period;
        let magnitude = (0..domain.len())
            .map(|flat| {
                let [i, j] = domain.multi_index(flat);
                let k0 = wavenumber(i, n) as f64;
                let k1 = if domain.dimension == 2 {
                    wavenumber(j, n) as f64
                } else {
                    0.0
                };
                unit * (k0 * k0 + k1 * k1).sqrt()
            })
            .collect();
        FrequencyGrid { domain, magnitude }
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    /// `|xi|` at each flat spectral index; zero only at the zero mode.
    pub fn magnitudes(&self) -> &[f64] {
        &self.magnitude
    }

    /// Smallest nonzero `|xi|`, i.e. `2 pi / L`.
    pub fn min_nonzero(&self) -> f64 {
        2.0 * PI / self.domain.period
    }

    /// Largest `|xi|` on the grid (the Nyquist corner).
    pub fn max_magnitude(&self) -> f64 {
        self.magnitude.iter().copied().fold(0.0, f64::max)
    }

    /// Nyquist frequency along one axis, `pi N / L`.
    pub fn nyquist(&self) -> f64 {
        PI * self.domain.points_per_axis as f64 / self.domain.period
    }
}

/// Log-uniformly spaced positive values on `[min, max]`.
///
/// Used for heat-flow times, quadrature nodes in `t`, and scan grids.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogGrid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl LogGrid {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        let g = LogGrid { min, max, count };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::param("grid", "log grid must be nonempty"));
        }
        if !(self.min > 0.0 && self.min.is_finite() && self.max.is_finite()) {
            return Err(Error::param(
                "grid",
                format!("log grid endpoints must be positive, got [{}, {}]", self.min, self.max),
            ));
        }
        if self.count > 1 && self.max <= self.min {
            return Err(Error::param(
                "grid",
                format!("log grid must be increasing, got [{}, {}]", self.min, self.max),
            ));
        }
        Ok(())
    }

    /// Spacing in `ln` of consecutive nodes.
    pub fn log_step(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            (self.max / self.min).ln() / (self.count - 1) as f64
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let lmin = self.min.ln();
        let step = self.log_step();
        (0..self.count)
            .map(|i| {
                if i == 0 {
                    self.min
                } else if i + 1 == self.count {
                    self.max
                } else {
                    (lmin + step * i as f64).exp()
                }
            })
            .collect()
    }

    /// Trapezoid weights for integrating over `ln t` on these nodes.
    pub fn log_trapezoid_weights(&self) -> Vec<f64> {
        let step = self.log_step();
        (0..self.count)
            .map(|i| {
                if i == 0 || i + 1 == self.count {
                    0.5 * step
                } else {
                    step
                }
            })
            .collect()
    }

    /// Default heat-flow time grid: `t` from `(h/pi)^2` to `(L/2)^2`, 128 nodes.
    pub fn heat_times(domain: &DomainSpec) -> Self {
        let h = domain.spacing();
        LogGrid {
            min: (h / PI).powi(2),
            max: (0.5 * domain.period).powi(2),
            count: 128,
        }
    }

    /// Quadrature grid for the Riemann-Liouville `t`-integral.
    ///
    /// Nodes are spaced `0.2` apart in `ln t` and hang down from
    /// `t_max = e^4 (L / 2 pi)^2`, so adding nodes pushes `t_min` further
    /// toward zero. The large-`t` tail beyond `t_max` is below `e^{-54}`
    /// for mean-zero fields.
    pub fn riemann_liouville(domain: &DomainSpec, count: usize) -> Self {
        const LOG_STEP: f64 = 0.2;
        let max = (domain.period / (2.0 * PI)).powi(2) * 4f64.exp();
        let min = max * (-LOG_STEP * (count.max(2) - 1) as f64).exp();
        LogGrid { min, max, count }
    }

    /// Same range with twice as many nodes.
    pub fn doubled(&self) -> Self {
        LogGrid {
            count: 2 * self.count,
            ..*self
        }
    }
}
