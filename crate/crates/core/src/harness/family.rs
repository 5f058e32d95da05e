use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::SampledField;
use crate::generators::{sample, GeneratorSpec};
use crate::grid::DomainSpec;

/// Members of the standard family, in the order they are drawn.
pub const STANDARD_FAMILY_SIZE: usize = 20;

/// Test functions sharing one grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionFamily {
    pub domain: DomainSpec,
    pub members: Vec<GeneratorSpec>,
    pub seed: u64,
}

impl FunctionFamily {
    pub fn explicit(domain: DomainSpec, members: Vec<GeneratorSpec>, seed: u64) -> Result<Self> {
        domain.validate()?;
        if members.is_empty() {
            return Err(Error::InvalidGenerator("function family is empty".into()));
        }
        Ok(FunctionFamily { domain, members, seed })
    }

    /// The standard mix: five heat-kernel Gaussians of increasing width, five
    /// bumps, five single modes and five random band-limited fields.
    ///
    /// Lengths scale with the cube (unit `L/32` in 1-D, `L/16` in 2-D), and
    /// kinds are interleaved so that the first `size` members stay mixed.
    pub fn standard(domain: DomainSpec, seed: u64, size: usize) -> Result<Self> {
        domain.validate()?;
        if size == 0 || size > STANDARD_FAMILY_SIZE {
            return Err(Error::param(
                "size",
                format!("standard family holds 1 to {STANDARD_FAMILY_SIZE} members, got {size}"),
            ));
        }
        let two_d = domain.dimension == 2;
        let unit = domain.period / if two_d { 16.0 } else { 32.0 };
        let sigmas: [f64; 5] = if two_d {
            [0.5, 0.55, 0.6, 0.65, 0.7]
        } else {
            [0.5, 0.75, 1.0, 1.25, 1.5]
        };
        let gauss_centers = [[-2.0, 0.5], [1.5, -1.0], [0.0, 0.0], [-0.5, 1.0], [0.25, -0.25]];
        let radii = [1.0, 1.5, 2.0, 3.0, 4.0];
        let bump_centers = [[3.0, -2.0], [-2.0, 1.5], [1.0, 0.0], [0.0, -1.0], [-1.0, 0.5]];
        let modes_1d = [[1, 0], [2, 0], [3, 0], [5, 0], [8, 0]];
        let modes_2d = [[1, 0], [0, 2], [1, 1], [2, 3], [4, -1]];
        let center = |c: [f64; 2]| -> Vec<f64> {
            c[..domain.dimension].iter().map(|v| v * unit).collect()
        };
        let members = (0..size)
            .map(|i| {
                let v = i / 4;
                match i % 4 {
                    0 => GeneratorSpec::Gaussian {
                        sigma: sigmas[v] * unit,
                        center: center(gauss_centers[v]),
                    },
                    1 => GeneratorSpec::SmoothBump {
                        radius: radii[v] * unit,
                        center: center(bump_centers[v]),
                    },
                    2 => {
                        let k = if two_d { modes_2d[v] } else { modes_1d[v] };
                        GeneratorSpec::FourierMode {
                            k: k[..domain.dimension].to_vec(),
                        }
                    }
                    _ => GeneratorSpec::RandomBandLimited {
                        seed: seed + v as u64,
                        max_band: 6,
                    },
                }
            })
            .collect();
        Ok(FunctionFamily { domain, members, seed })
    }

    /// Same members on the grid with twice as many points per axis.
    pub fn refined(&self) -> Self {
        FunctionFamily {
            domain: self.domain.refined(),
            ..self.clone()
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Largest boundary leak among the localized members (Gaussians and
    /// bumps), sampled before mean removal.
    pub fn localized_boundary_leak(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for g in &self.members {
            if matches!(g, GeneratorSpec::Gaussian { .. } | GeneratorSpec::SmoothBump { .. }) {
                worst = worst.max(sample(&self.domain, g)?.boundary_leak());
            }
        }
        Ok(worst)
    }

    /// Sample every member and remove its mean.
    pub fn sample_all(&self) -> Result<Vec<SampledField>> {
        self.members
            .iter()
            .map(|g| sample(&self.domain, g).map(|f| f.project_mean_zero()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_family_resolves_on_default_grids() {
        for dom in [DomainSpec::new(1, 32.0, 128).unwrap(), DomainSpec::new(2, 16.0, 64).unwrap()] {
            let fam = FunctionFamily::standard(dom, 0, 20).unwrap();
            let fields = fam.sample_all().unwrap();
            assert_eq!(fields.len(), 20);
            for (g, f) in fam.members.iter().zip(&fields) {
                assert!(f.mean().norm() <= 1e-12 * f.sup_norm().max(1e-300), "{g:?}");
                if !matches!(g, GeneratorSpec::FourierMode { .. } | GeneratorSpec::RandomBandLimited { .. }) {
                    let raw = sample(&dom, g).unwrap();
                    assert!(raw.boundary_leak() < 1e-10, "{g:?}: {}", raw.boundary_leak());
                }
            }
            assert!(fam.refined().sample_all().is_ok());
        }
    }

    #[test]
    fn size_prefix_stays_mixed() {
        let dom = DomainSpec::new(1, 32.0, 128).unwrap();
        let fam = FunctionFamily::standard(dom, 3, 4).unwrap();
        assert!(matches!(fam.members[0], GeneratorSpec::Gaussian { .. }));
        assert!(matches!(fam.members[3], GeneratorSpec::RandomBandLimited { seed: 3, .. }));
        assert!(FunctionFamily::standard(dom, 0, 21).is_err());
        assert!(FunctionFamily::explicit(dom, vec![], 0).is_err());
    }
}
