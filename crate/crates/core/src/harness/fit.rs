use serde::Serialize;

/// Relative threshold below which a right-hand side counts as degenerate.
pub const SKIP_THRESHOLD: f64 = 1e-14;

/// Running maximum of `lhs / rhs` over a family.
///
/// `lhs_max` and `rhs_at_max` are the two sides at the point (or member)
/// that attains the maximum, so `c_fit = lhs_max / rhs_at_max`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Fit {
    pub lhs_max: f64,
    pub rhs_at_max: f64,
    pub c_fit: Option<f64>,
    /// Grid points (pointwise inequalities) or members (norm inequalities)
    /// left out because the right-hand side was degenerate.
    pub skipped: usize,
    pub observed: usize,
}

impl Fit {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, lhs: f64, rhs: f64) {
        self.observed += 1;
        let ratio = lhs / rhs;
        if self.c_fit.is_none_or(|c| ratio > c || ratio.is_nan()) {
            self.c_fit = Some(ratio);
            self.lhs_max = lhs;
            self.rhs_at_max = rhs;
        }
    }

    /// One member of a pointwise inequality `lhs(x) <= C rhs(x)`. Points with
    /// `rhs < SKIP_THRESHOLD * max rhs` are skipped.
    pub fn pointwise(&mut self, lhs: &[f64], rhs: &[f64]) {
        let scale = rhs.iter().copied().fold(0.0, f64::max);
        for (&l, &r) in lhs.iter().zip(rhs) {
            if scale == 0.0 || r < SKIP_THRESHOLD * scale {
                self.skipped += 1;
            } else {
                self.push(l, r);
            }
        }
    }

    /// One member of a norm inequality. `scale` is a size of the member
    /// (its sup norm, say); the member is skipped when `rhs` is negligible
    /// against it.
    pub fn norm(&mut self, lhs: f64, rhs: f64, scale: f64) {
        if rhs <= 0.0 || rhs < SKIP_THRESHOLD * scale {
            self.skipped += 1;
        } else {
            self.push(lhs, rhs);
        }
    }

    /// Finite, non-negative fitted constant.
    pub fn is_finite(&self) -> bool {
        self.c_fit.is_some_and(|c| c.is_finite() && c >= 0.0)
    }
}

/// `fine / coarse`, when both are finite and `coarse > 0`.
pub fn refinement_ratio(coarse: &Fit, fine: &Fit) -> Option<f64> {
    match (coarse.c_fit, fine.c_fit) {
        (Some(c), Some(f)) if c > 0.0 && c.is_finite() && f.is_finite() => Some(f / c),
        _ => None,
    }
}

/// The accepted window for `refinement_ratio`.
pub fn ratio_stable(ratio: Option<f64>) -> bool {
    ratio.is_some_and(|r| (0.5..=2.0).contains(&r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pointwise_tracks_argmax_and_skips() {
        let mut fit = Fit::new();
        fit.pointwise(&[1.0, 3.0, 5.0], &[1.0, 1.0, 1e-20]);
        assert_eq!(fit.c_fit, Some(3.0));
        assert_eq!((fit.lhs_max, fit.rhs_at_max), (3.0, 1.0));
        assert_eq!((fit.skipped, fit.observed), (1, 2));
        fit.pointwise(&[1.0], &[0.0]);
        assert_eq!(fit.skipped, 2);
    }

    #[test]
    fn norm_skips_degenerate_members() {
        let mut fit = Fit::new();
        fit.norm(0.0, 0.0, 0.0);
        assert!(fit.c_fit.is_none());
        assert!(!fit.is_finite());
        fit.norm(2.0, 4.0, 1.0);
        fit.norm(1.0, 4.0, 1.0);
        assert_eq!(fit.c_fit, Some(0.5));
        let mut fine = Fit::new();
        fine.norm(3.0, 4.0, 1.0);
        assert_eq!(refinement_ratio(&fit, &fine), Some(1.5));
        assert!(ratio_stable(Some(1.5)));
        assert!(!ratio_stable(Some(2.5)));
        assert!(!ratio_stable(None));
    }
}
