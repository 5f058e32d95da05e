//! Exponent arithmetic linking the inequalities, generic over the scalar so it
//! runs exactly on rationals as well as on `f64`.
//!
//! ```
//! use hedberg::relations::{hedberg_theta, sobolev_conjugate};
//! use num_rational::Ratio;
//!
//! let q = sobolev_conjugate(4, Ratio::from(1i64), Ratio::from(2i64)).unwrap();
//! assert_eq!(q, Ratio::from(4i64));
//! assert_eq!(hedberg_theta(1.0, 0.0, 1.0).unwrap(), 0.5);
//! ```

use num_traits::{FromPrimitive, Num};
use std::fmt::{Debug, Display};

use crate::error::{Error, Result};

/// Scalars the exponent relations can be evaluated in.
pub trait ExponentScalar: Num + Clone + PartialOrd + FromPrimitive + Debug + Display {}

impl<T: Num + Clone + PartialOrd + FromPrimitive + Debug + Display> ExponentScalar for T {}

pub const GATE_SOBOLEV: &str = "sobolev-range (1 < p, 0 < s < n/p)";
pub const GATE_HEDBERG: &str = "hedberg-exponents (0 <= s1 < s, beta > 0)";
pub const GATE_RIESZ: &str = "riesz-order (0 < s < n)";
pub const GATE_YOUNG_ONEIL: &str = "young-oneil (0 < 1/r + 1/p - 1 < 1)";
pub const GATE_MIXED: &str = "mixed-range (0 < s < n/frak_p, 1 < frak_p)";
pub const GATE_SMOOTHNESS: &str = "smoothness-range (0 < s < n)";
pub const GATE_NABLA2: &str = "nabla2-condition (A(r) <= A(C r) / (2C) for some C > 1)";

/// `0 < s < n`.
pub fn smoothness_in_range<T: ExponentScalar>(n: usize, s: T) -> Result<()> {
    let nn: T = lift(n);
    if !(s > T::zero() && s < nn) {
        return gate(GATE_SMOOTHNESS, format!("n = {n}, s = {s}"));
    }
    Ok(())
}

fn lift<T: ExponentScalar>(n: usize) -> T {
    T::from_usize(n).expect("dimension fits the scalar type")
}

fn gate<T: Debug>(name: &'static str, detail: String) -> Result<T> {
    Err(Error::gate(name, detail))
}

/// `q = n p / (n - s p)`, so that `1/q = 1/p - s/n`.
pub fn sobolev_conjugate<T: ExponentScalar>(n: usize, s: T, p: T) -> Result<T> {
    let nn: T = lift(n);
    if !(p > T::one() && s > T::zero() && s.clone() * p.clone() < nn) {
        return gate(GATE_SOBOLEV, format!("n = {n}, s = {s}, p = {p}"));
    }
    Ok(nn.clone() * p.clone() / (nn - s * p))
}

/// `theta = (s - s1) / (beta + s)`.
pub fn hedberg_theta<T: ExponentScalar>(s: T, s1: T, beta: T) -> Result<T> {
    if !(s1 >= T::zero() && s1 < s && beta > T::zero()) {
        return gate(GATE_HEDBERG, format!("s = {s}, s1 = {s1}, beta = {beta}"));
    }
    Ok((s.clone() - s1) / (beta + s))
}

/// `r = n / (n - s)`: the weak-Lorentz exponent of the Riesz kernel.
pub fn lorentz_exponent<T: ExponentScalar>(n: usize, s: T) -> Result<T> {
    let nn: T = lift(n);
    if !(s > T::zero() && s < nn) {
        return gate(GATE_RIESZ, format!("n = {n}, s = {s}"));
    }
    Ok(nn.clone() / (nn - s))
}

/// `q` from `1 + 1/q = 1/r + 1/p`.
pub fn young_oneil_exponent<T: ExponentScalar>(r: T, p: T) -> Result<T> {
    let inv = T::one() / r.clone() + T::one() / p.clone() - T::one();
    if !(inv > T::zero() && inv < T::one()) {
        return gate(GATE_YOUNG_ONEIL, format!("r = {r}, p = {p}"));
    }
    Ok(T::one() / inv)
}

/// Pointwise `q(x)` from `1/q(x) = 1/p(x) - s/n`, for one value of `p(x)`.
pub fn q_pointwise<T: ExponentScalar>(p: T, s: T, n: usize) -> Result<T> {
    sobolev_conjugate(n, s, p)
}

/// `sigma(x) = n p(x) / (n - s frak_p)`, for one value of `p(x)`.
pub fn sigma_exponent<T: ExponentScalar>(n: usize, s: T, frak_p: T, p: T) -> Result<T> {
    let nn: T = lift(n);
    if !(frak_p > T::one() && s > T::zero() && s.clone() * frak_p.clone() < nn) {
        return gate(GATE_MIXED, format!("n = {n}, s = {s}, frak_p = {frak_p}"));
    }
    Ok(nn.clone() * p / (nn - s * frak_p))
}

/// `theta = s frak_p / n`, the interpolation parameter when `beta = n/frak_p - s`.
pub fn mixed_theta<T: ExponentScalar>(n: usize, s: T, frak_p: T) -> Result<T> {
    let nn: T = lift(n);
    if !(frak_p > T::one() && s > T::zero() && s.clone() * frak_p.clone() < nn) {
        return gate(GATE_MIXED, format!("n = {n}, s = {s}, frak_p = {frak_p}"));
    }
    Ok(s * frak_p / nn)
}

/// Outcome of cross-checking the relations against each other at one
/// `(n, s, p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyCheck<T> {
    pub q: T,
    pub r: T,
    /// `1/q = 1/p - s/n`.
    pub reciprocal_identity: bool,
    /// Young-O'Neil with the Lorentz exponent reproduces `q`.
    pub young_oneil_matches: bool,
    /// Pointwise `q(x)` at a constant `p` reproduces `q`.
    pub pointwise_matches: bool,
    /// `sigma` at `p(.) = frak_p = p` reproduces `q`.
    pub sigma_matches: bool,
    /// `theta` from `(s, 0, n/p - s)` equals `s p / n`.
    pub mixed_theta_matches: bool,
}

impl<T> ConsistencyCheck<T> {
    pub fn all_hold(&self) -> bool {
        self.reciprocal_identity
            && self.young_oneil_matches
            && self.pointwise_matches
            && self.sigma_matches
            && self.mixed_theta_matches
    }
}

/// Evaluate every relation at `(n, s, p)` and compare them exactly.
pub fn consistency_check<T: ExponentScalar>(n: usize, s: T, p: T) -> Result<ConsistencyCheck<T>> {
    let nn: T = lift(n);
    let one = T::one();
    let q = sobolev_conjugate(n, s.clone(), p.clone())?;
    let r = lorentz_exponent(n, s.clone())?;
    let reciprocal_identity = one.clone() / q.clone() == one.clone() / p.clone() - s.clone() / nn.clone();
    let young_oneil_matches = young_oneil_exponent(r.clone(), p.clone())? == q;
    let pointwise_matches = q_pointwise(p.clone(), s.clone(), n)? == q;
    let sigma_matches = sigma_exponent(n, s.clone(), p.clone(), p.clone())? == q;
    let beta = nn.clone() / p.clone() - s.clone();
    let mixed_theta_matches = hedberg_theta(s.clone(), T::zero(), beta)? == mixed_theta(n, s, p)?;
    Ok(ConsistencyCheck {
        q,
        r,
        reciprocal_identity,
        young_oneil_matches,
        pointwise_matches,
        sigma_matches,
        mixed_theta_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(a: i64, b: i64) -> Q {
        Ratio::new(a, b)
    }

    #[test]
    fn sobolev_examples() {
        assert_eq!(sobolev_conjugate(4, q(1, 1), q(2, 1)).unwrap(), q(4, 1));
        assert_eq!(sobolev_conjugate(2, q(1, 2), q(2, 1)).unwrap(), q(4, 1));
        let err = sobolev_conjugate(1, q(1, 2), q(2, 1)).unwrap_err();
        assert_eq!(err.gate_name(), Some(GATE_SOBOLEV));
        let near: f64 = sobolev_conjugate(3, 1e-12, 2.0).unwrap();
        assert!((near - 2.0).abs() < 1e-11);
    }

    #[test]
    fn hedberg_examples() {
        assert_eq!(hedberg_theta(q(1, 1), q(0, 1), q(1, 1)).unwrap(), q(1, 2));
        assert_eq!(hedberg_theta(q(1, 1), q(1, 1), q(1, 1)).unwrap_err().gate_name(), Some(GATE_HEDBERG));
        assert!(hedberg_theta(1.0, 0.2, 0.0).is_err());
        // beta = n / frak_p - s with n = 2, frak_p = 2, s = 1/2
        let beta = q(2, 2) - q(1, 2);
        assert_eq!(hedberg_theta(q(1, 2), q(0, 1), beta).unwrap(), q(1, 2));
        assert_eq!(mixed_theta(2, q(1, 2), q(2, 1)).unwrap(), q(1, 2));
    }

    #[test]
    fn young_oneil_example() {
        let r = lorentz_exponent(3, q(1, 1)).unwrap();
        assert_eq!(r, q(3, 2));
        assert_eq!(young_oneil_exponent(r, q(2, 1)).unwrap(), q(6, 1));
        assert_eq!(sobolev_conjugate(3, q(1, 1), q(2, 1)).unwrap(), q(6, 1));
        assert!(young_oneil_exponent(q(3, 2), q(3, 1)).is_err());
    }

    #[test]
    fn sigma_example() {
        assert_eq!(sigma_exponent(2, q(1, 2), q(2, 1), q(3, 2)).unwrap(), q(3, 1));
        assert_eq!(sigma_exponent(2, q(1, 2), q(2, 1), q(3, 1)).unwrap(), q(6, 1));
        assert!(sigma_exponent(2, q(1, 1), q(2, 1), q(3, 1)).is_err());
    }

    #[test]
    fn consistency_on_rational_grid() {
        for n in 1..=4usize {
            for p in [q(3, 2), q(2, 1), q(3, 1)] {
                for i in 1..10 {
                    let s = Q::from(n as i64) / p * q(i, 10);
                    let c = consistency_check(n, s, p).unwrap();
                    assert!(c.all_hold(), "n={n} p={p} s={s}: {c:?}");
                }
            }
        }
    }
}
