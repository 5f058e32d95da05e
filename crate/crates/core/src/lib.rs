//! Numerical checks of Hedberg-type pointwise inequalities and the Sobolev
//! inequalities they imply, on periodic grids in one and two dimensions.
//!
//! The building blocks are spectral operators ([`spectral`]), maximal
//! functions ([`maximal`]), variable-exponent and Orlicz norms ([`norms`])
//! and negative-smoothness Besov norms ([`besov`]). The [`harness`] fits the
//! constant of each inequality over a family of test functions and checks it
//! is stable under grid refinement.

pub mod besov;
pub mod error;
pub mod exponent;
pub mod field;
pub mod generators;
pub mod grid;
pub mod harness;
pub mod maximal;
pub mod norms;
pub mod relations;
pub mod selftest;
pub mod spectral;

#[cfg(test)]
mod test_support;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/norms.md")]
    mod norms {}
    #[doc = include_str!("../../../book/src/exponents.md")]
    mod exponents {}
    #[doc = include_str!("../../../book/src/harness.md")]
    mod harness {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/acceptance.md")]
    mod acceptance {}
}

pub use error::{Error, Result};
