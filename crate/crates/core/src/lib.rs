//! Best lower and upper rational approximations of the ℓ-th kind, computed
//! with exact continued-fraction arithmetic, plus the spectral-gap count of
//! rectangular lattice quantum graphs that depends on them.
//!
//! The guide in `book/` walks through the concepts; its code blocks run as
//! doc-tests of this crate.

pub mod cf;
pub mod classify;
pub mod error;
pub mod numeric;
pub mod spectral;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/continued-fractions.md")]
    mod continued_fractions {}
    #[doc = include_str!("../../../book/src/one-sided.md")]
    mod one_sided {}
    #[doc = include_str!("../../../book/src/third-kind.md")]
    mod third_kind {}
    #[doc = include_str!("../../../book/src/spectral-gaps.md")]
    mod spectral_gaps {}
}
