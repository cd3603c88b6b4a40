//! Connected étale algebras in multiplicity-free modular fusion categories.
//!
//! The pipeline runs from a fusion ring to its characters, modular data and
//! algebra candidates, then filters candidates and condenses the survivors.
//! Arithmetic is exact throughout, in cyclotomic fields.

#![allow(clippy::needless_range_loop, clippy::suspicious_arithmetic_impl)]

pub mod catalogue;
pub mod condensation;
pub mod error;
pub mod etale_classifier;
pub mod exactnum;
pub mod fusion_ring;
pub mod modular_data;
pub mod physics;
pub mod report;

pub use error::{Error, Result};
pub use exactnum::{Cyclo, Rational};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    pub mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/fusion-rings.md")]
    pub mod fusion_rings {}
    #[doc = include_str!("../../../book/src/modular-data.md")]
    pub mod modular_data {}
    #[doc = include_str!("../../../book/src/etale-algebras.md")]
    pub mod etale_algebras {}
    #[doc = include_str!("../../../book/src/condensation.md")]
    pub mod condensation {}
    #[doc = include_str!("../../../book/src/gapped-phases.md")]
    pub mod gapped_phases {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    pub mod command_line {}
}
