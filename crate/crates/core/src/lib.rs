//! Exact computation of Hochschild cohomology for finite-dimensional algebras
//! with finite group actions, their smash products, and the spectral
//! sequences relating the two.

// Matrix code indexes several arrays by the same loop variable.
#![allow(clippy::needless_range_loop, clippy::type_complexity, clippy::wrong_self_convention)]

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod exactla;
pub mod fixtures;
pub mod groupcoh;
pub mod hochschild;
pub mod specseq;
pub mod structure;

pub use error::{Error, Result};
