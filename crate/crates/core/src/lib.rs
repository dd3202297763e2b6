//! Exact finite-level workbench for definable topological dynamics.
//!
//! Type spaces, the Ellis product, minimal flows, amenability certificates
//! and profinite compactifications are computed over three group backends:
//! finite groups given by tables, the integers with Presburger-definable
//! sets, and binary products of these. Everything non-realized is truncated
//! at a congruence level so that every object is finite.

pub mod amenability;
pub mod compactify;
pub mod defsets;
pub mod ellis;
pub mod error;
pub mod flows;
pub mod group;
pub mod json;
pub mod lp;
pub mod oracle;
pub mod typespace;

pub use error::{Error, Result};
