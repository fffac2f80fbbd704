//! Exact computation, bounds and certificates for the invariant Σ¹ of
//! finitely generated groups.

pub mod bounds;
pub mod brown;
pub mod characters;
pub mod combinators;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod raag;
pub mod regions;
pub mod words;

pub use error::{Error, Result};
