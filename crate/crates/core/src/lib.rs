//! Exact Hodge-Du Bois calculus for affine cones over polarized projective
//! varieties.

pub mod catalog;
pub mod cli;
pub mod cone;
pub mod error;
pub mod graded;
pub mod json;
pub mod ktheory;
pub mod lcdef;
pub mod matrix;
pub mod oracle;
pub mod render;
pub mod rational;
pub mod selftest;
pub mod table;
pub mod vanishing;

pub use error::{Error, Result};
