//! Strongly stable ideals, Borel graphs and Gröbner fans of Hilbert schemes
//! of subschemes of projective space, in exact arithmetic.

pub mod adjacency;
pub mod analysis;
pub mod error;
pub mod fan;
pub mod hilbert;
pub mod ideal;
pub mod monomial;
pub mod orders;

pub use error::{Error, Result};
