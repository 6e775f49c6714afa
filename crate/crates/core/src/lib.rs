//! Exact computations around preprojective algebras of quivers: Euler forms and
//! the `Σ` set, finite-field representation counts, Kac and cuspidal
//! polynomials, BPS and PBW character identities, and Borcherds–Bozec graded
//! dimensions.
//!
//! Everything is exact: coefficients are big rationals, counts are big
//! integers, and every polynomial is reconstructed from exhaustive counts over
//! small finite fields.

pub mod bbalg;
pub mod error;
pub mod ffcount;
pub mod gseries;
pub mod invariants;
pub mod numtheory;
pub mod quiver;

pub use error::{Error, ErrorKind, Result};
pub use gseries::{AdamsMode, GradedSeries, LaurentPoly, Rational, Truncation};
pub use quiver::{DimVector, Quiver, SignTwist, VertexClass};
