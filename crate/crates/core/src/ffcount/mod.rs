//! Linear algebra over small finite fields and the exhaustive counting kernels:
//! representation counts, isomorphism-class counts via Burnside's lemma, and
//! point counts of moment-map fibres.

mod burnside;
mod classes;
mod field;
mod interpolate;
mod matrix;
mod moment;
mod poly;
mod types;

pub use burnside::{
    count_all_reps, count_iso_classes, gl_elements, gl_order, CountOptions, CountStrategy,
    CLASS_BASED_MAX_DIM, DEFAULT_ENUMERATION_BUDGET,
};
pub use classes::{gl_conjugacy_classes, ConjClass};
pub use field::{Fq, FqField, DEFAULT_FIELD_LIMIT};
pub use interpolate::interpolate_poly;
pub use matrix::{intertwiner_dim, FqMatrix};
pub use moment::{
    count_moment_fiber, MomentOptions, MomentStrategy, DEFAULT_MOMENT_WORK_BUDGET,
    DEFAULT_TABLE_BUDGET,
};
pub use poly::{monic_irreducibles, FqPoly};
pub use types::IsoClassTypes;
