//! Truncated multigraded power series over exact Laurent coefficients in `q^{1/2}`.

mod laurent;
mod plethystic;
mod series;

pub use laurent::{rat, ratio, LaurentPoly, Rational};
pub use plethystic::{
    exp_plethystic, exp_plethystic_with, free_assoc_char, free_lie_char, log_plethystic,
    tensor_hcstar, tensor_hcstar_at, AdamsMode,
};
pub use series::{series_equal, GradedSeries, Truncation};
