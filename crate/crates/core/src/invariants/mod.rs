//! Kac, cuspidal and intersection Poincaré polynomials, and the BPS and PBW checks.

mod bps;
mod cuspidal;
mod kac;
mod pbw;

pub use bps::{
    bps_character, bps_generator_check, bps_generator_check_for, ip_from_cuspidal, ip_polynomial, ip_to_cuspidal,
    BpsGeneratorCheck,
};
pub use cuspidal::{absolutize_isotropic, cuspidal_from_a_series, cuspidal_from_kac, cuspidal_polynomials, CuspidalTable};
pub use kac::{kac_polynomials, KacOptions, KacTable, Provenance};
pub use pbw::{pbw_point_count_check, pbw_point_count_check_for, CellStatus, PbwCell, PbwConvention, PbwReport};
