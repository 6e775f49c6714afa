use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gseries::{exp_plethystic, series_equal, AdamsMode, GradedSeries, LaurentPoly, Truncation};
use crate::quiver::{DimVector, Quiver, SigmaOptions};

use super::cuspidal::{cuspidal_from_kac, CuspidalTable};
use super::kac::{kac_polynomials, KacOptions, KacTable};

/// `IP_d = C_d(q^{-2})`, defined for `d ∈ Σ`.
pub fn ip_from_cuspidal(quiver: &Quiver, cusp: &CuspidalTable, d: &DimVector) -> Result<LaurentPoly> {
    if d.is_zero() || !quiver.in_sigma(d, SigmaOptions::default())? {
        return Err(Error::Precondition(format!(
            "the intersection Poincaré identity is only asserted for classes in Σ; {d} is not one"
        )));
    }
    let c = cusp
        .c_abs
        .get(d)
        .ok_or_else(|| Error::InvalidArgument(format!("{d} lies outside the cuspidal table")))?;
    Ok(c.substitute_power(-2))
}

/// Intersection Poincaré polynomial of the coarse moduli space in class `d`.
pub fn ip_polynomial(quiver: &Quiver, d: &DimVector, options: KacOptions) -> Result<LaurentPoly> {
    quiver.check_dim(d)?;
    super::cuspidal::require_totally_negative(quiver)?;
    let kac = kac_polynomials(quiver, &Truncation::new(d.clone()), options)?;
    let cusp = cuspidal_from_kac(quiver, &kac)?;
    ip_from_cuspidal(quiver, &cusp, d)
}

/// Inverse of the `q ↦ q^{-2}` substitution, for round trips on even exponents.
pub fn ip_to_cuspidal(ip: &LaurentPoly) -> Result<LaurentPoly> {
    if ip.terms().any(|(e, _)| e % 4 != 0) {
        return Err(Error::InvalidArgument(format!("`{ip}` is not a polynomial in q^2")));
    }
    Ok(LaurentPoly::from_doubled_terms(ip.terms().map(|(e, c)| (-e / 2, c.clone()))))
}

/// `ch(g^BPS) = Σ_d A_d(q^{-2}) z^d`.
pub fn bps_character(kac: &KacTable) -> GradedSeries {
    kac.a_series().map_coeffs(|p| p.substitute_power(-2))
}

#[derive(Debug, Clone)]
pub struct BpsGeneratorCheck {
    /// Generator character per degree: `IP_d` on `Σ`, zero elsewhere.
    pub generators: BTreeMap<DimVector, LaurentPoly>,
    pub sigma: Vec<DimVector>,
    /// Degrees where `Exp_{q,z}(ch g^BPS)` and `(1 − Σ IP_d z^d)^{-1}` differ.
    pub mismatches: Vec<DimVector>,
    pub holds: bool,
}

impl BpsGeneratorCheck {
    pub fn to_json(&self) -> serde_json::Value {
        let generators: Vec<serde_json::Value> = self
            .generators
            .iter()
            .map(|(d, p)| serde_json::json!({"d": d, "generator": p, "in_sigma": self.sigma.contains(d)}))
            .collect();
        serde_json::json!({
            "holds": self.holds,
            "generators": generators,
            "mismatches": self.mismatches,
        })
    }
}

/// Checks `Exp_{q,z}(Σ A_d(q^{-2}) z^d) = (1 − Σ_{d∈Σ} IP_d z^d)^{-1}` within the truncation.
pub fn bps_generator_check(quiver: &Quiver, kac: &KacTable, cusp: &CuspidalTable) -> Result<BpsGeneratorCheck> {
    let trunc = kac.truncation.clone();
    let mut generators = BTreeMap::new();
    let mut sigma = Vec::new();
    for d in trunc.degrees().into_iter().skip(1) {
        let g = if quiver.in_sigma(&d, SigmaOptions::default())? {
            sigma.push(d.clone());
            ip_from_cuspidal(quiver, cusp, &d)?
        } else {
            LaurentPoly::zero()
        };
        generators.insert(d, g);
    }
    let lhs = exp_plethystic(&bps_character(kac), AdamsMode::QAndZ)?;
    let gen_series = GradedSeries::from_terms(trunc.clone(), generators.iter().map(|(d, p)| (d.clone(), p.clone())));
    let rhs = GradedSeries::one(trunc.clone()).sub(&gen_series).inverse()?;
    let mismatches: Vec<DimVector> = trunc
        .degrees()
        .into_iter()
        .filter(|d| lhs.coeff(d) != rhs.coeff(d))
        .collect();
    debug_assert_eq!(mismatches.is_empty(), series_equal(&lhs, &rhs));
    Ok(BpsGeneratorCheck {
        holds: mismatches.is_empty(),
        generators,
        sigma,
        mismatches,
    })
}

/// Convenience: counts, cuspidal table and generator check in one call.
pub fn bps_generator_check_for(quiver: &Quiver, trunc: &Truncation, options: KacOptions) -> Result<BpsGeneratorCheck> {
    super::cuspidal::require_totally_negative(quiver)?;
    let kac = kac_polynomials(quiver, trunc, options)?;
    let cusp = cuspidal_from_kac(quiver, &kac)?;
    bps_generator_check(quiver, &kac, &cusp)
}
