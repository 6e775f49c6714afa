use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gseries::{exp_plethystic, log_plethystic, AdamsMode, GradedSeries, LaurentPoly, Truncation};
use crate::quiver::{DimVector, Quiver};

use super::kac::{kac_polynomials, KacOptions, KacTable};

/// Absolutely cuspidal polynomials `C^abs_d(q)`.
#[derive(Debug, Clone)]
pub struct CuspidalTable {
    pub truncation: Truncation,
    pub c_abs: BTreeMap<DimVector, LaurentPoly>,
}

impl CuspidalTable {
    /// `Σ_d C^abs_d(q) z^d`.
    pub fn series(&self) -> GradedSeries {
        GradedSeries::from_terms(
            self.truncation.clone(),
            self.c_abs.iter().map(|(d, p)| (d.clone(), p.clone())),
        )
    }

    pub fn all_in_nq(&self) -> bool {
        self.c_abs.values().all(LaurentPoly::is_in_nq)
    }
}

/// Reads `C^abs` off `1 − Σ_d C^abs_d z^d = Exp_{q,z}(−Σ_d A_d z^d)`.
pub fn cuspidal_from_a_series(a: &GradedSeries) -> Result<CuspidalTable> {
    let rhs = exp_plethystic(&a.neg(), AdamsMode::QAndZ)?;
    let mut c_abs = BTreeMap::new();
    for d in a.truncation().degrees().into_iter().skip(1) {
        let c = -rhs.coeff(&d);
        if !c.has_integer_coefficients() || !c.has_integer_exponents() {
            return Err(Error::Identity(format!(
                "cuspidal polynomial C_{d} = {c} does not have integer coefficients"
            )));
        }
        c_abs.insert(d, c);
    }
    Ok(CuspidalTable {
        truncation: a.truncation().clone(),
        c_abs,
    })
}

/// Cuspidal polynomials of a totally negative quiver, where `C = C^abs`.
pub fn cuspidal_polynomials(quiver: &Quiver, trunc: &Truncation, options: KacOptions) -> Result<CuspidalTable> {
    require_totally_negative(quiver)?;
    let kac = kac_polynomials(quiver, trunc, options)?;
    cuspidal_from_kac(quiver, &kac)
}

pub fn cuspidal_from_kac(quiver: &Quiver, kac: &KacTable) -> Result<CuspidalTable> {
    require_totally_negative(quiver)?;
    cuspidal_from_a_series(&kac.a_series())
}

pub(crate) fn require_totally_negative(quiver: &Quiver) -> Result<()> {
    if quiver.is_totally_negative() {
        Ok(())
    } else {
        Err(Error::NotTotallyNegative(
            "cuspidal polynomials are determined by Kac polynomials only for totally negative quivers; \
             isotropic rays can be handled with absolutize_isotropic"
                .into(),
        ))
    }
}

/// Along a primitive isotropic ray: solves `Exp_z(Σ_l C_l z^l) = Exp_{q,z}(Σ_l C^abs_l z^l)`
/// for `C^abs`, level by level. `levels[l-1]` holds `C_l`.
pub fn absolutize_isotropic(levels: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
    let n = levels.len() as u32;
    let c = GradedSeries::from_terms(
        Truncation::single(n),
        levels
            .iter()
            .enumerate()
            .map(|(i, p)| (DimVector::new(vec![i as u32 + 1]), p.clone())),
    );
    let lhs = exp_plethystic(&c, AdamsMode::ZOnly)?;
    let abs = log_plethystic(&lhs, AdamsMode::QAndZ)?;
    Ok((1..=n).map(|l| abs.coeff(&DimVector::new(vec![l]))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gseries::series_equal;

    #[test]
    fn zero_kac_input_gives_zero() {
        let t = Truncation::single(4);
        let table = cuspidal_from_a_series(&GradedSeries::zero(t)).unwrap();
        assert!(table.c_abs.values().all(LaurentPoly::is_zero));
    }

    #[test]
    fn degree_one_is_kac() {
        let t = cuspidal_polynomials(&Quiver::one_vertex(3), &Truncation::single(1), KacOptions::default()).unwrap();
        assert_eq!(t.c_abs[&DimVector::new(vec![1])], LaurentPoly::q_pow(3));
    }

    #[test]
    fn refuses_non_totally_negative() {
        assert!(matches!(
            cuspidal_polynomials(&Quiver::one_vertex(1), &Truncation::single(2), KacOptions::default()),
            Err(Error::NotTotallyNegative(_))
        ));
    }

    #[test]
    fn absolutize_round_trip() {
        let levels = vec![
            LaurentPoly::q_pow(1),
            LaurentPoly::from_coeffs(&[0, 1, 2]),
            LaurentPoly::from_coeffs(&[1, 0, 0, 1]),
        ];
        let abs = absolutize_isotropic(&levels).unwrap();
        assert_eq!(abs[0], levels[0]);
        let t = Truncation::single(3);
        let series = |v: &[LaurentPoly]| {
            GradedSeries::from_terms(
                t.clone(),
                v.iter().enumerate().map(|(i, p)| (DimVector::new(vec![i as u32 + 1]), p.clone())),
            )
        };
        let lhs = exp_plethystic(&series(&levels), AdamsMode::ZOnly).unwrap();
        let rhs = exp_plethystic(&series(&abs), AdamsMode::QAndZ).unwrap();
        assert!(series_equal(&lhs, &rhs));
        let zeros = absolutize_isotropic(&[LaurentPoly::zero(), LaurentPoly::zero()]).unwrap();
        assert!(zeros.iter().all(LaurentPoly::is_zero));
    }
}
