use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, ErrorKind, Result};
use crate::ffcount::{count_moment_fiber, gl_order, MomentOptions};
use crate::gseries::{exp_plethystic_with, Rational, Truncation};
use crate::quiver::{DimVector, Quiver};

use super::kac::{kac_polynomials, KacOptions, KacTable};

/// Normalisation linking the stack count to the Sym side.
///
/// Stack side: `q^{s·(d,d)/2} · |μ_d⁻¹(0)(F_q)| / |GL_d(F_q)|`.
/// Sym side: `Exp_{q,z}(Σ_d A_d(q^e) / (1 − q^u) z^d)`, i.e. the BPS character
/// `Σ A_d(t^{-2}) z^d` read at `t = q^{-e/2}` and tensored with `1/(1 − q^u)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PbwConvention {
    pub twist_sign: i32,
    pub bps_exponent: i32,
    pub u_exponent: i32,
}

impl PbwConvention {
    /// Candidates in the fixed order in which calibration tries them.
    pub fn candidates() -> Vec<PbwConvention> {
        let mut out = Vec::new();
        for twist_sign in [1, -1] {
            for bps_exponent in [1, -1] {
                for u_exponent in [-1, 1, -2, 2] {
                    out.push(PbwConvention {
                        twist_sign,
                        bps_exponent,
                        u_exponent,
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for PbwConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "s={}, BPS at t=q^({}/2), u=q^{}",
            if self.twist_sign > 0 { "+" } else { "-" },
            -self.bps_exponent,
            self.u_exponent
        )
    }
}

fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

fn serialize_opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => serialize_rational(r, s),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellStatus {
    Pass,
    Fail,
    /// The moment-map count exceeded its budget.
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct PbwCell {
    pub q: u64,
    pub d: DimVector,
    #[serde(serialize_with = "serialize_opt_rational")]
    pub stack: Option<Rational>,
    #[serde(serialize_with = "serialize_rational")]
    pub sym: Rational,
    pub status: CellStatus,
}

#[derive(Debug, Clone, Serialize)]
pub struct PbwReport {
    pub convention: PbwConvention,
    /// Every candidate convention that matched all degree-one anchors.
    pub anchor_matches: Vec<PbwConvention>,
    pub cells: Vec<PbwCell>,
}

impl PbwReport {
    pub fn all_pass(&self) -> bool {
        self.cells.iter().all(|c| c.status != CellStatus::Fail)
    }

    pub fn checked(&self) -> usize {
        self.cells.iter().filter(|c| c.status == CellStatus::Pass).count()
    }

    pub fn skipped(&self) -> usize {
        self.cells.iter().filter(|c| c.status == CellStatus::Skipped).count()
    }
}

fn q_power(q: u64, e: i64) -> Rational {
    let base = Rational::from_integer(BigInt::from(q));
    num_traits::pow::Pow::pow(&base, e as i32)
}

/// `q^{s(d,d)/2} |μ_d⁻¹(0)(F_q)| / |GL_d(F_q)|`, or `None` when over budget.
fn stack_term(
    quiver: &Quiver,
    d: &DimVector,
    q: u64,
    sign: i32,
    options: MomentOptions,
) -> Result<Option<Rational>> {
    let fibre = match count_moment_fiber(quiver, d, q, options) {
        Ok(n) => n,
        Err(e) if e.kind() == ErrorKind::Budget => {
            log::info!("pbw: skipping d={d} q={q}: {e}");
            return Ok(None);
        }
        Err(e) => return Err(e),
    };
    let half = quiver.sym_euler_form(d, d)? / 2;
    let group: BigInt = d.iter().map(|n| gl_order(n, q)).product();
    let count = Rational::new(BigInt::from(fibre), group);
    Ok(Some(count * q_power(q, sign as i64 * half)))
}

fn sym_side(kac: &KacTable, trunc: &Truncation, q: u64, conv: PbwConvention) -> Result<BTreeMap<DimVector, Rational>> {
    let series = exp_plethystic_with(trunc, |d, k| {
        let a = kac.a.get(d).cloned().unwrap_or_default();
        let qk = q_power(q, k as i64);
        let value = a.substitute_power(conv.bps_exponent as i64).evaluate(&qk)?;
        let u = q_power(q, k as i64 * conv.u_exponent as i64);
        let denom = Rational::one() - u;
        if denom.is_zero() {
            return Err(Error::InvalidArgument("1 - u vanishes".into()));
        }
        Ok(value / denom)
    })?;
    Ok(trunc
        .degrees()
        .into_iter()
        .map(|d| {
            let v = series.coeff(&d).constant_term();
            (d, v)
        })
        .collect())
}

/// Point-count form of the PBW isomorphism: the stack series
/// `Σ_d q^{s(d,d)/2} |μ_d⁻¹(0)(F_q)| / |GL_d(F_q)| z^d` against the plethystic
/// exponential of the BPS character tensored with `H(BC*)`.
///
/// The convention is calibrated on the unit vectors and then frozen.
pub fn pbw_point_count_check(
    quiver: &Quiver,
    kac: &KacTable,
    fields: &[u64],
    moment: MomentOptions,
) -> Result<PbwReport> {
    super::cuspidal::require_totally_negative(quiver)?;
    let trunc = kac.truncation.clone();
    let units: Vec<DimVector> = (0..quiver.vertex_count())
        .map(|i| quiver.unit(i))
        .filter(|u| trunc.contains(u))
        .collect();

    let mut anchor_matches = Vec::new();
    for conv in PbwConvention::candidates() {
        let mut ok = !units.is_empty();
        'fields: for &q in fields {
            let sym = sym_side(kac, &trunc, q, conv)?;
            for u in &units {
                let stack = stack_term(quiver, u, q, conv.twist_sign, moment)?
                    .ok_or_else(|| Error::budget("degree-one anchor", "moment count", "budget"))?;
                if stack != sym[u] {
                    ok = false;
                    break 'fields;
                }
            }
        }
        if ok {
            anchor_matches.push(conv);
        }
    }
    let convention = *anchor_matches.first().ok_or_else(|| {
        Error::Identity("no PBW normalisation matches the degree-one anchors".into())
    })?;
    log::info!("pbw: calibrated convention {convention}");

    let mut cells = Vec::new();
    for &q in fields {
        let sym = sym_side(kac, &trunc, q, convention)?;
        for d in trunc.degrees() {
            let stack = if d.is_zero() {
                Some(Rational::one())
            } else {
                stack_term(quiver, &d, q, convention.twist_sign, moment)?
            };
            let status = match &stack {
                None => CellStatus::Skipped,
                Some(s) if *s == sym[&d] => CellStatus::Pass,
                Some(_) => CellStatus::Fail,
            };
            cells.push(PbwCell {
                q,
                d: d.clone(),
                stack,
                sym: sym[&d].clone(),
                status,
            });
        }
    }
    Ok(PbwReport {
        convention,
        anchor_matches,
        cells,
    })
}

/// Computes the Kac table first, then runs [`pbw_point_count_check`].
pub fn pbw_point_count_check_for(
    quiver: &Quiver,
    trunc: &Truncation,
    fields: &[u64],
    kac_options: KacOptions,
    moment: MomentOptions,
) -> Result<PbwReport> {
    super::cuspidal::require_totally_negative(quiver)?;
    let kac = kac_polynomials(quiver, trunc, kac_options)?;
    pbw_point_count_check(quiver, &kac, fields, moment)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_loop_quiver_degree_two() {
        let quiver = Quiver::one_vertex(2);
        let report = pbw_point_count_check_for(
            &quiver,
            &Truncation::single(2),
            &[2, 3],
            KacOptions::default(),
            MomentOptions::default(),
        )
        .unwrap();
        assert_eq!(
            report.convention,
            PbwConvention {
                twist_sign: 1,
                bps_exponent: 1,
                u_exponent: -1
            }
        );
        assert_eq!(report.anchor_matches.len(), 1);
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(report.checked(), 6);
        let cell = report.cells.iter().find(|c| c.q == 2 && c.d == DimVector::new(vec![2])).unwrap();
        assert_eq!(cell.sym, Rational::new(368.into(), 3.into()));
    }

    #[test]
    fn empty_box() {
        let quiver = Quiver::one_vertex(2);
        let kac = kac_polynomials(&quiver, &Truncation::single(0), KacOptions::default()).unwrap();
        assert!(matches!(
            pbw_point_count_check(&quiver, &kac, &[2], MomentOptions::default()),
            Err(Error::Identity(_))
        ));
    }
}
