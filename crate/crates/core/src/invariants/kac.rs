use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffcount::{count_iso_classes, interpolate_poly, CountOptions, CountStrategy};
use crate::gseries::{log_plethystic, AdamsMode, GradedSeries, LaurentPoly, Truncation};
use crate::numtheory::first_prime_powers;
use crate::quiver::{DimVector, Quiver};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KacOptions {
    pub count: CountOptions,
    /// Samples beyond the degree bound, used only to confirm the interpolant.
    pub extra_samples: usize,
}

impl Default for KacOptions {
    fn default() -> Self {
        KacOptions {
            count: CountOptions::default(),
            extra_samples: 2,
        }
    }
}

impl KacOptions {
    pub fn with_strategy(strategy: CountStrategy) -> Self {
        KacOptions {
            count: CountOptions::with_strategy(strategy),
            ..KacOptions::default()
        }
    }
}

/// Where a counting polynomial came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub strategy: String,
    /// Degree bound `Σ_{α:i→j} d_i d_j` used for interpolation.
    pub degree_bound: u64,
    pub fields: Vec<u64>,
}

/// Kac polynomials `A_d(q)` together with the isoclass counts `M_d(q)` they come from.
#[derive(Debug, Clone)]
pub struct KacTable {
    pub quiver_hash: String,
    pub truncation: Truncation,
    pub m: BTreeMap<DimVector, LaurentPoly>,
    pub a: BTreeMap<DimVector, LaurentPoly>,
    /// Raw counts `(q, M_d(q))` per degree.
    pub samples: BTreeMap<DimVector, Vec<(u64, BigInt)>>,
    pub provenance: BTreeMap<DimVector, Provenance>,
}

/// `Σ_d M_d(q) z^d` from exhaustive counts, interpolated, then `A = Log_{q,z}(M)`.
pub fn kac_polynomials(quiver: &Quiver, trunc: &Truncation, options: KacOptions) -> Result<KacTable> {
    quiver.check_dim(trunc.bound())?;
    let degrees: Vec<DimVector> = trunc.degrees().into_iter().skip(1).collect();
    let mut jobs = Vec::new();
    let mut bounds = BTreeMap::new();
    for d in &degrees {
        let bound = quiver.rep_space_dim(d)?;
        let fields = first_prime_powers(bound as usize + 1 + options.extra_samples);
        for &q in &fields {
            jobs.push((d.clone(), q));
        }
        bounds.insert(d.clone(), (bound, fields));
    }
    log::info!("kac: {} counts over {} degrees", jobs.len(), degrees.len());
    let counts: Vec<(DimVector, u64, BigInt)> = jobs
        .into_par_iter()
        .map(|(d, q)| {
            let n = count_iso_classes(quiver, &d, q, options.count)?;
            Ok((d, q, n))
        })
        .collect::<Result<_>>()?;

    let mut samples: BTreeMap<DimVector, Vec<(u64, BigInt)>> = BTreeMap::new();
    for (d, q, n) in counts {
        samples.entry(d).or_default().push((q, n));
    }
    let mut m = BTreeMap::new();
    let mut provenance = BTreeMap::new();
    for (d, list) in &mut samples {
        list.sort_by_key(|(q, _)| *q);
        let (bound, fields) = &bounds[d];
        m.insert(d.clone(), interpolate_poly(list, *bound as usize)?);
        provenance.insert(
            d.clone(),
            Provenance {
                strategy: format!("{:?}", options.count.strategy),
                degree_bound: *bound,
                fields: fields.clone(),
            },
        );
    }
    let m_series = GradedSeries::from_terms(
        trunc.clone(),
        std::iter::once((quiver.zero(), LaurentPoly::one())).chain(m.iter().map(|(d, p)| (d.clone(), p.clone()))),
    );
    let a_series = log_plethystic(&m_series, AdamsMode::QAndZ)?;
    let mut a = BTreeMap::new();
    for d in &degrees {
        let p = a_series.coeff(d);
        if !p.has_integer_coefficients() || !p.has_integer_exponents() {
            return Err(Error::Identity(format!(
                "Kac polynomial A_{d} = {p} does not have integer coefficients"
            )));
        }
        a.insert(d.clone(), p);
    }
    Ok(KacTable {
        quiver_hash: quiver.canonical_hash(),
        truncation: trunc.clone(),
        m,
        a,
        samples,
        provenance,
    })
}

impl KacTable {
    fn series(&self, map: &BTreeMap<DimVector, LaurentPoly>, constant: LaurentPoly) -> GradedSeries {
        let zero = DimVector::zero(self.truncation.rank());
        GradedSeries::from_terms(
            self.truncation.clone(),
            std::iter::once((zero, constant)).chain(map.iter().map(|(d, p)| (d.clone(), p.clone()))),
        )
    }

    /// `1 + Σ_d M_d(q) z^d`.
    pub fn m_series(&self) -> GradedSeries {
        self.series(&self.m, LaurentPoly::one())
    }

    /// `Σ_d A_d(q) z^d`.
    pub fn a_series(&self) -> GradedSeries {
        self.series(&self.a, LaurentPoly::zero())
    }

    /// Indecomposable counts `I = Log_z(M)`, symbolically in `q`.
    pub fn i_series(&self) -> Result<GradedSeries> {
        log_plethystic(&self.m_series(), AdamsMode::ZOnly)
    }

    /// Fields at which every degree was counted directly.
    pub fn common_fields(&self) -> Vec<u64> {
        let mut lists = self.samples.values();
        let Some(first) = lists.next() else {
            return Vec::new();
        };
        let mut common: Vec<u64> = first.iter().map(|(q, _)| *q).collect();
        for list in lists {
            common.retain(|q| list.iter().any(|(x, _)| x == q));
        }
        common
    }

    /// `1 + Σ_d M_d(q) z^d` from the raw counts at `q`, if every degree was counted there.
    pub fn counted_m_series(&self, q: u64) -> Option<GradedSeries> {
        let mut terms = vec![(DimVector::zero(self.truncation.rank()), LaurentPoly::one())];
        for (d, list) in &self.samples {
            let (_, n) = list.iter().find(|(x, _)| *x == q)?;
            terms.push((d.clone(), LaurentPoly::constant(n.clone().into())));
        }
        Some(GradedSeries::from_terms(self.truncation.clone(), terms))
    }

    pub fn all_nonnegative(&self) -> bool {
        self.a.values().all(|p| p.has_nonnegative_coefficients())
    }
}
