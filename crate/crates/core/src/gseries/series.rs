use std::collections::BTreeMap;
use std::fmt;

use super::laurent::{rat, LaurentPoly, Rational};
use crate::error::{Error, Result};
use crate::quiver::DimVector;

/// Degrees retained by a [`GradedSeries`]: componentwise `d <= bound`, and
/// optionally `|d| <= max_total`. The retained set is closed under going down,
/// so products and exponentials never need anything outside it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Truncation {
    bound: DimVector,
    max_total: Option<u32>,
}

impl Truncation {
    pub fn new(bound: DimVector) -> Self {
        Truncation {
            bound,
            max_total: None,
        }
    }

    pub fn with_max_total(bound: DimVector, max_total: u32) -> Self {
        Truncation {
            bound,
            max_total: Some(max_total),
        }
    }

    /// One-variable truncation `z^0 .. z^n`.
    pub fn single(n: u32) -> Self {
        Truncation::new(DimVector::new(vec![n]))
    }

    /// The box `n·(1,…,1)` cut at total degree `n`.
    pub fn total(rank: usize, n: u32) -> Self {
        Truncation::with_max_total(DimVector::new(vec![n; rank]), n)
    }

    pub fn bound(&self) -> &DimVector {
        &self.bound
    }

    pub fn max_total(&self) -> Option<u32> {
        self.max_total
    }

    pub fn rank(&self) -> usize {
        self.bound.len()
    }

    pub fn contains(&self, d: &DimVector) -> bool {
        d.le(&self.bound) && self.max_total.is_none_or(|m| d.total() <= m)
    }

    /// Retained degrees in lexicographic order, starting with zero.
    pub fn degrees(&self) -> Vec<DimVector> {
        self.bound
            .below()
            .into_iter()
            .filter(|d| self.contains(d))
            .collect()
    }

    /// Componentwise minimum; the narrower total cap wins.
    pub fn meet(&self, other: &Truncation) -> Truncation {
        assert_eq!(self.rank(), other.rank(), "truncations of different rank");
        let bound = self
            .bound
            .iter()
            .zip(other.bound.iter())
            .map(|(a, b)| a.min(b))
            .collect::<Vec<_>>();
        let max_total = match (self.max_total, other.max_total) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Truncation {
            bound: DimVector::new(bound),
            max_total,
        }
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.bound)?;
        if let Some(m) = self.max_total {
            write!(f, " |d|<={m}")?;
        }
        Ok(())
    }
}

/// Dense truncated series `Σ_d c_d z^d` with [`LaurentPoly`] coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSeries {
    trunc: Truncation,
    strides: Vec<usize>,
    coeffs: Vec<LaurentPoly>,
}

fn strides_for(bound: &DimVector) -> (Vec<usize>, usize) {
    let mut strides = vec![0; bound.len()];
    let mut size = 1usize;
    for i in (0..bound.len()).rev() {
        strides[i] = size;
        size *= bound[i] as usize + 1;
    }
    (strides, size)
}

impl GradedSeries {
    pub fn zero(trunc: Truncation) -> Self {
        let (strides, size) = strides_for(trunc.bound());
        GradedSeries {
            trunc,
            strides,
            coeffs: vec![LaurentPoly::zero(); size],
        }
    }

    pub fn one(trunc: Truncation) -> Self {
        let mut s = GradedSeries::zero(trunc);
        s.coeffs[0] = LaurentPoly::one();
        s
    }

    /// `c z^d`, or zero when `d` lies outside the truncation.
    pub fn monomial(trunc: Truncation, d: &DimVector, c: LaurentPoly) -> Self {
        let mut s = GradedSeries::zero(trunc);
        if s.trunc.contains(d) {
            s.set(d, c);
        }
        s
    }

    /// Collects terms, silently dropping degrees outside the truncation.
    pub fn from_terms(
        trunc: Truncation,
        terms: impl IntoIterator<Item = (DimVector, LaurentPoly)>,
    ) -> Self {
        let mut s = GradedSeries::zero(trunc);
        for (d, c) in terms {
            if s.trunc.contains(&d) {
                let idx = s.index(&d);
                s.coeffs[idx] += &c;
            }
        }
        s
    }

    /// One-variable series from a coefficient list starting at `z^0`.
    pub fn from_univariate(n: u32, coeffs: &[LaurentPoly]) -> Self {
        GradedSeries::from_terms(
            Truncation::single(n),
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (DimVector::new(vec![k as u32]), c.clone())),
        )
    }

    pub fn truncation(&self) -> &Truncation {
        &self.trunc
    }

    fn index(&self, d: &DimVector) -> usize {
        d.iter().zip(&self.strides).map(|(x, s)| x as usize * s).sum()
    }

    /// Coefficient of `z^d`; zero outside the truncation.
    pub fn coeff(&self, d: &DimVector) -> LaurentPoly {
        if d.len() != self.trunc.rank() || !self.trunc.contains(d) {
            return LaurentPoly::zero();
        }
        self.coeffs[self.index(d)].clone()
    }

    pub fn coeff_ref(&self, d: &DimVector) -> Option<&LaurentPoly> {
        (d.len() == self.trunc.rank() && self.trunc.contains(d)).then(|| &self.coeffs[self.index(d)])
    }

    /// Panics when `d` is outside the truncation.
    pub fn set(&mut self, d: &DimVector, c: LaurentPoly) {
        assert!(self.trunc.contains(d), "degree {d} outside truncation {}", self.trunc);
        let idx = self.index(d);
        self.coeffs[idx] = c;
    }

    pub fn constant_term(&self) -> &LaurentPoly {
        &self.coeffs[0]
    }

    /// Nonzero terms in lexicographic degree order.
    pub fn terms(&self) -> Vec<(DimVector, &LaurentPoly)> {
        self.trunc
            .degrees()
            .into_iter()
            .filter_map(|d| {
                let c = &self.coeffs[self.index(&d)];
                (!c.is_zero()).then_some((d, c))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn map_coeffs(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> GradedSeries {
        let mut out = self.clone();
        for d in self.trunc.degrees() {
            let idx = self.index(&d);
            out.coeffs[idx] = f(&self.coeffs[idx]);
        }
        out
    }

    /// Restriction to a smaller truncation.
    pub fn restrict(&self, trunc: &Truncation) -> GradedSeries {
        let target = self.trunc.meet(trunc);
        GradedSeries::from_terms(
            target.clone(),
            target.degrees().into_iter().map(|d| {
                let c = self.coeff(&d);
                (d, c)
            }),
        )
    }

    fn aligned(&self, other: &GradedSeries) -> (GradedSeries, GradedSeries) {
        if self.trunc == other.trunc {
            return (self.clone(), other.clone());
        }
        let meet = self.trunc.meet(&other.trunc);
        log::warn!(
            "combining series truncated at {} and {}; using {}",
            self.trunc,
            other.trunc,
            meet
        );
        (self.restrict(&meet), other.restrict(&meet))
    }

    pub fn add(&self, other: &GradedSeries) -> GradedSeries {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &GradedSeries) -> GradedSeries {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> GradedSeries {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, c: &LaurentPoly) -> GradedSeries {
        self.map_coeffs(|x| x * c)
    }

    pub fn scale_rational(&self, c: &Rational) -> GradedSeries {
        self.map_coeffs(|x| x.scale(c))
    }

    pub fn mul(&self, other: &GradedSeries) -> GradedSeries {
        let (a, b) = self.aligned(other);
        let degrees = a.trunc.degrees();
        let support_a: Vec<&DimVector> = degrees
            .iter()
            .filter(|d| !a.coeffs[a.index(d)].is_zero())
            .collect();
        let support_b: Vec<&DimVector> = degrees
            .iter()
            .filter(|d| !b.coeffs[b.index(d)].is_zero())
            .collect();
        let mut out = GradedSeries::zero(a.trunc.clone());
        for da in &support_a {
            let ca = &a.coeffs[a.index(da)];
            for db in &support_b {
                let d = *da + *db;
                if !out.trunc.contains(&d) {
                    continue;
                }
                let idx = out.index(&d);
                let prod = ca * &b.coeffs[b.index(db)];
                out.coeffs[idx] += &prod;
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> GradedSeries {
        let mut acc = GradedSeries::one(self.trunc.clone());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<GradedSeries> {
        let c0 = self.constant_term();
        let c0_inv = c0.unit_inverse().map_err(|_| {
            Error::InvalidArgument(format!(
                "series with constant term `{c0}` is not invertible"
            ))
        })?;
        let degrees = self.trunc.degrees();
        let support: Vec<&DimVector> = degrees
            .iter()
            .filter(|d| !d.is_zero() && !self.coeffs[self.index(d)].is_zero())
            .collect();
        let mut out = GradedSeries::zero(self.trunc.clone());
        out.coeffs[0] = c0_inv.clone();
        // Lexicographic order puts every e < d before d.
        for d in degrees.iter().skip(1) {
            let mut acc = LaurentPoly::zero();
            for e in &support {
                if let Some(rest) = d.checked_sub(e) {
                    acc += &(&self.coeffs[self.index(e)] * &out.coeffs[out.index(&rest)]);
                }
            }
            let idx = out.index(d);
            out.coeffs[idx] = -(&acc * &c0_inv);
        }
        Ok(out)
    }

    /// `z^d ↦ z^{kd}`; degrees pushed outside the truncation are dropped.
    pub fn adams_z(&self, k: u32) -> GradedSeries {
        assert!(k >= 1, "Adams operations are indexed by k >= 1");
        let mut out = GradedSeries::zero(self.trunc.clone());
        for (d, c) in self.terms() {
            let kd = d.scale(k);
            if out.trunc.contains(&kd) {
                let idx = out.index(&kd);
                out.coeffs[idx] = c.clone();
            }
        }
        out
    }

    /// Ordinary exponential of a series with vanishing constant term.
    pub fn exp(&self) -> Result<GradedSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::Precondition(
                "exp needs a series with zero constant term".into(),
            ));
        }
        // With D z^d = |d| z^d and E = exp(f): D E = (D f) E.
        let degrees = self.trunc.degrees();
        let support: Vec<(&DimVector, LaurentPoly)> = degrees
            .iter()
            .filter(|d| !self.coeffs[self.index(d)].is_zero())
            .map(|d| (d, self.coeffs[self.index(d)].scale(&rat(d.total() as i64))))
            .collect();
        let mut out = GradedSeries::one(self.trunc.clone());
        for d in degrees.iter().skip(1) {
            let mut acc = LaurentPoly::zero();
            for (e, weighted) in &support {
                if let Some(rest) = d.checked_sub(e) {
                    acc += &(weighted * &out.coeffs[out.index(&rest)]);
                }
            }
            let idx = out.index(d);
            out.coeffs[idx] = acc.scale(&Rational::new(1.into(), (d.total() as i64).into()));
        }
        Ok(out)
    }

    /// Ordinary logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<GradedSeries> {
        if !self.constant_term().is_one() {
            return Err(Error::Precondition(
                "log needs a series with constant term 1".into(),
            ));
        }
        // |d| l_d = |d| g_d − Σ_{0<e<d} |e| l_e g_{d−e}.
        let degrees = self.trunc.degrees();
        let mut out = GradedSeries::zero(self.trunc.clone());
        for d in degrees.iter().skip(1) {
            let n = d.total() as i64;
            let mut acc = self.coeffs[self.index(d)].scale(&rat(n));
            for e in d.below() {
                if e.is_zero() || &e == d || !self.trunc.contains(&e) {
                    continue;
                }
                let le = &out.coeffs[out.index(&e)];
                if le.is_zero() {
                    continue;
                }
                let rest = d - &e;
                let term = le * &self.coeffs[self.index(&rest)];
                acc -= &term.scale(&rat(e.total() as i64));
            }
            let idx = out.index(d);
            out.coeffs[idx] = acc.scale(&Rational::new(1.into(), n.into()));
        }
        Ok(out)
    }

    /// Evaluates every coefficient at a rational point.
    pub fn evaluate(&self, q: &Rational) -> Result<GradedSeries> {
        let mut out = GradedSeries::zero(self.trunc.clone());
        for d in self.trunc.degrees() {
            let idx = self.index(&d);
            out.coeffs[idx] = LaurentPoly::constant(self.coeffs[idx].evaluate(q)?);
        }
        Ok(out)
    }

    /// JSON object `{"1,0": {"2": "1/1"}, ...}` over nonzero terms.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .terms()
            .into_iter()
            .map(|(d, c)| (d.to_string(), c.to_json()))
            .collect();
        serde_json::Value::Object(map)
    }

    pub fn from_json(trunc: Truncation, value: &serde_json::Value) -> Result<GradedSeries> {
        let map = value
            .as_object()
            .ok_or_else(|| Error::Parse("series must be a JSON object".into()))?;
        let mut out = GradedSeries::zero(trunc);
        for (key, poly) in map {
            let d = DimVector::parse(key)?;
            if d.len() != out.trunc.rank() || !out.trunc.contains(&d) {
                return Err(Error::Parse(format!(
                    "degree {key} outside truncation {}",
                    out.trunc
                )));
            }
            out.set(&d, LaurentPoly::from_json(poly)?);
        }
        Ok(out)
    }
}

impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl LaurentPoly {
    /// `{"<doubled exponent>": "num/den"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .terms()
            .map(|(e, c)| {
                (
                    e.to_string(),
                    serde_json::Value::String(format!("{}/{}", c.numer(), c.denom())),
                )
            })
            .collect();
        serde_json::Value::Object(map)
    }

    pub fn from_json(value: &serde_json::Value) -> Result<LaurentPoly> {
        let map = value
            .as_object()
            .ok_or_else(|| Error::Parse("polynomial must be a JSON object".into()))?;
        let mut out = LaurentPoly::zero();
        for (key, c) in map {
            let e: i64 = key
                .parse()
                .map_err(|_| Error::Parse(format!("exponent key `{key}`")))?;
            let text = c
                .as_str()
                .ok_or_else(|| Error::Parse(format!("coefficient of `{key}` must be a string")))?;
            let c: Rational = text
                .parse()
                .map_err(|_| Error::Parse(format!("coefficient `{text}`")))?;
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Map from integer exponent to coefficient string, for tables.
    pub fn coefficient_map(&self) -> BTreeMap<String, String> {
        self.terms()
            .map(|(e, c)| {
                let key = if e % 2 == 0 {
                    (e / 2).to_string()
                } else {
                    format!("{e}/2")
                };
                (key, c.to_string())
            })
            .collect()
    }
}

impl fmt::Debug for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedSeries{} {{", self.trunc)?;
        for (i, (d, c)) in self.terms().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, " ({d}): {c}")?;
        }
        f.write_str(" }")
    }
}

/// Coefficient-wise zero test used by identity checks.
pub fn series_equal(a: &GradedSeries, b: &GradedSeries) -> bool {
    let meet = a.truncation().meet(b.truncation());
    meet.degrees().iter().all(|d| a.coeff(d) == b.coeff(d))
}
