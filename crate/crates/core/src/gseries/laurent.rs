use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Laurent polynomial in `q^{1/2}` with exact rational coefficients.
///
/// Exponents are stored doubled, so `q` is key `2` and `q^{-1/2}` is key `-1`.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::monomial_doubled(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        LaurentPoly::constant(rat(c))
    }

    /// `c q^e`.
    pub fn monomial(c: Rational, exponent: i64) -> Self {
        LaurentPoly::monomial_doubled(c, 2 * exponent)
    }

    /// `c q^{e/2}`.
    pub fn monomial_doubled(c: Rational, doubled_exponent: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(doubled_exponent, c);
        }
        LaurentPoly { terms }
    }

    /// `q^e`.
    pub fn q_pow(exponent: i64) -> Self {
        LaurentPoly::monomial(Rational::one(), exponent)
    }

    /// Integer coefficients `c_0 + c_1 q + c_2 q^2 + ...`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, &c) in coeffs.iter().enumerate() {
            p.add_term(2 * e as i64, rat(c));
        }
        p
    }

    pub fn from_doubled_terms(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, doubled_exponent: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(doubled_exponent).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&doubled_exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    /// Coefficient of `q^{e/2}`.
    pub fn coeff_doubled(&self, doubled_exponent: i64) -> Rational {
        self.terms
            .get(&doubled_exponent)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Coefficient of `q^e`.
    pub fn coeff(&self, exponent: i64) -> Rational {
        self.coeff_doubled(2 * exponent)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff_doubled(0)
    }

    /// `(doubled exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_doubled_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_doubled_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Nonnegative integer coefficients and exponents: membership in `N[q]`.
    pub fn is_in_nq(&self) -> bool {
        self.has_integer_coefficients()
            && self.has_nonnegative_coefficients()
            && self.terms.keys().all(|&e| e >= 0 && e % 2 == 0)
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// `q ↦ q^k` for `k >= 1`.
    pub fn adams(&self, k: u32) -> LaurentPoly {
        self.substitute_power(k as i64)
    }

    /// `q ↦ q^m` for any nonzero integer `m`.
    pub fn substitute_power(&self, m: i64) -> LaurentPoly {
        assert!(m != 0, "substitution q -> q^0 collapses the grading");
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e * m, c.clone())).collect(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    /// Inverse of a nonzero monomial.
    pub fn unit_inverse(&self) -> Result<LaurentPoly> {
        if !self.is_unit() {
            return Err(Error::InvalidArgument(format!(
                "`{self}` is not a unit of the Laurent polynomial ring"
            )));
        }
        let (&e, c) = self.terms.iter().next().unwrap();
        Ok(LaurentPoly::monomial_doubled(c.recip(), -e))
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at a rational point; half-integer exponents are rejected.
    pub fn evaluate(&self, q: &Rational) -> Result<Rational> {
        if !self.has_integer_exponents() {
            return Err(Error::InvalidArgument(format!(
                "cannot evaluate `{self}` with half-integer exponents"
            )));
        }
        if q.is_zero() && self.terms.keys().any(|&e| e < 0) {
            return Err(Error::InvalidArgument("evaluation of a pole at q = 0".into()));
        }
        let mut total = Rational::zero();
        for (&e, c) in &self.terms {
            let exp = (e / 2) as i32;
            total += c * num_traits::pow::Pow::pow(q, exp);
        }
        Ok(total)
    }

    pub fn evaluate_int(&self, q: u64) -> Result<Rational> {
        self.evaluate(&Rational::from_integer(BigInt::from(q)))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

fn exponent_text(e: i64) -> String {
    if e % 2 == 0 {
        let n = e / 2;
        if n == 1 {
            "q".to_string()
        } else {
            format!("q^{n}")
        }
    } else {
        format!("q^({e}/2)")
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest power first, e.g. `q^2 - 1/2q + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (&e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if e == 0 {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}")?;
                }
                f.write_str(&exponent_text(e))?;
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c.clone());
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}
