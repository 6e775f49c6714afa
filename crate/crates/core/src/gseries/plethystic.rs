use num_integer::Integer;
use num_traits::Zero;

use super::laurent::{ratio, LaurentPoly, Rational};
use super::series::{GradedSeries, Truncation};
use crate::error::{Error, Result};
use crate::numtheory::mobius;
use crate::quiver::DimVector;

/// How the Adams operation `ψ_k` acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdamsMode {
    /// `z^d ↦ z^{kd}`, coefficients fixed.
    ZOnly,
    /// `z^d ↦ z^{kd}` and `q ↦ q^k`.
    QAndZ,
}

fn gcd_of(d: &DimVector) -> u32 {
    d.iter().fold(0, |g, x| g.gcd(&x))
}

/// `d / k` when `k` divides every entry.
fn divide(d: &DimVector, k: u32) -> Option<DimVector> {
    d.iter()
        .all(|x| x % k == 0)
        .then(|| DimVector::new(d.iter().map(|x| x / k).collect()))
}

impl GradedSeries {
    pub fn adams(&self, k: u32, mode: AdamsMode) -> GradedSeries {
        let shifted = self.adams_z(k);
        match mode {
            AdamsMode::ZOnly => shifted,
            AdamsMode::QAndZ => shifted.map_coeffs(|c| c.adams(k)),
        }
    }
}

/// `Σ_{k>=1} ψ_k(f)/k`, computed degree by degree.
fn adams_sum(f: &GradedSeries, mode: AdamsMode) -> GradedSeries {
    let trunc = f.truncation().clone();
    let mut out = GradedSeries::zero(trunc.clone());
    for d in trunc.degrees().into_iter().skip(1) {
        let g = gcd_of(&d);
        let mut acc = LaurentPoly::zero();
        for k in 1..=g {
            if let Some(base) = divide(&d, k) {
                let c = f.coeff(&base);
                if c.is_zero() {
                    continue;
                }
                let c = match mode {
                    AdamsMode::ZOnly => c,
                    AdamsMode::QAndZ => c.adams(k),
                };
                acc += &c.scale(&ratio(1, k as i64));
            }
        }
        out.set(&d, acc);
    }
    out
}

/// `Exp(f) = exp(Σ_k ψ_k(f)/k)`; `f` must have zero constant term.
pub fn exp_plethystic(f: &GradedSeries, mode: AdamsMode) -> Result<GradedSeries> {
    if !f.constant_term().is_zero() {
        return Err(Error::Precondition(
            "plethystic Exp needs a series with zero constant term".into(),
        ));
    }
    adams_sum(f, mode).exp()
}

/// `Log(g) = Σ_k μ(k)/k ψ_k(log g)`; `g` must have constant term 1.
pub fn log_plethystic(g: &GradedSeries, mode: AdamsMode) -> Result<GradedSeries> {
    if !g.constant_term().is_one() {
        return Err(Error::Precondition(
            "plethystic Log needs a series with constant term 1".into(),
        ));
    }
    let l = g.log()?;
    let trunc = g.truncation().clone();
    let mut out = GradedSeries::zero(trunc.clone());
    for d in trunc.degrees().into_iter().skip(1) {
        let gcd = gcd_of(&d);
        let mut acc = LaurentPoly::zero();
        for k in 1..=gcd {
            let mu = mobius(k as u64);
            if mu == 0 {
                continue;
            }
            if let Some(base) = divide(&d, k) {
                let c = l.coeff(&base);
                if c.is_zero() {
                    continue;
                }
                let c = match mode {
                    AdamsMode::ZOnly => c,
                    AdamsMode::QAndZ => c.adams(k),
                };
                acc += &c.scale(&ratio(mu, k as i64));
            }
        }
        out.set(&d, acc);
    }
    Ok(out)
}

/// Plethystic exponential when the coefficients are only known through their
/// Adams images: `psi(d, k)` must return `ψ_k` of the degree-`d` coefficient.
///
/// Used to evaluate `Exp_{q,z}` numerically at a fixed `q`, where `ψ_k` of a
/// specialised coefficient is the original coefficient evaluated at `q^k`.
pub fn exp_plethystic_with(
    trunc: &Truncation,
    psi: impl Fn(&DimVector, u32) -> Result<Rational>,
) -> Result<GradedSeries> {
    let mut h = GradedSeries::zero(trunc.clone());
    for d in trunc.degrees().into_iter().skip(1) {
        let g = gcd_of(&d);
        let mut acc = Rational::zero();
        for k in 1..=g {
            if let Some(base) = divide(&d, k) {
                acc += psi(&base, k)? * ratio(1, k as i64);
            }
        }
        h.set(&d, LaurentPoly::constant(acc));
    }
    h.exp()
}

/// Character `1/(1 − f)` of the free associative algebra on generators with character `f`.
pub fn free_assoc_char(f: &GradedSeries) -> Result<GradedSeries> {
    if !f.constant_term().is_zero() {
        return Err(Error::Precondition(
            "generator series must have zero constant term".into(),
        ));
    }
    GradedSeries::one(f.truncation().clone()).sub(f).inverse()
}

/// Character of the free Lie algebra on generators with character `f`:
/// `Log_{q,z}(1/(1 − f))`. Only even cohomological degrees are accepted, so no
/// super signs arise.
pub fn free_lie_char(f: &GradedSeries) -> Result<GradedSeries> {
    for (d, c) in f.terms() {
        if let Some((e, _)) = c.terms().find(|(e, _)| e.rem_euclid(4) != 0) {
            return Err(Error::InvalidArgument(format!(
                "generator in degree {d} has odd cohomological degree (q-exponent {})",
                e as f64 / 2.0
            )));
        }
    }
    log_plethystic(&free_assoc_char(f)?, AdamsMode::QAndZ)
}

/// `f · (1 − u)^{-1}`, expanded to `terms` powers of the monomial `u`.
///
/// The geometric series in `u` is infinite, so the caller chooses how many
/// powers to keep. For numeric evaluation see [`tensor_hcstar_at`].
pub fn tensor_hcstar(f: &GradedSeries, u: &LaurentPoly, terms: u32) -> Result<GradedSeries> {
    check_hcstar_monomial(u)?;
    let mut geometric = LaurentPoly::zero();
    let mut power = LaurentPoly::one();
    for _ in 0..terms {
        geometric += &power;
        power = &power * u;
    }
    Ok(f.scale(&geometric))
}

/// `c / (1 − u)` evaluated at a rational point, the exact sum of the geometric series.
pub fn tensor_hcstar_at(c: &Rational, u: &LaurentPoly, q: &Rational) -> Result<Rational> {
    check_hcstar_monomial(u)?;
    let uq = u.evaluate(q)?;
    let denom = Rational::from_integer(1.into()) - uq;
    if denom.is_zero() {
        return Err(Error::InvalidArgument(format!("1 - ({u}) vanishes at q = {q}")));
    }
    Ok(c / denom)
}

fn check_hcstar_monomial(u: &LaurentPoly) -> Result<()> {
    if !u.is_unit() || u.min_doubled_exponent() == Some(0) {
        return Err(Error::InvalidArgument(format!(
            "`{u}` must be a single monomial with nonzero exponent"
        )));
    }
    Ok(())
}
