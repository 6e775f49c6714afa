use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gseries::{LaurentPoly, Rational};

/// Exact Lagrange interpolation of a polynomial of degree `<= degree_bound`.
///
/// The first `degree_bound + 1` samples determine the polynomial (Newton
/// divided differences); every sample, including the surplus, is then checked
/// against it.
pub fn interpolate_poly(samples: &[(u64, BigInt)], degree_bound: usize) -> Result<LaurentPoly> {
    let needed = degree_bound + 1;
    if samples.len() < needed {
        return Err(Error::Precondition(format!(
            "interpolation to degree {degree_bound} needs {needed} samples, got {}",
            samples.len()
        )));
    }
    let mut xs: Vec<u64> = samples.iter().map(|(x, _)| *x).collect();
    xs.sort_unstable();
    if xs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument("interpolation nodes must be distinct".into()));
    }

    let nodes: Vec<Rational> = samples[..needed]
        .iter()
        .map(|(x, _)| Rational::from_integer(BigInt::from(*x)))
        .collect();
    let mut coef: Vec<Rational> = samples[..needed]
        .iter()
        .map(|(_, y)| Rational::from_integer(y.clone()))
        .collect();
    for level in 1..needed {
        for i in (level..needed).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&nodes[i] - &nodes[i - level]);
        }
    }
    // Horner on the Newton basis, accumulating monomial coefficients.
    let mut poly: Vec<Rational> = vec![Rational::zero(); needed];
    for i in (0..needed).rev() {
        // poly = poly·(t − x_i) + coef[i]
        let mut next = vec![Rational::zero(); needed];
        for (k, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k + 1 < needed {
                next[k + 1] += c;
            }
            next[k] -= c * &nodes[i];
        }
        next[0] += &coef[i];
        poly = next;
    }
    let result = LaurentPoly::from_doubled_terms(
        poly.into_iter()
            .enumerate()
            .map(|(k, c)| (2 * k as i64, c)),
    );
    for (x, y) in samples {
        let v = result.evaluate_int(*x)?;
        if v != Rational::from_integer(y.clone()) {
            return Err(Error::Identity(format!(
                "interpolant of degree <= {degree_bound} gives {v} at q = {x}, sample is {y}"
            )));
        }
    }
    Ok(result)
}
