use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::burnside::gl_order;
use super::field::FqField;
use super::matrix::{intertwiner_dim, FqMatrix};
use super::poly::{monic_irreducibles, poly_pow, FqPoly};
use crate::error::{Error, Result};
use crate::gseries::Rational;
use crate::numtheory::partitions;

/// A conjugacy class of `GL_n(F_q)` in rational canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    /// Elementary divisor data: each irreducible `f` with its partition.
    pub divisors: Vec<(FqPoly, Vec<u32>)>,
    /// Block-diagonal sum of companion matrices of `f^λ_a`.
    pub representative: FqMatrix,
    pub centralizer_dim: usize,
    pub centralizer_order: BigInt,
    pub class_size: BigInt,
}

/// `Π_{i=1}^{m} (1 − x^{-i})` evaluated at `x = q^k`.
fn unit_fraction(q: u64, k: u32, m: u32) -> Rational {
    let x = Rational::from_integer(BigInt::from(q).pow(k));
    let mut acc = Rational::one();
    let mut power = Rational::one();
    for _ in 0..m {
        power /= &x;
        acc *= Rational::one() - &power;
    }
    acc
}

/// Order of the automorphism group of `⊕_a F_Q[t]/f^{λ_a}` given its endomorphism
/// dimension over `F_q`, with `Q = q^{deg f}`.
pub(crate) fn automorphism_order(q: u64, deg: u32, partition: &[u32], end_dim: usize) -> BigInt {
    let mut frac = Rational::from_integer(BigInt::from(q).pow(end_dim as u32));
    let mut parts = partition.to_vec();
    parts.sort_unstable();
    parts.dedup();
    for part in parts {
        let m = partition.iter().filter(|&&p| p == part).count() as u32;
        frac *= unit_fraction(q, deg, m);
    }
    assert!(frac.is_integer(), "automorphism group order must be an integer");
    frac.to_integer()
}

/// Every conjugacy class of `GL_n(F_q)`, with centralizers computed by solving
/// `gX = Xg` on the representative.
pub fn gl_conjugacy_classes(field: &FqField, n: u32) -> Result<Vec<ConjClass>> {
    let q = field.order() as u64;
    if n == 0 {
        return Ok(vec![ConjClass {
            divisors: Vec::new(),
            representative: FqMatrix::zero(0, 0),
            centralizer_dim: 0,
            centralizer_order: BigInt::one(),
            class_size: BigInt::one(),
        }]);
    }
    let irreducibles: Vec<FqPoly> = monic_irreducibles(field, n).into_iter().flatten().collect();
    let mut assignments: Vec<Vec<(usize, Vec<u32>)>> = Vec::new();
    enumerate_assignments(&irreducibles, 0, n, &mut Vec::new(), &mut assignments);

    let group = gl_order(n, q);
    let mut classes = Vec::with_capacity(assignments.len());
    for assignment in assignments {
        let mut blocks = Vec::new();
        let mut divisors = Vec::new();
        for (idx, lambda) in &assignment {
            let f = &irreducibles[*idx];
            for &part in lambda {
                blocks.push(FqMatrix::companion(field, &poly_pow(field, f, part)));
            }
            divisors.push((f.clone(), lambda.clone()));
        }
        let representative = FqMatrix::direct_sum(&blocks);
        let centralizer_dim = intertwiner_dim(field, &representative, &representative);

        // Primary components do not talk to each other, so the centralizer splits.
        let mut centralizer_order = BigInt::one();
        let mut split_dim = 0;
        for (f, lambda) in &divisors {
            let block = FqMatrix::direct_sum(
                &lambda
                    .iter()
                    .map(|&p| FqMatrix::companion(field, &poly_pow(field, f, p)))
                    .collect::<Vec<_>>(),
            );
            let end_dim = intertwiner_dim(field, &block, &block);
            split_dim += end_dim;
            centralizer_order *= automorphism_order(q, (f.len() - 1) as u32, lambda, end_dim);
        }
        if split_dim != centralizer_dim {
            return Err(Error::Identity(format!(
                "centralizer of {representative:?} does not split over primary parts"
            )));
        }
        if !(&group % &centralizer_order).is_zero() {
            return Err(Error::Identity(format!(
                "centralizer order {centralizer_order} does not divide |GL_{n}(F_{q})|"
            )));
        }
        let class_size = &group / &centralizer_order;
        classes.push(ConjClass {
            divisors,
            representative,
            centralizer_dim,
            centralizer_order,
            class_size,
        });
    }
    let total: BigInt = classes.iter().map(|c| &c.class_size).sum();
    if total != group {
        return Err(Error::Identity(format!(
            "class equation fails for GL_{n}(F_{q}): {total} != {group}"
        )));
    }
    Ok(classes)
}

fn enumerate_assignments(
    irreducibles: &[FqPoly],
    start: usize,
    remaining: u32,
    current: &mut Vec<(usize, Vec<u32>)>,
    out: &mut Vec<Vec<(usize, Vec<u32>)>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for idx in start..irreducibles.len() {
        let deg = (irreducibles[idx].len() - 1) as u32;
        for size in 1..=remaining / deg {
            for lambda in partitions(size) {
                current.push((idx, lambda));
                enumerate_assignments(irreducibles, idx + 1, remaining - deg * size, current, out);
                current.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        // GL_2(F_q) has q^2 - 1 classes; GL_3(F_q) has q^3 - q.
        for q in [2u64, 3, 4, 5] {
            let f = FqField::new(q).unwrap();
            assert_eq!(gl_conjugacy_classes(&f, 1).unwrap().len() as u64, q - 1);
            assert_eq!(gl_conjugacy_classes(&f, 2).unwrap().len() as u64, q * q - 1);
            assert_eq!(gl_conjugacy_classes(&f, 3).unwrap().len() as u64, q * q * q - q);
        }
    }

    #[test]
    fn representatives_are_invertible_and_sizes_consistent() {
        let f = FqField::new(3).unwrap();
        for c in gl_conjugacy_classes(&f, 3).unwrap() {
            assert!(c.representative.is_invertible(&f));
            assert_eq!(&c.class_size * &c.centralizer_order, gl_order(3, 3));
        }
    }
}
