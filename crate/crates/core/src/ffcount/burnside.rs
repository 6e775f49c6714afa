use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::classes::gl_conjugacy_classes;
use super::field::{FqField, DEFAULT_FIELD_LIMIT};
use super::matrix::{intertwiner_dim, FqMatrix};
use super::types::IsoClassTypes;
use crate::error::{Error, Result};
use crate::numtheory::is_prime_power;
use crate::quiver::{DimVector, Quiver};

/// Largest enumeration (group elements or class tuples) attempted by default.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 50_000_000;

/// Rational canonical forms are only enumerated up to this size per vertex.
pub const CLASS_BASED_MAX_DIM: u32 = 3;

/// `|GL_n(F_q)| = Π_{i<n} (q^n − q^i)`.
pub fn gl_order(n: u32, q: u64) -> BigInt {
    let qn = BigInt::from(q).pow(n);
    (0..n).map(|i| &qn - BigInt::from(q).pow(i)).product()
}

/// `|X_{Q,d}(F_q)| = q^{Σ_{α:i→j} d_i d_j}`.
pub fn count_all_reps(quiver: &Quiver, d: &DimVector, q: u64) -> Result<BigInt> {
    Ok(BigInt::from(q).pow(quiver.rep_space_dim(d)? as u32))
}

/// How the Burnside sum `(1/|GL_d|) Σ_g q^{fix(g)}` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountStrategy {
    /// Every element of `Π_i GL_{d_i}(F_q)`.
    Elementwise,
    /// Tuples of conjugacy classes in rational canonical form, `d_i <= 3`.
    ClassBased,
    /// Conjugacy types grouped over all irreducibles of each degree; any `q`, any `d`.
    TypeBased,
    /// `TypeBased`, the only strategy that reaches every sample field.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountOptions {
    pub strategy: CountStrategy,
    pub enumeration_budget: u64,
    pub field_limit: u64,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            strategy: CountStrategy::Auto,
            enumeration_budget: DEFAULT_ENUMERATION_BUDGET,
            field_limit: DEFAULT_FIELD_LIMIT,
        }
    }
}

impl CountOptions {
    pub fn with_strategy(strategy: CountStrategy) -> Self {
        CountOptions {
            strategy,
            ..CountOptions::default()
        }
    }
}

/// `Σ_f hist[f] q^f`, divided exactly by `|GL_d|`.
fn burnside_quotient(hist: &[BigInt], q: u64, d: &DimVector) -> Result<BigInt> {
    let mut total = BigInt::zero();
    let mut power = BigInt::one();
    for h in hist {
        total += h * &power;
        power *= q;
    }
    let group: BigInt = d.iter().map(|n| gl_order(n, q)).product();
    let (quot, rem) = total.div_rem(&group);
    if !rem.is_zero() {
        return Err(Error::Identity(format!(
            "Burnside sum {total} is not divisible by |GL_d| = {group}"
        )));
    }
    Ok(quot)
}

/// Number of isomorphism classes of `d`-dimensional representations over `F_q`.
pub fn count_iso_classes(
    quiver: &Quiver,
    d: &DimVector,
    q: u64,
    options: CountOptions,
) -> Result<BigInt> {
    quiver.check_dim(d)?;
    if !is_prime_power(q) {
        return Err(Error::InvalidArgument(format!("{q} is not a prime power")));
    }
    match options.strategy {
        CountStrategy::Elementwise => elementwise(quiver, d, q, options),
        CountStrategy::ClassBased => class_based(quiver, d, q, options),
        CountStrategy::TypeBased | CountStrategy::Auto => IsoClassTypes::new(quiver, d)?.count(q),
    }
}

/// All of `GL_n(F_q)`, by filtering every `n×n` matrix.
pub fn gl_elements(field: &FqField, n: u32) -> Vec<FqMatrix> {
    let n = n as usize;
    let q = field.order();
    let total = (q as u64).pow((n * n) as u32);
    (0..total)
        .into_par_iter()
        .map(|code| FqMatrix::from_index(n, n, q, code))
        .filter(|m| m.is_invertible(field))
        .collect()
}

/// Mixed-radix decoding of a flat tuple index.
fn decode(mut idx: u64, sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for i in (0..sizes.len()).rev() {
        out[i] = (idx % sizes[i] as u64) as usize;
        idx /= sizes[i] as u64;
    }
    out
}

/// Arrows between distinct vertices, and loop counts per vertex.
fn split_arrows(quiver: &Quiver) -> (Vec<(usize, usize)>, Vec<usize>) {
    let cross = quiver
        .arrows()
        .iter()
        .copied()
        .filter(|(s, t)| s != t)
        .collect();
    let loops = (0..quiver.vertex_count()).map(|i| quiver.loops(i)).collect();
    (cross, loops)
}

fn elementwise(quiver: &Quiver, d: &DimVector, q: u64, options: CountOptions) -> Result<BigInt> {
    let listing: u64 = d
        .iter()
        .map(|n| q.saturating_pow(n * n))
        .fold(0u64, |a, b| a.saturating_add(b));
    let tuples: BigInt = d.iter().map(|n| gl_order(n, q)).product();
    let budget = BigInt::from(options.enumeration_budget);
    if BigInt::from(listing) > budget || tuples > budget {
        return Err(Error::budget(
            "elementwise Burnside enumeration",
            tuples.max(BigInt::from(listing)),
            options.enumeration_budget,
        ));
    }
    let field = FqField::with_limit(q, options.field_limit)?;
    let groups: Vec<Vec<FqMatrix>> = d.iter().map(|n| gl_elements(&field, n)).collect();
    let (cross, loops) = split_arrows(quiver);
    let loop_fix: Vec<Vec<usize>> = groups
        .iter()
        .enumerate()
        .map(|(i, g)| {
            g.par_iter()
                .map(|m| loops[i] * intertwiner_dim(&field, m, m))
                .collect()
        })
        .collect();
    let sizes: Vec<usize> = groups.iter().map(|g| g.len()).collect();
    let rep_dim = quiver.rep_space_dim(d)? as usize;
    let total: u64 = sizes.iter().map(|&s| s as u64).product();

    let hist = (0..total)
        .into_par_iter()
        .fold(
            || vec![0u64; rep_dim + 1],
            |mut hist, idx| {
                let pick = decode(idx, &sizes);
                let mut fix: usize = pick.iter().enumerate().map(|(i, &k)| loop_fix[i][k]).sum();
                for &(s, t) in &cross {
                    fix += intertwiner_dim(&field, &groups[s][pick[s]], &groups[t][pick[t]]);
                }
                hist[fix] += 1;
                hist
            },
        )
        .reduce(
            || vec![0u64; rep_dim + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let hist: Vec<BigInt> = hist.into_iter().map(BigInt::from).collect();
    burnside_quotient(&hist, q, d)
}

fn class_based(quiver: &Quiver, d: &DimVector, q: u64, options: CountOptions) -> Result<BigInt> {
    if let Some(n) = d.iter().find(|&n| n > CLASS_BASED_MAX_DIM) {
        return Err(Error::Precondition(format!(
            "class-based Burnside enumerates rational canonical forms only up to size {CLASS_BASED_MAX_DIM}, got {n}"
        )));
    }
    let field = FqField::with_limit(q, options.field_limit)?;
    let classes: Vec<_> = d
        .iter()
        .map(|n| gl_conjugacy_classes(&field, n))
        .collect::<Result<_>>()?;
    let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
    let total = sizes.iter().try_fold(1u64, |a, &s| a.checked_mul(s as u64));
    let total = match total {
        Some(t) if t <= options.enumeration_budget => t,
        _ => {
            return Err(Error::budget(
                "class-based Burnside enumeration",
                sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("×"),
                options.enumeration_budget,
            ))
        }
    };
    let (cross, loops) = split_arrows(quiver);
    let rep_dim = quiver.rep_space_dim(d)? as usize;

    let hist = (0..total)
        .into_par_iter()
        .fold(
            || vec![BigInt::zero(); rep_dim + 1],
            |mut hist, idx| {
                let pick = decode(idx, &sizes);
                let mut weight = BigInt::one();
                let mut fix = 0;
                for (i, &k) in pick.iter().enumerate() {
                    let c = &classes[i][k];
                    weight *= &c.class_size;
                    fix += loops[i] * c.centralizer_dim;
                }
                for &(s, t) in &cross {
                    fix += intertwiner_dim(
                        &field,
                        &classes[s][pick[s]].representative,
                        &classes[t][pick[t]].representative,
                    );
                }
                hist[fix] += weight;
                hist
            },
        )
        .reduce(
            || vec![BigInt::zero(); rep_dim + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    burnside_quotient(&hist, q, d)
}
