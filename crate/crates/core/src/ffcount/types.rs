//! Burnside sums grouped by conjugacy type.
//!
//! A tuple `(g_i) ∈ Π_i GL_{d_i}(F_q)` makes each `F_q^{d_i}` an `F_q[t]`-module.
//! Its joint type records, for every irreducible `f ≠ t`, the tuple of
//! partitions describing the `f`-primary parts. The fixed-point dimension and
//! the number of tuples of a given type depend only on the multiset of
//! `(deg f, partitions)` blocks, so the Burnside sum becomes a finite sum over
//! such multisets whose terms are explicit in `q`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use super::classes::automorphism_order;
use super::field::FqField;
use super::matrix::{intertwiner_dim, FqMatrix};
use super::poly::{poly_pow, some_irreducible};
use crate::error::{Error, Result};
use crate::gseries::Rational;
use crate::numtheory::{irreducible_count, is_prime_power, partitions};
use crate::quiver::{DimVector, Quiver};

/// Primary block shape: degree of `f` and one partition per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Block {
    degree: u32,
    parts: Vec<Vec<u32>>,
}

#[derive(Debug, Clone)]
struct BlockData {
    block: Block,
    /// `Σ_{α:i→j} dim Hom(M_i, M_j)` over the primary parts.
    fix: u64,
    /// Endomorphism dimension of each vertex module.
    end_dims: Vec<usize>,
}

/// Modules `⊕_a F[t]/f^{λ_a}` over `F_2` with `f` a fixed irreducible of the given degree.
/// Hom dimensions over any field depend only on `deg f` and the partitions.
struct HomOracle {
    field: FqField,
    cache: HashMap<(u32, Vec<u32>, Vec<u32>), usize>,
}

impl HomOracle {
    fn new() -> Self {
        HomOracle {
            field: FqField::new(2).expect("F_2 exists"),
            cache: HashMap::new(),
        }
    }

    fn module(&self, degree: u32, lambda: &[u32]) -> FqMatrix {
        let f = some_irreducible(&self.field, degree);
        FqMatrix::direct_sum(
            &lambda
                .iter()
                .map(|&p| FqMatrix::companion(&self.field, &poly_pow(&self.field, &f, p)))
                .collect::<Vec<_>>(),
        )
    }

    fn hom_dim(&mut self, degree: u32, a: &[u32], b: &[u32]) -> usize {
        if a.is_empty() || b.is_empty() {
            return 0;
        }
        let key = (degree, a.to_vec(), b.to_vec());
        if let Some(&v) = self.cache.get(&key) {
            return v;
        }
        let v = intertwiner_dim(&self.field, &self.module(degree, a), &self.module(degree, b));
        self.cache.insert(key, v);
        v
    }
}

/// Precomputed conjugacy-type data for counting `d`-dimensional representations
/// of a quiver at any field size.
#[derive(Debug, Clone)]
pub struct IsoClassTypes {
    dim: DimVector,
    blocks: Vec<BlockData>,
    /// Each type as `(block index, multiplicity)` pairs.
    types: Vec<Vec<(usize, u32)>>,
}

fn partition_tuples(budget: &[u32], degree: u32) -> Vec<Vec<Vec<u32>>> {
    let mut out = vec![Vec::new()];
    for &b in budget {
        let mut next = Vec::new();
        for prefix in &out {
            for size in 0..=b / degree {
                for lambda in partitions(size) {
                    let mut p: Vec<Vec<u32>> = prefix.clone();
                    p.push(lambda);
                    next.push(p);
                }
            }
        }
        out = next;
    }
    out.into_iter().filter(|t| t.iter().any(|l| !l.is_empty())).collect()
}

impl IsoClassTypes {
    pub fn new(quiver: &Quiver, d: &DimVector) -> Result<Self> {
        quiver.check_dim(d)?;
        let mut oracle = HomOracle::new();
        let max_degree = d.iter().max().unwrap_or(0);
        let mut blocks = Vec::new();
        for degree in 1..=max_degree {
            for parts in partition_tuples(d.entries(), degree) {
                let fix = quiver
                    .arrows()
                    .iter()
                    .map(|&(s, t)| oracle.hom_dim(degree, &parts[s], &parts[t]) as u64)
                    .sum();
                let end_dims = parts.iter().map(|l| oracle.hom_dim(degree, l, l)).collect();
                blocks.push(BlockData {
                    block: Block { degree, parts },
                    fix,
                    end_dims,
                });
            }
        }
        let sizes: Vec<Vec<u32>> = blocks
            .iter()
            .map(|b| {
                b.block
                    .parts
                    .iter()
                    .map(|l| b.block.degree * l.iter().sum::<u32>())
                    .collect()
            })
            .collect();
        let mut types = Vec::new();
        enumerate_types(&sizes, 0, d.entries().to_vec(), &mut Vec::new(), &mut types);
        Ok(IsoClassTypes {
            dim: d.clone(),
            blocks,
            types,
        })
    }

    pub fn type_count(&self) -> usize {
        self.types.len()
    }

    /// `(1/|GL_d|) Σ_g q^{fix(g)}` at the prime power `q`, checked to be an integer.
    pub fn count(&self, q: u64) -> Result<BigInt> {
        if !is_prime_power(q) {
            return Err(Error::InvalidArgument(format!("{q} is not a prime power")));
        }
        let max_degree = self.dim.iter().max().unwrap_or(0);
        let mut available: Vec<BigInt> = (1..=max_degree).map(|k| irreducible_count(q, k)).collect();
        if let Some(first) = available.first_mut() {
            *first -= 1; // t is not invertible
        }
        let weights: Vec<Rational> = self
            .blocks
            .iter()
            .map(|b| {
                let aut: BigInt = b
                    .block
                    .parts
                    .iter()
                    .zip(&b.end_dims)
                    .map(|(l, &e)| automorphism_order(q, b.block.degree, l, e))
                    .product();
                Rational::new(BigInt::from(q).pow(b.fix as u32), aut)
            })
            .collect();

        let mut total = Rational::from_integer(BigInt::from(0));
        for ty in &self.types {
            let mut term = Rational::one();
            let mut used = vec![0u32; max_degree as usize];
            for &(idx, mult) in ty {
                let k = self.blocks[idx].block.degree as usize - 1;
                for _ in 0..mult {
                    term *= Rational::from_integer(&available[k] - BigInt::from(used[k]));
                    used[k] += 1;
                }
                let factorial: BigInt = (1..=mult).map(BigInt::from).product();
                term /= Rational::from_integer(factorial);
                for _ in 0..mult {
                    term *= &weights[idx];
                }
            }
            total += term;
        }
        if !total.is_integer() {
            return Err(Error::Identity(format!(
                "type-grouped Burnside sum {total} is not an integer"
            )));
        }
        Ok(total.to_integer())
    }
}

fn enumerate_types(
    sizes: &[Vec<u32>],
    start: usize,
    remaining: Vec<u32>,
    current: &mut Vec<(usize, u32)>,
    out: &mut Vec<Vec<(usize, u32)>>,
) {
    if remaining.iter().all(|&r| r == 0) {
        out.push(current.clone());
        return;
    }
    for idx in start..sizes.len() {
        let mut rest = remaining.clone();
        let mut mult = 0;
        loop {
            if !rest.iter().zip(&sizes[idx]).all(|(r, s)| r >= s) {
                break;
            }
            rest = rest.iter().zip(&sizes[idx]).map(|(r, s)| r - s).collect();
            mult += 1;
            current.push((idx, mult));
            enumerate_types(sizes, idx + 1, rest.clone(), current, out);
            current.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugacy_class_counts_from_the_arrowless_vertex() {
        // Without arrows there is a single representation up to isomorphism.
        let point = Quiver::one_vertex(0);
        let t = IsoClassTypes::new(&point, &DimVector::new(vec![3])).unwrap();
        for q in [2u64, 3, 7] {
            assert_eq!(t.count(q).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn jordan_counts_conjugacy_classes() {
        // Isoclasses of the Jordan quiver in dimension n are conjugacy classes of gl_n.
        let jordan = Quiver::one_vertex(1);
        let t2 = IsoClassTypes::new(&jordan, &DimVector::new(vec![2])).unwrap();
        let t3 = IsoClassTypes::new(&jordan, &DimVector::new(vec![3])).unwrap();
        for q in [2u64, 3, 4, 5, 7] {
            let qi = BigInt::from(q);
            assert_eq!(t2.count(q).unwrap(), &qi * &qi + &qi);
            assert_eq!(t3.count(q).unwrap(), &qi * &qi * &qi + &qi * &qi + &qi);
        }
    }
}
