//! Borcherds–Bozec root data of a quiver and the graded dimensions of its
//! positive part and enveloping algebra.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gseries::{exp_plethystic, free_assoc_char, free_lie_char, AdamsMode, GradedSeries, LaurentPoly, Truncation};
use crate::quiver::{DimVector, Quiver, VertexClass};

/// A simple root `(i, n)`, of class `n·1_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimpleRoot {
    pub vertex: usize,
    pub n: u32,
}

impl SimpleRoot {
    pub fn class(&self, quiver: &Quiver) -> DimVector {
        quiver.unit(self.vertex).scale(self.n)
    }
}

impl fmt::Display for SimpleRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.vertex, self.n)
    }
}

/// Simple roots with `n <= n_max`: real vertices contribute `(i, 1)` only,
/// vertices with loops contribute every `(i, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleRootSet {
    pub n_max: u32,
    pub elements: Vec<SimpleRoot>,
}

impl SimpleRootSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, root: SimpleRoot) -> bool {
        self.elements.binary_search(&root).is_ok()
    }
}

pub fn simple_roots(quiver: &Quiver, n_max: u32) -> SimpleRootSet {
    let mut elements = Vec::new();
    for i in 0..quiver.vertex_count() {
        let top = match quiver.vertex_class(i) {
            VertexClass::Real => n_max.min(1),
            _ => n_max,
        };
        elements.extend((1..=top).map(|n| SimpleRoot { vertex: i, n }));
    }
    SimpleRootSet { n_max, elements }
}

/// `((i,n),(j,m)) = nm (1_i, 1_j)`.
pub fn bb_form(quiver: &Quiver, a: SimpleRoot, b: SimpleRoot) -> Result<i64> {
    let ui = unit_checked(quiver, a.vertex)?;
    let uj = unit_checked(quiver, b.vertex)?;
    Ok(a.n as i64 * b.n as i64 * quiver.sym_euler_form(&ui, &uj)?)
}

fn unit_checked(quiver: &Quiver, i: usize) -> Result<DimVector> {
    if i >= quiver.vertex_count() {
        return Err(Error::InvalidArgument(format!("vertex index {i} out of range")));
    }
    Ok(quiver.unit(i))
}

/// One defining relation of the Borcherds algebra, kept as data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Relation {
    /// `[h_i, h_j] = 0`.
    CartanCommute { i: usize, j: usize },
    /// `[h_j, e_r] = weight · e_r`.
    CartanOnE { j: usize, root: SimpleRoot, weight: i64 },
    /// `[h_j, f_r] = weight · f_r`.
    CartanOnF { j: usize, root: SimpleRoot, weight: i64 },
    /// `ad(e_real)^exponent (e_other) = 0`, and likewise for `f`.
    Serre { real: SimpleRoot, other: SimpleRoot, exponent: i64 },
    /// `[e_a, e_b] = [f_a, f_b] = 0` because `(a, b) = 0`.
    Orthogonal { a: SimpleRoot, b: SimpleRoot },
    /// `[e_a, f_b] = δ_{ab} n h_i` for `a = (i, n)`.
    Pairing { a: SimpleRoot, b: SimpleRoot, coefficient: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationList {
    pub relations: Vec<Relation>,
}

impl RelationList {
    pub fn serre(&self) -> impl Iterator<Item = &Relation> {
        self.relations.iter().filter(|r| matches!(r, Relation::Serre { .. }))
    }

    pub fn orthogonal(&self) -> impl Iterator<Item = &Relation> {
        self.relations.iter().filter(|r| matches!(r, Relation::Orthogonal { .. }))
    }
}

/// All relations among the generators attached to `roots`.
pub fn relations(quiver: &Quiver, roots: &SimpleRootSet) -> Result<RelationList> {
    let n = quiver.vertex_count();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            out.push(Relation::CartanCommute { i, j });
        }
    }
    for j in 0..n {
        for &root in &roots.elements {
            let w = root.n as i64 * quiver.sym_euler_form(&quiver.unit(j), &quiver.unit(root.vertex))?;
            out.push(Relation::CartanOnE { j, root, weight: w });
            out.push(Relation::CartanOnF { j, root, weight: -w });
        }
    }
    for &real in &roots.elements {
        if quiver.vertex_class(real.vertex) != VertexClass::Real {
            continue;
        }
        for &other in &roots.elements {
            if other != real {
                let exponent = 1 - bb_form(quiver, real, other)?;
                out.push(Relation::Serre { real, other, exponent });
            }
        }
    }
    for (k, &a) in roots.elements.iter().enumerate() {
        for &b in &roots.elements[k..] {
            if bb_form(quiver, a, b)? == 0 {
                out.push(Relation::Orthogonal { a, b });
            }
        }
    }
    for &a in &roots.elements {
        for &b in &roots.elements {
            let coefficient = if a == b { a.n } else { 0 };
            out.push(Relation::Pairing { a, b, coefficient });
        }
    }
    Ok(RelationList { relations: out })
}

/// `Σ_{(i,n)} z^{n·1_i}` over the simple roots whose class lies in the box.
pub fn generator_series(quiver: &Quiver, trunc: &Truncation) -> Result<GradedSeries> {
    quiver.check_dim(trunc.bound())?;
    let n_max = trunc.bound().iter().max().unwrap_or(0);
    let terms = simple_roots(quiver, n_max)
        .elements
        .into_iter()
        .map(|r| r.class(quiver))
        .filter(|d| trunc.contains(d))
        .map(|d| (d, LaurentPoly::one()));
    Ok(GradedSeries::from_terms(trunc.clone(), terms))
}

/// Graded dimensions of `n⁺`, which is free on the simple roots when the quiver is totally negative.
pub fn nplus_dims(quiver: &Quiver, trunc: &Truncation) -> Result<GradedSeries> {
    if quiver.vertex_count() > 0 && !quiver.is_totally_negative() {
        return Err(Error::NotTotallyNegative(
            "n⁺ is free only for totally negative quivers; Serre relations are not evaluated".into(),
        ));
    }
    free_lie_char(&generator_series(quiver, trunc)?)
}

/// Graded dimensions of `U(n⁺)`.
///
/// Totally negative quivers give the free associative algebra. A single
/// vertex with one loop has commuting generators in every degree, and a single
/// vertex without loops has one generator in degree one.
pub fn env_dims(quiver: &Quiver, trunc: &Truncation) -> Result<GradedSeries> {
    let gens = generator_series(quiver, trunc)?;
    if quiver.vertex_count() == 0 || quiver.is_totally_negative() {
        return free_assoc_char(&gens);
    }
    if quiver.vertex_count() == 1 {
        return match quiver.vertex_class(0) {
            VertexClass::Isotropic | VertexClass::Real => exp_plethystic(&gens, AdamsMode::ZOnly),
            VertexClass::Hyperbolic => unreachable!("one hyperbolic vertex is totally negative"),
        };
    }
    Err(Error::NotTotallyNegative(
        "U(n⁺) dimensions are available for totally negative quivers and single vertices only".into(),
    ))
}

/// Number of irreducible components of the strictly seminilpotent stack in
/// dimension `n` at one vertex with `g` loops: a point for `g = 0`,
/// partitions of `n` for `g = 1`, compositions of `n` for `g >= 2`.
pub fn ssn_components_one_vertex(g: usize, n: u32) -> BigInt {
    match g {
        0 => BigInt::one(),
        1 => partition_count(n),
        _ if n == 0 => BigInt::one(),
        _ => BigInt::one() << (n - 1),
    }
}

fn partition_count(n: u32) -> BigInt {
    let n = n as usize;
    let mut p = vec![BigInt::from(0); n + 1];
    p[0] = BigInt::one();
    for part in 1..=n {
        for m in part..=n {
            let add = p[m - part].clone();
            p[m] += add;
        }
    }
    p.swap_remove(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gseries::series_equal;

    fn coeffs(s: &GradedSeries, n: u32) -> Vec<LaurentPoly> {
        (0..=n).map(|k| s.coeff(&DimVector::new(vec![k]))).collect()
    }

    #[test]
    fn simple_root_sets() {
        let roots = simple_roots(&Quiver::one_vertex(2), 3);
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(SimpleRoot { vertex: 0, n: 3 }));
        assert_eq!(simple_roots(&Quiver::one_vertex(0), 5).len(), 1);
        assert!(simple_roots(&Quiver::one_vertex(2), 0).is_empty());
    }

    #[test]
    fn bb_form_values() {
        let q = Quiver::one_vertex(2);
        let r = |n| SimpleRoot { vertex: 0, n };
        assert_eq!(bb_form(&q, r(1), r(1)).unwrap(), -2);
        assert_eq!(bb_form(&q, r(2), r(3)).unwrap(), -12);
        let a = Quiver::from_indices(2, &[(0, 1)]).unwrap();
        let s = |vertex| SimpleRoot { vertex, n: 1 };
        assert_eq!(bb_form(&a, s(0), s(1)).unwrap(), -1);
        assert!(bb_form(&a, s(0), s(2)).is_err());
    }

    #[test]
    fn relation_records() {
        let a2 = Quiver::from_indices(2, &[(0, 1)]).unwrap();
        let rel = relations(&a2, &simple_roots(&a2, 2)).unwrap();
        let serre: Vec<_> = rel.serre().collect();
        assert_eq!(serre.len(), 2);
        assert!(serre
            .iter()
            .all(|r| matches!(r, Relation::Serre { exponent: 2, .. })));
        assert_eq!(rel.orthogonal().count(), 0);

        let jordan = Quiver::one_vertex(1);
        let rel = relations(&jordan, &simple_roots(&jordan, 2)).unwrap();
        assert_eq!(rel.orthogonal().count(), 3);
        assert_eq!(rel.serre().count(), 0);
    }

    #[test]
    fn hyperbolic_vertex_dimensions() {
        let q = Quiver::one_vertex(2);
        let t = Truncation::single(6);
        let lie = nplus_dims(&q, &t).unwrap();
        let expected: Vec<LaurentPoly> = [0, 1, 1, 2, 3, 6, 9].iter().map(|&c| LaurentPoly::from_int(c)).collect();
        assert_eq!(coeffs(&lie, 6), expected);
        let env = env_dims(&q, &t).unwrap();
        for n in 0..=6 {
            assert_eq!(env.coeff(&DimVector::new(vec![n])), LaurentPoly::constant(ssn_components_one_vertex(2, n).into()));
        }
        assert!(series_equal(&exp_plethystic(&lie, AdamsMode::QAndZ).unwrap(), &env));
    }

    #[test]
    fn small_vertices() {
        let t = Truncation::single(5);
        let jordan = env_dims(&Quiver::one_vertex(1), &t).unwrap();
        let partitions: Vec<LaurentPoly> = [1, 1, 2, 3, 5, 7].iter().map(|&c| LaurentPoly::from_int(c)).collect();
        assert_eq!(coeffs(&jordan, 5), partitions);
        let point = env_dims(&Quiver::one_vertex(0), &t).unwrap();
        assert_eq!(coeffs(&point, 5), vec![LaurentPoly::one(); 6]);
        assert!(matches!(nplus_dims(&Quiver::one_vertex(1), &t), Err(Error::NotTotallyNegative(_))));
    }

    #[test]
    fn unit_degrees_and_empty_quiver() {
        let q = Quiver::two_vertex(2, 1);
        let s = nplus_dims(&q, &Truncation::new(DimVector::new(vec![2, 2]))).unwrap();
        assert_eq!(s.coeff(&q.unit(0)), LaurentPoly::one());
        assert_eq!(s.coeff(&q.unit(1)), LaurentPoly::one());
        let empty = Quiver::from_indices(0, &[]).unwrap();
        assert!(nplus_dims(&empty, &Truncation::new(DimVector::zero(0))).unwrap().is_zero());
    }

    #[test]
    fn ssn_counts() {
        assert_eq!(ssn_components_one_vertex(2, 3), BigInt::from(4));
        assert_eq!(ssn_components_one_vertex(1, 4), BigInt::from(5));
        assert_eq!(ssn_components_one_vertex(0, 1), BigInt::from(1));
        assert_eq!(ssn_components_one_vertex(5, 0), BigInt::from(1));
    }
}
