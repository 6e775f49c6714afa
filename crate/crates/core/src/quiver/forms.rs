use serde::{Deserialize, Serialize};

use super::{DimVector, Quiver};
use crate::error::{Error, Result};

/// `p(d) = 2 - (d,d)_Π`, with a flag for the zero class (where `p = 2` is a convention only).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PValue {
    pub value: i64,
    pub zero_class: bool,
}

/// Ranks of the three-term RHom complex of two preprojective representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhomRanks {
    pub rank_minus1: i64,
    pub rank_0: i64,
    pub rank_plus1: i64,
    /// `-rank_{-1} + rank_0 - rank_{+1}`.
    pub vrank: i64,
}

/// Dimensions of the spaces entering the extension-stack shift bookkeeping.
///
/// Stack dimensions are `dim(space) - dim(P)` for the parabolic `P` stabilising `k^{d1} ⊂ k^{d1+d2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftDimensions {
    pub parabolic: i64,
    pub levi: i64,
    pub nilradical: i64,
    /// Representations of the double quiver preserving the flag.
    pub flag_reps: i64,
    pub reps_d1: i64,
    pub reps_d2: i64,
    /// Triples `(ρ1, ρ2, g)` with `μ(ρ1) × μ(ρ2) = l(g)`.
    pub z_space: i64,
    pub dim_qtilde: i64,
    pub dim_extension_stack: i64,
    pub dim_z_stack: i64,
    /// `dim q̃ + dim 𝔐_{Q̄,d1,d2} - dim 𝔷`.
    pub lhs: i64,
    /// `-⟨d1,d2⟩ - ⟨d2,d1⟩`.
    pub rhs_euler: i64,
    /// `-(d,d)/2 + (d1,d1)/2 + (d2,d2)/2`.
    pub rhs_symmetric: i64,
}

impl ShiftDimensions {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs_euler && self.rhs_euler == self.rhs_symmetric
    }
}

impl Quiver {
    /// `⟨a,b⟩ = Σ_i a_i b_i - Σ_{α: i→j} a_i b_j`; the source of an arrow pairs with `a`.
    pub fn euler_form(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        let arrows: i64 = self
            .arrows()
            .iter()
            .map(|&(s, t)| a[s] as i64 * b[t] as i64)
            .sum();
        Ok(a.dot(b) - arrows)
    }

    /// `(a,b)_Π = ⟨a,b⟩ + ⟨b,a⟩`.
    pub fn sym_euler_form(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        Ok(self.euler_form(a, b)? + self.euler_form(b, a)?)
    }

    /// Euler form matrix on basis vectors.
    pub fn euler_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.euler_form(&self.unit(i), &self.unit(j)).unwrap())
                    .collect()
            })
            .collect()
    }

    /// At least two loops everywhere and an arrow between every pair of distinct vertices.
    ///
    /// Since `(-,-)_Π` is bilinear, this is equivalent to negativity on all pairs of
    /// basis vectors, which is asserted.
    pub fn is_totally_negative(&self) -> bool {
        let n = self.vertex_count();
        let combinatorial = (0..n).all(|i| self.loops(i) >= 2)
            && (0..n).all(|i| {
                (0..n).all(|j| i == j || self.arrow_count(i, j) + self.arrow_count(j, i) > 0)
            });
        let on_basis = (0..n).all(|i| {
            (0..n).all(|j| self.sym_euler_form(&self.unit(i), &self.unit(j)).unwrap() < 0)
        });
        assert_eq!(
            combinatorial, on_basis,
            "totally-negative criterion disagrees with basis check"
        );
        combinatorial
    }

    pub fn p_value(&self, d: &DimVector) -> Result<PValue> {
        let dd = self.sym_euler_form(d, d)?;
        Ok(PValue {
            value: 2 - dd,
            zero_class: d.is_zero(),
        })
    }

    pub fn p(&self, d: &DimVector) -> i64 {
        2 - self.sym_euler_form(d, d).expect("dimension vector of matching length")
    }

    /// Ranks of `Hom(V2,V1) → ⊕_{α: i→j ∈ Q̄} Hom(V2_i, V1_j) → Hom(V2,V1)`.
    pub fn rhom_vrank(&self, d1: &DimVector, d2: &DimVector) -> Result<RhomRanks> {
        self.check_dim(d1)?;
        self.check_dim(d2)?;
        let outer = d1.dot(d2);
        let middle: i64 = self
            .double()
            .arrows()
            .iter()
            .map(|&(i, j)| d2[i] as i64 * d1[j] as i64)
            .sum();
        let ranks = RhomRanks {
            rank_minus1: outer,
            rank_0: middle,
            rank_plus1: outer,
            vrank: middle - 2 * outer,
        };
        let expected = self.sym_euler_form(d1, d2)?;
        if -ranks.vrank != expected {
            return Err(Error::Identity(format!(
                "-vrank = {} but (d1,d2)_Π = {expected}",
                -ranks.vrank
            )));
        }
        Ok(ranks)
    }

    /// Dimensions of the parabolic, flag and `Z` spaces for the extension `d1 ⊂ d1 + d2`.
    pub fn shift_dimensions(&self, d1: &DimVector, d2: &DimVector) -> Result<ShiftDimensions> {
        self.check_dim(d1)?;
        self.check_dim(d2)?;
        let d = d1 + d2;
        let n = self.vertex_count();
        let doubled = self.double();
        let sq = |x: u32| x as i64 * x as i64;
        let mul = |x: u32, y: u32| x as i64 * y as i64;

        // P: block upper triangular, missing the Hom(k^{d1}, k^{d2}) block.
        let parabolic: i64 = (0..n).map(|i| sq(d[i]) - mul(d1[i], d2[i])).sum();
        let levi: i64 = (0..n).map(|i| sq(d1[i]) + sq(d2[i])).sum();
        let nilradical: i64 = (0..n).map(|i| mul(d1[i], d2[i])).sum();
        debug_assert_eq!(parabolic, levi + nilradical);

        let reps = |e: &DimVector| -> i64 {
            doubled.arrows().iter().map(|&(i, j)| mul(e[i], e[j])).sum()
        };
        // x_α preserves k^{d1}: the block k^{d1}_i → k^{d2}_j vanishes.
        let flag_reps: i64 = doubled
            .arrows()
            .iter()
            .map(|&(i, j)| mul(d[i], d[j]) - mul(d1[i], d2[j]))
            .sum();
        let reps_d1 = reps(d1);
        let reps_d2 = reps(d2);
        // l(g) is prescribed by (ρ1, ρ2); only the nilradical part of g is free.
        let z_space = reps_d1 + reps_d2 + (parabolic - levi);

        let dim_qtilde = -d1.dot(d2);
        let dim_extension_stack = flag_reps - parabolic;
        let dim_z_stack = z_space - parabolic;
        let lhs = dim_qtilde + dim_extension_stack - dim_z_stack;
        let rhs_euler = -self.euler_form(d1, d2)? - self.euler_form(d2, d1)?;
        let twice = -self.sym_euler_form(&d, &d)?
            + self.sym_euler_form(d1, d1)?
            + self.sym_euler_form(d2, d2)?;
        debug_assert_eq!(twice % 2, 0);
        Ok(ShiftDimensions {
            parabolic,
            levi,
            nilradical,
            flag_reps,
            reps_d1,
            reps_d2,
            z_space,
            dim_qtilde,
            dim_extension_stack,
            dim_z_stack,
            lhs,
            rhs_euler,
            rhs_symmetric: twice / 2,
        })
    }

    pub fn shift_identity_check(&self, d1: &DimVector, d2: &DimVector) -> Result<bool> {
        Ok(self.shift_dimensions(d1, d2)?.holds())
    }
}

/// Numerical class of a sheaf on a symplectic surface: rank, `c1` (as a multiple of a
/// fixed curve class, so `c1·c1' = c1 c1'`), and `ch2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheafClass {
    pub rank: i64,
    pub c1: i64,
    pub ch2: i64,
}

/// `χ(v,w) = -c1·c1' + 2 r r' + r ch2' + ch2 r'`.
pub fn euler_form_surface(v: SheafClass, w: SheafClass) -> i64 {
    -v.c1 * w.c1 + 2 * v.rank * w.rank + v.rank * w.ch2 + v.ch2 * w.rank
}

/// Euler form of Higgs sheaves on a genus `g` curve: `2(1-g) rank·rank'`.
pub fn euler_form_higgs(genus: i64, rank_a: i64, rank_b: i64) -> i64 {
    2 * (1 - genus) * rank_a * rank_b
}

/// Euler form of the deformed fundamental group algebra of a genus `g` surface: `2(1-g)de`.
pub fn euler_form_fundamental_group(genus: i64, d: i64, e: i64) -> i64 {
    2 * (1 - genus) * d * e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[u32]) -> DimVector {
        DimVector::new(v.to_vec())
    }

    #[test]
    fn euler_form_examples() {
        let s2 = Quiver::one_vertex(2);
        assert_eq!(s2.euler_form(&dv(&[1]), &dv(&[1])).unwrap(), -1);
        let a2 = Quiver::from_indices(2, &[(0, 1)]).unwrap();
        assert_eq!(a2.euler_form(&dv(&[1, 0]), &dv(&[0, 1])).unwrap(), -1);
        assert_eq!(a2.euler_form(&dv(&[0, 1]), &dv(&[1, 0])).unwrap(), 0);
        assert_eq!(a2.euler_form(&dv(&[0, 0]), &dv(&[3, 5])).unwrap(), 0);
        assert!(matches!(
            a2.euler_form(&dv(&[1]), &dv(&[1, 1])),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn symmetric_form_matches_fundamental_group_formula() {
        for g in 0..5usize {
            let q = Quiver::one_vertex(g);
            for d in 0..4u32 {
                for e in 0..4u32 {
                    assert_eq!(
                        q.sym_euler_form(&dv(&[d]), &dv(&[e])).unwrap(),
                        euler_form_fundamental_group(g as i64, d as i64, e as i64)
                    );
                }
            }
        }
        let q = Quiver::two_vertex(2, 1);
        assert_eq!(q.sym_euler_form(&dv(&[1, 0]), &dv(&[0, 1])).unwrap(), -1);
        assert_eq!(q.sym_euler_form(&dv(&[1, 0]), &dv(&[1, 0])).unwrap(), -2);
    }

    #[test]
    fn totally_negative_examples() {
        assert!(Quiver::one_vertex(2).is_totally_negative());
        assert!(!Quiver::one_vertex(1).is_totally_negative());
        assert!(Quiver::two_vertex(2, 1).is_totally_negative());
        assert!(!Quiver::two_vertex(2, 0).is_totally_negative());
        assert!(!Quiver::two_vertex(1, 3).is_totally_negative());
    }

    #[test]
    fn p_values() {
        for g in 0..5usize {
            let q = Quiver::one_vertex(g);
            for n in 0..5u32 {
                let expected = 2 + 2 * (g as i64 - 1) * (n as i64).pow(2);
                assert_eq!(q.p(&dv(&[n])), expected);
            }
            assert_eq!(q.p(&dv(&[1])), 2 * g as i64);
        }
        let q = Quiver::two_vertex(2, 1);
        // (d,d) = (1_0,1_0) + (1_1,1_1) + 2(1_0,1_1) = -2 - 2 - 2
        assert_eq!(q.p(&dv(&[1, 1])), 8);
        let zero = q.p_value(&dv(&[0, 0])).unwrap();
        assert_eq!(zero, PValue { value: 2, zero_class: true });
        assert!(!q.p_value(&dv(&[1, 0])).unwrap().zero_class);
    }

    #[test]
    fn rhom_ranks() {
        let q = Quiver::one_vertex(2);
        let r = q.rhom_vrank(&dv(&[1]), &dv(&[1])).unwrap();
        assert_eq!((r.rank_minus1, r.rank_0, r.rank_plus1, r.vrank), (1, 4, 1, 2));
        let z = q.rhom_vrank(&dv(&[0]), &dv(&[3])).unwrap();
        assert_eq!((z.rank_minus1, z.rank_0, z.rank_plus1, z.vrank), (0, 0, 0, 0));

        let jj = Quiver::from_indices(2, &[(0, 0), (1, 1)]).unwrap();
        let d = dv(&[1, 1]);
        let r = jj.rhom_vrank(&d, &d).unwrap();
        // ranks: outer 2, middle 2 loops doubled = 4 arrows of size 1
        assert_eq!((r.rank_minus1, r.rank_0, r.rank_plus1), (2, 4, 2));
        assert_eq!(-r.vrank, jj.sym_euler_form(&d, &d).unwrap());
    }

    #[test]
    fn shift_identity_examples() {
        let q = Quiver::one_vertex(2);
        let s = q.shift_dimensions(&dv(&[1]), &dv(&[1])).unwrap();
        assert_eq!(s.rhs_euler, 2);
        assert!(s.holds());
        let zero = q.shift_dimensions(&dv(&[0]), &dv(&[2])).unwrap();
        assert_eq!((zero.lhs, zero.rhs_euler), (0, 0));
        assert!(zero.holds());
    }

    #[test]
    fn surface_forms() {
        let curve = SheafClass { rank: 0, c1: 3, ch2: 5 };
        assert_eq!(euler_form_surface(curve, curve), -9);
        let point = SheafClass { rank: 1, c1: 0, ch2: 0 };
        assert_eq!(euler_form_surface(point, point), 2);
        let zero = SheafClass { rank: 0, c1: 0, ch2: 0 };
        assert_eq!(euler_form_surface(zero, curve), 0);
        assert_eq!(euler_form_higgs(2, 1, 1), -2);
        assert_eq!(euler_form_higgs(1, 4, 7), 0);
    }
}
