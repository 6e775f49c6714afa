use super::{DimVector, Quiver};
use crate::error::{Error, Result};

/// Enough for every decomposition of a class with `|d| <= 12` on up to three vertices.
pub const DEFAULT_DECOMPOSITION_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SigmaOptions {
    /// Maximum number of partial decompositions visited before giving up.
    pub decomposition_budget: u64,
}

impl Default for SigmaOptions {
    fn default() -> Self {
        SigmaOptions {
            decomposition_budget: DEFAULT_DECOMPOSITION_BUDGET,
        }
    }
}

struct Search {
    /// Nonzero classes below `d` with `p >= 0`, in decreasing lexicographic order.
    parts: Vec<(DimVector, i64)>,
    target_p: i64,
    visited: u64,
    budget: u64,
}

impl Search {
    /// Returns true when some decomposition of `rest` (continuing after `start`) reaches `target_p`.
    fn violated(&mut self, rest: &DimVector, start: usize, n_parts: usize, sum_p: i64) -> Result<bool> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(Error::budget(
                "Σ-set decomposition enumeration",
                format!("> {}", self.budget),
                self.budget,
            ));
        }
        if rest.is_zero() {
            return Ok(n_parts >= 2 && sum_p >= self.target_p);
        }
        for k in start..self.parts.len() {
            if !self.parts[k].0.le(rest) {
                continue;
            }
            // A single part equal to the whole class is not a decomposition.
            if n_parts == 0 && &self.parts[k].0 == rest {
                continue;
            }
            let next = rest - &self.parts[k].0;
            let p = self.parts[k].1;
            if self.violated(&next, k, n_parts + 1, sum_p + p)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl Quiver {
    /// Positive classes `R⁺ = {a : p(a) >= 0}`.
    pub fn in_r_plus(&self, d: &DimVector) -> Result<bool> {
        Ok(self.p_value(d)?.value >= 0)
    }

    /// Membership in `Σ`: `d ∈ R⁺`, nonzero, and `p(d) > Σ_j p(a_j)` for every decomposition
    /// `d = Σ_j a_j` into at least two nonzero classes of `R⁺`.
    ///
    /// Decompositions are enumerated exhaustively as multisets; running out of budget is an
    /// error rather than a guess.
    pub fn in_sigma(&self, d: &DimVector, options: SigmaOptions) -> Result<bool> {
        self.check_dim(d)?;
        if d.is_zero() {
            return Err(Error::Precondition("Σ membership needs a nonzero class".into()));
        }
        let target_p = self.p(d);
        if target_p < 0 {
            return Ok(false);
        }
        let mut parts: Vec<(DimVector, i64)> = d
            .below()
            .into_iter()
            .filter(|a| !a.is_zero())
            .map(|a| {
                let p = self.p(&a);
                (a, p)
            })
            .filter(|(_, p)| *p >= 0)
            .collect();
        parts.sort_by(|a, b| b.0.cmp(&a.0));
        let mut search = Search {
            parts,
            target_p,
            visited: 0,
            budget: options.decomposition_budget,
        };
        Ok(!search.violated(d, 0, 0, 0)?)
    }

    /// All nonzero `d` inside `bound` that lie in `Σ`.
    pub fn sigma_classes(&self, bound: &DimVector, options: SigmaOptions) -> Result<Vec<DimVector>> {
        self.check_dim(bound)?;
        let mut out = Vec::new();
        for d in bound.below() {
            if !d.is_zero() && self.in_sigma(&d, options)? {
                out.push(d);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[u32]) -> DimVector {
        DimVector::new(v.to_vec())
    }

    #[test]
    fn one_vertex_hyperbolic_is_all_sigma() {
        for g in 2..5 {
            let q = Quiver::one_vertex(g);
            for n in 1..9 {
                assert!(q.in_sigma(&dv(&[n]), SigmaOptions::default()).unwrap(), "g={g} n={n}");
            }
        }
    }

    #[test]
    fn jordan_and_real_vertices() {
        let jordan = Quiver::one_vertex(1);
        assert!(jordan.in_sigma(&dv(&[1]), SigmaOptions::default()).unwrap());
        assert!(!jordan.in_sigma(&dv(&[2]), SigmaOptions::default()).unwrap());
        let point = Quiver::one_vertex(0);
        assert!(point.in_sigma(&dv(&[1]), SigmaOptions::default()).unwrap());
        assert!(!point.in_sigma(&dv(&[2]), SigmaOptions::default()).unwrap());
    }

    #[test]
    fn two_vertex_examples() {
        let one = Quiver::two_vertex(2, 1);
        assert!(!one.in_sigma(&dv(&[1, 1]), SigmaOptions::default()).unwrap());
        let two = Quiver::two_vertex(2, 2);
        assert!(two.in_sigma(&dv(&[1, 1]), SigmaOptions::default()).unwrap());
    }

    #[test]
    fn zero_class_and_budget_are_errors() {
        let q = Quiver::one_vertex(2);
        assert!(matches!(
            q.in_sigma(&dv(&[0]), SigmaOptions::default()),
            Err(Error::Precondition(_))
        ));
        let tight = SigmaOptions { decomposition_budget: 3 };
        assert!(matches!(q.in_sigma(&dv(&[6]), tight), Err(Error::Budget { .. })));
    }
}
