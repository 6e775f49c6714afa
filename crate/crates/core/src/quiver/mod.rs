//! Quivers, dimension vectors and the combinatorics of their Euler forms.
//!
//! A [`Quiver`] is always held in canonical form: vertex identifiers sorted,
//! arrows sorted lexicographically by `(source, target)` index. Every
//! [`DimVector`] is indexed by position in the sorted vertex list.

mod dimvec;
mod forms;
mod sigma;

pub use dimvec::DimVector;
pub use forms::{
    euler_form_fundamental_group, euler_form_higgs, euler_form_surface, PValue, RhomRanks,
    SheafClass, ShiftDimensions,
};
pub use sigma::{SigmaOptions, DEFAULT_DECOMPOSITION_BUDGET};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Loop type of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexClass {
    /// No loops.
    Real,
    /// Exactly one loop.
    Isotropic,
    /// Two or more loops.
    Hyperbolic,
}

impl VertexClass {
    pub fn from_loops(loops: usize) -> Self {
        match loops {
            0 => VertexClass::Real,
            1 => VertexClass::Isotropic,
            _ => VertexClass::Hyperbolic,
        }
    }

    pub fn is_imaginary(self) -> bool {
        self != VertexClass::Real
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct QuiverFile {
    vertices: Vec<String>,
    arrows: Vec<[String; 2]>,
}

impl Quiver {
    /// Builds a quiver from vertex names and `(source, target)` name pairs.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S)]) -> Result<Self> {
        let mut names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        names.sort();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0].clone()));
            }
        }
        let index = |name: &str| -> Result<usize> {
            names
                .binary_search_by(|v| v.as_str().cmp(name))
                .map_err(|_| Error::UnknownVertex(name.to_string()))
        };
        let mut idx_arrows = Vec::with_capacity(arrows.len());
        for (s, t) in arrows {
            idx_arrows.push((index(s.as_ref())?, index(t.as_ref())?));
        }
        idx_arrows.sort_unstable();
        Ok(Quiver {
            vertices: names,
            arrows: idx_arrows,
        })
    }

    /// Builds a quiver on vertices `v0, v1, ...` from index pairs.
    pub fn from_indices(n_vertices: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        // Zero-padded names keep lexicographic order equal to index order.
        let width = n_vertices.saturating_sub(1).to_string().len();
        let vertices: Vec<String> = (0..n_vertices).map(|i| format!("v{i:0width$}")).collect();
        let mut idx_arrows = Vec::with_capacity(arrows.len());
        for &(s, t) in arrows {
            if s >= n_vertices || t >= n_vertices {
                return Err(Error::UnknownVertex(format!("v{}", s.max(t))));
            }
            idx_arrows.push((s, t));
        }
        idx_arrows.sort_unstable();
        Ok(Quiver {
            vertices,
            arrows: idx_arrows,
        })
    }

    /// One vertex carrying `g` loops.
    pub fn one_vertex(g: usize) -> Self {
        Quiver {
            vertices: vec!["v0".into()],
            arrows: vec![(0, 0); g],
        }
    }

    /// Two vertices with `loops` loops each and `between` arrows `v0 -> v1`.
    pub fn two_vertex(loops: usize, between: usize) -> Self {
        let mut arrows = vec![(0, 0); loops];
        arrows.extend(std::iter::repeat_n((0, 1), between));
        arrows.extend(std::iter::repeat_n((1, 1), loops));
        arrows.sort_unstable();
        Quiver {
            vertices: vec!["v0".into(), "v1".into()],
            arrows,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: QuiverFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("quiver JSON: {e}")))?;
        let arrows: Vec<(String, String)> = file
            .arrows
            .into_iter()
            .map(|[s, t]| (s, t))
            .collect();
        Quiver::new(&file.vertices, &arrows)
    }

    /// Canonical JSON text; equal quivers produce identical bytes.
    pub fn to_json(&self) -> String {
        let file = QuiverFile {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|&(s, t)| [self.vertices[s].clone(), self.vertices[t].clone()])
                .collect(),
        };
        serde_json::to_string(&file).expect("quiver serialization cannot fail")
    }

    /// Hex SHA-256 digest of the canonical form.
    pub fn canonical_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn loops(&self, i: usize) -> usize {
        self.arrows.iter().filter(|&&(s, t)| s == i && t == i).count()
    }

    /// Number of arrows `i -> j`.
    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|&&(s, t)| s == i && t == j).count()
    }

    pub fn zero(&self) -> DimVector {
        DimVector::zero(self.vertex_count())
    }

    pub fn unit(&self, i: usize) -> DimVector {
        DimVector::unit(self.vertex_count(), i)
    }

    pub(crate) fn check_dim(&self, d: &DimVector) -> Result<()> {
        if d.len() != self.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: self.vertex_count(),
                got: d.len(),
            });
        }
        Ok(())
    }

    /// Adds a reversed copy of every arrow.
    pub fn double(&self) -> Quiver {
        let mut arrows = self.arrows.clone();
        arrows.extend(self.arrows.iter().map(|&(s, t)| (t, s)));
        arrows.sort_unstable();
        Quiver {
            vertices: self.vertices.clone(),
            arrows,
        }
    }

    /// The double with one extra loop at every vertex.
    pub fn triple(&self) -> Quiver {
        let mut q = self.double();
        q.arrows.extend((0..self.vertex_count()).map(|i| (i, i)));
        q.arrows.sort_unstable();
        q
    }

    pub fn vertex_classes(&self) -> BTreeMap<String, VertexClass> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), VertexClass::from_loops(self.loops(i))))
            .collect()
    }

    pub fn vertex_class(&self, i: usize) -> VertexClass {
        VertexClass::from_loops(self.loops(i))
    }

    /// Dimension of the representation space `⊕_{a: i→j} Hom(k^{d_i}, k^{d_j})`.
    pub fn rep_space_dim(&self, d: &DimVector) -> Result<u64> {
        self.check_dim(d)?;
        Ok(self
            .arrows
            .iter()
            .map(|&(s, t)| d[s] as u64 * d[t] as u64)
            .sum())
    }

    /// The sign twist `ψ = ⟨-,-⟩_Q`.
    pub fn sign_twist(&self) -> SignTwist {
        let n = self.vertex_count();
        let mut matrix = vec![vec![0i64; n]; n];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] += 1;
        }
        for &(s, t) in &self.arrows {
            matrix[s][t] -= 1;
        }
        SignTwist { matrix }
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

/// Bilinear form `ψ` on the vertex lattice used to twist the Hall product by `(-1)^ψ`.
///
/// Characters never depend on `ψ`; it is carried as data only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignTwist {
    pub matrix: Vec<Vec<i64>>,
}

impl SignTwist {
    /// Checks `ψ(a,b) + ψ(b,a) ≡ (a,b)_Π (mod 2)` on basis vectors.
    pub fn is_valid_for(&self, q: &Quiver) -> bool {
        let n = q.vertex_count();
        if self.matrix.len() != n || self.matrix.iter().any(|r| r.len() != n) {
            return false;
        }
        (0..n).all(|i| {
            (0..n).all(|j| {
                let sym = q.sym_euler_form(&q.unit(i), &q.unit(j)).expect("basis vectors");
                (self.matrix[i][j] + self.matrix[j][i] - sym).rem_euclid(2) == 0
            })
        })
    }
}
