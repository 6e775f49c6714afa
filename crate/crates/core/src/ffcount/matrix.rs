use std::fmt;

use super::field::{Fq, FqField};

/// Dense matrix over a small finite field, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl FqMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        FqMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FqMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Fq>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        FqMatrix { rows, cols, data }
    }

    /// The matrix whose entries are the base-`q` digits of `code`, row-major.
    pub fn from_index(rows: usize, cols: usize, q: usize, mut code: u64) -> Self {
        let mut data = vec![0; rows * cols];
        for x in data.iter_mut() {
            *x = (code % q as u64) as Fq;
            code /= q as u64;
        }
        FqMatrix { rows, cols, data }
    }

    /// Companion matrix of a monic polynomial given low-to-high with its leading 1.
    pub fn companion(field: &FqField, poly: &[Fq]) -> Self {
        let n = poly.len() - 1;
        assert!(n >= 1 && poly[n] == 1, "companion matrix needs a monic polynomial");
        let mut m = FqMatrix::zero(n, n);
        for i in 1..n {
            m.set(i, i - 1, 1);
        }
        for (i, &c) in poly[..n].iter().enumerate() {
            m.set(i, n - 1, field.neg(c));
        }
        m
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[FqMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = FqMatrix::zero(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Fq] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add(&self, field: &FqField, other: &FqMatrix) -> FqMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        FqMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| field.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, field: &FqField, other: &FqMatrix) -> FqMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        FqMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| field.sub(a, b)).collect(),
        }
    }

    pub fn mul(&self, field: &FqField, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = FqMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field.add(out.get(i, j), field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn rank(&self, field: &FqField) -> usize {
        let mut m = self.clone();
        m.row_reduce(field)
    }

    pub fn kernel_dim(&self, field: &FqField) -> usize {
        self.cols - self.rank(field)
    }

    pub fn is_invertible(&self, field: &FqField) -> bool {
        self.rows == self.cols && self.rank(field) == self.rows
    }

    /// Gaussian elimination in place; returns the rank.
    fn row_reduce(&mut self, field: &FqField) -> usize {
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if pivot != rank {
                for j in 0..self.cols {
                    self.data.swap(pivot * self.cols + j, rank * self.cols + j);
                }
            }
            let inv = field.inv(self.get(rank, col));
            for j in col..self.cols {
                let v = field.mul(self.get(rank, j), inv);
                self.set(rank, j, v);
            }
            for r in 0..self.rows {
                if r == rank {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in col..self.cols {
                    let v = field.sub(self.get(r, j), field.mul(factor, self.get(rank, j)));
                    self.set(r, j, v);
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Row-reduced basis of the row space.
    pub fn row_space_basis(&self, field: &FqField) -> Vec<Vec<Fq>> {
        let mut m = self.clone();
        let rank = m.row_reduce(field);
        (0..rank)
            .map(|r| m.data[r * m.cols..(r + 1) * m.cols].to_vec())
            .collect()
    }
}

/// Dimension of `{X : b·X = X·a}` for `a` of size `m×m` and `b` of size `n×n`,
/// the intertwiners from the `F[t]`-module given by `a` to the one given by `b`.
pub fn intertwiner_dim(field: &FqField, a: &FqMatrix, b: &FqMatrix) -> usize {
    let (m, n) = (a.rows(), b.rows());
    if m == 0 || n == 0 {
        return 0;
    }
    // Unknown X[c][k] is variable c*m + k; equation (r, k) reads Σ_c b[r][c] X[c][k] − Σ_c X[r][c] a[c][k].
    let vars = n * m;
    let mut sys = FqMatrix::zero(vars, vars);
    for r in 0..n {
        for k in 0..m {
            let row = r * m + k;
            for c in 0..n {
                let v = b.get(r, c);
                if v != 0 {
                    let col = c * m + k;
                    sys.set(row, col, field.add(sys.get(row, col), v));
                }
            }
            for c in 0..m {
                let v = a.get(c, k);
                if v != 0 {
                    let col = r * m + c;
                    sys.set(row, col, field.sub(sys.get(row, col), v));
                }
            }
        }
    }
    sys.kernel_dim(field)
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
