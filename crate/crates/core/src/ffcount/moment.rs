//! Point counts of the zero fibre of the moment map
//! `μ_d(x, x*) = Σ_{α∈Q_1} [x_α, x_{α*}]` over `F_q`.

use rayon::prelude::*;

use super::field::{Fq, FqField};
use super::matrix::FqMatrix;
use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver};

/// Largest distribution table (`q^{Σ d_i²}` entries) the convolution path allocates.
pub const DEFAULT_TABLE_BUDGET: u64 = 1 << 24;

/// Work limit (elementary steps) for either path.
pub const DEFAULT_MOMENT_WORK_BUDGET: u64 = 4_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentStrategy {
    /// Per-arrow distributions of the commutator, convolved over the group `⊕_i gl_{d_i}(F_q)`.
    Convolution,
    /// Every tuple `(x_α, x_{α*})`.
    Naive,
    /// Whichever of the two is cheaper and within budget.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MomentOptions {
    pub strategy: MomentStrategy,
    pub table_budget: u64,
    pub work_budget: u64,
    pub field_limit: u64,
}

impl Default for MomentOptions {
    fn default() -> Self {
        MomentOptions {
            strategy: MomentStrategy::Auto,
            table_budget: DEFAULT_TABLE_BUDGET,
            work_budget: DEFAULT_MOMENT_WORK_BUDGET,
            field_limit: super::field::DEFAULT_FIELD_LIMIT,
        }
    }
}

impl MomentOptions {
    pub fn with_strategy(strategy: MomentStrategy) -> Self {
        MomentOptions {
            strategy,
            ..MomentOptions::default()
        }
    }
}

/// Layout of `⊕_i gl_{d_i}` as a flat coordinate vector.
struct Target {
    offsets: Vec<usize>,
    dims: Vec<usize>,
    len: usize,
}

impl Target {
    fn new(d: &DimVector) -> Self {
        let dims: Vec<usize> = d.iter().map(|x| x as usize).collect();
        let mut offsets = Vec::with_capacity(dims.len());
        let mut len = 0;
        for &n in &dims {
            offsets.push(len);
            len += n * n;
        }
        Target { offsets, dims, len }
    }

    fn coord(&self, vertex: usize, r: usize, c: usize) -> usize {
        self.offsets[vertex] + r * self.dims[vertex] + c
    }
}

/// Adds the contribution of one arrow `s → t` to `out`:
/// `x y` at vertex `t` and `−y x` at vertex `s`, with `x: V_s → V_t`, `y: V_t → V_s`.
fn arrow_contribution(
    field: &FqField,
    target: &Target,
    (s, t): (usize, usize),
    x: &FqMatrix,
    y: &FqMatrix,
    out: &mut [Fq],
) {
    let xy = x.mul(field, y);
    let yx = y.mul(field, x);
    for r in 0..xy.rows() {
        for c in 0..xy.cols() {
            let k = target.coord(t, r, c);
            out[k] = field.add(out[k], xy.get(r, c));
        }
    }
    for r in 0..yx.rows() {
        for c in 0..yx.cols() {
            let k = target.coord(s, r, c);
            out[k] = field.sub(out[k], yx.get(r, c));
        }
    }
}

fn encode(v: &[Fq], q: usize) -> usize {
    v.iter().rev().fold(0, |acc, &x| acc * q + x as usize)
}

fn decode(mut idx: usize, q: usize, len: usize) -> Vec<Fq> {
    (0..len)
        .map(|_| {
            let x = (idx % q) as Fq;
            idx /= q;
            x
        })
        .collect()
}

/// `|μ_d⁻¹(0)(F_q)|`.
pub fn count_moment_fiber(quiver: &Quiver, d: &DimVector, q: u64, options: MomentOptions) -> Result<u128> {
    quiver.check_dim(d)?;
    let field = FqField::with_limit(q, options.field_limit)?;
    let target = Target::new(d);
    let arrows = quiver.arrows().to_vec();
    let pair_dims: Vec<u32> = arrows
        .iter()
        .map(|&(s, t)| d[s] * d[t])
        .collect();
    let naive_work = pow_saturating(q, 2 * pair_dims.iter().sum::<u32>())
        .saturating_mul(target.len.max(1) as u64);
    let table = pow_saturating(q, target.len as u32);
    let conv_work = convolution_work(q, &pair_dims, table);

    let strategy = match options.strategy {
        MomentStrategy::Auto => {
            let conv_ok = table <= options.table_budget && conv_work <= options.work_budget;
            if conv_ok && conv_work < naive_work {
                MomentStrategy::Convolution
            } else if naive_work <= options.work_budget {
                MomentStrategy::Naive
            } else if conv_ok {
                MomentStrategy::Convolution
            } else {
                return Err(Error::budget(
                    "moment-map fibre count",
                    format!("table {table}, work {}", conv_work.min(naive_work)),
                    format!("table {}, work {}", options.table_budget, options.work_budget),
                ));
            }
        }
        s => s,
    };
    match strategy {
        MomentStrategy::Naive => {
            if naive_work > options.work_budget {
                return Err(Error::budget("naive moment-map enumeration", naive_work, options.work_budget));
            }
            naive(&field, &target, &arrows, d)
        }
        _ => {
            if table > options.table_budget {
                return Err(Error::budget("moment-map distribution table", table, options.table_budget));
            }
            if conv_work > options.work_budget {
                return Err(Error::budget("moment-map convolution", conv_work, options.work_budget));
            }
            convolution(&field, &target, &arrows, d)
        }
    }
}

fn pow_saturating(q: u64, e: u32) -> u64 {
    q.checked_pow(e).unwrap_or(u64::MAX)
}

fn convolution_work(q: u64, pair_dims: &[u32], table: u64) -> u64 {
    // Tabulating one arrow touches at most q^{dim x} · q^{dim y} image points.
    let tabulate = pair_dims
        .iter()
        .map(|&m| pow_saturating(q, 2 * m))
        .fold(0u64, |a, b| a.saturating_add(b));
    let convolve = (pair_dims.len().saturating_sub(2) as u64).saturating_mul(table.saturating_mul(table));
    tabulate.saturating_add(convolve).saturating_add(table)
}

fn naive(field: &FqField, target: &Target, arrows: &[(usize, usize)], d: &DimVector) -> Result<u128> {
    let q = field.order();
    let shapes: Vec<(usize, usize)> = arrows.iter().map(|&(s, t)| (d[t] as usize, d[s] as usize)).collect();
    let vars: usize = shapes.iter().map(|(r, c)| 2 * r * c).sum();
    let total = (q as u64).pow(vars as u32);
    let zeros = (0..total)
        .into_par_iter()
        .filter(|&code| {
            let digits = decode(code as usize, q, vars);
            let mut mu = vec![0 as Fq; target.len];
            let mut pos = 0;
            for (a, &(rows, cols)) in shapes.iter().enumerate() {
                let x = FqMatrix::from_vec(rows, cols, digits[pos..pos + rows * cols].to_vec());
                pos += rows * cols;
                let y = FqMatrix::from_vec(cols, rows, digits[pos..pos + rows * cols].to_vec());
                pos += rows * cols;
                arrow_contribution(field, target, arrows[a], &x, &y, &mut mu);
            }
            mu.iter().all(|&v| v == 0)
        })
        .count();
    Ok(zeros as u128)
}

/// The additive group `F_q^len` with elements encoded as `Σ v_k q^k`. Since field
/// elements are themselves base-`p` digit strings, the group law is digitwise
/// addition modulo `p` on the base-`p` expansion of the code.
struct Group {
    p: usize,
    digits: usize,
    size: usize,
}

impl Group {
    fn new(field: &FqField, len: usize) -> Self {
        let p = field.characteristic() as usize;
        let digits = field.degree() as usize * len;
        Group {
            p,
            digits,
            size: p.pow(digits as u32),
        }
    }

    #[inline]
    fn add(&self, mut a: usize, mut b: usize) -> usize {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.digits {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    fn neg(&self, mut a: usize) -> usize {
        if self.p == 2 {
            return a;
        }
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.digits {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    /// `c · a` for `c` in the prime field, as repeated addition.
    fn scale(&self, a: usize, c: usize) -> usize {
        (0..c).fold(0, |acc, _| self.add(acc, a))
    }
}

/// Distribution of the contribution of one arrow over `⊕_i gl_{d_i}(F_q)`.
///
/// For fixed `x` the map `y ↦ (x y, −y x)` is linear, so its values are the
/// image subspace, each hit `q^{dim ker}` times.
fn arrow_distribution(
    field: &FqField,
    group: &Group,
    target: &Target,
    arrow: (usize, usize),
    d: &DimVector,
) -> Vec<u128> {
    let q = field.order();
    let (s, t) = arrow;
    let (rows, cols) = (d[t] as usize, d[s] as usize);
    let m = rows * cols;
    let x_count = (q as u64).pow(m as u32);
    (0..x_count)
        .into_par_iter()
        .fold(
            || vec![0u128; group.size],
            |mut table, code| {
                let x = FqMatrix::from_index(rows, cols, q, code);
                // Images of the basis matrices of y, as rows.
                let mut images = FqMatrix::zero(m, target.len);
                for b in 0..m {
                    let mut y = FqMatrix::zero(cols, rows);
                    y.set(b / rows, b % rows, 1);
                    let mut v = vec![0 as Fq; target.len];
                    arrow_contribution(field, target, arrow, &x, &y, &mut v);
                    for (k, &val) in v.iter().enumerate() {
                        images.set(b, k, val);
                    }
                }
                let basis = images.row_space_basis(field);
                let mult = (q as u128).pow((m - basis.len()) as u32);
                // The F_q-span is the F_p-span of the basis times every element of F_q.
                let mut generators = Vec::new();
                for row in &basis {
                    for shift in 0..field.degree() as usize {
                        let scalar = (field.characteristic() as usize).pow(shift as u32) as Fq;
                        let v: Vec<Fq> = row.iter().map(|&r| field.mul(scalar, r)).collect();
                        generators.push(encode(&v, q));
                    }
                }
                let mut span = vec![0usize];
                for g in generators {
                    let layer = span.clone();
                    for c in 1..group.p {
                        let step = group.scale(g, c);
                        span.extend(layer.iter().map(|&v| group.add(v, step)));
                    }
                }
                for v in span {
                    table[v] += mult;
                }
                table
            },
        )
        .reduce(
            || vec![0u128; group.size],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

fn convolution(field: &FqField, target: &Target, arrows: &[(usize, usize)], d: &DimVector) -> Result<u128> {
    if arrows.is_empty() {
        return Ok(1);
    }
    let group = Group::new(field, target.len);
    let overflow = || Error::budget("moment-map count", "more than 128 bits", "u128");
    let mut acc = arrow_distribution(field, &group, target, arrows[0], d);
    for (i, &arrow) in arrows.iter().enumerate().skip(1) {
        let next = arrow_distribution(field, &group, target, arrow, d);
        if i + 1 == arrows.len() {
            // Only the value at 0 is needed: Σ_v acc(v) next(−v).
            return (0..group.size)
                .into_par_iter()
                .map(|v| acc[v].checked_mul(next[group.neg(v)]))
                .try_reduce(|| 0u128, |a, b| a.checked_add(b))
                .ok_or_else(overflow);
        }
        acc = (0..group.size)
            .into_par_iter()
            .map(|v| {
                let mut total = 0u128;
                for (w, &aw) in acc.iter().enumerate() {
                    if aw != 0 {
                        let nb = next[group.add(v, group.neg(w))];
                        total = total.checked_add(aw.checked_mul(nb)?)?;
                    }
                }
                Some(total)
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(overflow)?;
    }
    Ok(acc[0])
}
