//! Brute-force reference computations. Nothing here calls into the library's
//! counting, series or Σ code; only plain integer arithmetic over prime fields.

#![allow(dead_code)]

use std::collections::HashMap;

use coha_core::{DimVector, Quiver};

type Mat = Vec<u8>;

fn mat_mul(a: &[u8], b: &[u8], n: usize, p: u8) -> Mat {
    let mut out = vec![0u8; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k] as u32;
            if x == 0 {
                continue;
            }
            for j in 0..n {
                let v = out[i * n + j] as u32 + x * b[k * n + j] as u32;
                out[i * n + j] = (v % p as u32) as u8;
            }
        }
    }
    out
}

fn inv_mod(x: u8, p: u8) -> u8 {
    (1..p).find(|&y| (x as u32 * y as u32) % p as u32 == 1).expect("nonzero element of a prime field")
}

/// Inverse by Gauss–Jordan elimination, or `None` when singular.
fn mat_inverse(a: &[u8], n: usize, p: u8) -> Option<Mat> {
    let w = 2 * n;
    let mut m = vec![0u8; n * w];
    for i in 0..n {
        m[i * w..i * w + n].copy_from_slice(&a[i * n..i * n + n]);
        m[i * w + n + i] = 1;
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r * w + col] != 0)?;
        for k in 0..w {
            m.swap(col * w + k, pivot * w + k);
        }
        let s = inv_mod(m[col * w + col], p);
        for k in 0..w {
            m[col * w + k] = ((m[col * w + k] as u32 * s as u32) % p as u32) as u8;
        }
        for r in 0..n {
            let f = m[r * w + col];
            if r != col && f != 0 {
                for k in 0..w {
                    let sub = (f as u32 * m[col * w + k] as u32) % p as u32;
                    m[r * w + k] = ((m[r * w + k] as u32 + p as u32 - sub) % p as u32) as u8;
                }
            }
        }
    }
    Some((0..n).flat_map(|i| m[i * w + n..i * w + w].to_vec()).collect())
}

fn decode(mut code: usize, p: usize, len: usize) -> Vec<u8> {
    (0..len)
        .map(|_| {
            let x = (code % p) as u8;
            code /= p;
            x
        })
        .collect()
}

fn encode(v: &[u8], p: usize) -> usize {
    v.iter().rev().fold(0, |acc, &x| acc * p + x as usize)
}

fn block_diagonal(m: &[u8], n: usize, a: usize) -> bool {
    (0..n).all(|i| (0..n).all(|j| (i < a) == (j < a) || m[i * n + j] == 0))
}

/// Orbit counts for `g` loops at one vertex in dimension `n` over the prime field `F_p`:
/// `(isoclasses, indecomposable isoclasses)`.
///
/// An orbit is decomposable exactly when it meets a tuple that is block diagonal
/// for a coordinate splitting `F_p^a ⊕ F_p^{n-a}`.
pub fn loop_quiver_orbits(g: usize, n: usize, p: u8) -> (u64, u64) {
    let pu = p as usize;
    let cell = n * n;
    let total = pu.pow((g * cell) as u32);
    let group: Vec<(Mat, Mat)> = (0..pu.pow(cell as u32))
        .filter_map(|c| {
            let m = decode(c, pu, cell);
            mat_inverse(&m, n, p).map(|inv| (m, inv))
        })
        .collect();
    let mut seen = vec![false; total];
    let (mut orbits, mut indecomposable) = (0u64, 0u64);
    for start in 0..total {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let tuple = decode(start, pu, g * cell);
        let mut decomposable = false;
        for (h, h_inv) in &group {
            let mut image = Vec::with_capacity(g * cell);
            for k in 0..g {
                let x = &tuple[k * cell..(k + 1) * cell];
                image.extend(mat_mul(&mat_mul(h, x, n, p), h_inv, n, p));
            }
            if !decomposable {
                decomposable = (1..n).any(|a| (0..g).all(|k| block_diagonal(&image[k * cell..(k + 1) * cell], n, a)));
            }
            seen[encode(&image, pu)] = true;
        }
        if !decomposable {
            indecomposable += 1;
        }
    }
    (orbits, indecomposable)
}

/// Lyndon words of length `n` over `k` letters, by listing every word.
pub fn lyndon_count(k: usize, n: usize) -> u64 {
    let mut count = 0;
    for code in 0..k.pow(n as u32) {
        let w = decode(code, k, n);
        if (1..n).all(|s| w[..] < w[s..]) {
            count += 1;
        }
    }
    count
}

/// Ordered tuples of positive integers summing to `n`.
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Partitions of `n`: compositions that are weakly decreasing.
pub fn partition_count(n: u32) -> usize {
    compositions(n).into_iter().filter(|c| c.windows(2).all(|w| w[0] >= w[1])).count()
}

/// `(a,b)_Π` read arrow by arrow.
pub fn sym_form(q: &Quiver, a: &DimVector, b: &DimVector) -> i64 {
    let mut s: i64 = (0..a.len()).map(|i| 2 * a[i] as i64 * b[i] as i64).sum();
    for &(i, j) in q.arrows() {
        s -= a[i] as i64 * b[j] as i64 + b[i] as i64 * a[j] as i64;
    }
    s
}

fn p_of(q: &Quiver, d: &DimVector) -> i64 {
    2 - sym_form(q, d, d)
}

/// Best total `Σ p(a_j)` over decompositions of `d` into one or more nonzero
/// classes with `p >= 0`, by memoised recursion on the first part.
fn best(q: &Quiver, d: &DimVector, memo: &mut HashMap<DimVector, Option<i64>>) -> Option<i64> {
    if let Some(v) = memo.get(d) {
        return *v;
    }
    let mut top = if p_of(q, d) >= 0 { Some(p_of(q, d)) } else { None };
    for a in d.below() {
        if a.is_zero() || &a == d || p_of(q, &a) < 0 {
            continue;
        }
        let rest = d.checked_sub(&a).expect("a lies below d");
        if let Some(r) = best(q, &rest, memo) {
            let v = p_of(q, &a) + r;
            top = Some(top.map_or(v, |t: i64| t.max(v)));
        }
    }
    memo.insert(d.clone(), top);
    top
}

/// `d ∈ Σ` by maximising over all decompositions into at least two positive classes.
pub fn sigma_oracle(q: &Quiver, d: &DimVector) -> bool {
    let pd = p_of(q, d);
    if pd < 0 {
        return false;
    }
    let mut memo = HashMap::new();
    let mut split_best: Option<i64> = None;
    for a in d.below() {
        if a.is_zero() || &a == d || p_of(q, &a) < 0 {
            continue;
        }
        let rest = d.checked_sub(&a).expect("a lies below d");
        if let Some(r) = best(q, &rest, &mut memo) {
            let v = p_of(q, &a) + r;
            split_best = Some(split_best.map_or(v, |t| t.max(v)));
        }
    }
    split_best.is_none_or(|b| pd > b)
}
