use super::field::{Fq, FqField};

/// Dense polynomial over `F_q`, coefficients low to high, no trailing zeros.
pub type FqPoly = Vec<Fq>;

fn trim(mut p: FqPoly) -> FqPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn poly_mul(field: &FqField, a: &[Fq], b: &[Fq]) -> FqPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    trim(out)
}

pub fn poly_pow(field: &FqField, a: &[Fq], n: u32) -> FqPoly {
    let mut acc = vec![1];
    for _ in 0..n {
        acc = poly_mul(field, &acc, a);
    }
    acc
}

/// Remainder of `a` modulo the monic polynomial `m`.
pub fn poly_rem(field: &FqField, a: &[Fq], m: &[Fq]) -> FqPoly {
    let dm = m.len() - 1;
    debug_assert_eq!(m[dm], 1);
    let mut r = a.to_vec();
    while r.len() > dm {
        let top = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if top != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = field.sub(r[shift + i], field.mul(top, c));
            }
        }
        r.pop();
    }
    trim(r)
}

/// Monic polynomial of degree `k` whose lower coefficients are the base-`q` digits of `code`.
fn monic_from_code(q: usize, k: u32, mut code: usize) -> FqPoly {
    let mut p = Vec::with_capacity(k as usize + 1);
    for _ in 0..k {
        p.push((code % q) as Fq);
        code /= q;
    }
    p.push(1);
    p
}

/// All monic irreducible polynomials of degree `1..=max_degree` other than `t`,
/// grouped by degree (`result[k - 1]` holds degree `k`).
pub fn monic_irreducibles(field: &FqField, max_degree: u32) -> Vec<Vec<FqPoly>> {
    let q = field.order();
    let mut all: Vec<Vec<FqPoly>> = Vec::new();
    let t: FqPoly = vec![0, 1];
    for k in 1..=max_degree {
        let mut found = Vec::new();
        for code in 0..q.pow(k) {
            let p = monic_from_code(q, k, code);
            let has_factor = std::iter::once(&t)
                .chain(all.iter().take((k / 2) as usize).flatten())
                .any(|f| f.len() - 1 <= (k / 2) as usize && poly_rem(field, &p, f).is_empty());
            if !has_factor && p != t {
                found.push(p);
            }
        }
        all.push(found);
    }
    all
}

/// The first monic irreducible of degree `k` in counting order.
pub fn some_irreducible(field: &FqField, k: u32) -> FqPoly {
    let q = field.order();
    let t: FqPoly = vec![0, 1];
    if k == 1 {
        return t;
    }
    (0..q.pow(k))
        .map(|code| monic_from_code(q, k, code))
        .find(|p| {
            (1..=k / 2).all(|j| {
                (0..q.pow(j)).all(|c| !poly_rem(field, p, &monic_from_code(q, j, c)).is_empty())
            })
        })
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::irreducible_count;

    #[test]
    fn irreducible_counts_match_necklaces() {
        for q in [2u64, 3, 4, 5] {
            let f = FqField::new(q).unwrap();
            let irr = monic_irreducibles(&f, 4);
            for k in 1..=4u32 {
                let mut expected = irreducible_count(q, k);
                if k == 1 {
                    expected -= 1; // t is excluded
                }
                assert_eq!(irr[k as usize - 1].len(), usize::try_from(expected).unwrap(), "q={q} k={k}");
            }
        }
    }

    #[test]
    fn arithmetic() {
        let f = FqField::new(2).unwrap();
        // (t + 1)^2 = t^2 + 1 in characteristic 2.
        assert_eq!(poly_pow(&f, &[1, 1], 2), vec![1, 0, 1]);
        assert!(poly_rem(&f, &[1, 0, 1], &[1, 1]).is_empty());
        assert_eq!(poly_rem(&f, &[1, 1, 1], &[1, 1]), vec![1]);
        let g = some_irreducible(&f, 3);
        assert_eq!(g.len(), 4);
        assert!(monic_irreducibles(&f, 3)[2].contains(&g));
    }
}
