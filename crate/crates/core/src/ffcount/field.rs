use crate::error::{Error, Result};
use crate::numtheory::prime_power;

/// Largest field order accepted by [`FqField::new`].
pub const DEFAULT_FIELD_LIMIT: u64 = 64;

/// Fields up to this order have their axioms checked exhaustively on construction.
const AXIOM_CHECK_LIMIT: usize = 16;

/// Element of a small finite field: the base-`p` digits of the residue of a
/// polynomial in the generator, modulo the defining polynomial.
pub type Fq = u8;

/// The field `F_q`, `q = p^r <= 64`, as full addition and multiplication tables.
///
/// The defining polynomial is primitive, so `x` generates the multiplicative
/// group and `log`/`exp` tables come for free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqField {
    p: u8,
    r: u32,
    q: usize,
    /// Monic defining polynomial, coefficients low to high (length `r + 1`).
    modulus: Vec<u8>,
    add: Vec<Fq>,
    mul: Vec<Fq>,
    neg: Vec<Fq>,
    inv: Vec<Fq>,
    log: Vec<u16>,
    exp: Vec<Fq>,
}

fn digits(mut x: usize, p: usize, r: u32) -> Vec<usize> {
    (0..r)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn from_digits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Multiplies the residue `a` by `x` modulo the monic `modulus`.
fn times_x(a: &[usize], modulus: &[u8], p: usize) -> Vec<usize> {
    let r = a.len();
    let top = a[r - 1];
    let mut out = vec![0; r];
    for i in (1..r).rev() {
        out[i] = a[i - 1];
    }
    for (i, o) in out.iter_mut().enumerate() {
        *o = (*o + p * p - top * modulus[i] as usize % p) % p;
    }
    out
}

/// Powers `x^0, x^1, …` until they cycle; primitive iff the cycle has length `q - 1`.
fn power_cycle(modulus: &[u8], p: usize, r: u32) -> Vec<usize> {
    let q = p.pow(r);
    let mut cur = vec![0; r as usize];
    cur[0] = 1;
    let one = cur.clone();
    let mut seq = Vec::with_capacity(q);
    loop {
        seq.push(from_digits(&cur, p));
        cur = times_x(&cur, modulus, p);
        if cur == one || seq.len() > q {
            break;
        }
    }
    seq
}

impl FqField {
    pub fn new(q: u64) -> Result<Self> {
        FqField::with_limit(q, DEFAULT_FIELD_LIMIT)
    }

    pub fn with_limit(q: u64, limit: u64) -> Result<Self> {
        if q > limit {
            return Err(Error::budget("finite field order", q, limit));
        }
        if q > 256 {
            return Err(Error::InvalidArgument(format!(
                "field order {q} does not fit in byte-sized elements"
            )));
        }
        let (p, r) = prime_power(q)
            .ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
        let (pu, qu) = (p as usize, q as usize);
        // First primitive monic polynomial in counting order of its lower coefficients.
        let mut modulus = None;
        for code in 0..qu {
            let mut m: Vec<u8> = digits(code, pu, r).into_iter().map(|x| x as u8).collect();
            if m[0] == 0 {
                continue;
            }
            m.push(1);
            if power_cycle(&m, pu, r).len() == qu - 1 {
                modulus = Some(m);
                break;
            }
        }
        let modulus = modulus.expect("primitive polynomials exist in every degree");
        let exp_cycle = power_cycle(&modulus, pu, r);

        let mut log = vec![0u16; qu];
        let mut exp = vec![0 as Fq; 2 * (qu - 1)];
        for (i, &e) in exp_cycle.iter().enumerate() {
            log[e] = i as u16;
            exp[i] = e as Fq;
            exp[i + qu - 1] = e as Fq;
        }

        let mut add = vec![0 as Fq; qu * qu];
        let mut mul = vec![0 as Fq; qu * qu];
        for a in 0..qu {
            let da = digits(a, pu, r);
            for b in 0..qu {
                let db = digits(b, pu, r);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % pu).collect();
                add[a * qu + b] = from_digits(&sum, pu) as Fq;
                mul[a * qu + b] = if a == 0 || b == 0 {
                    0
                } else {
                    exp[log[a] as usize + log[b] as usize]
                };
            }
        }
        let neg: Vec<Fq> = (0..qu)
            .map(|a| (0..qu).find(|&b| add[a * qu + b] == 0).unwrap() as Fq)
            .collect();
        let inv: Vec<Fq> = (0..qu)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    exp[(qu - 1 - log[a] as usize) % (qu - 1)]
                }
            })
            .collect();

        let field = FqField {
            p: p as u8,
            r,
            q: qu,
            modulus,
            add,
            mul,
            neg,
            inv,
            log,
            exp,
        };
        if qu <= AXIOM_CHECK_LIMIT {
            field.check_axioms()?;
        }
        Ok(field)
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u8 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0)` is reported as 0.
    #[inline]
    pub fn inv(&self, a: Fq) -> Fq {
        self.inv[a as usize]
    }

    /// Discrete logarithm to the base of the generator `x`; `None` for 0.
    pub fn log(&self, a: Fq) -> Option<u16> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn generator_power(&self, k: usize) -> Fq {
        self.exp[k % (self.q - 1)]
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(|a| a as Fq)
    }

    fn check_axioms(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Identity(format!("F_{} violates {what}", self.q)));
        for a in self.elements() {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return fail("identity elements");
            }
            if self.add(a, self.neg(a)) != 0 {
                return fail("additive inverses");
            }
            if a != 0 && self.mul(a, self.inv(a)) != 1 {
                return fail("multiplicative inverses");
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail("commutativity");
                }
                for c in self.elements() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                    {
                        return fail("associativity");
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail("distributivity");
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_small_fields_build() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 25, 27, 32, 49, 64] {
            let f = FqField::new(q).unwrap();
            assert_eq!(f.order() as u64, q);
            // The generator has full order.
            let mut seen = std::collections::BTreeSet::new();
            for k in 0..q as usize - 1 {
                seen.insert(f.generator_power(k));
            }
            assert_eq!(seen.len() as u64, q - 1);
        }
    }

    #[test]
    fn limits_and_non_prime_powers() {
        assert!(matches!(FqField::new(6), Err(Error::InvalidArgument(_))));
        assert!(matches!(FqField::new(81), Err(Error::Budget { .. })));
        assert!(FqField::with_limit(81, 128).is_ok());
    }

    #[test]
    fn f4_arithmetic() {
        let f = FqField::new(4).unwrap();
        assert_eq!(f.characteristic(), 2);
        for a in f.elements() {
            assert_eq!(f.add(a, a), 0);
        }
        // The cube of every nonzero element is 1.
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(f.mul(a, a), a), 1);
        }
    }

    #[test]
    fn prime_field_is_modular_arithmetic() {
        let f = FqField::new(7).unwrap();
        for a in 0..7u8 {
            for b in 0..7u8 {
                assert_eq!(f.add(a, b), (a + b) % 7);
                assert_eq!(f.mul(a, b), (a * b) % 7);
            }
        }
    }
}
