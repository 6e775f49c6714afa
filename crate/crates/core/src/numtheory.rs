//! Small integer helpers: Möbius function, prime powers, partitions.

pub fn mobius(n: u64) -> i64 {
    assert!(n > 0, "mobius(0) is undefined");
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `Some((p, r))` with `n = p^r`, `r >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > n {
        p = n;
    }
    let mut m = n;
    let mut r = 0;
    while m.is_multiple_of(p) {
        m /= p;
        r += 1;
    }
    (m == 1).then_some((p, r))
}

pub fn is_prime_power(n: u64) -> bool {
    prime_power(n).is_some()
}

/// The first `count` prime powers `>= 2`, in increasing order.
pub fn first_prime_powers(count: usize) -> Vec<u64> {
    (2u64..).filter(|&n| is_prime_power(n)).take(count).collect()
}

/// Partitions of `n` as weakly decreasing part lists, in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of monic irreducible polynomials of degree `k` over `F_q`.
pub fn irreducible_count(q: u64, k: u32) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    let mut total = BigInt::from(0);
    for j in divisors(k as u64) {
        total += BigInt::from(mobius(k as u64 / j)) * BigInt::from(q).pow(j as u32);
    }
    total / BigInt::from(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_values() {
        let got: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(got, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(first_prime_powers(10), vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16]);
    }

    #[test]
    fn partition_lists() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn necklace_counts() {
        // Over F_2: 2, 1, 2, 3, 6 irreducibles in degrees 1..5.
        let got: Vec<i64> = (1..=5)
            .map(|k| i64::try_from(irreducible_count(2, k)).unwrap())
            .collect();
        assert_eq!(got, vec![2, 1, 2, 3, 6]);
        assert_eq!(irreducible_count(4, 2), 6.into());
    }
}
