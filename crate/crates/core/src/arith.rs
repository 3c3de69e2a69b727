//! Word-sized number theory: modular powers, primality, trial-division
//! factorization, Legendre symbols and primitive roots.

use alloc::vec::Vec;

/// Trial division bound used by [`factorize`].
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= p {
        s.wrapping_sub(p)
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a.wrapping_sub(b).wrapping_add(p)
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime via Fermat; `None` for zero.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce_i64(v: i64, p: u64) -> u64 {
    let r = (v as i128).rem_euclid(p as i128);
    r as u64
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
///
/// Trial division up to [`TRIAL_DIVISION_LIMIT`]; a leftover cofactor is
/// accepted only if it is prime. Returns `None` otherwise.
pub fn factorize(mut n: u64) -> Option<Vec<(u64, u32)>> {
    let mut out = Vec::new();
    if n == 0 {
        return None;
    }
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT && d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        if !is_prime(n) {
            return None;
        }
        out.push((n, 1));
    }
    Some(out)
}

/// Prime factors with multiplicity, e.g. `45 -> [3, 3, 5]`.
pub fn prime_factor_multiset(n: u64) -> Option<Vec<u64>> {
    let f = factorize(n)?;
    Some(
        f.into_iter()
            .flat_map(|(p, e)| core::iter::repeat(p).take(e as usize))
            .collect(),
    )
}

/// Legendre symbol `(i/p)` via Euler's criterion. `p` must be an odd prime.
pub fn legendre(i: i64, p: u64) -> i8 {
    let r = reduce_i64(i, p);
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Smallest primitive root modulo the prime `p`.
pub fn smallest_primitive_root(p: u64) -> Option<u64> {
    if p == 2 {
        return Some(1);
    }
    let factors = factorize(p - 1)?;
    (2..p).find(|&g| factors.iter().all(|&(q, _)| pow_mod(g, (p - 1) / q, p) != 1))
}

/// Multiplicative order of `a` modulo the prime `p` (brute force).
pub fn multiplicative_order(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, a, p);
        k += 1;
    }
    Some(k)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn euler_phi(n: u64) -> u64 {
    match factorize(n) {
        Some(f) => f
            .iter()
            .fold(n, |acc, &(p, _)| acc / p * (p - 1)),
        None => (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64,
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn is_power_of_two(n: u64) -> bool {
    n != 0 && n & (n - 1) == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_and_large() {
        let small: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(360), Some(vec![(2, 3), (3, 2), (5, 1)]));
        assert_eq!(prime_factor_multiset(45), Some(vec![3, 3, 5]));
        assert_eq!(factorize(1), Some(vec![]));
        assert_eq!(factorize((1 << 61) - 2).map(|f| f.len()), Some(12));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(2, 7), 1);
        assert_eq!(legendre(3, 7), -1);
        assert_eq!(legendre(7, 7), 0);
        assert_eq!(legendre(-1, 13), 1);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(smallest_primitive_root(13), Some(2));
        assert_eq!(smallest_primitive_root(7), Some(3));
        assert_eq!(smallest_primitive_root(5), Some(2));
        assert_eq!(multiplicative_order(3, 13), Some(3));
    }

    #[test]
    fn divisors_and_phi() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(21), 12);
    }
}
