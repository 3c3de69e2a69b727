//! Legendre symbols, quadratic Gauss sums and the level of a field.

use alloc::vec::Vec;

use crate::arith;
use crate::error::{Error, Result};

use super::Field;

/// `(i/p)` for an odd prime `p`.
pub fn legendre(i: i64, p: u64) -> Result<i8> {
    if p == 2 || !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(arith::legendre(i, p))
}

/// τ_p = Σ_{i=1}^{p−1} (i/p)·ωⁱ for a given primitive p-th root of unity ω.
pub fn gauss_sum_at<F: Field>(field: &F, p: u64, omega: &F::Elem) -> F::Elem {
    let mut acc = field.zero();
    let mut power = field.one();
    for i in 1..p {
        power = field.mul(&power, omega);
        match arith::legendre(i as i64, p) {
            1 => acc = field.add(&acc, &power),
            -1 => acc = field.sub(&acc, &power),
            _ => {}
        }
    }
    acc
}

/// τ_p evaluated at the field's deterministic primitive p-th root of unity.
pub fn gauss_sum_prime<F: Field>(field: &F, p: u64) -> Result<F::Elem> {
    if p == 2 || !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let omega = field.root_of_unity(p).ok_or(Error::NoRootOfUnity { order: p })?;
    Ok(gauss_sum_at(field, p, &omega))
}

/// An explicit square root of (−1)^((n−1)/2)·n for odd `n`, built as
/// Π τ_{p_j} over the prime factors of n (with multiplicity), each Gauss sum
/// taken at ω^(n/p_j) where ω is the field's primitive n-th root.
pub fn square_root_of_signed_n<F: Field>(field: &F, n: u64) -> Result<F::Elem> {
    if n % 2 == 0 {
        return Err(Error::EvenInput(n));
    }
    let omega = field.root_of_unity(n).ok_or(Error::NoRootOfUnity { order: n })?;
    let factors: Vec<u64> = arith::prime_factor_multiset(n).ok_or(Error::FactorizationFailed(n))?;
    let mut t = field.one();
    for p in factors {
        let root = field.pow(&omega, (n / p) as i64).expect("roots of unity are units");
        t = field.mul(&t, &gauss_sum_at(field, p, &root));
    }
    Ok(t)
}

/// The level s(K): least number of squares summing to −1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Computed exactly (prime fields).
    Computed(u32),
    /// Exact value deduced from the root-of-unity rule, not computed.
    RuleDerived(u32),
    /// Only an upper bound is known from the rule.
    AtMost(u32),
    /// Formally real field (Q itself).
    Infinite,
}

/// Level of the field. Over GF(p) it is computed from the square class of
/// −1; over Q(ζₙ) it is read off from the divisors of n.
pub fn level<F: Field>(field: &F) -> Level {
    if let Some(f) = field.as_prime_field() {
        return Level::Computed(f.level());
    }
    let mut n = field.root_order();
    // Q(ζ_{2m}) = Q(ζ_m) for odd m.
    if n % 4 == 2 {
        n /= 2;
    }
    if n <= 2 {
        return Level::Infinite;
    }
    if n % 4 == 0 {
        return Level::RuleDerived(1);
    }
    let has_level_two_prime = arith::factorize(n)
        .map(|f| f.iter().any(|&(p, _)| p % 8 == 3 || p % 8 == 5))
        .unwrap_or(false);
    if has_level_two_prime {
        Level::RuleDerived(2)
    } else {
        Level::AtMost(4)
    }
}
