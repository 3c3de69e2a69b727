use crate::arith::{self, add_mod, mul_mod, sub_mod};
use crate::error::{Error, Result};

use super::Field;

/// Largest characteristic accepted for arithmetic.
pub const MAX_PRIME: u64 = 1 << 61;

/// The prime field GF(p), together with the order `n` of the root of unity
/// that the surrounding construction requires.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
    n: u64,
    generator: u64,
    omega: u64,
}

impl PrimeField {
    /// Builds GF(p) for an odd prime `p` with `p ≡ 1 (mod n)`.
    pub fn new(p: u64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("root order n must be positive".into()));
        }
        if p > MAX_PRIME {
            return Err(Error::OutOfRange(alloc::format!("prime {p} exceeds 2^61")));
        }
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 || n % p == 0 {
            return Err(Error::BadCharacteristic { p, n });
        }
        if (p - 1) % n != 0 {
            return Err(Error::NoRootOfUnity { order: n });
        }
        let generator = arith::smallest_primitive_root(p).ok_or(Error::FactorizationFailed(p - 1))?;
        let omega = arith::pow_mod(generator, (p - 1) / n, p);
        Ok(PrimeField { p, n, generator, omega })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Smallest primitive root modulo p.
    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// Euler criterion; zero counts as a square.
    pub fn is_square(&self, u: &u64) -> bool {
        let u = *u % self.p;
        u == 0 || arith::pow_mod(u, (self.p - 1) / 2, self.p) == 1
    }

    /// Smallest non-square in GF(p), the representative of the other class.
    pub fn smallest_nonsquare(&self) -> u64 {
        (2..self.p).find(|u| !self.is_square(u)).expect("odd prime field has non-squares")
    }

    /// Level of GF(p): 1 when −1 is a square, otherwise 2.
    pub fn level(&self) -> u32 {
        if self.is_square(&(self.p - 1)) {
            1
        } else {
            2
        }
    }

    /// Square root by enumeration, for small fields only.
    pub fn sqrt_by_search(&self, u: u64) -> Option<u64> {
        (0..self.p).find(|&x| mul_mod(x, x, self.p) == u % self.p)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> u64 {
        arith::reduce_i64(v, self.p)
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        add_mod(*a, *b, self.p)
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        sub_mod(*a, *b, self.p)
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        arith::inv_mod(*a, self.p)
    }

    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn contains(&self, a: &u64) -> bool {
        *a < self.p
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn root_order(&self) -> u64 {
        self.n
    }

    fn primitive_root_of_unity(&self) -> u64 {
        self.omega
    }

    fn root_of_unity(&self, order: u64) -> Option<u64> {
        if order == 0 || (self.p - 1) % order != 0 {
            return None;
        }
        Some(arith::pow_mod(self.generator, (self.p - 1) / order, self.p))
    }

    fn as_prime_field(&self) -> Option<&PrimeField> {
        Some(self)
    }
}
