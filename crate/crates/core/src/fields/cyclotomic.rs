//! The cyclotomic field Q(ζₙ) = Q[x]/(Φₙ), elements stored as exact rational
//! coefficient vectors of length φ(n), reduced after every product.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};

use super::Field;

/// Integer polynomial, lowest degree first.
pub type IntPoly = Vec<i64>;

/// Φₙ via `(xⁿ − 1) / Π_{d | n, d < n} Φ_d`, each division exact.
pub fn cyclotomic_polynomial(n: u64) -> IntPoly {
    assert!(n > 0, "cyclotomic polynomial of order 0");
    let mut num: Vec<i64> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in arith::divisors(n) {
        if d == n {
            continue;
        }
        num = exact_div_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

/// Quotient of `num` by a monic `den`; panics if the remainder is nonzero.
fn exact_div_monic(num: &[i64], den: &[i64]) -> IntPoly {
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "cyclotomic division left a remainder");
    quot
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloElem {
    coeffs: Vec<BigRational>,
}

impl CycloElem {
    /// Coefficients of the reduced representative in powers of ζ.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }
}

/// Q(ζₙ) with its defining polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    n: u64,
    modulus: IntPoly,
}

impl Cyclotomic {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("cyclotomic order must be positive".into()));
        }
        Ok(Cyclotomic { n, modulus: cyclotomic_polynomial(n) })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Φₙ, lowest degree first.
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// φ(n), the dimension over Q.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Builds an element from a coefficient vector of any length, reducing mod Φₙ.
    pub fn from_coeffs(&self, coeffs: Vec<BigRational>) -> CycloElem {
        self.reduce(coeffs)
    }

    /// Element from a coefficient vector that must already be reduced.
    pub fn from_reduced(&self, coeffs: Vec<BigRational>) -> Result<CycloElem> {
        if coeffs.len() != self.degree() {
            return Err(Error::DimensionMismatch { expected: self.degree(), found: coeffs.len() });
        }
        Ok(CycloElem { coeffs })
    }

    pub fn from_rational(&self, q: BigRational) -> CycloElem {
        let mut c = vec![BigRational::zero(); self.degree()];
        c[0] = q;
        CycloElem { coeffs: c }
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(&self, k: i64) -> CycloElem {
        let e = k.rem_euclid(self.n as i64) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        self.reduce(c)
    }

    fn reduce(&self, mut c: Vec<BigRational>) -> CycloElem {
        let d = self.degree();
        if c.len() > d {
            for i in (d..c.len()).rev() {
                if c[i].is_zero() {
                    continue;
                }
                let lead = core::mem::take(&mut c[i]);
                for (j, &mj) in self.modulus[..d].iter().enumerate() {
                    if mj != 0 {
                        let t = &lead * BigRational::from_integer(BigInt::from(mj));
                        c[i - d + j] -= t;
                    }
                }
            }
            c.truncate(d);
        }
        c.resize(d, BigRational::zero());
        CycloElem { coeffs: c }
    }

    fn modulus_rational(&self) -> Vec<BigRational> {
        self.modulus
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect()
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Division with remainder in Q[x]; `den` must be nonzero after trimming.
fn poly_divrem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let dn = den.len() - 1;
    let lead_inv = den[dn].recip();
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dn] * &lead_inv;
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                let t = &c * dj;
                rem[i + j] -= t;
            }
        }
        quot[i] = c;
    }
    trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    trim(&mut out);
    out
}

impl Field for Cyclotomic {
    type Elem = CycloElem;

    fn zero(&self) -> CycloElem {
        CycloElem { coeffs: vec![BigRational::zero(); self.degree()] }
    }

    fn one(&self) -> CycloElem {
        self.from_rational(BigRational::one())
    }

    fn from_i64(&self, v: i64) -> CycloElem {
        self.from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    fn add(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        CycloElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }

    fn sub(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        CycloElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect() }
    }

    fn mul(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        self.reduce(poly_mul(&a.coeffs, &b.coeffs))
    }

    fn neg(&self, a: &CycloElem) -> CycloElem {
        CycloElem { coeffs: a.coeffs.iter().map(|x| -x).collect() }
    }

    /// Extended Euclid against Φₙ.
    fn inv(&self, a: &CycloElem) -> Option<CycloElem> {
        if self.is_zero(a) {
            return None;
        }
        // Invariant: s_i · a ≡ r_i (mod Φₙ).
        let mut r0 = self.modulus_rational();
        let mut r1 = a.coeffs.clone();
        trim(&mut r1);
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
        }
        // Φₙ is irreducible, so the last nonzero remainder is a constant.
        let c = r1.first()?.clone();
        if c.is_zero() {
            return None;
        }
        let scale = c.recip();
        let inv: Vec<BigRational> = s1.iter().map(|x| x * &scale).collect();
        Some(self.reduce(inv))
    }

    fn is_zero(&self, a: &CycloElem) -> bool {
        a.coeffs.iter().all(Zero::is_zero)
    }

    fn contains(&self, a: &CycloElem) -> bool {
        a.coeffs.len() == self.degree()
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn root_order(&self) -> u64 {
        self.n
    }

    fn primitive_root_of_unity(&self) -> CycloElem {
        self.zeta_pow(1)
    }

    fn root_of_unity(&self, order: u64) -> Option<CycloElem> {
        if order == 0 {
            return None;
        }
        if self.n % order == 0 {
            return Some(self.zeta_pow((self.n / order) as i64));
        }
        // −ζ has order 2n when n is odd.
        if self.n % 2 == 1 && (2 * self.n) % order == 0 && order % 2 == 0 {
            let half = self.root_of_unity(order / 2)?;
            if (order / 2) % 2 == 1 {
                return Some(self.neg(&half));
            }
        }
        None
    }

    fn is_negative_one(&self, a: &CycloElem) -> bool {
        a.as_rational().is_some_and(|q| q.is_negative() && q.abs().is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // Φ₁₀₅ is the first with a coefficient of absolute value 2.
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn phi6_by_independent_division() {
        // (x⁶ − 1) / ((x − 1)(x + 1)(x² + x + 1)) computed by hand-rolled long division.
        let denom = [-1i64, -1, 0, 1, 1]; // (x² − 1)(x² + x + 1) = x⁴ + x³ − x − 1
        let q = exact_div_monic(&[-1, 0, 0, 0, 0, 0, 1], &denom);
        assert_eq!(q, vec![1, -1, 1]);
    }

    #[test]
    fn degree_is_totient() {
        for n in 1..60 {
            let k = Cyclotomic::new(n).unwrap();
            assert_eq!(k.degree() as u64, arith::euler_phi(n), "n = {n}");
        }
    }

    #[test]
    fn zeta_relations() {
        let k = Cyclotomic::new(4).unwrap();
        let z = k.primitive_root_of_unity();
        assert_eq!(k.mul(&z, &z), k.from_i64(-1));
        let k3 = Cyclotomic::new(3).unwrap();
        let z = k3.primitive_root_of_unity();
        let one_plus = k3.add(&k3.one(), &z);
        assert_eq!(k3.inv(&one_plus).unwrap(), k3.neg(&z));
    }

    #[test]
    fn odd_order_has_negated_roots() {
        let k = Cyclotomic::new(3).unwrap();
        let w6 = k.root_of_unity(6).unwrap();
        assert_eq!(k.pow(&w6, 3), Some(k.from_i64(-1)));
        assert_eq!(k.pow(&w6, 6), Some(k.one()));
        assert!(k.root_of_unity(4).is_none());
    }
}
