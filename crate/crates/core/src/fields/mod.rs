//! Exact arithmetic in GF(p) and Q(ζₙ).
//!
//! Algorithms elsewhere in the crate are generic over [`Field`]. The two
//! concrete backends are [`PrimeField`] (elements are `u64` residues) and
//! [`Cyclotomic`] (elements are reduced rational coefficient vectors).
//! [`FieldCtx`]/[`FieldElem`] wrap both for callers that choose the field
//! at runtime, and carry enough of a context tag on every element to reject
//! mixed-field arithmetic.

mod cyclotomic;
mod gauss;
mod prime;

use alloc::vec::Vec;
use core::fmt::Debug;

use num_rational::BigRational;

use crate::error::{Error, Result};

pub use cyclotomic::{cyclotomic_polynomial, CycloElem, Cyclotomic, IntPoly};
pub use gauss::{gauss_sum_at, gauss_sum_prime, legendre, level, square_root_of_signed_n, Level};
pub use prime::{PrimeField, MAX_PRIME};

/// A field of characteristic ≠ 2 containing a primitive n-th root of unity.
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Whether `a` is a well-formed element of this field.
    fn contains(&self, a: &Self::Elem) -> bool;
    /// 0 for Q(ζₙ).
    fn characteristic(&self) -> u64;
    /// The order `n` of the distinguished root of unity.
    fn root_order(&self) -> u64;
    /// The deterministic primitive n-th root of unity ω.
    fn primitive_root_of_unity(&self) -> Self::Elem;
    /// Some primitive root of unity of the given order, if the field has one.
    fn root_of_unity(&self, order: u64) -> Option<Self::Elem>;

    fn as_prime_field(&self) -> Option<&PrimeField> {
        None
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn is_negative_one(&self, a: &Self::Elem) -> bool {
        *a == self.from_i64(-1)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        Some(self.mul(a, &self.inv(b)?))
    }

    /// Integer power; negative exponents invert, `None` for 0 to a negative power.
    fn pow(&self, a: &Self::Elem, e: i64) -> Option<Self::Elem> {
        let mut base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        Some(acc)
    }

    /// Multiplicative order by repeated multiplication, capped at `limit`.
    fn order_of(&self, a: &Self::Elem, limit: u64) -> Option<u64> {
        if self.is_zero(a) {
            return None;
        }
        let mut x = a.clone();
        for k in 1..=limit {
            if self.is_one(&x) {
                return Some(k);
            }
            x = self.mul(&x, a);
        }
        None
    }
}

/// Runtime-selected field descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldCtx {
    Prime(PrimeField),
    Cyclo(Cyclotomic),
}

/// An element tagged with the context it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Prime { p: u64, value: u64 },
    Cyclo { n: u64, value: CycloElem },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Pow,
}

/// Second operand of [`FieldCtx::arith`].
#[derive(Debug, Clone)]
pub enum Operand<'a> {
    Elem(&'a FieldElem),
    Exponent(i64),
    None,
}

/// GF(p) with a primitive n-th root of unity.
pub fn gf_create(p: u64, n: u64) -> Result<FieldCtx> {
    PrimeField::new(p, n).map(FieldCtx::Prime)
}

/// Q(ζₙ).
pub fn cyclo_create(n: u64) -> Result<FieldCtx> {
    Cyclotomic::new(n).map(FieldCtx::Cyclo)
}

impl FieldCtx {
    pub fn kind_name(&self) -> &'static str {
        match self {
            FieldCtx::Prime(_) => "gf",
            FieldCtx::Cyclo(_) => "cyclo",
        }
    }

    pub fn prime_field(&self) -> Result<&PrimeField> {
        match self {
            FieldCtx::Prime(f) => Ok(f),
            FieldCtx::Cyclo(_) => Err(Error::Unsupported("operation requires a prime field")),
        }
    }

    pub fn check(&self, a: &FieldElem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Checked arithmetic: rejects foreign elements and division by zero.
    pub fn arith(&self, op: ArithOp, u: &FieldElem, v: Operand<'_>) -> Result<FieldElem> {
        self.check(u)?;
        let other = |v: Operand<'_>| -> Result<FieldElem> {
            match v {
                Operand::Elem(e) => {
                    self.check(e)?;
                    Ok(e.clone())
                }
                _ => Err(Error::InvalidInput("binary operation needs a second element".into())),
            }
        };
        Ok(match op {
            ArithOp::Add => self.add(u, &other(v)?),
            ArithOp::Sub => self.sub(u, &other(v)?),
            ArithOp::Mul => self.mul(u, &other(v)?),
            ArithOp::Div => self.div(u, &other(v)?).ok_or(Error::DivisionByZero)?,
            ArithOp::Neg => self.neg(u),
            ArithOp::Pow => match v {
                Operand::Exponent(e) => self.pow(u, e).ok_or(Error::DivisionByZero)?,
                _ => return Err(Error::InvalidInput("pow needs an integer exponent".into())),
            },
        })
    }

    /// Euler-criterion square test; prime fields only.
    pub fn is_square(&self, u: &FieldElem) -> Result<bool> {
        self.check(u)?;
        match (self, u) {
            (FieldCtx::Prime(f), FieldElem::Prime { value, .. }) => Ok(f.is_square(value)),
            _ => Err(Error::Unsupported("square classes are only decided over GF(p)")),
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElem> {
        match self {
            FieldCtx::Prime(f) => {
                let p = f.p();
                let num = bigint_mod(q.numer(), p);
                let den = bigint_mod(q.denom(), p);
                let inv = crate::arith::inv_mod(den, p).ok_or(Error::DivisionByZero)?;
                Ok(FieldElem::Prime { p, value: crate::arith::mul_mod(num, inv, p) })
            }
            FieldCtx::Cyclo(k) => Ok(FieldElem::Cyclo { n: k.n(), value: k.from_rational(q.clone()) }),
        }
    }

    /// Wraps a backend element.
    pub fn wrap_prime(&self, value: u64) -> FieldElem {
        match self {
            FieldCtx::Prime(f) => FieldElem::Prime { p: f.p(), value: value % f.p() },
            FieldCtx::Cyclo(_) => panic!("prime residue in a cyclotomic context"),
        }
    }
}

fn bigint_mod(v: &num_bigint::BigInt, p: u64) -> u64 {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    v.mod_floor(&num_bigint::BigInt::from(p)).to_u64().expect("residue fits in u64")
}

impl FieldElem {
    pub fn as_prime(&self) -> Option<u64> {
        match self {
            FieldElem::Prime { value, .. } => Some(*value),
            FieldElem::Cyclo { .. } => None,
        }
    }

    pub fn as_cyclo(&self) -> Option<&CycloElem> {
        match self {
            FieldElem::Cyclo { value, .. } => Some(value),
            FieldElem::Prime { .. } => None,
        }
    }
}

macro_rules! dispatch_binary {
    ($self:ident, $a:ident, $b:ident, $method:ident) => {
        match ($self, $a, $b) {
            (FieldCtx::Prime(f), FieldElem::Prime { value: x, .. }, FieldElem::Prime { value: y, .. }) => {
                FieldElem::Prime { p: f.p(), value: f.$method(x, y) }
            }
            (FieldCtx::Cyclo(k), FieldElem::Cyclo { value: x, .. }, FieldElem::Cyclo { value: y, .. }) => {
                FieldElem::Cyclo { n: k.n(), value: k.$method(x, y) }
            }
            _ => panic!("field element does not belong to this context"),
        }
    };
}

impl Field for FieldCtx {
    type Elem = FieldElem;

    fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    fn from_i64(&self, v: i64) -> FieldElem {
        match self {
            FieldCtx::Prime(f) => FieldElem::Prime { p: f.p(), value: f.from_i64(v) },
            FieldCtx::Cyclo(k) => FieldElem::Cyclo { n: k.n(), value: k.from_i64(v) },
        }
    }

    fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        dispatch_binary!(self, a, b, add)
    }

    fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        dispatch_binary!(self, a, b, sub)
    }

    fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        dispatch_binary!(self, a, b, mul)
    }

    fn neg(&self, a: &FieldElem) -> FieldElem {
        match (self, a) {
            (FieldCtx::Prime(f), FieldElem::Prime { value, .. }) => {
                FieldElem::Prime { p: f.p(), value: f.neg(value) }
            }
            (FieldCtx::Cyclo(k), FieldElem::Cyclo { value, .. }) => {
                FieldElem::Cyclo { n: k.n(), value: k.neg(value) }
            }
            _ => panic!("field element does not belong to this context"),
        }
    }

    fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        match (self, a) {
            (FieldCtx::Prime(f), FieldElem::Prime { value, .. }) => {
                Some(FieldElem::Prime { p: f.p(), value: f.inv(value)? })
            }
            (FieldCtx::Cyclo(k), FieldElem::Cyclo { value, .. }) => {
                Some(FieldElem::Cyclo { n: k.n(), value: k.inv(value)? })
            }
            _ => panic!("field element does not belong to this context"),
        }
    }

    fn is_zero(&self, a: &FieldElem) -> bool {
        match (self, a) {
            (FieldCtx::Prime(f), FieldElem::Prime { value, .. }) => f.is_zero(value),
            (FieldCtx::Cyclo(k), FieldElem::Cyclo { value, .. }) => k.is_zero(value),
            _ => panic!("field element does not belong to this context"),
        }
    }

    fn contains(&self, a: &FieldElem) -> bool {
        match (self, a) {
            (FieldCtx::Prime(f), FieldElem::Prime { p, value }) => *p == f.p() && f.contains(value),
            (FieldCtx::Cyclo(k), FieldElem::Cyclo { n, value }) => *n == k.n() && k.contains(value),
            _ => false,
        }
    }

    fn characteristic(&self) -> u64 {
        match self {
            FieldCtx::Prime(f) => f.characteristic(),
            FieldCtx::Cyclo(k) => k.characteristic(),
        }
    }

    fn root_order(&self) -> u64 {
        match self {
            FieldCtx::Prime(f) => f.root_order(),
            FieldCtx::Cyclo(k) => k.root_order(),
        }
    }

    fn primitive_root_of_unity(&self) -> FieldElem {
        match self {
            FieldCtx::Prime(f) => FieldElem::Prime { p: f.p(), value: f.primitive_root_of_unity() },
            FieldCtx::Cyclo(k) => FieldElem::Cyclo { n: k.n(), value: k.primitive_root_of_unity() },
        }
    }

    fn root_of_unity(&self, order: u64) -> Option<FieldElem> {
        match self {
            FieldCtx::Prime(f) => Some(FieldElem::Prime { p: f.p(), value: f.root_of_unity(order)? }),
            FieldCtx::Cyclo(k) => Some(FieldElem::Cyclo { n: k.n(), value: k.root_of_unity(order)? }),
        }
    }

    fn as_prime_field(&self) -> Option<&PrimeField> {
        match self {
            FieldCtx::Prime(f) => Some(f),
            FieldCtx::Cyclo(_) => None,
        }
    }
}

/// Sum of a sequence of elements.
pub fn sum<F: Field>(field: &F, items: impl IntoIterator<Item = F::Elem>) -> F::Elem {
    items.into_iter().fold(field.zero(), |acc, x| field.add(&acc, &x))
}

/// Distinct primitive n-th roots of unity ω^t, gcd(t, n) = 1, in increasing t.
pub fn primitive_roots_of_unity<F: Field>(field: &F) -> Vec<(u64, F::Elem)> {
    let n = field.root_order();
    let omega = field.primitive_root_of_unity();
    (1..=n.max(1))
        .filter(|&t| crate::arith::gcd(t, n) == 1)
        .map(|t| (t, field.pow(&omega, t as i64).expect("root of unity is nonzero")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf_create_examples() {
        assert!(gf_create(13, 3).is_ok());
        // 7 ≡ 1 (mod 3), so GF(7) does contain cube roots of unity.
        assert!(gf_create(7, 3).is_ok());
        assert_eq!(gf_create(5, 3), Err(Error::NoRootOfUnity { order: 3 }));
        assert_eq!(gf_create(3, 3), Err(Error::BadCharacteristic { p: 3, n: 3 }));
        assert_eq!(gf_create(2, 1), Err(Error::BadCharacteristic { p: 2, n: 1 }));
        assert_eq!(gf_create(15, 1), Err(Error::NotPrime(15)));
    }

    #[test]
    fn prime_field_arith() {
        let k = gf_create(13, 3).unwrap();
        let four = k.from_i64(4);
        let r = k.arith(ArithOp::Mul, &four, Operand::Elem(&four)).unwrap();
        assert_eq!(r, k.from_i64(3));
        let zero = k.zero();
        assert_eq!(k.arith(ArithOp::Div, &four, Operand::Elem(&zero)), Err(Error::DivisionByZero));
        assert_eq!(k.arith(ArithOp::Pow, &zero, Operand::Exponent(-1)), Err(Error::DivisionByZero));
        let inv = k.arith(ArithOp::Pow, &four, Operand::Exponent(-1)).unwrap();
        assert_eq!(k.mul(&inv, &four), k.one());
    }

    #[test]
    fn context_mismatch_is_rejected() {
        let k13 = gf_create(13, 3).unwrap();
        let k7 = gf_create(7, 3).unwrap();
        let q3 = cyclo_create(3).unwrap();
        let q6 = cyclo_create(6).unwrap();
        let a = k13.one();
        let b = k7.one();
        assert_eq!(k13.arith(ArithOp::Add, &a, Operand::Elem(&b)), Err(Error::ContextMismatch));
        // Same degree φ(3) = φ(6) but different contexts.
        let z3 = q3.primitive_root_of_unity();
        let z6 = q6.primitive_root_of_unity();
        assert_eq!(q3.arith(ArithOp::Mul, &z3, Operand::Elem(&z6)), Err(Error::ContextMismatch));
    }

    #[test]
    fn cyclotomic_arith_examples() {
        let k = cyclo_create(4).unwrap();
        let z = k.primitive_root_of_unity();
        assert_eq!(k.mul(&z, &z), k.from_i64(-1));
        let k3 = cyclo_create(3).unwrap();
        let z = k3.primitive_root_of_unity();
        let u = k3.add(&k3.one(), &z);
        let inv = k3.arith(ArithOp::Pow, &u, Operand::Exponent(-1)).unwrap();
        assert_eq!(inv, k3.neg(&z));
    }

    #[test]
    fn primitive_root_examples() {
        let k = PrimeField::new(13, 3).unwrap();
        assert_eq!(k.primitive_root_of_unity(), 3);
        assert_eq!(crate::arith::multiplicative_order(3, 13), Some(3));
        let k = PrimeField::new(5, 4).unwrap();
        assert_eq!(k.primitive_root_of_unity(), 2);
        let q = Cyclotomic::new(3).unwrap();
        let z = q.primitive_root_of_unity();
        assert_eq!(q.pow(&z, 3), Some(q.one()));
    }

    #[test]
    fn is_square_examples() {
        let k = gf_create(7, 3).unwrap();
        assert_eq!(k.is_square(&k.from_i64(2)), Ok(true));
        assert_eq!(k.is_square(&k.from_i64(3)), Ok(false));
        assert_eq!(k.is_square(&k.zero()), Ok(true));
        let k = gf_create(13, 3).unwrap();
        assert_eq!(k.is_square(&k.from_i64(-1)), Ok(true));
        let q = cyclo_create(3).unwrap();
        assert!(matches!(q.is_square(&q.one()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn rationals_map_into_gf() {
        let k = gf_create(13, 3).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(k.from_rational(&half).unwrap(), k.from_i64(7));
        let thirteenth = BigRational::new(1.into(), 13.into());
        assert_eq!(k.from_rational(&thirteenth), Err(Error::DivisionByZero));
    }
}
