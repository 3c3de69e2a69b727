use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fields::PrimeField;

use super::{DiagForm, QuadForm};

/// Isometry class of a form over GF(p): dimension of the radical, rank, and
/// square class of the determinant of the regular part. Over a finite field
/// these determine the form up to isometry. Counts are arbitrary precision so
/// that exterior powers far beyond enumerable size can be classified.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IsometryClass {
    p: u64,
    radical_dim: BigUint,
    rank: BigUint,
    det_is_square: bool,
}

impl IsometryClass {
    pub fn new(p: u64, radical_dim: BigUint, rank: BigUint, det_is_square: bool) -> Self {
        IsometryClass { p, radical_dim, rank, det_is_square }
    }

    /// Class of a nondegenerate form of the given rank and determinant class.
    pub fn regular(p: u64, rank: BigUint, det_is_square: bool) -> Self {
        Self::new(p, BigUint::zero(), rank, det_is_square)
    }

    pub fn of_diag(form: &DiagForm<PrimeField>) -> Self {
        let f = form.field();
        IsometryClass {
            p: f.p(),
            radical_dim: BigUint::from(form.radical_dim()),
            rank: BigUint::from(form.rank()),
            det_is_square: f.is_square(&form.regular_determinant()),
        }
    }

    pub fn of_form(form: &QuadForm<PrimeField>) -> Self {
        Self::of_diag(&super::diagonal_entries(form))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> &BigUint {
        &self.rank
    }

    pub fn radical_dim(&self) -> &BigUint {
        &self.radical_dim
    }

    pub fn dim(&self) -> BigUint {
        &self.rank + &self.radical_dim
    }

    pub fn det_is_square(&self) -> bool {
        self.det_is_square
    }

    pub fn minus_one_is_square(&self) -> bool {
        self.p % 4 == 1
    }

    /// Square class of (−1)^(r(r−1)/2)·det for the regular part.
    pub fn disc_is_square(&self) -> bool {
        let r_mod4 = (&self.rank % 4u32).to_u32().expect("small");
        let sign_flip = matches!(r_mod4, 2 | 3);
        if sign_flip && !self.minus_one_is_square() {
            !self.det_is_square
        } else {
            self.det_is_square
        }
    }

    pub fn witt_index(&self) -> BigUint {
        let half = &self.rank >> 1;
        if self.rank.is_odd() || self.disc_is_square() || self.rank.is_zero() {
            half
        } else {
            half - BigUint::one()
        }
    }

    /// 0, 1 or 2.
    pub fn anisotropic_dim(&self) -> u32 {
        let twice: BigUint = self.witt_index() << 1u32;
        let rest: BigUint = &self.rank - twice;
        rest.to_u32().expect("anisotropic part has dimension at most 2")
    }

    /// Nondegenerate with trivial anisotropic part.
    pub fn is_hyperbolic(&self) -> bool {
        self.radical_dim.is_zero() && self.anisotropic_dim() == 0
    }

    pub fn is_anisotropic(&self) -> bool {
        self.radical_dim.is_zero() && self.witt_index().is_zero()
    }

    pub fn orth_sum(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::ContextMismatch);
        }
        Ok(IsometryClass {
            p: self.p,
            radical_dim: &self.radical_dim + &other.radical_dim,
            rank: &self.rank + &other.rank,
            det_is_square: self.det_is_square == other.det_is_square,
        })
    }

    /// Same Witt class (ignoring hyperbolic planes and the radical).
    pub fn witt_equivalent(&self, other: &Self) -> bool {
        self.p == other.p
            && self.anisotropic_dim() == other.anisotropic_dim()
            && self.anisotropic_det_is_square() == other.anisotropic_det_is_square()
    }

    /// Determinant class of the anisotropic part.
    pub fn anisotropic_det_is_square(&self) -> bool {
        // det(regular) = det(an)·(−1)^(witt index)
        let flip = self.witt_index().is_odd() && !self.minus_one_is_square();
        self.det_is_square != flip
    }
}

impl fmt::Display for IsometryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}) rank {} radical {} det {} (witt index {}, anisotropic dim {})",
            self.p,
            self.rank,
            self.radical_dim,
            if self.det_is_square { "square" } else { "nonsquare" },
            self.witt_index(),
            self.anisotropic_dim()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_index_from_invariants() {
        let k7 = PrimeField::new(7, 1).unwrap();
        let k13 = PrimeField::new(13, 1).unwrap();
        let c = IsometryClass::of_form(&QuadForm::diag(k7.clone(), &[1, 1]).unwrap());
        assert_eq!(c.witt_index(), BigUint::zero());
        assert!(c.is_anisotropic());
        let c = IsometryClass::of_form(&QuadForm::diag(k13, &[1, 1]).unwrap());
        assert!(c.is_hyperbolic());
        let c = IsometryClass::of_form(&QuadForm::hyperbolic(k7.clone(), 2));
        assert_eq!(c.witt_index(), BigUint::from(2u32));
        let c = IsometryClass::of_form(&QuadForm::diag(k7, &[1, 1, 1]).unwrap());
        assert_eq!(c.witt_index(), BigUint::one());
        assert_eq!(c.anisotropic_dim(), 1);
    }
}
