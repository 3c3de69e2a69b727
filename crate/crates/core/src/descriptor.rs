//! Abstract forms m₁×⟨c₁⟩ ⊥ … ⊥ h×H whose entries are signed monomials in
//! the symbols n, a, b. The hyperbolic count is either exact or left open and
//! filled from a known total dimension.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fields::{Field, PrimeField};
use crate::quadform::{DiagForm, IsometryClass};

/// ±nⁱ·aʲ·bᵏ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub negative: bool,
    pub n_pow: u32,
    pub a_pow: u32,
    pub b_pow: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { negative: false, n_pow: 0, a_pow: 0, b_pow: 0 };
    pub const MINUS_ONE: Monomial = Monomial { negative: true, n_pow: 0, a_pow: 0, b_pow: 0 };
    pub const N: Monomial = Monomial { negative: false, n_pow: 1, a_pow: 0, b_pow: 0 };
    pub const A: Monomial = Monomial { negative: false, n_pow: 0, a_pow: 1, b_pow: 0 };
    pub const B: Monomial = Monomial { negative: false, n_pow: 0, a_pow: 0, b_pow: 1 };

    /// (−1)^e.
    pub fn sign_power(e: u64) -> Self {
        if e % 2 == 1 {
            Self::MINUS_ONE
        } else {
            Self::ONE
        }
    }

    pub fn times(self, o: Monomial) -> Monomial {
        Monomial {
            negative: self.negative != o.negative,
            n_pow: self.n_pow + o.n_pow,
            a_pow: self.a_pow + o.a_pow,
            b_pow: self.b_pow + o.b_pow,
        }
    }

    pub fn eval<F: Field>(&self, field: &F, n: &F::Elem, a: &F::Elem, b: &F::Elem) -> F::Elem {
        let mut v = field.one();
        for (base, e) in [(n, self.n_pow), (a, self.a_pow), (b, self.b_pow)] {
            v = field.mul(&v, &field.pow(base, e as i64).expect("non-negative power"));
        }
        if self.negative {
            field.neg(&v)
        } else {
            v
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("−")?;
        }
        let mut any = false;
        for (sym, e) in [("n", self.n_pow), ("a", self.a_pow), ("b", self.b_pow)] {
            match e {
                0 => {}
                1 => {
                    f.write_str(sym)?;
                    any = true;
                }
                _ => {
                    write!(f, "{sym}^{e}")?;
                    any = true;
                }
            }
        }
        if !any {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// mult × ⟨entry⟩.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub mult: BigUint,
    pub entry: Monomial,
}

impl Term {
    pub fn new(mult: impl Into<BigUint>, entry: Monomial) -> Self {
        Term { mult: mult.into(), entry }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HypCount {
    Exact(BigUint),
    /// "Hyp": whatever makes the dimension come out right.
    Fill,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormDescriptor {
    pub terms: Vec<Term>,
    pub hyp: HypCount,
}

/// Values substituted for the symbols n, a, b over GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Substitution {
    pub n: u64,
    pub a: u64,
    pub b: u64,
}

impl FormDescriptor {
    pub fn new(terms: Vec<Term>, hyp: HypCount) -> Self {
        FormDescriptor { terms, hyp }
    }

    pub fn hyperbolic(h: impl Into<BigUint>) -> Self {
        FormDescriptor { terms: Vec::new(), hyp: HypCount::Exact(h.into()) }
    }

    /// m × ⟨c⟩ ⊥ Hyp.
    pub fn multiple_plus_hyp(m: impl Into<BigUint>, c: Monomial) -> Self {
        FormDescriptor { terms: alloc::vec![Term::new(m, c)], hyp: HypCount::Fill }
    }

    pub fn explicit_dim(&self) -> BigUint {
        self.terms.iter().map(|t| &t.mult).sum()
    }

    /// `None` while the hyperbolic count is open.
    pub fn dim(&self) -> Option<BigUint> {
        match &self.hyp {
            HypCount::Exact(h) => Some(self.explicit_dim() + (h << 1u32)),
            HypCount::Fill => None,
        }
    }

    /// Hyperbolic count, filling an open count from `total`. A total smaller
    /// than the explicit part, or of the wrong parity, is a hard failure.
    pub fn hyp_count(&self, total: Option<&BigUint>) -> Result<BigUint> {
        let explicit = self.explicit_dim();
        match (&self.hyp, total) {
            (HypCount::Exact(h), None) => Ok(h.clone()),
            (HypCount::Exact(h), Some(t)) => {
                let dim = &explicit + (h << 1u32);
                if &dim != t {
                    return Err(Error::BadHypCount(alloc::format!(
                        "descriptor has dimension {dim}, expected {t}"
                    )));
                }
                Ok(h.clone())
            }
            (HypCount::Fill, None) => {
                Err(Error::BadHypCount(String::from("open hyperbolic count needs a total dimension")))
            }
            (HypCount::Fill, Some(t)) => {
                if &explicit > t {
                    return Err(Error::BadHypCount(alloc::format!(
                        "explicit part {explicit} exceeds dimension {t}"
                    )));
                }
                let rest = t - &explicit;
                if rest.is_odd() {
                    return Err(Error::BadHypCount(alloc::format!(
                        "dimension {t} minus explicit part {explicit} is odd"
                    )));
                }
                Ok(rest >> 1u32)
            }
        }
    }

    /// Replaces an open count by the one implied by `total`.
    pub fn resolve(&self, total: &BigUint) -> Result<Self> {
        let h = self.hyp_count(Some(total))?;
        Ok(FormDescriptor { terms: self.terms.clone(), hyp: HypCount::Exact(h) })
    }

    /// ⟨c⟩·φ; hyperbolic planes are unchanged.
    pub fn scaled(&self, c: Monomial) -> Self {
        FormDescriptor {
            terms: self.terms.iter().map(|t| Term { mult: t.mult.clone(), entry: t.entry.times(c) }).collect(),
            hyp: self.hyp.clone(),
        }
    }

    /// Drops terms of multiplicity zero.
    pub fn pruned(mut self) -> Self {
        self.terms.retain(|t| !t.mult.is_zero());
        self
    }

    /// Isometry class over GF(p) after substituting n, a, b.
    pub fn class_over(&self, field: &PrimeField, s: Substitution, total: Option<&BigUint>) -> Result<IsometryClass> {
        let h = self.hyp_count(total)?;
        let n = s.n % field.p();
        let a = s.a % field.p();
        let b = s.b % field.p();
        let mut det_square = true;
        for t in &self.terms {
            if t.mult.is_zero() {
                continue;
            }
            let v = t.entry.eval(field, &n, &a, &b);
            if field.is_zero(&v) {
                return Err(Error::DegenerateInput);
            }
            if t.mult.is_odd() && !field.is_square(&v) {
                det_square = !det_square;
            }
        }
        // det H = −1
        if h.is_odd() && field.p() % 4 == 3 {
            det_square = !det_square;
        }
        Ok(IsometryClass::regular(field.p(), self.explicit_dim() + (h << 1u32), det_square))
    }

    /// The descriptor written out as a diagonal form with H = ⟨1, −1⟩.
    pub fn to_diag(&self, field: &PrimeField, s: Substitution, total: Option<&BigUint>, max_dim: usize) -> Result<DiagForm<PrimeField>> {
        let h = self.hyp_count(total)?;
        let dim = self.explicit_dim() + (&h << 1u32);
        if dim > BigUint::from(max_dim) {
            return Err(Error::OutOfRange(alloc::format!("descriptor dimension {dim} exceeds {max_dim}")));
        }
        let (n, a, b) = (s.n % field.p(), s.a % field.p(), s.b % field.p());
        let mut entries = Vec::new();
        for t in &self.terms {
            let v = t.entry.eval(field, &n, &a, &b);
            let m: usize = (&t.mult).try_into().expect("bounded by max_dim");
            entries.extend(core::iter::repeat(v).take(m));
        }
        let h: usize = (&h).try_into().expect("bounded by max_dim");
        for _ in 0..h {
            entries.push(field.one());
            entries.push(field.neg(&field.one()));
        }
        DiagForm::new(field.clone(), entries, 0)
    }
}

impl fmt::Display for FormDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for t in &self.terms {
            if !first {
                f.write_str(" ⊥ ")?;
            }
            first = false;
            if t.mult.is_one() {
                write!(f, "⟨{}⟩", t.entry)?;
            } else {
                write!(f, "{}×⟨{}⟩", t.mult, t.entry)?;
            }
        }
        if !first {
            f.write_str(" ⊥ ")?;
        }
        match &self.hyp {
            HypCount::Exact(h) => write!(f, "{h}×H"),
            HypCount::Fill => f.write_str("Hyp"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fill_from_dimension() {
        let d = FormDescriptor::multiple_plus_hyp(4u32, Monomial::MINUS_ONE);
        assert_eq!(d.hyp_count(Some(&BigUint::from(36u32))).unwrap(), BigUint::from(16u32));
        assert!(matches!(d.hyp_count(Some(&BigUint::from(35u32))), Err(Error::BadHypCount(_))));
        assert!(matches!(d.hyp_count(Some(&BigUint::from(2u32))), Err(Error::BadHypCount(_))));
        assert_eq!(d.to_string(), "4×⟨−1⟩ ⊥ Hyp");
        assert_eq!(d.resolve(&BigUint::from(36u32)).unwrap().to_string(), "4×⟨−1⟩ ⊥ 16×H");
    }

    #[test]
    fn class_matches_written_out_form() {
        use crate::quadform::IsometryClass;
        let k = PrimeField::new(7, 1).unwrap();
        let q = FormDescriptor::new(
            alloc::vec![
                Term::new(1u32, Monomial::N),
                Term::new(1u32, Monomial::N.times(Monomial::A)),
                Term::new(1u32, Monomial::N.times(Monomial::B)),
                Term::new(1u32, Monomial::N.times(Monomial::A).times(Monomial::B).times(Monomial::MINUS_ONE)),
            ],
            HypCount::Exact(BigUint::from(3u32)),
        );
        assert_eq!(q.terms[3].entry.to_string(), "−nab");
        let s = Substitution { n: 2, a: 3, b: 5 };
        let diag = q.to_diag(&k, s, None, 100).unwrap();
        assert_eq!(diag.dim(), 10);
        assert_eq!(IsometryClass::of_diag(&diag), q.class_over(&k, s, None).unwrap());
    }
}
