//! Predicted forms for each closed-form statement about symbol algebras and
//! their trace forms, plus sweeps that check them against direct computation.

mod sweep;

pub use sweep::{
    auto_primes, default_sweep, exact_trace_gram_check, verify, Instance, SweepParams, VerifyReport,
    MAX_BRUTE_DEGREE, MAX_EXTERIOR_DEGREE, MAX_GAUSS_SUM_DEGREE, MAX_PRIME_IN_SWEEP, MAX_TRACE_FORM_DEGREE,
};

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;

use crate::descriptor::{FormDescriptor, HypCount, Monomial, Term};
use crate::error::{Error, Result};
use crate::exterior::{binomial_signed, binomial_value, non_negative, scaled_binomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropId {
    /// Trace form, odd degree.
    P1i,
    /// Trace form, even degree.
    P1ii,
    /// Either parity; dispatches on n.
    P1,
    P2,
    P3,
    Corollary,
    SplitRemark,
    P4,
    P5,
    P6,
    P41,
    P73,
    P8,
    P9,
    P10,
    P11,
    S53Example,
    S53Remarks,
    Binomials,
}

impl PropId {
    pub const ALL: [PropId; 19] = [
        PropId::P1i,
        PropId::P1ii,
        PropId::P1,
        PropId::P2,
        PropId::P3,
        PropId::Corollary,
        PropId::SplitRemark,
        PropId::P4,
        PropId::P5,
        PropId::P6,
        PropId::P41,
        PropId::P73,
        PropId::P8,
        PropId::P9,
        PropId::P10,
        PropId::P11,
        PropId::S53Example,
        PropId::S53Remarks,
        PropId::Binomials,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PropId::P1i => "P1i",
            PropId::P1ii => "P1ii",
            PropId::P1 => "P1",
            PropId::P2 => "P2",
            PropId::P3 => "P3",
            PropId::Corollary => "Corollary",
            PropId::SplitRemark => "SplitRemark",
            PropId::P4 => "P4",
            PropId::P5 => "P5",
            PropId::P6 => "P6",
            PropId::P41 => "P41",
            PropId::P73 => "P73",
            PropId::P8 => "P8",
            PropId::P9 => "P9",
            PropId::P10 => "P10",
            PropId::P11 => "P11",
            PropId::S53Example => "S53Example",
            PropId::S53Remarks => "S53Remarks",
            PropId::Binomials => "Binomials",
        }
    }
}

impl fmt::Display for PropId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PropId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PropId::ALL
            .iter()
            .copied()
            .find(|p| p.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown proposition id {s:?}")))
    }
}

/// A predicted form, possibly with equivalent rewritings that must agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub prop: PropId,
    pub params: Vec<(String, String)>,
    pub form: FormDescriptor,
    pub equivalent: Vec<FormDescriptor>,
}

impl Prediction {
    fn new(prop: PropId, params: &[(&str, u64)], form: FormDescriptor) -> Self {
        Prediction {
            prop,
            params: params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            form,
            equivalent: Vec::new(),
        }
    }

    /// Total dimension the prediction must have, when the statement fixes it.
    pub fn expected_dim(&self) -> Option<BigUint> {
        self.form.dim()
    }
}

/// q_S = ⟨n⟩⟨1, a, b, (−1)^{n/2}ab⟩, each entry with the given multiplicity
/// and scaled by ⟨c⟩.
pub fn q_s_terms(n: u64, mult: &BigUint, c: Monomial) -> Vec<Term> {
    let ab = Monomial::A.times(Monomial::B).times(Monomial::sign_power(n / 2));
    [Monomial::ONE, Monomial::A, Monomial::B, ab]
        .into_iter()
        .map(|e| Term { mult: mult.clone(), entry: Monomial::N.times(e).times(c) })
        .collect()
}

/// T_S ≃ ⟨n⟩ ⊥ (n²−1)/2×H for odd n, ⟨n⟩⟨1,a,b,(−1)^{n/2}ab⟩ ⊥ (n²−4)/2×H for even n.
pub fn predict_trace_form(n: u64) -> Result<Prediction> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("degree must be at least 2, got {n}")));
    }
    let n2 = n * n;
    if n % 2 == 1 {
        let form = FormDescriptor::new(vec![Term::new(1u32, Monomial::N)], HypCount::Exact(((n2 - 1) / 2).into()));
        Ok(Prediction::new(PropId::P1i, &[("n", n)], form))
    } else {
        let form = FormDescriptor::new(
            q_s_terms(n, &BigUint::from(1u32), Monomial::ONE),
            HypCount::Exact(((n2 - 4) / 2).into()),
        );
        Ok(Prediction::new(PropId::P1ii, &[("n", n)], form))
    }
}

/// For odd n: T_S ≃ n²×⟨(−1)^{(n−1)/2}⟩, equivalently n×⟨1⟩ ⊥ (n²−n)/2×H.
pub fn predict_trace_form_odd_simplified(n: u64) -> Result<Prediction> {
    if n % 2 == 0 {
        return Err(Error::EvenInput(n));
    }
    if n == 1 {
        let one = FormDescriptor::new(vec![Term::new(1u32, Monomial::ONE)], HypCount::Exact(BigUint::from(0u32)));
        let mut p = Prediction::new(PropId::Corollary, &[("n", 1)], one.clone());
        p.equivalent.push(one);
        return Ok(p);
    }
    let n2 = n * n;
    let form = FormDescriptor::new(
        vec![Term::new(n2, Monomial::sign_power((n - 1) / 2))],
        HypCount::Exact(BigUint::from(0u32)),
    );
    let mut p = Prediction::new(PropId::Corollary, &[("n", n)], form);
    p.equivalent.push(FormDescriptor::new(
        vec![Term::new(n, Monomial::ONE)],
        HypCount::Exact(((n2 - n) / 2).into()),
    ));
    Ok(p)
}

/// n×⟨1⟩ ≃ ⟨(−1)^{(n−1)/2}⟩ ⊥ (n−1)/2×H for odd n.
pub fn predict_sum_of_ones(n: u64) -> Result<Prediction> {
    if n % 2 == 0 {
        return Err(Error::EvenInput(n));
    }
    let form = FormDescriptor::new(
        vec![Term::new(1u32, Monomial::sign_power((n - 1) / 2))],
        HypCount::Exact(((n - 1) / 2).into()),
    );
    let mut p = Prediction::new(PropId::P3, &[("n", n)], form);
    p.equivalent.push(FormDescriptor::new(vec![Term::new(n, Monomial::ONE)], HypCount::Exact(BigUint::from(0u32))));
    Ok(p)
}

/// T_{Mₙ} ≃ n×⟨1⟩ ⊥ (n²−n)/2×H.
pub fn predict_split_trace_form(n: u64) -> Prediction {
    let form = FormDescriptor::new(vec![Term::new(n, Monomial::ONE)], HypCount::Exact(((n * n - n) / 2).into()));
    Prediction::new(PropId::SplitRemark, &[("n", n)], form)
}

/// Λᵏ(h×H), the hyperbolic closed forms.
pub fn predict_hyperbolic_exterior(h: u64, k: u64) -> Result<Prediction> {
    let form = crate::exterior::hyperbolic_exterior_closed_form(h, k)?;
    let prop = if k % 2 == 1 { PropId::P8 } else { PropId::P9 };
    Ok(Prediction::new(prop, &[("h", h), ("k", k)], form))
}

/// The n ≡ 2 (mod 4), k even multiplicity |1 − 2k/n²|·C(n²/2, k/2), checked to
/// be an exact non-negative integer and to equal the difference
/// |C(m, k/2) − C(m, (k−4)/2)| with m = (n²−4)/2 that it abbreviates.
pub fn prop11_even_coefficient(n: u64, k: u64) -> Result<BigUint> {
    let n2 = n * n;
    if n % 2 != 0 || k % 2 != 0 || k > n2 {
        return Err(Error::InvalidInput(format!("needs even n and even k ≤ n², got n = {n}, k = {k}")));
    }
    let num = if 2 * k <= n2 { n2 as i64 - 2 * k as i64 } else { 2 * k as i64 - n2 as i64 };
    let exact = scaled_binomial(num, n2, n2 / 2, k / 2)?;
    let coeff = non_negative(&exact)
        .ok_or_else(|| Error::BadHypCount(format!("negative multiplicity {exact} at n = {n}, k = {k}")))?;
    if n >= 2 {
        let m = (n2 - 4) / 2;
        let hi = binomial_signed(m, (k / 2) as i64);
        let lo = binomial_signed(m, (k as i64 - 4) / 2);
        let diff = if hi >= lo { hi - lo } else { lo - hi };
        if diff != coeff {
            return Err(Error::PathDisagreement(format!(
                "n = {n}, k = {k}: rational form gives {coeff}, difference form gives {diff}"
            )));
        }
    }
    Ok(coeff)
}

/// Λᵏ T_S for 0 ≤ k ≤ n², with the Hyp count left open.
///
/// For odd n and odd k the entry carries the sign ⟨(−1)^{(n−1)/2}⟩ of the
/// one-dimensional summand of T_S; see [`predict_exterior_trace_form_as_printed`]
/// for the variant without it.
pub fn predict_exterior_trace_form(n: u64, k: u64) -> Result<Prediction> {
    exterior_prediction(n, k, true)
}

/// The odd-n, odd-k case with multiplicity C((n²−1)/2, (k−1)/2)×⟨(−1)^{(k−1)/2}⟩
/// exactly as usually stated, i.e. without the ⟨(−1)^{(n−1)/2}⟩ factor. It
/// differs from the true form whenever n ≡ 3 (mod 4) and −1 is not a square.
pub fn predict_exterior_trace_form_as_printed(n: u64, k: u64) -> Result<Prediction> {
    exterior_prediction(n, k, false)
}

fn exterior_prediction(n: u64, k: u64, corrected: bool) -> Result<Prediction> {
    if n == 0 {
        return Err(Error::InvalidInput(String::from("degree must be positive")));
    }
    let n2 = n * n;
    if k > n2 {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n² = {n2}")));
    }
    let (prop, form) = if n % 2 == 1 {
        let m = (n2 - 1) / 2;
        let form = if k % 2 == 1 {
            let j = (k - 1) / 2;
            let sign = if corrected { j + (n - 1) / 2 } else { j };
            FormDescriptor::multiple_plus_hyp(binomial_value(m, j), Monomial::sign_power(sign))
        } else {
            FormDescriptor::multiple_plus_hyp(binomial_value(m, k / 2), Monomial::sign_power(k / 2))
        };
        (PropId::P10, form)
    } else if k % 2 == 1 {
        let j = (k - 1) / 2;
        let mult = binomial_value((n2 - 2) / 2, j);
        let sign = Monomial::sign_power((n / 2) * j);
        (PropId::P11, FormDescriptor::new(q_s_terms(n, &mult, sign), HypCount::Fill))
    } else if n % 4 == 0 {
        (PropId::P11, FormDescriptor::multiple_plus_hyp(binomial_value(n2 / 2, k / 2), Monomial::ONE))
    } else {
        let coeff = prop11_even_coefficient(n, k)?;
        let sign = if 2 * k <= n2 { k / 2 } else { (k + 2) / 2 };
        (PropId::P11, FormDescriptor::multiple_plus_hyp(coeff, Monomial::sign_power(sign)))
    };
    let form = form.pruned();
    // Fill now so that a negative or odd remainder is caught at prediction time.
    form.hyp_count(Some(&binomial_value(n2, k)))?;
    Ok(Prediction::new(prop, &[("n", n), ("k", k)], form))
}
