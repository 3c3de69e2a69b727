use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// C(r, s) as an exact integer, 0 for s > r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigBinomial {
    pub r: u64,
    pub s: u64,
    pub value: BigUint,
}

pub fn binomial(r: u64, s: u64) -> BigBinomial {
    BigBinomial { r, s, value: binomial_value(r, s) }
}

pub fn binomial_value(r: u64, s: u64) -> BigUint {
    if s > r {
        return BigUint::zero();
    }
    let s = s.min(r - s);
    let mut v = BigUint::one();
    for i in 0..s {
        v *= r - i;
        v /= i + 1;
    }
    v
}

/// C(r, s) with C(r, s) = 0 for s < 0.
pub fn binomial_signed(r: u64, s: i64) -> BigUint {
    if s < 0 {
        BigUint::zero()
    } else {
        binomial_value(r, s as u64)
    }
}

/// (num/den)·C(r, s), required to be an integer.
pub fn scaled_binomial(num: i64, den: u64, r: u64, s: u64) -> Result<BigInt> {
    if den == 0 {
        return Err(Error::DivisionByZero);
    }
    let top = BigInt::from(num) * BigInt::from(binomial_value(r, s));
    let (q, rem) = top.div_rem(&BigInt::from(den));
    if !rem.is_zero() {
        return Err(Error::InvalidInput(format!("({num}/{den})·C({r},{s}) is not an integer")));
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityFailure {
    /// 1 to 5, in the order the identities are usually listed.
    pub identity: u8,
    pub r: u64,
    pub s: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialReport {
    pub r_max: u64,
    pub checked: u64,
    pub failures: Vec<IdentityFailure>,
}

impl BinomialReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn c(r: u64, s: i64) -> BigInt {
    BigInt::from(binomial_signed(r, s))
}

/// lhs == (num/den)·rhs_binom, with the right side an exact integer.
fn check_ratio(lhs: &BigInt, num: i64, den: u64, rhs_binom: &BigInt) -> core::result::Result<(), String> {
    let top = BigInt::from(num) * rhs_binom;
    let den = BigInt::from(den);
    if &den * lhs != top {
        return Err(format!("cross-multiplied sides differ: {den}·{lhs} ≠ {top}"));
    }
    let (q, rem) = top.div_rem(&den);
    if !rem.is_zero() {
        return Err(format!("rational factor leaves remainder {rem}"));
    }
    if &q != lhs {
        return Err(format!("quotient {q} ≠ {lhs}"));
    }
    Ok(())
}

/// Checks the five identities
///   C(r,s) + C(r,s−1) = C(r+1,s)
///   C(r,s) − C(r,s−1) = ((r+1−2s)/(r+1))·C(r+1,s)
///   C(r,s) + C(r,s−2) = C(r+2,s) − 2·C(r,s−1)
///   C(r,s) − C(r,s−2) = ((r+2−2s)/(r+2))·C(r+2,s)
///   C(r,s) = (r/s)·C(r−1,s−1)            (s ≥ 1)
/// for all 0 ≤ s ≤ r ≤ r_max.
pub fn binomial_identities_check(r_max: u64) -> BinomialReport {
    let mut failures = Vec::new();
    let mut checked = 0u64;
    for r in 0..=r_max {
        for s in 0..=r {
            let si = s as i64;
            let mut record = |identity: u8, outcome: core::result::Result<(), String>| {
                checked += 1;
                if let Err(detail) = outcome {
                    failures.push(IdentityFailure { identity, r, s, detail });
                }
            };
            let crs = c(r, si);

            let lhs = &crs + c(r, si - 1);
            let rhs = c(r + 1, si);
            record(1, if lhs == rhs { Ok(()) } else { Err(format!("{lhs} ≠ {rhs}")) });

            let lhs = &crs - c(r, si - 1);
            record(2, check_ratio(&lhs, r as i64 + 1 - 2 * si, r + 1, &c(r + 1, si)));

            let lhs = &crs + c(r, si - 2);
            let rhs = c(r + 2, si) - BigInt::from(2) * c(r, si - 1);
            record(3, if lhs == rhs { Ok(()) } else { Err(format!("{lhs} ≠ {rhs}")) });

            let lhs = &crs - c(r, si - 2);
            record(4, check_ratio(&lhs, r as i64 + 2 - 2 * si, r + 2, &c(r + 2, si)));

            if s >= 1 {
                record(5, check_ratio(&crs, r as i64, s, &c(r - 1, si - 1)));
            }
        }
    }
    BinomialReport { r_max, checked, failures }
}

/// Whether a signed exact value is a non-negative integer; used for
/// multiplicities derived through the rational-factor identities.
pub fn non_negative(v: &BigInt) -> Option<BigUint> {
    if v.is_negative() {
        None
    } else {
        v.to_biguint()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(rows: usize) -> Vec<Vec<BigUint>> {
        let mut t: Vec<Vec<BigUint>> = Vec::new();
        for r in 0..rows {
            let mut row = alloc::vec![BigUint::one(); r + 1];
            for s in 1..r {
                row[s] = &t[r - 1][s - 1] + &t[r - 1][s];
            }
            t.push(row);
        }
        t
    }

    #[test]
    fn multiplicative_formula_matches_pascal() {
        let t = pascal(120);
        for r in 0..120u64 {
            for s in 0..=r + 2 {
                let expect = if s <= r { t[r as usize][s as usize].clone() } else { BigUint::zero() };
                assert_eq!(binomial_value(r, s), expect, "C({r},{s})");
            }
        }
    }

    #[test]
    fn listed_examples() {
        assert_eq!(binomial(5, 2).value + binomial(5, 1).value, BigUint::from(15u32));
        assert_eq!(binomial(6, 2).value, BigUint::from(15u32));
        // (6 − 4)/6 · 15 = 5
        assert_eq!(scaled_binomial(2, 6, 6, 2).unwrap(), BigInt::from(5));
        assert_eq!(binomial(5, 2).value - binomial(5, 1).value, BigUint::from(5u32));
        // 15 = (6/2)·C(5,1)
        assert_eq!(scaled_binomial(6, 2, 5, 1).unwrap(), BigInt::from(15));
        assert!(scaled_binomial(1, 4, 5, 2).is_err());
        assert_eq!(binomial(3, 7).value, BigUint::zero());
    }

    #[test]
    fn identities_hold_to_r_100() {
        let report = binomial_identities_check(100);
        assert!(report.passed(), "{:?}", report.failures.first());
        // 5101 pairs, identity 5 skipped at s = 0
        assert_eq!(report.checked, 5 * 5151 - 101);
    }

    #[test]
    fn ratio_check_rejects_wrong_factor() {
        assert!(check_ratio(&BigInt::from(5), 3, 6, &BigInt::from(15)).is_err());
    }
}
