use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    predict_exterior_trace_form, predict_exterior_trace_form_as_printed, predict_hyperbolic_exterior,
    predict_split_trace_form, predict_sum_of_ones, predict_trace_form, predict_trace_form_odd_simplified,
    prop11_even_coefficient, q_s_terms, PropId,
};
use crate::arith;
use crate::descriptor::{FormDescriptor, HypCount, Monomial, Substitution};
use crate::error::{Error, Result};
use crate::exterior::{
    binomial_identities_check, binomial_value, exterior_class, exterior_class_diagonal, exterior_power_bruteforce,
    exterior_power_bruteforce_with_budget, exterior_power_diagonal, exterior_sum_expand, DEFAULT_BRUTE_BUDGET,
};
use crate::fields::{gauss_sum_prime, level, square_root_of_signed_n, Cyclotomic, Field, Level, PrimeField};
use crate::linalg;
use crate::quadform::{diagonal_entries, is_isometric, witt_decompose, DiagForm, IsometryClass, QuadForm};
use crate::symalg::{
    division_verdict_prop5, division_verdict_prop6, matrix_algebra_trace_form, quaternion_norm_form,
    SymbolAlgebra, VerdictKind,
};

/// Sweeps never use primes above this bound.
pub const MAX_PRIME_IN_SWEEP: u64 = 10_000;
/// Largest degree whose trace form is built directly.
pub const MAX_TRACE_FORM_DEGREE: u64 = 21;
/// Largest odd n for the Gauss-sum checks.
pub const MAX_GAUSS_SUM_DEGREE: u64 = 31;
/// Largest degree for exterior powers of the trace form (fast path).
pub const MAX_EXTERIOR_DEGREE: u64 = 12;
/// Largest degree for which exterior powers of the trace form are also
/// computed by brute force (subject to the size budget).
pub const MAX_BRUTE_DEGREE: u64 = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepParams {
    /// Degrees n; for P41/P73 the form dimensions, for P8/P9 the counts h.
    pub ns: Vec<u64>,
    /// Explicit primes; when empty each n gets `primes_per_n` primes p ≡ 1 (mod n).
    pub primes: Vec<u64>,
    pub primes_per_n: usize,
    /// Seeded random (a, b) pairs on top of the four square-class pairs.
    pub trials: usize,
    /// Exterior grades; empty means the proposition's default selection.
    pub ks: Vec<u64>,
    /// Exponents t selecting ω^t among primitive roots; those not coprime to n are skipped.
    pub omega_powers: Vec<u64>,
    pub brute_budget: u128,
    pub r_max: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub key: String,
    pub params: Vec<(String, String)>,
    pub pass: bool,
    /// Serialized counterexample for failures.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub prop: PropId,
    pub seed: u64,
    pub instances: Vec<Instance>,
    pub pass: usize,
    pub fail: usize,
    /// Filled in by callers that have a clock.
    pub elapsed_ms: Option<u64>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.fail == 0 && self.pass > 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Instance> {
        self.instances.iter().filter(|i| !i.pass)
    }
}

/// The `count` smallest primes p ≡ 1 (mod n) with n < p < 10⁴.
pub fn auto_primes(n: u64, count: usize) -> Vec<u64> {
    let step = if n % 2 == 0 { n } else { 2 * n };
    let mut out = Vec::new();
    let mut p = 1 + step;
    while out.len() < count && p < MAX_PRIME_IN_SWEEP {
        if p > n && arith::is_prime(p) {
            out.push(p);
        }
        p += step;
    }
    out
}

pub fn default_sweep(prop: PropId) -> SweepParams {
    let base = SweepParams {
        ns: Vec::new(),
        primes: Vec::new(),
        primes_per_n: 3,
        trials: 2,
        ks: Vec::new(),
        omega_powers: vec![1],
        brute_budget: DEFAULT_BRUTE_BUDGET,
        r_max: 100,
    };
    let odd = |lo: u64, hi: u64| (lo..=hi).filter(|n| n % 2 == 1).collect::<Vec<_>>();
    match prop {
        PropId::P1 | PropId::SplitRemark => {
            SweepParams { ns: (2..=6).collect(), trials: 20, omega_powers: vec![1, 2], ..base }
        }
        PropId::P1i => SweepParams { ns: vec![3, 5], trials: 20, omega_powers: vec![1, 2], ..base },
        PropId::P1ii => SweepParams { ns: vec![2, 4, 6], trials: 20, omega_powers: vec![1, 3], ..base },
        PropId::P2 => SweepParams { ns: odd(3, 23), ..base },
        PropId::P3 => SweepParams { ns: odd(3, 15), ..base },
        PropId::Corollary => SweepParams { ns: odd(3, 15), trials: 1, ..base },
        PropId::P4 => SweepParams { ns: vec![2, 4, 6, 10], ..base },
        PropId::P5 => SweepParams { ns: vec![2, 4, 6, 10], ..base },
        PropId::P6 => SweepParams { ns: vec![2, 4, 8], ..base },
        PropId::P41 => SweepParams { ns: (0..=6).collect(), primes: vec![5, 7, 13], ..base },
        PropId::P73 => SweepParams { ns: (0..=4).collect(), primes: vec![7, 13], ..base },
        PropId::P8 | PropId::P9 => SweepParams { ns: (1..=4).collect(), primes: vec![7, 13], ..base },
        PropId::P10 => SweepParams { ns: vec![3, 5], trials: 1, ..base },
        PropId::P11 => SweepParams { ns: vec![2, 4, 6, 8, 12], trials: 1, ..base },
        PropId::S53Example => SweepParams { ns: vec![4], trials: 1, ..base },
        PropId::S53Remarks => SweepParams { ns: vec![2, 4, 6, 8, 12], trials: 1, ..base },
        PropId::Binomials => SweepParams { ns: (2..=12).step_by(2).collect(), ..base },
    }
}

type Outcome = core::result::Result<(), String>;
type Job = Box<dyn Fn() -> Vec<Instance> + Send + Sync>;

struct Rec {
    key: String,
    params: Vec<(String, String)>,
}

impl Rec {
    fn new(prop: PropId, params: &[(&str, String)]) -> Self {
        let mut key = String::from(prop.as_str());
        for (k, v) in params {
            key.push('/');
            key.push_str(k);
            key.push('=');
            key.push_str(v);
        }
        Rec { key, params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect() }
    }

    fn with(mut self, k: &str, v: impl ToString) -> Self {
        self.params.push((k.to_string(), v.to_string()));
        self
    }

    fn finish(self, outcome: Result<Outcome>) -> Instance {
        let (pass, witness) = match outcome {
            Ok(Ok(())) => (true, None),
            Ok(Err(w)) => (false, Some(w)),
            Err(e) => (false, Some(format!("error: {e}"))),
        };
        Instance { key: self.key, params: self.params, pass, witness }
    }
}

fn expect(cond: bool, witness: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

fn all(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
    let failures: Vec<String> = outcomes.into_iter().filter_map(|o| o.err()).collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures.join("; "))
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn rng_for(seed: u64, prop: PropId, n: u64, p: u64) -> ChaCha8Rng {
    let tag = PropId::ALL.iter().position(|&q| q == prop).unwrap_or(0) as u64;
    ChaCha8Rng::seed_from_u64(splitmix(splitmix(splitmix(seed ^ tag) ^ n) ^ p))
}

/// The four square-class pairs, then `trials` random pairs.
fn ab_pairs(field: &PrimeField, trials: usize, rng: &mut ChaCha8Rng) -> Vec<(u64, u64)> {
    let ns = field.smallest_nonsquare();
    let mut v = vec![(1, 1), (1, ns), (ns, 1), (ns, ns)];
    for _ in 0..trials {
        v.push((rng.gen_range(1..field.p()), rng.gen_range(1..field.p())));
    }
    v
}

fn omega_powers(params: &SweepParams, n: u64) -> Vec<u64> {
    let mut ts: Vec<u64> = params.omega_powers.iter().map(|t| t % n.max(1)).filter(|&t| arith::gcd(t, n) == 1).collect();
    ts.sort_unstable();
    ts.dedup();
    if ts.is_empty() {
        ts.push(1);
    }
    ts
}

fn primes_for(params: &SweepParams, n: u64) -> Vec<u64> {
    if params.primes.is_empty() {
        auto_primes(n, params.primes_per_n)
    } else {
        params.primes.iter().copied().filter(|&p| n == 0 || (p - 1) % n == 0).collect()
    }
}

fn trace_form(p: u64, n: u64, a: u64, b: u64, t: u64) -> Result<QuadForm<PrimeField>> {
    let field = PrimeField::new(p, n)?;
    Ok(SymbolAlgebra::with_omega_power(field, n as usize, a, b, t)?.trace_form())
}

fn class_vs(found: &IsometryClass, expected: &IsometryClass, what: &str) -> Outcome {
    expect(found == expected, || format!("{what}: found {found}, expected {expected}"))
}

/// Checks the trace-form Gram entry by entry against
/// Trd(x^i y^j · x^k y^l) = n·ω^{−ij}·a^{[i>0]}·b^{[j>0]} when (k, l) ≡ (−i, −j)
/// and 0 otherwise, then confirms that the off-diagonal partners form an
/// orthogonal sum of hyperbolic planes.
pub fn exact_trace_gram_check<F: Field>(s: &SymbolAlgebra<F>) -> Result<Outcome> {
    let f = s.field();
    let n = s.degree();
    let d = s.dim();
    let gram = s.trace_form();
    let nn = f.from_i64(n as i64);
    let mut pairs = Vec::new();
    let mut self_paired = 0;
    for u in 0..d {
        let (i, j) = s.exponents(u);
        let partner = s.index((n - i) % n, (n - j) % n);
        let mut value = f.mul(&nn, &f.pow(s.omega(), -((i * j) as i64)).expect("unit"));
        if i > 0 {
            value = f.mul(&value, s.a());
        }
        if j > 0 {
            value = f.mul(&value, s.b());
        }
        for v in 0..d {
            let expected = if v == partner { value.clone() } else { f.zero() };
            if *gram.entry(u, v) != expected {
                return Ok(Err(format!(
                    "entry ({}, {}) is {:?}, expected {:?}",
                    s.monomial_label(u),
                    s.monomial_label(v),
                    gram.entry(u, v),
                    expected
                )));
            }
        }
        if partner == u {
            self_paired += 1;
        } else if partner > u {
            pairs.push((u, partner));
        }
    }
    let expected_self = if n % 2 == 0 { 4 } else { 1 };
    if self_paired != expected_self {
        return Ok(Err(format!("{self_paired} self-paired basis elements, expected {expected_self}")));
    }
    Ok(expect(gram.hyperbolic_certificate(&pairs)?, || String::from("pairing is not a hyperbolic certificate")))
}

fn check_budgets(prop: PropId, params: &SweepParams) -> Result<()> {
    for &p in &params.primes {
        if p > MAX_PRIME_IN_SWEEP {
            return Err(Error::BudgetExceeded { size: p as u128, budget: MAX_PRIME_IN_SWEEP as u128 });
        }
    }
    let cap = match prop {
        PropId::P41 | PropId::P73 => Some(6),
        PropId::P8 | PropId::P9 => Some(6),
        PropId::P2 => Some(MAX_GAUSS_SUM_DEGREE),
        PropId::P10 | PropId::P11 | PropId::S53Example | PropId::S53Remarks | PropId::Binomials => {
            Some(MAX_EXTERIOR_DEGREE)
        }
        _ => Some(MAX_TRACE_FORM_DEGREE),
    };
    if let Some(cap) = cap {
        if let Some(&n) = params.ns.iter().find(|&&n| n > cap) {
            return Err(Error::BudgetExceeded { size: n as u128, budget: cap as u128 });
        }
    }
    Ok(())
}

/// Runs the sweep for one proposition. Randomness is fixed by `seed`;
/// instances come back in generation order, so reports are reproducible.
pub fn verify(prop: PropId, params: &SweepParams, seed: u64) -> Result<VerifyReport> {
    check_budgets(prop, params)?;
    let jobs = match prop {
        PropId::P1 | PropId::P1i | PropId::P1ii => p1_jobs(prop, params, seed)?,
        PropId::P2 => p2_jobs(params)?,
        PropId::P3 => p3_jobs(params)?,
        PropId::Corollary => corollary_jobs(params, seed)?,
        PropId::SplitRemark => split_jobs(params, seed),
        PropId::P4 => p4_jobs(params, seed),
        PropId::P5 => p5_jobs(params, seed),
        PropId::P6 => p6_jobs(params, seed),
        PropId::P41 => p41_jobs(params),
        PropId::P73 => p73_jobs(params, seed),
        PropId::P8 | PropId::P9 => hyperbolic_jobs(prop, params),
        PropId::P10 | PropId::P11 => exterior_jobs(prop, params, seed)?,
        PropId::S53Example => example_jobs(params, seed),
        PropId::S53Remarks => remark_jobs(params, seed),
        PropId::Binomials => binomial_jobs(params),
    };
    let instances: Vec<Instance> = run_jobs(jobs).into_iter().flatten().collect();
    let pass = instances.iter().filter(|i| i.pass).count();
    let fail = instances.len() - pass;
    Ok(VerifyReport { prop, seed, instances, pass, fail, elapsed_ms: None })
}

#[cfg(feature = "parallel")]
fn run_jobs(jobs: Vec<Job>) -> Vec<Vec<Instance>> {
    use rayon::prelude::*;
    jobs.par_iter().map(|j| j()).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_jobs(jobs: Vec<Job>) -> Vec<Vec<Instance>> {
    jobs.iter().map(|j| j()).collect()
}

fn p1_jobs(prop: PropId, params: &SweepParams, seed: u64) -> Result<Vec<Job>> {
    let mut jobs: Vec<Job> = Vec::new();
    for &n in &params.ns {
        let parity_ok = match prop {
            PropId::P1i => n % 2 == 1,
            PropId::P1ii => n % 2 == 0,
            _ => true,
        };
        if !parity_ok || n < 2 {
            return Err(Error::InvalidInput(format!("{prop} does not apply to n = {n}")));
        }
        // Exact Gram over Q(ζₙ) from the explicit pairing.
        jobs.push(Box::new(move || {
            let mut out = Vec::new();
            for (a, b) in [(1i64, 1i64), (2, 3), (-5, 7)] {
                let rec = Rec::new(prop, &[("n", n.to_string()), ("field", String::from("cyclo")), ("a", a.to_string()), ("b", b.to_string())]);
                let outcome = (|| {
                    let q = Cyclotomic::new(n)?;
                    let s = SymbolAlgebra::with_default_omega(q.clone(), n as usize, q.from_i64(a), q.from_i64(b))?;
                    exact_trace_gram_check(&s)
                })();
                out.push(rec.finish(outcome));
            }
            out
        }));
        let pred = predict_trace_form(n)?;
        for p in primes_for(params, n) {
            let pred = pred.clone();
            let ts = omega_powers(params, n);
            let trials = params.trials;
            jobs.push(Box::new(move || {
                let mut out = Vec::new();
                let field = match PrimeField::new(p, n) {
                    Ok(f) => f,
                    Err(e) => return vec![Rec::new(prop, &[("n", n.to_string()), ("p", p.to_string())]).finish(Err(e))],
                };
                let split = matrix_algebra_trace_form(&field, n as usize).map(|m| IsometryClass::of_form(&m));
                let mut rng = rng_for(seed, prop, n, p);
                for (a, b) in ab_pairs(&field, trials, &mut rng) {
                    for &t in &ts {
                        let rec = Rec::new(
                            prop,
                            &[("n", n.to_string()), ("p", p.to_string()), ("a", a.to_string()), ("b", b.to_string()), ("t", t.to_string())],
                        );
                        let outcome = (|| {
                            let found = IsometryClass::of_form(&trace_form(p, n, a, b, t)?);
                            let expected = pred.form.class_over(&field, Substitution { n, a, b }, None)?;
                            let split = split.clone()?;
                            Ok(all([class_vs(&found, &expected, "prediction"), class_vs(&found, &split, "split trace form")]))
                        })();
                        out.push(rec.finish(outcome));
                    }
                }
                out
            }));
        }
    }
    Ok(jobs)
}

fn p2_jobs(params: &SweepParams) -> Result<Vec<Job>> {
    let mut jobs: Vec<Job> = Vec::new();
    for &n in &params.ns {
        if n % 2 == 0 {
            return Err(Error::EvenInput(n));
        }
        let primes = primes_for(params, n);
        jobs.push(Box::new(move || {
            let mut out = Vec::new();
            let signed = if (n - 1) / 2 % 2 == 1 { -(n as i64) } else { n as i64 };
            let rec = Rec::new(PropId::P2, &[("n", n.to_string()), ("field", String::from("cyclo"))]);
            let outcome = (|| {
                let q = Cyclotomic::new(n)?;
                let t = square_root_of_signed_n(&q, n)?;
                let mut checks = vec![expect(q.mul(&t, &t) == q.from_i64(signed), || {
                    format!("product of Gauss sums squares to {:?}", q.mul(&t, &t))
                })];
                if arith::is_prime(n) {
                    let tau = gauss_sum_prime(&q, n)?;
                    checks.push(expect(q.mul(&tau, &tau) == q.from_i64(signed), || String::from("τ_p² ≠ p*")));
                }
                Ok(all(checks))
            })();
            out.push(rec.with("signed_n", signed).finish(outcome));
            for &p in &primes {
                let rec = Rec::new(PropId::P2, &[("n", n.to_string()), ("p", p.to_string())]);
                let outcome = (|| {
                    let f = PrimeField::new(p, n)?;
                    let t = square_root_of_signed_n(&f, n)?;
                    let target = f.from_i64(signed);
                    let mut checks = vec![
                        expect(f.mul(&t, &t) == target, || format!("t² = {} ≠ {target}", f.mul(&t, &t))),
                        // ⟨n⟩ ≃ ⟨(−1)^{(n−1)/2}⟩
                        expect(f.is_square(&f.mul(&f.from_i64(n as i64), &f.from_i64(signed / n as i64))), || {
                            String::from("⟨n⟩ and ⟨±1⟩ differ")
                        }),
                    ];
                    if arith::is_prime(n) {
                        let tau = gauss_sum_prime(&f, n)?;
                        checks.push(expect(f.mul(&tau, &tau) == target, || String::from("τ_p² ≠ p*")));
                    }
                    Ok(all(checks))
                })();
                out.push(rec.finish(outcome));
            }
            out
        }));
    }
    Ok(jobs)
}

/// Some prime divisor is ≡ 3 or 5 (mod 8).
fn has_divisor_3_5_mod_8(n: u64) -> Option<bool> {
    Some(arith::factorize(n)?.iter().any(|(p, _)| matches!(p % 8, 3 | 5)))
}

fn p3_jobs(params: &SweepParams) -> Result<Vec<Job>> {
    let mut jobs: Vec<Job> = Vec::new();
    for &n in &params.ns {
        let pred = predict_sum_of_ones(n)?;
        let primes = primes_for(params, n);
        jobs.push(Box::new(move || {
            let mut out = Vec::new();
            // The number theory the level argument relies on, and the level of Q(ζₙ).
            let rec = Rec::new(PropId::P3, &[("n", n.to_string()), ("field", String::from("cyclo"))]);
            let outcome = (|| {
                let q = Cyclotomic::new(n)?;
                let lv = level(&q);
                let divisor = has_divisor_3_5_mod_8(n).ok_or(Error::FactorizationFailed(n))?;
                let bounded = match lv {
                    Level::Computed(s) | Level::RuleDerived(s) | Level::AtMost(s) => s <= 4,
                    Level::Infinite => false,
                };
                Ok(all([
                    expect(!matches!(n % 8, 3 | 5) || divisor, || format!("n = {n} has no prime divisor ≡ 3, 5 mod 8")),
                    expect(!divisor || lv == Level::RuleDerived(2), || format!("level {lv:?}, expected 2")),
                    expect(bounded, || format!("level {lv:?} exceeds 4")),
                ]))
            })();
            out.push(rec.finish(outcome));
            for &p in &primes {
                let rec = Rec::new(PropId::P3, &[("n", n.to_string()), ("p", p.to_string())]);
                let outcome = (|| {
                    let f = PrimeField::new(p, n)?;
                    let s = Substitution { n, a: 1, b: 1 };
                    let rhs = pred.form.class_over(&f, s, None)?;
                    let lhs = pred.equivalent[0].class_over(&f, s, None)?;
                    // Also through explicit forms and both Witt paths.
                    let lhs_form = pred.equivalent[0].to_diag(&f, s, None, 64)?.to_quadform();
                    let rhs_form = pred.form.to_diag(&f, s, None, 64)?.to_quadform();
                    let iso = is_isometric(&lhs_form, &rhs_form)?;
                    let lv = f.level();
                    Ok(all([
                        class_vs(&lhs, &rhs, "n×⟨1⟩"),
                        expect(iso, || String::from("explicit forms are not isometric")),
                        expect(lv <= 2, || format!("level {lv}")),
                    ]))
                })();
                out.push(rec.finish(outcome));
            }
            out
        }));
    }
    Ok(jobs)
}

fn corollary_jobs(params: &SweepParams, seed: u64) -> Result<Vec<Job>> {
    let mut jobs: Vec<Job> = Vec::new();
    for &n in &params.ns {
        let pred = predict_trace_form_odd_simplified(n)?;
        for p in primes_for(params, n) {
            let pred = pred.clone();
            let trials = params.trials;
            jobs.push(Box::new(move || {
                let mut out = Vec::new();
                let Ok(field) = PrimeField::new(p, n) else {
                    return vec![Rec::new(PropId::Corollary, &[("n", n.to_string()), ("p", p.to_string())])
                        .finish(Err(Error::NoRootOfUnity { order: n }))];
                };
                let mut rng = rng_for(seed, PropId::Corollary, n, p);
                for (a, b) in ab_pairs(&field, trials, &mut rng) {
                    let rec = Rec::new(
                        PropId::Corollary,
                        &[("n", n.to_string()), ("p", p.to_string()), ("a", a.to_string()), ("b", b.to_string())],
                    );
                    let outcome = (|| {
                        let found = IsometryClass::of_form(&trace_form(p, n, a, b, 1)?);
                        let s = Substitution { n, a, b };
                        Ok(all([
                            class_vs(&found, &pred.form.class_over(&field, s, None)?, "n²×⟨±1⟩"),
                            class_vs(&found, &pred.equivalent[0].class_over(&field, s, None)?, "n×⟨1⟩ ⊥ Hyp"),
                        ]))
                    })();
                    out.push(rec.finish(outcome));
                }
                out
            }));
        }
    }
    Ok(jobs)
}

fn split_jobs(params: &SweepParams, seed: u64) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for &n in &params.ns {
        for p in primes_for(params, n) {
            let trials = params.trials;
            jobs.push(Box::new(move || {
                let mut out = Vec::new();
                let rec = Rec::new(PropId::SplitRemark, &[("n", n.to_string()), ("p", p.to_string())]);
                let outcome = (|| {
                    let field = PrimeField::new(p, n)?;
                    let m = matrix_algebra_trace_form(&field, n as usize)?;
                    let nn = n as usize;
                    // E_ii are orthogonal with value 1; (E_ij, E_ji) are hyperbolic pairs.
                    let mut pairs = Vec::new();
                    let mut diag_ok = true;
                    for i in 0..nn {
                        diag_ok &= *m.entry(i * nn + i, i * nn + i) == 1;
                        for j in i + 1..nn {
                            pairs.push((i * nn + j, j * nn + i));
                        }
                    }
                    let cert = m.hyperbolic_certificate(&pairs)?;
                    let found = IsometryClass::of_form(&m);
                    let expected = predict_split_trace_form(n).form.class_over(&field, Substitution { n, a: 1, b: 1 }, None)?;
                    let mut checks = vec![
                        expect(diag_ok && cert, || String::from("matrix-unit Gram has the wrong shape")),
                        class_vs(&found, &expected, "n×⟨1⟩ ⊥ (n²−n)/2×H"),
                    ];
                    // Every central simple algebra over a finite field is split.
                    let mut rng = rng_for(seed, PropId::SplitRemark, n, p);
                    for (a, b) in ab_pairs(&field, trials, &mut rng) {
                        let t = IsometryClass::of_form(&trace_form(p, n, a, b, 1)?);
                        checks.push(class_vs(&t, &found, "symbol algebra vs matrix algebra"));
                    }
                    Ok(all(checks))
                })();
                out.push(rec.finish(outcome));
                out
            }));
        }
    }
    jobs
}

fn relations_outcome<F: Field>(s: &SymbolAlgebra<F>) -> Result<Outcome> {
    let n = s.degree();
    let f = s.field();
    let rel = s.half_power_relations()?;
    let minus_one = f.from_i64(-1);
    if n % 4 == 2 {
        let sub = s.quaternion_subalgebra()?;
        Ok(all([
            expect(rel.holds(), || String::from("u² = a, v² = b, vu = −uv fails")),
            expect(rel.commutation_sign == minus_one, || format!("sign {:?}", rel.commutation_sign)),
            expect(sub.holds(), || String::from("quaternion subalgebra relations fail")),
        ]))
    } else {
        // n ≡ 0 (mod 4): x^{n/2} and y^{n/2} commute, so the construction must fail.
        let sub = s.quaternion_subalgebra();
        Ok(all([
            expect(rel.u_squared_is_a && rel.v_squared_is_b, || String::from("u² = a or v² = b fails")),
            expect(!rel.anticommute && f.is_one(&rel.commutation_sign), || {
                format!("expected commuting generators, sign {:?}", rel.commutation_sign)
            }),
            expect(matches!(sub, Err(Error::WrongDegreeMod4(_))), || String::from("quaternion subalgebra accepted")),
        ]))
    }
}

fn p4_jobs(params: &SweepParams, seed: u64) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for &n in &params.ns {
        let primes = primes_for(params, n);
        let trials = params.trials;
        jobs.push(Box::new(move || {
            let mut out = Vec::new();
            for (a, b) in [(2i64, 3i64), (-5, 7)] {
                let rec = Rec::new(PropId::P4, &[("n", n.to_string()), ("field", String::from("cyclo")), ("a", a.to_string()), ("b", b.to_string())]);
                let outcome = (|| {
                    if n % 2 == 1 {
                        return Err(Error::InvalidInput(format!("n = {n} is odd")));
                    }
                    let q = Cyclotomic::new(n)?;
                    let s = SymbolAlgebra::with_default_omega(q.clone(), n as usize, q.from_i64(a), q.from_i64(b))?;
                    relations_outcome(&s)
                })();
                out.push(rec.finish(outcome));
            }
            for &p in &primes {
                let Ok(field) = PrimeField::new(p, n) else { continue };
                let mut rng = rng_for(seed, PropId::P4, n, p);
                for (a, b) in ab_pairs(&field, trials, &mut rng) {
                    let rec = Rec::new(
                        PropId::P4,
                        &[("n", n.to_string()), ("p", p.to_string()), ("a", a.to_string()), ("b", b.to_string())],
                    );
                    let outcome = SymbolAlgebra::with_default_omega(field.clone(), n as usize, a, b)
                        .and_then(|s| relations_outcome(&s));
                    out.push(rec.finish(outcome));
                }
            }
            out
        }));
    }
    jobs
}

fn verdict_table_p5() -> Vec<Instance> {
    // (n, p, form, expected verdict)
    let cases: [(usize, u64, bool, VerdictKind); 4] = [
        (6, 13, true, VerdictKind::NotDivision),
        (6, 13, false, VerdictKind::Inconclusive),
        (4, 13, true, VerdictKind::Inconclusive),
        (2, 7, false, VerdictKind::Inconclusive),
    ];
    cases
        .iter()
        .map(|&(n, p, hyperbolic, want)| {
            let rec = Rec::new(
                PropId::P5,
                &[("table_n", n.to_string()), ("p", p.to_string()), ("hyperbolic_input", hyperbolic.to_string())],
            );
            let outcome = (|| {
                let f = PrimeField::new(p, 1)?;
                let h = n * n / 2;
                let form = if hyperbolic {
                    QuadForm::hyperbolic(f.clone(), h)
                } else {
                    QuadForm::hyperbolic(f.clone(), h - 1).orth_sum(&QuadForm::diag(f.clone(), &[1, p - f.smallest_nonsquare()])?)?
                };
                let v = division_verdict_prop5(n, &form)?;
                Ok(expect(v.kind == want, || format!("verdict {}, expected {}", v.kind.as_str(), want.as_str())))
            })();
            rec.finish(outcome)
        })
        .collect()
}

fn p5_jobs(params: &SweepParams, seed: u64) -> Vec<Job> {
    let mut jobs: Vec<Job> = vec![Box::new(verdict_table_p5)];
    for &n in &params.ns {
        for p in primes_for(params, n) {
            let trials = params.trials;
            jobs.push(Box::new(move || {
                let mut out = Vec::new();
                let Ok(field) = PrimeField::new(p, n) else { return out };
                let mut rng = rng_for(seed, PropId::P5, n, p);
                for (a, b) in ab_pairs(&field, trials, &mut rng) {
                    let rec = Rec::new(
                        PropId::P5,
                        &[("n", n.to_string()), ("p", p.to_string()), ("a", a.to_string()), ("b", b.to_string())],
                    );
                    let outcome = (|| {
                        let t = trace_form(p, n, a, b, 1)?;
                        let v = division_verdict_prop5(n as usize, &t)?;
                        if v.kind != VerdictKind::NotDivision {
                            return Ok(Ok(()));
                        }
                        // The proof's chain: −1 is a square and ⟨1, −a, −b, ab⟩ is hyperbolic.
                        let minus_one = v.facts.iter().any(|f| f.name == "minus_one_is_square" && f.holds);
                        let norm = witt_decompose(&quaternion_norm_form(&field, &a, &b)?)?;
                        Ok(all([
                            expect(minus_one, || String::from("T_S hyperbolic but −1 is not a square")),
                            expect(norm.is_hyperbolic(), || String::from("norm form of (a, b) is not hyperbolic")),
                        ]))
                    })();
                    out.push(rec.finish(outcome));
                }
                out
            }));
        }
    }
    jobs
}

fn verdict_table_p6() -> Vec<Instance> {
    let mut out = Vec::new();
    let mut row = |label: &str, outcome: Result<Outcome>| {
        out.push(Rec::new(PropId::P6, &[("table", String::from(label))]).finish(outcome));
    };
    row("not_power_of_two", (|| {
        let f = PrimeField::new(13, 1)?;
        let r = division_verdict_prop6(6, &QuadForm::hyperbolic(f, 18));
        Ok(expect(matches!(r, Err(Error::HypothesisViolated(_))), || format!("{r:?}")))
    })());
    row("minus_one_nonsquare", (|| {
        let f = PrimeField::new(7, 1)?;
        let r = division_verdict_prop6(2, &QuadForm::hyperbolic(f, 2));
        Ok(expect(matches!(r, Err(Error::HypothesisViolated(_))), || format!("{r:?}")))
    })());
    row("hyperbolic_input", (|| {
        let f = PrimeField::new(13, 1)?;
        let v = division_verdict_prop6(4, &QuadForm::hyperbolic(f, 8))?;
        Ok(expect(v.kind == VerdictKind::Inconclusive, || v.kind.as_str().to_string()))
    })());
    row("anisotropic_input", (|| {
        let f = PrimeField::new(13, 1)?;
        let ns = f.smallest_nonsquare();
        let form = QuadForm::hyperbolic(f.clone(), 1).orth_sum(&QuadForm::diag(f, &[1, ns])?)?;
        let v = division_verdict_prop6(2, &form)?;
        Ok(expect(v.kind == VerdictKind::Division, || v.kind.as_str().to_string()))
    })());
    out
}

fn p6_jobs(params: &SweepParams, seed: u64) -> Vec<Job> {
    let mut jobs: Vec<Job> = vec![Box::new(verdict_table_p6)];
    for &n in &params.ns {
        let primes: Vec<u64> = if params.primes.is_empty() {
            // −1 must be a square as well
            auto_primes(4 * n / arith::gcd(4, n), params.primes_per_n)
        } else {
            primes_for(params, n)
        };
        for p in primes {
            let trials = params.trials;
            jobs.push(Box::new(move || {
                let mut out = Vec::new();
                let Ok(field) = PrimeField::new(p, n) else { return out };
                let mut rng = rng_for(seed, PropId::P6, n, p);
                for (a, b) in ab_pairs(&field, trials, &mut rng) {
                    let rec = Rec::new(
                        PropId::P6,
                        &[("n", n.to_string()), ("p", p.to_string()), ("a", a.to_string()), ("b", b.to_string())],
                    );
                    let outcome = (|| {
                        let t = trace_form(p, n, a, b, 1)?;
                        let v = division_verdict_prop6(n as usize, &t)?;
                        // Finite fields have no noncommutative division algebras.
                        Ok(expect(v.kind != VerdictKind::Division, || String::from("Division verdict over a finite field")))
                    })();
                    out.push(rec.finish(outcome));
                }
                out
            }));
        }
    }
    jobs
}

fn p41_jobs(params: &SweepParams) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for &p in &params.primes {
        for &dim in &params.ns {
            jobs.push(Box::new(move || {
                let mut out = Vec::new();
                let Ok(field) = PrimeField::new(p, 1) else { return out };
                let ns = field.smallest_nonsquare();
                for mask in 0u32..(1 << dim) {
                    let entries: Vec<u64> = (0..dim).map(|i| if mask >> i & 1 == 1 { ns } else { 1 }).collect();
                    let rec = Rec::new(PropId::P41, &[("p", p.to_string()), ("dim", dim.to_string()), ("mask", format!("{mask:b}"))]);
                    let outcome = (|| {
                        let f = QuadForm::diag(field.clone(), &entries)?;
                        let d = diagonal_entries(&f);
                        let mut checks = Vec::new();
                        for k in 0..=dim as usize + 1 {
                            let brute = exterior_power_bruteforce(&f, k)?;
                            let fast = exterior_power_diagonal(&d, k)?;
                            checks.push(expect(
                                brute.dim() == fast.dim() && is_isometric(&brute, &fast.to_quadform())?,
                                || format!("k = {k}: brute {} vs diagonal {}", IsometryClass::of_form(&brute), IsometryClass::of_diag(&fast)),
                            ));
                        }
                        Ok(all(checks))
                    })();
                    out.push(rec.finish(outcome));
                }
                out
            }));
        }
    }
    jobs
}

fn random_regular_form(field: &PrimeField, d: usize, rng: &mut ChaCha8Rng) -> QuadForm<PrimeField> {
    loop {
        let mut g = vec![0u64; d * d];
        for i in 0..d {
            for j in i..d {
                let v = rng.gen_range(0..field.p());
                g[i * d + j] = v;
                g[j * d + i] = v;
            }
        }
        let form = QuadForm::new(field.clone(), d, g).expect("symmetric by construction");
        if linalg::rank(field, &form.matrix()) == d {
            return form;
        }
    }
}

fn p73_jobs(params: &SweepParams, seed: u64) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for &p in &params.primes {
        for &d1 in &params.ns {
            for &d2 in &params.ns {
                let trials = params.trials.max(1);
                jobs.push(Box::new(move || {
                    let mut out = Vec::new();
                    let Ok(field) = PrimeField::new(p, 1) else { return out };
                    let mut rng = rng_for(seed, PropId::P73, d1 * 16 + d2, p);
                    for trial in 0..trials {
                        let phi = random_regular_form(&field, d1 as usize, &mut rng);
                        let psi = random_regular_form(&field, d2 as usize, &mut rng);
                        let rec = Rec::new(
                            PropId::P73,
                            &[("p", p.to_string()), ("dim_phi", d1.to_string()), ("dim_psi", d2.to_string()), ("trial", trial.to_string())],
                        );
                        let outcome = (|| {
                            let sum = phi.orth_sum(&psi)?;
                            let mut checks = Vec::new();
                            for k in 0..=(d1 + d2 + 1) as usize {
                                let lhs = exterior_power_bruteforce(&sum, k)?;
                                let rhs = exterior_sum_expand(&phi, &psi, k)?;
                                checks.push(expect(lhs.dim() == rhs.dim() && is_isometric(&lhs, &rhs)?, || {
                                    format!("k = {k}: {} vs {}", IsometryClass::of_form(&lhs), IsometryClass::of_form(&rhs))
                                }));
                            }
                            Ok(all(checks))
                        })();
                        out.push(rec.finish(outcome));
                    }
                    out
                }));
            }
        }
    }
    jobs
}

fn hyperbolic_jobs(prop: PropId, params: &SweepParams) -> Vec<Job> {
    let parity = if prop == PropId::P8 { 1 } else { 0 };
    let mut jobs: Vec<Job> = Vec::new();
    for &p in &params.primes {
        for &h in &params.ns {
            let budget = params.brute_budget;
            jobs.push(Box::new(move || {
                let mut out = Vec::new();
                let Ok(field) = PrimeField::new(p, 1) else { return out };
                // h×H as an orthogonal sum of [[0,1],[1,0]] blocks
                let plane = QuadForm::hyperbolic_pair(field.clone(), 1);
                let mut form = QuadForm::zero_space(field.clone());
                for _ in 0..h {
                    form = form.orth_sum(&plane).expect("same field");
                }
                for k in (0..=2 * h).filter(|k| k % 2 == parity) {
                    let mut rec = Rec::new(prop, &[("p", p.to_string()), ("h", h.to_string()), ("k", k.to_string())]);
                    let outcome = (|| {
                        let pred = predict_hyperbolic_exterior(h, k)?;
                        let expected = pred.form.class_over(&field, Substitution { n: 1, a: 1, b: 1 }, None)?;
                        let fast = exterior_class(&form, k as usize)?;
                        let mut checks = vec![class_vs(&fast, &expected, "diagonal path")];
                        if binomial_value(2 * h, k) <= BigUint::from(budget) {
                            let brute = IsometryClass::of_form(&exterior_power_bruteforce_with_budget(&form, k as usize, budget)?);
                            checks.push(class_vs(&brute, &expected, "brute force"));
                        }
                        if h == 4 && k == 2 {
                            // Λ²(4×H) = 14×H when −1 is a square.
                            checks.push(expect(p % 4 != 1 || fast.is_hyperbolic(), || format!("Λ²(4×H) is {fast}")));
                        }
                        Ok(all(checks))
                    })();
                    if h == 4 && k == 2 {
                        rec = rec.with("remark", "14×H when −1 is a square");
                    }
                    out.push(rec.finish(outcome));
                }
                out
            }));
        }
    }
    jobs
}

/// Grades checked for Λᵏ T_S: all k for n ≤ 4, otherwise
/// {1, 2, 3, n, n²/2, n²} plus {2p, 4p, 8p} for odd primes p | n when 4 | n.
fn default_grades(n: u64) -> Vec<u64> {
    let n2 = n * n;
    if n <= 5 {
        return (0..=n2).collect();
    }
    let mut ks = vec![1, 2, 3, n, n2 / 2, n2];
    if n % 4 == 0 {
        ks.extend([2, 4, 8]);
        for (p, _) in arith::factorize(n).unwrap_or_default() {
            if p % 2 == 1 {
                ks.extend([2 * p, 4 * p, 8 * p]);
            }
        }
    }
    ks.retain(|&k| k <= n2);
    ks.sort_unstable();
    ks.dedup();
    ks
}

struct TraceSetup {
    field: PrimeField,
    form: QuadForm<PrimeField>,
    diag: DiagForm<PrimeField>,
}

fn trace_setup(p: u64, n: u64, a: u64, b: u64, t: u64) -> Result<TraceSetup> {
    let form = trace_form(p, n, a, b, t)?;
    let diag = diagonal_entries(&form);
    Ok(TraceSetup { field: form.field().clone(), form, diag })
}

/// Class of Λᵏ T_S by the diagonal path, cross-checked by brute force within budget.
fn exterior_trace_class(setup: &TraceSetup, n: u64, k: u64, budget: u128) -> Result<core::result::Result<IsometryClass, String>> {
    let fast = exterior_class_diagonal(&setup.diag, k as usize)?;
    if n <= MAX_BRUTE_DEGREE && binomial_value(n * n, k) <= BigUint::from(budget) {
        let brute = exterior_power_bruteforce_with_budget(&setup.form, k as usize, budget)?.into_diagonal();
        let brute = IsometryClass::of_diag(&brute);
        if brute != fast {
            return Ok(Err(format!("brute force {brute} vs diagonal path {fast}")));
        }
    }
    Ok(Ok(fast))
}

fn exterior_jobs(prop: PropId, params: &SweepParams, seed: u64) -> Result<Vec<Job>> {
    let mut jobs: Vec<Job> = Vec::new();
    for &n in &params.ns {
        let parity_ok = if prop == PropId::P10 { n % 2 == 1 } else { n % 2 == 0 && n >= 2 };
        if !parity_ok {
            return Err(Error::InvalidInput(format!("{prop} does not apply to n = {n}")));
        }
        let ks: Vec<u64> = if params.ks.is_empty() { default_grades(n) } else { params.ks.clone() };
        if let Some(&k) = ks.iter().find(|&&k| k > n * n) {
            return Err(Error::OutOfRange(format!("k = {k} exceeds n² = {}", n * n)));
        }
        let ts = omega_powers(params, n);
        for p in primes_for(params, n) {
            let ks = ks.clone();
            let ts = ts.clone();
            let trials = params.trials;
            let budget = params.brute_budget;
            jobs.push(Box::new(move || {
                let mut out = Vec::new();
                let Ok(field) = PrimeField::new(p, n) else { return out };
                let mut rng = rng_for(seed, prop, n, p);
                for (a, b) in ab_pairs(&field, trials, &mut rng) {
                    for &t in &ts {
                        let setup = trace_setup(p, n, a, b, t);
                        for &k in &ks {
                            let mut rec = Rec::new(
                                prop,
                                &[
                                    ("n", n.to_string()),
                                    ("k", k.to_string()),
                                    ("p", p.to_string()),
                                    ("a", a.to_string()),
                                    ("b", b.to_string()),
                                    ("t", t.to_string()),
                                ],
                            );
                            let mut as_printed = None;
                            let outcome = (|| {
                                let setup = setup.as_ref().map_err(Clone::clone)?;
                                let found = match exterior_trace_class(setup, n, k, budget)? {
                                    Ok(c) => c,
                                    Err(w) => return Ok(Err(w)),
                                };
                                let total = binomial_value(n * n, k);
                                let s = Substitution { n, a, b };
                                let pred = predict_exterior_trace_form(n, k)?;
                                let expected = pred.form.class_over(&setup.field, s, Some(&total))?;
                                if prop == PropId::P10 && k % 2 == 1 {
                                    let printed = predict_exterior_trace_form_as_printed(n, k)?;
                                    let c = printed.form.class_over(&setup.field, s, Some(&total))?;
                                    as_printed = Some(if c == found { "agrees" } else { "differs" });
                                }
                                Ok(class_vs(&found, &expected, &format!("{} resolved", pred.form)))
                            })();
                            if let Some(v) = as_printed {
                                rec = rec.with("as_printed", v);
                            }
                            out.push(rec.finish(outcome));
                        }
                    }
                }
                out
            }));
        }
    }
    Ok(jobs)
}

fn example_jobs(params: &SweepParams, seed: u64) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    let n = 4u64;
    for p in primes_for(params, n) {
        let trials = params.trials;
        let budget = params.brute_budget;
        jobs.push(Box::new(move || {
            let mut out = Vec::new();
            let Ok(field) = PrimeField::new(p, n) else { return out };
            let mut rng = rng_for(seed, PropId::S53Example, n, p);
            for (a, b) in ab_pairs(&field, trials, &mut rng) {
                let setup = trace_setup(p, n, a, b, 1);
                for k in 1..=15u64 {
                    let rec = Rec::new(
                        PropId::S53Example,
                        &[("n", n.to_string()), ("k", k.to_string()), ("p", p.to_string()), ("a", a.to_string()), ("b", b.to_string())],
                    );
                    let outcome = (|| {
                        let setup = setup.as_ref().map_err(Clone::clone)?;
                        let found = match exterior_trace_class(setup, n, k, budget)? {
                            Ok(c) => c,
                            Err(w) => return Ok(Err(w)),
                        };
                        if k % 2 == 1 {
                            // q_S ⊥ Hyp
                            let q = FormDescriptor::new(q_s_terms(n, &BigUint::from(1u32), Monomial::ONE), HypCount::Fill);
                            let expected = q.class_over(&setup.field, Substitution { n, a, b }, Some(&binomial_value(16, k)))?;
                            Ok(class_vs(&found, &expected, "q_S ⊥ Hyp"))
                        } else {
                            Ok(expect(found.is_hyperbolic(), || format!("not hyperbolic: {found}")))
                        }
                    })();
                    out.push(rec.finish(outcome));
                }
            }
            out
        }));
    }
    jobs
}

fn remark_jobs(params: &SweepParams, seed: u64) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for &n in &params.ns {
        if n % 2 == 1 {
            continue;
        }
        for p in primes_for(params, n) {
            let trials = params.trials;
            let budget = params.brute_budget;
            jobs.push(Box::new(move || {
                let mut out = Vec::new();
                let Ok(field) = PrimeField::new(p, n) else { return out };
                let mut rng = rng_for(seed, PropId::S53Remarks, n, p);
                let n2 = n * n;
                // (k, claim)
                let mut claims: Vec<(u64, &'static str)> = vec![(n, "hyperbolic"), (n2 / 2, "hyperbolic"), (n2, "anisotropic")];
                if n % 4 == 0 {
                    for (q, _) in arith::factorize(n).unwrap_or_default() {
                        if q % 2 == 1 {
                            for k in [2, 4, 8, 2 * q, 4 * q, 8 * q] {
                                if k <= n2 {
                                    claims.push((k, "hyperbolic"));
                                }
                            }
                        }
                    }
                }
                if n == 12 {
                    claims.push((16, "one_plus_hyp"));
                }
                claims.sort_unstable();
                claims.dedup();
                for (a, b) in ab_pairs(&field, trials, &mut rng) {
                    let setup = trace_setup(p, n, a, b, 1);
                    for &(k, claim) in &claims {
                        let rec = Rec::new(
                            PropId::S53Remarks,
                            &[
                                ("n", n.to_string()),
                                ("k", k.to_string()),
                                ("p", p.to_string()),
                                ("a", a.to_string()),
                                ("b", b.to_string()),
                                ("claim", String::from(claim)),
                            ],
                        );
                        let outcome = (|| {
                            let setup = setup.as_ref().map_err(Clone::clone)?;
                            let found = match exterior_trace_class(setup, n, k, budget)? {
                                Ok(c) => c,
                                Err(w) => return Ok(Err(w)),
                            };
                            Ok(match claim {
                                "hyperbolic" => expect(found.is_hyperbolic(), || format!("not hyperbolic: {found}")),
                                "anisotropic" => expect(found.is_anisotropic() && found.rank() == &BigUint::from(1u32), || {
                                    format!("not a one-dimensional anisotropic form: {found}")
                                }),
                                _ => {
                                    let one = FormDescriptor::multiple_plus_hyp(1u32, Monomial::ONE);
                                    let expected = one.class_over(&setup.field, Substitution { n, a, b }, Some(&binomial_value(n2, k)))?;
                                    all([
                                        class_vs(&found, &expected, "⟨1⟩ ⊥ Hyp"),
                                        expect(!found.is_hyperbolic(), || String::from("unexpectedly hyperbolic")),
                                    ])
                                }
                            })
                        })();
                        out.push(rec.finish(outcome));
                    }
                }
                out
            }));
        }
    }
    jobs
}

fn binomial_jobs(params: &SweepParams) -> Vec<Job> {
    let r_max = params.r_max;
    let ns = params.ns.clone();
    vec![Box::new(move || {
        let report = binomial_identities_check(r_max);
        let mut out: Vec<Instance> = (1..=5u8)
            .map(|id| {
                let failures: Vec<_> = report.failures.iter().filter(|f| f.identity == id).collect();
                let rec = Rec::new(PropId::Binomials, &[("identity", id.to_string()), ("r_max", r_max.to_string())]);
                let outcome = expect(failures.is_empty(), || {
                    let f = failures[0];
                    format!("{} failures, first at r = {}, s = {}: {}", failures.len(), f.r, f.s, f.detail)
                });
                rec.finish(Ok(outcome))
            })
            .collect();
        for &n in &ns {
            let rec = Rec::new(PropId::Binomials, &[("prop11_coefficients_n", n.to_string())]);
            let outcome = (|| {
                if n % 2 == 1 {
                    return Err(Error::InvalidInput(format!("n = {n} is odd")));
                }
                for k in (0..=n * n).step_by(2) {
                    prop11_even_coefficient(n, k)?;
                }
                Ok(Ok(()))
            })();
            out.push(rec.finish(outcome));
        }
        out
    })]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn auto_primes_are_congruent() {
        assert_eq!(auto_primes(3, 3), vec![7, 13, 19]);
        assert_eq!(auto_primes(4, 3), vec![5, 13, 17]);
        assert_eq!(auto_primes(12, 3), vec![13, 37, 61]);
        assert_eq!(auto_primes(2, 3), vec![3, 5, 7]);
    }

    #[test]
    fn grade_selection_for_twelve() {
        assert_eq!(default_grades(12), vec![1, 2, 3, 4, 6, 8, 12, 24, 72, 144]);
        assert_eq!(default_grades(3).len(), 10);
    }

    #[test]
    fn exact_gram_over_both_backends() {
        let q = Cyclotomic::new(4).unwrap();
        let s = SymbolAlgebra::with_default_omega(q.clone(), 4, q.from_i64(2), q.from_i64(3)).unwrap();
        assert_eq!(exact_trace_gram_check(&s).unwrap(), Ok(()));
        let f = PrimeField::new(13, 3).unwrap();
        let s = SymbolAlgebra::with_default_omega(f, 3, 5, 7).unwrap();
        assert_eq!(exact_trace_gram_check(&s).unwrap(), Ok(()));
    }

    #[test]
    fn reports_are_reproducible() {
        let mut params = default_sweep(PropId::P1);
        params.ns = vec![3];
        params.trials = 3;
        let a = verify(PropId::P1, &params, 7).unwrap();
        let b = verify(PropId::P1, &params, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.all_passed());
        let c = verify(PropId::P1, &params, 8).unwrap();
        assert_ne!(a.instances, c.instances);
    }

    #[test]
    fn budgets_are_enforced() {
        let mut params = default_sweep(PropId::P11);
        params.ns = vec![14];
        assert!(matches!(verify(PropId::P11, &params, 0), Err(Error::BudgetExceeded { .. })));
        let mut params = default_sweep(PropId::P1);
        params.primes = vec![10_007];
        assert!(matches!(verify(PropId::P1, &params, 0), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn small_sweeps_pass() {
        for prop in [PropId::P2, PropId::P3, PropId::P4, PropId::P5, PropId::P6, PropId::Binomials] {
            let mut params = default_sweep(prop);
            params.ns.truncate(2);
            let r = verify(prop, &params, 1).unwrap();
            assert!(r.all_passed(), "{prop}: {:?}", r.failures().next());
        }
    }
}
