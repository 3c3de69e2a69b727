//! The eleven acceptance criteria. One line per criterion; exits nonzero if
//! any fails. All comparisons are exact; the only tolerances are the time
//! limits below.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use symtrace::json::JsonField;
use symtrace::{cli, verify_timed};
use symtrace_core::exterior::{exterior_power_bruteforce, exterior_power_diagonal};
use symtrace_core::fields::{Cyclotomic, Field, PrimeField};
use symtrace_core::linalg::{self, Matrix};
use symtrace_core::paperlab::{default_sweep, PropId, SweepParams, VerifyReport};
use symtrace_core::quadform::{
    diagonal_entries, is_isometric, witt_decompose_classified, witt_decompose_constructive, IsometryClass, QuadForm,
};

const GOLDEN_LIMIT: Duration = Duration::from_secs(1);
const PROP1_LIMIT: Duration = Duration::from_secs(30);
const PROP2_LIMIT: Duration = Duration::from_secs(10);
const EXTERIOR_ORACLE_LIMIT: Duration = Duration::from_secs(60);
const EXTERIOR_TRACE_LIMIT: Duration = Duration::from_secs(120);
const BINOMIAL_LIMIT: Duration = Duration::from_secs(5);

const SEED: u64 = 20_240_607;
const CASES_PER_BACKEND: usize = 1000;

type Outcome = Result<String, String>;

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sweep(prop: PropId, params: &SweepParams) -> Result<VerifyReport, String> {
    let r = verify_timed(prop, params, SEED).map_err(|e| format!("{prop}: {e}"))?;
    if let Some(f) = r.failures().next() {
        return Err(format!("{prop}: {} of {} failed, first {}: {}", r.fail, r.instances.len(), f.key, f.witness.as_deref().unwrap_or("")));
    }
    ensure(r.pass > 0, || format!("{prop}: no instances"))?;
    Ok(r)
}

fn default(prop: PropId) -> Result<VerifyReport, String> {
    sweep(prop, &default_sweep(prop))
}

fn has(r: &VerifyReport, want: &[(&str, &str)]) -> bool {
    r.instances.iter().any(|i| want.iter().all(|(k, v)| i.params.iter().any(|(pk, pv)| pk == k && pv == v)))
}

fn golden_matrix() -> Outcome {
    let (a, b) = (2i64, 3i64);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = ["symtrace", "gram", "--field", "cyclo", "--n", "3", "--a", "2", "--b", "3", "--order", "paper"];
    ensure(cli::run(args, &mut out, &mut err) == 0, || String::from_utf8_lossy(&err).into_owned())?;
    let fresh: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let golden: Value = serde_json::from_str(include_str!("../golden/n3_gram.json")).map_err(|e| e.to_string())?;
    ensure(fresh == golden, || String::from("CLI output differs from the golden file"))?;

    // The displayed matrix, transcribed: basis 1, x, x², y, y², xy, x²y², x²y, xy².
    let q = Cyclotomic::new(3).map_err(|e| e.to_string())?;
    let w = q.zeta_pow(1);
    let c = |v: i64| q.from_i64(v);
    let mut expected = vec![vec![q.zero(); 9]; 9];
    let mut set = |i: usize, j: usize, v| {
        expected[i][j] = q.clone().mul(&v, &q.one());
        expected[j][i] = v;
    };
    set(0, 0, c(3));
    set(1, 2, c(3 * a));
    set(3, 4, c(3 * b));
    set(5, 6, q.mul(&c(3 * a * b), &q.mul(&w, &w)));
    set(7, 8, q.mul(&c(3 * a * b), &w));
    let mut checked = 0;
    for (i, row) in expected.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let found = q.parse_elem(&golden["gram"][i][j]).map_err(|e| e.to_string())?;
            ensure(&found == e, || format!("entry ({i}, {j}): {} vs {}", q.show(&found), q.show(e)))?;
            checked += 1;
        }
    }

    let gram: Vec<_> = (0..81).map(|k| q.parse_elem(&golden["gram"][k / 9][k % 9]).unwrap()).collect();
    let form = QuadForm::new(q, 9, gram).map_err(|e| e.to_string())?;
    let cert = form.hyperbolic_certificate(&[(1, 2), (3, 4), (5, 6), (7, 8)]).map_err(|e| e.to_string())?;
    ensure(cert, || String::from("the four pairs are not a hyperbolic certificate"))?;
    Ok(format!("{checked} entries exact, 4 hyperbolic pairs"))
}

fn prop1_sweep() -> Outcome {
    let mut params = default_sweep(PropId::P1);
    params.ns = (2..=6).collect();
    params.primes_per_n = 3;
    params.trials = 20;
    let r = sweep(PropId::P1, &params)?;
    for n in 2..=6u64 {
        let primes: std::collections::BTreeSet<_> = r
            .instances
            .iter()
            .filter(|i| i.params.iter().any(|(k, v)| k == "n" && v == &n.to_string()))
            .filter_map(|i| i.params.iter().find(|(k, _)| k == "p").map(|(_, v)| v.clone()))
            .collect();
        ensure(primes.len() == 3, || format!("n = {n} used primes {primes:?}"))?;
    }
    Ok(format!("{} instances", r.pass))
}

fn prop2_gauss_sums() -> Outcome {
    let r = default(PropId::P2)?;
    for n in (3..=23).step_by(2) {
        ensure(has(&r, &[("n", &n.to_string()), ("field", "cyclo")]), || format!("n = {n} missing"))?;
    }
    Ok(format!("{} instances, odd n ≤ 23", r.pass))
}

fn prop3_corollary() -> Outcome {
    let a = default(PropId::P3)?;
    let b = default(PropId::Corollary)?;
    Ok(format!("{} + {} instances", a.pass, b.pass))
}

fn prop4_relations() -> Outcome {
    let r = default(PropId::P4)?;
    for n in ["2", "4", "6", "10"] {
        ensure(has(&r, &[("n", n), ("field", "cyclo")]) && has(&r, &[("n", n), ("a", "1")]), || format!("n = {n} missing a backend"))?;
    }
    Ok(format!("{} instances over both backends", r.pass))
}

fn props5_6_logic() -> Outcome {
    let a = default(PropId::P5)?;
    let b = default(PropId::P6)?;
    ensure(has(&a, &[("hyperbolic_input", "true")]) && has(&b, &[("table", "anisotropic_input")]), || {
        String::from("verdict tables missing")
    })?;
    Ok(format!("{} + {} instances", a.pass, b.pass))
}

fn exterior_oracle() -> Outcome {
    let r = default(PropId::P41)?;
    // 3 primes × Σ_{d ≤ 6} 2^d patterns
    ensure(r.instances.len() == 3 * 127, || format!("{} patterns", r.instances.len()))?;
    Ok(format!("{} square-class patterns, all k", r.pass))
}

fn sum_and_hyperbolic() -> Outcome {
    let a = default(PropId::P73)?;
    let b = default(PropId::P8)?;
    let c = default(PropId::P9)?;
    ensure(has(&c, &[("p", "13"), ("h", "4"), ("k", "2")]), || String::from("Λ²(4×H) instance missing"))?;
    Ok(format!("{} + {} + {} instances", a.pass, b.pass, c.pass))
}

fn exterior_trace_forms() -> Outcome {
    let mut p11 = default_sweep(PropId::P11);
    p11.ns = vec![2, 4, 6, 8, 12];
    let a = sweep(PropId::P11, &p11)?;
    let mut p10 = default_sweep(PropId::P10);
    p10.ns = vec![3];
    let b = sweep(PropId::P10, &p10)?;
    let c = default(PropId::S53Example)?;
    let d = default(PropId::S53Remarks)?;
    for (n, kmax) in [(2u64, 4u64), (4, 16)] {
        for k in 0..=kmax {
            ensure(has(&a, &[("n", &n.to_string()), ("k", &k.to_string())]), || format!("n = {n}, k = {k} missing"))?;
        }
    }
    for k in 0..=9u64 {
        ensure(has(&b, &[("n", "3"), ("k", &k.to_string())]), || format!("n = 3, k = {k} missing"))?;
    }
    for k in [1, 2, 3, 4, 6, 8, 12, 24, 72, 144] {
        ensure(has(&a, &[("n", "12"), ("k", &k.to_string())]), || format!("n = 12, k = {k} missing"))?;
    }
    ensure(has(&d, &[("n", "12"), ("k", "16"), ("claim", "one_plus_hyp")]), || String::from("Λ¹⁶ instance missing"))?;
    ensure(has(&d, &[("claim", "anisotropic")]), || String::from("top-degree instances missing"))?;
    Ok(format!("{} instances", a.pass + b.pass + c.pass + d.pass))
}

fn binomials() -> Outcome {
    let r = default(PropId::Binomials)?;
    Ok(format!("{} checks, r ≤ 100", r.pass))
}

fn random_form(f: &PrimeField, d: usize, rng: &mut ChaCha8Rng, regular: bool) -> QuadForm<PrimeField> {
    loop {
        let mut g = vec![0u64; d * d];
        for i in 0..d {
            for j in i..d {
                let v = if rng.gen_bool(0.3) { 0 } else { rng.gen_range(0..f.p()) };
                g[i * d + j] = v;
                g[j * d + i] = v;
            }
        }
        let form = QuadForm::new(f.clone(), d, g).unwrap();
        if !regular || linalg::rank(f, &form.matrix()) == d {
            return form;
        }
    }
}

fn field_laws<F: Field>(f: &F, x: &F::Elem, y: &F::Elem, z: &F::Elem) -> bool {
    f.mul(&f.mul(x, y), z) == f.mul(x, &f.mul(y, z))
        && f.add(&f.add(x, y), z) == f.add(x, &f.add(y, z))
        && f.mul(x, &f.add(y, z)) == f.add(&f.mul(x, y), &f.mul(x, z))
        && match f.inv(x) {
            Some(i) => f.is_one(&f.mul(x, &i)),
            None => f.is_zero(x),
        }
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for case in 0..CASES_PER_BACKEND {
        let p = [5u64, 7, 13, 10_007, 1_000_003][case % 5];
        let f = PrimeField::new(p, 1).unwrap();
        let (x, y, z) = (rng.gen_range(0..p), rng.gen_range(0..p), rng.gen_range(0..p));
        ensure(field_laws(&f, &x, &y, &z), || format!("GF({p}) laws fail at {x}, {y}, {z}"))?;
    }
    for case in 0..CASES_PER_BACKEND {
        let n = [3u64, 4, 5, 8, 12][case % 5];
        let q = Cyclotomic::new(n).unwrap();
        let mut elem = || {
            let coeffs = (0..q.degree())
                .map(|_| BigRational::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=4))))
                .collect();
            q.from_reduced(coeffs).unwrap()
        };
        let (x, y, z) = (elem(), elem(), elem());
        ensure(field_laws(&q, &x, &y, &z), || format!("Q(ζ{n}) laws fail"))?;
    }
    let f = PrimeField::new(13, 1).unwrap();
    let small = [PrimeField::new(5, 1).unwrap(), PrimeField::new(7, 1).unwrap(), f.clone()];
    for case in 0..300 {
        let g = &small[case % 3];
        let form = random_form(g, rng.gen_range(0..=6), &mut rng, false);
        let d = diagonal_entries(&form);
        let constructive = witt_decompose_constructive(&d).map_err(|e| e.to_string())?;
        ensure(constructive.same_class(&witt_decompose_classified(&d)), || format!("Witt paths disagree on {form:?}"))?;
    }
    for case in 0..300 {
        let g = &small[case % 3];
        let phi = random_form(g, rng.gen_range(1..=3), &mut rng, true);
        let psi = random_form(g, rng.gen_range(0..=3), &mut rng, true);
        let chi = random_form(g, psi.dim(), &mut rng, true);
        let lhs = is_isometric(&phi.orth_sum(&psi).unwrap(), &phi.orth_sum(&chi).unwrap()).map_err(|e| e.to_string())?;
        ensure(lhs == is_isometric(&psi, &chi).unwrap(), || String::from("Witt cancellation fails"))?;
    }
    for case in 0..100 {
        let g = &small[case % 3];
        let d = rng.gen_range(1..=4);
        let form = random_form(g, d, &mut rng, true);
        let basis = loop {
            let m = Matrix::from_fn(d, |_, _| rng.gen_range(0..g.p()));
            if linalg::rank(g, &m) == d {
                break m;
            }
        };
        let moved = form.congruent(&basis).unwrap();
        for k in 0..=d {
            let a = IsometryClass::of_form(&exterior_power_bruteforce(&form, k).unwrap());
            let b = IsometryClass::of_form(&exterior_power_bruteforce(&moved, k).unwrap());
            let c = IsometryClass::of_diag(&exterior_power_diagonal(&diagonal_entries(&form), k).unwrap());
            ensure(a == b && b == c, || format!("Λ^{k} class changes under a change of basis"))?;
        }
    }
    Ok(format!("{CASES_PER_BACKEND} field cases per backend, 300 + 300 + 100 form cases"))
}

const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, name: "golden n = 3 Gram matrix", limit: Some(GOLDEN_LIMIT), run: golden_matrix },
    Criterion { id: 2, name: "trace form sweep, n ≤ 6", limit: Some(PROP1_LIMIT), run: prop1_sweep },
    Criterion { id: 3, name: "Gauss sums", limit: Some(PROP2_LIMIT), run: prop2_gauss_sums },
    Criterion { id: 4, name: "odd degree simplification", limit: None, run: prop3_corollary },
    Criterion { id: 5, name: "quaternion subalgebra", limit: None, run: prop4_relations },
    Criterion { id: 6, name: "division verdicts", limit: None, run: props5_6_logic },
    Criterion { id: 7, name: "exterior oracle, diagonal forms", limit: Some(EXTERIOR_ORACLE_LIMIT), run: exterior_oracle },
    Criterion { id: 8, name: "sum expansion, hyperbolic powers", limit: None, run: sum_and_hyperbolic },
    Criterion { id: 9, name: "exterior powers of trace forms", limit: Some(EXTERIOR_TRACE_LIMIT), run: exterior_trace_forms },
    Criterion { id: 10, name: "binomial identities", limit: Some(BINOMIAL_LIMIT), run: binomials },
    Criterion { id: 11, name: "property suites", limit: None, run: property_suites },
];

fn main() {
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err(String::from("panicked")));
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(detail), Some(limit)) if elapsed > limit => Err(format!("{detail}; over the {limit:?} limit")),
            (o, _) => o,
        };
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {:<34} {:>9.2?}  {detail}", c.id, c.name, elapsed);
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
