use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use symtrace_core::descriptor::Substitution;
use symtrace_core::exterior::{
    binomial_value, exterior_power_bruteforce_with_budget, exterior_power_diagonal, DEFAULT_BRUTE_BUDGET,
};
use symtrace_core::fields::{Cyclotomic, Field, PrimeField};
use symtrace_core::paperlab::{
    default_sweep, predict_exterior_trace_form, predict_exterior_trace_form_as_printed, predict_hyperbolic_exterior,
    predict_split_trace_form, predict_sum_of_ones, predict_trace_form, predict_trace_form_odd_simplified,
    Prediction, PropId,
};
use symtrace_core::quadform::{diagonal_entries, is_isometric, witt_decompose, IsometryClass, QuadForm};
use symtrace_core::symalg::{division_verdict_prop5, division_verdict_prop6, AlgElem, SymbolAlgebra, PAIRED_ORDER_N3};
use symtrace_core::Error;

use crate::error::{CliError, CliResult};
use crate::json::{self, AnyForm, JsonField};
use crate::pretty;

#[derive(Debug, Parser)]
#[command(name = "symtrace", version, about = "Trace forms of symbol algebras, their exterior powers and Witt classes")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Worker threads for the parallel kernels.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Diag,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisOrder {
    /// x^i y^j at index i·n + j.
    RowMajor,
    /// 1, x, x², y, y², xy, x²y², x²y, xy² (n = 3 only).
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Gf(u64),
    Cyclo,
}

impl FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "cyclo" {
            return Ok(FieldSpec::Cyclo);
        }
        match s.strip_prefix("gf:").map(str::parse::<u64>) {
            Some(Ok(p)) => Ok(FieldSpec::Gf(p)),
            _ => Err(format!("expected gf:P or cyclo, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct AlgebraArgs {
    /// gf:P or cyclo
    #[arg(long)]
    pub field: Option<FieldSpec>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub a: i64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub b: i64,
    /// Use ω^t for the default primitive n-th root ω.
    #[arg(long = "omega-power", default_value_t = 1)]
    pub omega_power: u64,
}

#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Form JSON; without it the trace form of the algebra given by
    /// --field/--n/--a/--b is used.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub algebra: AlgebraArgs,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Gram matrix of the trace form.
    Gram {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, value_enum, default_value_t = BasisOrder::RowMajor)]
        order: BasisOrder,
    },
    /// Diagonal form congruent to the input.
    Diagonalize {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Witt decomposition over GF(p).
    Witt {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// k-th exterior power.
    Exterior {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
        /// Largest C(dim, k) the brute-force construction accepts.
        #[arg(long, default_value_t = DEFAULT_BRUTE_BUDGET)]
        budget: u128,
        /// Add wall-clock timing (makes the output run-dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Predicted form for a proposition.
    Predict {
        #[arg(long)]
        prop: PropId,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        /// Number of hyperbolic planes (P8, P9).
        #[arg(long)]
        h: Option<u64>,
        /// Also classify the prediction over GF(P).
        #[arg(long)]
        field: Option<FieldSpec>,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        b: i64,
    },
    /// Sweep a proposition against direct computation.
    Verify {
        #[arg(long)]
        prop: PropId,
        /// Degrees (dimensions for P41/P73, plane counts for P8/P9).
        #[arg(long, value_delimiter = ',')]
        n: Vec<u64>,
        /// Restrict to one prime.
        #[arg(long)]
        field: Option<FieldSpec>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',')]
        k: Vec<u64>,
        #[arg(long = "omega-power", value_delimiter = ',')]
        omega_power: Vec<u64>,
        #[arg(long)]
        budget: Option<u128>,
        #[arg(long)]
        timing: bool,
    },
    /// Randomized zero-divisor search over GF(p).
    Zerodiv {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// What a verb produced.
pub struct Output {
    pub json: Value,
    pub pretty: String,
    /// 0 unless a check inside the verb failed.
    pub code: i32,
}

impl Output {
    fn ok(json: Value, pretty: String) -> Self {
        Output { json, pretty, code: 0 }
    }
}

/// Parses `args` (including the program name) and runs the verb. Returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(CliError::Usage(format!("cannot start {t} threads: {e}"))),
        },
        None => execute(&cli),
    };
    match result {
        Ok(o) => {
            let text = match cli.format {
                OutputFormat::Json => format!("{}\n", o.json),
                OutputFormat::Pretty => {
                    let mut s = o.pretty;
                    if !s.ends_with('\n') {
                        s.push('\n');
                    }
                    s
                }
            };
            let _ = out.write_all(text.as_bytes());
            o.code
        }
        Err(e @ CliError::Core(_)) => {
            let _ = match cli.format {
                OutputFormat::Json => writeln!(out, "{}", json::error_json(&e)),
                OutputFormat::Pretty => writeln!(out, "error: {e}"),
            };
            e.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> CliResult<Output> {
    match &cli.verb {
        Verb::Gram { algebra, order } => gram(algebra, *order),
        Verb::Diagonalize { source } => match load_source(source)? {
            AnyForm::Gf(f) => Ok(diagonalize_out(&f)),
            AnyForm::Cyclo(f) => Ok(diagonalize_out(&f)),
        },
        Verb::Witt { source } => witt(source),
        Verb::Exterior { source, k, method, budget, timing } => {
            let start = Instant::now();
            let mut o = match load_source(source)? {
                AnyForm::Gf(f) => exterior(&f, *k, *method, *budget, GF_OPS)?,
                AnyForm::Cyclo(f) => exterior(&f, *k, *method, *budget, CYCLO_OPS)?,
            };
            if *timing {
                o.json["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
            }
            Ok(o)
        }
        Verb::Predict { prop, n, k, h, field, a, b } => predict(*prop, *n, *k, *h, *field, *a, *b),
        Verb::Verify { prop, n, field, trials, seed, k, omega_power, budget, timing } => {
            let mut params = default_sweep(*prop);
            if !n.is_empty() {
                params.ns = n.clone();
            }
            match field {
                Some(FieldSpec::Gf(p)) => params.primes = vec![*p],
                Some(FieldSpec::Cyclo) => {
                    return Err(CliError::Usage(String::from("verify sweeps run over gf:P; exact checks are built in")))
                }
                None => {}
            }
            if let Some(t) = trials {
                params.trials = *t;
            }
            if !k.is_empty() {
                params.ks = k.clone();
            }
            if !omega_power.is_empty() {
                params.omega_powers = omega_power.clone();
            }
            if let Some(b) = budget {
                params.brute_budget = *b;
            }
            let mut report = crate::verify_timed(*prop, &params, *seed)?;
            if !timing {
                report.elapsed_ms = None;
            }
            let code = if report.all_passed() { 0 } else { 1 };
            Ok(Output { json: json::report_json(&report), pretty: pretty::report(&report), code })
        }
        Verb::Zerodiv { algebra, trials, seed } => zerodiv(algebra, *trials, *seed),
    }
}

fn require_algebra(args: &AlgebraArgs) -> CliResult<(FieldSpec, u64)> {
    match (args.field, args.n) {
        (Some(f), Some(n)) => Ok((f, n)),
        _ => Err(CliError::Usage(String::from("--field and --n are required"))),
    }
}

pub fn gf_algebra(p: u64, n: u64, a: i64, b: i64, t: u64) -> CliResult<SymbolAlgebra<PrimeField>> {
    let f = PrimeField::new(p, n)?;
    let (a, b) = (f.from_i64(a), f.from_i64(b));
    Ok(SymbolAlgebra::with_omega_power(f, n as usize, a, b, t)?)
}

pub fn cyclo_algebra(n: u64, a: i64, b: i64, t: u64) -> CliResult<SymbolAlgebra<Cyclotomic>> {
    let f = Cyclotomic::new(n)?;
    let (a, b) = (f.from_i64(a), f.from_i64(b));
    Ok(SymbolAlgebra::with_omega_power(f, n as usize, a, b, t)?)
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    Ok(serde_json::from_str(&text)?)
}

fn load_source(src: &SourceArgs) -> CliResult<AnyForm> {
    if let Some(path) = &src.input {
        if src.algebra.field.is_some() || src.algebra.n.is_some() {
            return Err(CliError::Usage(String::from("--input cannot be combined with --field/--n")));
        }
        return json::parse_form(&read_json(path)?);
    }
    let (field, n) = require_algebra(&src.algebra)?;
    let AlgebraArgs { a, b, omega_power: t, .. } = src.algebra;
    Ok(match field {
        FieldSpec::Gf(p) => AnyForm::Gf(gf_algebra(p, n, a, b, t)?.trace_form()),
        FieldSpec::Cyclo => AnyForm::Cyclo(cyclo_algebra(n, a, b, t)?.trace_form()),
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn gram(args: &AlgebraArgs, order: BasisOrder) -> CliResult<Output> {
    let (field, n) = require_algebra(args)?;
    let perm: Vec<usize> = match order {
        BasisOrder::RowMajor => (0..(n * n) as usize).collect(),
        BasisOrder::Paper if n == 3 => PAIRED_ORDER_N3.to_vec(),
        BasisOrder::Paper => return Err(CliError::Usage(String::from("--order paper is only defined for n = 3"))),
    };
    match field {
        FieldSpec::Gf(p) => gram_out(&gf_algebra(p, n, args.a, args.b, args.omega_power)?, &perm),
        FieldSpec::Cyclo => gram_out(&cyclo_algebra(n, args.a, args.b, args.omega_power)?, &perm),
    }
}

fn gram_out<F: JsonField>(s: &SymbolAlgebra<F>, perm: &[usize]) -> CliResult<Output> {
    let form = s.trace_form().permuted(perm)?;
    let labels: Vec<String> = perm.iter().map(|&i| s.monomial_label(i)).collect();
    let value = merge(
        json::form_json(&form),
        json!({"algebra": json::algebra_json(s), "basis": labels, "order": perm}),
    );
    let f = s.field();
    let header = format!(
        "trace form of (a, b; n) with n = {}, a = {}, b = {}, ω = {}\n",
        s.degree(),
        f.show(s.a()),
        f.show(s.b()),
        f.show(s.omega())
    );
    Ok(Output::ok(value, header + &pretty::matrix(&form, &labels)))
}

fn diagonalize_out<F: JsonField>(form: &QuadForm<F>) -> Output {
    let d = diagonal_entries(form);
    Output::ok(json::diag_json(&d), pretty::diag(&d))
}

fn require_gf(form: AnyForm, verb: &str) -> CliResult<QuadForm<PrimeField>> {
    match form {
        AnyForm::Gf(f) => Ok(f),
        AnyForm::Cyclo(_) => Err(CliError::Usage(format!("{verb} needs a form over gf:P"))),
    }
}

fn witt(src: &SourceArgs) -> CliResult<Output> {
    let form = require_gf(load_source(src)?, "witt")?;
    let w = witt_decompose(&form)?;
    let class = IsometryClass::of_form(&form);
    let mut text = pretty::witt(&w);
    if form.dim() > w.rank {
        text.push_str(&format!(" ⊥ {}×⟨0⟩", form.dim() - w.rank));
    }
    Ok(Output::ok(merge(json::witt_json(&w), json!({"class": json::class_json(&class)})), text))
}

/// Field-specific decisions: isometry and classification exist over GF(p) only.
struct FormOps<F: Field> {
    agree: fn(&QuadForm<F>, &QuadForm<F>) -> symtrace_core::Result<Option<bool>>,
    classify: fn(&QuadForm<F>) -> Option<IsometryClass>,
}

const GF_OPS: FormOps<PrimeField> =
    FormOps { agree: |a, b| Ok(Some(is_isometric(a, b)?)), classify: |f| Some(IsometryClass::of_form(f)) };
const CYCLO_OPS: FormOps<Cyclotomic> = FormOps { agree: |_, _| Ok(None), classify: |_| None };

fn exterior<F: JsonField>(form: &QuadForm<F>, k: usize, method: Method, budget: u128, ops: FormOps<F>) -> CliResult<Output> {
    let mut value = json!({"k": k, "method": match method { Method::Brute => "brute", Method::Diag => "diag", Method::Both => "both" }});
    let mut text = String::new();
    let mut code = 0;
    let brute = if method != Method::Diag { Some(exterior_power_bruteforce_with_budget(form, k, budget)?) } else { None };
    let diag = if method != Method::Brute { Some(exterior_power_diagonal(&diagonal_entries(form), k)?) } else { None };
    if let Some(b) = &brute {
        let key = if method == Method::Both { "brute" } else { "form" };
        value[key] = json::form_json(b);
        text.push_str(&format!("brute force: dim {}\n", b.dim()));
    }
    if let Some(d) = &diag {
        let key = if method == Method::Both { "diag" } else { "form" };
        value[key] = json::diag_json(d);
        text.push_str(&format!("diagonal: {}\n", pretty::diag(d)));
    }
    if let (Some(b), Some(d)) = (&brute, &diag) {
        let verdict = (ops.agree)(b, &d.to_quadform())?;
        value["agree"] = json!(verdict);
        match verdict {
            Some(true) => text.push_str("methods agree up to isometry\n"),
            Some(false) => {
                text.push_str("methods DISAGREE\n");
                code = 1;
            }
            None => text.push_str("isometry is not decided over this field\n"),
        }
    }
    let any = brute.clone().or_else(|| diag.as_ref().map(|d| d.to_quadform()));
    if let Some(class) = any.as_ref().and_then(ops.classify) {
        value["class"] = json::class_json(&class);
        text.push_str(&format!("class: {}\n", pretty::class(&class)));
    }
    Ok(Output { json: value, pretty: text, code })
}

fn predict(
    prop: PropId,
    n: Option<u64>,
    k: Option<u64>,
    h: Option<u64>,
    field: Option<FieldSpec>,
    a: i64,
    b: i64,
) -> CliResult<Output> {
    let need = |v: Option<u64>, flag: &str| v.ok_or_else(|| CliError::Usage(format!("{prop} needs --{flag}")));
    let (pred, total, subst_n): (Prediction, Option<BigUint>, u64) = match prop {
        PropId::P1 | PropId::P1i | PropId::P1ii => {
            let n = need(n, "n")?;
            if (prop == PropId::P1i && n % 2 == 0) || (prop == PropId::P1ii && n % 2 == 1) {
                return Err(CliError::Usage(format!("{prop} does not apply to n = {n}")));
            }
            (predict_trace_form(n)?, None, n)
        }
        PropId::Corollary => {
            let n = need(n, "n")?;
            (predict_trace_form_odd_simplified(n)?, None, n)
        }
        PropId::P3 => {
            let n = need(n, "n")?;
            (predict_sum_of_ones(n)?, None, n)
        }
        PropId::SplitRemark => {
            let n = need(n, "n")?;
            (predict_split_trace_form(n), None, n)
        }
        PropId::P8 | PropId::P9 => {
            let (h, k) = (need(h, "h")?, need(k, "k")?);
            if (k % 2 == 1) != (prop == PropId::P8) {
                return Err(CliError::Usage(format!("{prop} is about {} k", if prop == PropId::P8 { "odd" } else { "even" })));
            }
            (predict_hyperbolic_exterior(h, k)?, None, 1)
        }
        PropId::P10 | PropId::P11 | PropId::S53Example | PropId::S53Remarks => {
            let (n, k) = (need(n, "n")?, need(k, "k")?);
            (predict_exterior_trace_form(n, k)?, Some(binomial_value(n * n, k)), n)
        }
        _ => return Err(CliError::Usage(format!("{prop} has no closed-form prediction; use verify"))),
    };
    let mut value = json::prediction_json(&pred);
    let mut text = format!("{}: {}\n", prop, pred.form);
    for e in &pred.equivalent {
        text.push_str(&format!("  ≃ {e}\n"));
    }
    if let Some(t) = &total {
        let resolved = pred.form.resolve(t)?;
        value["resolved"] = json::descriptor_json(&resolved);
        text.push_str(&format!("  = {resolved}\n"));
    }
    if prop == PropId::P10 {
        if let (Some(n), Some(k)) = (n, k) {
            let printed = predict_exterior_trace_form_as_printed(n, k)?;
            value["as_printed"] = json::descriptor_json(&printed.form);
            if printed.form != pred.form {
                text.push_str(&format!("  (as printed: {})\n", printed.form));
            }
        }
    }
    match field {
        Some(FieldSpec::Gf(p)) => {
            let f = PrimeField::new(p, 1)?;
            let s = Substitution { n: subst_n, a: f.from_i64(a), b: f.from_i64(b) };
            let class = pred.form.class_over(&f, s, total.as_ref())?;
            value["class"] = json::class_json(&class);
            text.push_str(&format!("over GF({p}) with a = {}, b = {}: {}\n", s.a, s.b, pretty::class(&class)));
        }
        Some(FieldSpec::Cyclo) => return Err(CliError::Usage(String::from("predictions are classified over gf:P only"))),
        None => {}
    }
    Ok(Output::ok(value, text))
}

fn element_text(s: &SymbolAlgebra<PrimeField>, u: &AlgElem<PrimeField>) -> String {
    let f = s.field();
    let mut out = String::new();
    for (i, c) in u.coeffs().iter().enumerate().filter(|(_, c)| **c != 0) {
        let shown = f.show(c);
        let (negative, abs) = match shown.strip_prefix('−') {
            Some(rest) => (true, rest.to_string()),
            None => (false, shown),
        };
        let label = s.monomial_label(i);
        let term = match (abs.as_str(), label.as_str()) {
            (c, "1") => c.to_string(),
            ("1", l) => l.to_string(),
            (c, l) => format!("{c}·{l}"),
        };
        match (out.is_empty(), negative) {
            (true, true) => out.push('−'),
            (true, false) => {}
            (false, true) => out.push_str(" − "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn zerodiv(args: &AlgebraArgs, trials: usize, seed: u64) -> CliResult<Output> {
    let (field, n) = require_algebra(args)?;
    let FieldSpec::Gf(p) = field else {
        return Err(CliError::Usage(String::from("zerodiv runs over gf:P only")));
    };
    let s = gf_algebra(p, n, args.a, args.b, args.omega_power)?;
    let f = s.field();
    let trace = s.trace_form();
    let verdict = |r: symtrace_core::Result<_>| match r {
        Ok(v) => json::verdict_json(&v),
        Err(Error::HypothesisViolated(why)) => json!({"verdict": "NotApplicable", "reason": why}),
        Err(e) => json!({"error": e.to_string()}),
    };
    let mut value = json!({
        "algebra": json::algebra_json(&s),
        "trials": trials,
        "seed": seed,
        "verdicts": {
            "prop5": verdict(division_verdict_prop5(n as usize, &trace)),
            "prop6": verdict(division_verdict_prop6(n as usize, &trace)),
        },
    });
    let text = match s.find_zero_divisor(trials, seed) {
        Some((u, v)) => {
            let product = s.multiply(&u, &v)?;
            value["found"] = json!(true);
            value["u"] = json!(u.coeffs().iter().map(|c| f.elem_json(c)).collect::<Vec<_>>());
            value["v"] = json!(v.coeffs().iter().map(|c| f.elem_json(c)).collect::<Vec<_>>());
            value["product_is_zero"] = json!(s.is_zero(&product));
            format!("zero divisor pair found:\n  u = {}\n  v = {}\n", element_text(&s, &u), element_text(&s, &v))
        }
        None => {
            value["found"] = json!(false);
            format!("no zero divisor in {trials} trials (inconclusive)\n")
        }
    };
    Ok(Output::ok(value, text))
}
