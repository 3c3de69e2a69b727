//! JSON encodings shared by the CLI, the golden files and the tests.
//!
//! GF(p) elements are integers in [0, p). Q(ζₙ) elements are arrays of
//! φ(n) strings "num/den", lowest power of ζ first.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use symtrace_core::descriptor::{FormDescriptor, HypCount};
use symtrace_core::fields::{CycloElem, Cyclotomic, Field, PrimeField};
use symtrace_core::paperlab::{Prediction, VerifyReport};
use symtrace_core::quadform::{DiagForm, IsometryClass, QuadForm, WittClass};
use symtrace_core::symalg::{SymbolAlgebra, Verdict};

use crate::error::{CliError, CliResult};

/// Fields that can be written to and read from JSON.
pub trait JsonField: Field {
    fn ctx_json(&self) -> Value;
    fn elem_json(&self, e: &Self::Elem) -> Value;
    fn parse_elem(&self, v: &Value) -> CliResult<Self::Elem>;
    /// Human-readable rendering for `--format pretty`.
    fn show(&self, e: &Self::Elem) -> String;
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Format(msg.into())
}

impl JsonField for PrimeField {
    fn ctx_json(&self) -> Value {
        json!({"kind": "gf", "p": self.p(), "n": self.n()})
    }

    fn elem_json(&self, e: &u64) -> Value {
        json!(e)
    }

    fn parse_elem(&self, v: &Value) -> CliResult<u64> {
        let i = v.as_i64().ok_or_else(|| bad(format!("expected an integer, found {v}")))?;
        Ok(self.from_i64(i))
    }

    /// Residues above p/2 are shown as negatives.
    fn show(&self, e: &u64) -> String {
        let p = self.p();
        if *e > p / 2 {
            format!("−{}", p - e)
        } else {
            e.to_string()
        }
    }
}

pub fn rational_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> CliResult<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad(format!("bad rational {s:?}")))?;
    let den: BigInt = den.parse().map_err(|_| bad(format!("bad rational {s:?}")))?;
    if den.is_zero() {
        return Err(bad(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

impl JsonField for Cyclotomic {
    fn ctx_json(&self) -> Value {
        json!({"kind": "cyclo", "n": self.n()})
    }

    fn elem_json(&self, e: &CycloElem) -> Value {
        Value::Array(e.coeffs().iter().map(|q| Value::String(rational_string(q))).collect())
    }

    fn parse_elem(&self, v: &Value) -> CliResult<CycloElem> {
        match v {
            Value::Array(items) => {
                let coeffs = items
                    .iter()
                    .map(|c| match c {
                        Value::String(s) => parse_rational(s),
                        Value::Number(n) => parse_rational(&n.to_string()),
                        _ => Err(bad(format!("bad coefficient {c}"))),
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                Ok(self.from_reduced(coeffs)?)
            }
            Value::Number(_) | Value::String(_) => {
                let s = v.as_str().map(str::to_owned).unwrap_or_else(|| v.to_string());
                Ok(self.from_rational(parse_rational(&s)?))
            }
            _ => Err(bad(format!("expected a coefficient array, found {v}"))),
        }
    }

    fn show(&self, e: &CycloElem) -> String {
        let mut out = String::new();
        for (i, c) in e.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &BigRational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('−');
                }
            } else {
                out.push_str(if negative { " − " } else { " + " });
            }
            let coeff = if abs.is_integer() { abs.numer().to_string() } else { format!("{}/{}", abs.numer(), abs.denom()) };
            match i {
                0 => out.push_str(&coeff),
                _ => {
                    if coeff != "1" {
                        out.push_str(&coeff);
                    }
                    out.push('ζ');
                    if i > 1 {
                        out.push_str(&superscript(i as u64));
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

pub fn superscript(v: u64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    v.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

/// Non-negative integers that may outgrow u64.
pub fn big_json(v: &BigUint) -> Value {
    match v.to_u64() {
        Some(x) => json!(x),
        None => Value::String(v.to_string()),
    }
}

/// A field read from a `ctx` object.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyField {
    Gf(PrimeField),
    Cyclo(Cyclotomic),
}

pub fn parse_ctx(v: &Value) -> CliResult<AnyField> {
    let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| bad("ctx needs a \"kind\""))?;
    let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("ctx needs an integer \"n\""))?;
    match kind {
        "gf" => {
            let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| bad("gf ctx needs an integer \"p\""))?;
            Ok(AnyField::Gf(PrimeField::new(p, n)?))
        }
        "cyclo" => Ok(AnyField::Cyclo(Cyclotomic::new(n)?)),
        other => Err(bad(format!("unknown ctx kind {other:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnyForm {
    Gf(QuadForm<PrimeField>),
    Cyclo(QuadForm<Cyclotomic>),
}

impl AnyForm {
    pub fn dim(&self) -> usize {
        match self {
            AnyForm::Gf(f) => f.dim(),
            AnyForm::Cyclo(f) => f.dim(),
        }
    }
}

pub fn form_json<F: JsonField>(form: &QuadForm<F>) -> Value {
    let f = form.field();
    let d = form.dim();
    let rows: Vec<Value> =
        (0..d).map(|i| Value::Array((0..d).map(|j| f.elem_json(form.entry(i, j))).collect())).collect();
    json!({"dim": d, "gram": rows, "ctx": f.ctx_json()})
}

fn parse_gram<F: JsonField>(field: F, v: &Value) -> CliResult<QuadForm<F>> {
    let rows = v.get("gram").and_then(Value::as_array).ok_or_else(|| bad("form needs a \"gram\" array"))?;
    let d = rows.len();
    if let Some(dim) = v.get("dim") {
        if dim.as_u64() != Some(d as u64) {
            return Err(bad(format!("\"dim\" is {dim} but the Gram matrix has {d} rows")));
        }
    }
    let mut gram = Vec::with_capacity(d * d);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| bad(format!("row {i} is not an array")))?;
        if row.len() != d {
            return Err(bad(format!("row {i} has {} entries, expected {d}", row.len())));
        }
        for e in row {
            gram.push(field.parse_elem(e)?);
        }
    }
    Ok(QuadForm::new(field, d, gram)?)
}

pub fn parse_form(v: &Value) -> CliResult<AnyForm> {
    let ctx = v.get("ctx").ok_or_else(|| bad("form needs a \"ctx\""))?;
    Ok(match parse_ctx(ctx)? {
        AnyField::Gf(f) => AnyForm::Gf(parse_gram(f, v)?),
        AnyField::Cyclo(f) => AnyForm::Cyclo(parse_gram(f, v)?),
    })
}

pub fn diag_json<F: JsonField>(d: &DiagForm<F>) -> Value {
    let f = d.field();
    json!({
        "entries": d.entries().iter().map(|e| f.elem_json(e)).collect::<Vec<_>>(),
        "radical": d.radical_dim(),
        "ctx": f.ctx_json(),
    })
}

pub fn witt_json(w: &WittClass) -> Value {
    let f = w.field();
    json!({
        "rank": w.rank,
        "witt_index": w.witt_index,
        "anisotropic": w.anisotropic.entries().iter().map(|e| f.elem_json(e)).collect::<Vec<_>>(),
        "disc_square": w.disc_is_square,
        "ctx": f.ctx_json(),
    })
}

pub fn class_json(c: &IsometryClass) -> Value {
    json!({
        "p": c.p(),
        "rank": big_json(c.rank()),
        "radical": big_json(c.radical_dim()),
        "witt_index": big_json(&c.witt_index()),
        "anisotropic_dim": c.anisotropic_dim(),
        "det_square": c.det_is_square(),
        "disc_square": c.disc_is_square(),
        "hyperbolic": c.is_hyperbolic(),
    })
}

pub fn verdict_json(v: &Verdict) -> Value {
    json!({
        "verdict": v.kind.as_str(),
        "facts": v.facts.iter().map(|f| json!({"name": f.name, "holds": f.holds})).collect::<Vec<_>>(),
    })
}

pub fn algebra_json<F: JsonField>(s: &SymbolAlgebra<F>) -> Value {
    let f = s.field();
    json!({
        "n": s.degree(),
        "a": f.elem_json(s.a()),
        "b": f.elem_json(s.b()),
        "omega": f.elem_json(s.omega()),
        "ctx": f.ctx_json(),
    })
}

pub fn descriptor_json(d: &FormDescriptor) -> Value {
    json!({
        "text": d.to_string(),
        "terms": d.terms.iter().map(|t| json!({"mult": big_json(&t.mult), "entry": t.entry.to_string()})).collect::<Vec<_>>(),
        "hyp": match &d.hyp {
            HypCount::Exact(h) => big_json(h),
            HypCount::Fill => Value::String("fill".into()),
        },
        "dim": d.dim().map_or(Value::Null, |x| big_json(&x)),
    })
}

pub fn prediction_json(p: &Prediction) -> Value {
    let params: Map<String, Value> = p.params.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
    json!({
        "prop": p.prop.as_str(),
        "params": params,
        "form": descriptor_json(&p.form),
        "equivalent": p.equivalent.iter().map(descriptor_json).collect::<Vec<_>>(),
    })
}

pub fn report_json(r: &VerifyReport) -> Value {
    let instances: Vec<Value> = r
        .instances
        .iter()
        .map(|i| {
            let params: Map<String, Value> = i.params.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
            json!({"key": i.key, "params": params, "pass": i.pass, "witness": i.witness})
        })
        .collect();
    json!({
        "prop": r.prop.as_str(),
        "instances": instances,
        "pass": r.pass,
        "fail": r.fail,
        "seed": r.seed,
        "elapsed_ms": r.elapsed_ms,
    })
}

pub fn error_json(e: &CliError) -> Value {
    json!({"error": e.to_string()})
}
