//! Text rendering for `--format pretty`: forms as "⟨c₁,…⟩ ⊥ h×H".

use num_bigint::BigUint;
use num_traits::Zero;

use symtrace_core::fields::{Field, PrimeField};
use symtrace_core::paperlab::VerifyReport;
use symtrace_core::quadform::{DiagForm, IsometryClass, QuadForm, WittClass};

use crate::json::JsonField;

fn join_form(diagonal: &[String], hyperbolic: &BigUint, radical: &BigUint) -> String {
    let mut parts = Vec::new();
    if !diagonal.is_empty() {
        parts.push(format!("⟨{}⟩", diagonal.join(",")));
    }
    if !hyperbolic.is_zero() || diagonal.is_empty() {
        parts.push(format!("{hyperbolic}×H"));
    }
    if !radical.is_zero() {
        parts.push(format!("{radical}×⟨0⟩"));
    }
    parts.join(" ⊥ ")
}

pub fn diag<F: JsonField>(d: &DiagForm<F>) -> String {
    let f = d.field();
    let entries: Vec<String> = d.entries().iter().map(|e| f.show(e)).collect();
    if entries.is_empty() && d.radical_dim() == 0 {
        return String::from("0");
    }
    let mut parts = Vec::new();
    if !entries.is_empty() {
        parts.push(format!("⟨{}⟩", entries.join(",")));
    }
    if d.radical_dim() > 0 {
        parts.push(format!("{}×⟨0⟩", d.radical_dim()));
    }
    parts.join(" ⊥ ")
}

pub fn witt(w: &WittClass) -> String {
    let f = w.field();
    let entries: Vec<String> = w.anisotropic.entries().iter().map(|e| f.show(e)).collect();
    join_form(&entries, &BigUint::from(w.witt_index), &BigUint::zero())
}

/// A canonical representative of the class: the anisotropic part is ⟨1⟩ or
/// ⟨ε⟩ in dimension 1, and ⟨1, −δ⟩ with δ a nonsquare in dimension 2.
pub fn class(c: &IsometryClass) -> String {
    let f = PrimeField::new(c.p(), 1).expect("class over a prime field");
    let eps = f.smallest_nonsquare();
    let entries: Vec<u64> = match c.anisotropic_dim() {
        0 => vec![],
        1 => vec![if c.anisotropic_det_is_square() { 1 } else { eps }],
        _ => {
            // ⟨1, c⟩ is anisotropic iff −c is a nonsquare
            let minus_one_square = f.is_square(&f.from_i64(-1));
            vec![1, if minus_one_square { eps } else { 1 }]
        }
    };
    let shown: Vec<String> = entries.iter().map(|e| f.show(e)).collect();
    join_form(&shown, &c.witt_index(), c.radical_dim())
}

/// Gram matrix as a table; zero entries are left blank.
pub fn matrix<F: JsonField>(form: &QuadForm<F>, labels: &[String]) -> String {
    let f = form.field();
    let d = form.dim();
    let cells: Vec<Vec<String>> = (0..d)
        .map(|i| (0..d).map(|j| if f.is_zero(form.entry(i, j)) { String::new() } else { f.show(form.entry(i, j)) }).collect())
        .collect();
    let label_w = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let mut widths: Vec<usize> = labels.iter().map(|l| l.chars().count()).collect();
    widths.resize(d, 1);
    for row in &cells {
        for (j, c) in row.iter().enumerate() {
            widths[j] = widths[j].max(c.chars().count());
        }
    }
    let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w - s.chars().count()));
    let mut out = String::new();
    out.push_str(&pad("", label_w));
    for (j, w) in widths.iter().enumerate() {
        out.push_str(" | ");
        out.push_str(&pad(labels.get(j).map_or("", String::as_str), *w));
    }
    out.push('\n');
    for (i, row) in cells.iter().enumerate() {
        out.push_str(&pad(labels.get(i).map_or("", String::as_str), label_w));
        for (j, c) in row.iter().enumerate() {
            out.push_str(" | ");
            out.push_str(&pad(c, widths[j]));
        }
        out.push('\n');
    }
    out
}

pub fn report(r: &VerifyReport) -> String {
    let mut out = format!("{}: {} pass, {} fail (seed {})", r.prop, r.pass, r.fail, r.seed);
    if let Some(ms) = r.elapsed_ms {
        out.push_str(&format!(" in {ms} ms"));
    }
    out.push('\n');
    for i in r.failures() {
        out.push_str(&format!("  FAIL {}: {}\n", i.key, i.witness.as_deref().unwrap_or("")));
    }
    out
}
