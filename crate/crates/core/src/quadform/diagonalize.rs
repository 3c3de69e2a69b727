//! Symmetric congruence reduction P·G·Pᵀ = diag(a₁, …, a_r, 0, …, 0).
//!
//! Pivot rule: the smallest-index active basis vector with nonzero diagonal
//! value; failing that, the lexicographically smallest active pair (i, j)
//! with G[i][j] ≠ 0, after the substitution uᵢ ← uᵢ + uⱼ (which makes the
//! diagonal value 2·G[i][j], nonzero in characteristic ≠ 2). Elimination
//! touches only rows with a nonzero entry in the pivot column, so sparse
//! Gram matrices such as trace forms and their exterior powers reduce in
//! roughly quadratic time.

use alloc::vec;
use alloc::vec::Vec;

use crate::fields::Field;
use crate::linalg::Matrix;

use super::{DiagForm, QuadForm};

/// A diagonal presentation together with the change of basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagonalization<F: Field> {
    pub form: DiagForm<F>,
    /// Rows are the new basis vectors: pivots in order, then the radical.
    pub basis: Matrix<F::Elem>,
}

struct Reduction<E> {
    entries: Vec<E>,
    pivots: Vec<usize>,
    radical: Vec<usize>,
    basis: Option<Vec<E>>,
}

fn reduce<F: Field>(field: &F, dim: usize, mut g: Vec<F::Elem>, track_basis: bool) -> Reduction<F::Elem> {
    let d = dim;
    let mut basis = track_basis.then(|| Matrix::identity(field, d).into_vec());
    let mut active = vec![true; d];
    let mut entries = Vec::new();
    let mut pivots = Vec::new();
    let mut radical = Vec::new();
    let mut nz: Vec<usize> = Vec::new();

    loop {
        let mut pivot = (0..d).find(|&i| active[i] && !field.is_zero(&g[i * d + i]));
        if pivot.is_none() {
            // No usable diagonal entry: look for an off-diagonal pair,
            // retiring rows that vanish on the active block.
            let mut pair = None;
            for i in 0..d {
                if !active[i] {
                    continue;
                }
                match (0..d).find(|&j| j != i && active[j] && !field.is_zero(&g[i * d + j])) {
                    Some(j) => {
                        pair = Some((i, j));
                        break;
                    }
                    None => {
                        active[i] = false;
                        radical.push(i);
                    }
                }
            }
            let Some((i, j)) = pair else { break };
            // uᵢ ← uᵢ + uⱼ
            let gii = g[i * d + i].clone();
            let gij = g[i * d + j].clone();
            let gjj = g[j * d + j].clone();
            let new_ii = field.add(&field.add(&gii, &field.add(&gij, &gij)), &gjj);
            for k in 0..d {
                if k == i || !active[k] {
                    continue;
                }
                let v = field.add(&g[i * d + k], &g[j * d + k]);
                g[k * d + i] = v.clone();
                g[i * d + k] = v;
            }
            g[i * d + i] = new_ii;
            if let Some(p) = basis.as_mut() {
                for c in 0..d {
                    let v = field.add(&p[i * d + c], &p[j * d + c]);
                    p[i * d + c] = v;
                }
            }
            pivot = Some(i);
        }
        let t = pivot.expect("pivot chosen above");
        let c = g[t * d + t].clone();
        let c_inv = field.inv(&c).expect("pivot is nonzero");
        nz.clear();
        nz.extend((0..d).filter(|&j| j != t && active[j] && !field.is_zero(&g[t * d + j])));
        for &i in &nz {
            let f = field.mul(&g[i * d + t], &c_inv);
            for &j in &nz {
                let delta = field.mul(&f, &g[t * d + j]);
                g[i * d + j] = field.sub(&g[i * d + j], &delta);
            }
            if let Some(p) = basis.as_mut() {
                for col in 0..d {
                    if !field.is_zero(&p[t * d + col]) {
                        let delta = field.mul(&f, &p[t * d + col]);
                        p[i * d + col] = field.sub(&p[i * d + col], &delta);
                    }
                }
            }
        }
        for &j in &nz {
            g[t * d + j] = field.zero();
            g[j * d + t] = field.zero();
        }
        active[t] = false;
        entries.push(c);
        pivots.push(t);
    }
    radical.extend((0..d).filter(|&i| active[i]));

    Reduction { entries, pivots, radical, basis }
}

/// Diagonalizes φ and returns the change of basis P with P·G·Pᵀ diagonal.
pub fn diagonalize<F: Field>(form: &QuadForm<F>) -> Diagonalization<F> {
    let field = form.field().clone();
    let d = form.dim();
    let red = reduce(&field, d, form.gram().to_vec(), true);
    let old = red.basis.expect("basis tracked");
    let order: Vec<usize> = red.pivots.iter().chain(&red.radical).copied().collect();
    let basis = Matrix::from_fn(d, |r, c| old[order[r] * d + c].clone());
    let radical_dim = red.radical.len();
    Diagonalization { form: DiagForm::from_parts(field, red.entries, radical_dim), basis }
}

/// Diagonal presentation without tracking the change of basis.
pub fn diagonal_entries<F: Field>(form: &QuadForm<F>) -> DiagForm<F> {
    let field = form.field().clone();
    let red = reduce(&field, form.dim(), form.gram().to_vec(), false);
    DiagForm::from_parts(field, red.entries, red.radical.len())
}

impl<F: Field> QuadForm<F> {
    /// Consuming variant of [`diagonal_entries`]; avoids copying large Grams.
    pub fn into_diagonal(self) -> DiagForm<F> {
        let field = self.field().clone();
        let d = self.dim();
        let red = reduce(&field, d, self.into_gram(), false);
        DiagForm::from_parts(field, red.entries, red.radical.len())
    }
}
