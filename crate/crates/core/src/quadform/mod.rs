//! Symmetric bilinear forms given by Gram matrices, their diagonal
//! presentations, and Witt classification over prime fields.

mod class;
mod diagonalize;
mod witt;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fields::{Field, FieldCtx, PrimeField};
use crate::linalg::{self, Matrix};

pub use class::IsometryClass;
pub use diagonalize::{diagonal_entries, diagonalize, Diagonalization};
pub use witt::{
    is_isometric, witt_decompose, witt_decompose_classified, witt_decompose_constructive, WittClass,
    CONSTRUCTIVE_PRIME_LIMIT,
};

/// A symmetric bilinear form φ(u, v) = uᵀ·G·v on Kᵈ.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadForm<F: Field> {
    field: F,
    dim: usize,
    gram: Vec<F::Elem>,
}

/// ⟨a₁, …, a_r⟩ ⊥ (radical_dim)×⟨0⟩ with every aᵢ nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagForm<F: Field> {
    field: F,
    entries: Vec<F::Elem>,
    radical_dim: usize,
}

impl<F: Field> QuadForm<F> {
    /// Checks length, membership and exact symmetry.
    pub fn new(field: F, dim: usize, gram: Vec<F::Elem>) -> Result<Self> {
        if gram.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: gram.len() });
        }
        if gram.iter().any(|e| !field.contains(e)) {
            return Err(Error::ContextMismatch);
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                if gram[i * dim + j] != gram[j * dim + i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(QuadForm { field, dim, gram })
    }

    /// Trusted constructor for Gram matrices built symmetric by construction.
    pub(crate) fn from_parts(field: F, dim: usize, gram: Vec<F::Elem>) -> Self {
        debug_assert_eq!(gram.len(), dim * dim);
        QuadForm { field, dim, gram }
    }

    pub fn from_matrix(field: F, m: Matrix<F::Elem>) -> Result<Self> {
        let dim = m.dim();
        Self::new(field, dim, m.into_vec())
    }

    /// The zero form on the zero space.
    pub fn zero_space(field: F) -> Self {
        QuadForm { field, dim: 0, gram: Vec::new() }
    }

    pub fn diag(field: F, entries: &[F::Elem]) -> Result<Self> {
        if entries.iter().any(|e| !field.contains(e)) {
            return Err(Error::ContextMismatch);
        }
        let d = entries.len();
        let mut gram = vec![field.zero(); d * d];
        for (i, e) in entries.iter().enumerate() {
            gram[i * d + i] = e.clone();
        }
        Ok(QuadForm { field, dim: d, gram })
    }

    /// h×H presented as ⟨1, −1, 1, −1, …⟩.
    pub fn hyperbolic(field: F, h: usize) -> Self {
        let one = field.one();
        let minus = field.neg(&one);
        let entries: Vec<F::Elem> =
            (0..2 * h).map(|i| if i % 2 == 0 { one.clone() } else { minus.clone() }).collect();
        Self::diag(field, &entries).expect("constants belong to the field")
    }

    /// The hyperbolic plane as [[0, c], [c, 0]].
    pub fn hyperbolic_pair(field: F, c: F::Elem) -> Self {
        let z = field.zero();
        QuadForm { dim: 2, gram: vec![z.clone(), c.clone(), c, z], field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &F::Elem {
        &self.gram[i * self.dim + j]
    }

    pub fn gram(&self) -> &[F::Elem] {
        &self.gram
    }

    pub fn into_gram(self) -> Vec<F::Elem> {
        self.gram
    }

    pub fn matrix(&self) -> Matrix<F::Elem> {
        Matrix::from_vec(self.dim, self.gram.clone())
    }

    /// φ(u, v) for coordinate vectors.
    pub fn eval(&self, u: &[F::Elem], v: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for i in 0..self.dim {
            if f.is_zero(&u[i]) {
                continue;
            }
            let mut row = f.zero();
            for j in 0..self.dim {
                if !f.is_zero(&v[j]) {
                    row = f.add(&row, &f.mul(self.entry(i, j), &v[j]));
                }
            }
            acc = f.add(&acc, &f.mul(&u[i], &row));
        }
        acc
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// φ ⊥ ψ: block-diagonal Gram matrix.
    pub fn orth_sum(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let d = self.dim + other.dim;
        let mut gram = vec![self.field.zero(); d * d];
        for i in 0..self.dim {
            for j in 0..self.dim {
                gram[i * d + j] = self.entry(i, j).clone();
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                gram[(self.dim + i) * d + self.dim + j] = other.entry(i, j).clone();
            }
        }
        Ok(QuadForm { field: self.field.clone(), dim: d, gram })
    }

    /// ⟨c⟩φ.
    pub fn scale(&self, c: &F::Elem) -> Result<Self> {
        if !self.field.contains(c) {
            return Err(Error::ContextMismatch);
        }
        if self.field.is_zero(c) {
            return Err(Error::ZeroScalar);
        }
        let gram = self.gram.iter().map(|g| self.field.mul(c, g)).collect();
        Ok(QuadForm { field: self.field.clone(), dim: self.dim, gram })
    }

    /// φ ⊗ ψ: Kronecker product of the Gram matrices.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let (m, n) = (self.dim, other.dim);
        let d = m * n;
        let mut gram = vec![self.field.zero(); d * d];
        for i in 0..m {
            for j in 0..m {
                let a = self.entry(i, j);
                if self.field.is_zero(a) {
                    continue;
                }
                for k in 0..n {
                    for l in 0..n {
                        gram[(i * n + k) * d + j * n + l] = self.field.mul(a, other.entry(k, l));
                    }
                }
            }
        }
        Ok(QuadForm { field: self.field.clone(), dim: d, gram })
    }

    /// m×φ.
    pub fn multiple(&self, m: usize) -> Self {
        (0..m).fold(Self::zero_space(self.field.clone()), |acc, _| {
            acc.orth_sum(self).expect("same field")
        })
    }

    /// P·G·Pᵀ, i.e. the form in the basis given by the rows of P.
    pub fn congruent(&self, p: &Matrix<F::Elem>) -> Result<Self> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: p.dim() });
        }
        let g = self.matrix();
        let out = p.mul(&self.field, &g).mul(&self.field, &p.transpose());
        Ok(QuadForm { field: self.field.clone(), dim: self.dim, gram: out.into_vec() })
    }

    /// Reorders the basis: new basis vector i is old basis vector `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.dim];
        if order.len() != self.dim || order.iter().any(|&i| i >= self.dim || core::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidInput("not a permutation of the basis".into()));
        }
        let d = self.dim;
        let mut gram = Vec::with_capacity(d * d);
        for &i in order {
            for &j in order {
                gram.push(self.entry(i, j).clone());
            }
        }
        Ok(QuadForm { field: self.field.clone(), dim: d, gram })
    }

    /// det of the Gram matrix; 1 for the zero space.
    pub fn determinant(&self) -> F::Elem {
        linalg::det(&self.field, &self.gram, self.dim)
    }

    /// (−1)^(d(d−1)/2)·det.
    pub fn disc(&self) -> F::Elem {
        signed_discriminant(&self.field, self.dim, self.determinant())
    }

    /// Whether the given index pairs exhibit an orthogonal sum of hyperbolic
    /// planes: each pair has zero diagonal and nonzero pairing, and nothing
    /// else in the pairs' rows and columns is nonzero.
    pub fn hyperbolic_certificate(&self, pairing: &[(usize, usize)]) -> Result<bool> {
        let mut owner: Vec<Option<usize>> = vec![None; self.dim];
        for (k, &(i, j)) in pairing.iter().enumerate() {
            if i >= self.dim || j >= self.dim {
                return Err(Error::BadPairing(format!("index out of range in ({i}, {j})")));
            }
            if i == j {
                return Err(Error::BadPairing(format!("pair ({i}, {j}) repeats an index")));
            }
            for idx in [i, j] {
                if owner[idx].replace(k).is_some() {
                    return Err(Error::BadPairing(format!("index {idx} appears twice")));
                }
            }
        }
        let f = &self.field;
        for &(i, j) in pairing {
            if !f.is_zero(self.entry(i, i)) || !f.is_zero(self.entry(j, j)) || f.is_zero(self.entry(i, j)) {
                return Ok(false);
            }
            for idx in [i, j] {
                for other in 0..self.dim {
                    if other != i && other != j && !f.is_zero(self.entry(idx, other)) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

pub(crate) fn signed_discriminant<F: Field>(field: &F, dim: usize, det: F::Elem) -> F::Elem {
    if (dim * dim.saturating_sub(1) / 2) % 2 == 1 {
        field.neg(&det)
    } else {
        det
    }
}

impl QuadForm<FieldCtx> {
    /// Re-expresses a runtime-context form over its prime field.
    pub fn to_prime(&self) -> Result<QuadForm<PrimeField>> {
        let f = self.field.prime_field()?.clone();
        let gram = self
            .gram
            .iter()
            .map(|e| e.as_prime().ok_or(Error::ContextMismatch))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuadForm { field: f, dim: self.dim, gram })
    }
}

impl QuadForm<PrimeField> {
    pub fn to_ctx(&self) -> QuadForm<FieldCtx> {
        let ctx = FieldCtx::Prime(self.field.clone());
        let gram = self.gram.iter().map(|&v| ctx.wrap_prime(v)).collect();
        QuadForm { field: ctx, dim: self.dim, gram }
    }
}

impl<F: Field> DiagForm<F> {
    pub fn new(field: F, entries: Vec<F::Elem>, radical_dim: usize) -> Result<Self> {
        if entries.iter().any(|e| !field.contains(e)) {
            return Err(Error::ContextMismatch);
        }
        if entries.iter().any(|e| field.is_zero(e)) {
            return Err(Error::InvalidInput("diagonal entries must be nonzero".into()));
        }
        Ok(DiagForm { field, entries, radical_dim })
    }

    pub(crate) fn from_parts(field: F, entries: Vec<F::Elem>, radical_dim: usize) -> Self {
        DiagForm { field, entries, radical_dim }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.entries
    }

    pub fn radical_dim(&self) -> usize {
        self.radical_dim
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn dim(&self) -> usize {
        self.entries.len() + self.radical_dim
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical_dim == 0
    }

    /// Product of the nonzero entries.
    pub fn regular_determinant(&self) -> F::Elem {
        self.entries.iter().fold(self.field.one(), |acc, e| self.field.mul(&acc, e))
    }

    /// Gram matrix: entries, then the radical as zero rows.
    pub fn to_quadform(&self) -> QuadForm<F> {
        let mut all = self.entries.clone();
        all.extend(core::iter::repeat(self.field.zero()).take(self.radical_dim));
        let d = all.len();
        let mut gram = vec![self.field.zero(); d * d];
        for (i, e) in all.into_iter().enumerate() {
            gram[i * d + i] = e;
        }
        QuadForm { field: self.field.clone(), dim: d, gram }
    }
}
