//! Exterior powers Λᵏφ of symmetric bilinear forms.
//!
//! Λᵏφ(x₁∧…∧x_k, y₁∧…∧y_k) = det(φ(xᵢ, yⱼ)), on the basis of k-fold wedges of
//! basis vectors indexed by strictly increasing k-tuples in lexicographic
//! order. Λ⁰φ = ⟨1⟩ and Λᵏφ is the zero form on the zero space for k > dim φ.

mod binomial;

pub use binomial::{
    binomial, binomial_identities_check, binomial_signed, binomial_value, non_negative, scaled_binomial,
    BigBinomial, BinomialReport, IdentityFailure,
};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::descriptor::{FormDescriptor, HypCount, Monomial, Term};
use crate::error::{Error, Result};
use crate::fields::{Field, PrimeField};
use crate::linalg;
use crate::quadform::{DiagForm, IsometryClass, QuadForm};

/// Largest C(m, k) the brute-force kernel accepts by default.
pub const DEFAULT_BRUTE_BUDGET: u128 = 5000;

/// Largest C(m, k) for which the diagonal fast path lists every entry.
pub const DIAGONAL_ENTRY_LIMIT: u128 = 1 << 24;

/// Strictly increasing k-tuples over [0, m) in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetBasis {
    m: usize,
    k: usize,
    flat: Vec<usize>,
}

impl SubsetBasis {
    pub fn new(m: usize, k: usize) -> Self {
        let mut flat = Vec::new();
        if k <= m {
            let mut cur: Vec<usize> = (0..k).collect();
            loop {
                flat.extend_from_slice(&cur);
                // rightmost position that can still move
                let Some(pos) = (0..k).rev().find(|&i| cur[i] < m - k + i) else { break };
                cur[pos] += 1;
                for i in pos + 1..k {
                    cur[i] = cur[i - 1] + 1;
                }
            }
        }
        SubsetBasis { m, k, flat }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        if self.k > self.m {
            0
        } else {
            // the empty subset is the only 0-subset
            self.flat.len().checked_div(self.k).unwrap_or(1)
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> &[usize] {
        &self.flat[i * self.k..(i + 1) * self.k]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    pub fn index_of(&self, subset: &[usize]) -> Option<usize> {
        if subset.len() != self.k {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(subset) {
                core::cmp::Ordering::Equal => return Some(mid),
                core::cmp::Ordering::Less => lo = mid + 1,
                core::cmp::Ordering::Greater => hi = mid,
            }
        }
        None
    }
}

fn dim_of_power(m: usize, k: usize) -> u128 {
    binomial_value(m as u64, k as u64).to_u128().unwrap_or(u128::MAX)
}

/// Brute-force Λᵏφ with the default size budget.
pub fn exterior_power_bruteforce<F: Field>(phi: &QuadForm<F>, k: usize) -> Result<QuadForm<F>> {
    exterior_power_bruteforce_with_budget(phi, k, DEFAULT_BRUTE_BUDGET)
}

/// Λᵏφ from k×k minors of the Gram matrix. Refuses when C(m, k) > budget.
pub fn exterior_power_bruteforce_with_budget<F: Field>(phi: &QuadForm<F>, k: usize, budget: u128) -> Result<QuadForm<F>> {
    let field = phi.field().clone();
    let m = phi.dim();
    if k == 0 {
        return QuadForm::diag(field.clone(), &[field.one()]);
    }
    if k > m {
        return Ok(QuadForm::zero_space(field));
    }
    let size = dim_of_power(m, k);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let basis = SubsetBasis::new(m, k);
    let n = basis.len();
    let mut gram = vec![field.zero(); n * n];
    fill_upper(&field, phi.gram(), m, &basis, &mut gram)?;
    for i in 0..n {
        for j in i + 1..n {
            gram[j * n + i] = gram[i * n + j].clone();
        }
    }
    Ok(QuadForm::from_parts(field, n, gram))
}

#[cfg(feature = "parallel")]
fn fill_upper<F: Field>(field: &F, g: &[F::Elem], m: usize, basis: &SubsetBasis, out: &mut [F::Elem]) -> Result<()> {
    use rayon::prelude::*;
    let n = basis.len();
    out.par_chunks_mut(n).enumerate().try_for_each(|(i, row)| fill_row(field, g, m, basis, i, row))
}

#[cfg(not(feature = "parallel"))]
fn fill_upper<F: Field>(field: &F, g: &[F::Elem], m: usize, basis: &SubsetBasis, out: &mut [F::Elem]) -> Result<()> {
    let n = basis.len();
    out.chunks_mut(n).enumerate().try_for_each(|(i, row)| fill_row(field, g, m, basis, i, row))
}

/// Entries (I, J) for J ≥ I of one row of Λᵏ.
fn fill_row<F: Field>(
    field: &F,
    g: &[F::Elem],
    m: usize,
    basis: &SubsetBasis,
    i: usize,
    row: &mut [F::Elem],
) -> Result<()> {
    let k = basis.k();
    let rows = basis.get(i);
    let mut block = Vec::with_capacity(k * k);
    for j in i..basis.len() {
        let cols = basis.get(j);
        // A zero row or column of the minor kills it; Gram matrices of trace
        // forms have a single nonzero per row, so almost every minor exits here.
        let zero_row = rows.iter().any(|&r| cols.iter().all(|&c| field.is_zero(&g[r * m + c])));
        if zero_row || cols.iter().any(|&c| rows.iter().all(|&r| field.is_zero(&g[r * m + c]))) {
            continue;
        }
        block.clear();
        for &r in rows {
            for &c in cols {
                block.push(g[r * m + c].clone());
            }
        }
        row[j] = minor(field, &block, k)?;
    }
    Ok(())
}

/// At k = 5, where the two determinant routines meet, both run and must agree.
fn minor<F: Field>(field: &F, block: &[F::Elem], k: usize) -> Result<F::Elem> {
    if k == 5 {
        let c = linalg::det_cofactor(field, block, k);
        let b = linalg::det_bareiss(field, block, k);
        if c != b {
            return Err(Error::PathDisagreement(format!("5×5 minor: cofactor {c:?}, Bareiss {b:?}")));
        }
        return Ok(c);
    }
    Ok(linalg::det(field, block, k))
}

fn check_diagonal_input<F: Field>(d: &DiagForm<F>) -> Result<()> {
    if !d.is_nondegenerate() {
        return Err(Error::DegenerateInput);
    }
    Ok(())
}

/// Λᵏ⟨a₁,…,a_m⟩ = ⊥ ⟨a_{i₁}⋯a_{i_k}⟩ over k-subsets in lexicographic order.
pub fn exterior_power_diagonal<F: Field>(d: &DiagForm<F>, k: usize) -> Result<DiagForm<F>> {
    check_diagonal_input(d)?;
    let field = d.field().clone();
    let m = d.rank();
    let size = dim_of_power(m, k);
    if size > DIAGONAL_ENTRY_LIMIT {
        return Err(Error::BudgetExceeded { size, budget: DIAGONAL_ENTRY_LIMIT });
    }
    let basis = SubsetBasis::new(m, k);
    let a = d.entries();
    let entries: Vec<F::Elem> = basis
        .iter()
        .map(|s| s.iter().fold(field.one(), |acc, &i| field.mul(&acc, &a[i])))
        .collect();
    DiagForm::new(field, entries, 0)
}

/// Isometry class of Λᵏ of a regular diagonal form over GF(p) without listing
/// entries: with s square and t nonsquare entries, the nonsquare entries of Λᵏ
/// number Σ_{j odd} C(t, j)·C(s, k−j).
pub fn exterior_class_diagonal(d: &DiagForm<PrimeField>, k: usize) -> Result<IsometryClass> {
    check_diagonal_input(d)?;
    let f = d.field();
    let t = d.entries().iter().filter(|e| !f.is_square(e)).count() as u64;
    let s = d.rank() as u64 - t;
    let rank = binomial_value(s + t, k as u64);
    let mut nonsquares = BigUint::zero();
    for j in (1..=t.min(k as u64)).step_by(2) {
        nonsquares += binomial_value(t, j) * binomial_signed(s, k as i64 - j as i64);
    }
    Ok(IsometryClass::regular(f.p(), rank, nonsquares.is_even()))
}

/// Class of Λᵏφ for a regular form over GF(p), via diagonalization.
pub fn exterior_class(phi: &QuadForm<PrimeField>, k: usize) -> Result<IsometryClass> {
    exterior_class_diagonal(&crate::quadform::diagonal_entries(phi), k)
}

/// ⊥_{i+j=k} Λⁱφ ⊗ Λʲψ, each piece by brute force.
pub fn exterior_sum_expand<F: Field>(phi: &QuadForm<F>, psi: &QuadForm<F>, k: usize) -> Result<QuadForm<F>> {
    if phi.field() != psi.field() {
        return Err(Error::ContextMismatch);
    }
    let mut acc = QuadForm::zero_space(phi.field().clone());
    for i in 0..=k.min(phi.dim()) {
        let j = k - i;
        if j > psi.dim() {
            continue;
        }
        let piece = exterior_power_bruteforce(phi, i)?.tensor(&exterior_power_bruteforce(psi, j)?)?;
        acc = acc.orth_sum(&piece)?;
    }
    Ok(acc)
}

/// Λᵏ(h×H): ½C(2h, k)×H for odd k, and for k = 2ℓ
/// C(h, ℓ)×⟨(−1)^ℓ⟩ ⊥ ½(C(2h, 2ℓ) − C(h, ℓ))×H.
pub fn hyperbolic_exterior_closed_form(h: u64, k: u64) -> Result<FormDescriptor> {
    if k > 2 * h {
        return Err(Error::OutOfRange(format!("k = {k} exceeds 2h = {}", 2 * h)));
    }
    let total = binomial_value(2 * h, k);
    if k % 2 == 1 {
        let (half, rem) = total.div_rem(&BigUint::from(2u32));
        if !rem.is_zero() {
            return Err(Error::BadHypCount(format!("C({}, {k}) is odd", 2 * h)));
        }
        return Ok(FormDescriptor::hyperbolic(half));
    }
    let l = k / 2;
    let mult = binomial_value(h, l);
    let d = FormDescriptor::new(vec![Term::new(mult, Monomial::sign_power(l))], HypCount::Fill);
    d.resolve(&total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform::{diagonal_entries, is_isometric};

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p, 1).unwrap()
    }

    #[test]
    fn subset_basis_is_lexicographic() {
        let b = SubsetBasis::new(4, 2);
        let all: Vec<Vec<usize>> = b.iter().map(|s| s.to_vec()).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        for m in 0..9 {
            for kk in 0..=m + 1 {
                let b = SubsetBasis::new(m, kk);
                assert_eq!(b.len() as u128, dim_of_power(m, kk));
                for i in 0..b.len() {
                    assert!(b.get(i).windows(2).all(|w| w[0] < w[1]));
                    assert_eq!(b.index_of(b.get(i)), Some(i));
                    if i > 0 {
                        assert!(b.get(i - 1) < b.get(i));
                    }
                }
            }
        }
    }

    #[test]
    fn edge_grades() {
        let f = QuadForm::diag(k(7), &[2, 3, 5]).unwrap();
        let l0 = exterior_power_bruteforce(&f, 0).unwrap();
        assert_eq!(l0.gram(), &[1]);
        assert_eq!(exterior_power_bruteforce(&f, 1).unwrap(), f);
        assert_eq!(exterior_power_bruteforce(&f, 4).unwrap().dim(), 0);
        assert_eq!(exterior_power_bruteforce(&f, 99).unwrap().dim(), 0);
        // Λ³⟨a,b,c⟩ = ⟨abc⟩
        assert_eq!(exterior_power_bruteforce(&f, 3).unwrap().gram(), &[30 % 7]);
    }

    #[test]
    fn second_power_of_diagonal() {
        let f = QuadForm::diag(k(13), &[2, 3, 5]).unwrap();
        let l2 = exterior_power_bruteforce(&f, 2).unwrap();
        assert_eq!(l2, QuadForm::diag(k(13), &[6, 10, 15 % 13]).unwrap());
        let d = exterior_power_diagonal(&diagonal_entries(&f), 2).unwrap();
        assert_eq!(d.entries(), &[6, 10, 2]);
    }

    #[test]
    fn second_power_of_plane_is_minus_c_squared() {
        let field = k(7);
        for c in 1..7u64 {
            let h = QuadForm::hyperbolic_pair(field.clone(), c);
            let l2 = exterior_power_bruteforce(&h, 2).unwrap();
            assert_eq!(l2.gram(), &[field.neg(&field.mul(&c, &c))]);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f = QuadForm::hyperbolic(k(7), 8);
        assert_eq!(
            exterior_power_bruteforce(&f, 8).unwrap_err(),
            Error::BudgetExceeded { size: 12870, budget: DEFAULT_BRUTE_BUDGET }
        );
        assert!(exterior_power_bruteforce_with_budget(&f, 2, 120).is_ok());
        assert!(exterior_power_bruteforce_with_budget(&f, 2, 119).is_err());
    }

    #[test]
    fn diagonal_path_examples() {
        let field = k(11);
        let ones = DiagForm::new(field.clone(), vec![1; 5], 0).unwrap();
        let minus = DiagForm::new(field.clone(), vec![10; 5], 0).unwrap();
        for kk in 0..=6 {
            let l = exterior_power_diagonal(&ones, kk).unwrap();
            assert!(l.entries().iter().all(|&e| e == 1));
            assert_eq!(l.dim() as u128, dim_of_power(5, kk));
            let l = exterior_power_diagonal(&minus, kk).unwrap();
            let sign = if kk % 2 == 0 { 1 } else { 10 };
            assert!(l.entries().iter().all(|&e| e == sign));
        }
        let degenerate = DiagForm::new(field, vec![1, 2], 1).unwrap();
        assert_eq!(exterior_power_diagonal(&degenerate, 1).unwrap_err(), Error::DegenerateInput);
        assert_eq!(exterior_class_diagonal(&degenerate, 1).unwrap_err(), Error::DegenerateInput);
    }

    #[test]
    fn class_count_matches_listed_entries() {
        for p in [5u64, 7, 13] {
            let field = k(p);
            let ns = field.smallest_nonsquare();
            for mask in 0u32..(1 << 6) {
                let entries: Vec<u64> = (0..6).map(|i| if mask >> i & 1 == 1 { ns } else { 1 }).collect();
                let d = DiagForm::new(field.clone(), entries, 0).unwrap();
                for kk in 0..=7 {
                    let listed = IsometryClass::of_diag(&exterior_power_diagonal(&d, kk).unwrap());
                    assert_eq!(exterior_class_diagonal(&d, kk).unwrap(), listed);
                }
            }
        }
    }

    #[test]
    fn bruteforce_agrees_with_diagonal_path() {
        for p in [5u64, 7, 13] {
            let field = k(p);
            let ns = field.smallest_nonsquare();
            for dim in 0..=5usize {
                for mask in 0u32..(1 << dim) {
                    let entries: Vec<u64> = (0..dim).map(|i| if mask >> i & 1 == 1 { ns } else { 1 }).collect();
                    let f = QuadForm::diag(field.clone(), &entries).unwrap();
                    for kk in 0..=dim {
                        let brute = exterior_power_bruteforce(&f, kk).unwrap();
                        let fast = exterior_power_diagonal(&diagonal_entries(&f), kk).unwrap().to_quadform();
                        assert!(is_isometric(&brute, &fast).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn bareiss_cross_check_runs_at_grade_five() {
        let field = k(13);
        let entries: Vec<u64> = (1..=7).collect();
        let mut f = QuadForm::diag(field.clone(), &entries).unwrap().into_gram();
        // couple neighbouring coordinates so the 5×5 minors are not diagonal
        for i in 0..6 {
            f[i * 7 + i + 1] = 1;
            f[(i + 1) * 7 + i] = 1;
        }
        let f = QuadForm::new(field, 7, f).unwrap();
        let l5 = exterior_power_bruteforce(&f, 5).unwrap();
        assert_eq!(l5.dim(), 21);
        assert_eq!(exterior_class(&f, 5).unwrap(), IsometryClass::of_form(&l5));
    }

    #[test]
    fn closed_forms_for_hyperbolic_powers() {
        assert_eq!(hyperbolic_exterior_closed_form(1, 1).unwrap().to_string(), "1×H");
        assert_eq!(hyperbolic_exterior_closed_form(1, 2).unwrap().to_string(), "⟨−1⟩ ⊥ 0×H");
        assert_eq!(hyperbolic_exterior_closed_form(4, 2).unwrap().to_string(), "4×⟨−1⟩ ⊥ 12×H");
        assert!(matches!(hyperbolic_exterior_closed_form(2, 5), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn sum_expansion_for_two_planes() {
        let field = k(7);
        let h = QuadForm::hyperbolic_pair(field.clone(), 1);
        let lhs = exterior_power_bruteforce(&h.orth_sum(&h).unwrap(), 2).unwrap();
        let rhs = exterior_sum_expand(&h, &h, 2).unwrap();
        assert_eq!(lhs.dim(), 6);
        assert!(is_isometric(&lhs, &rhs).unwrap());
        // Λ²(2×H) = 2×⟨−1⟩ ⊥ 2×H
        let closed = hyperbolic_exterior_closed_form(2, 2).unwrap();
        let s = crate::descriptor::Substitution { n: 1, a: 1, b: 1 };
        assert_eq!(IsometryClass::of_form(&lhs), closed.class_over(&field, s, None).unwrap());
        assert_eq!(exterior_sum_expand(&h, &h, 5).unwrap().dim(), 0);
        let other = QuadForm::hyperbolic_pair(k(5), 1);
        assert_eq!(exterior_sum_expand(&h, &other, 1).unwrap_err(), Error::ContextMismatch);
    }
}
