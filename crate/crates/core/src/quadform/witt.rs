//! Witt decomposition φ ≃ φ_an ⊥ i×H over GF(p), computed two independent
//! ways: by splitting off hyperbolic planes around explicitly found
//! isotropic vectors, and by the finite-field classification from rank and
//! discriminant.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fields::{Field, PrimeField};
use crate::linalg::{self, Matrix};

use super::{diagonal_entries, DiagForm, QuadForm};

/// Isotropic-vector enumeration is only attempted up to this characteristic.
pub const CONSTRUCTIVE_PRIME_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct WittClass {
    pub rank: usize,
    pub witt_index: usize,
    /// Dimension at most 2.
    pub anisotropic: DiagForm<PrimeField>,
    /// Square class of the signed discriminant of the regular part.
    pub disc_is_square: bool,
}

impl WittClass {
    pub fn field(&self) -> &PrimeField {
        self.anisotropic.field()
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.anisotropic.rank() == 0
    }

    fn anisotropic_det_is_square(&self) -> bool {
        self.field().is_square(&self.anisotropic.regular_determinant())
    }

    /// Agreement on rank, Witt index and anisotropic determinant class.
    pub fn same_class(&self, other: &WittClass) -> bool {
        self.field() == other.field()
            && self.rank == other.rank
            && self.witt_index == other.witt_index
            && self.anisotropic.rank() == other.anisotropic.rank()
            && self.anisotropic_det_is_square() == other.anisotropic_det_is_square()
    }
}

fn disc_square(field: &PrimeField, rank: usize, det: u64) -> bool {
    field.is_square(&super::signed_discriminant(field, rank, det))
}

/// Classification path: a regular form of rank r over GF(p) has Witt index
/// ⌊r/2⌋ when r is odd; for r = 2m it is m if (−1)^m·det is a square and
/// m − 1 otherwise. The anisotropic part is the canonical representative
/// ⟨c⟩ or ⟨1, δ⟩ of the forced determinant class.
pub fn witt_decompose_classified(diag: &DiagForm<PrimeField>) -> WittClass {
    let field = diag.field().clone();
    let r = diag.rank();
    let det = diag.regular_determinant();
    let disc_is_square = disc_square(&field, r, det);
    let minus_one = field.from_i64(-1);
    let canonical = |class_of: u64| -> u64 {
        if field.is_square(&class_of) {
            1
        } else {
            field.smallest_nonsquare()
        }
    };
    let (witt_index, anisotropic) = if r % 2 == 1 {
        let i = r / 2;
        // det = (−1)^i · a
        let a = field.mul(&det, &field.pow(&minus_one, i as i64).expect("unit"));
        (i, vec![canonical(a)])
    } else if disc_is_square {
        (r / 2, Vec::new())
    } else {
        let i = r / 2 - 1;
        let delta = field.mul(&det, &field.pow(&minus_one, i as i64).expect("unit"));
        (i, vec![1, canonical(delta)])
    };
    WittClass {
        rank: r,
        witt_index,
        anisotropic: DiagForm::from_parts(field, anisotropic, 0),
        disc_is_square,
    }
}

/// First nonzero isotropic vector of ⟨a, b, c⟩ (or ⟨a, b⟩) in lexicographic
/// order with the leading coordinate normalized to 1.
fn find_isotropic(field: &PrimeField, diag: &[u64]) -> Option<Vec<u64>> {
    let p = field.p();
    let value = |v: &[u64]| -> u64 {
        diag.iter().zip(v).fold(0, |acc, (a, x)| field.add(&acc, &field.mul(a, &field.mul(x, x))))
    };
    let sqrt_small = |target: u64| -> Option<u64> { field.sqrt_by_search(target) };
    match diag.len() {
        2 => {
            // a + b·y² = 0
            let target = field.mul(&field.neg(&diag[0]), &field.inv(&diag[1])?);
            if field.is_square(&target) {
                let y = sqrt_small(target)?;
                return Some(vec![1, y]);
            }
            None
        }
        3 => {
            let c_inv = field.inv(&diag[2])?;
            for y in 0..p {
                let partial = field.add(&diag[0], &field.mul(&diag[1], &field.mul(&y, &y)));
                let target = field.mul(&field.neg(&partial), &c_inv);
                if field.is_square(&target) {
                    let z = sqrt_small(target)?;
                    let v = vec![1, y, z];
                    debug_assert_eq!(value(&v), 0);
                    return Some(v);
                }
            }
            // Leading coordinate zero: ⟨b, c⟩ on (0, 1, z).
            find_isotropic(field, &diag[1..]).map(|w| [&[0][..], &w].concat())
        }
        _ => None,
    }
}

/// Splits a hyperbolic plane off ⟨a, b, c⟩ and returns the complementary
/// diagonal value.
fn split_ternary(field: &PrimeField, diag: [u64; 3], iso: &[u64]) -> Result<u64> {
    let form = QuadForm::diag(field.clone(), &diag)?;
    let k = (0..3)
        .find(|&i| iso[i] != 0)
        .ok_or_else(|| Error::PathDisagreement("zero isotropic vector".into()))?;
    // Complement of span(v, e_k): B(u, v) = 0 and B(u, e_k) = 0.
    let mut rows = vec![0u64; 9];
    for j in 0..3 {
        rows[j] = field.mul(&diag[j], &iso[j]);
    }
    rows[3 + k] = diag[k];
    let u = linalg::kernel_vector(field, &Matrix::from_vec(3, rows))
        .ok_or_else(|| Error::PathDisagreement("hyperbolic plane has no complement".into()))?;
    let d = form.eval(&u, &u);
    if d == 0 {
        return Err(Error::PathDisagreement("complement of hyperbolic plane is degenerate".into()));
    }
    Ok(d)
}

/// Constructive path: repeatedly locate an isotropic vector among the first
/// (at most three) remaining diagonal entries and split off a hyperbolic
/// plane. Requires p ≤ [`CONSTRUCTIVE_PRIME_LIMIT`].
pub fn witt_decompose_constructive(diag: &DiagForm<PrimeField>) -> Result<WittClass> {
    let field = diag.field().clone();
    if field.p() > CONSTRUCTIVE_PRIME_LIMIT {
        return Err(Error::OutOfRange(format!(
            "isotropic-vector search needs p ≤ {CONSTRUCTIVE_PRIME_LIMIT}"
        )));
    }
    let entries = diag.entries();
    let mut witt_index = 0;
    let mut carry: Option<u64> = None;
    let mut next = 0;
    let mut remaining = entries.len();
    while remaining >= 3 {
        let mut take = [0u64; 3];
        let mut filled = 0;
        if let Some(c) = carry.take() {
            take[0] = c;
            filled = 1;
        }
        while filled < 3 {
            take[filled] = entries[next];
            next += 1;
            filled += 1;
        }
        let iso = find_isotropic(&field, &take)
            .ok_or_else(|| Error::PathDisagreement("ternary form without isotropic vector".into()))?;
        carry = Some(split_ternary(&field, take, &iso)?);
        witt_index += 1;
        remaining -= 2;
    }
    let mut rest: Vec<u64> = carry.into_iter().collect();
    rest.extend_from_slice(&entries[next..]);
    if rest.len() == 2 && find_isotropic(&field, &rest).is_some() {
        witt_index += 1;
        rest.clear();
    }
    let r = diag.rank();
    Ok(WittClass {
        rank: r,
        witt_index,
        anisotropic: DiagForm::from_parts(field.clone(), rest, 0),
        disc_is_square: disc_square(&field, r, diag.regular_determinant()),
    })
}

/// Witt decomposition of φ over GF(p). Both paths run when p is small
/// enough for enumeration, and must agree.
pub fn witt_decompose(form: &QuadForm<PrimeField>) -> Result<WittClass> {
    let diag = diagonal_entries(form);
    let classified = witt_decompose_classified(&diag);
    if form.field().p() <= CONSTRUCTIVE_PRIME_LIMIT {
        let constructed = witt_decompose_constructive(&diag)?;
        if !constructed.same_class(&classified) {
            return Err(Error::PathDisagreement(format!(
                "constructive {constructed:?} vs classified {classified:?}"
            )));
        }
        return Ok(constructed);
    }
    Ok(classified)
}

/// Isometry over GF(p): equal dimension, radical, rank and determinant class
/// of the regular part, cross-checked against the Witt decompositions.
pub fn is_isometric(a: &QuadForm<PrimeField>, b: &QuadForm<PrimeField>) -> Result<bool> {
    if a.field() != b.field() {
        return Err(Error::ContextMismatch);
    }
    let f = a.field();
    let da = diagonal_entries(a);
    let db = diagonal_entries(b);
    let by_invariants = a.dim() == b.dim()
        && da.radical_dim() == db.radical_dim()
        && da.rank() == db.rank()
        && f.is_square(&da.regular_determinant()) == f.is_square(&db.regular_determinant());
    if da.rank() == db.rank() && da.radical_dim() == db.radical_dim() {
        let (wa, wb) = if f.p() <= CONSTRUCTIVE_PRIME_LIMIT {
            (witt_decompose_constructive(&da)?, witt_decompose_constructive(&db)?)
        } else {
            (witt_decompose_classified(&da), witt_decompose_classified(&db))
        };
        if wa.same_class(&wb) != by_invariants {
            return Err(Error::PathDisagreement(format!(
                "invariants say {by_invariants}, witt decompositions {wa:?} / {wb:?}"
            )));
        }
    }
    Ok(by_invariants)
}
