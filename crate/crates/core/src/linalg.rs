//! Dense exact linear algebra over a [`Field`]: determinants (cofactor and
//! fraction-free elimination), products, inverses and kernels.

use alloc::vec;
use alloc::vec::Vec;

use crate::fields::Field;

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<E> {
    dim: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(dim: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), dim * dim, "matrix data has wrong length");
        Matrix { dim, data }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Matrix { dim, data }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { field.one() } else { field.zero() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.dim + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn as_slice(&self) -> &[E] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<E> {
        self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).clone())
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = vec![field.zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..d {
                    let b = other.get(k, j);
                    if !field.is_zero(b) {
                        out[i * d + j] = field.add(&out[i * d + j], &field.mul(a, b));
                    }
                }
            }
        }
        Matrix { dim: d, data: out }
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        (0..self.dim)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
            })
            .collect()
    }

    pub fn trace<F: Field<Elem = E>>(&self, field: &F) -> E {
        (0..self.dim).fold(field.zero(), |acc, i| field.add(&acc, self.get(i, i)))
    }

    pub fn is_symmetric(&self) -> Option<(usize, usize)>
    where
        E: PartialEq,
    {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                if self.get(i, j) != self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Determinant by Laplace expansion along the first row. Intended for k ≤ 4.
pub fn det_cofactor<F: Field>(field: &F, m: &[F::Elem], k: usize) -> F::Elem {
    match k {
        0 => field.one(),
        1 => m[0].clone(),
        2 => field.sub(&field.mul(&m[0], &m[3]), &field.mul(&m[1], &m[2])),
        _ => {
            let mut acc = field.zero();
            let mut minor = Vec::with_capacity((k - 1) * (k - 1));
            for c in 0..k {
                if field.is_zero(&m[c]) {
                    continue;
                }
                minor.clear();
                for r in 1..k {
                    for cc in 0..k {
                        if cc != c {
                            minor.push(m[r * k + cc].clone());
                        }
                    }
                }
                let term = field.mul(&m[c], &det_cofactor(field, &minor, k - 1));
                acc = if c % 2 == 0 { field.add(&acc, &term) } else { field.sub(&acc, &term) };
            }
            acc
        }
    }
}

/// Bareiss fraction-free elimination. Every division is exact, so the same
/// code runs over any integral domain; over a field it is simply exact.
pub fn det_bareiss<F: Field>(field: &F, m: &[F::Elem], k: usize) -> F::Elem {
    if k == 0 {
        return field.one();
    }
    let mut a = m.to_vec();
    let mut prev = field.one();
    let mut negate = false;
    for piv in 0..k - 1 {
        if field.is_zero(&a[piv * k + piv]) {
            match (piv + 1..k).find(|&r| !field.is_zero(&a[r * k + piv])) {
                Some(r) => {
                    for c in 0..k {
                        a.swap(piv * k + c, r * k + c);
                    }
                    negate = !negate;
                }
                None => return field.zero(),
            }
        }
        let prev_inv = field.inv(&prev).expect("Bareiss pivots are nonzero");
        for i in piv + 1..k {
            for j in piv + 1..k {
                let t = field.sub(
                    &field.mul(&a[i * k + j], &a[piv * k + piv]),
                    &field.mul(&a[i * k + piv], &a[piv * k + j]),
                );
                a[i * k + j] = field.mul(&t, &prev_inv);
            }
        }
        prev = a[piv * k + piv].clone();
    }
    let d = a[k * k - 1].clone();
    if negate {
        field.neg(&d)
    } else {
        d
    }
}

/// Determinant of a k×k row-major block: cofactor expansion below 5,
/// fraction-free elimination from 5 on.
pub fn det<F: Field>(field: &F, m: &[F::Elem], k: usize) -> F::Elem {
    if k <= 4 {
        det_cofactor(field, m, k)
    } else {
        det_bareiss(field, m, k)
    }
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref<F: Field>(field: &F, a: &mut [F::Elem], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !field.is_zero(&a[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(&a[r * cols + c]).expect("pivot is nonzero");
        for j in 0..cols {
            a[r * cols + j] = field.mul(&a[r * cols + j], &inv);
        }
        for i in 0..rows {
            if i != r && !field.is_zero(&a[i * cols + c]) {
                let f = a[i * cols + c].clone();
                for j in 0..cols {
                    let t = field.mul(&f, &a[r * cols + j]);
                    a[i * cols + j] = field.sub(&a[i * cols + j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A nonzero vector `v` with `M·v = 0`, if `M` is singular.
pub fn kernel_vector<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Option<Vec<F::Elem>> {
    let d = m.dim();
    let mut a = m.as_slice().to_vec();
    let pivots = rref(field, &mut a, d, d);
    let free = (0..d).find(|c| !pivots.contains(c))?;
    let mut v = vec![field.zero(); d];
    v[free] = field.one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = field.neg(&a[r * d + free]);
    }
    Some(v)
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let d = m.dim();
    let mut a = m.as_slice().to_vec();
    rref(field, &mut a, d, d).len()
}

pub fn inverse<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let d = m.dim();
    let cols = 2 * d;
    let mut a = Vec::with_capacity(d * cols);
    for i in 0..d {
        a.extend_from_slice(m.row(i));
        a.extend((0..d).map(|j| if i == j { field.one() } else { field.zero() }));
    }
    let pivots = rref(field, &mut a, d, cols);
    if pivots.len() < d || pivots[d - 1] >= d {
        return None;
    }
    Some(Matrix::from_fn(d, |i, j| a[i * cols + d + j].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::PrimeField;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bareiss_matches_cofactor() {
        let k = PrimeField::new(10007, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for size in 0..=5 {
            for _ in 0..50 {
                let m: Vec<u64> = (0..size * size).map(|_| rng.gen_range(0..10007)).collect();
                assert_eq!(det_bareiss(&k, &m, size), det_cofactor(&k, &m, size), "k = {size}");
            }
        }
    }

    #[test]
    fn singular_matrices() {
        let k = PrimeField::new(7, 1).unwrap();
        let m = Matrix::from_vec(3, vec![1, 2, 3, 2, 4, 6, 0, 1, 1]);
        assert_eq!(det(&k, m.as_slice(), 3), 0);
        assert_eq!(rank(&k, &m), 2);
        let v = kernel_vector(&k, &m).unwrap();
        assert!(v.iter().any(|x| *x != 0));
        assert!(m.mul_vec(&k, &v).iter().all(|x| *x == 0));
        assert!(inverse(&k, &m).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let k = PrimeField::new(13, 1).unwrap();
        let m = Matrix::from_vec(3, vec![2, 1, 0, 0, 1, 5, 7, 0, 1]);
        let inv = inverse(&k, &m).unwrap();
        assert_eq!(m.mul(&k, &inv), Matrix::identity(&k, 3));
    }
}
