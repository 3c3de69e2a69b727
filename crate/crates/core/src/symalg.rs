//! Symbol algebras (a, b; n, K, ω): the K-algebra on x, y with xⁿ = a,
//! yⁿ = b and yx = ωxy, stored over the monomial basis xⁱyʲ in row-major
//! order (index i·n + j).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::error::{Error, Result};
use crate::fields::{Field, PrimeField};
use crate::linalg::{self, Matrix};
use crate::quadform::{witt_decompose, QuadForm};

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

/// The paper-order basis {1, x, x², y, y², xy, x²y², x²y, xy²} for n = 3,
/// as row-major indices.
pub const PAIRED_ORDER_N3: [usize; 9] = [0, 3, 6, 1, 2, 4, 8, 7, 5];

#[derive(Debug, Clone)]
pub struct SymbolAlgebra<F: Field> {
    id: u64,
    field: F,
    n: usize,
    a: F::Elem,
    b: F::Elem,
    omega: F::Elem,
    /// products[(u·n² + v)] = (coefficient, index) of basis_u · basis_v.
    products: Vec<(F::Elem, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgElem<F: Field> {
    algebra: u64,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> AlgElem<F> {
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }
}

/// Outcome of checking u² = a, v² = b, vu = −uv for u = x^{n/2}, v = y^{n/2}.
#[derive(Debug, Clone, PartialEq)]
pub struct QuaternionRelations<F: Field> {
    pub u: AlgElem<F>,
    pub v: AlgElem<F>,
    pub u_squared_is_a: bool,
    pub v_squared_is_b: bool,
    /// c with vu = c·uv; the quaternion relation needs c = −1.
    pub commutation_sign: F::Elem,
    pub anticommute: bool,
}

impl<F: Field> QuaternionRelations<F> {
    pub fn holds(&self) -> bool {
        self.u_squared_is_a && self.v_squared_is_b && self.anticommute
    }
}

impl<F: Field> SymbolAlgebra<F> {
    /// Validates n ≥ 2, a, b ≠ 0, characteristic ∤ n and that ω has order
    /// exactly n, then checks the defining relations on the basis.
    pub fn new(field: F, n: usize, a: F::Elem, b: F::Elem, omega: F::Elem) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("degree must be at least 2, got {n}")));
        }
        for e in [&a, &b, &omega] {
            if !field.contains(e) {
                return Err(Error::ContextMismatch);
            }
        }
        let ch = field.characteristic();
        if ch == 2 || (ch != 0 && n as u64 % ch == 0) {
            return Err(Error::BadCharacteristic { p: ch, n: n as u64 });
        }
        if field.is_zero(&a) || field.is_zero(&b) {
            return Err(Error::ZeroParameter);
        }
        if field.order_of(&omega, n as u64) != Some(n as u64) {
            return Err(Error::InvalidInput(format!("ω is not a primitive {n}-th root of unity")));
        }
        let mut alg = SymbolAlgebra {
            id: NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed),
            field,
            n,
            a,
            b,
            omega,
            products: Vec::new(),
        };
        alg.products = alg.product_table();
        alg.check_relations()?;
        Ok(alg)
    }

    /// Uses the field's deterministic ω raised to `omega_power` (coprime to n).
    pub fn with_omega_power(field: F, n: usize, a: F::Elem, b: F::Elem, omega_power: u64) -> Result<Self> {
        if arith::gcd(omega_power, n as u64) != 1 {
            return Err(Error::InvalidInput(format!("ω^{omega_power} is not primitive for n = {n}")));
        }
        let base = field.root_of_unity(n as u64).ok_or(Error::NoRootOfUnity { order: n as u64 })?;
        let omega = field.pow(&base, omega_power as i64).expect("unit");
        Self::new(field, n, a, b, omega)
    }

    pub fn with_default_omega(field: F, n: usize, a: F::Elem, b: F::Elem) -> Result<Self> {
        Self::with_omega_power(field, n, a, b, 1)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// n².
    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    pub fn a(&self) -> &F::Elem {
        &self.a
    }

    pub fn b(&self) -> &F::Elem {
        &self.b
    }

    pub fn omega(&self) -> &F::Elem {
        &self.omega
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    /// (i, j) of the basis monomial at a row-major index.
    pub fn exponents(&self, idx: usize) -> (usize, usize) {
        (idx / self.n, idx % self.n)
    }

    pub fn monomial_label(&self, idx: usize) -> String {
        let (i, j) = self.exponents(idx);
        let part = |sym: char, e: usize| match e {
            0 => String::new(),
            1 => String::from(sym),
            _ => format!("{sym}^{e}"),
        };
        let s = format!("{}{}", part('x', i), part('y', j));
        if s.is_empty() {
            String::from("1")
        } else {
            s
        }
    }

    /// (xⁱyʲ)(xᵏyˡ) = ω^(jk)·a^⌊(i+k)/n⌋·b^⌊(j+l)/n⌋ · x^((i+k) mod n) y^((j+l) mod n).
    pub fn mono_mul(&self, i: usize, j: usize, k: usize, l: usize) -> (F::Elem, (usize, usize)) {
        let n = self.n;
        assert!(i < n && j < n && k < n && l < n, "monomial exponent out of range");
        let f = &self.field;
        let mut c = f.pow(&self.omega, ((j * k) % n) as i64).expect("unit");
        if i + k >= n {
            c = f.mul(&c, &self.a);
        }
        if j + l >= n {
            c = f.mul(&c, &self.b);
        }
        (c, ((i + k) % n, (j + l) % n))
    }

    fn product_table(&self) -> Vec<(F::Elem, usize)> {
        let d = self.dim();
        let mut t = Vec::with_capacity(d * d);
        for u in 0..d {
            let (i, j) = self.exponents(u);
            for v in 0..d {
                let (k, l) = self.exponents(v);
                let (c, (r, s)) = self.mono_mul(i, j, k, l);
                t.push((c, self.index(r, s)));
            }
        }
        t
    }

    #[inline]
    fn basis_product(&self, u: usize, v: usize) -> &(F::Elem, usize) {
        &self.products[u * self.dim() + v]
    }

    fn check_relations(&self) -> Result<()> {
        let n = self.n;
        let x = self.monomial(1, 0);
        let y = self.monomial(0, 1);
        let xn = self.power(&x, n);
        let yn = self.power(&y, n);
        let yx = self.multiply(&y, &x)?;
        let xy = self.multiply(&x, &y)?;
        if xn != self.scalar(self.a.clone())
            || yn != self.scalar(self.b.clone())
            || yx != self.scale(&self.omega, &xy)
        {
            return Err(Error::InvalidInput("defining relations fail on the monomial basis".into()));
        }
        Ok(())
    }

    pub fn element(&self, coeffs: Vec<F::Elem>) -> Result<AlgElem<F>> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: coeffs.len() });
        }
        if coeffs.iter().any(|c| !self.field.contains(c)) {
            return Err(Error::ContextMismatch);
        }
        Ok(AlgElem { algebra: self.id, coeffs })
    }

    pub fn zero(&self) -> AlgElem<F> {
        AlgElem { algebra: self.id, coeffs: vec![self.field.zero(); self.dim()] }
    }

    pub fn scalar(&self, c: F::Elem) -> AlgElem<F> {
        let mut z = self.zero();
        z.coeffs[0] = c;
        z
    }

    pub fn one(&self) -> AlgElem<F> {
        self.scalar(self.field.one())
    }

    pub fn monomial(&self, i: usize, j: usize) -> AlgElem<F> {
        let mut z = self.zero();
        z.coeffs[self.index(i % self.n, j % self.n)] = self.field.one();
        z
    }

    pub fn basis_element(&self, idx: usize) -> AlgElem<F> {
        let (i, j) = self.exponents(idx);
        self.monomial(i, j)
    }

    fn owns(&self, z: &AlgElem<F>) -> Result<()> {
        if z.algebra == self.id {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, u: &AlgElem<F>, v: &AlgElem<F>) -> Result<AlgElem<F>> {
        self.owns(u)?;
        self.owns(v)?;
        let coeffs = u.coeffs.iter().zip(&v.coeffs).map(|(a, b)| self.field.add(a, b)).collect();
        Ok(AlgElem { algebra: self.id, coeffs })
    }

    pub fn sub(&self, u: &AlgElem<F>, v: &AlgElem<F>) -> Result<AlgElem<F>> {
        self.owns(u)?;
        self.owns(v)?;
        let coeffs = u.coeffs.iter().zip(&v.coeffs).map(|(a, b)| self.field.sub(a, b)).collect();
        Ok(AlgElem { algebra: self.id, coeffs })
    }

    pub fn scale(&self, c: &F::Elem, u: &AlgElem<F>) -> AlgElem<F> {
        AlgElem { algebra: u.algebra, coeffs: u.coeffs.iter().map(|x| self.field.mul(c, x)).collect() }
    }

    pub fn is_zero(&self, u: &AlgElem<F>) -> bool {
        u.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    /// Bilinear extension of [`Self::mono_mul`].
    pub fn multiply(&self, u: &AlgElem<F>, v: &AlgElem<F>) -> Result<AlgElem<F>> {
        self.owns(u)?;
        self.owns(v)?;
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim()];
        for (s, us) in u.coeffs.iter().enumerate() {
            if f.is_zero(us) {
                continue;
            }
            for (t, vt) in v.coeffs.iter().enumerate() {
                if f.is_zero(vt) {
                    continue;
                }
                let (c, target) = self.basis_product(s, t);
                let term = f.mul(&f.mul(us, vt), c);
                out[*target] = f.add(&out[*target], &term);
            }
        }
        Ok(AlgElem { algebra: self.id, coeffs: out })
    }

    pub fn power(&self, u: &AlgElem<F>, e: usize) -> AlgElem<F> {
        (0..e).fold(self.one(), |acc, _| self.multiply(&acc, u).expect("same algebra"))
    }

    /// Left regular representation: column c holds the coordinates of z·basis_c.
    pub fn regular_rep(&self, z: &AlgElem<F>) -> Result<Matrix<F::Elem>> {
        self.owns(z)?;
        let d = self.dim();
        let f = &self.field;
        let mut m = vec![f.zero(); d * d];
        for (s, zs) in z.coeffs.iter().enumerate() {
            if f.is_zero(zs) {
                continue;
            }
            for col in 0..d {
                let (c, row) = self.basis_product(s, col);
                let t = f.mul(zs, c);
                m[row * d + col] = f.add(&m[row * d + col], &t);
            }
        }
        Ok(Matrix::from_vec(d, m))
    }

    /// trace(L_z), summing only the diagonal of the regular representation.
    fn regular_trace(&self, z: &AlgElem<F>) -> F::Elem {
        let f = &self.field;
        let d = self.dim();
        let mut acc = f.zero();
        for (s, zs) in z.coeffs.iter().enumerate() {
            if f.is_zero(zs) {
                continue;
            }
            for col in 0..d {
                let (c, row) = self.basis_product(s, col);
                if *row == col {
                    acc = f.add(&acc, &f.mul(zs, c));
                }
            }
        }
        acc
    }

    /// Trd(z) = trace(L_z)/n.
    pub fn reduced_trace(&self, z: &AlgElem<F>) -> Result<F::Elem> {
        self.owns(z)?;
        let n_inv = self.field.inv(&self.field.from_i64(self.n as i64)).expect("char ∤ n");
        Ok(self.field.mul(&self.regular_trace(z), &n_inv))
    }

    /// Gram matrix of (u, v) ↦ Trd(uv) on the monomial basis, row-major order.
    pub fn trace_form(&self) -> QuadForm<F> {
        let d = self.dim();
        let f = &self.field;
        let basis_trd: Vec<F::Elem> = (0..d)
            .map(|idx| self.reduced_trace(&self.basis_element(idx)).expect("own element"))
            .collect();
        let mut gram = vec![f.zero(); d * d];
        for u in 0..d {
            for v in 0..d {
                let (c, target) = self.basis_product(u, v);
                let t = &basis_trd[*target];
                if !f.is_zero(t) {
                    gram[u * d + v] = f.mul(c, t);
                }
            }
        }
        QuadForm::new(self.field.clone(), d, gram).expect("trace form is symmetric")
    }

    /// u = x^{n/2}, v = y^{n/2} and their relations, for any even n.
    pub fn half_power_relations(&self) -> Result<QuaternionRelations<F>> {
        if self.n % 2 != 0 {
            return Err(Error::InvalidInput(format!("degree {} is odd", self.n)));
        }
        let h = self.n / 2;
        let u = self.monomial(h, 0);
        let v = self.monomial(0, h);
        let uu = self.multiply(&u, &u)?;
        let vv = self.multiply(&v, &v)?;
        let uv = self.multiply(&u, &v)?;
        let vu = self.multiply(&v, &u)?;
        let f = &self.field;
        let idx = self.index(h, h);
        // uv = x^h y^h exactly; read the sign off vu's only coefficient.
        let commutation_sign = f.div(&vu.coeffs[idx], &uv.coeffs[idx]).expect("uv ≠ 0");
        let minus_uv = self.scale(&f.from_i64(-1), &uv);
        Ok(QuaternionRelations {
            u_squared_is_a: uu == self.scalar(self.a.clone()),
            v_squared_is_b: vv == self.scalar(self.b.clone()),
            anticommute: vu == minus_uv,
            commutation_sign,
            u,
            v,
        })
    }

    /// The quaternion algebra (a, b)_K inside S, generated by x^{n/2}, y^{n/2}.
    pub fn quaternion_subalgebra(&self) -> Result<QuaternionRelations<F>> {
        if self.n % 4 != 2 {
            return Err(Error::WrongDegreeMod4(self.n as u64));
        }
        self.half_power_relations()
    }
}

/// ⟨1, −a, −b, ab⟩.
pub fn quaternion_norm_form<F: Field>(field: &F, a: &F::Elem, b: &F::Elem) -> Result<QuadForm<F>> {
    if !field.contains(a) || !field.contains(b) {
        return Err(Error::ContextMismatch);
    }
    if field.is_zero(a) || field.is_zero(b) {
        return Err(Error::ZeroParameter);
    }
    QuadForm::diag(field.clone(), &[field.one(), field.neg(a), field.neg(b), field.mul(a, b)])
}

/// Trace form of the matrix algebra Mₙ(K) on the matrix units E_ij
/// (row-major): Trd(E_ij E_kl) = δ_jk δ_li.
pub fn matrix_algebra_trace_form<F: Field>(field: &F, n: usize) -> Result<QuadForm<F>> {
    let ch = field.characteristic();
    if ch != 0 && n as u64 % ch == 0 {
        return Err(Error::BadCharacteristic { p: ch, n: n as u64 });
    }
    let d = n * n;
    let mut gram = vec![field.zero(); d * d];
    for i in 0..n {
        for j in 0..n {
            // E_ij pairs with E_ji only.
            gram[(i * n + j) * d + j * n + i] = field.one();
        }
    }
    QuadForm::new(field.clone(), d, gram)
}

impl SymbolAlgebra<PrimeField> {
    /// A uniformly random element.
    pub fn random_element(&self, rng: &mut impl Rng) -> AlgElem<PrimeField> {
        let p = self.field.p();
        AlgElem { algebra: self.id, coeffs: (0..self.dim()).map(|_| rng.gen_range(0..p)).collect() }
    }

    /// Randomized search for zero divisors: sample z, test det L_z = 0, and
    /// extract v ≠ 0 from ker L_z so that z·v = 0. `None` after `trials`
    /// misses, which says nothing about S being a division algebra.
    pub fn find_zero_divisor(&self, trials: usize, seed: u64) -> Option<(AlgElem<PrimeField>, AlgElem<PrimeField>)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = &self.field;
        for _ in 0..trials {
            let z = self.random_element(&mut rng);
            if self.is_zero(&z) {
                continue;
            }
            let lz = self.regular_rep(&z).expect("own element");
            if !f.is_zero(&linalg::det_bareiss(f, lz.as_slice(), lz.dim())) {
                continue;
            }
            let v = linalg::kernel_vector(f, &lz)?;
            let v = AlgElem { algebra: self.id, coeffs: v };
            let zv = self.multiply(&z, &v).expect("own elements");
            debug_assert!(self.is_zero(&zv));
            if self.is_zero(&zv) && !self.is_zero(&v) {
                return Some((z, v));
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    NotDivision,
    Division,
    Inconclusive,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::NotDivision => "NotDivision",
            VerdictKind::Division => "Division",
            VerdictKind::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fact {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub facts: Vec<Fact>,
}

/// n ≡ 2 (mod 4) and T hyperbolic ⇒ −1 ∈ K² and S is not a division algebra.
/// The derived fact about −1 is recorded as checked, not assumed.
pub fn division_verdict_prop5(n: usize, trace_form: &QuadForm<PrimeField>) -> Result<Verdict> {
    let degree_ok = n % 4 == 2;
    let hyperbolic = witt_decompose(trace_form)?.is_hyperbolic();
    let mut facts = vec![
        Fact { name: "degree_2_mod_4", holds: degree_ok },
        Fact { name: "trace_form_hyperbolic", holds: hyperbolic },
    ];
    if degree_ok && hyperbolic {
        let f = trace_form.field();
        facts.push(Fact { name: "minus_one_is_square", holds: f.is_square(&f.from_i64(-1)) });
        return Ok(Verdict { kind: VerdictKind::NotDivision, facts });
    }
    Ok(Verdict { kind: VerdictKind::Inconclusive, facts })
}

/// With −1 ∈ K² and n a power of 2: T not hyperbolic ⇒ division algebra.
pub fn division_verdict_prop6(n: usize, trace_form: &QuadForm<PrimeField>) -> Result<Verdict> {
    if !arith::is_power_of_two(n as u64) {
        return Err(Error::HypothesisViolated("degree is not a power of 2"));
    }
    let f = trace_form.field();
    if !f.is_square(&f.from_i64(-1)) {
        return Err(Error::HypothesisViolated("−1 is not a square"));
    }
    let hyperbolic = witt_decompose(trace_form)?.is_hyperbolic();
    let facts = vec![
        Fact { name: "degree_power_of_two", holds: true },
        Fact { name: "minus_one_is_square", holds: true },
        Fact { name: "trace_form_hyperbolic", holds: hyperbolic },
    ];
    let kind = if hyperbolic { VerdictKind::Inconclusive } else { VerdictKind::Division };
    Ok(Verdict { kind, facts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Cyclotomic;
    use crate::quadform::is_isometric;

    fn gf_algebra(p: u64, n: usize, a: u64, b: u64) -> SymbolAlgebra<PrimeField> {
        let k = PrimeField::new(p, n as u64).unwrap();
        SymbolAlgebra::with_default_omega(k, n, a, b).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        let k = PrimeField::new(13, 3).unwrap();
        assert_eq!(SymbolAlgebra::with_default_omega(k.clone(), 3, 0, 1).unwrap_err(), Error::ZeroParameter);
        // 1 is not a primitive cube root of unity.
        assert!(matches!(SymbolAlgebra::new(k.clone(), 3, 1, 1, 1), Err(Error::InvalidInput(_))));
        let k7 = PrimeField::new(7, 3).unwrap();
        assert_eq!(
            SymbolAlgebra::with_default_omega(k7, 4, 1, 1).unwrap_err(),
            Error::NoRootOfUnity { order: 4 }
        );
    }

    #[test]
    fn mono_mul_examples() {
        let s = gf_algebra(13, 3, 2, 5);
        let f = s.field().clone();
        let w = *s.omega();
        assert_eq!(s.mono_mul(0, 1, 1, 0), (w, (1, 1)));
        // y x² = ω² x² y, then x⁴ = a·x and y³ = b.
        let expect = f.mul(&f.mul(&f.mul(&w, &w), &2), &5);
        assert_eq!(s.mono_mul(2, 1, 2, 2), (expect, (1, 0)));
        assert_eq!(s.mono_mul(0, 0, 2, 1), (1, (2, 1)));
    }

    #[test]
    fn multiply_examples() {
        let s = gf_algebra(5, 2, 1, 1);
        let one = s.one();
        let x = s.monomial(1, 0);
        let u = s.add(&one, &x).unwrap();
        let v = s.sub(&one, &x).unwrap();
        assert!(s.is_zero(&s.multiply(&u, &v).unwrap()));
        assert_eq!(s.multiply(&u, &one).unwrap(), u);
        let s3 = gf_algebra(13, 3, 7, 2);
        let x = s3.monomial(1, 0);
        let x2 = s3.monomial(2, 0);
        assert_eq!(s3.multiply(&x, &x2).unwrap(), s3.scalar(7));
    }

    #[test]
    fn foreign_elements_are_rejected() {
        let s = gf_algebra(13, 3, 1, 1);
        let t = gf_algebra(13, 3, 1, 1);
        assert_eq!(s.multiply(&s.one(), &t.one()), Err(Error::AlgebraMismatch));
    }

    #[test]
    fn regular_representation_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, n) in [(7u64, 2usize), (13, 3), (13, 4), (11, 5), (13, 6)] {
            let s = gf_algebra(p, n, 3, 5);
            let f = s.field().clone();
            assert_eq!(s.regular_rep(&s.one()).unwrap(), Matrix::identity(&f, n * n));
            for _ in 0..5 {
                let z = s.random_element(&mut rng);
                let w = s.random_element(&mut rng);
                let lz = s.regular_rep(&z).unwrap();
                let lw = s.regular_rep(&w).unwrap();
                let lzw = s.regular_rep(&s.multiply(&z, &w).unwrap()).unwrap();
                assert_eq!(lz.mul(&f, &lw), lzw);
                assert_eq!(lz.mul_vec(&f, w.coeffs()), s.multiply(&z, &w).unwrap().coeffs);
                let full = f.mul(&lz.trace(&f), &f.inv(&(n as u64)).unwrap());
                assert_eq!(s.reduced_trace(&z).unwrap(), full);
            }
        }
    }

    #[test]
    fn regular_rep_of_generators() {
        let s = gf_algebra(13, 2, 3, 5);
        let f = s.field().clone();
        let lx = s.regular_rep(&s.monomial(1, 0)).unwrap();
        let a_id = Matrix::from_fn(4, |i, j| if i == j { 3 } else { 0 });
        assert_eq!(lx.mul(&f, &lx), a_id);
        let s = gf_algebra(13, 3, 3, 5);
        let f = s.field().clone();
        let lx = s.regular_rep(&s.monomial(1, 0)).unwrap();
        let ly = s.regular_rep(&s.monomial(0, 1)).unwrap();
        let lxy = s.regular_rep(&s.monomial(1, 1)).unwrap();
        assert_eq!(lx.mul(&f, &ly), lxy);
        let w = *s.omega();
        let scaled = Matrix::from_fn(9, |i, j| f.mul(&w, lxy.get(i, j)));
        assert_eq!(ly.mul(&f, &lx), scaled);
    }

    #[test]
    fn reduced_trace_on_monomial_squares() {
        // Trd((xⁱyʲ)²) vanishes except at (0,0), (0,n/2), (n/2,0), (n/2,n/2).
        for n in 2..=6usize {
            let q = Cyclotomic::new(n as u64).unwrap();
            let (a, b) = (q.from_i64(2), q.from_i64(3));
            let s = SymbolAlgebra::with_default_omega(q.clone(), n, a.clone(), b.clone()).unwrap();
            let nn = q.from_i64(n as i64);
            for i in 0..n {
                for j in 0..n {
                    let m = s.monomial(i, j);
                    let t = s.reduced_trace(&s.multiply(&m, &m).unwrap()).unwrap();
                    let h = n / 2;
                    let expect = match (i, j) {
                        (0, 0) => nn.clone(),
                        (0, jj) if n % 2 == 0 && jj == h => q.mul(&nn, &b),
                        (ii, 0) if n % 2 == 0 && ii == h => q.mul(&nn, &a),
                        (ii, jj) if n % 2 == 0 && ii == h && jj == h => {
                            let sign = if h % 2 == 0 { 1 } else { -1 };
                            q.mul(&q.from_i64(sign * n as i64 * 6), &q.one())
                        }
                        _ => q.zero(),
                    };
                    assert_eq!(t, expect, "n={n} (i,j)=({i},{j})");
                }
            }
            assert_eq!(s.reduced_trace(&s.one()).unwrap(), nn);
        }
    }

    #[test]
    fn trace_form_is_symmetric_and_matches_split_form() {
        for (p, n) in [(5u64, 2usize), (7, 3), (13, 4), (11, 5), (13, 6)] {
            let s = gf_algebra(p, n, 2, 3);
            let t = s.trace_form();
            let m = matrix_algebra_trace_form(s.field(), n).unwrap();
            assert_eq!(is_isometric(&t, &m), Ok(true), "p={p} n={n}");
        }
    }

    #[test]
    fn quaternion_subalgebras() {
        let s = gf_algebra(5, 2, 2, 3);
        let rel = s.quaternion_subalgebra().unwrap();
        assert!(rel.holds());
        assert_eq!(rel.u, s.monomial(1, 0));
        assert_eq!(rel.v, s.monomial(0, 1));
        let s = gf_algebra(13, 6, 4, 7);
        assert!(s.quaternion_subalgebra().unwrap().holds());
        let s = gf_algebra(13, 4, 4, 7);
        assert_eq!(s.quaternion_subalgebra().unwrap_err(), Error::WrongDegreeMod4(4));
        let rel = s.half_power_relations().unwrap();
        assert_eq!(rel.commutation_sign, 1);
        assert!(!rel.anticommute);
        assert!(rel.u_squared_is_a && rel.v_squared_is_b);
    }

    #[test]
    fn norm_forms() {
        let k = PrimeField::new(7, 1).unwrap();
        let f = quaternion_norm_form(&k, &1, &1).unwrap();
        assert_eq!(is_isometric(&f, &QuadForm::hyperbolic(k.clone(), 2)), Ok(true));
        assert_eq!(quaternion_norm_form(&k, &0, &1).unwrap_err(), Error::ZeroParameter);
        let f = quaternion_norm_form(&k, &3, &5).unwrap();
        assert_eq!(f.determinant(), k.mul(&k.mul(&3, &3), &k.mul(&5, &5)));
        assert!(witt_decompose(&f).unwrap().witt_index >= 1);
    }

    #[test]
    fn matrix_units() {
        let k = PrimeField::new(7, 1).unwrap();
        let m = matrix_algebra_trace_form(&k, 2).unwrap();
        // E_12 is index 1, E_21 index 2.
        assert_eq!(*m.entry(1, 2), 1);
        assert_eq!(*m.entry(1, 1), 0);
        let expect = QuadForm::diag(k.clone(), &[1, 1]).unwrap().orth_sum(&QuadForm::hyperbolic(k.clone(), 1)).unwrap();
        assert_eq!(is_isometric(&m, &expect), Ok(true));
    }

    #[test]
    fn zero_divisors() {
        let s = gf_algebra(5, 2, 1, 1);
        let (u, v) = s.find_zero_divisor(200, 1).expect("split quaternions have zero divisors");
        assert!(!s.is_zero(&u) && !s.is_zero(&v));
        assert!(s.is_zero(&s.multiply(&u, &v).unwrap()));
        let s = gf_algebra(13, 3, 2, 5);
        let (u, v) = s.find_zero_divisor(500, 9).expect("split over a finite field");
        assert!(s.is_zero(&s.multiply(&u, &v).unwrap()));
        // L_u singular for the returned zero divisor.
        let lu = s.regular_rep(&u).unwrap();
        assert_eq!(linalg::det(s.field(), lu.as_slice(), lu.dim()), 0);
    }

    #[test]
    fn verdicts() {
        let k13 = PrimeField::new(13, 2).unwrap();
        let hyp = QuadForm::hyperbolic(k13.clone(), 2);
        let v = division_verdict_prop5(2, &hyp).unwrap();
        assert_eq!(v.kind, VerdictKind::NotDivision);
        assert!(v.facts.iter().all(|f| f.holds));
        assert_eq!(division_verdict_prop5(4, &hyp).unwrap().kind, VerdictKind::Inconclusive);
        let aniso = QuadForm::diag(k13.clone(), &[1, 2]).unwrap();
        assert_eq!(division_verdict_prop5(2, &aniso).unwrap().kind, VerdictKind::Inconclusive);
        assert_eq!(division_verdict_prop6(2, &aniso).unwrap().kind, VerdictKind::Division);
        assert_eq!(division_verdict_prop6(2, &hyp).unwrap().kind, VerdictKind::Inconclusive);
        assert!(matches!(division_verdict_prop6(3, &hyp), Err(Error::HypothesisViolated(_))));
        let k7 = PrimeField::new(7, 2).unwrap();
        assert!(matches!(
            division_verdict_prop6(2, &QuadForm::hyperbolic(k7, 2)),
            Err(Error::HypothesisViolated(_))
        ));
    }
}
