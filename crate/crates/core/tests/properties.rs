use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use symtrace_core::exterior::{exterior_power_bruteforce, exterior_power_diagonal};
use symtrace_core::fields::{CycloElem, Cyclotomic, Field, PrimeField};
use symtrace_core::linalg::{self, Matrix};
use symtrace_core::quadform::{
    diagonal_entries, is_isometric, witt_decompose, witt_decompose_classified, witt_decompose_constructive,
    IsometryClass, QuadForm,
};

const PRIMES: [u64; 6] = [3, 5, 7, 13, 10_007, 1_000_003];

fn gf() -> impl Strategy<Value = PrimeField> {
    prop::sample::select(&PRIMES[..]).prop_map(|p| PrimeField::new(p, 1).unwrap())
}

fn gf_triple() -> impl Strategy<Value = (PrimeField, u64, u64, u64)> {
    gf().prop_flat_map(|f| {
        let p = f.p();
        (Just(f), 0..p, 0..p, 0..p)
    })
}

fn cyclo_elem(q: Cyclotomic) -> impl Strategy<Value = CycloElem> {
    let d = q.degree();
    prop::collection::vec((-12i64..=12, 1i64..=5), d).prop_map(move |cs| {
        q.from_reduced(cs.into_iter().map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b))).collect())
            .unwrap()
    })
}

fn cyclo_triple() -> impl Strategy<Value = (Cyclotomic, CycloElem, CycloElem, CycloElem)> {
    prop::sample::select(vec![3u64, 4, 5, 7, 8, 12]).prop_flat_map(|n| {
        let q = Cyclotomic::new(n).unwrap();
        (Just(q.clone()), cyclo_elem(q.clone()), cyclo_elem(q.clone()), cyclo_elem(q))
    })
}

fn field_laws<F: Field>(f: &F, x: &F::Elem, y: &F::Elem, z: &F::Elem) -> Result<(), TestCaseError> {
    prop_assert_eq!(f.mul(&f.mul(x, y), z), f.mul(x, &f.mul(y, z)));
    prop_assert_eq!(f.add(&f.add(x, y), z), f.add(x, &f.add(y, z)));
    prop_assert_eq!(f.mul(x, &f.add(y, z)), f.add(&f.mul(x, y), &f.mul(x, z)));
    prop_assert_eq!(f.mul(x, y), f.mul(y, x));
    prop_assert!(f.is_zero(&f.add(x, &f.neg(x))));
    match f.inv(x) {
        Some(inv) => prop_assert!(f.is_one(&f.mul(x, &inv))),
        None => prop_assert!(f.is_zero(x)),
    }
    Ok(())
}

/// Symmetric d×d Gram with entries biased toward zero, so degenerate forms show up.
fn symmetric_form(f: PrimeField, d: usize, raw: Vec<u64>) -> QuadForm<PrimeField> {
    let p = f.p();
    let mut g = vec![0u64; d * d];
    let mut it = raw.into_iter();
    for i in 0..d {
        for j in i..d {
            let r = it.next().unwrap_or(0);
            let v = if r % 3 == 0 { 0 } else { r % p };
            g[i * d + j] = v;
            g[j * d + i] = v;
        }
    }
    QuadForm::new(f, d, g).unwrap()
}

fn form_strategy(max_dim: usize, primes: &'static [u64]) -> impl Strategy<Value = QuadForm<PrimeField>> {
    (prop::sample::select(primes), 0..=max_dim, prop::collection::vec(any::<u64>(), max_dim * max_dim))
        .prop_map(|(p, d, raw)| symmetric_form(PrimeField::new(p, 1).unwrap(), d, raw))
}

fn regular(form: QuadForm<PrimeField>) -> Option<QuadForm<PrimeField>> {
    (diagonal_entries(&form).radical_dim() == 0).then_some(form)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn prime_field_laws((f, x, y, z) in gf_triple()) {
        field_laws(&f, &x, &y, &z)?;
    }

    #[test]
    fn cyclotomic_field_laws((q, x, y, z) in cyclo_triple()) {
        field_laws(&q, &x, &y, &z)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn witt_paths_agree(form in form_strategy(6, &[3, 5, 7, 11, 13, 101])) {
        let diag = diagonal_entries(&form);
        let classified = witt_decompose_classified(&diag);
        let constructed = witt_decompose_constructive(&diag).unwrap();
        prop_assert!(classified.same_class(&constructed));
        prop_assert_eq!(classified.rank, diag.rank());
        prop_assert_eq!(2 * classified.witt_index + classified.anisotropic.rank(), classified.rank);
        prop_assert!(witt_decompose(&form).is_ok());
    }

    #[test]
    fn diagonalization_is_a_congruence(form in form_strategy(6, &[5, 7, 13])) {
        let d = diagonal_entries(&form);
        prop_assert_eq!(d.dim(), form.dim());
        prop_assert_eq!(d.rank(), linalg::rank(form.field(), &form.matrix()));
        prop_assert!(is_isometric(&form, &d.to_quadform()).unwrap());
    }

    #[test]
    fn witt_cancellation(
        phi in form_strategy(3, &[5, 7, 13]),
        psi in form_strategy(3, &[5, 7, 13]),
        chi in form_strategy(3, &[5, 7, 13]),
    ) {
        let (Some(phi), Some(psi), Some(chi)) = (regular(phi), regular(psi), regular(chi)) else {
            return Ok(());
        };
        // bring all three over one field
        let f = phi.field().clone();
        let lift = |g: &QuadForm<PrimeField>| QuadForm::new(f.clone(), g.dim(), g.gram().iter().map(|v| v % f.p()).collect()).unwrap();
        let (psi, chi) = (lift(&psi), lift(&chi));
        let (Some(psi), Some(chi)) = (regular(psi), regular(chi)) else { return Ok(()) };
        let lhs = is_isometric(&phi.orth_sum(&psi).unwrap(), &phi.orth_sum(&chi).unwrap()).unwrap();
        prop_assert_eq!(lhs, is_isometric(&psi, &chi).unwrap());
    }

    #[test]
    fn exterior_class_is_basis_independent(
        form in form_strategy(4, &[5, 7, 13]),
        raw in prop::collection::vec(any::<u64>(), 16),
    ) {
        let f = form.field().clone();
        let d = form.dim();
        let mut it = raw.into_iter();
        let mut p = Matrix::from_fn(d, |_, _| it.next().unwrap() % f.p());
        if linalg::rank(&f, &p) < d {
            p = Matrix::identity(&f, d);
        }
        let moved = form.congruent(&p).unwrap();
        for k in 0..=d {
            let a = exterior_power_bruteforce(&form, k).unwrap();
            let b = exterior_power_bruteforce(&moved, k).unwrap();
            prop_assert!(is_isometric(&a, &b).unwrap(), "k = {}", k);
            if diagonal_entries(&form).radical_dim() == 0 {
                let c = exterior_power_diagonal(&diagonal_entries(&form), k).unwrap();
                prop_assert_eq!(IsometryClass::of_form(&a), IsometryClass::of_diag(&c));
            }
        }
    }
}
