mod common;

use birkhoff::roots::rational_roots;
use birkhoff::{Field, Matrix, QLaurentMatrix, QLaurentPoly, QMatrix, Rat};
use common::*;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = QLaurentPoly> {
    prop::collection::vec((-3i64..=3, -5i64..=5, 1i64..=3), 0..5)
        .prop_map(|terms| terms.into_iter().fold(QLaurentPoly::zero(), |acc, (e, n, d)| acc + QLaurentPoly::monomial(q(n, d), e)))
}

fn rational() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn rat_matrix(n: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(rational(), n * n).prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

fn laurent_matrix(n: usize) -> impl Strategy<Value = QLaurentMatrix> {
    prop::collection::vec(laurent(), n * n).prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &QLaurentPoly::one(), a);
    }

    #[test]
    fn orders_and_degrees_add(a in laurent(), b in laurent()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let p = &a * &b;
        prop_assert_eq!(p.ord(), Some(a.ord().unwrap() + b.ord().unwrap()));
        prop_assert_eq!(p.deg(), Some(a.deg().unwrap() + b.deg().unwrap()));
    }

    #[test]
    fn exact_division_undoes_multiplication(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b), Some(a));
    }

    #[test]
    fn laurent_determinant_is_multiplicative(a in laurent_matrix(2), b in laurent_matrix(2)) {
        prop_assert_eq!((&a * &b).det(), &a.det() * &b.det());
        prop_assert_eq!(a.det(), a.det_cofactor());
    }

    #[test]
    fn laurent_determinant_three(a in laurent_matrix(3)) {
        prop_assert_eq!(a.det(), a.det_cofactor());
    }

    #[test]
    fn rational_inverse_round_trip(m in rat_matrix(3)) {
        match m.inverse() {
            Some(inv) => {
                prop_assert!((&m * &inv).is_identity());
                prop_assert_eq!(m.det() * inv.det(), Rat::one());
            }
            None => prop_assert!(m.det().is_zero()),
        }
    }

    #[test]
    fn nullspace_is_kernel(m in prop::collection::vec(rational(), 12)) {
        let m = Matrix::from_fn(3, 4, |i, j| m[i * 4 + j].clone());
        let kernel = m.nullspace();
        prop_assert_eq!(kernel.len() + m.rank(), 4);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn charpoly_annihilates(m in rat_matrix(3)) {
        // Cayley-Hamilton, evaluated with matrix powers.
        let chi = m.charpoly();
        let mut acc = QMatrix::zeros(3, 3);
        let mut power = QMatrix::identity(3);
        for e in 0..=3 {
            acc = &acc + &power.scale(&chi.coeff(e));
            power = &power * &m;
        }
        prop_assert!(acc.is_zero());
        prop_assert_eq!(-chi.coeff(2), m.trace());
    }

    #[test]
    fn rational_roots_recover_planted(roots in prop::collection::vec(rational(), 1..5), lead in rational()) {
        prop_assume!(!lead.is_zero());
        let p = roots.iter().fold(QLaurentPoly::constant(lead), |acc, r| &acc * &QLaurentPoly::from_terms([(1, Rat::one()), (0, -r.clone())]));
        let mut expected: Vec<(Rat, usize)> = Vec::new();
        let mut sorted = roots.clone();
        sorted.sort();
        for r in sorted {
            match expected.last_mut() {
                Some((last, m)) if *last == r => *m += 1,
                _ => expected.push((r, 1)),
            }
        }
        prop_assert_eq!(rational_roots(&p), expected);
    }

    #[test]
    fn laurent_inverse_of_unimodular(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (a, _) = planted_factorization(&mut rng);
        let inv = a.laurent_inverse().unwrap();
        prop_assert!((&a * &inv).is_identity());
        prop_assert!(a.det().as_unit().is_some());
    }
}

#[test]
fn field_generic_over_machine_rationals() {
    use num_rational::Ratio;
    let m = Matrix::from_fn(3, 3, |i, j| Ratio::<i64>::from_int((i * 3 + j) as i64 % 5 + (i == j) as i64));
    let inv = m.inverse().unwrap();
    assert!((&m * &inv).is_identity());
}
