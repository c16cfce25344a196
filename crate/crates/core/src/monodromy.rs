//! Monodromy representations and the Bolibrukh non-realizability test.
//!
//! A representation is stored as the images `M_1, ..., M_N` of the loops
//! `gamma_1, ..., gamma_N` around the singular points, in that order. The
//! monodromy map is an anti-homomorphism: the loop `gamma_i gamma_j` (first
//! `gamma_i`, then `gamma_j`) maps to `M_j M_i`.
//!
//! The criterion: if `M_1 ... M_N = I`, the representation is reducible,
//! every `M_i` has a single eigenvalue `mu_i` and a single Jordan block, and
//! `prod mu_i != 1`, then no Fuchsian system with these monodromies exists
//! (for `n >= 4`).

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::{LaurentPoly, Matrix};

/// Coordinate subspaces are searched exhaustively up to this dimension.
const WITNESS_SEARCH_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct MonodromyRep<F> {
    dim: usize,
    matrices: Vec<Matrix<F>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JordanProfile<F> {
    pub single_eigenvalue: Option<F>,
    pub single_block: bool,
}

/// Why the criterion does not apply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inapplicable {
    DimensionBelowFour,
    ProductNotIdentity,
    Irreducible,
    NotSingleBlock { index: usize },
    EigenvalueProductIsOne,
}

impl fmt::Display for Inapplicable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inapplicable::DimensionBelowFour => f.write_str("the criterion needs dimension at least 4"),
            Inapplicable::ProductNotIdentity => f.write_str("the product of the matrices is not the identity"),
            Inapplicable::Irreducible => f.write_str("the representation is irreducible"),
            Inapplicable::NotSingleBlock { index } => {
                write!(f, "matrix {} is not a single Jordan block", index + 1)
            }
            Inapplicable::EigenvalueProductIsOne => f.write_str("the eigenvalue product is 1"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport<F> {
    pub product_is_identity: bool,
    pub reducible: bool,
    /// Indices spanning an invariant coordinate subspace, when one exists.
    pub witness: Option<Vec<usize>>,
    pub profiles: Vec<JordanProfile<F>>,
    pub all_single_block: bool,
    /// `prod mu_i`, present when every matrix has a single eigenvalue.
    pub eigenvalue_product: Option<F>,
    pub applies: bool,
    /// The first failed hypothesis when `applies` is false.
    pub reason: Option<Inapplicable>,
}

impl<F: Field> MonodromyRep<F> {
    pub fn new(matrices: Vec<Matrix<F>>) -> Result<Self> {
        let Some(first) = matrices.first() else {
            return Err(Error::InvalidInput("a representation needs at least one matrix".into()));
        };
        let dim = first.nrows();
        if dim == 0 {
            return Err(Error::InvalidInput("matrices must be nonempty".into()));
        }
        for (i, m) in matrices.iter().enumerate() {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::DimensionMismatch(format!("matrix {} is {}x{}, expected {dim}x{dim}", i + 1, m.nrows(), m.ncols())));
            }
            if m.det().is_zero() {
                return Err(Error::InvalidInput(format!("matrix {} is not invertible", i + 1)));
            }
        }
        Ok(MonodromyRep { dim, matrices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[Matrix<F>] {
        &self.matrices
    }

    /// `S^-1 M_i S` for every `i`.
    pub fn conjugate(&self, s: &Matrix<F>) -> Result<Self> {
        let s_inv = s.inverse().ok_or(Error::NotInvertible)?;
        Ok(MonodromyRep { dim: self.dim, matrices: self.matrices.iter().map(|m| &(&s_inv * m) * s).collect() })
    }

    /// Image of the loop `gamma_{w_1} gamma_{w_2} ... gamma_{w_k}`, which is
    /// `M_{w_k} ... M_{w_1}`.
    pub fn loop_image(&self, word: &[usize]) -> Matrix<F> {
        word.iter().fold(Matrix::identity(self.dim), |acc, &i| &self.matrices[i] * &acc)
    }
}

/// `M_1 M_2 ... M_N = I`, multiplied left to right.
pub fn check_product_identity<F: Field>(rep: &MonodromyRep<F>) -> bool {
    rep.matrices.iter().fold(Matrix::identity(rep.dim), |acc, m| &acc * m).is_identity()
}

/// Row-echelon basis that grows one vector at a time.
struct EchelonSpan<F> {
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> EchelonSpan<F> {
    /// Adds `v` if it is new; returns whether it was.
    fn insert(&mut self, mut v: Vec<F>) -> bool {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let c = v[*pivot].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = x.clone() - &(c.clone() * r);
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].inv();
        let v: Vec<F> = v.into_iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let c = row[pivot].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = x.clone() - &(c.clone() * r);
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

/// Dimension of the algebra generated by the matrices.
pub fn word_span_dimension<F: Field>(rep: &MonodromyRep<F>) -> usize {
    let n = rep.dim;
    let mut span = EchelonSpan { rows: Vec::new() };
    let identity = Matrix::<F>::identity(n);
    span.insert(identity.iter().cloned().collect());
    let mut frontier = vec![identity];
    while let Some(w) = frontier.pop() {
        for m in &rep.matrices {
            let next = &w * m;
            if span.insert(next.iter().cloned().collect()) {
                if span.rows.len() == n * n {
                    return n * n;
                }
                frontier.push(next);
            }
        }
    }
    span.rows.len()
}

/// Burnside: irreducible over an algebraically closed field iff the
/// generated algebra is all of `M_n`.
pub fn is_irreducible<F: Field>(rep: &MonodromyRep<F>) -> bool {
    word_span_dimension(rep) == rep.dim * rep.dim
}

/// Smallest proper coordinate subspace `span{e_i : i in S}` mapped into
/// itself by every matrix; indices are zero-based.
pub fn invariant_coordinate_subspace<F: Field>(rep: &MonodromyRep<F>) -> Option<Vec<usize>> {
    let n = rep.dim;
    if !(2..=WITNESS_SEARCH_LIMIT).contains(&n) {
        return None;
    }
    let invariant = |mask: u32| {
        rep.matrices.iter().all(|m| {
            (0..n).filter(|j| mask >> j & 1 == 1).all(|j| (0..n).filter(|i| mask >> i & 1 == 0).all(|i| m[(i, j)].is_zero()))
        })
    };
    let mut masks: Vec<u32> = (1..(1u32 << n) - 1).collect();
    masks.sort_by_key(|m| (m.count_ones(), m.reverse_bits()));
    masks.into_iter().find(|&m| invariant(m)).map(|m| (0..n).filter(|j| m >> j & 1 == 1).collect())
}

pub fn jordan_profile<F: Field>(m: &Matrix<F>) -> JordanProfile<F> {
    let n = m.nrows();
    let mu = m.trace() / F::from_int(n as i64);
    let linear = LaurentPoly::from_terms([(1, F::one()), (0, -mu.clone())]);
    if m.charpoly() != linear.pow(n as u32) {
        return JordanProfile { single_eigenvalue: None, single_block: false };
    }
    let shifted = m - &Matrix::identity(n).scale(&mu);
    JordanProfile { single_block: shifted.rank() + 1 == n, single_eigenvalue: Some(mu) }
}

pub fn bolibrukh_criterion<F: Field>(rep: &MonodromyRep<F>) -> CriterionReport<F> {
    let product_is_identity = check_product_identity(rep);
    let reducible = !is_irreducible(rep);
    let witness = if reducible { invariant_coordinate_subspace(rep) } else { None };
    let profiles: Vec<JordanProfile<F>> = rep.matrices.iter().map(jordan_profile).collect();
    let all_single_block = profiles.iter().all(|p| p.single_block);
    let eigenvalue_product = profiles
        .iter()
        .map(|p| p.single_eigenvalue.clone())
        .try_fold(F::one(), |acc, mu| mu.map(|mu| acc * &mu));
    let reason = if rep.dim < 4 {
        Some(Inapplicable::DimensionBelowFour)
    } else if !product_is_identity {
        Some(Inapplicable::ProductNotIdentity)
    } else if !reducible {
        Some(Inapplicable::Irreducible)
    } else if let Some(index) = profiles.iter().position(|p| !p.single_block) {
        Some(Inapplicable::NotSingleBlock { index })
    } else if eigenvalue_product.as_ref().is_some_and(One::is_one) {
        Some(Inapplicable::EigenvalueProductIsOne)
    } else {
        None
    };
    CriterionReport {
        product_is_identity,
        reducible,
        witness,
        profiles,
        all_single_block,
        eigenvalue_product,
        applies: reason.is_none(),
        reason,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QMatrix, Rat};

    fn qm(rows: &[&[i64]]) -> QMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rat::from_int(v)).collect()).collect()).unwrap()
    }

    fn bolibrukh_triple() -> MonodromyRep<Rat> {
        MonodromyRep::new(vec![
            qm(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]]),
            qm(&[&[3, 1, 1, -1], &[-4, -1, 1, 2], &[0, 0, 3, 1], &[0, 0, -4, -1]]),
            qm(&[&[-1, 0, 2, -1], &[4, -1, 0, 1], &[0, 0, -1, 0], &[0, 0, 4, -1]]),
        ])
        .unwrap()
    }

    #[test]
    fn product_identity_examples() {
        assert!(check_product_identity(&bolibrukh_triple()));
        let m = qm(&[&[2, 1], &[1, 1]]);
        let pair = MonodromyRep::new(vec![m.clone(), m.inverse().unwrap()]).unwrap();
        assert!(check_product_identity(&pair));
        assert!(!check_product_identity(&MonodromyRep::new(vec![m]).unwrap()));
    }

    #[test]
    fn irreducibility_examples() {
        let pair = MonodromyRep::new(vec![qm(&[&[1, 1], &[0, 1]]), qm(&[&[1, 0], &[1, 1]])]).unwrap();
        assert_eq!(word_span_dimension(&pair), 4);
        assert!(is_irreducible(&pair));
        let single = MonodromyRep::new(vec![qm(&[&[1, 1], &[0, 1]])]).unwrap();
        assert!(!is_irreducible(&single));
        assert_eq!(invariant_coordinate_subspace(&single), Some(vec![0]));
        assert!(!is_irreducible(&bolibrukh_triple()));
        assert_eq!(invariant_coordinate_subspace(&bolibrukh_triple()), Some(vec![0, 1]));
    }

    #[test]
    fn jordan_examples() {
        assert_eq!(jordan_profile(&qm(&[&[2, 1], &[0, 2]])), JordanProfile { single_eigenvalue: Some(Rat::from_int(2)), single_block: true });
        assert_eq!(jordan_profile(&qm(&[&[2, 0], &[0, 2]])), JordanProfile { single_eigenvalue: Some(Rat::from_int(2)), single_block: false });
        assert_eq!(jordan_profile(&qm(&[&[1, 0], &[0, 3]])).single_eigenvalue, None);
        let mus: Vec<_> = bolibrukh_triple().matrices().iter().map(jordan_profile).collect();
        assert!(mus.iter().all(|p| p.single_block));
        let mus: Vec<i64> = mus.iter().map(|p| p.single_eigenvalue.clone().unwrap().to_integer().try_into().unwrap()).collect();
        assert_eq!(mus, vec![1, 1, -1]);
    }

    #[test]
    fn criterion_on_bolibrukh_triple() {
        let report = bolibrukh_criterion(&bolibrukh_triple());
        assert!(report.product_is_identity && report.reducible && report.all_single_block && report.applies);
        assert_eq!(report.eigenvalue_product, Some(Rat::from_int(-1)));
        assert_eq!(report.witness, Some(vec![0, 1]));
        assert_eq!(report.reason, None);
    }

    #[test]
    fn criterion_failures() {
        let id = MonodromyRep::new(vec![QMatrix::identity(4), QMatrix::identity(4)]).unwrap();
        let report = bolibrukh_criterion(&id);
        assert!(report.product_is_identity && report.reducible && !report.all_single_block && !report.applies);
        assert_eq!(report.reason, Some(Inapplicable::NotSingleBlock { index: 0 }));
        assert_eq!(report.eigenvalue_product, Some(Rat::one()));
        // Unipotent single blocks with inverse: product of eigenvalues is 1.
        let j = qm(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]]);
        let pair = MonodromyRep::new(vec![j.clone(), j.inverse().unwrap()]).unwrap();
        assert_eq!(bolibrukh_criterion(&pair).reason, Some(Inapplicable::EigenvalueProductIsOne));
        let small = MonodromyRep::new(vec![qm(&[&[-1, 1], &[0, -1]])]).unwrap();
        let report = bolibrukh_criterion(&small);
        assert!(!report.applies);
        assert_eq!(report.reason, Some(Inapplicable::DimensionBelowFour));
    }

    #[test]
    fn loops_compose_in_reverse() {
        let a = qm(&[&[1, 1], &[0, 1]]);
        let b = qm(&[&[1, 0], &[1, 1]]);
        let rep = MonodromyRep::new(vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(rep.loop_image(&[0, 1]), &b * &a);
        assert_ne!(rep.loop_image(&[0, 1]), &a * &b);
    }

    #[test]
    fn singular_matrices_are_rejected() {
        assert!(MonodromyRep::new(vec![qm(&[&[1, 1], &[1, 1]])]).is_err());
        assert!(MonodromyRep::<Rat>::new(vec![]).is_err());
    }
}
