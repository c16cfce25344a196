//! Birkhoff factorization `B A C = diag(x^d_1, ..., x^d_n)`.
//!
//! `B` has entries in `F[x]` and constant nonzero determinant, `C` has entries
//! in `F[x^-1]` and constant nonzero determinant, `d_1 >= ... >= d_n`. The
//! index list is an invariant of `A`; `B` and `C` are not.
//!
//! Two constructions are provided:
//!
//! * [`FactorMethod::RowReduction`]: bring `P = x^m A` (a polynomial matrix)
//!   to row-reduced form `U P = diag(x^delta) Chat` by unimodular row
//!   operations, where the leading row coefficient matrix is invertible.
//!   Then `Chat` lies in `GL(n, F[x^-1])` and `U A Chat^-1 = diag(x^(delta - m))`.
//! * [`FactorMethod::Sections`]: ascend through twists `k`, picking sections
//!   of `E(k)` that are new modulo `W(k-1) + x^-1 W(k-1)`. Their `s1` parts
//!   form the columns of `C` with index `-k`; the `s0` parts form `B^-1`.
//!
//! Either way the result is checked with [`verify_factorization`] before it
//! is returned.

use std::fmt;

use num_traits::Zero;

use crate::bundle::{BundleOnP1, SplittingType};
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::sections::{extends_span, SectionSolver};
use crate::{LaurentMatrix, LaurentPoly, Matrix};

#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<F> {
    /// Left factor, in `GL(n, F[x])`.
    pub b: LaurentMatrix<F>,
    /// Right factor, in `GL(n, F[x^-1])`.
    pub c: LaurentMatrix<F>,
    pub exponents: SplittingType,
}

impl<F: Field> Factorization<F> {
    /// `diag(x^d_1, ..., x^d_n)`.
    pub fn diagonal(&self) -> LaurentMatrix<F> {
        LaurentMatrix::monomial_diagonal(self.exponents.indices())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FactorMethod {
    #[default]
    RowReduction,
    Sections,
}

/// The first clause a claimed factorization violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ShapeMismatch,
    BHasNegativeExponents,
    CHasPositiveExponents,
    DetBNotConstant,
    DetCNotConstant,
    ProductMismatch { row: usize, col: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ShapeMismatch => f.write_str("shapes agree"),
            Violation::BHasNegativeExponents => f.write_str("B has no negative exponents"),
            Violation::CHasPositiveExponents => f.write_str("C has no positive exponents"),
            Violation::DetBNotConstant => f.write_str("det(B) constant"),
            Violation::DetCNotConstant => f.write_str("det(C) constant"),
            Violation::ProductMismatch { row, col } => write!(f, "B*A*C equals the diagonal (entry {row},{col})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub valid: bool,
    pub violation: Option<Violation>,
}

impl VerifyReport {
    fn fail(v: Violation) -> Self {
        VerifyReport { valid: false, violation: Some(v) }
    }
}

fn nonzero_constant<F: Field>(p: &LaurentPoly<F>) -> bool {
    !p.is_zero() && p.is_constant()
}

/// Checks every clause of the factorization contract; never fails.
pub fn verify_factorization<F: Field>(a: &LaurentMatrix<F>, f: &Factorization<F>) -> VerifyReport {
    let n = a.nrows();
    let shapes = [a.ncols(), f.b.nrows(), f.b.ncols(), f.c.nrows(), f.c.ncols(), f.exponents.rank()];
    if shapes.iter().any(|&s| s != n) {
        return VerifyReport::fail(Violation::ShapeMismatch);
    }
    if !f.b.is_polynomial() {
        return VerifyReport::fail(Violation::BHasNegativeExponents);
    }
    if !f.c.is_inverse_polynomial() {
        return VerifyReport::fail(Violation::CHasPositiveExponents);
    }
    if !nonzero_constant(&f.b.det()) {
        return VerifyReport::fail(Violation::DetBNotConstant);
    }
    if !nonzero_constant(&f.c.det()) {
        return VerifyReport::fail(Violation::DetCNotConstant);
    }
    let prod = &(&f.b * a) * &f.c;
    let diag = f.diagonal();
    for i in 0..n {
        for j in 0..n {
            if prod[(i, j)] != diag[(i, j)] {
                return VerifyReport::fail(Violation::ProductMismatch { row: i, col: j });
            }
        }
    }
    VerifyReport { valid: true, violation: None }
}

/// Birkhoff factorization of the transition matrix of `e` by row reduction.
pub fn birkhoff_factor<F: Field>(e: &BundleOnP1<F>) -> Result<Factorization<F>> {
    birkhoff_factor_with(e, FactorMethod::RowReduction)
}

pub fn birkhoff_factor_with<F: Field>(e: &BundleOnP1<F>, method: FactorMethod) -> Result<Factorization<F>> {
    let a = e.transition();
    let f = if a.nrows() == 1 {
        // B = c^-1, C = 1, exponent = ord.
        let c = e.det_coefficient().inv();
        Factorization {
            b: Matrix::diagonal(vec![LaurentPoly::constant(c)]),
            c: LaurentMatrix::identity(1),
            exponents: SplittingType::new(vec![e.degree()]),
        }
    } else {
        match method {
            FactorMethod::RowReduction => by_row_reduction(a)?,
            FactorMethod::Sections => by_sections(e)?,
        }
    };
    let report = verify_factorization(a, &f);
    if !report.valid {
        return Err(Error::InternalConsistency(format!(
            "factorization failed its own check: {}",
            report.violation.map_or_else(String::new, |v| v.to_string())
        )));
    }
    Ok(f)
}

fn row_degrees<F: Field>(p: &LaurentMatrix<F>) -> Vec<i64> {
    p.rows_iter()
        .map(|row| row.iter().filter_map(LaurentPoly::deg).max().expect("invertible matrix has no zero row"))
        .collect()
}

fn by_row_reduction<F: Field>(a: &LaurentMatrix<F>) -> Result<Factorization<F>> {
    let n = a.nrows();
    let (lo, _) = a.exponent_range().expect("invertible matrix is nonzero");
    let shift = -lo;
    let mut p = a.shift(shift);
    let mut u = LaurentMatrix::<F>::identity(n);
    let (_, t) = a.det_unit().expect("bundle datum has unit determinant");
    let floor = t + n as i64 * shift;
    loop {
        let deltas = row_degrees(&p);
        let lead = Matrix::from_fn(n, n, |i, j| p[(i, j)].coeff(deltas[i]));
        let Some(v) = lead.transpose().nullspace().into_iter().next() else {
            break;
        };
        if deltas.iter().sum::<i64>() <= floor {
            // Row degrees cannot sum below deg det P while the leading matrix is singular.
            return Err(Error::InternalSearchExhausted(format!(
                "row reduction stalled at row degrees {deltas:?}"
            )));
        }
        let pivot = (0..n)
            .filter(|&i| !v[i].is_zero())
            .max_by(|&i, &j| deltas[i].cmp(&deltas[j]).then(j.cmp(&i)))
            .expect("kernel vector is nonzero");
        let scale = v[pivot].inv();
        for i in (0..n).filter(|&i| i != pivot && !v[i].is_zero()) {
            let factor = LaurentPoly::monomial(v[i].clone() * &scale, deltas[pivot] - deltas[i]);
            for j in 0..n {
                let dp = &factor * &p[(i, j)];
                p[(pivot, j)] = &p[(pivot, j)] + &dp;
                let du = &factor * &u[(i, j)];
                u[(pivot, j)] = &u[(pivot, j)] + &du;
            }
        }
    }
    let deltas = row_degrees(&p);
    let chat = Matrix::from_fn(n, n, |i, j| p[(i, j)].shift(-deltas[i]));
    let c = chat.laurent_inverse()?;
    let exps: Vec<i64> = deltas.iter().map(|d| d - shift).collect();
    Ok(sorted(u, c, exps))
}

/// Reorders so that the exponents descend: `P B` and `C P^T`.
fn sorted<F: Field>(b: LaurentMatrix<F>, c: LaurentMatrix<F>, exps: Vec<i64>) -> Factorization<F> {
    let mut perm: Vec<usize> = (0..exps.len()).collect();
    perm.sort_by(|&i, &j| exps[j].cmp(&exps[i]).then(i.cmp(&j)));
    let exponents = SplittingType::from_descending(perm.iter().map(|&i| exps[i]).collect()).unwrap();
    Factorization { b: b.permute_rows(&perm), c: c.permute_cols(&perm), exponents }
}

fn by_sections<F: Field>(e: &BundleOnP1<F>) -> Result<Factorization<F>> {
    let a = e.transition();
    let n = a.nrows();
    let solver = SectionSolver::new(a, e.transition_inverse());
    let (_, top) = a.exponent_range().expect("invertible matrix is nonzero");
    let (_, inv_top) = e.transition_inverse().exponent_range().expect("invertible matrix is nonzero");
    let mut k = -top - 1;
    let mut previous = solver.basis(k);
    if !previous.is_empty() {
        return Err(Error::InternalConsistency(format!("sections exist below twist {}", -top)));
    }
    let limit = inv_top + e.degree().abs() + n as i64 + 1;
    let mut c_cols: Vec<Vec<LaurentPoly<F>>> = Vec::with_capacity(n);
    let mut binv_cols: Vec<Vec<LaurentPoly<F>>> = Vec::with_capacity(n);
    let mut exps = Vec::with_capacity(n);
    while c_cols.len() < n {
        k += 1;
        if k > limit {
            return Err(Error::InternalSearchExhausted(format!(
                "found {} of {n} columns by twist {limit}",
                c_cols.len()
            )));
        }
        let current = solver.basis(k);
        // Span of W(k-1) + y W(k-1) in level-k coordinates.
        let mut span: Vec<Vec<F>> = Vec::new();
        for (_, s1) in &previous {
            span.push(solver.coords(k, s1));
            let ys1: Vec<LaurentPoly<F>> = s1.iter().map(|p| p.shift(-1)).collect();
            span.push(solver.coords(k, &ys1));
        }
        for (s0, s1) in &current {
            let v = solver.coords(k, s1);
            if extends_span(&span, &v) {
                span.push(v);
                c_cols.push(s1.clone());
                binv_cols.push(s0.clone());
                exps.push(-k);
            }
        }
        previous = current;
    }
    if c_cols.len() != n {
        return Err(Error::InternalSearchExhausted(format!("selected {} columns for rank {n}", c_cols.len())));
    }
    let c = Matrix::from_columns(&c_cols).unwrap();
    let det_c = c.det();
    if det_c.is_zero() || !det_c.is_constant() {
        return Err(Error::InternalSearchExhausted(format!("selected sections give det C = {det_c}")));
    }
    let binv = Matrix::from_columns(&binv_cols).unwrap();
    let b = binv.laurent_inverse()?;
    if !b.det().is_constant() {
        return Err(Error::InternalConsistency("B has a non-constant determinant".into()));
    }
    Ok(sorted(b, c, exps))
}
