//! Fundamental matrices `W = S(z) z^R` at a first-kind point.
//!
//! For `w' = (R/z + sum_m R_m z^m) w` and `S = sum_k S_k z^k` with `S_0 = I`,
//! the coefficient of `z^(k-1)` in `W' - A W` (after cancelling `z^R`) is
//! `k S_k + S_k R - R S_k - sum_{m<k} R_m S_{k-1-m}`.

use crate::error::{Error, Result};
use crate::matrix::resultant;
use crate::scalar::Field;
use crate::Matrix;

/// Default number of series coefficients `S_1, ..., S_N`.
pub const DEFAULT_TRUNCATION: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct LocalSystemData<F> {
    pub residue: Matrix<F>,
    /// `R_0, R_1, ...`; entries beyond the list are zero.
    pub tail: Vec<Matrix<F>>,
}

impl<F: Field> LocalSystemData<F> {
    pub fn new(residue: Matrix<F>, tail: Vec<Matrix<F>>) -> Result<Self> {
        let n = residue.nrows();
        if n == 0 || residue.ncols() != n {
            return Err(Error::DimensionMismatch("residue must be a nonempty square matrix".into()));
        }
        if tail.iter().any(|m| m.nrows() != n || m.ncols() != n) {
            return Err(Error::DimensionMismatch(format!("tail matrices must be {n}x{n}")));
        }
        Ok(LocalSystemData { residue, tail })
    }

    pub fn dim(&self) -> usize {
        self.residue.nrows()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusSeries<F> {
    /// `S_0 = I, S_1, ..., S_N`.
    pub coefficients: Vec<Matrix<F>>,
    pub residue: Matrix<F>,
}

impl<F: Field> FrobeniusSeries<F> {
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }
}

/// Order in `z` through which `W' - A W` vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidualOrder {
    /// The residual starts at `z^k`.
    Finite(i64),
    /// The truncated series solves the system exactly.
    Exact,
}

/// Coefficient of `z^(k-1)` in the residual of `coeffs` against `local`.
fn residual_term<F: Field>(local: &LocalSystemData<F>, coeffs: &[Matrix<F>], k: usize) -> Matrix<F> {
    let n = local.dim();
    let r = &local.residue;
    let mut e = match coeffs.get(k) {
        Some(s) => &(&s.scale(&F::from_int(k as i64)) + &(s * r)) - &(r * s),
        None => Matrix::zeros(n, n),
    };
    for (m, rm) in local.tail.iter().enumerate().take(k) {
        if let Some(s) = coeffs.get(k - 1 - m) {
            e = &e - &(rm * s);
        }
    }
    e
}

/// Fails with `ResonantExponents` if two eigenvalues of `R` differ by some
/// `k` in `1..=order`, whatever the tail.
pub fn frobenius_series<F: Field>(local: &LocalSystemData<F>, order: usize) -> Result<FrobeniusSeries<F>> {
    let n = local.dim();
    let r = &local.residue;
    let chi = r.charpoly();
    for k in 1..=order {
        let shifted = chi.taylor_shift(&-F::from_int(k as i64));
        if resultant(&chi, &shifted).is_zero() {
            return Err(Error::ResonantExponents { gap: k });
        }
    }
    let mut coeffs = vec![Matrix::identity(n)];
    for k in 1..=order {
        // k S + S R - R S = rhs, unknown S_{ij} at index i n + j.
        let mut rhs = Matrix::zeros(n, n);
        for (m, rm) in local.tail.iter().enumerate().take(k) {
            rhs = &rhs + &(rm * &coeffs[k - 1 - m]);
        }
        let mut system = Matrix::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                let row = i * n + j;
                system[(row, row)] = F::from_int(k as i64);
                for l in 0..n {
                    system[(row, i * n + l)] = system[(row, i * n + l)].clone() + &r[(l, j)];
                    system[(row, l * n + j)] = system[(row, l * n + j)].clone() - &r[(i, l)];
                }
            }
        }
        let b: Vec<F> = rhs.iter().cloned().collect();
        let s = system
            .solve(&b)
            .ok_or_else(|| Error::InternalConsistency(format!("singular recursion at k = {k} despite the resonance check")))?;
        coeffs.push(Matrix::from_fn(n, n, |i, j| s[i * n + j].clone()));
    }
    Ok(FrobeniusSeries { coefficients: coeffs, residue: r.clone() })
}

/// Exact order of the formal residual of the truncated series.
pub fn ode_residual<F: Field>(local: &LocalSystemData<F>, series: &FrobeniusSeries<F>) -> Result<ResidualOrder> {
    let n = local.dim();
    if series.coefficients.is_empty() || series.coefficients.iter().any(|s| s.nrows() != n || s.ncols() != n) {
        return Err(Error::DimensionMismatch(format!("series coefficients must be {n}x{n}")));
    }
    if series.residue != local.residue {
        return Err(Error::InvalidInput("series was built for a different residue".into()));
    }
    let last = series.coefficients.len() + local.tail.len();
    for k in 0..=last {
        if !residual_term(local, &series.coefficients, k).is_zero() {
            return Ok(ResidualOrder::Finite(k as i64 - 1));
        }
    }
    Ok(ResidualOrder::Exact)
}
