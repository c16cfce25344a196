//! Square matrices over `F[x, x^-1]`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::{LaurentPoly, Matrix};

pub type LaurentMatrix<F> = Matrix<LaurentPoly<F>>;

impl<F: Field> Matrix<LaurentPoly<F>> {
    /// Lifts a scalar matrix to constant Laurent entries.
    pub fn from_scalar(m: &Matrix<F>) -> Self {
        m.map(|c| LaurentPoly::constant(c.clone()))
    }

    /// `diag(x^e_1, ..., x^e_n)`.
    pub fn monomial_diagonal(exps: &[i64]) -> Self {
        Matrix::diagonal(exps.iter().map(|&e| LaurentPoly::x_pow(e)).collect())
    }

    /// Smallest and largest exponent over all entries, `None` for a zero matrix.
    pub fn exponent_range(&self) -> Option<(i64, i64)> {
        let lo = self.iter().filter_map(LaurentPoly::ord).min()?;
        let hi = self.iter().filter_map(LaurentPoly::deg).max()?;
        Some((lo, hi))
    }

    /// All entries lie in `F[x]`.
    pub fn is_polynomial(&self) -> bool {
        self.iter().all(LaurentPoly::is_polynomial)
    }

    /// All entries lie in `F[x^-1]`.
    pub fn is_inverse_polynomial(&self) -> bool {
        self.iter().all(LaurentPoly::is_inverse_polynomial)
    }

    /// Scalar matrix of the coefficients of `x^exp`.
    pub fn coeff_matrix(&self, exp: i64) -> Matrix<F> {
        self.map(|p| p.coeff(exp))
    }

    /// Multiplies every entry by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        self.map(|p| p.shift(k))
    }

    /// The substitution `x -> 1/x`, entrywise.
    pub fn invert_variable(&self) -> Self {
        self.map(LaurentPoly::invert_variable)
    }

    /// Determinant by Bareiss fraction-free elimination; every division is exact
    /// in `F[x, x^-1]`.
    pub fn det(&self) -> LaurentPoly<F> {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.nrows();
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = LaurentPoly::one();
        for k in 0..n - 1 {
            // Sparsest nonzero pivot keeps the intermediate entries short.
            let Some(p) = (k..n).filter(|&i| !m[(i, k)].is_zero()).min_by_key(|&i| m[(i, k)].num_terms())
            else {
                return LaurentPoly::zero();
            };
            if p != k {
                m.swap_rows(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[(i, j)] * &m[(k, k)]) - &(&m[(i, k)] * &m[(k, j)]);
                    m[(i, j)] = num.exact_div(&prev).expect("Bareiss step divides exactly");
                }
                m[(i, k)] = LaurentPoly::zero();
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Returns `(c, t)` with `det = c x^t` when the matrix lies in `GL(n, F[x, x^-1])`.
    pub fn det_unit(&self) -> Option<(F, i64)> {
        self.det().as_unit()
    }

    /// Inverse over the Laurent ring: adjugate divided by the unit determinant.
    pub fn laurent_inverse(&self) -> Result<Self> {
        let det = self.det();
        let Some((c, t)) = det.as_unit() else {
            return Err(Error::NotInvertibleOverLaurentRing { det: det.to_string() });
        };
        let unit_inv = LaurentPoly::monomial(c.inv(), -t);
        Ok(self.adjugate().map(|e| e * &unit_inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QLaurentMatrix, QLaurentPoly, Rat};

    fn x(e: i64) -> QLaurentPoly {
        QLaurentPoly::x_pow(e)
    }

    fn lm(rows: Vec<Vec<QLaurentPoly>>) -> QLaurentMatrix {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn determinant_examples() {
        let a = lm(vec![vec![x(1), x(0)], vec![QLaurentPoly::zero(), x(-1)]]);
        assert_eq!(a.det(), QLaurentPoly::one());
        assert_eq!(QLaurentMatrix::identity(4).det(), QLaurentPoly::one());
        let b = lm(vec![vec![x(1), x(0)], vec![x(0), x(-1)]]);
        assert!(b.det().is_zero());
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let a = lm(vec![
            vec![&x(1) + &x(-1), x(0), x(2)],
            vec![x(-2), &x(0) - &x(1), x(1)],
            vec![x(0), x(3), &x(-1) + &x(0)],
        ]);
        assert_eq!(a.det(), a.det_cofactor());
    }

    #[test]
    fn inverse_examples() {
        let d = QLaurentMatrix::monomial_diagonal(&[1, -1]);
        assert_eq!(d.laurent_inverse().unwrap(), QLaurentMatrix::monomial_diagonal(&[-1, 1]));
        let a = lm(vec![vec![x(1), x(0)], vec![QLaurentPoly::zero(), x(-1)]]);
        let inv = a.laurent_inverse().unwrap();
        assert_eq!(inv, lm(vec![vec![x(-1), -x(0)], vec![QLaurentPoly::zero(), x(1)]]));
        assert!((&a * &inv).is_identity());
        let ones = lm(vec![vec![x(0), x(0)], vec![x(0), x(0)]]);
        assert!(matches!(ones.laurent_inverse(), Err(Error::NotInvertibleOverLaurentRing { .. })));
    }

    #[test]
    fn non_unit_determinant_is_rejected() {
        let a = lm(vec![vec![&x(0) + &x(1)]]);
        assert!(a.laurent_inverse().is_err());
        let b = lm(vec![vec![QLaurentPoly::constant(Rat::from_int(3))]]);
        assert_eq!(b.det_unit(), Some((Rat::from_int(3), 0)));
    }
}
