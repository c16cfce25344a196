//! Dense matrices over a [`Ring`], with field algorithms for [`Field`] entries.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::scalar::{Field, Ring};
use crate::LaurentPoly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. Returns `None` on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.rows_iter().map(<[T]>::to_vec).collect()
    }

    /// Reorders rows so that new row `i` is old row `perm[i]`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(perm[i], j)].clone())
    }

    /// Reorders columns so that new column `j` is old column `perm[j]`.
    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, perm[j])].clone())
    }

    pub fn from_columns(cols: &[Vec<T>]) -> Option<Self> {
        let n = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != n) {
            return None;
        }
        Some(Matrix::from_fn(n, cols.len(), |i, j| cols[j][i].clone()))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(entries: Vec<T>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|e| e.clone() * s)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc + &(a.clone() * b))
            })
            .collect()
    }

    /// Determinant by cofactor expansion along rows (division free, any ring).
    /// Intended for small matrices.
    pub fn det_cofactor(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let cols: Vec<usize> = (0..self.cols).collect();
        self.minor_det(0, &cols)
    }

    fn minor_det(&self, row: usize, cols: &[usize]) -> T {
        match cols.len() {
            0 => T::one(),
            1 => self[(row, cols[0])].clone(),
            _ => {
                let mut acc = T::zero();
                for (k, &c) in cols.iter().enumerate() {
                    let e = &self[(row, c)];
                    if e.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = e.clone() * &self.minor_det(row + 1, &rest);
                    acc = if k % 2 == 0 { acc + &term } else { acc - &term };
                }
                acc
            }
        }
    }

    /// Classical adjugate, via cofactors.
    pub fn adjugate(&self) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        if n == 1 {
            return Self::identity(1);
        }
        Matrix::from_fn(n, n, |i, j| {
            // (i, j) entry of adj = cofactor (j, i)
            let sub = Matrix::from_fn(n - 1, n - 1, |a, b| {
                let r = if a < j { a } else { a + 1 };
                let c = if b < i { b } else { b + 1 };
                self[(r, c)].clone()
            });
            let d = sub.det_cofactor();
            if (i + j) % 2 == 0 {
                d
            } else {
                -d
            }
        })
    }
}

impl<'a, T: Ring> Mul<&'a Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.clone() * b;
                    let slot = &mut out[(i, j)];
                    *slot = std::mem::replace(slot, T::zero()) + &prod;
                }
            }
        }
        out
    }
}

impl<'a, T: Ring> Add<&'a Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch in sum");
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + &rhs[(i, j)])
    }
}

impl<'a, T: Ring> Sub<&'a Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch in difference");
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - &rhs[(i, j)])
    }
}

impl<T: Ring> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|e| -e.clone())
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.cols.max(1)).take(self.rows)).finish()
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Rref<F> {
    /// The reduced row echelon form (zero rows at the bottom).
    pub matrix: Matrix<F>,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form. Row operations skip zero entries, which keeps
    /// the sparse block systems produced by the section solver cheap.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv();
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = m[(r, j)].clone() * &inv;
                }
            }
            let pivot_row: Vec<(usize, F)> =
                (c..m.cols).filter(|&j| !m[(r, j)].is_zero()).map(|j| (j, m[(r, j)].clone())).collect();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for (j, v) in &pivot_row {
                    m[(i, *j)] = m[(i, *j)].clone() - &(factor.clone() * v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    /// Rank via forward elimination only.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv();
            let pivot_row: Vec<(usize, F)> = (c + 1..m.cols)
                .filter(|&j| !m[(r, j)].is_zero())
                .map(|j| (j, m[(r, j)].clone() * &inv))
                .collect();
            for i in r + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                m[(i, c)] = F::zero();
                for (j, v) in &pivot_row {
                    m[(i, *j)] = m[(i, *j)].clone() - &(factor.clone() * v);
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column,
    /// in reduced echelon normal form: the free coordinate is one, the other
    /// free coordinates are zero. Vectors are ordered by free column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let Rref { matrix: r, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); self.cols];
                v[free] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, free)].clone();
                }
                v
            })
            .collect()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return F::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det = det * &pivot;
            let inv = pivot.inv();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone() * &inv;
                for j in c..n {
                    if !m[(c, j)].is_zero() {
                        m[(i, j)] = m[(i, j)].clone() - &(factor.clone() * &m[(c, j)]);
                    }
                }
            }
        }
        det
    }

    /// Inverse, or `None` for a singular matrix.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| matrix[(i, n + j)].clone()))
    }

    /// Solves `M x = b`; returns one solution or `None` if inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Characteristic polynomial `det(lambda I - M)` as a monic polynomial in
    /// `lambda`, by the Faddeev-LeVerrier recursion (characteristic zero).
    pub fn charpoly(&self) -> LaurentPoly<F> {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        let ident = Matrix::<F>::identity(n);
        let mut aux = Matrix::<F>::zeros(n, n);
        for k in 1..=n {
            aux = &(self * &aux) + &ident.scale(&coeffs[n - k + 1]);
            let c = -(self * &aux).trace() / F::from_int(k as i64);
            coeffs[n - k] = c;
        }
        LaurentPoly::from_terms(coeffs.into_iter().enumerate().map(|(e, c)| (e as i64, c)))
    }
}

/// Determinant of the Sylvester matrix of two polynomials.
pub fn resultant<F: Field>(p: &LaurentPoly<F>, q: &LaurentPoly<F>) -> F {
    assert!(p.is_polynomial() && q.is_polynomial());
    let (Some(dp), Some(dq)) = (p.deg(), q.deg()) else {
        return F::zero();
    };
    let (dp, dq) = (dp as usize, dq as usize);
    let size = dp + dq;
    if size == 0 {
        return F::one();
    }
    let syl = Matrix::from_fn(size, size, |i, j| {
        if i < dq {
            // shifted copies of p, highest coefficient first
            j.checked_sub(i).filter(|&k| k <= dp).map_or_else(F::zero, |k| p.coeff((dp - k) as i64))
        } else {
            let r = i - dq;
            j.checked_sub(r).filter(|&k| k <= dq).map_or_else(F::zero, |k| q.coeff((dq - k) as i64))
        }
    });
    syl.det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use num_traits::Zero;

    fn qm(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rat::from_int(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn nullspace_examples() {
        let k = qm(&[&[1, 1]]).nullspace();
        assert_eq!(k, vec![vec![Rat::from_int(-1), Rat::from_int(1)]]);
        assert!(Matrix::<Rat>::identity(3).nullspace().is_empty());
        let m = qm(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.nullspace();
        assert_eq!(k.len(), 2);
        assert_eq!(m.rank(), 1);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn det_inverse_charpoly() {
        let m = qm(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det(), Rat::from_int(18));
        assert_eq!(m.det_cofactor(), Rat::from_int(18));
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert_eq!(&m.adjugate().scale(&Rat::from_int(18).inv()), &inv);
        let cp = m.charpoly();
        // lambda^3 - 9 lambda^2 + 24 lambda - 18
        assert_eq!(cp.to_string(), "-18 + 24*x - 9*x^2 + x^3");
        assert!(qm(&[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn resultant_detects_common_roots() {
        let p = LaurentPoly::from_terms([(0, Rat::from_int(-1)), (1, Rat::from_int(1))]);
        let q = LaurentPoly::from_terms([(0, Rat::from_int(-1)), (2, Rat::from_int(1))]);
        assert!(resultant(&p, &q).is_zero());
        let r = LaurentPoly::from_terms([(0, Rat::from_int(1)), (2, Rat::from_int(1))]);
        assert_eq!(resultant(&p, &r), Rat::from_int(2));
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = qm(&[&[1, 2], &[2, 4]]);
        assert!(m.solve(&[Rat::from_int(1), Rat::from_int(3)]).is_none());
        let x = m.solve(&[Rat::from_int(1), Rat::from_int(2)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![Rat::from_int(1), Rat::from_int(2)]);
    }
}
