//! Vector bundles on the projective line given by a Laurent transition matrix.
//!
//! Convention: a bundle `E` is glued by `A(x)` so that a global section of
//! `E(k)` is a pair `(s0, s1)` of polynomial vectors, `s0` in `x` and `s1` in
//! `1/x`, with `s0 = x^k A(x) s1`. The line bundle `O(k)` has transition
//! `x^k` and `k + 1` sections for `k >= 0`. For `E = O(d_1) + ... + O(d_n)`:
//!
//! ```text
//! h0(E(k)) = sum_i max(0, d_i + k + 1)
//! h1(E(k)) = sum_i max(0, -d_i - k - 1)
//! ```

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::sections::{Section, SectionSolver};
use crate::{LaurentMatrix, LaurentPoly, Matrix};

/// Descending list of integers `d_1 >= ... >= d_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplittingType(Vec<i64>);

impl SplittingType {
    /// Sorts the given indices into descending order.
    pub fn new(mut indices: Vec<i64>) -> Self {
        indices.sort_unstable_by(|a, b| b.cmp(a));
        SplittingType(indices)
    }

    /// Accepts only an already descending list.
    pub fn from_descending(indices: Vec<i64>) -> Option<Self> {
        indices.windows(2).all(|w| w[0] >= w[1]).then_some(SplittingType(indices))
    }

    pub fn indices(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Splitting type of `E(k)`.
    pub fn shifted(&self, k: i64) -> Self {
        SplittingType(self.0.iter().map(|d| d + k).collect())
    }

    /// Splitting type of the dual bundle.
    pub fn dual(&self) -> Self {
        SplittingType(self.0.iter().rev().map(|d| -d).collect())
    }

    pub fn h0(&self, k: i64) -> usize {
        self.0.iter().map(|d| (d + k + 1).max(0) as usize).sum()
    }

    pub fn h1(&self, k: i64) -> usize {
        self.0.iter().map(|d| (-d - k - 1).max(0) as usize).sum()
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Global sections of `E(k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionSpace<F> {
    pub twist: i64,
    pub dimension: usize,
    /// Pairs `(s0, s1)`: `s0` in `F[x]^n`, `s1` in `F[x^-1]^n`, `s0 = x^k A s1`.
    pub basis: Vec<Section<F>>,
}

impl<F: Field> SectionSpace<F> {
    /// Re-checks the gluing identity and the exponent sides of every basis pair.
    pub fn is_consistent_with(&self, bundle: &BundleOnP1<F>) -> bool {
        self.dimension == self.basis.len()
            && self.basis.iter().all(|(s0, s1)| {
                s0.iter().all(LaurentPoly::is_polynomial)
                    && s1.iter().all(LaurentPoly::is_inverse_polynomial)
                    && bundle.transition.mul_vec(s1).iter().map(|p| p.shift(self.twist)).eq(s0.iter().cloned())
            })
    }
}

/// A bundle datum: a square Laurent matrix with monomial determinant.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleOnP1<F> {
    transition: LaurentMatrix<F>,
    inverse: LaurentMatrix<F>,
    det_coeff: F,
    degree: i64,
}

impl<F: Field> BundleOnP1<F> {
    pub fn new(transition: LaurentMatrix<F>) -> Result<Self> {
        if !transition.is_square() || transition.nrows() == 0 {
            return Err(Error::InvalidBundle(format!(
                "transition matrix must be square and nonempty, got {}x{}",
                transition.nrows(),
                transition.ncols()
            )));
        }
        let det = transition.det();
        let Some((det_coeff, degree)) = det.as_unit() else {
            return Err(Error::InvalidBundle(format!("determinant {det} is not a Laurent unit")));
        };
        let inverse = transition.laurent_inverse()?;
        Ok(BundleOnP1 { transition, inverse, det_coeff, degree })
    }

    /// The line bundle `O(k)`.
    pub fn line(k: i64) -> Self {
        Self::split(&[k])
    }

    /// `O(d_1) + ... + O(d_n)` with diagonal transition.
    pub fn split(indices: &[i64]) -> Self {
        Self::new(LaurentMatrix::monomial_diagonal(indices)).expect("monomial diagonal is a bundle datum")
    }

    pub fn trivial(n: usize) -> Self {
        Self::split(&vec![0; n])
    }

    pub fn transition(&self) -> &LaurentMatrix<F> {
        &self.transition
    }

    pub fn transition_inverse(&self) -> &LaurentMatrix<F> {
        &self.inverse
    }

    pub fn rank(&self) -> usize {
        self.transition.nrows()
    }

    /// Degree of the determinant line bundle: the `t` in `det A = c x^t`.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn det_coefficient(&self) -> &F {
        &self.det_coeff
    }

    /// Dual bundle, transition `(A^T)^-1`.
    pub fn dual(&self) -> Self {
        BundleOnP1 {
            transition: self.inverse.transpose(),
            inverse: self.transition.transpose(),
            det_coeff: self.det_coeff.inv(),
            degree: -self.degree,
        }
    }

    /// `E(k) = E (x) O(k)`, transition `x^k A`.
    pub fn twist(&self, k: i64) -> Self {
        BundleOnP1 {
            transition: self.transition.shift(k),
            inverse: self.inverse.shift(-k),
            det_coeff: self.det_coeff.clone(),
            degree: self.degree + self.rank() as i64 * k,
        }
    }

    /// Determinant line bundle, transition `det A`.
    pub fn det_bundle(&self) -> Self {
        let det = LaurentPoly::monomial(self.det_coeff.clone(), self.degree);
        let inv = LaurentPoly::monomial(self.det_coeff.inv(), -self.degree);
        BundleOnP1 {
            transition: Matrix::diagonal(vec![det]),
            inverse: Matrix::diagonal(vec![inv]),
            det_coeff: self.det_coeff.clone(),
            degree: self.degree,
        }
    }

    fn solver(&self) -> SectionSolver<'_, F> {
        SectionSolver::new(&self.transition, &self.inverse)
    }

    /// Global sections of `E(k)` with an echelon-normalised basis.
    pub fn h0_dim(&self, k: i64) -> SectionSpace<F> {
        let basis = self.solver().basis(k);
        SectionSpace { twist: k, dimension: basis.len(), basis }
    }

    /// `h^0(E(k))` without building the basis.
    pub fn h0_count(&self, k: i64) -> usize {
        self.solver().count(k)
    }

    /// `h^1(E(k))` by Serre duality: `h^0(K (x) E(k)^*)` with `K = O(-2)`.
    pub fn h1_dim(&self, k: i64) -> usize {
        self.dual().h0_count(-k - 2)
    }

    /// `h0 - h1 = deg + rank` for `E(k)` (genus zero).
    pub fn riemann_roch_check(&self, k: i64) -> bool {
        let n = self.rank() as i64;
        let lhs = self.h0_count(k) as i64 - self.h1_dim(k) as i64;
        lhs == self.degree + n * k + n
    }

    /// Splitting type recovered from the section-count profile.
    pub fn splitting_type(&self) -> Result<SplittingType> {
        Ok(self.section_profile()?.0)
    }

    /// Splitting type together with the `(k, h0(E(k)))` samples it was read from.
    ///
    /// With `D(k) = h0(k) - h0(k-1) = #{i : d_i >= -k}`, exactly `D(k) - D(k-1)`
    /// indices equal `-k`. Since `d_1 <= max ord A`, the scan starts where
    /// `h0` is known to vanish and stops once `D(k) = n`.
    pub fn section_profile(&self) -> Result<(SplittingType, Vec<(i64, usize)>)> {
        let n = self.rank();
        let solver = self.solver();
        let (_, top) = self.transition.exponent_range().expect("invertible matrix is nonzero");
        let (_, inv_top) = self.inverse.exponent_range().expect("invertible matrix is nonzero");
        let mut k = -top - 1;
        // h0 vanishes below -d_1; step down in the (impossible) case it does not.
        while solver.count(k) != 0 {
            k -= top.abs() + 1;
        }
        let limit = inv_top + self.degree.abs() + n as i64 + 1;
        let mut profile = vec![(k, 0usize)];
        let mut prev_h = 0usize;
        let mut prev_delta = 0usize;
        let mut indices = Vec::with_capacity(n);
        while prev_delta < n {
            k += 1;
            if k > limit {
                return Err(Error::InternalConsistency(format!(
                    "section counts did not reach rank {n} by twist {limit}"
                )));
            }
            let h = solver.count(k);
            profile.push((k, h));
            let delta = h.checked_sub(prev_h).ok_or_else(|| {
                Error::InternalConsistency(format!("h0 decreased at twist {k}"))
            })?;
            if delta < prev_delta {
                return Err(Error::InternalConsistency(format!("section increments decreased at twist {k}")));
            }
            indices.extend(std::iter::repeat_n(-k, delta - prev_delta));
            prev_h = h;
            prev_delta = delta;
        }
        if prev_delta != n {
            return Err(Error::InternalConsistency(format!("section increments overshot rank {n}")));
        }
        let st = SplittingType::new(indices);
        if st.sum() != self.degree {
            return Err(Error::InternalConsistency(format!(
                "index sum {} differs from the degree {}",
                st.sum(),
                self.degree
            )));
        }
        Ok((st, profile))
    }

    /// Isomorphism test: equal ranks and equal splitting types.
    pub fn is_isomorphic(&self, other: &Self) -> Result<bool> {
        if self.rank() != other.rank() || self.degree != other.degree {
            return Ok(false);
        }
        Ok(self.splitting_type()? == other.splitting_type()?)
    }
}

impl<F: Field> fmt::Display for BundleOnP1<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bundle of rank {} with transition {}", self.rank(), self.transition)
    }
}

/// Sum of two bundles: block-diagonal transition.
pub fn direct_sum<F: Field>(a: &BundleOnP1<F>, b: &BundleOnP1<F>) -> BundleOnP1<F> {
    let (n, m) = (a.rank(), b.rank());
    let t = Matrix::from_fn(n + m, n + m, |i, j| match (i < n, j < n) {
        (true, true) => a.transition[(i, j)].clone(),
        (false, false) => b.transition[(i - n, j - n)].clone(),
        _ => LaurentPoly::zero(),
    });
    BundleOnP1::new(t).expect("sum of bundle data is a bundle datum")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QBundle, QLaurentMatrix, QLaurentPoly, Rat};

    fn x(e: i64) -> QLaurentPoly {
        QLaurentPoly::x_pow(e)
    }

    fn bundle(rows: Vec<Vec<QLaurentPoly>>) -> QBundle {
        BundleOnP1::new(Matrix::from_rows(rows).unwrap()).unwrap()
    }

    /// Worked example [[x, 1], [0, x^-1]].
    fn upper() -> QBundle {
        bundle(vec![vec![x(1), x(0)], vec![QLaurentPoly::zero(), x(-1)]])
    }

    #[test]
    fn line_bundle_section_counts() {
        let triv = QBundle::trivial(1);
        assert_eq!(triv.h0_dim(3).dimension, 4);
        assert_eq!(triv.h0_dim(-1).dimension, 0);
        for k in 0..6 {
            assert_eq!(QBundle::line(k).h0_count(0), (k + 1) as usize);
        }
    }

    #[test]
    fn worked_upper_triangular_example() {
        let e = upper();
        let space = e.h0_dim(0);
        // splitting (1, -1): max(0, 2) + max(0, 0)
        assert_eq!(space.dimension, 2);
        assert!(space.is_consistent_with(&e));
        assert_eq!(e.splitting_type().unwrap().indices(), &[1, -1]);
        assert_eq!(e.h1_dim(0), 0);
    }

    #[test]
    fn splitting_type_examples() {
        assert_eq!(QBundle::trivial(2).splitting_type().unwrap().indices(), &[0, 0]);
        assert_eq!(QBundle::split(&[-1, 3]).splitting_type().unwrap().indices(), &[3, -1]);
        // Constant off-diagonal term between O(-1) and O(1) gives O + O.
        let nontrivial = bundle(vec![vec![x(-1), x(0)], vec![QLaurentPoly::zero(), x(1)]]);
        assert_eq!(nontrivial.splitting_type().unwrap().indices(), &[0, 0]);
        // An x^-1 off-diagonal term is absorbed by the x^-1 diagonal entry.
        let absorbed = bundle(vec![vec![x(-1), x(-1)], vec![QLaurentPoly::zero(), x(1)]]);
        assert_eq!(absorbed.splitting_type().unwrap().indices(), &[1, -1]);
    }

    #[test]
    fn duals_twists_degrees() {
        assert_eq!(QBundle::split(&[2, -1]).degree(), 1);
        assert_eq!(QBundle::line(4).dual().splitting_type().unwrap().indices(), &[-4]);
        assert_eq!(upper().dual().splitting_type().unwrap().indices(), &[1, -1]);
        let e = QBundle::split(&[2, 0, -3]);
        assert_eq!(e.twist(2).degree(), e.degree() + 6);
        assert_eq!(e.twist(2).splitting_type().unwrap().indices(), &[4, 2, -1]);
        assert_eq!(e.det_bundle().splitting_type().unwrap().indices(), &[-1]);
    }

    #[test]
    fn h1_and_riemann_roch() {
        assert_eq!(QBundle::line(-3).h1_dim(0), 2);
        assert_eq!(QBundle::line(0).h1_dim(0), 0);
        assert!(QBundle::line(-3).riemann_roch_check(0));
        assert!(QBundle::trivial(2).riemann_roch_check(0));
        for k in -4..=4 {
            assert!(upper().riemann_roch_check(k));
        }
    }

    #[test]
    fn isomorphism() {
        let d = QBundle::split(&[1, -1]);
        assert!(d.is_isomorphic(&upper()).unwrap());
        assert!(!d.is_isomorphic(&QBundle::trivial(2)).unwrap());
        assert!(upper().is_isomorphic(&upper().twist(0)).unwrap());
    }

    #[test]
    fn invalid_data_is_rejected() {
        let sing = Matrix::from_rows(vec![vec![x(0), x(0)], vec![x(0), x(0)]]).unwrap();
        assert!(matches!(QBundle::new(sing), Err(Error::InvalidBundle(_))));
        let not_unit = QLaurentMatrix::diagonal(vec![&x(0) + &x(1)]);
        assert!(matches!(QBundle::new(not_unit), Err(Error::InvalidBundle(_))));
        let scaled = QLaurentMatrix::diagonal(vec![QLaurentPoly::monomial(Rat::from_int(5), 2)]);
        assert_eq!(QBundle::new(scaled).unwrap().splitting_type().unwrap().indices(), &[2]);
    }

    #[test]
    fn direct_sums_concatenate() {
        let s = direct_sum(&upper(), &QBundle::line(3));
        assert_eq!(s.splitting_type().unwrap().indices(), &[3, 1, -1]);
    }
}
