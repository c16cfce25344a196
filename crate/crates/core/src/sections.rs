//! Global sections of a twisted bundle `E(k)` as an exact linear system.
//!
//! A section is a pair `(s0, s1)` with `s0 = x^k A(x) s1` where `s0` has no
//! negative exponents and `s1` no positive ones (`s1` is a polynomial vector
//! in `y = 1/x`). The unknowns are the coefficients of `s1`; the equations say
//! that every negative-exponent coefficient of `x^k A s1` vanishes.
//!
//! Degree bound: from `s1 = x^-k A^-1 s0` and `s0 in F[x]^n`, the `y`-degree
//! of component `j` is at most `k - min_l ord((A^-1)_{jl})`. The bound is
//! exact, so the computed space is the full space of sections.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::scalar::Field;
use crate::{LaurentMatrix, LaurentPoly, Matrix};

pub(crate) type Section<F> = (Vec<LaurentPoly<F>>, Vec<LaurentPoly<F>>);

pub(crate) struct SectionSolver<'a, F> {
    transition: &'a LaurentMatrix<F>,
    /// `-min_l ord((A^-1)_{jl})` per component.
    slack: Vec<i64>,
}

impl<'a, F: Field> SectionSolver<'a, F> {
    pub(crate) fn new(transition: &'a LaurentMatrix<F>, inverse: &LaurentMatrix<F>) -> Self {
        let n = transition.nrows();
        let slack = (0..n)
            .map(|j| {
                let lo = inverse.row(j).iter().filter_map(LaurentPoly::ord).min().expect("invertible matrix has no zero row");
                -lo
            })
            .collect();
        SectionSolver { transition, slack }
    }

    /// Highest `y`-degree allowed for component `j` at twist `k`; negative
    /// means the component vanishes.
    fn degree_bound(&self, j: usize, k: i64) -> i64 {
        k + self.slack[j]
    }

    /// Variable offsets per component; `offsets[n]` is the total count.
    fn layout(&self, k: i64) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.slack.len() + 1);
        let mut acc = 0usize;
        for j in 0..self.slack.len() {
            offsets.push(acc);
            acc += (self.degree_bound(j, k) + 1).max(0) as usize;
        }
        offsets.push(acc);
        offsets
    }

    fn system(&self, k: i64) -> (Matrix<F>, Vec<usize>) {
        let n = self.transition.nrows();
        let offsets = self.layout(k);
        let nvars = offsets[n];
        let mut rows: BTreeMap<(usize, i64), Vec<(usize, F)>> = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let entry = &self.transition[(i, j)];
                for a in 0..(offsets[j + 1] - offsets[j]) {
                    for (e, c) in entry.terms() {
                        let r = k + e - a as i64;
                        if r < 0 {
                            rows.entry((i, r)).or_default().push((offsets[j] + a, c.clone()));
                        }
                    }
                }
            }
        }
        let mut m = Matrix::<F>::zeros(rows.len(), nvars);
        for (row, entries) in rows.values().enumerate() {
            for (col, c) in entries {
                m[(row, *col)] = m[(row, *col)].clone() + c;
            }
        }
        (m, offsets)
    }

    /// `h^0(E(k))`.
    pub(crate) fn count(&self, k: i64) -> usize {
        let (m, offsets) = self.system(k);
        let nvars = *offsets.last().unwrap();
        if nvars == 0 {
            return 0;
        }
        nvars - m.rank()
    }

    /// Echelon-normalised basis of the sections of `E(k)`.
    pub(crate) fn basis(&self, k: i64) -> Vec<Section<F>> {
        let (m, offsets) = self.system(k);
        if *offsets.last().unwrap() == 0 {
            return Vec::new();
        }
        m.nullspace().into_iter().map(|v| self.section_from_coords(k, &offsets, &v)).collect()
    }

    fn section_from_coords(&self, k: i64, offsets: &[usize], v: &[F]) -> Section<F> {
        let n = self.transition.nrows();
        let s1: Vec<LaurentPoly<F>> = (0..n)
            .map(|j| LaurentPoly::from_terms((offsets[j]..offsets[j + 1]).map(|idx| (-((idx - offsets[j]) as i64), v[idx].clone()))))
            .collect();
        let s0 = self.transition.mul_vec(&s1).into_iter().map(|p| p.shift(k)).collect();
        (s0, s1)
    }

    /// Coordinates of an `s1` vector in the level-`k` variable layout.
    pub(crate) fn coords(&self, k: i64, s1: &[LaurentPoly<F>]) -> Vec<F> {
        let offsets = self.layout(k);
        let mut v = vec![F::zero(); *offsets.last().unwrap()];
        for (j, p) in s1.iter().enumerate() {
            for (e, c) in p.terms() {
                let a = (-e) as usize;
                assert!(e <= 0 && offsets[j] + a < offsets[j + 1], "section exceeds the degree bound");
                v[offsets[j] + a] = c.clone();
            }
        }
        v
    }
}

/// `true` when `v` lies outside the span of `rows` (all of equal length).
pub(crate) fn extends_span<F: Field>(rows: &[Vec<F>], v: &[F]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return false;
    }
    if rows.is_empty() {
        return true;
    }
    let base = Matrix::from_rows(rows.to_vec()).unwrap().rank();
    let mut with = rows.to_vec();
    with.push(v.to_vec());
    Matrix::from_rows(with).unwrap().rank() > base
}
