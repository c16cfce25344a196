use num_traits::One;

use super::frobenius::LocalSystemData;
use super::{FuchsRelation, Singularity};
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::{LaurentPoly, Matrix, Point, RatFunc};

/// `w' = (sum_p R_p / (z - p)) w` with distinct finite points `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct FuchsianSystem<F> {
    dim: usize,
    points: Vec<F>,
    residues: Vec<Matrix<F>>,
    /// Externally supplied residue at infinity, replacing `-sum_p R_p`.
    infinity: Option<Matrix<F>>,
}

/// Exponent data at one point: the characteristic polynomial of the
/// residue (in `lambda`, printed as `x`) and its trace.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentData<F> {
    pub point: Point<F>,
    pub residue: Matrix<F>,
    pub charpoly: LaurentPoly<F>,
    pub trace: F,
}

impl<F: Field> FuchsianSystem<F> {
    pub fn new(dim: usize, points: Vec<F>, residues: Vec<Matrix<F>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("a system needs dimension at least 1".into()));
        }
        if points.len() != residues.len() {
            return Err(Error::DimensionMismatch(format!("{} points but {} residues", points.len(), residues.len())));
        }
        if let Some(r) = residues.iter().find(|r| r.nrows() != dim || r.ncols() != dim) {
            return Err(Error::DimensionMismatch(format!("residue of shape {}x{} in a system of dimension {dim}", r.nrows(), r.ncols())));
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::InvalidInput(format!("point {p} is listed twice")));
            }
        }
        Ok(FuchsianSystem { dim, points, residues, infinity: None })
    }

    /// Replaces the residue at infinity, as for externally supplied data.
    pub fn with_residue_at_infinity(mut self, r: Matrix<F>) -> Result<Self> {
        if r.nrows() != self.dim || r.ncols() != self.dim {
            return Err(Error::DimensionMismatch("residue at infinity has the wrong shape".into()));
        }
        self.infinity = Some(r);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[F] {
        &self.points
    }

    pub fn residues(&self) -> &[Matrix<F>] {
        &self.residues
    }

    pub fn residue_at_infinity(&self) -> Matrix<F> {
        match &self.infinity {
            Some(r) => r.clone(),
            None => -&self.residues.iter().fold(Matrix::zeros(self.dim, self.dim), |acc, r| &acc + r),
        }
    }

    /// Residue at a marked point or infinity; `None` for an unmarked point.
    pub fn residue_at(&self, p: &Point<F>) -> Option<Matrix<F>> {
        match p {
            Point::Infinity => Some(self.residue_at_infinity()),
            Point::Finite(a) => self.points.iter().position(|q| q == a).map(|i| self.residues[i].clone()),
        }
    }

    /// `A(z) = sum_p R_p / (z - p)`.
    pub fn coefficient_matrix(&self) -> Matrix<RatFunc<F>> {
        let mut a = Matrix::zeros(self.dim, self.dim);
        for (p, r) in self.points.iter().zip(&self.residues) {
            let pole = RatFunc::new(LaurentPoly::one(), LaurentPoly::from_terms([(1, F::one()), (0, -p.clone())]));
            a = &a + &r.map(|c| &pole * &RatFunc::constant(c.clone()));
        }
        a
    }

    /// Residue and the first `order` tail coefficients at `p`, in `t = z - p`
    /// or `t = 1/z`.
    pub fn local_data(&self, p: &Point<F>, order: usize) -> Result<LocalSystemData<F>> {
        let residue = self.residue_at(p).ok_or_else(|| Error::InvalidInput(format!("{p} is not a marked point")))?;
        let mut tail = Vec::with_capacity(order);
        for m in 0..order {
            let mut rm = Matrix::zeros(self.dim, self.dim);
            for (q, r) in self.points.iter().zip(&self.residues) {
                // R_q / (t - c) = -sum_m R_q t^m / c^(m+1) with c = q - p, and
                // -t^-2 R_q / (1/t - q) = -sum_m R_q q^m t^(m-1) at infinity.
                let weight = match p {
                    Point::Finite(a) if a == q => continue,
                    Point::Finite(a) => {
                        let c = q.clone() - a;
                        -(pow(&c, m as u32 + 1).inv())
                    }
                    Point::Infinity => -pow(q, m as u32 + 1),
                };
                rm = &rm + &r.scale(&weight);
            }
            tail.push(rm);
        }
        LocalSystemData::new(residue, tail)
    }
}

fn pow<F: Field>(c: &F, e: u32) -> F {
    (0..e).fold(F::one(), |acc, _| acc * c)
}

/// Pole order of a rational matrix at `p`; at infinity, of `-zeta^-2 A(1/zeta)`.
fn pole_order<F: Field>(a: &Matrix<RatFunc<F>>, p: &Point<F>) -> i64 {
    let shift = if *p == Point::Infinity { 2 } else { 0 };
    a.iter().filter_map(|e| e.valuation(p)).map(|v| shift - v).max().unwrap_or(0).max(0)
}

/// Ordinary for no pole, first kind for a simple pole, otherwise rank = pole order - 1.
pub fn classify_singularity_system<F: Field>(a: &Matrix<RatFunc<F>>, p: &Point<F>) -> Singularity {
    match pole_order(a, p) {
        0 => Singularity::Ordinary,
        1 => Singularity::FirstKind,
        k => Singularity::SecondKind { rank: (k - 1) as u32 },
    }
}

pub fn exponents_system<F: Field>(sys: &FuchsianSystem<F>, p: &Point<F>) -> Result<ExponentData<F>> {
    let residue = sys.residue_at(p).ok_or_else(|| Error::InvalidInput(format!("{p} is not a marked point")))?;
    Ok(ExponentData { point: p.clone(), charpoly: residue.charpoly(), trace: residue.trace(), residue })
}

/// `sum_p Tr R_p + Tr R_inf = 0`.
pub fn fuchs_relation_system<F: Field>(sys: &FuchsianSystem<F>) -> FuchsRelation<F> {
    let total = sys.residues.iter().fold(sys.residue_at_infinity().trace(), |acc, r| acc + &r.trace());
    FuchsRelation { holds: total.is_zero(), lhs: total, rhs: F::zero(), singular_points: sys.points.len() + 1 }
}

/// `P^-1 A P - P^-1 P'`, the system satisfied by `v` where `w = P v`.
pub fn gauge_transform<F: Field>(a: &Matrix<RatFunc<F>>, p: &Matrix<RatFunc<F>>) -> Result<Matrix<RatFunc<F>>> {
    let n = a.nrows();
    if a.ncols() != n || p.nrows() != n || p.ncols() != n {
        return Err(Error::DimensionMismatch("gauge_transform needs square matrices of equal size".into()));
    }
    let p_inv = p.inverse().ok_or(Error::NotInvertible)?;
    let dp = p.map(RatFunc::derivative);
    Ok(&(&(&p_inv * a) * p) - &(&p_inv * &dp))
}
