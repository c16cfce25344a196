use num_traits::{One, Zero};

use super::{FuchsRelation, Singularity};
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::{LaurentPoly, Point, RatFunc};

/// `w^(n) + a_{n-1} w^(n-1) + ... + a_0 w = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarODE<F> {
    /// `coeffs[i] = a_i`, `i < n`.
    coeffs: Vec<RatFunc<F>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IndicialData<F> {
    pub point: Point<F>,
    /// Monic of degree `n` in `rho` (printed as `x`).
    pub polynomial: LaurentPoly<F>,
    pub exponent_sum: F,
}

impl<F: Field> ScalarODE<F> {
    /// `coeffs[i]` is the coefficient of `w^(i)`; the order is `coeffs.len()`.
    pub fn new(coeffs: Vec<RatFunc<F>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("a scalar equation needs order at least 1".into()));
        }
        Ok(ScalarODE { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_i`.
    pub fn coeff(&self, i: usize) -> &RatFunc<F> {
        &self.coeffs[i]
    }

    pub fn coefficients(&self) -> &[RatFunc<F>] {
        &self.coeffs
    }

    /// The same equation in `t = z - p`.
    pub fn translate(&self, p: &F) -> Self {
        ScalarODE { coeffs: self.coeffs.iter().map(|a| a.translate(p)).collect() }
    }

    /// The same equation in `zeta = 1/z`, using `d/dz = -zeta^2 d/dzeta`.
    pub fn at_infinity(&self) -> Self {
        let n = self.order();
        let minus_zeta2 = -RatFunc::from_poly(LaurentPoly::x_pow(2));
        // powers[j] = coefficients of (d/dz)^k as an operator in d/dzeta.
        let mut powers: Vec<RatFunc<F>> = vec![RatFunc::one()];
        let mut total: Vec<RatFunc<F>> = vec![RatFunc::zero(); n + 1];
        for k in 0..=n {
            let a = if k == n { RatFunc::one() } else { self.coeffs[k].invert_variable() };
            for (j, c) in powers.iter().enumerate() {
                total[j] = &total[j] + &(&a * c);
            }
            if k < n {
                let mut next = vec![RatFunc::zero(); powers.len() + 1];
                for (j, c) in powers.iter().enumerate() {
                    next[j] = &next[j] + &(&minus_zeta2 * &c.derivative());
                    next[j + 1] = &next[j + 1] + &(&minus_zeta2 * c);
                }
                powers = next;
            }
        }
        let lead = total[n].clone();
        ScalarODE { coeffs: total[..n].iter().map(|c| c / &lead).collect() }
    }

    /// The equation in a local coordinate vanishing at `p`.
    pub fn localize(&self, p: &Point<F>) -> Self {
        match p {
            Point::Finite(a) => self.translate(a),
            Point::Infinity => self.at_infinity(),
        }
    }

    /// Monic squarefree polynomial whose roots are the finite singular points.
    pub fn finite_singular_locus(&self) -> LaurentPoly<F> {
        let mut acc = LaurentPoly::one();
        for a in &self.coeffs {
            let g = acc.gcd(a.denom());
            acc = &acc * &a.denom().div_rem(&g).0;
        }
        acc.squarefree_kernel()
    }
}

/// Classification at `z = 0` of an equation already in local coordinates.
fn classify_at_zero<F: Field>(ode: &ScalarODE<F>) -> Singularity {
    let n = ode.order() as i64;
    let mut ordinary = true;
    let mut rank = 0i64;
    for (i, a) in ode.coeffs.iter().enumerate() {
        let Some(v) = a.valuation_at_zero() else { continue };
        ordinary &= v >= 0;
        let k = n - i as i64;
        rank = rank.max(-(v + k));
    }
    if rank > 0 {
        Singularity::SecondKind { rank: rank as u32 }
    } else if ordinary {
        Singularity::Ordinary
    } else {
        Singularity::FirstKind
    }
}

pub fn classify_singularity_scalar<F: Field>(ode: &ScalarODE<F>, p: &Point<F>) -> Singularity {
    classify_at_zero(&ode.localize(p))
}

/// `rho (rho - 1) ... (rho - m + 1)`.
fn falling_factorial<F: Field>(m: usize) -> LaurentPoly<F> {
    (0..m).fold(LaurentPoly::one(), |acc, j| {
        &acc * &LaurentPoly::from_terms([(1, F::one()), (0, -F::from_int(j as i64))])
    })
}

/// `sum_k b_{n-k}(p) rho^(n-k)` with `b_n = 1` and `rho^(m)` the falling factorial.
pub fn indicial_polynomial<F: Field>(ode: &ScalarODE<F>, p: &Point<F>) -> Result<IndicialData<F>> {
    let local = ode.localize(p);
    if !classify_at_zero(&local).is_first_kind() {
        return Err(Error::NotFirstKind { point: p.to_string() });
    }
    let n = ode.order();
    let origin = Point::Finite(F::zero());
    let b: Vec<F> = (0..n).map(|i| local.coeffs[i].leading_coefficient_at(&origin, i as i64 - n as i64)).collect();
    let mut polynomial = falling_factorial(n);
    for (i, bi) in b.iter().enumerate() {
        polynomial = &polynomial + &falling_factorial(i).scale(bi);
    }
    let half = F::from_int((n * (n - 1) / 2) as i64);
    let exponent_sum = half - b[n - 1].clone();
    Ok(IndicialData { point: p.clone(), polynomial, exponent_sum })
}

/// Sum of the residues of `f` at all finite points.
fn total_finite_residue<F: Field>(f: &RatFunc<F>) -> F {
    let den = f.denom();
    let d = den.deg().unwrap();
    if d == 0 {
        return F::zero();
    }
    let r = f.numer().div_rem(den).1;
    r.coeff(d - 1)
}

/// Checks `sum_P E_P = n(n-1)/2 (N - 2)` over all singular points, infinity included.
pub fn fuchs_relation_scalar<F: Field>(ode: &ScalarODE<F>) -> Result<FuchsRelation<F>> {
    let n = ode.order();
    let locus = ode.finite_singular_locus();
    for (i, a) in ode.coeffs.iter().enumerate() {
        let k = (n - i) as u32;
        let den = a.denom();
        let bound = locus.pow(k);
        let g = den.gcd(&bound);
        let excess = den.div_rem(&g).0;
        if excess.deg().unwrap() > 0 {
            let bad = excess.squarefree_kernel();
            let point = if bad.deg() == Some(1) {
                (-bad.coeff(0)).to_string()
            } else {
                format!("a root of {bad}")
            };
            return Err(Error::NotFuchsian { point });
        }
    }
    let at_inf = classify_singularity_scalar(ode, &Point::Infinity);
    if !at_inf.is_first_kind() {
        return Err(Error::NotFuchsian { point: Point::<F>::Infinity.to_string() });
    }
    let finite_points = locus.deg().unwrap() as usize;
    let half = F::from_int((n * (n - 1) / 2) as i64);
    let mut lhs = half.clone() * &F::from_int(finite_points as i64) - total_finite_residue(&ode.coeffs[n - 1]);
    let mut singular_points = finite_points;
    if at_inf != Singularity::Ordinary {
        lhs = lhs + &indicial_polynomial(ode, &Point::Infinity)?.exponent_sum;
        singular_points += 1;
    }
    let rhs = half * &F::from_int(singular_points as i64 - 2);
    Ok(FuchsRelation { holds: lhs == rhs, lhs, rhs, singular_points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QLaurentPoly, QRatFunc, Rat};

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn poly(terms: &[(i64, Rat)]) -> QLaurentPoly {
        QLaurentPoly::from_terms(terms.iter().cloned())
    }

    fn z_pow(k: i64, c: Rat) -> QRatFunc {
        QRatFunc::new(QLaurentPoly::monomial(c, k), QLaurentPoly::one())
    }

    fn origin() -> Point<Rat> {
        Point::Finite(Rat::zero())
    }

    /// Gauss hypergeometric equation.
    fn hypergeometric(a: Rat, b: Rat, c: Rat) -> ScalarODE<Rat> {
        let zz = poly(&[(1, q(1, 1)), (2, q(-1, 1))]); // z(1 - z)
        let a1 = QRatFunc::new(poly(&[(0, c.clone()), (1, -(a.clone() + &b + Rat::one()))]), zz.clone());
        let a0 = QRatFunc::new(poly(&[(0, -(a * b))]), zz);
        ScalarODE::new(vec![a0, a1]).unwrap()
    }

    /// `w'' + (1/z) w' + (s/z^2) w = 0`.
    fn euler(s: i64) -> ScalarODE<Rat> {
        ScalarODE::new(vec![z_pow(-2, q(s, 1)), z_pow(-1, q(1, 1))]).unwrap()
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_singularity_scalar(&euler(1), &origin()), Singularity::FirstKind);
        let irregular = ScalarODE::new(vec![z_pow(-2, q(1, 1))]).unwrap();
        assert_eq!(classify_singularity_scalar(&irregular, &origin()), Singularity::SecondKind { rank: 1 });
        let h = hypergeometric(q(1, 3), q(2, 5), q(1, 2));
        for p in [origin(), Point::Finite(q(1, 1)), Point::Infinity] {
            assert_eq!(classify_singularity_scalar(&h, &p), Singularity::FirstKind);
        }
        assert_eq!(classify_singularity_scalar(&h, &Point::Finite(q(2, 1))), Singularity::Ordinary);
    }

    #[test]
    fn euler_indicial_and_infinity() {
        let data = indicial_polynomial(&euler(-1), &origin()).unwrap();
        assert_eq!(data.polynomial, poly(&[(2, q(1, 1)), (0, q(-1, 1))]));
        assert_eq!(data.exponent_sum, Rat::zero());
        // In zeta = 1/z the Euler equation keeps its form.
        assert_eq!(euler(-1).at_infinity(), euler(-1));
        let rel = fuchs_relation_scalar(&euler(-1)).unwrap();
        assert!(rel.holds);
        assert_eq!((rel.lhs, rel.rhs, rel.singular_points), (Rat::zero(), Rat::zero(), 2));
    }

    #[test]
    fn ordinary_point_of_free_particle() {
        let free = ScalarODE::new(vec![QRatFunc::zero(), QRatFunc::zero()]).unwrap();
        let data = indicial_polynomial(&free, &origin()).unwrap();
        assert_eq!(data.polynomial, poly(&[(2, q(1, 1)), (1, q(-1, 1))]));
        assert_eq!(data.exponent_sum, Rat::one());
        // w'' = 0 has a second-order pole of its zeta-coefficient at infinity.
        assert_eq!(classify_singularity_scalar(&free, &Point::Infinity), Singularity::FirstKind);
    }

    #[test]
    fn hypergeometric_exponents() {
        let (a, b, c) = (q(1, 3), q(2, 5), q(1, 2));
        let h = hypergeometric(a.clone(), b.clone(), c.clone());
        let at0 = indicial_polynomial(&h, &origin()).unwrap();
        assert_eq!(at0.exponent_sum, q(1, 2));
        // rho (rho - (1 - c))
        assert_eq!(at0.polynomial, poly(&[(2, q(1, 1)), (1, c.clone() - Rat::one())]));
        let at1 = indicial_polynomial(&h, &Point::Finite(q(1, 1))).unwrap();
        assert_eq!(at1.exponent_sum, c.clone() - &a - &b);
        let inf = indicial_polynomial(&h, &Point::Infinity).unwrap();
        // (rho - a)(rho - b)
        assert_eq!(inf.polynomial, poly(&[(2, q(1, 1)), (1, -(a.clone() + &b)), (0, a.clone() * &b)]));
        let rel = fuchs_relation_scalar(&h).unwrap();
        assert!(rel.holds);
        assert_eq!((rel.lhs, rel.rhs, rel.singular_points), (Rat::one(), Rat::one(), 3));
    }

    #[test]
    fn irregular_equations_are_rejected() {
        let irregular = ScalarODE::new(vec![z_pow(-3, q(1, 1)), QRatFunc::zero()]).unwrap();
        assert_eq!(fuchs_relation_scalar(&irregular), Err(Error::NotFuchsian { point: "0".into() }));
        assert!(matches!(indicial_polynomial(&irregular, &origin()), Err(Error::NotFirstKind { .. })));
        // w' = w is irregular at infinity only.
        let exp = ScalarODE::new(vec![QRatFunc::constant(q(-1, 1))]).unwrap();
        assert_eq!(fuchs_relation_scalar(&exp), Err(Error::NotFuchsian { point: "inf".into() }));
    }

    #[test]
    fn irrational_singular_points() {
        // w' - (2z / (z^2 + 1)) w = 0: simple poles at +-i, residues 1 each, -2 at infinity.
        let a0 = QRatFunc::new(poly(&[(1, q(-2, 1))]), poly(&[(2, q(1, 1)), (0, q(1, 1))]));
        let ode = ScalarODE::new(vec![a0]).unwrap();
        let rel = fuchs_relation_scalar(&ode).unwrap();
        assert!(rel.holds);
        assert_eq!(rel.singular_points, 3);
        let bad = ScalarODE::new(vec![QRatFunc::new(poly(&[(0, q(1, 1))]), poly(&[(2, q(1, 1)), (0, q(1, 1))]).pow(2))]).unwrap();
        assert_eq!(fuchs_relation_scalar(&bad), Err(Error::NotFuchsian { point: "a root of 1 + x^2".into() }));
    }
}
