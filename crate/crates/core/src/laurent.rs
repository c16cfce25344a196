//! Sparse univariate Laurent polynomials over an exact field.
//!
//! A [`LaurentPoly`] is a finite map from integer exponents to nonzero
//! coefficients. Polynomials (no negative exponents) are represented by the
//! same type; the polynomial-only operations (division with remainder, gcd,
//! Taylor shift) check that their inputs have no negative exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<F> {
    terms: BTreeMap<i64, F>,
}

impl<F: Field> LaurentPoly<F> {
    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents and dropping zero coefficients.
    pub fn from_terms<I: IntoIterator<Item = (i64, F)>>(terms: I) -> Self {
        let mut map: BTreeMap<i64, F> = BTreeMap::new();
        for (e, c) in terms {
            let slot = map.entry(e).or_insert_with(F::zero);
            *slot = slot.clone() + &c;
        }
        map.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: map }
    }

    pub fn monomial(coeff: F, exp: i64) -> Self {
        Self::from_terms([(exp, coeff)])
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0)
    }

    /// `x^exp` with coefficient one.
    pub fn x_pow(exp: i64) -> Self {
        Self::monomial(F::one(), exp)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &F)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> F {
        self.terms.get(&exp).cloned().unwrap_or_else(F::zero)
    }

    pub fn coeff_ref(&self, exp: i64) -> Option<&F> {
        self.terms.get(&exp)
    }

    /// Smallest exponent, `None` for the zero polynomial.
    pub fn ord(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Largest exponent, `None` for the zero polynomial.
    pub fn deg(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of the largest exponent.
    pub fn leading_coeff(&self) -> Option<&F> {
        self.terms.values().next_back()
    }

    /// Coefficient of the smallest exponent.
    pub fn trailing_coeff(&self) -> Option<&F> {
        self.terms.values().next()
    }

    /// No negative exponents (the zero polynomial counts).
    pub fn is_polynomial(&self) -> bool {
        self.ord().is_none_or(|o| o >= 0)
    }

    /// No positive exponents, i.e. an element of `F[x^-1]`.
    pub fn is_inverse_polynomial(&self) -> bool {
        self.deg().is_none_or(|d| d <= 0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    /// Returns `(c, t)` when `self = c * x^t` with `c != 0`, i.e. when `self`
    /// is a unit of `F[x, x^-1]`.
    pub fn as_unit(&self) -> Option<(F, i64)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    /// Constant value if `self` is a constant (zero included).
    pub fn as_constant(&self) -> Option<F> {
        if self.is_constant() {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.clone() * s)).collect(),
        }
    }

    /// The substitution `x -> 1/x`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| **e != 0)
                .map(|(e, c)| (e - 1, c.clone() * &F::from_int(*e))),
        )
    }

    /// Evaluates at `x = at`. Panics if `at` is zero and negative exponents occur.
    pub fn eval(&self, at: &F) -> F {
        if at.is_zero() {
            assert!(self.is_polynomial(), "evaluating a Laurent polynomial with poles at 0");
            return self.coeff(0);
        }
        let inv = at.inv();
        let mut acc = F::zero();
        for (e, c) in self.terms() {
            acc = acc + &(c.clone() * &pow_field(if e >= 0 { at } else { &inv }, e.unsigned_abs()));
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Polynomial with the leading coefficient normalised to one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.inv()),
            None => Self::zero(),
        }
    }

    /// Taylor shift `p(x) -> p(x + a)`. Requires a polynomial.
    pub fn taylor_shift(&self, a: &F) -> Self {
        assert!(self.is_polynomial(), "taylor_shift needs a polynomial");
        // Horner in x + a.
        let lin = Self::from_terms([(0, a.clone()), (1, F::one())]);
        let Some(deg) = self.deg() else {
            return Self::zero();
        };
        let mut acc = Self::zero();
        for e in (0..=deg).rev() {
            acc = &(&acc * &lin) + &Self::constant(self.coeff(e));
        }
        acc
    }

    /// Polynomial division with remainder. Both operands must be polynomials
    /// and the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(self.is_polynomial() && divisor.is_polynomial(), "div_rem needs polynomials");
        let dd = divisor.deg().expect("division by the zero polynomial");
        let lc_inv = divisor.leading_coeff().unwrap().inv();
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some(rd) = rem.deg() {
            if rd < dd {
                break;
            }
            let c = rem.leading_coeff().unwrap().clone() * &lc_inv;
            let t = LaurentPoly::monomial(c.clone(), rd - dd);
            rem = &rem - &(&t * divisor);
            quot.insert(rd - dd, c);
        }
        (LaurentPoly { terms: quot }, rem)
    }

    /// Monic greatest common divisor of two polynomials (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact quotient in `F[x, x^-1]`, or `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let od = divisor.ord()?;
        let Some(os) = self.ord() else {
            return Some(Self::zero());
        };
        // Strip the monomial parts so both become polynomials with nonzero constant term.
        let num = self.shift(-os);
        let den = divisor.shift(-od);
        let (q, r) = num.div_rem(&den);
        if r.is_zero() {
            Some(q.shift(os - od))
        } else {
            None
        }
    }

    /// Squarefree kernel of a polynomial: the monic product of its distinct
    /// irreducible factors.
    pub fn squarefree_kernel(&self) -> Self {
        if self.deg().is_none_or(|d| d == 0) {
            return Self::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Number of distinct roots over an algebraic closure.
    pub fn distinct_root_count(&self) -> usize {
        self.squarefree_kernel().deg().unwrap_or(0) as usize
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> LaurentPoly<G> {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }
}

fn pow_field<F: Field>(base: &F, mut n: u64) -> F {
    let mut acc = F::one();
    let mut b = base.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * &b;
        }
        b = b.clone() * &b;
        n >>= 1;
    }
    acc
}

impl<F: Field> Zero for LaurentPoly<F> {
    fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Field> One for LaurentPoly<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<'a, F: Field> Add<&'a LaurentPoly<F>> for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn add(self, rhs: &'a LaurentPoly<F>) -> LaurentPoly<F> {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            match terms.get_mut(e) {
                Some(slot) => {
                    let s = slot.clone() + c;
                    if s.is_zero() {
                        terms.remove(e);
                    } else {
                        *slot = s;
                    }
                }
                None => {
                    terms.insert(*e, c.clone());
                }
            }
        }
        LaurentPoly { terms }
    }
}

impl<F: Field> Neg for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn neg(self) -> LaurentPoly<F> {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl<'a, F: Field> Sub<&'a LaurentPoly<F>> for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn sub(self, rhs: &'a LaurentPoly<F>) -> LaurentPoly<F> {
        self + &(-rhs)
    }
}

impl<'a, F: Field> Mul<&'a LaurentPoly<F>> for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn mul(self, rhs: &'a LaurentPoly<F>) -> LaurentPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut terms: BTreeMap<i64, F> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let slot = terms.entry(ea + eb).or_insert_with(F::zero);
                *slot = slot.clone() + &(ca.clone() * cb);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr<LaurentPoly<F>> for LaurentPoly<F> {
            type Output = LaurentPoly<F>;
            fn $m(self, rhs: LaurentPoly<F>) -> LaurentPoly<F> {
                (&self).$m(&rhs)
            }
        }
        impl<'a, F: Field> $tr<&'a LaurentPoly<F>> for LaurentPoly<F> {
            type Output = LaurentPoly<F>;
            fn $m(self, rhs: &'a LaurentPoly<F>) -> LaurentPoly<F> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Field> Neg for LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn neg(self) -> LaurentPoly<F> {
        -&self
    }
}

impl<F: Field> From<F> for LaurentPoly<F> {
    fn from(c: F) -> Self {
        Self::constant(c)
    }
}

fn fmt_term<F: Field>(f: &mut fmt::Formatter<'_>, exp: i64, coeff: &F, first: bool) -> fmt::Result {
    let text = coeff.to_string();
    let (negative, magnitude) = match text.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, text),
    };
    if first {
        if negative {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if negative { " - " } else { " + " })?;
    }
    let unit = magnitude == "1";
    match exp {
        0 => f.write_str(&magnitude),
        1 if unit => f.write_str("x"),
        1 => write!(f, "{magnitude}*x"),
        _ if unit => write!(f, "x^{exp}"),
        _ => write!(f, "{magnitude}*x^{exp}"),
    }
}

/// Canonical text form: terms in ascending exponent order, e.g. `-x^-1 + 1 + 3/2*x^2`.
impl<F: Field> fmt::Display for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            fmt_term(f, *e, c, i == 0)?;
        }
        Ok(())
    }
}

impl<F: fmt::Debug> fmt::Debug for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("LaurentPoly")?;
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    type P = LaurentPoly<Rat>;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn p(terms: &[(i64, i64)]) -> P {
        P::from_terms(terms.iter().map(|&(e, c)| (e, Rat::from_int(c))))
    }

    #[test]
    fn product_examples() {
        // (x + x^-1) * x = x^2 + 1
        assert_eq!(&p(&[(1, 1), (-1, 1)]) * &P::x_pow(1), p(&[(2, 1), (0, 1)]));
        assert!((&p(&[(3, 5)]) * &P::zero()).is_zero());
        // (x^-1 + 2)(x - 1) = 1 - x^-1 + 2x - 2 = 2x - 1 - x^-1
        let prod = &p(&[(-1, 1), (0, 2)]) * &p(&[(1, 1), (0, -1)]);
        assert_eq!(prod, p(&[(1, 2), (0, -1), (-1, -1)]));
        assert_eq!(prod.ord(), Some(-1));
        assert_eq!(prod.deg(), Some(1));
    }

    #[test]
    fn unit_detection() {
        assert_eq!(p(&[(2, 3)]).as_unit(), Some((Rat::from_int(3), 2)));
        assert_eq!(p(&[(1, 1), (0, 1)]).as_unit(), None);
        assert_eq!(P::monomial(q(-1, 2), -5).as_unit(), Some((q(-1, 2), -5)));
        assert_eq!(P::zero().as_unit(), None);
    }

    #[test]
    fn display_is_ascending() {
        let poly = P::from_terms([(2, q(3, 2)), (-1, Rat::one()), (0, Rat::from_int(-4))]);
        assert_eq!(poly.to_string(), "x^-1 - 4 + 3/2*x^2");
        assert_eq!((-&P::x_pow(1)).to_string(), "-x");
        assert_eq!(P::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let a = p(&[(-1, 1), (0, 2)]);
        let b = p(&[(1, 1), (0, -1)]);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a), Some(b.clone()));
        assert_eq!(prod.exact_div(&b), Some(a));
        assert_eq!(p(&[(0, 1), (1, 1)]).exact_div(&p(&[(0, 1), (2, 1)])), None);
    }

    #[test]
    fn gcd_and_kernel() {
        // (x-1)^2 (x+2) and (x-1)(x+3)
        let a = &p(&[(0, 1), (1, -2), (2, 1)]) * &p(&[(0, 2), (1, 1)]);
        let b = &p(&[(0, -1), (1, 1)]) * &p(&[(0, 3), (1, 1)]);
        assert_eq!(a.gcd(&b), p(&[(0, -1), (1, 1)]));
        assert_eq!(a.distinct_root_count(), 2);
    }

    #[test]
    fn taylor_shift_and_eval() {
        let poly = p(&[(0, 1), (1, 2), (3, 1)]);
        let shifted = poly.taylor_shift(&Rat::from_int(2));
        for t in -3..3 {
            let t = Rat::from_int(t);
            assert_eq!(shifted.eval(&t), poly.eval(&(t.clone() + Rat::from_int(2))));
        }
        assert_eq!(p(&[(-2, 4)]).eval(&Rat::from_int(2)), Rat::one());
    }

    #[test]
    fn generic_over_small_rationals() {
        let a: LaurentPoly<num_rational::Ratio<i64>> =
            LaurentPoly::from_terms([(1, num_rational::Ratio::new(1, 2)), (-1, num_rational::Ratio::from_integer(3))]);
        let sq = &a * &a;
        assert_eq!(sq.coeff(0), num_rational::Ratio::from_integer(3));
    }
}
