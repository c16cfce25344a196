//! Univariate rational functions over an exact field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::Field;
use crate::LaurentPoly;

/// A reduced fraction `num / den` of polynomials with `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc<F> {
    num: LaurentPoly<F>,
    den: LaurentPoly<F>,
}

/// A point of the projective line with rational coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point<F> {
    Finite(F),
    Infinity,
}

impl<F: Field> fmt::Display for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(p) => write!(f, "{p}"),
            Point::Infinity => f.write_str("inf"),
        }
    }
}

impl<F: Field> RatFunc<F> {
    /// Builds `num / den`, cancelling common factors. Negative exponents are
    /// cleared first. Panics if `den` is zero.
    pub fn new(num: LaurentPoly<F>, den: LaurentPoly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        // Bring both to polynomials: multiply by x^s with s clearing both orders.
        let s = -(num.ord().unwrap().min(den.ord().unwrap())).min(0);
        let (mut num, mut den) = (num.shift(s), den.shift(s));
        // Remove common powers of x, then the remaining gcd.
        let common_x = num.ord().unwrap().min(den.ord().unwrap());
        num = num.shift(-common_x);
        den = den.shift(-common_x);
        let g = num.gcd(&den);
        if !g.is_one() {
            num = num.div_rem(&g).0;
            den = den.div_rem(&g).0;
        }
        let lc = den.leading_coeff().unwrap().inv();
        RatFunc { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn from_poly(p: LaurentPoly<F>) -> Self {
        Self::new(p, LaurentPoly::one())
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    /// The coordinate function `z`.
    pub fn z() -> Self {
        Self::from_poly(LaurentPoly::x_pow(1))
    }

    pub fn numer(&self) -> &LaurentPoly<F> {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }

    /// Composition with `z -> z + a`.
    pub fn translate(&self, a: &F) -> Self {
        Self::new(self.num.taylor_shift(a), self.den.taylor_shift(a))
    }

    /// Composition with `z -> 1/z`.
    pub fn invert_variable(&self) -> Self {
        Self::new(self.num.invert_variable(), self.den.invert_variable())
    }

    /// Order of vanishing at `z = 0` (negative for a pole); `None` for zero.
    pub fn valuation_at_zero(&self) -> Option<i64> {
        Some(self.num.ord()? - self.den.ord().unwrap())
    }

    /// Order of vanishing at `p` (negative for a pole); `None` for zero.
    pub fn valuation(&self, p: &Point<F>) -> Option<i64> {
        match p {
            Point::Finite(a) => self.translate(a).valuation_at_zero(),
            Point::Infinity => Some(self.den.deg().unwrap() - self.num.deg()?),
        }
    }

    /// Coefficient of `t^k` in the Laurent expansion at `p` in the local
    /// coordinate `t = z - p` (or `t = 1/z` at infinity), for `k` at most the
    /// valuation. Returns zero when `k` is below the valuation.
    pub fn leading_coefficient_at(&self, p: &Point<F>, k: i64) -> F {
        let local = match p {
            Point::Finite(a) => self.translate(a),
            Point::Infinity => self.invert_variable(),
        };
        let Some(v) = local.valuation_at_zero() else {
            return F::zero();
        };
        assert!(k <= v, "only the leading coefficient is available");
        if k < v {
            return F::zero();
        }
        local.num.trailing_coeff().unwrap().clone() / local.den.trailing_coeff().unwrap()
    }

    /// Value at a finite point where the function is regular.
    pub fn eval(&self, at: &F) -> Option<F> {
        let d = self.den.eval(at);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(at) / d)
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        RatFunc { num: self.num.pow(n), den: self.den.pow(n) }
    }
}

impl<F: Field> Zero for RatFunc<F> {
    fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> One for RatFunc<F> {
    fn one() -> Self {
        RatFunc { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }
}

impl<'a, F: Field> Add<&'a RatFunc<F>> for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn add(self, rhs: &'a RatFunc<F>) -> RatFunc<F> {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl<F: Field> Neg for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl<'a, F: Field> Sub<&'a RatFunc<F>> for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn sub(self, rhs: &'a RatFunc<F>) -> RatFunc<F> {
        self + &(-rhs)
    }
}

impl<'a, F: Field> Mul<&'a RatFunc<F>> for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn mul(self, rhs: &'a RatFunc<F>) -> RatFunc<F> {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a, F: Field> Div<&'a RatFunc<F>> for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn div(self, rhs: &'a RatFunc<F>) -> RatFunc<F> {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr<RatFunc<F>> for RatFunc<F> {
            type Output = RatFunc<F>;
            fn $m(self, rhs: RatFunc<F>) -> RatFunc<F> {
                (&self).$m(&rhs)
            }
        }
        impl<'a, F: Field> $tr<&'a RatFunc<F>> for RatFunc<F> {
            type Output = RatFunc<F>;
            fn $m(self, rhs: &'a RatFunc<F>) -> RatFunc<F> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl<F: Field> Neg for RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        -&self
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn from_int(n: i64) -> Self {
        Self::constant(F::from_int(n))
    }
}

/// `num` alone when the denominator is one, otherwise `(num) / (den)`.
impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl<F: fmt::Debug> fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RatFunc").field("num", &self.num).field("den", &self.den).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QRatFunc, Rat};

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly<Rat> {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, Rat::from_int(c))))
    }

    #[test]
    fn reduction_is_canonical() {
        // (x^2 - 1) / (2x - 2) = (x + 1) / 2
        let f = QRatFunc::new(poly(&[(2, 1), (0, -1)]), poly(&[(1, 2), (0, -2)]));
        assert!(f.is_polynomial());
        assert_eq!(f.numer(), &poly(&[(1, 1), (0, 1)]).scale(&Rat::new(1.into(), 2.into())));
        // x^-1 / 1 becomes 1 / x
        let g = QRatFunc::from_poly(poly(&[(-1, 1)]));
        assert_eq!(g.denom(), &poly(&[(1, 1)]));
        assert_eq!(g.to_string(), "(1) / (x)");
    }

    #[test]
    fn valuations() {
        let f = QRatFunc::new(poly(&[(0, 1)]), poly(&[(2, 1), (1, -1)])); // 1/(z(z-1))
        assert_eq!(f.valuation(&Point::Finite(Rat::zero())), Some(-1));
        assert_eq!(f.valuation(&Point::Finite(Rat::one())), Some(-1));
        assert_eq!(f.valuation(&Point::Finite(Rat::from_int(2))), Some(0));
        assert_eq!(f.valuation(&Point::Infinity), Some(2));
        assert_eq!(f.leading_coefficient_at(&Point::Finite(Rat::one()), -1), Rat::one());
        assert_eq!(f.leading_coefficient_at(&Point::Finite(Rat::zero()), -1), -Rat::one());
        assert_eq!(f.leading_coefficient_at(&Point::Infinity, 2), Rat::one());
    }

    #[test]
    fn field_operations() {
        let f = QRatFunc::new(poly(&[(1, 1)]), poly(&[(0, 1), (1, 1)]));
        let g = QRatFunc::new(poly(&[(0, 3)]), poly(&[(2, 1)]));
        assert_eq!(&(&f * &g) / &g, f);
        assert_eq!(&(&f + &g) - &g, f);
        assert_eq!(f.inv() * f.clone(), QRatFunc::one());
        // d/dz (1/z) = -1/z^2
        let inv_z = QRatFunc::z().inv();
        assert_eq!(inv_z.derivative(), -QRatFunc::z().pow(2).inv());
    }
}
