//! Rational roots of polynomials over the rationals.
//!
//! The squarefree part is isolated with a Sturm sequence until each interval
//! holds one real root and is narrower than `1 / (2 L^2)`, where `L` is the
//! leading coefficient after clearing denominators. A rational root `p/q`
//! has `q | L`, and two fractions with denominator at most `L` differ by at
//! least `1 / L^2`, so the simplest fraction in the interval is the only
//! possible rational root there.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{QLaurentPoly, Rat};

/// Distinct rational roots with multiplicities, in increasing order.
/// `p` must be a nonzero polynomial (no negative exponents).
pub fn rational_roots(p: &QLaurentPoly) -> Vec<(Rat, usize)> {
    assert!(p.is_polynomial() && !p.is_zero(), "rational_roots needs a nonzero polynomial");
    let mut roots = Vec::new();
    let zero_mult = p.ord().unwrap();
    let f = p.shift(-zero_mult);
    if zero_mult > 0 {
        roots.push((Rat::zero(), zero_mult as usize));
    }
    if f.deg().unwrap() == 0 {
        return roots;
    }
    let g = squarefree_part(&f);
    for r in isolate(&g) {
        let linear = QLaurentPoly::from_terms([(1, Rat::one()), (0, -r.clone())]);
        let mut rest = f.clone();
        let mut mult = 0;
        while let Some(q) = rest.exact_div(&linear) {
            rest = q;
            mult += 1;
        }
        roots.push((r, mult));
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    roots
}

/// `true` when `p` is a product of linear factors over the rationals.
pub fn splits(p: &QLaurentPoly) -> bool {
    let total: usize = rational_roots(p).iter().map(|(_, m)| m).sum();
    total as i64 == p.deg().unwrap()
}

fn squarefree_part(f: &QLaurentPoly) -> QLaurentPoly {
    let g = f.gcd(&f.derivative());
    f.div_rem(&g).0.monic()
}

fn sturm_sequence(g: &QLaurentPoly) -> Vec<QLaurentPoly> {
    let mut seq = vec![g.clone(), g.derivative()];
    loop {
        let (a, b) = (&seq[seq.len() - 2], &seq[seq.len() - 1]);
        let r = a.div_rem(b).1;
        if r.is_zero() {
            return seq;
        }
        seq.push(-r);
    }
}

fn sign_changes(seq: &[QLaurentPoly], at: &Rat) -> usize {
    let signs: Vec<bool> = seq.iter().map(|p| p.eval(at)).filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Leading coefficient of the primitive integer multiple of `g`.
fn integer_leading(g: &QLaurentPoly) -> BigInt {
    let lcm = g.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let scaled: Vec<BigInt> = g.terms().map(|(_, c)| (c * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let content = scaled.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    (g.leading_coeff().unwrap() * Rat::from_integer(lcm) / Rat::from_integer(content)).to_integer().abs()
}

fn isolate(g: &QLaurentPoly) -> Vec<Rat> {
    let lead = g.leading_coeff().unwrap().clone();
    let bound = g.terms().map(|(_, c)| (c / &lead).abs()).fold(Rat::zero(), |a, b| if b > a { b } else { a }) + Rat::one();
    let l = Rat::from_integer(integer_leading(g));
    let width = Rat::one() / (Rat::from_integer(2.into()) * &l * &l);
    let seq = sturm_sequence(g);
    let mut found = Vec::new();
    // Intervals (a, b] with their root counts.
    let lo = -bound.clone();
    let mut stack = vec![(lo.clone(), bound.clone(), sign_changes(&seq, &lo) - sign_changes(&seq, &bound))];
    while let Some((a, b, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 && &b - &a < width {
            let candidate = simplest_between(&a, &b);
            if candidate > a && g.eval(&candidate).is_zero() {
                found.push(candidate);
            }
            continue;
        }
        let mid = (&a + &b) / Rat::from_integer(2.into());
        let vm = sign_changes(&seq, &mid);
        let left = sign_changes(&seq, &a) - vm;
        stack.push((a, mid.clone(), left));
        stack.push((mid, b, count - left));
    }
    found
}

/// The fraction with the smallest denominator in `[a, b]`, `a <= b`.
fn simplest_between(a: &Rat, b: &Rat) -> Rat {
    if b.is_negative() {
        return -simplest_between(&-b, &-a);
    }
    if !a.is_positive() {
        return Rat::zero();
    }
    let fl = a.floor();
    if &fl == a {
        return fl;
    }
    let next = &fl + Rat::one();
    if &next <= b {
        return next;
    }
    let inner = simplest_between(&(Rat::one() / (b - &fl)), &(Rat::one() / (a - &fl)));
    fl + Rat::one() / inner
}
