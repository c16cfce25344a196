//! Shared generators and oracles for the integration tests.
#![allow(dead_code)]

use birkhoff::{Field, Matrix, QLaurentMatrix, QLaurentPoly, QMatrix, Rat};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn x(e: i64) -> QLaurentPoly {
    QLaurentPoly::x_pow(e)
}

pub fn lm(rows: Vec<Vec<QLaurentPoly>>) -> QLaurentMatrix {
    Matrix::from_rows(rows).unwrap()
}

pub fn qm(rows: &[&[i64]]) -> QMatrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rat::from_int(v)).collect()).collect()).unwrap()
}

/// Nonzero rational with small numerator and denominator.
pub fn small_rat(rng: &mut impl Rng) -> Rat {
    let n = loop {
        let n = rng.gen_range(-4i64..=4);
        if n != 0 {
            break n;
        }
    };
    q(n, rng.gen_range(1i64..=3))
}

pub fn random_rat(rng: &mut impl Rng) -> Rat {
    if rng.gen_bool(0.3) {
        Rat::from_int(0)
    } else {
        small_rat(rng)
    }
}

pub fn random_rat_matrix(rng: &mut impl Rng, n: usize) -> QMatrix {
    Matrix::from_fn(n, n, |_, _| random_rat(rng))
}

pub fn random_invertible(rng: &mut impl Rng, n: usize) -> QMatrix {
    loop {
        let m = random_rat_matrix(rng, n);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Product of elementary matrices `I + c t^e E_ij` with `t = x` (`sign = 1`)
/// or `t = x^-1` (`sign = -1`), a permutation and a constant diagonal: an
/// element of `GL(n, Q[t])`.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, ops: usize, sign: i64) -> QLaurentMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let scale: Vec<QLaurentPoly> = (0..n).map(|_| QLaurentPoly::constant(small_rat(rng))).collect();
    let mut m = QLaurentMatrix::diagonal(scale).permute_rows(&perm);
    if n == 1 {
        return m;
    }
    for _ in 0..ops {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let e = sign * rng.gen_range(0i64..=1);
        let mut el = QLaurentMatrix::identity(n);
        el[(i, j)] = QLaurentPoly::monomial(small_rat(rng), e);
        m = &el * &m;
    }
    m
}

pub fn max_abs_exponent(a: &QLaurentMatrix) -> i64 {
    a.exponent_range().map_or(0, |(lo, hi)| lo.abs().max(hi.abs()))
}

/// `A = U diag(x^d) V` with `U` in `GL(n, Q[x])`, `V` in `GL(n, Q[x^-1])`,
/// `n <= 4` and every exponent of `A` in `[-3, 3]`. Returns `A` and the
/// planted indices in descending order.
pub fn planted_factorization(rng: &mut impl Rng) -> (QLaurentMatrix, Vec<i64>) {
    loop {
        let n = rng.gen_range(1..=4);
        let mut d: Vec<i64> = (0..n).map(|_| rng.gen_range(-2i64..=2)).collect();
        let (ops_u, ops_v) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let u = random_unimodular(rng, n, ops_u, 1);
        let v = random_unimodular(rng, n, ops_v, -1);
        let a = &(&u * &QLaurentMatrix::monomial_diagonal(&d)) * &v;
        if max_abs_exponent(&a) <= 3 {
            d.sort_by(|p, q| q.cmp(p));
            return (a, d);
        }
    }
}

/// Transition data of a random bundle: a planted factorization.
pub fn random_bundle_matrix(rng: &mut impl Rng) -> QLaurentMatrix {
    planted_factorization(rng).0
}

/// `h0(E(k))` by brute force: every `s1` with components in
/// `span{1, y, ..., y^bound}` such that `x^k A s1` has no negative powers.
pub fn h0_scan(a: &QLaurentMatrix, k: i64, bound: i64) -> usize {
    let n = a.nrows();
    if bound < 0 {
        return 0;
    }
    let width = bound as usize + 1;
    let nvars = n * width;
    let lowest = a.exponent_range().unwrap().0 + k - bound;
    let mut rows = Vec::new();
    for i in 0..n {
        for r in lowest..0 {
            let row: Vec<Rat> = (0..nvars)
                .map(|var| {
                    let (j, deg) = (var / width, (var % width) as i64);
                    // x^k a_ij y^deg contributes coeff of x^(r - k + deg).
                    a[(i, j)].coeff(r - k + deg)
                })
                .collect();
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return nvars;
    }
    nvars - Matrix::from_rows(rows).unwrap().rank()
}

/// Splitting type read off from brute-force section counts with a generous
/// degree bound: index `-k` appears `D(k) - D(k-1)` times.
pub fn splitting_by_scan(a: &QLaurentMatrix, reach: i64) -> Vec<i64> {
    let n = a.nrows();
    let h = |k: i64| h0_scan(a, k, k + 2 * reach);
    let mut indices = Vec::new();
    let mut prev_delta = 0usize;
    let mut prev = h(-reach - 1);
    assert_eq!(prev, 0, "sections below the scan start");
    let mut k = -reach - 1;
    while indices.len() < n {
        k += 1;
        assert!(k <= reach, "scan did not finish");
        let cur = h(k);
        let delta = cur - prev;
        for _ in prev_delta..delta {
            indices.push(-k);
        }
        prev = cur;
        prev_delta = delta;
    }
    indices
}
