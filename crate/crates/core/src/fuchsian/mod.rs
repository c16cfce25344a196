//! Singularities of linear differential equations on the projective line.
//!
//! Scalar equations `w^(n) + a_{n-1} w^(n-1) + ... + a_0 w = 0` and systems
//! `w' = A(z) w` with rational coefficients. A point `p` is of the first kind
//! when `(z-p)^k a_{n-k}` is holomorphic at `p` for every `k` (scalar case) or
//! when `A` has at most a simple pole there (system case). The point at
//! infinity is handled in the coordinate `zeta = 1/z`, with `dz = -dzeta/zeta^2`.

use std::fmt;

mod frobenius;
mod scalar;
mod system;

pub use frobenius::{frobenius_series, ode_residual, FrobeniusSeries, LocalSystemData, ResidualOrder, DEFAULT_TRUNCATION};
pub use scalar::{classify_singularity_scalar, fuchs_relation_scalar, indicial_polynomial, IndicialData, ScalarODE};
pub use system::{
    classify_singularity_system, exponents_system, fuchs_relation_system, gauge_transform, ExponentData, FuchsianSystem,
};

/// Local type of a point for an equation or system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Singularity {
    Ordinary,
    FirstKind,
    /// Irregular point; `rank` is the highest pole order among the
    /// `b_{n-k}` (scalar) or in `zA` (system).
    SecondKind { rank: u32 },
}

impl Singularity {
    pub fn rank(&self) -> u32 {
        match self {
            Singularity::SecondKind { rank } => *rank,
            _ => 0,
        }
    }

    /// Ordinary points count as first kind.
    pub fn is_first_kind(&self) -> bool {
        !matches!(self, Singularity::SecondKind { .. })
    }
}

impl fmt::Display for Singularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Singularity::Ordinary => f.write_str("ordinary"),
            Singularity::FirstKind => f.write_str("first_kind"),
            Singularity::SecondKind { .. } => f.write_str("second_kind"),
        }
    }
}

/// Both sides of a Fuchs relation `lhs = rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct FuchsRelation<F> {
    pub holds: bool,
    pub lhs: F,
    pub rhs: F,
    /// Number of singular points, infinity included.
    pub singular_points: usize,
}
