//! Exact computations around the Birkhoff-Grothendieck splitting theorem.
//!
//! * Laurent polynomial matrices and their Birkhoff factorization
//!   `B A C = diag(x^d_1, ..., x^d_n)` with `B` in `GL(n, F[x])` and `C` in
//!   `GL(n, F[x^-1])`, read as splitting types of vector bundles on the
//!   projective line ([`bundle`], [`factor`]).
//! * Singularity analysis of linear differential equations and first-order
//!   systems: first-kind classification, exponents, Fuchs relations,
//!   Frobenius fundamental matrices, gauge transformations ([`fuchsian`]).
//! * The Bolibrukh non-realizability test for monodromy representations
//!   ([`monodromy`]).
//!
//! All algebra is generic over an exact [`Field`]; the aliases below fix it
//! to the rationals, which is what the CLI uses.

pub mod bundle;
pub mod error;
pub mod factor;
pub mod fuchsian;
pub mod laurent;
pub mod laurent_matrix;
pub mod matrix;
pub mod monodromy;
pub mod ratfunc;
pub mod roots;
pub mod scalar;
mod sections;

pub use bundle::{BundleOnP1, SectionSpace, SplittingType};
pub use error::{Error, Result};
pub use factor::{birkhoff_factor, birkhoff_factor_with, verify_factorization, FactorMethod, Factorization, VerifyReport};
pub use laurent::LaurentPoly;
pub use laurent_matrix::LaurentMatrix;
pub use matrix::Matrix;
pub use ratfunc::{Point, RatFunc};
pub use scalar::{Field, Ring};

/// Arbitrary-precision rationals.
pub type Rat = num_rational::BigRational;
pub type QLaurentPoly = LaurentPoly<Rat>;
pub type QLaurentMatrix = LaurentMatrix<Rat>;
pub type QMatrix = Matrix<Rat>;
pub type QRatFunc = RatFunc<Rat>;
pub type QBundle = BundleOnP1<Rat>;
pub type QPoint = Point<Rat>;
