//! Exact factor-count bounds for bivariate and low-arity multivariate
//! polynomials.
//!
//! Given `f = a_0(x) + a_1(x) y + ... + a_n(x) y^n` over the rationals or a
//! small prime field, this crate evaluates a catalog of degree-based
//! criteria, each of which (when its hypotheses hold) caps the number of
//! irreducible factors of `f` in `K[x][y]`.  A bound of 1 is an
//! irreducibility certificate.  Supporting machinery includes exact
//! univariate factorization for small inputs, a Newton polygon with respect
//! to `x`, and a brute-force bivariate factorization oracle over small prime
//! fields for validating the bounds.
//!
//! All arithmetic is exact: rationals are arbitrary-precision, prime fields
//! use machine-word residues.

pub mod criteria;
pub mod degree;
pub mod factor;
pub mod field;
pub mod multivar;
pub mod newton;
pub mod oracle;
pub mod sweep;
pub mod parse;
pub mod poly;

pub use criteria::{
    analyze, analyze_bi, analyze_multi, AnalysisError, AnalysisReport, AnalyzeOptions,
    CriterionId, CriterionStatus, CriterionVerdict, Witness,
};
pub use degree::ExtendedDegree;
pub use field::{Field, FieldDescriptor, FieldError, PrimeField, Rationals};
pub use poly::{BiPoly, MultiPoly, PolyError, UniPoly};

/// Univariate polynomial over the rationals.
pub type QUniPoly = UniPoly<Rationals>;
/// Bivariate polynomial over the rationals.
pub type QBiPoly = BiPoly<Rationals>;
/// Multivariate polynomial over the rationals.
pub type QMultiPoly = MultiPoly<Rationals>;
/// Univariate polynomial over a prime field.
pub type FpUniPoly = UniPoly<PrimeField>;
/// Bivariate polynomial over a prime field.
pub type FpBiPoly = BiPoly<PrimeField>;
/// Multivariate polynomial over a prime field.
pub type FpMultiPoly = MultiPoly<PrimeField>;
