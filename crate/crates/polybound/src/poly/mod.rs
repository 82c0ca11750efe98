//! Dense polynomial representations over a [`Field`](crate::field::Field).
//!
//! Three layers share one invariant style:
//!
//! * [`UniPoly`]: coefficient list in `x`, no trailing zeros, empty = zero;
//! * [`BiPoly`]: list of `UniPoly` coefficients by power of `y`, last nonzero;
//! * [`MultiPoly`]: recursive dense tree for `x1..xs`, canonical by
//!   construction (no trailing zeros, no single-coefficient wrapper nodes,
//!   variable indices strictly decrease inward).
//!
//! Structural equality therefore is mathematical equality.

mod bi;
mod multi;
mod uni;

pub use bi::BiPoly;
pub use multi::MultiPoly;
pub use uni::UniPoly;

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum PolyError {
    #[error("operands belong to different coefficient fields")]
    MixedFields,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("constant term in y is zero")]
    ZeroConstantTerm,
    #[error("polynomial is constant in y")]
    ConstantInY,
    #[error("variable index {0} out of scope")]
    UnknownVariable(u32),
    #[error("expected a polynomial in {expected} variable(s), found one using {found}")]
    ArityMismatch { expected: u32, found: u32 },
}
