//! Support for polynomials in `s >= 3` variables, viewed in the main
//! variable `x_s` with coefficients in `K[x_1, ..., x_{s-1}]`.
//!
//! The pivot variable `x_{s-1}` plays the role `x` plays in the bivariate
//! case: degree comparisons happen in it, and content is taken in the ring
//! `K[x_1, ..., x_{s-1}]`.  Content is computed only at `s = 3`, where the
//! coefficient ring is bivariate and a primitive-remainder-sequence gcd is
//! available.

use thiserror::Error;

use crate::degree::ExtendedDegree;
use crate::field::Field;
use crate::poly::{BiPoly, MultiPoly, PolyError};

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum MultivarError {
    #[error("need at least 3 variables, got {0}")]
    ArityTooSmall(usize),
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("polynomial uses variable x{0} outside the frame")]
    UnknownVariable(u32),
    #[error("content computation is not supported at arity {arity}; it requires arity 3")]
    NotSupported { arity: u32 },
    #[error("the zero polynomial has no coefficient data")]
    ZeroPolynomial,
}

/// Ordered variables `x_1 .. x_s` with `x_s` as the main variable and
/// `x_{s-1}` as the pivot.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VariableFrame {
    names: Vec<String>,
}

impl VariableFrame {
    pub fn new(names: Vec<String>) -> Result<Self, MultivarError> {
        if names.len() < 3 {
            return Err(MultivarError::ArityTooSmall(names.len()));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(MultivarError::DuplicateName(a.clone()));
            }
        }
        Ok(VariableFrame { names })
    }

    /// Frame with the default names `x1 .. xs`.
    pub fn numbered(s: usize) -> Result<Self, MultivarError> {
        VariableFrame::new((1..=s).map(|i| format!("x{i}")).collect())
    }

    pub fn arity(&self) -> u32 {
        self.names.len() as u32
    }

    pub fn names(&self) -> Vec<&str> {
        self.names.iter().map(|s| s.as_str()).collect()
    }

    /// Index of the main variable `x_s`.
    pub fn main(&self) -> u32 {
        self.arity()
    }

    /// Index of the pivot variable `x_{s-1}`.
    pub fn pivot(&self) -> u32 {
        self.arity() - 1
    }
}

fn check_frame<F: Field>(f: &MultiPoly<F>, frame: &VariableFrame) -> Result<(), MultivarError> {
    if let Some(&bad) = f.vars_used().iter().find(|&&v| v > frame.arity()) {
        return Err(MultivarError::UnknownVariable(bad));
    }
    Ok(())
}

/// Coefficients `a_0 .. a_n` of `f` in the main variable; `a_n` nonzero.
pub fn coefficients_in_main<F: Field>(
    f: &MultiPoly<F>,
    frame: &VariableFrame,
) -> Result<Vec<MultiPoly<F>>, MultivarError> {
    if f.is_zero() {
        return Err(MultivarError::ZeroPolynomial);
    }
    check_frame(f, frame)?;
    Ok(f.coefficients_in(frame.main()))
}

/// True iff `a` does not involve the pivot variable, i.e. lies in
/// `K[x_1, ..., x_{s-2}]`.
pub fn is_free_of_pivot<F: Field>(a: &MultiPoly<F>, frame: &VariableFrame) -> bool {
    a.degree_in(frame.pivot()) <= ExtendedDegree::Finite(0)
}

/// Content of `f` in `K[x_1, ..., x_{s-1}]`: the gcd of its main-variable
/// coefficients.  Implemented for `s = 3` only, where the coefficient ring
/// is bivariate.
pub fn content_pivot_ring<F: Field>(
    f: &MultiPoly<F>,
    frame: &VariableFrame,
) -> Result<MultiPoly<F>, MultivarError> {
    if frame.arity() != 3 {
        return Err(MultivarError::NotSupported { arity: frame.arity() });
    }
    let coeffs = coefficients_in_main(f, frame)?;
    let field = f.field().clone();
    let mut acc = BiPoly::zero(field.clone());
    for a in &coeffs {
        if a.is_zero() {
            continue;
        }
        let ab = a.to_bipoly(1, 2).expect("coefficient lives in x1, x2");
        acc = BiPoly::gcd(&acc, &ab).expect("operands not both zero");
        if acc.deg_y() == 0 && acc.deg_x() == 0 {
            break;
        }
    }
    Ok(MultiPoly::from_bipoly(&acc, 1, 2))
}

/// True iff the content in `K[x_1, ..., x_{s-1}]` is constant (`s = 3`).
pub fn is_content_free_pivot_ring<F: Field>(
    f: &MultiPoly<F>,
    frame: &VariableFrame,
) -> Result<bool, MultivarError> {
    let c = content_pivot_ring(f, frame)?;
    Ok(!c.is_zero() && c.vars_used().is_empty())
}

/// Substitutes field elements for `x_1 .. x_{s-2}` and reads the result as a
/// bivariate polynomial in (pivot, main).
pub fn specialize_to_bipoly<F: Field>(
    f: &MultiPoly<F>,
    frame: &VariableFrame,
    values: &[F::Elem],
) -> Result<BiPoly<F>, PolyError> {
    assert_eq!(
        values.len() as u32,
        frame.arity() - 2,
        "need one value per variable below the pivot"
    );
    let mut g = f.clone();
    for (i, v) in values.iter().enumerate() {
        g = g.substitute(i as u32 + 1, v);
    }
    g.to_bipoly(frame.pivot(), frame.main())
}
