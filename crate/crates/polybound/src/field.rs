//! Coefficient fields.
//!
//! All polynomial code in this crate is generic over a [`Field`]: a small
//! context object that knows how to add, multiply and invert its elements.
//! Two fields are provided, the rationals ([`Rationals`], arbitrary
//! precision) and prime fields ([`PrimeField`], runtime modulus).  Elements
//! are plain data (`BigRational`, `u64` residues); the context is what makes
//! them meaningful, so values from different prime fields never mix silently:
//! polynomial operations compare contexts and report a mixed-field error.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Runtime description of a coefficient field, used for dispatch and
/// reporting.  Printed as `Q` or `F<p>`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum FieldDescriptor {
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("modulus {0} out of range (need 2 <= p <= 2^31)")]
    ModulusOutOfRange(u64),
}

/// A field of coefficients.
///
/// Implementors are lightweight context objects; all element operations go
/// through the context.  `Elem` must be totally ordered so that factor lists
/// and candidate enumerations can be sorted deterministically.
pub trait Field: Clone + Eq + fmt::Debug {
    type Elem: Clone + Eq + Ord + fmt::Debug;

    fn descriptor(&self) -> FieldDescriptor;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse.  Fails with `DivisionByZero` on zero.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;
    /// Embeds a machine integer.
    fn from_int(&self, n: i64) -> Self::Elem;
    /// Embeds an arbitrary-precision integer.
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// Builds `num/den` when the field supports rational literals.
    /// Prime fields return `None`; the parser turns that into a syntax error.
    fn rational_literal(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;
    /// Canonical rendering of one element (`5/6`, `-2`, residue `3`).
    fn elem_to_string(&self, a: &Self::Elem) -> String;
    /// Splits an element into (is_negative, magnitude) for pretty-printing.
    /// Prime field residues are never negative.
    fn sign_magnitude(&self, a: &Self::Elem) -> (bool, Self::Elem);

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow_u32(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// The field of rational numbers with arbitrary-precision arithmetic.
///
/// Elements are `num_rational::BigRational`, which keeps every value in
/// canonical form (reduced, positive denominator), so structural equality is
/// value equality.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn rational_literal(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num.clone(), den.clone()))
    }

    fn elem_to_string(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn sign_magnitude(&self, a: &BigRational) -> (bool, BigRational) {
        if a.is_negative() {
            (true, -a)
        } else {
            (false, a.clone())
        }
    }
}

/// The prime field with `p` elements, `2 <= p <= 2^31`.
///
/// Elements are residues stored as `u64` in `[0, p)`.  The modulus bound
/// keeps every product inside `u64` without overflow.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

const MAX_MODULUS: u64 = 1 << 31;

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !(2..=MAX_MODULUS).contains(&p) {
            return Err(FieldError::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NonPrimeModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces an arbitrary residue into `[0, p)`.
    pub fn elem(&self, n: u64) -> u64 {
        n % self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::PrimeField(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }

    fn inv(&self, a: &u64) -> Result<u64, FieldError> {
        if *a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        // Extended Euclid on (a, p); p prime guarantees gcd 1.
        let (mut r0, mut r1) = (*a as i128, self.p as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(s0.rem_euclid(self.p as i128) as u64)
    }

    fn from_int(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }

    fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    fn rational_literal(&self, _num: &BigInt, _den: &BigInt) -> Option<u64> {
        None
    }

    fn elem_to_string(&self, a: &u64) -> String {
        a.to_string()
    }

    fn sign_magnitude(&self, a: &u64) -> (bool, u64) {
        (false, *a)
    }
}

/// Deterministic trial-division primality test; fast for p <= 2^31.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
