//! Univariate polynomials with dense coefficient storage.

use std::cmp::Ordering;

use crate::degree::ExtendedDegree;
use crate::field::Field;
use crate::poly::PolyError;

/// A polynomial in one variable over the field `F`.
///
/// `coeffs[k]` is the coefficient of `x^k`; the last entry is nonzero and the
/// empty list is the zero polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> UniPoly<F> {
    /// Builds a polynomial from raw coefficients, trimming trailing zeros.
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        UniPoly::new(field, vec![one])
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        UniPoly::new(field, vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(field: F, c: F::Elem, k: usize) -> Self {
        if field.is_zero(&c) {
            return UniPoly::zero(field);
        }
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        UniPoly { field, coeffs }
    }

    pub fn variable(field: F) -> Self {
        let (zero, one) = (field.zero(), field.one());
        UniPoly { field, coeffs: vec![zero, one] }
    }

    /// Convenience constructor from integer coefficients, constant term first.
    pub fn from_ints(field: F, ints: &[i64]) -> Self {
        let coeffs = ints.iter().map(|&n| field.from_int(n)).collect();
        UniPoly::new(field, coeffs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero when `k` exceeds the degree).
    pub fn coeff(&self, k: usize) -> F::Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn degree(&self) -> ExtendedDegree {
        match self.coeffs.len() {
            0 => ExtendedDegree::NegInf,
            n => ExtendedDegree::Finite(n as i64 - 1),
        }
    }

    pub fn degree_usize(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    fn assert_same_field(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "mixed coefficient fields: {:?} vs {:?}",
            self.field,
            other.field
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| f.add(&self.coeff(k), &other.coeff(k))).collect();
        UniPoly::new(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| f.sub(&self.coeff(k), &other.coeff(k))).collect();
        UniPoly::new(self.field.clone(), coeffs)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        UniPoly { field: self.field.clone(), coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field.clone());
        }
        let mut acc = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                acc[i + j] = f.add(&acc[i + j], &f.mul(a, b));
            }
        }
        UniPoly::new(self.field.clone(), acc)
    }

    /// Checked addition returning `MixedFields` instead of panicking.
    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.field != other.field {
            return Err(PolyError::MixedFields);
        }
        Ok(self.add(other))
    }

    /// Checked multiplication returning `MixedFields` instead of panicking.
    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.field != other.field {
            return Err(PolyError::MixedFields);
        }
        Ok(self.mul(other))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return UniPoly::zero(self.field.clone());
        }
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        UniPoly::new(self.field.clone(), coeffs)
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { field: self.field.clone(), coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = UniPoly::one(self.field.clone());
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| f.mul(&f.from_int(k as i64), c))
            .collect();
        UniPoly::new(self.field.clone(), coeffs)
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        self.assert_same_field(d);
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let f = self.field.clone();
        let dd = d.coeffs.len() - 1;
        let lead_inv = f.inv(d.leading().unwrap()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UniPoly::zero(f.clone()), UniPoly::new(f, rem)));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        let mut top = rem.len();
        while top > dd {
            let k = top - 1;
            let c = f.mul(&rem[k], &lead_inv);
            if !f.is_zero(&c) {
                let shift = k - dd;
                quot[shift] = c.clone();
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[shift + j] = f.sub(&rem[shift + j], &f.mul(&c, dc));
                }
            }
            top -= 1;
        }
        Ok((UniPoly::new(f.clone(), quot), UniPoly::new(f, rem)))
    }

    /// Exact division; `None` when the remainder is nonzero.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d).ok()?;
        r.is_zero().then_some(q)
    }

    /// Scales so the leading coefficient is 1.  `None` for zero.
    pub fn monic(&self) -> Option<Self> {
        let lead = self.leading()?;
        if self.field.is_one(lead) {
            return Some(self.clone());
        }
        let inv = self.field.inv(lead).expect("nonzero leading coefficient");
        Some(self.scale(&inv))
    }

    /// Monic greatest common divisor via the Euclidean algorithm.
    pub fn gcd(a: &Self, b: &Self) -> Result<Self, PolyError> {
        a.assert_same_field(b);
        if a.is_zero() && b.is_zero() {
            return Err(PolyError::BothZero);
        }
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.divrem(&b)?.1;
            a = b;
            b = r;
        }
        Ok(a.monic().expect("gcd of a nonzero pair is nonzero"))
    }

    /// Total order used to sort factor lists: degree first, then coefficients
    /// from the constant term up.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}
