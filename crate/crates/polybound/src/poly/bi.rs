//! Bivariate polynomials viewed as polynomials in `y` over `K[x]`.
//!
//! This is the shape the factor-count criteria work with: `f = a_0(x) +
//! a_1(x) y + ... + a_n(x) y^n`.  The transforms here (reciprocal,
//! monicization, power stripping, content extraction) are exactly the
//! reductions the criteria apply before comparing coefficient degrees.

use std::cmp::Ordering;

use crate::degree::ExtendedDegree;
use crate::field::Field;
use crate::poly::{PolyError, UniPoly};

/// A bivariate polynomial stored as `y`-power coefficients in `K[x]`.
///
/// `coeffs[i]` is `a_i(x)`; the last entry is nonzero and the empty list is
/// the zero polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiPoly<F: Field> {
    field: F,
    coeffs: Vec<UniPoly<F>>,
}

impl<F: Field> BiPoly<F> {
    /// Builds from `y`-power coefficients, trimming trailing zeros.
    pub fn new(field: F, mut coeffs: Vec<UniPoly<F>>) -> Self {
        for c in &coeffs {
            assert!(*c.field() == field, "mixed coefficient fields in BiPoly::new");
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        BiPoly { field, coeffs: Vec::new() }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        let u = UniPoly::constant(field.clone(), c);
        BiPoly::new(field, vec![u])
    }

    /// Lifts a polynomial in `x` to a bivariate constant in `y`.
    pub fn from_uni(p: UniPoly<F>) -> Self {
        let field = p.field().clone();
        BiPoly::new(field, vec![p])
    }

    pub fn variable_y(field: F) -> Self {
        let z = UniPoly::zero(field.clone());
        let o = UniPoly::one(field.clone());
        BiPoly::new(field, vec![z, o])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn y_coeffs(&self) -> &[UniPoly<F>] {
        &self.coeffs
    }

    /// Coefficient `a_i(x)` (zero when `i` exceeds the `y`-degree).
    pub fn y_coeff(&self, i: usize) -> UniPoly<F> {
        self.coeffs.get(i).cloned().unwrap_or_else(|| UniPoly::zero(self.field.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_y(&self) -> ExtendedDegree {
        match self.coeffs.len() {
            0 => ExtendedDegree::NegInf,
            n => ExtendedDegree::Finite(n as i64 - 1),
        }
    }

    pub fn deg_y_usize(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg_x(&self) -> ExtendedDegree {
        ExtendedDegree::max_of(self.coeffs.iter().map(|c| c.degree()))
    }

    /// `f(x, 0)`, the constant coefficient in `y`.
    pub fn eval_y0(&self) -> UniPoly<F> {
        self.y_coeff(0)
    }

    /// The leading coefficient in `y`; `None` for the zero polynomial.
    pub fn leading_y(&self) -> Option<&UniPoly<F>> {
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
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.y_coeff(i).add(&other.y_coeff(i))).collect();
        BiPoly::new(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.y_coeff(i).sub(&other.y_coeff(i))).collect();
        BiPoly::new(self.field.clone(), coeffs)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.neg()).collect();
        BiPoly { field: self.field.clone(), coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero(self.field.clone());
        }
        let mut acc = vec![UniPoly::zero(self.field.clone()); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                acc[i + j] = acc[i + j].add(&a.mul(b));
            }
        }
        BiPoly::new(self.field.clone(), acc)
    }

    /// Checked multiplication returning `MixedFields` instead of panicking.
    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.field != other.field {
            return Err(PolyError::MixedFields);
        }
        Ok(self.mul(other))
    }

    pub fn mul_uni(&self, u: &UniPoly<F>) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.mul(u)).collect();
        BiPoly::new(self.field.clone(), coeffs)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.scale(c)).collect();
        BiPoly::new(self.field.clone(), coeffs)
    }

    /// Multiplies by `y^k`.
    pub fn shift_y(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![UniPoly::zero(self.field.clone()); k];
        coeffs.extend(self.coeffs.iter().cloned());
        BiPoly { field: self.field.clone(), coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = BiPoly::constant(self.field.clone(), self.field.one());
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

    /// Monic gcd of all `y`-coefficients: the content of `f` in `K[x]`.
    pub fn content_y(&self) -> Result<UniPoly<F>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut acc = UniPoly::zero(self.field.clone());
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            acc = UniPoly::gcd(&acc, c)?;
            if acc.is_one() {
                break;
            }
        }
        Ok(acc)
    }

    pub fn is_content_free(&self) -> Result<bool, PolyError> {
        Ok(self.content_y()?.is_one())
    }

    /// Divides every coefficient exactly by `d`; `None` if any division fails.
    pub fn exact_div_uni(&self, d: &UniPoly<F>) -> Option<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if c.is_zero() {
                coeffs.push(c.clone());
            } else {
                coeffs.push(c.exact_div(d)?);
            }
        }
        Some(BiPoly::new(self.field.clone(), coeffs))
    }

    /// Splits off the content: returns `(content, primitive part)`.
    pub fn primitive_part_y(&self) -> Result<(UniPoly<F>, Self), PolyError> {
        let content = self.content_y()?;
        let prim = self.exact_div_uni(&content).expect("content divides every coefficient");
        Ok((content, prim))
    }

    /// `y^n f(x, 1/y)`: reverses the coefficient list.  Requires `a_0 != 0`
    /// so the map is an involution.
    pub fn reciprocal_y(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.coeffs[0].is_zero() {
            return Err(PolyError::ZeroConstantTerm);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Ok(BiPoly::new(self.field.clone(), coeffs))
    }

    /// The division-free monic substitute `a_n^(n-1) f(x, y/a_n)`: coefficient
    /// `i` becomes `a_i * a_n^(n-1-i)` and the leading coefficient becomes 1.
    /// Requires `deg_y f >= 1`.
    pub fn monicize(&self) -> Result<Self, PolyError> {
        let n = match self.deg_y_usize() {
            Some(n) if n >= 1 => n,
            _ => return Err(PolyError::ConstantInY),
        };
        let an = self.coeffs[n].clone();
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut pow = UniPoly::one(self.field.clone());
        let mut pows = vec![pow.clone()];
        for _ in 0..n - 1 {
            pow = pow.mul(&an);
            pows.push(pow.clone());
        }
        for i in 0..n {
            coeffs.push(self.coeffs[i].mul(&pows[n - 1 - i]));
        }
        coeffs.push(UniPoly::one(self.field.clone()));
        Ok(BiPoly::new(self.field.clone(), coeffs))
    }

    /// Factors out the largest power of `y`: returns `(k, g)` with
    /// `f = y^k g` and `g(x, 0) != 0`.
    pub fn strip_y_power(&self) -> Result<(u32, Self), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let k = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let g = BiPoly::new(self.field.clone(), self.coeffs[k..].to_vec());
        Ok((k as u32, g))
    }

    /// Scales so the leading-in-`y` coefficient is monic in `x`.
    pub fn normalize_leading(&self) -> Self {
        match self.leading_y().and_then(|l| l.leading()) {
            Some(lead) if !self.field.is_one(lead) => {
                let inv = self.field.inv(lead).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// Gcd in `K[x][y]` via a primitive pseudo-remainder sequence.  The result
    /// is canonical: content part monic in `x`, primitive part with
    /// monic-in-`x` leading `y`-coefficient.
    pub fn gcd(a: &Self, b: &Self) -> Result<Self, PolyError> {
        a.assert_same_field(b);
        if a.is_zero() && b.is_zero() {
            return Err(PolyError::BothZero);
        }
        if a.is_zero() {
            let (c, p) = b.primitive_part_y()?;
            return Ok(p.normalize_leading().mul_uni(&c));
        }
        if b.is_zero() {
            let (c, p) = a.primitive_part_y()?;
            return Ok(p.normalize_leading().mul_uni(&c));
        }
        let (ca, pa) = a.primitive_part_y()?;
        let (cb, pb) = b.primitive_part_y()?;
        let content = UniPoly::gcd(&ca, &cb)?;
        let (mut f, mut g) = if pa.deg_y() >= pb.deg_y() { (pa, pb) } else { (pb, pa) };
        while !g.is_zero() {
            let r = pseudo_rem(&f, &g);
            f = g;
            g = match r {
                Some(r) if !r.is_zero() => r.primitive_part_y()?.1,
                _ => BiPoly::zero(f.field.clone()),
            };
        }
        let prim = f.primitive_part_y()?.1.normalize_leading();
        Ok(prim.mul_uni(&content))
    }

    /// Order used for factor lists: `y`-degree, then `x`-degree, then
    /// coefficients from `a_0` up.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.deg_y()
            .cmp(&other.deg_y())
            .then_with(|| self.deg_x().cmp(&other.deg_x()))
            .then_with(|| {
                for (a, b) in self.coeffs.iter().zip(other.coeffs.iter()) {
                    let ord = a.canonical_cmp(b);
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                Ordering::Equal
            })
    }
}

/// Pseudo-remainder of `f` by `g` in `K[x][y]`; `None` when `deg_y f < deg_y g`.
fn pseudo_rem<F: Field>(f: &BiPoly<F>, g: &BiPoly<F>) -> Option<BiPoly<F>> {
    let dg = g.deg_y_usize().expect("pseudo_rem divisor is nonzero");
    if f.deg_y() < g.deg_y() {
        return None;
    }
    let lc = g.leading_y().unwrap().clone();
    let mut r = f.clone();
    while let Some(dr) = r.deg_y_usize() {
        if dr < dg {
            break;
        }
        let lead = r.leading_y().unwrap().clone();
        r = r.mul_uni(&lc).sub(&g.mul_uni(&lead).shift_y(dr - dg));
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn u(ints: &[i64]) -> UniPoly<Rationals> {
        UniPoly::from_ints(Rationals, ints)
    }

    fn b(coeffs: &[&[i64]]) -> BiPoly<Rationals> {
        BiPoly::new(Rationals, coeffs.iter().map(|c| u(c)).collect())
    }

    #[test]
    fn product_of_shifted_binomials() {
        // (2 + x^2 + y^2)(3 + x^2 + y^2)
        //   = 6 + 5x^2 + x^4 + (5 + 2x^2) y^2 + y^4
        let f = b(&[&[2, 0, 1], &[], &[1]]);
        let g = b(&[&[3, 0, 1], &[], &[1]]);
        let expect = b(&[&[6, 0, 5, 0, 1], &[], &[5, 0, 2], &[], &[1]]);
        assert_eq!(f.mul(&g), expect);
    }

    #[test]
    fn content_examples() {
        // 6 + 5x + x^2 + (5 + 2x) y + y^2 is primitive.
        let f = b(&[&[6, 5, 1], &[5, 2], &[1]]);
        assert_eq!(f.content_y().unwrap(), u(&[1]));

        // x + x y has content x.
        let g = b(&[&[0, 1], &[0, 1]]);
        assert_eq!(g.content_y().unwrap(), u(&[0, 1]));

        // 2 + 2y: gcd of constants normalizes to 1.
        let h = b(&[&[2], &[2]]);
        assert_eq!(h.content_y().unwrap(), u(&[1]));

        assert_eq!(BiPoly::zero(Rationals).content_y(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn reciprocal_reverses_and_involutes() {
        // 6 + 5x^2 + x^4 + (5 + 2x^2) y^2 + y^4  ->  1 + (5 + 2x^2) y^2 + (6 + 5x^2 + x^4) y^4
        let f = b(&[&[6, 0, 5, 0, 1], &[], &[5, 0, 2], &[], &[1]]);
        let r = f.reciprocal_y().unwrap();
        let expect = b(&[&[1], &[], &[5, 0, 2], &[], &[6, 0, 5, 0, 1]]);
        assert_eq!(r, expect);
        assert_eq!(r.reciprocal_y().unwrap(), f);

        let shifted = b(&[&[], &[1]]); // y
        assert_eq!(shifted.reciprocal_y(), Err(PolyError::ZeroConstantTerm));
    }

    #[test]
    fn monicize_examples() {
        // x + y + x y^2 -> x^2 + y + y^2
        let f = b(&[&[0, 1], &[1], &[0, 1]]);
        assert_eq!(f.monicize().unwrap(), b(&[&[0, 0, 1], &[1], &[1]]));

        // 1 + x y^3 -> x^2 + y^3
        let g = b(&[&[1], &[], &[], &[0, 1]]);
        assert_eq!(g.monicize().unwrap(), b(&[&[0, 0, 1], &[], &[], &[1]]));

        // already monic in y: unchanged
        let h = b(&[&[3, 1], &[0, 2], &[1]]);
        assert_eq!(h.monicize().unwrap(), h);

        let c = b(&[&[5, 1]]);
        assert_eq!(c.monicize(), Err(PolyError::ConstantInY));
    }

    #[test]
    fn strip_y_power_examples() {
        let f = b(&[&[], &[], &[1], &[1]]); // y^2 + y^3
        let (k, g) = f.strip_y_power().unwrap();
        assert_eq!(k, 2);
        assert_eq!(g, b(&[&[1], &[1]]));

        let h = b(&[&[1], &[1]]);
        assert_eq!(h.strip_y_power().unwrap(), (0, h.clone()));

        assert_eq!(BiPoly::<Rationals>::zero(Rationals).strip_y_power(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn eval_y0_and_leading_y() {
        let f = b(&[&[6, 5, 1], &[5, 2], &[1]]);
        assert_eq!(f.eval_y0(), u(&[6, 5, 1]));
        assert_eq!(f.leading_y(), Some(&u(&[1])));
        assert!(BiPoly::<Rationals>::zero(Rationals).leading_y().is_none());
    }

    #[test]
    fn bivariate_gcd_finds_common_factor() {
        // (1 + y)(x + y) and (1 + y)(1 + x y) share exactly 1 + y.
        let common = b(&[&[1], &[1]]);
        let f = common.mul(&b(&[&[0, 1], &[1]]));
        let g = common.mul(&b(&[&[1], &[0, 1]]));
        assert_eq!(BiPoly::gcd(&f, &g).unwrap(), common);

        // coprime pair gives a constant gcd
        let a = b(&[&[0, 1], &[1]]);
        let c = b(&[&[1], &[0, 1]]);
        assert_eq!(BiPoly::gcd(&a, &c).unwrap(), b(&[&[1]]));
    }

    #[test]
    fn gcd_over_prime_field() {
        let f2 = PrimeField::new(2).unwrap();
        let p = |coeffs: &[&[i64]]| {
            BiPoly::new(f2, coeffs.iter().map(|c| UniPoly::from_ints(f2, c)).collect())
        };
        // (1 + x + y)^2 and (1 + x + y)(1 + y) over F2
        let base = p(&[&[1, 1], &[1]]);
        let f = base.mul(&base);
        let g = base.mul(&p(&[&[1], &[1]]));
        assert_eq!(BiPoly::gcd(&f, &g).unwrap(), base);
    }
}
