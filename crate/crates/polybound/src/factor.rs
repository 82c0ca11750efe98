//! Exact univariate factorization at desk scale.
//!
//! Over the rationals: squarefree decomposition (Yun), then a Kronecker
//! interpolation search per squarefree part.  Over a prime field: squarefree
//! decomposition (with p-th-root descent when the derivative vanishes), then
//! trial division by all monic polynomials of at most half the degree.
//! Both routes are exhaustive, so every emitted factor is irreducible and
//! the unit-times-product reconstruction is exact.
//!
//! Degree caps keep the search honest: inputs beyond them fail loudly with
//! an error instead of running for hours.

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::{Field, PrimeField, Rationals};
use crate::poly::UniPoly;

/// Degree cap for factorization over the rationals.
pub const Q_DEGREE_CAP: usize = 24;
/// Degree cap for factorization over prime fields.
pub const FP_DEGREE_CAP: usize = 24;
/// Modulus cap for factorization over prime fields.
pub const FP_MODULUS_CAP: u64 = 100;

// Engineering guards for the exhaustive searches.
const DIVISOR_SCAN_CAP: u64 = 20_000_000;
const TUPLE_BUDGET: u64 = 2_000_000;
const FP_CANDIDATE_BUDGET: u64 = 2_000_000;
const EXTRA_PRUNE_POINTS: usize = 2;

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum FactorError {
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("degree {degree} exceeds the factorization cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("modulus {modulus} exceeds the factorization cap {cap}")]
    ModulusCapExceeded { modulus: u64, cap: u64 },
    #[error("smallest irreducible factor degree is undefined for constants")]
    ConstantInput,
    #[error("factorization search budget exceeded: {0}")]
    SearchBudgetExceeded(String),
}

/// A complete factorization `unit * prod factors[i]^mult[i]` with monic
/// irreducible factors, pairwise distinct and canonically sorted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactorMultiset<F: Field> {
    unit: F::Elem,
    factors: Vec<(UniPoly<F>, u32)>,
}

impl<F: Field> FactorMultiset<F> {
    /// Sorts, merges duplicates, and checks the factor invariants.
    fn from_parts(field: &F, unit: F::Elem, mut parts: Vec<(UniPoly<F>, u32)>) -> Self {
        for (p, m) in &parts {
            assert!(*m >= 1, "zero multiplicity");
            assert!(
                p.degree() >= 1 && p.leading().is_some_and(|c| field.is_one(c)),
                "factors must be monic of positive degree"
            );
        }
        parts.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        let mut factors: Vec<(UniPoly<F>, u32)> = Vec::with_capacity(parts.len());
        for (p, m) in parts {
            match factors.last_mut() {
                Some((q, k)) if *q == p => *k += m,
                _ => factors.push((p, m)),
            }
        }
        FactorMultiset { unit, factors }
    }

    pub fn unit(&self) -> &F::Elem {
        &self.unit
    }

    pub fn factors(&self) -> &[(UniPoly<F>, u32)] {
        &self.factors
    }

    /// Total number of irreducible factors, counted with multiplicity.
    pub fn nu(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    /// Degree of a smallest-degree factor, if any.
    pub fn smallest_degree(&self) -> Option<i64> {
        self.factors
            .iter()
            .filter_map(|(p, _)| p.degree().finite())
            .min()
    }

    /// Multiplies the factorization back out.
    pub fn reconstruct(&self, field: &F) -> UniPoly<F> {
        let mut acc = UniPoly::constant(field.clone(), self.unit.clone());
        for (p, m) in &self.factors {
            acc = acc.mul(&p.pow(*m));
        }
        acc
    }
}

/// Fields with an exhaustive univariate factorization routine.
pub trait Factorable: Field {
    fn factor(p: &UniPoly<Self>) -> Result<FactorMultiset<Self>, FactorError>;
}

/// Factors `p` completely; nonzero constants yield an empty factor list.
pub fn factor_uni<F: Factorable>(p: &UniPoly<F>) -> Result<FactorMultiset<F>, FactorError> {
    F::factor(p)
}

/// Number of irreducible factors of `p`, counted with multiplicity.
pub fn nu_count<F: Factorable>(p: &UniPoly<F>) -> Result<u32, FactorError> {
    Ok(factor_uni(p)?.nu())
}

/// Degree of a smallest-degree irreducible factor of `p`; requires `deg p >= 1`.
pub fn smallest_irreducible_degree<F: Factorable>(p: &UniPoly<F>) -> Result<i64, FactorError> {
    let f = factor_uni(p)?;
    f.smallest_degree().ok_or(FactorError::ConstantInput)
}

impl Factorable for Rationals {
    fn factor(p: &UniPoly<Rationals>) -> Result<FactorMultiset<Rationals>, FactorError> {
        factor_rational(p)
    }
}

impl Factorable for PrimeField {
    fn factor(p: &UniPoly<PrimeField>) -> Result<FactorMultiset<PrimeField>, FactorError> {
        factor_prime_field(p)
    }
}

// ---------------------------------------------------------------------------
// Rationals: Yun squarefree split + Kronecker search
// ---------------------------------------------------------------------------

fn factor_rational(p: &UniPoly<Rationals>) -> Result<FactorMultiset<Rationals>, FactorError> {
    if p.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let deg = p.degree_usize().expect("nonzero");
    if deg > Q_DEGREE_CAP {
        return Err(FactorError::DegreeCapExceeded { degree: deg, cap: Q_DEGREE_CAP });
    }
    let unit = p.leading().expect("nonzero").clone();
    let monic = p.monic().expect("nonzero");
    let mut parts = Vec::new();
    if deg >= 1 {
        for (sqfree, mult) in yun_squarefree(&monic) {
            let primitive = primitive_integer_poly(&sqfree);
            for factor in kronecker_irreducibles(primitive)? {
                parts.push((factor.monic().expect("nonzero factor"), mult));
            }
        }
    }
    let result = FactorMultiset::from_parts(&Rationals, unit, parts);
    assert_eq!(result.reconstruct(&Rationals), *p, "factorization must reconstruct the input");
    Ok(result)
}

/// Yun's squarefree decomposition of a monic polynomial in characteristic 0:
/// returns pairwise-coprime monic squarefree parts with `f = prod s_i^i`.
fn yun_squarefree(f: &UniPoly<Rationals>) -> Vec<(UniPoly<Rationals>, u32)> {
    let mut out = Vec::new();
    let df = f.derivative();
    let g = UniPoly::gcd(f, &df).expect("nonzero input");
    let mut b = f.exact_div(&g).expect("gcd divides");
    let mut c = df.exact_div(&g).expect("gcd divides");
    let mut i = 1u32;
    while b.degree() >= 1 {
        let d = c.sub(&b.derivative());
        let a = UniPoly::gcd(&b, &d).expect("nonzero");
        if a.degree() >= 1 {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides");
        c = d.exact_div(&a).expect("gcd divides");
        i += 1;
    }
    out
}

/// Clears denominators and content: primitive integer coefficients with a
/// positive leading coefficient.
fn primitive_integer_poly(p: &UniPoly<Rationals>) -> Vec<BigInt> {
    assert!(!p.is_zero());
    let mut den = BigInt::one();
    for c in p.coeffs() {
        den = den.lcm(c.denom());
    }
    let den = BigRational::from_integer(den);
    let mut ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * &den).to_integer()).collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if ints.last().expect("nonzero").sign() == Sign::Minus {
        content = -content;
    }
    for c in &mut ints {
        *c /= &content;
    }
    ints
}

fn eval_int(p: &[BigInt], t: i64) -> BigInt {
    let mut acc = BigInt::zero();
    let t = BigInt::from(t);
    for c in p.iter().rev() {
        acc = acc * &t + c;
    }
    acc
}

/// Positive divisors of `v` (nonzero), ascending; errors out when the scan
/// would be too expensive.
fn positive_divisors(v: &BigInt) -> Result<Vec<u64>, FactorError> {
    let mag = v.magnitude();
    let m: u64 = u64::try_from(mag).map_err(|_| {
        FactorError::SearchBudgetExceeded(format!(
            "evaluation value with {} bits is too large to enumerate divisors",
            mag.bits()
        ))
    })?;
    let root = m.sqrt();
    if root > DIVISOR_SCAN_CAP {
        return Err(FactorError::SearchBudgetExceeded(format!(
            "divisor scan of {m} exceeds {DIVISOR_SCAN_CAP} trial divisions"
        )));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    for d in 1..=root {
        if m % d == 0 {
            small.push(d);
            if d != m / d {
                large.push(m / d);
            }
        }
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}

fn int_poly_to_rational(p: &[BigInt]) -> UniPoly<Rationals> {
    UniPoly::new(
        Rationals,
        p.iter().map(|c| BigRational::from_integer(c.clone())).collect(),
    )
}

/// Exact division of integer polynomials; `None` when it does not divide or
/// the quotient is not integral.
fn exact_div_int(p: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let (q, r) = int_poly_to_rational(p)
        .divrem(&int_poly_to_rational(g))
        .ok()?;
    if !r.is_zero() {
        return None;
    }
    let mut out = Vec::with_capacity(q.coeffs().len());
    for c in q.coeffs() {
        if !c.is_integer() {
            return None;
        }
        out.push(c.to_integer());
    }
    Some(out)
}

/// Lagrange interpolation through `(t_i, v_i)`.
fn lagrange(points: &[(i64, BigInt)]) -> UniPoly<Rationals> {
    let mut acc = UniPoly::zero(Rationals);
    for (i, (ti, vi)) in points.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        let mut num = UniPoly::one(Rationals);
        let mut den = BigRational::one();
        for (j, (tj, _)) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            let lin = UniPoly::new(
                Rationals,
                vec![
                    BigRational::from_integer(BigInt::from(-*tj)),
                    BigRational::one(),
                ],
            );
            num = num.mul(&lin);
            den *= BigRational::from_integer(BigInt::from(ti - tj));
        }
        let coeff = BigRational::from_integer(vi.clone()) / den;
        acc = acc.add(&num.scale(&coeff));
    }
    acc
}

/// The evaluation point sequence 0, 1, -1, 2, -2, ...
fn point_sequence() -> impl Iterator<Item = i64> {
    (0i64..).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] })
}

struct EvalData {
    t: i64,
    value: BigInt,
    divisors: Vec<u64>,
}

/// Kronecker search: splits a primitive squarefree integer polynomial into
/// primitive irreducible integer factors (positive leading coefficients
/// except possibly the last cofactor's sign, which is absorbed upstream by
/// monicization).
fn kronecker_irreducibles(mut p: Vec<BigInt>) -> Result<Vec<UniPoly<Rationals>>, FactorError> {
    let mut out = Vec::new();
    let mut tuples_tried: u64 = 0;
    'outer: loop {
        let deg = p.len() - 1;
        if deg == 0 {
            break;
        }
        if deg == 1 {
            out.push(int_poly_to_rational(&p));
            break;
        }
        // Collect evaluation points, pulling out integer roots on sight.
        let half = deg / 2;
        let mut data: Vec<EvalData> = Vec::new();
        for t in point_sequence() {
            if data.len() == half + 1 + EXTRA_PRUNE_POINTS {
                break;
            }
            let value = eval_int(&p, t);
            if value.is_zero() {
                let root = vec![BigInt::from(-t), BigInt::one()];
                p = exact_div_int(&p, &root).expect("root divides");
                out.push(int_poly_to_rational(&root));
                continue 'outer;
            }
            let divisors = positive_divisors(&value)?;
            data.push(EvalData { t, value, divisors });
        }
        for k in 1..=half {
            // Signed divisor choices; the first point is kept positive to
            // fix the candidate's sign.
            let sizes: Vec<usize> = (0..=k)
                .map(|i| if i == 0 { data[i].divisors.len() } else { 2 * data[i].divisors.len() })
                .collect();
            let mut odo = vec![0usize; k + 1];
            'tuples: loop {
                tuples_tried += 1;
                if tuples_tried > TUPLE_BUDGET {
                    return Err(FactorError::SearchBudgetExceeded(format!(
                        "more than {TUPLE_BUDGET} divisor tuples examined"
                    )));
                }
                let points: Vec<(i64, BigInt)> = (0..=k)
                    .map(|i| {
                        let idx = odo[i];
                        let d = if i == 0 {
                            BigInt::from(data[i].divisors[idx])
                        } else if idx % 2 == 0 {
                            BigInt::from(data[i].divisors[idx / 2])
                        } else {
                            -BigInt::from(data[i].divisors[idx / 2])
                        };
                        (data[i].t, d)
                    })
                    .collect();
                if let Some(g) = candidate_factor(&points, k, &p, &data[k + 1..]) {
                    if let Some(q) = exact_div_int(&p, &g) {
                        out.push(int_poly_to_rational(&g));
                        p = q;
                        continue 'outer;
                    }
                }
                // odometer increment
                for i in 0..=k {
                    odo[i] += 1;
                    if odo[i] < sizes[i] {
                        continue 'tuples;
                    }
                    odo[i] = 0;
                }
                break;
            }
        }
        // no factor of degree <= deg/2: irreducible
        out.push(int_poly_to_rational(&p));
        break;
    }
    Ok(out)
}

/// Interpolates a divisor tuple and applies the cheap rejection filters.
/// Returns a primitive integer candidate of degree exactly `k`.
fn candidate_factor(
    points: &[(i64, BigInt)],
    k: usize,
    p: &[BigInt],
    extra: &[EvalData],
) -> Option<Vec<BigInt>> {
    let g = lagrange(points);
    if g.degree_usize() != Some(k) {
        return None;
    }
    let mut ints = Vec::with_capacity(k + 1);
    for c in g.coeffs() {
        if !c.is_integer() {
            return None;
        }
        ints.push(c.to_integer());
    }
    // primitive part, positive leading coefficient
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if ints.last().expect("degree k").sign() == Sign::Minus {
        content = -content;
    }
    for c in &mut ints {
        *c /= &content;
    }
    let lc_p = p.last().expect("nonzero");
    let lc_g = ints.last().expect("degree k");
    if !(lc_p % lc_g).is_zero() {
        return None;
    }
    for e in extra {
        let gv = eval_int(&ints, e.t);
        if gv.is_zero() || !(&e.value % gv).is_zero() {
            return None;
        }
    }
    Some(ints)
}

// ---------------------------------------------------------------------------
// Prime fields: squarefree split + exhaustive trial division
// ---------------------------------------------------------------------------

fn factor_prime_field(p: &UniPoly<PrimeField>) -> Result<FactorMultiset<PrimeField>, FactorError> {
    if p.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let field = p.field().clone();
    if field.modulus() > FP_MODULUS_CAP {
        return Err(FactorError::ModulusCapExceeded {
            modulus: field.modulus(),
            cap: FP_MODULUS_CAP,
        });
    }
    let deg = p.degree_usize().expect("nonzero");
    if deg > FP_DEGREE_CAP {
        return Err(FactorError::DegreeCapExceeded { degree: deg, cap: FP_DEGREE_CAP });
    }
    let unit = p.leading().expect("nonzero").clone();
    let monic = p.monic().expect("nonzero");
    let mut parts = Vec::new();
    if deg >= 1 {
        for (sqfree, mult) in squarefree_prime_field(&monic) {
            for factor in trial_divide(&sqfree)? {
                parts.push((factor, mult));
            }
        }
    }
    let result = FactorMultiset::from_parts(&field, unit, parts);
    assert_eq!(result.reconstruct(&field), *p, "factorization must reconstruct the input");
    Ok(result)
}

/// `f = h(x^p)` over a prime field means `f = h(x)^p`; extracts `h`.
fn pth_root(f: &UniPoly<PrimeField>) -> UniPoly<PrimeField> {
    let p = f.field().modulus() as usize;
    let mut coeffs = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if i % p == 0 {
            coeffs.push(*c);
        } else {
            assert!(f.field().is_zero(c), "derivative-zero polynomial must live in x^p");
        }
    }
    UniPoly::new(f.field().clone(), coeffs)
}

/// Squarefree decomposition over a prime field; handles vanishing
/// derivatives by p-th-root descent.
fn squarefree_prime_field(f: &UniPoly<PrimeField>) -> Vec<(UniPoly<PrimeField>, u32)> {
    if f.degree() < 1 {
        return Vec::new();
    }
    let char_p = f.field().modulus() as u32;
    let df = f.derivative();
    if df.is_zero() {
        let inner = squarefree_prime_field(&pth_root(f));
        return inner.into_iter().map(|(s, m)| (s, m * char_p)).collect();
    }
    let mut out = Vec::new();
    let mut c = UniPoly::gcd(f, &df).expect("nonzero");
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1u32;
    while w.degree() >= 1 {
        let y = UniPoly::gcd(&w, &c).expect("nonzero");
        let z = w.exact_div(&y).expect("gcd divides");
        if z.degree() >= 1 {
            out.push((z, i));
        }
        c = c.exact_div(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    if c.degree() >= 1 {
        // leftover p-th power part
        for (s, m) in squarefree_prime_field(&pth_root(&c)) {
            out.push((s, m * char_p));
        }
    }
    out
}

/// Exhaustive trial division of a monic squarefree polynomial by all monic
/// polynomials of degree up to half its own, in ascending degree.
fn trial_divide(w: &UniPoly<PrimeField>) -> Result<Vec<UniPoly<PrimeField>>, FactorError> {
    let field = w.field().clone();
    let p = field.modulus();
    let deg = w.degree_usize().expect("nonzero");
    let mut budget: u64 = 0;
    for d in 1..=deg / 2 {
        budget = budget.saturating_add(p.saturating_pow(d as u32));
    }
    if budget > FP_CANDIDATE_BUDGET {
        return Err(FactorError::SearchBudgetExceeded(format!(
            "{budget} trial divisors over F{p} exceed {FP_CANDIDATE_BUDGET}"
        )));
    }
    let mut w = w.clone();
    let mut out = Vec::new();
    let mut d = 1usize;
    while 2 * d <= w.degree_usize().expect("nonzero") {
        let count = p.pow(d as u32);
        let mut counter = 0u64;
        while counter < count {
            let mut coeffs: Vec<u64> = Vec::with_capacity(d + 1);
            let mut c = counter;
            for _ in 0..d {
                coeffs.push(c % p);
                c /= p;
            }
            coeffs.push(1);
            let cand = UniPoly::new(field.clone(), coeffs);
            if let Some(q) = w.exact_div(&cand) {
                out.push(cand);
                w = q;
                if 2 * d > w.degree_usize().expect("nonzero") {
                    break;
                }
            }
            counter += 1;
        }
        d += 1;
        if w.degree() < 1 {
            break;
        }
    }
    if w.degree() >= 1 {
        out.push(w);
    }
    Ok(out)
}
