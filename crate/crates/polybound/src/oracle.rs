//! Brute-force ground truth for the criterion bounds: exact factorization
//! of small bivariate polynomials over small prime fields, plus a product
//! checker for exhibited factorizations over any field.
//!
//! The oracle trades speed for trustworthiness.  It extracts the content,
//! then repeatedly searches for a factor of minimal `y`-degree by walking
//! candidates in a fixed deterministic order and testing exact
//! divisibility, so the returned decomposition is deterministic and every
//! emitted factor is irreducible (any proper factor would have been found
//! at a smaller `y`-degree first).  A candidate's outer coefficients are
//! constrained to divisors of the input's outer coefficients; the middle
//! coefficients are enumerated, except for quadratic factors of quartics,
//! where they are solved for exactly and the search stays cheap even when
//! the `x`-degree is large.

use std::cmp::Ordering;

use thiserror::Error;

use crate::factor::{factor_uni, FactorError};
use crate::field::{Field, PrimeField};
use crate::poly::{BiPoly, UniPoly};

/// Upper bound on divisibility tests per extraction step.
const CANDIDATE_BUDGET: u64 = 4_000_000;

/// Size limits for oracle runs.  The defaults keep the candidate space in
/// the millions; callers may raise them knowingly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OracleBudget {
    pub max_modulus: u64,
    pub max_deg_y: i64,
    pub max_deg_x: i64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_modulus: 7, max_deg_y: 6, max_deg_x: 4 }
    }
}

impl OracleBudget {
    /// Parses a `"p,deg_y,deg_x"` triple, as accepted by the
    /// `POLYBOUND_BUDGET` environment variable.
    pub fn parse(text: &str) -> Option<Self> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return None;
        }
        Some(OracleBudget {
            max_modulus: parts[0].parse().ok()?,
            max_deg_y: parts[1].parse().ok()?,
            max_deg_x: parts[2].parse().ok()?,
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum OracleError {
    #[error("modulus {modulus} exceeds the oracle cap of {cap}")]
    FieldTooLarge { modulus: u64, cap: u64 },
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
}

/// `unit * content(x) * prod factors^mult = input`, with every factor of
/// positive `y`-degree, irreducible, and normalized so its leading
/// `y`-coefficient is monic in `x`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BivariateFactorization<F: Field> {
    unit: F::Elem,
    content: UniPoly<F>,
    factors: Vec<(BiPoly<F>, u32)>,
}

impl<F: Field> BivariateFactorization<F> {
    pub fn unit(&self) -> &F::Elem {
        &self.unit
    }

    pub fn content(&self) -> &UniPoly<F> {
        &self.content
    }

    pub fn factors(&self) -> &[(BiPoly<F>, u32)] {
        &self.factors
    }

    /// Number of irreducible factors of positive `y`-degree, counted with
    /// multiplicity.  Content factors are excluded: the criteria bound the
    /// factor count of content-free polynomials.
    pub fn count(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    pub fn reconstruct(&self) -> BiPoly<F> {
        let mut acc = BiPoly::from_uni(self.content.scale(&self.unit));
        for (g, m) in &self.factors {
            acc = acc.mul(&g.pow(*m));
        }
        acc
    }
}

/// All monic divisors of `a`, in canonical order.
fn monic_divisors(a: &UniPoly<PrimeField>) -> Result<Vec<UniPoly<PrimeField>>, FactorError> {
    let parts = factor_uni(a)?;
    let mut out = vec![UniPoly::one(a.field().clone())];
    for (q, e) in parts.factors() {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = acc.mul(q);
                next.push(acc.clone());
            }
        }
        out = next;
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

/// All nonzero scalar multiples of the monic divisors of `a`, in canonical
/// order: the possible constant-in-`y` coefficients of a normalized factor.
fn scaled_divisors(a: &UniPoly<PrimeField>) -> Result<Vec<UniPoly<PrimeField>>, FactorError> {
    let field = a.field().clone();
    let monic = monic_divisors(a)?;
    let mut out = Vec::with_capacity(monic.len() * (field.modulus() as usize - 1));
    for lambda in 1..field.modulus() {
        for d in &monic {
            out.push(d.scale(&lambda));
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

/// Decodes the `counter`-th coefficient vector of the given width: the
/// middle-coefficient alphabet for candidate factors, walked in base-`p`
/// counter order.
fn nth_unipoly(field: &PrimeField, width: u32, counter: u64) -> UniPoly<PrimeField> {
    let p = field.modulus();
    let mut c = counter;
    let mut coeffs = Vec::with_capacity(width as usize);
    for _ in 0..width {
        coeffs.push(c % p);
        c /= p;
    }
    UniPoly::new(field.clone(), coeffs)
}

/// A square root of `u` in `F_p[x]`, if one exists.  Over `F_2` the squares
/// are exactly the polynomials in `x^2`; over odd characteristic the root
/// is read off the irreducible factorization.
fn sqrt_unipoly(
    u: &UniPoly<PrimeField>,
) -> Result<Option<UniPoly<PrimeField>>, FactorError> {
    let field = u.field().clone();
    if u.is_zero() {
        return Ok(Some(UniPoly::zero(field)));
    }
    if field.modulus() == 2 {
        let coeffs = u.coeffs();
        if coeffs.iter().skip(1).step_by(2).any(|c| *c != 0) {
            return Ok(None);
        }
        let root = coeffs.iter().step_by(2).copied().collect();
        return Ok(Some(UniPoly::new(field, root)));
    }
    let parts = factor_uni(u)?;
    let lambda = *parts.unit();
    let Some(mu) = (0..field.modulus()).find(|m| field.mul(m, m) == lambda) else {
        return Ok(None);
    };
    let mut root = UniPoly::constant(field.clone(), mu);
    for (q, e) in parts.factors() {
        if e % 2 != 0 {
            return Ok(None);
        }
        root = root.mul(&q.pow(e / 2));
    }
    Ok(Some(root))
}

/// Roots in `F_2[x]` of `t^2 + t = s`.  Squaring only feeds even positions,
/// so the digits of a root follow bottom-up from the digits of `s`; the
/// final check rejects unsolvable right-hand sides.  Two roots or none.
fn artin_schreier_roots(s: &UniPoly<PrimeField>) -> Vec<UniPoly<PrimeField>> {
    let field = s.field().clone();
    debug_assert_eq!(field.modulus(), 2);
    let deg = s.degree_usize().unwrap_or(0);
    // digit 0 stays free: t_0^2 + t_0 = 0 either way
    let mut digits = vec![0u64; deg + 1];
    for m in 1..=deg {
        let half = if m % 2 == 0 { digits[m / 2] } else { 0 };
        digits[m] = (s.coeff(m) + half) % 2;
    }
    let t = UniPoly::new(field.clone(), digits);
    if t.mul(&t).add(&t) != *s {
        return Vec::new();
    }
    let mut out = vec![t.clone(), t.add(&UniPoly::one(field))];
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

/// Roots in `F_p[x]` of `a t^2 + b t + c = 0` with `a` nonzero.  A root in
/// the fraction field is integral over `F_p[x]`, which is integrally
/// closed, so the closed forms apply whenever the divisions are exact.
fn quadratic_roots(
    a: &UniPoly<PrimeField>,
    b: &UniPoly<PrimeField>,
    c: &UniPoly<PrimeField>,
) -> Result<Vec<UniPoly<PrimeField>>, FactorError> {
    let field = a.field().clone();
    let mut roots: Vec<UniPoly<PrimeField>> = Vec::new();
    let mut push = |t: UniPoly<PrimeField>| {
        let residual = a.mul(&t).mul(&t).add(&b.mul(&t)).add(c);
        debug_assert!(residual.is_zero(), "closed-form root must satisfy the quadratic");
        if residual.is_zero() && !roots.contains(&t) {
            roots.push(t);
        }
    };
    if field.modulus() == 2 {
        if b.is_zero() {
            // t^2 = c/a
            if let Some(square) = c.exact_div(a) {
                if let Some(t) = sqrt_unipoly(&square)? {
                    push(t);
                }
            }
        } else {
            // substitute t = (b/a) v: v^2 + v = a c / b^2
            if let Some(s) = a.mul(c).exact_div(&b.mul(b)) {
                for v in artin_schreier_roots(&s) {
                    if let Some(t) = b.mul(&v).exact_div(a) {
                        push(t);
                    }
                }
            }
        }
    } else {
        let four = field.from_int(4);
        let disc = b.mul(b).sub(&a.mul(c).scale(&four));
        if let Some(s) = sqrt_unipoly(&disc)? {
            let two_a = a.scale(&field.from_int(2));
            for root in [s.clone(), s.neg()] {
                if let Some(t) = root.sub(b).exact_div(&two_a) {
                    push(t);
                }
            }
        }
    }
    roots.sort_by(|a, b| a.canonical_cmp(b));
    Ok(roots)
}

/// Quadratic factors of a quartic in `y`, for one pair of outer
/// coefficients.  Writing `w = (c0 + c1 y + c2 y^2)(h0 + h1 y + h2 y^2)`,
/// the outer coefficients of `w` force `h0` and `h2`, and the `y` and `y^3`
/// coefficients form a linear system in `(c1, h1)`: one exact solve off the
/// degenerate locus, a quadratic in `c1` on it.  Replaces the
/// middle-coefficient sweep, whose alphabet grows with the `x`-degree.
fn quadratic_factor_of_quartic(
    w: &BiPoly<PrimeField>,
    c0: &UniPoly<PrimeField>,
    c2: &UniPoly<PrimeField>,
    dx: i64,
) -> Result<Option<(BiPoly<PrimeField>, BiPoly<PrimeField>)>, OracleError> {
    let field = w.field().clone();
    let wc = w.y_coeffs();
    let h0 = wc[0].exact_div(c0).expect("divisor of the constant coefficient");
    let h2 = wc[4].exact_div(c2).expect("divisor of the leading coefficient");
    let det = c0.mul(&h2).sub(&c2.mul(&h0));
    let candidates = if det.is_zero() {
        // rank-one system: solvable only when c2 w1 = c0 w3, and then c1
        // satisfies h0 c1^2 - w1 c1 + c0 (w2 - c0 h2 - c2 h0) = 0
        if c2.mul(&wc[1]) != c0.mul(&wc[3]) {
            return Ok(None);
        }
        let qb = wc[1].neg();
        let qc = c0.mul(&wc[2].sub(&c0.mul(&h2)).sub(&c2.mul(&h0)));
        quadratic_roots(&h0, &qb, &qc)
            .map_err(|e| OracleError::BudgetExceeded(e.to_string()))?
    } else {
        // Cramer: c1 = (c0 w3 - c2 w1) / det, exactly or not at all
        let num = c0.mul(&wc[3]).sub(&c2.mul(&wc[1]));
        num.exact_div(&det).into_iter().collect()
    };
    for c1 in candidates {
        // a factor's coefficient degrees never exceed the input's x-degree
        if c1.degree().finite().is_some_and(|d| d > dx) {
            continue;
        }
        let g = BiPoly::new(field.clone(), vec![c0.clone(), c1, c2.clone()]);
        if let Some(h) = try_divide(w, &g) {
            return Ok(Some((g, h)));
        }
    }
    Ok(None)
}

/// Solves `w = g * h` for `h` coefficient-by-coefficient in `y`, from the
/// top down; every division must be exact and the full product must match.
fn try_divide(
    w: &BiPoly<PrimeField>,
    g: &BiPoly<PrimeField>,
) -> Option<BiPoly<PrimeField>> {
    let field = w.field().clone();
    let n = w.deg_y_usize()?;
    let k = g.deg_y_usize()?;
    if k > n {
        return None;
    }
    let m = n - k;
    let wc = w.y_coeffs();
    let gc = g.y_coeffs();
    let gk = &gc[k];
    let mut h = vec![UniPoly::zero(field.clone()); m + 1];
    for j in (0..=m).rev() {
        // coefficient of y^{k+j}: w_{k+j} = sum_{i+l = k+j} g_i h_l
        let mut acc = wc[k + j].clone();
        for l in (j + 1)..=m.min(k + j) {
            acc = acc.sub(&gc[k + j - l].mul(&h[l]));
        }
        h[j] = acc.exact_div(gk)?;
    }
    let hp = BiPoly::new(field, h);
    (g.mul(&hp) == *w).then_some(hp)
}

/// Finds the first factor of minimal `y`-degree of `w` in the fixed search
/// order; `w` must be primitive with nonzero constant-in-`y` coefficient.
/// Returns the factor and its cofactor, or `None` when `w` is irreducible.
fn minimal_factor(
    w: &BiPoly<PrimeField>,
) -> Result<Option<(BiPoly<PrimeField>, BiPoly<PrimeField>)>, OracleError> {
    let field = w.field().clone();
    let p = field.modulus();
    let n = w.deg_y_usize().expect("positive y-degree");
    let dx = w.deg_x().finite().expect("nonzero");
    let width = (dx + 1) as u32;
    let overflow = || OracleError::BudgetExceeded("candidate count overflow".into());
    let map_cap = |e: FactorError| OracleError::BudgetExceeded(e.to_string());
    let low = scaled_divisors(&w.y_coeffs()[0]).map_err(map_cap)?;
    let high = monic_divisors(w.y_coeffs().last().expect("nonzero")).map_err(map_cap)?;
    let pairs = (low.len() as u64)
        .checked_mul(high.len() as u64)
        .ok_or_else(overflow)?;
    for k in 1..=n / 2 {
        let solved = k == 2 && n == 4;
        let alphabet = if solved || k == 1 {
            1
        } else {
            p.checked_pow(width).ok_or_else(overflow)?
        };
        let per_pair = alphabet.checked_pow(k as u32 - 1).ok_or_else(overflow)?;
        let shapes = pairs.checked_mul(per_pair).ok_or_else(overflow)?;
        if shapes > CANDIDATE_BUDGET {
            return Err(OracleError::BudgetExceeded(format!(
                "{shapes} candidates of y-degree {k} exceed the cap of {CANDIDATE_BUDGET}"
            )));
        }
        for g0 in &low {
            for gk in &high {
                if solved {
                    if let Some(hit) = quadratic_factor_of_quartic(w, g0, gk, dx)? {
                        return Ok(Some(hit));
                    }
                    continue;
                }
                if k == 1 {
                    let g = BiPoly::new(field.clone(), vec![g0.clone(), gk.clone()]);
                    if let Some(h) = try_divide(w, &g) {
                        return Ok(Some((g, h)));
                    }
                    continue;
                }
                let mut counters = vec![0u64; k - 1];
                loop {
                    let mut coeffs = Vec::with_capacity(k + 1);
                    coeffs.push(g0.clone());
                    coeffs.extend(counters.iter().map(|&c| nth_unipoly(&field, width, c)));
                    coeffs.push(gk.clone());
                    let g = BiPoly::new(field.clone(), coeffs);
                    if let Some(h) = try_divide(w, &g) {
                        return Ok(Some((g, h)));
                    }
                    // odometer over the middle coefficients, last fastest
                    let mut pos = k - 1;
                    loop {
                        if pos == 0 {
                            break;
                        }
                        pos -= 1;
                        counters[pos] += 1;
                        if counters[pos] < alphabet {
                            break;
                        }
                        counters[pos] = 0;
                    }
                    if counters.iter().all(|&c| c == 0) {
                        break;
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Exact factorization over `F_p[x][y]` by exhaustive search.
pub fn oracle_factor_fp(
    f: &BiPoly<PrimeField>,
    budget: &OracleBudget,
) -> Result<BivariateFactorization<PrimeField>, OracleError> {
    if f.is_zero() {
        return Err(OracleError::ZeroPolynomial);
    }
    let field = f.field().clone();
    let p = field.modulus();
    if p > budget.max_modulus {
        return Err(OracleError::FieldTooLarge { modulus: p, cap: budget.max_modulus });
    }
    if let Some(dy) = f.deg_y().finite() {
        if dy > budget.max_deg_y {
            return Err(OracleError::BudgetExceeded(format!(
                "deg_y {dy} exceeds the cap of {}",
                budget.max_deg_y
            )));
        }
    }
    if let Some(dx) = f.deg_x().finite() {
        if dx > budget.max_deg_x {
            return Err(OracleError::BudgetExceeded(format!(
                "deg_x {dx} exceeds the cap of {}",
                budget.max_deg_x
            )));
        }
    }

    let content = f.content_y().expect("nonzero");
    let primitive = f.exact_div_uni(&content).expect("content divides");
    let (y_power, mut work) = primitive.strip_y_power().expect("nonzero");

    let mut factors: Vec<(BiPoly<PrimeField>, u32)> = Vec::new();
    if y_power > 0 {
        factors.push((BiPoly::variable_y(field.clone()), y_power));
    }
    let mut unit = field.one();
    loop {
        if work.deg_y_usize() == Some(0) {
            let residue = work.y_coeff(0);
            assert_eq!(
                residue.degree_usize(),
                Some(0),
                "residue after removing all factors must be constant"
            );
            unit = field.mul(&unit, &residue.coeff(0));
            break;
        }
        match minimal_factor(&work)? {
            Some((g, h)) => {
                // normalize: leading y-coefficient already monic by
                // construction (it is a monic divisor)
                factors.push((g, 1));
                work = h;
            }
            None => {
                let lead = work
                    .leading_y()
                    .and_then(|c| c.leading().cloned())
                    .expect("nonzero");
                unit = field.mul(&unit, &lead);
                let inv = field.inv(&lead).expect("nonzero leading coefficient");
                factors.push((work.scale(&inv), 1));
                break;
            }
        }
    }

    factors.sort_by(|(a, _), (b, _)| a.canonical_cmp(b));
    let mut merged: Vec<(BiPoly<PrimeField>, u32)> = Vec::new();
    for (g, m) in factors {
        match merged.last_mut() {
            Some((prev, pm)) if prev.canonical_cmp(&g) == Ordering::Equal => *pm += m,
            _ => merged.push((g, m)),
        }
    }

    let out = BivariateFactorization { unit, content, factors: merged };
    debug_assert_eq!(out.reconstruct(), *f, "oracle reconstruction");
    Ok(out)
}

/// Number of irreducible factors of positive `y`-degree, with multiplicity.
pub fn oracle_count(
    f: &BiPoly<PrimeField>,
    budget: &OracleBudget,
) -> Result<u32, OracleError> {
    Ok(oracle_factor_fp(f, budget)?.count())
}

/// True iff the claimed decomposition multiplies back to `f` exactly.
pub fn verify_product<F: Field>(f: &BiPoly<F>, claimed: &[(BiPoly<F>, u32)]) -> bool {
    let mut acc = BiPoly::constant(f.field().clone(), f.field().one());
    for (g, m) in claimed {
        acc = acc.mul(&g.pow(*m));
    }
    acc == *f
}
