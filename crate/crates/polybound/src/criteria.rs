//! The criterion catalog: degree-based upper bounds on the number of
//! irreducible factors of `f` viewed as a polynomial in its main variable.
//!
//! Each criterion checks the hypotheses of one bound and reports either
//! `Applicable { bound, witness }` or `Inapplicable { failed_hypothesis }`,
//! where the tag names the first failed hypothesis in a fixed checking
//! order: arity, main degree, nonzero endpoint coefficients, content, degree
//! inequalities, factorization conditions.  A bound of 1 is an
//! irreducibility certificate.
//!
//! Factorizations of the endpoint coefficients are computed lazily and at
//! most once per analysis; when the factorizer refuses an input (degree or
//! search caps), only the criteria that need those counts are downgraded to
//! inapplicable, with a dedicated tag.

use std::cell::OnceCell;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::degree::ExtendedDegree;
use crate::factor::{factor_uni, Factorable, FactorError, FactorMultiset};
use crate::field::Field;
use crate::multivar::{
    coefficients_in_main, is_content_free_pivot_ring, is_free_of_pivot, content_pivot_ring,
    MultivarError, VariableFrame,
};
use crate::parse::{format_bi, format_multi, format_uni};
use crate::poly::{BiPoly, MultiPoly, UniPoly};

/// Criterion identifiers, in report order.  The `F`/`R` suffix marks the
/// forward/reciprocal direction of the same bound.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub enum CriterionId {
    /// Dominant constant term; bound `nu_0`.
    T1F,
    /// Dominant leading coefficient; bound `nu_n`.
    T1R,
    /// Dominant constant term with a degree gap; bound `min(nu_0, nu_n)`.
    T2F,
    /// Mirror of `T2F`; bound `min(nu_0, nu_n)`.
    T2R,
    /// Irreducibility via an irreducible endpoint, forward direction.
    C2F,
    /// Irreducibility via an irreducible endpoint, reciprocal direction.
    C2R,
    /// Dominant coefficient with constant leading coefficient; bound `n - j`.
    PGEN,
    /// Both endpoints constant; bound `min(j, n - j)`.
    PBI,
    /// Weighted dominant coefficient; bound `n - j`.
    WGEN,
    /// Two-sided weighted dominance; bound `min(j, n - j)`.
    WBI,
    /// Trivariate-and-up analog of `PGEN` in the pivot variable.
    M4,
    /// Trivariate-and-up analog of `WGEN` in the pivot variable.
    M5,
}

impl CriterionId {
    /// Criteria evaluated on bivariate input, in report order.
    pub const BIVARIATE: [CriterionId; 10] = [
        CriterionId::T1F,
        CriterionId::T1R,
        CriterionId::T2F,
        CriterionId::T2R,
        CriterionId::C2F,
        CriterionId::C2R,
        CriterionId::PGEN,
        CriterionId::PBI,
        CriterionId::WGEN,
        CriterionId::WBI,
    ];

    /// Criteria evaluated on input with three or more variables.
    pub const MULTIVARIATE: [CriterionId; 2] = [CriterionId::M4, CriterionId::M5];

    pub fn as_str(&self) -> &'static str {
        match self {
            CriterionId::T1F => "T1F",
            CriterionId::T1R => "T1R",
            CriterionId::T2F => "T2F",
            CriterionId::T2R => "T2R",
            CriterionId::C2F => "C2F",
            CriterionId::C2R => "C2R",
            CriterionId::PGEN => "PGEN",
            CriterionId::PBI => "PBI",
            CriterionId::WGEN => "WGEN",
            CriterionId::WBI => "WBI",
            CriterionId::M4 => "M4",
            CriterionId::M5 => "M5",
        }
    }

    /// Literature label used by the textual reports.
    pub fn reference(&self) -> &'static str {
        match self {
            CriterionId::T1F => "Theorem 1(i)",
            CriterionId::T1R => "Theorem 1(ii)",
            CriterionId::T2F => "Theorem 2(i)",
            CriterionId::T2R => "Theorem 2(ii)",
            CriterionId::C2F => "Corollary 1",
            CriterionId::C2R => "Corollary 2",
            CriterionId::PGEN => "Theorem 4",
            CriterionId::PBI => "Theorem 5",
            CriterionId::WGEN => "Theorem 6",
            CriterionId::WBI => "Theorem 7",
            CriterionId::M4 => "Theorem 8",
            CriterionId::M5 => "Theorem 9",
        }
    }
}

impl fmt::Display for CriterionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

// Inapplicability tags, shared across criteria so mirrored directions
// produce identical strings.
const TAG_MAIN_DEGREE: &str = "main-degree-too-small";
const TAG_ZERO_ENDPOINT: &str = "zero-endpoint-coefficient";
const TAG_CONTENT: &str = "content-nonconstant";
const TAG_CONTENT_ARITY: &str = "content-not-computable-at-this-arity";
const TAG_DEGREE_INEQ: &str = "degree-inequality-not-satisfied";
const TAG_NOT_REDUCIBLE: &str = "endpoint-coefficient-not-reducible";
const TAG_DEGREE_GAP: &str = "endpoint-degree-gap-too-large";
const TAG_NO_CERT: &str = "no-irreducible-endpoint-certificate";
const TAG_LEADING_NOT_CONST: &str = "leading-coefficient-not-constant";
const TAG_CONSTANT_TERM_NOT_CONST: &str = "constant-term-not-constant";
const TAG_NO_DOMINANT: &str = "no-strictly-dominant-coefficient";
const TAG_FACTOR_CAP: &str = "factor-degree-cap-exceeded";
const TAG_PIVOT_IN_LEADING: &str = "leading-coefficient-not-pivot-free";

/// The data backing an applicable verdict: every checked inequality, plus
/// the factorization numbers a reader needs to reproduce the bound.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Witness {
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu0: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nun: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deg_q: Option<i64>,
    pub checks: Vec<String>,
}

impl Witness {
    fn new(n: u32) -> Self {
        Witness { n, j: None, nu0: None, nun: None, deg_q: None, checks: Vec::new() }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "status")]
pub enum CriterionStatus {
    Applicable { bound: u32, witness: Witness },
    Inapplicable { failed_hypothesis: String },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CriterionVerdict {
    pub id: CriterionId,
    #[serde(flatten)]
    pub status: CriterionStatus,
}

impl CriterionVerdict {
    pub fn bound(&self) -> Option<u32> {
        match &self.status {
            CriterionStatus::Applicable { bound, .. } => Some(*bound),
            CriterionStatus::Inapplicable { .. } => None,
        }
    }

    fn applicable(id: CriterionId, bound: u32, witness: Witness) -> Self {
        assert!(bound >= 1, "bounds are positive");
        CriterionVerdict { id, status: CriterionStatus::Applicable { bound, witness } }
    }

    fn inapplicable(id: CriterionId, tag: &str) -> Self {
        CriterionVerdict {
            id,
            status: CriterionStatus::Inapplicable { failed_hypothesis: tag.to_string() },
        }
    }
}

/// Full analysis: every arity-appropriate criterion, the best bound, and an
/// irreducibility certificate when some bound is 1.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AnalysisReport {
    pub input: String,
    pub field: String,
    pub stripped_y_power: u32,
    pub content: Option<String>,
    pub verdicts: Vec<CriterionVerdict>,
    pub best_bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CriterionId>,
}

impl AnalysisReport {
    // The certificate names the dedicated irreducibility corollary when one
    // applies; otherwise the first criterion in catalog order whose bound
    // happens to be 1.
    fn finish(mut self) -> Self {
        self.best_bound = self.verdicts.iter().filter_map(|v| v.bound()).min();
        self.certificate = if self.best_bound == Some(1) {
            self.verdicts
                .iter()
                .find(|v| {
                    matches!(v.id, CriterionId::C2F | CriterionId::C2R)
                        && v.bound() == Some(1)
                })
                .or_else(|| self.verdicts.iter().find(|v| v.bound() == Some(1)))
                .map(|v| v.id)
        } else {
            None
        };
        self
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum AnalysisError {
    #[error("cannot analyze the zero polynomial")]
    ZeroPolynomial,
    #[error("criterion {id} does not apply to {found}-variable input")]
    ArityMismatch { id: CriterionId, found: u32 },
    #[error(transparent)]
    Frame(#[from] MultivarError),
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AnalyzeOptions {
    /// Accepts the content-free hypothesis by assertion when the arity is
    /// above 3, where no gcd in the coefficient ring is implemented.
    pub assume_primitive: bool,
}

// ---------------------------------------------------------------------------
// Bivariate engine
// ---------------------------------------------------------------------------

struct BiCtx<'a, F: Factorable> {
    f: &'a BiPoly<F>,
    n: usize,
    degs: Vec<ExtendedDegree>,
    content_free: bool,
    fact0: OnceCell<Result<FactorMultiset<F>, FactorError>>,
    factn: OnceCell<Result<FactorMultiset<F>, FactorError>>,
}

impl<'a, F: Factorable> BiCtx<'a, F> {
    fn new(f: &'a BiPoly<F>) -> Self {
        let degs: Vec<ExtendedDegree> = f.y_coeffs().iter().map(|a| a.degree()).collect();
        let content_free = f.is_content_free().expect("nonzero");
        BiCtx {
            f,
            n: degs.len() - 1,
            degs,
            content_free,
            fact0: OnceCell::new(),
            factn: OnceCell::new(),
        }
    }

    fn endpoint(&self, lead: bool) -> &UniPoly<F> {
        let i = if lead { self.n } else { 0 };
        &self.f.y_coeffs()[i]
    }

    fn factorization(&self, lead: bool) -> Result<&FactorMultiset<F>, FactorError> {
        let cell = if lead { &self.factn } else { &self.fact0 };
        cell.get_or_init(|| factor_uni(self.endpoint(lead)))
            .as_ref()
            .map_err(|e| e.clone())
    }

    fn nu(&self, lead: bool) -> Result<u32, FactorError> {
        Ok(self.factorization(lead)?.nu())
    }

    /// Degree of a smallest irreducible factor of the chosen endpoint.
    fn deg_q(&self, lead: bool) -> Result<i64, FactorError> {
        Ok(self
            .factorization(lead)?
            .smallest_degree()
            .expect("endpoint with positive degree"))
    }

    fn max_deg_excluding(&self, j: usize) -> ExtendedDegree {
        ExtendedDegree::max_of(
            self.degs
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != j)
                .map(|(_, d)| *d),
        )
    }

    /// Shared preamble: main degree, endpoints, optional content check.
    fn preamble(&self, id: CriterionId, need_content: bool) -> Result<(), CriterionVerdict> {
        if self.n < 2 {
            return Err(CriterionVerdict::inapplicable(id, TAG_MAIN_DEGREE));
        }
        if self.degs[0].is_neg_inf() || self.degs[self.n].is_neg_inf() {
            return Err(CriterionVerdict::inapplicable(id, TAG_ZERO_ENDPOINT));
        }
        if need_content && !self.content_free {
            return Err(CriterionVerdict::inapplicable(id, TAG_CONTENT));
        }
        Ok(())
    }
}

/// Index of the strictly maximal entry, if one exists.
fn strict_argmax(vals: &[ExtendedDegree]) -> Option<usize> {
    let mut best = ExtendedDegree::NegInf;
    let mut idx = 0usize;
    let mut unique = false;
    for (i, v) in vals.iter().enumerate() {
        if *v > best {
            best = *v;
            idx = i;
            unique = true;
        } else if *v == best {
            unique = false;
        }
    }
    (unique && !best.is_neg_inf()).then_some(idx)
}

fn check_t1<F: Factorable>(ctx: &BiCtx<F>, id: CriterionId, lead: bool) -> CriterionVerdict {
    if let Err(v) = ctx.preamble(id, true) {
        return v;
    }
    let end = if lead { ctx.n } else { 0 };
    let dom = ctx.degs[end];
    let rest = ctx.max_deg_excluding(end);
    if !(dom > rest) {
        return CriterionVerdict::inapplicable(id, TAG_DEGREE_INEQ);
    }
    let nu = match ctx.nu(lead) {
        Ok(nu) => nu,
        Err(_) => return CriterionVerdict::inapplicable(id, TAG_FACTOR_CAP),
    };
    let (this, that) = if lead { ("a_n", "nu_n") } else { ("a_0", "nu_0") };
    let mut w = Witness::new(ctx.n as u32);
    if lead {
        w.nun = Some(nu);
    } else {
        w.nu0 = Some(nu);
    }
    w.checks = vec![
        "content in K[x] is constant".to_string(),
        format!("deg {this} = {dom} > {rest} = max of the other coefficient degrees"),
        format!("{that} = {nu}"),
    ];
    CriterionVerdict::applicable(id, nu, w)
}

fn check_t2<F: Factorable>(ctx: &BiCtx<F>, id: CriterionId, lead: bool) -> CriterionVerdict {
    if let Err(v) = ctx.preamble(id, true) {
        return v;
    }
    let end = if lead { ctx.n } else { 0 };
    let other = if lead { 0 } else { ctx.n };
    let dom = ctx.degs[end];
    let rest = ctx.max_deg_excluding(end);
    if !(dom > rest) {
        return CriterionVerdict::inapplicable(id, TAG_DEGREE_INEQ);
    }
    let (nu_dom, deg_q, nu_other) =
        match (ctx.nu(lead), ctx.deg_q(lead), ctx.nu(!lead)) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            _ => return CriterionVerdict::inapplicable(id, TAG_FACTOR_CAP),
        };
    if nu_dom < 2 {
        return CriterionVerdict::inapplicable(id, TAG_NOT_REDUCIBLE);
    }
    let dom_deg = dom.finite().expect("nonzero endpoint");
    let other_deg = ctx.degs[other].finite().expect("nonzero endpoint");
    if other_deg < dom_deg - deg_q {
        return CriterionVerdict::inapplicable(id, TAG_DEGREE_GAP);
    }
    let bound = nu_dom.min(nu_other);
    let (dom_name, other_name) = if lead { ("a_n", "a_0") } else { ("a_0", "a_n") };
    let mut w = Witness::new(ctx.n as u32);
    w.nu0 = Some(if lead { nu_other } else { nu_dom });
    w.nun = Some(if lead { nu_dom } else { nu_other });
    w.deg_q = Some(deg_q);
    w.checks = vec![
        "content in K[x] is constant".to_string(),
        format!("deg {dom_name} = {dom} > {rest} = max of the other coefficient degrees"),
        format!("{dom_name} is reducible: it has {nu_dom} irreducible factors"),
        format!("smallest-degree irreducible factor q of {dom_name} has deg q = {deg_q}"),
        format!(
            "deg {other_name} = {other_deg} >= {} = deg {dom_name} - deg q",
            dom_deg - deg_q
        ),
        format!("bound = min(nu_0, nu_n) = {bound}"),
    ];
    CriterionVerdict::applicable(id, bound, w)
}

fn check_c2<F: Factorable>(ctx: &BiCtx<F>, id: CriterionId, lead: bool) -> CriterionVerdict {
    if let Err(v) = ctx.preamble(id, true) {
        return v;
    }
    let end = if lead { ctx.n } else { 0 };
    let other = if lead { 0 } else { ctx.n };
    let dom = ctx.degs[end];
    let rest = ctx.max_deg_excluding(end);
    if !(dom > rest) {
        return CriterionVerdict::inapplicable(id, TAG_DEGREE_INEQ);
    }
    let (dom_name, other_name) = if lead { ("a_n", "a_0") } else { ("a_0", "a_n") };
    let nu_dom = match ctx.nu(lead) {
        Ok(nu) => nu,
        Err(_) => return CriterionVerdict::inapplicable(id, TAG_FACTOR_CAP),
    };
    let mut w = Witness::new(ctx.n as u32);
    w.checks = vec![
        "content in K[x] is constant".to_string(),
        format!("deg {dom_name} = {dom} > {rest} = max of the other coefficient degrees"),
    ];
    if nu_dom == 1 {
        if lead {
            w.nun = Some(1);
        } else {
            w.nu0 = Some(1);
        }
        w.checks.push(format!("{dom_name} is irreducible in K[x]"));
        return CriterionVerdict::applicable(id, 1, w);
    }
    // second branch: the opposite endpoint is irreducible and closes the gap
    let (nu_other, deg_q) = match (ctx.nu(!lead), ctx.deg_q(lead)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return CriterionVerdict::inapplicable(id, TAG_FACTOR_CAP),
    };
    if nu_other != 1 {
        return CriterionVerdict::inapplicable(id, TAG_NO_CERT);
    }
    let dom_deg = dom.finite().expect("nonzero endpoint");
    let other_deg = ctx.degs[other].finite().expect("nonzero endpoint");
    if other_deg < dom_deg - deg_q {
        return CriterionVerdict::inapplicable(id, TAG_NO_CERT);
    }
    w.nu0 = Some(if lead { nu_other } else { nu_dom });
    w.nun = Some(if lead { nu_dom } else { nu_other });
    w.deg_q = Some(deg_q);
    w.checks.push(format!("{other_name} is irreducible in K[x]"));
    w.checks.push(format!(
        "deg {other_name} = {other_deg} >= {} = deg {dom_name} - deg q",
        dom_deg - deg_q
    ));
    CriterionVerdict::applicable(id, 1, w)
}

fn check_pgen<F: Factorable>(ctx: &BiCtx<F>, id: CriterionId, both_ends: bool) -> CriterionVerdict {
    if let Err(v) = ctx.preamble(id, false) {
        return v;
    }
    if ctx.degs[ctx.n] != ExtendedDegree::Finite(0) {
        return CriterionVerdict::inapplicable(id, TAG_LEADING_NOT_CONST);
    }
    if both_ends && ctx.degs[0] != ExtendedDegree::Finite(0) {
        return CriterionVerdict::inapplicable(id, TAG_CONSTANT_TERM_NOT_CONST);
    }
    let Some(j) = strict_argmax(&ctx.degs) else {
        return CriterionVerdict::inapplicable(id, TAG_NO_DOMINANT);
    };
    let lo = if both_ends { 1 } else { 0 };
    if j < lo || j > ctx.n - 1 {
        return CriterionVerdict::inapplicable(id, TAG_NO_DOMINANT);
    }
    let n = ctx.n as u32;
    let j32 = j as u32;
    let bound = if both_ends { j32.min(n - j32) } else { n - j32 };
    let mut w = Witness::new(n);
    w.j = Some(j32);
    w.checks = vec![
        "deg a_n = 0".to_string(),
        format!(
            "deg a_j = {} > all other coefficient degrees (j = {j32})",
            ctx.degs[j]
        ),
    ];
    if both_ends {
        w.checks[0] = "deg a_0 = deg a_n = 0".to_string();
        w.checks.push(format!("bound = min(j, n - j) = {bound}"));
    } else {
        w.checks.push(format!("bound = n - j = {bound}"));
    }
    CriterionVerdict::applicable(id, bound, w)
}

fn check_wgen<F: Factorable>(ctx: &BiCtx<F>, id: CriterionId) -> CriterionVerdict {
    if let Err(v) = ctx.preamble(id, true) {
        return v;
    }
    let dn = ctx.degs[ctx.n].finite().expect("nonzero endpoint");
    // deg a_j > deg a_i + (j - i) deg a_n for all i != j is equivalent to a
    // strict maximum of deg a_i - i * deg a_n.
    let shifted: Vec<ExtendedDegree> = ctx
        .degs
        .iter()
        .enumerate()
        .map(|(i, d)| *d + -(i as i64) * dn)
        .collect();
    let Some(j) = strict_argmax(&shifted) else {
        return CriterionVerdict::inapplicable(id, TAG_NO_DOMINANT);
    };
    if j > ctx.n - 1 {
        return CriterionVerdict::inapplicable(id, TAG_NO_DOMINANT);
    }
    let n = ctx.n as u32;
    let j32 = j as u32;
    let bound = n - j32;
    let mut w = Witness::new(n);
    w.j = Some(j32);
    w.checks = vec![
        "content in K[x] is constant".to_string(),
        format!("deg a_j > deg a_i + (j - i) deg a_n for all i != j (j = {j32})"),
        format!("bound = n - j = {bound}"),
    ];
    CriterionVerdict::applicable(id, bound, w)
}

fn check_wbi<F: Factorable>(ctx: &BiCtx<F>, id: CriterionId) -> CriterionVerdict {
    if let Err(v) = ctx.preamble(id, true) {
        return v;
    }
    let d0 = ctx.degs[0].finite().expect("nonzero endpoint");
    let dn = ctx.degs[ctx.n].finite().expect("nonzero endpoint");
    for j in 1..ctx.n {
        let left = ExtendedDegree::max_of(
            (0..j).map(|i| ctx.degs[i] + ((j - i) as i64) * dn),
        );
        let right = ExtendedDegree::max_of(
            (j + 1..=ctx.n).map(|i| ctx.degs[i] + ((i - j) as i64) * d0),
        );
        if ctx.degs[j] > left && ctx.degs[j] > right {
            let n = ctx.n as u32;
            let j32 = j as u32;
            let bound = j32.min(n - j32);
            let mut w = Witness::new(n);
            w.j = Some(j32);
            w.checks = vec![
                "content in K[x] is constant".to_string(),
                format!("deg a_j > deg a_i + (j - i) deg a_n for all i < j (j = {j32})"),
                "deg a_j > deg a_i + (i - j) deg a_0 for all i > j".to_string(),
                format!("bound = min(j, n - j) = {bound}"),
            ];
            return CriterionVerdict::applicable(id, bound, w);
        }
    }
    CriterionVerdict::inapplicable(id, TAG_NO_DOMINANT)
}

fn check_bi_criterion<F: Factorable>(ctx: &BiCtx<F>, id: CriterionId) -> CriterionVerdict {
    match id {
        CriterionId::T1F => check_t1(ctx, id, false),
        CriterionId::T1R => check_t1(ctx, id, true),
        CriterionId::T2F => check_t2(ctx, id, false),
        CriterionId::T2R => check_t2(ctx, id, true),
        CriterionId::C2F => check_c2(ctx, id, false),
        CriterionId::C2R => check_c2(ctx, id, true),
        CriterionId::PGEN => check_pgen(ctx, id, false),
        CriterionId::PBI => check_pgen(ctx, id, true),
        CriterionId::WGEN => check_wgen(ctx, id),
        CriterionId::WBI => check_wbi(ctx, id),
        CriterionId::M4 | CriterionId::M5 => unreachable!("multivariate id on bivariate path"),
    }
}

/// Evaluates one bivariate criterion on `f` as given (no stripping); the
/// caller is responsible for removing trailing powers of `y` first.
pub fn check_criterion<F: Factorable>(
    id: CriterionId,
    f: &BiPoly<F>,
) -> Result<CriterionVerdict, AnalysisError> {
    if f.is_zero() {
        return Err(AnalysisError::ZeroPolynomial);
    }
    if matches!(id, CriterionId::M4 | CriterionId::M5) {
        return Err(AnalysisError::ArityMismatch { id, found: 2 });
    }
    let ctx = BiCtx::new(f);
    Ok(check_bi_criterion(&ctx, id))
}

/// Runs every bivariate criterion on `f` after dividing out the largest
/// power of `y`, and assembles the report.
pub fn analyze_bi<F: Factorable>(f: &BiPoly<F>) -> Result<AnalysisReport, AnalysisError> {
    analyze_bi_named(f, ("x", "y"))
}

/// Same as [`analyze_bi`] with caller-chosen variable names in the echoes.
pub fn analyze_bi_named<F: Factorable>(
    f: &BiPoly<F>,
    names: (&str, &str),
) -> Result<AnalysisReport, AnalysisError> {
    if f.is_zero() {
        return Err(AnalysisError::ZeroPolynomial);
    }
    let (k, g) = f.strip_y_power().expect("nonzero");
    let content = g.content_y().expect("nonzero");
    let ctx = BiCtx::new(&g);
    let verdicts = CriterionId::BIVARIATE
        .iter()
        .map(|&id| check_bi_criterion(&ctx, id))
        .collect();
    let report = AnalysisReport {
        input: format_bi(f, names),
        field: f.field().descriptor().to_string(),
        stripped_y_power: k,
        content: Some(format_uni(&content, names.0)),
        verdicts,
        best_bound: None,
        certificate: None,
    };
    Ok(report.finish())
}

// ---------------------------------------------------------------------------
// Multivariate engine (arity >= 3)
// ---------------------------------------------------------------------------

struct MultiCtx {
    n: usize,
    pivot_degs: Vec<ExtendedDegree>,
    leading_pivot_free: bool,
    /// `Some(flag)` when decidable; `None` when the arity rules it out.
    content_free: Option<bool>,
    content_assumed: bool,
}

impl MultiCtx {
    fn new<F: Field>(
        f: &MultiPoly<F>,
        frame: &VariableFrame,
        opts: &AnalyzeOptions,
    ) -> Result<Self, MultivarError> {
        let coeffs = coefficients_in_main(f, frame)?;
        let pivot = frame.pivot();
        let pivot_degs: Vec<ExtendedDegree> =
            coeffs.iter().map(|a| a.degree_in(pivot)).collect();
        let leading_pivot_free =
            is_free_of_pivot(coeffs.last().expect("nonzero"), frame);
        let content_free = if frame.arity() == 3 {
            Some(is_content_free_pivot_ring(f, frame)?)
        } else if opts.assume_primitive {
            Some(true)
        } else {
            None
        };
        Ok(MultiCtx {
            n: coeffs.len() - 1,
            pivot_degs,
            leading_pivot_free,
            content_free,
            content_assumed: frame.arity() > 3 && opts.assume_primitive,
        })
    }

    fn preamble(&self, id: CriterionId) -> Result<(), CriterionVerdict> {
        if self.n < 2 {
            return Err(CriterionVerdict::inapplicable(id, TAG_MAIN_DEGREE));
        }
        // a_n is nonzero by construction; a_0 may vanish if the caller
        // skipped stripping.
        if self.pivot_degs[0].is_neg_inf() {
            return Err(CriterionVerdict::inapplicable(id, TAG_ZERO_ENDPOINT));
        }
        Ok(())
    }
}

fn check_m4(ctx: &MultiCtx) -> CriterionVerdict {
    let id = CriterionId::M4;
    if let Err(v) = ctx.preamble(id) {
        return v;
    }
    if !ctx.leading_pivot_free {
        return CriterionVerdict::inapplicable(id, TAG_PIVOT_IN_LEADING);
    }
    let Some(j) = strict_argmax(&ctx.pivot_degs) else {
        return CriterionVerdict::inapplicable(id, TAG_NO_DOMINANT);
    };
    if j > ctx.n - 1 {
        return CriterionVerdict::inapplicable(id, TAG_NO_DOMINANT);
    }
    let n = ctx.n as u32;
    let j32 = j as u32;
    let bound = n - j32;
    let mut w = Witness::new(n);
    w.j = Some(j32);
    w.checks = vec![
        "a_n does not involve the pivot variable".to_string(),
        format!(
            "pivot degree of a_j = {} > all other pivot degrees (j = {j32})",
            ctx.pivot_degs[j]
        ),
        format!("bound = n - j = {bound}"),
    ];
    CriterionVerdict::applicable(id, bound, w)
}

fn check_m5(ctx: &MultiCtx) -> CriterionVerdict {
    let id = CriterionId::M5;
    if let Err(v) = ctx.preamble(id) {
        return v;
    }
    match ctx.content_free {
        None => return CriterionVerdict::inapplicable(id, TAG_CONTENT_ARITY),
        Some(false) => return CriterionVerdict::inapplicable(id, TAG_CONTENT),
        Some(true) => {}
    }
    let dn = ctx.pivot_degs[ctx.n].finite().expect("nonzero leading coefficient");
    let shifted: Vec<ExtendedDegree> = ctx
        .pivot_degs
        .iter()
        .enumerate()
        .map(|(i, d)| *d + -(i as i64) * dn)
        .collect();
    let Some(j) = strict_argmax(&shifted) else {
        return CriterionVerdict::inapplicable(id, TAG_NO_DOMINANT);
    };
    if j > ctx.n - 1 {
        return CriterionVerdict::inapplicable(id, TAG_NO_DOMINANT);
    }
    let n = ctx.n as u32;
    let j32 = j as u32;
    let bound = n - j32;
    let mut w = Witness::new(n);
    w.j = Some(j32);
    w.checks = vec![
        if ctx.content_assumed {
            "content in the coefficient ring is constant: asserted by caller".to_string()
        } else {
            "content in the coefficient ring is constant".to_string()
        },
        format!(
            "pivot degree of a_j > pivot degree of a_i + (j - i) * pivot degree of a_n \
             for all i != j (j = {j32})"
        ),
        format!("bound = n - j = {bound}"),
    ];
    CriterionVerdict::applicable(id, bound, w)
}

/// Evaluates `M4` or `M5` on a polynomial in three or more variables.
pub fn check_criterion_multi<F: Field>(
    id: CriterionId,
    f: &MultiPoly<F>,
    frame: &VariableFrame,
    opts: &AnalyzeOptions,
) -> Result<CriterionVerdict, AnalysisError> {
    if f.is_zero() {
        return Err(AnalysisError::ZeroPolynomial);
    }
    if !matches!(id, CriterionId::M4 | CriterionId::M5) {
        return Err(AnalysisError::ArityMismatch { id, found: frame.arity() });
    }
    let ctx = MultiCtx::new(f, frame, opts)?;
    Ok(match id {
        CriterionId::M4 => check_m4(&ctx),
        _ => check_m5(&ctx),
    })
}

/// Divides out the largest power of the main variable; returns the exponent
/// and the quotient, whose constant coefficient is nonzero.
fn strip_main_power<F: Field>(f: &MultiPoly<F>, main: u32) -> (u32, MultiPoly<F>) {
    let coeffs = f.coefficients_in(main);
    let k = coeffs.iter().take_while(|c| c.is_zero()).count();
    if k == 0 {
        return (0, f.clone());
    }
    let rest: Vec<MultiPoly<F>> = coeffs[k..].to_vec();
    (k as u32, MultiPoly::from_coefficients(f.field().clone(), main, rest))
}

/// Runs the multivariate criteria on `f` after stripping powers of the main
/// variable, and assembles the report.
pub fn analyze_multi<F: Field>(
    f: &MultiPoly<F>,
    frame: &VariableFrame,
    opts: &AnalyzeOptions,
) -> Result<AnalysisReport, AnalysisError> {
    if f.is_zero() {
        return Err(AnalysisError::ZeroPolynomial);
    }
    if let Some(&bad) = f.vars_used().iter().find(|&&v| v > frame.arity()) {
        return Err(MultivarError::UnknownVariable(bad).into());
    }
    let (k, g) = strip_main_power(f, frame.main());
    let ctx = MultiCtx::new(&g, frame, opts)?;
    // Above arity 3 the content is never computed, only asserted; the report
    // leaves it empty and the M5 witness records the assertion.
    let content = if frame.arity() == 3 {
        Some(format_multi(
            &content_pivot_ring(&g, frame).expect("arity 3"),
            &frame.names(),
        ))
    } else {
        None
    };
    let verdicts = vec![check_m4(&ctx), check_m5(&ctx)];
    let report = AnalysisReport {
        input: format_multi(f, &frame.names()),
        field: f.field().descriptor().to_string(),
        stripped_y_power: k,
        content,
        verdicts,
        best_bound: None,
        certificate: None,
    };
    Ok(report.finish())
}

/// Arity dispatch: one or two names analyze as bivariate, three or more via
/// the pivot-variable criteria.
pub fn analyze<F: Factorable>(
    f: &MultiPoly<F>,
    var_names: &[&str],
    opts: &AnalyzeOptions,
) -> Result<AnalysisReport, AnalysisError> {
    assert!(!var_names.is_empty(), "at least one variable name");
    if var_names.len() <= 2 {
        if let Some(&bad) = f.vars_used().iter().find(|&&v| v as usize > var_names.len()) {
            return Err(MultivarError::UnknownVariable(bad).into());
        }
        let b = f.to_bipoly(1, 2).expect("at most two variables");
        let y = var_names.get(1).copied().unwrap_or("y");
        return analyze_bi_named(&b, (var_names[0], y));
    }
    let frame = VariableFrame::new(var_names.iter().map(|s| s.to_string()).collect())?;
    analyze_multi(f, &frame, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::parse::{parse_bi, parse_multi};

    fn qbi(s: &str) -> BiPoly<Rationals> {
        parse_bi(s, Rationals, ("x", "y")).unwrap()
    }

    fn report(s: &str) -> AnalysisReport {
        analyze_bi(&qbi(s)).unwrap()
    }

    fn verdict(r: &AnalysisReport, id: CriterionId) -> CriterionVerdict {
        r.verdicts.iter().find(|v| v.id == id).unwrap().clone()
    }

    fn tag(r: &AnalysisReport, id: CriterionId) -> String {
        match verdict(r, id).status {
            CriterionStatus::Inapplicable { failed_hypothesis } => failed_hypothesis,
            other => panic!("expected inapplicable {id}, got {other:?}"),
        }
    }

    fn witness(r: &AnalysisReport, id: CriterionId) -> Witness {
        match verdict(r, id).status {
            CriterionStatus::Applicable { witness, .. } => witness,
            other => panic!("expected applicable {id}, got {other:?}"),
        }
    }

    #[test]
    fn dominant_constant_term_bounds_by_its_factor_count() {
        // (2 + x + y)(3 + x + y) expanded
        let r = report("6 + 5x + x^2 + (5 + 2x)y + y^2");
        assert_eq!(r.verdicts.len(), 10);
        let order: Vec<CriterionId> = r.verdicts.iter().map(|v| v.id).collect();
        assert_eq!(order, CriterionId::BIVARIATE.to_vec());

        let v = verdict(&r, CriterionId::T1F);
        assert_eq!(v.bound(), Some(2));
        let w = witness(&r, CriterionId::T1F);
        assert_eq!(w.n, 2);
        assert_eq!(w.nu0, Some(2));

        assert_eq!(tag(&r, CriterionId::T1R), "degree-inequality-not-satisfied");
        // deg a_n = 0 < deg a_0 - deg q = 1, so the gap hypothesis fails
        assert_eq!(tag(&r, CriterionId::T2F), "endpoint-degree-gap-too-large");
        assert_eq!(tag(&r, CriterionId::C2F), "no-irreducible-endpoint-certificate");
        assert_eq!(tag(&r, CriterionId::PBI), "constant-term-not-constant");
        assert_eq!(tag(&r, CriterionId::WBI), "no-strictly-dominant-coefficient");

        assert_eq!(verdict(&r, CriterionId::PGEN).bound(), Some(2));
        assert_eq!(witness(&r, CriterionId::PGEN).j, Some(0));
        assert_eq!(verdict(&r, CriterionId::WGEN).bound(), Some(2));

        assert_eq!(r.best_bound, Some(2));
        assert_eq!(r.certificate, None);
        assert_eq!(r.stripped_y_power, 0);
        assert_eq!(r.content.as_deref(), Some("1"));
    }

    #[test]
    fn reducible_endpoint_with_degree_gap_takes_the_min() {
        // (2+x^2)^4 + 2(3+x^3)(2+x^2)^2 y + (3+x^3)^2 y^2
        let r = report("(2+x^2)^4 + 2(3+x^3)(2+x^2)^2 y + (3+x^3)^2 y^2");
        assert_eq!(verdict(&r, CriterionId::T1F).bound(), Some(4));
        let v = verdict(&r, CriterionId::T2F);
        assert_eq!(v.bound(), Some(2));
        let w = witness(&r, CriterionId::T2F);
        assert_eq!((w.nu0, w.nun, w.deg_q), (Some(4), Some(2), Some(2)));
        assert_eq!(tag(&r, CriterionId::T2R), "degree-inequality-not-satisfied");
        assert_eq!(tag(&r, CriterionId::PGEN), "leading-coefficient-not-constant");
        assert_eq!(r.best_bound, Some(2));
        assert_eq!(r.certificate, None);
    }

    #[test]
    fn irreducible_constant_term_certifies() {
        let r = report("1 + x^4 + x^3 y + y^2");
        let v = verdict(&r, CriterionId::C2F);
        assert_eq!(v.bound(), Some(1));
        assert_eq!(witness(&r, CriterionId::C2F).nu0, Some(1));
        // T1F also reaches bound 1 here, but the certificate names the
        // dedicated irreducibility criterion.
        assert_eq!(verdict(&r, CriterionId::T1F).bound(), Some(1));
        assert_eq!(r.best_bound, Some(1));
        assert_eq!(r.certificate, Some(CriterionId::C2F));
    }

    #[test]
    fn irreducible_leading_coefficient_closes_the_gap() {
        // a_0 = (2+x^2)^2 is reducible; a_2 = 3+x^3 is irreducible and
        // deg a_2 = 3 >= deg a_0 - deg q = 4 - 2.
        let r = report("(2+x^2)^2 + (3+x^3)y^2");
        let v = verdict(&r, CriterionId::C2F);
        assert_eq!(v.bound(), Some(1));
        let w = witness(&r, CriterionId::C2F);
        assert_eq!((w.nu0, w.nun, w.deg_q), (Some(2), Some(1), Some(2)));
        assert_eq!(r.certificate, Some(CriterionId::C2F));
    }

    #[test]
    fn dominant_middle_coefficient_with_constant_lead() {
        let r = report("x + x^2 y + y^2");
        let v = verdict(&r, CriterionId::PGEN);
        assert_eq!(v.bound(), Some(1));
        assert_eq!(witness(&r, CriterionId::PGEN).j, Some(1));
        assert_eq!(r.certificate, Some(CriterionId::PGEN));
    }

    #[test]
    fn both_endpoints_constant_takes_min_of_two_sides() {
        let r = report("1 + x y + y^2");
        assert_eq!(verdict(&r, CriterionId::PBI).bound(), Some(1));
        assert_eq!(witness(&r, CriterionId::PBI).j, Some(1));
        assert_eq!(r.best_bound, Some(1));
        assert!(r.certificate.is_some());

        let r2 = report("(1 + x y + y^2)^2");
        let v = verdict(&r2, CriterionId::PBI);
        assert_eq!(v.bound(), Some(2));
        assert_eq!(witness(&r2, CriterionId::PBI).j, Some(2));
        // one-sided bound is n - j = 2 as well
        assert_eq!(verdict(&r2, CriterionId::PGEN).bound(), Some(2));
        assert_eq!(r2.best_bound, Some(2));
        assert_eq!(r2.certificate, None);
    }

    #[test]
    fn weighted_dominance_certifies_nonconstant_lead() {
        let r = report("1 + x^2 y + x y^2");
        assert_eq!(verdict(&r, CriterionId::WGEN).bound(), Some(1));
        assert_eq!(witness(&r, CriterionId::WGEN).j, Some(1));
        assert_eq!(verdict(&r, CriterionId::WBI).bound(), Some(1));
        assert_eq!(witness(&r, CriterionId::WBI).j, Some(1));
        assert_eq!(tag(&r, CriterionId::PGEN), "leading-coefficient-not-constant");
        assert_eq!(r.best_bound, Some(1));
        assert_eq!(r.certificate, Some(CriterionId::WGEN));
    }

    #[test]
    fn nonconstant_content_blocks_content_criteria() {
        let r = report("x + x y^2");
        assert_eq!(r.content.as_deref(), Some("x"));
        assert_eq!(tag(&r, CriterionId::T1F), "content-nonconstant");
        assert_eq!(tag(&r, CriterionId::WGEN), "content-nonconstant");
        // criteria without a content hypothesis fail later checks instead
        assert_eq!(tag(&r, CriterionId::PGEN), "leading-coefficient-not-constant");
        assert_eq!(r.best_bound, None);
    }

    #[test]
    fn equal_degrees_apply_nothing() {
        let r = report("1 + y + y^2");
        for v in &r.verdicts {
            assert!(v.bound().is_none(), "{} unexpectedly applied", v.id);
        }
        assert_eq!(tag(&r, CriterionId::T1F), "degree-inequality-not-satisfied");
        assert_eq!(tag(&r, CriterionId::PGEN), "no-strictly-dominant-coefficient");
        assert_eq!(r.best_bound, None);
        assert_eq!(r.certificate, None);
    }

    #[test]
    fn factor_cap_downgrades_only_factor_count_criteria() {
        let r = report("1 + x^25 + y^2");
        assert_eq!(tag(&r, CriterionId::T1F), "factor-degree-cap-exceeded");
        assert_eq!(tag(&r, CriterionId::C2F), "factor-degree-cap-exceeded");
        assert_eq!(verdict(&r, CriterionId::PGEN).bound(), Some(2));
        assert_eq!(verdict(&r, CriterionId::WGEN).bound(), Some(2));
        assert_eq!(r.best_bound, Some(2));
    }

    #[test]
    fn trailing_main_variable_power_is_stripped_and_reported() {
        let r = report("y^2 + x y^2 + y^3");
        assert_eq!(r.stripped_y_power, 2);
        // quotient 1 + x + y has main degree 1
        assert_eq!(tag(&r, CriterionId::T1F), "main-degree-too-small");
        assert_eq!(r.best_bound, None);
    }

    #[test]
    fn prime_field_coefficients_analyze_the_same_way() {
        let f5 = PrimeField::new(5).unwrap();
        let f = parse_bi("1 + x^2 + 2 x y + y^2", f5, ("x", "y")).unwrap();
        let r = analyze_bi(&f).unwrap();
        assert_eq!(r.field, "F5");
        // 1 + x^2 = (x+2)(x+3) over F_5
        let v = verdict(&r, CriterionId::T1F);
        assert_eq!(v.bound(), Some(2));
        assert_eq!(witness(&r, CriterionId::T1F).nu0, Some(2));
        assert_eq!(r.best_bound, Some(2));
    }

    #[test]
    fn pivot_degree_criteria_on_three_variables() {
        let names = ["x1", "x2", "x3"];
        let f = parse_multi("x1 x3^2 + x2^3 x3 + x2", Rationals, &names).unwrap();
        let r = analyze(&f, &names, &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.verdicts.len(), 2);
        assert_eq!(verdict(&r, CriterionId::M4).bound(), Some(1));
        assert_eq!(witness(&r, CriterionId::M4).j, Some(1));
        assert_eq!(verdict(&r, CriterionId::M5).bound(), Some(1));
        assert_eq!(r.content.as_deref(), Some("1"));
        assert_eq!(r.best_bound, Some(1));
        assert_eq!(r.certificate, Some(CriterionId::M4));
    }

    #[test]
    fn pivot_in_leading_coefficient_blocks_only_the_unweighted_bound() {
        let names = ["x1", "x2", "x3"];
        let f = parse_multi("x2 x3^2 + x2^3 x3 + x1", Rationals, &names).unwrap();
        let r = analyze(&f, &names, &AnalyzeOptions::default()).unwrap();
        assert_eq!(tag(&r, CriterionId::M4), "leading-coefficient-not-pivot-free");
        assert_eq!(verdict(&r, CriterionId::M5).bound(), Some(1));
        assert_eq!(witness(&r, CriterionId::M5).j, Some(1));
    }

    #[test]
    fn arity_above_three_needs_the_primitivity_assertion() {
        let names = ["x1", "x2", "x3", "x4"];
        let f = parse_multi("x1 x4^2 + x3^3 x4 + x2", Rationals, &names).unwrap();
        let r = analyze(&f, &names, &AnalyzeOptions::default()).unwrap();
        assert_eq!(tag(&r, CriterionId::M5), "content-not-computable-at-this-arity");
        assert_eq!(r.content, None);
        // the unweighted criterion has no content hypothesis
        assert_eq!(verdict(&r, CriterionId::M4).bound(), Some(1));

        let opts = AnalyzeOptions { assume_primitive: true };
        let r2 = analyze(&f, &names, &opts).unwrap();
        let v = verdict(&r2, CriterionId::M5);
        assert_eq!(v.bound(), Some(1));
        let w = witness(&r2, CriterionId::M5);
        assert!(w.checks[0].contains("asserted by caller"));
        assert_eq!(r2.content, None);
    }

    #[test]
    fn criterion_arity_is_enforced() {
        let f = qbi("1 + x y + y^2");
        assert!(matches!(
            check_criterion(CriterionId::M4, &f),
            Err(AnalysisError::ArityMismatch { .. })
        ));
        let names = ["x1", "x2", "x3"];
        let g = parse_multi("x1 x3^2 + x2^3 x3 + x2", Rationals, &names).unwrap();
        let frame = VariableFrame::numbered(3).unwrap();
        assert!(matches!(
            check_criterion_multi(CriterionId::T1F, &g, &frame, &AnalyzeOptions::default()),
            Err(AnalysisError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn zero_input_is_an_error() {
        let z = BiPoly::zero(Rationals);
        assert_eq!(analyze_bi(&z), Err(AnalysisError::ZeroPolynomial));
        assert_eq!(
            check_criterion(CriterionId::T1F, &z),
            Err(AnalysisError::ZeroPolynomial)
        );
    }

    #[test]
    fn reciprocal_direction_mirrors_forward_bounds() {
        let f = qbi("6 + 5x + x^2 + (5 + 2x)y + y^2");
        let rf = f.reciprocal_y().unwrap();
        let fwd = check_criterion(CriterionId::T1F, &f).unwrap();
        let rev = check_criterion(CriterionId::T1R, &rf).unwrap();
        assert_eq!(fwd.bound(), rev.bound());
        assert_eq!(fwd.bound(), Some(2));
    }

    #[test]
    fn verdict_and_report_serialize_with_stable_keys() {
        let r = report("1 + x^4 + x^3 y + y^2");
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["certificate"], "C2F");
        assert_eq!(json["best_bound"], 1);
        assert_eq!(json["content"], "1");
        assert_eq!(json["stripped_y_power"], 0);
        assert_eq!(json["field"], "Q");
        let v0 = &json["verdicts"][0];
        assert_eq!(v0["id"], "T1F");
        assert_eq!(v0["status"], "Applicable");
        assert_eq!(v0["bound"], 1);
        assert_eq!(v0["witness"]["n"], 2);
        assert_eq!(v0["witness"]["nu0"], 1);
        assert!(v0["witness"].get("j").is_none());

        let r2 = report("1 + y + y^2");
        let json2 = serde_json::to_value(&r2).unwrap();
        assert_eq!(json2["best_bound"], serde_json::Value::Null);
        assert!(json2.get("certificate").is_none());
        let v = &json2["verdicts"][0];
        assert_eq!(v["status"], "Inapplicable");
        assert_eq!(v["failed_hypothesis"], "degree-inequality-not-satisfied");
        assert!(v.get("bound").is_none());
    }
}
