//! Textual polynomial language: parser and deterministic formatter.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! poly   := ['-'] term (('+' | '-') term)*
//! term   := factor (['*'] factor)*              juxtaposition multiplies
//! factor := coeff | var ['^' uint] | '(' poly ')' ['^' uint]
//! coeff  := uint ['/' uint]                     '/' only over the rationals
//! ```
//!
//! Unary minus is permitted only at the head of a (parenthesized)
//! expression.  Exponents are decimal integers at most 10^6.  Variable names
//! come from a caller-supplied list and are matched longest-first, so with
//! variables `x, y` the input `xy` is the product `x*y`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::field::{Field, FieldDescriptor, PrimeField, Rationals};
use crate::poly::{BiPoly, MultiPoly, UniPoly};

/// Byte range into the original input, for error reporting.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    fn new(start: usize, end: usize) -> Self {
        SourceSpan { start, end }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParseErrorKind {
    UnexpectedToken,
    UnknownVariable,
    NonPrimeModulusLiteral,
    ExponentOverflow,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
    pub message: String,
}

impl ParseError {
    fn new(kind: ParseErrorKind, span: SourceSpan, message: impl Into<String>) -> Self {
        ParseError { kind, span, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}..{}", self.message, self.span.start, self.span.end)
    }
}

impl std::error::Error for ParseError {}

/// Maximum exponent accepted by the grammar.
pub const MAX_EXPONENT: u32 = 1_000_000;

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Int(BigUint),
    /// 1-based index into the declared variable list.
    Var(u32),
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    span: SourceSpan,
}

fn lex(input: &str, var_names: &[&str]) -> Result<Vec<Spanned>, ParseError> {
    let mut toks = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let single = match b {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            toks.push(Spanned { tok, span: SourceSpan::new(i, i + 1) });
            i += 1;
            continue;
        }
        if b.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let value: BigUint = input[start..i].parse().expect("digit run");
            toks.push(Spanned { tok: Tok::Int(value), span: SourceSpan::new(start, i) });
            continue;
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            // longest declared variable name wins
            let rest = &input[i..];
            let best = var_names
                .iter()
                .enumerate()
                .filter(|(_, name)| rest.starts_with(*name))
                .max_by_key(|(_, name)| name.len());
            if let Some((idx, name)) = best {
                toks.push(Spanned {
                    tok: Tok::Var(idx as u32 + 1),
                    span: SourceSpan::new(i, i + name.len()),
                });
                i += name.len();
                continue;
            }
            let start = i;
            while i < bytes.len()
                && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
            {
                i += 1;
            }
            return Err(ParseError::new(
                ParseErrorKind::UnknownVariable,
                SourceSpan::new(start, i),
                format!(
                    "unknown variable `{}` (declared: {})",
                    &input[start..i],
                    var_names.join(", ")
                ),
            ));
        }
        let ch_len = input[i..].chars().next().map_or(1, |c| c.len_utf8());
        return Err(ParseError::new(
            ParseErrorKind::UnexpectedToken,
            SourceSpan::new(i, i + ch_len),
            format!("unrecognized character `{}`", &input[i..i + ch_len]),
        ));
    }
    Ok(toks)
}

struct Parser<F: Field> {
    toks: Vec<Spanned>,
    pos: usize,
    field: F,
    input_len: usize,
}

impl<F: Field> Parser<F> {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().map(|s| &s.tok) == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn end_span(&self) -> SourceSpan {
        SourceSpan::new(self.input_len, self.input_len)
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(s) => ParseError::new(
                ParseErrorKind::UnexpectedToken,
                s.span,
                format!("expected {expected}"),
            ),
            None => ParseError::new(
                ParseErrorKind::UnexpectedToken,
                self.end_span(),
                format!("expected {expected}, found end of input"),
            ),
        }
    }

    fn poly(&mut self) -> Result<MultiPoly<F>, ParseError> {
        let negate = self.eat(&Tok::Minus);
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat(&Tok::Plus) {
                let t = self.term()?;
                acc = acc.add(&t);
            } else if self.eat(&Tok::Minus) {
                let t = self.term()?;
                acc = acc.sub(&t);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek().map(|s| &s.tok),
            Some(Tok::Int(_)) | Some(Tok::Var(_)) | Some(Tok::LParen)
        )
    }

    fn term(&mut self) -> Result<MultiPoly<F>, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                let f = self.factor()?;
                acc = acc.mul(&f);
            } else if self.starts_factor() {
                let f = self.factor()?;
                acc = acc.mul(&f);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly<F>, ParseError> {
        let Some(s) = self.bump() else {
            return Err(ParseError::new(
                ParseErrorKind::UnexpectedToken,
                self.end_span(),
                "expected a coefficient, variable, or `(`, found end of input",
            ));
        };
        match s.tok {
            Tok::Int(num) => self.coeff_tail(num, s.span),
            Tok::Var(idx) => {
                let base = MultiPoly::variable(self.field.clone(), idx);
                let e = self.exponent_tail()?;
                Ok(base.pow(e))
            }
            Tok::LParen => {
                let inner = self.poly()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.unexpected("`)`"));
                }
                let e = self.exponent_tail()?;
                Ok(inner.pow(e))
            }
            _ => Err(ParseError::new(
                ParseErrorKind::UnexpectedToken,
                s.span,
                "expected a coefficient, variable, or `(`",
            )),
        }
    }

    /// Optional `/ uint` after an integer literal.
    fn coeff_tail(&mut self, num: BigUint, num_span: SourceSpan) -> Result<MultiPoly<F>, ParseError> {
        if !self.eat(&Tok::Slash) {
            let n = BigInt::from(num);
            let c = self.field.from_bigint(&n);
            return Ok(MultiPoly::constant(self.field.clone(), c));
        }
        let den_tok = self.bump();
        let (den, den_span) = match den_tok {
            Some(Spanned { tok: Tok::Int(d), span }) => (d, span),
            Some(s) => {
                return Err(ParseError::new(
                    ParseErrorKind::UnexpectedToken,
                    s.span,
                    "expected a denominator after `/`",
                ))
            }
            None => {
                return Err(ParseError::new(
                    ParseErrorKind::UnexpectedToken,
                    self.end_span(),
                    "expected a denominator after `/`, found end of input",
                ))
            }
        };
        let span = SourceSpan::new(num_span.start, den_span.end);
        if den.is_zero() {
            return Err(ParseError::new(
                ParseErrorKind::UnexpectedToken,
                span,
                "zero denominator in rational literal",
            ));
        }
        let num = BigInt::from(num);
        let den = BigInt::from(den);
        match self.field.rational_literal(&num, &den) {
            Some(c) => Ok(MultiPoly::constant(self.field.clone(), c)),
            None => Err(ParseError::new(
                ParseErrorKind::UnexpectedToken,
                span,
                format!(
                    "rational literals are not available over {}",
                    self.field.descriptor()
                ),
            )),
        }
    }

    /// Optional `^ uint` after a variable or `)`.
    fn exponent_tail(&mut self) -> Result<u32, ParseError> {
        if !self.eat(&Tok::Caret) {
            return Ok(1);
        }
        let tok = self.bump();
        match tok {
            Some(Spanned { tok: Tok::Int(e), span }) => {
                if e > BigUint::from(MAX_EXPONENT) {
                    return Err(ParseError::new(
                        ParseErrorKind::ExponentOverflow,
                        span,
                        format!("exponent exceeds {MAX_EXPONENT}"),
                    ));
                }
                let digits = e.to_u32_digits();
                Ok(digits.first().copied().unwrap_or(0))
            }
            Some(s) => Err(ParseError::new(
                ParseErrorKind::UnexpectedToken,
                s.span,
                "expected an exponent after `^`",
            )),
            None => Err(ParseError::new(
                ParseErrorKind::UnexpectedToken,
                self.end_span(),
                "expected an exponent after `^`, found end of input",
            )),
        }
    }
}

/// Parses `text` over `field` with the given variable list (1-based variable
/// indices follow list order).
pub fn parse_multi<F: Field>(
    text: &str,
    field: F,
    var_names: &[&str],
) -> Result<MultiPoly<F>, ParseError> {
    assert!(!var_names.is_empty(), "variable list must be nonempty");
    for (i, a) in var_names.iter().enumerate() {
        assert!(
            var_names[..i].iter().all(|b| b != a),
            "duplicate variable name `{a}`"
        );
    }
    let toks = lex(text, var_names)?;
    let mut p = Parser { toks, pos: 0, field, input_len: text.len() };
    let poly = p.poly()?;
    if let Some(s) = p.peek() {
        return Err(ParseError::new(
            ParseErrorKind::UnexpectedToken,
            s.span,
            "expected `+`, `-`, `*`, or end of input",
        ));
    }
    Ok(poly)
}

/// Parses a univariate polynomial in the single variable `var_name`.
pub fn parse_uni<F: Field>(
    text: &str,
    field: F,
    var_name: &str,
) -> Result<UniPoly<F>, ParseError> {
    let m = parse_multi(text, field, &[var_name])?;
    Ok(m.to_unipoly(1).expect("single declared variable"))
}

/// Parses a bivariate polynomial; `var_names.1` is the main variable.
pub fn parse_bi<F: Field>(
    text: &str,
    field: F,
    var_names: (&str, &str),
) -> Result<BiPoly<F>, ParseError> {
    let m = parse_multi(text, field, &[var_names.0, var_names.1])?;
    Ok(m.to_bipoly(1, 2).expect("two declared variables"))
}

/// A parsed polynomial over whichever field the descriptor selected.
#[derive(Clone, PartialEq, Debug)]
pub enum ParsedPoly {
    Rational(MultiPoly<Rationals>),
    Modular(MultiPoly<PrimeField>),
}

/// Descriptor-driven entry point used by the CLI and the corpus runner.
pub fn parse_poly(
    text: &str,
    field: FieldDescriptor,
    var_names: &[&str],
) -> Result<ParsedPoly, ParseError> {
    match field {
        FieldDescriptor::Rationals => {
            parse_multi(text, Rationals, var_names).map(ParsedPoly::Rational)
        }
        FieldDescriptor::PrimeField(p) => {
            let f = PrimeField::new(p).map_err(|e| {
                ParseError::new(
                    ParseErrorKind::NonPrimeModulusLiteral,
                    SourceSpan::new(0, 0),
                    e.to_string(),
                )
            })?;
            parse_multi(text, f, var_names).map(ParsedPoly::Modular)
        }
    }
}

/// Parses a field descriptor: `Q`, or `F<p>` with `p` prime (also lowercase).
pub fn parse_field_descriptor(text: &str) -> Result<FieldDescriptor, ParseError> {
    let full = SourceSpan::new(0, text.len());
    let t = text.trim();
    if t == "Q" || t == "q" {
        return Ok(FieldDescriptor::Rationals);
    }
    if let Some(digits) = t.strip_prefix('F').or_else(|| t.strip_prefix('f')) {
        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
            let p: u64 = digits.parse().map_err(|_| {
                ParseError::new(
                    ParseErrorKind::NonPrimeModulusLiteral,
                    full,
                    "modulus literal too large",
                )
            })?;
            PrimeField::new(p).map_err(|e| {
                ParseError::new(ParseErrorKind::NonPrimeModulusLiteral, full, e.to_string())
            })?;
            return Ok(FieldDescriptor::PrimeField(p));
        }
    }
    Err(ParseError::new(
        ParseErrorKind::UnexpectedToken,
        full,
        format!("expected `Q` or `F<prime>`, found `{text}`"),
    ))
}

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

/// Renders a signed term list as an expression; empty lists print as `0`.
fn join_terms(terms: &[(bool, String)]) -> String {
    let mut out = String::new();
    for (i, (neg, text)) in terms.iter().enumerate() {
        if i == 0 {
            if *neg {
                out.push('-');
            }
        } else {
            out.push_str(if *neg { " - " } else { " + " });
        }
        out.push_str(text);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Flattens a polynomial into signed term texts, ascending in the highest
/// variable and recursively in the coefficients.
fn multi_terms<F: Field>(f: &MultiPoly<F>, names: &[&str]) -> Vec<(bool, String)> {
    let field = f.field().clone();
    if let Some(c) = f.as_constant() {
        if field.is_zero(c) {
            return Vec::new();
        }
        let (neg, mag) = field.sign_magnitude(c);
        return vec![(neg, field.elem_to_string(&mag))];
    }
    let v = f.highest_var();
    assert!(
        (v as usize) <= names.len(),
        "polynomial uses x{} but only {} variable names were supplied",
        v,
        names.len()
    );
    let name = names[v as usize - 1];
    let mut out = Vec::new();
    for (i, c) in f.coefficients_in(v).into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let inner = multi_terms(&c, names);
        if i == 0 {
            out.extend(inner);
            continue;
        }
        let varpow = if i == 1 { name.to_string() } else { format!("{name}^{i}") };
        match inner.len() {
            0 => {}
            1 => {
                let (neg, text) = inner.into_iter().next().unwrap();
                let combined = if text == "1" { varpow } else { format!("{text}*{varpow}") };
                out.push((neg, combined));
            }
            _ => out.push((false, format!("({})*{}", join_terms(&inner), varpow))),
        }
    }
    out
}

/// Deterministic ascending-power rendering; `parse_multi` round-trips it.
pub fn format_multi<F: Field>(f: &MultiPoly<F>, names: &[&str]) -> String {
    join_terms(&multi_terms(f, names))
}

pub fn format_bi<F: Field>(f: &BiPoly<F>, names: (&str, &str)) -> String {
    format_multi(&MultiPoly::from_bipoly(f, 1, 2), &[names.0, names.1])
}

pub fn format_uni<F: Field>(f: &UniPoly<F>, name: &str) -> String {
    format_multi(&MultiPoly::from_unipoly(f, 1), &[name])
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_uni(self, "x"))
    }
}

impl<F: Field> fmt::Display for BiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_bi(self, ("x", "y")))
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    /// Default names: `x, y` for arity at most 2, otherwise `x1..xs`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.highest_var().max(1);
        if v <= 2 {
            f.write_str(&format_multi(self, &["x", "y"]))
        } else {
            let owned: Vec<String> = (1..=v).map(|i| format!("x{i}")).collect();
            let names: Vec<&str> = owned.iter().map(|s| s.as_str()).collect();
            f.write_str(&format_multi(self, &names))
        }
    }
}
