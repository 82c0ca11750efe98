//! Command-line front end: parse a polynomial, run the requested analysis,
//! and print a text or JSON report.
//!
//! Exit codes: 0 for a completed run (including "no criterion applies"),
//! 1 for input or usage errors, 2 when a factorization cap or oracle budget
//! is exceeded.

mod corpus;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use polybound::criteria::{AnalysisReport, AnalyzeOptions, CriterionStatus, Witness};
use polybound::factor::{factor_uni, FactorError, Factorable};
use polybound::field::{Field, FieldDescriptor, PrimeField, Rationals};
use polybound::newton::{build_polygon, polygon_svg, root_location};
use polybound::oracle::{oracle_factor_fp, OracleBudget, OracleError};
use polybound::parse::{
    format_bi, format_uni, parse_bi, parse_field_descriptor, parse_poly, parse_uni, ParseError,
    ParsedPoly,
};
use polybound::poly::{BiPoly, UniPoly};
use polybound::analyze;

#[derive(Parser)]
#[command(
    name = "polybound",
    version,
    about = "Upper bounds on the number of irreducible factors of a polynomial",
    subcommand_required = true,
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every applicable criterion and report the best factor bound
    Analyze(AnalyzeArgs),
    /// Lower Newton polygon: vertices, edge slopes, and the root-location split
    Newton(NewtonArgs),
    /// Factor a univariate polynomial into irreducibles
    Ufactor(UfactorArgs),
    /// Brute-force factor a bivariate polynomial over a small prime field
    Oracle(OracleArgs),
    /// Replay a corpus file of `polynomial ; expected-json-fragment` lines
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Polynomial in the shared grammar, e.g. "1 + x y + y^2"
    poly: String,
    /// Coefficient field: Q, or F<p> for a prime p
    #[arg(long, default_value = "Q")]
    field: String,
    /// Comma-separated variable names, main variable last
    #[arg(long, default_value = "x,y")]
    vars: String,
    /// Print the JSON report instead of text
    #[arg(long)]
    json: bool,
    /// Assert the content-free hypothesis instead of computing it (needed
    /// above three variables, where no coefficient-ring gcd is available)
    #[arg(long)]
    assume_primitive: bool,
}

#[derive(Args)]
struct NewtonArgs {
    /// Bivariate polynomial with a nonzero constant main-variable coefficient
    poly: String,
    /// Coefficient field: Q, or F<p> for a prime p
    #[arg(long, default_value = "Q")]
    field: String,
    /// Comma-separated variable names, main variable last
    #[arg(long, default_value = "x,y")]
    vars: String,
    /// Print the JSON report instead of text
    #[arg(long)]
    json: bool,
    /// Also render the polygon to this SVG file
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct UfactorArgs {
    /// Univariate polynomial, e.g. "(2 + x^2)^4"
    poly: String,
    /// Coefficient field: Q, or F<p> for a prime p
    #[arg(long, default_value = "Q")]
    field: String,
    /// Variable name
    #[arg(long, default_value = "x")]
    var: String,
    /// Print the JSON report instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(after_help = "The POLYBOUND_BUDGET environment variable (\"p,deg_y,deg_x\") raises \
the search caps; large values make the enumeration very slow.")]
struct OracleArgs {
    /// Bivariate polynomial over the prime field
    poly: String,
    /// Prime field F<p>; the oracle enumerates candidates, so Q is not accepted
    #[arg(long, default_value = "F2")]
    field: String,
    /// Comma-separated variable names, main variable last
    #[arg(long, default_value = "x,y")]
    vars: String,
    /// Print the JSON report instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(after_help = "Corpus lines read `polynomial ; expected-json-fragment`; '#' starts a \
comment, and `@field F5` or `@vars x1,x2,x3` switch the context for later lines.  The fragment \
must be a deep subset of the analyze report: objects by key, arrays by containment.")]
struct CorpusArgs {
    /// Corpus file path
    path: PathBuf,
    /// After the corpus, cross-check bounds against the oracle on seeded
    /// random inputs over F2 and F3
    #[arg(long)]
    seed: Option<u64>,
}

/// A failed run, split by exit code.
pub enum Failure {
    /// Exit 1: bad input or usage.
    Usage(String),
    /// Exit 2: a degree cap or search budget was exceeded.
    Budget(String),
}

fn main() -> ExitCode {
    // die quietly on a closed pipe (`polybound ... | head`) like other
    // line-oriented tools instead of panicking on the failed write
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests arrive here too; let clap pick the
            // stream and report usage problems with exit code 1
            let is_usage = e.use_stderr();
            let _ = e.print();
            return if is_usage { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Newton(a) => cmd_newton(a),
        Command::Ufactor(a) => cmd_ufactor(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Corpus(a) => corpus::run(&a.path, a.seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

pub fn parse_field(text: &str) -> Result<FieldDescriptor, Failure> {
    parse_field_descriptor(text)
        .map_err(|e| Failure::Usage(format!("invalid --field {text:?}: {}", e.message)))
}

pub fn split_vars(text: &str) -> Result<Vec<String>, Failure> {
    let names: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    if names.iter().any(String::is_empty) {
        return Err(Failure::Usage(format!("empty variable name in --vars {text:?}")));
    }
    for (i, a) in names.iter().enumerate() {
        if names[..i].contains(a) {
            return Err(Failure::Usage(format!("duplicate variable {a:?} in --vars {text:?}")));
        }
    }
    Ok(names)
}

/// Renders a parse error with a caret under the offending span.
pub fn parse_failure(input: &str, e: ParseError) -> Failure {
    let start = e.span.start.min(input.len());
    let end = e.span.end.clamp(start + 1, input.len().max(start + 1));
    let mut msg = e.message.clone();
    let _ = write!(msg, "\n  {input}\n  {}{}", " ".repeat(start), "^".repeat(end - start));
    Failure::Usage(msg)
}

/// Budget for the oracle subcommand and corpus sweeps, honoring the
/// POLYBOUND_BUDGET override.
pub fn effective_budget() -> Result<OracleBudget, Failure> {
    match std::env::var("POLYBOUND_BUDGET") {
        Ok(text) => OracleBudget::parse(&text).ok_or_else(|| {
            Failure::Usage(format!(
                "POLYBOUND_BUDGET must be \"p,deg_y,deg_x\" (e.g. \"7,6,4\"), got {text:?}"
            ))
        }),
        Err(_) => Ok(OracleBudget::default()),
    }
}

pub fn analyze_parsed(
    poly: &str,
    field: FieldDescriptor,
    names: &[&str],
    opts: &AnalyzeOptions,
) -> Result<AnalysisReport, Failure> {
    let parsed = parse_poly(poly, field, names).map_err(|e| parse_failure(poly, e))?;
    match &parsed {
        ParsedPoly::Rational(m) => analyze(m, names, opts),
        ParsedPoly::Modular(m) => analyze(m, names, opts),
    }
    .map_err(|e| Failure::Usage(e.to_string()))
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<(), Failure> {
    let field = parse_field(&a.field)?;
    let names = split_vars(&a.vars)?;
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let opts = AnalyzeOptions { assume_primitive: a.assume_primitive };
    let report = analyze_parsed(&a.poly, field, &refs, &opts)?;
    if a.json {
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else {
        print!("{}", analysis_text(&report));
    }
    Ok(())
}

fn witness_summary(w: &Witness) -> String {
    let mut parts = vec![format!("n={}", w.n)];
    if let Some(j) = w.j {
        parts.push(format!("j={j}"));
    }
    if let Some(v) = w.nu0 {
        parts.push(format!("nu0={v}"));
    }
    if let Some(v) = w.nun {
        parts.push(format!("nun={v}"));
    }
    if let Some(d) = w.deg_q {
        parts.push(format!("deg q={d}"));
    }
    parts.join(", ")
}

fn analysis_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "input: {}", r.input);
    let _ = writeln!(out, "field: {}", r.field);
    if r.stripped_y_power > 0 {
        let _ = writeln!(out, "stripped main-variable power: {}", r.stripped_y_power);
    }
    if let Some(c) = &r.content {
        let _ = writeln!(out, "content: {c}");
    }
    for v in &r.verdicts {
        match &v.status {
            CriterionStatus::Applicable { bound, witness } => {
                let _ = writeln!(
                    out,
                    "{} ({}): bound {bound} [{}]",
                    v.id,
                    v.id.reference(),
                    witness_summary(witness)
                );
                for check in &witness.checks {
                    let _ = writeln!(out, "    {check}");
                }
            }
            CriterionStatus::Inapplicable { failed_hypothesis } => {
                let _ = writeln!(
                    out,
                    "{} ({}): inapplicable ({failed_hypothesis})",
                    v.id,
                    v.id.reference()
                );
            }
        }
    }
    match r.best_bound {
        Some(b) => {
            let _ = writeln!(out, "best bound: {b}");
        }
        None => {
            let _ = writeln!(out, "best bound: none (no criterion applies)");
        }
    }
    if let Some(c) = r.certificate {
        let _ = writeln!(out, "irreducible: certified by {} ({})", c, c.reference());
    }
    out
}

fn cmd_newton(a: NewtonArgs) -> Result<(), Failure> {
    let field = parse_field(&a.field)?;
    let names = split_vars(&a.vars)?;
    if names.len() != 2 {
        return Err(Failure::Usage("newton expects exactly two variables".into()));
    }
    let pair = (names[0].as_str(), names[1].as_str());
    match field {
        FieldDescriptor::Rationals => {
            let f = parse_bi(&a.poly, Rationals, pair).map_err(|e| parse_failure(&a.poly, e))?;
            newton_run(&f, &a, pair)
        }
        FieldDescriptor::PrimeField(p) => {
            let fp = PrimeField::new(p).map_err(|e| Failure::Usage(e.to_string()))?;
            let f = parse_bi(&a.poly, fp, pair).map_err(|e| parse_failure(&a.poly, e))?;
            newton_run(&f, &a, pair)
        }
    }
}

fn newton_run<F: Field>(f: &BiPoly<F>, a: &NewtonArgs, names: (&str, &str)) -> Result<(), Failure> {
    let input = format_bi(f, names);
    let (stripped, g) = f.strip_y_power().map_err(|e| Failure::Usage(e.to_string()))?;
    let np = build_polygon(&g).map_err(|e| Failure::Usage(e.to_string()))?;
    let loc = root_location(&g).map_err(|e| Failure::Usage(e.to_string()))?;
    if let Some(path) = &a.svg {
        fs::write(path, polygon_svg(&np))
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if a.json {
        let v = serde_json::json!({
            "input": input,
            "field": f.field().descriptor().to_string(),
            "stripped_y_power": stripped,
            "vertices": np.vertices(),
            "edges": np.edges().iter().map(|e| serde_json::json!({
                "slope": e.slope.to_string(),
                "width": e.width,
            })).collect::<Vec<_>>(),
            "root_location": {
                "inside": loc.inside,
                "boundary": loc.boundary,
                "outside": loc.outside,
            },
        });
        println!("{v}");
    } else {
        println!("input: {input}");
        println!("field: {}", f.field().descriptor());
        if stripped > 0 {
            println!("stripped main-variable power: {stripped}");
        }
        let verts: Vec<String> =
            np.vertices().iter().map(|&(i, v)| format!("({i}, {v})")).collect();
        println!("vertices: {}", verts.join(" "));
        let edges: Vec<String> =
            np.edges().iter().map(|e| format!("slope {} width {}", e.slope, e.width)).collect();
        println!("edges: {}", edges.join("; "));
        println!(
            "roots (Theorem 10): {} inside, {} on, {} outside the unit circle",
            loc.inside, loc.boundary, loc.outside
        );
        if let Some(path) = &a.svg {
            println!("svg: {}", path.display());
        }
    }
    Ok(())
}

fn cmd_ufactor(a: UfactorArgs) -> Result<(), Failure> {
    let field = parse_field(&a.field)?;
    match field {
        FieldDescriptor::Rationals => {
            let f =
                parse_uni(&a.poly, Rationals, &a.var).map_err(|e| parse_failure(&a.poly, e))?;
            ufactor_run(&f, &a.var, a.json)
        }
        FieldDescriptor::PrimeField(p) => {
            let fp = PrimeField::new(p).map_err(|e| Failure::Usage(e.to_string()))?;
            let f = parse_uni(&a.poly, fp, &a.var).map_err(|e| parse_failure(&a.poly, e))?;
            ufactor_run(&f, &a.var, a.json)
        }
    }
}

fn factor_failure(e: FactorError) -> Failure {
    match e {
        FactorError::DegreeCapExceeded { .. }
        | FactorError::ModulusCapExceeded { .. }
        | FactorError::SearchBudgetExceeded(_) => Failure::Budget(e.to_string()),
        FactorError::ZeroPolynomial | FactorError::ConstantInput => Failure::Usage(e.to_string()),
    }
}

fn ufactor_run<F: Factorable>(f: &UniPoly<F>, var: &str, json: bool) -> Result<(), Failure> {
    let input = format_uni(f, var);
    let parts = factor_uni(f).map_err(factor_failure)?;
    let unit = format_uni(&UniPoly::constant(f.field().clone(), parts.unit().clone()), var);
    if json {
        let v = serde_json::json!({
            "input": input,
            "field": f.field().descriptor().to_string(),
            "unit": unit,
            "factors": parts.factors().iter().map(|(q, m)| serde_json::json!({
                "factor": format_uni(q, var),
                "multiplicity": m,
                "degree": q.degree().finite(),
            })).collect::<Vec<_>>(),
            "nu": parts.nu(),
        });
        println!("{v}");
    } else {
        println!("input: {input}");
        println!("field: {}", f.field().descriptor());
        println!("unit: {unit}");
        if parts.factors().is_empty() {
            println!("factors: none (constant input)");
        } else {
            let rendered: Vec<String> = parts
                .factors()
                .iter()
                .map(|(q, m)| {
                    let body = format_uni(q, var);
                    if *m == 1 { format!("({body})") } else { format!("({body})^{m}") }
                })
                .collect();
            println!("factors: {}", rendered.join(" * "));
        }
        println!("nu: {}", parts.nu());
        if let Some(d) = parts.smallest_degree() {
            println!("smallest irreducible degree: {d}");
        }
    }
    Ok(())
}

fn cmd_oracle(a: OracleArgs) -> Result<(), Failure> {
    let field = parse_field(&a.field)?;
    let FieldDescriptor::PrimeField(p) = field else {
        return Err(Failure::Usage(
            "the oracle enumerates candidate factors over a prime field; pass --field F<p>".into(),
        ));
    };
    let names = split_vars(&a.vars)?;
    if names.len() != 2 {
        return Err(Failure::Usage("oracle expects exactly two variables".into()));
    }
    let pair = (names[0].as_str(), names[1].as_str());
    let fp = PrimeField::new(p).map_err(|e| Failure::Usage(e.to_string()))?;
    let f = parse_bi(&a.poly, fp, pair).map_err(|e| parse_failure(&a.poly, e))?;
    let budget = effective_budget()?;
    let split = oracle_factor_fp(&f, &budget).map_err(|e| match e {
        OracleError::ZeroPolynomial => Failure::Usage(e.to_string()),
        OracleError::FieldTooLarge { .. } | OracleError::BudgetExceeded(_) => {
            Failure::Budget(e.to_string())
        }
    })?;
    let input = format_bi(&f, pair);
    if a.json {
        let v = serde_json::json!({
            "input": input,
            "field": f.field().descriptor().to_string(),
            "unit": split.unit().to_string(),
            "content": format_uni(split.content(), pair.0),
            "factors": split.factors().iter().map(|(g, m)| serde_json::json!({
                "factor": format_bi(g, pair),
                "multiplicity": m,
            })).collect::<Vec<_>>(),
            "count": split.count(),
        });
        println!("{v}");
    } else {
        println!("input: {input}");
        println!("field: {}", f.field().descriptor());
        println!("unit: {}", split.unit());
        println!("content: {}", format_uni(split.content(), pair.0));
        if split.factors().is_empty() {
            println!("factors: none of positive main degree");
        } else {
            let rendered: Vec<String> = split
                .factors()
                .iter()
                .map(|(g, m)| {
                    let body = format_bi(g, pair);
                    if *m == 1 { format!("({body})") } else { format!("({body})^{m}") }
                })
                .collect();
            println!("factors: {}", rendered.join(" * "));
        }
        println!("count: {}", split.count());
    }
    Ok(())
}
