//! Command dispatch. `run` is the whole program minus process I/O so that
//! tests can drive it directly.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qclifford::algebra::{
    enumerate_basis, involution, AlgebraContext, Convention, Element, InvolutionKind, QMode, Twist,
};
use qclifford::qgroup::{
    check_uqgk_relations, degree_bookkeeping, induced_involution_check, theta_image, Family, RelationCheck,
};
use qclifford::repr::{fock_order, rep_matrix, rep_matrix_dual, semisimple_certificate, RepLabel};
use qclifford::structure::{center_basis, commutator, gamma, takeuchi, TensorElement};
use qclifford::{Error, Result, Scalar};

use crate::expr::{evaluate, parse_list, eval};

#[derive(Parser, Debug)]
#[command(name = "qcl", version, about = "Exact computations in quantized Clifford algebras Cl_q(n,k)")]
pub struct Cli {
    /// Rank n.
    #[arg(long, global = true, default_value_t = 1)]
    pub n: usize,
    /// Twist k: a positive integer or a half-integer written p/2.
    #[arg(long, global = true, default_value = "1")]
    pub k: String,
    /// Generator presentation.
    #[arg(long, global = true, value_enum, default_value_t = Gens::Psi)]
    pub gens: Gens,
    /// `formal` or a nonzero rational value for q.
    #[arg(long, global = true, default_value = "formal")]
    pub q: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Gens {
    Psi,
    Phi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of an expression.
    Nf {
        #[arg(required = true, allow_hyphen_values = true, num_args = 1..)]
        expr: Vec<String>,
    },
    /// Whether two expressions (separated by `;`) commute.
    Commutes {
        #[arg(required = true, allow_hyphen_values = true, num_args = 1..)]
        expr: Vec<String>,
    },
    /// Whether an expression commutes with every generator.
    Central {
        #[arg(required = true, allow_hyphen_values = true, num_args = 1..)]
        expr: Vec<String>,
    },
    /// Solve for the center and compare with the z-monomials.
    CenterBasis,
    /// Size of the normal-form basis.
    Dim,
    /// Matrix of an expression in the spinor representation π_p.
    Rep {
        /// Comma-separated label p_1,…,p_n (reduced mod 2k).
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        /// Use the dual convention ℓ ↔ 1 − ℓ.
        #[arg(long)]
        dual: bool,
        #[arg(required = true, allow_hyphen_values = true, num_args = 1..)]
        expr: Vec<String>,
    },
    /// Certify that ⊕_p π_p is an isomorphism onto ⊕_p End.
    Semisimple,
    /// Γ of a pure tensor `x_1 ; … ; x_m` of rank-n expressions.
    Gamma {
        #[arg(long)]
        m: usize,
        #[arg(required = true, allow_hyphen_values = true, num_args = 1..)]
        expr: Vec<String>,
    },
    /// Components of the Takeuchi splitting.
    Takeuchi {
        #[arg(required = true, allow_hyphen_values = true, num_args = 1..)]
        expr: Vec<String>,
    },
    /// Quantum-group images: list them, or check relations / induced involutions.
    Qgroup {
        /// A, B or D.
        family: String,
        #[arg(long)]
        check: bool,
        #[arg(long)]
        involutions: bool,
    },
    /// Apply one of the (anti-)involutions.
    Involution {
        kind: String,
        #[arg(required = true, allow_hyphen_values = true, num_args = 1..)]
        expr: Vec<String>,
    },
}

/// Exit code, standard output and standard error of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Exit status for a failed verification (errors use 2).
pub const EXIT_FAILED_CHECK: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

pub fn parse_twist(text: &str) -> Result<Twist> {
    let bad = || Error::Config(format!("invalid twist `{text}` (expected an integer or p/2)"));
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim().parse::<u32>().map_err(|_| bad())?, b.trim().parse::<u32>().map_err(|_| bad())?),
        None => (text.trim().parse::<u32>().map_err(|_| bad())?, 1),
    };
    let twice = match den {
        1 => num.checked_mul(2).ok_or_else(bad)?,
        2 => num,
        _ => return Err(bad()),
    };
    if twice == 0 {
        return Err(Error::Config("the twist k must be positive".into()));
    }
    Ok(Twist::from_twice(twice))
}

pub fn parse_qmode(text: &str) -> Result<QMode> {
    if text == "formal" {
        return Ok(QMode::Formal);
    }
    let v = Scalar::parse(text, "q", 1)
        .map_err(|_| Error::Config(format!("invalid q `{text}` (expected `formal` or a rational)")))?;
    if !v.is_constant() || v.as_rational().is_none() {
        return Err(Error::Config(format!("q must be `formal` or a rational number (got `{text}`)")));
    }
    Ok(QMode::Numeric(v))
}

pub fn build_context(cli: &Cli) -> Result<AlgebraContext> {
    let conv = match cli.gens {
        Gens::Psi => Convention::Psi,
        Gens::Phi => Convention::Phi,
    };
    AlgebraContext::with_options(cli.n, parse_twist(&cli.k)?, conv, parse_qmode(&cli.q)?, None)
}

fn context_json(ctx: &AlgebraContext, q: &str) -> Value {
    let (num, den) = ctx.twist().as_fraction();
    json!({ "n": ctx.n(), "k_num": num, "k_den": den, "gens": ctx.convention().to_string(), "q": q })
}

fn element_json(x: &Element) -> Value {
    json!({ "text": x.to_text(), "terms": x.to_records() })
}

fn checks_json(checks: &[RelationCheck]) -> Value {
    serde_json::to_value(checks).expect("serialisable report")
}

/// Text and JSON renderings plus whether the result is a failed verification.
struct Output {
    text: String,
    json: Value,
    failed: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, failed: false }
    }
}

fn join(parts: &[String]) -> String {
    parts.join(" ")
}

fn rep_label(ctx: &AlgebraContext, text: &str) -> Result<RepLabel> {
    let parts: Vec<i64> = text
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Config(format!("invalid label `{text}` (expected comma-separated integers)")))?;
    RepLabel::new(ctx, &parts)
}

fn generators(ctx: &AlgebraContext) -> Result<Vec<(String, Element)>> {
    let mut out = Vec::new();
    for a in 1..=ctx.n() {
        out.push((format!("p{a}"), Element::raising(ctx, a)?));
        out.push((format!("d{a}"), Element::lowering(ctx, a)?));
        if ctx.twice_k() > 1 {
            out.push((format!("w{a}"), Element::omega_power(ctx, a, 1)?));
        }
    }
    Ok(out)
}

fn report_lines(out: &mut String, checks: &[RelationCheck]) {
    for c in checks {
        if c.pass {
            let _ = writeln!(out, "PASS {}: {}", c.relation_id, c.lhs_text);
        } else {
            let _ = writeln!(out, "FAIL {}: {} ; residual = {}", c.relation_id, c.lhs_text, c.residual_text);
        }
    }
}

fn execute(cli: &Cli, ctx: &AlgebraContext) -> Result<Output> {
    Ok(match &cli.command {
        Command::Nf { expr } => {
            let x = evaluate(ctx, &join(expr))?;
            Output::ok(x.to_text(), element_json(&x))
        }
        Command::Commutes { expr } => {
            let parts = parse_list(&join(expr))?;
            if parts.len() != 2 {
                return Err(Error::Config(format!("commutes expects two expressions separated by `;` (got {})", parts.len())));
            }
            let c = commutator(&eval(ctx, &parts[0])?, &eval(ctx, &parts[1])?)?;
            Output::ok(c.is_zero().to_string(), json!({ "commutes": c.is_zero(), "commutator": element_json(&c) }))
        }
        Command::Central { expr } => {
            let x = evaluate(ctx, &join(expr))?;
            let mut failing = Vec::new();
            for (name, g) in generators(ctx)? {
                if !commutator(&x, &g)?.is_zero() {
                    failing.push(name);
                }
            }
            let central = failing.is_empty();
            Output::ok(central.to_string(), json!({ "central": central, "noncommuting": failing }))
        }
        Command::CenterBasis => {
            let r = center_basis(ctx)?;
            let mut text = format!(
                "dimension: {}\nexpected: {}\nz-monomials central: {}\nspan equal: {}\nbasis:",
                r.dimension, r.expected, r.z_central, r.span_equal
            );
            for b in &r.basis {
                let _ = write!(text, "\n  {}", b.to_text());
            }
            let mut json = serde_json::to_value(&r).expect("serialisable report");
            json["basis"] = Value::Array(r.basis.iter().map(|b| Value::String(b.to_text())).collect());
            json["pass"] = Value::Bool(r.passed());
            Output { text, json, failed: !r.passed() }
        }
        Command::Dim => {
            let d = enumerate_basis(ctx).len();
            Output::ok(d.to_string(), json!({ "dimension": d }))
        }
        Command::Rep { p, dual, expr } => {
            let label = rep_label(ctx, p)?;
            let x = evaluate(ctx, &join(expr))?;
            let m = if *dual { rep_matrix_dual(&label, &x)? } else { rep_matrix(&label, &x)? };
            let rows = m.to_text_rows(|s| ctx.scalar_text(s));
            let order = fock_order(ctx.n());
            let mut text = format!("order: {}", order.join(" "));
            for r in &rows {
                let _ = write!(text, "\n[{}]", r.join(", "));
            }
            Output::ok(
                text,
                json!({ "p": label.components(), "dual": dual, "order": order, "matrix": rows }),
            )
        }
        Command::Semisimple => {
            let r = semisimple_certificate(ctx)?;
            let bad: Vec<String> = r
                .labels
                .iter()
                .zip(&r.irreducible)
                .filter(|(_, ok)| !**ok)
                .map(|(l, _)| format!("{l:?}"))
                .collect();
            let text = format!(
                "labels: {}\nrank: {}\nexpected: {}\nirreducible: {}\nmodular rank: {}\n{}",
                r.labels.len(),
                r.rank,
                r.expected,
                if bad.is_empty() { "all".to_string() } else { format!("fails for {}", bad.join(" ")) },
                r.modular_rank.map_or("n/a".into(), |x| x.to_string()),
                if r.passed() { "PASS" } else { "FAIL" }
            );
            let mut json = serde_json::to_value(&r).expect("serialisable report");
            json["pass"] = Value::Bool(r.passed());
            Output { text, json, failed: !r.passed() }
        }
        Command::Gamma { m, expr } => {
            let parts = parse_list(&join(expr))?;
            if parts.len() != *m {
                return Err(Error::RankMismatch { expected: *m, found: parts.len() });
            }
            let factors = parts.iter().map(|e| eval(ctx, e)).collect::<Result<Vec<_>>>()?;
            let x = gamma(&TensorElement::pure(&factors)?)?;
            Output::ok(x.to_text(), element_json(&x))
        }
        Command::Takeuchi { expr } => {
            let x = evaluate(ctx, &join(expr))?;
            let comps = takeuchi(&x)?;
            let mut text = String::new();
            let mut arr = Vec::new();
            for c in &comps {
                let label: Vec<String> = c.exponents.iter().map(|e| e.to_string()).collect();
                let _ = writeln!(text, "({}): {}", label.join(","), c.value.to_text());
                arr.push(json!({ "exponents": c.exponents, "value": element_json(&c.value) }));
            }
            text.pop();
            Output::ok(text, json!({ "components": arr }))
        }
        Command::Qgroup { family, check, involutions } => {
            let family: Family = family.parse()?;
            let img = theta_image(ctx, family)?;
            let mut text = String::new();
            let mut json = json!({ "family": family.to_string(), "cartan": img.datum });
            let mut failed = false;
            if !check && !involutions {
                let mut images = Vec::new();
                for i in 0..img.datum.rank() {
                    let ii = i + 1;
                    let _ = writeln!(
                        text,
                        "E{ii} = {}\nF{ii} = {}\nK{ii} = {}\nK{ii}^-1 = {}",
                        img.e[i].to_text(),
                        img.f[i].to_text(),
                        img.k[i].to_text(),
                        img.kinv[i].to_text()
                    );
                    images.push(json!({
                        "E": img.e[i].to_text(), "F": img.f[i].to_text(),
                        "K": img.k[i].to_text(), "Kinv": img.kinv[i].to_text(),
                    }));
                }
                json["images"] = Value::Array(images);
            }
            if *check {
                let checks = check_uqgk_relations(&img)?;
                report_lines(&mut text, &checks);
                let degrees = degree_bookkeeping(&img);
                for d in &degrees {
                    let _ = writeln!(
                        text,
                        "{} degree {}: {:?}",
                        if d.pass { "PASS" } else { "FAIL" },
                        d.generator,
                        d.expected
                    );
                }
                let bad = checks.iter().filter(|c| !c.pass).count() + degrees.iter().filter(|d| !d.pass).count();
                let total = checks.len() + degrees.len();
                let _ = writeln!(text, "{} of {total} checks pass", total - bad);
                failed |= bad > 0;
                json["relations"] = checks_json(&checks);
                json["degrees"] = serde_json::to_value(&degrees).expect("serialisable report");
            }
            if *involutions {
                let checks = induced_involution_check(&img)?;
                report_lines(&mut text, &checks);
                let bad = checks.iter().filter(|c| !c.pass).count();
                let _ = writeln!(text, "{} of {} induced rules hold", checks.len() - bad, checks.len());
                failed |= bad > 0;
                json["involutions"] = checks_json(&checks);
            }
            text.pop();
            json["pass"] = Value::Bool(!failed);
            Output { text, json, failed }
        }
        Command::Involution { kind, expr } => {
            let kind = InvolutionKind::ALL
                .into_iter()
                .find(|k| k.name() == kind)
                .ok_or_else(|| Error::Config(format!("unknown involution `{kind}`")))?;
            let x = evaluate(ctx, &join(expr))?;
            let y = involution(kind, &x)?;
            Output::ok(y.to_text(), element_json(&y))
        }
    })
}

fn error_outcome(e: &Error, format: Format) -> Outcome {
    let stderr = match format {
        Format::Text => format!("error: {e}\n"),
        Format::Json => format!("{}\n", json!({ "error": e.to_string() })),
    };
    Outcome { code: EXIT_ERROR, stdout: String::new(), stderr }
}

/// Run one invocation (`args[0]` is the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { code, stdout: rendered, stderr: String::new() }
            };
        }
    };
    let ctx = match build_context(&cli) {
        Ok(c) => c,
        Err(e) => return error_outcome(&e, cli.format),
    };
    match execute(&cli, &ctx) {
        Ok(out) => {
            let stdout = match cli.format {
                Format::Text => format!("{}\n", out.text),
                Format::Json => {
                    let doc = json!({ "context": context_json(&ctx, &cli.q), "result": out.json });
                    format!("{}\n", serde_json::to_string_pretty(&doc).expect("serialisable output"))
                }
            };
            Outcome { code: if out.failed { EXIT_FAILED_CHECK } else { 0 }, stdout, stderr: String::new() }
        }
        Err(e) => error_outcome(&e, cli.format),
    }
}
