//! The `urg` command line: construction, normal forms and verification.

use crate::classical::{RepData, RepJson};
use crate::hseries::{parse_q, q, HSeries};
use crate::ncalg::{NCPoly, Sign};
use crate::qmatrix::{sl2_universal_r, RMatrix, RMatrixJson};
use crate::report::{all_pass, render_human, CheckReport};
use crate::suites::{self, Algebra, Session, Suite};
use crate::urgcore::{Presentation, QuotientKind, QuotientSystem, RewriteSystem};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "urg",
    version,
    about = "R-matrix presented quantized enveloping algebras over truncated hbar-adic series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Built-in module.
    #[arg(long, global = true, value_enum, default_value_t = AlgebraArg::Sln)]
    pub algebra: AlgebraArg,
    /// Rank parameter for `--algebra sln`.
    #[arg(long, global = true, default_value_t = 2)]
    pub n: usize,
    /// Truncation order N (default 4, or one below the order of an `--r` file).
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// Custom R-matrix JSON file.
    #[arg(long, global = true, conflicts_with = "rep")]
    pub r: Option<PathBuf>,
    /// sl_2 module JSON file; R is the universal R evaluated on it.
    #[arg(long, global = true)]
    pub rep: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = QuotientArg::None)]
    pub quotient: QuotientArg,
    /// Restrict to one sign sector.
    #[arg(long, global = true, value_parser = parse_sign, allow_hyphen_values = true)]
    pub borel: Option<Sign>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Plain-text rendering instead of JSON.
    #[arg(long, global = true)]
    pub human: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate the R-matrix.
    Qybe,
    /// Print the presentation.
    Present,
    /// Normal form of an expression such as "t+[1,2] t+[1,1]".
    Nf { expr: String },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraArg {
    Sln,
    #[value(name = "sl2-vec")]
    Sl2Vec,
    #[value(name = "sl2-adj")]
    Sl2Adj,
    #[value(name = "sl2-sum2")]
    Sl2Sum2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QuotientArg {
    None,
    Double,
    Uhg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Classical,
    Confluence,
    Hopf,
    Center,
    Automorphisms,
    Rep,
    Quotients,
    Cocomm,
    All,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    Sign::parse(s).ok_or_else(|| format!("expected + or -, got {s:?}"))
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("{0}: {1}")]
    Json(PathBuf, serde_json::Error),
    #[error("{0}")]
    Input(String),
    #[error("cannot parse expression at byte {0}: {1}")]
    Parse(usize, String),
}

struct Resolved {
    name: String,
    r: RMatrix,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.into(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Json(path.into(), e))
}

fn truncated(r: RMatrix, order: usize) -> Result<RMatrix, CliError> {
    if order > r.order() {
        return Err(CliError::Input(format!("R is known only to order {}, {order} requested", r.order())));
    }
    Ok(RMatrix { mat: r.mat.truncate(order), ..r })
}

impl Cli {
    fn builtin(&self) -> Result<Algebra, CliError> {
        Ok(match self.algebra {
            AlgebraArg::Sln if self.n >= 2 => Algebra::Sln(self.n),
            AlgebraArg::Sln => return Err(CliError::Input("--n must be at least 2".into())),
            AlgebraArg::Sl2Vec => Algebra::Sl2Vector,
            AlgebraArg::Sl2Adj => Algebra::Sl2Adjoint,
            AlgebraArg::Sl2Sum2 => Algebra::Sl2Sum2,
        })
    }

    /// Resolves the selector to an R-matrix: order N for `qybe`, N + 1 otherwise.
    fn resolve(&self, qybe: bool) -> Result<Resolved, CliError> {
        let input = |e: crate::qmatrix::RError| CliError::Input(e.to_string());
        if let Some(path) = &self.r {
            let r = RMatrix::from_json(&read_json::<RMatrixJson>(path)?).map_err(input)?;
            let top = r.order();
            let order = match (self.order, qybe) {
                (Some(n), true) => n,
                (Some(n), false) => n + 1,
                (None, _) => top,
            };
            if order == 0 && !qybe {
                return Err(CliError::Input("a presentation needs R to order at least 1".into()));
            }
            return Ok(Resolved { name: path.display().to_string(), r: truncated(r, order)? });
        }
        let n = self.order.unwrap_or(4);
        if n == 0 {
            return Err(CliError::Input("--order must be at least 1".into()));
        }
        let order = if qybe { n } else { n + 1 };
        if let Some(path) = &self.rep {
            let rep = RepData::from_json(&read_json::<RepJson>(path)?).map_err(|e| CliError::Input(e.to_string()))?;
            let r = sl2_universal_r(&rep, order).map_err(input)?;
            return Ok(Resolved { name: path.display().to_string(), r });
        }
        let a = self.builtin()?;
        Ok(Resolved { name: a.name(), r: a.rmatrix(order).map_err(input)? })
    }

    fn session(&self) -> Result<Session, CliError> {
        let res = self.resolve(false)?;
        let mut s = Session::new(res.name, res.r);
        s.borel = self.borel;
        Ok(s)
    }

    fn quotient(&self) -> Option<QuotientKind> {
        match self.quotient {
            QuotientArg::None => None,
            QuotientArg::Double => Some(QuotientKind::Double),
            QuotientArg::Uhg => Some(QuotientKind::Uhg),
        }
    }
}

/// Command output: a JSON document and whether every check passed.
struct Outcome {
    doc: Value,
    human: String,
    passed: bool,
}

fn report_outcome(suite: &str, instance: &str, checks: Vec<CheckReport>) -> Outcome {
    let passed = all_pass(&checks);
    let human = render_human(&checks);
    let doc = json!({
        "suite": suite,
        "instance": instance,
        "status": if passed { "pass" } else { "fail" },
        "checks": checks,
    });
    Outcome { doc, human, passed }
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn cmd_qybe(cli: &Cli) -> Result<Outcome, CliError> {
    let res = cli.resolve(true)?;
    let inst = format!("{} N={}", res.name, res.r.order());
    Ok(report_outcome("qybe", &inst, suites::qybe(&res.r, &inst)))
}

fn urg_err(e: crate::urgcore::UrgError) -> CliError {
    CliError::Input(e.to_string())
}

fn cmd_present(cli: &Cli) -> Result<Outcome, CliError> {
    let s = cli.session()?;
    let p = s.presentation().map_err(urg_err)?;
    let mut doc = to_value(p.to_json(None));
    let mut human = format!("{} generators, {} relations\n", p.generators.len(), p.relations.len());
    if let Some(kind) = cli.quotient() {
        let rw = RewriteSystem::build(&p).map_err(urg_err)?;
        let qs = QuotientSystem::build(&p, rw, kind).map_err(urg_err)?;
        let extra: Vec<Value> =
            qs.extra_relations().into_iter().map(|(w, rhs)| json!({"lhs_word": w, "rhs": rhs})).collect();
        human.push_str(&format!("{} extra relations, {} surviving generators\n", extra.len(), qs.generators.len()));
        doc["quotient"] = json!({
            "kind": format!("{kind:?}").to_lowercase(),
            "generators": qs.generators,
            "extra_relations": extra,
        });
    }
    for r in &p.relations {
        human.push_str(&format!("{}: {} = 0\n", r.label(), r.poly));
    }
    Ok(Outcome { doc, human, passed: true })
}

fn cmd_nf(cli: &Cli, expr: &str) -> Result<Outcome, CliError> {
    let s = cli.session()?;
    let p = s.presentation().map_err(urg_err)?;
    let x = parse_expr(&p, expr)?;
    let rw = RewriteSystem::build(&p).map_err(urg_err)?;
    let y = match cli.quotient() {
        None => rw.nf(&x),
        Some(kind) => QuotientSystem::build(&p, rw, kind).and_then(|qs| qs.nf(&x)),
    }
    .map_err(urg_err)?;
    let doc = json!({"input": expr, "nf": y, "text": y.to_string()});
    Ok(Outcome { doc, human: format!("{y}\n"), passed: true })
}

fn cmd_verify(cli: &Cli, suite: SuiteArg) -> Result<Outcome, CliError> {
    let s = cli.session()?;
    let chosen: Vec<Suite> = match suite {
        SuiteArg::All if s.borel.is_some() => Suite::ALL.into_iter().filter(|x| *x != Suite::Quotients).collect(),
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Quotients if s.borel.is_some() => {
            return Err(CliError::Input("the quotients suite needs both signs; drop --borel".into()))
        }
        other => vec![Suite::parse(&format!("{other:?}").to_lowercase()).expect("suite names agree")],
    };
    let mut checks = Vec::new();
    for x in &chosen {
        checks.extend(suites::run(*x, &s));
    }
    let name = if chosen.len() == 1 { chosen[0].name() } else { "all" };
    Ok(report_outcome(name, &s.instance(), checks))
}

/// Runs the parsed command and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let outcome = match &cli.command {
        Command::Qybe => cmd_qybe(cli),
        Command::Present => cmd_present(cli),
        Command::Nf { expr } => cmd_nf(cli, expr),
        Command::Verify { suite } => cmd_verify(cli, *suite),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let text = if cli.human {
        outcome.human
    } else {
        let mut t = serde_json::to_string_pretty(&outcome.doc).expect("serializable");
        t.push('\n');
        t
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => print!("{text}"),
    }
    if outcome.passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Parses `t±[i,j]`, `l±[i,j]`, `h`/`hbar`/`ħ`, `q`, rationals, products by
/// juxtaposition or `*`, non-negative powers, sums, differences and parentheses.
pub fn parse_expr(p: &Presentation, src: &str) -> Result<NCPoly, CliError> {
    let mut ps = ExprParser { p, src, pos: 0 };
    let x = ps.sum()?;
    ps.skip_ws();
    if ps.pos < src.len() {
        return Err(ps.error("unexpected trailing input"));
    }
    Ok(x)
}

struct ExprParser<'a> {
    p: &'a Presentation,
    src: &'a str,
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, msg: &str) -> CliError {
        CliError::Parse(self.pos, msg.into())
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn order(&self) -> usize {
        self.p.order
    }

    fn sum(&mut self) -> Result<NCPoly, CliError> {
        let mut acc = if self.eat('-') { self.product()?.neg() } else { self.product()? };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.product()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<NCPoly, CliError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(c) if c == '(' || c.is_ascii_digit() || c.is_alphabetic() => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<NCPoly, CliError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        let e: u32 = digits.parse().map_err(|_| self.error("expected a non-negative integer exponent"))?;
        self.pos += digits.len();
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<NCPoly, CliError> {
        let n = self.order();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let x = self.sum()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(x)
            }
            Some(c) if c.is_ascii_digit() => {
                let lit: String = self.rest().chars().take_while(|c| c.is_ascii_digit() || *c == '/').collect();
                let v = parse_q(&lit).map_err(|e| self.error(&e.to_string()))?;
                self.pos += lit.len();
                Ok(NCPoly::scalar(HSeries::constant(v, n), 1))
            }
            Some(c) if c.is_alphabetic() => {
                let ident: String = self.rest().chars().take_while(|c| c.is_alphabetic()).collect();
                self.pos += ident.len();
                match ident.as_str() {
                    "h" | "hbar" | "ħ" => Ok(NCPoly::scalar(HSeries::hbar(n), 1)),
                    "q" => Ok(NCPoly::scalar(q(n), 1)),
                    "t" | "l" => self.generator(ident == "l"),
                    _ => Err(self.error(&format!("unknown symbol {ident:?}"))),
                }
            }
            _ => Err(self.error("expected a term")),
        }
    }

    fn index(&mut self) -> Result<usize, CliError> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        let i: usize = digits.parse().map_err(|_| self.error("expected an index"))?;
        self.pos += digits.len();
        if i == 0 || i > self.p.d() {
            return Err(self.error(&format!("index {i} out of range 1..={}", self.p.d())));
        }
        Ok(i - 1)
    }

    fn generator(&mut self, ell: bool) -> Result<NCPoly, CliError> {
        let s = match self.rest().chars().next() {
            Some('+') => Sign::Plus,
            Some('-') => Sign::Minus,
            _ => return Err(self.error("expected + or - after generator name")),
        };
        self.pos += 1;
        if !self.eat('[') {
            return Err(self.error("expected '['"));
        }
        let i = self.index()?;
        if !self.eat(',') {
            return Err(self.error("expected ','"));
        }
        let j = self.index()?;
        if !self.eat(']') {
            return Err(self.error("expected ']'"));
        }
        if !self.p.signs.contains(&s) {
            return Err(self.error(&format!("sign {} is not in this presentation", s.symbol())));
        }
        Ok(if ell { self.p.ell(s, i, j, self.order()) } else { self.p.t(s, i, j, 1, 1) })
    }
}
