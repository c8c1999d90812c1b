//! Command implementations behind the `hyperwedge` binary.
//!
//! Every command returns its printable output together with an exit code, so
//! the binary stays a thin argument parser.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use hyperwedge::format::{covector_from_json, multivector_from_json, multivector_to_json, polynomial_record, PolynomialRecord};
use hyperwedge::hpf::{component_equations, hpf_eval, pull_back_through_star, trivial_reason, FormSpec};
use hyperwedge::multivector::{contract, hodge_star};
use hyperwedge::variety::{member, VarietySpec};
use hyperwedge::{IndexSet, QCovector, QMultivector, QPolynomial, WedgeError, Window};

pub mod demos;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NON_MEMBER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DIMENSION: i32 = 3;
pub const EXIT_INVALID: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Dimension(String),
    Invalid(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Dimension(_) => EXIT_DIMENSION,
            CliError::Invalid(_) | CliError::Io(_) => EXIT_INVALID,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Dimension(m) => write!(f, "dimension mismatch: {m}"),
            CliError::Invalid(m) => write!(f, "invalid request: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<WedgeError> for CliError {
    fn from(e: WedgeError) -> Self {
        let text = e.to_string();
        match e {
            WedgeError::Parse(_) | WedgeError::NotAscending(_) | WedgeError::ZeroIndex => CliError::Parse(text),
            WedgeError::IndexOutOfWindow { .. }
            | WedgeError::WindowMismatch { .. }
            | WedgeError::WindowNotContained { .. }
            | WedgeError::GradeMismatch { .. } => CliError::Dimension(text),
            _ => CliError::Invalid(text),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Printable output plus exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK }
    }
}

pub fn parse_multivector(text: &str) -> CliResult<QMultivector> {
    Ok(multivector_from_json(text)?)
}

pub fn parse_covector(text: &str) -> CliResult<QCovector> {
    Ok(covector_from_json(text)?)
}

/// Comma-separated signed indices, e.g. `-2,-1,1,2`; must be ascending.
pub fn parse_index_set(text: &str) -> CliResult<IndexSet> {
    let trimmed = text.trim().trim_start_matches('{').trim_end_matches('}');
    if trimmed.is_empty() {
        return Ok(IndexSet::empty());
    }
    let values = trimmed
        .split(',')
        .map(|s| s.trim().parse::<i32>().map_err(|e| CliError::Parse(format!("bad index {s:?}: {e}"))))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(IndexSet::new(&values)?)
}

/// Variety names on the command line: `gr`, `pf:L`, `hpf:M,L`, `dual:R,S`,
/// `two-sided:M,L,R,S` and `contraction:M,L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarietyArg(pub VarietySpec);

impl FromStr for VarietyArg {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let nums: Vec<usize> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|a| a.trim().parse::<usize>().map_err(|e| CliError::Parse(format!("bad parameter {a:?} in {s:?}: {e}"))))
                .collect::<CliResult<_>>()?
        };
        let spec = match (name, nums.as_slice()) {
            ("gr", []) => VarietySpec::Grassmannian,
            ("pf", &[l]) => VarietySpec::Pf { l },
            ("hpf", &[m, l]) => VarietySpec::Hpf { m, l },
            ("dual", &[r, s]) => VarietySpec::DualHpf { r, s },
            ("two-sided", &[m, l, r, s]) => VarietySpec::TwoSided { m, l, r, s },
            ("contraction", &[m, l]) => VarietySpec::Contraction { m, l },
            _ => return Err(CliError::Parse(format!("unknown variety {s:?}"))),
        };
        Ok(VarietyArg(spec))
    }
}

/// `hpf_{A|J}` at the point in `input`, printed as `p/q`.
pub fn cmd_eval(form: &FormSpec, input: &str) -> CliResult<Outcome> {
    let v = parse_multivector(input)?;
    Ok(Outcome::ok(hpf_eval(form, &v)?.to_string()))
}

/// The equations written by `ideal`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealBundle {
    pub window: Window,
    pub grade: usize,
    /// Set when a side imposes nothing.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trivial: Vec<String>,
    pub equations: Vec<PolynomialRecord>,
}

fn check_params(m: usize, l: usize) -> CliResult<()> {
    if m == 0 || l == 0 {
        return Err(CliError::Invalid("form parameters must be positive".into()));
    }
    if m % 2 == 1 {
        return Err(CliError::Invalid(format!("width m = {m} is odd; odd-width forms vanish identically")));
    }
    Ok(())
}

/// Equations of the `HPf^{(m,l)}` component of `∧^p V_{n,p}` and, with `dual`,
/// those of the `HPf^{(r,s)}` component on the star side pulled back to `x`.
pub fn ideal_bundle(form: Option<(usize, usize)>, dual: Option<(usize, usize)>, window: Window) -> CliResult<IdealBundle> {
    if form.is_none() && dual.is_none() {
        return Err(CliError::Invalid("nothing to emit: give --form and/or --dual".into()));
    }
    let grade = window.p;
    let mut bundle = IdealBundle { window, grade, trivial: Vec::new(), equations: Vec::new() };
    if let Some((m, l)) = form {
        check_params(m, l)?;
        if let Some(reason) = trivial_reason(m, l, window) {
            bundle.trivial.push(format!("HPf({m},{l}): {reason}"));
        }
        for (label, poly) in component_equations::<hyperwedge::Rational>(m, l, window)? {
            bundle.equations.push(polynomial_record(&poly, &label));
        }
    }
    if let Some((r, s)) = dual {
        check_params(r, s)?;
        let star_window = window.dual();
        if let Some(reason) = trivial_reason(r, s, star_window) {
            bundle.trivial.push(format!("HPf({r},{s}) on the star side: {reason}"));
        }
        for (label, poly) in component_equations::<hyperwedge::Rational>(r, s, star_window)? {
            let pulled: QPolynomial = pull_back_through_star(&poly, window, grade)?;
            bundle.equations.push(polynomial_record(&pulled, &format!("star*{label}")));
        }
    }
    Ok(bundle)
}

pub fn cmd_ideal(form: Option<(usize, usize)>, dual: Option<(usize, usize)>, window: Window) -> CliResult<Outcome> {
    let bundle = ideal_bundle(form, dual, window)?;
    Ok(Outcome::ok(serde_json::to_string_pretty(&bundle).expect("bundles always serialize")))
}

/// Membership report as JSON; exit code 1 for a non-member.
pub fn cmd_member(spec: VarietySpec, input: &str, trials: usize, seed: u64) -> CliResult<Outcome> {
    let v = parse_multivector(input)?;
    let report = member(spec, &v, trials, seed)?;
    let code = if report.member { EXIT_OK } else { EXIT_NON_MEMBER };
    Ok(Outcome { text: serde_json::to_string_pretty(&report).expect("reports always serialize"), code })
}

pub fn cmd_wedge(inputs: &[String]) -> CliResult<Outcome> {
    let vs = inputs.iter().map(|t| parse_multivector(t)).collect::<CliResult<Vec<_>>>()?;
    if vs.is_empty() {
        return Err(CliError::Invalid("wedge needs at least one input".into()));
    }
    Ok(Outcome::ok(multivector_to_json(&QMultivector::wedge_all(&vs)?)))
}

pub fn cmd_star(input: &str) -> CliResult<Outcome> {
    Ok(Outcome::ok(multivector_to_json(&hodge_star(&parse_multivector(input)?))))
}

pub fn cmd_contract(covector: &str, input: &str) -> CliResult<Outcome> {
    let f = parse_covector(covector)?;
    let v = parse_multivector(input)?;
    Ok(Outcome::ok(multivector_to_json(&contract(&f, &v)?)))
}

pub fn cmd_list_demos() -> Outcome {
    let lines: Vec<String> = demos::registry().iter().map(|d| format!("{:<14} {}", d.name, d.description)).collect();
    Outcome::ok(lines.join("\n"))
}

pub fn cmd_demo(name: &str) -> CliResult<Outcome> {
    let demo = demos::find(name).ok_or_else(|| CliError::Invalid(format!("unknown demo {name:?}; try list-demos")))?;
    let checks = (demo.run)()?;
    let mut lines = vec![format!("demo {}: {}", demo.name, demo.description)];
    for c in &checks {
        lines.push(format!("[{}] {}: expected {}, computed {}", if c.pass { "pass" } else { "FAIL" }, c.name, c.expected, c.computed));
    }
    let all = checks.iter().all(|c| c.pass);
    lines.push(if all { "all checks passed".into() } else { "some checks FAILED".into() });
    Ok(Outcome { text: lines.join("\n"), code: if all { EXIT_OK } else { EXIT_NON_MEMBER } })
}
