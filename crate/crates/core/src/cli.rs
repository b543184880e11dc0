//! Command-line front end.
//!
//! ```text
//! multiarr basis b2 1,1,1,1 [--fallback-oracle] [--no-recheck] [--format json|latex|text] [--out PATH]
//! multiarr basis custom 2,3,1 --forms "1,0;0,1;1,1"
//! multiarr oracle a2 2,2,3 [--profile D]
//! multiarr verify --max-sum 16 [--verbose]
//! multiarr emit --input record.json --format latex
//! multiarr theta 3,5,2,2
//! multiarr theta-prime 2,3
//! ```
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 no closed form covers the input.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::a2::{theta_prime, A2Multiplicity};
use crate::arrangement::{
    non_balanced_basis, saito_check, Derivation, ExponentPair, Multiarrangement, Multiplicity,
};
use crate::closedform::{
    check_cor_p, check_lemma_b, check_lemma_d, cor_q_basis, exponent_difference, main_basis,
    theta_is_member, theta_m, B2Multiplicity,
};
use crate::error::{Error, Result};
use crate::oracle;
use crate::poly::{LinearForm, Rational};
use crate::render::{
    derivation_to_json, latex_derivation, DerivationJson, OutputRecord, Provenance,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_COVERED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "multiarr",
    version,
    about = "Exact bases for rank-2 multiarrangements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// x, y, x-y, x+y
    B2,
    /// x, y, x+y
    A2,
    /// forms given by --forms
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Text,
}

#[derive(clap::Args, Debug)]
struct Target {
    /// arrangement preset
    #[arg(value_enum)]
    arrangement: Preset,
    /// comma-separated multiplicities, e.g. 1,1,1,1
    multiplicity: String,
    /// forms of a custom arrangement as "a1,b1;a2,b2;..."
    #[arg(long)]
    forms: Option<String>,
}

#[derive(clap::Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// write to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a homogeneous basis of D(A, m)
    Basis {
        #[command(flatten)]
        target: Target,
        /// use the oracle when no closed form applies
        #[arg(long)]
        fallback_oracle: bool,
        /// skip re-verifying the basis before printing
        #[arg(long)]
        no_recheck: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Compute exponents and a basis by linear algebra alone
    Oracle {
        #[command(flatten)]
        target: Target,
        /// also print graded dimensions for degrees 0..=D
        #[arg(long)]
        profile: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Check closed forms against each other and the oracle for all B2 multiplicities
    Verify {
        #[arg(long)]
        max_sum: u32,
        /// print one line per multiplicity
        #[arg(long)]
        verbose: bool,
    },
    /// Re-render a JSON basis record or derivation
    Emit {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Print θ_m for m = (m1, m2, m3, m3)
    Theta {
        multiplicity: String,
        #[command(flatten)]
        output: Output,
    },
    /// Print θ'_m for the A2 multiplicity (a, a, b), given as a,b
    ThetaPrime {
        multiplicity: String,
        #[command(flatten)]
        output: Output,
    },
}

pub fn parse_multiplicity(s: &str) -> Result<Multiplicity> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("multiplicity entry {t:?}")))
        })
        .collect::<Result<Vec<_>>>()
        .map(Multiplicity::new)
}

pub fn parse_forms(s: &str) -> Result<Multiarrangement> {
    let forms = s
        .split(';')
        .map(|pair| {
            let parts: Vec<&str> = pair.split(',').map(str::trim).collect();
            let [a, b] = parts[..] else {
                return Err(Error::Parse(format!("form {pair:?}")));
            };
            let num = |t: &str| {
                Rational::from_str(t).map_err(|_| Error::Parse(format!("coefficient {t:?}")))
            };
            LinearForm::new(num(a)?, num(b)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Multiarrangement::new(forms)
}

pub fn arrangement_for(preset: Preset, forms: Option<&str>) -> Result<Multiarrangement> {
    match (preset, forms) {
        (Preset::B2, None) => Ok(Multiarrangement::b2()),
        (Preset::A2, None) => Ok(Multiarrangement::a2()),
        (Preset::Custom, Some(f)) => parse_forms(f),
        (Preset::Custom, None) => Err(Error::Parse("custom arrangement needs --forms".into())),
        (_, Some(_)) => Err(Error::Parse("--forms only applies to `custom`".into())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub lower: Derivation,
    pub upper: Derivation,
    pub exponents: ExponentPair,
    pub provenance: Provenance,
}

impl Basis {
    fn new(lower: Derivation, upper: Derivation, provenance: Provenance) -> Self {
        let (lower, upper) = if lower.degree() <= upper.degree() {
            (lower, upper)
        } else {
            (upper, lower)
        };
        let exponents = ExponentPair::new(lower.degree(), upper.degree());
        Basis {
            lower,
            upper,
            exponents,
            provenance,
        }
    }
}

fn closed_form(case: impl Into<String>) -> Provenance {
    Provenance::ClosedForm { case: case.into() }
}

fn b2_closed_form(m: &Multiplicity) -> Result<Basis> {
    let bm = B2Multiplicity::from_slice(m.values())?;
    if bm.theta_admissible() {
        let (a, b, _) = main_basis(&bm)?;
        return Ok(Basis::new(a, b, closed_form("main")));
    }
    let q = cor_q_basis(&bm)?;
    Ok(Basis::new(
        q.first,
        q.second,
        closed_form(format!("table-{}", q.case)),
    ))
}

fn a2_closed_form(arr: &Multiarrangement, m: &Multiplicity) -> Result<Basis> {
    let v = m.values();
    let am = A2Multiplicity::new(v[0], v[2]);
    if v[0] != v[1] || !am.is_admissible() {
        return Err(Error::CaseNotCovered(format!("no A2 closed form for {m}")));
    }
    let lower = theta_prime(&am)?;
    let upper = oracle::complement_element(arr, m, &lower, m.total() as usize - lower.degree())?;
    Ok(Basis::new(lower, upper, closed_form("a2-lower")))
}

/// Non-balanced construction, then the closed forms for the preset, then
/// (if allowed) the oracle.
pub fn compute_basis(
    preset: Preset,
    arr: &Multiarrangement,
    m: &Multiplicity,
    fallback_oracle: bool,
) -> Result<Basis> {
    if arr.len() != m.len() {
        return Err(Error::LengthMismatch {
            expected: arr.len(),
            got: m.len(),
        });
    }
    if !m.is_balanced() {
        let (lower, upper, _) = non_balanced_basis(arr, m)?;
        return Ok(Basis::new(lower, upper, Provenance::NonBalanced));
    }
    let closed = match preset {
        Preset::B2 => b2_closed_form(m),
        Preset::A2 => a2_closed_form(arr, m),
        Preset::Custom => Err(Error::CaseNotCovered("custom arrangement".into())),
    };
    match closed {
        Err(Error::CaseNotCovered(_)) if fallback_oracle => {
            let (lower, upper) = oracle::oracle_basis(arr, m)?;
            Ok(Basis::new(lower, upper, Provenance::Oracle))
        }
        other => other,
    }
}

/// Both elements lie in `D(A, m)` and satisfy Saito's criterion.
pub fn recheck(arr: &Multiarrangement, m: &Multiplicity, basis: &Basis) -> Result<bool> {
    match saito_check(&basis.lower, &basis.upper, arr, m) {
        Err(Error::NotMember { .. }) => Ok(false),
        other => other,
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CaseNotCovered(_) => EXIT_NOT_COVERED,
        Error::Parse(_)
        | Error::LengthMismatch { .. }
        | Error::HypothesisViolation(_)
        | Error::ZeroLinearForm
        | Error::ProportionalForms { .. }
        | Error::DomainError(_) => EXIT_USAGE,
        _ => EXIT_VERIFY,
    }
}

/// Checks run on one B2 multiplicity, by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseReport {
    pub m: B2Multiplicity,
    pub checks: Vec<(&'static str, bool)>,
    pub uncovered: bool,
    pub error: Option<String>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.1)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub cases: Vec<CaseReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(CaseReport::passed)
    }

    /// `name -> (passed, failed)`
    pub fn counts(&self) -> BTreeMap<&'static str, (usize, usize)> {
        let mut out = BTreeMap::new();
        for c in &self.cases {
            for &(name, ok) in &c.checks {
                let e = out.entry(name).or_insert((0, 0));
                if ok {
                    e.0 += 1;
                } else {
                    e.1 += 1;
                }
            }
        }
        out
    }

    pub fn uncovered(&self) -> usize {
        self.cases.iter().filter(|c| c.uncovered).count()
    }

    pub fn summary(&self, verbose: bool) -> String {
        let mut s = String::new();
        if verbose {
            for c in &self.cases {
                let names: Vec<String> = c
                    .checks
                    .iter()
                    .map(|(n, ok)| format!("{n}={}", if *ok { "ok" } else { "FAIL" }))
                    .collect();
                s += &format!("{} {}\n", c.m, names.join(" "));
            }
        }
        s += &format!("multiplicities: {}\n", self.cases.len());
        for (name, (ok, bad)) in self.counts() {
            s += &format!("{name}: {ok} passed, {bad} failed\n");
        }
        s += &format!("no closed form: {}\n", self.uncovered());
        for c in self.cases.iter().filter(|c| !c.passed()) {
            let failed: Vec<&str> = c.checks.iter().filter(|x| !x.1).map(|x| x.0).collect();
            match &c.error {
                Some(e) => s += &format!("FAIL {}: {e}\n", c.m),
                None => s += &format!("FAIL {}: {}\n", c.m, failed.join(", ")),
            }
        }
        s += if self.passed() {
            "all checks passed\n"
        } else {
            "verification FAILED\n"
        };
        s
    }
}

pub fn b2_multiplicities(max_sum: u32) -> Vec<B2Multiplicity> {
    let mut out = Vec::new();
    for t in 0..=max_sum {
        for m1 in 0..=t {
            for m2 in 0..=t - m1 {
                for m3 in 0..=t - m1 - m2 {
                    out.push(B2Multiplicity::new(m1, m2, m3, t - m1 - m2 - m3));
                }
            }
        }
    }
    out.sort();
    out
}

fn verify_one(m: &B2Multiplicity) -> Result<CaseReport> {
    let arr = Multiarrangement::b2();
    let mult = m.to_multiplicity();
    let total = m.total() as usize;
    let mut checks = Vec::new();
    let mut uncovered = false;

    let e = oracle::exponents(&arr, &mult)?;
    checks.push(("oracle exponent sum", e.e1 + e.e2 == total));

    if !m.is_balanced() {
        let mk = *m.values().iter().max().expect("four entries") as usize;
        checks.push((
            "non-balanced exponents",
            e == ExponentPair::new(total - mk, mk),
        ));
    }
    match compute_basis(Preset::B2, &arr, &mult, false) {
        Ok(b) => {
            checks.push(("basis saito", recheck(&arr, &mult, &b)?));
            checks.push(("basis exponents", b.exponents == e));
        }
        Err(Error::CaseNotCovered(_)) => uncovered = true,
        Err(err) => return Err(err),
    }
    if let Ok(diff) = exponent_difference(m) {
        checks.push(("exponent difference", e.difference() == diff as usize));
    }
    if m.theta_admissible() && m.within_membership_bound() {
        checks.push(("theta membership", theta_is_member(m)?));
        if theta_m(m)?.degree() + 1 != total / 2 {
            checks.push(("theta degree", false));
        }
    }
    if m.theta_admissible() && m.is_balanced() {
        if m.m1 == 1 {
            checks.push(("recursion in m3", check_lemma_b(m)?));
        }
        checks.push(("recursion in m2", check_lemma_d(m)?));
        checks.push(("non-divisibility", check_cor_p(m)?));
    }
    Ok(CaseReport {
        m: *m,
        checks,
        uncovered,
        error: None,
    })
}

/// Runs every check on every B2 multiplicity with `|m| <= max_sum`. The
/// report is sorted by multiplicity whatever the evaluation order.
pub fn verify_sweep(max_sum: u32) -> VerifyReport {
    let cases = b2_multiplicities(max_sum)
        .par_iter()
        .map(|m| {
            verify_one(m).unwrap_or_else(|e| CaseReport {
                m: *m,
                checks: Vec::new(),
                uncovered: false,
                error: Some(e.to_string()),
            })
        })
        .collect();
    VerifyReport { cases }
}

fn render_record(rec: &OutputRecord, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => rec.to_json() + "\n",
        Format::Latex => rec.to_latex()?,
        Format::Text => rec.to_text()?,
    })
}

fn render_derivation(t: &Derivation, format: Format) -> String {
    match format {
        Format::Json => derivation_to_json(t) + "\n",
        Format::Latex => latex_derivation(t) + "\n",
        Format::Text => format!("{t}\n"),
    }
}

/// A basis record or a single derivation, as JSON.
pub fn emit(input: &str, format: Format) -> Result<String> {
    if let Ok(rec) = OutputRecord::from_json(input) {
        return render_record(&rec, format);
    }
    let t = serde_json::from_str::<DerivationJson>(input)
        .map_err(|e| Error::Parse(format!("input is neither a record nor a derivation: {e}")))?
        .to_derivation()?;
    Ok(render_derivation(&t, format))
}

fn deliver(text: &str, out_path: Option<&PathBuf>, out: &mut dyn Write) -> Result<()> {
    match out_path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::Internal(e.to_string())),
    }
}

fn run_command(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Basis {
            target,
            fallback_oracle,
            no_recheck,
            output,
        } => {
            let arr = arrangement_for(target.arrangement, target.forms.as_deref())?;
            let m = parse_multiplicity(&target.multiplicity)?;
            let basis = compute_basis(target.arrangement, &arr, &m, fallback_oracle)?;
            if !no_recheck && !recheck(&arr, &m, &basis)? {
                let _ = writeln!(err, "basis for {m} failed re-verification");
                return Ok(EXIT_VERIFY);
            }
            let rec = OutputRecord::new(
                &arr,
                &m,
                basis.exponents,
                [&basis.lower, &basis.upper],
                basis.provenance,
            );
            deliver(
                &render_record(&rec, output.format)?,
                output.out.as_ref(),
                out,
            )?;
            Ok(EXIT_OK)
        }
        Command::Oracle {
            target,
            profile,
            output,
        } => {
            let arr = arrangement_for(target.arrangement, target.forms.as_deref())?;
            let m = parse_multiplicity(&target.multiplicity)?;
            let (lower, upper) = oracle::oracle_basis(&arr, &m)?;
            let e = ExponentPair::new(lower.degree(), upper.degree());
            let rec = OutputRecord::new(&arr, &m, e, [&lower, &upper], Provenance::Oracle);
            let mut text = render_record(&rec, output.format)?;
            if let Some(d) = profile {
                let dims = oracle::graded_dimension_profile(&arr, &m, d)?;
                let dims: Vec<String> = dims.iter().map(usize::to_string).collect();
                let line = format!("graded dimensions 0..={d}: {}\n", dims.join(" "));
                if output.format == Format::Json {
                    let _ = err.write_all(line.as_bytes());
                } else {
                    text += &line;
                }
            }
            deliver(&text, output.out.as_ref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Verify { max_sum, verbose } => {
            let report = verify_sweep(max_sum);
            deliver(&report.summary(verbose), None, out)?;
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY
            })
        }
        Command::Emit { input, output } => {
            let text = fs::read_to_string(&input)
                .map_err(|e| Error::Parse(format!("{}: {e}", input.display())))?;
            deliver(&emit(&text, output.format)?, output.out.as_ref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Theta {
            multiplicity,
            output,
        } => {
            let m = B2Multiplicity::from_slice(parse_multiplicity(&multiplicity)?.values())?;
            let t = theta_m(&m)?;
            deliver(
                &render_derivation(&t, output.format),
                output.out.as_ref(),
                out,
            )?;
            Ok(EXIT_OK)
        }
        Command::ThetaPrime {
            multiplicity,
            output,
        } => {
            let m = parse_multiplicity(&multiplicity)?;
            let &[a, b] = m.values() else {
                return Err(Error::Parse(format!("expected a,b, got {m}")));
            };
            let t = theta_prime(&A2Multiplicity::new(a, b))?;
            deliver(
                &render_derivation(&t, output.format),
                output.out.as_ref(),
                out,
            )?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first) and runs the command; returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match run_command(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
