//! Command-line front end.
//!
//! [`run`] parses arguments and returns what the process should print and
//! its exit code: 0 success, 1 verification failure, 2 usage or parse
//! error, 3 when an eigenvalue leaves the rationals.

mod report;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::affgebra::Affgebra;
use crate::error::Error;
use crate::exactnum::{Rational, Vector};
use crate::genderiv::solve_pairs;
use crate::isoclass::{
    apply_iso, canonicalize, families, invariants, orbit_search, random_move, random_params, random_rational, replay,
    CanonicalForm, IsoMove, SearchOutcome,
};
use crate::liecore::Catalog;

pub use report::{Counters, FamilyCount, RunOutcome, RunReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FIELD_EXTENSION: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "lieaff",
    version,
    about = "Exact Lie affgebra structures on r3, r3(λ) and r2+C"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct AlgebraArgs {
    /// r3, r3lambda or r2c
    #[arg(long)]
    algebra: String,
    /// λ as "p/q"; required for r3lambda
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve for all pairs (f, g) on a catalog algebra.
    Solve {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Reduce an affgebra to its normal form.
    Canonicalize {
        /// Affgebra JSON; standard input when absent or "-"
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the pair identity and the affgebra axioms.
    Verify {
        #[arg(long)]
        input: Option<PathBuf>,
        /// seed for the random base points of the tangent check
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the normal-form families as a markdown table.
    Table {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Move random normal forms by random isomorphisms and reduce them back.
    OrbitTest {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// add elapsed_ms to the report (which then differs between runs)
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare invariants and search for an isomorphism between two affgebras.
    IsoCheck {
        /// exactly two Affgebra JSON files
        #[arg(long, num_args = 1, required = true)]
        input: Vec<PathBuf>,
        /// comma-separated automorphism parameter values
        #[arg(long, default_value = "0,1,-1,2,1/2", allow_hyphen_values = true)]
        grid: String,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// What the process prints and returns.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Output {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::FieldExtensionRequired { .. } => EXIT_FIELD_EXTENSION,
        Error::Internal(_) => EXIT_VIOLATIONS,
        _ => EXIT_USAGE,
    }
}

fn from_error(e: Error) -> Output {
    Output::fail(exit_code(&e), format!("error: {e}"))
}

/// Parses `args` (without the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(std::iter::once(OsString::from("lieaff")).chain(args)) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output::fail(EXIT_USAGE, text)
            } else {
                Output {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let (result, output) = match cli.command {
        Command::Solve { algebra, output } => (cmd_solve(&algebra), output),
        Command::Canonicalize { input, output } => (cmd_canonicalize(input.as_ref()), output),
        Command::Verify { input, seed, output } => (cmd_verify(input.as_ref(), seed, echo), output),
        Command::Table { algebra, output } => (cmd_table(&algebra), output),
        Command::OrbitTest {
            algebra,
            seed,
            trials,
            timing,
            output,
        } => (cmd_orbit_test(&algebra, seed, trials, timing, echo), output),
        Command::IsoCheck {
            input,
            grid,
            budget,
            output,
        } => (cmd_iso_check(&input, &grid, budget), output),
    };
    let out = match result {
        Ok(out) => out,
        Err(e) => return from_error(e),
    };
    match output {
        Some(path) => match std::fs::write(&path, &out.stdout) {
            Ok(()) => Output {
                stdout: String::new(),
                ..out
            },
            Err(e) => Output::fail(EXIT_USAGE, format!("error: cannot write {}: {e}", path.display())),
        },
        None => out,
    }
}

fn parse_rational(text: &str) -> Result<Rational, Error> {
    text.trim().parse()
}

fn catalog_arg(args: &AlgebraArgs) -> Result<(Catalog, String), Error> {
    let lambda = args.lambda.as_deref().map(parse_rational).transpose()?;
    let mut warning = String::new();
    if args.algebra != "r3lambda" && lambda.is_some() {
        warning = format!("warning: --lambda is ignored for {}\n", args.algebra);
    }
    Ok((Catalog::from_tag(&args.algebra, lambda)?, warning))
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Error> {
    use std::io::Read;
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::Parse(format!("cannot read standard input: {e}")))?;
            Ok(text)
        }
    }
}

fn parse_affgebra(text: &str) -> Result<Affgebra, Error> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

fn ok(stdout: String, stderr: String) -> Output {
    Output {
        code: EXIT_OK,
        stdout,
        stderr,
    }
}

fn cmd_solve(args: &AlgebraArgs) -> Result<Output, Error> {
    let (catalog, warning) = catalog_arg(args)?;
    Ok(ok(to_json(&solve_pairs(&catalog.algebra())), warning))
}

#[derive(Serialize)]
struct CanonicalizeDoc<'a> {
    form: &'a CanonicalForm,
    chain: &'a [IsoMove],
}

fn cmd_canonicalize(input: Option<&PathBuf>) -> Result<Output, Error> {
    let x = parse_affgebra(&read_input(input)?)?;
    let (form, chain) = canonicalize(&x)?;
    Ok(ok(
        to_json(&CanonicalizeDoc {
            form: &form,
            chain: &chain,
        }),
        format!("{form}\n"),
    ))
}

/// Random points with small rational coordinates.
fn random_points(seed: u64, count: usize, dim: usize) -> Vec<Vector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..dim).map(|_| random_rational(&mut rng, 10)).collect())
        .collect()
}

fn cmd_verify(input: Option<&PathBuf>, seed: u64, echo: Vec<String>) -> Result<Output, Error> {
    let x = parse_affgebra(&read_input(input)?)?;
    let mut report = RunReport::new(echo, Some(seed));
    report.record(x.verify_pair().err().map(|v| format!("pair identity: {v}")));
    report.record(x.check_axioms().err().map(|v| v.to_string()));
    let mut points = vec![vec![Rational::zero(); x.dim()]];
    points.extend(random_points(seed, 10, x.dim()));
    for e in &points {
        let t = x.tangent_lie(e)?;
        let bad = (&t != x.algebra()).then(|| format!("tangent bracket at {e:?} differs from the underlying algebra"));
        report.record(bad);
    }
    report.finish();
    Ok(report_output(&report))
}

fn report_output(report: &RunReport) -> Output {
    Output {
        code: if report.violations.is_empty() {
            EXIT_OK
        } else {
            EXIT_VIOLATIONS
        },
        stdout: to_json(report),
        stderr: format!(
            "{}: {} samples, {} violations\n",
            report.outcome, report.counters.samples, report.counters.violations
        ),
    }
}

/// Markdown table of the families of `catalog`, generated from the registry.
pub fn family_table(catalog: &Catalog) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Normal forms on {catalog}\n");
    let _ = writeln!(
        out,
        "| family | normal form | residual parameters | conditions | normal-form domain |"
    );
    let _ = writeln!(out, "|---|---|---|---|---|");
    let join = |cs: &[crate::isoclass::Cond]| cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("; ");
    for spec in families(catalog) {
        let params: Vec<&str> = spec.params().iter().map(|s| s.symbol()).collect();
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} |",
            spec.tag,
            spec.signature(),
            params.join(", "),
            join(&spec.side),
            join(&spec.domain)
        );
    }
    if catalog.is_lambda_one() {
        let _ = writeln!(
            out,
            "\nAt λ = 1, H2(β1, 0, β1(1 - β1), 1, 0) and H3(β1, 0, β1(1 - β1), 0, 1) are isomorphic \
             (swap e2 and e3); the reduction reports H2."
        );
    }
    out
}

fn cmd_table(args: &AlgebraArgs) -> Result<Output, Error> {
    let (catalog, warning) = catalog_arg(args)?;
    Ok(ok(family_table(&catalog), warning))
}

/// One orbit-soundness trial: `None` when the family has no admissible
/// parameters, otherwise the violation if any.
fn orbit_trial(catalog: &Catalog, seed: u64, trial: u64) -> (usize, Option<Option<String>>) {
    let specs = families(catalog);
    let k = (trial % specs.len() as u64) as usize;
    let spec = &specs[k];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let Some(params) = random_params(spec, catalog, &mut rng, 500) else {
        return (k, None);
    };
    let check = || -> Result<Option<String>, Error> {
        let form = CanonicalForm::new(spec.tag, catalog.lambda().cloned(), params)?;
        let rep = form.representative()?;
        let m = random_move(catalog, &mut rng, 4);
        let x = apply_iso(&rep, &m)?;
        let (got, chain) = canonicalize(&x)?;
        if got != form {
            return Ok(Some(format!("trial {trial}: {form} came back as {got}")));
        }
        if replay(&x, &chain)? != rep {
            return Ok(Some(format!("trial {trial}: replaying the chain misses {form}")));
        }
        Ok(None)
    };
    let verdict = check().unwrap_or_else(|e| Some(format!("trial {trial}: {} raised {e}", spec.tag)));
    (k, Some(verdict))
}

/// Orbit-soundness run; trial `t` uses family `t mod #families` and its own
/// random stream, so the report depends only on the seed and trial count.
pub fn orbit_report(catalog: &Catalog, seed: u64, trials: u64, echo: Vec<String>) -> RunReport {
    let specs = families(catalog);
    let results: Vec<(usize, Option<Option<String>>)> = (0..trials)
        .into_par_iter()
        .map(|t| orbit_trial(catalog, seed, t))
        .collect();
    let mut report = RunReport::new(echo, Some(seed));
    report.families = specs.iter().map(|s| FamilyCount::new(s.tag.to_string())).collect();
    for (k, verdict) in results {
        let count = &mut report.families[k];
        match verdict {
            None => {
                count.skipped += 1;
                report.counters.skipped += 1;
            }
            Some(v) => {
                count.samples += 1;
                if v.is_none() {
                    count.passed += 1;
                }
                report.record(v);
            }
        }
    }
    report.finish();
    report
}

fn cmd_orbit_test(
    args: &AlgebraArgs,
    seed: u64,
    trials: u64,
    timing: bool,
    echo: Vec<String>,
) -> Result<Output, Error> {
    let (catalog, warning) = catalog_arg(args)?;
    if trials == 0 {
        return Err(Error::BadParameter("--trials must be at least 1".into()));
    }
    let start = Instant::now();
    let mut report = orbit_report(&catalog, seed, trials, echo);
    if timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    let mut out = report_output(&report);
    out.stderr.insert_str(0, &warning);
    Ok(out)
}

#[derive(Serialize)]
struct IsoCheckDoc {
    invariants: [std::collections::BTreeMap<String, Rational>; 2],
    invariants_equal: bool,
    search: Option<SearchOutcome>,
}

fn cmd_iso_check(inputs: &[PathBuf], grid: &str, budget: u64) -> Result<Output, Error> {
    if inputs.len() != 2 {
        return Err(Error::BadParameter("iso-check needs exactly two --input files".into()));
    }
    let grid: Vec<Rational> = grid.split(',').map(parse_rational).collect::<Result<_, _>>()?;
    let x1 = parse_affgebra(&read_input(Some(&inputs[0]))?)?;
    let x2 = parse_affgebra(&read_input(Some(&inputs[1]))?)?;
    let inv = [invariants(&x1)?, invariants(&x2)?];
    let equal = inv[0] == inv[1];
    let search = if equal {
        Some(orbit_search(&x1, &x2, &grid, budget)?)
    } else {
        None
    };
    let found = matches!(search, Some(SearchOutcome::Found { .. }));
    let verdict = match (&search, found) {
        (None, _) => "invariants differ: not isomorphic",
        (Some(_), true) => "isomorphic",
        (Some(_), false) => "no isomorphism on the grid",
    };
    Ok(Output {
        code: if found { EXIT_OK } else { EXIT_VIOLATIONS },
        stdout: to_json(&IsoCheckDoc {
            invariants: inv,
            invariants_equal: equal,
            search,
        }),
        stderr: format!("{verdict}\n"),
    })
}
