use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hopfology::comodule::{hom_dim, Comodule};
use hopfology::homology::{homology_table, HomologyReport};
use hopfology::homrep::{hom_homotopy, stable_hom_a, EquivariantModule, HomotopyReport};
use hopfology::hopf::{check_hopf_axioms, left_integral, quantum_determinant, AxiomCheck};
use hopfology::io::{named_datum, parse_comodule, parse_datum, parse_expr, parse_module};
use hopfology::ktheory::{k0_class, k0_presentation, reduce_rank1, K0Presentation};
use hopfology::random::trial_rng;
use hopfology::stable::ul_hom_dim;
use hopfology::suites::{run_suite, SuiteConfig, SuiteReport, SUITES};
use hopfology::{Error, HopfAlgebra, HopfDatum};

/// Hopfological homology, stable Homs and K0 for comodules over k[ℤʳ]#B.
#[derive(Parser)]
#[command(name = "hopfology", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a datum: bicharacter conditions, left integral, quantum
    /// determinant and the Hopf axioms.
    Validate {
        /// JSON file or one of dg, mixed, rank-two, ncomplex:N.
        #[arg(long)]
        datum: String,
    },
    /// dim H_n for n in a window.
    Homology {
        #[arg(long)]
        datum: String,
        /// JSON file or constructor expression.
        #[arg(long)]
        object: String,
        /// Window A..B with |n| ≤ 6.
        #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
        range: String,
    },
    /// Presentation of K0, or the class of an object.
    K0 {
        #[arg(long)]
        datum: String,
        #[arg(long)]
        object: Option<String>,
    },
    /// dim of the stable Hom space from source to target.
    Stablehom {
        #[arg(long)]
        datum: String,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Homotopy classes H_0(Hom_A(M,N)) and Homs in D_H(A) for equivariant
    /// modules given as JSON files.
    Homotopy {
        #[arg(long)]
        datum: String,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Run a randomized check suite.
    Check {
        /// One of hopf, complex, ncomplex, teoiso, les, k0-ring, stable,
        /// kunneth, homrep.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        /// Trials derive their streams from (seed, trial index).
        #[arg(long)]
        seed: u64,
        /// Fix the datum instead of cycling through dg, N = 3 and mixed.
        #[arg(long)]
        datum: Option<String>,
        #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
        range: String,
    },
}

/// Malformed input: exit code 2.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

struct Outcome {
    text: String,
    json: String,
    ok: bool,
}

impl Outcome {
    fn new<T: Serialize>(text: String, value: &T, ok: bool) -> Self {
        Outcome {
            text,
            json: serde_json::to_string_pretty(value).expect("reports serialize"),
            ok,
        }
    }
}

fn read_file(path: &str) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))
}

fn load_datum(spec: &str) -> Result<HopfDatum, InputError> {
    match named_datum(spec) {
        Some(d) => Ok(d),
        None => Ok(parse_datum(&read_file(spec)?)?),
    }
}

fn load_algebra(spec: &str) -> Result<HopfAlgebra, InputError> {
    Ok(HopfAlgebra::new(load_datum(spec)?)?)
}

/// A JSON file if the path exists, otherwise a constructor expression.
fn load_object(spec: &str, alg: &HopfAlgebra) -> Result<Comodule, InputError> {
    if Path::new(spec).is_file() {
        Ok(parse_comodule(&read_file(spec)?, alg)?)
    } else {
        Ok(parse_expr(spec, alg)?)
    }
}

fn load_module(spec: &str, alg: &HopfAlgebra) -> Result<EquivariantModule, InputError> {
    if Path::new(spec).is_file() {
        Ok(parse_module(&read_file(spec)?, alg)?)
    } else {
        Ok(EquivariantModule::over_ground(&parse_expr(spec, alg)?))
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), InputError> {
    let bad = || InputError(format!("range '{s}' is not of the form A..B"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

#[derive(Serialize)]
struct ValidateReport {
    valid: bool,
    violations: Vec<String>,
    dim_b: u64,
    integral_support: Option<String>,
    integral_normalization: Option<String>,
    quantum_determinant: Option<Vec<i64>>,
    axioms: Vec<AxiomCheck>,
}

fn validate(datum: &str) -> Result<Outcome, InputError> {
    let d = load_datum(datum)?;
    let report = d.validate();
    let mut out = ValidateReport {
        valid: report.valid,
        violations: report.violations,
        dim_b: report.dim_b,
        integral_support: None,
        integral_normalization: None,
        quantum_determinant: None,
        axioms: Vec::new(),
    };
    if out.valid {
        match HopfAlgebra::new(d) {
            Ok(alg) => {
                match left_integral(&alg) {
                    Ok(l) => {
                        out.integral_support = Some(l.support.to_string());
                        out.integral_normalization = Some(l.normalization.to_string());
                    }
                    Err(e) => out.violations.push(e.to_string()),
                }
                match quantum_determinant(&alg) {
                    Ok(q) => out.quantum_determinant = Some(q),
                    Err(e) => out.violations.push(e.to_string()),
                }
                out.axioms = check_hopf_axioms(&alg, 1, 50, &mut trial_rng(0, 0));
            }
            Err(e) => out.violations.push(e.to_string()),
        }
    }
    let ok = out.valid && out.violations.is_empty() && out.axioms.iter().all(|a| a.passed);
    let mut text = format!("datum: {}\n", if ok { "OK" } else { "INVALID" });
    for v in &out.violations {
        let _ = writeln!(text, "violation: {v}");
    }
    let _ = writeln!(text, "dim B: {}", out.dim_b);
    if let (Some(s), Some(c)) = (&out.integral_support, &out.integral_normalization) {
        let _ = writeln!(text, "left integral: Λ({s}) = {c}");
    }
    if let Some(q) = &out.quantum_determinant {
        let g: Vec<String> = q.iter().map(|x| x.to_string()).collect();
        let d = match g.len() {
            _ if q.iter().all(|x| *x == 0) => "1".to_string(),
            1 => format!("g^{}", g[0]),
            _ => format!("g^({})", g.join(",")),
        };
        let _ = writeln!(text, "quantum determinant: D = {d}");
    }
    for a in &out.axioms {
        let status = if a.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(text, "  {:<16} {status} ({} cases)", a.name, a.cases);
        if let Some(f) = &a.failure {
            let _ = writeln!(text, "    counterexample: {f}");
        }
    }
    Ok(Outcome::new(text, &out, ok))
}

fn homology(datum: &str, object: &str, range: &str) -> Result<Outcome, InputError> {
    let alg = load_algebra(datum)?;
    let m = load_object(object, &alg)?;
    let (lo, hi) = parse_range(range)?;
    let report: HomologyReport = homology_table(&m, lo, hi)?;
    let mut text = format!("{:>4}  dim H_n\n", "n");
    for (n, d) in &report.dims {
        let _ = writeln!(text, "{n:>4}  {d}");
    }
    Ok(Outcome::new(text, &report, true))
}

#[derive(Serialize)]
struct K0Report {
    #[serde(flatten)]
    presentation: K0Presentation,
    class: Option<String>,
    reduced: Option<String>,
    is_zero: Option<bool>,
}

fn k0(datum: &str, object: Option<&str>) -> Result<Outcome, InputError> {
    let d = load_datum(datum)?;
    let presentation = k0_presentation(&d);
    let mut out = K0Report {
        presentation,
        class: None,
        reduced: None,
        is_zero: None,
    };
    if let Some(obj) = object {
        let alg = HopfAlgebra::new(d.clone())?;
        let c = k0_class(&load_object(obj, &alg)?);
        out.class = Some(c.to_string());
        out.reduced = reduce_rank1(&d, &c.representative).ok().map(|r| r.to_string());
        out.is_zero = Some(c.is_zero());
    }
    let mut text = format!("{}\n", out.presentation);
    if let Some(c) = &out.class {
        let _ = writeln!(text, "class: {c}");
    }
    if let Some(r) = &out.reduced {
        let _ = writeln!(text, "reduced: {r}");
    }
    if let Some(z) = out.is_zero {
        let _ = writeln!(text, "zero in K0: {z}");
    }
    Ok(Outcome::new(text, &out, true))
}

#[derive(Serialize)]
struct StableHomReport {
    hom_dim: usize,
    stable_hom_dim: usize,
}

fn stablehom(datum: &str, source: &str, target: &str) -> Result<Outcome, InputError> {
    let alg = load_algebra(datum)?;
    let (m, n) = (load_object(source, &alg)?, load_object(target, &alg)?);
    let out = StableHomReport {
        hom_dim: hom_dim(&m, &n)?,
        stable_hom_dim: ul_hom_dim(&m, &n)?,
    };
    let text = format!("dim Hom: {}\ndim stable Hom: {}\n", out.hom_dim, out.stable_hom_dim);
    Ok(Outcome::new(text, &out, true))
}

#[derive(Serialize)]
struct HomotopyOut {
    #[serde(flatten)]
    homotopy: HomotopyReport,
    derived_hom_dim: usize,
}

fn homotopy(datum: &str, source: &str, target: &str) -> Result<Outcome, InputError> {
    let alg = load_algebra(datum)?;
    let (m, n) = (load_module(source, &alg)?, load_module(target, &alg)?);
    let (_, report) = hom_homotopy(&m, &n)?;
    let out = HomotopyOut {
        derived_hom_dim: stable_hom_a(&m, &n)?,
        homotopy: report,
    };
    let h = &out.homotopy;
    let text = format!(
        "dim Hom_A: {}\ndim Hom_A^H: {}\ndim Λ·Hom_A: {}\ndim H_0(Hom_A): {}\ndim Hom in D_H(A): {}\n",
        h.hom_a, h.hom_a_h, h.lambda_image, h.dim, out.derived_hom_dim
    );
    Ok(Outcome::new(text, &out, true))
}

fn check(suite: &str, trials: usize, seed: u64, datum: Option<&str>, range: &str) -> Result<Outcome, InputError> {
    if !SUITES.contains(&suite) {
        return Err(InputError(format!("unknown suite '{suite}'; expected one of {}", SUITES.join(", "))));
    }
    let config = SuiteConfig {
        window: parse_range(range)?,
        datum: datum.map(load_datum).transpose()?,
        ..SuiteConfig::new(trials, seed)
    };
    let report: SuiteReport = run_suite(suite, &config)?;
    let mut text = format!(
        "suite {}: {}/{} passed (seed {}) {}\n",
        report.suite,
        report.passed,
        report.trials,
        report.seed,
        if report.all_passed() { "PASS" } else { "FAIL" }
    );
    for f in &report.failures {
        let _ = writeln!(text, "  trial {}: {} [{}]", f.index, f.detail, f.datum);
    }
    let ok = report.all_passed();
    Ok(Outcome::new(text, &report, ok))
}

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    match &cli.command {
        Command::Validate { datum } => validate(datum),
        Command::Homology { datum, object, range } => homology(datum, object, range),
        Command::K0 { datum, object } => k0(datum, object.as_deref()),
        Command::Stablehom { datum, source, target } => stablehom(datum, source, target),
        Command::Homotopy { datum, source, target } => homotopy(datum, source, target),
        Command::Check {
            suite,
            trials,
            seed,
            datum,
            range,
        } => check(suite, *trials, *seed, datum.as_deref(), range),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", out.json),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
