//! `tistar`: classify, verify and multiply translation-invariant star products.
//!
//! Exit codes: 0 pass, 2 input error, 3 validation or equivalence failure,
//! 4 numeric range error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use tistar::catalog::{preset, PRESETS};
use tistar::cocycle::{
    check_harmonic, classify, coordinate_commutator, dim_h2_alpha, dim_h2_alpha_star, validate,
    VALIDATION_SAMPLES,
};
use tistar::equivalence::check_quantum_equivalence;
use tistar::json::{matrix_to_json, CocycleDoc, ComplexJson, FieldDoc, GaugeDoc};
use tistar::sampling::Sampler;
use tistar::{star, Cocycle, Error, ModeField, Report};

#[derive(Parser)]
#[command(
    name = "tistar",
    version,
    about = "Translation-invariant star products and their cohomology"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the θ class, coordinate commutator and H² dimensions of a cocycle.
    Classify {
        cocycle: PathBuf,
        /// Tolerance for the pure-imaginary test.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Run the cocycle, unitality and harmonic checks on sampled momenta.
    Verify {
        cocycle: PathBuf,
        #[arg(long, default_value_t = VALIDATION_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Star product of two mode fields.
    Star {
        cocycle: PathBuf,
        f: PathBuf,
        g: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check ∫ f₁ ⋆₁ ⋯ ⋆₁ fₙ = ∫ f′₁ ⋆₂ ⋯ ⋆₂ f′ₙ with f′ = e^β f for every prefix.
    Equivalence {
        cocycle1: PathBuf,
        cocycle2: PathBuf,
        beta: PathBuf,
        #[arg(required = true, num_args = 1..=4)]
        fields: Vec<PathBuf>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Emit a catalog cocycle.
    Preset {
        #[arg(value_parser = PRESETS)]
        name: String,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the cocycle's β, the gauge relating it to its Moyal
        /// representative.
        #[arg(long)]
        gauge_out: Option<PathBuf>,
    },
}

/// A failed run: the exit code and what to print.
enum Failure {
    Error(Error),
    /// A report to print on stdout before exiting with 3.
    Report(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type CliResult = std::result::Result<String, Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Validation(_) => 3,
        Error::Range(_) => 4,
        _ => 2,
    }
}

fn read(path: &Path) -> tistar::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> tistar::Result<()> {
    fs::write(path, text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn load_doc(path: &Path) -> tistar::Result<CocycleDoc> {
    CocycleDoc::parse(&read(path)?)
}

fn load_field(path: &Path) -> tistar::Result<ModeField> {
    FieldDoc::parse(&read(path)?)?.to_field()
}

/// Structural failures also get the sampled residuals of the raw formula.
fn invalid_cocycle_report(
    doc: &CocycleDoc,
    structural: Report,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Report {
    let mut parts = vec![structural];
    if let Ok(bb) = doc.to_black_box() {
        parts.push(validate(&bb.into(), samples, seed, tol));
    }
    Report::merge("invalid_cocycle", parts)
}

fn load_cocycle(path: &Path) -> std::result::Result<Cocycle, Failure> {
    let doc = load_doc(path)?;
    match doc.to_cocycle() {
        Ok(c) => Ok(c.into()),
        Err(Error::Validation(r)) => {
            let report = invalid_cocycle_report(&doc, *r, VALIDATION_SAMPLES, 0, 1e-9);
            Err(Failure::Report(to_json(&report)))
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct Classification {
    m: usize,
    theta: Vec<Vec<ComplexJson>>,
    /// `iΘ`: the θ of `α = i qᵀθp`, real for complex products.
    theta_moyal: Vec<Vec<ComplexJson>>,
    pure_imaginary: bool,
    commutator: Vec<Vec<ComplexJson>>,
    #[serde(rename = "dim_H2_alpha")]
    dim_h2_alpha: usize,
    #[serde(rename = "dim_H2_alpha_star")]
    dim_h2_alpha_star: usize,
}

fn cmd_classify(path: &Path, tol: f64) -> CliResult {
    let a = load_cocycle(path)?;
    let class = classify(&a)?;
    let m = a.dimension();
    Ok(to_json(&Classification {
        m,
        theta: matrix_to_json(class.matrix()),
        theta_moyal: matrix_to_json(&class.moyal_matrix()),
        pure_imaginary: class.is_pure_imaginary(tol),
        commutator: matrix_to_json(&coordinate_commutator(&a)),
        dim_h2_alpha: dim_h2_alpha(m),
        dim_h2_alpha_star: dim_h2_alpha_star(m),
    }))
}

fn cmd_verify(path: &Path, samples: usize, tol: f64, seed: u64) -> CliResult {
    let doc = load_doc(path)?;
    let a: Cocycle = match doc.to_cocycle() {
        Ok(c) => c.into(),
        Err(Error::Validation(r)) => {
            let report = invalid_cocycle_report(&doc, *r, samples, seed, tol);
            return Err(Failure::Report(to_json(&report)));
        }
        Err(e) => return Err(e.into()),
    };
    let pairs = Sampler::new(a.dimension(), seed ^ 0x9e37).pairs(samples);
    let report = Report::merge(
        "verify",
        [
            validate(&a, samples, seed, tol),
            check_harmonic(&a, &pairs, tol)?,
        ],
    );
    let text = to_json(&report);
    if report.passed() {
        Ok(text)
    } else {
        Err(Failure::Report(text))
    }
}

fn cmd_star(cocycle: &Path, f: &Path, g: &Path, out: Option<&Path>) -> CliResult {
    let a = load_cocycle(cocycle)?;
    let (f, g) = (load_field(f)?, load_field(g)?);
    let text = FieldDoc::from_field(&star(&a, &f, &g)?).to_json_pretty();
    match out {
        Some(path) => {
            write(path, &(text + "\n"))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn cmd_equivalence(c1: &Path, c2: &Path, beta: &Path, fields: &[PathBuf], tol: f64) -> CliResult {
    let (a1, a2) = (load_cocycle(c1)?, load_cocycle(c2)?);
    let beta = GaugeDoc::parse(&read(beta)?)?.to_gauge()?;
    let fields = fields
        .iter()
        .map(|p| load_field(p))
        .collect::<tistar::Result<Vec<_>>>()?;
    let report = check_quantum_equivalence(&a1, &a2, &beta, &fields, tol)?;
    let text = to_json(&report);
    if report.passed {
        Ok(text)
    } else {
        Err(Failure::Report(text))
    }
}

fn cmd_preset(
    name: &str,
    m: usize,
    seed: u64,
    out: Option<&Path>,
    gauge_out: Option<&Path>,
) -> CliResult {
    if m == 0 {
        return Err(Error::Input("dimension must be at least 1".into()).into());
    }
    let c = preset(name, m, seed)?;
    if let Some(path) = gauge_out {
        let gauge = tistar::GaugeCochain::new(c.beta().clone())?;
        write(
            path,
            &(GaugeDoc::from_gauge(&gauge).to_json_pretty() + "\n"),
        )?;
    }
    let text = CocycleDoc::from_cocycle(&c).to_json_pretty();
    match out {
        Some(path) => {
            write(path, &(text + "\n"))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Classify { cocycle, tol } => cmd_classify(&cocycle, tol),
        Command::Verify {
            cocycle,
            samples,
            tol,
            seed,
        } => cmd_verify(&cocycle, samples, tol, seed),
        Command::Star { cocycle, f, g, out } => cmd_star(&cocycle, &f, &g, out.as_deref()),
        Command::Equivalence {
            cocycle1,
            cocycle2,
            beta,
            fields,
            tol,
        } => cmd_equivalence(&cocycle1, &cocycle2, &beta, &fields, tol),
        Command::Preset {
            name,
            m,
            seed,
            out,
            gauge_out,
        } => cmd_preset(&name, m, seed, out.as_deref(), gauge_out.as_deref()),
    }
}

/// Ignores a closed pipe so `tistar … | head` exits quietly.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            if !text.is_empty() {
                emit(&text);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Report(text)) => {
            emit(&text);
            ExitCode::from(3)
        }
        Err(Failure::Error(e)) => {
            eprintln!("tistar: {e}");
            if let Error::Validation(r) = &e {
                emit(&to_json(r));
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
