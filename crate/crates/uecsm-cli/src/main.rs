//! Command-line front end: decide matrices, emit and check certificates, and
//! run randomized campaigns.
//!
//! Exit codes: 0 equivalent / success, 1 not equivalent / verification
//! failure, 2 undecided, 64 usage, 65 malformed data, 66 unreadable input,
//! 70 internal error.

mod parse;
mod report;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use parse::{parse_matrix, Format};
use report::{exit_for, render_report, render_stats, render_verification, Report};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use uecsm::lab::{run_campaign, CampaignConfig, Ensemble};
use uecsm::{test_generic, CMatrix64, Certificate, Tolerances64};

const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_NOINPUT: u8 = 66;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(
    name = "uecsm",
    version,
    about = "Decide whether a complex square matrix is unitarily equivalent to a complex symmetric matrix",
    after_help = "Matrix input is text (`0 7 0; 0 1 -5; 0 0 6`, complex entries like `1+2i`) \
                  or JSON (`{\"n\": .., \"re\": [[..]], \"im\": [[..]]}`); see `--format`."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide a matrix and report status, branch, and margin
    Test(TestArgs),
    /// Decide a matrix and, when positive, emit the certificate (U, K, S)
    Certify(CertifyArgs),
    /// Re-check a stored certificate against a matrix
    Verify(VerifyArgs),
    /// Sample a matrix ensemble and tally the verdicts
    Search(SearchArgs),
    /// Print a built-in example matrix, or list them all
    Examples(ExamplesArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Matrix file, or '-' for standard input
    input: String,
    /// Input format; detected from the content when omitted
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct TolArgs {
    /// Reality threshold on |Im q|/(1 + |q|) for overlap ratios
    #[arg(long, value_name = "EPS")]
    tol_real: Option<f64>,
    /// Relative threshold under which an overlap entry counts as zero
    #[arg(long, value_name = "EPS")]
    tol_zero: Option<f64>,
    /// Relative gap under which two eigenvalues count as repeated
    #[arg(long, value_name = "EPS")]
    tol_eig_gap: Option<f64>,
    /// Parallelism defect under which two eigenvectors count as shared
    #[arg(long, value_name = "EPS")]
    tol_parallel: Option<f64>,
    /// Relative commutator norm under which a matrix counts as normal
    #[arg(long, value_name = "EPS")]
    tol_normal: Option<f64>,
}

impl TolArgs {
    fn build(&self) -> Tolerances64 {
        let mut t = Tolerances64::default();
        if let Some(x) = self.tol_real {
            t.real = x;
        }
        if let Some(x) = self.tol_zero {
            t.zero = x;
        }
        if let Some(x) = self.tol_eig_gap {
            t.eig_gap = x;
        }
        if let Some(x) = self.tol_parallel {
            t.parallel = x;
        }
        if let Some(x) = self.tol_normal {
            t.normal = x;
        }
        t
    }
}

#[derive(Args)]
struct TestArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    tol: TolArgs,
    /// Print the report as JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    tol: TolArgs,
    /// Print the report as JSON instead of text
    #[arg(long)]
    json: bool,
    /// Also write the bare certificate JSON to this path
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Matrix file, or '-' for standard input
    matrix: String,
    /// Certificate file: bare certificate JSON, or a report containing one
    certificate: PathBuf,
    /// Matrix input format; detected from the content when omitted
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Print the verification result as JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnsembleArg {
    /// Independent complex Gaussian entries
    Ginibre,
    /// Haar-like unitaries from exponentiated skew-Hermitian draws
    Unitary,
    /// Sampled unitaries with all but `--rank` columns zeroed
    PartialIsometry,
}

#[derive(Args)]
struct SearchArgs {
    /// Matrix dimension
    #[arg(long)]
    n: usize,
    /// Ensemble to draw from; defaults to partial-isometry when --rank is
    /// given and to ginibre otherwise
    #[arg(long, value_enum)]
    ensemble: Option<EnsembleArg>,
    /// Rank of the sampled partial isometries
    #[arg(long)]
    rank: Option<usize>,
    /// Number of independent trials
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Base seed; trial i draws from a generator seeded with seed XOR i
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    tol: TolArgs,
    /// Print the statistics as JSON only
    #[arg(long)]
    json: bool,
    /// Also write the statistics JSON to this path
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExamplesArgs {
    /// Example name; omit to list what is available
    name: Option<String>,
    /// Output format for the matrix
    #[arg(long, value_enum)]
    format: Option<Format>,
}

struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure {
        code,
        msg: msg.into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Test(a) => decide(a.input, a.tol, a.json, false, None),
        Cmd::Certify(a) => decide(a.input, a.tol, a.json, true, a.output),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Search(a) => cmd_search(a),
        Cmd::Examples(a) => cmd_examples(a),
    }
}

fn read_input(source: &str) -> Result<String, Failure> {
    if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| fail(EXIT_NOINPUT, format!("cannot read standard input: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(source)
            .map_err(|e| fail(EXIT_NOINPUT, format!("cannot read '{source}': {e}")))
    }
}

fn parse_input(source: &str, format: Option<Format>) -> Result<CMatrix64, Failure> {
    let text = read_input(source)?;
    parse_matrix(&text, format).map_err(|e| fail(EXIT_DATA, format!("{source}: {e}")))
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map_err(|e| fail(EXIT_INTERNAL, format!("cannot serialize: {e}")))
}

fn decide(
    input: InputArgs,
    tol: TolArgs,
    json: bool,
    with_certificate: bool,
    output: Option<PathBuf>,
) -> Result<u8, Failure> {
    let t = parse_input(&input.input, input.format)?;
    let tol = tol.build();
    let verdict = test_generic(&t, &tol);
    let code = exit_for(verdict.status);
    let report = Report::new(t, tol, verdict, with_certificate);

    if let Some(path) = output {
        match &report.certificate {
            Some(cert) => {
                let body = to_json(cert)?;
                std::fs::write(&path, body + "\n").map_err(|e| {
                    fail(EXIT_INTERNAL, format!("cannot write '{}': {e}", path.display()))
                })?;
            }
            None => eprintln!("note: nothing written to --output (no certificate; status {})", report.status),
        }
    }

    if json {
        println!("{}", to_json(&report)?);
    } else {
        print!("{}", render_report(&report));
    }
    Ok(code)
}

/// Accept a bare certificate document or a full report wrapping one.
fn parse_certificate(text: &str) -> Result<Certificate<f64>, Failure> {
    if let Ok(cert) = serde_json::from_str::<Certificate<f64>>(text) {
        return Ok(cert);
    }
    match serde_json::from_str::<Report>(text) {
        Ok(report) => report
            .certificate
            .ok_or_else(|| fail(EXIT_DATA, "the report holds no certificate")),
        Err(e) => Err(fail(EXIT_DATA, format!("cannot parse certificate: {e}"))),
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<u8, Failure> {
    let t = parse_input(&a.matrix, a.format)?;
    let cert_text = read_input(&a.certificate.display().to_string())?;
    let cert = parse_certificate(&cert_text)?;
    if cert.u.dim() != t.dim() {
        return Err(fail(
            EXIT_DATA,
            format!(
                "certificate is for a {c}×{c} matrix but the input is {n}×{n}",
                c = cert.u.dim(),
                n = t.dim()
            ),
        ));
    }
    let outcome = cert.verify(&t);
    if a.json {
        println!("{}", to_json(&outcome)?);
    } else {
        print!("{}", render_verification(&outcome));
    }
    Ok(if outcome.pass { 0 } else { 1 })
}

fn cmd_search(a: SearchArgs) -> Result<u8, Failure> {
    let ensemble = match (a.ensemble, a.rank) {
        (Some(EnsembleArg::PartialIsometry) | None, Some(rank)) => {
            Ensemble::PartialIsometry { rank }
        }
        (Some(EnsembleArg::PartialIsometry), None) => {
            return Err(fail(EXIT_USAGE, "--ensemble partial-isometry requires --rank"));
        }
        (Some(EnsembleArg::Ginibre), None) => Ensemble::Ginibre,
        (Some(EnsembleArg::Unitary), None) => Ensemble::Unitary,
        (Some(_), Some(_)) => {
            return Err(fail(EXIT_USAGE, "--rank only applies to the partial-isometry ensemble"));
        }
        (None, None) => Ensemble::Ginibre,
    };
    let cfg = CampaignConfig {
        n: a.n,
        ensemble,
        trials: a.trials,
        seed: a.seed,
        tol: a.tol.build(),
    };
    let stats = run_campaign(&cfg).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;

    let stats_json = to_json(&stats)?;
    if let Some(path) = &a.output {
        std::fs::write(path, stats_json.clone() + "\n").map_err(|e| {
            fail(EXIT_INTERNAL, format!("cannot write '{}': {e}", path.display()))
        })?;
    }
    if a.json {
        println!("{stats_json}");
    } else {
        let header = match ensemble {
            Ensemble::Ginibre => format!("n = {}, ensemble = ginibre", a.n),
            Ensemble::Unitary => format!("n = {}, ensemble = unitary", a.n),
            Ensemble::PartialIsometry { rank } => {
                format!("n = {}, ensemble = partial-isometry (rank {rank})", a.n)
            }
        };
        let header = format!("{header}, trials = {}, seed = {}", a.trials, a.seed);
        print!("{}", render_stats(&stats, &header));
    }
    Ok(0)
}

fn fixture(name: &str) -> Option<(CMatrix64, &'static str)> {
    let r = |x: f64| Complex::new(x, 0.0);
    let rows = |rows: Vec<Vec<Complex<f64>>>| CMatrix64::from_rows(rows).unwrap();
    let nilpotent = |a: f64| {
        rows(vec![
            vec![r(0.0), r(1.0), r(0.0)],
            vec![r(0.0), r(0.0), r(a)],
            vec![r(0.0), r(0.0), r(0.0)],
        ])
    };
    Some(match name {
        "t1" => (
            rows(vec![
                vec![r(0.0), r(7.0), r(0.0)],
                vec![r(0.0), r(1.0), r(-5.0)],
                vec![r(0.0), r(0.0), r(6.0)],
            ]),
            "3×3 upper triangular; equivalent to a complex symmetric matrix",
        ),
        "t2" => (
            rows(vec![
                vec![r(0.0), r(7.0), r(0.0)],
                vec![r(0.0), r(1.0), r(-5.0)],
                vec![r(0.0), r(0.0), r(3.0)],
            ]),
            "t1 with one diagonal entry changed; not equivalent",
        ),
        "nilpotent-0.5" => (nilpotent(0.5), "[[0,1,0],[0,0,a],[0,0,0]] with a = 0.5; not equivalent"),
        "nilpotent-1" => (nilpotent(1.0), "the same shape with a = 1; equivalent"),
        "nilpotent-2" => (nilpotent(2.0), "the same shape with a = 2; not equivalent"),
        "dense" => {
            let s2 = 2.0_f64.sqrt();
            let c = Complex::new;
            (
                rows(vec![
                    vec![c(1.0, 4.0), c(-2.0 * s2, -s2), c(-1.0, -4.0)],
                    vec![c(0.0, s2), r(0.0), c(0.0, s2)],
                    vec![r(-1.0), c(2.0 * s2, -s2), r(1.0)],
                ]),
                "dense 3×3 with irrational entries; equivalent, with a clean certificate",
            )
        }
        _ => return None,
    })
}

const FIXTURE_NAMES: [&str; 6] = [
    "t1",
    "t2",
    "nilpotent-0.5",
    "nilpotent-1",
    "nilpotent-2",
    "dense",
];

/// Text form that `parse_matrix` reads back exactly: shortest round-trip
/// decimals, rows separated by semicolons.
fn matrix_to_text(m: &CMatrix64) -> String {
    let entry = |z: Complex<f64>| -> String {
        if z.im == 0.0 {
            format!("{}", z.re)
        } else if z.re == 0.0 {
            format!("{}i", z.im)
        } else if z.im < 0.0 {
            format!("{}-{}i", z.re, -z.im)
        } else {
            format!("{}+{}i", z.re, z.im)
        }
    };
    let n = m.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| entry(m[(i, j)]))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn cmd_examples(a: ExamplesArgs) -> Result<u8, Failure> {
    match a.name {
        None => {
            for name in FIXTURE_NAMES {
                let (_, blurb) = fixture(name).expect("listed fixtures exist");
                println!("{name:<14} {blurb}");
            }
            Ok(0)
        }
        Some(name) => {
            let (m, _) = fixture(&name).ok_or_else(|| {
                fail(
                    EXIT_USAGE,
                    format!(
                        "unknown example '{name}'; available: {}",
                        FIXTURE_NAMES.join(", ")
                    ),
                )
            })?;
            match a.format.unwrap_or(Format::Text) {
                Format::Text => println!("{}", matrix_to_text(&m)),
                Format::Json => println!("{}", to_json(&m)?),
            }
            Ok(0)
        }
    }
}
