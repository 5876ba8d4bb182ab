//! Command-line front end.
//!
//! Exit codes: 0 ok, 2 majorization violated, 3 trace mismatch,
//! 4 verification failed, 64 usage or parse error.

pub mod io;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use crate::error::Error;
use crate::gen::{self, GenConfig};
use crate::horn::{self, HornCertificate, OrthogonalMatrix};
use crate::mirsky::{self, MirskyCertificate, UnitLowerTriangular, GROWTH_WARNING};
use crate::seqkit::{self, ComplexSeq, RealSeq};
use crate::verify::{self, TolProfile};
use crate::DEFAULT_TOL;

use io::{csv_matrix, parse_json, require_real, FieldError, HornDoc, MirskyDoc, ProblemFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MAJORIZATION: i32 = 2;
pub const EXIT_TRACE: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;
pub const EXIT_USAGE: i32 = 64;

/// Environment variable consulted for the default tolerance.
pub const TOL_ENV: &str = "SPECTRA_DIAG_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "spectra-diag",
    version,
    about = "Matrices with prescribed eigenvalues and diagonal"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check majorization (real) or trace equality (complex) of a problem file.
    Check(CheckArgs),
    /// Build a real orthogonal Q with diag(Q diag(lambda) Qᵀ) = d.
    Horn(HornArgs),
    /// Build a unit lower triangular L with diag(L⁻¹ U L) = d.
    Mirsky(MirskyArgs),
    /// Emit a seeded random problem file.
    Gen(GenArgs),
    /// Re-check a JSON certificate produced by `horn` or `mirsky`.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Majorize,
    Trace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Q,
    A,
    S,
    L,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Preset {
    Corr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    /// Real spectrum with a majorized diagonal.
    Horn,
    /// Real trace-matched pair.
    Mirsky,
    /// Complex trace-matched pair.
    MirskyComplex,
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Problem file; `-` or absent reads stdin.
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "majorize")]
    mode: Mode,
    /// Construction tolerance; falls back to the file, then SPECTRA_DIAG_TOL, then 1e-12.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Debug, Args)]
struct HornArgs {
    /// Problem file; `-` or absent reads stdin.
    input: Option<PathBuf>,
    /// Construction tolerance; falls back to the file, then SPECTRA_DIAG_TOL, then 1e-12.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, value_enum, default_value = "all")]
    emit: Emit,
    /// Treat `lambda` as a raw spectrum, scale it to trace n and target a unit diagonal.
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Write output files here instead of stdout.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[command(flatten)]
    profile: ProfileArgs,
}

#[derive(Debug, Args)]
struct MirskyArgs {
    /// Problem file; `-` or absent reads stdin.
    input: Option<PathBuf>,
    /// Construction tolerance; falls back to the file, then SPECTRA_DIAG_TOL, then 1e-12.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, value_enum, default_value = "all")]
    emit: Emit,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[command(flatten)]
    profile: ProfileArgs,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value_t = 8)]
    mix: usize,
    #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
    lo: f64,
    #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
    hi: f64,
    #[arg(long, value_enum, default_value = "horn")]
    kind: GenKind,
    #[arg(long, value_enum)]
    preset: Option<Preset>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Problem file; `-` or absent reads stdin.
    input: Option<PathBuf>,
    #[command(flatten)]
    profile: ProfileArgs,
}

/// Overrides for the verification threshold multipliers.
#[derive(Debug, Default, Args)]
struct ProfileArgs {
    /// Diagonal multiplier (times N and max(1, |Λ|∞); per entry for mirsky).
    #[arg(long)]
    diag_tol: Option<f64>,
    /// Orthogonality multiplier (times N).
    #[arg(long)]
    orth_tol: Option<f64>,
    /// Eigenvalue multiplier (times max(1, |Λ|∞)).
    #[arg(long)]
    eig_tol: Option<f64>,
    /// Schur relation multiplier (times N and max(1, |Λ|∞)).
    #[arg(long)]
    schur_tol: Option<f64>,
    /// Row/column sum multiplier for S (times N).
    #[arg(long)]
    stochastic_tol: Option<f64>,
    /// Similarity multiplier (times N and growth(L)).
    #[arg(long)]
    similarity_tol: Option<f64>,
    /// Relative characteristic-polynomial tolerance.
    #[arg(long)]
    charpoly_tol: Option<f64>,
}

impl ProfileArgs {
    fn profile(&self) -> Result<TolProfile, Failure> {
        let mut p = TolProfile::default();
        let fields: [(Option<f64>, &mut f64, &str); 7] = [
            (self.diag_tol, &mut p.diag, "diag-tol"),
            (self.orth_tol, &mut p.orth, "orth-tol"),
            (self.eig_tol, &mut p.eig, "eig-tol"),
            (self.schur_tol, &mut p.schur, "schur-tol"),
            (self.stochastic_tol, &mut p.stochastic, "stochastic-tol"),
            (self.similarity_tol, &mut p.similarity, "similarity-tol"),
            (self.charpoly_tol, &mut p.charpoly, "charpoly-tol"),
        ];
        for (given, slot, name) in fields {
            if let Some(t) = given {
                if !(t.is_finite() && t >= 0.0) {
                    return Err(Failure::usage(format!("--{name}: invalid tolerance {t}")));
                }
                *slot = t;
            }
        }
        // the Mirsky diagonal check shares the diagonal override
        if let Some(t) = self.diag_tol {
            p.mirsky_diag = t;
        }
        Ok(p)
    }
}

/// Process-level streams and environment, injectable for tests.
pub struct Env<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
    pub tol_var: Option<String>,
}

/// A failed command: exit code plus a diagnostic for stderr.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::MajorizationViolated { .. } => EXIT_MAJORIZATION,
            Error::TraceMismatch { .. } => EXIT_TRACE,
            Error::NotOrthogonal { .. } | Error::NoConvergence { .. } => EXIT_VERIFY,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(format!("i/o error: {e}"))
    }
}

type CmdResult = Result<i32, Failure>;

/// Entry point for the binary.
pub fn main_with_env() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    let stdin = &mut std::io::stdin().lock();
    let stdout = &mut std::io::stdout().lock();
    let stderr = &mut std::io::stderr().lock();
    let mut env = Env {
        stdin,
        stdout,
        stderr,
        tol_var: std::env::var(TOL_ENV).ok(),
    };
    run(&args, &mut env)
}

/// Runs one command line (`args[0]` is the program name).
pub fn run(args: &[String], env: &mut Env<'_>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(env.stderr, "{e}");
            return code;
        }
    };
    let result = match cli.command {
        Command::Check(a) => cmd_check(a, env),
        Command::Horn(a) => cmd_horn(a, env),
        Command::Mirsky(a) => cmd_mirsky(a, env),
        Command::Gen(a) => cmd_gen(a, env),
        Command::Verify(a) => cmd_verify(a, env),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(env.stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn read_input(path: &Option<PathBuf>, env: &mut Env<'_>) -> Result<Value, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", p.display())))?;
        }
        _ => {
            env.stdin.read_to_string(&mut text)?;
        }
    }
    parse_json(&text).map_err(Failure::usage)
}

/// Flag, then the problem file, then the environment, then the default.
fn resolve_tol(flag: Option<f64>, file: Option<f64>, env: &Env<'_>) -> Result<f64, Failure> {
    if let Some(t) = flag.or(file) {
        return if t.is_finite() && t >= 0.0 {
            Ok(t)
        } else {
            Err(Failure::usage(format!("invalid tolerance {t}")))
        };
    }
    match &env.tol_var {
        Some(s) => s
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| t.is_finite() && *t >= 0.0)
            .ok_or_else(|| Failure::usage(format!("{TOL_ENV}={s} is not a valid tolerance"))),
        None => Ok(DEFAULT_TOL),
    }
}

fn write_json<T: Serialize>(value: &T, out: &mut dyn Write) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::usage(format!("serialization failed: {e}")))?;
    out.write_all(text.as_bytes())?;
    out.write_all(b"\n")?;
    Ok(())
}

#[derive(Serialize)]
struct TraceReport {
    holds: bool,
    trace_gap: [f64; 2],
    tolerance_used: f64,
}

#[derive(Serialize)]
struct MajorizationDoc {
    holds: bool,
    slacks: Vec<f64>,
    trace_gap: f64,
    tolerance_used: f64,
    first_violation: Option<usize>,
}

impl From<&seqkit::MajorizationReport> for MajorizationDoc {
    fn from(r: &seqkit::MajorizationReport) -> Self {
        Self {
            holds: r.holds,
            slacks: r.slacks.clone(),
            trace_gap: r.trace_gap,
            tolerance_used: r.tolerance_used,
            first_violation: r.first_violation(),
        }
    }
}

fn real_seq(values: &[Complex64], name: &str) -> Result<RealSeq, Failure> {
    Ok(RealSeq::new(require_real(values, name)?)?)
}

fn cmd_check(args: CheckArgs, env: &mut Env<'_>) -> CmdResult {
    let doc = read_input(&args.input, env)?;
    let problem = ProblemFile::from_value(&doc)?;
    let tol = resolve_tol(args.tol, problem.tol, env)?;
    let d = problem.require_d()?;
    match args.mode {
        Mode::Majorize => {
            let lambda = real_seq(&problem.lambda, "lambda")?;
            let d = real_seq(d, "d")?;
            let report = seqkit::check_majorization(&lambda, &d, tol)?;
            write_json(&MajorizationDoc::from(&report), env.stdout)?;
            Ok(if report.holds {
                EXIT_OK
            } else {
                EXIT_MAJORIZATION
            })
        }
        Mode::Trace => {
            let lambda = ComplexSeq::new(problem.lambda.clone())?;
            let d = ComplexSeq::new(d.to_vec())?;
            let holds = seqkit::trace_match(&lambda, &d, tol)?;
            let gap = seqkit::trace_gap(&lambda, &d)?;
            let report = TraceReport {
                holds,
                trace_gap: [gap.re, gap.im],
                tolerance_used: tol * lambda.sum().norm().max(1.0),
            };
            write_json(&report, env.stdout)?;
            Ok(if holds { EXIT_OK } else { EXIT_TRACE })
        }
    }
}

/// Writes `name.ext` under `dir`, or returns the text for stdout.
fn emit_file(
    dir: &Option<PathBuf>,
    name: &str,
    text: &str,
    env: &mut Env<'_>,
) -> Result<(), Failure> {
    match dir {
        Some(dir) => {
            let path: PathBuf = Path::new(dir).join(name);
            std::fs::write(&path, text)
                .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
        }
        None => env.stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_horn(args: HornArgs, env: &mut Env<'_>) -> CmdResult {
    let (want_q, want_a, want_s) = match args.emit {
        Emit::Q => (true, false, false),
        Emit::A => (false, true, false),
        Emit::S => (false, false, true),
        Emit::All => (true, true, true),
        Emit::L => return Err(Failure::usage("--emit l is only valid for mirsky")),
    };
    let doc = read_input(&args.input, env)?;
    let problem = ProblemFile::from_value(&doc)?;
    let tol = resolve_tol(args.tol, problem.tol, env)?;
    let (lambda, d) = match args.preset {
        Some(Preset::Corr) => {
            if problem.d.is_some() {
                writeln!(env.stderr, "note: --preset corr ignores `d`")?;
            }
            gen::corr_preset(&real_seq(&problem.lambda, "lambda")?)?
        }
        None => (
            real_seq(&problem.lambda, "lambda")?,
            real_seq(problem.require_d()?, "d")?,
        ),
    };

    let report = seqkit::check_majorization(&lambda, &d, tol)?;
    if let Some(k) = report.first_violation() {
        write_json(&MajorizationDoc::from(&report), env.stdout)?;
        return Err(Failure {
            code: EXIT_MAJORIZATION,
            message: format!("majorization violated at prefix {k}"),
        });
    }
    let profile = args.profile.profile()?;
    let cert = horn::horn_construct(&lambda, &d, tol)?;
    let verification = verify::verify_horn(&cert, &profile);
    let passed = verification.pass;

    let q = cert.q.entries().clone();
    let a = horn::hermitian_of(&cert.q, &cert.lambda)?;
    let s = horn::orthostochastic_of(&cert.q).entries().clone();
    match args.format {
        Format::Json => {
            let mut out = HornDoc::new(&cert, verification);
            out.q = want_q.then(|| q.to_rows());
            out.a = want_a.then(|| a.to_rows());
            out.s = want_s.then(|| s.to_rows());
            match &args.out_dir {
                Some(_) => {
                    let text = serde_json::to_string_pretty(&out)
                        .map_err(|e| Failure::usage(e.to_string()))?
                        + "\n";
                    emit_file(&args.out_dir, "horn.json", &text, env)?;
                }
                None => write_json(&out, env.stdout)?,
            }
        }
        Format::Csv => {
            let selected: Vec<(&str, &crate::SquareMatrix<f64>)> = [
                (want_q, "q.csv", &q),
                (want_a, "a.csv", &a),
                (want_s, "s.csv", &s),
            ]
            .into_iter()
            .filter(|(w, _, _)| *w)
            .map(|(_, n, m)| (n, m))
            .collect();
            if selected.len() > 1 && args.out_dir.is_none() {
                return Err(Failure::usage(
                    "csv output of several matrices needs --out-dir (or a single --emit)",
                ));
            }
            for (name, m) in selected {
                emit_file(&args.out_dir, name, &csv_matrix(m), env)?;
            }
        }
    }
    if passed {
        Ok(EXIT_OK)
    } else {
        writeln!(env.stderr, "error: self-verification failed")?;
        Ok(EXIT_VERIFY)
    }
}

fn cmd_mirsky(args: MirskyArgs, env: &mut Env<'_>) -> CmdResult {
    let (want_l, want_a) = match args.emit {
        Emit::L => (true, false),
        Emit::A => (false, true),
        Emit::All => (true, true),
        Emit::Q | Emit::S => return Err(Failure::usage("--emit q/s are only valid for horn")),
    };
    let doc = read_input(&args.input, env)?;
    let problem = ProblemFile::from_value(&doc)?;
    let tol = resolve_tol(args.tol, problem.tol, env)?;
    let profile = args.profile.profile()?;
    let lambda = ComplexSeq::new(problem.lambda.clone())?;
    let d = ComplexSeq::new(problem.require_d()?.to_vec())?;
    let cert = mirsky::mirsky_construct(&lambda, &d, tol)?;
    if cert.growth > GROWTH_WARNING {
        writeln!(
            env.stderr,
            "warning: growth(L) = {:e} exceeds {:e}; the factor is ill-conditioned",
            cert.growth, GROWTH_WARNING
        )?;
    }
    let verification = verify::verify_mirsky(&cert, &profile);
    let passed = verification.pass;
    match args.format {
        Format::Json => {
            let out = MirskyDoc::new(&cert, tol, want_l, want_a, verification);
            match &args.out_dir {
                Some(_) => {
                    let text = serde_json::to_string_pretty(&out)
                        .map_err(|e| Failure::usage(e.to_string()))?
                        + "\n";
                    emit_file(&args.out_dir, "mirsky.json", &text, env)?;
                }
                None => write_json(&out, env.stdout)?,
            }
        }
        Format::Csv => {
            if !cert.is_real {
                return Err(Failure::usage("csv output is only available for real data"));
            }
            let l = cert.l.entries().map(|z| z.re);
            let a = cert.a.map(|z| z.re);
            let selected: Vec<(&str, &crate::SquareMatrix<f64>)> =
                [(want_l, "l.csv", &l), (want_a, "a.csv", &a)]
                    .into_iter()
                    .filter(|(w, _, _)| *w)
                    .map(|(_, n, m)| (n, m))
                    .collect();
            if selected.len() > 1 && args.out_dir.is_none() {
                return Err(Failure::usage(
                    "csv output of several matrices needs --out-dir (or a single --emit)",
                ));
            }
            for (name, m) in selected {
                emit_file(&args.out_dir, name, &csv_matrix(m), env)?;
            }
        }
    }
    if passed {
        Ok(EXIT_OK)
    } else {
        writeln!(env.stderr, "error: self-verification failed")?;
        Ok(EXIT_VERIFY)
    }
}

#[derive(Serialize)]
struct GenDoc {
    lambda: Vec<io::Scalar>,
    d: Vec<io::Scalar>,
}

fn cmd_gen(args: GenArgs, env: &mut Env<'_>) -> CmdResult {
    let cfg = GenConfig::new(args.seed, args.n, args.lo, args.hi).with_mix(args.mix);
    let real = |v: &[f64]| -> Vec<io::Scalar> {
        v.iter()
            .map(|&x| io::Scalar {
                z: Complex64::new(x, 0.0),
                real: true,
            })
            .collect()
    };
    let out = match (args.kind, args.preset) {
        (GenKind::Horn, Some(Preset::Corr)) => {
            if cfg.lo < 0.0 {
                return Err(Failure::usage("--preset corr needs --lo >= 0"));
            }
            let raw = gen::random_spectrum(&cfg)?;
            let (lambda, d) = gen::corr_preset(&raw)?;
            GenDoc {
                lambda: real(lambda.values()),
                d: real(d.values()),
            }
        }
        (GenKind::Horn, None) => {
            let lambda = gen::random_spectrum(&cfg)?;
            let d = gen::random_majorized_diag(&lambda, &cfg)?;
            GenDoc {
                lambda: real(lambda.values()),
                d: real(d.values()),
            }
        }
        (kind, None) => {
            let complex = kind == GenKind::MirskyComplex;
            let (lambda, d) = gen::trace_matched_pair(&cfg, complex)?;
            let wrap = |s: &ComplexSeq| -> Vec<io::Scalar> {
                s.values()
                    .iter()
                    .map(|&z| io::Scalar { z, real: !complex })
                    .collect()
            };
            GenDoc {
                lambda: wrap(&lambda),
                d: wrap(&d),
            }
        }
        (_, Some(Preset::Corr)) => {
            return Err(Failure::usage("--preset corr only applies to --kind horn"))
        }
    };
    write_json(&out, env.stdout)?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: VerifyArgs, env: &mut Env<'_>) -> CmdResult {
    let profile = args.profile.profile()?;
    let doc = read_input(&args.input, env)?;
    let kind = doc
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Failure::usage("field `kind`: expected \"horn\" or \"mirsky\""))?;
    let report = match kind {
        "horn" => verify::verify_horn(&horn_from_doc(&doc)?, &profile),
        "mirsky" => match mirsky_from_doc(&doc)? {
            Some(cert) => verify::verify_mirsky(&cert, &profile),
            None => {
                writeln!(env.stderr, "error: `l` is not unit lower triangular")?;
                return Ok(EXIT_VERIFY);
            }
        },
        other => {
            return Err(Failure::usage(format!(
                "field `kind`: unknown certificate kind {other:?}"
            )))
        }
    };
    write_json(&report, env.stdout)?;
    Ok(if report.pass { EXIT_OK } else { EXIT_VERIFY })
}

fn horn_from_doc(doc: &Value) -> Result<HornCertificate, Failure> {
    let problem = ProblemFile::from_value(doc)?;
    let lambda = real_seq(&problem.lambda, "lambda")?;
    let d = real_seq(problem.require_d()?, "d")?;
    let q = io::real_matrix(doc, "q")?;
    if q.n() != lambda.len() {
        return Err(Failure::usage(format!(
            "field `q`: dimension {} does not match lambda length {}",
            q.n(),
            lambda.len()
        )));
    }
    let q = OrthogonalMatrix::new_unchecked(q);
    Ok(HornCertificate {
        orth_residual: q.residual(),
        q,
        lambda,
        d,
        tol: problem.tol.unwrap_or(DEFAULT_TOL),
        diag_residual: f64::NAN,
        steps: Vec::new(),
    })
}

/// `None` when `l` lacks the unit lower triangular shape.
fn mirsky_from_doc(doc: &Value) -> Result<Option<MirskyCertificate>, Failure> {
    let problem = ProblemFile::from_value(doc)?;
    let lambda = ComplexSeq::new(problem.lambda.clone())?;
    let d = ComplexSeq::new(problem.require_d()?.to_vec())?;
    let l = io::complex_matrix(doc, "l")?;
    let a = io::complex_matrix(doc, "a")?;
    for (name, m) in [("l", &l), ("a", &a)] {
        if m.n() != lambda.len() {
            return Err(Failure::usage(format!(
                "field `{name}`: dimension {} does not match lambda length {}",
                m.n(),
                lambda.len()
            )));
        }
    }
    let Ok(l) = UnitLowerTriangular::from_entries(l) else {
        return Ok(None);
    };
    let is_real = lambda.is_real() && d.is_real();
    Ok(Some(MirskyCertificate {
        growth: l.growth(),
        l,
        a,
        lambda,
        d,
        c_values: Vec::new(),
        similarity_residual: f64::NAN,
        diag_residual: f64::NAN,
        is_real,
    }))
}
