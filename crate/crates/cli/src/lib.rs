//! Command-line front end. Every subcommand is a thin composition of
//! `isomub` library calls; `run` returns the process exit code.

use std::fs;
use std::io::{self, Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use isomub::fiducials::FiducialKind;
use isomub::io::{format_many, LogMatrix};
use isomub::measures::{magick_report, StateRef};
use isomub::search::{magick_landscape, search_fiducials, search_sporadic_triplet};
use isomub::verify::{
    butson_class, hadamard_from_basis, is_complex_hadamard, partition_orbit_dense, verify_isoentangled,
    verify_mub, verify_sic, BasisSet,
};
use isomub::wh::wh_orbit;
use isomub::{
    DigitOrder, DimProfile, Document, Error, FiducialRecipe, Param, SearchConfig, StateVector, VerificationReport,
};
use nalgebra::DMatrix;
use num_complex::Complex64;

#[derive(Parser, Debug)]
#[command(name = "isomub", version, about = "Product Weyl-Heisenberg MUB and SIC toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a fiducial state and print it as JSON.
    Construct(ConstructArgs),
    /// Check a design property; exit 0 on pass, 1 on fail.
    Verify(VerifyArgs),
    /// Magick of a state, optionally with the per-operator breakdown.
    Magick(MagickArgs),
    /// Product WH orbit of a state.
    Orbit(OrbitArgs),
    /// Exhaustive searches over phase states.
    Search(SearchArgs),
    /// Print bases as LOG matrices.
    ExportLog(ExportArgs),
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 3)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Parameter a: an integer or comma-separated coefficients, constant term first.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    a: Vec<i64>,
    /// Modulus polynomial, comma-separated coefficients, constant term first.
    #[arg(long, value_delimiter = ',')]
    poly: Option<Vec<u32>>,
    #[arg(long, value_enum, default_value_t = Endian::Big)]
    endian: Endian,
    /// Member of the sporadic triplet.
    #[arg(long, default_value_t = 0)]
    index: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Field,
    Ring,
    Qubit,
    Hoggar,
    Sporadic,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Endian {
    Big,
    Little,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    what: Check,
    /// JSON document or LOG text; `-` reads stdin.
    #[arg(long = "in", default_value = "-")]
    input: String,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Add the computational basis to the set (mub).
    #[arg(long)]
    computational: bool,
    /// Subsystems kept in the marginal (isoentangled).
    #[arg(long, value_delimiter = ',', default_value = "0")]
    keep: Vec<usize>,
    /// Largest root order tried (butson).
    #[arg(long, default_value_t = 64)]
    max_root: u32,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Check {
    Mub,
    Sic,
    Hadamard,
    Butson,
    Isoentangled,
}

#[derive(Args, Debug)]
struct MagickArgs {
    #[arg(long = "in", default_value = "-")]
    input: String,
    /// Override the tensor factorization, e.g. `3,3`.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long)]
    per_op: bool,
}

#[derive(Args, Debug)]
struct OrbitArgs {
    #[arg(long = "in", default_value = "-")]
    input: String,
    /// Group the orbit into the d bases of fixed shift.
    #[arg(long)]
    partition: bool,
    /// Print LOG matrices over this root instead of JSON (with --partition).
    #[arg(long)]
    log: Option<u32>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(value_enum)]
    what: SearchKind,
    #[arg(long, value_delimiter = ',', default_value = "2,2")]
    dims: Vec<usize>,
    #[arg(long, default_value_t = 4)]
    root: u32,
    #[arg(long, env = "ISOMUB_WORKERS")]
    workers: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SearchKind {
    Fiducial,
    Sporadic,
    Landscape,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[arg(long = "in", default_value = "-")]
    input: String,
    #[arg(long)]
    root: u32,
    /// Export only this basis.
    #[arg(long)]
    index: Option<usize>,
    /// Normalize each column to start with exponent 0.
    #[arg(long)]
    dephase: bool,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

enum Failure {
    Usage(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                writeln!(err, "{}", e.to_string().lines().next().unwrap_or("usage error"))
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Construct(a) => construct(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Magick(a) => magick(a, out),
        Command::Orbit(a) => orbit(a, out),
        Command::Search(a) => search(a, out),
        Command::ExportLog(a) => export_log(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Check) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn read_input(path: &str) -> std::result::Result<String, Failure> {
    let mut text = String::new();
    let res = if path == "-" { io::stdin().read_to_string(&mut text).map(|_| ()) } else { fs::read_to_string(path).map(|t| text = t) };
    res.map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    Ok(text)
}

fn emit(out: &mut dyn Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string()))?;
    if !text.ends_with('\n') {
        out.write_all(b"\n").map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(())
}

fn emit_json<T: serde::Serialize>(out: &mut dyn Write, v: &T) -> Outcome {
    let text = serde_json::to_string_pretty(v).map_err(|e| Failure::Usage(e.to_string()))?;
    emit(out, &text)
}

fn construct(a: ConstructArgs, out: &mut dyn Write) -> Outcome {
    let param = match a.a.as_slice() {
        [] => None,
        [v] => Some(Param::Int(*v)),
        many => Some(Param::Coeffs(
            many.iter()
                .map(|&c| u32::try_from(c).map_err(|_| Failure::Usage(format!("negative coefficient {c}"))))
                .collect::<std::result::Result<_, _>>()?,
        )),
    };
    let kind = match a.kind {
        Kind::Field => FiducialKind::Field,
        Kind::Ring => FiducialKind::Ring,
        Kind::Qubit => FiducialKind::Qubit,
        Kind::Hoggar => FiducialKind::Hoggar,
        Kind::Sporadic => FiducialKind::Sporadic,
    };
    if matches!(kind, FiducialKind::Field | FiducialKind::Ring) && param.is_none() {
        return Err(Failure::Usage("--a is required for field and ring fiducials".into()));
    }
    let recipe = FiducialRecipe {
        kind,
        p: if matches!(kind, FiducialKind::Qubit) { 2 } else { a.p },
        n: a.n,
        a: param,
        poly: a.poly,
        order: match a.endian {
            Endian::Big => DigitOrder::Big,
            Endian::Little => DigitOrder::Little,
        },
        index: Some(a.index),
    };
    let doc = match kind {
        FiducialKind::Hoggar => Document::from_state(&recipe.state()?),
        _ => Document::from_phase(&recipe.phase_state()?),
    };
    emit(out, &doc.to_json())
}

/// A JSON document, or LOG text read as the columns of each matrix.
fn read_bases(text: &str) -> std::result::Result<BasisSet, Failure> {
    if let Ok(doc) = Document::parse(text) {
        return Ok(match &doc {
            Document::Bases { .. } => doc.bases()?,
            Document::States { .. } => BasisSet::new(vec![doc.states()?], vec![])?,
            _ => partition_orbit_dense(&doc.state()?)?,
        });
    }
    let mats = LogMatrix::parse_many(text)?;
    let bases = mats
        .iter()
        .map(|m| {
            let d = m.dim();
            m.columns(&DimProfile::new(vec![d])?)
        })
        .collect::<isomub::Result<Vec<_>>>()?;
    Ok(BasisSet::new(bases, vec![])?)
}

fn read_matrices(text: &str) -> std::result::Result<Vec<DMatrix<Complex64>>, Failure> {
    if Document::parse(text).is_err() {
        return Ok(LogMatrix::parse_many(text)?.iter().map(LogMatrix::to_matrix).collect());
    }
    Ok(read_bases(text)?.bases.iter().map(|b| hadamard_from_basis(b)).collect())
}

fn read_state(text: &str) -> std::result::Result<StateVector, Failure> {
    let doc = Document::parse(text)?;
    Ok(doc.state()?)
}

fn verdict(out: &mut dyn Write, report: &VerificationReport) -> Outcome {
    emit_json(out, report)?;
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let text = read_input(&a.input)?;
    match a.what {
        Check::Mub => verdict(out, &verify_mub(&read_bases(&text)?, a.computational, a.tol)?),
        Check::Sic => {
            let doc = Document::parse(&text)?;
            let states = match doc {
                Document::Phase { .. } | Document::Dense { .. } => {
                    wh_orbit(&doc.state()?).into_iter().map(|(_, s)| s).collect()
                }
                _ => doc.states()?,
            };
            verdict(out, &verify_sic(&states, a.tol)?)
        }
        Check::Hadamard => {
            let mats = read_matrices(&text)?;
            let reports: Vec<VerificationReport> = mats.iter().map(|m| is_complex_hadamard(m, a.tol)).collect();
            let worst = reports
                .into_iter()
                .max_by(|x, y| x.max_abs_deviation.total_cmp(&y.max_abs_deviation))
                .ok_or_else(|| Failure::Usage("no matrices in input".into()))?;
            verdict(out, &worst)
        }
        Check::Butson => {
            let classes: Vec<Option<u32>> = read_matrices(&text)?.iter().map(|m| butson_class(m, a.max_root, a.tol)).collect();
            emit_json(out, &serde_json::json!({ "classes": classes }))?;
            if !classes.is_empty() && classes.iter().all(Option::is_some) {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Check::Isoentangled => {
            let set = read_bases(&text)?;
            verdict(out, &verify_isoentangled(set.states(), &a.keep, a.tol)?)
        }
    }
}

fn magick(a: MagickArgs, out: &mut dyn Write) -> Outcome {
    let mut s = read_state(&read_input(&a.input)?)?;
    if let Some(dims) = a.dims {
        s = s.with_profile(DimProfile::new(dims)?)?;
    }
    emit_json(out, &magick_report(StateRef::Pure(&s), a.per_op)?)
}

fn orbit(a: OrbitArgs, out: &mut dyn Write) -> Outcome {
    let s = read_state(&read_input(&a.input)?)?;
    if !a.partition {
        let states: Vec<StateVector> = wh_orbit(&s).into_iter().map(|(_, v)| v).collect();
        return emit(out, &Document::from_states(&states).to_json());
    }
    let set = partition_orbit_dense(&s)?;
    match a.log {
        Some(root) => emit(out, &log_text(&set, root, false, 1e-9, None)?),
        None => emit(out, &Document::from_bases(&set).to_json()),
    }
}

fn log_text(set: &BasisSet, root: u32, dephase: bool, tol: f64, index: Option<usize>) -> std::result::Result<String, Failure> {
    let picked: Vec<&Vec<StateVector>> = match index {
        Some(i) => vec![set.bases.get(i).ok_or_else(|| Failure::Usage(format!("basis {i} out of range")))?],
        None => set.bases.iter().collect(),
    };
    let mats = picked
        .into_iter()
        .map(|b| LogMatrix::from_matrix(&hadamard_from_basis(b), root, dephase, tol))
        .collect::<isomub::Result<Vec<_>>>()?;
    Ok(format_many(&mats))
}

fn export_log(a: ExportArgs, out: &mut dyn Write) -> Outcome {
    let set = read_bases(&read_input(&a.input)?)?;
    emit(out, &log_text(&set, a.root, a.dephase, a.tol, a.index)?)
}

fn search(a: SearchArgs, out: &mut dyn Write) -> Outcome {
    match a.what {
        SearchKind::Sporadic => emit_json(out, &search_sporadic_triplet(a.workers)?),
        kind => {
            let mut cfg = SearchConfig::new(DimProfile::new(a.dims)?, a.root);
            if let Some(w) = a.workers {
                cfg = cfg.with_workers(w);
            }
            let result = match kind {
                SearchKind::Fiducial => search_fiducials(&cfg)?,
                _ => magick_landscape(&cfg)?,
            };
            emit_json(out, &result)
        }
    }
}
