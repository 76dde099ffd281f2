//! Subcommands of the `mps` tool.
//!
//! Exit codes: 0 verified maximal, 1 search budget exhausted, 2 valid but
//! extendable, 3 invalid or malformed certificate, 4 usage error or a target
//! the bounds rule out.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mps_core::builder::{build_ladder, n_max};
use mps_core::cert::{self, Certificate, Outcome, ParsedCertificate, Provenance, VerifyReport};
use mps_core::construct::{embed_spread, structured_pg4_seed};
use mps_core::projgeom::Geometry;
use mps_core::search::{
    bounds, greedy_complete, parallel_search, spectrum_scan, BoundsRow, SearchConfig, SpectrumConfig,
};
use mps_core::spread::{Origin, PartialSpread};

pub const EXIT_MAXIMAL: i32 = 0;
pub const EXIT_SEARCH_FAILED: i32 = 1;
pub const EXIT_EXTENDABLE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

const DIM: usize = 5;
const TABLE_QS: [u32; 5] = [2, 3, 4, 5, 7];

#[derive(Parser, Debug)]
#[command(name = "mps", version, about = "Maximal partial line spreads of PG(5,q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Budget {
    Ci,
    Long,
}

impl Budget {
    fn config(self, seed: u64) -> SearchConfig {
        match self {
            Budget::Ci => SearchConfig::ci(seed),
            Budget::Long => SearchConfig::long(seed),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a maximal partial spread of size q^3+q^2+kq+1 by the hyperplane ladder.
    Construct {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Certificate path; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a certificate file from scratch.
    Verify { path: PathBuf },
    /// Search for a maximal partial spread of a given size.
    Search {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        target: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Budget::Ci)]
        budget: Budget,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify as many sizes as possible, one certificate per size.
    Spectrum {
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value_t = Budget::Ci)]
        budget: Budget,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print reference sizes and deficiency bounds.
    Bounds {
        #[arg(long)]
        q: Option<u32>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_MAXIMAL,
                _ => EXIT_USAGE,
            };
            let _ = if code == EXIT_MAXIMAL {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Construct { q, k, out: path } => cmd_construct(q, k, path.as_deref(), out, err),
        Command::Verify { path } => cmd_verify(&path, out, err),
        Command::Search {
            q,
            target,
            seed,
            budget,
            jobs,
            out: path,
        } => cmd_search(q, target, seed, budget, jobs, path.as_deref(), out, err),
        Command::Spectrum {
            q,
            budget,
            seed,
            out: dir,
        } => cmd_spectrum(q, budget, seed, &dir, out),
        Command::Bounds { q } => cmd_bounds(q, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

type CmdResult = Result<i32, Box<dyn std::error::Error>>;

fn usage(err: &mut dyn Write, msg: &str) -> CmdResult {
    writeln!(err, "error: {msg}")?;
    writeln!(err, "usage: mps construct --q <Q> [--k <K>] [--out <PATH>]")?;
    Ok(EXIT_USAGE)
}

fn geometry(q: u32) -> Result<Geometry, Box<dyn std::error::Error>> {
    Ok(Geometry::new(q, DIM)?)
}

/// The size-(q^3+1) partial spread of PG(4,q), embedded in `x_5 = 0`.
pub fn hyperplane_seed(geom: &Geometry) -> Result<PartialSpread, Box<dyn std::error::Error>> {
    let sub = Geometry::new(geom.q(), DIM - 1)?;
    Ok(embed_spread(geom, &sub, &structured_pg4_seed(&sub), Origin::Hyperplane))
}

fn emit(geom: &Geometry, cert: &Certificate, path: Option<&Path>, out: &mut dyn Write) -> std::io::Result<()> {
    let text = cert.to_text(geom);
    match path {
        Some(p) => fs::write(p, text),
        None => out.write_all(text.as_bytes()),
    }
}

/// Verifies `cert` through its serialized form, as a third party would.
fn reverify(geom: &Geometry, cert: &Certificate) -> Result<VerifyReport, Box<dyn std::error::Error>> {
    let parsed = ParsedCertificate::parse(&cert.to_text(geom))?;
    Ok(cert::verify(geom, &parsed))
}

fn describe(report: &VerifyReport) -> String {
    let delta = report.delta().map_or(String::new(), |d| format!(", δ={d}"));
    match &report.outcome {
        Outcome::Maximal => format!("maximal, size {}{delta}", report.size),
        Outcome::Extendable(_) => format!("extendable, size {}{delta}", report.size),
        Outcome::Invalid(msg) => format!("invalid: {msg}"),
    }
}

fn outcome_code(report: &VerifyReport) -> i32 {
    match report.outcome {
        Outcome::Maximal => EXIT_MAXIMAL,
        Outcome::Extendable(_) => EXIT_EXTENDABLE,
        Outcome::Invalid(_) => EXIT_INVALID,
    }
}

pub fn cmd_construct(q: u32, k: usize, path: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let geom = match Geometry::new(q, DIM) {
        Ok(g) => g,
        Err(e) => return usage(err, &e.to_string()),
    };
    let max = n_max(q);
    if k > max {
        return usage(err, &format!("k={k} out of range: 0 <= k <= n_max({q}) = {max}"));
    }
    let cert = build_ladder(&geom, k, &hyperplane_seed(&geom)?)?;
    let report = reverify(&geom, &cert)?;
    emit(&geom, &cert, path, out)?;
    writeln!(err, "constructed {}: {}", cert.provenance, describe(&report))?;
    Ok(outcome_code(&report))
}

pub fn cmd_verify(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            writeln!(err, "error: cannot read {}: {e}", path.display())?;
            return Ok(EXIT_USAGE);
        }
    };
    let report = match cert::verify_text(&text) {
        Ok(r) => r,
        Err(e) => {
            writeln!(out, "invalid: {e}")?;
            return Ok(EXIT_INVALID);
        }
    };
    writeln!(out, "{}", describe(&report))?;
    if let Outcome::Extendable(w) = &report.outcome {
        let geom = Geometry::new(report.q, report.dim)?;
        let (a, b) = w.basis();
        writeln!(out, "witness line: {:?} {:?}", geom.coords(a), geom.coords(b))?;
    }
    Ok(outcome_code(&report))
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_search(
    q: u32,
    target: usize,
    seed: u64,
    budget: Budget,
    jobs: usize,
    path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let row = match bounds(q) {
        Ok(r) => r,
        Err(e) => return usage(err, &e.to_string()),
    };
    if let Some(reason) = row.refusal(target) {
        writeln!(err, "refused: {reason}")?;
        return Ok(EXIT_USAGE);
    }
    let geom = geometry(q)?;
    let cfg = budget.config(seed);
    // start from a random greedy spread, or a ladder spread when the target is below it
    let mut start = PartialSpread::new(&geom);
    greedy_complete(&geom, &mut start, &mut ChaCha8Rng::seed_from_u64(seed), Origin::Search);
    if target < start.len() {
        let k = ((target - row.min_size) / q as usize).min(n_max(q));
        let ladder = build_ladder(&geom, k, &hyperplane_seed(&geom)?)?.to_spread(&geom)?;
        if ladder.len().abs_diff(target) < start.len().abs_diff(target) {
            start = ladder;
        }
    }
    match parallel_search(&geom, &start, target, &cfg, jobs.max(1)) {
        Ok((found, used_seed)) => {
            let cert = Certificate::from_spread(&geom, &found.spread, Provenance::Search, Some(used_seed));
            let report = reverify(&geom, &cert)?;
            emit(&geom, &cert, path, out)?;
            writeln!(err, "found after {} steps: {}", found.steps, describe(&report))?;
            Ok(outcome_code(&report))
        }
        Err(failure) => {
            writeln!(err, "{failure}")?;
            writeln!(err, "best size found: {}", failure.best_size)?;
            Ok(EXIT_SEARCH_FAILED)
        }
    }
}

pub fn cmd_spectrum(q: u32, budget: Budget, seed: u64, dir: &Path, out: &mut dyn Write) -> CmdResult {
    let geom = geometry(q)?;
    let report = spectrum_scan(&geom, &SpectrumConfig::new(budget.config(seed)))?;
    fs::create_dir_all(dir)?;
    for (size, achieved) in &report.achieved {
        let cert = &achieved.certificate;
        let check = reverify(&geom, cert)?;
        if check.outcome != Outcome::Maximal || check.size != *size {
            return Err(format!(
                "certificate for size {size} failed re-verification: {}",
                describe(&check)
            )
            .into());
        }
        emit(&geom, cert, Some(&dir.join(format!("mps-q{q}-size{size}.cert"))), out)?;
    }
    fs::write(dir.join("summary.csv"), report.csv())?;
    write!(out, "{}", report.table())?;
    writeln!(out, "achieved: {:?}", report.sizes())?;
    Ok(EXIT_MAXIMAL)
}

pub fn cmd_bounds(q: Option<u32>, out: &mut dyn Write) -> CmdResult {
    let rows: Vec<BoundsRow> = match q {
        Some(q) => vec![bounds(q)?],
        None => TABLE_QS.iter().map(|&q| bounds(q)).collect::<Result<_, _>>()?,
    };
    writeln!(out, "q | min size | δ bound | max size | spread-q+1 | spread")?;
    for r in &rows {
        writeln!(out, "{} | {}", r.q, r.table_row())?;
    }
    writeln!(out)?;
    for r in &rows {
        let largest = r.largest_found_delta.map_or("unknown".into(), |d| format!("δ={d}"));
        writeln!(
            out,
            "q={}: ε={}; largest known maximal partial spread {largest}; 2q³·log q = {:.2} (ln) / {:.2} (log2); 9·5·q³·ln q = {:.2} exceeds spread-q+1 = {}",
            r.q, r.epsilon, r.sharpened_bottom_ln, r.sharpened_bottom_log2, r.interval_bottom, r.interval_top
        )?;
    }
    writeln!(out)?;
    writeln!(out, "{}", BoundsRow::csv_header())?;
    for r in &rows {
        writeln!(out, "{}", r.csv_row())?;
    }
    Ok(EXIT_MAXIMAL)
}
