mod bench;
mod input;
mod output;

use std::io::{BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use quadprox::corpus::{ReferenceCase, REFERENCE_CASES, REFERENCE_TOL};
use quadprox::{invariants_with_tol, oracle_min_distance_with, prepare, proximity3d, QuadricCoeffs, Vector3};
use rayon::prelude::*;
use serde::Serialize;

use crate::input::{Format, Parsed, QueryRecord};
use crate::output::{ClassifyRecord, ErrorRecord, ProximityRecord, VerifyRecord};

/// Classification of axisymmetric quadrics and point-to-surface distance.
#[derive(Debug, Parser)]
#[command(name = "quadprox", version)]
struct Cli {
    /// Zero threshold after coefficient normalization; a record's own `tol`
    /// takes precedence.
    #[arg(long, global = true, default_value_t = quadprox::DEFAULT_TOL)]
    tol: f64,

    /// Input file, or `-` for stdin.
    #[arg(long, global = true)]
    input: Option<String>,

    /// Input format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Also compute the sampling-oracle distance.
    #[arg(long, global = true)]
    oracle: bool,

    /// Grid resolution of the sampling oracle.
    #[arg(long, global = true, default_value_t = 200)]
    resolution: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify each quadric and report its invariants.
    Classify,
    /// Foot-points and minimum distance for each query point.
    Proximity,
    /// Median and mean time per query. Uses the built-in reference surfaces
    /// unless `--input` is given.
    Bench {
        /// Queries per case.
        #[arg(long, default_value_t = 1_000_000)]
        cycles: u64,
        /// Restrict to the named cases (repeatable).
        #[arg(long = "case")]
        cases: Vec<String>,
    },
    /// Compare each distance with the sampling oracle. Uses the built-in
    /// reference surfaces, also checked against their published distances,
    /// unless `--input` is given.
    Verify,
}

/// Outcome of one record: a serializable line and whether it failed.
struct Line {
    json: String,
    failed: bool,
}

impl Line {
    fn ok(v: &impl Serialize) -> Self {
        Self::new(v, false)
    }

    fn err(v: &ErrorRecord) -> Self {
        Self::new(v, true)
    }

    fn new(v: &impl Serialize, failed: bool) -> Self {
        Self {
            json: serde_json::to_string(v).expect("serializable record"),
            failed,
        }
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.tol >= 0.0 && cli.tol.is_finite()) {
        return usage_error("--tol must be finite and nonnegative");
    }
    if cli.resolution < 4 {
        return usage_error("--resolution must be at least 4");
    }

    let records = match &cli.input {
        Some(path) => match input::read_source(path) {
            Ok(text) => Some(input::parse(&text, cli.format)),
            Err(e) => return usage_error(format!("cannot read {path}: {e}")),
        },
        None => None,
    };

    let lines = match &cli.command {
        Command::Classify => map_records(&stdin_default(records, cli.format), |r| classify(r, cli.tol)),
        Command::Proximity => map_records(&stdin_default(records, cli.format), |r| {
            proximity(r, cli.tol, cli.oracle.then_some(cli.resolution))
        }),
        Command::Verify => match records {
            Some(recs) => map_records(&recs, |r| verify(r, cli.tol, cli.resolution)),
            None => REFERENCE_CASES
                .par_iter()
                .map(|c| verify_reference(c, cli.resolution))
                .collect(),
        },
        Command::Bench { cycles, cases } => match bench_cases(records, cases, cli.tol) {
            Ok(list) => list
                .iter()
                .filter(|_| *cycles > 0)
                .map(|c| Line::ok(&bench::run(c, *cycles)))
                .collect(),
            Err(msg) => return usage_error(msg),
        },
    };

    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut failed = false;
    for line in &lines {
        failed |= line.failed;
        if writeln!(out, "{}", line.json).is_err() {
            return ExitCode::from(2);
        }
    }
    if out.flush().is_err() {
        return ExitCode::from(2);
    }
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn stdin_default(records: Option<Vec<Parsed>>, format: Format) -> Vec<Parsed> {
    records.unwrap_or_else(|| match input::read_source("-") {
        Ok(text) => input::parse(&text, format),
        Err(e) => vec![Err(input::ParseFailure {
            id: "stdin".into(),
            message: e.to_string(),
        })],
    })
}

/// Applies `f` in parallel; output keeps input order.
fn map_records(records: &[Parsed], f: impl Fn(&QueryRecord) -> Line + Sync) -> Vec<Line> {
    records
        .par_iter()
        .map(|r| match r {
            Ok(rec) => f(rec),
            Err(e) => Line::err(&ErrorRecord::new(&e.id, "Parse", e.message.clone())),
        })
        .collect()
}

fn record_tol(rec: &QueryRecord, default: f64) -> Result<f64, ErrorRecord> {
    match rec.tol {
        Some(t) if !(t >= 0.0 && t.is_finite()) => Err(ErrorRecord::new(
            &rec.id,
            "InvalidParameter",
            "tol must be finite and nonnegative",
        )),
        Some(t) => Ok(t),
        None => Ok(default),
    }
}

fn query(rec: &QueryRecord, default_tol: f64) -> Result<(QuadricCoeffs, Vector3<f64>, f64), ErrorRecord> {
    let tol = record_tol(rec, default_tol)?;
    let q = rec.quadric().map_err(|e| ErrorRecord::from_error(&rec.id, &e))?;
    let p = rec
        .point()
        .ok_or_else(|| ErrorRecord::new(&rec.id, "MissingPoint", "record has no point"))?;
    Ok((q, p, tol))
}

fn classify(rec: &QueryRecord, default_tol: f64) -> Line {
    let tol = match record_tol(rec, default_tol) {
        Ok(t) => t,
        Err(e) => return Line::err(&e),
    };
    let q = match rec.quadric() {
        Ok(q) => q,
        Err(e) => return Line::err(&ErrorRecord::from_error(&rec.id, &e)),
    };
    match prepare(&q, tol) {
        Ok((_, _, class)) => Line::ok(&ClassifyRecord::new(&rec.id, class, &invariants_with_tol(&q, tol))),
        Err(e) => Line::err(&ErrorRecord::from_error(&rec.id, &e)),
    }
}

fn proximity(rec: &QueryRecord, default_tol: f64, oracle: Option<usize>) -> Line {
    let (q, p, tol) = match query(rec, default_tol) {
        Ok(v) => v,
        Err(e) => return Line::err(&e),
    };
    let res = match proximity3d(&q, &p, tol) {
        Ok(r) => r,
        Err(e) => return Line::err(&ErrorRecord::from_error(&rec.id, &e)),
    };
    let oracle = match oracle.map(|n| oracle_min_distance_with(&q, &p, n, tol)) {
        Some(Err(e)) => return Line::err(&ErrorRecord::from_error(&rec.id, &e)),
        Some(Ok(v)) => Some(v),
        None => None,
    };
    Line::ok(&ProximityRecord::new(&rec.id, &res, oracle))
}

fn agreement(
    id: &str,
    q: &QuadricCoeffs,
    p: &Vector3<f64>,
    tol: f64,
    resolution: usize,
    published: Option<f64>,
) -> Line {
    let res = match proximity3d(q, p, tol) {
        Ok(r) => r,
        Err(e) => return Line::err(&ErrorRecord::from_error(id, &e)),
    };
    let oracle = match oracle_min_distance_with(q, p, resolution, tol) {
        Ok(v) => v,
        Err(e) => return Line::err(&ErrorRecord::from_error(id, &e)),
    };
    let abs_diff = (res.r_min - oracle).abs();
    let bound = 1e-4f64.max(1e-3 * res.r_min);
    let agree = abs_diff <= bound && published.is_none_or(|r| (res.r_min - r).abs() <= 1e-3);
    Line::new(
        &VerifyRecord {
            id: id.to_owned(),
            class: res.class.kind.name(),
            r_min: res.r_min,
            oracle_r_min: oracle,
            abs_diff,
            bound,
            published_r_min: published,
            agree,
        },
        !agree,
    )
}

fn verify(rec: &QueryRecord, default_tol: f64, resolution: usize) -> Line {
    match query(rec, default_tol) {
        Ok((q, p, tol)) => agreement(&rec.id, &q, &p, tol, resolution, None),
        Err(e) => Line::err(&e),
    }
}

fn verify_reference(case: &ReferenceCase, resolution: usize) -> Line {
    agreement(
        case.name,
        &case.coeffs,
        &case.point,
        REFERENCE_TOL,
        resolution,
        Some(case.r_min),
    )
}

fn bench_cases(
    records: Option<Vec<Parsed>>,
    names: &[String],
    default_tol: f64,
) -> Result<Vec<bench::BenchCase>, String> {
    let mut list = Vec::new();
    match records {
        None => {
            for c in &REFERENCE_CASES {
                list.push(bench::BenchCase {
                    name: c.name.to_owned(),
                    class: c.kind.name(),
                    coeffs: c.coeffs,
                    point: c.point,
                    tol: REFERENCE_TOL,
                });
            }
        }
        Some(recs) => {
            for rec in recs {
                let rec = rec.map_err(|e| format!("{}: {}", e.id, e.message))?;
                let (q, p, tol) = query(&rec, default_tol).map_err(|e| format!("{}: {}", e.id, e.error.message))?;
                let (_, _, class) = prepare(&q, tol).map_err(|e| format!("{}: {e}", rec.id))?;
                list.push(bench::BenchCase {
                    name: rec.id,
                    class: class.kind.name(),
                    coeffs: q,
                    point: p,
                    tol,
                });
            }
        }
    }
    if let Some(missing) = names.iter().find(|n| !list.iter().any(|c| &c.name == *n)) {
        return Err(format!("unknown case {missing}"));
    }
    if !names.is_empty() {
        list.retain(|c| names.contains(&c.name));
    }
    Ok(list)
}
