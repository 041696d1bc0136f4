//! Query records from JSON-lines or CSV.

use std::io::Read;

use quadprox::{QuadricCoeffs, Vector3};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub f: f64,
    pub g: f64,
    pub h: f64,
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub d: f64,
}

impl Coeffs {
    fn to_array(self) -> [f64; 10] {
        [
            self.a, self.b, self.c, self.f, self.g, self.h, self.p, self.q, self.r, self.d,
        ]
    }
}

/// One input line.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryRecord {
    pub id: String,
    pub coeffs: Coeffs,
    #[serde(default)]
    pub point: Option<[f64; 3]>,
    #[serde(default)]
    pub tol: Option<f64>,
}

impl QueryRecord {
    pub fn quadric(&self) -> quadprox::Result<QuadricCoeffs> {
        QuadricCoeffs::new(self.coeffs.to_array())
    }

    pub fn point(&self) -> Option<Vector3<f64>> {
        self.point.map(Vector3::from)
    }
}

/// A record that could not be parsed, with the best id available.
#[derive(Debug, Clone)]
pub struct ParseFailure {
    pub id: String,
    pub message: String,
}

pub type Parsed = Result<QueryRecord, ParseFailure>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn read_source(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

pub fn parse(text: &str, format: Format) -> Vec<Parsed> {
    match format {
        Format::Json => parse_json_lines(text),
        Format::Csv => parse_csv(text),
    }
}

fn parse_json_lines(text: &str) -> Vec<Parsed> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| {
            serde_json::from_str::<QueryRecord>(line).map_err(|e| {
                let id = serde_json::from_str::<serde_json::Value>(line)
                    .ok()
                    .and_then(|v| v.get("id").and_then(|id| id.as_str()).map(str::to_owned))
                    .unwrap_or_else(|| format!("line {}", i + 1));
                ParseFailure {
                    id,
                    message: e.to_string(),
                }
            })
        })
        .collect()
}

#[derive(Debug, Deserialize)]
struct CsvRow {
    id: String,
    a: f64,
    b: f64,
    c: f64,
    f: f64,
    g: f64,
    h: f64,
    p: f64,
    q: f64,
    r: f64,
    d: f64,
    x: Option<f64>,
    y: Option<f64>,
    z: Option<f64>,
    tol: Option<f64>,
}

pub const CSV_HEADER: [&str; 15] = [
    "id", "a", "b", "c", "f", "g", "h", "p", "q", "r", "d", "x", "y", "z", "tol",
];

fn parse_csv(text: &str) -> Vec<Parsed> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let header_ok = reader
        .headers()
        .map(|h| h.iter().eq(CSV_HEADER.iter().copied()))
        .unwrap_or(false);
    if !header_ok {
        return vec![Err(ParseFailure {
            id: "header".into(),
            message: format!("expected CSV header {}", CSV_HEADER.join(",")),
        })];
    }
    reader
        .records()
        .enumerate()
        .map(|(i, rec)| {
            let fallback = || format!("row {}", i + 1);
            let rec = rec.map_err(|e| ParseFailure {
                id: fallback(),
                message: e.to_string(),
            })?;
            let id = rec.get(0).filter(|s| !s.is_empty()).map(str::to_owned).unwrap_or_else(fallback);
            let row: CsvRow = rec.deserialize(None).map_err(|e| ParseFailure {
                id: id.clone(),
                message: e.to_string(),
            })?;
            let point = match (row.x, row.y, row.z) {
                (Some(x), Some(y), Some(z)) => Some([x, y, z]),
                (None, None, None) => None,
                _ => {
                    return Err(ParseFailure {
                        id,
                        message: "point needs all of x, y, z".into(),
                    })
                }
            };
            Ok(QueryRecord {
                id: row.id,
                coeffs: Coeffs {
                    a: row.a,
                    b: row.b,
                    c: row.c,
                    f: row.f,
                    g: row.g,
                    h: row.h,
                    p: row.p,
                    q: row.q,
                    r: row.r,
                    d: row.d,
                },
                point,
                tol: row.tol,
            })
        })
        .collect()
}
