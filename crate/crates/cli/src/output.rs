//! Serializable output records.

use quadprox::{ConicParams, Error, ProximityResult, QuadricInvariants};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub id: String,
    pub error: ErrorBody,
}

impl ErrorRecord {
    pub fn from_error(id: &str, e: &Error) -> Self {
        Self::new(id, e.kind(), e.to_string())
    }

    pub fn new(id: &str, kind: &str, message: impl Into<String>) -> Self {
        Self {
            id: id.to_owned(),
            error: ErrorBody {
                kind: kind.to_owned(),
                message: message.into(),
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ClassifyRecord {
    pub id: String,
    pub class: &'static str,
    pub central: bool,
    #[serde(rename = "J1")]
    pub j1: f64,
    #[serde(rename = "J2")]
    pub j2: f64,
    #[serde(rename = "J3")]
    pub j3: f64,
    pub det_a: f64,
    pub a0: f64,
    pub delta: f64,
    pub lambda12: Option<f64>,
    pub lambda3: Option<f64>,
}

impl ClassifyRecord {
    pub fn new(id: &str, class: quadprox::AqClass, inv: &QuadricInvariants) -> Self {
        Self {
            id: id.to_owned(),
            class: class.kind.name(),
            central: class.central,
            j1: inv.j1,
            j2: inv.j2,
            j3: inv.j3,
            det_a: inv.det_a,
            a0: inv.a0,
            delta: inv.delta,
            lambda12: inv.lambda12,
            lambda3: inv.lambda3,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ProximityRecord {
    pub id: String,
    pub class: &'static str,
    pub pc: [f64; 3],
    pub v3: [f64; 3],
    pub conic: &'static str,
    /// Semi-axis along the conic's major axis; ellipses and hyperbolas only.
    pub n: Option<f64>,
    /// Eccentricity; `null` for line pairs, whose eccentricity is infinite.
    pub e: Option<f64>,
    pub pp: [f64; 2],
    pub case: &'static str,
    pub t_j: Vec<f64>,
    pub r_j: Vec<f64>,
    pub footpoints3d: Vec<[f64; 3]>,
    pub nearest: [f64; 3],
    pub r_min: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_r_min: Option<f64>,
}

fn arr3(v: &quadprox::Vector3<f64>) -> [f64; 3] {
    [v.x, v.y, v.z]
}

impl ProximityRecord {
    pub fn new(id: &str, res: &ProximityResult, oracle: Option<f64>) -> Self {
        let n = match res.conic.params {
            ConicParams::Ellipse { n, .. } | ConicParams::Hyperbola { n, .. } => Some(n),
            _ => None,
        };
        Self {
            id: id.to_owned(),
            class: res.class.kind.name(),
            pc: arr3(&res.frame.pc),
            v3: arr3(&res.frame.v3),
            conic: res.conic.kind().name(),
            n,
            e: res.conic.e,
            pp: [res.pp.x, res.pp.y],
            case: res.planar.case.label(),
            t_j: res.planar.params.to_vec(),
            r_j: res.planar.distances.to_vec(),
            footpoints3d: res.footpoints3d.iter().map(arr3).collect(),
            nearest: arr3(&res.nearest_point()),
            r_min: res.r_min,
            oracle_r_min: oracle,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyRecord {
    pub id: String,
    pub class: &'static str,
    pub r_min: f64,
    pub oracle_r_min: f64,
    pub abs_diff: f64,
    pub bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub published_r_min: Option<f64>,
    pub agree: bool,
}

#[derive(Debug, Serialize)]
pub struct BenchRecord {
    pub case: String,
    pub class: &'static str,
    pub cycles: u64,
    pub median_ns: f64,
    pub mean_ns: f64,
}
