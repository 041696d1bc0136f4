//! Timing of end-to-end queries.

use std::hint::black_box;
use std::time::Instant;

use quadprox::{proximity3d, QuadricCoeffs, Vector3};

use crate::output::BenchRecord;

pub struct BenchCase {
    pub name: String,
    pub class: &'static str,
    pub coeffs: QuadricCoeffs,
    pub point: Vector3<f64>,
    pub tol: f64,
}

const MAX_BATCHES: u64 = 101;

/// Runs `cycles` queries split into up to 101 batches; the median is taken
/// over per-batch averages.
pub fn run(case: &BenchCase, cycles: u64) -> BenchRecord {
    let batches = cycles.min(MAX_BATCHES);
    let mut per_batch = Vec::with_capacity(batches as usize);
    let mut total_ns = 0.0;
    for i in 0..batches {
        let size = cycles / batches + u64::from(i < cycles % batches);
        let start = Instant::now();
        for _ in 0..size {
            let _ = black_box(proximity3d(black_box(&case.coeffs), black_box(&case.point), case.tol));
        }
        let ns = start.elapsed().as_nanos() as f64;
        total_ns += ns;
        per_batch.push(ns / size as f64);
    }
    per_batch.sort_by(f64::total_cmp);
    BenchRecord {
        case: case.name.clone(),
        class: case.class,
        cycles,
        median_ns: per_batch[per_batch.len() / 2],
        mean_ns: total_ns / cycles as f64,
    }
}
