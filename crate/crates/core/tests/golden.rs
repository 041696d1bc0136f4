//! Published reference values for the eight sample surfaces, checked to the
//! printed four decimals (1e-3 absolute).

use approx::assert_abs_diff_eq;
use nalgebra::{Vector2, Vector3};
use quadprox::corpus::{reference_case, REFERENCE_CASES, REFERENCE_TOL};
use quadprox::engine::oracle_min_distance_with;
use quadprox::{invariants, prepare, proximity3d, ConicParams, ProximityResult};

const TOL: f64 = 1e-3;

fn run(name: &str) -> ProximityResult {
    let case = reference_case(name).unwrap();
    proximity3d(&case.coeffs, &case.point, REFERENCE_TOL).unwrap()
}

fn assert_abs_components(got: &[f64], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len());
    for (g, w) in got.iter().zip(want) {
        assert!((g.abs() - w.abs()).abs() <= tol, "{got:?} vs {want:?}");
    }
}

/// Root sets agree up to ordering and a global sign, which depends on the
/// orientation chosen for the axis.
fn assert_params(got: &[f64], want: &[f64]) {
    let sort = |v: Vec<f64>| {
        let mut v = v;
        v.sort_by(f64::total_cmp);
        v
    };
    let want = sort(want.to_vec());
    let plain = sort(got.to_vec());
    let flipped = sort(got.iter().map(|t| -t).collect());
    let close = |v: &[f64]| v.len() == want.len() && v.iter().zip(&want).all(|(a, b)| (a - b).abs() <= TOL);
    assert!(close(&plain) || close(&flipped), "{got:?} vs {want:?}");
}

fn assert_distances(got: &[f64], want: &[f64]) {
    let mut got = got.to_vec();
    let mut want = want.to_vec();
    got.sort_by(f64::total_cmp);
    want.sort_by(f64::total_cmp);
    assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
    for (g, w) in got.iter().zip(&want) {
        assert_abs_diff_eq!(g, w, epsilon = TOL);
    }
}

#[test]
fn invariants_match_published_table() {
    // (name, det A, J3, λ12, λ3)
    let rows = [
        ("prolate_spheroid", -0.1204, 0.4315, 1.0186, 0.4159),
        ("oblate_spheroid", -2.6952, 3.0871, 0.9994, 3.0910),
        ("hyperboloid_one_sheet", 3.0356, -3.9310, 1.1299, -3.0794),
        ("hyperboloid_two_sheets", -1.9864, -3.0858, 1.1114, -2.4984),
        ("paraboloid", -10.3493, 0.0, 1.0063, 0.0),
        ("cylinder", 0.0, 0.0, 1.0044, 0.0),
        ("cone", 0.0, -0.3879, 1.0432, -0.3564),
        ("sphere", -0.8710, 1.0, 1.0, 1.0),
    ];
    for (name, det_a, j3, l12, l3) in rows {
        let inv = invariants(&reference_case(name).unwrap().coeffs);
        assert_abs_diff_eq!(inv.det_a, det_a, epsilon = TOL);
        assert_abs_diff_eq!(inv.j3, j3, epsilon = TOL);
        assert_abs_diff_eq!(inv.lambda12.unwrap(), l12, epsilon = TOL);
        assert_abs_diff_eq!(inv.lambda3.unwrap(), l3, epsilon = TOL);
        assert!(inv.delta.abs() < 1e-3, "{name}: delta {}", inv.delta);
    }
}

#[test]
fn every_reference_surface_gets_its_label() {
    for case in &REFERENCE_CASES {
        let (_, _, cls) = prepare(&case.coeffs, REFERENCE_TOL).unwrap();
        assert_eq!(cls.kind, case.kind, "{}", case.name);
    }
}

#[test]
fn prolate_spheroid() {
    let r = run("prolate_spheroid");
    assert_abs_components(r.frame.pc.as_slice(), &[-0.8546, 0.2070, -0.8311], TOL);
    let (_, n) = r.conic.semi_axes().unwrap();
    assert_abs_diff_eq!(n, 0.8192, epsilon = TOL);
    assert_abs_diff_eq!(r.conic.e.unwrap(), 0.7692, epsilon = TOL);
    assert_abs_components(r.pp.as_slice(), &[0.8220, 1.3024], TOL);
    assert_params(&r.planar.params, &[0.4646, -0.4169]);
    assert_distances(&r.planar.distances, &[2.3025, 0.8157]);
    assert_abs_diff_eq!(r.r_min, 0.8157, epsilon = TOL);
}

#[test]
fn oblate_spheroid() {
    let r = run("oblate_spheroid");
    assert_abs_components(r.frame.pc.as_slice(), &[0.2475, -0.5002, -0.3252], TOL);
    let (_, n) = r.conic.semi_axes().unwrap();
    assert_abs_diff_eq!(n, 0.9347, epsilon = TOL);
    assert_abs_diff_eq!(r.conic.e.unwrap(), 0.8226, epsilon = TOL);
    assert!(r.conic.rotated);
    assert_abs_components(r.pp.as_slice(), &[1.1823, 1.4778], TOL);
    assert_params(&r.planar.params, &[-0.6018, 0.5180]);
    assert_distances(&r.planar.distances, &[2.7229, 1.1300]);
    assert_abs_diff_eq!(r.r_min, 1.1300, epsilon = TOL);
}

#[test]
fn hyperboloid_of_one_sheet() {
    let r = run("hyperboloid_one_sheet");
    // The printed center drops the sign of its first component.
    assert_abs_components(r.frame.pc.as_slice(), &[0.8546, 0.2070, -0.8311], TOL);
    let (_, n) = r.conic.semi_axes().unwrap();
    assert_abs_diff_eq!(n, 0.8267, epsilon = TOL);
    assert_abs_diff_eq!(r.conic.e.unwrap(), 1.1692, epsilon = TOL);
    assert_abs_components(r.pp.as_slice(), &[1.3024, 0.8220], TOL);
    assert_params(&r.planar.params, &[-1.2247, 1.8263]);
    assert_distances(&r.planar.distances, &[2.0363, 0.8418]);
    assert_abs_diff_eq!(r.r_min, 0.8418, epsilon = TOL);
}

#[test]
fn hyperboloid_of_two_sheets() {
    let r = run("hyperboloid_two_sheets");
    assert_abs_components(r.frame.pc.as_slice(), &[-0.8546, 0.2070, -0.8311], TOL);
    let (_, n) = r.conic.semi_axes().unwrap();
    assert_abs_diff_eq!(n, 0.5076, epsilon = TOL);
    assert_abs_diff_eq!(r.conic.e.unwrap(), 1.8022, epsilon = TOL);
    assert_abs_components(r.pp.as_slice(), &[0.8220, 1.3024], TOL);
    assert_params(&r.planar.params, &[1.7968, -2.8212]);
    // The larger distance is printed as 1.19198; 1.9198 fits the other columns.
    assert_distances(&r.planar.distances, &[1.9198, 0.4933]);
    assert_abs_diff_eq!(r.r_min, 0.4933, epsilon = TOL);
}

#[test]
fn paraboloid() {
    let r = run("paraboloid");
    assert_abs_components(r.frame.pc.as_slice(), &[0.4950, 0.2826, -0.1122], TOL);
    assert_eq!(r.conic.e, Some(1.0));
    assert_abs_components(r.pp.as_slice(), &[5.7589, -0.2196], TOL);
    assert_params(&r.planar.params, &[5.0642]);
    assert_abs_diff_eq!(r.r_min, 3.1161, epsilon = TOL);
}

#[test]
fn cylinder() {
    let r = run("cylinder");
    assert_eq!(r.conic.e, None);
    assert!(matches!(r.conic.params, ConicParams::ParallelLines { .. }));
    assert!(r.planar.params.is_empty());
    assert_abs_diff_eq!(r.pp.x, 6.6747, epsilon = TOL);
    // The axis point is pinned at x = 1. Its other two coordinates sit far
    // along a nearly flat axis, so four-decimal input rounding moves them
    // by about 6e-3.
    assert_abs_diff_eq!(r.frame.pc.x, 1.0, epsilon = 1e-12);
    assert_abs_components(&r.frame.pc.as_slice()[1..], &[13.6017, 15.6763], 1e-2);
    assert_abs_diff_eq!(r.r_min, 4.2691, epsilon = TOL);
}

#[test]
fn cone() {
    let r = run("cone");
    assert_eq!(r.conic.e, None);
    assert!(matches!(r.conic.params, ConicParams::IntersectingLines { .. }));
    assert_abs_components(r.frame.pc.as_slice(), &[-0.8546, 0.2070, -0.8311], TOL);
    assert_abs_components(r.pp.as_slice(), &[0.8220, 1.3024], TOL);
    assert_distances(&r.planar.distances, &[0.0524, 1.3669]);
    assert_abs_diff_eq!(r.r_min, 0.0524, epsilon = TOL);
}

#[test]
fn sphere() {
    let r = run("sphere");
    assert_abs_components(r.frame.pc.as_slice(), &[0.2475, -0.5002, -0.3252], TOL);
    assert_eq!(r.conic.e, Some(0.0));
    assert_abs_components(r.pp.as_slice(), &[1.6754, 0.8801], TOL);
    assert_distances(&r.planar.distances, &[0.9592, 2.8258]);
    assert_abs_diff_eq!(r.r_min, 0.9592, epsilon = TOL);
}

#[test]
fn reference_distances_agree_with_sampling_oracle() {
    for case in &REFERENCE_CASES {
        let r = proximity3d(&case.coeffs, &case.point, REFERENCE_TOL).unwrap();
        let o = oracle_min_distance_with(&case.coeffs, &case.point, 300, REFERENCE_TOL).unwrap();
        assert!((r.r_min - o).abs() <= 1e-4, "{}: {} vs {o}", case.name, r.r_min);
    }
}

#[test]
fn nearest_point_realizes_minimum() {
    for case in &REFERENCE_CASES {
        let r = proximity3d(&case.coeffs, &case.point, REFERENCE_TOL).unwrap();
        assert_abs_diff_eq!((r.nearest_point() - case.point).norm(), r.r_min, epsilon = 1e-9);
    }
}

#[test]
fn planar_projection_preserves_distance_to_center() {
    for case in &REFERENCE_CASES {
        let r = proximity3d(&case.coeffs, &case.point, REFERENCE_TOL).unwrap();
        let l: Vector3<f64> = case.point - r.frame.pc;
        let pp: Vector2<f64> = r.pp;
        assert_abs_diff_eq!(l.norm(), pp.norm(), epsilon = 1e-9);
    }
}
