//! Reference surfaces and query points (coefficients printed to four decimals).

use nalgebra::Vector3;

use crate::algebra::QuadricCoeffs;
use crate::classify::AqKind;

/// One reference query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceCase {
    pub name: &'static str,
    pub kind: AqKind,
    pub coeffs: QuadricCoeffs,
    pub point: Vector3<f64>,
    /// Published minimum distance, to four decimals.
    pub r_min: f64,
}

/// Zero threshold matching the four-decimal rounding of the coefficients.
pub const REFERENCE_TOL: f64 = 1e-4;

const P_CENTRAL: [f64; 3] = [-0.7230, 0.8655, 0.5549];
const P_FAR: [f64; 3] = [6.1658, 1.1438, -0.6710];

#[allow(clippy::too_many_arguments)]
const fn poly(
    a: f64,
    b: f64,
    c: f64,
    kxy: f64,
    kyz: f64,
    kxz: f64,
    kx: f64,
    ky: f64,
    kz: f64,
    d: f64,
) -> QuadricCoeffs {
    QuadricCoeffs::from_array([
        a,
        b,
        c,
        kxy / 2.0,
        kyz / 2.0,
        kxz / 2.0,
        kx / 2.0,
        ky / 2.0,
        kz / 2.0,
        d,
    ])
}

const fn case(
    name: &'static str,
    kind: AqKind,
    coeffs: QuadricCoeffs,
    p: [f64; 3],
    r_min: f64,
) -> ReferenceCase {
    ReferenceCase {
        name,
        kind,
        coeffs,
        point: Vector3::new(p[0], p[1], p[2]),
        r_min,
    }
}

/// The eight reference surfaces, one per axisymmetric type.
pub const REFERENCE_CASES: [ReferenceCase; 8] = [
    case(
        "prolate_spheroid",
        AqKind::ProlateSpheroid,
        poly(1.0, 0.6356, 0.8175, 0.1688, -0.5550, 0.1223, 1.7758, -0.5803, 1.5783, 1.1956),
        P_CENTRAL,
        0.8157,
    ),
    case(
        "oblate_spheroid",
        AqKind::OblateSpheroid,
        poly(1.0, 1.1353, 2.9544, 0.0184, 1.0310, 0.0698, -0.4631, 1.4665, 2.4198, -0.0556),
        P_CENTRAL,
        1.1300,
    ),
    case(
        "hyperboloid_one_sheet",
        AqKind::HyperboloidOneSheet,
        poly(1.0, -1.5451, -0.2746, 1.1787, -3.8765, 0.8541, 2.1749, -1.5747, 1.0761, 0.7673),
        P_CENTRAL,
        0.8418,
    ),
    case(
        "hyperboloid_two_sheets",
        AqKind::HyperboloidTwoSheets,
        poly(1.0, -1.1826, -0.0930, 1.0109, -3.3244, 0.7325, 2.1086, -1.4094, 1.1596, 2.1724),
        P_CENTRAL,
        0.4933,
    ),
    case(
        "paraboloid",
        AqKind::Paraboloid,
        poly(1.0, 0.9884, 0.02411, 0.0211, 0.2648, -0.1568, -1.5177, 0.3121, -6.3089, -0.3723),
        P_FAR,
        3.1161,
    ),
    case(
        "cylinder",
        AqKind::CylinderReal,
        poly(1.0, 0.5766, 0.4321, 0.0864, -0.9895, 0.0999, 0.7423, 0.0880, -0.0113, -5.6730),
        P_FAR,
        4.2691,
    ),
    case(
        "cone",
        AqKind::ConeReal,
        poly(1.0, 0.1537, 0.5762, 0.3920, -1.2890, 0.2840, 1.8640, -0.8000, 1.4673, 1.4891),
        P_CENTRAL,
        0.0524,
    ),
    case(
        "sphere",
        AqKind::SphereReal,
        poly(1.0, 1.0, 1.0, 0.0, 0.0, 0.0, -0.4950, 1.0004, 0.6503, -0.4538),
        P_CENTRAL,
        0.9592,
    ),
];

/// Looks up a reference case by name.
pub fn reference_case(name: &str) -> Option<&'static ReferenceCase> {
    REFERENCE_CASES.iter().find(|c| c.name == name)
}
