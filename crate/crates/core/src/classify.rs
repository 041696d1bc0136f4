//! Decision tree mapping quadric invariants to an axisymmetric type.

use std::fmt;

use crate::algebra::{QuadricCoeffs, QuadricInvariants};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AqKind {
    ProlateSpheroid,
    OblateSpheroid,
    SpheroidImaginary,
    SphereReal,
    SphereImaginary,
    HyperboloidOneSheet,
    HyperboloidTwoSheets,
    ConeReal,
    ConeImaginary,
    Paraboloid,
    CylinderReal,
    CylinderImaginary,
    NonAxisymmetric,
}

impl AqKind {
    pub const ALL: [AqKind; 13] = [
        AqKind::ProlateSpheroid,
        AqKind::OblateSpheroid,
        AqKind::SpheroidImaginary,
        AqKind::SphereReal,
        AqKind::SphereImaginary,
        AqKind::HyperboloidOneSheet,
        AqKind::HyperboloidTwoSheets,
        AqKind::ConeReal,
        AqKind::ConeImaginary,
        AqKind::Paraboloid,
        AqKind::CylinderReal,
        AqKind::CylinderImaginary,
        AqKind::NonAxisymmetric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AqKind::ProlateSpheroid => "ProlateSpheroid",
            AqKind::OblateSpheroid => "OblateSpheroid",
            AqKind::SpheroidImaginary => "SpheroidImaginary",
            AqKind::SphereReal => "SphereReal",
            AqKind::SphereImaginary => "SphereImaginary",
            AqKind::HyperboloidOneSheet => "HyperboloidOneSheet",
            AqKind::HyperboloidTwoSheets => "HyperboloidTwoSheets",
            AqKind::ConeReal => "ConeReal",
            AqKind::ConeImaginary => "ConeImaginary",
            AqKind::Paraboloid => "Paraboloid",
            AqKind::CylinderReal => "CylinderReal",
            AqKind::CylinderImaginary => "CylinderImaginary",
            AqKind::NonAxisymmetric => "NonAxisymmetric",
        }
    }

    /// True for surfaces without real points.
    pub fn is_imaginary(self) -> bool {
        matches!(
            self,
            AqKind::SpheroidImaginary
                | AqKind::SphereImaginary
                | AqKind::ConeImaginary
                | AqKind::CylinderImaginary
        )
    }

    pub fn is_central(self) -> bool {
        !matches!(
            self,
            AqKind::Paraboloid | AqKind::CylinderReal | AqKind::CylinderImaginary
        )
    }
}

impl fmt::Display for AqKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AqClass {
    pub kind: AqKind,
    /// False for paraboloids and cylinders.
    pub central: bool,
}

/// Sum of the 3×3 principal minors of the homogeneous matrix that contain its
/// last row and column. For a cylinder (`J3 = det(A) = 0`) this is invariant
/// under rigid motions and its sign against `J1` separates real from empty.
pub fn cylinder_semi_invariant(q: &QuadricCoeffs) -> f64 {
    let QuadricCoeffs {
        a,
        b,
        c,
        f,
        g,
        h,
        p,
        q: qq,
        r,
        d,
    } = *q;
    let m3 = |x11: f64, x12: f64, x13: f64, x22: f64, x23: f64, x33: f64| {
        x11 * (x22 * x33 - x23 * x23) - x12 * (x12 * x33 - x23 * x13) + x13 * (x12 * x23 - x22 * x13)
    };
    m3(a, f, p, b, qq, d) + m3(a, h, p, c, r, d) + m3(b, g, qq, c, r, d)
}

/// Classifies `q` given its invariants.
///
/// Coefficients are taken as divided by `±‖q‖∞`, with the sign chosen so the
/// repeated eigenvalue is positive. Each zero test is applied to a quantity
/// that is unchanged by translation: the distinct eigenvalue `λ3` for central
/// versus non-central, the constant term at the center `det(A)/J3` for cones,
/// and `det(A)/λ12²` for paraboloids versus cylinders. Factors coming from the
/// quadratic part are measured against its own Frobenius norm, so the tests
/// reduce to `|det(A)| ≤ tol`, `|J3| ≤ tol` when all coefficients are of
/// similar magnitude.
pub fn classify(inv: &QuadricInvariants, q: &QuadricCoeffs, tol: f64) -> AqClass {
    let s = q.max_abs();
    let sb = quadratic_norm(inv);
    let non_axisymmetric = AqClass {
        kind: AqKind::NonAxisymmetric,
        central: inv.j3.abs() > tol * sb.powi(3),
    };
    let (Some(l12), Some(l3)) = (inv.lambda12, inv.lambda3) else {
        return non_axisymmetric;
    };
    if s == 0.0 || l12.abs() <= tol * sb {
        return non_axisymmetric;
    }
    let k = l12.signum() / s;
    let j1 = inv.j1 * k;
    let j3 = inv.j3 * k.powi(3);
    let det = inv.det_a * k.powi(4);
    let (l12, l3, sb) = (l12 * k, l3 * k, sb / s);
    let zero = |x: f64| x.abs() <= tol;

    let central = !zero(l3 / sb);
    let kind = if !central {
        if zero(det / (l12 * l12)) {
            let semi = cylinder_semi_invariant(q) * k.powi(3);
            if !zero(semi / (l12 * l12)) && semi * j1 < 0.0 {
                AqKind::CylinderReal
            } else {
                AqKind::CylinderImaginary
            }
        } else {
            AqKind::Paraboloid
        }
    } else if zero(det / j3) {
        if j3 < 0.0 {
            AqKind::ConeReal
        } else {
            AqKind::ConeImaginary
        }
    } else if zero((l12 - l3) / sb) {
        if det < 0.0 {
            AqKind::SphereReal
        } else {
            AqKind::SphereImaginary
        }
    } else if j3 < 0.0 {
        if det < 0.0 {
            AqKind::HyperboloidTwoSheets
        } else {
            AqKind::HyperboloidOneSheet
        }
    } else if det < 0.0 {
        if l12.abs() > l3.abs() {
            AqKind::ProlateSpheroid
        } else {
            AqKind::OblateSpheroid
        }
    } else {
        AqKind::SpheroidImaginary
    };
    AqClass {
        kind,
        central: kind.is_central(),
    }
}

/// Frobenius norm of the quadratic part, `√(J1² − 2J2)`.
fn quadratic_norm(inv: &QuadricInvariants) -> f64 {
    (inv.j1 * inv.j1 - 2.0 * inv.j2).max(0.0).sqrt()
}
