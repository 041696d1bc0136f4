//! Reduction of an axisymmetric quadric and a query point to a conic and a
//! point in the plane that contains both the axis and the query point.

use nalgebra::{Matrix3, Vector2, Vector3};

use crate::algebra::{QuadricCoeffs, QuadricInvariants};
use crate::classify::{AqClass, AqKind};
use crate::error::{Error, Result};

/// Relative size of `‖(p0 − pc) × v3‖` below which the query point is
/// treated as lying on the axis.
const COLLINEAR_REL_TOL: f64 = 1e-12;

/// Local frame attached to the axis of symmetry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxialFrame {
    /// Center, vertex, or (for cylinders) a point on the axis.
    pub pc: Vector3<f64>,
    /// Unit axis direction.
    pub v3: Vector3<f64>,
    pub u1: Vector3<f64>,
    /// Equal to `v3`.
    pub u2: Vector3<f64>,
    /// Normal of the plane holding the axis and the query point.
    pub u3: Vector3<f64>,
    /// Value of the quadric at `pc`. For a cylinder it is taken at the axis
    /// point level with the query point instead.
    pub gamma: f64,
    /// Linear term of the meridian parabola; paraboloids only.
    pub gamma_l: Option<f64>,
    /// True when the query point lay on the axis and `u3` was chosen by convention.
    pub collinear: bool,
}

impl AxialFrame {
    /// Rotation with columns `u1, u2, u3`.
    pub fn rotation(&self) -> Matrix3<f64> {
        Matrix3::from_columns(&[self.u1, self.u2, self.u3])
    }

    /// Maps a planar point back to space, undoing the quarter turn applied to
    /// rotated conics.
    pub fn lift(&self, p: &Vector2<f64>, rotated: bool) -> Vector3<f64> {
        let (x, y) = if rotated { (p.y, -p.x) } else { (p.x, p.y) };
        self.pc + self.u1 * x + self.u2 * y
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConicKind {
    Circle,
    EllipseMajorU2,
    HyperbolaMajorU2,
    Parabola,
    IntersectingLines,
    ParallelLines,
}

impl ConicKind {
    pub fn name(self) -> &'static str {
        match self {
            ConicKind::Circle => "Circle",
            ConicKind::EllipseMajorU2 => "EllipseMajorU2",
            ConicKind::HyperbolaMajorU2 => "HyperbolaMajorU2",
            ConicKind::Parabola => "Parabola",
            ConicKind::IntersectingLines => "IntersectingLines",
            ConicKind::ParallelLines => "ParallelLines",
        }
    }
}

/// Shape parameters of a meridian conic in its standard position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConicParams {
    /// `u1² + u2² = r0²`
    Circle { r0: f64 },
    /// `u1²/m² + u2²/n² = 1` with `n > m`.
    Ellipse { m: f64, n: f64 },
    /// `u2²/n² − u1²/m² = 1`
    Hyperbola { m: f64, n: f64 },
    /// `u1² = 4·focal·u2`
    Parabola { focal: f64 },
    /// `m1·u1² = u2²`
    IntersectingLines { m1: f64 },
    /// `u1² = m²`
    ParallelLines { m: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicForm {
    pub params: ConicParams,
    /// Eccentricity; absent for line pairs.
    pub e: Option<f64>,
    /// True when the planar frame was turned a quarter turn clockwise so the
    /// major (transverse) axis lies along `u2`.
    pub rotated: bool,
}

impl ConicForm {
    pub fn kind(&self) -> ConicKind {
        match self.params {
            ConicParams::Circle { .. } => ConicKind::Circle,
            ConicParams::Ellipse { .. } => ConicKind::EllipseMajorU2,
            ConicParams::Hyperbola { .. } => ConicKind::HyperbolaMajorU2,
            ConicParams::Parabola { .. } => ConicKind::Parabola,
            ConicParams::IntersectingLines { .. } => ConicKind::IntersectingLines,
            ConicParams::ParallelLines { .. } => ConicKind::ParallelLines,
        }
    }

    /// Scale-free implicit value: zero on the curve.
    pub fn eval(&self, p: &Vector2<f64>) -> f64 {
        let (x, y) = (p.x, p.y);
        match self.params {
            ConicParams::Circle { r0 } => (x * x + y * y) / (r0 * r0) - 1.0,
            ConicParams::Ellipse { m, n } => x * x / (m * m) + y * y / (n * n) - 1.0,
            ConicParams::Hyperbola { m, n } => y * y / (n * n) - x * x / (m * m) - 1.0,
            ConicParams::Parabola { focal } => (x * x - 4.0 * focal * y) / (focal * focal),
            ConicParams::IntersectingLines { m1 } => (m1 * x * x - y * y) / (1.0 + m1),
            ConicParams::ParallelLines { m } => x * x / (m * m) - 1.0,
        }
    }

    /// Semi-axis lengths `(m, n)` of an ellipse or hyperbola.
    pub fn semi_axes(&self) -> Option<(f64, f64)> {
        match self.params {
            ConicParams::Ellipse { m, n } | ConicParams::Hyperbola { m, n } => Some((m, n)),
            _ => None,
        }
    }
}

/// Unit direction of the axis of symmetry: the null vector of `λ3·I − B`.
///
/// Rows of that matrix are eliminated against the row with a nonzero leading
/// entry and largest norm; the axis is the cross product of the pivot row
/// with the largest eliminated row. When the matrix vanishes (sphere) the
/// axis is `[0,0,1]`. The sign is fixed so that the component sum is
/// nonnegative.
pub fn axis_of_symmetry(q: &QuadricCoeffs, lambda3: f64) -> Vector3<f64> {
    let b1 = Matrix3::identity() * lambda3 - q.b_matrix();
    let scale = q.b_matrix().abs().max().max(lambda3.abs());
    let b1max = b1.abs().max();
    if b1max <= 1e-9 * scale {
        return Vector3::z();
    }
    let rows = [
        b1.row(0).transpose(),
        b1.row(1).transpose(),
        b1.row(2).transpose(),
    ];

    let residual_ok = |v: &Vector3<f64>| (b1 * v).norm() <= 1e-8 * b1max * v.norm();
    let from_elimination = || -> Option<Vector3<f64>> {
        let pivot = (0..3)
            .filter(|&i| rows[i].x.abs() > 1e-12 * b1max)
            .max_by(|&i, &j| rows[i].norm().total_cmp(&rows[j].norm()));
        let Some(i) = pivot else {
            return Some(Vector3::x());
        };
        let w1 = rows[i];
        let others: Vec<Vector3<f64>> = (0..3)
            .filter(|&j| j != i)
            .map(|j| rows[j] * w1.x - w1 * rows[j].x)
            .collect();
        let w = if others[0].norm() >= others[1].norm() {
            others[0]
        } else {
            others[1]
        };
        if w.norm() <= 1e-9 * w1.norm_squared() {
            Some(Vector3::new(-(w1.y + w1.z) / w1.x, 1.0, 1.0))
        } else {
            Some(w1.cross(&w))
        }
    };

    let mut v = from_elimination()
        .map(|v| v.normalize())
        .filter(|v| v.iter().all(|x| x.is_finite()) && residual_ok(v))
        .unwrap_or_else(|| {
            let pairs = [(0, 1), (0, 2), (1, 2)];
            pairs
                .iter()
                .map(|&(i, j)| rows[i].cross(&rows[j]))
                .max_by(|x, y| x.norm_squared().total_cmp(&y.norm_squared()))
                .unwrap()
                .normalize()
        });
    orient(&mut v);
    v
}

/// Flips `v` so its component sum is nonnegative, or on a tie so its first
/// nonzero component is positive.
fn orient(v: &mut Vector3<f64>) {
    let s = v.x + v.y + v.z;
    let flip = if s.abs() > 1e-14 {
        s < 0.0
    } else {
        v.iter().find(|x| **x != 0.0).is_some_and(|x| *x < 0.0)
    };
    if flip {
        *v = -*v;
    }
}

/// Solves `B x + c = μ v3` for the two coordinates other than `k`, with
/// coordinate `k` fixed to `value`; returns `None` for a singular system.
fn axis_point_fixing(
    q: &QuadricCoeffs,
    v3: &Vector3<f64>,
    k: usize,
    value: f64,
) -> Option<Vector3<f64>> {
    let b = q.b_matrix();
    let (i, j) = match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let m = Matrix3::from_columns(&[b.column(i).into_owned(), b.column(j).into_owned(), -v3]);
    let rhs = -q.c_vector() - b.column(k) * value;
    let det = m.determinant();
    let norm = b.abs().max();
    if det.abs() <= 1e-6 * norm * norm {
        return None;
    }
    let solve = |col: usize| {
        let mut mm = m;
        mm.set_column(col, &rhs);
        mm.determinant() / det
    };
    let mut x = Vector3::zeros();
    x[k] = value;
    x[i] = solve(0);
    x[j] = solve(1);
    Some(x)
}

/// Center of a central quadric, vertex of a paraboloid, or a point on the
/// axis of a cylinder.
pub fn center_or_vertex(
    q: &QuadricCoeffs,
    cls: &AqClass,
    v3: &Vector3<f64>,
    lambda12: f64,
) -> Vector3<f64> {
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
    if cls.central {
        let j3 = a * (b * c - g * g) - c * f * f + h * (2.0 * f * g - b * h);
        let (c11, c12, c13) = (b * c - g * g, g * h - c * f, f * g - b * h);
        let (c22, c23, c33) = (a * c - h * h, f * h - a * g, a * b - f * f);
        return -Vector3::new(
            c11 * p + c12 * qq + c13 * r,
            c12 * p + c22 * qq + c23 * r,
            c13 * p + c23 * qq + c33 * r,
        ) / j3;
    }

    let aligned = |i: usize| v3[i].abs() >= 1.0 - 1e-12;
    let paraboloid = cls.kind == AqKind::Paraboloid;
    if paraboloid {
        if aligned(2) {
            return -Vector3::new(p, qq, -(p * p + qq * qq - b * d) / (2.0 * r)) / b;
        }
        if aligned(1) {
            return -Vector3::new(p, -(p * p + r * r - c * d) / (2.0 * qq), r) / c;
        }
        if aligned(0) {
            return -Vector3::new(-(qq * qq + r * r - b * d) / (2.0 * p), qq, r) / b;
        }
    } else {
        if aligned(0) {
            return Vector3::new(1.0, -qq / b, -r / b);
        }
        if aligned(1) {
            return Vector3::new(-p / c, 1.0, -r / c);
        }
        if aligned(2) {
            return Vector3::new(-p / b, -qq / b, 1.0);
        }
    }

    let delta1 = v3.x * (b * c - g * g) + v3.y * (g * h - c * f) + v3.z * (f * g - b * h);
    let general = if delta1.abs() > 1e-6 * lambda12 * lambda12 {
        if paraboloid {
            axis_point_fixing(q, v3, 0, 0.0).and_then(|base| {
                let dir = axis_point_fixing(q, v3, 0, 1.0)? - base;
                let a3 = 2.0 * dir.dot(&(q.b_matrix() * base + q.c_vector()));
                let a4 = q.eval(&base);
                Some(base + dir * (-a4 / a3))
            })
        } else {
            axis_point_fixing(q, v3, 0, 1.0)
        }
    } else {
        None
    };
    general.unwrap_or_else(|| {
        let c = q.c_vector();
        let axial = v3.dot(&c);
        let x0 = -(c - v3 * axial) / lambda12;
        if paraboloid {
            x0 - v3 * (q.eval(&x0) / (2.0 * axial))
        } else {
            x0
        }
    })
}

/// Linear meridian term `2·v3·(c + B·pc)` of a paraboloid.
pub fn paraboloid_linear_term(q: &QuadricCoeffs, pc: &Vector3<f64>, v3: &Vector3<f64>) -> f64 {
    2.0 * v3.dot(&(q.c_vector() + q.b_matrix() * pc))
}

/// Builds the local frame. `normal_hint`, when given, replaces the default
/// plane normal for a query point on the axis (it is projected to be
/// perpendicular to the axis).
pub fn build_frame(
    q: &QuadricCoeffs,
    cls: &AqClass,
    pc: &Vector3<f64>,
    v3: &Vector3<f64>,
    p0: &Vector3<f64>,
    normal_hint: Option<&Vector3<f64>>,
) -> AxialFrame {
    let l = p0 - pc;
    let n = l.cross(v3);
    let ln = l.norm();
    let collinear = !(n.norm() > COLLINEAR_REL_TOL * ln);
    let u3 = if !collinear {
        n / n.norm()
    } else {
        let hinted = normal_hint
            .map(|h| h - v3 * v3.dot(h))
            .filter(|h| h.norm() > 1e-9);
        match hinted {
            Some(h) => h.normalize(),
            None => {
                let k = (0..3)
                    .min_by(|&i, &j| v3[i].abs().total_cmp(&v3[j].abs()))
                    .unwrap();
                v3.cross(&Vector3::ith(k, 1.0)).normalize()
            }
        }
    };
    let u2 = *v3;
    let u1 = u2.cross(&u3);
    let gamma_l = (cls.kind == AqKind::Paraboloid).then(|| paraboloid_linear_term(q, pc, v3));
    let gamma = if cls.kind == AqKind::CylinderReal {
        q.eval(&(pc + v3 * v3.dot(&l)))
    } else {
        q.eval(pc)
    };
    AxialFrame {
        pc: *pc,
        v3: *v3,
        u1,
        u2,
        u3,
        gamma,
        gamma_l,
        collinear,
    }
}

/// Standard form of the meridian conic.
pub fn conic_form(
    q: &QuadricCoeffs,
    inv: &QuadricInvariants,
    cls: &AqClass,
    frame: &AxialFrame,
    tol: f64,
) -> Result<ConicForm> {
    let (Some(l12), Some(l3)) = (inv.lambda12, inv.lambda3) else {
        return Err(Error::NotAxisymmetric);
    };
    if cls.kind.is_imaginary() {
        return Err(Error::ImaginarySurface(cls.kind));
    }
    let s = l12.signum();
    let l1 = l12.abs();
    let l3 = s * l3;
    let gamma = s * frame.gamma;
    let tiny = tol * q.max_abs();
    let need = |ok: bool| if ok { Ok(()) } else { Err(Error::DegenerateConic) };
    let ellipse = |m: f64, n: f64, rotated| ConicForm {
        params: ConicParams::Ellipse { m, n },
        e: Some((1.0 - (m / n).powi(2)).sqrt()),
        rotated,
    };
    let hyperbola = |m: f64, n: f64, rotated| ConicForm {
        params: ConicParams::Hyperbola { m, n },
        e: Some((1.0 + (m / n).powi(2)).sqrt()),
        rotated,
    };
    let g = gamma.abs();
    Ok(match cls.kind {
        AqKind::ProlateSpheroid => {
            need(gamma < -tiny)?;
            ellipse((g / l1).sqrt(), (g / l3.abs()).sqrt(), false)
        }
        AqKind::OblateSpheroid => {
            need(gamma < -tiny)?;
            ellipse((g / l3.abs()).sqrt(), (g / l1).sqrt(), true)
        }
        AqKind::HyperboloidOneSheet => {
            need(gamma < -tiny && l3 < 0.0)?;
            hyperbola((g / l3.abs()).sqrt(), (g / l1).sqrt(), true)
        }
        AqKind::HyperboloidTwoSheets => {
            need(gamma > tiny && l3 < 0.0)?;
            hyperbola((g / l1).sqrt(), (g / l3.abs()).sqrt(), false)
        }
        AqKind::SphereReal => {
            need(gamma < -tiny)?;
            ConicForm {
                params: ConicParams::Circle { r0: (g / l1).sqrt() },
                e: Some(0.0),
                rotated: false,
            }
        }
        AqKind::ConeReal => {
            need(l3 < 0.0)?;
            ConicForm {
                params: ConicParams::IntersectingLines { m1: l1 / l3.abs() },
                e: None,
                rotated: false,
            }
        }
        AqKind::Paraboloid => {
            let focal = -s * frame.gamma_l.ok_or(Error::DegenerateConic)? / (4.0 * l1);
            need(focal > tiny)?;
            ConicForm {
                params: ConicParams::Parabola { focal },
                e: Some(1.0),
                rotated: false,
            }
        }
        AqKind::CylinderReal => {
            need(gamma < -tiny)?;
            ConicForm {
                params: ConicParams::ParallelLines { m: (g / l1).sqrt() },
                e: None,
                rotated: false,
            }
        }
        AqKind::NonAxisymmetric => return Err(Error::NotAxisymmetric),
        k => return Err(Error::ImaginarySurface(k)),
    })
}

/// Coordinates of the query point in the conic's planar frame.
pub fn project_point(frame: &AxialFrame, p0: &Vector3<f64>, rotated: bool) -> Vector2<f64> {
    let l = p0 - frame.pc;
    let y = frame.u2.dot(&l);
    let x = if frame.collinear {
        (l.norm_squared() - y * y).max(0.0).sqrt()
    } else {
        frame.u1.dot(&l)
    };
    if rotated {
        Vector2::new(-y, x)
    } else {
        Vector2::new(x, y)
    }
}
