//! Classification of general quadric surfaces into axisymmetric types and
//! exact normal distance from a point to such a surface.
//!
//! A query runs in four stages: invariants and classification, reduction to a
//! conic in the plane through the axis and the query point, a closed-form
//! planar solve (quadratic, cubic or quartic), and lifting of the planar
//! foot-points back to space.
//!
//! ```
//! use nalgebra::Vector3;
//! use quadprox::{proximity3d, QuadricCoeffs, DEFAULT_TOL};
//!
//! // x² + y² + z² − 1 = 0
//! let q = QuadricCoeffs::new([1., 1., 1., 0., 0., 0., 0., 0., 0., -1.]).unwrap();
//! let res = proximity3d(&q, &Vector3::new(3.0, 0.0, 0.0), DEFAULT_TOL).unwrap();
//! assert!((res.r_min - 2.0).abs() < 1e-12);
//! ```

pub mod algebra;
pub mod classify;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod proximity2d;
pub mod reduce;
pub mod synth;

pub use algebra::{
    cubic_real_roots, depressed_cubic_real_roots, invariants, invariants_with_tol,
    quartic_real_roots, CubicCase, CubicRealRoots, QuadricCoeffs, QuadricInvariants,
    QuarticRealRoots, DEFAULT_TOL,
};
pub use classify::{classify, AqClass, AqKind};
pub use engine::{
    oracle_min_distance, oracle_min_distance_with, prepare, proximity3d, proximity3d_with, rigid_transform,
    ProximityOptions, ProximityResult,
};
pub use error::{Error, Result};
pub use proximity2d::{CaseTag, PlanarProximity};
pub use reduce::{AxialFrame, ConicForm, ConicKind, ConicParams};

pub use nalgebra::{Vector2, Vector3};
