//! Prints the classification and nearest point for each built-in reference surface.

use quadprox::corpus::{REFERENCE_CASES, REFERENCE_TOL};
use quadprox::proximity3d;

fn main() {
    for case in &REFERENCE_CASES {
        match proximity3d(&case.coeffs, &case.point, REFERENCE_TOL) {
            Ok(res) => {
                let f = res.nearest_point();
                println!(
                    "{:<24} {:<22} r_min = {:.4}  nearest = ({:.4}, {:.4}, {:.4})",
                    case.name, res.class.kind.name(), res.r_min, f.x, f.y, f.z
                );
            }
            Err(e) => println!("{:<24} error: {e}", case.name),
        }
    }
}
