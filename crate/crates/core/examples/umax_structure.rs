//! The shape of U_max and U_ss for a few varieties.
//!
//!     cargo run --example umax_structure

use toric_radiant::groups;
use toric_radiant::{RayMatrix, RootSystem};

fn main() {
    let cases = [
        ("P^3", RayMatrix::new(3, vec![vec![1, 1, 1]]).unwrap()),
        (
            "P(1,1,2,3)",
            RayMatrix::new(3, vec![vec![3, 2, 1]]).unwrap(),
        ),
        (
            "F1 x P1",
            RayMatrix::new(3, vec![vec![1, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap(),
        ),
        (
            "P1 x P1",
            RayMatrix::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap(),
        ),
    ];
    for (name, a) in cases {
        let rs = RootSystem::new(&a);
        let ss = groups::uss_shape(&rs);
        println!("{name}");
        println!(
            "  U_max   = {}  (dim {})",
            groups::umax_shape(&rs),
            groups::umax_shape(&rs).dim()
        );
        println!("  per ray = {}", groups::umax_per_ray(&rs));
        println!("  blocks  = {:?}", groups::class_blocks(&rs));
        println!(
            "  U_ss    = {}  (simple components: {})",
            ss.shape, ss.simple_components
        );
        println!("  {}", groups::variety_type(&rs));
        if let Ok(split) = groups::split_projective_lines(&rs) {
            println!("  splits off (P^1)^{}", split.b);
        }
    }
}
