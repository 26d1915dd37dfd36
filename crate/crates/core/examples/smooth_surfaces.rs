//! Smooth complete toric surfaces up to six rays, their radiance, and the
//! subgroup count for a Hirzebruch surface.
//!
//!     cargo run --example smooth_surfaces

use toric_radiant::surfaces::{self, SurfaceSequence};

fn main() {
    let all = surfaces::enumerate_smooth_surfaces(6, 3, surfaces::DEFAULT_MAX_SURFACES).unwrap();
    for s in &all {
        let mark = if surfaces::is_radiant_sequence(s) {
            "radiant"
        } else {
            "not radiant"
        };
        println!("m = {}  {s}  {mark}", s.m());
    }

    let f2 = SurfaceSequence::new(vec![0, 2, 0, -2]).unwrap();
    let r = surfaces::surface_report(&f2).unwrap();
    println!(
        "\nF_2: d = {}, U_max = {}, class {}",
        r.d, r.umax_shape, r.nilpotency_class
    );
    for m in &r.subgroups {
        println!("  {m}");
    }
    let up = surfaces::blow_up(&f2, 1).unwrap();
    println!(
        "blow-up at 1: {up}, back down: {}",
        surfaces::blow_down(&up, 2).unwrap()
    );
}
