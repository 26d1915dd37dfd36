//! Demazure roots of 𝔽₁ × ℙ¹ with their kinds and parities.
//!
//!     cargo run --example demazure_roots

use toric_radiant::{RayMatrix, RootSystem};

fn main() {
    let a = RayMatrix::new(3, vec![vec![1, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
    let rs = RootSystem::new(&a);
    for (l, roots) in rs.report().per_ray.iter().enumerate() {
        let list: Vec<String> = roots
            .iter()
            .map(toric_radiant::roots::format_dual)
            .collect();
        println!("R_{} = {{{}}}", l + 1, list.join(", "));
    }
    println!();
    for d in &rs.report().all_roots {
        println!(
            "{:<8} ray {}  {:?} {:?}",
            d.root.to_string(),
            d.root.ray + 1,
            d.kind,
            d.parity
        );
    }
    println!();
    for i in 0..rs.n() {
        let pos: Vec<String> = rs.positive(i).iter().map(ToString::to_string).collect();
        println!("R_{}^+ = {{{}}}", i + 1, pos.join(", "));
    }
}
