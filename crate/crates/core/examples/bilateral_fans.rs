//! Recognizing a bilateral fan from its rays and reading off the ray matrix.
//!
//!     cargo run --example bilateral_fans

use toric_radiant::fan::{self, SearchOptions};
use toric_radiant::{IntVector, RayList, RootSystem};

fn main() {
    // ℙ(1,1,2,3). The two weight-one rays are interchangeable, so the first
    // witness in lexicographic order uses (-3,-2,-1) as a basis vector.
    let rays = [
        vec![-3, -2, -1],
        vec![0, 0, 1],
        vec![1, 0, 0],
        vec![0, 1, 0],
    ];
    let rl = RayList::new(3, rays.iter().cloned().map(IntVector).collect()).unwrap();
    match fan::bilateralize(&rl, SearchOptions::default()).unwrap() {
        Some(w) => {
            println!(
                "basis rays {:?}",
                w.basis_indices.iter().map(|i| i + 1).collect::<Vec<_>>()
            );
            for row in w.matrix.rows() {
                println!("  {row}");
            }
            let rs = RootSystem::new(&w.matrix);
            let order: Vec<usize> = rs.permutation().iter().map(|i| i + 1).collect();
            println!("canonical column order {order:?}");
            println!("witness re-checks: {}", w.verify(&rl));
        }
        None => println!("not bilateral"),
    }

    // The hexagon: six rays, no basis with the rest in the negative orthant.
    let hex = toric_radiant::surfaces::SurfaceSequence::new(vec![1; 6]).unwrap();
    let rl = RayList::new(2, hex.rays()).unwrap();
    println!(
        "hexagon bilateral: {}",
        fan::bilateralize(&rl, SearchOptions::default())
            .unwrap()
            .is_some()
    );
}
