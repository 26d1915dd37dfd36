//! All regular unipotent subgroups of U_max acting on ℙ(1,1,2,3) with an
//! open orbit, grouped by their roots on the second ray.
//!
//!     cargo run --example open_orbit_subgroups

use std::collections::BTreeMap;

use toric_radiant::groups::{self, RootSet};
use toric_radiant::{RayMatrix, RootSystem};

fn main() {
    let rs = RootSystem::new(&RayMatrix::new(3, vec![vec![3, 2, 1]]).unwrap());
    let en = groups::enumerate_open_orbit_subgroups(&rs, groups::DEFAULT_MAX_RESULTS).unwrap();

    let mut by_m2: BTreeMap<Vec<String>, Vec<&RootSet>> = BTreeMap::new();
    for m in &en.subgroups {
        let key = m.part(1).iter().map(ToString::to_string).collect();
        by_m2.entry(key).or_default().push(m);
    }
    for (m2, sets) in &by_m2 {
        println!("M_2 = {{{}}}: {} subgroups", m2.join(", "), sets.len());
        for m in sets {
            println!("  dim {:>2}  {m}", m.len());
        }
    }
    println!(
        "\ntotal {}; dimension histogram {:?}",
        en.subgroups.len(),
        en.histogram
    );

    // A set that is not saturated, and its closure.
    let m: Vec<_> = rs
        .positive_roots()
        .into_iter()
        .filter(|r| r.is_basic() || r.to_string() == "-q1+q2")
        .collect();
    if let Some(v) = groups::saturation_witness(&rs, &m).unwrap() {
        println!("\n{} + {} = {} is missing", v.a, v.b, v.sum);
    }
    println!("closure: {}", groups::saturation_closure(&rs, &m).unwrap());
}
