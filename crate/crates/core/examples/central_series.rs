//! Central and derived series of U_max from the root graph, checked against
//! the Lie bracket, and the graph in DOT format.
//!
//!     cargo run --example central_series > /dev/null   # series on stderr
//!     cargo run --example central_series | dot -Tsvg > roots.svg

use toric_radiant::groups::{self, RootSet};
use toric_radiant::liealg::{self, BracketTable};
use toric_radiant::{RayMatrix, RootSystem};

fn main() {
    let rs = RootSystem::new(&RayMatrix::new(3, vec![vec![3, 2, 1]]).unwrap());
    let full = RootSet::full(&rs);
    let s = groups::series_report(&rs, &full).unwrap();
    eprintln!(
        "nilpotency class {}, derived length {}",
        s.nilpotency_class, s.derived_length
    );
    for (k, m) in s.lower.iter().enumerate() {
        eprintln!("  lower {k}: {m}");
    }
    for (k, m) in s.upper.iter().enumerate() {
        eprintln!("  upper {k}: {m}");
    }
    for (k, m) in s.derived.iter().enumerate() {
        eprintln!("  derived {k}: {m}");
    }

    let table = BracketTable::full(&rs);
    let oracle = liealg::lie_series_oracle(full.roots(), &table);
    eprintln!(
        "bracket oracle agrees: {}",
        oracle.nilpotency_class() == s.nilpotency_class
    );
    let center = liealg::lie_center(full.roots(), &table);
    eprintln!(
        "center: {:?}",
        center
            .roots
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );

    print!("{}", groups::emit_dot(&groups::root_graph(&full).unwrap()));
}
