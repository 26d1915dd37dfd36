//! Root subgroups acting on the Cox ring: the ℙ² commutator and a
//! conjugation identity on ℙ(1,1,2,3).
//!
//!     cargo run --example cox_ring_action

use toric_radiant::coxaction::{self, CoxModel};
use toric_radiant::{IntVector, RayMatrix, Root, RootSystem};

fn show(g: &coxaction::PolyAutomorphism) {
    for (i, p) in g.images.iter().enumerate() {
        println!("  v{} -> {p}", i + 1);
    }
}

fn main() {
    let p2 = RootSystem::new(&RayMatrix::new(2, vec![vec![1, 1]]).unwrap());
    let m = CoxModel::new(&p2, 1);
    let a = m.param(0).unwrap();
    let one = m.int(1);
    let e = Root::new(0, IntVector(vec![-1, 1]));
    let f = Root::new(1, IntVector(vec![0, -1]));
    let prod = m
        .compose_all(&[
            m.root_automorphism(&e, &a).unwrap(),
            m.root_automorphism(&f, &one).unwrap(),
            m.root_automorphism(&e, &-&a).unwrap(),
            m.root_automorphism(&f, &-&one).unwrap(),
        ])
        .unwrap();
    println!("P^2: u_e(a) u_f(1) u_e(-a) u_f(-1) with v4 = a");
    show(&prod);
    println!(
        "  equals u_(-1,0)(a): {}",
        prod == m.root_automorphism(&Root::basic(2, 0), &a).unwrap()
    );

    let p = RootSystem::new(&RayMatrix::new(3, vec![vec![3, 2, 1]]).unwrap());
    let m = CoxModel::new(&p, 2);
    let (s, t) = (m.param(0).unwrap(), m.param(1).unwrap());
    let e = Root::new(0, IntVector(vec![-1, 1, 1]));
    let f = Root::new(1, IntVector(vec![0, -1, 1]));
    println!("\nP(1,1,2,3): conjugating u_{e} by u_{f}");
    println!(
        "  identity holds: {}",
        coxaction::verify_conjugation(&m, &e, &f, &s, &t).unwrap()
    );
    let c = coxaction::commutator_check(&m, &e, &f).unwrap();
    if let (Some(coeff), Some(b)) = (&c.group_coeff, &c.bracket) {
        println!(
            "  commutator coefficient {coeff}, bracket {} * d_({})",
            b.coeff, b.result
        );
    }
    for class in 0..p.preorder().classes.len() {
        let r = coxaction::matrix_embedding_check(&m, class).unwrap();
        println!("  class {}: embeds in U_{{{},{}}}", class + 1, r.k, r.l);
    }
}
