//! Fixtures and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_radiant::groups::RootSet;
use toric_radiant::{IntVector, RayMatrix, Root, RootSystem};

pub mod checks;

pub fn matrix(n: usize, rows: &[&[i64]]) -> RayMatrix {
    RayMatrix::new(n, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

pub fn p123() -> RayMatrix {
    matrix(3, &[&[3, 2, 1]])
}

pub fn f1_times_p1() -> RayMatrix {
    matrix(3, &[&[1, 1, 0], &[1, 0, 0], &[0, 0, 1]])
}

pub fn projective_space(n: usize) -> RayMatrix {
    RayMatrix::new(n, vec![vec![1; n]]).unwrap()
}

pub fn pairwise_incomparable() -> RayMatrix {
    matrix(3, &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0], &[1, 1, 1]])
}

/// Named matrices used throughout the suite.
pub fn fixtures() -> Vec<(&'static str, RayMatrix)> {
    let mut out = vec![
        ("P(1,2,3)", p123()),
        ("F1 x P1", f1_times_p1()),
        ("incomparable", pairwise_incomparable()),
        ("P1 x P1", matrix(2, &[&[1, 0], &[0, 1]])),
        ("weighted plane", matrix(2, &[&[2, 1]])),
        ("F3", matrix(2, &[&[1, 3], &[0, 1]])),
        ("three rows", matrix(2, &[&[1, 0], &[0, 1], &[1, 1]])),
    ];
    let names = ["P1", "P2", "P3", "P4", "P5", "P6"];
    for (k, name) in names.iter().enumerate() {
        out.push((name, projective_space(k + 1)));
    }
    out
}

/// A valid ray matrix with `n ≤ max_n`, at most `max_rows` rows and entries
/// in `0..=max_entry`, drawn by rejection.
pub fn random_matrix(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    max_rows: usize,
    max_entry: i64,
) -> RayMatrix {
    loop {
        let n = rng.gen_range(1..=max_n);
        let rows = rng.gen_range(1..=max_rows);
        let raw: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..n).map(|_| rng.gen_range(0..=max_entry)).collect())
            .collect();
        if let Ok(a) = RayMatrix::new(n, raw) {
            return a;
        }
    }
}

pub fn random_matrices(seed: u64, count: usize) -> Vec<RayMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_matrix(&mut rng, 4, 3, 3))
        .collect()
}

/// All rays `p_1, …, p_m` as plain vectors.
pub fn rays(a: &RayMatrix) -> Vec<Vec<i64>> {
    let n = a.n();
    let mut out: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    out.extend(
        a.rows()
            .iter()
            .map(|r| r.coords().iter().map(|x| -x).collect()),
    );
    out
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The ray `l` with `⟨e, p_l⟩ = −1` and `⟨e, p_s⟩ ≥ 0` elsewhere.
pub fn brute_root_ray(rays: &[Vec<i64>], e: &[i64]) -> Option<usize> {
    let pairings: Vec<i64> = rays.iter().map(|p| dot(e, p)).collect();
    let negative: Vec<usize> = (0..pairings.len()).filter(|&l| pairings[l] < 0).collect();
    match negative[..] {
        [l] if pairings[l] == -1 => Some(l),
        _ => None,
    }
}

/// Every root, found by scanning the box `‖e‖∞ ≤ 1 + max entry`.
pub fn brute_roots(a: &RayMatrix) -> BTreeMap<Vec<i64>, usize> {
    let n = a.n();
    let rays = rays(a);
    let bound = 1 + a
        .rows()
        .iter()
        .flat_map(|r| r.coords().to_vec())
        .max()
        .unwrap_or(0);
    let mut out = BTreeMap::new();
    let mut e = vec![-bound; n];
    loop {
        if let Some(l) = brute_root_ray(&rays, &e) {
            out.insert(e.clone(), l);
        }
        let mut k = 0;
        while k < n && e[k] == bound {
            e[k] = -bound;
            k += 1;
        }
        if k == n {
            return out;
        }
        e[k] += 1;
    }
}

/// `ℜ_i^+` from the box scan, for a matrix already in canonical order.
pub fn brute_positive(a: &RayMatrix) -> Vec<BTreeSet<Vec<i64>>> {
    let mut out = vec![BTreeSet::new(); a.n()];
    for (e, l) in brute_roots(a) {
        if l < a.n() && e[..l].iter().all(|&x| x == 0) {
            out[l].insert(e);
        }
    }
    out
}

/// Saturation checked straight from the definition, using the box scan for
/// root membership.
pub fn brute_saturated(a: &RayMatrix, m: &[Root]) -> bool {
    let rays = rays(a);
    let set: BTreeSet<(usize, Vec<i64>)> = m.iter().map(|r| (r.ray, r.coords().to_vec())).collect();
    m.iter().all(|x| {
        m.iter().filter(|y| y.ray > x.ray).all(|y| {
            let sum: Vec<i64> = x
                .coords()
                .iter()
                .zip(y.coords())
                .map(|(p, q)| p + q)
                .collect();
            match brute_root_ray(&rays, &sum) {
                Some(l) => set.contains(&(l, sum)),
                None => true,
            }
        })
    })
}

/// Open-orbit subgroups by filtering every subset of `ℜ^+` that contains
/// the basic roots. Sorted like the library output.
pub fn brute_open_orbit_subgroups(rs: &RootSystem) -> Vec<RootSet> {
    let all = rs.positive_roots();
    let (basics, rest): (Vec<Root>, Vec<Root>) = all.into_iter().partition(Root::is_basic);
    assert!(rest.len() <= 20, "subset filter is exponential");
    let mut out = Vec::new();
    for mask in 0u32..(1 << rest.len()) {
        let mut m = basics.clone();
        m.extend(
            (0..rest.len())
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| rest[k].clone()),
        );
        if brute_saturated(rs.matrix(), &m) {
            out.push(RootSet::new(rs, m).unwrap());
        }
    }
    out.sort_by(|x, y| (x.len(), x.roots()).cmp(&(y.len(), y.roots())));
    out
}

pub fn root(ray: usize, e: &[i64]) -> Root {
    Root::new(ray, IntVector(e.to_vec()))
}

pub fn names(m: &[Root]) -> Vec<String> {
    m.iter().map(ToString::to_string).collect()
}
