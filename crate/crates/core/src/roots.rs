//! Demazure roots of a bilateral fan, computed from its ray matrix.
//!
//! With `q_1, …, q_n` the basis of `M` dual to `p_1, …, p_n`, every root
//! attached to a basis ray `p_i` has the form `e = −q_i + Σ_{j≠i} b_j q_j`
//! with `b_j ≥ 0`, and `e` is a root iff `v_i − Σ b_j v_j ≥ 0` where `v_j` are
//! the columns of the ray matrix. Since every column is nonzero and
//! non-negative, some row `k` has `a_{kj} ≥ 1`, so `b_j ≤ a_{ki} ≤ max_k a_{ki}`:
//! the search box is finite. The search below walks that box depth-first and
//! prunes as soon as the residual `v_i − Σ b_j v_j` leaves the orthant.
//!
//! Roots attached to non-basis rays are detached; they are exactly the `q_i`
//! whose column `v_i` is a standard unit vector.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::fan::RayMatrix;
use crate::lattice::IntVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("ray matrix does not satisfy the canonical column ordering")]
    NotCanonical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RootKind {
    Basic,
    Elementary,
    Special,
    Detached,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Semisimple,
    Unipotent,
}

/// A root `e ∈ M` together with the (0-based) index of the ray it is attached to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Root {
    pub ray: usize,
    pub e: IntVector,
}

impl Root {
    pub fn new(ray: usize, e: IntVector) -> Self {
        Root { ray, e }
    }

    /// The basic root `−q_i`.
    pub fn basic(n: usize, i: usize) -> Self {
        let mut c = vec![0; n];
        c[i] = -1;
        Root::new(i, IntVector(c))
    }

    pub fn coords(&self) -> &[i64] {
        self.e.coords()
    }

    pub fn is_basic(&self) -> bool {
        self.e.coords().iter().enumerate().all(
            |(j, &c)| {
                if j == self.ray {
                    c == -1
                } else {
                    c == 0
                }
            },
        )
    }
}

impl fmt::Display for Root {
    /// Formats as a combination of dual basis vectors, e.g. `-q1+2q3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_dual(&self.e))
    }
}

/// Renders a vector of `M` as `Σ c_j q_j` with 1-based indices.
pub fn format_dual(e: &IntVector) -> String {
    let mut s = String::new();
    for (j, &c) in e.coords().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 {
            "-"
        } else if s.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = c.unsigned_abs();
        if mag == 1 {
            s.push_str(&format!("{sign}q{}", j + 1));
        } else {
            s.push_str(&format!("{sign}{mag}q{}", j + 1));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DemazureRoot {
    pub root: Root,
    pub kind: RootKind,
    pub parity: Parity,
}

/// Returns the ray index `l` with `⟨e, p_l⟩ = −1` and `⟨e, p_s⟩ ≥ 0` for all
/// other `s`, if `e` is a root.
pub fn root_ray(a: &RayMatrix, e: &IntVector) -> Option<usize> {
    let mut ray = None;
    for l in 0..a.m() {
        match a.pairing(e, l) {
            -1 if ray.is_none() => ray = Some(l),
            p if p < 0 => return None,
            _ => {}
        }
    }
    ray
}

pub fn is_root(a: &RayMatrix, e: &IntVector) -> bool {
    root_ray(a, e).is_some()
}

fn classify(n: usize, root: &Root) -> RootKind {
    if root.ray >= n {
        return RootKind::Detached;
    }
    if root.is_basic() {
        return RootKind::Basic;
    }
    let positives: Vec<i64> = root
        .coords()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != root.ray)
        .map(|(_, &c)| c)
        .filter(|&c| c != 0)
        .collect();
    if positives == [1] {
        RootKind::Elementary
    } else {
        RootKind::Special
    }
}

/// All roots of `ℜ_i` for a basis index `i`, sorted by coordinates.
fn basis_ray_roots(a: &RayMatrix, i: usize) -> Vec<IntVector> {
    let n = a.n();
    let cols = a.columns();
    let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
    let mut out = Vec::new();
    let mut b = vec![0i64; n];
    b[i] = -1;
    fn walk(
        depth: usize,
        others: &[usize],
        cols: &[IntVector],
        residual: &mut Vec<i64>,
        b: &mut Vec<i64>,
        out: &mut Vec<IntVector>,
    ) {
        if depth == others.len() {
            out.push(IntVector(b.clone()));
            return;
        }
        let j = others[depth];
        let col = cols[j].coords();
        let mut taken = 0i64;
        loop {
            walk(depth + 1, others, cols, residual, b, out);
            // Take one more copy of v_j if the residual stays non-negative.
            if residual.iter().zip(col).any(|(r, c)| r - c < 0) {
                break;
            }
            residual.iter_mut().zip(col).for_each(|(r, c)| *r -= c);
            taken += 1;
            b[j] = taken;
        }
        residual
            .iter_mut()
            .zip(col)
            .for_each(|(r, c)| *r += c * taken);
        b[j] = 0;
    }
    let mut residual = cols[i].0.clone();
    walk(0, &others, &cols, &mut residual, &mut b, &mut out);
    out.sort();
    out
}

/// Roots attached to non-basis ray `n + k`: `q_i` for unit columns `v_i = e_k`.
fn detached_roots(a: &RayMatrix, k: usize) -> Vec<IntVector> {
    let n = a.n();
    (0..n)
        .filter(|&i| {
            let col = a.column(i);
            col.coords()
                .iter()
                .enumerate()
                .all(|(r, &c)| if r == k { c == 1 } else { c == 0 })
        })
        .map(|i| IntVector::unit(n, i))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSystemReport {
    pub all_roots: Vec<DemazureRoot>,
    /// `per_ray[l]` lists `ℜ_{l+1}` for every ray, basis rays first.
    pub per_ray: Vec<Vec<IntVector>>,
    /// `ℜ_1^+, …, ℜ_n^+`; present only when the matrix is canonical.
    pub positive: Option<Vec<Vec<IntVector>>>,
}

impl RootSystemReport {
    pub fn len(&self) -> usize {
        self.all_roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.all_roots.is_empty()
    }

    pub fn contains(&self, e: &IntVector) -> bool {
        self.per_ray.iter().any(|rs| rs.contains(e))
    }
}

/// Enumerates and classifies every Demazure root of the fan with ray matrix `a`.
pub fn demazure_roots(a: &RayMatrix) -> RootSystemReport {
    let n = a.n();
    let mut per_ray: Vec<Vec<IntVector>> = (0..n).map(|i| basis_ray_roots(a, i)).collect();
    per_ray.extend((0..a.rows().len()).map(|k| detached_roots(a, k)));
    let all: HashSet<&IntVector> = per_ray.iter().flatten().collect();
    let all_roots = per_ray
        .iter()
        .enumerate()
        .flat_map(|(l, rs)| rs.iter().map(move |e| Root::new(l, e.clone())))
        .map(|root| {
            let neg = root.e.checked_neg().expect("root coordinates are small");
            DemazureRoot {
                kind: classify(n, &root),
                parity: if all.contains(&neg) {
                    Parity::Semisimple
                } else {
                    Parity::Unipotent
                },
                root,
            }
        })
        .collect();
    let positive = is_canonical(a).then(|| positive_partition(a, &per_ray));
    RootSystemReport {
        all_roots,
        per_ray,
        positive,
    }
}

fn positive_partition(a: &RayMatrix, per_ray: &[Vec<IntVector>]) -> Vec<Vec<IntVector>> {
    (0..a.n())
        .map(|i| {
            per_ray[i]
                .iter()
                .filter(|e| e.coords()[..i].iter().all(|&c| c == 0))
                .cloned()
                .collect()
        })
        .collect()
}

/// `ℜ_1^+, …, ℜ_n^+`: roots of `ℜ_i` supported on indices `≥ i`.
pub fn positive_roots(a: &RayMatrix) -> Result<Vec<Vec<IntVector>>, RootError> {
    if !is_canonical(a) {
        return Err(RootError::NotCanonical);
    }
    let per_ray: Vec<Vec<IntVector>> = (0..a.n()).map(|i| basis_ray_roots(a, i)).collect();
    Ok(positive_partition(a, &per_ray))
}

/// The column preorder `i ⪰ j ⇔ v_i ≥ v_j` and its equivalence classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColumnPreorder {
    /// `geq[i][j]` is `i ⪰ j`.
    pub geq: Vec<Vec<bool>>,
    /// Equivalence classes, each sorted, ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
    /// `0 = c_0 < c_1 < … < c_r = n` when the classes are consecutive
    /// segments in canonical order.
    pub cuts: Option<Vec<usize>>,
}

impl ColumnPreorder {
    pub fn equivalent(&self, i: usize, j: usize) -> bool {
        self.geq[i][j] && self.geq[j][i]
    }

    pub fn strictly_greater(&self, i: usize, j: usize) -> bool {
        self.geq[i][j] && !self.geq[j][i]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.geq[i][j] || self.geq[j][i]
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(&i))
            .expect("every index lies in a class")
    }
}

pub fn column_preorder(a: &RayMatrix) -> ColumnPreorder {
    let n = a.n();
    let cols = a.columns();
    let geq: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| cols[i].dominates(&cols[j])).collect())
        .collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        match classes.iter_mut().find(|c| cols[c[0]] == cols[i]) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    let cuts = canonical_cuts(&geq, &classes);
    ColumnPreorder { geq, classes, cuts }
}

fn canonical_cuts(geq: &[Vec<bool>], classes: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut cuts = vec![0];
    for c in classes {
        let start = *cuts.last().unwrap();
        if c.iter().enumerate().any(|(off, &x)| x != start + off) {
            return None;
        }
        cuts.push(start + c.len());
    }
    // No later class may strictly dominate an earlier one.
    for (s, cs) in classes.iter().enumerate() {
        for cl in &classes[s + 1..] {
            let (x, y) = (cl[0], cs[0]);
            if geq[x][y] && !geq[y][x] {
                return None;
            }
        }
    }
    Some(cuts)
}

/// Whether the columns of `a` satisfy the canonical segment ordering.
pub fn is_canonical(a: &RayMatrix) -> bool {
    column_preorder(a).cuts.is_some()
}

/// Reorders columns so classes form consecutive, `⪰`-non-increasing segments.
///
/// Returns `σ` with new column `i` equal to old column `σ[i]`. Among the
/// classes that are maximal among those not yet placed, the one containing
/// the smallest original column index goes first, so an already canonical
/// matrix gets the identity.
pub fn canonical_reorder(a: &RayMatrix) -> (Vec<usize>, RayMatrix) {
    let pre = column_preorder(a);
    let mut remaining: BTreeSet<usize> = (0..pre.classes.len()).collect();
    let mut perm = Vec::with_capacity(a.n());
    while !remaining.is_empty() {
        let next = *remaining
            .iter()
            .find(|&&s| {
                !remaining
                    .iter()
                    .any(|&t| t != s && pre.strictly_greater(pre.classes[t][0], pre.classes[s][0]))
            })
            .expect("a finite preorder has maximal classes");
        remaining.remove(&next);
        perm.extend(pre.classes[next].iter().copied());
    }
    let reordered = a.permute_columns(&perm);
    (perm, reordered)
}

/// The root data of a ray matrix in canonical coordinates, with the column
/// permutation that relates them to the caller's coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    user: RayMatrix,
    permutation: Vec<usize>,
    matrix: RayMatrix,
    preorder: ColumnPreorder,
    report: RootSystemReport,
    positive: Vec<Vec<Root>>,
}

impl RootSystem {
    pub fn new(user: &RayMatrix) -> Self {
        let (permutation, matrix) = canonical_reorder(user);
        let preorder = column_preorder(&matrix);
        let report = demazure_roots(&matrix);
        let positive = report
            .positive
            .as_ref()
            .expect("reordered matrix is canonical")
            .iter()
            .enumerate()
            .map(|(i, rs)| rs.iter().map(|e| Root::new(i, e.clone())).collect())
            .collect();
        RootSystem {
            user: user.clone(),
            permutation,
            matrix,
            preorder,
            report,
            positive,
        }
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn m(&self) -> usize {
        self.matrix.m()
    }

    /// The canonical ray matrix all roots are expressed against.
    pub fn matrix(&self) -> &RayMatrix {
        &self.matrix
    }

    pub fn user_matrix(&self) -> &RayMatrix {
        &self.user
    }

    /// Canonical column `i` is user column `permutation()[i]`.
    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn preorder(&self) -> &ColumnPreorder {
        &self.preorder
    }

    pub fn report(&self) -> &RootSystemReport {
        &self.report
    }

    /// `ℜ_i^+` for `i` in `0..n`.
    pub fn positive(&self, i: usize) -> &[Root] {
        &self.positive[i]
    }

    pub fn positive_partition(&self) -> &[Vec<Root>] {
        &self.positive
    }

    /// All of `ℜ^+`, ordered by ray then coordinates.
    pub fn positive_roots(&self) -> Vec<Root> {
        self.positive.iter().flatten().cloned().collect()
    }

    pub fn is_root(&self, e: &IntVector) -> bool {
        self.report.contains(e)
    }

    pub fn root_ray(&self, e: &IntVector) -> Option<usize> {
        root_ray(&self.matrix, e)
    }

    pub fn is_positive(&self, r: &Root) -> bool {
        r.ray < self.n() && self.positive[r.ray].contains(r)
    }

    pub fn parity(&self, e: &IntVector) -> Option<Parity> {
        self.report
            .all_roots
            .iter()
            .find(|d| &d.root.e == e)
            .map(|d| d.parity)
    }

    /// Translates canonical dual coordinates to the caller's coordinates.
    pub fn to_user_coords(&self, e: &IntVector) -> IntVector {
        let mut out = vec![0; e.len()];
        for (i, &c) in e.coords().iter().enumerate() {
            out[self.permutation[i]] = c;
        }
        IntVector(out)
    }

    /// Translates a canonical ray index to the caller's ray index.
    pub fn to_user_ray(&self, ray: usize) -> usize {
        if ray < self.n() {
            self.permutation[ray]
        } else {
            ray
        }
    }

    pub fn to_user_root(&self, r: &Root) -> Root {
        Root::new(self.to_user_ray(r.ray), self.to_user_coords(&r.e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(n: usize, rows: &[&[i64]]) -> RayMatrix {
        RayMatrix::new(n, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn iv(v: &[i64]) -> IntVector {
        IntVector(v.to_vec())
    }

    fn set(vs: &[&[i64]]) -> Vec<IntVector> {
        let mut out: Vec<IntVector> = vs.iter().map(|v| iv(v)).collect();
        out.sort();
        out
    }

    #[test]
    fn f1_times_p1_roots() {
        let a = mat(3, &[&[1, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let r = demazure_roots(&a);
        assert_eq!(r.per_ray[0], set(&[&[-1, 0, 0], &[-1, 1, 0]]));
        assert_eq!(r.per_ray[1], set(&[&[0, -1, 0]]));
        assert_eq!(r.per_ray[2], set(&[&[0, 0, -1]]));
        assert_eq!(r.per_ray[3], set(&[&[0, 1, 0]]));
        assert!(r.per_ray[4].is_empty());
        assert_eq!(r.per_ray[5], set(&[&[0, 0, 1]]));
        let pos = r.positive.unwrap();
        assert_eq!(pos[0], set(&[&[-1, 0, 0], &[-1, 1, 0]]));
        assert_eq!(pos[1], set(&[&[0, -1, 0]]));
        assert_eq!(pos[2], set(&[&[0, 0, -1]]));
    }

    #[test]
    fn f1_times_p1_classification() {
        let a = mat(3, &[&[1, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let r = demazure_roots(&a);
        let find = |e: &[i64]| {
            r.all_roots
                .iter()
                .find(|d| d.root.e == iv(e))
                .cloned()
                .unwrap()
        };
        assert_eq!(find(&[-1, 0, 0]).kind, RootKind::Basic);
        assert_eq!(find(&[-1, 0, 0]).parity, Parity::Unipotent);
        assert_eq!(find(&[-1, 1, 0]).kind, RootKind::Elementary);
        assert_eq!(find(&[-1, 1, 0]).parity, Parity::Unipotent);
        assert_eq!(find(&[0, -1, 0]).parity, Parity::Semisimple);
        assert_eq!(find(&[0, 1, 0]).kind, RootKind::Detached);
        assert_eq!(find(&[0, 0, 1]).parity, Parity::Semisimple);
    }

    #[test]
    fn weighted_projective_plane_123() {
        let a = mat(3, &[&[3, 2, 1]]);
        let pos = positive_roots(&a).unwrap();
        assert_eq!(
            pos[0],
            set(&[
                &[-1, 0, 0],
                &[-1, 1, 0],
                &[-1, 1, 1],
                &[-1, 0, 1],
                &[-1, 0, 2],
                &[-1, 0, 3]
            ])
        );
        assert_eq!(pos[1], set(&[&[0, -1, 0], &[0, -1, 1], &[0, -1, 2]]));
        assert_eq!(pos[2], set(&[&[0, 0, -1]]));
        let r = demazure_roots(&a);
        // The last column of [[3, 2, 1]] is a unit vector, so q_3 is a root
        // on the extra ray and -q_3 is semisimple.
        assert_eq!(r.len(), 11);
        assert_eq!(r.per_ray[3], vec![iv(&[0, 0, 1])]);
        let semisimple: Vec<_> = r
            .all_roots
            .iter()
            .filter(|d| d.parity == Parity::Semisimple)
            .map(|d| d.root.e.clone())
            .collect();
        assert_eq!(semisimple, vec![iv(&[0, 0, -1]), iv(&[0, 0, 1])]);
        let special = r
            .all_roots
            .iter()
            .find(|d| d.root.e == iv(&[-1, 1, 1]))
            .unwrap();
        assert_eq!(special.kind, RootKind::Special);
    }

    #[test]
    fn projective_line() {
        let a = mat(1, &[&[1]]);
        let r = demazure_roots(&a);
        assert_eq!(r.per_ray[0], vec![iv(&[-1])]);
        assert_eq!(r.per_ray[1], vec![iv(&[1])]);
        assert!(r.all_roots.iter().all(|d| d.parity == Parity::Semisimple));
    }

    #[test]
    fn preorder_examples() {
        let p = column_preorder(&mat(3, &[&[3, 2, 1]]));
        assert!(p.strictly_greater(0, 1) && p.strictly_greater(1, 2));
        assert_eq!(p.classes, vec![vec![0], vec![1], vec![2]]);

        let ex47 = mat(3, &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0], &[1, 1, 1]]);
        let p = column_preorder(&ex47);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p.comparable(i, j), i == j);
            }
        }
        assert_eq!(p.classes.len(), 3);

        let p = column_preorder(&mat(2, &[&[1, 1]]));
        assert!(p.equivalent(0, 1));
        assert_eq!(p.classes, vec![vec![0, 1]]);
        assert_eq!(p.cuts, Some(vec![0, 2]));
    }

    #[test]
    fn reorder_examples() {
        let a = mat(3, &[&[1, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let (perm, b) = canonical_reorder(&a);
        assert_eq!(perm, vec![0, 1, 2]);
        assert!(is_canonical(&b));

        let (perm, b) = canonical_reorder(&mat(2, &[&[2, 3]]));
        assert_eq!(perm, vec![1, 0]);
        assert_eq!(b.rows(), &[iv(&[3, 2])]);

        let (perm, _) = canonical_reorder(&mat(3, &[&[1, 1, 1]]));
        assert_eq!(perm, vec![0, 1, 2]);

        // Equivalent columns scattered: 1 ≍ 3 ≻ 2.
        let (perm, b) = canonical_reorder(&mat(3, &[&[2, 1, 2], &[1, 0, 1]]));
        assert_eq!(perm, vec![0, 2, 1]);
        assert_eq!(column_preorder(&b).cuts, Some(vec![0, 2, 3]));
    }

    #[test]
    fn positive_roots_requires_canonical() {
        assert_eq!(
            positive_roots(&mat(2, &[&[2, 3]])),
            Err(RootError::NotCanonical)
        );
    }

    #[test]
    fn projective_space_positive_roots() {
        for n in 1..=6 {
            let a = mat(n, &[&vec![1; n]]);
            let pos = positive_roots(&a).unwrap();
            assert_eq!(pos[0].len(), n);
            for (i, rs) in pos.iter().enumerate() {
                assert_eq!(rs.len(), n - i);
            }
        }
    }

    #[test]
    fn root_system_user_coordinates() {
        let rs = RootSystem::new(&mat(2, &[&[2, 3]]));
        assert_eq!(rs.permutation(), &[1, 0]);
        // Canonical ℜ_1^+ = {−q1, −q1+q2} is attached to user ray 2.
        let user: Vec<Root> = rs.positive(0).iter().map(|r| rs.to_user_root(r)).collect();
        assert_eq!(user[0], Root::new(1, iv(&[0, -1])));
        assert_eq!(user[1], Root::new(1, iv(&[1, -1])));
        assert_eq!(rs.positive(1), &[Root::basic(2, 1)]);
    }

    #[test]
    fn dual_formatting() {
        assert_eq!(format_dual(&iv(&[-1, 0, 2])), "-q1+2q3");
        assert_eq!(format_dual(&iv(&[0, 1, 0])), "q2");
        assert_eq!(format_dual(&iv(&[0, 0])), "0");
    }
}
