//! Regular unipotent subgroups of `U_max`, identified with their root sets.
//!
//! A subset `M ⊆ ℜ^+` is the root set of a regular unipotent subgroup iff it
//! is saturated: for `a ∈ M_i` and `b ∈ M_j` with `j > i`, whenever `a + b`
//! is a root it lies in `M_i`. Such a subgroup has dimension `|M|` and acts
//! with an open orbit iff it contains every basic root `−q_i`.

mod graph;
mod shape;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::fan::RayMatrix;
use crate::lattice::IntVector;
use crate::roots::{Root, RootSystem};

pub use graph::{emit_dot, root_graph, series_report, Arrow, RootGraph, SeriesReport};
pub use shape::{class_blocks, umax_per_ray, umax_shape, uss_shape, GroupShape, UssShape};

/// Default cap on the number of subgroups produced by
/// [`enumerate_open_orbit_subgroups`].
pub const DEFAULT_MAX_RESULTS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("{0} is not a positive root")]
    NotPositive(String),
    #[error("root set has no open orbit: basic root {missing} is absent; use the Lie-algebra center instead")]
    NoOpenOrbit { missing: String },
    #[error("enumeration stopped after {cap} subgroups; partial output kept")]
    CapExceeded { cap: usize, partial: Vec<RootSet> },
    #[error("root graph has a cycle through {0}")]
    CyclicGraph(String),
    #[error("variety is of Type II; splitting off projective lines needs Type I")]
    NotTypeI,
    #[error("invariant violated: {0}")]
    Invariant(String),
}

/// A set of positive roots, kept sorted by ray and then coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootSet {
    n: usize,
    roots: Vec<Root>,
}

impl RootSet {
    /// Validates that every root is positive for `rs`.
    pub fn new(rs: &RootSystem, roots: impl IntoIterator<Item = Root>) -> Result<Self, GroupError> {
        let set = Self::from_roots(rs.n(), roots);
        if let Some(bad) = set.roots.iter().find(|r| !rs.is_positive(r)) {
            return Err(GroupError::NotPositive(bad.to_string()));
        }
        Ok(set)
    }

    pub(crate) fn from_roots(n: usize, roots: impl IntoIterator<Item = Root>) -> Self {
        let roots: BTreeSet<Root> = roots.into_iter().collect();
        RootSet {
            n,
            roots: roots.into_iter().collect(),
        }
    }

    /// `{−q_1, …, −q_n}`, the principal subgroup.
    pub fn basics(n: usize) -> Self {
        Self::from_roots(n, (0..n).map(|i| Root::basic(n, i)))
    }

    /// `ℜ^+`, the root set of `U_max`.
    pub fn full(rs: &RootSystem) -> Self {
        Self::from_roots(rs.n(), rs.positive_roots())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the subgroup.
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn iter(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.roots.binary_search(r).is_ok()
    }

    /// `M_i`, the roots attached to basis ray `i`.
    pub fn part(&self, i: usize) -> &[Root] {
        let lo = self.roots.partition_point(|r| r.ray < i);
        let hi = self.roots.partition_point(|r| r.ray <= i);
        &self.roots[lo..hi]
    }

    pub fn is_subset(&self, other: &RootSet) -> bool {
        self.roots.iter().all(|r| other.contains(r))
    }
}

impl fmt::Display for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, r) in self.roots.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

/// `a ∈ M_i`, `b ∈ M_j` with `j > i`, and `a + b ∈ ℜ` missing from `M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub a: Root,
    pub b: Root,
    pub sum: Root,
}

/// `a + b` as a root on `a`'s ray, when `b` lies on a later ray.
fn root_sum(rs: &RootSystem, a: &Root, b: &Root) -> Option<Root> {
    if b.ray <= a.ray {
        return None;
    }
    let sum = Root::new(a.ray, a.e.checked_add(&b.e).ok()?);
    rs.is_positive(&sum).then_some(sum)
}

fn check_positive(rs: &RootSystem, roots: &[Root]) -> Result<(), GroupError> {
    match roots.iter().find(|r| !rs.is_positive(r)) {
        Some(bad) => Err(GroupError::NotPositive(bad.to_string())),
        None => Ok(()),
    }
}

/// First saturation violation in `m`, scanning `a` then `b` in root order.
pub fn saturation_witness(rs: &RootSystem, m: &[Root]) -> Result<Option<Violation>, GroupError> {
    check_positive(rs, m)?;
    let set: HashSet<&Root> = m.iter().collect();
    let mut sorted: Vec<&Root> = m.iter().collect();
    sorted.sort();
    for a in &sorted {
        for b in &sorted {
            if let Some(sum) = root_sum(rs, a, b) {
                if !set.contains(&sum) {
                    return Ok(Some(Violation {
                        a: (*a).clone(),
                        b: (*b).clone(),
                        sum,
                    }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_saturated(rs: &RootSystem, m: &[Root]) -> Result<bool, GroupError> {
    Ok(saturation_witness(rs, m)?.is_none())
}

/// Smallest saturated superset of `m`.
///
/// Saturation is closure under the partial sums `a + b`, so saturated sets
/// are closed under intersection and the closure is well defined. Sums only
/// ever land on the ray of the lower-indexed summand, so processing rays from
/// last to first reaches the fixpoint in one sweep.
pub fn saturation_closure(rs: &RootSystem, m: &[Root]) -> Result<RootSet, GroupError> {
    check_positive(rs, m)?;
    let n = rs.n();
    let mut parts: Vec<BTreeSet<Root>> = vec![BTreeSet::new(); n];
    for r in m {
        parts[r.ray].insert(r.clone());
    }
    let mut higher: Vec<Root> = Vec::new();
    for i in (0..n).rev() {
        parts[i] = close_level(rs, &parts[i], &higher);
        higher.extend(parts[i].iter().cloned());
    }
    Ok(RootSet::from_roots(n, parts.into_iter().flatten()))
}

/// Closes a subset of one `ℜ_i^+` under adding roots of later rays.
fn close_level(rs: &RootSystem, start: &BTreeSet<Root>, higher: &[Root]) -> BTreeSet<Root> {
    let mut out = start.clone();
    let mut stack: Vec<Root> = start.iter().cloned().collect();
    while let Some(a) = stack.pop() {
        for b in higher {
            if let Some(sum) = root_sum(rs, &a, b) {
                if out.insert(sum.clone()) {
                    stack.push(sum);
                }
            }
        }
    }
    out
}

/// Whether `U(M)` acts with an open orbit, i.e. all basic roots lie in `M`.
pub fn has_open_orbit(m: &RootSet) -> bool {
    missing_basic(m).is_none()
}

fn missing_basic(m: &RootSet) -> Option<Root> {
    (0..m.n())
        .map(|i| Root::basic(m.n(), i))
        .find(|b| !m.contains(b))
}

/// All open-orbit subgroups, sorted by dimension then root list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub subgroups: Vec<RootSet>,
    /// Dimension to number of subgroups.
    pub histogram: BTreeMap<usize, usize>,
}

impl Enumeration {
    fn from_sets(mut subgroups: Vec<RootSet>) -> Self {
        subgroups.sort_by(|a, b| (a.len(), a.roots()).cmp(&(b.len(), b.roots())));
        let mut histogram = BTreeMap::new();
        for s in &subgroups {
            *histogram.entry(s.len()).or_insert(0) += 1;
        }
        Enumeration {
            subgroups,
            histogram,
        }
    }
}

/// Enumerates every saturated `M ⊆ ℜ^+` containing all basic roots.
///
/// Levels are chosen from the last ray down to the first. At level `i` the
/// candidates are the subsets of `ℜ_i^+` containing `−q_i` that are closed
/// under adding roots already chosen on later rays; they are produced by an
/// include/exclude search over `ℜ_i^+` in which every inclusion is followed
/// by closure and branches whose closure hits an excluded root are pruned.
pub fn enumerate_open_orbit_subgroups(
    rs: &RootSystem,
    max_results: usize,
) -> Result<Enumeration, GroupError> {
    let mut out = Vec::new();
    let complete = descend(rs, rs.n(), &mut Vec::new(), &mut out, max_results);
    if complete {
        Ok(Enumeration::from_sets(out))
    } else {
        let partial = Enumeration::from_sets(out).subgroups;
        Err(GroupError::CapExceeded {
            cap: max_results,
            partial,
        })
    }
}

/// Returns `false` once the cap is hit.
fn descend(
    rs: &RootSystem,
    level: usize,
    higher: &mut Vec<Root>,
    out: &mut Vec<RootSet>,
    cap: usize,
) -> bool {
    if level == 0 {
        if out.len() >= cap {
            return false;
        }
        out.push(RootSet::from_roots(rs.n(), higher.iter().cloned()));
        return true;
    }
    let i = level - 1;
    let cands = rs.positive(i);
    let start: BTreeSet<Root> = [Root::basic(rs.n(), i)].into_iter().collect();
    let start = close_level(rs, &start, higher);
    let mut level_sets = Vec::new();
    closed_subsets(
        rs,
        cands,
        higher,
        0,
        start,
        &mut BTreeSet::new(),
        &mut level_sets,
    );
    for s in level_sets {
        let mark = higher.len();
        higher.extend(s);
        let ok = descend(rs, i, higher, out, cap);
        higher.truncate(mark);
        if !ok {
            return false;
        }
    }
    true
}

fn closed_subsets(
    rs: &RootSystem,
    cands: &[Root],
    higher: &[Root],
    idx: usize,
    current: BTreeSet<Root>,
    excluded: &mut BTreeSet<Root>,
    out: &mut Vec<BTreeSet<Root>>,
) {
    let Some(x) = cands.get(idx) else {
        out.push(current);
        return;
    };
    if current.contains(x) {
        closed_subsets(rs, cands, higher, idx + 1, current, excluded, out);
        return;
    }
    let mut with = current.clone();
    with.insert(x.clone());
    let with = close_level(rs, &with, higher);
    if with.is_disjoint(excluded) {
        closed_subsets(rs, cands, higher, idx + 1, with, excluded, out);
    }
    excluded.insert(x.clone());
    closed_subsets(rs, cands, higher, idx + 1, current, excluded, out);
    excluded.remove(x);
}

/// The center `∏_{i ∈ C(U)} U_{−q_i}` of an open-orbit subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Center {
    /// `C(U) = {i : ⟨e, p_i⟩ ≤ 0 for all e ∈ M}`, 0-based.
    pub indices: Vec<usize>,
    pub roots: RootSet,
}

pub fn center(rs: &RootSystem, m: &RootSet) -> Result<Center, GroupError> {
    check_positive(rs, m.roots())?;
    if let Some(missing) = missing_basic(m) {
        return Err(GroupError::NoOpenOrbit {
            missing: missing.to_string(),
        });
    }
    let n = rs.n();
    let indices: Vec<usize> = (0..n)
        .filter(|&i| m.iter().all(|e| e.coords()[i] <= 0))
        .collect();
    if *m == RootSet::full(rs) {
        let expected = maximal_class_minima(rs);
        if expected != indices {
            return Err(GroupError::Invariant(format!(
                "center indices {indices:?} differ from minima of maximal classes {expected:?}"
            )));
        }
    }
    let roots = RootSet::from_roots(n, indices.iter().map(|&i| Root::basic(n, i)));
    Ok(Center { indices, roots })
}

/// Smallest index of each `⪰`-maximal class, sorted.
pub fn maximal_class_minima(rs: &RootSystem) -> Vec<usize> {
    let pre = rs.preorder();
    let mut out: Vec<usize> = pre
        .classes
        .iter()
        .filter(|c| !pre.classes.iter().any(|d| pre.strictly_greater(d[0], c[0])))
        .map(|c| c[0])
        .collect();
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VarietyType {
    /// `U_max` is commutative.
    TypeI,
    TypeII,
}

impl fmt::Display for VarietyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyType::TypeI => write!(f, "Type I"),
            VarietyType::TypeII => write!(f, "Type II"),
        }
    }
}

pub fn variety_type(rs: &RootSystem) -> VarietyType {
    let g = root_graph(&RootSet::full(rs)).expect("Γ(ℜ^+) is acyclic");
    if g.arrows.is_empty() {
        VarietyType::TypeI
    } else {
        VarietyType::TypeII
    }
}

/// `X ≅ (ℙ^1)^b × Y` for a Type I variety.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectiveSplit {
    pub b: usize,
    /// Columns (in the input matrix) split off as `ℙ^1` factors.
    pub columns: Vec<usize>,
    /// Ray matrix of `Y`, or `None` when `Y` is a point.
    pub remainder: Option<RayMatrix>,
}

/// Splits off the `ℙ^1` factors of a Type I variety.
///
/// Column `i` gives a factor when it is a unit vector `e_k` and row `k` is
/// the unit vector `e_i`: then `p_{n+k} = −p_i` and `q_i` is a detached
/// root. Works on the caller's matrix, so column indices are the caller's.
pub fn split_projective_lines(rs: &RootSystem) -> Result<ProjectiveSplit, GroupError> {
    if variety_type(rs) != VarietyType::TypeI {
        return Err(GroupError::NotTypeI);
    }
    let a = rs.user_matrix();
    let n = a.n();
    let mut columns = Vec::new();
    let mut rows = Vec::new();
    for i in 0..n {
        let col = a.column(i);
        let nonzero: Vec<usize> = (0..col.len()).filter(|&k| col.coords()[k] != 0).collect();
        if let [k] = nonzero[..] {
            if col.coords()[k] == 1 && a.rows()[k] == IntVector::unit(n, i) {
                columns.push(i);
                rows.push(k);
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|i| !columns.contains(i)).collect();
    let remainder = if keep.is_empty() {
        None
    } else {
        let raw: Vec<Vec<i64>> = a
            .rows()
            .iter()
            .enumerate()
            .filter(|(k, _)| !rows.contains(k))
            .map(|(_, r)| keep.iter().map(|&j| r.coords()[j]).collect())
            .collect();
        Some(
            RayMatrix::new(keep.len(), raw)
                .map_err(|e| GroupError::Invariant(format!("remainder matrix: {e}")))?,
        )
    };
    Ok(ProjectiveSplit {
        b: columns.len(),
        columns,
        remainder,
    })
}
