//! Ray matrices, ray lists, and the search for a bilateral labeling.
//!
//! A complete fan is bilateral when `n` of its rays form a lattice basis and
//! every remaining ray has non-positive coordinates in that basis. The
//! negated coordinates of the remaining rays are the rows of the ray matrix,
//! which is the only input the root computations need.
//!
//! Completeness of the ambient fan is verified only in rank 2. In higher rank
//! the caller is trusted to pass the ray set of a complete fan; a `None` from
//! [`bilateralize`] certifies non-radiance only under that assumption.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{self, Basis, IntVector, LatticeError};

/// Default cap on the number of `n`-subsets tried by [`bilateralize`].
pub const DEFAULT_MAX_SUBSETS: u64 = 2_000_000;

/// Largest accepted ray-matrix entry; keeps all pairings well inside `i64`.
pub const MAX_ENTRY: i64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum RayMatrixViolation {
    /// Row has the wrong number of entries.
    WrongWidth {
        row: usize,
        width: usize,
    },
    ZeroRow {
        row: usize,
    },
    NonPrimitiveRow {
        row: usize,
    },
    NegativeEntry {
        row: usize,
        column: usize,
    },
    DuplicateRows {
        first: usize,
        second: usize,
    },
    ZeroColumn {
        column: usize,
    },
    /// Entry beyond [`MAX_ENTRY`].
    EntryTooLarge {
        row: usize,
        column: usize,
    },
    NoColumns,
}

impl fmt::Display for RayMatrixViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // 1-based indices in messages.
        match *self {
            Self::WrongWidth { row, width } => write!(f, "row {} has width {width}", row + 1),
            Self::ZeroRow { row } => write!(f, "zero-row: row {}", row + 1),
            Self::NonPrimitiveRow { row } => write!(f, "non-primitive-row: row {}", row + 1),
            Self::NegativeEntry { row, column } => {
                write!(f, "negative-entry: row {}, column {}", row + 1, column + 1)
            }
            Self::DuplicateRows { first, second } => {
                write!(f, "duplicate-rows: rows {} and {}", first + 1, second + 1)
            }
            Self::ZeroColumn { column } => write!(f, "zero-column: column {}", column + 1),
            Self::EntryTooLarge { row, column } => write!(
                f,
                "entry-too-large: row {}, column {} exceeds {MAX_ENTRY}",
                row + 1,
                column + 1
            ),
            Self::NoColumns => write!(f, "rank n must be positive"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("invalid ray matrix: {}", join_violations(.0))]
    InvalidRayMatrix(Vec<RayMatrixViolation>),
    #[error("invalid ray list: {0}")]
    InvalidRayList(String),
    #[error("degenerate ray set: rays span a subspace of rank {rank} < {n}")]
    DegenerateRaySet { rank: usize, n: usize },
    #[error("incomplete planar fan: consecutive rays {first} and {second} leave a gap of at least a half-plane")]
    IncompletePlanarFan { first: IntVector, second: IntVector },
    #[error("subset search cap exceeded: C({m},{n}) = {count} > {cap}")]
    SearchCapExceeded {
        m: usize,
        n: usize,
        count: u64,
        cap: u64,
    },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn join_violations(vs: &[RayMatrixViolation]) -> String {
    vs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// The `(m−n)×n` non-negative ray matrix of a bilateral fan.
///
/// Row `k` holds `a_{n+k,1}, …, a_{n+k,n}`, so the ray `p_{n+k}` equals
/// `−Σ_j a_{n+k,j} p_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RayMatrix {
    n: usize,
    rows: Vec<IntVector>,
}

impl RayMatrix {
    /// Checks every ray-matrix invariant and reports all violations at once.
    pub fn new(n: usize, rows: Vec<Vec<i64>>) -> Result<Self, FanError> {
        let mut violations = Vec::new();
        if n == 0 {
            violations.push(RayMatrixViolation::NoColumns);
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                violations.push(RayMatrixViolation::WrongWidth {
                    row: r,
                    width: row.len(),
                });
            }
        }
        if !violations.is_empty() {
            return Err(FanError::InvalidRayMatrix(violations));
        }
        let rows: Vec<IntVector> = rows.into_iter().map(IntVector).collect();
        for (r, row) in rows.iter().enumerate() {
            if row.is_zero() {
                violations.push(RayMatrixViolation::ZeroRow { row: r });
            } else if !row.is_primitive() {
                violations.push(RayMatrixViolation::NonPrimitiveRow { row: r });
            }
            for (c, &a) in row.coords().iter().enumerate() {
                if a < 0 {
                    violations.push(RayMatrixViolation::NegativeEntry { row: r, column: c });
                } else if a > MAX_ENTRY {
                    violations.push(RayMatrixViolation::EntryTooLarge { row: r, column: c });
                }
            }
        }
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                if rows[i] == rows[j] {
                    violations.push(RayMatrixViolation::DuplicateRows {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        for c in 0..n {
            if rows.iter().all(|row| row.coords()[c] == 0) {
                violations.push(RayMatrixViolation::ZeroColumn { column: c });
            }
        }
        if violations.is_empty() {
            Ok(RayMatrix { n, rows })
        } else {
            Err(FanError::InvalidRayMatrix(violations))
        }
    }

    /// Rank of the lattice `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of rays.
    pub fn m(&self) -> usize {
        self.n + self.rows.len()
    }

    pub fn rows(&self) -> &[IntVector] {
        &self.rows
    }

    /// Entry `a_{n+row, col}` (both 0-based).
    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.rows[row].coords()[col]
    }

    /// Column `v_col` as a vector of length `m − n`.
    pub fn column(&self, col: usize) -> IntVector {
        IntVector(self.rows.iter().map(|r| r.coords()[col]).collect())
    }

    pub fn columns(&self) -> Vec<IntVector> {
        (0..self.n).map(|c| self.column(c)).collect()
    }

    /// Largest entry of the matrix.
    pub fn max_entry(&self) -> i64 {
        self.rows
            .iter()
            .flat_map(|r| r.coords().iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Primitive generator `p_l` (0-based `l`) in the basis `p_1, …, p_n`.
    pub fn ray(&self, l: usize) -> IntVector {
        if l < self.n {
            IntVector::unit(self.n, l)
        } else {
            IntVector(self.rows[l - self.n].coords().iter().map(|a| -a).collect())
        }
    }

    pub fn rays(&self) -> Vec<IntVector> {
        (0..self.m()).map(|l| self.ray(l)).collect()
    }

    /// Pairing `⟨e, p_l⟩` of a vector of `M` (dual coordinates) with ray `l`.
    pub fn pairing(&self, e: &IntVector, l: usize) -> i64 {
        if l < self.n {
            e.coords()[l]
        } else {
            -self.rows[l - self.n]
                .coords()
                .iter()
                .zip(e.coords())
                .map(|(a, b)| a * b)
                .sum::<i64>()
        }
    }

    /// The matrix with columns reordered: new column `i` is old column `perm[i]`.
    pub fn permute_columns(&self, perm: &[usize]) -> RayMatrix {
        assert_eq!(perm.len(), self.n, "permutation length");
        let rows = self
            .rows
            .iter()
            .map(|r| IntVector(perm.iter().map(|&p| r.coords()[p]).collect()))
            .collect();
        RayMatrix { n: self.n, rows }
    }

    /// The ray list `{e_1, …, e_n, −rows}` in the basis coordinates.
    pub fn to_ray_list(&self) -> RayList {
        RayList {
            n: self.n,
            rays: self.rays(),
        }
    }
}

impl fmt::Display for RayMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                r.coords()
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}", rows.join("; "))
    }
}

/// `validate_ray_matrix` under its operation name.
pub fn validate_ray_matrix(raw: &[Vec<i64>], n: usize) -> Result<RayMatrix, FanError> {
    RayMatrix::new(n, raw.to_vec())
}

/// The primitive ray generators of a fan in some fixed coordinates of `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RayList {
    n: usize,
    rays: Vec<IntVector>,
}

impl RayList {
    /// Requires primitive, nonzero, pairwise distinct rays of length `n`.
    pub fn new(n: usize, rays: Vec<IntVector>) -> Result<Self, FanError> {
        if n == 0 {
            return Err(FanError::InvalidRayList("rank n must be positive".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != n {
                return Err(FanError::InvalidRayList(format!(
                    "ray {} has {} coordinates, expected {n}",
                    i + 1,
                    r.len()
                )));
            }
            if r.is_zero() {
                return Err(FanError::InvalidRayList(format!("ray {} is zero", i + 1)));
            }
            if !r.is_primitive() {
                return Err(FanError::InvalidRayList(format!(
                    "ray {} = {r} is not primitive",
                    i + 1
                )));
            }
        }
        for i in 0..rays.len() {
            for j in i + 1..rays.len() {
                if rays[i] == rays[j] {
                    return Err(FanError::InvalidRayList(format!(
                        "rays {} and {} coincide",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(RayList { n, rays })
    }

    /// Like [`RayList::new`] but first divides each generator by its content.
    pub fn from_generators(n: usize, gens: Vec<IntVector>) -> Result<Self, FanError> {
        let rays = gens
            .iter()
            .map(lattice::primitive_normalize)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, rays)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }
}

/// A bilateral labeling of a ray list together with its ray matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bilateralization {
    /// Indices (0-based, increasing) of the rays forming the basis.
    pub basis_indices: Vec<usize>,
    /// `permutation[l]` is the input index of the ray labeled `p_{l+1}`:
    /// basis rays first, then the remaining rays in input order.
    pub permutation: Vec<usize>,
    pub matrix: RayMatrix,
}

impl Bilateralization {
    /// Re-checks the witness against the original ray list.
    pub fn verify(&self, rl: &RayList) -> bool {
        let n = rl.n();
        if self.basis_indices.len() != n || self.permutation.len() != rl.len() {
            return false;
        }
        let basis: Vec<IntVector> = self
            .basis_indices
            .iter()
            .map(|&i| rl.rays()[i].clone())
            .collect();
        let Ok(basis) = Basis::new(basis) else {
            return false;
        };
        self.permutation[n..].iter().enumerate().all(|(k, &idx)| {
            match lattice::coords_in_basis(&rl.rays()[idx], &basis) {
                Ok(c) => {
                    c.coords().iter().all(|&x| x <= 0)
                        && c.checked_neg().ok().as_ref() == Some(&self.matrix.rows()[k])
                }
                Err(_) => false,
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_subsets: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_subsets: DEFAULT_MAX_SUBSETS,
        }
    }
}

fn binomial(m: usize, k: usize) -> u64 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (m - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Advances `idx` to the next `k`-subset of `0..m` in lexicographic order.
fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < m - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Exact comparison of the angles of two nonzero planar vectors in `[0, 2π)`.
pub(crate) fn angle_cmp(u: &IntVector, v: &IntVector) -> Ordering {
    let half = |w: &IntVector| {
        let (x, y) = (w.coords()[0], w.coords()[1]);
        u8::from(!(y > 0 || (y == 0 && x > 0)))
    };
    half(u).cmp(&half(v)).then_with(|| {
        let cross = i128::from(u.coords()[0]) * i128::from(v.coords()[1])
            - i128::from(u.coords()[1]) * i128::from(v.coords()[0]);
        0.cmp(&cross)
    })
}

pub(crate) fn cross2(u: &IntVector, v: &IntVector) -> i128 {
    i128::from(u.coords()[0]) * i128::from(v.coords()[1])
        - i128::from(u.coords()[1]) * i128::from(v.coords()[0])
}

/// Checks that rank-2 rays cover the plane: every angular gap is below π.
pub fn check_planar_completeness(rl: &RayList) -> Result<(), FanError> {
    assert_eq!(rl.n(), 2, "planar check needs rank 2");
    let mut sorted = rl.rays().to_vec();
    sorted.sort_by(angle_cmp);
    for i in 0..sorted.len() {
        let u = &sorted[i];
        let v = &sorted[(i + 1) % sorted.len()];
        if sorted.len() < 3 || cross2(u, v) <= 0 {
            return Err(FanError::IncompletePlanarFan {
                first: u.clone(),
                second: v.clone(),
            });
        }
    }
    Ok(())
}

/// Exhaustive lexicographic search for a bilateral witness, with no
/// completeness or span checks.
pub fn find_bilateral_witness(
    rl: &RayList,
    opts: SearchOptions,
) -> Result<Option<Bilateralization>, FanError> {
    let n = rl.n();
    let m = rl.len();
    if m <= n {
        return Ok(None);
    }
    let count = binomial(m, n);
    if count > opts.max_subsets {
        return Err(FanError::SearchCapExceeded {
            m,
            n,
            count,
            cap: opts.max_subsets,
        });
    }
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        if let Some(w) = try_witness(rl, &idx)? {
            return Ok(Some(w));
        }
        if !next_combination(&mut idx, m) {
            return Ok(None);
        }
    }
}

fn try_witness(rl: &RayList, idx: &[usize]) -> Result<Option<Bilateralization>, FanError> {
    let vs: Vec<IntVector> = idx.iter().map(|&i| rl.rays()[i].clone()).collect();
    let Ok(basis) = Basis::new(vs) else {
        return Ok(None);
    };
    let mut rows = Vec::with_capacity(rl.len() - idx.len());
    let mut rest = Vec::with_capacity(rl.len() - idx.len());
    for (l, ray) in rl.rays().iter().enumerate() {
        if idx.contains(&l) {
            continue;
        }
        let c = lattice::coords_in_basis(ray, &basis)?;
        if c.coords().iter().any(|&x| x > 0) {
            return Ok(None);
        }
        rows.push(c.checked_neg()?.0);
        rest.push(l);
    }
    // A zero column cannot occur for a complete fan; skip such candidates.
    let Ok(matrix) = RayMatrix::new(rl.n(), rows) else {
        return Ok(None);
    };
    let permutation = idx.iter().copied().chain(rest).collect();
    Ok(Some(Bilateralization {
        basis_indices: idx.to_vec(),
        permutation,
        matrix,
    }))
}

/// Decides whether the fan with rays `rl` is bilateral.
///
/// Returns the lexicographically first witness, or `None` when no `n`-subset
/// works. Rank-2 input is checked for completeness first.
pub fn bilateralize(
    rl: &RayList,
    opts: SearchOptions,
) -> Result<Option<Bilateralization>, FanError> {
    let n = rl.n();
    let rank = lattice::rank(rl.rays());
    if rank < n {
        return Err(FanError::DegenerateRaySet { rank, n });
    }
    if n == 2 {
        check_planar_completeness(rl)?;
    }
    find_bilateral_witness(rl, opts)
}
