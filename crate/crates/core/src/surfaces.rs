//! Smooth complete toric surfaces given by self-intersection sequences.
//!
//! A sequence `(c_1, …, c_m)` encodes the rays through
//! `p_{s−1} + p_{s+1} = c_s p_s`, starting from `p_1 = (1, 0)`, `p_2 = (0, 1)`.
//! Every such surface is obtained from `ℙ² = (−1, −1, −1)` or a Hirzebruch
//! surface `𝔽_q = (0, q, 0, −q)` by blow-ups, each of which inserts a `1`
//! between two neighbours and adds `1` to both. A surface is radiant iff two
//! cyclically adjacent entries are both non-positive.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::fan::{self, angle_cmp, Bilateralization, FanError, RayList, SearchOptions};
use crate::groups::{self, GroupError, GroupShape, RootSet};
use crate::lattice::IntVector;
use crate::roots::{Root, RootSystem};

/// Default cap on the number of sequences produced by
/// [`enumerate_smooth_surfaces`].
pub const DEFAULT_MAX_SURFACES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("sequence needs at least 3 entries, got {0}")]
    TooShort(usize),
    #[error("sequence does not close up: p_(m+1) = {first}, p_(m+2) = {second}")]
    NotClosing { first: IntVector, second: IntVector },
    #[error("rays wind {0} times around the origin instead of once")]
    Winding(usize),
    #[error("rays {0} and {1} coincide")]
    DuplicateRays(usize, usize),
    #[error("coordinate overflow while running the recursion")]
    Overflow,
    #[error("position {position} out of range for a sequence of length {m}")]
    BadPosition { position: usize, m: usize },
    #[error("cannot blow down at position {0}: entry is not 1 or the sequence is minimal")]
    NotBlowDown(usize),
    #[error("surface is not radiant: no two adjacent entries are non-positive (Picard number {picard_number})")]
    NotRadiant { picard_number: usize },
    #[error("enumeration stopped after {0} sequences")]
    CapExceeded(usize),
    #[error("report mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A validated self-intersection sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SurfaceSequence(Vec<i64>);

impl SurfaceSequence {
    pub fn new(c: Vec<i64>) -> Result<Self, SurfaceError> {
        sequence_to_rays(&c)?;
        Ok(SurfaceSequence(c))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    /// `m − 2`.
    pub fn picard_number(&self) -> usize {
        self.0.len() - 2
    }

    pub fn rays(&self) -> Vec<IntVector> {
        sequence_to_rays(&self.0).expect("validated on construction")
    }

    /// Lexicographically smallest rotation or reflection.
    pub fn canonical(&self) -> SurfaceSequence {
        SurfaceSequence(canonical_form(&self.0))
    }
}

impl fmt::Display for SurfaceSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Runs the recursion and checks closure, unimodularity of consecutive
/// pairs, single winding and distinctness.
pub fn sequence_to_rays(c: &[i64]) -> Result<Vec<IntVector>, SurfaceError> {
    let m = c.len();
    if m < 3 {
        return Err(SurfaceError::TooShort(m));
    }
    let mut p: Vec<(i64, i64)> = vec![(1, 0), (0, 1)];
    // p_{s+1} = c_s p_s − p_{s−1}, for s = 2, …, m+1 (with c_{m+1} = c_1).
    for s in 1..=m {
        let cs = c[s % m];
        let (a, b) = (p[s], p[s - 1]);
        let next = (
            cs.checked_mul(a.0).and_then(|x| x.checked_sub(b.0)),
            cs.checked_mul(a.1).and_then(|x| x.checked_sub(b.1)),
        );
        match next {
            (Some(x), Some(y)) => p.push((x, y)),
            _ => return Err(SurfaceError::Overflow),
        }
    }
    let iv = |(x, y): (i64, i64)| IntVector(vec![x, y]);
    if p[m] != p[0] || p[m + 1] != p[1] {
        return Err(SurfaceError::NotClosing {
            first: iv(p[m]),
            second: iv(p[m + 1]),
        });
    }
    let rays: Vec<IntVector> = p[..m].iter().copied().map(iv).collect();
    for i in 0..m {
        for j in i + 1..m {
            if rays[i] == rays[j] {
                return Err(SurfaceError::DuplicateRays(i + 1, j + 1));
            }
        }
    }
    // Each step has determinant 1, hence turns counterclockwise by less than
    // π; the total turn is 2π times the number of passes through angle 0.
    let wraps = (0..m)
        .filter(|&s| angle_cmp(&rays[(s + 1) % m], &rays[s]).is_lt())
        .count();
    if wraps != 1 {
        return Err(SurfaceError::Winding(wraps));
    }
    Ok(rays)
}

/// Two cyclically adjacent entries are both `≤ 0`.
pub fn is_radiant_sequence(seq: &SurfaceSequence) -> bool {
    let c = seq.entries();
    (0..c.len()).any(|s| c[s] <= 0 && c[(s + 1) % c.len()] <= 0)
}

/// Blows up the point between `c_s` and `c_{s+1}` (1-based `s`; `s = m`
/// means the pair `c_m, c_1`).
pub fn blow_up(seq: &SurfaceSequence, s: usize) -> Result<SurfaceSequence, SurfaceError> {
    let m = seq.m();
    if s == 0 || s > m {
        return Err(SurfaceError::BadPosition { position: s, m });
    }
    let mut c = seq.0.clone();
    c[s - 1] += 1;
    c[s % m] += 1;
    c.insert(s, 1);
    SurfaceSequence::new(c)
}

/// Inverse of [`blow_up`]: removes the entry `c_s = 1` (1-based) and
/// subtracts `1` from its neighbours.
pub fn blow_down(seq: &SurfaceSequence, s: usize) -> Result<SurfaceSequence, SurfaceError> {
    let m = seq.m();
    if s == 0 || s > m {
        return Err(SurfaceError::BadPosition { position: s, m });
    }
    if seq.0[s - 1] != 1 || m <= 3 {
        return Err(SurfaceError::NotBlowDown(s));
    }
    let mut c = seq.0.clone();
    c.remove(s - 1);
    let m = c.len();
    let before = (s + m - 2) % m;
    let after = (s - 1) % m;
    c[before] -= 1;
    c[after] -= 1;
    SurfaceSequence::new(c)
}

pub fn canonical_form(c: &[i64]) -> Vec<i64> {
    let m = c.len();
    let mut rev = c.to_vec();
    rev.reverse();
    let mut best = c.to_vec();
    for base in [c.to_vec(), rev] {
        for r in 0..m {
            let rot: Vec<i64> = (0..m).map(|k| base[(r + k) % m]).collect();
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

/// Closure of `ℙ²` and `𝔽_0, …, 𝔽_{max_q}` under blow-ups with at most
/// `max_m` rays, up to rotation and reflection, sorted by length then entries.
pub fn enumerate_smooth_surfaces(
    max_m: usize,
    max_q: usize,
    cap: usize,
) -> Result<Vec<SurfaceSequence>, SurfaceError> {
    let mut seen: BTreeSet<SurfaceSequence> = BTreeSet::new();
    let mut frontier: Vec<SurfaceSequence> = Vec::new();
    let mut seeds = vec![vec![-1, -1, -1]];
    if max_m >= 4 {
        seeds.extend((0..=max_q as i64).map(|q| vec![0, q, 0, -q]));
    }
    for s in seeds.into_iter().filter(|s| s.len() <= max_m) {
        let seq = SurfaceSequence::new(s)?.canonical();
        if seen.insert(seq.clone()) {
            frontier.push(seq);
        }
    }
    while let Some(seq) = frontier.pop() {
        if seen.len() > cap {
            return Err(SurfaceError::CapExceeded(cap));
        }
        if seq.m() >= max_m {
            continue;
        }
        for s in 1..=seq.m() {
            let up = blow_up(&seq, s)?.canonical();
            // Each blow-up adds 3 to the sum, starting from 3m − 12.
            debug_assert_eq!(up.0.iter().sum::<i64>(), 3 * up.m() as i64 - 12);
            if seen.insert(up.clone()) {
                frontier.push(up);
            }
        }
    }
    if seen.len() > cap {
        return Err(SurfaceError::CapExceeded(cap));
    }
    let mut out: Vec<SurfaceSequence> = seen.into_iter().collect();
    out.sort_by(|a, b| (a.m(), &a.0).cmp(&(b.m(), &b.0)));
    Ok(out)
}

/// Unipotent structure of a radiant surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub sequence: SurfaceSequence,
    pub picard_number: usize,
    pub rays: Vec<IntVector>,
    pub bilateral: Bilateralization,
    /// Canonical column order of the ray matrix.
    pub root_system_permutation: Vec<usize>,
    /// Largest `d` with `a_{k1} ≥ d a_{k2}` for all rows (canonical
    /// columns); `0` when the columns are incomparable.
    pub d: i64,
    pub comparable: bool,
    pub umax_shape: GroupShape,
    pub umax_per_ray: GroupShape,
    pub nilpotency_class: usize,
    pub subgroups: Vec<RootSet>,
}

pub fn surface_report(seq: &SurfaceSequence) -> Result<SurfaceReport, SurfaceError> {
    if !is_radiant_sequence(seq) {
        return Err(SurfaceError::NotRadiant {
            picard_number: seq.picard_number(),
        });
    }
    let rays = seq.rays();
    let rl = RayList::new(2, rays.clone())?;
    let bilateral = fan::bilateralize(&rl, SearchOptions::default())?.ok_or_else(|| {
        SurfaceError::Mismatch("radiant sequence has no bilateral labeling".into())
    })?;
    let rs = RootSystem::new(&bilateral.matrix);
    let a = rs.matrix();
    let comparable = rs.preorder().comparable(0, 1);
    let d = if comparable {
        a.rows()
            .iter()
            .filter(|r| r.coords()[1] > 0)
            .map(|r| r.coords()[0] / r.coords()[1])
            .min()
            .expect("second column is nonzero")
    } else {
        0
    };
    let expected = (d + 1) as usize;

    let full = RootSet::full(&rs);
    let series = groups::series_report(&rs, &full)?;
    let subgroups =
        groups::enumerate_open_orbit_subgroups(&rs, groups::DEFAULT_MAX_RESULTS)?.subgroups;

    if rs.positive(0).len() != expected || series.nilpotency_class != expected {
        return Err(SurfaceError::Mismatch(format!(
            "d = {d} but |R_1^+| = {} and nilpotency class {}",
            rs.positive(0).len(),
            series.nilpotency_class
        )));
    }
    let closed_form: BTreeSet<RootSet> = (0..=d)
        .map(|l| {
            RootSet::from_roots(
                2,
                (0..=l)
                    .map(|j| Root::new(0, IntVector(vec![-1, j])))
                    .chain([Root::basic(2, 1)]),
            )
        })
        .collect();
    if subgroups.iter().cloned().collect::<BTreeSet<_>>() != closed_form {
        return Err(SurfaceError::Mismatch(
            "open-orbit subgroups differ from the chains −q1, …, −q1+l·q2".into(),
        ));
    }

    Ok(SurfaceReport {
        sequence: seq.clone(),
        picard_number: seq.picard_number(),
        rays,
        bilateral,
        root_system_permutation: rs.permutation().to_vec(),
        d,
        comparable,
        umax_shape: groups::umax_shape(&rs),
        umax_per_ray: groups::umax_per_ray(&rs),
        nilpotency_class: series.nilpotency_class,
        subgroups,
    })
}
