//! The nilpotent Lie algebra spanned by the root derivations `∂_e`, `e ∈ ℜ^+`.
//!
//! For `e ∈ ℜ_i^+`, `e' ∈ ℜ_j^+` with `i < j` and `d = ⟨e, p_j⟩`:
//! `[∂_e, ∂_{e'}] = −d ∂_{e+e'}` when `d > 0` and `0` otherwise. Derivations
//! attached to the same ray commute. Every bracket of basis elements is thus
//! a scalar multiple of a single basis element, so ideals, centralizers and
//! the series below are spanned by subsets of roots. The center is also
//! computed as an honest kernel of a rational linear map, which serves as an
//! oracle for the combinatorial center formula.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{self, IntVector};
use crate::roots::{Root, RootSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("{0} is not a positive root")]
    NotPositive(String),
    #[error("Jacobi identity fails on ({a}, {b}, {c})")]
    Jacobi { a: String, b: String, c: String },
    #[error("bracket table is not antisymmetric on ({a}, {b})")]
    Antisymmetry { a: String, b: String },
}

/// `coeff · ∂_result`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Bracket {
    pub coeff: i64,
    pub result: Root,
}

fn require_positive(rs: &RootSystem, r: &Root) -> Result<(), LieError> {
    if rs.is_positive(r) {
        Ok(())
    } else {
        Err(LieError::NotPositive(r.to_string()))
    }
}

/// `[∂_e, ∂_f]` for positive roots, or `None` when the derivations commute.
pub fn bracket(rs: &RootSystem, e: &Root, f: &Root) -> Result<Option<Bracket>, LieError> {
    require_positive(rs, e)?;
    require_positive(rs, f)?;
    Ok(bracket_unchecked(e, f))
}

fn bracket_unchecked(e: &Root, f: &Root) -> Option<Bracket> {
    use std::cmp::Ordering::*;
    match e.ray.cmp(&f.ray) {
        Equal => None,
        Less => {
            let d = e.coords()[f.ray];
            (d > 0).then(|| Bracket {
                coeff: -d,
                result: Root::new(e.ray, add(&e.e, &f.e)),
            })
        }
        Greater => bracket_unchecked(f, e).map(|b| Bracket {
            coeff: -b.coeff,
            result: b.result,
        }),
    }
}

fn add(a: &IntVector, b: &IntVector) -> IntVector {
    a.checked_add(b).expect("root coordinates are small")
}

/// Structure constants on a fixed list of positive roots.
#[derive(Debug, Clone)]
pub struct BracketTable {
    basis: Vec<Root>,
    index: HashMap<Root, usize>,
    entries: HashMap<(usize, usize), Bracket>,
}

impl BracketTable {
    pub fn new(rs: &RootSystem, basis: &[Root]) -> Result<Self, LieError> {
        for r in basis {
            require_positive(rs, r)?;
        }
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let mut entries = HashMap::new();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                if let Some(br) = bracket_unchecked(a, b) {
                    entries.insert((i, j), br);
                }
            }
        }
        Ok(BracketTable {
            basis: basis.to_vec(),
            index,
            entries,
        })
    }

    /// Table on all of `ℜ^+`.
    pub fn full(rs: &RootSystem) -> Self {
        Self::new(rs, &rs.positive_roots()).expect("positive roots")
    }

    pub fn basis(&self) -> &[Root] {
        &self.basis
    }

    pub fn get(&self, a: &Root, b: &Root) -> Option<&Bracket> {
        let i = *self.index.get(a)?;
        let j = *self.index.get(b)?;
        self.entries.get(&(i, j))
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.len()
    }

    pub fn check_antisymmetry(&self) -> Result<(), LieError> {
        for (&(i, j), br) in &self.entries {
            let back = self.entries.get(&(j, i));
            if back.map(|b| (b.coeff, &b.result)) != Some((-br.coeff, &br.result)) {
                return Err(LieError::Antisymmetry {
                    a: self.basis[i].to_string(),
                    b: self.basis[j].to_string(),
                });
            }
        }
        Ok(())
    }

    /// Exhaustive Jacobi check on all basis triples. Inner brackets may leave
    /// the basis; they are evaluated with the defining formula.
    pub fn check_jacobi(&self) -> Result<(), LieError> {
        let b = &self.basis;
        for x in b {
            for y in b {
                for z in b {
                    let mut sum: BTreeMap<Root, i64> = BTreeMap::new();
                    for (p, q, r) in [(x, y, z), (y, z, x), (z, x, y)] {
                        // [p, [q, r]]
                        if let Some(inner) = bracket_unchecked(q, r) {
                            if let Some(outer) = bracket_unchecked(p, &inner.result) {
                                *sum.entry(outer.result).or_default() += inner.coeff * outer.coeff;
                            }
                        }
                    }
                    if sum.values().any(|&c| c != 0) {
                        return Err(LieError::Jacobi {
                            a: x.to_string(),
                            b: y.to_string(),
                            c: z.to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Center of the span of `{∂_e : e ∈ M}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LieCenter {
    /// Basis roots commuting with all of `M`.
    pub roots: Vec<Root>,
    /// Dimension of the kernel of `δ ↦ ([δ, ∂_f])_{f ∈ M}`.
    pub kernel_dim: usize,
}

/// Solves the linear system for the center and reads off the root basis.
/// `m` must be a subset of `table.basis()`.
pub fn lie_center(m: &[Root], table: &BracketTable) -> LieCenter {
    // Rows are indexed by (f, result root); columns by e ∈ M.
    let mut rows: BTreeMap<(usize, Root), Vec<i64>> = BTreeMap::new();
    for (col, e) in m.iter().enumerate() {
        for (fi, f) in m.iter().enumerate() {
            if let Some(br) = table.get(e, f) {
                rows.entry((fi, br.result.clone()))
                    .or_insert_with(|| vec![0; m.len()])[col] += br.coeff;
            }
        }
    }
    let rows: Vec<IntVector> = rows.into_values().map(IntVector).collect();
    let rank = if rows.is_empty() {
        0
    } else {
        lattice::rank(&rows)
    };
    let roots = m
        .iter()
        .filter(|e| m.iter().all(|f| table.get(e, f).is_none()))
        .cloned()
        .collect();
    LieCenter {
        roots,
        kernel_dim: m.len() - rank,
    }
}

/// Lower central, upper central and derived series as root subsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LieSeries {
    /// `M = L_0 ⊋ L_1 ⊋ … ⊋ L_c = ∅`.
    pub lower: Vec<Vec<Root>>,
    /// `∅ = Z_0 ⊊ Z_1 ⊊ … ⊊ Z_c = M`.
    pub upper: Vec<Vec<Root>>,
    /// `M = D_0 ⊋ D_1 ⊋ … ⊋ D_s = ∅`.
    pub derived: Vec<Vec<Root>>,
}

impl LieSeries {
    pub fn nilpotency_class(&self) -> usize {
        self.lower.len() - 1
    }

    pub fn derived_length(&self) -> usize {
        self.derived.len() - 1
    }
}

fn brackets_of(table: &BracketTable, a: &BTreeSet<Root>, b: &BTreeSet<Root>) -> BTreeSet<Root> {
    a.iter()
        .flat_map(|x| b.iter().filter_map(move |y| table.get(x, y)))
        .map(|br| br.result.clone())
        .collect()
}

/// Computes the three series directly from the bracket table, which must
/// cover `m`.
pub fn lie_series_oracle(m: &[Root], table: &BracketTable) -> LieSeries {
    let full: BTreeSet<Root> = m.iter().cloned().collect();
    let limit = m.len() + 2;

    let mut lower = vec![full.clone()];
    while !lower.last().unwrap().is_empty() && lower.len() <= limit {
        let next = brackets_of(table, &full, lower.last().unwrap());
        lower.push(next);
    }

    let mut upper = vec![BTreeSet::new()];
    while upper.last().unwrap() != &full && upper.len() <= limit {
        let prev = upper.last().unwrap();
        let next: BTreeSet<Root> = full
            .iter()
            .filter(|e| {
                full.iter().all(|f| match table.get(e, f) {
                    None => true,
                    Some(br) => prev.contains(&br.result),
                })
            })
            .cloned()
            .collect();
        upper.push(next);
    }

    let mut derived = vec![full.clone()];
    while !derived.last().unwrap().is_empty() && derived.len() <= limit {
        let d = derived.last().unwrap();
        let next = brackets_of(table, d, d);
        derived.push(next);
    }

    let to_vec = |v: Vec<BTreeSet<Root>>| v.into_iter().map(|s| s.into_iter().collect()).collect();
    LieSeries {
        lower: to_vec(lower),
        upper: to_vec(upper),
        derived: to_vec(derived),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::RayMatrix;

    fn rs(n: usize, rows: &[&[i64]]) -> RootSystem {
        RootSystem::new(&RayMatrix::new(n, rows.iter().map(|r| r.to_vec()).collect()).unwrap())
    }

    fn root(ray: usize, e: &[i64]) -> Root {
        Root::new(ray, IntVector(e.to_vec()))
    }

    #[test]
    fn projective_plane_bracket() {
        let p2 = rs(2, &[&[1, 1]]);
        let b = bracket(&p2, &root(0, &[-1, 1]), &root(1, &[0, -1]))
            .unwrap()
            .unwrap();
        assert_eq!(
            b,
            Bracket {
                coeff: -1,
                result: root(0, &[-1, 0])
            }
        );
        let back = bracket(&p2, &root(1, &[0, -1]), &root(0, &[-1, 1]))
            .unwrap()
            .unwrap();
        assert_eq!(back.coeff, 1);
    }

    #[test]
    fn same_ray_commutes() {
        let p2 = rs(2, &[&[1, 1]]);
        assert_eq!(
            bracket(&p2, &root(0, &[-1, 0]), &root(0, &[-1, 1])).unwrap(),
            None
        );
    }

    #[test]
    fn p123_bracket_lands_in_root_list() {
        let p = rs(3, &[&[3, 2, 1]]);
        let b = bracket(&p, &root(0, &[-1, 1, 1]), &root(1, &[0, -1, 1]))
            .unwrap()
            .unwrap();
        assert_eq!(
            b,
            Bracket {
                coeff: -1,
                result: root(0, &[-1, 0, 2])
            }
        );
        assert!(p.is_positive(&b.result));
    }

    #[test]
    fn non_positive_input_rejected() {
        let p2 = rs(2, &[&[1, 1]]);
        assert!(matches!(
            bracket(&p2, &root(1, &[1, -1]), &root(1, &[0, -1])),
            Err(LieError::NotPositive(_))
        ));
        assert!(BracketTable::new(&p2, &[root(0, &[-1, 5])]).is_err());
    }

    #[test]
    fn p123_table_is_a_lie_algebra() {
        let p = rs(3, &[&[3, 2, 1]]);
        let t = BracketTable::full(&p);
        t.check_antisymmetry().unwrap();
        t.check_jacobi().unwrap();
    }

    #[test]
    fn p123_center_and_series() {
        let p = rs(3, &[&[3, 2, 1]]);
        let t = BracketTable::full(&p);
        let m = p.positive_roots();
        let c = lie_center(&m, &t);
        assert_eq!(c.roots, vec![root(0, &[-1, 0, 0])]);
        assert_eq!(c.kernel_dim, 1);
        let s = lie_series_oracle(&m, &t);
        assert_eq!(s.lower.len(), 6);
        assert_eq!(s.nilpotency_class(), 5);
        assert_eq!(s.derived_length(), 3);
        assert_eq!(
            s.derived[2],
            vec![root(0, &[-1, 0, 0]), root(0, &[-1, 0, 1])]
        );
        assert_eq!(s.upper.first().unwrap().len(), 0);
        assert_eq!(s.upper.last().unwrap().len(), 10);
    }

    #[test]
    fn commutative_set() {
        let p = rs(3, &[&[3, 2, 1]]);
        let t = BracketTable::full(&p);
        let m: Vec<Root> = (0..3).map(|i| Root::basic(3, i)).collect();
        let c = lie_center(&m, &t);
        assert_eq!(c.roots, m);
        assert_eq!(c.kernel_dim, 3);
        let s = lie_series_oracle(&m, &t);
        assert_eq!(s.nilpotency_class(), 1);
        assert_eq!(s.derived_length(), 1);
        assert_eq!(s.lower[1], vec![]);
    }

    #[test]
    fn f1_times_p1_center() {
        let f = rs(3, &[&[1, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let t = BracketTable::full(&f);
        let c = lie_center(&f.positive_roots(), &t);
        assert_eq!(c.roots, vec![root(0, &[-1, 0, 0]), root(2, &[0, 0, -1])]);
        assert_eq!(c.kernel_dim, 2);
    }
}
