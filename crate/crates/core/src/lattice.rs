//! Exact integer-vector arithmetic on the lattices `N` and `M`.
//!
//! Coordinates are stored as `i64`; every operation that could overflow is
//! checked. Determinants and change-of-basis solves are carried out over
//! `BigInt`/`BigRational` so intermediate growth never truncates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("zero ray")]
    ZeroRay,
    #[error("length mismatch: expected {expected} coordinates, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("expected {expected} basis vectors, found {found}")]
    WrongVectorCount { expected: usize, found: usize },
    #[error("vectors do not form a unimodular basis (determinant {det})")]
    NotUnimodular { det: String },
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
    #[error("empty vector")]
    Empty,
}

/// A vector of `N` or `M` in fixed coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntVector(pub Vec<i64>);

impl IntVector {
    pub fn new(coords: Vec<i64>) -> Self {
        IntVector(coords)
    }

    pub fn zeros(n: usize) -> Self {
        IntVector(vec![0; n])
    }

    /// The `i`-th standard unit vector of length `n` (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        IntVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Non-negative gcd of the entries; 0 only for the zero vector.
    pub fn content(&self) -> u64 {
        self.0.iter().fold(0u64, |g, &c| g.gcd(&c.unsigned_abs()))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn dot(&self, other: &IntVector) -> Result<i64, LatticeError> {
        check_len(self.len(), other.len())?;
        self.0.iter().zip(&other.0).try_fold(0i64, |acc, (a, b)| {
            a.checked_mul(*b)
                .and_then(|p| acc.checked_add(p))
                .ok_or(LatticeError::Overflow)
        })
    }

    pub fn checked_add(&self, other: &IntVector) -> Result<IntVector, LatticeError> {
        check_len(self.len(), other.len())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(LatticeError::Overflow))
            .collect::<Result<_, _>>()
            .map(IntVector)
    }

    pub fn checked_neg(&self) -> Result<IntVector, LatticeError> {
        self.0
            .iter()
            .map(|a| a.checked_neg().ok_or(LatticeError::Overflow))
            .collect::<Result<_, _>>()
            .map(IntVector)
    }

    pub fn checked_scale(&self, k: i64) -> Result<IntVector, LatticeError> {
        self.0
            .iter()
            .map(|a| a.checked_mul(k).ok_or(LatticeError::Overflow))
            .collect::<Result<_, _>>()
            .map(IntVector)
    }

    /// Entrywise `self >= other`.
    pub fn dominates(&self, other: &IntVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector(v)
    }
}

fn check_len(expected: usize, found: usize) -> Result<(), LatticeError> {
    if expected == found {
        Ok(())
    } else {
        Err(LatticeError::LengthMismatch { expected, found })
    }
}

/// Divides `v` by the gcd of its entries.
pub fn primitive_normalize(v: &IntVector) -> Result<IntVector, LatticeError> {
    if v.is_empty() {
        return Err(LatticeError::Empty);
    }
    let g = v.content();
    if g == 0 {
        return Err(LatticeError::ZeroRay);
    }
    let g = i64::try_from(g).map_err(|_| LatticeError::Overflow)?;
    Ok(IntVector(v.0.iter().map(|c| c / g).collect()))
}

fn square_matrix(vs: &[IntVector]) -> Result<usize, LatticeError> {
    let n = vs.first().map(IntVector::len).ok_or(LatticeError::Empty)?;
    if n == 0 {
        return Err(LatticeError::Empty);
    }
    for v in vs {
        check_len(n, v.len())?;
    }
    if vs.len() != n {
        return Err(LatticeError::WrongVectorCount {
            expected: n,
            found: vs.len(),
        });
    }
    Ok(n)
}

/// Exact determinant of the matrix whose rows are `vs` (Bareiss elimination).
pub fn determinant(vs: &[IntVector]) -> Result<BigInt, LatticeError> {
    let n = square_matrix(vs)?;
    let mut m: Vec<Vec<BigInt>> = vs
        .iter()
        .map(|v| v.0.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    Ok(sign * &m[n - 1][n - 1])
}

/// Rank over the rationals of the matrix whose rows are `vs`.
pub fn rank(vs: &[IntVector]) -> usize {
    let Some(width) = vs.first().map(IntVector::len) else {
        return 0;
    };
    let mut m: Vec<Vec<BigRational>> = vs
        .iter()
        .map(|v| {
            v.0.iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect()
        })
        .collect();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if !m[i][col].is_zero() {
                let f = &m[i][col] / &m[r][col];
                for c in col..width {
                    let t = &m[r][c] * &f;
                    m[i][c] = &m[i][c] - t;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn is_unimodular_basis(vs: &[IntVector]) -> Result<bool, LatticeError> {
    Ok(determinant(vs)?.abs().is_one())
}

/// A lattice basis: `n` vectors of length `n` with determinant ±1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Basis {
    vectors: Vec<IntVector>,
}

impl Basis {
    pub fn new(vectors: Vec<IntVector>) -> Result<Self, LatticeError> {
        let det = determinant(&vectors)?;
        if !det.abs().is_one() {
            return Err(LatticeError::NotUnimodular {
                det: det.to_string(),
            });
        }
        Ok(Basis { vectors })
    }

    pub fn standard(n: usize) -> Self {
        Basis {
            vectors: (0..n).map(|i| IntVector::unit(n, i)).collect(),
        }
    }

    pub fn vectors(&self) -> &[IntVector] {
        &self.vectors
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }
}

/// Integer coordinates `c` with `v = Σ c_j b_j`.
pub fn coords_in_basis(v: &IntVector, b: &Basis) -> Result<IntVector, LatticeError> {
    let n = b.rank();
    check_len(n, v.len())?;
    // Augmented system: columns are basis vectors, right-hand side is v.
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|row| {
            let mut r: Vec<BigRational> = b
                .vectors
                .iter()
                .map(|bv| BigRational::from_integer(BigInt::from(bv.0[row])))
                .collect();
            r.push(BigRational::from_integer(BigInt::from(v.0[row])));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("unimodular basis has full rank");
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let t = &m[col][c] * &f;
                    m[r][c] = &m[r][c] - t;
                }
            }
        }
    }
    m.iter()
        .map(|row| {
            let x = &row[n];
            debug_assert!(x.is_integer());
            x.to_integer().to_i64().ok_or(LatticeError::Overflow)
        })
        .collect::<Result<_, _>>()
        .map(IntVector)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IntVector {
        IntVector(v.to_vec())
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(primitive_normalize(&iv(&[2, 4])).unwrap(), iv(&[1, 2]));
        assert_eq!(
            primitive_normalize(&iv(&[1, 0, 0])).unwrap(),
            iv(&[1, 0, 0])
        );
        assert_eq!(
            primitive_normalize(&iv(&[-3, -2, -1])).unwrap(),
            iv(&[-3, -2, -1])
        );
        assert_eq!(
            primitive_normalize(&iv(&[-6, 0, 9])).unwrap(),
            iv(&[-2, 0, 3])
        );
        assert_eq!(
            primitive_normalize(&iv(&[0, 0])),
            Err(LatticeError::ZeroRay)
        );
    }

    #[test]
    fn unimodular_examples() {
        assert!(is_unimodular_basis(&[iv(&[1, 0]), iv(&[0, 1])]).unwrap());
        assert!(is_unimodular_basis(&[iv(&[1, 0]), iv(&[2, 1])]).unwrap());
        assert!(!is_unimodular_basis(&[iv(&[2, 0]), iv(&[0, 1])]).unwrap());
        assert!(matches!(
            is_unimodular_basis(&[iv(&[1, 0]), iv(&[0, 1, 0])]),
            Err(LatticeError::LengthMismatch { .. })
        ));
        assert!(matches!(
            is_unimodular_basis(&[iv(&[1, 0])]),
            Err(LatticeError::WrongVectorCount { .. })
        ));
    }

    #[test]
    fn determinant_needs_pivoting() {
        let d = determinant(&[iv(&[0, 1, 0]), iv(&[1, 0, 0]), iv(&[0, 0, 1])]).unwrap();
        assert_eq!(d, BigInt::from(-1));
        let d = determinant(&[iv(&[2, 1, 3]), iv(&[1, 0, 1]), iv(&[4, 2, 5])]).unwrap();
        assert_eq!(d, BigInt::from(1));
    }

    #[test]
    fn coords_examples() {
        let std2 = Basis::standard(2);
        assert_eq!(
            coords_in_basis(&iv(&[-1, -1]), &std2).unwrap(),
            iv(&[-1, -1])
        );
        let std3 = Basis::standard(3);
        assert_eq!(
            coords_in_basis(&iv(&[-3, -2, -1]), &std3).unwrap(),
            iv(&[-3, -2, -1])
        );
        let b = Basis::new(vec![iv(&[1, 0]), iv(&[1, 1])]).unwrap();
        assert_eq!(coords_in_basis(&iv(&[1, 1]), &b).unwrap(), iv(&[0, 1]));
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank(&[iv(&[1, 2]), iv(&[2, 4])]), 1);
        assert_eq!(rank(&[iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[1, 1, 0])]), 2);
        assert_eq!(rank(&[iv(&[0, 1]), iv(&[1, 0]), iv(&[-1, -1])]), 2);
    }

    #[test]
    fn basis_rejects_non_unimodular() {
        assert!(matches!(
            Basis::new(vec![iv(&[2, 0]), iv(&[0, 1])]),
            Err(LatticeError::NotUnimodular { .. })
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn nonzero_vec() -> impl Strategy<Value = IntVector> {
            prop::collection::vec(-50i64..50, 1..5)
                .prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
                .prop_map(IntVector)
        }

        /// Unimodular bases built as products of elementary row operations.
        fn unimodular_basis() -> impl Strategy<Value = Basis> {
            (1usize..5)
                .prop_flat_map(|n| {
                    (
                        Just(n),
                        prop::collection::vec((0..n, 0..n, -3i64..4), 0..12),
                        prop::collection::vec(any::<bool>(), n),
                    )
                })
                .prop_map(|(n, ops, flips)| {
                    let mut rows: Vec<Vec<i64>> = (0..n).map(|i| IntVector::unit(n, i).0).collect();
                    for (i, j, k) in ops {
                        if i != j {
                            for c in 0..n {
                                rows[i][c] += k * rows[j][c];
                            }
                        }
                    }
                    for (i, f) in flips.into_iter().enumerate() {
                        if f {
                            rows[i].iter_mut().for_each(|c| *c = -*c);
                        }
                    }
                    Basis::new(rows.into_iter().map(IntVector).collect()).unwrap()
                })
        }

        proptest! {
            #[test]
            fn normalize_is_idempotent(v in nonzero_vec()) {
                let p = primitive_normalize(&v).unwrap();
                prop_assert!(p.is_primitive());
                prop_assert_eq!(primitive_normalize(&p).unwrap(), p.clone());
                let g = v.content() as i64;
                prop_assert_eq!(p.checked_scale(g).unwrap(), v);
            }

            #[test]
            fn basis_vectors_have_unit_coords(b in unimodular_basis()) {
                let n = b.rank();
                for (j, v) in b.vectors().iter().enumerate() {
                    prop_assert_eq!(coords_in_basis(v, &b).unwrap(), IntVector::unit(n, j));
                }
            }

            #[test]
            fn unimodularity_is_permutation_invariant(b in unimodular_basis(), rot in 0usize..5) {
                let mut vs = b.vectors().to_vec();
                let r = rot % vs.len();
                vs.rotate_left(r);
                prop_assert!(is_unimodular_basis(&vs).unwrap());
                vs.reverse();
                prop_assert!(is_unimodular_basis(&vs).unwrap());
            }
        }
    }
}
