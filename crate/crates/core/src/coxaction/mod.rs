//! Root subgroups as substitutions of the Cox coordinates `x_1, …, x_m`.
//!
//! For a positive root `e ∈ ℜ_l^+` the derivation `∂_e = x^{θ(e)} ∂/∂x_l`,
//! with `θ(e)_s = ⟨e, p_s⟩` for `s ≠ l` and `θ(e)_l = 0`, squares to zero on
//! every coordinate, so `u_e(α) = exp(α ∂_e)` is the substitution
//! `x_l ↦ x_l + α x^{θ(e)}`.
//!
//! Parameters `α` are polynomials in auxiliary variables placed after the
//! `m` coordinates, so identities can be checked symbolically. Composition
//! `compose(g, h)` substitutes the images of `h` into those of `g`.

mod matrix;
mod poly;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use thiserror::Error;

use crate::groups::RootSet;
use crate::lattice::IntVector;
use crate::liealg;
use crate::roots::{Root, RootSystem};

pub use matrix::{matrix_embedding_check, EmbeddingReport, UniTriMatrix};
pub use poly::{Exponents, Poly};

/// Default bound on the total degree of any intermediate polynomial.
pub const DEFAULT_DEGREE_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxError {
    #[error("{0} is not a positive root")]
    NotPositive(String),
    #[error("polynomial degree {degree} exceeds cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },
    #[error("parameter index {index} out of range for {count} parameters")]
    ParamOutOfRange { index: usize, count: usize },
    #[error("image of x{var} leaves the invariant span: {term}")]
    NotInSpan { var: usize, term: String },
    #[error("{0}")]
    Mismatch(String),
}

/// A substitution `x_i ↦ images[i]` of the Cox coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyAutomorphism {
    pub images: Vec<Poly>,
}

impl PolyAutomorphism {
    pub fn m(&self) -> usize {
        self.images.len()
    }
}

/// The Cox ring of a radiant variety with `nparams` symbolic parameters.
#[derive(Debug, Clone)]
pub struct CoxModel {
    rs: RootSystem,
    nparams: usize,
    degree_cap: u32,
}

impl CoxModel {
    pub fn new(rs: &RootSystem, nparams: usize) -> Self {
        CoxModel {
            rs: rs.clone(),
            nparams,
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }

    pub fn with_degree_cap(mut self, cap: u32) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn m(&self) -> usize {
        self.rs.m()
    }

    /// Coordinates plus parameters.
    pub fn nvars(&self) -> usize {
        self.m() + self.nparams
    }

    /// The symbolic parameter with index `k`.
    pub fn param(&self, k: usize) -> Result<Poly, CoxError> {
        if k >= self.nparams {
            return Err(CoxError::ParamOutOfRange {
                index: k,
                count: self.nparams,
            });
        }
        Ok(Poly::var(self.nvars(), self.m() + k))
    }

    pub fn int(&self, c: i64) -> Poly {
        Poly::int(self.nvars(), c)
    }

    pub fn rational(&self, c: BigRational) -> Poly {
        Poly::constant(self.nvars(), c)
    }

    /// The coordinate `x_i` (0-based).
    pub fn coordinate(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), i)
    }

    pub fn identity(&self) -> PolyAutomorphism {
        PolyAutomorphism {
            images: (0..self.m()).map(|i| self.coordinate(i)).collect(),
        }
    }

    /// `θ(e)`, the exponent vector of `x^{θ(e)}` (coordinates only).
    pub fn theta(&self, e: &Root) -> Exponents {
        let a = self.rs.matrix();
        (0..self.m())
            .map(|s| {
                if s == e.ray {
                    0
                } else {
                    u32::try_from(a.pairing(&e.e, s)).expect("positive roots pair non-negatively")
                }
            })
            .collect()
    }

    fn monomial(&self, exps: &[u32], c: BigRational) -> Poly {
        let mut full = exps.to_vec();
        full.resize(self.nvars(), 0);
        Poly::monomial(self.nvars(), full, c)
    }

    /// `x^{θ(e)}`.
    pub fn theta_monomial(&self, e: &Root) -> Poly {
        self.monomial(&self.theta(e), BigRational::from_integer(1.into()))
    }

    /// `u_e(α): x_l ↦ x_l + α x^{θ(e)}`.
    pub fn root_automorphism(&self, e: &Root, alpha: &Poly) -> Result<PolyAutomorphism, CoxError> {
        if !self.rs.is_positive(e) {
            return Err(CoxError::NotPositive(e.to_string()));
        }
        let mut g = self.identity();
        let shift = alpha * &self.theta_monomial(e);
        g.images[e.ray] = &g.images[e.ray] + &shift;
        self.check_degree(&g)?;
        Ok(g)
    }

    /// `u_e(α)^{-1} = u_e(−α)`.
    pub fn root_inverse(&self, e: &Root, alpha: &Poly) -> Result<PolyAutomorphism, CoxError> {
        self.root_automorphism(e, &-alpha)
    }

    fn check_degree(&self, g: &PolyAutomorphism) -> Result<(), CoxError> {
        let degree = g.images.iter().map(Poly::degree).max().unwrap_or(0);
        if degree > self.degree_cap {
            return Err(CoxError::DegreeCap {
                degree,
                cap: self.degree_cap,
            });
        }
        Ok(())
    }

    /// Substitutes the images of `h` into those of `g`.
    pub fn compose(
        &self,
        g: &PolyAutomorphism,
        h: &PolyAutomorphism,
    ) -> Result<PolyAutomorphism, CoxError> {
        let out = PolyAutomorphism {
            images: g.images.iter().map(|p| p.substitute(&h.images)).collect(),
        };
        self.check_degree(&out)?;
        Ok(out)
    }

    /// Composes a sequence left to right.
    pub fn compose_all(&self, gs: &[PolyAutomorphism]) -> Result<PolyAutomorphism, CoxError> {
        let mut acc = self.identity();
        for g in gs {
            acc = self.compose(&acc, g)?;
        }
        Ok(acc)
    }

    /// Whether each `x_i` with `i < n` maps to `x_i` plus terms in
    /// `x_{i+1}, …, x_m` only, and the remaining coordinates are fixed.
    pub fn is_triangular(&self, g: &PolyAutomorphism) -> bool {
        let n = self.rs.n();
        g.images.iter().enumerate().all(|(i, p)| {
            let own = self.coordinate(i);
            let rest = p - &own;
            if i >= n {
                return rest.is_zero();
            }
            let ok = rest.terms().all(|(e, _)| e[..=i].iter().all(|&d| d == 0));
            ok
        })
    }

    /// The root `e ∈ ℜ_i^+` with `x^{θ(e)}` equal to the coordinate part of
    /// `exps`, if any.
    fn root_of_monomial(&self, i: usize, exps: &[u32]) -> Option<Root> {
        let n = self.rs.n();
        if exps[i] != 0 {
            return None;
        }
        let mut c: Vec<i64> = exps[..n].iter().map(|&d| i64::from(d)).collect();
        c[i] = -1;
        let r = Root::new(i, IntVector(c));
        (self.rs.is_positive(&r) && self.theta(&r) == exps[..self.m()]).then_some(r)
    }

    /// Whether every term of `g(x_i)` other than `x_i` is `x^{θ(e)}` for a
    /// root `e ∈ M_i`, and coordinates outside the basis are fixed.
    pub fn support_in(&self, g: &PolyAutomorphism, m: &RootSet) -> bool {
        let n = self.rs.n();
        g.images.iter().enumerate().all(|(i, p)| {
            let rest = p - &self.coordinate(i);
            if i >= n {
                return rest.is_zero();
            }
            let ok = rest.terms().all(|(e, _)| {
                self.root_of_monomial(i, &e[..self.m()])
                    .is_some_and(|r| m.contains(&r))
            });
            ok
        })
    }
}

fn binom(d: i64, k: i64) -> BigRational {
    BigRational::from_integer(binomial(BigInt::from(d), BigInt::from(k)))
}

/// Checks `u_{e'}(α')^{-1} u_e(α) u_{e'}(α') = ∏_{k=0}^{d} u_{e+ke'}(C(d,k) α α'^k)`
/// for `e ∈ ℜ_i^+`, `e' ∈ ℜ_j^+`, `i < j`, `d = ⟨e, p_j⟩`.
pub fn verify_conjugation(
    model: &CoxModel,
    e: &Root,
    e2: &Root,
    alpha: &Poly,
    alpha2: &Poly,
) -> Result<bool, CoxError> {
    if e2.ray <= e.ray {
        return Err(CoxError::Mismatch(format!(
            "{e2} must lie on a later ray than {e}"
        )));
    }
    let d = e.coords()[e2.ray];
    let lhs = model.compose_all(&[
        model.root_inverse(e2, alpha2)?,
        model.root_automorphism(e, alpha)?,
        model.root_automorphism(e2, alpha2)?,
    ])?;
    let mut factors = Vec::new();
    let mut term = e.e.clone();
    for k in 0..=d {
        if k > 0 {
            term = term
                .checked_add(&e2.e)
                .map_err(|err| CoxError::Mismatch(err.to_string()))?;
        }
        let coeff = (alpha * &alpha2.pow(k as u32)).scale(&binom(d, k));
        factors.push(model.root_automorphism(&Root::new(e.ray, term.clone()), &coeff)?);
    }
    let rhs = model.compose_all(&factors)?;
    Ok(lhs == rhs)
}

/// Result of expanding `u_f(t)^{-1} u_e(s)^{-1} u_f(t) u_e(s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorCheck {
    /// Coefficient of `s t x^{θ(e+f)}` in the image of the moved coordinate,
    /// or `None` when the commutator is the identity.
    pub group_coeff: Option<BigRational>,
    /// The Lie bracket `[∂_e, ∂_f]`.
    pub bracket: Option<liealg::Bracket>,
}

impl CommutatorCheck {
    pub fn consistent(&self) -> bool {
        match (&self.group_coeff, &self.bracket) {
            (None, None) => true,
            (Some(c), Some(b)) => *c == BigRational::from_integer(b.coeff.into()),
            _ => false,
        }
    }
}

/// Compares the first-order term of the group commutator with the bracket.
/// Needs a model with at least two parameters (`s`, `t`).
pub fn commutator_check(model: &CoxModel, e: &Root, f: &Root) -> Result<CommutatorCheck, CoxError> {
    let s = model.param(0)?;
    let t = model.param(1)?;
    let comm = model.compose_all(&[
        model.root_inverse(f, &t)?,
        model.root_inverse(e, &s)?,
        model.root_automorphism(f, &t)?,
        model.root_automorphism(e, &s)?,
    ])?;
    let bracket = liealg::bracket(model.root_system(), e, f)
        .map_err(|err| CoxError::NotPositive(err.to_string()))?;
    let group_coeff = if comm == model.identity() {
        None
    } else {
        let target = match &bracket {
            Some(b) => b.result.clone(),
            None => {
                return Ok(CommutatorCheck {
                    group_coeff: Some(BigRational::from_integer(0.into())),
                    bracket,
                })
            }
        };
        let mut exps = model.theta(&target);
        exps.resize(model.nvars(), 0);
        exps[model.m()] += 1;
        exps[model.m() + 1] += 1;
        Some(comm.images[target.ray].coeff(&exps))
    };
    Ok(CommutatorCheck {
        group_coeff,
        bracket,
    })
}
