//! The isomorphism `U(C_s) ≅ U_{k,l}` realized on an invariant subspace.
//!
//! Let `C_s = {c, …, c+l−1}`. The span `W` of the coordinates `x_c, …,
//! x_{c+l−1}` and the monomials `x^{θ(f)}` for the roots `f ∈ ℜ_c^+` not of
//! the form `−q_c + q_j` with `j ∈ C_s` is preserved by `U(C_s)`: the
//! monomials involve no coordinate of `C_s` and are fixed. Writing the image
//! of the `a`-th basis vector of `W` as row `a` gives a matrix `ρ(g)` with
//! `ρ(compose(g, h)) = ρ(g) ρ(h)`. On generators, an elementary root
//! `−q_i + q_j` gives `E + α E_{i,j}` and any other `e ∈ ℜ_i^+` gives
//! `E + α E_{i,j_e}` where `j_e` is the position of `x^{θ(e)}`.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::One;

use super::{CoxError, CoxModel, Exponents, Poly, PolyAutomorphism};
use crate::roots::Root;

/// A `k × k` matrix with polynomial entries, intended to be unitriangular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniTriMatrix {
    k: usize,
    entries: Vec<Vec<Poly>>,
}

impl UniTriMatrix {
    pub fn identity(k: usize, nvars: usize) -> Self {
        let entries = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        if i == j {
                            Poly::one(nvars)
                        } else {
                            Poly::zero(nvars)
                        }
                    })
                    .collect()
            })
            .collect();
        UniTriMatrix { k, entries }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    pub fn mul(&self, other: &UniTriMatrix) -> UniTriMatrix {
        let nvars = self.entries[0][0].nvars();
        let mut out = UniTriMatrix::identity(self.k, nvars);
        for i in 0..self.k {
            for j in 0..self.k {
                let mut acc = Poly::zero(nvars);
                for t in 0..self.k {
                    acc = &acc + &(&self.entries[i][t] * &other.entries[t][j]);
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    pub fn is_unitriangular(&self) -> bool {
        let nvars = self.entries[0][0].nvars();
        (0..self.k).all(|i| {
            (0..=i).all(|j| {
                let e = &self.entries[i][j];
                if i == j {
                    *e == Poly::one(nvars)
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// Unitriangular with `(i, j) = 0` whenever `j > i ≥ l`.
    pub fn fits_block(&self, l: usize) -> bool {
        self.is_unitriangular()
            && (l..self.k).all(|i| (i + 1..self.k).all(|j| self.entries[i][j].is_zero()))
    }
}

/// Outcome of [`matrix_embedding_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub k: usize,
    pub l: usize,
    pub generators: usize,
    pub pairs_checked: usize,
}

struct Embedding<'a> {
    model: &'a CoxModel,
    class: Vec<usize>,
    /// Exponent vectors (coordinates only) of the basis of `W`.
    basis: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
}

impl<'a> Embedding<'a> {
    fn new(model: &'a CoxModel, class: Vec<usize>) -> Self {
        let m = model.m();
        let c = class[0];
        let mut basis: Vec<Exponents> = class
            .iter()
            .map(|&i| {
                let mut e = vec![0; m];
                e[i] = 1;
                e
            })
            .collect();
        for f in model.root_system().positive(c) {
            if !is_class_elementary(f, &class) {
                basis.push(model.theta(f));
            }
        }
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, e)| (e, k))
            .collect();
        Embedding {
            model,
            class,
            basis,
            index,
        }
    }

    /// `ρ(g)`; errors when some image leaves `W`.
    fn rho(&self, g: &PolyAutomorphism) -> Result<UniTriMatrix, CoxError> {
        let m = self.model.m();
        let nvars = self.model.nvars();
        let k = self.basis.len();
        let mut out = UniTriMatrix::identity(k, nvars);
        for (a, w) in self.basis.iter().enumerate() {
            let mut full = w.clone();
            full.resize(nvars, 0);
            let image = Poly::monomial(nvars, full, BigRational::one()).substitute(&g.images);
            let mut row = vec![Poly::zero(nvars); k];
            for (exps, c) in image.terms() {
                let b = *self
                    .index
                    .get(&exps[..m])
                    .ok_or_else(|| CoxError::NotInSpan {
                        var: a + 1,
                        term: format!("{exps:?}"),
                    })?;
                let mut params = vec![0; m];
                params.extend_from_slice(&exps[m..]);
                row[b] = &row[b] + &Poly::monomial(nvars, params, c.clone());
            }
            out.entries[a] = row;
        }
        Ok(out)
    }

    /// Predicted `φ(u_e(α))`.
    fn phi(&self, e: &Root, alpha: &Poly) -> UniTriMatrix {
        let nvars = self.model.nvars();
        let mut out = UniTriMatrix::identity(self.basis.len(), nvars);
        let row = self
            .class
            .iter()
            .position(|&i| i == e.ray)
            .expect("root on the class");
        let col = if is_class_elementary(e, &self.class) {
            let j = (0..e.e.len())
                .find(|&j| e.coords()[j] == 1)
                .expect("elementary root");
            self.class.iter().position(|&i| i == j).unwrap()
        } else {
            self.index[&self.model.theta(e)]
        };
        out.entries[row][col] = alpha.clone();
        out
    }
}

fn is_class_elementary(e: &Root, class: &[usize]) -> bool {
    class.iter().any(|&j| {
        j != e.ray && e.coords()[j] == 1 && e.coords().iter().filter(|&&x| x != 0).count() == 2
    })
}

/// Verifies the isomorphism `U(C_s) ≅ U_{k,l}` for the class with index
/// `class` in the column preorder. Needs a model with two parameters.
pub fn matrix_embedding_check(model: &CoxModel, class: usize) -> Result<EmbeddingReport, CoxError> {
    let rs = model.root_system();
    let members = rs.preorder().classes[class].clone();
    let emb = Embedding::new(model, members.clone());
    let k = rs.positive(members[0]).len() + 1;
    let l = members.len();
    if emb.basis.len() != k {
        return Err(CoxError::Mismatch(format!(
            "invariant span has dimension {}, expected {k}",
            emb.basis.len()
        )));
    }
    let a = model.param(0)?;
    let b = model.param(1)?;
    let gens: Vec<Root> = members
        .iter()
        .flat_map(|&i| rs.positive(i).iter().cloned())
        .collect();
    let mut positions = HashMap::new();
    for e in &gens {
        let g = model.root_automorphism(e, &a)?;
        let r = emb.rho(&g)?;
        if r != emb.phi(e, &a) || !r.fits_block(l) {
            return Err(CoxError::Mismatch(format!(
                "generator {e} does not map as predicted"
            )));
        }
        let pos = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && !r.entry(i, j).is_zero())
            .expect("nontrivial generator");
        if let Some(prev) = positions.insert(pos, e.clone()) {
            return Err(CoxError::Mismatch(format!(
                "{prev} and {e} share a matrix entry"
            )));
        }
    }
    let mut pairs_checked = 0;
    for e in &gens {
        for f in &gens {
            let g = model.root_automorphism(e, &a)?;
            let h = model.root_automorphism(f, &b)?;
            let gh = model.compose(&g, &h)?;
            if emb.rho(&gh)? != emb.rho(&g)?.mul(&emb.rho(&h)?) {
                return Err(CoxError::Mismatch(format!(
                    "homomorphism fails on ({e}, {f})"
                )));
            }
            pairs_checked += 1;
        }
    }
    Ok(EmbeddingReport {
        k,
        l,
        generators: gens.len(),
        pairs_checked,
    })
}
