//! Structure of `U_max` and `U_ss` as products of unitriangular blocks.

use std::fmt;

use serde::Serialize;

use crate::roots::{Parity, RootSystem};

/// A unipotent group built from vector groups and blocks `U_{k,l}`.
///
/// `U_{k,l}` is the group of unitriangular `k × k` matrices whose entries
/// above the diagonal vanish outside the first `l` rows. `U_{k,1}` is
/// normalized to `Abelian(k − 1)` and `U_{k,l}` with `l ≥ k − 1` to `U_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupShape {
    /// `𝔾_a^d`; `d = 0` is the trivial group.
    Abelian {
        dim: usize,
    },
    /// `U_{k,l}` with `k > l ≥ 2`.
    Triangular {
        k: usize,
        l: usize,
    },
    /// `acting ⋉ normal`.
    Semidirect {
        acting: Box<GroupShape>,
        normal: Box<GroupShape>,
    },
    Direct {
        factors: Vec<GroupShape>,
    },
}

impl GroupShape {
    /// Normal form of `U_{k,l}`.
    pub fn block(k: usize, l: usize) -> Self {
        let l = l.min(k.saturating_sub(1));
        if l <= 1 {
            GroupShape::Abelian {
                dim: if l == 0 { 0 } else { k - 1 },
            }
        } else {
            GroupShape::Triangular { k, l }
        }
    }

    /// The full unitriangular group `U_k`.
    pub fn unitriangular(k: usize) -> Self {
        Self::block(k, k.saturating_sub(1))
    }

    pub fn semidirect(acting: GroupShape, normal: GroupShape) -> Self {
        GroupShape::Semidirect {
            acting: Box::new(acting),
            normal: Box::new(normal),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            GroupShape::Abelian { dim } => *dim,
            GroupShape::Triangular { k, l } => l * k - l * (l + 1) / 2,
            GroupShape::Semidirect { acting, normal } => acting.dim() + normal.dim(),
            GroupShape::Direct { factors } => factors.iter().map(GroupShape::dim).sum(),
        }
    }

    fn is_composite(&self) -> bool {
        matches!(
            self,
            GroupShape::Semidirect { .. } | GroupShape::Direct { .. }
        )
    }

    fn fmt_inner(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_composite() {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupShape::Abelian { dim: 0 } => write!(f, "1"),
            GroupShape::Abelian { dim: 1 } => write!(f, "G_a"),
            GroupShape::Abelian { dim } => write!(f, "G_a^{dim}"),
            GroupShape::Triangular { k, l } if *l + 1 == *k => write!(f, "U_{k}"),
            GroupShape::Triangular { k, l } => write!(f, "U_{{{k},{l}}}"),
            GroupShape::Semidirect { acting, normal } => {
                acting.fmt_inner(f)?;
                write!(f, " ⋉ ")?;
                normal.fmt_inner(f)
            }
            GroupShape::Direct { factors } => {
                for (i, g) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " × ")?;
                    }
                    g.fmt_inner(f)?;
                }
                Ok(())
            }
        }
    }
}

/// `((F_r ⋉ F_{r−1}) ⋉ …) ⋉ F_1`.
fn nest(mut factors: Vec<GroupShape>) -> GroupShape {
    let mut acc = factors.pop().unwrap_or(GroupShape::Abelian { dim: 0 });
    while let Some(next) = factors.pop() {
        acc = GroupShape::semidirect(acc, next);
    }
    acc
}

/// `(k_s, l_s)` for each class: `k_s = |ℜ^+_c| + 1` with `c` the first
/// index of the class, `l_s = |C_s|`.
pub fn class_blocks(rs: &RootSystem) -> Vec<(usize, usize)> {
    rs.preorder()
        .classes
        .iter()
        .map(|c| (rs.positive(c[0]).len() + 1, c.len()))
        .collect()
}

/// `U_max` as the nested semidirect product of the class blocks `U_{k_s,l_s}`.
pub fn umax_shape(rs: &RootSystem) -> GroupShape {
    nest(
        class_blocks(rs)
            .into_iter()
            .map(|(k, l)| GroupShape::block(k, l))
            .collect(),
    )
}

/// The finer decomposition `(… (U(n) ⋉ U(n−1)) ⋉ …) ⋉ U(1)` with
/// `U(i) ≅ 𝔾_a^{|ℜ_i^+|}`.
pub fn umax_per_ray(rs: &RootSystem) -> GroupShape {
    nest(
        (0..rs.n())
            .map(|i| GroupShape::Abelian {
                dim: rs.positive(i).len(),
            })
            .collect(),
    )
}

/// `U_ss = U^1 × … × U^r` with `U^s ≅ U_{size}` per class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UssShape {
    pub shape: GroupShape,
    /// Size of the unitriangular group `U^s` for each class.
    pub sizes: Vec<usize>,
    /// Classes with at least two elements or a semisimple basic root.
    pub simple_components: usize,
}

/// `U^s = U_{k_s}` when every root attached to `C_s` is semisimple, and
/// `U_{l_s}` otherwise.
pub fn uss_shape(rs: &RootSystem) -> UssShape {
    let report = rs.report();
    let parity_of = |ray: usize, basic_only: bool| {
        report
            .all_roots
            .iter()
            .filter(move |d| d.root.ray == ray && (!basic_only || d.root.is_basic()))
            .map(|d| d.parity)
    };
    let mut sizes = Vec::new();
    let mut simple_components = 0;
    for (c, (k, l)) in rs.preorder().classes.iter().zip(class_blocks(rs)) {
        let all_semisimple = c
            .iter()
            .all(|&i| parity_of(i, false).all(|p| p == Parity::Semisimple));
        sizes.push(if all_semisimple { k } else { l });
        let basic_semisimple =
            c.len() == 1 && parity_of(c[0], true).any(|p| p == Parity::Semisimple);
        if c.len() >= 2 || basic_semisimple {
            simple_components += 1;
        }
    }
    let shape = GroupShape::Direct {
        factors: sizes
            .iter()
            .map(|&k| GroupShape::unitriangular(k))
            .collect(),
    };
    UssShape {
        shape,
        sizes,
        simple_components,
    }
}
