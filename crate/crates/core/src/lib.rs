//! Exact computations on radiant toric varieties.
//!
//! A complete toric variety is radiant when its fan is bilateral: some `n`
//! rays form a lattice basis and the rest lie in the closed negative orthant.
//! The non-negative ray matrix of such a fan determines all Demazure roots,
//! and from them this crate computes
//!
//! * the maximal unipotent subgroup `U_max` of `Aut(X)` as an iterated
//!   semidirect product of blocks `U_{k,l}`, and its semisimple part `U_ss`;
//! * every regular unipotent subgroup acting with an open orbit;
//! * centers, lower/upper central series, derived series, nilpotency class
//!   and derived length, via the root graph `Γ(M)`;
//! * a concrete model of root subgroups as substitutions of Cox coordinates,
//!   used to check commutation relations symbolically;
//! * the classification of smooth complete toric surfaces by
//!   self-intersection sequences.
//!
//! All arithmetic is exact. Roots are reported in canonical coordinates (the
//! columns of the ray matrix reordered so equivalence classes of the column
//! preorder form `⪰`-non-increasing segments) together with the permutation
//! back to the caller's coordinates.

pub mod cli;
pub mod coxaction;
pub mod fan;
pub mod groups;
pub mod lattice;
pub mod liealg;
pub mod roots;
pub mod surfaces;

pub use fan::{bilateralize, Bilateralization, RayList, RayMatrix};
pub use lattice::IntVector;
pub use roots::{Root, RootSystem};
