//! Exact combinatorics of Iwahori–Hecke algebras for split reductive groups.
//!
//! The crate works entirely with based root data given by explicit integer
//! lattices. On top of that it provides the extended affine Weyl group with
//! its length function, Bruhat order and admissible sets, the Iwahori–Hecke
//! algebra over `Z[v, v^-1]`, the Bernstein basis of its center, highest-weight
//! multiplicities of the dual group, and the central test functions
//! `z_mu = sum_lambda m_mu(lambda) z_lambda` together with the checks that
//! relate them to admissible sets, constant terms and anisotropic transfer.
//!
//! Everything is exact; no floating point is used anywhere.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod affweyl;
pub mod bernstein;
mod error;
pub mod exactpoly;
pub mod hecke;
pub mod lattice;
pub mod repthy;
pub mod rootdata;
pub mod testfn;

pub use affweyl::{AffineElt, AffineWeylGroup, Facet, NodeId, OmegaElt, ParamSystem};
pub use bernstein::BernsteinCoords;
pub use error::{Error, Result};
pub use exactpoly::{LaurentPoly, PolyFraction};
pub use hecke::{HeckeAlgebra, HeckeElt, ParahoricFn};
pub use repthy::WeightMultiset;
pub use rootdata::{Coweight, FiniteWeylElt, Preset, RootDatum, StandardLevi};
pub use testfn::TestFunction;
