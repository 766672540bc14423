//! Exact computations of Ext¹ dimensions and block decompositions for
//! finite-dimensional modules over twisted forms of current algebras.
//!
//! Everything reduces to root-system combinatorics: adjoint multiplicities
//! `c(L(λ), L(μ))` in `L(λ)* ⊗ L(μ)`, cotangent dimensions of the relevant
//! points, and cosets of the weight lattice modulo the root lattice.
//!
//! * [`rootsys`]: Cartan data, roots, root strings, `P/Q`.
//! * [`repthy`]: Weyl dimension, Freudenthal, Klimyk, adjoint multiplicity.
//! * [`twistblocks`]: orbit spaces, evaluation modules, Ext¹, blocks, chains.
//! * [`extcalc`]: Ext¹ rules for abelian, reductive and general simple modules.
//! * [`sweep`]: batch evaluations over grids, parallel when enabled.

pub mod error;
pub mod exec;
pub mod extcalc;
pub mod linalg;
pub mod repthy;
pub mod rootsys;
pub mod sweep;
pub mod twistblocks;

pub use error::{Error, Result};
pub use exec::Strategy;
pub use rootsys::{FundamentalGroupElement, Root, RootSystem, ShiftedConjugate, TypeLetter, Weight};
