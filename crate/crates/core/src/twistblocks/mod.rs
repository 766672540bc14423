//! Ext¹ and block computations for simple finite-dimensional modules over
//! twisted forms `(𝔤 ⊗ S)^Γ` of current algebras, with `𝔤` simple.
//!
//! Simple modules are evaluation modules, described by a finitely supported
//! `Γ`-invariant assignment of dominant weights to maximal ideals of `S`.
//! Callers supply the finite window of `Max S` they care about as an
//! [`OrbitSpace`].

mod ext;
mod margaux;
mod module;
mod orbit;

pub use ext::{ext_dim, linkage_chain, linkage_chain_in_window, same_block};
pub use margaux::{
    margaux_block, margaux_canonical_point, margaux_descriptor, margaux_orbit_space,
    GaussianRational, MargauxBlockDescriptor, MargauxBlockEntry, MargauxPoint,
};
pub use module::{spectral_character, CanonicalSection, EvalModuleDescriptor, SpectralCharacter};
pub use orbit::{OrbitSpace, OrbitSpaceSpec};
