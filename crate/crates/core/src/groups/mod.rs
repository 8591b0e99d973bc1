//! Locally compact abelian groups, their Haar measures and set algebra.

pub(crate) mod residue;
mod sets;
mod space;
mod van_hove;

pub use residue::MAX_REFINED_RESIDUES;
pub use sets::{Atom, SetDescriptor};
pub use space::{GroupElement, HaarNormalization, SpaceDescriptor, MAX_PADIC_MODULUS};
pub use van_hove::VanHoveSpec;
