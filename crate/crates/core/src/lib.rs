//! Spin tomograms of qubit states and the tomographic discord of two-qubit
//! states.
//!
//! A tomogram is the probability distribution `ω(m, u) = ⟨m| u† ρ u |m⟩` of
//! measurement outcomes after a unitary change of basis `u`. For a bipartite
//! state, comparing the quantum mutual information `S₁ + S₂ − S₁₂` with the
//! classical mutual information of the joint tomogram measured in the local
//! eigenbases of the marginals gives the tomographic discord
//! `D = H₁₂(u₁₀†⊗u₂₀†) − S₁₂ ≥ 0`.

pub mod cli;
pub mod discord;
pub mod ensembles;
pub mod entropy;
pub mod error;
pub mod linalg;
pub mod tomography;

pub use error::{Error, Result};
