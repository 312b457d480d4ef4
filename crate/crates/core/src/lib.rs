//! ABC (atom-bond connectivity) matrices of simple graphs.
//!
//! The crate builds the ABC matrix `M(G)`, whose `(i, j)` entry is
//! `sqrt((d_i + d_j - 2) / (d_i d_j))` on edges and zero elsewhere, computes
//! its spectrum and Perron vector, and checks extremal ordering results for
//! trees by exhaustive enumeration.
//!
//! Modules, bottom up:
//!
//! * [`graph`], [`families`], [`graph6`], [`canon`]: graphs, named families,
//!   serialization and isomorphism-grade canonical forms.
//! * [`weights`]: the edge weight, the ABC matrix and the scalar indices.
//! * [`spectra`]: Jacobi eigensolver, Perron vectors, characteristic
//!   polynomial evaluation, and the union/join determinant identities.
//! * [`perturbations`]: pendant path and pendant star grafting, the shift
//!   comparisons, and pendant path Perron profiles.
//! * [`enumerate`]: free trees and connected graphs up to isomorphism.
//! * [`verify`]: the claim harness producing [`verify::VerificationReport`]s.

pub mod canon;
pub mod enumerate;
mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod matrix;
pub mod perturbations;
pub mod spectra;
pub mod verify;
pub mod weights;

pub use canon::{canonical_form, CanonicalForm};
pub use error::{Error, Result};
pub use families::{build_family, FamilySpec};
pub use graph::Graph;
pub use matrix::WeightedSymmetricMatrix;
pub use spectra::SpectralResult;
pub use weights::{abc_index, abc_matrix, edge_weight, r_minus_one};
