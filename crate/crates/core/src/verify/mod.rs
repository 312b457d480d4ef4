//! Numerical checks of ordering, bound and perturbation claims about ABC
//! spectral radii, each producing a [`VerificationReport`].
//!
//! Claim identifiers are descriptive (`tree-top-five@n=12`); see
//! [`ClaimId`] for the full list.

mod bounds;
mod claims;
mod closed_form;
mod conjecture;
mod report;
mod sweeps;

pub use bounds::{bound_lower_chen, bound_row, bound_sandwich, bound_upper_lin, bounds_estrada, BoundRow, EstradaBounds};
pub use claims::{
    extremal_in_class, rank_graphs, ranked_trees, verify_lemma12, verify_lemma12_with, verify_lemma34_crossover,
    verify_sqrt_gap_lemmas, verify_sqrt_gap_lemmas_with, verify_theorem31, verify_theorem31_with, ExtremalClass,
    Ranked,
};
pub use closed_form::{
    closed_form_agreement, closed_form_charpoly, closed_form_min_order, verify_closed_forms, CLOSED_FORM_INDICES,
};
pub use conjecture::{conjecture41_search, conjecture41_search_with, ConjectureOutcome, Survivor};
pub use report::{ClaimId, Gate, Status, VerificationReport};
pub use sweeps::{
    join_identity_sweep, path_shift_sweep, pendant_profile_sweep, star_radius_check, star_shift_sweep,
    union_identity_sweep,
};

/// Strict inequalities between radii must clear this margin.
pub const COMPARE_TOL: f64 = 1e-9;
/// Margins of the grafting comparisons must clear this.
pub const SHIFT_TOL: f64 = 1e-10;
/// Perron profiles and determinant identities must agree to this.
pub const AGREEMENT_TOL: f64 = 1e-8;
/// Relative agreement required of the closed-form characteristic polynomials.
pub const CLOSED_FORM_TOL: f64 = 1e-7;
