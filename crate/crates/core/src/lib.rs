//! Classification and mode analysis of pairs of bivariate normal densities.
//!
//! Given two normal densities `f1`, `f2` on the plane, this crate studies the
//! product mapping `F = (f1, f2)` and the mixtures `M_c = c·f1 + (1 − c)·f2`:
//!
//! - [`classify`] reduces a pair to canonical coordinates, decides whether its
//!   singular set is a hyperbola (Type 1), two intersecting lines (Type 2) or a
//!   single line (Type 3), samples that set and locates the cusp of Type 1.
//! - [`ridgeline`] evaluates the ridgeline curve, the curvature function
//!   `q(α)`, isolates its roots in `[0, 1]` and turns the count into a bound
//!   on the number of modes.
//! - [`modes`] counts modes directly, with a ridgeline-seeded Newton search and
//!   an independent grid oracle.
//! - [`scan`] draws random pairs of each type and checks observed mode counts
//!   against the per-type bounds.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod classify;
mod error;
pub mod gaussian;
pub mod linalg;
pub mod modes;
pub mod poly;
pub mod ridgeline;
pub mod scan;

pub use classify::{
    canonicalize, classify, is_codirectional, is_proportional, locate_cusp, pair_type,
    sample_singular_set, shares_mean_eigenvector, singular_conic, CanonicalForm,
    ClassificationReport, ConicKind, CuspReport, PairType, SingularConic, DEFAULT_REL_TOL,
};
pub use error::{BoundViolation, Error, Result};
pub use gaussian::{Gaussian2D, GaussianPair, Mixture};
pub use linalg::{Affine2, Mat2, Spd2, Sym2, SymEigen, Vec2};
pub use modes::{
    find_modes, grid_oracle_modes, Mode, ModeMethod, ModeReport, SearchBox, SearchConfig, GRAD_CERT,
};
pub use ridgeline::{
    modality_bound, p_of_alpha, q_numerator, q_of_alpha, q_roots_in_unit, ridge_point,
    ridge_sample, ridge_samples, s_alpha, type2_cubic, type2_cubic_coeffs, ModalityBound,
    QPolynomial, QRoot, RidgeSample,
};
pub use scan::{
    random_pair, reference_three_mode_pair, trial_rng, verify_bounds, BoundReport, ScanConfig,
    TypeSummary,
};
