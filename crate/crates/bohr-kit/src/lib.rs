//! Certified numerics for operator-valued Bohr-Rogosinski inequalities.
//!
//! The toolkit evaluates Bohr-type functionals on truncated operator-valued
//! power series with explicit two-sided certificates, solves the
//! radius-defining equations of the theory, probes sharpness claims with the
//! extremal Mobius family and random Schur-class samples, and lifts the
//! one-variable checks to polydiscs and Euclidean balls through complex-line
//! slicing.
//!
//! Every inequality judgement is three-valued: PASS when the certified upper
//! end stays at or below the bound, FAIL when the lower end certainly
//! exceeds it, INCONCLUSIVE otherwise. Nothing is silently rounded.
//!
//! A narrative guide with runnable examples lives in `book/`; the same
//! snippets are compiled and run as doctests by the `guide-tests` crate.

pub mod cert;
pub mod consts;
pub mod functionals;
pub mod matrix;
pub mod multidim;
pub mod radii;
pub mod series;
pub mod sharpness;
pub mod verify;

pub use cert::{Certified, Verdict};
pub use functionals::{
    circle_sup_norm, envelope_bound, functional_value, gpoly_admissible, majorant_sum,
    schwarz_pick_check, sr_over_pi, weighted_square_sum, AdmissibilityVariant, FunctionalContext,
    FunctionalKind, GPoly,
};
pub use matrix::ComplexMatrix;
pub use multidim::{
    compose_linear, homothety_verify, radius_of_nkind_domain, slice, CircularDomain, MultiSeries,
};
pub use radii::{cubic_radius, scalar_refined_radius, solve_radius, threshold_a, RadiusSpec};
pub use series::{OperatorSeries, SeriesClass};
pub use sharpness::{
    adjudicate_radius, claimed_radius, default_b_grid, extremal_margin, violation_witness,
    AdjudicateOptions, AdjudicationReport, SharpnessVerdict, Witness,
};
pub use verify::{run_verify, VerifyConfig, VerifyRadius, VerifyReport};
