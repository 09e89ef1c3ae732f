//! Stabilisation of rational surface maps over a Farey-indexed fiber.
//!
//! Curves created by satellite blowups over `{x = 0}` are labelled by
//! rationals in `[0, 1]` ([`fiber`]); a monomial-type map acts on those labels
//! through a piecewise-linear map ([`pl_map`]). The transfer rules between
//! curves and intersection points decide algebraic stability and drive the
//! minimal stabilisation algorithm ([`stabilizer`]). [`certificate`] checks
//! the hypotheses under which that algorithm provably never stops, and
//! [`lift`] simulates graph-lift stabilisation of birational maps.

pub mod certificate;
pub mod cli;
pub mod error;
pub mod fiber;
pub mod lift;
pub mod pl_map;
pub mod rational;
pub mod stabilizer;

pub use certificate::{verify_counterexample, Certificate};
pub use error::{Error, Result};
pub use fiber::{FiberModel, Placement, PointImage};
pub use lift::{lifts_to_stability, LiftState};
pub use pl_map::{build_tf, Affine, ImageSet, MapSpec, PLMap};
pub use rational::{is_farey_neighbor, mediant, Rat};
pub use stabilizer::{
    check_uniqueness, find_destabilizing_orbits, is_algebraically_stable, msa_step, run_msa,
    run_msa_with, DestabOrbit, MsaRun, MsaStatus, StabilityVerdict, TieBreak,
};
