//! Bookkeeping for repeatedly lifting a birational map to its smooth graph.
//!
//! Only the numbers are tracked: the count of exceptional curves and the
//! lengths of the destabilising triples `(C, D, n)`. A lift shortens every
//! triple by one. Length-1 triples have no preimage under the injection of
//! triples, and their curves leave the exceptional set.
//!
//! A curve's orbit length is determined by the curve, so triples of
//! different lengths sit on different curves. [`LiftState::new`] enforces
//! that, which is what keeps `comp` from running out while orbits remain.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LiftRepr", into = "LiftRepr")]
pub struct LiftState {
    comp: u64,
    /// Sorted ascending.
    lengths: Vec<u64>,
    length1_curves: u64,
}

#[derive(Serialize, Deserialize)]
struct LiftRepr {
    comp: u64,
    lengths: Vec<u64>,
    length1_curves: u64,
}

impl TryFrom<LiftRepr> for LiftState {
    type Error = Error;
    fn try_from(r: LiftRepr) -> Result<Self> {
        LiftState::new(r.comp, r.lengths, r.length1_curves)
    }
}

impl From<LiftState> for LiftRepr {
    fn from(s: LiftState) -> Self {
        LiftRepr { comp: s.comp, lengths: s.lengths, length1_curves: s.length1_curves }
    }
}

fn distinct_long_lengths(lengths: &[u64]) -> u64 {
    lengths.iter().filter(|&&n| n >= 2).collect::<BTreeSet<_>>().len() as u64
}

impl LiftState {
    pub fn new(comp: u64, mut lengths: Vec<u64>, length1_curves: u64) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidLiftState(msg));
        if lengths.contains(&0) {
            return bad("orbit lengths must be positive".into());
        }
        lengths.sort_unstable();
        let ones = lengths.iter().take_while(|&&n| n == 1).count() as u64;
        if length1_curves > ones {
            return bad(format!("{length1_curves} length-1 curves but {ones} length-1 orbits"));
        }
        if ones > 0 && length1_curves == 0 {
            return bad("length-1 orbits need at least one curve".into());
        }
        let needed = length1_curves + distinct_long_lengths(&lengths);
        if comp < needed {
            return bad(format!("comp {comp} is below the {needed} curves the orbits require"));
        }
        Ok(LiftState { comp, lengths, length1_curves })
    }

    pub fn comp(&self) -> u64 {
        self.comp
    }

    pub fn lengths(&self) -> &[u64] {
        &self.lengths
    }

    pub fn length1_curves(&self) -> u64 {
        self.length1_curves
    }

    pub fn max_length(&self) -> u64 {
        self.lengths.last().copied().unwrap_or(0)
    }

    pub fn length1_count(&self) -> usize {
        self.lengths.iter().take_while(|&&n| n == 1).count()
    }

    pub fn is_stable(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn lift(&self) -> LiftState {
        self.lift_with(&DistinctCurves)
    }

    pub fn lift_with(&self, policy: &dyn CurveAssignment) -> LiftState {
        let comp = self.comp - self.length1_curves;
        let lengths: Vec<u64> = self.lengths.iter().filter(|&&n| n >= 2).map(|n| n - 1).collect();
        let ones = lengths.iter().take_while(|&&n| n == 1).count() as u64;
        let length1_curves = if ones == 0 {
            0
        } else {
            // leave room for the curves of the longer orbits
            let room = comp - distinct_long_lengths(&lengths);
            policy.length1_curves(ones, room).clamp(1, ones.min(room))
        };
        LiftState { comp, lengths, length1_curves }
    }
}

/// Decides how many distinct curves carry the new length-1 triples.
///
/// Called with the number of new length-1 triples and the number of curves
/// available for them; the answer is clamped into `1..=min(ones, available)`.
pub trait CurveAssignment {
    fn length1_curves(&self, ones: u64, available: u64) -> u64;
}

/// Each length-1 triple on its own curve, as far as `comp` allows.
#[derive(Clone, Copy, Debug, Default)]
pub struct DistinctCurves;

impl CurveAssignment for DistinctCurves {
    fn length1_curves(&self, ones: u64, available: u64) -> u64 {
        ones.min(available)
    }
}

/// All length-1 triples share one curve.
#[derive(Clone, Copy, Debug, Default)]
pub struct SharedCurve;

impl CurveAssignment for SharedCurve {
    fn length1_curves(&self, _ones: u64, _available: u64) -> u64 {
        1
    }
}

/// The states visited until no orbit remains, starting with `state`.
pub fn trajectory(state: &LiftState, policy: &dyn CurveAssignment) -> Vec<LiftState> {
    let mut out = vec![state.clone()];
    while !out.last().expect("nonempty").is_stable() {
        let next = out.last().expect("nonempty").lift_with(policy);
        out.push(next);
    }
    out
}

/// Number of lifts until no destabilising orbit remains.
pub fn lifts_to_stability(state: &LiftState) -> usize {
    trajectory(state, &DistinctCurves).len() - 1
}
