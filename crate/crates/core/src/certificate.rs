//! Checkable hypotheses behind non-termination of the MSA for fold maps.
//!
//! If every piece expands by exactly 3/2, the single fold maps to 1, and the
//! orbit of 1 consists of odd-numerator dyadics whose denominators double at
//! each step, then the orbit of 1 never lands on a mark for good and no gap
//! can avoid the marks forever. Each MSA round therefore leaves a fresh
//! destabilising orbit behind.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::pl_map::PLMap;
use crate::rational::{is_odd, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// Every piece has slope `3/2` or `-3/2`.
    pub slopes_ok: bool,
    /// Exactly one interior breakpoint, and it maps to 1.
    pub fold_ok: bool,
    /// `T(1), T²(1), …` up to the requested number of steps.
    pub orbit_prefix: Vec<Rat>,
    pub denominators_doubling: bool,
    /// Steps for which the doubling law was confirmed.
    pub steps_checked: usize,
}

impl Certificate {
    pub fn is_valid(&self) -> bool {
        self.slopes_ok && self.fold_ok && self.denominators_doubling
    }
}

pub fn verify_counterexample(map: &PLMap, steps: usize) -> Certificate {
    let expansion = Rat::frac(3, 2);
    let slopes_ok = map.pieces().iter().all(|p| p.slope.abs() == expansion);
    let fold_ok = match map.interior_breakpoints() {
        [fold] => map.eval(fold).is_ok_and(|v| v == Rat::one()),
        _ => false,
    };

    let orbit_prefix = map.orbit(&Rat::one(), steps).expect("1 lies in the domain");
    let mut expected = BigInt::from(1);
    let mut steps_checked = 0;
    for v in &orbit_prefix {
        expected <<= 1;
        if v.denom() != &expected || !is_odd(v.numer()) {
            break;
        }
        steps_checked += 1;
    }

    Certificate {
        slopes_ok,
        fold_ok,
        denominators_doubling: steps >= 1 && steps_checked == steps,
        orbit_prefix,
        steps_checked,
    }
}
