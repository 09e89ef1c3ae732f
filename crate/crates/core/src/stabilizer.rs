//! Destabilising orbits, the stability decision, and the minimal
//! stabilisation algorithm (MSA) on a [`FiberModel`].
//!
//! A destabilising orbit starts at a marked curve contracted into a gap
//! point, follows gap-to-gap transitions, and ends at a gap point whose image
//! is a chain of curves (an indeterminate point). With finitely many gaps the
//! search from each curve stops after at most `#gaps + 1` transfer-rule
//! evaluations.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fiber::{FiberModel, Placement, PointImage};
use crate::pl_map::PLMap;
use crate::rational::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DestabOrbit {
    /// Index of the contracted marked curve.
    pub start_curve: usize,
    /// Gap indices `p_1, …, p_n`, against the model the orbit was found in.
    pub points: Vec<usize>,
    /// Curves `k..=l` that the last point blows up onto.
    pub inverse_curves: RangeInclusive<usize>,
    /// No point after the first is itself the image of a contracted curve,
    /// i.e. the orbit contains no shorter destabilising orbit.
    pub minimal: bool,
}

impl DestabOrbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Re-derives the orbit from the transfer rules.
    pub fn replay(&self, model: &FiberModel, map: &PLMap) -> bool {
        let Some((&first, rest)) = self.points.split_first() else {
            return false;
        };
        if !matches!(model.curve_image(map, self.start_curve), Ok(Placement::GapPoint(g)) if g == first)
        {
            return false;
        }
        let mut current = first;
        for &next in rest {
            match model.point_image(map, current) {
                Ok(PointImage::Point(g)) if g == next => current = next,
                _ => return false,
            }
        }
        matches!(model.point_image(map, current), Ok(PointImage::Curves(r)) if r == self.inverse_curves)
    }

    pub fn trace(&self, model: &FiberModel) -> OrbitTrace {
        let marks = model.marked();
        OrbitTrace {
            start: marks[self.start_curve].clone(),
            points: self
                .points
                .iter()
                .map(|&g| GapTrace { gap_lo: marks[g].clone(), gap_hi: marks[g + 1].clone() })
                .collect(),
            length: self.len(),
            inverse: marks[self.inverse_curves.clone()].to_vec(),
        }
    }
}

/// Serialized orbit, labelled by rationals rather than indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitTrace {
    pub start: Rat,
    pub points: Vec<GapTrace>,
    pub length: usize,
    pub inverse: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapTrace {
    pub gap_lo: Rat,
    pub gap_hi: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilityVerdict {
    Stable,
    Unstable(DestabOrbit),
}

impl StabilityVerdict {
    pub fn is_stable(&self) -> bool {
        matches!(self, StabilityVerdict::Stable)
    }
}

/// Orbits together with the number of transfer-rule evaluations spent.
#[derive(Clone, Debug)]
pub struct OrbitSearch {
    pub orbits: Vec<DestabOrbit>,
    pub evaluations: usize,
}

pub fn find_destabilizing_orbits(model: &FiberModel, map: &PLMap) -> Vec<DestabOrbit> {
    search_orbits(model, map).orbits
}

pub fn search_orbits(model: &FiberModel, map: &PLMap) -> OrbitSearch {
    let mut evaluations = 0;
    let contracted: Vec<(usize, usize)> = (0..model.num_marked())
        .filter_map(|j| {
            evaluations += 1;
            match model.curve_image(map, j).expect("index in range") {
                Placement::GapPoint(g) => Some((j, g)),
                Placement::MarkedCurve(_) => None,
            }
        })
        .collect();
    // gap points hit by a contracted curve (the inverse-indeterminate points)
    let mut targets = vec![false; model.num_gaps()];
    for &(_, g) in &contracted {
        targets[g] = true;
    }

    let mut orbits = Vec::new();
    for (start_curve, first) in contracted {
        let mut seen = vec![false; model.num_gaps()];
        let mut points = vec![first];
        seen[first] = true;
        let mut current = first;
        loop {
            evaluations += 1;
            match model.point_image(map, current).expect("index in range") {
                PointImage::Curves(inverse_curves) => {
                    let minimal = !points[1..].iter().any(|&g| targets[g]);
                    orbits.push(DestabOrbit { start_curve, points, inverse_curves, minimal });
                    break;
                }
                PointImage::Point(next) if seen[next] => break,
                PointImage::Point(next) => {
                    seen[next] = true;
                    points.push(next);
                    current = next;
                }
            }
        }
    }
    OrbitSearch { orbits, evaluations }
}

/// Stable, or unstable with a shortest orbit (smallest start curve on ties).
pub fn is_algebraically_stable(model: &FiberModel, map: &PLMap) -> StabilityVerdict {
    let orbits = find_destabilizing_orbits(model, map);
    match TieBreak::SmallestStart.pick(&orbits, &mut None) {
        Some(orbit) => StabilityVerdict::Unstable(orbit.clone()),
        None => StabilityVerdict::Stable,
    }
}

/// How the MSA chooses among several candidate orbits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TieBreak {
    /// Shortest orbit, smallest start curve.
    SmallestStart,
    /// Shortest orbit, largest start curve.
    LargestStart,
    /// Uniformly random among the shortest orbits.
    RandomShortest { seed: u64 },
    /// Uniformly random among all minimal orbits, of any length.
    AnyMinimal { seed: u64 },
}

impl TieBreak {
    fn rng(&self) -> Option<ChaCha8Rng> {
        match *self {
            TieBreak::RandomShortest { seed } | TieBreak::AnyMinimal { seed } => {
                Some(ChaCha8Rng::seed_from_u64(seed))
            }
            _ => None,
        }
    }

    fn pick<'a>(
        &self,
        orbits: &'a [DestabOrbit],
        rng: &mut Option<ChaCha8Rng>,
    ) -> Option<&'a DestabOrbit> {
        let shortest = orbits.iter().map(DestabOrbit::len).min()?;
        let mut candidates: Vec<&DestabOrbit> = match self {
            TieBreak::AnyMinimal { .. } => orbits.iter().filter(|o| o.minimal).collect(),
            _ => orbits.iter().filter(|o| o.len() == shortest).collect(),
        };
        candidates.sort_by_key(|o| o.start_curve);
        match self {
            TieBreak::SmallestStart => candidates.first().copied(),
            TieBreak::LargestStart => candidates.last().copied(),
            TieBreak::RandomShortest { .. } | TieBreak::AnyMinimal { .. } => {
                let rng = rng.as_mut().expect("seeded");
                candidates.choose(rng).copied()
            }
        }
    }
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieBreak::SmallestStart => write!(f, "smallest-start"),
            TieBreak::LargestStart => write!(f, "largest-start"),
            TieBreak::RandomShortest { seed } => write!(f, "random:{seed}"),
            TieBreak::AnyMinimal { seed } => write!(f, "any-minimal:{seed}"),
        }
    }
}

impl FromStr for TieBreak {
    type Err = Error;

    /// `smallest-start`, `largest-start`, `random[:seed]`, `any-minimal[:seed]`.
    /// A missing seed defaults to 0.
    fn from_str(s: &str) -> Result<Self> {
        let (name, seed) = match s.split_once(':') {
            Some((name, seed)) => (
                name,
                seed.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad seed in strategy {s:?}")))?,
            ),
            None => (s, 0),
        };
        match name {
            "smallest-start" => Ok(TieBreak::SmallestStart),
            "largest-start" => Ok(TieBreak::LargestStart),
            "random" => Ok(TieBreak::RandomShortest { seed }),
            "any-minimal" => Ok(TieBreak::AnyMinimal { seed }),
            _ => Err(Error::Parse(format!("unknown strategy {s:?}"))),
        }
    }
}

/// Blows up every gap on the orbit; returns the new model and the inserted
/// marks in orbit order.
pub fn blow_up_orbit(model: &FiberModel, orbit: &DestabOrbit) -> (FiberModel, Vec<Rat>) {
    let mut next = model.clone();
    let mut gaps = orbit.points.clone();
    // right to left, so earlier insertions do not shift later gap indices
    gaps.sort_unstable_by(|a, b| b.cmp(a));
    let mut inserted: Vec<(usize, Rat)> =
        gaps.into_iter().map(|g| (g, next.blowup_gap_in_place(g).expect("gap in range"))).collect();
    let order = |g: usize| orbit.points.iter().position(|&p| p == g);
    inserted.sort_by_key(|(g, _)| order(*g));
    (next, inserted.into_iter().map(|(_, m)| m).collect())
}

/// One MSA round with the default tie-break.
pub fn msa_step(model: &FiberModel, map: &PLMap) -> Result<FiberModel> {
    match is_algebraically_stable(model, map) {
        StabilityVerdict::Stable => Err(Error::AlreadyStable),
        StabilityVerdict::Unstable(orbit) => Ok(blow_up_orbit(model, &orbit).0),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MsaRound {
    pub round: usize,
    pub orbit: OrbitTrace,
    pub inserted: Vec<Rat>,
    pub marked: Vec<Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MsaStatus {
    Terminated,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MsaRun {
    pub status: MsaStatus,
    pub model: FiberModel,
    pub rounds: Vec<MsaRound>,
}

impl MsaRun {
    pub fn terminated(&self) -> bool {
        self.status == MsaStatus::Terminated
    }

    pub fn rounds_used(&self) -> usize {
        self.rounds.len()
    }

    /// Every inserted mark, in insertion order.
    pub fn inserted_marks(&self) -> impl Iterator<Item = &Rat> {
        self.rounds.iter().flat_map(|r| r.inserted.iter())
    }
}

pub fn run_msa(model: &FiberModel, map: &PLMap, round_budget: usize) -> MsaRun {
    run_msa_with(model, map, round_budget, TieBreak::SmallestStart)
}

/// Runs at most `round_budget` rounds. Terminated means the final model was
/// checked stable; exhausting the budget says nothing about termination.
pub fn run_msa_with(model: &FiberModel, map: &PLMap, round_budget: usize, tie: TieBreak) -> MsaRun {
    let mut rng = tie.rng();
    let mut current = model.clone();
    let mut rounds = Vec::new();
    loop {
        let orbits = find_destabilizing_orbits(&current, map);
        let Some(orbit) = tie.pick(&orbits, &mut rng) else {
            return MsaRun { status: MsaStatus::Terminated, model: current, rounds };
        };
        if rounds.len() == round_budget {
            return MsaRun { status: MsaStatus::BudgetExhausted, model: current, rounds };
        }
        let trace = orbit.trace(&current);
        let (next, inserted) = blow_up_orbit(&current, orbit);
        current = next;
        rounds.push(MsaRound {
            round: rounds.len() + 1,
            orbit: trace,
            inserted,
            marked: current.marked().to_vec(),
        });
    }
}

/// Whether every strategy ends at the same marked set.
pub fn check_uniqueness(
    model: &FiberModel,
    map: &PLMap,
    budget: usize,
    strategies: &[TieBreak],
) -> Result<bool> {
    let mut finals = Vec::with_capacity(strategies.len());
    for &tie in strategies {
        let run = run_msa_with(model, map, budget, tie);
        if !run.terminated() {
            return Err(Error::Inconclusive { strategy: tie.to_string(), budget });
        }
        finals.push(run.model);
    }
    Ok(finals.windows(2).all(|w| w[0] == w[1]))
}
