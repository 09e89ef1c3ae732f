//! Test-only oracles. Nothing here calls `image_interval`, `point_image`,
//! `locate` or the orbit search; images are decided by solving `T(x) = m`
//! piece by piece, and placements by linear scans.

#![allow(dead_code)]

use rand::Rng;
use stabiliscope::{FiberModel, PLMap, Rat};

/// `Ok(j)` if `q` is the j-th mark, `Err(j)` if it lies in gap `j`.
pub fn scan_locate(marks: &[Rat], q: &Rat) -> Result<usize, usize> {
    for (j, r) in marks.iter().enumerate() {
        if r == q {
            return Ok(j);
        }
        if r > q {
            return Err(j - 1);
        }
    }
    unreachable!("q <= 1 = last mark")
}

/// Whether some `x` with `lo < x < hi` has `T(x) = m`.
pub fn hits_value(map: &PLMap, lo: &Rat, hi: &Rat, m: &Rat) -> bool {
    let bps = map.breakpoints();
    map.pieces().iter().enumerate().any(|(i, piece)| {
        let (a, b) = (&bps[i], &bps[i + 1]);
        let a = if a > lo { a } else { lo };
        let b = if b < hi { b } else { hi };
        if a >= b {
            return false;
        }
        if piece.slope.is_zero() {
            return &piece.intercept == m;
        }
        let x = &(m - &piece.intercept) / &piece.slope;
        // x on this piece (closed) and strictly inside the gap
        &x >= a && &x <= b && &x > lo && &x < hi
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GapFate {
    Indeterminate(Vec<usize>),
    To(usize),
}

pub fn gap_fate(map: &PLMap, marks: &[Rat], j: usize) -> GapFate {
    let (lo, hi) = (&marks[j], &marks[j + 1]);
    let hit: Vec<usize> =
        (0..marks.len()).filter(|&k| hits_value(map, lo, hi, &marks[k])).collect();
    if !hit.is_empty() {
        return GapFate::Indeterminate(hit);
    }
    let mid = &(lo + hi) / &Rat::from(2);
    match scan_locate(marks, &map.eval(&mid).unwrap()) {
        Err(k) => GapFate::To(k),
        Ok(_) => unreachable!("image avoids every mark"),
    }
}

/// All destabilising orbits as `(start curve, gaps visited)`, found by
/// building the whole gap transition table and walking it to cycle closure.
pub fn enumerate_orbits(map: &PLMap, model: &FiberModel) -> Vec<(usize, Vec<usize>)> {
    let marks = model.marked();
    let fates: Vec<GapFate> = (0..marks.len() - 1).map(|j| gap_fate(map, marks, j)).collect();
    let mut out = Vec::new();
    for (start, r) in marks.iter().enumerate() {
        let Err(first) = scan_locate(marks, &map.eval(r).unwrap()) else {
            continue;
        };
        let mut path = vec![first];
        loop {
            match &fates[*path.last().unwrap()] {
                GapFate::Indeterminate(_) => {
                    out.push((start, path));
                    break;
                }
                GapFate::To(k) if path.contains(k) => break,
                GapFate::To(k) => path.push(*k),
            }
        }
    }
    out
}

pub fn oracle_stable(map: &PLMap, model: &FiberModel) -> bool {
    enumerate_orbits(map, model).is_empty()
}

pub fn fold_map() -> PLMap {
    stabiliscope::build_tf(&stabiliscope::MapSpec::nonstabilisable()).unwrap()
}

pub fn two_cycle_map() -> PLMap {
    stabiliscope::build_tf(&stabiliscope::MapSpec::new(2, vec![(1, 2), (3, -2)]).unwrap()).unwrap()
}

pub fn r(s: &str) -> Rat {
    s.parse().unwrap()
}

/// Continuous map through `(i/k, y_i)` with `y_i` of small denominator.
pub fn random_pl_map<R: Rng>(rng: &mut R) -> PLMap {
    let k = rng.gen_range(1..=5i64);
    let points: Vec<(Rat, Rat)> = (0..=k)
        .map(|i| {
            let d = rng.gen_range(1..=8i64);
            (Rat::frac(i, k), Rat::frac(rng.gen_range(0..=d), d))
        })
        .collect();
    PLMap::from_points(&points).unwrap()
}

pub fn random_model<R: Rng>(rng: &mut R, blowups: usize) -> FiberModel {
    let mut m = FiberModel::unit();
    for _ in 0..blowups {
        let g = rng.gen_range(0..m.num_gaps());
        m = m.blowup_gap(g).unwrap();
    }
    m
}
