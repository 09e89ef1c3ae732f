//! Piecewise-affine self-maps of `[0, 1]` with exact rational data.
//!
//! For a map `(x, y) ↦ (x^N, Σ c_i x^{α_i} y^{β_i})` with generic coefficients,
//! the induced action on Farey indices is the lower envelope
//! `q ↦ min_i (α_i + β_i q) / N`. [`build_tf`] computes that envelope; the
//! resulting [`PLMap`] is then iterated exactly.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rat;

/// Exponent data of a monomial-type map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MapSpecRepr", into = "MapSpecRepr")]
pub struct MapSpec {
    n_first: u64,
    monomials: Vec<(i64, i64)>,
}

#[derive(Serialize, Deserialize)]
struct MapSpecRepr {
    n: u64,
    monomials: Vec<[i64; 2]>,
}

impl TryFrom<MapSpecRepr> for MapSpec {
    type Error = Error;
    fn try_from(r: MapSpecRepr) -> Result<Self> {
        MapSpec::new(r.n, r.monomials.into_iter().map(|[a, b]| (a, b)).collect())
    }
}

impl From<MapSpec> for MapSpecRepr {
    fn from(s: MapSpec) -> Self {
        MapSpecRepr {
            n: s.n_first,
            monomials: s.monomials.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl MapSpec {
    pub fn new(n_first: u64, monomials: Vec<(i64, i64)>) -> Result<Self> {
        if n_first == 0 {
            return Err(Error::InvalidMapSpec("n must be positive".into()));
        }
        if monomials.is_empty() {
            return Err(Error::InvalidMapSpec("no monomials".into()));
        }
        if monomials.iter().all(|&(_, beta)| beta == 0) {
            return Err(Error::InvalidMapSpec("every monomial has beta = 0".into()));
        }
        let mut seen = HashSet::new();
        for m in &monomials {
            if !seen.insert(*m) {
                return Err(Error::InvalidMapSpec(format!("duplicate monomial {m:?}")));
            }
        }
        Ok(MapSpec { n_first, monomials })
    }

    /// `(x, y) ↦ (x², x⁴y⁻³ + y³)`, the fold map whose blowup at the origin
    /// admits no stabilising morphism.
    pub fn nonstabilisable() -> Self {
        MapSpec::new(2, vec![(4, -3), (0, 3)]).expect("valid")
    }

    pub fn n_first(&self) -> u64 {
        self.n_first
    }

    pub fn monomials(&self) -> &[(i64, i64)] {
        &self.monomials
    }

    /// The lines `q ↦ (α + β q) / N` as `(slope, intercept)`.
    pub fn lines(&self) -> Vec<Affine> {
        let n = Rat::from(self.n_first as i64);
        self.monomials
            .iter()
            .map(|&(alpha, beta)| Affine {
                slope: &Rat::from(beta) / &n,
                intercept: &Rat::from(alpha) / &n,
            })
            .collect()
    }
}

/// `q ↦ slope·q + intercept`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Affine {
    pub slope: Rat,
    pub intercept: Rat,
}

impl Affine {
    pub fn new(slope: Rat, intercept: Rat) -> Self {
        Affine { slope, intercept }
    }

    pub fn at(&self, q: &Rat) -> Rat {
        &(&self.slope * q) + &self.intercept
    }
}

/// A continuous piecewise-affine map `[0,1] → [0,1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PLMapRepr", into = "PLMapRepr")]
pub struct PLMap {
    breakpoints: Vec<Rat>,
    pieces: Vec<Affine>,
}

#[derive(Serialize, Deserialize)]
struct PLMapRepr {
    breakpoints: Vec<Rat>,
    pieces: Vec<Affine>,
}

impl TryFrom<PLMapRepr> for PLMap {
    type Error = Error;
    fn try_from(r: PLMapRepr) -> Result<Self> {
        PLMap::from_pieces(r.breakpoints, r.pieces)
    }
}

impl From<PLMap> for PLMapRepr {
    fn from(m: PLMap) -> Self {
        PLMapRepr { breakpoints: m.breakpoints, pieces: m.pieces }
    }
}

impl PLMap {
    /// Validates breakpoints `0 = b_0 < … < b_k = 1`, one piece per interval,
    /// continuity at interior breakpoints, and values in `[0, 1]`.
    pub fn from_pieces(breakpoints: Vec<Rat>, pieces: Vec<Affine>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::InvalidMap("need at least two breakpoints".into()));
        }
        if pieces.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidMap(format!(
                "{} breakpoints but {} pieces",
                breakpoints.len(),
                pieces.len()
            )));
        }
        if !breakpoints[0].is_zero() || breakpoints[breakpoints.len() - 1] != Rat::one() {
            return Err(Error::InvalidMap("breakpoints must run from 0 to 1".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidMap("breakpoints not strictly increasing".into()));
        }
        for (i, w) in pieces.windows(2).enumerate() {
            let b = &breakpoints[i + 1];
            if w[0].at(b) != w[1].at(b) {
                return Err(Error::InvalidMap(format!("discontinuous at {b}")));
            }
        }
        for (i, b) in breakpoints.iter().enumerate() {
            let value = pieces[i.min(pieces.len() - 1)].at(b);
            if !value.in_unit_interval() {
                return Err(Error::NotForwardInvariant {
                    at: Box::new(b.clone()),
                    value: Box::new(value),
                });
            }
        }
        Ok(PLMap { breakpoints, pieces })
    }

    /// Linear interpolation through `(x_i, y_i)` with `x_0 = 0`, `x_k = 1`.
    pub fn from_points(points: &[(Rat, Rat)]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidMap("need at least two points".into()));
        }
        let mut pieces = Vec::with_capacity(points.len() - 1);
        for w in points.windows(2) {
            let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
            if x0 >= x1 {
                return Err(Error::InvalidMap("points not strictly increasing".into()));
            }
            let slope = &(y1 - y0) / &(x1 - x0);
            let intercept = y0 - &(&slope * x0);
            pieces.push(Affine { slope, intercept });
        }
        PLMap::from_pieces(points.iter().map(|(x, _)| x.clone()).collect(), pieces)
    }

    pub fn identity() -> Self {
        PLMap {
            breakpoints: vec![Rat::zero(), Rat::one()],
            pieces: vec![Affine::new(Rat::one(), Rat::zero())],
        }
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Affine] {
        &self.pieces
    }

    /// Breakpoints strictly between 0 and 1.
    pub fn interior_breakpoints(&self) -> &[Rat] {
        &self.breakpoints[1..self.breakpoints.len() - 1]
    }

    fn piece_index(&self, q: &Rat) -> usize {
        // last piece whose left end is <= q
        let i = self.breakpoints.partition_point(|b| b <= q);
        i.saturating_sub(1).min(self.pieces.len() - 1)
    }

    pub fn eval(&self, q: &Rat) -> Result<Rat> {
        if !q.in_unit_interval() {
            return Err(Error::Domain(q.clone()));
        }
        Ok(self.pieces[self.piece_index(q)].at(q))
    }

    /// `[T(q0), T²(q0), …, T^steps(q0)]`.
    pub fn orbit(&self, q0: &Rat, steps: usize) -> Result<Vec<Rat>> {
        let mut out = Vec::with_capacity(steps);
        let mut q = q0.clone();
        for _ in 0..steps {
            q = self.eval(&q)?;
            out.push(q.clone());
        }
        Ok(out)
    }

    /// The exact set `{T(x) : lo < x < hi}`.
    pub fn image_interval(&self, lo: &Rat, hi: &Rat) -> Result<ImageSet> {
        if !lo.in_unit_interval() || !hi.in_unit_interval() || lo >= hi {
            return Err(Error::InvalidArgument(format!("bad gap ({lo}, {hi})")));
        }
        let mut acc: Option<ImageSet> = None;
        for (i, piece) in self.pieces.iter().enumerate() {
            let a = std::cmp::max(lo, &self.breakpoints[i]);
            let b = std::cmp::min(hi, &self.breakpoints[i + 1]);
            if a >= b {
                continue;
            }
            // an end of the clipped piece is reached iff it lies inside (lo, hi)
            let (va, a_in) = (piece.at(a), a > lo);
            let (vb, b_in) = (piece.at(b), b < hi);
            let part = if piece.slope.is_zero() {
                ImageSet::point(va)
            } else if va < vb {
                ImageSet { lo: va, hi: vb, lo_attained: a_in, hi_attained: b_in }
            } else {
                ImageSet { lo: vb, hi: va, lo_attained: b_in, hi_attained: a_in }
            };
            acc = Some(match acc {
                None => part,
                Some(prev) => prev.hull(part),
            });
        }
        Ok(acc.expect("(lo, hi) meets at least one piece"))
    }
}

/// `T((p, q))` as an interval with per-end attainment flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageSet {
    pub lo: Rat,
    pub hi: Rat,
    pub lo_attained: bool,
    pub hi_attained: bool,
}

impl ImageSet {
    pub fn point(v: Rat) -> Self {
        ImageSet { lo: v.clone(), hi: v, lo_attained: true, hi_attained: true }
    }

    pub fn open(lo: Rat, hi: Rat) -> Self {
        ImageSet { lo, hi, lo_attained: false, hi_attained: false }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        (&self.lo < x && x < &self.hi)
            || (x == &self.lo && self.lo_attained)
            || (x == &self.hi && self.hi_attained)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Union of two overlapping or touching intervals.
    fn hull(self, other: ImageSet) -> ImageSet {
        use std::cmp::Ordering::*;
        let (lo, lo_attained) = match self.lo.cmp(&other.lo) {
            Less => (self.lo, self.lo_attained),
            Greater => (other.lo, other.lo_attained),
            Equal => (self.lo, self.lo_attained || other.lo_attained),
        };
        let (hi, hi_attained) = match self.hi.cmp(&other.hi) {
            Greater => (self.hi, self.hi_attained),
            Less => (other.hi, other.hi_attained),
            Equal => (self.hi, self.hi_attained || other.hi_attained),
        };
        ImageSet { lo, hi, lo_attained, hi_attained }
    }
}

/// Lower envelope of the spec's lines over `[0, 1]`, rejected if it leaves
/// `[0, 1]`.
pub fn build_tf(spec: &MapSpec) -> Result<PLMap> {
    let mut lines = spec.lines();
    // among parallel lines only the lowest matters
    lines.sort_by(|a, b| a.slope.cmp(&b.slope).then(a.intercept.cmp(&b.intercept)));
    lines.dedup_by(|later, earlier| later.slope == earlier.slope);

    let zero = Rat::zero();
    let one = Rat::one();
    // Start with the minimum at 0; ties go to the smaller slope, which stays
    // lowest to the right.
    let mut current = lines
        .iter()
        .min_by(|a, b| a.at(&zero).cmp(&b.at(&zero)).then(a.slope.cmp(&b.slope)))
        .expect("nonempty")
        .clone();
    let mut breakpoints = vec![zero];
    let mut pieces = Vec::new();
    loop {
        let x = breakpoints.last().expect("nonempty").clone();
        // next line to undercut `current`: earliest crossing, then smallest slope
        let next = lines
            .iter()
            .filter(|l| l.slope < current.slope)
            .map(|l| {
                let cross = &(&l.intercept - &current.intercept) / &(&current.slope - &l.slope);
                (cross, l)
            })
            .filter(|(cross, _)| cross > &x && cross < &one)
            .min_by(|(ca, la), (cb, lb)| ca.cmp(cb).then(la.slope.cmp(&lb.slope)));
        match next {
            Some((cross, line)) => {
                pieces.push(current);
                breakpoints.push(cross);
                current = line.clone();
            }
            None => {
                pieces.push(current);
                breakpoints.push(one);
                break;
            }
        }
    }
    PLMap::from_pieces(breakpoints, pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn fold() -> PLMap {
        build_tf(&MapSpec::nonstabilisable()).unwrap()
    }

    fn two_cycle() -> PLMap {
        build_tf(&MapSpec::new(2, vec![(1, 2), (3, -2)]).unwrap()).unwrap()
    }

    /// min_i (α_i + β_i q) / N evaluated directly.
    fn envelope_oracle(spec: &MapSpec, q: &Rat) -> Rat {
        spec.lines().iter().map(|l| l.at(q)).min().unwrap()
    }

    #[test]
    fn nonstabilisable_envelope() {
        let t = fold();
        assert_eq!(t.breakpoints(), &[r("0"), r("2/3"), r("1")]);
        assert_eq!(t.pieces()[0], Affine::new(r("3/2"), r("0")));
        assert_eq!(t.pieces()[1], Affine::new(r("-3/2"), r("2")));
    }

    #[test]
    fn identity_envelope() {
        let t = build_tf(&MapSpec::new(1, vec![(0, 1)]).unwrap()).unwrap();
        assert_eq!(t, PLMap::identity());
    }

    #[test]
    fn two_cycle_envelope_matches_grid_oracle() {
        let spec = MapSpec::new(2, vec![(1, 2), (3, -2)]).unwrap();
        let t = build_tf(&spec).unwrap();
        assert_eq!(t.breakpoints(), &[r("0"), r("1/2"), r("1")]);
        assert_eq!(t.pieces()[0], Affine::new(r("1"), r("1/2")));
        assert_eq!(t.pieces()[1], Affine::new(r("-1"), r("3/2")));
        for k in 0..=100 {
            let q = Rat::frac(k, 100);
            assert_eq!(t.eval(&q).unwrap(), envelope_oracle(&spec, &q));
        }
    }

    #[test]
    fn parallel_and_redundant_lines_collapse() {
        // 2q and 1/2 + 3q/2 lie above 3q/2 on all of [0,1]
        let spec = MapSpec::new(2, vec![(4, -3), (0, 3), (0, 4), (1, 3)]).unwrap();
        assert_eq!(build_tf(&spec).unwrap(), fold());
    }

    #[test]
    fn three_lines_through_one_point_give_one_breakpoint() {
        // q, 1/2, 1 - q all meet at 1/2
        let spec = MapSpec::new(2, vec![(0, 2), (1, 0), (2, -2)]).unwrap();
        let t = build_tf(&spec).unwrap();
        assert_eq!(t.breakpoints(), &[r("0"), r("1/2"), r("1")]);
    }

    #[test]
    fn escaping_envelope_is_rejected() {
        let spec = MapSpec::new(1, vec![(0, 2)]).unwrap();
        assert!(matches!(build_tf(&spec), Err(Error::NotForwardInvariant { .. })));
        let spec = MapSpec::new(1, vec![(-1, 1)]).unwrap();
        assert!(matches!(build_tf(&spec), Err(Error::NotForwardInvariant { .. })));
    }

    #[test]
    fn spec_validation() {
        assert!(MapSpec::new(0, vec![(0, 1)]).is_err());
        assert!(MapSpec::new(1, vec![]).is_err());
        assert!(MapSpec::new(1, vec![(1, 0)]).is_err());
        assert!(MapSpec::new(1, vec![(0, 1), (0, 1)]).is_err());
        let err = serde_json::from_str::<MapSpec>(r#"{"n":2,"monomials":[[1,0]]}"#);
        assert!(err.is_err());
    }

    #[test]
    fn eval_examples() {
        let t = fold();
        assert_eq!(t.eval(&r("1")).unwrap(), r("1/2"));
        assert_eq!(t.eval(&r("0")).unwrap(), r("0"));
        assert_eq!(t.eval(&r("2/3")).unwrap(), r("1"));
        assert_eq!(t.eval(&r("3/2")), Err(Error::Domain(r("3/2"))));
        assert_eq!(t.eval(&r("-1/2")), Err(Error::Domain(r("-1/2"))));
    }

    #[test]
    fn orbit_examples() {
        let t = fold();
        assert_eq!(t.orbit(&r("1"), 4).unwrap(), vec![r("1/2"), r("3/4"), r("7/8"), r("11/16")]);
        assert_eq!(PLMap::identity().orbit(&r("1/3"), 5).unwrap(), vec![r("1/3"); 5]);
        assert_eq!(
            two_cycle().orbit(&r("1"), 4).unwrap(),
            vec![r("1/2"), r("1"), r("1/2"), r("1")]
        );
        assert!(t.orbit(&r("1"), 0).unwrap().is_empty());
    }

    #[test]
    fn denominator_doubles_along_orbit_of_one() {
        let orbit = fold().orbit(&r("1"), 64).unwrap();
        for (m, v) in orbit.iter().enumerate() {
            let expected = num_bigint::BigInt::from(1) << (m + 1);
            assert_eq!(v.denom(), &expected, "step {}", m + 1);
            assert!(crate::rational::is_odd(v.numer()));
        }
    }

    /// Brute-force image: evaluate at every rational with denominator <= 64
    /// inside the gap, returning (min, max) of the samples.
    fn sampled_image(t: &PLMap, lo: &Rat, hi: &Rat, max_den: i64) -> (Rat, Rat) {
        let mut vals = Vec::new();
        for d in 1..=max_den {
            for n in 0..=d {
                let x = Rat::frac(n, d);
                if &x > lo && &x < hi {
                    vals.push(t.eval(&x).unwrap());
                }
            }
        }
        (vals.iter().min().unwrap().clone(), vals.iter().max().unwrap().clone())
    }

    #[test]
    fn image_of_whole_interval_under_fold() {
        let t = fold();
        let s = t.image_interval(&r("0"), &r("1")).unwrap();
        assert_eq!(s, ImageSet { lo: r("0"), hi: r("1"), lo_attained: false, hi_attained: true });
        let (min, max) = sampled_image(&t, &r("0"), &r("1"), 64);
        assert_eq!(max, r("1"));
        assert!(min > r("0") && min <= r("3/128"));
    }

    #[test]
    fn image_of_decreasing_branch() {
        let t = fold();
        let s = t.image_interval(&r("2/3"), &r("1")).unwrap();
        assert_eq!(s, ImageSet::open(r("1/2"), r("1")));
        let (min, max) = sampled_image(&t, &r("2/3"), &r("1"), 64);
        assert!(min > r("1/2") && max < r("1"));
    }

    #[test]
    fn image_under_identity_is_open() {
        let s = PLMap::identity().image_interval(&r("1/4"), &r("1/2")).unwrap();
        assert_eq!(s, ImageSet::open(r("1/4"), r("1/2")));
        assert!(!s.contains(&r("1/4")) && s.contains(&r("1/3")));
    }

    #[test]
    fn image_of_constant_piece_is_a_point() {
        let t = PLMap::from_points(&[
            (r("0"), r("0")),
            (r("1/3"), r("1/2")),
            (r("2/3"), r("1/2")),
            (r("1"), r("1")),
        ])
        .unwrap();
        let s = t.image_interval(&r("2/5"), &r("3/5")).unwrap();
        assert_eq!(s, ImageSet::point(r("1/2")));
        assert!(s.is_point() && s.contains(&r("1/2")));
    }

    #[test]
    fn from_pieces_rejects_bad_input() {
        let id = Affine::new(r("1"), r("0"));
        assert!(PLMap::from_pieces(vec![r("0"), r("1")], vec![]).is_err());
        assert!(PLMap::from_pieces(vec![r("0"), r("1/2")], vec![id.clone()]).is_err());
        assert!(PLMap::from_pieces(
            vec![r("0"), r("1/2"), r("1/2"), r("1")],
            vec![id.clone(), id.clone(), id.clone()]
        )
        .is_err());
        // jump at 1/2
        assert!(PLMap::from_pieces(
            vec![r("0"), r("1/2"), r("1")],
            vec![id.clone(), Affine::new(r("1"), r("1/4"))]
        )
        .is_err());
        assert!(matches!(
            PLMap::from_pieces(vec![r("0"), r("1")], vec![Affine::new(r("2"), r("0"))]),
            Err(Error::NotForwardInvariant { .. })
        ));
    }

    #[test]
    fn json_shapes() {
        let json = serde_json::to_string(&fold()).unwrap();
        assert_eq!(
            json,
            r#"{"breakpoints":["0/1","2/3","1/1"],"pieces":[{"slope":"3/2","intercept":"0/1"},{"slope":"-3/2","intercept":"2/1"}]}"#
        );
        let back: PLMap = serde_json::from_str(&json).unwrap();
        assert_eq!(back, fold());
        let spec: MapSpec = serde_json::from_str(r#"{"n":2,"monomials":[[4,-3],[0,3]]}"#).unwrap();
        assert_eq!(spec, MapSpec::nonstabilisable());
    }

    fn spec_strategy() -> impl Strategy<Value = MapSpec> {
        (1u64..6, proptest::collection::hash_set((-6i64..=6, -6i64..=6), 1..5))
            .prop_filter_map("need a beta != 0", |(n, set)| {
                MapSpec::new(n, set.into_iter().collect()).ok()
            })
    }

    fn unit_rat() -> impl Strategy<Value = Rat> {
        (1i64..200).prop_flat_map(|d| (0..=d, Just(d))).prop_map(|(n, d)| Rat::frac(n, d))
    }

    proptest! {
        #[test]
        fn envelope_agrees_with_direct_minimum(spec in spec_strategy(), qs in proptest::collection::vec(unit_rat(), 50)) {
            match build_tf(&spec) {
                Ok(t) => {
                    for q in &qs {
                        prop_assert_eq!(t.eval(q).unwrap(), envelope_oracle(&spec, q));
                    }
                    // concave: slopes non-increasing
                    prop_assert!(t.pieces().windows(2).all(|w| w[0].slope > w[1].slope));
                }
                Err(Error::NotForwardInvariant { at, value }) => {
                    prop_assert_eq!(envelope_oracle(&spec, &at), *value.clone());
                    prop_assert!(!value.in_unit_interval());
                }
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }

        #[test]
        fn image_contains_samples(
            ys in proptest::collection::vec(unit_rat(), 2..6),
            (a, b) in (unit_rat(), unit_rat()).prop_filter("distinct", |(a, b)| a != b),
            xs in proptest::collection::vec(unit_rat(), 100),
        ) {
            let k = ys.len() - 1;
            let points: Vec<_> = ys.into_iter().enumerate()
                .map(|(i, y)| (Rat::frac(i as i64, k as i64), y)).collect();
            let t = PLMap::from_points(&points).unwrap();
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let s = t.image_interval(&lo, &hi).unwrap();
            prop_assert!(s.lo <= s.hi);
            if s.is_point() { prop_assert!(s.lo_attained && s.hi_attained); }
            // map arbitrary unit rationals into the gap
            for x in &xs {
                let inside = &lo + &(&(&hi - &lo) * &(&(x + &Rat::one()) / &Rat::from(3)));
                prop_assert!(s.contains(&t.eval(&inside).unwrap()));
            }
            // attained ends are hit at some breakpoint inside the gap or on a flat piece
            let mut candidates: Vec<Rat> = t.breakpoints().iter().filter(|b| *b > &lo && *b < &hi).cloned().collect();
            candidates.push(&(&lo + &hi) / &Rat::from(2));
            let vals: Vec<Rat> = candidates.iter().map(|x| t.eval(x).unwrap()).collect();
            if s.lo_attained { prop_assert!(vals.contains(&s.lo)); }
            if s.hi_attained { prop_assert!(vals.contains(&s.hi)); }
            // non-attained ends are the limits at the gap ends
            let ends = [t.eval(&lo).unwrap(), t.eval(&hi).unwrap()];
            if !s.lo_attained { prop_assert!(ends.contains(&s.lo)); }
            if !s.hi_attained { prop_assert!(ends.contains(&s.hi)); }
        }
    }
}
