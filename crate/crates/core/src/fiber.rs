//! The fiber `{x = 0}` after a sequence of satellite blowups.
//!
//! Curves are labelled by marked rationals `0 = r_0 < … < r_n = 1`; gap `j`
//! is the intersection point `E_{r_j} ∩ E_{r_{j+1}}`. Blowing up gap `j`
//! inserts the mediant of its two labels. The dual graph is the path through
//! the marks in order.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pl_map::{ImageSet, PLMap};
use crate::rational::{is_farey_neighbor, mediant, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FiberRepr", into = "FiberRepr")]
pub struct FiberModel {
    marked: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
struct FiberRepr {
    marked: Vec<Rat>,
}

impl TryFrom<FiberRepr> for FiberModel {
    type Error = Error;
    fn try_from(r: FiberRepr) -> Result<Self> {
        FiberModel::new(r.marked)
    }
}

impl From<FiberModel> for FiberRepr {
    fn from(m: FiberModel) -> Self {
        FiberRepr { marked: m.marked }
    }
}

/// Where a Farey index lands in the model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Placement {
    MarkedCurve(usize),
    GapPoint(usize),
}

/// Image of a gap point under the transfer rules.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PointImage {
    /// Mapped to another intersection point.
    Point(usize),
    /// Indeterminate; blown up onto the chain of marked curves `k..=l`.
    Curves(RangeInclusive<usize>),
}

impl FiberModel {
    /// Marks must start at 0, end at 1, increase strictly, and be pairwise
    /// Farey neighbours.
    pub fn new(marked: Vec<Rat>) -> Result<Self> {
        if marked.len() < 2 {
            return Err(Error::InvalidModel("need at least the marks 0 and 1".into()));
        }
        if !marked[0].is_zero() || marked[marked.len() - 1] != Rat::one() {
            return Err(Error::InvalidModel("marks must start at 0 and end at 1".into()));
        }
        for w in marked.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidModel(format!("{} >= {}", w[0], w[1])));
            }
            if !is_farey_neighbor(&w[0], &w[1]) {
                return Err(Error::InvalidModel(format!(
                    "{} and {} are not Farey neighbours",
                    w[0], w[1]
                )));
            }
        }
        Ok(FiberModel { marked })
    }

    /// `{0, 1}`: just the two original curves.
    pub fn unit() -> Self {
        FiberModel { marked: vec![Rat::zero(), Rat::one()] }
    }

    pub fn marked(&self) -> &[Rat] {
        &self.marked
    }

    pub fn num_marked(&self) -> usize {
        self.marked.len()
    }

    pub fn num_gaps(&self) -> usize {
        self.marked.len() - 1
    }

    /// `(r_j, r_{j+1})`.
    pub fn gap(&self, j: usize) -> Result<(&Rat, &Rat)> {
        self.check_gap(j)?;
        Ok((&self.marked[j], &self.marked[j + 1]))
    }

    fn check_gap(&self, j: usize) -> Result<()> {
        if j >= self.num_gaps() {
            return Err(Error::IndexOutOfRange { index: j, limit: self.num_gaps() });
        }
        Ok(())
    }

    fn check_marked(&self, j: usize) -> Result<()> {
        if j >= self.num_marked() {
            return Err(Error::IndexOutOfRange { index: j, limit: self.num_marked() });
        }
        Ok(())
    }

    pub fn locate(&self, q: &Rat) -> Result<Placement> {
        if !q.in_unit_interval() {
            return Err(Error::Domain(q.clone()));
        }
        Ok(match self.marked.binary_search(q) {
            Ok(j) => Placement::MarkedCurve(j),
            Err(i) => Placement::GapPoint(i - 1),
        })
    }

    /// Blows up gap `j`, inserting the mediant of its ends.
    pub fn blowup_gap(&self, j: usize) -> Result<FiberModel> {
        let mut next = self.clone();
        next.blowup_gap_in_place(j)?;
        Ok(next)
    }

    pub(crate) fn blowup_gap_in_place(&mut self, j: usize) -> Result<Rat> {
        self.check_gap(j)?;
        let m = mediant(&self.marked[j], &self.marked[j + 1])?;
        self.marked.insert(j + 1, m.clone());
        Ok(m)
    }

    /// Image of `E_{r_j}`: a marked curve, or the gap point it is contracted to.
    pub fn curve_image(&self, map: &PLMap, j: usize) -> Result<Placement> {
        self.check_marked(j)?;
        self.locate(&map.eval(&self.marked[j])?)
    }

    pub fn point_image(&self, map: &PLMap, j: usize) -> Result<PointImage> {
        let (lo, hi) = self.gap(j)?;
        let image = map.image_interval(lo, hi)?;
        Ok(self.classify_image(&image))
    }

    /// Marked curves inside `image` form a contiguous run; if there are none,
    /// the image sits in the closure of a single gap.
    pub fn classify_image(&self, image: &ImageSet) -> PointImage {
        let first = self.marked.partition_point(|r| r < &image.lo);
        let hits: Vec<usize> = (first..self.marked.len())
            .take_while(|&k| self.marked[k] <= image.hi)
            .filter(|&k| image.contains(&self.marked[k]))
            .collect();
        match (hits.first(), hits.last()) {
            (Some(&k), Some(&l)) => PointImage::Curves(k..=l),
            _ => {
                // no mark lies strictly inside, so the midpoint is unmarked
                let mid = &(&image.lo + &image.hi) / &Rat::from(2);
                match self.locate(&mid).expect("image lies in [0,1]") {
                    Placement::GapPoint(k) => PointImage::Point(k),
                    Placement::MarkedCurve(_) => unreachable!("unmarked midpoint"),
                }
            }
        }
    }

    pub fn is_satellite(&self) -> bool {
        self.marked.windows(2).all(|w| is_farey_neighbor(&w[0], &w[1]))
    }

    /// Path graph `E_{r_0} -- … -- E_{r_n}` in DOT.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph fiber {\n    node [shape=circle];\n");
        for (j, r) in self.marked.iter().enumerate() {
            let _ = writeln!(out, "    e{j} [label=\"{r}\"];");
        }
        for j in 0..self.num_gaps() {
            let _ = writeln!(out, "    e{j} -- e{};", j + 1);
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pl_map::{build_tf, MapSpec};
    use proptest::prelude::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn model(marks: &[&str]) -> FiberModel {
        FiberModel::new(marks.iter().map(|s| r(s)).collect()).unwrap()
    }

    fn fold() -> PLMap {
        build_tf(&MapSpec::nonstabilisable()).unwrap()
    }

    fn half_map() -> PLMap {
        PLMap::from_points(&[(r("0"), r("0")), (r("1"), r("1/2"))]).unwrap()
    }

    #[test]
    fn new_validates() {
        assert!(FiberModel::new(vec![r("0")]).is_err());
        assert!(FiberModel::new(vec![r("0"), r("1/2")]).is_err());
        assert!(FiberModel::new(vec![r("0"), r("1/3"), r("1")]).is_err());
        assert!(FiberModel::new(vec![r("0"), r("1/3"), r("1/2"), r("1")]).is_ok());
        assert!(FiberModel::new(vec![r("0"), r("2/3"), r("1")]).is_err());
        assert!(FiberModel::new(vec![r("0"), r("1/2"), r("1/2"), r("1")]).is_err());
    }

    #[test]
    fn locate_examples() {
        let m = model(&["0", "1/2", "1"]);
        assert_eq!(m.locate(&r("1/2")).unwrap(), Placement::MarkedCurve(1));
        assert_eq!(m.locate(&r("3/4")).unwrap(), Placement::GapPoint(1));
        assert_eq!(FiberModel::unit().locate(&r("1/2")).unwrap(), Placement::GapPoint(0));
        assert_eq!(m.locate(&r("0")).unwrap(), Placement::MarkedCurve(0));
        assert_eq!(m.locate(&r("1")).unwrap(), Placement::MarkedCurve(2));
        assert!(m.locate(&r("5/4")).is_err());
    }

    #[test]
    fn blowup_examples() {
        assert_eq!(FiberModel::unit().blowup_gap(0).unwrap(), model(&["0", "1/2", "1"]));
        assert_eq!(
            model(&["0", "1/2", "1"]).blowup_gap(1).unwrap(),
            model(&["0", "1/2", "2/3", "1"])
        );
        assert_eq!(
            model(&["0", "1/2", "2/3", "1"]).blowup_gap(2).unwrap(),
            model(&["0", "1/2", "2/3", "3/4", "1"])
        );
        assert_eq!(
            FiberModel::unit().blowup_gap(1),
            Err(Error::IndexOutOfRange { index: 1, limit: 1 })
        );
    }

    #[test]
    fn curve_image_examples() {
        let t = fold();
        let unit = FiberModel::unit();
        assert_eq!(unit.curve_image(&t, 1).unwrap(), Placement::GapPoint(0));
        assert_eq!(unit.curve_image(&t, 0).unwrap(), Placement::MarkedCurve(0));
        let m = model(&["0", "1/2", "1"]);
        assert_eq!(m.curve_image(&t, 2).unwrap(), Placement::MarkedCurve(1));
        assert!(unit.curve_image(&t, 2).is_err());
    }

    #[test]
    fn point_image_examples() {
        let t = fold();
        assert_eq!(FiberModel::unit().point_image(&t, 0).unwrap(), PointImage::Curves(1..=1));
        let m = model(&["0", "1/2", "1"]);
        assert_eq!(m.point_image(&half_map(), 1).unwrap(), PointImage::Point(0));
        assert_eq!(m.point_image(&t, 1).unwrap(), PointImage::Curves(2..=2));
        assert!(m.point_image(&t, 2).is_err());
    }

    #[test]
    fn point_image_covering_several_curves() {
        // (2/3, 1) ↦ (1/2, 1): both 2/3 and 3/4 are inside
        let m = model(&["0", "1/2", "2/3", "3/4", "1"]);
        assert_eq!(m.point_image(&fold(), 3).unwrap(), PointImage::Curves(2..=3));
    }

    #[test]
    fn constant_image_conventions() {
        let flat = |v: &str| {
            PLMap::from_points(&[(r("0"), r(v)), (r("1/2"), r(v)), (r("1"), r("1"))]).unwrap()
        };
        let m = model(&["0", "1/2", "1"]);
        assert_eq!(m.point_image(&flat("1/2"), 0).unwrap(), PointImage::Curves(1..=1));
        assert_eq!(m.point_image(&flat("1/3"), 0).unwrap(), PointImage::Point(0));
    }

    #[test]
    fn boundary_touching_image_is_a_point() {
        // (0, 1/2) ↦ (0, 1/4) under q/2: 0 is a non-attained end
        let m = model(&["0", "1/2", "1"]);
        assert_eq!(m.point_image(&half_map(), 0).unwrap(), PointImage::Point(0));
        // (1/2, 1) ↦ (1/4, 1/2) touches the mark 1/2 only at an open end
        assert_eq!(m.point_image(&half_map(), 1).unwrap(), PointImage::Point(0));
    }

    #[test]
    fn dot_export() {
        let dot = model(&["0", "1/2", "1"]).to_dot();
        assert_eq!(
            dot,
            "graph fiber {\n    node [shape=circle];\n    e0 [label=\"0/1\"];\n    e1 [label=\"1/2\"];\n    e2 [label=\"1/1\"];\n    e0 -- e1;\n    e1 -- e2;\n}\n"
        );
    }

    #[test]
    fn json_shape() {
        let m = model(&["0", "1/2", "1"]);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"marked":["0/1","1/2","1/1"]}"#);
        assert_eq!(serde_json::from_str::<FiberModel>(&json).unwrap(), m);
        assert!(serde_json::from_str::<FiberModel>(r#"{"marked":["0/1","2/3","1/1"]}"#).is_err());
    }

    fn unit_rat() -> impl Strategy<Value = Rat> {
        (1i64..100).prop_flat_map(|d| (0..=d, Just(d))).prop_map(|(n, d)| Rat::frac(n, d))
    }

    fn random_model() -> impl Strategy<Value = FiberModel> {
        proptest::collection::vec(any::<prop::sample::Index>(), 0..20).prop_map(|picks| {
            let mut m = FiberModel::unit();
            for p in picks {
                m = m.blowup_gap(p.index(m.num_gaps())).unwrap();
            }
            m
        })
    }

    proptest! {
        #[test]
        fn blowups_stay_satellite(picks in proptest::collection::vec(any::<prop::sample::Index>(), 0..30)) {
            let mut m = FiberModel::unit();
            for p in picks {
                m = m.blowup_gap(p.index(m.num_gaps())).unwrap();
                prop_assert!(m.is_satellite());
            }
        }

        #[test]
        fn locate_is_coherent_with_blowup(m in random_model(), gap in any::<prop::sample::Index>(), qs in proptest::collection::vec(unit_rat(), 30)) {
            let j = gap.index(m.num_gaps());
            let (lo, hi) = m.gap(j).unwrap();
            let mid = mediant(lo, hi).unwrap();
            let next = m.blowup_gap(j).unwrap();
            prop_assert_eq!(next.locate(&mid).unwrap(), Placement::MarkedCurve(j + 1));
            for q in qs.iter().filter(|q| **q != mid) {
                match (m.locate(q).unwrap(), next.locate(q).unwrap()) {
                    (Placement::MarkedCurve(a), Placement::MarkedCurve(b)) => {
                        prop_assert_eq!(b, if a <= j { a } else { a + 1 });
                    }
                    (Placement::GapPoint(a), Placement::GapPoint(b)) => {
                        if a < j { prop_assert_eq!(b, a); }
                        else if a == j { prop_assert!(b == j || b == j + 1); }
                        else { prop_assert_eq!(b, a + 1); }
                    }
                    (before, after) => prop_assert!(false, "{:?} became {:?}", before, after),
                }
            }
        }

        #[test]
        fn point_image_matches_brute_force_scan(m in random_model(), ys in proptest::collection::vec(unit_rat(), 2..6)) {
            let k = ys.len() - 1;
            let points: Vec<_> = ys.into_iter().enumerate()
                .map(|(i, y)| (Rat::frac(i as i64, k as i64), y)).collect();
            let t = PLMap::from_points(&points).unwrap();
            for j in 0..m.num_gaps() {
                let (lo, hi) = m.gap(j).unwrap();
                let s = t.image_interval(lo, hi).unwrap();
                let inside: Vec<usize> = (0..m.num_marked()).filter(|&i| s.contains(&m.marked()[i])).collect();
                match m.point_image(&t, j).unwrap() {
                    PointImage::Curves(range) => {
                        prop_assert_eq!(range.collect::<Vec<_>>(), inside);
                    }
                    PointImage::Point(g) => {
                        prop_assert!(inside.is_empty());
                        let (glo, ghi) = m.gap(g).unwrap();
                        prop_assert!(glo <= &s.lo && &s.hi <= ghi);
                    }
                }
            }
        }
    }
}
