use std::collections::BTreeMap;

use crate::empty::TriangleUniverse;
use crate::geom::{classify_segments, line_intersection, Point2, Scalar, SegmentRelation};
use crate::{Error, RatPoint, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DpPointMode {
    #[default]
    BasicOnly,
    BasicAndAdditional,
}

/// Where a DP point came from; a point may be both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Provenance {
    pub basic: bool,
    pub additional: bool,
}

/// Deduplicated DP points with provenance tags, ordered lexicographically.
#[derive(Clone, Debug, Default)]
pub struct DpPointSet {
    points: BTreeMap<RatPoint, Provenance>,
    bbox: Option<(RatPoint, RatPoint)>,
}

/// Pairs of candidate segments examined when generating additional points.
pub const MAX_ADDITIONAL_PAIRS: usize = 50_000_000;

impl DpPointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RatPoint, &Provenance)> {
        self.points.iter()
    }

    pub fn basic(&self) -> impl Iterator<Item = &RatPoint> {
        self.points.iter().filter(|(_, p)| p.basic).map(|(q, _)| q)
    }

    pub fn additional(&self) -> impl Iterator<Item = &RatPoint> {
        self.points.iter().filter(|(_, p)| p.additional).map(|(q, _)| q)
    }

    pub fn contains(&self, p: &RatPoint) -> bool {
        self.points.contains_key(p)
    }

    pub fn provenance(&self, p: &RatPoint) -> Option<Provenance> {
        self.points.get(p).copied()
    }

    /// Lower-left and upper-right corners of the triangles' bounding box.
    pub fn bbox(&self) -> Option<&(RatPoint, RatPoint)> {
        self.bbox.as_ref()
    }

    /// The bounding box as a counter-clockwise ring.
    pub fn bbox_ring(&self) -> Option<Vec<RatPoint>> {
        let (lo, hi) = self.bbox.as_ref()?;
        Some(vec![
            lo.clone(),
            Point2::new(hi.x.clone(), lo.y.clone()),
            hi.clone(),
            Point2::new(lo.x.clone(), hi.y.clone()),
        ])
    }

    /// Builds a set from explicit basic points, taking their bounding box as
    /// the box.
    pub fn from_basic(points: impl IntoIterator<Item = RatPoint>) -> Self {
        let mut set = DpPointSet::default();
        for p in points {
            set.tag(p, true);
        }
        set.bbox = bbox_of(set.points.keys());
        set
    }

    fn tag(&mut self, p: RatPoint, basic: bool) {
        let entry = self.points.entry(p).or_default();
        if basic {
            entry.basic = true;
        } else {
            entry.additional = true;
        }
    }
}

fn bbox_of<'a>(points: impl Iterator<Item = &'a RatPoint>) -> Option<(RatPoint, RatPoint)> {
    let pts: Vec<&RatPoint> = points.collect();
    let xlo = pts.iter().map(|p| &p.x).min()?.clone();
    let xhi = pts.iter().map(|p| &p.x).max()?.clone();
    let ylo = pts.iter().map(|p| &p.y).min()?.clone();
    let yhi = pts.iter().map(|p| &p.y).max()?.clone();
    Some((Point2::new(xlo, ylo), Point2::new(xhi, yhi)))
}

pub fn build_dp_points<T: Scalar>(
    universe: &TriangleUniverse<T>,
    mode: DpPointMode,
    cap: usize,
) -> Result<DpPointSet> {
    let triangles: Vec<[RatPoint; 3]> = universe
        .triangles
        .iter()
        .map(|t| universe.corners(t).map(|p| p.to_rational()))
        .collect();
    build_dp_points_for(&triangles, mode, cap)
}

/// DP points of an explicit triangle list: the bounding box corners, every
/// crossing of a vertical line through a triangle corner with a triangle
/// edge or a horizontal box edge, and optionally every crossing between
/// segments joining two basic points.
pub fn build_dp_points_for(
    triangles: &[[RatPoint; 3]],
    mode: DpPointMode,
    cap: usize,
) -> Result<DpPointSet> {
    if triangles.is_empty() {
        return Err(Error::InvalidInput("no triangles to induce DP points".into()));
    }
    let (lo, hi) = bbox_of(triangles.iter().flatten()).expect("non-empty");
    let mut set = DpPointSet {
        points: BTreeMap::new(),
        bbox: Some((lo.clone(), hi.clone())),
    };
    let over = || Error::CapacityExceeded {
        what: "DP points",
        limit: cap,
    };
    let corners = [
        lo.clone(),
        Point2::new(hi.x.clone(), lo.y.clone()),
        hi.clone(),
        Point2::new(lo.x.clone(), hi.y.clone()),
    ];
    for c in corners {
        set.tag(c, true);
    }
    let mut xs: Vec<&Rational> = triangles.iter().flatten().map(|p| &p.x).collect();
    xs.sort();
    xs.dedup();
    let edges: Vec<(&RatPoint, &RatPoint)> = triangles
        .iter()
        .flat_map(|[a, b, c]| [(a, b), (b, c), (c, a)])
        .collect();
    for x in xs {
        set.tag(Point2::new(x.clone(), lo.y.clone()), true);
        set.tag(Point2::new(x.clone(), hi.y.clone()), true);
        for &(a, b) in &edges {
            for y in vertical_hits(x, a, b) {
                set.tag(Point2::new(x.clone(), y), true);
            }
        }
        if set.len() > cap {
            return Err(over());
        }
    }
    if mode == DpPointMode::BasicAndAdditional {
        let basic: Vec<RatPoint> = set.basic().cloned().collect();
        let segs: Vec<(usize, usize)> = (0..basic.len())
            .flat_map(|i| (i + 1..basic.len()).map(move |j| (i, j)))
            .collect();
        let pairs = segs.len().saturating_mul(segs.len().saturating_sub(1)) / 2;
        if pairs > MAX_ADDITIONAL_PAIRS {
            return Err(Error::CapacityExceeded {
                what: "segment pairs for additional DP points",
                limit: MAX_ADDITIONAL_PAIRS,
            });
        }
        for (s, &(i, j)) in segs.iter().enumerate() {
            for &(k, l) in &segs[s + 1..] {
                let (a, b, c, d) = (&basic[i], &basic[j], &basic[k], &basic[l]);
                if classify_segments(a, b, c, d) == SegmentRelation::ProperCross {
                    let p = line_intersection(a, b, c, d).expect("crossing segments");
                    set.tag(p, false);
                    if set.len() > cap {
                        return Err(over());
                    }
                }
            }
        }
        // Segments sharing an endpoint meet at a basic point; with the four
        // box corners present every basic point is such a meeting point.
        for p in basic {
            set.tag(p, false);
        }
    }
    Ok(set)
}

/// `y` values where the line `X = x` meets the closed segment `ab`: one
/// point for a crossing, both endpoints if the segment lies on the line.
fn vertical_hits(x: &Rational, a: &RatPoint, b: &RatPoint) -> Vec<Rational> {
    if a.x == b.x {
        return if &a.x == x {
            vec![a.y.clone(), b.y.clone()]
        } else {
            vec![]
        };
    }
    let (l, r) = if a.x < b.x { (a, b) } else { (b, a) };
    if x < &l.x || x > &r.x {
        return vec![];
    }
    let t = (x - &l.x) / (&r.x - &l.x);
    vec![&l.y + t * (&r.y - &l.y)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::empty::enumerate_empty;

    fn q(x: i64, y: i64) -> RatPoint {
        RatPoint::from_ints(x, y)
    }

    #[test]
    fn single_triangle() {
        let u = enumerate_empty(&[
            Point2::new(0i64, 0),
            Point2::new(4, 0),
            Point2::new(0, 4),
        ])
        .unwrap();
        let set = build_dp_points(&u, DpPointMode::BasicOnly, 1000).unwrap();
        let got: Vec<_> = set.basic().cloned().collect();
        assert_eq!(got, vec![q(0, 0), q(0, 4), q(4, 0), q(4, 4)]);
        assert_eq!(set.additional().count(), 0);
    }

    #[test]
    fn empty_universe_rejected() {
        assert!(matches!(
            build_dp_points_for(&[], DpPointMode::BasicOnly, 10),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn cap_exceeded() {
        let tri = [q(0, 0), q(5, 1), q(2, 7)];
        assert!(matches!(
            build_dp_points_for(&[tri], DpPointMode::BasicOnly, 3),
            Err(Error::CapacityExceeded { .. })
        ));
    }
}
