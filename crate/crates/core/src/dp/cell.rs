use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::geom::{format_rational, triangulate_ring, Location, Point2, Region};
use crate::{Polygon, RatPoint, Rational, Result};

/// Canonical vertex lists of a cell: the outer ring rotated to start at its
/// smallest vertex, then each hole likewise, holes sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellKey(Vec<Vec<RatPoint>>);

impl CellKey {
    pub fn of(region: &Polygon) -> Self {
        let mut holes: Vec<Vec<RatPoint>> = region.holes().iter().map(|h| rotated(h)).collect();
        holes.sort();
        let mut rings = vec![rotated(region.outer())];
        rings.extend(holes);
        CellKey(rings)
    }

    /// First 16 hex digits of SHA-256 over the canonical text.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.to_string().as_bytes());
        h.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CellKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, ring) in self.0.iter().enumerate() {
            if r > 0 {
                write!(f, "|")?;
            }
            for (i, p) in ring.iter().enumerate() {
                if i > 0 {
                    write!(f, ";")?;
                }
                write!(f, "{},{}", format_rational(&p.x), format_rational(&p.y))?;
            }
        }
        Ok(())
    }
}

fn rotated(ring: &[RatPoint]) -> Vec<RatPoint> {
    let start = (0..ring.len()).min_by(|&a, &b| ring[a].cmp(&ring[b])).unwrap_or(0);
    ring[start..].iter().chain(&ring[..start]).cloned().collect()
}

/// A DP cell: a region together with the input points in its closure.
#[derive(Clone, Debug)]
pub struct Cell {
    region: Polygon,
    contained: Vec<usize>,
    key: CellKey,
    twice_area: Rational,
    convex: bool,
}

impl Cell {
    /// Computes the contained points from scratch.
    pub fn new(region: Polygon, points: &[RatPoint]) -> Self {
        let contained = (0..points.len())
            .filter(|&i| region.locate(&points[i]) != Location::Outside)
            .collect();
        Self::with_contained(region, contained)
    }

    /// `contained` must be exactly the sorted indices of input points in the
    /// closed region.
    pub fn with_contained(region: Polygon, contained: Vec<usize>) -> Self {
        let key = CellKey::of(&region);
        let twice_area = region.twice_area();
        let convex = region.is_convex();
        Cell {
            region,
            contained,
            key,
            twice_area,
            convex,
        }
    }

    pub fn polygon(outer: Vec<RatPoint>, points: &[RatPoint]) -> Result<Self> {
        Ok(Self::new(Region::polygon(outer)?, points))
    }

    pub fn region(&self) -> &Polygon {
        &self.region
    }

    /// Sorted indices of input points in the closed cell.
    pub fn contained_points(&self) -> &[usize] {
        &self.contained
    }

    pub fn point_count(&self) -> usize {
        self.contained.len()
    }

    pub fn key(&self) -> &CellKey {
        &self.key
    }

    pub fn twice_area(&self) -> &Rational {
        &self.twice_area
    }

    pub fn is_convex(&self) -> bool {
        self.convex
    }

    pub fn vertex_count(&self) -> usize {
        self.region.vertex_count()
    }

    pub fn to_json(&self, index: usize) -> CellJson {
        let ring = |r: &[RatPoint]| -> Vec<[String; 2]> {
            r.iter()
                .map(|p| [format_rational(&p.x), format_rational(&p.y)])
                .collect()
        };
        CellJson {
            index,
            key: self.key.digest(),
            outer: ring(self.region.outer()),
            holes: self.region.holes().iter().map(|h| ring(h)).collect(),
            points: self.contained.clone(),
            area: format_rational(&(&self.twice_area / Rational::from_integer(2.into()))),
        }
    }
}

/// JSON form of a cell; coordinates are exact rational strings `"p/q"`.
#[derive(Clone, Debug, Serialize)]
pub struct CellJson {
    pub index: usize,
    pub key: String,
    pub outer: Vec<[String; 2]>,
    pub holes: Vec<Vec<[String; 2]>>,
    pub points: Vec<usize>,
    pub area: String,
}

/// Whether the closure of `inner` lies in the closure of `outer`.
pub fn cell_contains(outer: &Cell, inner: &Cell) -> bool {
    region_contains(&outer.region, &inner.region)
}

pub fn region_contains(outer: &Polygon, inner: &Polygon) -> bool {
    let (olo, ohi) = outer.bbox();
    let (ilo, ihi) = inner.bbox();
    if ilo.x < olo.x || ilo.y < olo.y || ihi.x > ohi.x || ihi.y > ohi.y {
        return false;
    }
    if outer.holes().is_empty() && outer.is_convex() {
        return inner.outer().iter().all(|v| outer.locate(v) != Location::Outside);
    }
    if !inner.edges().all(|(a, b)| outer.contains_segment(a, b)) {
        return false;
    }
    // A hole of `outer` is either wholly inside `inner` or wholly outside
    // its interior, since `inner`'s boundary avoids the hole's interior.
    outer.holes().iter().all(|hole| {
        let tri = &triangulate_ring(hole)[0];
        let three = Rational::from_integer(3.into());
        let probe = Point2::new(
            (&tri[0].x + &tri[1].x + &tri[2].x) / &three,
            (&tri[0].y + &tri[1].y + &tri[2].y) / &three,
        );
        inner.locate(&probe) != Location::Interior
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64, y: i64) -> RatPoint {
        RatPoint::from_ints(x, y)
    }

    fn square(lo: i64, hi: i64) -> Vec<RatPoint> {
        vec![q(lo, lo), q(hi, lo), q(hi, hi), q(lo, hi)]
    }

    fn cell(outer: Vec<RatPoint>, holes: Vec<Vec<RatPoint>>) -> Cell {
        Cell::new(Region::new(outer, holes).unwrap(), &[])
    }

    #[test]
    fn containment_examples() {
        let bbox = cell(square(0, 10), vec![]);
        let small = cell(square(2, 3), vec![]);
        let far = cell(square(20, 30), vec![]);
        assert!(cell_contains(&bbox, &small));
        assert!(cell_contains(&bbox, &bbox));
        assert!(!cell_contains(&small, &bbox));
        assert!(!cell_contains(&far, &small));
        let annulus = cell(square(0, 10), vec![square(3, 7)]);
        let in_hole = cell(square(4, 6), vec![]);
        assert!(!cell_contains(&annulus, &in_hole));
        assert!(cell_contains(&annulus, &small));
        // Covers the hole entirely: its boundary stays in the annulus.
        let around = cell(square(1, 9), vec![]);
        assert!(!cell_contains(&annulus, &around));
        assert!(cell_contains(&around, &in_hole));
    }

    #[test]
    fn key_is_rotation_invariant() {
        let a = Region::polygon(square(0, 2)).unwrap();
        let mut r = square(0, 2);
        r.rotate_left(2);
        let b = Region::polygon(r).unwrap();
        assert_eq!(CellKey::of(&a), CellKey::of(&b));
        assert_eq!(CellKey::of(&a).digest().len(), 16);
        assert_eq!(CellKey::of(&a).to_string(), "0,0;2,0;2,2;0,2");
    }

    #[test]
    fn contained_points_use_closure() {
        let pts = vec![q(0, 0), q(1, 1), q(2, 1), q(5, 5)];
        let c = Cell::polygon(square(0, 2), &pts).unwrap();
        assert_eq!(c.contained_points(), &[0, 1, 2]);
        assert!(c.is_convex());
        assert_eq!(c.to_json(0).area, "4");
    }
}
