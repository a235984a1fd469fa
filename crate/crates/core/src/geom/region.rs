use super::point::Point2;
use super::predicates::{
    classify_segments, cross, on_segment, orient, segment_contacts, Location, SegmentRelation,
    Sign,
};
use super::scalar::{ExactField, Scalar};
use crate::Error;

/// A closed polygonal region: a simple outer ring (counter-clockwise) and
/// zero or more simple holes (clockwise) strictly inside it and pairwise
/// disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Region<T> {
    outer: Vec<Point2<T>>,
    holes: Vec<Vec<Point2<T>>>,
}

impl<T: Scalar> Region<T> {
    /// Validates the rings and normalizes their orientation.
    pub fn new(outer: Vec<Point2<T>>, holes: Vec<Vec<Point2<T>>>) -> Result<Self, Error> {
        let outer = oriented(outer, Sign::Positive)?;
        let holes = holes
            .into_iter()
            .map(|h| oriented(h, Sign::Negative))
            .collect::<Result<Vec<_>, _>>()?;
        let region = Region { outer, holes };
        region.check_holes()?;
        Ok(region)
    }

    pub fn polygon(outer: Vec<Point2<T>>) -> Result<Self, Error> {
        Self::new(outer, Vec::new())
    }

    /// Builds a region from rings already known to be valid and correctly
    /// oriented.
    pub(crate) fn from_valid(outer: Vec<Point2<T>>, holes: Vec<Vec<Point2<T>>>) -> Self {
        debug_assert!(ring_twice_area(&outer) > T::zero());
        Region { outer, holes }
    }

    pub fn outer(&self) -> &[Point2<T>] {
        &self.outer
    }

    pub fn holes(&self) -> &[Vec<Point2<T>>] {
        &self.holes
    }

    pub fn rings(&self) -> impl Iterator<Item = &[Point2<T>]> {
        std::iter::once(self.outer.as_slice()).chain(self.holes.iter().map(Vec::as_slice))
    }

    /// Every boundary edge, outer ring first.
    pub fn edges(&self) -> impl Iterator<Item = (&Point2<T>, &Point2<T>)> {
        self.rings().flat_map(ring_edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.rings().map(<[_]>::len).sum()
    }

    /// Twice the enclosed area (outer minus holes); always positive.
    pub fn twice_area(&self) -> T {
        self.rings()
            .map(ring_twice_area)
            .fold(T::zero(), |acc, a| acc + a)
    }

    pub fn is_convex(&self) -> bool {
        self.holes.is_empty() && ring_is_convex(&self.outer)
    }

    /// Lower-left and upper-right corners of the bounding box.
    pub fn bbox(&self) -> (Point2<T>, Point2<T>) {
        let xs = self.outer.iter().map(|p| &p.x);
        let ys = self.outer.iter().map(|p| &p.y);
        let (xlo, xhi) = (xs.clone().min().unwrap(), xs.max().unwrap());
        let (ylo, yhi) = (ys.clone().min().unwrap(), ys.max().unwrap());
        (
            Point2::new(xlo.clone(), ylo.clone()),
            Point2::new(xhi.clone(), yhi.clone()),
        )
    }

    pub fn locate(&self, p: &Point2<T>) -> Location {
        match ring_locate(&self.outer, p) {
            Location::Interior => {}
            other => return other,
        }
        for hole in &self.holes {
            match ring_locate(hole, p) {
                Location::Outside => {}
                Location::Boundary => return Location::Boundary,
                Location::Interior => return Location::Outside,
            }
        }
        Location::Interior
    }

    fn check_holes(&self) -> Result<(), Error> {
        for (i, hole) in self.holes.iter().enumerate() {
            let inside = hole
                .iter()
                .all(|p| ring_locate(&self.outer, p) == Location::Interior);
            let clear = ring_edges(hole).all(|(a, b)| {
                ring_edges(&self.outer)
                    .all(|(c, d)| classify_segments(a, b, c, d) == SegmentRelation::Disjoint)
            });
            if !inside || !clear {
                return Err(Error::InvalidInput(format!(
                    "hole {i} is not strictly inside the outer ring"
                )));
            }
            for other in &self.holes[i + 1..] {
                let touching = ring_edges(hole).any(|(a, b)| {
                    ring_edges(other)
                        .any(|(c, d)| classify_segments(a, b, c, d) != SegmentRelation::Disjoint)
                });
                let nested = ring_locate(other, &hole[0]) != Location::Outside
                    || ring_locate(hole, &other[0]) != Location::Outside;
                if touching || nested {
                    return Err(Error::InvalidInput("holes must be pairwise disjoint".into()));
                }
            }
        }
        Ok(())
    }
}

impl<T: ExactField> Region<T> {
    /// Whether the closed segment `ab` lies in the closed region. Contact
    /// with the boundary, including running along it, is allowed.
    pub fn contains_segment(&self, a: &Point2<T>, b: &Point2<T>) -> bool {
        if self.is_convex() {
            return self.locate(a) != Location::Outside && self.locate(b) != Location::Outside;
        }
        let mut breaks = vec![a.clone(), b.clone()];
        for (c, d) in self.edges() {
            breaks.extend(segment_contacts(a, b, c, d));
        }
        breaks.sort();
        breaks.dedup();
        if breaks.iter().any(|p| self.locate(p) == Location::Outside) {
            return false;
        }
        breaks
            .windows(2)
            .all(|w| self.locate(&w[0].midpoint(&w[1])) != Location::Outside)
    }

    /// Splits the region into triangles (counter-clockwise) whose signed
    /// areas add up to the region's area; hole triangles come out clockwise
    /// so they subtract.
    pub fn signed_triangles(&self) -> Vec<[Point2<T>; 3]> {
        let mut out = triangulate_ring(&self.outer);
        for hole in &self.holes {
            out.extend(
                triangulate_ring(hole)
                    .into_iter()
                    .map(|[a, b, c]| [a, c, b]),
            );
        }
        out
    }
}

pub fn ring_edges<T>(ring: &[Point2<T>]) -> impl Iterator<Item = (&Point2<T>, &Point2<T>)> {
    let n = ring.len();
    (0..n).map(move |i| (&ring[i], &ring[(i + 1) % n]))
}

pub fn ring_twice_area<T: Scalar>(ring: &[Point2<T>]) -> T {
    let origin = &ring[0];
    (1..ring.len().saturating_sub(1))
        .map(|i| cross(origin, &ring[i], &ring[i + 1]))
        .fold(T::zero(), |acc, a| acc + a)
}

pub fn ring_is_convex<T: Scalar>(ring: &[Point2<T>]) -> bool {
    let n = ring.len();
    let turn = Sign::of(&ring_twice_area(ring));
    (0..n).all(|i| orient(&ring[i], &ring[(i + 1) % n], &ring[(i + 2) % n]) != turn.flip())
}

pub fn ring_locate<T: Scalar>(ring: &[Point2<T>], p: &Point2<T>) -> Location {
    let mut winding = 0i64;
    for (a, b) in ring_edges(ring) {
        if on_segment(p, a, b) {
            return Location::Boundary;
        }
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) == Sign::Positive {
                winding += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) == Sign::Negative {
            winding -= 1;
        }
    }
    if winding != 0 {
        Location::Interior
    } else {
        Location::Outside
    }
}

/// Whether the ring is a simple polygon with non-zero area.
pub fn ring_is_simple<T: Scalar>(ring: &[Point2<T>]) -> bool {
    let n = ring.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            if ring[i] == ring[j] {
                return false;
            }
        }
    }
    for i in 0..n {
        let (a, b) = (&ring[i], &ring[(i + 1) % n]);
        for j in i + 1..n {
            let (c, d) = (&ring[j], &ring[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let rel = classify_segments(a, b, c, d);
            let ok = if adjacent {
                rel == SegmentRelation::ShareEndpointOnly
            } else {
                rel == SegmentRelation::Disjoint
            };
            if !ok {
                return false;
            }
        }
    }
    !ring_twice_area(ring).is_zero()
}

fn oriented<T: Scalar>(mut ring: Vec<Point2<T>>, want: Sign) -> Result<Vec<Point2<T>>, Error> {
    if !ring_is_simple(&ring) {
        return Err(Error::InvalidInput(
            "polygon ring is not simple or has zero area".into(),
        ));
    }
    if Sign::of(&ring_twice_area(&ring)) != want {
        ring.reverse();
    }
    Ok(ring)
}

/// Ear-clipping triangulation of a simple ring; triangles come out
/// counter-clockwise regardless of the ring's orientation.
pub fn triangulate_ring<T: Scalar>(ring: &[Point2<T>]) -> Vec<[Point2<T>; 3]> {
    let mut poly: Vec<Point2<T>> = ring.to_vec();
    if Sign::of(&ring_twice_area(&poly)) == Sign::Negative {
        poly.reverse();
    }
    drop_straight_vertices(&mut poly);
    let mut out = Vec::with_capacity(poly.len().saturating_sub(2));
    while poly.len() > 3 {
        let n = poly.len();
        let ear = (0..n).find(|&i| {
            let (a, b, c) = (&poly[(i + n - 1) % n], &poly[i], &poly[(i + 1) % n]);
            orient(a, b, c) == Sign::Positive
                && poly.iter().enumerate().all(|(j, p)| {
                    j == i
                        || j == (i + n - 1) % n
                        || j == (i + 1) % n
                        || orient(a, b, p) == Sign::Negative
                        || orient(b, c, p) == Sign::Negative
                        || orient(c, a, p) == Sign::Negative
                })
        });
        let Some(i) = ear else {
            // Only reachable for non-simple input.
            break;
        };
        let n = poly.len();
        out.push([
            poly[(i + n - 1) % n].clone(),
            poly[i].clone(),
            poly[(i + 1) % n].clone(),
        ]);
        poly.remove(i);
        drop_straight_vertices(&mut poly);
    }
    if poly.len() == 3 {
        out.push([poly[0].clone(), poly[1].clone(), poly[2].clone()]);
    }
    out
}

fn drop_straight_vertices<T: Scalar>(poly: &mut Vec<Point2<T>>) {
    let mut changed = true;
    while changed && poly.len() > 3 {
        changed = false;
        let n = poly.len();
        for i in 0..n {
            if orient(&poly[(i + n - 1) % n], &poly[i], &poly[(i + 1) % n]) == Sign::Zero {
                poly.remove(i);
                changed = true;
                break;
            }
        }
    }
}
