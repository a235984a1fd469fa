use std::cmp::Ordering;

use super::point::{Point2, Segment2};
use super::scalar::{ExactField, Scalar};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Scalar>(v: &T) -> Sign {
        match v.cmp(&T::zero()) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// Where a point lies relative to a closed region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SegmentRelation {
    Disjoint,
    ShareEndpointOnly,
    /// The relative interiors meet in exactly one point.
    ProperCross,
    /// Collinear overlap, or an endpoint of one segment in the relative
    /// interior of the other.
    OverlapOrTouchInterior,
}

impl SegmentRelation {
    /// Whether two edges with this relation can coexist in a triangulation.
    pub fn is_compatible(self) -> bool {
        matches!(self, SegmentRelation::Disjoint | SegmentRelation::ShareEndpointOnly)
    }
}

/// Twice the signed area of `pqr`.
pub fn cross<T: Scalar>(p: &Point2<T>, q: &Point2<T>, r: &Point2<T>) -> T {
    let (ux, uy) = q.sub(p);
    let (vx, vy) = r.sub(p);
    ux * vy - uy * vx
}

/// Sign of `(q - p) x (r - p)`: positive for a counter-clockwise turn.
///
/// A floating-point evaluation settles the sign when it clears a forward
/// error bound; the exact computation runs otherwise.
pub fn orient<T: Scalar>(p: &Point2<T>, q: &Point2<T>, r: &Point2<T>) -> Sign {
    match orient_filter(p, q, r) {
        Some(s) => s,
        None => Sign::of(&cross(p, q, r)),
    }
}

/// Relative input error of [`Scalar::approx_f64`] (`2^-52`) propagated
/// through the determinant, with a wide safety margin.
const ORIENT_BOUND: f64 = 1e-14;

fn orient_filter<T: Scalar>(p: &Point2<T>, q: &Point2<T>, r: &Point2<T>) -> Option<Sign> {
    let [px, py, qx, qy, rx, ry] = [&p.x, &p.y, &q.x, &q.y, &r.x, &r.y].map(|v| v.approx_f64());
    let (px, py, qx, qy, rx, ry) = (px?, py?, qx?, qy?, rx?, ry?);
    let det = (qx - px) * (ry - py) - (qy - py) * (rx - px);
    let scale = (qx.abs() + px.abs()) * (ry.abs() + py.abs()) + (qy.abs() + py.abs()) * (rx.abs() + px.abs());
    if !scale.is_finite() || scale < 1e-250 {
        return None;
    }
    let bound = ORIENT_BOUND * scale;
    if det > bound {
        Some(Sign::Positive)
    } else if det < -bound {
        Some(Sign::Negative)
    } else {
        None
    }
}

/// `p` lies on the closed segment `ab`.
pub fn on_segment<T: Scalar>(p: &Point2<T>, a: &Point2<T>, b: &Point2<T>) -> bool {
    orient(a, b, p) == Sign::Zero && in_box(p, a, b)
}

/// `p` lies on the open segment `ab`.
pub fn in_segment_interior<T: Scalar>(p: &Point2<T>, a: &Point2<T>, b: &Point2<T>) -> bool {
    p != a && p != b && on_segment(p, a, b)
}

fn in_box<T: Scalar>(p: &Point2<T>, a: &Point2<T>, b: &Point2<T>) -> bool {
    let (xlo, xhi) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ylo, yhi) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    *xlo <= p.x && p.x <= *xhi && *ylo <= p.y && p.y <= *yhi
}

pub fn segments_cross<T: Scalar>(s1: &Segment2<T>, s2: &Segment2<T>) -> SegmentRelation {
    classify_segments(s1.a(), s1.b(), s2.a(), s2.b())
}

/// [`segments_cross`] on raw endpoints; `a != b` and `c != d` are assumed.
pub fn classify_segments<T: Scalar>(
    a: &Point2<T>,
    b: &Point2<T>,
    c: &Point2<T>,
    d: &Point2<T>,
) -> SegmentRelation {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    if o1 == Sign::Zero && o2 == Sign::Zero {
        // Collinear: intersect the two intervals in lexicographic order.
        let (lo1, hi1) = if a < b { (a, b) } else { (b, a) };
        let (lo2, hi2) = if c < d { (c, d) } else { (d, c) };
        let lo = lo1.max(lo2);
        let hi = hi1.min(hi2);
        return match lo.cmp(hi) {
            Ordering::Greater => SegmentRelation::Disjoint,
            Ordering::Equal => SegmentRelation::ShareEndpointOnly,
            Ordering::Less => SegmentRelation::OverlapOrTouchInterior,
        };
    }
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    let all_nonzero = [o1, o2, o3, o4].iter().all(|&o| o != Sign::Zero);
    if all_nonzero && o1 != o2 && o3 != o4 {
        return SegmentRelation::ProperCross;
    }
    if in_segment_interior(c, a, b)
        || in_segment_interior(d, a, b)
        || in_segment_interior(a, c, d)
        || in_segment_interior(b, c, d)
    {
        return SegmentRelation::OverlapOrTouchInterior;
    }
    if a == c || a == d || b == c || b == d {
        SegmentRelation::ShareEndpointOnly
    } else {
        SegmentRelation::Disjoint
    }
}

pub fn point_in_triangle<T: Scalar>(
    p: &Point2<T>,
    t: (&Point2<T>, &Point2<T>, &Point2<T>),
) -> Result<Location, Error> {
    let (a, b, c) = t;
    let turn = orient(a, b, c);
    if turn == Sign::Zero {
        return Err(Error::DegenerateTriangle);
    }
    let signs = [orient(a, b, p), orient(b, c, p), orient(c, a, p)];
    if signs.iter().any(|&s| s == turn.flip()) {
        Ok(Location::Outside)
    } else if signs.iter().all(|&s| s == turn) {
        Ok(Location::Interior)
    } else {
        Ok(Location::Boundary)
    }
}

/// Intersection point of the supporting lines of `ab` and `cd`, if they are
/// not parallel.
pub fn line_intersection<T: ExactField>(
    a: &Point2<T>,
    b: &Point2<T>,
    c: &Point2<T>,
    d: &Point2<T>,
) -> Option<Point2<T>> {
    let (ux, uy) = b.sub(a);
    let (vx, vy) = d.sub(c);
    let denom = ux.clone() * vy.clone() - uy.clone() * vx.clone();
    if denom.is_zero() {
        return None;
    }
    let (wx, wy) = c.sub(a);
    let t = (wx * vy - wy * vx) / denom;
    Some(a.lerp(b, &t))
}

/// All points where the closed segments `ab` and `cd` meet, reduced to at
/// most two (the ends of a collinear overlap).
pub fn segment_contacts<T: ExactField>(
    a: &Point2<T>,
    b: &Point2<T>,
    c: &Point2<T>,
    d: &Point2<T>,
) -> Vec<Point2<T>> {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    if o1 == Sign::Zero && o2 == Sign::Zero {
        let (lo1, hi1) = if a < b { (a, b) } else { (b, a) };
        let (lo2, hi2) = if c < d { (c, d) } else { (d, c) };
        let lo = lo1.max(lo2);
        let hi = hi1.min(hi2);
        return match lo.cmp(hi) {
            Ordering::Greater => vec![],
            Ordering::Equal => vec![lo.clone()],
            Ordering::Less => vec![lo.clone(), hi.clone()],
        };
    }
    match classify_segments(a, b, c, d) {
        SegmentRelation::Disjoint => vec![],
        SegmentRelation::ProperCross => line_intersection(a, b, c, d).into_iter().collect(),
        _ => {
            // Non-collinear contact happens at an endpoint of one of them.
            for (p, s, e) in [(c, a, b), (d, a, b), (a, c, d), (b, c, d)] {
                if on_segment(p, s, e) {
                    return vec![p.clone()];
                }
            }
            unreachable!("contact without a touching endpoint")
        }
    }
}
