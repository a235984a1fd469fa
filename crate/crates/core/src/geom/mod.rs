//! Exact planar predicates over any [`Scalar`].

mod clip;
mod point;
mod predicates;
mod region;
mod scalar;

pub use clip::{clip_convex, interiors_disjoint, overlap_twice_area, triangle_overlap_twice_area};
pub use point::{format_rational, parse_rational, Point2, Segment2};
pub use predicates::{
    classify_segments, cross, in_segment_interior, line_intersection, on_segment, orient,
    point_in_triangle, segment_contacts, segments_cross, Location, SegmentRelation, Sign,
};
pub use region::{
    ring_edges, ring_is_convex, ring_is_simple, ring_locate, ring_twice_area, triangulate_ring,
    Region,
};
pub use scalar::{ExactField, Scalar};

/// Whether every point lies on one line (vacuously true below three points).
pub fn all_collinear<T: Scalar>(points: &[Point2<T>]) -> bool {
    let Some(a) = points.first() else {
        return true;
    };
    let Some(b) = points.iter().find(|p| *p != a) else {
        return true;
    };
    points.iter().all(|p| orient(a, b, p) == Sign::Zero)
}

/// Number of points on the boundary of the convex hull, counting points in
/// the relative interior of hull edges.
pub fn hull_boundary_count<T: Scalar>(points: &[Point2<T>]) -> usize {
    (0..points.len())
        .filter(|&i| on_hull_boundary(points, i))
        .count()
}

fn on_hull_boundary<T: Scalar>(points: &[Point2<T>], i: usize) -> bool {
    let p = &points[i];
    points.iter().enumerate().any(|(j, q)| {
        if j == i {
            return false;
        }
        let mut side = Sign::Zero;
        for r in points {
            match orient(p, q, r) {
                Sign::Zero => {}
                s if side == Sign::Zero => side = s,
                s if s != side => return false,
                _ => {}
            }
        }
        true
    })
}

/// Convex hull vertices in counter-clockwise order (collinear boundary
/// points dropped), by monotone chain.
pub fn convex_hull<T: Scalar>(points: &[Point2<T>]) -> Vec<Point2<T>> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point2<T>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) != Sign::Positive
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point2<T>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) != Sign::Positive
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<Point2<i64>> {
        v.iter().map(|&(x, y)| Point2::new(x, y)).collect()
    }

    #[test]
    fn hull_counts() {
        let grid: Vec<_> = (0..3)
            .flat_map(|x| (0..3).map(move |y| Point2::new(x, y)))
            .collect();
        assert_eq!(hull_boundary_count(&grid), 8);
        assert_eq!(convex_hull(&grid).len(), 4);
        let tri = pts(&[(0, 0), (4, 0), (0, 4), (1, 1)]);
        assert_eq!(hull_boundary_count(&tri), 3);
    }

    #[test]
    fn collinearity() {
        assert!(all_collinear(&pts(&[(0, 0), (1, 1), (3, 3)])));
        assert!(!all_collinear(&pts(&[(0, 0), (1, 1), (3, 2)])));
    }
}
