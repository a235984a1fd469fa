//! The universe of empty triangles: triangles on three input points with no
//! other input point inside them or on their boundary.

use rayon::prelude::*;

use crate::geom::{orient, point_in_triangle, Location, Point2, Scalar, Sign};
use crate::{Error, Result};

/// Indices `i < j < k` into [`TriangleUniverse::points`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EmptyTriangle {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl EmptyTriangle {
    pub fn corners(&self) -> [usize; 3] {
        [self.i, self.j, self.k]
    }
}

#[derive(Clone, Debug)]
pub struct TriangleUniverse<T> {
    /// The input points in lexicographic order.
    pub points: Vec<Point2<T>>,
    /// Lexicographically sorted triangles.
    pub triangles: Vec<EmptyTriangle>,
}

impl<T: Scalar> TriangleUniverse<T> {
    pub fn corners(&self, t: &EmptyTriangle) -> [&Point2<T>; 3] {
        [&self.points[t.i], &self.points[t.j], &self.points[t.k]]
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }
}

/// Checks the common preconditions on an input point set: at least three
/// points, pairwise distinct.
pub fn validate_points<T: Scalar>(points: &[Point2<T>]) -> Result<()> {
    if points.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    let mut sorted: Vec<&Point2<T>> = points.iter().collect();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::InvalidInput(format!("duplicate point {:?}", w[0])));
    }
    Ok(())
}

/// Enumerates every empty triangle of `points`. Brute force over all
/// triples, each checked against every other point.
pub fn enumerate_empty<T: Scalar>(points: &[Point2<T>]) -> Result<TriangleUniverse<T>> {
    validate_points(points)?;
    let mut pts = points.to_vec();
    pts.sort();
    let triangles = empty_triangles_in_order(&pts)
        .into_iter()
        .map(|[i, j, k]| EmptyTriangle { i, j, k })
        .collect();
    Ok(TriangleUniverse {
        points: pts,
        triangles,
    })
}

/// Empty triangles as sorted index triples into `points`, in lexicographic
/// order, without reordering the points.
pub fn empty_triangles_in_order<T: Scalar>(points: &[Point2<T>]) -> Vec<[usize; 3]> {
    let n = points.len();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            (i + 1..n).flat_map(move |j| {
                (j + 1..n).filter_map(move |k| {
                    let (a, b, c) = (&points[i], &points[j], &points[k]);
                    if orient(a, b, c) == Sign::Zero {
                        return None;
                    }
                    let empty = points.iter().enumerate().all(|(m, p)| {
                        m == i
                            || m == j
                            || m == k
                            || point_in_triangle(p, (a, b, c)) == Ok(Location::Outside)
                    });
                    empty.then_some([i, j, k])
                })
            })
        })
        .collect()
}
