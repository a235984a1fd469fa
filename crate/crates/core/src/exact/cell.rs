use std::collections::HashSet;

use super::space::FlipSpace;
use super::{BigCount, EdgeSet, ExactConfig, Triangulation};
use crate::geom::{all_collinear, classify_segments, in_segment_interior, Location, Point2, Region, Scalar};
use crate::{Error, Rational, Result};

/// A set of pairwise compatible edges, as index pairs into the input.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialTriangulation {
    pub edges: Vec<(usize, usize)>,
}

fn in_region<T: Scalar>(cell: &Region<Rational>, a: &Point2<T>, b: &Point2<T>) -> bool {
    cell.contains_segment(&a.to_rational(), &b.to_rational())
}

/// The edges of `t` contained in the closed cell.
pub fn maximal_fragment<T: Scalar>(
    t: &Triangulation,
    cell: &Region<Rational>,
    points: &[Point2<T>],
) -> PartialTriangulation {
    PartialTriangulation {
        edges: t
            .edges
            .iter()
            .copied()
            .filter(|&(i, j)| in_region(cell, &points[i], &points[j]))
            .collect(),
    }
}

/// Whether no segment between input points in the closed cell can be added
/// to `pt` while staying inside the cell.
pub fn is_maximal_in_cell<T: Scalar>(
    pt: &PartialTriangulation,
    cell: &Region<Rational>,
    points: &[Point2<T>],
) -> Result<bool> {
    let inside: Vec<usize> = (0..points.len())
        .filter(|&i| cell.locate(&points[i].to_rational()) != Location::Outside)
        .collect();
    let seg = |&(i, j): &(usize, usize)| (&points[i], &points[j]);
    for e @ &(i, j) in &pt.edges {
        if i >= points.len() || j >= points.len() || i == j {
            return Err(Error::InvalidInput(format!("edge ({i}, {j}) out of range")));
        }
        let (a, b) = seg(e);
        if !in_region(cell, a, b) {
            return Err(Error::InvalidInput(format!("edge ({i}, {j}) leaves the cell")));
        }
        if points.iter().any(|p| in_segment_interior(p, a, b)) {
            return Err(Error::InvalidInput(format!("edge ({i}, {j}) passes through a point")));
        }
    }
    let pairwise = pt.edges.iter().enumerate().all(|(x, e)| {
        let (a, b) = seg(e);
        pt.edges[x + 1..].iter().all(|f| {
            let (c, d) = seg(f);
            classify_segments(a, b, c, d).is_compatible()
        })
    });
    if !pairwise {
        return Err(Error::InvalidInput("edges of the partial triangulation cross".into()));
    }
    let compatible = |a: &Point2<T>, b: &Point2<T>| {
        pt.edges.iter().all(|e| {
            let (c, d) = seg(e);
            classify_segments(a, b, c, d).is_compatible()
        })
    };
    for (x, &i) in inside.iter().enumerate() {
        for &j in &inside[x + 1..] {
            let (a, b) = (&points[i], &points[j]);
            if pt.edges.contains(&(i, j)) || pt.edges.contains(&(j, i)) {
                continue;
            }
            let clean = !points.iter().any(|p| in_segment_interior(p, a, b));
            if clean && in_region(cell, a, b) && compatible(a, b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Number of distinct maximal triangulations of the input points in the
/// closed cell, within the cell.
pub fn count_maximal_in_cell<T: Scalar>(
    cell: &Region<Rational>,
    points: &[Point2<T>],
    cfg: &ExactConfig,
) -> Result<BigCount> {
    let inside: Vec<Point2<T>> = points
        .iter()
        .filter(|p| cell.locate(&p.to_rational()) != Location::Outside)
        .cloned()
        .collect();
    count_maximal_among(cell, &inside, cfg)
}

/// [`count_maximal_in_cell`] for a caller that already knows the points in
/// the closed cell.
pub(crate) fn count_maximal_among<T: Scalar>(
    cell: &Region<Rational>,
    inside: &[Point2<T>],
    cfg: &ExactConfig,
) -> Result<BigCount> {
    // Only one maximal set exists on a line (or below three points).
    if inside.len() < 3 || all_collinear(inside) {
        return Ok(BigCount::from(1u32));
    }
    let space = FlipSpace::new(inside)?;
    let mut within = space.empty_set();
    for (id, &(i, j)) in space.edges().iter().enumerate() {
        if in_region(cell, &inside[i], &inside[j]) {
            within.insert(id);
        }
    }
    let seed = space.seed(cfg.seed);
    if within.len() == space.edges().len() {
        let n = space.traverse(seed, cfg.max_triangulations, |_| {})?;
        return Ok(BigCount::from(n));
    }
    let mut fragments: HashSet<EdgeSet> = HashSet::new();
    space.traverse(seed, cfg.max_triangulations, |t| {
        let fragment = t.intersection(&within);
        let maximal = within
            .difference(&fragment)
            .iter()
            .all(|id| space.conflicts(id).intersects(&fragment));
        if maximal {
            fragments.insert(fragment);
        }
    })?;
    Ok(BigCount::from(fragments.len()))
}
