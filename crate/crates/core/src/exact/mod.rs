//! Exact triangulation counting: flip-graph traversal, an independent
//! brute-force oracle, and counts of maximal triangulations inside a cell.

mod cell;
mod edgeset;
mod oracle;
mod space;

use std::collections::HashSet;

use num_bigint::BigUint;
use rayon::prelude::*;

pub use cell::{count_maximal_in_cell, is_maximal_in_cell, maximal_fragment, PartialTriangulation};
pub(crate) use cell::count_maximal_among;
pub use edgeset::EdgeSet;
pub use oracle::{brute_force_oracle, ORACLE_MAX_POINTS};
pub use space::{FlipSpace, SeedOrder};

use crate::geom::{point_in_triangle, Location, Point2, Scalar};
use crate::{Error, Result};

/// An exact, non-negative count.
pub type BigCount = BigUint;

pub const DEFAULT_MAX_TRIANGULATIONS: usize = 10_000_000;

#[derive(Clone, Debug)]
pub struct ExactConfig {
    /// Largest number of distinct triangulations a traversal may visit.
    pub max_triangulations: usize,
    pub seed: SeedOrder,
}

impl Default for ExactConfig {
    fn default() -> Self {
        Self {
            max_triangulations: DEFAULT_MAX_TRIANGULATIONS,
            seed: SeedOrder::Lexicographic,
        }
    }
}

/// A full triangulation as sorted index pairs `(i, j)`, `i < j`, into the
/// input point slice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    pub edges: Vec<(usize, usize)>,
}

impl Triangulation {
    /// Bounded faces as index triples `i < j < k`, in lexicographic order.
    pub fn faces<T: Scalar>(&self, points: &[Point2<T>]) -> Vec<[usize; 3]> {
        let n = points.len();
        let mut adj = vec![vec![false; n]; n];
        for &(i, j) in &self.edges {
            adj[i][j] = true;
            adj[j][i] = true;
        }
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !adj[i][j] {
                    continue;
                }
                for k in j + 1..n {
                    if !(adj[i][k] && adj[j][k]) {
                        continue;
                    }
                    let t = (&points[i], &points[j], &points[k]);
                    let empty = (0..n).filter(|&m| m != i && m != j && m != k).all(|m| {
                        matches!(point_in_triangle(&points[m], t), Ok(Location::Outside))
                    });
                    if empty {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }
}

pub fn initial_triangulation<T: Scalar>(points: &[Point2<T>]) -> Result<Triangulation> {
    let space = FlipSpace::new(points)?;
    Ok(Triangulation {
        edges: space.to_pairs(&space.seed(SeedOrder::Lexicographic)),
    })
}

/// Triangulations reachable from `t` by a single flip.
pub fn flips<T: Scalar>(points: &[Point2<T>], t: &Triangulation) -> Result<Vec<Triangulation>> {
    let space = FlipSpace::new(points)?;
    let set = space
        .from_pairs(&t.edges)
        .filter(|s| space.is_triangulation(s))
        .ok_or_else(|| Error::InvalidInput("not a triangulation of the given points".into()))?;
    let mut out: Vec<Triangulation> = space
        .neighbors(&set)
        .iter()
        .map(|s| Triangulation {
            edges: space.to_pairs(s),
        })
        .collect();
    out.sort();
    Ok(out)
}

impl<T: Scalar> FlipSpace<T> {
    /// Breadth-first traversal of the flip graph from `seed`, calling
    /// `visit` once per triangulation in a deterministic order. Frontier
    /// expansion runs on the current rayon pool.
    pub fn traverse(
        &self,
        seed: EdgeSet,
        max_triangulations: usize,
        mut visit: impl FnMut(&EdgeSet),
    ) -> Result<usize> {
        let mut seen: HashSet<EdgeSet> = HashSet::new();
        let over = || Error::CapacityExceeded {
            what: "triangulations visited",
            limit: max_triangulations,
        };
        if max_triangulations == 0 {
            return Err(over());
        }
        visit(&seed);
        seen.insert(seed.clone());
        let mut frontier = vec![seed];
        while !frontier.is_empty() {
            let expanded: Vec<Vec<EdgeSet>> =
                frontier.par_iter().map(|s| self.neighbors(s)).collect();
            let mut next = Vec::new();
            for s in expanded.into_iter().flatten() {
                if seen.contains(&s) {
                    continue;
                }
                if seen.len() >= max_triangulations {
                    return Err(over());
                }
                visit(&s);
                seen.insert(s.clone());
                next.push(s);
            }
            frontier = next;
        }
        Ok(seen.len())
    }
}

pub fn for_each_triangulation<T: Scalar>(
    points: &[Point2<T>],
    cfg: &ExactConfig,
    mut visit: impl FnMut(&Triangulation),
) -> Result<usize> {
    let space = FlipSpace::new(points)?;
    let seed = space.seed(cfg.seed);
    space.traverse(seed, cfg.max_triangulations, |s| {
        visit(&Triangulation {
            edges: space.to_pairs(s),
        })
    })
}

pub fn enumerate_triangulations<T: Scalar>(
    points: &[Point2<T>],
    cfg: &ExactConfig,
) -> Result<Vec<Triangulation>> {
    let mut out = Vec::new();
    for_each_triangulation(points, cfg, |t| out.push(t.clone()))?;
    Ok(out)
}

pub fn count_triangulations<T: Scalar>(points: &[Point2<T>], cfg: &ExactConfig) -> Result<BigCount> {
    crate::empty::validate_points(points)?;
    let space = FlipSpace::new(points)?;
    let n = space.traverse(space.seed(cfg.seed), cfg.max_triangulations, |_| {})?;
    Ok(BigCount::from(n))
}

/// The `m`-th Catalan number via `C_{m+1} = sum C_i C_{m-i}`.
pub fn catalan(m: usize) -> BigCount {
    let mut c: Vec<BigCount> = vec![BigCount::from(1u32)];
    for k in 1..=m {
        let next = (0..k).map(|i| &c[i] * &c[k - 1 - i]).sum();
        c.push(next);
    }
    c.swap_remove(m)
}
