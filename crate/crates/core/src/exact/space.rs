use std::collections::HashMap;

use super::edgeset::EdgeSet;
use crate::empty::empty_triangles_in_order;
use crate::geom::{all_collinear, classify_segments, in_segment_interior, Point2, Scalar, SegmentRelation};
use crate::{Error, Result};

/// A face incident to a candidate edge: the apex and the ids of the two
/// other sides.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Face {
    pub apex: usize,
    pub sides: [usize; 2],
}

/// Precomputed edge geometry for one point set: which segments may appear
/// in a triangulation, which pairs of them conflict, and the empty
/// triangles on each edge.
#[derive(Clone, Debug)]
pub struct FlipSpace<T> {
    points: Vec<Point2<T>>,
    edges: Vec<(usize, usize)>,
    ids: HashMap<(usize, usize), usize>,
    conflicts: Vec<EdgeSet>,
    faces: Vec<Vec<Face>>,
}

/// Greedy insertion orders for seeding the traversal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SeedOrder {
    /// Candidate edges by index pair.
    #[default]
    Lexicographic,
    ReverseLexicographic,
}

impl<T: Scalar> FlipSpace<T> {
    pub fn new(points: &[Point2<T>]) -> Result<Self> {
        if points.len() < 3 || all_collinear(points) {
            return Err(Error::NoTriangulation);
        }
        let n = points.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let blocked = points
                    .iter()
                    .any(|p| in_segment_interior(p, &points[i], &points[j]));
                if !blocked {
                    edges.push((i, j));
                }
            }
        }
        let ids: HashMap<_, _> = edges.iter().enumerate().map(|(id, &e)| (e, id)).collect();
        let m = edges.len();
        let mut conflicts = vec![EdgeSet::new(m); m];
        for a in 0..m {
            for b in a + 1..m {
                let (i, j) = edges[a];
                let (k, l) = edges[b];
                let rel = classify_segments(&points[i], &points[j], &points[k], &points[l]);
                if !rel.is_compatible() {
                    conflicts[a].insert(b);
                    conflicts[b].insert(a);
                }
            }
        }
        let mut faces = vec![Vec::new(); m];
        for [i, j, k] in empty_triangles_in_order(points) {
            let (ij, jk, ik) = (ids[&(i, j)], ids[&(j, k)], ids[&(i, k)]);
            faces[ij].push(Face { apex: k, sides: [jk, ik] });
            faces[jk].push(Face { apex: i, sides: [ij, ik] });
            faces[ik].push(Face { apex: j, sides: [ij, jk] });
        }
        Ok(Self {
            points: points.to_vec(),
            edges,
            ids,
            conflicts,
            faces,
        })
    }

    pub fn points(&self) -> &[Point2<T>] {
        &self.points
    }

    /// Candidate edges: index pairs `i < j` whose segment contains no other
    /// point.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_id(&self, i: usize, j: usize) -> Option<usize> {
        let key = if i < j { (i, j) } else { (j, i) };
        self.ids.get(&key).copied()
    }

    pub fn conflicts(&self, id: usize) -> &EdgeSet {
        &self.conflicts[id]
    }

    pub fn empty_set(&self) -> EdgeSet {
        EdgeSet::new(self.edges.len())
    }

    /// Greedy maximal compatible edge set in the given order.
    pub fn seed(&self, order: SeedOrder) -> EdgeSet {
        let mut set = self.empty_set();
        let ids: Box<dyn Iterator<Item = usize>> = match order {
            SeedOrder::Lexicographic => Box::new(0..self.edges.len()),
            SeedOrder::ReverseLexicographic => Box::new((0..self.edges.len()).rev()),
        };
        for id in ids {
            if !self.conflicts[id].intersects(&set) {
                set.insert(id);
            }
        }
        set
    }

    /// The two faces on either side of `id` within `set`, if both exist.
    fn faces_on(&self, set: &EdgeSet, id: usize) -> Vec<usize> {
        self.faces[id]
            .iter()
            .filter(|f| set.contains(f.sides[0]) && set.contains(f.sides[1]))
            .map(|f| f.apex)
            .collect()
    }

    /// All triangulations one flip away from `set`.
    pub fn neighbors(&self, set: &EdgeSet) -> Vec<EdgeSet> {
        let mut out = Vec::new();
        for id in set.iter() {
            let apexes = self.faces_on(set, id);
            let [c, d] = apexes[..] else {
                continue;
            };
            let (a, b) = self.edges[id];
            let p = &self.points;
            if classify_segments(&p[c], &p[d], &p[a], &p[b]) != SegmentRelation::ProperCross {
                continue;
            }
            let Some(other) = self.edge_id(c, d) else {
                continue;
            };
            let mut next = set.clone();
            next.remove(id);
            next.insert(other);
            out.push(next);
        }
        out
    }

    pub fn to_pairs(&self, set: &EdgeSet) -> Vec<(usize, usize)> {
        set.iter().map(|id| self.edges[id]).collect()
    }

    /// Looks up every pair; `None` if some pair is not a candidate edge.
    pub fn from_pairs(&self, pairs: &[(usize, usize)]) -> Option<EdgeSet> {
        let mut set = self.empty_set();
        for &(i, j) in pairs {
            set.insert(self.edge_id(i, j)?);
        }
        Some(set)
    }

    /// Whether `set` is pairwise compatible and cannot be extended.
    pub fn is_triangulation(&self, set: &EdgeSet) -> bool {
        let compatible = set.iter().all(|id| !self.conflicts[id].intersects(set));
        let maximal = (0..self.edges.len())
            .all(|id| set.contains(id) || self.conflicts[id].intersects(set));
        compatible && maximal
    }
}
