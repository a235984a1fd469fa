use std::collections::BTreeSet;

use num_traits::Zero;

use super::catalog::{Catalog, CellFamily};
use super::cell::cell_contains;
use crate::geom::{interiors_disjoint, Location};
use crate::{Error, RatPoint, Rational, Result};

/// A partition of a cell into catalog cells, as sorted catalog indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    pub parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable();
        Partition { parts }
    }
}

/// Two-thirds balance: a part of a cell with `parent` input points may hold
/// at most `floor(2 * parent / 3)` of them. Waived below three points.
pub fn admissible(parent: usize, part: usize) -> bool {
    parent < 3 || part <= 2 * parent / 3
}

/// Every admissible partition of cell `q` into at most `k` other catalog
/// cells, in canonical order. The identity partition is never produced.
pub fn enumerate_partitions(catalog: &Catalog, q: usize, max_partitions: usize) -> Result<Vec<Partition>> {
    let out = match catalog.recorded_splits(q) {
        Some(splits) => splits.to_vec(),
        None => tile(catalog, q, max_partitions)?,
    };
    if out.len() > max_partitions {
        return Err(Error::CapacityExceeded {
            what: "partitions of one cell",
            limit: max_partitions,
        });
    }
    Ok(out)
}

/// Checks every partition invariant exactly; returns a description of the
/// first violation.
pub fn verify_partition(catalog: &Catalog, q: usize, p: &Partition) -> std::result::Result<(), String> {
    let parent = catalog.get(q);
    if p.parts.len() < 2 || p.parts.len() > catalog.k() {
        return Err(format!("{} parts, expected 2..={}", p.parts.len(), catalog.k()));
    }
    let mut area = Rational::from_integer(0.into());
    for &i in &p.parts {
        let part = catalog.get(i);
        if i == q || !cell_contains(parent, part) {
            return Err(format!("part {i} is not a proper sub-cell of {q}"));
        }
        if !admissible(parent.point_count(), part.point_count()) {
            return Err(format!("part {i} holds more than two thirds of the points"));
        }
        area += part.twice_area();
    }
    if &area != parent.twice_area() {
        return Err("part areas do not add up to the cell area".into());
    }
    for (x, &i) in p.parts.iter().enumerate() {
        for &j in &p.parts[x + 1..] {
            if !interiors_disjoint(catalog.get(i).region(), catalog.get(j).region()) {
                return Err(format!("parts {i} and {j} overlap"));
            }
        }
    }
    for &pt in parent.contained_points() {
        if !p.parts.iter().any(|&i| catalog.get(i).contained_points().contains(&pt)) {
            return Err(format!("input point {pt} is in no part"));
        }
    }
    Ok(())
}

/// Exact tiling search. Every vertex of the cell or of a candidate part is
/// a point some part must contain, so the search always branches on the
/// first such point not yet inside a chosen part; only when all are covered
/// does it fall back to adding parts in increasing order.
fn tile(catalog: &Catalog, q: usize, max_partitions: usize) -> Result<Vec<Partition>> {
    debug_assert!(catalog.family() != CellFamily::BinaryCut);
    let parent = catalog.get(q);
    let m = parent.point_count();
    let candidates: Vec<usize> = (0..catalog.len())
        .filter(|&i| i != q)
        .filter(|&i| catalog.get(i).twice_area() < parent.twice_area())
        .filter(|&i| admissible(m, catalog.get(i).point_count()))
        .filter(|&i| cell_contains(parent, catalog.get(i)))
        .collect();
    let anchors: Vec<&RatPoint> = parent
        .region()
        .outer()
        .iter()
        .chain(candidates.iter().flat_map(|&c| catalog.get(c).region().outer()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let words = anchors.len().div_ceil(64);
    let masks: Vec<Vec<u64>> = candidates
        .iter()
        .map(|&c| {
            let region = catalog.get(c).region();
            let mut mask = vec![0u64; words];
            for (a, p) in anchors.iter().enumerate() {
                if region.locate(p) != Location::Outside {
                    mask[a / 64] |= 1 << (a % 64);
                }
            }
            mask
        })
        .collect();
    let covers: Vec<Vec<usize>> = (0..anchors.len())
        .map(|a| (0..candidates.len()).filter(|&c| masks[c][a / 64] >> (a % 64) & 1 == 1).collect())
        .collect();
    let mut search = Tiling {
        catalog,
        candidates: &candidates,
        masks: &masks,
        covers: &covers,
        anchors: anchors.len(),
        k: catalog.k(),
        disjoint: vec![0; candidates.len() * candidates.len()],
        found: BTreeSet::new(),
        max_partitions,
    };
    search.run(&mut Vec::new(), &vec![0u64; words], parent.twice_area().clone(), 0)?;
    Ok(search
        .found
        .into_iter()
        .map(|parts| Partition::new(parts.into_iter().map(|c| candidates[c]).collect()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect())
}

/// Search state; parts are positions in `candidates`.
struct Tiling<'a> {
    catalog: &'a Catalog,
    candidates: &'a [usize],
    masks: &'a [Vec<u64>],
    covers: &'a [Vec<usize>],
    anchors: usize,
    k: usize,
    /// Lazily filled pairwise matrix: 0 unknown, 1 disjoint, 2 overlapping.
    disjoint: Vec<u8>,
    found: BTreeSet<Vec<usize>>,
    max_partitions: usize,
}

impl Tiling<'_> {
    fn area(&self, c: usize) -> &Rational {
        self.catalog.get(self.candidates[c]).twice_area()
    }

    fn fits(&mut self, chosen: &[usize], c: usize, remaining: &Rational) -> bool {
        if chosen.contains(&c) || self.area(c) > remaining {
            return false;
        }
        let n = self.candidates.len();
        for &o in chosen {
            let slot = o.min(c) * n + o.max(c);
            if self.disjoint[slot] == 0 {
                let a = self.catalog.get(self.candidates[o]).region();
                let b = self.catalog.get(self.candidates[c]).region();
                self.disjoint[slot] = if interiors_disjoint(a, b) { 1 } else { 2 };
            }
            if self.disjoint[slot] == 2 {
                return false;
            }
        }
        true
    }

    /// `floor` is the smallest candidate position allowed once every anchor
    /// is covered, so free parts are chosen in increasing order.
    fn run(&mut self, chosen: &mut Vec<usize>, covered: &[u64], remaining: Rational, floor: usize) -> Result<()> {
        if remaining.is_zero() {
            if chosen.len() >= 2 {
                let mut parts = chosen.clone();
                parts.sort_unstable();
                self.found.insert(parts);
                if self.found.len() > self.max_partitions {
                    return Err(Error::CapacityExceeded {
                        what: "partitions of one cell",
                        limit: self.max_partitions,
                    });
                }
            }
            return Ok(());
        }
        if chosen.len() == self.k {
            return Ok(());
        }
        let uncovered = (0..self.anchors).find(|&a| covered[a / 64] >> (a % 64) & 1 == 0);
        let options: Vec<(usize, usize)> = match uncovered {
            Some(a) => self.covers[a].iter().map(|&c| (c, floor)).collect(),
            None => (floor..self.candidates.len()).map(|c| (c, c + 1)).collect(),
        };
        for (c, next_floor) in options {
            if !self.fits(chosen, c, &remaining) {
                continue;
            }
            let rest = &remaining - self.area(c);
            let next: Vec<u64> = covered.iter().zip(&self.masks[c]).map(|(x, y)| x | y).collect();
            chosen.push(c);
            self.run(chosen, &next, rest, next_floor)?;
            chosen.pop();
        }
        Ok(())
    }
}
