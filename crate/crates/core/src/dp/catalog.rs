use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::cell::{Cell, CellJson, CellKey};
use super::partition::{admissible, Partition};
use super::points::DpPointSet;
use crate::geom::{on_segment, orient, ring_is_convex, ring_is_simple, Location, Point2, Region, Sign};
use crate::{Error, Polygon, RatPoint, Result};

/// Which polygons are allowed as DP cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellFamily {
    /// Triangles and convex quadrilaterals over a vertex pool.
    TriQuad,
    /// Convex cells grown from the bounding box by straight chords.
    BinaryCut,
    /// Every simple polygon with at most `k` vertices over a vertex pool.
    Exhaustive,
}

impl fmt::Display for CellFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellFamily::TriQuad => "tri-quad",
            CellFamily::BinaryCut => "binary-cut",
            CellFamily::Exhaustive => "exhaustive",
        })
    }
}

impl FromStr for CellFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tri-quad" | "triquad" => Ok(CellFamily::TriQuad),
            "binary-cut" | "binary" => Ok(CellFamily::BinaryCut),
            "exhaustive" => Ok(CellFamily::Exhaustive),
            other => Err(Error::InvalidInput(format!("unknown cell family {other:?}"))),
        }
    }
}

/// Candidate cell vertices for the pooled families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexPool {
    /// The input points and the four bounding box corners.
    #[default]
    InputAndCorners,
    /// Every basic DP point.
    Basic,
    /// Every DP point.
    All,
}

/// Largest input size the exhaustive family accepts.
pub const EXHAUSTIVE_MAX_POINTS: usize = 8;
pub const DEFAULT_MAX_CELLS: usize = 2_000_000;

#[derive(Clone, Debug)]
pub struct CatalogConfig {
    /// Maximum number of vertices of a cell.
    pub k: usize,
    pub family: CellFamily,
    pub pool: VertexPool,
    /// Binary-cut only splits cells holding more input points than this.
    pub split_above: usize,
    pub max_cells: usize,
}

impl Default for CatalogConfig {
    fn default() -> Self {
        Self {
            k: 4,
            family: CellFamily::TriQuad,
            pool: VertexPool::InputAndCorners,
            split_above: 3,
            max_cells: DEFAULT_MAX_CELLS,
        }
    }
}

/// DP cells sorted so that every cell precedes the cells containing it. The
/// bounding box is always last.
#[derive(Clone, Debug)]
pub struct Catalog {
    cells: Vec<Cell>,
    index: HashMap<CellKey, usize>,
    family: CellFamily,
    k: usize,
    splits: Option<Vec<Vec<Partition>>>,
}

impl Catalog {
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn find(&self, key: &CellKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn root(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn family(&self) -> CellFamily {
        self.family
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Chord splits recorded while growing a binary-cut catalog.
    pub(crate) fn recorded_splits(&self, q: usize) -> Option<&[Partition]> {
        self.splits.as_ref().map(|s| s[q].as_slice())
    }

    pub fn to_json(&self) -> Vec<CellJson> {
        self.cells.iter().enumerate().map(|(i, c)| c.to_json(i)).collect()
    }

    fn sorted(mut cells: Vec<Cell>, family: CellFamily, k: usize) -> (Self, Vec<usize>) {
        let mut order: Vec<usize> = (0..cells.len()).collect();
        order.sort_by(|&a, &b| {
            cells[a]
                .twice_area()
                .cmp(cells[b].twice_area())
                .then_with(|| cells[a].key().cmp(cells[b].key()))
        });
        let mut new_index = vec![0; cells.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let mut slots: Vec<Option<Cell>> = cells.drain(..).map(Some).collect();
        let cells: Vec<Cell> = order.iter().map(|&i| slots[i].take().unwrap()).collect();
        let index = cells.iter().enumerate().map(|(i, c)| (c.key().clone(), i)).collect();
        (
            Catalog {
                cells,
                index,
                family,
                k,
                splits: None,
            },
            new_index,
        )
    }
}

pub fn build_cell_catalog(dps: &DpPointSet, points: &[RatPoint], cfg: &CatalogConfig) -> Result<Catalog> {
    if cfg.k < 3 {
        return Err(Error::InvalidInput(format!("k must be at least 3, got {}", cfg.k)));
    }
    let ring = dps
        .bbox_ring()
        .ok_or_else(|| Error::InvalidInput("empty DP point set".into()))?;
    let root = Cell::new(Region::polygon(ring)?, points);
    match cfg.family {
        CellFamily::BinaryCut => binary_cut(root, points, cfg),
        CellFamily::TriQuad | CellFamily::Exhaustive => pooled(root, dps, points, cfg),
    }
}

fn pool_points(dps: &DpPointSet, root: &Cell, points: &[RatPoint], pool: VertexPool) -> Vec<RatPoint> {
    let set: BTreeSet<RatPoint> = match pool {
        VertexPool::InputAndCorners => points
            .iter()
            .chain(root.region().outer())
            .cloned()
            .collect(),
        VertexPool::Basic => dps.basic().cloned().collect(),
        VertexPool::All => dps.iter().map(|(p, _)| p.clone()).collect(),
    };
    set.into_iter().collect()
}

fn pooled(root: Cell, dps: &DpPointSet, points: &[RatPoint], cfg: &CatalogConfig) -> Result<Catalog> {
    if cfg.family == CellFamily::Exhaustive && points.len() > EXHAUSTIVE_MAX_POINTS {
        return Err(Error::InvalidInput(format!(
            "the exhaustive family supports at most {EXHAUSTIVE_MAX_POINTS} points"
        )));
    }
    let pool = pool_points(dps, &root, points, cfg.pool);
    let mut seen: HashMap<CellKey, usize> = HashMap::new();
    let mut cells = Vec::new();
    let over = || Error::CapacityExceeded {
        what: "catalog cells",
        limit: cfg.max_cells,
    };
    let mut push = |region: Polygon, cells: &mut Vec<Cell>| -> Result<()> {
        let key = CellKey::of(&region);
        if seen.contains_key(&key) {
            return Ok(());
        }
        seen.insert(key, cells.len());
        cells.push(Cell::new(region, points));
        if cells.len() > cfg.max_cells {
            return Err(over());
        }
        Ok(())
    };
    let max_vertices = match cfg.family {
        CellFamily::TriQuad => cfg.k.min(4),
        _ => cfg.k,
    };
    for size in 3..=max_vertices.min(pool.len()) {
        for subset in combinations(pool.len(), size) {
            let pts: Vec<RatPoint> = subset.iter().map(|&i| pool[i].clone()).collect();
            for ring in cyclic_orders(&pts) {
                let keep = match cfg.family {
                    CellFamily::TriQuad => ring_is_simple(&ring) && strictly_convex(&ring),
                    _ => ring_is_simple(&ring),
                };
                if keep {
                    push(Region::polygon(ring)?, &mut cells)?;
                }
            }
        }
    }
    push(root.region().clone(), &mut cells)?;
    let (catalog, _) = Catalog::sorted(cells, cfg.family, cfg.k);
    Ok(catalog)
}

fn strictly_convex(ring: &[RatPoint]) -> bool {
    let n = ring.len();
    ring_is_convex(ring) && (0..n).all(|i| orient(&ring[i], &ring[(i + 1) % n], &ring[(i + 2) % n]) != Sign::Zero)
}

/// All `size`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    rec(0, n, size, &mut cur, &mut out);
    out
}

/// Every cyclic ordering of `pts` up to rotation and reflection, each
/// starting at `pts[0]`.
fn cyclic_orders(pts: &[RatPoint]) -> Vec<Vec<RatPoint>> {
    let rest: Vec<usize> = (1..pts.len()).collect();
    let mut out = Vec::new();
    permute(&rest, &mut Vec::new(), &mut vec![false; rest.len()], &mut |perm| {
        // Skip one of each mirrored pair.
        if perm.first() < perm.last() {
            let ring = std::iter::once(0)
                .chain(perm.iter().copied())
                .map(|i| pts[i].clone())
                .collect();
            out.push(ring);
        }
    });
    if pts.len() == 3 {
        out.truncate(1);
    }
    out
}

fn permute(items: &[usize], cur: &mut Vec<usize>, used: &mut Vec<bool>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == items.len() {
        f(cur);
        return;
    }
    for i in 0..items.len() {
        if !used[i] {
            used[i] = true;
            cur.push(items[i]);
            permute(items, cur, used, f);
            cur.pop();
            used[i] = false;
        }
    }
}

fn binary_cut(root: Cell, points: &[RatPoint], cfg: &CatalogConfig) -> Result<Catalog> {
    let mut cells = vec![root];
    let mut index: HashMap<CellKey, usize> = HashMap::new();
    index.insert(cells[0].key().clone(), 0);
    let mut splits: Vec<BTreeSet<[usize; 2]>> = vec![BTreeSet::new()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(qi) = queue.pop_front() {
        if cells[qi].point_count() <= cfg.split_above {
            continue;
        }
        let parent_count = cells[qi].point_count();
        for (a, b) in chords(&cells[qi], points) {
            let (left, right) = split_convex(cells[qi].region().outer(), &a, &b);
            if left.len() > cfg.k || right.len() > cfg.k {
                continue;
            }
            let mut parts = [0usize; 2];
            let mut ok = true;
            for (slot, ring) in [left, right].into_iter().enumerate() {
                let region = Region::from_valid(ring, Vec::new());
                let contained: Vec<usize> = cells[qi]
                    .contained_points()
                    .iter()
                    .copied()
                    .filter(|&i| region.locate(&points[i]) != Location::Outside)
                    .collect();
                if !admissible(parent_count, contained.len()) {
                    ok = false;
                    break;
                }
                let cell = Cell::with_contained(region, contained);
                parts[slot] = match index.get(cell.key()) {
                    Some(&i) => i,
                    None => {
                        let i = cells.len();
                        index.insert(cell.key().clone(), i);
                        cells.push(cell);
                        splits.push(BTreeSet::new());
                        queue.push_back(i);
                        i
                    }
                };
            }
            if !ok {
                continue;
            }
            parts.sort();
            splits[qi].insert(parts);
            if cells.len() > cfg.max_cells {
                return Err(Error::CapacityExceeded {
                    what: "catalog cells",
                    limit: cfg.max_cells,
                });
            }
        }
    }
    let (mut catalog, new_index) = Catalog::sorted(cells, CellFamily::BinaryCut, cfg.k);
    let mut remapped = vec![Vec::new(); catalog.len()];
    for (old, set) in splits.into_iter().enumerate() {
        let mut parts: Vec<Partition> = set
            .into_iter()
            .map(|[a, b]| Partition::new(vec![new_index[a], new_index[b]]))
            .collect();
        parts.sort();
        remapped[new_index[old]] = parts;
    }
    catalog.splits = Some(remapped);
    Ok(catalog)
}

/// Chords of a convex cell with endpoints on its boundary: vertical lines
/// through its input points, and segments joining two input points on its
/// boundary that are not on a common edge.
fn chords(cell: &Cell, points: &[RatPoint]) -> Vec<(RatPoint, RatPoint)> {
    let outer = cell.region().outer();
    let (lo, hi) = cell.region().bbox();
    let mut out = Vec::new();
    let mut xs: Vec<_> = cell.contained_points().iter().map(|&i| &points[i].x).collect();
    xs.sort();
    xs.dedup();
    for x in xs {
        if *x <= lo.x || *x >= hi.x {
            continue;
        }
        let mut hits = Vec::new();
        for (a, b) in crate::geom::ring_edges(outer) {
            if a.x == b.x {
                continue;
            }
            let (l, r) = if a.x < b.x { (a, b) } else { (b, a) };
            if *x < l.x || *x > r.x {
                continue;
            }
            let t = (x - &l.x) / (&r.x - &l.x);
            hits.push(Point2::new(x.clone(), &l.y + t * (&r.y - &l.y)));
        }
        let bottom = hits.iter().min().cloned();
        let top = hits.iter().max().cloned();
        if let (Some(b), Some(t)) = (bottom, top) {
            if b != t {
                out.push((b, t));
            }
        }
    }
    let on_boundary: Vec<&RatPoint> = cell
        .contained_points()
        .iter()
        .map(|&i| &points[i])
        .filter(|p| cell.region().locate(p) == Location::Boundary)
        .collect();
    for (x, u) in on_boundary.iter().enumerate() {
        for v in &on_boundary[x + 1..] {
            let same_edge = crate::geom::ring_edges(outer)
                .any(|(c, d)| on_segment(*u, c, d) && on_segment(*v, c, d));
            if !same_edge {
                out.push(((*u).clone(), (*v).clone()));
            }
        }
    }
    out
}

/// Splits a convex counter-clockwise ring along the chord `ab` (both on the
/// boundary, not on a common edge) into two convex counter-clockwise rings.
pub(crate) fn split_convex(ring: &[RatPoint], a: &RatPoint, b: &RatPoint) -> (Vec<RatPoint>, Vec<RatPoint>) {
    let mut r = ring.to_vec();
    insert_on_ring(&mut r, a);
    insert_on_ring(&mut r, b);
    let ia = r.iter().position(|p| p == a).expect("inserted");
    let ib = r.iter().position(|p| p == b).expect("inserted");
    let n = r.len();
    let walk = |from: usize, to: usize| -> Vec<RatPoint> {
        let mut out = Vec::new();
        let mut i = from;
        loop {
            out.push(r[i].clone());
            if i == to {
                break;
            }
            i = (i + 1) % n;
        }
        out
    };
    (walk(ia, ib), walk(ib, ia))
}

fn insert_on_ring(ring: &mut Vec<RatPoint>, p: &RatPoint) {
    if ring.contains(p) {
        return;
    }
    let n = ring.len();
    let at = (0..n)
        .find(|&i| on_segment(p, &ring[i], &ring[(i + 1) % n]))
        .expect("chord endpoint on the boundary");
    ring.insert(at + 1, p.clone());
}
