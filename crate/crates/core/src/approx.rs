//! The cell dynamic program: exact maximal-triangulation counts on small
//! cells, sums of products over balanced partitions on large ones.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::base::log2_biguint;
use crate::dp::{
    build_cell_catalog, build_dp_points, enumerate_partitions, Catalog, CatalogConfig, CellFamily,
    DpPointMode, Partition, VertexPool, DEFAULT_MAX_CELLS,
};
use crate::empty::{enumerate_empty, validate_points};
use crate::exact::{count_triangulations, BigCount, ExactConfig, DEFAULT_MAX_TRIANGULATIONS};
use crate::geom::{all_collinear, format_rational};
use crate::{Error, Point, RatPoint, Result};

/// Resource limits; exceeding any of them is a [`Error::CapacityExceeded`].
#[derive(Clone, Debug, Serialize)]
pub struct Caps {
    pub max_dp_points: usize,
    pub max_cells: usize,
    pub max_partitions: usize,
    pub max_triangulations: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            max_dp_points: 1_000_000,
            max_cells: DEFAULT_MAX_CELLS,
            max_partitions: 1_000_000,
            max_triangulations: DEFAULT_MAX_TRIANGULATIONS,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DpConfig {
    /// Vertex bound for cells and part bound for partitions.
    pub k: usize,
    /// Cells with at most this many input points are counted exactly.
    pub delta: usize,
    pub family: CellFamily,
    pub pool: VertexPool,
    pub dp_points: DpPointMode,
    pub caps: Caps,
}

impl Default for DpConfig {
    fn default() -> Self {
        Self {
            k: 4,
            delta: 5,
            family: CellFamily::TriQuad,
            pool: VertexPool::InputAndCorners,
            dp_points: DpPointMode::BasicOnly,
            caps: Caps::default(),
        }
    }
}

impl DpConfig {
    fn check(&self) -> Result<()> {
        if self.k < 3 || self.delta < 3 {
            return Err(Error::InvalidInput(format!(
                "k and delta must be at least 3 (k = {}, delta = {})",
                self.k, self.delta
            )));
        }
        Ok(())
    }

    fn exact(&self) -> ExactConfig {
        ExactConfig {
            max_triangulations: self.caps.max_triangulations,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntrySource {
    /// Exact count of maximal triangulations within the cell.
    Base,
    /// Sum over these partitions of the product of part counts.
    Recurrence(Vec<Partition>),
}

#[derive(Clone, Debug)]
pub struct TableEntry {
    pub count: BigCount,
    pub source: EntrySource,
}

/// Counts for every catalog cell the DP touched, keyed by catalog index.
#[derive(Clone, Debug, Default)]
pub struct CountTable {
    entries: BTreeMap<usize, TableEntry>,
}

impl CountTable {
    pub fn get(&self, cell: usize) -> Option<&TableEntry> {
        self.entries.get(&cell)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &TableEntry)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    /// Re-evaluates every recurrence entry from its recorded partitions.
    pub fn replay(&self) -> std::result::Result<(), String> {
        for (&cell, entry) in &self.entries {
            let EntrySource::Recurrence(parts) = &entry.source else {
                continue;
            };
            let mut sum = BigCount::zero();
            for p in parts {
                let mut prod = BigCount::from(1u32);
                for i in &p.parts {
                    let child = self
                        .entries
                        .get(i)
                        .ok_or_else(|| format!("cell {cell} uses missing cell {i}"))?;
                    if *i >= cell {
                        return Err(format!("cell {cell} uses later cell {i}"));
                    }
                    prod *= &child.count;
                }
                sum += prod;
            }
            if sum != entry.count {
                return Err(format!("cell {cell}: recorded {} but replay gives {sum}", entry.count));
            }
        }
        Ok(())
    }

    pub fn to_json(&self, catalog: &Catalog) -> Vec<TableEntryJson> {
        self.entries
            .iter()
            .map(|(&i, e)| {
                let cell = catalog.get(i);
                TableEntryJson {
                    cell: i,
                    key: cell.key().digest(),
                    vertices: cell
                        .region()
                        .outer()
                        .iter()
                        .map(|p| [format_rational(&p.x), format_rational(&p.y)])
                        .collect(),
                    points: cell.point_count(),
                    tr: e.count.to_string(),
                    provenance: match &e.source {
                        EntrySource::Base => "base",
                        EntrySource::Recurrence(_) => "recurrence",
                    },
                    partitions: match &e.source {
                        EntrySource::Base => vec![],
                        EntrySource::Recurrence(ps) => ps.iter().map(|p| p.parts.clone()).collect(),
                    },
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableEntryJson {
    pub cell: usize,
    pub key: String,
    pub vertices: Vec<[String; 2]>,
    pub points: usize,
    pub tr: String,
    pub provenance: &'static str,
    pub partitions: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RunStats {
    pub n: usize,
    pub empty_triangles: usize,
    pub dp_points: usize,
    pub catalog_cells: usize,
    pub evaluated_cells: usize,
    pub base_cells: usize,
    pub recurrence_cells: usize,
    pub partitions: usize,
    pub zero_cells: usize,
    pub warnings: Vec<String>,
    /// Wall-clock time; kept out of JSON so reruns stay byte-identical.
    #[serde(skip)]
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug)]
pub struct ApproxResult {
    pub count: BigCount,
    pub table: CountTable,
    pub stats: RunStats,
    pub catalog: Catalog,
}

pub fn approx_count(points: &[Point], cfg: &DpConfig) -> Result<ApproxResult> {
    let started = Instant::now();
    cfg.check()?;
    validate_points(points)?;
    if all_collinear(points) {
        return Err(Error::NoTriangulation);
    }
    let universe = enumerate_empty(points)?;
    let dps = build_dp_points(&universe, cfg.dp_points, cfg.caps.max_dp_points)?;
    let rational: Vec<RatPoint> = points.iter().map(|p| p.to_rational()).collect();
    let catalog = build_cell_catalog(
        &dps,
        &rational,
        &CatalogConfig {
            k: cfg.k,
            family: cfg.family,
            pool: cfg.pool,
            split_above: cfg.delta,
            max_cells: cfg.caps.max_cells,
        },
    )?;

    // Cells reachable from the box, level by level, with the partitions of
    // the large ones.
    let mut partitions: HashMap<usize, Vec<Partition>> = HashMap::new();
    let mut needed = vec![false; catalog.len()];
    needed[catalog.root()] = true;
    let mut frontier = vec![catalog.root()];
    let mut total_partitions = 0usize;
    while !frontier.is_empty() {
        let large: Vec<usize> = frontier
            .into_iter()
            .filter(|&q| catalog.get(q).point_count() > cfg.delta)
            .collect();
        let found = large
            .par_iter()
            .map(|&q| enumerate_partitions(&catalog, q, cfg.caps.max_partitions).map(|ps| (q, ps)))
            .collect::<Result<Vec<_>>>()?;
        let mut next = Vec::new();
        for (q, ps) in found {
            total_partitions += ps.len();
            for p in &ps {
                for &i in &p.parts {
                    if !needed[i] {
                        needed[i] = true;
                        next.push(i);
                    }
                }
            }
            partitions.insert(q, ps);
        }
        frontier = next;
    }

    // Exact counts on small cells; convex cells with the same points share
    // a count.
    let exact = cfg.exact();
    let base_cells: Vec<usize> = (0..catalog.len())
        .filter(|&i| needed[i] && catalog.get(i).point_count() <= cfg.delta)
        .collect();
    let mut shared: HashMap<&[usize], usize> = HashMap::new();
    let mut jobs: Vec<usize> = Vec::new();
    for &i in &base_cells {
        let cell = catalog.get(i);
        if cell.is_convex() {
            if shared.contains_key(cell.contained_points()) {
                continue;
            }
            shared.insert(cell.contained_points(), i);
        }
        jobs.push(i);
    }
    let computed: Vec<(usize, Result<BigCount>)> = jobs
        .par_iter()
        .map(|&i| {
            let cell = catalog.get(i);
            let inside: Vec<Point> = cell.contained_points().iter().map(|&j| points[j].clone()).collect();
            (i, crate::exact::count_maximal_among(cell.region(), &inside, &exact))
        })
        .collect();
    let mut by_cell: HashMap<usize, BigCount> = HashMap::new();
    for (i, r) in computed {
        by_cell.insert(i, r?);
    }

    let mut table = CountTable::default();
    for &i in &base_cells {
        let cell = catalog.get(i);
        let count = match by_cell.get(&i) {
            Some(c) => c.clone(),
            None => by_cell[&shared[cell.contained_points()]].clone(),
        };
        table.entries.insert(
            i,
            TableEntry {
                count,
                source: EntrySource::Base,
            },
        );
    }
    let mut stats = RunStats {
        n: points.len(),
        empty_triangles: universe.len(),
        dp_points: dps.len(),
        catalog_cells: catalog.len(),
        base_cells: base_cells.len(),
        partitions: total_partitions,
        ..Default::default()
    };
    // Catalog order puts every part before the cells it partitions.
    for q in 0..catalog.len() {
        let Some(ps) = partitions.remove(&q) else {
            continue;
        };
        let mut sum = BigCount::zero();
        for p in &ps {
            let mut prod = BigCount::from(1u32);
            for i in &p.parts {
                prod *= &table.entries[i].count;
            }
            sum += prod;
        }
        if ps.is_empty() {
            stats.warnings.push(format!(
                "cell {} ({} points) has no admissible partition; its count is 0",
                catalog.get(q).key().digest(),
                catalog.get(q).point_count()
            ));
        }
        table.entries.insert(
            q,
            TableEntry {
                count: sum,
                source: EntrySource::Recurrence(ps),
            },
        );
        stats.recurrence_cells += 1;
    }
    stats.evaluated_cells = table.len();
    stats.zero_cells = table.iter().filter(|(_, e)| e.count.is_zero()).count();
    let count = table.entries[&catalog.root()].count.clone();
    if count.is_zero() {
        stats
            .warnings
            .push("the bounding box count is 0: no partition chain reaches the base cases".into());
    }
    stats.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok(ApproxResult {
        count,
        table,
        stats,
        catalog,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioAudit {
    pub n: usize,
    #[serde(serialize_with = "crate::base::as_decimal")]
    pub exact: BigCount,
    #[serde(serialize_with = "crate::base::as_decimal")]
    pub approx: BigCount,
    /// `log2(approx / exact) / n`; `None` when the approximation is 0.
    pub log2_ratio_per_point: Option<f64>,
    pub underflow: bool,
    pub warnings: Vec<String>,
}

/// Runs the exact counter and the DP on the same input.
pub fn ratio_audit(points: &[Point], cfg: &DpConfig) -> Result<(RatioAudit, ApproxResult)> {
    let exact = count_triangulations(points, &cfg.exact())?;
    let approx = approx_count(points, cfg)?;
    let mut warnings = approx.stats.warnings.clone();
    let underflow = approx.count.is_zero();
    let ratio = if underflow {
        warnings.push("UNDERFLOW: approximate count is 0, ratio is -inf".into());
        None
    } else {
        Some((log2_biguint(&approx.count) - log2_biguint(&exact)) / points.len() as f64)
    };
    Ok((
        RatioAudit {
            n: points.len(),
            exact,
            approx: approx.count.clone(),
            log2_ratio_per_point: ratio,
            underflow,
            warnings,
        },
        approx,
    ))
}

/// Constants for [`suggest_parameters`]; the asymptotic analysis leaves them
/// unspecified.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ParamConstants {
    pub k_scale: f64,
    pub delta_scale: f64,
}

impl Default for ParamConstants {
    fn default() -> Self {
        Self {
            k_scale: 1.0,
            delta_scale: 1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ParamSuggestion {
    pub epsilon: f64,
    pub k: usize,
    pub delta: usize,
}

/// `k = ceil(a * log2(n/eps)^2 / eps)` and
/// `delta = ceil(b * k^2 * log2(n)^2 / eps)`, for reporting only.
pub fn suggest_parameters(n: usize, epsilon: f64, c: ParamConstants) -> ParamSuggestion {
    let n = n.max(2) as f64;
    let k = (c.k_scale * (n / epsilon).log2().powi(2) / epsilon).ceil().max(3.0);
    let delta = (c.delta_scale * k * k * n.log2().powi(2) / epsilon).ceil().max(3.0);
    ParamSuggestion {
        epsilon,
        k: k as usize,
        delta: delta.min(usize::MAX as f64) as usize,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::verify_partition;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::from_i64(x, y)).collect()
    }

    fn convex(n: i64) -> Vec<Point> {
        (0..n).map(|i| Point::from_i64(i, i * i)).collect()
    }

    fn binary(k: usize, delta: usize) -> DpConfig {
        DpConfig {
            k,
            delta,
            family: CellFamily::BinaryCut,
            ..Default::default()
        }
    }

    #[test]
    fn saturated_delta_is_exact() {
        let cfg = DpConfig {
            delta: 6,
            ..Default::default()
        };
        let r = approx_count(&convex(6), &cfg).unwrap();
        assert_eq!(r.count, BigCount::from(14u32));
        assert_eq!(r.table.len(), 1);
    }

    #[test]
    fn binary_cut_is_positive_and_replays() {
        let p = pts(&[(0, 0), (9, 1), (4, 8), (2, 3), (6, 5), (8, 7), (1, 7), (5, 2), (3, 6)]);
        let r = approx_count(&p, &binary(4, 5)).unwrap();
        assert!(r.count > BigCount::zero());
        r.table.replay().unwrap();
        for (q, e) in r.table.iter() {
            if let EntrySource::Recurrence(ps) = &e.source {
                for part in ps {
                    verify_partition(&r.catalog, q, part).unwrap();
                }
            }
        }
    }

    #[test]
    fn ratio_is_zero_at_saturation() {
        let cfg = DpConfig {
            delta: 7,
            family: CellFamily::BinaryCut,
            ..Default::default()
        };
        let (audit, _) = ratio_audit(&convex(7), &cfg).unwrap();
        assert_eq!(audit.log2_ratio_per_point, Some(0.0));
    }

    #[test]
    fn underflow_is_flagged() {
        // k = 3 leaves the box with only triangle splits; with delta 3 the
        // 3x2 grid cannot be split into balanced parts.
        let p = pts(&[(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)]);
        let (audit, approx) = ratio_audit(&p, &binary(3, 3)).unwrap();
        if approx.count.is_zero() {
            assert!(audit.underflow);
            assert!(audit.log2_ratio_per_point.is_none());
            assert!(audit.warnings.iter().any(|w| w.starts_with("UNDERFLOW")));
        }
    }

    #[test]
    fn bad_config() {
        let cfg = DpConfig {
            k: 2,
            ..Default::default()
        };
        assert!(matches!(approx_count(&convex(5), &cfg), Err(Error::InvalidInput(_))));
    }
}
