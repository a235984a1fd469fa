//! DP points, DP cells, cell catalogs and balanced partitions of cells.

mod catalog;
mod cell;
mod partition;
mod points;

pub use catalog::{
    build_cell_catalog, Catalog, CatalogConfig, CellFamily, VertexPool, DEFAULT_MAX_CELLS,
    EXHAUSTIVE_MAX_POINTS,
};
pub use cell::{cell_contains, region_contains, Cell, CellJson, CellKey};
pub use partition::{admissible, enumerate_partitions, verify_partition, Partition};
pub use points::{build_dp_points, build_dp_points_for, DpPointMode, DpPointSet, Provenance};
