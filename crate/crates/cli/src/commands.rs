use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use tricount::approx::{approx_count, ratio_audit, DpConfig, RatioAudit};
use tricount::base::{estimate_base, log2_biguint, sanity_bounds};
use tricount::cut::{search_cut, shrunk_faces, verify_cut, CutFamily};
use tricount::dp::verify_partition;
use tricount::exact::{count_triangulations, initial_triangulation, ExactConfig};
use tricount::geom::{format_rational, hull_boundary_count};
use tricount::pointset::{self, generate, Generator};
use tricount::{Error, Point, Rational};

use crate::{Cli, Command, CutArgs, Failure};

type Out = Result<String, Failure>;

fn read_points(path: &Path) -> Result<Vec<Point>, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    let points = pointset::parse(&text)?;
    if points.len() < 3 {
        return Err(Error::InvalidInput(format!("need at least 3 points, got {}", points.len())).into());
    }
    Ok(points)
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Out {
    match &cli.command {
        Command::Exact { file, seed, caps } => {
            let points = read_points(file)?;
            let count = count_triangulations(&points, &caps.exact(*seed))?;
            let hull = hull_boundary_count(&points);
            let n = points.len();
            if cli.json {
                Ok(pretty(&json!({
                    "count": count.to_string(),
                    "n": n,
                    "hull": hull,
                    "edges_per_triangulation": 3 * n - 3 - hull,
                })))
            } else {
                Ok(format!("{count}\n# n={n} hull={hull} edges={}\n", 3 * n - 3 - hull))
            }
        }
        Command::Approx { file, dp, table } => {
            let points = read_points(file)?;
            let cfg = dp.config();
            let r = approx_count(&points, &cfg)?;
            r.table.replay().map_err(Error::InvariantViolation)?;
            for w in &r.stats.warnings {
                eprintln!("warning: {w}");
            }
            if cli.json {
                let mut v = json!({
                    "count": r.count.to_string(),
                    "config": cfg,
                    "stats": r.stats,
                });
                if *table {
                    v["table"] = serde_json::to_value(r.table.to_json(&r.catalog)).expect("json");
                }
                Ok(pretty(&v))
            } else {
                let s = &r.stats;
                Ok(format!(
                    "{}\n# dp_points={} catalog_cells={} evaluated={} base={} partitions={} zero={} time_ms={:.1}\n",
                    r.count, s.dp_points, s.catalog_cells, s.evaluated_cells, s.base_cells, s.partitions, s.zero_cells, s.elapsed_ms
                ))
            }
        }
        Command::Base {
            file,
            epsilon,
            approx,
            dp,
        } => {
            let points = read_points(file)?;
            if !(*epsilon > 0.0 && *epsilon < 0.5) {
                return Err(Error::InvalidInput(format!("epsilon must lie in (0, 1/2), got {epsilon}")).into());
            }
            let count = if *approx {
                approx_count(&points, &dp.config())?.count
            } else {
                count_triangulations(&points, &dp.caps.exact(crate::Seed::Lex))?
            };
            let est = estimate_base(&count, points.len(), *epsilon)?;
            Ok(pretty(&json!({
                "source": if *approx { "approx" } else { "exact" },
                "count": count.to_string(),
                "estimate": est,
                "sanity": sanity_bounds(est.base),
            })))
        }
        Command::Gen { kind, n, seed, output } => {
            let points = generate((*kind).into(), *n, *seed)?;
            let body = if cli.json {
                pointset::write_json(&points) + "\n"
            } else {
                pointset::write_text(&points)
            };
            match output {
                Some(path) => {
                    fs::write(path, body).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(body),
            }
        }
        Command::Audit { file, dp, cut } => {
            let points = read_points(file)?;
            let out = audit(&points, &dp.config(), cut)?;
            if cli.json {
                Ok(pretty(&out))
            } else {
                Ok(format!(
                    "{}\n# exact={} approx={} log2_ratio_per_point={} cut={}\n",
                    out["verdict"].as_str().unwrap_or("FAIL"),
                    out["row"]["exact"].as_str().unwrap_or("-"),
                    out["row"]["approx"].as_str().unwrap_or("-"),
                    out["row"]["log2_ratio_per_point"],
                    out["cut"]["status"].as_str().unwrap_or("-"),
                ))
            }
        }
        Command::Bench {
            kind,
            n,
            seeds,
            exact_max,
            timings,
            out,
            dp,
        } => {
            let cfg = dp.config();
            let mut lines = String::new();
            for &size in n {
                for &seed in seeds {
                    let points = generate((*kind).into(), size, seed)?;
                    let row = bench_row(&points, (*kind).into(), seed, &cfg, size <= *exact_max, *timings)?;
                    lines.push_str(&serde_json::to_string(&row).expect("json"));
                    lines.push('\n');
                }
            }
            match out {
                Some(path) => {
                    let mut f = fs::OpenOptions::new()
                        .create(true)
                        .append(true)
                        .open(path)
                        .map_err(|e| Failure::Io(format!("cannot open {}: {e}", path.display())))?;
                    f.write_all(lines.as_bytes())
                        .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(lines),
            }
        }
    }
}

#[derive(Serialize)]
struct BenchRow {
    generator: String,
    n: usize,
    seed: Option<u64>,
    exact: Option<String>,
    approx: String,
    log2_ratio_per_point: Option<f64>,
    underflow: bool,
    dp_points: usize,
    catalog_cells: usize,
    evaluated_cells: usize,
    partitions: usize,
    zero_cells: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<WallTimes>,
    config: DpConfig,
}

#[derive(Serialize)]
struct WallTimes {
    exact: Option<f64>,
    approx: f64,
}

fn bench_row(
    points: &[Point],
    generator: Generator,
    seed: u64,
    cfg: &DpConfig,
    with_exact: bool,
    timings: bool,
) -> Result<BenchRow, Failure> {
    let started = Instant::now();
    let exact = if with_exact {
        Some(count_triangulations(
            points,
            &ExactConfig {
                max_triangulations: cfg.caps.max_triangulations,
                ..Default::default()
            },
        )?)
    } else {
        None
    };
    let exact_ms = exact.as_ref().map(|_| started.elapsed().as_secs_f64() * 1e3);
    let r = approx_count(points, cfg)?;
    r.table.replay().map_err(Error::InvariantViolation)?;
    let ratio = match &exact {
        Some(e) if r.count.bits() > 0 => {
            Some((log2_biguint(&r.count) - log2_biguint(e)) / points.len() as f64)
        }
        _ => None,
    };
    Ok(BenchRow {
        generator: generator.to_string(),
        n: points.len(),
        seed: Some(seed),
        exact: exact.map(|e| e.to_string()),
        approx: r.count.to_string(),
        log2_ratio_per_point: ratio,
        underflow: r.count.bits() == 0,
        dp_points: r.stats.dp_points,
        catalog_cells: r.stats.catalog_cells,
        evaluated_cells: r.stats.evaluated_cells,
        partitions: r.stats.partitions,
        zero_cells: r.stats.zero_cells,
        wall_ms: timings.then_some(WallTimes {
            exact: exact_ms,
            approx: r.stats.elapsed_ms,
        }),
        config: cfg.clone(),
    })
}

fn audit(points: &[Point], cfg: &DpConfig, cut: &CutArgs) -> Result<Value, Failure> {
    let (ratio, approx): (RatioAudit, _) = ratio_audit(points, cfg)?;
    let replay = approx.table.replay();
    let mut bad_partitions = Vec::new();
    for (q, e) in approx.table.iter() {
        if let tricount::approx::EntrySource::Recurrence(ps) = &e.source {
            for p in ps {
                if let Err(why) = verify_partition(&approx.catalog, q, p) {
                    bad_partitions.push(format!("cell {q}: {why}"));
                }
            }
        }
    }
    let cut_json = cut_check(points, cut)?;
    let cut_ok = cut_json["status"] != "found" || cut_json["report"]["verdict"] == true;
    let pass = replay.is_ok() && bad_partitions.is_empty() && cut_ok;
    Ok(json!({
        "verdict": if pass { "PASS" } else { "FAIL" },
        "row": {
            "generator": "file",
            "n": points.len(),
            "seed": null,
            "exact": ratio.exact.to_string(),
            "approx": ratio.approx.to_string(),
            "log2_ratio_per_point": ratio.log2_ratio_per_point,
            "underflow": ratio.underflow,
            "dp_points": approx.stats.dp_points,
            "catalog_cells": approx.stats.catalog_cells,
            "evaluated_cells": approx.stats.evaluated_cells,
            "partitions": approx.stats.partitions,
            "zero_cells": approx.stats.zero_cells,
            "config": cfg,
        },
        "warnings": ratio.warnings,
        "replay": match &replay { Ok(()) => "ok".to_string(), Err(e) => e.clone() },
        "invalid_partitions": bad_partitions,
        "table": approx.table.to_json(&approx.catalog),
        "cut": cut_json,
    }))
}

/// Searches a balanced cut on the faces of one triangulation, shrunk so
/// that they are pairwise non-touching.
fn cut_check(points: &[Point], args: &CutArgs) -> Result<Value, Failure> {
    let t = initial_triangulation(points)?;
    let faces = t.faces(points);
    if faces.len() < 3 {
        return Ok(json!({ "status": "skipped", "reason": "fewer than 3 faces" }));
    }
    let tris = shrunk_faces(points, &faces, &Rational::new(1.into(), 2.into()))?;
    let family = match args.polygon_edges {
        Some(max_edges) => CutFamily::ConvexPolygons { max_edges },
        None => CutFamily::Rectangles,
    };
    match search_cut(&tris, &args.alpha, args.l, family)? {
        None => Ok(json!({ "status": "not-found", "faces": faces.len() })),
        Some(c) => {
            let report = verify_cut(&c, &tris, &args.alpha, args.l)?;
            Ok(json!({
                "status": "found",
                "faces": faces.len(),
                "alpha": format_rational(&args.alpha),
                "l": args.l,
                "polygon": c.vertices().iter().map(|p| [format_rational(&p.x), format_rational(&p.y)]).collect::<Vec<_>>(),
                "report": report.to_json(),
            }))
        }
    }
}
