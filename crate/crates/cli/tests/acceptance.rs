//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use tricount::approx::{approx_count, DpConfig};
use tricount::base::log2_biguint;
use tricount::cut::{search_cut, shrunk_faces, verify_cut, CutFamily, CutPolygon, WeightedTriangle};
use tricount::dp::CellFamily;
use tricount::exact::{
    brute_force_oracle, count_triangulations, enumerate_triangulations, initial_triangulation, BigCount,
    ExactConfig, FlipSpace, SeedOrder,
};
use tricount::geom::hull_boundary_count;
use tricount::pointset::{generate, write_text, Generator};
use tricount::{Error, Point, RatPoint, Rational};

/// Per-run limit for criterion 1.
const CATALAN_RUN_LIMIT: Duration = Duration::from_secs(10);
/// Whole-suite limit for criterion 2.
const ORACLE_SUITE_LIMIT: Duration = Duration::from_secs(300);
/// Random instances in the oracle suite (plus the 3x3 grid).
const ORACLE_SUITE_SIZE: u64 = 60;
/// Envelope for |log2(approx/exact)| / (n log2 n) in criterion 5.
const RATIO_ENVELOPE: f64 = 1.0;
const MIN_RATIO_INSTANCES: usize = 20;
/// Share of n >= 9 suite instances on which a rectangle cut must be found.
const CUT_SUCCESS_SHARE: f64 = 0.9;
/// Log-log growth bound for cell and partition counts in criterion 8.
const GROWTH_SLOPE_LIMIT: f64 = 8.0;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_tricount")
}

fn scratch() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tricount-acceptance-{}", std::process::id()));
    fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(binary()).args(args).output().expect("run tricount");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn write_points(dir: &Path, name: &str, points: &[Point]) -> String {
    let path = dir.join(name);
    fs::write(&path, write_text(points)).expect("write points");
    path.to_string_lossy().into_owned()
}

/// Catalan numbers from the convolution recurrence.
fn catalan_table(up_to: usize) -> Vec<BigCount> {
    let mut c = vec![BigCount::from(1u32)];
    for m in 1..=up_to {
        let next = (0..m).map(|i| &c[i] * &c[m - 1 - i]).sum();
        c.push(next);
    }
    c
}

fn exact(points: &[Point]) -> BigCount {
    count_triangulations(points, &ExactConfig::default()).expect("exact count")
}

fn suite() -> Vec<Vec<Point>> {
    let mut sets: Vec<Vec<Point>> = (0..ORACLE_SUITE_SIZE)
        .map(|seed| generate(Generator::Random, 4 + (seed % 7) as usize, seed).expect("generate"))
        .collect();
    sets.push(generate(Generator::Grid, 9, 0).expect("grid"));
    sets
}

fn criterion_1(dir: &Path) -> Outcome {
    let catalan = catalan_table(8);
    let mut slowest = Duration::ZERO;
    for n in 4..=10usize {
        let file = write_points(dir, &format!("convex{n}.txt"), &generate(Generator::Convex, n, n as u64).unwrap());
        let started = Instant::now();
        let (code, out) = run_cli(&["exact", &file]);
        let took = started.elapsed();
        slowest = slowest.max(took);
        let first = String::from_utf8_lossy(&out).lines().next().unwrap_or("").to_string();
        if code != 0 || first != catalan[n - 2].to_string() || took > CATALAN_RUN_LIMIT {
            return outcome(false, format!("n={n}: exit {code}, printed {first:?}, expected {}, {took:?}", catalan[n - 2]));
        }
    }
    outcome(true, format!("C_2..C_8 = 2, 5, 14, 42, 132, 429, 1430 reproduced; slowest run {slowest:.2?}"))
}

fn criterion_2(sets: &[Vec<Point>]) -> Outcome {
    let started = Instant::now();
    for (i, p) in sets.iter().enumerate() {
        let a = exact(p);
        let b = brute_force_oracle(p).expect("oracle");
        if a != b {
            return outcome(false, format!("instance {i} (n={}): flip count {a} vs oracle {b}", p.len()));
        }
    }
    let took = started.elapsed();
    outcome(
        took <= ORACLE_SUITE_LIMIT,
        format!("{} instances bit-exact against the brute-force oracle in {took:.2?}", sets.len()),
    )
}

fn criterion_3(sets: &[Vec<Point>]) -> Outcome {
    let mut triangulations = 0usize;
    for (i, p) in sets.iter().enumerate() {
        let expected = 3 * p.len() - 3 - hull_boundary_count(p);
        let all = enumerate_triangulations(p, &ExactConfig::default()).expect("enumerate");
        if let Some(t) = all.iter().find(|t| t.edges.len() != expected) {
            return outcome(false, format!("instance {i}: {} edges, expected {expected}", t.edges.len()));
        }
        triangulations += all.len();
        let space = FlipSpace::new(p).expect("space");
        let first = space.seed(SeedOrder::Lexicographic);
        let seeds = match space.neighbors(&first).into_iter().next() {
            Some(other) => vec![first, other],
            None => vec![first, space.seed(SeedOrder::ReverseLexicographic)],
        };
        let counts: Vec<usize> = seeds
            .into_iter()
            .map(|s| space.traverse(s, usize::MAX, |_| {}).expect("traverse"))
            .collect();
        if counts[0] != counts[1] || counts[0] != all.len() {
            return outcome(false, format!("instance {i}: seeds reach {counts:?}, enumeration {}", all.len()));
        }
    }
    outcome(
        true,
        format!("{triangulations} triangulations have 3n-3-h edges; two distinct seeds agree on all {} instances", sets.len()),
    )
}

fn criterion_4(sets: &[Vec<Point>]) -> Outcome {
    for (i, p) in sets.iter().enumerate() {
        let cfg = DpConfig {
            delta: p.len(),
            family: CellFamily::BinaryCut,
            ..Default::default()
        };
        let got = approx_count(p, &cfg).expect("approx").count;
        let want = exact(p);
        if got != want {
            return outcome(false, format!("instance {i}: approx {got} vs exact {want}"));
        }
    }
    outcome(true, format!("delta = n reproduces the exact count on all {} instances", sets.len()))
}

fn criterion_5() -> Outcome {
    let mut ratios = Vec::new();
    for n in 8..=12usize {
        for seed in 1..=2u64 {
            let p = generate(Generator::Random, n, seed).unwrap();
            let want = exact(&p);
            for delta in [4, 5, 6] {
                let cfg = DpConfig {
                    k: 4,
                    delta,
                    family: CellFamily::BinaryCut,
                    ..Default::default()
                };
                let got = approx_count(&p, &cfg).expect("approx").count;
                if got == BigCount::from(0u32) {
                    return outcome(false, format!("n={n} seed={seed} delta={delta}: approx is 0"));
                }
                let r = (log2_biguint(&got) - log2_biguint(&want)).abs() / (n as f64 * (n as f64).log2());
                if r > RATIO_ENVELOPE {
                    return outcome(false, format!("n={n} seed={seed} delta={delta}: normalized ratio {r:.3}"));
                }
                ratios.push(r);
            }
        }
    }
    ratios.sort_by(f64::total_cmp);
    let pass = ratios.len() >= MIN_RATIO_INSTANCES;
    outcome(
        pass,
        format!(
            "{} instances, |log2(approx/exact)|/(n log2 n): min {:.3}, median {:.3}, max {:.3}",
            ratios.len(),
            ratios[0],
            ratios[ratios.len() / 2],
            ratios[ratios.len() - 1]
        ),
    )
}

fn q(x: i64, y: i64) -> RatPoint {
    RatPoint::from_ints(x, y)
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn row(weights: [i64; 3]) -> Vec<WeightedTriangle> {
    (0..3)
        .map(|i| WeightedTriangle {
            corners: [q(3 * i as i64, 0), q(3 * i as i64 + 1, 0), q(3 * i as i64, 1)],
            weight: Rational::from_integer(weights[i].into()),
        })
        .collect()
}

fn poly(v: &[(i64, i64)]) -> CutPolygon {
    CutPolygon::new(v.iter().map(|&(x, y)| q(x, y)).collect()).unwrap()
}

fn rect(x0: i64, y0: i64, x1: i64, y1: i64) -> CutPolygon {
    poly(&[(x0, y0), (x1, y0), (x1, y1), (x0, y1)])
}

// (name, cut, triangles, alpha, l, destroyed, inside, outside, verdict)
type CutCase = (&'static str, CutPolygon, Vec<WeightedTriangle>, Rational, usize, Rational, Rational, Rational, bool);
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn criterion_6(sets: &[Vec<Point>]) -> Outcome {
    let eq = row([1, 1, 1]);
    let configs: Vec<CutCase> = vec![
        ("box around the middle", rect(2, -1, 5, 2), eq.clone(), r(1, 3), 4, r(0, 1), r(1, 3), r(2, 3), true),
        ("crossing two", rect(0, -1, 4, 1), eq.clone(), r(1, 3), 4, r(2, 3), r(0, 1), r(1, 3), false),
        ("containing all", rect(-1, -1, 9, 2), eq.clone(), r(1, 3), 4, r(0, 1), r(1, 1), r(0, 1), false),
        ("containing none", rect(20, 20, 21, 21), eq.clone(), r(1, 3), 4, r(0, 1), r(0, 1), r(1, 1), false),
        ("pentagon with l = 4", poly(&[(2, -1), (5, -1), (5, 2), (3, 3), (2, 2)]), eq.clone(), r(1, 3), 4, r(0, 1), r(1, 3), r(2, 3), false),
        ("vertex contact, alpha 1/3", rect(1, -2, 5, 0), eq.clone(), r(1, 3), 4, r(2, 3), r(0, 1), r(1, 3), false),
        ("corner contact counts as destroyed", rect(-2, -2, 0, 0), eq.clone(), r(1, 3), 4, r(1, 3), r(0, 1), r(2, 3), true),
        ("weighted middle", rect(2, -1, 5, 2), row([1, 2, 1]), r(1, 3), 4, r(0, 1), r(1, 2), r(1, 2), true),
        ("cut inside one triangle", inner_triangle(), eq.clone(), r(1, 3), 4, r(1, 3), r(0, 1), r(2, 3), true),
    ];
    for (name, cut, tris, alpha, l, d, i, o, verdict) in &configs {
        let rep = verify_cut(cut, tris, alpha, *l).expect("verify");
        if (&rep.destroyed, &rep.inside, &rep.outside, rep.verdict()) != (d, i, o, *verdict) {
            return outcome(
                false,
                format!("{name}: got ({}, {}, {}, {}), expected ({d}, {i}, {o}, {verdict})", rep.destroyed, rep.inside, rep.outside, rep.verdict()),
            );
        }
    }
    let touching = vec![eq[0].clone(), WeightedTriangle { corners: [q(1, 0), q(2, 0), q(2, 1)], weight: r(1, 1) }, eq[2].clone()];
    if !matches!(verify_cut(&configs[0].1, &touching, &r(1, 3), 4), Err(Error::InvalidInput(_))) {
        return outcome(false, "touching triangles were not rejected");
    }
    let single = vec![eq[0].clone()];
    if !matches!(search_cut(&single, &r(1, 2), 4, CutFamily::Rectangles), Err(Error::InvalidInput(_))) {
        return outcome(false, "a single heavy triangle was not rejected");
    }
    match search_cut(&eq, &r(1, 3), 4, CutFamily::Rectangles) {
        Ok(Some(c)) if verify_cut(&c, &eq, &r(1, 3), 4).unwrap().verdict() => {}
        _ => return outcome(false, "no verified cut for three equal triangles"),
    }
    let half = r(1, 2);
    let (mut tried, mut found) = (0usize, 0usize);
    for p in sets.iter().filter(|p| p.len() >= 9) {
        let faces = initial_triangulation(p).unwrap().faces(p);
        let tris = shrunk_faces(p, &faces, &half).unwrap();
        tried += 1;
        if let Some(c) = search_cut(&tris, &half, 4, CutFamily::Rectangles).expect("search") {
            if !verify_cut(&c, &tris, &half, 4).unwrap().verdict() {
                return outcome(false, "a returned cut failed re-verification");
            }
            found += 1;
        }
    }
    let share = found as f64 / tried.max(1) as f64;
    outcome(
        tried > 0 && share >= CUT_SUCCESS_SHARE,
        format!("{} configurations as constructed; rectangle cut found on {found}/{tried} instances with n >= 9", configs.len()),
    )
}

/// A small triangle strictly inside the middle triangle of [`row`].
fn inner_triangle() -> CutPolygon {
    let p = |x: (i64, i64), y: (i64, i64)| RatPoint::new(r(x.0, x.1), r(y.0, y.1));
    CutPolygon::new(vec![p((13, 4), (1, 4)), p((7, 2), (1, 4)), p((13, 4), (1, 2))]).unwrap()
}

fn criterion_7(dir: &Path) -> Outcome {
    let random = write_points(dir, "det-random.txt", &generate(Generator::Random, 10, 1).unwrap());
    let convex = write_points(dir, "det-convex.txt", &generate(Generator::Convex, 8, 2).unwrap());
    let commands: Vec<Vec<&str>> = vec![
        vec!["--json", "exact", &random],
        vec!["--json", "approx", &random, "--k", "4", "--delta", "5", "--table"],
        vec!["--json", "approx", &convex, "--family", "tri-quad", "--delta", "4", "--table"],
        vec!["--json", "base", &random, "--epsilon", "0.25"],
        vec!["--json", "base", &random, "--epsilon", "0.25", "--approx"],
        vec!["--json", "gen", "random", "12", "--seed", "9"],
        vec!["gen", "convex", "12", "--seed", "9"],
        vec!["--json", "audit", &random],
        vec!["bench", "--n", "8,9", "--seeds", "1,2"],
    ];
    for args in &commands {
        let mut outputs = Vec::new();
        for threads in ["1", "4"] {
            for _ in 0..2 {
                let mut full = vec!["--threads", threads];
                full.extend(args.iter().copied());
                let (code, out) = run_cli(&full);
                if code != 0 {
                    return outcome(false, format!("{args:?} exited with {code}"));
                }
                outputs.push(out);
            }
        }
        if outputs.windows(2).any(|w| w[0] != w[1]) {
            return outcome(false, format!("{args:?} output differs across reruns or thread counts"));
        }
    }
    outcome(true, format!("{} commands byte-identical over 2 runs x threads {{1, 4}}", commands.len()))
}

/// Least-squares slope of ln(y) against ln(n).
fn slope(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    let (sx, sy): (f64, f64) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x.ln(), b + y.ln()));
    let (mx, my) = (sx / m, sy / m);
    let num: f64 = points.iter().map(|(x, y)| (x.ln() - mx) * (y.ln() - my)).sum();
    let den: f64 = points.iter().map(|(x, _)| (x.ln() - mx).powi(2)).sum();
    num / den
}

fn criterion_8() -> Outcome {
    let cfg = DpConfig {
        k: 4,
        delta: 4,
        family: CellFamily::BinaryCut,
        ..Default::default()
    };
    let mut cells = Vec::new();
    let mut parts = Vec::new();
    let mut table = Vec::new();
    for n in [8usize, 10, 12] {
        let (mut c, mut p) = (0.0, 0.0);
        let seeds = 1..=3u64;
        for seed in seeds.clone() {
            let points = generate(Generator::Random, n, seed).unwrap();
            match approx_count(&points, &cfg) {
                Ok(r) => {
                    c += r.stats.catalog_cells as f64;
                    p += r.stats.partitions as f64;
                }
                Err(Error::CapacityExceeded { .. }) => {
                    return outcome(true, format!("informational: caps reached at n={n}, slope not enforced"));
                }
                Err(e) => return outcome(false, format!("n={n}: {e}")),
            }
        }
        let runs = seeds.count() as f64;
        // Means over seeds; +1 keeps the logarithm defined.
        cells.push((n as f64, c / runs + 1.0));
        parts.push((n as f64, p / runs + 1.0));
        table.push(format!("n={n}: cells {:.1}, partitions {:.1}", c / runs, p / runs));
    }
    let (sc, sp) = (slope(&cells), slope(&parts));
    outcome(
        sc < GROWTH_SLOPE_LIMIT && sp < GROWTH_SLOPE_LIMIT,
        format!("{}; log-log slopes cells {sc:.2}, partitions {sp:.2}", table.join("; ")),
    )
}

fn main() {
    let dir = scratch();
    let sets = suite();
    let criteria: Vec<Criterion<'_>> = vec![
        ("Catalan conformance", Box::new(|| criterion_1(&dir))),
        ("oracle equivalence", Box::new(|| criterion_2(&sets))),
        ("flip-graph well-formedness", Box::new(|| criterion_3(&sets))),
        ("base-case saturation", Box::new(|| criterion_4(&sets))),
        ("approximation sanity", Box::new(criterion_5)),
        ("cut verifier and search", Box::new(|| criterion_6(&sets))),
        ("determinism", Box::new(|| criterion_7(&dir))),
        ("runtime profile", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    let mut out = std::io::stdout().lock();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let o = check();
        if !o.pass {
            failed += 1;
        }
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        writeln!(out, "criterion {}: {verdict} [{name}] {} ({:.2?})", i + 1, o.detail, started.elapsed()).unwrap();
    }
    let _ = fs::remove_dir_all(&dir);
    writeln!(out, "acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len()).unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}
