//! Balanced cheap cuts of weighted triangle sets: an exact verifier and an
//! exhaustive search over explicit candidate families.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::dp::{build_dp_points_for, DpPointMode};
use crate::geom::{
    convex_hull, format_rational, point_in_triangle, ring_is_simple, ring_locate, ring_twice_area,
    segment_contacts, Location, Point2,
};
use crate::{Error, Point, RatPoint, Rational, Result};

/// Candidates examined by [`search_cut`] before giving up.
pub const MAX_CUT_CANDIDATES: usize = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutPolygon {
    vertices: Vec<RatPoint>,
}

impl CutPolygon {
    /// A simple polygon of positive area, stored counter-clockwise.
    pub fn new(mut vertices: Vec<RatPoint>) -> Result<Self> {
        if vertices.len() < 3 || !ring_is_simple(&vertices) {
            return Err(Error::InvalidInput("cut must be a simple polygon".into()));
        }
        let area = ring_twice_area(&vertices);
        if area.is_zero() {
            return Err(Error::InvalidInput("cut has zero area".into()));
        }
        if area.is_negative() {
            vertices.reverse();
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[RatPoint] {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len()
    }

    fn edges(&self) -> impl Iterator<Item = (&RatPoint, &RatPoint)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedTriangle {
    pub corners: [RatPoint; 3],
    pub weight: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TriangleSide {
    Destroyed,
    Inside,
    Outside,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutReport {
    /// Weight fractions of the three classes; they sum to 1.
    pub destroyed: Rational,
    pub inside: Rational,
    pub outside: Rational,
    pub sides: Vec<TriangleSide>,
    pub edges_ok: bool,
    pub destroyed_ok: bool,
    pub inside_ok: bool,
    pub outside_ok: bool,
}

impl CutReport {
    pub fn verdict(&self) -> bool {
        self.edges_ok && self.destroyed_ok && self.inside_ok && self.outside_ok
    }

    pub fn to_json(&self) -> CutReportJson {
        CutReportJson {
            destroyed_weight: format_rational(&self.destroyed),
            inside_weight: format_rational(&self.inside),
            outside_weight: format_rational(&self.outside),
            edges_ok: self.edges_ok,
            destroyed_ok: self.destroyed_ok,
            inside_ok: self.inside_ok,
            outside_ok: self.outside_ok,
            verdict: self.verdict(),
            sides: self.sides.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CutReportJson {
    pub destroyed_weight: String,
    pub inside_weight: String,
    pub outside_weight: String,
    pub edges_ok: bool,
    pub destroyed_ok: bool,
    pub inside_ok: bool,
    pub outside_ok: bool,
    pub verdict: bool,
    pub sides: Vec<TriangleSide>,
}

fn closures_meet(s: &[RatPoint; 3], t: &[RatPoint; 3]) -> Result<bool> {
    for i in 0..3 {
        for j in 0..3 {
            if !segment_contacts(&s[i], &s[(i + 1) % 3], &t[j], &t[(j + 1) % 3]).is_empty() {
                return Ok(true);
            }
        }
    }
    // No edge contact: either disjoint or one strictly inside the other.
    Ok(point_in_triangle(&s[0], (&t[0], &t[1], &t[2]))? != Location::Outside
        || point_in_triangle(&t[0], (&s[0], &s[1], &s[2]))? != Location::Outside)
}

fn validate_triangles(tris: &[WeightedTriangle]) -> Result<Rational> {
    if tris.is_empty() {
        return Err(Error::InvalidInput("no triangles".into()));
    }
    let mut total = Rational::zero();
    for t in tris {
        if t.weight.is_negative() {
            return Err(Error::InvalidInput("negative triangle weight".into()));
        }
        let [a, b, c] = &t.corners;
        if ring_twice_area(&[a.clone(), b.clone(), c.clone()]).is_zero() {
            return Err(Error::DegenerateTriangle);
        }
        total += &t.weight;
    }
    if total.is_zero() {
        return Err(Error::InvalidInput("total weight is 0".into()));
    }
    let pairs: Vec<(usize, usize)> =
        (0..tris.len()).flat_map(|i| (i + 1..tris.len()).map(move |j| (i, j))).collect();
    let touching = pairs
        .par_iter()
        .map(|&(i, j)| closures_meet(&tris[i].corners, &tris[j].corners).map(|m| m.then_some((i, j))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    if let Some((i, j)) = touching {
        return Err(Error::InvalidInput(format!("triangles {i} and {j} touch")));
    }
    Ok(total)
}

/// Which side of the cut a triangle lies on; touching the boundary at a
/// single point already counts as destroyed.
fn side_of(cut: &CutPolygon, t: &[RatPoint; 3]) -> TriangleSide {
    for (a, b) in cut.edges() {
        for j in 0..3 {
            if !segment_contacts(a, b, &t[j], &t[(j + 1) % 3]).is_empty() {
                return TriangleSide::Destroyed;
            }
        }
    }
    // A cut strictly inside the triangle still has its boundary inside it.
    let v = &cut.vertices[0];
    if point_in_triangle(v, (&t[0], &t[1], &t[2])).expect("validated") != Location::Outside {
        return TriangleSide::Destroyed;
    }
    match ring_locate(&cut.vertices, &t[0]) {
        Location::Interior => TriangleSide::Inside,
        _ => TriangleSide::Outside,
    }
}

fn report(cut: &CutPolygon, tris: &[WeightedTriangle], total: &Rational, alpha: &Rational, l: usize) -> CutReport {
    let sides: Vec<TriangleSide> = tris.iter().map(|t| side_of(cut, &t.corners)).collect();
    let mut w = [Rational::zero(), Rational::zero(), Rational::zero()];
    for (t, s) in tris.iter().zip(&sides) {
        w[*s as usize] += &t.weight;
    }
    let [destroyed, inside, outside] = w.map(|x| x / total);
    let two_thirds = Rational::new(2.into(), 3.into());
    CutReport {
        edges_ok: cut.edge_count() <= l,
        destroyed_ok: &destroyed <= alpha,
        inside_ok: inside <= two_thirds,
        outside_ok: outside <= two_thirds,
        destroyed,
        inside,
        outside,
        sides,
    }
}

/// Checks all four clauses of a balanced `alpha`-cheap `l`-cut against
/// pairwise non-touching weighted triangles.
pub fn verify_cut(cut: &CutPolygon, tris: &[WeightedTriangle], alpha: &Rational, l: usize) -> Result<CutReport> {
    let total = validate_triangles(tris)?;
    Ok(report(cut, tris, &total, alpha, l))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutFamily {
    /// Axis-parallel rectangles whose four corners are basic DP points.
    Rectangles,
    /// Convex polygons with 3 to `max_edges` vertices at basic DP points.
    ConvexPolygons { max_edges: usize },
}

/// The first verified cut in canonical candidate order, or `None` once the
/// family is exhausted.
pub fn search_cut(
    tris: &[WeightedTriangle],
    alpha: &Rational,
    l: usize,
    family: CutFamily,
) -> Result<Option<CutPolygon>> {
    let total = validate_triangles(tris)?;
    let third = &total / Rational::from_integer(3.into());
    if tris.iter().any(|t| t.weight > third) {
        return Err(Error::InvalidInput("a triangle carries more than a third of the weight".into()));
    }
    let corners: Vec<[RatPoint; 3]> = tris.iter().map(|t| t.corners.clone()).collect();
    let dps = build_dp_points_for(&corners, DpPointMode::BasicOnly, usize::MAX)?;
    let basic: Vec<RatPoint> = dps.basic().cloned().collect();
    let candidates = match family {
        CutFamily::Rectangles => rectangles(&basic),
        CutFamily::ConvexPolygons { max_edges } => convex_polygons(&basic, max_edges.min(l))?,
    };
    Ok(candidates
        .into_par_iter()
        .filter_map(|v| CutPolygon::new(v).ok())
        .find_first(|c| report(c, tris, &total, alpha, l).verdict()))
}

fn rectangles(basic: &[RatPoint]) -> Vec<Vec<RatPoint>> {
    let set: std::collections::BTreeSet<&RatPoint> = basic.iter().collect();
    let mut out = Vec::new();
    for lo in basic {
        for hi in basic {
            if hi.x <= lo.x || hi.y <= lo.y {
                continue;
            }
            let br = Point2::new(hi.x.clone(), lo.y.clone());
            let tl = Point2::new(lo.x.clone(), hi.y.clone());
            if set.contains(&br) && set.contains(&tl) {
                out.push(vec![lo.clone(), br, hi.clone(), tl]);
            }
        }
    }
    out
}

fn convex_polygons(basic: &[RatPoint], max_edges: usize) -> Result<Vec<Vec<RatPoint>>> {
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        basic: &[RatPoint],
        from: usize,
        max: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<RatPoint>>,
    ) -> Result<()> {
        if chosen.len() >= 3 {
            let pts: Vec<RatPoint> = chosen.iter().map(|&i| basic[i].clone()).collect();
            let hull = convex_hull(&pts);
            if hull.len() == pts.len() {
                out.push(hull);
                if out.len() > MAX_CUT_CANDIDATES {
                    return Err(Error::CapacityExceeded {
                        what: "cut candidates",
                        limit: MAX_CUT_CANDIDATES,
                    });
                }
            }
        }
        if chosen.len() == max {
            return Ok(());
        }
        for i in from..basic.len() {
            chosen.push(i);
            rec(basic, i + 1, max, chosen, out)?;
            chosen.pop();
        }
        Ok(())
    }
    rec(basic, 0, max_edges, &mut chosen, &mut out)?;
    Ok(out)
}

/// Faces of a triangulation, each shrunk about its centroid by `factor`
/// (in `(0, 1)`) so that the results are pairwise non-touching, with unit
/// weights.
pub fn shrunk_faces(points: &[Point], faces: &[[usize; 3]], factor: &Rational) -> Result<Vec<WeightedTriangle>> {
    if !(factor.is_positive() && factor < &Rational::one()) {
        return Err(Error::InvalidInput("shrink factor must lie in (0, 1)".into()));
    }
    let three = Rational::from_integer(3.into());
    faces
        .iter()
        .map(|f| {
            let c = f.map(|i| points[i].to_rational());
            let cx = (&c[0].x + &c[1].x + &c[2].x) / &three;
            let cy = (&c[0].y + &c[1].y + &c[2].y) / &three;
            let corners = c.map(|p| Point2::new(&cx + (&p.x - &cx) * factor, &cy + (&p.y - &cy) * factor));
            if ring_twice_area(&corners).is_zero() {
                return Err(Error::DegenerateTriangle);
            }
            Ok(WeightedTriangle {
                corners,
                weight: Rational::one(),
            })
        })
        .collect()
}
