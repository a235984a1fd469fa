//! Exact overlap areas between regions, used to certify that the parts of a
//! partition have disjoint interiors.

use super::point::Point2;
use super::predicates::{line_intersection, orient, Sign};
use super::region::{ring_edges, ring_twice_area, Region};
use super::scalar::ExactField;

/// Clips a convex polygon against a convex counter-clockwise polygon.
pub fn clip_convex<T: ExactField>(subject: &[Point2<T>], clip: &[Point2<T>]) -> Vec<Point2<T>> {
    let mut out = subject.to_vec();
    let n = clip.len();
    for i in 0..n {
        if out.is_empty() {
            break;
        }
        let (e0, e1) = (&clip[i], &clip[(i + 1) % n]);
        let input = std::mem::take(&mut out);
        let m = input.len();
        for j in 0..m {
            let cur = &input[j];
            let prev = &input[(j + m - 1) % m];
            let cur_in = orient(e0, e1, cur) != Sign::Negative;
            let prev_in = orient(e0, e1, prev) != Sign::Negative;
            if cur_in {
                if !prev_in {
                    out.extend(line_intersection(prev, cur, e0, e1));
                }
                out.push(cur.clone());
            } else if prev_in {
                out.extend(line_intersection(prev, cur, e0, e1));
            }
        }
    }
    out
}

/// Twice the area of the intersection of two triangles (either orientation).
pub fn triangle_overlap_twice_area<T: ExactField>(t1: &[Point2<T>; 3], t2: &[Point2<T>; 3]) -> T {
    let ccw = |t: &[Point2<T>; 3]| -> Vec<Point2<T>> {
        if orient(&t[0], &t[1], &t[2]) == Sign::Negative {
            vec![t[0].clone(), t[2].clone(), t[1].clone()]
        } else {
            t.to_vec()
        }
    };
    let piece = clip_convex(&ccw(t1), &ccw(t2));
    if piece.len() < 3 {
        return T::zero();
    }
    ring_twice_area(&piece)
}

/// Twice the area of `a ∩ b`. Holes are handled by inclusion-exclusion
/// over signed triangle decompositions.
pub fn overlap_twice_area<T: ExactField>(a: &Region<T>, b: &Region<T>) -> T {
    let (alo, ahi) = a.bbox();
    let (blo, bhi) = b.bbox();
    if ahi.x <= blo.x || bhi.x <= alo.x || ahi.y <= blo.y || bhi.y <= alo.y {
        return T::zero();
    }
    let ta = a.signed_triangles();
    let tb = b.signed_triangles();
    let mut total = T::zero();
    for s in &ta {
        let sa = orient(&s[0], &s[1], &s[2]);
        for t in &tb {
            let st = orient(&t[0], &t[1], &t[2]);
            let area = triangle_overlap_twice_area(s, t);
            if area.is_zero() {
                continue;
            }
            if sa == st {
                total = total + area;
            } else {
                total = total - area;
            }
        }
    }
    total
}

pub fn interiors_disjoint<T: ExactField>(a: &Region<T>, b: &Region<T>) -> bool {
    let plain = |r: &Region<T>| r.holes().is_empty() && r.is_convex();
    if plain(a) && plain(b) {
        return separated(a.outer(), b.outer()) || separated(b.outer(), a.outer());
    }
    overlap_twice_area(a, b).is_zero()
}

/// Whether some edge line of the counter-clockwise convex ring `a` has all
/// of `b` on its closed outer side.
fn separated<T: ExactField>(a: &[Point2<T>], b: &[Point2<T>]) -> bool {
    ring_edges(a).any(|(p, q)| b.iter().all(|v| orient(p, q, v) != Sign::Positive))
}
