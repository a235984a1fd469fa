use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use proptest::prelude::*;
use tricount::approx::{approx_count, DpConfig, EntrySource};
use tricount::base::estimate_base;
use tricount::cut::{verify_cut, CutPolygon, TriangleSide, WeightedTriangle};
use tricount::dp::{verify_partition, CellFamily};
use tricount::empty::enumerate_empty;
use tricount::exact::{
    brute_force_oracle, count_maximal_in_cell, count_triangulations, enumerate_triangulations,
    is_maximal_in_cell, maximal_fragment, ExactConfig, SeedOrder,
};
use tricount::geom::{
    all_collinear, classify_segments, hull_boundary_count, in_segment_interior, point_in_triangle, Location,
    Region,
};
use tricount::pointset::{parse, write_json, write_text};
use tricount::{Point, RatPoint, Rational};

fn point_set(max: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::btree_set((0i64..12, 0i64..12), 3..=max)
        .prop_map(|s| s.into_iter().map(|(x, y)| Point::from_i64(x, y)).collect::<Vec<_>>())
        .prop_filter("not collinear", |p| !all_collinear(p))
}

/// Maximal sets of pairwise compatible segments, by include/exclude search.
fn maximal_independent_sets(clash: &[u64], k: usize, chosen: u64, banned: u64) -> u64 {
    if k == clash.len() {
        let maximal = (0..clash.len()).all(|i| chosen >> i & 1 == 1 || clash[i] & chosen != 0);
        return maximal as u64;
    }
    let mut total = 0;
    if banned >> k & 1 == 0 {
        total += maximal_independent_sets(clash, k + 1, chosen | 1 << k, banned | clash[k]);
    }
    total + maximal_independent_sets(clash, k + 1, chosen, banned)
}

fn exact(p: &[Point]) -> BigUint {
    count_triangulations(p, &ExactConfig::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn flip_count_matches_oracle(p in point_set(8)) {
        prop_assert_eq!(exact(&p), brute_force_oracle(&p).unwrap());
    }

    #[test]
    fn count_ignores_order_and_translation(p in point_set(8), shift in (-50i64..50, -50i64..50), rot in 0usize..8) {
        let mut q: Vec<Point> = p
            .iter()
            .map(|v| Point::new(&v.x + BigInt::from(shift.0), &v.y + BigInt::from(shift.1)))
            .collect();
        let len = q.len();
        q.rotate_left(rot % len);
        q.reverse();
        prop_assert_eq!(exact(&p), exact(&q));
    }

    #[test]
    fn triangulation_shape(p in point_set(7)) {
        let h = hull_boundary_count(&p);
        let n = p.len();
        let mut a = enumerate_triangulations(&p, &ExactConfig::default()).unwrap();
        let mut b = enumerate_triangulations(&p, &ExactConfig { seed: SeedOrder::ReverseLexicographic, ..Default::default() }).unwrap();
        for t in &a {
            prop_assert_eq!(t.edges.len(), 3 * n - 3 - h);
            prop_assert_eq!(t.faces(&p).len(), 2 * n - 2 - h);
        }
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn empty_triangles_are_empty_and_complete(p in point_set(8)) {
        let u = enumerate_empty(&p).unwrap();
        let got: BTreeSet<[Point; 3]> = u.triangles.iter().map(|t| {
            let mut c = u.corners(t).map(|v| v.clone());
            c.sort();
            c
        }).collect();
        let mut want = BTreeSet::new();
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                for k in j + 1..p.len() {
                    let t = (&p[i], &p[j], &p[k]);
                    let Ok(_) = point_in_triangle(&p[i], t) else { continue };
                    if (0..p.len()).filter(|&m| m != i && m != j && m != k)
                        .all(|m| point_in_triangle(&p[m], t).unwrap() == Location::Outside)
                    {
                        let mut c = [p[i].clone(), p[j].clone(), p[k].clone()];
                        c.sort();
                        want.insert(c);
                    }
                }
            }
        }
        prop_assert_eq!(got, want);
    }

    #[test]
    fn cell_count_matches_brute_force(p in point_set(7), cut in 1i64..11) {
        let cell = Region::polygon(vec![
            RatPoint::from_ints(0, 0),
            RatPoint::from_ints(cut, 0),
            RatPoint::from_ints(cut, 11),
            RatPoint::from_ints(0, 11),
        ]).unwrap();
        let inside: Vec<&Point> = p.iter().filter(|v| cell.locate(&v.to_rational()) != Location::Outside).collect();
        let mut segs = Vec::new();
        for i in 0..inside.len() {
            for j in i + 1..inside.len() {
                let (a, b) = (inside[i], inside[j]);
                let blocked = p.iter().any(|c| in_segment_interior(c, a, b));
                if !blocked && cell.contains_segment(&a.to_rational(), &b.to_rational()) {
                    segs.push((a, b));
                }
            }
        }
        let clash: Vec<u64> = segs.iter().map(|&(a, b)| {
            segs.iter().enumerate().fold(0u64, |m, (k, &(c, d))| {
                if (a, b) != (c, d) && !classify_segments(a, b, c, d).is_compatible() { m | 1 << k } else { m }
            })
        }).collect();
        let want = maximal_independent_sets(&clash, 0, 0, 0);
        let counted = count_maximal_in_cell(&cell, &p, &ExactConfig::default()).unwrap();
        prop_assert_eq!(counted, BigUint::from(want));
        let mut accepted = BTreeSet::new();
        for t in enumerate_triangulations(&p, &ExactConfig::default()).unwrap() {
            let f = maximal_fragment(&t, &cell, &p);
            if is_maximal_in_cell(&f, &cell, &p).unwrap() {
                accepted.insert(f.edges);
            }
        }
        prop_assert_eq!(accepted.len() as u64, want);
    }

    #[test]
    fn dp_saturates_to_exact(p in point_set(8)) {
        for family in [CellFamily::BinaryCut, CellFamily::TriQuad] {
            let cfg = DpConfig { delta: p.len().max(3), family, ..Default::default() };
            prop_assert_eq!(approx_count(&p, &cfg).unwrap().count, exact(&p));
        }
    }

    #[test]
    fn dp_table_replays(p in point_set(10), delta in 3usize..6) {
        let cfg = DpConfig { delta, family: CellFamily::BinaryCut, ..Default::default() };
        let r = approx_count(&p, &cfg).unwrap();
        prop_assert!(r.table.replay().is_ok());
        for (q, e) in r.table.iter() {
            if let EntrySource::Recurrence(ps) = &e.source {
                for part in ps {
                    prop_assert!(verify_partition(&r.catalog, q, part).is_ok());
                }
            }
        }
        let again = approx_count(&p, &cfg).unwrap();
        prop_assert_eq!(r.count, again.count);
    }

    #[test]
    fn larger_catalog_never_counts_less(p in point_set(6)) {
        let small = DpConfig { k: 3, delta: 3, family: CellFamily::TriQuad, ..Default::default() };
        let large = DpConfig { k: 4, ..small.clone() };
        let a = approx_count(&p, &small).unwrap().count;
        let b = approx_count(&p, &large).unwrap().count;
        prop_assert!(a <= b, "{} > {}", a, b);
    }

    #[test]
    fn base_reproduces_count(count in 1u64..u64::MAX, n in 3usize..40, eps in 0.01f64..0.49) {
        let c = BigUint::from(count);
        let e = estimate_base(&c, n, eps).unwrap();
        let back = e.base.powi(n as i32);
        prop_assert!(((back - count as f64) / count as f64).abs() < 1e-9);
        prop_assert!(e.lower <= e.base && e.base <= e.upper);
        let tighter = estimate_base(&c, n, eps / 2.0).unwrap();
        prop_assert!(tighter.lower >= e.lower && tighter.upper <= e.upper);
    }

    #[test]
    fn round_trip_files(p in point_set(15)) {
        prop_assert_eq!(parse(&write_text(&p)).unwrap(), p.clone());
        prop_assert_eq!(parse(&write_json(&p)).unwrap(), p);
    }

    #[test]
    fn cut_weights_partition_total(
        weights in prop::collection::vec(1i64..20, 3..7),
        x0 in -1i64..20, w in 1i64..20, y0 in -2i64..3, h in 1i64..4,
        scale in 1i64..9,
    ) {
        let tris: Vec<WeightedTriangle> = weights.iter().enumerate().map(|(i, &wt)| WeightedTriangle {
            corners: [RatPoint::from_ints(3 * i as i64, 0), RatPoint::from_ints(3 * i as i64 + 2, 0), RatPoint::from_ints(3 * i as i64, 1)],
            weight: Rational::from_integer(wt.into()),
        }).collect();
        let cut = CutPolygon::new(vec![
            RatPoint::from_ints(x0, y0), RatPoint::from_ints(x0 + w, y0),
            RatPoint::from_ints(x0 + w, y0 + h), RatPoint::from_ints(x0, y0 + h),
        ]).unwrap();
        let alpha = Rational::new(1.into(), 3.into());
        let r = verify_cut(&cut, &tris, &alpha, 4).unwrap();
        prop_assert_eq!(&r.destroyed + &r.inside + &r.outside, Rational::one());
        prop_assert!(r.sides.iter().all(|s| *s != TriangleSide::Inside || !r.inside.is_zero()));
        let scaled: Vec<WeightedTriangle> = tris.iter().map(|t| WeightedTriangle {
            corners: t.corners.clone(),
            weight: &t.weight * Rational::from_integer(scale.into()),
        }).collect();
        prop_assert_eq!(verify_cut(&cut, &scaled, &alpha, 4).unwrap().verdict(), r.verdict());
    }
}
