//! Exhaustive count of maximal non-crossing edge sets. Shares nothing with
//! the flip traversal except the geometric predicates.

use num_bigint::BigUint;

use crate::geom::{all_collinear, in_segment_interior, segments_cross, Point2, Scalar, Segment2};
use crate::{Error, Result};

pub const ORACLE_MAX_POINTS: usize = 12;

pub fn brute_force_oracle<T: Scalar>(points: &[Point2<T>]) -> Result<BigUint> {
    if points.len() > ORACLE_MAX_POINTS {
        return Err(Error::CapacityExceeded {
            what: "oracle point count",
            limit: ORACLE_MAX_POINTS,
        });
    }
    crate::empty::validate_points(points)?;
    if all_collinear(points) {
        return Err(Error::NoTriangulation);
    }
    let n = points.len();
    let mut segs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !points.iter().any(|p| in_segment_interior(p, &points[i], &points[j])) {
                segs.push(Segment2::new(points[i].clone(), points[j].clone())?);
            }
        }
    }
    // At most C(12, 2) = 66 segments, so one u128 holds any subset.
    let m = segs.len();
    let mut clash = vec![0u128; m];
    for a in 0..m {
        for b in 0..m {
            if a != b && !segments_cross(&segs[a], &segs[b]).is_compatible() {
                clash[a] |= 1 << b;
            }
        }
    }
    let mut search = Search {
        clash,
        count: 0,
    };
    let all = if m == 128 { u128::MAX } else { (1u128 << m) - 1 };
    search.run(0, 0, 0, all);
    Ok(BigUint::from(search.count))
}

struct Search {
    clash: Vec<u128>,
    count: u64,
}

impl Search {
    /// Decides segment `idx` given the chosen and rejected sets; `open` holds
    /// the undecided segments.
    fn run(&mut self, idx: usize, chosen: u128, rejected: u128, open: u128) {
        // Every rejected segment must still be blockable by a chosen or
        // still-available segment.
        let available = {
            let mut blocked = 0u128;
            let mut c = chosen;
            while c != 0 {
                let b = c.trailing_zeros() as usize;
                c &= c - 1;
                blocked |= self.clash[b];
            }
            open & !blocked
        };
        let mut r = rejected;
        while r != 0 {
            let b = r.trailing_zeros() as usize;
            r &= r - 1;
            if self.clash[b] & (chosen | available) == 0 {
                return;
            }
        }
        if idx == self.clash.len() {
            self.count += 1;
            return;
        }
        let bit = 1u128 << idx;
        let open = open & !bit;
        if self.clash[idx] & chosen == 0 {
            self.run(idx + 1, chosen | bit, rejected, open);
        }
        self.run(idx + 1, chosen, rejected | bit, open);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<Point2<i64>> {
        v.iter().map(|&(x, y)| Point2::new(x, y)).collect()
    }

    #[test]
    fn examples() {
        let pentagon = pts(&[(0, 0), (4, 0), (6, 3), (2, 6), (-2, 3)]);
        assert_eq!(brute_force_oracle(&pentagon).unwrap(), BigUint::from(5u32));
        let fan = pts(&[(0, 0), (4, 0), (0, 4), (1, 1)]);
        assert_eq!(brute_force_oracle(&fan).unwrap(), BigUint::from(1u32));
        let hexagon: Vec<_> = (0..6).map(|i| Point2::new(i, i * i)).collect();
        assert_eq!(brute_force_oracle(&hexagon).unwrap(), BigUint::from(14u32));
    }

    #[test]
    fn cap() {
        let many: Vec<_> = (0..13).map(|i| Point2::new(i, i * i)).collect();
        assert!(matches!(
            brute_force_oracle(&many),
            Err(Error::CapacityExceeded { .. })
        ));
    }
}
