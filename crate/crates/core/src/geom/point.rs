use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::scalar::{ExactField, Scalar};
use crate::Error;

/// A point in the plane. Ordering is lexicographic on `(x, y)`, which is
/// also the order of points along any non-degenerate line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point2<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn to_rational(&self) -> Point2<BigRational> {
        Point2::new(self.x.to_rational(), self.y.to_rational())
    }

    pub fn sub(&self, other: &Self) -> (T, T) {
        (self.x.clone() - other.x.clone(), self.y.clone() - other.y.clone())
    }
}

impl<T: ExactField> Point2<T> {
    pub fn midpoint(&self, other: &Self) -> Self {
        let two = T::one() + T::one();
        Point2::new(
            (self.x.clone() + other.x.clone()) / two.clone(),
            (self.y.clone() + other.y.clone()) / two,
        )
    }

    /// `self + t * (other - self)`.
    pub fn lerp(&self, other: &Self, t: &T) -> Self {
        Point2::new(
            self.x.clone() + t.clone() * (other.x.clone() - self.x.clone()),
            self.y.clone() + t.clone() * (other.y.clone() - self.y.clone()),
        )
    }
}

impl Point2<BigInt> {
    pub fn from_i64(x: i64, y: i64) -> Self {
        Point2::new(BigInt::from(x), BigInt::from(y))
    }
}

impl Point2<BigRational> {
    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    /// Parses `"p/q"` or `"p"` coordinates.
    pub fn parse(x: &str, y: &str) -> Result<Self, Error> {
        Ok(Point2::new(parse_rational(x)?, parse_rational(y)?))
    }
}

impl<T: fmt::Display> fmt::Display for Point2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `"p/q"` in lowest terms, or `"p"` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A closed segment with distinct endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment2<T> {
    a: Point2<T>,
    b: Point2<T>,
}

impl<T: Scalar> Segment2<T> {
    pub fn new(a: Point2<T>, b: Point2<T>) -> Result<Self, Error> {
        if a == b {
            return Err(Error::InvalidInput(
                "segment endpoints must be distinct".into(),
            ));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &Point2<T> {
        &self.a
    }

    pub fn b(&self) -> &Point2<T> {
        &self.b
    }
}
