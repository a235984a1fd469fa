pub mod geom;

mod error;

pub use error::{Error, Result};

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Integer = BigInt;
pub type Rational = BigRational;
/// An input point with integer coordinates.
pub type Point = geom::Point2<Integer>;
/// An exact rational point (DP points, cell vertices).
pub type RatPoint = geom::Point2<Rational>;
pub type Segment = geom::Segment2<Rational>;
pub type Polygon = geom::Region<Rational>;

pub mod empty;
pub mod exact;
pub mod dp;
pub mod approx;
pub mod base;
pub mod cut;
pub mod pointset;
