use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// An exactly represented, totally ordered coordinate type.
///
/// Every geometric decision in the crate goes through this trait, so it is
/// only implemented for exact types: machine and big integers and their
/// rationals. Floating point types are excluded on purpose (they are not
/// `Ord`).
pub trait Scalar: Clone + Debug + Ord + Hash + Num + Signed + Send + Sync + 'static {
    fn to_rational(&self) -> BigRational;

    /// A double within relative error `2^-52` of the value, or `None` when
    /// no such double exists (overflow, underflow).
    fn approx_f64(&self) -> Option<f64>;
}

fn normal(v: Option<f64>, zero: bool) -> Option<f64> {
    let v = v?;
    if zero {
        Some(0.0)
    } else if v.is_normal() {
        Some(v)
    } else {
        None
    }
}

/// A [`Scalar`] with exact division, needed for intersection points and
/// midpoints.
pub trait ExactField: Scalar + std::ops::Div<Output = Self> {
    fn from_rational(r: &BigRational) -> Self;
}

macro_rules! int_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn to_rational(&self) -> BigRational {
                BigRational::from_integer(BigInt::from(*self))
            }

            fn approx_f64(&self) -> Option<f64> {
                Some(*self as f64)
            }
        }
    )*};
}

int_scalar!(i32, i64, i128);

impl Scalar for BigInt {
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }

    fn approx_f64(&self) -> Option<f64> {
        normal(self.to_f64(), self.is_zero())
    }
}

impl Scalar for BigRational {
    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn approx_f64(&self) -> Option<f64> {
        normal(self.to_f64(), self.is_zero())
    }
}

impl ExactField for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
}

macro_rules! small_ratio {
    ($($t:ty),*) => {$(
        impl Scalar for Ratio<$t> {
            fn to_rational(&self) -> BigRational {
                BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }

            fn approx_f64(&self) -> Option<f64> {
                normal(self.to_f64(), self.is_zero())
            }
        }

        impl ExactField for Ratio<$t> {
            /// Panics when `r` does not fit the machine width.
            fn from_rational(r: &BigRational) -> Self {
                let n: $t = r.numer().try_into().expect("numerator out of range");
                let d: $t = r.denom().try_into().expect("denominator out of range");
                Ratio::new(n, d)
            }
        }
    )*};
}

small_ratio!(i64, i128);
