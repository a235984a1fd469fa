//! From a triangulation count to the per-point base `count^(1/n)`.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// Digits of the integer-root cross-check.
pub const CHECK_DIGITS: u32 = 12;
/// Largest `n` for which the integer-root cross-check runs.
pub const CHECK_MAX_N: usize = 4096;

/// `log2(x)` to double precision for arbitrarily large `x > 0`.
pub fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").log2();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("64 bits").log2() + shift as f64
}

pub(crate) fn as_decimal<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BaseEstimate {
    pub base: f64,
    pub lower: f64,
    pub upper: f64,
    pub epsilon_used: f64,
    pub n: usize,
    /// `floor(base * 10^12)` from an exact integer root, when computed.
    pub integer_root_check: Option<String>,
    pub note: &'static str,
}

pub fn estimate_base(count: &BigUint, n: usize, epsilon: f64) -> Result<BaseEstimate> {
    if count.is_zero() {
        return Err(Error::UndefinedBase);
    }
    if n < 3 {
        return Err(Error::InvalidInput(format!("n must be at least 3, got {n}")));
    }
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::InvalidInput(format!("epsilon must lie in (0, 1/2), got {epsilon}")));
    }
    let base = (log2_biguint(count) / n as f64).exp2();
    let mut check = None;
    if n <= CHECK_MAX_N {
        let scaled = count * BigUint::from(10u32).pow(CHECK_DIGITS * n as u32);
        let root = scaled.nth_root(n as u32);
        let from_root = root.to_f64().expect("small") / 10f64.powi(CHECK_DIGITS as i32);
        if ((from_root - base) / base).abs() > 1e-9 {
            return Err(Error::InvariantViolation(format!(
                "base {base} disagrees with integer root {from_root}"
            )));
        }
        check = Some(root.to_string());
    }
    let spread = epsilon.exp2();
    Ok(BaseEstimate {
        base,
        lower: base / spread,
        upper: base * spread,
        epsilon_used: epsilon,
        n,
        integer_root_check: check,
        note: "2^eps < 1 + eps for 0 < eps < 1/2, so the brackets are within a factor 1 + eps",
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sanity {
    Ok,
    BelowKnownLower,
    AboveKnownUpper,
}

/// Flags bases outside `[1, 30]`.
pub fn sanity_bounds(base: f64) -> Sanity {
    if base < 1.0 {
        Sanity::BelowKnownLower
    } else if base > 30.0 {
        Sanity::AboveKnownUpper
    } else {
        Sanity::Ok
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let e = estimate_base(&BigUint::from(14u32), 6, 0.1).unwrap();
        assert!((e.base - 14f64.powf(1.0 / 6.0)).abs() < 1e-12);
        assert!((e.base - 1.5524633).abs() < 1e-7);
        assert!(e.lower <= e.base && e.base <= e.upper);
        assert_eq!(estimate_base(&BigUint::from(1u32), 9, 0.2).unwrap().base, 1.0);
        assert!(matches!(
            estimate_base(&BigUint::from(14u32), 6, 0.6),
            Err(Error::InvalidInput(_))
        ));
        assert_eq!(estimate_base(&BigUint::zero(), 6, 0.1), Err(Error::UndefinedBase));
        assert!(estimate_base(&BigUint::from(5u32), 2, 0.1).is_err());
    }

    #[test]
    fn huge_counts() {
        let x = BigUint::from(3u32).pow(5000);
        assert!((log2_biguint(&x) - 5000.0 * 3f64.log2()).abs() < 1e-6);
        let e = estimate_base(&x, 5000, 0.1).unwrap();
        assert!((e.base - 3.0).abs() < 1e-9);
        assert!(e.integer_root_check.is_none());
    }

    #[test]
    fn sanity() {
        assert_eq!(sanity_bounds(8.2), Sanity::Ok);
        assert_eq!(sanity_bounds(35.0), Sanity::AboveKnownUpper);
        assert_eq!(sanity_bounds(0.9), Sanity::BelowKnownLower);
    }
}
