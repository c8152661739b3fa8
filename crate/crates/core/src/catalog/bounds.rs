//! Schönhage's constant and the bounds on `f(k)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::LabError;
use crate::interval::{fixed_certified, ln2, ln_enclosure, log2_enclosure, Interval};

/// `C_s`, certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsEnclosure {
    pub precision: u32,
    pub interval: Interval,
    /// Series terms summed before the tail bound takes over.
    pub series_terms: u32,
}

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as u64)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as u64)
    }
}

/// Exponent of the series term `2^(1 - 6 * 2^k)`.
fn term_exponent(k: u32) -> i64 {
    1 - 6 * (1i64 << k)
}

/// `log2(1 + 2^(1 - 6 * 2^k))`.
pub fn cs_series_term(k: u32, bits: u64) -> Interval {
    log2_enclosure(&(BigRational::one() + pow2(term_exponent(k))), bits)
}

/// `log2` of every point in a positive interval.
fn log2_interval(x: &Interval, bits: u64) -> Interval {
    Interval::new(
        log2_enclosure(x.lo(), bits).lo().clone(),
        log2_enclosure(x.hi(), bits).hi().clone(),
    )
}

/// `C_s = 2/3 + (2/3) log2 3 - 1/ln 2 - log2 ln(4/3) + sum_k log2(1 + 2^(1 - 6 2^k))`
/// enclosed in an interval of width at most `2^(2 - precision)`.
pub fn compute_cs(precision: u32) -> Result<CsEnclosure, LabError> {
    if precision < 16 {
        return Err(LabError::PrecisionTooLow(precision));
    }
    let target_width = pow2(2 - i64::from(precision));
    let mut bits = u64::from(precision) + 16;
    loop {
        let two_thirds = Interval::point(q(2, 3));
        let mut total = two_thirds.add(&two_thirds.mul(&log2_enclosure(&q(3, 1), bits)));
        total = total.sub(&ln2(bits).recip());
        total = total.sub(&log2_interval(&ln_enclosure(&q(4, 3), bits), bits));

        // Terms shrink doubly exponentially; stop once the next is tiny.
        let cutoff = -(bits as i64) - 8;
        let mut k = 0u32;
        while term_exponent(k) >= cutoff {
            total = total.add(&cs_series_term(k, bits));
            k += 1;
        }
        // sum_{j >= k} log2(1 + x_j) <= sum x_j / ln 2 <= 2 x_k / ln 2 < 3 x_k.
        let tail = Interval::new(q(0, 1), q(3, 1) * pow2(term_exponent(k)));
        let interval = total.add(&tail).round_out(u64::from(precision));
        if interval.width() <= target_width {
            if !interval.within(&q(0, 1), &q(213, 100)) {
                return Err(LabError::PrecisionTooLow(precision));
            }
            return Ok(CsEnclosure {
                precision,
                interval,
                series_terms: k,
            });
        }
        bits += 32;
    }
}

/// The lower end of the `f(k)` bracket.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FLowerBound {
    /// `f(k) = value`.
    Exact { value: u64 },
    /// `value < f(k)`.
    Strict { value: u64 },
    /// `log2(arg) - 2.13 < f(k)`.
    LogMinusBound { arg: u64 },
}

impl FLowerBound {
    pub fn expression(&self) -> String {
        match self {
            FLowerBound::Exact { value } | FLowerBound::Strict { value } => value.to_string(),
            FLowerBound::LogMinusBound { arg } => format!("log2({arg}) - 2.13"),
        }
    }

    pub fn enclosure(&self, bits: u64) -> Interval {
        match self {
            FLowerBound::Exact { value } | FLowerBound::Strict { value } => Interval::from_integer(*value as i64),
            FLowerBound::LogMinusBound { arg } => {
                log2_enclosure(&q(*arg as i64, 1), bits).sub(&Interval::point(q(213, 100)))
            }
        }
    }

    pub fn to_fixed(&self, places: usize) -> String {
        match self {
            FLowerBound::Exact { value } | FLowerBound::Strict { value } => {
                fixed_certified(Some(&q(*value as i64, 1)), |_| unreachable!(), places)
            }
            FLowerBound::LogMinusBound { .. } => fixed_certified(None, |bits| self.enclosure(bits), places),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FBoundsReport {
    pub k: u64,
    pub lower: FLowerBound,
    /// `f(k) <= upper`.
    pub upper: u64,
    pub exact: bool,
}

/// Known bracket for the `omega^k`-th defect `f(k)` (stable or not).
pub fn f_bounds(k: u64) -> FBoundsReport {
    let lower = match k {
        0..=2 => FLowerBound::Exact { value: k },
        3..=7 => FLowerBound::Strict { value: 2 },
        8..=33 => FLowerBound::Strict { value: 3 },
        _ => FLowerBound::LogMinusBound { arg: k + 1 },
    };
    FBoundsReport {
        k,
        exact: matches!(lower, FLowerBound::Exact { .. }),
        lower,
        upper: k,
    }
}
