//! Exact values of the form `c - log2(m / 2^scale)`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bits::odd_part;
use crate::error::LabError;
use crate::interval::{fixed_certified, log2_integer, Interval};

/// `c - log2(m / 2^scale)`, i.e. `c + scale - log2 m`.
///
/// Equality, ordering and hashing are by value. Two encodings are equal iff
/// they agree after stripping factors of two from `m` into the integer part.
#[derive(Debug, Clone)]
pub struct ExactLogValue {
    c: i64,
    m: BigUint,
    scale: u64,
}

/// Wire form: `m` as a decimal string so any size survives JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogValueEncoding {
    pub c: i64,
    pub m: String,
    pub scale: u64,
}

impl ExactLogValue {
    pub fn new(c: i64, m: BigUint, scale: u64) -> Result<Self, LabError> {
        if m.is_zero() {
            return Err(LabError::InvalidArgument("logarithm argument must be positive".into()));
        }
        Ok(ExactLogValue { c, m, scale })
    }

    pub fn integer(c: i64) -> Self {
        ExactLogValue {
            c,
            m: BigUint::one(),
            scale: 0,
        }
    }

    /// `length - log2 n`.
    pub fn defect(length: u64, n: &BigUint) -> Result<Self, LabError> {
        Self::new(length as i64, n.clone(), 0)
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn m(&self) -> &BigUint {
        &self.m
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    /// `(t, o)` with `o` odd and value `t - log2 o`.
    pub fn normalized(&self) -> (i128, BigUint) {
        let (odd, twos) = odd_part(&self.m);
        (i128::from(self.c) + i128::from(self.scale) - i128::from(twos), odd)
    }

    pub fn is_integer(&self) -> bool {
        self.normalized().1.is_one()
    }

    /// The values differ by an integer.
    pub fn congruent_mod_one(&self, other: &ExactLogValue) -> bool {
        self.normalized().1 == other.normalized().1
    }

    /// `self - other` when it is an integer.
    pub fn integer_gap(&self, other: &ExactLogValue) -> Option<i128> {
        let (t1, o1) = self.normalized();
        let (t2, o2) = other.normalized();
        (o1 == o2).then_some(t1 - t2)
    }

    pub fn add_integer(&self, k: i64) -> ExactLogValue {
        ExactLogValue {
            c: self.c + k,
            m: self.m.clone(),
            scale: self.scale,
        }
    }

    /// Smallest integer not below the value.
    pub fn ceil(&self) -> i128 {
        let (t, odd) = self.normalized();
        if odd.is_one() {
            t
        } else {
            // log2 of an odd number above 1 is never an integer.
            t - i128::from(odd.bits() - 1)
        }
    }

    pub fn floor(&self) -> i128 {
        let (t, odd) = self.normalized();
        if odd.is_one() {
            t
        } else {
            t - i128::from(odd.bits())
        }
    }

    /// Exact comparison with a rational `r`.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        let (t, odd) = self.normalized();
        let p = r.numer();
        let q = r.denom();
        // value ~ p/q  <=>  q t - p ~ q log2(odd)  <=>  2^(q t - p) ~ odd^q
        let lhs_exp = BigInt::from(t) * q - p;
        if odd.is_one() {
            return lhs_exp.cmp(&BigInt::zero());
        }
        if !lhs_exp.is_positive() {
            return Ordering::Less;
        }
        let q_small = q.to_u32().expect("threshold denominator fits in 32 bits");
        let rhs = odd.pow(q_small);
        let e = lhs_exp.to_u64().expect("threshold exponent fits in 64 bits");
        if e > rhs.bits() {
            return Ordering::Greater;
        }
        (BigUint::one() << e).cmp(&rhs)
    }

    pub fn le_rational(&self, r: &BigRational) -> bool {
        self.cmp_rational(r) != Ordering::Greater
    }

    /// Certified enclosure of width about `2^-bits`.
    pub fn enclosure(&self, bits: u64) -> Interval {
        let (t, odd) = self.normalized();
        let t = BigRational::from_integer(BigInt::from(t));
        Interval::point(t).sub(&log2_integer(&odd, bits))
    }

    /// Display-only approximation.
    pub fn approx(&self) -> f64 {
        let iv = self.enclosure(64);
        let mid = (iv.lo() + iv.hi()) / BigRational::from_integer(2.into());
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering, round half to even.
    pub fn to_fixed(&self, places: usize) -> String {
        let (t, odd) = self.normalized();
        let exact = odd.is_one().then(|| BigRational::from_integer(BigInt::from(t)));
        fixed_certified(exact.as_ref(), |bits| self.enclosure(bits), places)
    }

    pub fn encoding(&self) -> LogValueEncoding {
        LogValueEncoding {
            c: self.c,
            m: self.m.to_string(),
            scale: self.scale,
        }
    }

    pub fn from_encoding(enc: &LogValueEncoding) -> Result<Self, LabError> {
        let m: BigUint = enc
            .m
            .parse()
            .map_err(|_| LabError::InvalidArgument(format!("bad logarithm argument {:?}", enc.m)))?;
        Self::new(enc.c, m, enc.scale)
    }
}

impl PartialEq for ExactLogValue {
    fn eq(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }
}

impl Eq for ExactLogValue {}

impl Hash for ExactLogValue {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.normalized().hash(state);
    }
}

impl PartialOrd for ExactLogValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactLogValue {
    /// `t1 - log2 o1 < t2 - log2 o2  <=>  2^t1 o2 < 2^t2 o1`.
    fn cmp(&self, other: &Self) -> Ordering {
        let (t1, o1) = self.normalized();
        let (t2, o2) = other.normalized();
        let shift = (t1 - t2).unsigned_abs();
        let shift = u64::try_from(shift).expect("exponent gap fits in 64 bits");
        if t1 >= t2 {
            (o2 << shift).cmp(&o1)
        } else {
            o2.cmp(&(o1 << shift))
        }
    }
}

impl fmt::Display for ExactLogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_fixed(6))
    }
}
