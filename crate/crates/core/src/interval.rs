//! Closed rational intervals with outward dyadic rounding, and certified
//! enclosures of natural and binary logarithms.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_integer(x: i64) -> Self {
        Self::point(BigRational::from_integer(x.into()))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// `self` lies inside `[lo, hi]`.
    pub fn within(&self, lo: &BigRational, hi: &BigRational) -> bool {
        lo <= &self.lo && &self.hi <= hi
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    /// Panics if the interval contains zero.
    pub fn recip(&self) -> Interval {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "reciprocal of an interval containing zero"
        );
        Interval::new(self.hi.recip(), self.lo.recip())
    }

    pub fn div(&self, other: &Interval) -> Interval {
        self.mul(&other.recip())
    }

    /// Widens both endpoints to multiples of `2^-bits`.
    pub fn round_out(&self, bits: u64) -> Interval {
        let scale = BigInt::one() << bits;
        let lo = (&self.lo * &scale).floor() / &scale;
        let hi = (&self.hi * &scale).ceil() / &scale;
        Interval { lo, hi }
    }

    /// Compares every point of `self` with every point of `other`; `None`
    /// when they overlap.
    pub fn certainly_cmp(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fixed_rational(&self.lo, 12), fixed_rational(&self.hi, 12))
    }
}

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `2 atanh(z)` for `0 <= z <= 1/3`, to within `2^-bits`.
fn two_atanh(z: &BigRational, bits: u64) -> Interval {
    let z2 = z * z;
    let tolerance = ratio(1, BigInt::one() << (bits + 2));
    let mut power = z.clone();
    let mut sum = BigRational::zero();
    let mut k = 0u64;
    loop {
        let denom = BigInt::from(2 * k + 1);
        sum += &power / &denom;
        power *= &z2;
        k += 1;
        // Remaining terms are at most z^(2k+1) / ((2k+1) (1 - z^2)).
        let tail = &power / (BigRational::from_integer(BigInt::from(2 * k + 1)) * (BigRational::one() - &z2));
        if tail <= tolerance || power.is_zero() {
            let two = BigRational::from_integer(2.into());
            return Interval::new(&sum * &two, (sum + tail) * two).round_out(bits + 1);
        }
    }
}

/// Enclosure of `ln 2` of width at most `2^-bits`.
pub fn ln2(bits: u64) -> Interval {
    two_atanh(&ratio(1, 3), bits + 1)
}

/// `ln y` for `1 <= y < 2`.
fn ln_unit(y: &BigRational, bits: u64) -> Interval {
    let one = BigRational::one();
    let z = (y - &one) / (y + &one);
    two_atanh(&z, bits)
}

/// Splits positive `x` as `2^e * y` with `1 <= y < 2`.
fn binary_split(x: &BigRational) -> (i64, BigRational) {
    assert!(x.is_positive(), "logarithm of a non-positive number");
    let num_bits = x.numer().bits() as i64;
    let den_bits = x.denom().bits() as i64;
    let mut e = num_bits - den_bits;
    let mut y = shift(x, -e);
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    while y < one {
        e -= 1;
        y *= &two;
    }
    while y >= two {
        e += 1;
        y /= &two;
    }
    (e, y)
}

fn shift(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        x * BigRational::from_integer(BigInt::one() << e as u64)
    } else {
        x / BigRational::from_integer(BigInt::one() << (-e) as u64)
    }
}

/// Enclosure of `ln x` for positive rational `x`, width at most about
/// `2^-bits` (scaled by the binary exponent of `x`).
pub fn ln_enclosure(x: &BigRational, bits: u64) -> Interval {
    let (e, y) = binary_split(x);
    let extra = 64 - e.unsigned_abs().leading_zeros() as u64;
    let l2 = ln2(bits + extra + 2);
    let frac = ln_unit(&y, bits + 2);
    l2.mul(&Interval::from_integer(e)).add(&frac).round_out(bits + 2)
}

/// Enclosure of `log2 x` for positive rational `x`.
pub fn log2_enclosure(x: &BigRational, bits: u64) -> Interval {
    let (e, y) = binary_split(x);
    if y.is_one() {
        return Interval::from_integer(e);
    }
    // ln(y)/ln(2) lies in (0, 1); both factors need a few guard bits.
    let frac = ln_unit(&y, bits + 4).div(&ln2(bits + 4));
    Interval::from_integer(e).add(&frac).round_out(bits + 2)
}

/// `log2` of a positive integer.
pub fn log2_integer(n: &BigUint, bits: u64) -> Interval {
    log2_enclosure(&BigRational::from_integer(BigInt::from(n.clone())), bits)
}

/// Nearest integer, ties to even.
pub fn round_half_even(x: &BigRational) -> BigInt {
    let floor = x.floor();
    let diff = x - &floor;
    let half = ratio(1, 2);
    let f = floor.to_integer();
    match diff.cmp(&half) {
        Ordering::Less => f,
        Ordering::Greater => f + 1,
        Ordering::Equal => {
            if f.is_even() {
                f
            } else {
                f + 1
            }
        }
    }
}

fn render_scaled(v: &BigInt, places: usize) -> String {
    let digits = v.abs().to_string();
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (int, frac) = padded.split_at(padded.len() - places);
    let sign = if v.is_negative() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// `x` rounded half-to-even to `places` decimals.
pub fn fixed_rational(x: &BigRational, places: usize) -> String {
    let scale = BigRational::from_integer(BigInt::from(10u32).pow(places as u32));
    render_scaled(&round_half_even(&(x * scale)), places)
}

/// Decimal rendering of a real number known only through enclosures.
/// `exact` short-circuits rational values (where ties can occur); otherwise
/// the value must be irrational, so precision is raised until both ends of
/// the enclosure round to the same decimal.
pub fn fixed_certified(exact: Option<&BigRational>, enclose: impl Fn(u64) -> Interval, places: usize) -> String {
    if let Some(x) = exact {
        return fixed_rational(x, places);
    }
    let scale = BigRational::from_integer(BigInt::from(10u32).pow(places as u32));
    let mut bits = 48 + 4 * places as u64;
    loop {
        let iv = enclose(bits);
        let lo = round_half_even(&(iv.lo() * &scale));
        let hi = round_half_even(&(iv.hi() * &scale));
        if lo == hi {
            return render_scaled(&lo, places);
        }
        bits *= 2;
        assert!(bits < 1 << 20, "decimal rendering did not converge");
    }
}
