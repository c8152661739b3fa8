//! Bit-level helpers over arbitrary-precision integers.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::LabError;

/// Summary of a positive integer's binary expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitProfile {
    pub n: BigUint,
    /// Number of 1 bits (Hamming weight).
    pub ones: u64,
    /// Position of the highest set bit.
    pub floor_log2: u64,
}

impl BitProfile {
    pub fn of(n: &BigUint) -> Result<Self, LabError> {
        Ok(BitProfile {
            n: n.clone(),
            ones: ones_count(n)?,
            floor_log2: floor_log2(n)?,
        })
    }
}

/// Hamming weight of `n`. Rejects zero.
pub fn ones_count(n: &BigUint) -> Result<u64, LabError> {
    if n.is_zero() {
        return Err(LabError::ZeroTarget);
    }
    Ok(n.count_ones())
}

/// Largest `e` with `2^e <= n`. Rejects zero.
pub fn floor_log2(n: &BigUint) -> Result<u64, LabError> {
    if n.is_zero() {
        return Err(LabError::ZeroTarget);
    }
    Ok(n.bits() - 1)
}

/// Smallest `e` with `2^e >= n`. Rejects zero.
pub fn ceil_log2(n: &BigUint) -> Result<u64, LabError> {
    let f = floor_log2(n)?;
    Ok(if is_power_of_two(n) { f } else { f + 1 })
}

pub fn is_power_of_two(n: &BigUint) -> bool {
    !n.is_zero() && n.count_ones() == 1
}

/// `n` with all factors of two removed, together with the number removed.
pub fn odd_part(n: &BigUint) -> (BigUint, u64) {
    match n.trailing_zeros() {
        Some(tz) => (n >> tz, tz),
        None => (BigUint::zero(), 0),
    }
}

/// Set-bit positions of `n`, ascending.
pub fn exponents(n: &BigUint) -> Vec<u64> {
    (0..n.bits()).filter(|&i| n.bit(i)).collect()
}

// u64 fast paths used by the search engine.

pub(crate) fn floor_log2_u64(n: u64) -> u32 {
    debug_assert!(n > 0);
    63 - n.leading_zeros()
}

pub(crate) fn ceil_log2_u64(n: u64) -> u32 {
    if n.is_power_of_two() {
        floor_log2_u64(n)
    } else {
        floor_log2_u64(n) + 1
    }
}
