//! Addition chains, validation, and the binary method.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::bits::{floor_log2, ones_count};
use crate::class::ChainClass;
use crate::error::LabError;

/// Why a sequence failed validation. Every variant except `Empty` carries the
/// first offending index.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("empty sequence")]
    Empty,
    #[error("chain must start at 1")]
    BadStart,
    #[error("element at index {index} does not exceed its predecessor")]
    NotIncreasing { index: usize },
    #[error("element at index {index} is not a sum of two earlier elements")]
    NotASum { index: usize },
    #[error("step at index {index} is an addition step but violates the {class} class")]
    ClassViolation { index: usize, class: String },
}

impl ChainError {
    pub fn index(&self) -> Option<usize> {
        match *self {
            ChainError::Empty => None,
            ChainError::BadStart => Some(0),
            ChainError::NotIncreasing { index }
            | ChainError::NotASum { index }
            | ChainError::ClassViolation { index, .. } => Some(index),
        }
    }

    /// Structural failures break the addition-chain definition itself; the
    /// remaining variant is a valid chain outside the requested class.
    pub fn is_structural(&self) -> bool {
        !matches!(self, ChainError::ClassViolation { .. })
    }
}

/// A strictly increasing addition chain `1 = a_0 < ... < a_r = n` that has
/// been validated against its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditionChain {
    elements: Vec<BigUint>,
    class: String,
}

impl AdditionChain {
    pub fn new(elements: Vec<BigUint>, class: &ChainClass) -> Result<Self, ChainError> {
        validate_chain(&elements, class)?;
        Ok(AdditionChain {
            elements,
            class: class.tag().to_string(),
        })
    }

    pub fn from_u64(elements: &[u64], class: &ChainClass) -> Result<Self, ChainError> {
        Self::new(elements.iter().map(|&x| BigUint::from(x)).collect(), class)
    }

    pub fn elements(&self) -> &[BigUint] {
        &self.elements
    }

    pub fn target(&self) -> &BigUint {
        self.elements.last().expect("validated chains are nonempty")
    }

    /// Number of steps.
    pub fn length(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn class_tag(&self) -> &str {
        &self.class
    }
}

impl fmt::Display for AdditionChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// Checks the addition-chain invariants and the class predicate, step by
/// step, and reports the first offending index.
pub fn validate_chain(elements: &[BigUint], class: &ChainClass) -> Result<(), ChainError> {
    let first = elements.first().ok_or(ChainError::Empty)?;
    if !first.is_one() {
        return Err(ChainError::BadStart);
    }
    let target = elements.last().unwrap();
    let mut seen: HashSet<&BigUint> = HashSet::with_capacity(elements.len());
    seen.insert(first);
    for k in 1..elements.len() {
        let next = &elements[k];
        if next <= &elements[k - 1] {
            return Err(ChainError::NotIncreasing { index: k });
        }
        let is_sum = elements[..k]
            .iter()
            .any(|x| x <= next && seen.contains(&(next - x)));
        if !is_sum {
            return Err(ChainError::NotASum { index: k });
        }
        if !class.accepts(&elements[..k], next, target) {
            return Err(ChainError::ClassViolation {
                index: k,
                class: class.tag().to_string(),
            });
        }
        seen.insert(next);
    }
    Ok(())
}

/// Left-to-right binary method: double at every bit below the leading one,
/// and add 1 after doubling at every set bit.
pub fn binary_chain(n: &BigUint) -> Result<AdditionChain, LabError> {
    let top = floor_log2(n)?;
    let mut elements = vec![BigUint::one()];
    let mut x = BigUint::one();
    for bit in (0..top).rev() {
        x <<= 1u32;
        elements.push(x.clone());
        if n.bit(bit) {
            x += 1u32;
            elements.push(x.clone());
        }
    }
    Ok(AdditionChain {
        elements,
        class: ChainClass::Binary.tag().to_string(),
    })
}

/// `floor(log2 n) + ones(n) - 1`.
pub fn binary_length(n: &BigUint) -> Result<u64, LabError> {
    Ok(floor_log2(n)? + ones_count(n)? - 1)
}

pub(crate) fn binary_chain_u64(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    if n == 0 {
        return out;
    }
    let mut x = 1u64;
    for bit in (0..crate::bits::floor_log2_u64(n)).rev() {
        x <<= 1;
        out.push(x);
        if n >> bit & 1 == 1 {
            x += 1;
            out.push(x);
        }
    }
    out
}

pub(crate) fn binary_length_u64(n: u64) -> u32 {
    crate::bits::floor_log2_u64(n) + n.count_ones() - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(xs: &[u64]) -> Vec<BigUint> {
        xs.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(validate_chain(&seq(&[1, 2, 3, 4, 7]), &ChainClass::All), Ok(()));

        let err = validate_chain(&seq(&[1, 2, 6]), &ChainClass::All).unwrap_err();
        assert_eq!(err, ChainError::NotASum { index: 2 });
        assert!(err.is_structural());

        let err = validate_chain(&seq(&[1, 2, 4, 5, 8]), &ChainClass::Star).unwrap_err();
        assert_eq!(err.index(), Some(4));
        assert!(!err.is_structural());
        assert_eq!(validate_chain(&seq(&[1, 2, 4, 5, 8]), &ChainClass::All), Ok(()));
    }

    #[test]
    fn structural_failures() {
        assert_eq!(validate_chain(&[], &ChainClass::All), Err(ChainError::Empty));
        assert_eq!(
            validate_chain(&seq(&[2, 4]), &ChainClass::All),
            Err(ChainError::BadStart)
        );
        assert_eq!(
            validate_chain(&seq(&[1, 2, 2, 4]), &ChainClass::All),
            Err(ChainError::NotIncreasing { index: 2 })
        );
        assert_eq!(validate_chain(&seq(&[1]), &ChainClass::All), Ok(()));
    }

    #[test]
    fn doubling_steps_allowed() {
        assert_eq!(validate_chain(&seq(&[1, 2, 4, 8]), &ChainClass::Star), Ok(()));
    }

    #[test]
    fn binary_chain_examples() {
        let c = binary_chain(&BigUint::from(4u32)).unwrap();
        assert_eq!(c.elements(), seq(&[1, 2, 4]).as_slice());
        let c = binary_chain(&BigUint::from(7u32)).unwrap();
        assert_eq!(c.elements(), seq(&[1, 2, 3, 6, 7]).as_slice());
        assert_eq!(c.length(), 4);
        assert_eq!(binary_chain(&BigUint::from(15u32)).unwrap().length(), 6);
        assert_eq!(c.to_string(), "(1,2,3,6,7)");
    }

    #[test]
    fn binary_chain_matches_bound_and_is_star() {
        for n in 1u64..=(1 << 16) {
            let big = BigUint::from(n);
            let chain = binary_chain(&big).unwrap();
            assert_eq!(validate_chain(chain.elements(), &ChainClass::Star), Ok(()));
            assert_eq!(validate_chain(chain.elements(), &ChainClass::Binary), Ok(()));
            assert_eq!(chain.length() as u64, binary_length(&big).unwrap());
            assert_eq!(chain.target(), &big);
            if n < 2048 {
                assert_eq!(binary_chain_u64(n), seq_to_u64(chain.elements()));
            }
        }
    }

    #[test]
    fn binary_class_rejects_other_chains() {
        let err = validate_chain(&seq(&[1, 2, 3, 4, 7]), &ChainClass::Binary).unwrap_err();
        assert_eq!(err.index(), Some(3));
    }

    fn seq_to_u64(xs: &[BigUint]) -> Vec<u64> {
        xs.iter().map(|x| u64::try_from(x).unwrap()).collect()
    }
}
