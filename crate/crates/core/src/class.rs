//! Admissible chain classes.
//!
//! A class is a per-step predicate over strictly increasing addition chains.
//! Every class registered here must be admissible: for each `n` it contains a
//! chain no longer than the binary method's, and its shortest length satisfies
//! `len(2n) <= len(n) + 1`. `Custom` lets callers plug in further families
//! (Hansen chains, quasi-star chains, ...) under the same contract.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::chain::binary_chain_u64;
use crate::error::LabError;

/// A user-supplied step predicate for a custom admissible class.
pub trait StepRule: Send + Sync + fmt::Debug {
    /// Stable identifier; used as the cache key.
    fn name(&self) -> &str;

    /// Whether `next` may follow `prefix` in a chain for `target`. `next` is
    /// already known to be a sum of two prefix elements.
    fn accepts(&self, prefix: &[BigUint], next: &BigUint, target: &BigUint) -> bool;

    fn accepts_small(&self, prefix: &[u64], next: u64, target: u64) -> bool {
        let prefix: Vec<BigUint> = prefix.iter().map(|&x| BigUint::from(x)).collect();
        self.accepts(&prefix, &BigUint::from(next), &BigUint::from(target))
    }
}

#[derive(Clone, Debug)]
pub enum ChainClass {
    /// Every addition chain.
    All,
    /// Star chains: each step adds the previous element to some earlier one.
    Star,
    /// Only the left-to-right binary-method chain.
    Binary,
    Custom(Arc<dyn StepRule>),
}

impl ChainClass {
    pub fn tag(&self) -> &str {
        match self {
            ChainClass::All => "all",
            ChainClass::Star => "star",
            ChainClass::Binary => "binary",
            ChainClass::Custom(rule) => rule.name(),
        }
    }

    /// Class predicate for a step that is already a valid addition step.
    pub fn accepts(&self, prefix: &[BigUint], next: &BigUint, target: &BigUint) -> bool {
        match self {
            ChainClass::All => true,
            ChainClass::Star => match prefix.last() {
                Some(last) if next > last => {
                    let diff = next - last;
                    prefix.contains(&diff)
                }
                _ => false,
            },
            ChainClass::Binary => {
                let expected = crate::chain::binary_chain(target)
                    .map(|c| c.elements().get(prefix.len()).cloned());
                matches!(expected, Ok(Some(ref e)) if e == next)
            }
            ChainClass::Custom(rule) => rule.accepts(prefix, next, target),
        }
    }

    pub(crate) fn accepts_small(&self, prefix: &[u64], next: u64, target: u64) -> bool {
        match self {
            ChainClass::All => true,
            ChainClass::Star => match prefix.last() {
                Some(&last) if next > last => prefix.binary_search(&(next - last)).is_ok(),
                _ => false,
            },
            ChainClass::Binary => binary_chain_u64(target).get(prefix.len()) == Some(&next),
            ChainClass::Custom(rule) => rule.accepts_small(prefix, next, target),
        }
    }
}

impl PartialEq for ChainClass {
    fn eq(&self, other: &Self) -> bool {
        self.tag() == other.tag()
    }
}

impl Eq for ChainClass {}

impl fmt::Display for ChainClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ChainClass {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(ChainClass::All),
            "star" => Ok(ChainClass::Star),
            "binary" => Ok(ChainClass::Binary),
            other => Err(LabError::InvalidArgument(format!(
                "unknown chain class '{other}' (expected all, star or binary)"
            ))),
        }
    }
}
