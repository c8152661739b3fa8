use std::ops::RangeInclusive;

use rayon::prelude::*;

use super::{Engine, SearchStatus};
use crate::chain::AdditionChain;
use crate::class::ChainClass;
use crate::error::LabError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthEntry {
    Exact(u32),
    BudgetExhausted { upper_bound: u32 },
}

impl LengthEntry {
    pub fn exact(self) -> Option<u32> {
        match self {
            LengthEntry::Exact(l) => Some(l),
            LengthEntry::BudgetExhausted { .. } => None,
        }
    }
}

/// Lengths for every `n` in `range`, ordered by `n`.
///
/// Cached entries are reused; missing ones are searched in parallel and the
/// new exact results are merged into the cache in one write.
pub fn batch_lengths(range: RangeInclusive<u64>, engine: &Engine) -> Result<Vec<(u64, LengthEntry)>, LabError> {
    if range.is_empty() {
        return Err(LabError::InvalidArgument("empty range".into()));
    }
    if *range.start() == 0 {
        return Err(LabError::ZeroTarget);
    }
    let tag = engine.class().tag().to_string();
    let cache = engine.cache();
    let results: Vec<(u64, LengthEntry, bool)> = range
        .into_par_iter()
        .map(|n| {
            if let Some(len) = cache.get(&tag, n) {
                return Ok((n, LengthEntry::Exact(len), false));
            }
            let outcome = super::shortest_length(n, engine.class(), engine.budget())?;
            Ok(match outcome.status {
                SearchStatus::Exact { length, .. } => (n, LengthEntry::Exact(length), true),
                SearchStatus::BudgetExhausted { upper_bound } => {
                    (n, LengthEntry::BudgetExhausted { upper_bound }, false)
                }
            })
        })
        .collect::<Result<_, LabError>>()?;
    cache.merge(
        &tag,
        results
            .iter()
            .filter(|(_, _, fresh)| *fresh)
            .filter_map(|&(n, e, _)| e.exact().map(|l| (n, l))),
    )?;
    Ok(results.into_iter().map(|(n, e, _)| (n, e)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DropWitness {
    pub n: u64,
    pub length: u32,
    pub chain: AdditionChain,
    pub doubled_chain: AdditionChain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DropScan {
    /// Smallest `n` in range with `len(2n) = len(n)`.
    Found(DropWitness),
    /// Every `n <= limit` was certified without a drop.
    NoneUpTo(u64),
    /// The budget ran out at `first_unchecked` before any drop was seen.
    Uncertified { first_unchecked: u64 },
}

/// Scans `n = 1..=limit` for the first `n` with `len(2n) = len(n)`.
pub fn smallest_drop(limit: u64, engine: &Engine) -> Result<DropScan, LabError> {
    if limit == 0 {
        return Err(LabError::InvalidArgument("limit must be at least 1".into()));
    }
    if let ChainClass::Binary = engine.class() {
        // len(2n) = len(n) + 1 for the binary method.
        return Ok(DropScan::NoneUpTo(limit));
    }
    const CHUNK: u64 = 512;
    let mut lo = 1u64;
    while lo <= limit {
        let hi = (lo + CHUNK - 1).min(limit);
        let singles = batch_lengths(lo..=hi, engine)?;
        let doubles = batch_lengths(2 * lo..=2 * hi, engine)?;
        for (&(n, single), &(m, double)) in singles.iter().zip(doubles.iter().step_by(2)) {
            debug_assert_eq!(2 * n, m);
            let (Some(a), Some(b)) = (single.exact(), double.exact()) else {
                return Ok(DropScan::Uncertified { first_unchecked: n });
            };
            if b <= a {
                let (length, chain) = engine.solve(n)?.into_exact()?;
                let (_, doubled_chain) = engine.solve(2 * n)?.into_exact()?;
                return Ok(DropScan::Found(DropWitness {
                    n,
                    length,
                    chain,
                    doubled_chain,
                }));
            }
        }
        lo = hi + 1;
    }
    Ok(DropScan::NoneUpTo(limit))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_eight_lengths() {
        let engine = Engine::new(ChainClass::All);
        let got: Vec<u32> = batch_lengths(1..=8, &engine)
            .unwrap()
            .into_iter()
            .map(|(_, e)| e.exact().unwrap())
            .collect();
        assert_eq!(got, vec![0, 1, 2, 2, 3, 3, 4, 3]);
        assert_eq!(engine.cache().len(), 8);
    }

    #[test]
    fn powers_of_two() {
        let engine = Engine::new(ChainClass::All);
        for k in 0..40 {
            assert_eq!(engine.length(1 << k).unwrap(), k);
        }
    }

    #[test]
    fn no_drop_below_100() {
        let engine = Engine::new(ChainClass::All);
        assert_eq!(smallest_drop(100, &engine).unwrap(), DropScan::NoneUpTo(100));
        let binary = Engine::new(ChainClass::Binary);
        assert_eq!(smallest_drop(1000, &binary).unwrap(), DropScan::NoneUpTo(1000));
    }

    #[test]
    fn exhausted_entries_do_not_abort() {
        let engine = Engine::new(ChainClass::All).with_budget(3);
        let table = batch_lengths(1..=64, &engine).unwrap();
        assert_eq!(table.len(), 64);
        assert!(table.iter().any(|(_, e)| e.exact().is_none()));
        assert!(table.iter().any(|(_, e)| e.exact().is_some()));
        assert!(matches!(
            smallest_drop(64, &engine).unwrap(),
            DropScan::Uncertified { .. }
        ));
    }
}
