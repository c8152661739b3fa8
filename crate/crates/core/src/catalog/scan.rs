//! Sweeps over `1..=n_max`: the defect catalog and `q(r)` estimates.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::families::sk_value;
use crate::bits::floor_log2_u64;
use crate::class::ChainClass;
use crate::defect::{defect_at_most, stability_probe, ExactDefect, Verdict};
use crate::error::LabError;
use crate::logvalue::ExactLogValue;
use crate::search::Engine;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub defect: ExactDefect,
    /// Smallest scanned `n` attaining the value.
    pub leader: u64,
    pub multiplicity: u64,
    pub stability: Verdict,
}

impl CatalogEntry {
    pub fn value(&self) -> ExactLogValue {
        self.defect.value()
    }
}

/// What the catalog is known to contain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completeness {
    /// Every defect of every integer that is below this value (and at most
    /// `r`) is listed. Derived from the description of the defects in
    /// `[0, 1]` as `{0}` together with `S_2`; `None` for custom classes.
    pub complete_below: Option<ExactLogValue>,
    /// `complete_below` exceeds `r`, so the whole list is complete.
    pub complete_through_r: bool,
    /// Every `n <= n_max` was decided.
    pub scan_complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub r: BigRational,
    pub n_max: u64,
    pub class: String,
    /// Sorted strictly increasing by exact value.
    pub entries: Vec<CatalogEntry>,
    pub completeness: Completeness,
    pub unchecked: Vec<u64>,
}

fn check_threshold(r: &BigRational) -> Result<(), LabError> {
    if r < &BigRational::from_integer(0.into()) {
        return Err(LabError::InvalidArgument("threshold must be nonnegative".into()));
    }
    Ok(())
}

/// Defects at most `r` among `n <= n_max`, grouped by exact value.
pub fn enumerate_defects(r: &BigRational, n_max: u64, engine: &Engine, horizon: u32) -> Result<Catalog, LabError> {
    check_threshold(r)?;
    if n_max == 0 {
        return Err(LabError::InvalidArgument("n_max must be at least 1".into()));
    }
    let rows: Vec<(u64, Result<Option<ExactDefect>, LabError>)> = (1..=n_max)
        .into_par_iter()
        .map(|n| (n, defect_at_most(n, r, engine)))
        .collect();
    let mut groups: BTreeMap<ExactLogValue, (ExactDefect, u64, u64)> = BTreeMap::new();
    let mut unchecked = Vec::new();
    for (n, row) in rows {
        match row {
            Ok(Some(d)) => {
                groups
                    .entry(d.value())
                    .and_modify(|g| g.2 += 1)
                    .or_insert((d, n, 1));
            }
            Ok(None) => {}
            Err(LabError::BudgetExhausted { .. }) => unchecked.push(n),
            Err(e) => return Err(e),
        }
    }
    let entries = groups
        .into_values()
        .map(|(defect, leader, multiplicity)| {
            let stability = stability_probe(leader, engine, horizon)?.verdict;
            Ok(CatalogEntry {
                defect,
                leader,
                multiplicity,
                stability,
            })
        })
        .collect::<Result<Vec<_>, LabError>>()?;

    let complete_below = match engine.class() {
        ChainClass::Custom(_) => None,
        _ => s2_certificate(&entries, r, n_max),
    };
    let complete_through_r = complete_below
        .as_ref()
        .is_some_and(|x| x.cmp_rational(r) == std::cmp::Ordering::Greater);
    Ok(Catalog {
        r: r.clone(),
        n_max,
        class: engine.class().tag().to_string(),
        entries,
        completeness: Completeness {
            complete_below,
            complete_through_r,
            scan_complete: unchecked.is_empty(),
        },
        unchecked,
    })
}

/// The defects in `[0, 1)` are `0` and `1 - log2(1 + 2^-b)`, the latter
/// attained first at `2^b + 1`. If the scan reaches `2^B + 1` and lists
/// exactly those values up to `b = B` (capped at `r`), nothing below the
/// `b = B + 1` value is missing.
fn s2_certificate(entries: &[CatalogEntry], r: &BigRational, n_max: u64) -> Option<ExactLogValue> {
    if n_max < 3 {
        return None;
    }
    let big_b = floor_log2_u64(n_max - 1) as u64;
    let bound = sk_value(2, &[big_b + 1]).ok()?;
    let listed: Vec<ExactLogValue> = entries
        .iter()
        .map(|e| e.value())
        .take_while(|v| v < &bound)
        .collect();
    let expected: Vec<ExactLogValue> = std::iter::once(ExactLogValue::integer(0))
        .chain((1..=big_b).map(|b| sk_value(2, &[b]).expect("b >= 1")))
        .filter(|v| v.le_rational(r))
        .collect();
    (listed == expected).then_some(bound)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QEstimate {
    /// Largest Hamming weight among scanned `n` with defect at most `r`.
    pub q: u32,
    /// Smallest `n` attaining `q`.
    pub witness: u64,
    pub n_max: u64,
    /// Budget-exhausted targets of weight above `q`; each could raise `q`.
    pub unchecked: Vec<u64>,
}

/// Lower estimate of `q(r) = max { ones(n) : defect(n) <= r }` over
/// `n <= n_max`. Weights are tried from the top down, so only numbers at or
/// above the answer are ever searched.
pub fn q_empirical(r: &BigRational, n_max: u64, engine: &Engine) -> Result<QEstimate, LabError> {
    check_threshold(r)?;
    if n_max == 0 {
        return Err(LabError::InvalidArgument("n_max must be at least 1".into()));
    }
    let bits = floor_log2_u64(n_max) + 1;
    let mut unchecked = Vec::new();
    for w in (1..=bits).rev() {
        let candidates: Vec<u64> = with_weight(w, bits).into_iter().filter(|&n| n <= n_max).collect();
        let results: Vec<(u64, Result<Option<ExactDefect>, LabError>)> = candidates
            .into_par_iter()
            .map(|n| (n, defect_at_most(n, r, engine)))
            .collect();
        let mut hit = None;
        for (n, res) in results {
            match res {
                Ok(Some(_)) => {
                    hit = Some(n);
                    break;
                }
                Ok(None) => {}
                Err(LabError::BudgetExhausted { .. }) => unchecked.push(n),
                Err(e) => return Err(e),
            }
        }
        if let Some(witness) = hit {
            unchecked.sort_unstable();
            return Ok(QEstimate {
                q: w,
                witness,
                n_max,
                unchecked,
            });
        }
    }
    unreachable!("n = 1 always has defect 0");
}

/// All numbers below `2^bits` with exactly `w` ones, ascending.
fn with_weight(w: u32, bits: u32) -> Vec<u64> {
    if w == 0 || w > bits {
        return Vec::new();
    }
    let mut out = Vec::new();
    // Gosper's hack over bit patterns.
    let mut x: u64 = (1u64 << w) - 1;
    let limit = 1u64 << bits;
    while x < limit {
        out.push(x);
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn weights_enumerated_in_order() {
        assert_eq!(with_weight(2, 4), vec![3, 5, 6, 9, 10, 12]);
        assert_eq!(with_weight(1, 3), vec![1, 2, 4]);
        assert_eq!(with_weight(4, 3), Vec::<u64>::new());
    }

    #[test]
    fn catalog_below_one() {
        let engine = Engine::new(ChainClass::All);
        let cat = enumerate_defects(&r(999, 1000), 300, &engine, 4).unwrap();
        let leaders: Vec<u64> = cat.entries.iter().map(|e| e.leader).collect();
        assert_eq!(leaders, vec![1, 3, 5, 9, 17, 33, 65, 129, 257]);
        assert!(cat.entries.iter().all(|e| matches!(e.stability, Verdict::CertifiedStable { .. })));
        assert_eq!(cat.completeness.complete_below, Some(sk_value(2, &[9]).unwrap()));
        assert!(!cat.completeness.complete_through_r);
        assert!(cat.completeness.scan_complete);
    }

    #[test]
    fn catalog_at_zero() {
        let engine = Engine::new(ChainClass::All);
        let cat = enumerate_defects(&r(0, 1), 64, &engine, 4).unwrap();
        assert_eq!(cat.entries.len(), 1);
        assert_eq!(cat.entries[0].leader, 1);
        assert_eq!(cat.entries[0].multiplicity, 7);
        assert!(cat.completeness.complete_through_r);
    }

    #[test]
    fn catalog_includes_seven() {
        let engine = Engine::new(ChainClass::All);
        let cat = enumerate_defects(&r(13, 10), 64, &engine, 2).unwrap();
        let seven = cat.entries.iter().find(|e| e.leader == 7).unwrap();
        assert_eq!(seven.value().to_string(), "1.192645");
    }

    #[test]
    fn q_examples() {
        let engine = Engine::new(ChainClass::All);
        let q = |k: i64| {
            let est = q_empirical(&r(k, 1), 300, &engine).unwrap();
            (est.q, est.witness)
        };
        assert_eq!(q(0), (1, 1));
        assert_eq!(q(1), (2, 3));
        assert_eq!(q(2), (4, 15));
        assert_eq!(q(3), (8, 255));
    }
}
