//! Defects `len(n) - log2 n`, stability under doubling, and leaders.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;

use crate::bits::{floor_log2_u64, odd_part};
use crate::error::LabError;
use crate::logvalue::ExactLogValue;
use crate::search::{Engine, StartDepth};

/// `length - log2 n` for a chain length attained in some class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactDefect {
    length: u32,
    n: BigUint,
    class: String,
}

impl ExactDefect {
    pub fn new(length: u32, n: BigUint, class: &str) -> Result<Self, LabError> {
        if n == BigUint::from(0u32) {
            return Err(LabError::ZeroTarget);
        }
        Ok(ExactDefect {
            length,
            n,
            class: class.to_string(),
        })
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn n(&self) -> &BigUint {
        &self.n
    }

    pub fn class_tag(&self) -> &str {
        &self.class
    }

    pub fn value(&self) -> ExactLogValue {
        ExactLogValue::defect(u64::from(self.length), &self.n).expect("n is positive")
    }

    /// `length - floor(log2 n)`, which equals the ceiling of the defect.
    pub fn small_steps(&self) -> i64 {
        i64::from(self.length) - (self.n.bits() as i64 - 1)
    }

    /// The defect is an integer exactly when `n` is a power of two.
    pub fn is_integer(&self) -> bool {
        self.n.count_ones() == 1
    }

    pub fn is_zero(&self) -> bool {
        self.is_integer() && u64::from(self.length) + 1 == self.n.bits()
    }
}

impl fmt::Display for ExactDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value().fmt(f)
    }
}

/// `d1 < d2  <=>  2^l1 n2 < 2^l2 n1`.
pub fn compare_defects(d1: &ExactDefect, d2: &ExactDefect) -> Ordering {
    let lhs = &d2.n << d1.length;
    let rhs = &d1.n << d2.length;
    lhs.cmp(&rhs)
}

/// The defects differ by an integer, i.e. `n1` and `n2` share their odd part.
pub fn congruent_mod_one(d1: &ExactDefect, d2: &ExactDefect) -> bool {
    odd_part(&d1.n).0 == odd_part(&d2.n).0
}

pub fn defect(n: u64, engine: &Engine) -> Result<ExactDefect, LabError> {
    let length = engine.length(n)?;
    ExactDefect::new(length, BigUint::from(n), engine.class().tag())
}

pub fn small_steps(n: u64, engine: &Engine) -> Result<u32, LabError> {
    Ok(engine.length(n)? - floor_log2_u64(n))
}

/// `Some(s(n))` if `s(n) <= cap`, `None` if `s(n) > cap`.
pub fn small_steps_at_most(n: u64, cap: u32, engine: &Engine, start: StartDepth) -> Result<Option<u32>, LabError> {
    if n == 0 {
        return Err(LabError::ZeroTarget);
    }
    let lambda = floor_log2_u64(n);
    Ok(engine.capped(n, lambda + cap, start)?.map(|len| len - lambda))
}

/// The defect of `n` if it is at most `r`, else `None`.
pub fn defect_at_most(n: u64, r: &BigRational, engine: &Engine) -> Result<Option<ExactDefect>, LabError> {
    if n == 0 {
        return Err(LabError::ZeroTarget);
    }
    let big = BigUint::from(n);
    // Largest L with L - log2 n <= r.
    let floor_r = r.floor().to_integer();
    let mut cap = i64::from(floor_log2_u64(n)) + i64::try_from(floor_r).unwrap_or(i64::MAX / 2) + 2;
    while cap >= 0 && !ExactLogValue::defect(cap as u64, &big)?.le_rational(r) {
        cap -= 1;
    }
    if cap < 0 {
        return Ok(None);
    }
    let cap = u32::try_from(cap).unwrap_or(u32::MAX);
    match engine.capped(n, cap, StartDepth::LowerBound)? {
        Some(len) => Ok(Some(ExactDefect::new(len, big, engine.class().tag())?)),
        None => Ok(None),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// `2^at n` has defect below 1, and the trajectory is flat up to `at`.
    CertifiedStable { at: u32 },
    /// Flat through the horizon with every defect at least 1; not a proof.
    StableUpToHorizon,
    /// The trajectory first drops between `2^(k-1) n` and `2^k n`.
    UnstableAt { k: u32 },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::CertifiedStable { at } => write!(f, "certified stable (defect < 1 at k={at})"),
            Verdict::StableUpToHorizon => f.write_str("stable up to horizon (not certified)"),
            Verdict::UnstableAt { k } => write!(f, "unstable at k={k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub n: u64,
    pub class: String,
    pub verdict: Verdict,
    pub horizon: u32,
    /// Defects of `2^k n` for `k = 0, 1, ...` up to where probing stopped.
    pub trajectory: Vec<ExactDefect>,
    pub leader: u64,
    /// Minimum of `len(2^k n) - k` over the probed `k`.
    pub stable_length: u32,
    /// The smallest defect in the trajectory.
    pub stable_defect: ExactDefect,
    /// Whether the stable values are proved rather than observed.
    pub certified: bool,
}

/// Follows `2^k n` for `k = 0..=horizon`. A member with defect below 1 is
/// stable, which certifies everything before it when no drop was seen; a
/// drop proves `n` unstable. The trajectory stops at the first certified member.
pub fn stability_probe(n: u64, engine: &Engine, horizon: u32) -> Result<StabilityReport, LabError> {
    if n == 0 {
        return Err(LabError::ZeroTarget);
    }
    let one = ExactLogValue::integer(1);
    let tag = engine.class().tag();
    let first = ExactDefect::new(engine.length(n)?, BigUint::from(n), tag)?;
    let mut trajectory = Vec::new();
    let mut first_drop = None;
    let mut certified_at = None;
    if first.value() < one {
        certified_at = Some(0);
        trajectory.push(first);
    } else {
        for (k, length) in engine.doubling_lengths(n, horizon)?.into_iter().enumerate() {
            let d = ExactDefect::new(length, BigUint::from(n << k), tag)?;
            if let Some(prev) = trajectory.last() {
                if first_drop.is_none() && compare_defects(&d, prev) == Ordering::Less {
                    first_drop = Some(k as u32);
                }
            }
            let below_one = d.value() < one;
            trajectory.push(d);
            if below_one {
                certified_at = Some(k as u32);
                break;
            }
        }
    }
    let verdict = match (first_drop, certified_at) {
        (Some(k), _) => Verdict::UnstableAt { k },
        (None, Some(at)) => Verdict::CertifiedStable { at },
        (None, None) => Verdict::StableUpToHorizon,
    };
    let (best_k, best) = trajectory
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| compare_defects(a, b))
        .map(|(k, d)| (k as u32, d.clone()))
        .expect("trajectory is nonempty");
    Ok(StabilityReport {
        n,
        class: engine.class().tag().to_string(),
        verdict,
        horizon,
        leader: leader_of(n, engine)?,
        stable_length: best.length() - best_k,
        stable_defect: best,
        certified: certified_at.is_some(),
        trajectory,
    })
}

/// `(stable length, certified)`.
pub fn stable_length(n: u64, engine: &Engine, horizon: u32) -> Result<(u32, bool), LabError> {
    let report = stability_probe(n, engine, horizon)?;
    Ok((report.stable_length, report.certified))
}

/// `(stable defect, certified)`.
pub fn stable_defect(n: u64, engine: &Engine, horizon: u32) -> Result<(ExactDefect, bool), LabError> {
    let report = stability_probe(n, engine, horizon)?;
    Ok((report.stable_defect, report.certified))
}

/// Smallest `n / 2^j` with the same defect as `n`.
pub fn leader_of(n: u64, engine: &Engine) -> Result<u64, LabError> {
    if n == 0 {
        return Err(LabError::ZeroTarget);
    }
    let mut m = n;
    let mut len = engine.length(m)?;
    while m.is_multiple_of(2) {
        let half = engine.length(m / 2)?;
        if half + 1 != len {
            break;
        }
        m /= 2;
        len = half;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::ChainClass;

    fn engine() -> Engine {
        Engine::new(ChainClass::All)
    }

    fn d(length: u32, n: u64) -> ExactDefect {
        ExactDefect::new(length, BigUint::from(n), "all").unwrap()
    }

    #[test]
    fn defect_examples() {
        let e = engine();
        assert!(defect(1, &e).unwrap().is_zero());
        assert_eq!(defect(7, &e).unwrap().to_string(), "1.192645");
        assert_eq!(defect(3, &e).unwrap().to_string(), "0.415037");
    }

    #[test]
    fn comparison_examples() {
        assert_eq!(compare_defects(&d(2, 3), &d(3, 5)), Ordering::Less);
        assert_eq!(compare_defects(&d(2, 3), &d(3, 6)), Ordering::Equal);
        assert_eq!(compare_defects(&d(0, 1), &d(1, 2)), Ordering::Equal);
        assert_eq!(compare_defects(&d(2, 3), &d(3, 6)), d(2, 3).value().cmp(&d(3, 6).value()));
    }

    #[test]
    fn small_steps_examples() {
        let e = engine();
        assert_eq!(small_steps(1, &e).unwrap(), 0);
        assert_eq!(small_steps(3, &e).unwrap(), 1);
        assert_eq!(small_steps(255, &e).unwrap(), 3);
        assert_eq!(small_steps_at_most(255, 2, &e, StartDepth::Trivial).unwrap(), None);
        assert_eq!(small_steps_at_most(255, 3, &e, StartDepth::Trivial).unwrap(), Some(3));
        assert_eq!(d(10, 255).small_steps(), 3);
    }

    #[test]
    fn congruence_examples() {
        assert!(congruent_mod_one(&d(2, 3), &d(3, 6)));
        assert!(!congruent_mod_one(&d(2, 3), &d(3, 5)));
        assert!(congruent_mod_one(&d(4, 7), &d(4, 7)));
    }

    #[test]
    fn probe_examples() {
        let e = engine();
        let r = stability_probe(3, &e, 10).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedStable { at: 0 });
        assert_eq!((r.stable_length, r.certified), (2, true));
        let r = stability_probe(64, &e, 10).unwrap();
        assert!(r.stable_defect.is_zero());
        assert_eq!((r.stable_length, r.certified, r.leader), (6, true, 1));
        let r = stability_probe(7, &e, 3).unwrap();
        assert_eq!(r.verdict, Verdict::StableUpToHorizon);
        assert_eq!(r.trajectory.len(), 4);
        assert!(!r.certified);
    }

    #[test]
    fn stable_defect_identity() {
        let e = engine();
        for n in [3u64, 5, 7, 11, 12, 23] {
            let (len, c1) = stable_length(n, &e, 4).unwrap();
            let (sd, c2) = stable_defect(n, &e, 4).unwrap();
            assert_eq!(c1, c2);
            let via_length = ExactLogValue::defect(u64::from(len), &BigUint::from(n)).unwrap();
            assert_eq!(sd.value(), via_length);
        }
    }

    #[test]
    fn leaders() {
        let e = engine();
        assert_eq!(leader_of(6, &e).unwrap(), 3);
        assert_eq!(leader_of(1, &e).unwrap(), 1);
        assert_eq!(leader_of(12, &e).unwrap(), 3);
        assert_eq!(leader_of(1024, &e).unwrap(), 1);
    }

    #[test]
    fn threshold_queries() {
        let e = engine();
        let one = BigRational::from_integer(1.into());
        assert_eq!(defect_at_most(3, &one, &e).unwrap().map(|d| d.length()), Some(2));
        assert_eq!(defect_at_most(7, &one, &e).unwrap(), None);
        assert!(defect_at_most(8, &BigRational::from_integer(0.into()), &e).unwrap().is_some());
    }
}
