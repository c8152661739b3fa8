//! Closed-form small-steps buckets from the binary expansion.
//!
//! `s(n) = 0` iff `n` has one 1-bit and `s(n) = 1` iff it has two. `s(n) = 2`
//! holds exactly for the five exponent patterns in [`KnuthForm`].

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::bits::exponents;
use crate::defect::small_steps_at_most;
use crate::error::LabError;
use crate::search::{Engine, StartDepth};

/// The five shapes with exactly two small steps. Exponents satisfy
/// `a < b < c` throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "form")]
pub enum KnuthForm {
    /// `2^a + 2^b + 2^c`
    #[serde(rename = "1")]
    ThreeBits { a: u64, b: u64, c: u64 },
    /// `2^a + 2^(a+1) + 2^(a+2) + 2^(a+7)`
    #[serde(rename = "2")]
    Sporadic { a: u64 },
    /// `2^a + 2^(a+1) + 2^b + 2^(b+3)`, `b > a + 1`
    #[serde(rename = "3")]
    TwoPairs { a: u64, b: u64 },
    /// `2^a + 2^b + 2^c + 2^(b+c-a)`
    #[serde(rename = "4")]
    Balanced { a: u64, b: u64, c: u64 },
    /// `2^a + 2^b + 2^c + 2^(b+c-a+1)`
    #[serde(rename = "5")]
    BalancedShifted { a: u64, b: u64, c: u64 },
}

impl KnuthForm {
    pub fn id(&self) -> u8 {
        match self {
            KnuthForm::ThreeBits { .. } => 1,
            KnuthForm::Sporadic { .. } => 2,
            KnuthForm::TwoPairs { .. } => 3,
            KnuthForm::Balanced { .. } => 4,
            KnuthForm::BalancedShifted { .. } => 5,
        }
    }

    /// Set-bit positions of the number this form describes, ascending.
    pub fn exponents(&self) -> Vec<u64> {
        match *self {
            KnuthForm::ThreeBits { a, b, c } => vec![a, b, c],
            KnuthForm::Sporadic { a } => vec![a, a + 1, a + 2, a + 7],
            KnuthForm::TwoPairs { a, b } => vec![a, a + 1, b, b + 3],
            KnuthForm::Balanced { a, b, c } => vec![a, b, c, b + c - a],
            KnuthForm::BalancedShifted { a, b, c } => vec![a, b, c, b + c - a + 1],
        }
    }

    pub fn value(&self) -> BigUint {
        self.exponents()
            .into_iter()
            .map(|e| BigUint::from(1u32) << e)
            .sum()
    }
}

impl fmt::Display for KnuthForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            KnuthForm::ThreeBits { a, b, c } => write!(f, "form 1 (a={a}, b={b}, c={c})"),
            KnuthForm::Sporadic { a } => write!(f, "form 2 (a={a})"),
            KnuthForm::TwoPairs { a, b } => write!(f, "form 3 (a={a}, b={b})"),
            KnuthForm::Balanced { a, b, c } => write!(f, "form 4 (a={a}, b={b}, c={c})"),
            KnuthForm::BalancedShifted { a, b, c } => write!(f, "form 5 (a={a}, b={b}, c={c})"),
        }
    }
}

/// Every form matching `n`, ordered by id. Empty unless `n` has three or
/// four 1-bits.
pub fn knuth_form_of(n: &BigUint) -> Vec<KnuthForm> {
    let e = exponents(n);
    let mut out = Vec::new();
    match e[..] {
        [a, b, c] => out.push(KnuthForm::ThreeBits { a, b, c }),
        [e0, e1, e2, e3] => {
            if e1 == e0 + 1 && e2 == e0 + 2 && e3 == e0 + 7 {
                out.push(KnuthForm::Sporadic { a: e0 });
            }
            if e1 == e0 + 1 && e2 > e0 + 1 && e3 == e2 + 3 {
                out.push(KnuthForm::TwoPairs { a: e0, b: e2 });
            }
            if e3 == e1 + e2 - e0 {
                out.push(KnuthForm::Balanced { a: e0, b: e1, c: e2 });
            }
            if e3 == e1 + e2 - e0 + 1 {
                out.push(KnuthForm::BalancedShifted { a: e0, b: e1, c: e2 });
            }
        }
        _ => {}
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "bucket", rename_all = "snake_case")]
pub enum Bucket {
    Zero,
    One,
    /// All matching forms; the first has the lowest id.
    Two { forms: Vec<KnuthForm> },
    ThreePlus,
}

impl Bucket {
    /// The small-steps count this bucket asserts, `None` for three or more.
    pub fn small_steps(&self) -> Option<u32> {
        match self {
            Bucket::Zero => Some(0),
            Bucket::One => Some(1),
            Bucket::Two { .. } => Some(2),
            Bucket::ThreePlus => None,
        }
    }

    pub fn primary_form(&self) -> Option<&KnuthForm> {
        match self {
            Bucket::Two { forms } => forms.first(),
            _ => None,
        }
    }
}

impl fmt::Display for Bucket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bucket::Zero => f.write_str("s=0"),
            Bucket::One => f.write_str("s=1"),
            Bucket::Two { forms } => {
                f.write_str("s=2, ")?;
                for (i, form) in forms.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    form.fmt(f)?;
                }
                Ok(())
            }
            Bucket::ThreePlus => f.write_str("s>=3"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmallStepsBucket {
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub n: BigUint,
    #[serde(flatten)]
    pub bucket: Bucket,
}

pub fn classify_small_steps(n: &BigUint) -> Result<SmallStepsBucket, LabError> {
    let ones = crate::bits::ones_count(n)?;
    let bucket = match ones {
        1 => Bucket::Zero,
        2 => Bucket::One,
        _ => {
            let forms = knuth_form_of(n);
            if forms.is_empty() {
                Bucket::ThreePlus
            } else {
                Bucket::Two { forms }
            }
        }
    };
    Ok(SmallStepsBucket { n: n.clone(), bucket })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub n: u64,
    pub bucket: Bucket,
    /// Searched small steps, `None` meaning three or more.
    pub searched: Option<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub checked: u64,
    pub discrepancies: Vec<Discrepancy>,
    /// Targets whose search ran out of budget.
    pub unchecked: Vec<u64>,
}

/// Compares the closed-form bucket with searched small steps (capped at
/// two) for every `n` in `range`.
pub fn cross_check(range: RangeInclusive<u64>, engine: &Engine) -> Result<CrossCheck, LabError> {
    if range.is_empty() {
        return Err(LabError::InvalidArgument("empty range".into()));
    }
    if *range.start() == 0 {
        return Err(LabError::ZeroTarget);
    }
    let rows: Vec<(u64, Result<Option<u32>, LabError>)> = range
        .into_par_iter()
        .map(|n| (n, small_steps_at_most(n, 2, engine, StartDepth::LowerBound)))
        .collect();
    let mut report = CrossCheck::default();
    for (n, searched) in rows {
        let searched = match searched {
            Ok(s) => s,
            Err(LabError::BudgetExhausted { .. }) => {
                report.unchecked.push(n);
                continue;
            }
            Err(e) => return Err(e),
        };
        report.checked += 1;
        let bucket = classify_small_steps(&BigUint::from(n))?.bucket;
        if bucket.small_steps() != searched {
            report.discrepancies.push(Discrepancy { n, bucket, searched });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::ChainClass;

    fn classify(n: u64) -> Bucket {
        classify_small_steps(&BigUint::from(n)).unwrap().bucket
    }

    #[test]
    fn bucket_examples() {
        assert_eq!(classify(8), Bucket::Zero);
        assert_eq!(classify(3), Bucket::One);
        assert_eq!(
            classify(7),
            Bucket::Two {
                forms: vec![KnuthForm::ThreeBits { a: 0, b: 1, c: 2 }]
            }
        );
        assert_eq!(classify(135).primary_form(), Some(&KnuthForm::Sporadic { a: 0 }));
        assert_eq!(classify(255), Bucket::ThreePlus);
    }

    #[test]
    fn form_examples() {
        let form = |n: u64| knuth_form_of(&BigUint::from(n));
        assert_eq!(form(15), vec![KnuthForm::Balanced { a: 0, b: 1, c: 2 }]);
        assert_eq!(form(147), vec![KnuthForm::TwoPairs { a: 0, b: 4 }]);
        assert_eq!(form(11), vec![KnuthForm::ThreeBits { a: 0, b: 1, c: 3 }]);
        assert!(form(31).is_empty());
        assert_eq!(form(135)[0].to_string(), "form 2 (a=0)");
    }

    #[test]
    fn forms_rebuild_their_numbers() {
        for n in 1u64..(1 << 12) {
            for f in knuth_form_of(&BigUint::from(n)) {
                assert_eq!(f.value(), BigUint::from(n));
            }
        }
    }

    #[test]
    fn forms_are_mutually_exclusive() {
        for n in 1u64..(1 << 16) {
            assert!(knuth_form_of(&BigUint::from(n)).len() <= 1, "n = {n}");
        }
    }

    #[test]
    fn large_inputs_are_not_truncated() {
        let n = (BigUint::from(1u32) << 300u32) + (BigUint::from(1u32) << 200u32) + 1u32;
        assert_eq!(
            classify_small_steps(&n).unwrap().bucket.primary_form(),
            Some(&KnuthForm::ThreeBits { a: 0, b: 200, c: 300 })
        );
    }

    #[test]
    fn cross_check_small_range() {
        let engine = Engine::new(ChainClass::All);
        let report = cross_check(1..=255, &engine).unwrap();
        assert_eq!(report.checked, 255);
        assert!(report.discrepancies.is_empty());
        assert!(report.unchecked.is_empty());
    }
}
