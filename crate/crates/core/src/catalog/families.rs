//! Closed-form defect families: `S_k`, the bijection `phi`, and the sets
//! generated by the five two-small-step shapes.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::One;

use crate::bits::floor_log2;
use crate::classifier::KnuthForm;
use crate::defect::small_steps_at_most;
use crate::error::LabError;
use crate::logvalue::ExactLogValue;
use crate::search::{to_u64, Engine, StartDepth};

fn check_increasing(b: &[u64]) -> Result<(), LabError> {
    let mut prev = 0;
    for &x in b {
        if x <= prev {
            return Err(LabError::InvalidArgument(format!(
                "exponents must satisfy 0 < b1 < b2 < ..., got {b:?}"
            )));
        }
        prev = x;
    }
    Ok(())
}

/// `k - 1 - log2(1 + 2^-b1 + ... + 2^-b(k-1))`.
pub fn sk_value(k: usize, b: &[u64]) -> Result<ExactLogValue, LabError> {
    if k == 0 {
        return Err(LabError::InvalidArgument("k must be at least 1".into()));
    }
    if b.len() != k - 1 {
        return Err(LabError::InvalidArgument(format!(
            "k = {k} needs {} exponents, got {}",
            k - 1,
            b.len()
        )));
    }
    check_increasing(b)?;
    let top = b.last().copied().unwrap_or(0);
    // 1 + sum 2^-bi = m / 2^top
    let mut m = BigUint::one() << top;
    for &bi in b {
        m += BigUint::one() << (top - bi);
    }
    ExactLogValue::new(k as i64 - 1, m, top)
}

/// `b_i = i + c_1 + ... + c_i`; the vector has length `k - 1`.
pub fn phi_exponents(c: &[u64]) -> Vec<u64> {
    let mut acc = 0;
    c.iter()
        .enumerate()
        .map(|(i, &ci)| {
            acc += ci;
            i as u64 + 1 + acc
        })
        .collect()
}

/// The order isomorphism from `omega^(k-1)` (lexicographic tuples) onto `S_k`.
pub fn phi(c: &[u64]) -> ExactLogValue {
    sk_value(c.len() + 1, &phi_exponents(c)).expect("phi exponents are increasing")
}

/// `c_i = b_i - b_(i-1) - 1` with `b_0 = 0`.
pub fn phi_inverse(b: &[u64]) -> Result<Vec<u64>, LabError> {
    check_increasing(b)?;
    let mut prev = 0;
    Ok(b
        .iter()
        .map(|&x| {
            let c = x - prev - 1;
            prev = x;
            c
        })
        .collect())
}

/// The `m` smallest elements of `S_k`: `phi(0, ..., 0, j)` for `j < m`.
pub fn sk_prefix(k: usize, m: usize) -> Result<Vec<ExactLogValue>, LabError> {
    if k < 2 {
        return Err(LabError::InvalidArgument("k must be at least 2".into()));
    }
    Ok((0..m as u64)
        .map(|j| {
            let mut c = vec![0; k - 1];
            c[k - 2] = j;
            phi(&c)
        })
        .collect())
}

/// Every instance of form `id` with all free parameters at most `cap`.
pub fn knuth_forms(id: u8, cap: u64) -> Result<Vec<KnuthForm>, LabError> {
    let mut out = Vec::new();
    match id {
        1 | 4 | 5 => {
            for a in 0..=cap {
                for b in a + 1..=cap {
                    for c in b + 1..=cap {
                        out.push(match id {
                            1 => KnuthForm::ThreeBits { a, b, c },
                            4 => KnuthForm::Balanced { a, b, c },
                            _ => KnuthForm::BalancedShifted { a, b, c },
                        });
                    }
                }
            }
        }
        2 => out.extend((0..=cap).map(|a| KnuthForm::Sporadic { a })),
        3 => {
            for a in 0..=cap {
                for b in a + 2..=cap {
                    out.push(KnuthForm::TwoPairs { a, b });
                }
            }
        }
        _ => return Err(LabError::InvalidArgument(format!("form must be 1..=5, got {id}"))),
    }
    Ok(out)
}

/// `2 + floor(log2 n) - log2 n` over the numbers of form `id` within `cap`,
/// sorted and deduplicated by exact value.
pub fn t_set_values(id: u8, cap: u64) -> Result<Vec<ExactLogValue>, LabError> {
    let mut set = BTreeSet::new();
    for form in knuth_forms(id, cap)? {
        let n = form.value();
        set.insert(ExactLogValue::new(2 + floor_log2(&n)? as i64, n, 0)?);
    }
    Ok(set.into_iter().collect())
}

/// Whether a form value is a defect: it is exactly when some number of that
/// form with that value has two small steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TAttainment {
    pub value: ExactLogValue,
    /// Smallest instance within the caps.
    pub n: u64,
    /// `None` when every search ran out of budget.
    pub attained: Option<bool>,
}

/// [`t_set_values`] with each value checked by search.
pub fn t_set_attainment(id: u8, cap: u64, engine: &Engine) -> Result<Vec<TAttainment>, LabError> {
    let mut by_value: BTreeMap<ExactLogValue, Vec<u64>> = BTreeMap::new();
    for form in knuth_forms(id, cap)? {
        let big = form.value();
        let n = to_u64(&big)?;
        let value = ExactLogValue::new(2 + floor_log2(&big)? as i64, big, 0)?;
        by_value.entry(value).or_default().push(n);
    }
    by_value
        .into_iter()
        .map(|(value, mut ns)| {
            ns.sort_unstable();
            let mut attained = Some(false);
            for &n in &ns {
                match small_steps_at_most(n, 2, engine, StartDepth::LowerBound) {
                    Ok(Some(2)) => {
                        attained = Some(true);
                        break;
                    }
                    Ok(_) => {}
                    Err(LabError::BudgetExhausted { .. }) => attained = None,
                    Err(e) => return Err(e),
                }
            }
            Ok(TAttainment { value, n: ns[0], attained })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(v: &ExactLogValue) -> f64 {
        v.approx()
    }

    #[test]
    fn sk_examples() {
        assert!((approx(&sk_value(2, &[1]).unwrap()) - 0.415037499279).abs() < 1e-11);
        assert!((approx(&sk_value(3, &[1, 2]).unwrap()) - 1.192645077942).abs() < 1e-11);
        assert_eq!(sk_value(1, &[]).unwrap(), ExactLogValue::integer(0));
        assert!(sk_value(3, &[2, 2]).is_err());
        assert!(sk_value(3, &[0, 2]).is_err());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&[0, 0]), sk_value(3, &[1, 2]).unwrap());
        assert!((approx(&phi(&[1, 0])) - 1.540568381363).abs() < 1e-11);
        assert_eq!(phi(&[0]), sk_value(2, &[1]).unwrap());
        assert_eq!(phi_inverse(&[1, 2]).unwrap(), vec![0, 0]);
        assert_eq!(phi_inverse(&[2, 3]).unwrap(), vec![1, 0]);
        assert_eq!(phi_inverse(&[3, 7]).unwrap(), vec![2, 3]);
        assert!(phi_inverse(&[3, 3]).is_err());
    }

    #[test]
    fn prefix_examples() {
        let got: Vec<f64> = sk_prefix(2, 3).unwrap().iter().map(approx).collect();
        let want = [0.415037499279, 0.678071905113, 0.830074998558];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-11);
        }
        let got = sk_prefix(3, 2).unwrap();
        assert_eq!(got[1], sk_value(3, &[1, 3]).unwrap());
        assert!((approx(&got[1]) - 1.299560281859).abs() < 1e-11);
        assert_eq!(sk_prefix(4, 1).unwrap(), vec![phi(&[0, 0, 0])]);
    }

    #[test]
    fn t_set_examples() {
        let t2 = t_set_values(2, 10).unwrap();
        assert_eq!(t2, vec![ExactLogValue::new(9, BigUint::from(135u32), 0).unwrap()]);
        let t3 = t_set_values(3, 10).unwrap();
        let at2 = ExactLogValue::new(5, BigUint::from(39u32), 2).unwrap();
        assert!(t3.contains(&at2));
        assert!((approx(&at2) - 1.714597781138).abs() < 1e-11);
        let t1 = t_set_values(1, 10).unwrap();
        assert_eq!(t1[0], ExactLogValue::new(4, BigUint::from(7u32), 0).unwrap());
        assert!(t_set_values(6, 3).is_err());
    }
}
