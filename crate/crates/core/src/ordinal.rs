//! Ordinals below `omega^omega` in Cantor normal form.
//!
//! Text form: terms `w^k*c`, `w*c` and `c` joined by `+` in strictly
//! descending powers, with `*1` omitted, e.g. `w^2*3+w*2+1`. Zero is `0`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

/// `omega^m a_m + ... + omega a_1 + a_0`, stored as `(a_0, ..., a_m)` with
/// `a_m > 0` (the empty vector is zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OrdinalCNF {
    coefficients: Vec<BigUint>,
}

impl OrdinalCNF {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coefficients<T: Into<BigUint>>(coefficients: impl IntoIterator<Item = T>) -> Self {
        let mut coefficients: Vec<BigUint> = coefficients.into_iter().map(Into::into).collect();
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        OrdinalCNF { coefficients }
    }

    pub fn finite(n: u64) -> Self {
        Self::from_coefficients([n])
    }

    /// `omega^k * c`.
    pub fn omega_power(k: usize, c: u64) -> Self {
        let mut v = vec![0u64; k + 1];
        v[k] = c;
        Self::from_coefficients(v)
    }

    /// `(a_0, a_1, ...)`, lowest power first.
    pub fn coefficients(&self) -> &[BigUint] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Highest power of omega present; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }
}

/// Hessenberg sum: coefficient-wise addition.
pub fn natural_sum(x: &OrdinalCNF, y: &OrdinalCNF) -> OrdinalCNF {
    let len = x.coefficients.len().max(y.coefficients.len());
    let zero = BigUint::zero();
    OrdinalCNF::from_coefficients((0..len).map(|i| {
        x.coefficients.get(i).unwrap_or(&zero) + y.coefficients.get(i).unwrap_or(&zero)
    }))
}

/// Lexicographic from the highest power down.
pub fn compare(x: &OrdinalCNF, y: &OrdinalCNF) -> Ordering {
    x.coefficients
        .len()
        .cmp(&y.coefficients.len())
        .then_with(|| x.coefficients.iter().rev().cmp(y.coefficients.iter().rev()))
}

impl PartialOrd for OrdinalCNF {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdinalCNF {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

/// Order-type bound for a defect set whose weights are at most `q`, with the
/// two larger ordinals it is known to lie below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rwo1Bound {
    /// `omega^(q-1) q + ... + omega^2 3 + omega 2 + 1`.
    pub bound: OrdinalCNF,
    /// `omega^(q-1) (q+1)`.
    pub below: OrdinalCNF,
    /// `omega^q`.
    pub ceiling: OrdinalCNF,
}

pub fn rwo1_bound(q: u64) -> Result<Rwo1Bound, crate::error::LabError> {
    if q == 0 {
        return Err(crate::error::LabError::InvalidArgument("q must be at least 1".into()));
    }
    let q_us = usize::try_from(q).expect("q fits in memory");
    Ok(Rwo1Bound {
        bound: OrdinalCNF::from_coefficients(1..=q),
        below: OrdinalCNF::omega_power(q_us - 1, q + 1),
        ceiling: OrdinalCNF::omega_power(q_us, 1),
    })
}

impl fmt::Display for OrdinalCNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (k, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => f.write_str("w")?,
                (1, false) => write!(f, "w*{c}")?,
                (_, true) => write!(f, "w^{k}")?,
                (_, false) => write!(f, "w^{k}*{c}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalParseError {
    #[error("empty ordinal")]
    Empty,
    #[error("malformed term {0:?}")]
    Malformed(String),
    #[error("zero coefficient in term {0:?}")]
    ZeroCoefficient(String),
    #[error("powers must strictly descend at term {0:?}")]
    NotDescending(String),
}

fn parse_number(text: &str, term: &str) -> Result<BigUint, OrdinalParseError> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(OrdinalParseError::Malformed(term.to_string()));
    }
    Ok(text.parse().expect("digits parse"))
}

/// `(power, coefficient)` for one term.
fn parse_term(term: &str) -> Result<(usize, BigUint), OrdinalParseError> {
    let (power, coeff) = match term.strip_prefix('w') {
        None => (0, parse_number(term, term)?),
        Some(rest) => {
            let (power_text, coeff_text) = match rest.split_once('*') {
                Some((p, c)) => (p, Some(c)),
                None => (rest, None),
            };
            let power = match power_text {
                "" => 1,
                p => {
                    let digits = p.strip_prefix('^').ok_or_else(|| OrdinalParseError::Malformed(term.into()))?;
                    let k = parse_number(digits, term)?;
                    usize::try_from(&k).map_err(|_| OrdinalParseError::Malformed(term.into()))?
                }
            };
            let coeff = match coeff_text {
                Some(c) => parse_number(c, term)?,
                None => BigUint::one(),
            };
            (power, coeff)
        }
    };
    if coeff.is_zero() {
        return Err(OrdinalParseError::ZeroCoefficient(term.to_string()));
    }
    Ok((power, coeff))
}

impl FromStr for OrdinalCNF {
    type Err = OrdinalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(OrdinalParseError::Empty);
        }
        if text == "0" {
            return Ok(OrdinalCNF::zero());
        }
        let mut coefficients: Vec<BigUint> = Vec::new();
        let mut last_power: Option<usize> = None;
        for term in text.split('+') {
            let (power, coeff) = parse_term(term)?;
            if last_power.is_some_and(|p| power >= p) {
                return Err(OrdinalParseError::NotDescending(term.to_string()));
            }
            last_power = Some(power);
            if coefficients.len() <= power {
                coefficients.resize(power + 1, BigUint::zero());
            }
            coefficients[power] = coeff;
        }
        Ok(OrdinalCNF::from_coefficients(coefficients))
    }
}

pub fn parse_cnf(text: &str) -> Result<OrdinalCNF, OrdinalParseError> {
    text.parse()
}

pub fn format_cnf(x: &OrdinalCNF) -> String {
    x.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> OrdinalCNF {
        s.parse().unwrap()
    }

    #[test]
    fn sums() {
        assert_eq!(natural_sum(&o("w+1"), &o("w*2+3")), o("w*3+4"));
        assert_eq!(natural_sum(&o("w^2"), &o("w")).to_string(), "w^2+w");
        assert_eq!(natural_sum(&OrdinalCNF::zero(), &o("w^3*2+5")), o("w^3*2+5"));
    }

    #[test]
    fn comparisons() {
        assert_eq!(compare(&o("w^2"), &o("w*5+9")), Ordering::Greater);
        assert_eq!(compare(&o("w*2"), &o("w*2")), Ordering::Equal);
        assert_eq!(compare(&o("7"), &o("w")), Ordering::Less);
        assert_eq!(compare(&OrdinalCNF::zero(), &o("1")), Ordering::Less);
    }

    #[test]
    fn bound_formula() {
        assert_eq!(rwo1_bound(1).unwrap().bound, o("1"));
        assert_eq!(rwo1_bound(2).unwrap().bound.to_string(), "w*2+1");
        assert_eq!(rwo1_bound(3).unwrap().bound.to_string(), "w^2*3+w*2+1");
        let b = rwo1_bound(3).unwrap();
        assert_eq!(b.below.to_string(), "w^2*4");
        assert_eq!(b.ceiling.to_string(), "w^3");
        assert!(rwo1_bound(0).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(
            o("w^2*3+w*2+1").coefficients(),
            &[BigUint::from(1u32), BigUint::from(2u32), BigUint::from(3u32)]
        );
        assert!(o("0").is_zero());
        for s in ["w^2*3+w*2+1", "0", "w", "w^5+7", "w*9", "12"] {
            assert_eq!(format_cnf(&parse_cnf(s).unwrap()), s);
        }
        assert_eq!(o(" w^2 * 3 + 1 "), o("w^2*3+1"));
        assert_eq!(parse_cnf(""), Err(OrdinalParseError::Empty));
        assert!(matches!(parse_cnf("w*0"), Err(OrdinalParseError::ZeroCoefficient(_))));
        assert!(matches!(parse_cnf("w+w^2"), Err(OrdinalParseError::NotDescending(_))));
        assert!(matches!(parse_cnf("w+w"), Err(OrdinalParseError::NotDescending(_))));
        assert!(matches!(parse_cnf("x^2"), Err(OrdinalParseError::Malformed(_))));
        assert!(matches!(parse_cnf("w^*2"), Err(OrdinalParseError::Malformed(_))));
        assert!(matches!(parse_cnf("1+"), Err(OrdinalParseError::Malformed(_))));
        assert!(matches!(parse_cnf("0+1"), Err(OrdinalParseError::ZeroCoefficient(_))));
    }
}
