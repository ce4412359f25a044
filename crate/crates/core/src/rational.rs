//! Exact rationals and the extended rational line.
//!
//! Breakpoints and point-function values are always exact. The textual form
//! is `p/q` (or a bare integer `p`); `-inf` and `+inf` denote the two
//! infinite points of the extended line.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{CheckedAdd, CheckedDiv, CheckedSub, One, Signed};

pub type Rational = num_rational::Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalError {
    #[error("malformed rational {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("arithmetic overflow")]
    Overflow,
}

pub fn parse_rational(text: &str) -> Result<Rational, RationalError> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: i64 = num.parse().map_err(|_| RationalError::Malformed(text.to_string()))?;
    let den: i64 = den.parse().map_err(|_| RationalError::Malformed(text.to_string()))?;
    if den == 0 {
        return Err(RationalError::ZeroDenominator(text.to_string()));
    }
    if num == i64::MIN || den == i64::MIN {
        return Err(RationalError::Overflow);
    }
    Ok(Rational::new(num, den))
}

/// Canonical text: `p` for integers, `p/q` otherwise, sign on the numerator.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// `r ↦ r / (1 + |r|)`, an order isomorphism from ℚ onto ℚ ∩ (-1, 1).
pub fn squash(value: &Rational) -> Result<Rational, RationalError> {
    let denom = Rational::one()
        .checked_add(&value.abs())
        .ok_or(RationalError::Overflow)?;
    value.checked_div(&denom).ok_or(RationalError::Overflow)
}

/// Inverse of [`squash`]: `q ↦ q / (1 - |q|)` for `q` in (-1, 1).
pub fn unsquash(value: &Rational) -> Result<Rational, RationalError> {
    let denom = Rational::one()
        .checked_sub(&value.abs())
        .ok_or(RationalError::Overflow)?;
    if !denom.is_positive() {
        return Err(RationalError::Overflow);
    }
    value.checked_div(&denom).ok_or(RationalError::Overflow)
}

/// Midpoint of two rationals, used to pick representatives inside cells.
pub fn midpoint(a: &Rational, b: &Rational) -> Result<Rational, RationalError> {
    let two = Rational::from_integer(2);
    // a + (b - a) / 2 keeps intermediate values close to the inputs
    let gap = b.checked_sub(a).ok_or(RationalError::Overflow)?;
    let half = gap.checked_div(&two).ok_or(RationalError::Overflow)?;
    a.checked_add(&half).ok_or(RationalError::Overflow)
}

/// A point of ℚ ∪ {-∞, +∞}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtRational {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl ExtRational {
    pub fn finite(value: Rational) -> Self {
        ExtRational::Finite(value)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ExtRational::NegInf => ExtRational::PosInf,
            ExtRational::PosInf => ExtRational::NegInf,
            ExtRational::Finite(v) => ExtRational::Finite(-v),
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtRational::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::NegInf => f.write_str("-inf"),
            ExtRational::PosInf => f.write_str("+inf"),
            ExtRational::Finite(v) => f.write_str(&format_rational(v)),
        }
    }
}

impl FromStr for ExtRational {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "-inf" => Ok(ExtRational::NegInf),
            "+inf" | "inf" => Ok(ExtRational::PosInf),
            other => parse_rational(other).map(ExtRational::Finite),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("1/2").unwrap(), Rational::new(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), Rational::from_integer(-3));
        assert_eq!(parse_rational("2/-4").unwrap(), Rational::new(-1, 2));
        assert!(matches!(parse_rational("1/0"), Err(RationalError::ZeroDenominator(_))));
        assert!(matches!(parse_rational("x"), Err(RationalError::Malformed(_))));
    }

    #[test]
    fn format_is_canonical() {
        assert_eq!(format_rational(&Rational::new(4, 8)), "1/2");
        assert_eq!(format_rational(&Rational::new(-6, 3)), "-2");
    }

    #[test]
    fn squash_round_trips() {
        for n in -20..=20 {
            for d in 1..6 {
                let r = Rational::new(n, d);
                let s = squash(&r).unwrap();
                assert!(s > Rational::from_integer(-1) && s < Rational::one());
                assert_eq!(unsquash(&s).unwrap(), r);
            }
        }
        assert!(unsquash(&Rational::one()).is_err());
    }

    #[test]
    fn ext_order() {
        let xs: Vec<ExtRational> = ["-inf", "-1", "0", "1/2", "+inf"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        for w in xs.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert_eq!(xs[1].neg(), "1".parse().unwrap());
        assert_eq!(xs[0].to_string(), "-inf");
    }
}
