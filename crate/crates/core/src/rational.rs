//! Exact nonnegative rationals and significant-digit decimal rendering.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{BigCount, Error, Result};

/// A nonnegative rational `num/den`, always stored in lowest terms with `den > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactRational {
    num: BigCount,
    den: BigCount,
}

impl ExactRational {
    pub fn new(num: BigCount, den: BigCount) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let g = num.gcd(&den);
        if g.is_zero() || g.is_one() {
            return Ok(ExactRational { num, den });
        }
        Ok(ExactRational {
            num: num / &g,
            den: den / &g,
        })
    }

    /// `num/den` for a nonzero denominator known by construction.
    pub(crate) fn ratio(num: BigCount, den: &BigCount) -> Self {
        Self::new(num, den.clone()).expect("denominator is a positive path count")
    }

    pub fn zero() -> Self {
        ExactRational {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    pub fn one() -> Self {
        ExactRational {
            num: BigUint::one(),
            den: BigUint::one(),
        }
    }

    pub fn from_integer(value: BigCount) -> Self {
        ExactRational {
            num: value,
            den: BigUint::one(),
        }
    }

    pub fn numer(&self) -> &BigCount {
        &self.num
    }

    pub fn denom(&self) -> &BigCount {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the stored pair is reduced with a positive denominator.
    pub fn is_canonical(&self) -> bool {
        !self.den.is_zero() && self.num.gcd(&self.den).is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::ratio(
            &self.num * &other.den + &other.num * &self.den,
            &(&self.den * &other.den),
        )
    }

    /// `self - other`, or `None` when the result would be negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let lhs = &self.num * &other.den;
        let rhs = &other.num * &self.den;
        if lhs < rhs {
            return None;
        }
        Some(Self::ratio(lhs - rhs, &(&self.den * &other.den)))
    }

    /// Rounds to `digits` significant digits, ties to even.
    pub fn to_sig_decimal(&self, digits: u32) -> SigDecimal {
        let digits = digits.max(1);
        if self.num.is_zero() {
            return SigDecimal {
                mantissa: BigUint::zero(),
                exponent: 0,
                digits,
            };
        }
        let mut exponent = self.num.to_string().len() as i64 - self.den.to_string().len() as i64;
        while !self.at_least_pow10(exponent) {
            exponent -= 1;
        }
        while self.at_least_pow10(exponent + 1) {
            exponent += 1;
        }
        let shift = digits as i64 - 1 - exponent;
        let (a, b) = if shift >= 0 {
            (&self.num * pow10(shift as u32), self.den.clone())
        } else {
            (self.num.clone(), &self.den * pow10((-shift) as u32))
        };
        let (mut q, r) = a.div_rem(&b);
        let twice = &r * 2u32;
        if twice > b || (twice == b && q.is_odd()) {
            q += 1u32;
        }
        if q == pow10(digits) {
            q = pow10(digits - 1);
            exponent += 1;
        }
        SigDecimal {
            mantissa: q,
            exponent,
            digits,
        }
    }

    fn at_least_pow10(&self, e: i64) -> bool {
        if e >= 0 {
            self.num >= &self.den * pow10(e as u32)
        } else {
            &self.num * pow10((-e) as u32) >= self.den
        }
    }
}

fn pow10(e: u32) -> BigUint {
    num_traits::pow(BigUint::from(10u32), e as usize)
}

impl Ord for ExactRational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for ExactRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        let num = BigUint::from_str(num).map_err(|_| bad())?;
        let den = BigUint::from_str(den).map_err(|_| bad())?;
        Self::new(num, den)
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A rational rounded to a fixed number of significant digits.
///
/// The value is `mantissa * 10^(exponent - digits + 1)`; `exponent` is the
/// decimal exponent of the leading digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigDecimal {
    pub mantissa: BigUint,
    pub exponent: i64,
    pub digits: u32,
}

impl SigDecimal {
    /// The exact value of the rounded decimal.
    pub fn to_rational(&self) -> ExactRational {
        let shift = self.exponent - self.digits as i64 + 1;
        if shift >= 0 {
            ExactRational::from_integer(&self.mantissa * pow10(shift as u32))
        } else {
            ExactRational::ratio(self.mantissa.clone(), &pow10((-shift) as u32))
        }
    }

    /// Scientific notation, e.g. `5.41e-6`.
    pub fn to_scientific(&self) -> String {
        if self.mantissa.is_zero() {
            return "0".to_string();
        }
        let s = self.mantissa.to_string();
        let (lead, rest) = s.split_at(1);
        if rest.is_empty() {
            format!("{lead}e{}", self.exponent)
        } else {
            format!("{lead}.{rest}e{}", self.exponent)
        }
    }

    /// Positional notation, e.g. `0.00232`.
    pub fn to_fixed(&self) -> String {
        if self.mantissa.is_zero() {
            return "0".to_string();
        }
        let s = self.mantissa.to_string();
        let e = self.exponent;
        let len = s.len() as i64;
        if e < 0 {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), s)
        } else if e >= len - 1 {
            format!("{}{}", s, "0".repeat((e - len + 1) as usize))
        } else {
            let (int, frac) = s.split_at((e + 1) as usize);
            format!("{int}.{frac}")
        }
    }
}

/// Fixed notation for exponents in `[-3, 5]`, scientific otherwise.
impl fmt::Display for SigDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if (-3..=5).contains(&self.exponent) {
            f.write_str(&self.to_fixed())
        } else {
            f.write_str(&self.to_scientific())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: u64, b: u64) -> ExactRational {
        ExactRational::new(BigUint::from(a), BigUint::from(b)).unwrap()
    }

    #[test]
    fn reduces_on_construction() {
        let r = q(12, 15);
        assert_eq!(r.to_string(), "4/5");
        assert!(r.is_canonical());
        assert_eq!(q(0, 7).to_string(), "0/1");
        assert_eq!(
            ExactRational::new(BigUint::one(), BigUint::zero()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn ordering_and_subtraction() {
        assert!(q(1, 3) < q(1, 2));
        assert_eq!(q(1, 2).checked_sub(&q(1, 3)), Some(q(1, 6)));
        assert_eq!(q(1, 3).checked_sub(&q(1, 2)), None);
        assert_eq!(q(1, 3).add(&q(1, 6)), q(1, 2));
    }

    #[test]
    fn renders_significant_digits() {
        assert_eq!(q(1, 184756).to_sig_decimal(3).to_string(), "5.41e-6");
        assert_eq!(q(58786, 184756).to_sig_decimal(3).to_string(), "0.318");
        assert_eq!(q(1, 2).to_sig_decimal(3).to_string(), "0.500");
        assert_eq!(q(184756, 1).to_sig_decimal(3).to_string(), "185000");
        assert_eq!(q(99999, 100000).to_sig_decimal(3).to_string(), "1.00");
        assert_eq!(q(1, 1).to_sig_decimal(1).to_string(), "1");
    }

    #[test]
    fn rounds_half_to_even() {
        // 0.125 -> 0.12, 0.135 -> 0.14, 0.1251 -> 0.13
        assert_eq!(q(125, 1000).to_sig_decimal(2).to_fixed(), "0.12");
        assert_eq!(q(135, 1000).to_sig_decimal(2).to_fixed(), "0.14");
        assert_eq!(q(1251, 10000).to_sig_decimal(2).to_fixed(), "0.13");
    }

    #[test]
    fn parses_and_serializes() {
        let r: ExactRational = "6/4".parse().unwrap();
        assert_eq!(r, q(3, 2));
        assert!("x/2".parse::<ExactRational>().is_err());
        assert!("1/0".parse::<ExactRational>().is_err());
    }
}
