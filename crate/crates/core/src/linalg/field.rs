//! Ground fields: the rationals and prime fields `F_p`.
//!
//! Every scalar is a [`BigRational`]. Over `F_p` the stored value is always an
//! integer in `[0, p)`, so structural equality is field equality in both cases.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Scalar = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "characteristic", rename_all = "kebab-case")]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(Error::InvalidField(format!("{p} is not a prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    /// Brings an arbitrary rational into canonical form for this field.
    ///
    /// Fails only over `F_p` when the denominator is divisible by `p`.
    pub fn try_normalize(&self, x: Scalar) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => Ok(x),
            FieldSpec::PrimeField(p) => {
                let p = BigInt::from(*p);
                let den = x.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::InvalidField(format!(
                        "denominator of {x} vanishes modulo {p}"
                    )));
                }
                let num = x.numer().mod_floor(&p);
                let inv = den.modpow(&(&p - BigInt::from(2u8)), &p);
                Ok(BigRational::from_integer((num * inv).mod_floor(&p)))
            }
        }
    }

    pub fn normalize(&self, x: Scalar) -> Scalar {
        self.try_normalize(x).expect("scalar outside the field")
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.normalize(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a - b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.normalize(-a)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return Scalar::zero();
        }
        self.normalize(a * b)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            None
        } else {
            Some(self.normalize(a.recip()))
        }
    }

    /// Human-facing rendering. Over `F_p` values above `p/2` print as negatives.
    pub fn display(&self, a: &Scalar) -> String {
        match self {
            FieldSpec::Rationals => a.to_string(),
            FieldSpec::PrimeField(p) => {
                let v = a.to_integer();
                let half = BigInt::from(*p / 2);
                if v > half {
                    (v - BigInt::from(*p)).to_string()
                } else {
                    v.to_string()
                }
            }
        }
    }

    /// Parses `n`, `-n` or `n/m`, reducing into the field.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let bad = || Error::InvalidField(format!("malformed scalar `{text}`"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        self.try_normalize(BigRational::new(num, den))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "rationals"),
            FieldSpec::PrimeField(p) => write!(f, "prime {p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Small integer view of a scalar, for diagnostics and hashing of tiny values.
pub fn small_int(a: &Scalar) -> Option<i64> {
    if a.is_integer() && a.numer().abs() < BigInt::from(i64::MAX) {
        a.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check() {
        assert!(FieldSpec::prime(101).is_ok());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(91).is_err());
    }

    #[test]
    fn prime_field_inverse_and_fraction() {
        let f = FieldSpec::prime(7).unwrap();
        let three = f.from_int(3);
        let inv = f.inv(&three).unwrap();
        assert_eq!(f.mul(&three, &inv), f.one());
        assert_eq!(f.parse_scalar("1/3").unwrap(), inv);
        assert_eq!(f.from_int(-1), f.from_int(6));
        assert!(f.parse_scalar("1/7").is_err());
        assert_eq!(f.display(&f.from_int(6)), "-1");
    }

    #[test]
    fn rationals_lowest_terms() {
        let q = FieldSpec::Rationals;
        let x = q.parse_scalar("6/8").unwrap();
        assert_eq!(x, q.parse_scalar("3/4").unwrap());
        assert_eq!(x.to_string(), "3/4");
    }
}
