use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A rational number `num/den` in lowest terms with `den ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedRational {
    num: BigInt,
    den: BigInt,
}

impl ReducedRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let (mut num, mut den) = (num.into(), den.into());
        if den.is_zero() {
            return Err(Error::domain("zero denominator"));
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if !g.is_one() && !g.is_zero() {
            num /= &g;
            den /= &g;
        }
        Ok(ReducedRational { num, den })
    }

    /// A multiplier `r` for `x ↦ r·x`: rejects `0` and `±1`, which are never ergodic.
    pub fn map_parameter(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let r = Self::new(num, den)?;
        if !r.is_map_parameter() {
            return Err(Error::domain("map parameter must not be 0, 1 or −1"));
        }
        Ok(r)
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ReducedRational {
            num: n.into(),
            den: BigInt::one(),
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_map_parameter(&self) -> bool {
        !self.num.is_zero() && !(self.den.is_one() && self.num.abs().is_one())
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// `max(|num|, den)`, the exponential of the entropy of `x ↦ r·x`.
    pub fn height(&self) -> BigUint {
        self.num.magnitude().max(self.den.magnitude()).clone()
    }

    pub fn to_big_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), self.den.clone())
    }
}

impl From<&BigRational> for ReducedRational {
    fn from(q: &BigRational) -> Self {
        ReducedRational {
            num: q.numer().clone(),
            den: q.denom().clone(),
        }
    }
}

impl core::ops::Neg for ReducedRational {
    type Output = Self;

    fn neg(self) -> Self {
        ReducedRational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl fmt::Display for ReducedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn reduces_and_normalizes_sign() {
        let r = ReducedRational::new(6, -4).unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(ReducedRational::new(4, 2).unwrap().to_string(), "2");
    }

    #[test]
    fn map_parameter_guard() {
        assert!(ReducedRational::map_parameter(0, 1).is_err());
        assert!(ReducedRational::map_parameter(3, 3).is_err());
        assert!(ReducedRational::map_parameter(-2, 2).is_err());
        assert!(ReducedRational::map_parameter(1, 2).is_ok());
        assert!(ReducedRational::new(1, 0).is_err());
    }

    #[test]
    fn height_and_recip() {
        let r = ReducedRational::new(-3, 7).unwrap();
        assert_eq!(r.height(), BigUint::from(7u32));
        assert_eq!(r.recip().unwrap().to_string(), "-7/3");
    }
}
