use alloc::format;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::order::multiplicative_order;
use super::primes::{factor_biguint, is_prime_u64};
use crate::error::{Error, Result};

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(Error::domain(format!("{p} is not prime")))
    }
}

pub fn valuation_u64(mut n: u64, p: u64) -> u32 {
    debug_assert!(n != 0 && p >= 2);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Exponent of `p` in a nonzero natural number.
pub fn valuation_biguint(n: &BigUint, p: u64) -> u64 {
    debug_assert!(!n.is_zero());
    if let Some(small) = n.to_u64() {
        return valuation_u64(small, p) as u64;
    }
    let p_big = BigUint::from(p);
    let mut rest = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = rest.div_rem(&p_big);
        if !r.is_zero() {
            return v;
        }
        rest = q;
        v += 1;
    }
}

pub fn valuation_bigint(n: &BigInt, p: u64) -> u64 {
    valuation_biguint(n.magnitude(), p)
}

/// `v` with `q = p^v · u`, `u` a `p`-adic unit.
pub fn padic_valuation(q: &BigRational, p: u64) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::domain("valuation of zero"));
    }
    require_prime(p)?;
    let num = valuation_bigint(q.numer(), p) as i64;
    let den = valuation_bigint(q.denom(), p) as i64;
    Ok(num - den)
}

/// `|q|_p = p^(−v_p(q))` as an exact rational.
pub fn padic_abs(q: &BigRational, p: u64) -> Result<BigRational> {
    let v = padic_valuation(q, p)?;
    let pow = BigInt::from(p).pow(v.unsigned_abs() as u32);
    Ok(if v >= 0 {
        BigRational::new(BigInt::one(), pow)
    } else {
        BigRational::from_integer(pow)
    })
}

/// Precomputed data for `n ↦ v_p(aⁿ − bⁿ)` via lifting the exponent.
///
/// Valid for coprime `a, b` with `a ≠ ±b` and `p ∤ ab`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerDifference {
    p: u64,
    shape: LteShape,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum LteShape {
    /// `p = 2`: `v₂(a − b)` and `v₂(a + b)`.
    Two { minus: u64, plus: u64 },
    /// Odd `p`: order `m` of `a·b⁻¹` mod `p` and `v_p(aᵐ − bᵐ)`.
    Odd { order: u64, base: u64 },
}

impl PowerDifference {
    pub fn new(a: &BigInt, b: &BigInt, p: u64) -> Result<Self> {
        require_prime(p)?;
        if !a.gcd(b).is_one() {
            return Err(Error::domain(format!("gcd({a}, {b}) != 1")));
        }
        if a.abs() == b.abs() {
            return Err(Error::domain("a = ±b gives aⁿ − bⁿ = 0 for some n"));
        }
        let p_big = BigInt::from(p);
        if (a * b).is_multiple_of(&p_big) {
            return Err(Error::domain(format!(
                "{p} divides ab; route it through the S-membership rules"
            )));
        }
        let shape = if p == 2 {
            LteShape::Two {
                minus: valuation_bigint(&(a - b), 2),
                plus: valuation_bigint(&(a + b), 2),
            }
        } else {
            let order = multiplicative_order(a, b, p)?;
            LteShape::Odd {
                order,
                base: valuation_of_difference_at_order(a, b, p, order),
            }
        };
        Ok(PowerDifference { p, shape })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Multiplicative order of `a·b⁻¹` modulo `p` (always 1 for `p = 2`).
    pub fn order(&self) -> u64 {
        match self.shape {
            LteShape::Two { .. } => 1,
            LteShape::Odd { order, .. } => order,
        }
    }

    /// `v_p(aⁿ − bⁿ)` for `n ≥ 1`.
    pub fn valuation(&self, n: u64) -> u64 {
        debug_assert!(n >= 1);
        match self.shape {
            LteShape::Two { minus, plus } => {
                if n % 2 == 1 {
                    minus
                } else {
                    minus + plus + valuation_u64(n, 2) as u64 - 1
                }
            }
            LteShape::Odd { order, base } => {
                if !n.is_multiple_of(order) {
                    0
                } else {
                    base + valuation_u64(n / order, self.p) as u64
                }
            }
        }
    }
}

/// `v_p(aᵐ − bᵐ)` computed modulo growing powers of `p`, never forming `aᵐ`.
fn valuation_of_difference_at_order(a: &BigInt, b: &BigInt, p: u64, m: u64) -> u64 {
    let bits_per_p = 64 - p.leading_zeros() as u64;
    let mut k = (64 / bits_per_p).max(2);
    let exp = BigUint::from(m);
    loop {
        let modulus = BigUint::from(p).pow(k as u32);
        let modulus_int = BigInt::from_biguint(Sign::Plus, modulus.clone());
        let am = a.mod_floor(&modulus_int).magnitude().modpow(&exp, &modulus);
        let bm = b.mod_floor(&modulus_int).magnitude().modpow(&exp, &modulus);
        let diff = if am >= bm { am - bm } else { &modulus - (bm - am) };
        if !diff.is_zero() {
            return valuation_biguint(&diff, p);
        }
        k *= 2;
    }
}

/// `v_p(aⁿ − bⁿ)` by lifting the exponent.
pub fn valuation_of_power_difference(a: &BigInt, b: &BigInt, p: u64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    Ok(PowerDifference::new(a, b, p)?.valuation(n))
}

/// Checks `|q| · ∏_{|q|_p ≠ 1} |q|_p = 1` in exact arithmetic.
pub fn product_formula_check(q: &BigRational) -> Result<bool> {
    if q.is_zero() {
        return Err(Error::domain("product formula needs a nonzero rational"));
    }
    let mut acc = q.abs();
    for part in [q.numer().magnitude(), q.denom().magnitude()] {
        if part.is_one() {
            continue;
        }
        for (p, _) in factor_biguint(part) {
            let p = p
                .to_u64()
                .ok_or_else(|| Error::capability("prime factor beyond 64 bits"))?;
            acc *= padic_abs(q, p)?;
        }
    }
    Ok(acc.is_one())
}
