use alloc::format;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::primes::{factor_u64, mul_mod, pow_mod};
use super::valuation::require_prime;
use crate::error::{Error, Result};

fn residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue below p fits in u64")
}

/// Modular inverse of a unit `x` modulo prime `p` (Fermat).
pub(crate) fn inverse_mod_prime(x: u64, p: u64) -> u64 {
    pow_mod(x, p - 2, p)
}

/// Order of a unit `g` in `(ℤ/p)ˣ`, found by stripping prime factors of `p − 1`.
pub(crate) fn unit_order(g: u64, p: u64) -> u64 {
    let mut order = p - 1;
    for (q, _) in factor_u64(p - 1) {
        while order.is_multiple_of(q) && pow_mod(g, order / q, p) == 1 {
            order /= q;
        }
    }
    order
}

/// Least `m ≥ 1` with `aᵐ ≡ bᵐ (mod p)`.
pub fn multiplicative_order(a: &BigInt, b: &BigInt, p: u64) -> Result<u64> {
    require_prime(p)?;
    let (ar, br) = (residue(a, p), residue(b, p));
    if ar == 0 || br == 0 {
        return Err(Error::domain(format!("{p} divides ab")));
    }
    if p == 2 {
        return Ok(1);
    }
    let g = mul_mod(ar, inverse_mod_prime(br, p), p);
    Ok(unit_order(g, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(a: i64, b: i64, p: i64) -> u64 {
        let (a, b) = (a.rem_euclid(p), b.rem_euclid(p));
        let (mut x, mut y) = (a, b);
        for m in 1.. {
            if x == y {
                return m;
            }
            x = x * a % p;
            y = y * b % p;
        }
        unreachable!()
    }

    #[test]
    fn order_examples() {
        let ord = |a: i64, b: i64, p| multiplicative_order(&a.into(), &b.into(), p);
        assert_eq!(ord(2, 1, 7), Ok(3));
        assert_eq!(ord(2, 1, 3), Ok(2));
        assert_eq!(ord(5, 5, 11), Ok(1));
        assert!(ord(3, 1, 3).is_err());
        assert!(ord(2, 1, 9).is_err());
    }

    #[test]
    fn order_matches_exhaustive_search() {
        for p in [3i64, 5, 7, 11, 13, 101, 257] {
            for a in -20i64..20 {
                for b in 1i64..12 {
                    if a.rem_euclid(p) == 0 || b.rem_euclid(p) == 0 {
                        continue;
                    }
                    let m = multiplicative_order(&a.into(), &b.into(), p as u64).unwrap();
                    assert_eq!(m, brute(a, b, p), "a={a} b={b} p={p}");
                    assert_eq!((p as u64 - 1) % m, 0);
                }
            }
        }
    }
}
