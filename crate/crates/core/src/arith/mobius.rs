use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use super::primes::{factor_biguint, factor_u64};
use crate::error::{Error, Result};

pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::domain("Möbius function is defined for n ≥ 1"));
    }
    let f = factor_u64(n);
    if f.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.len().is_multiple_of(2) { 1 } else { -1 })
}

/// `μ(0..=n)` by a linear sieve; index 0 holds 0.
pub fn mobius_table(n: usize) -> Vec<i8> {
    let mut mu = vec![0i8; n + 1];
    if n == 0 {
        return mu;
    }
    mu[1] = 1;
    let mut is_composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !is_composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            is_composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu
}

/// Divisors of `n ≥ 1`, increasing.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor_u64(n) {
        let len = out.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

/// Number of distinct prime divisors, ω(n), with ω(1) = 0.
pub fn omega(n: &BigUint) -> usize {
    if n.is_one() {
        0
    } else {
        factor_biguint(n).len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1), Ok(1));
        assert_eq!(mobius(6), Ok(1));
        assert_eq!(mobius(12), Ok(0));
        assert_eq!(mobius(30), Ok(-1));
        assert!(mobius(0).is_err());
    }

    #[test]
    fn table_matches_factorization() {
        let table = mobius_table(2000);
        for n in 1..=2000u64 {
            assert_eq!(table[n as usize], mobius(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn divisor_sum_of_mobius_vanishes() {
        for n in 2..500u64 {
            let s: i64 = divisors(n).iter().map(|&d| mobius(d).unwrap() as i64).sum();
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn phi_and_omega() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(36), 12);
        assert_eq!(omega(&BigUint::from(1u32)), 0);
        assert_eq!(omega(&BigUint::from(360u32)), 3);
    }
}
