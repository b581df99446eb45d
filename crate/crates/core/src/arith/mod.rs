//! Exact integer and rational arithmetic shared by every other module.

mod mobius;
mod order;
mod primes;
mod primeset;
mod rational;
mod valuation;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

pub use mobius::{divisors, euler_phi, mobius, mobius_table, omega};
pub use order::multiplicative_order;
pub use primes::{
    factor_biguint, factor_u64, is_prime, is_prime_u64, prime_divisors_u64, primes_up_to,
    TRIAL_LIMIT,
};
pub use primeset::{PrimeSet, PrimeSetKind};
pub use rational::ReducedRational;
pub use valuation::{
    padic_abs, padic_valuation, product_formula_check, valuation_bigint, valuation_biguint,
    valuation_of_power_difference, valuation_u64, PowerDifference,
};

/// Natural logarithm of a positive big integer, accurate to f64 precision.
/// Natural logarithm. With the `std` feature this is the platform `ln`,
/// which is correctly rounded where libm's can be one ulp off.
pub fn ln(x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.ln()
    }
    #[cfg(not(feature = "std"))]
    {
        libm::log(x)
    }
}

pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return crate::arith::ln(n.to_f64().unwrap_or(f64::INFINITY));
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(f64::INFINITY);
    crate::arith::ln(top) + shift as f64 * core::f64::consts::LN_2
}

pub fn ln_bigint_abs(n: &BigInt) -> f64 {
    ln_biguint(n.magnitude())
}
