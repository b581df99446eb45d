//! Subgroups of ℚ described by characteristic sequences.
//!
//! A sequence `(k_p)` with `k_p ∈ ℕ ∪ {∞}` describes the group of rationals
//! `a/b` with `v_p(b) ≤ k_p` for every prime `p`. Two such groups are
//! isomorphic exactly when their sequences agree at all but finitely many
//! primes and every disagreement is between finite values.
//!
//! Only eventually constant sequences are representable: a default height
//! plus a finite list of exceptions. Arbitrary sequences are not finitely
//! describable, so [`CharacteristicSequence::random`] truncates a random
//! sequence at a prime bound and falls back to the default beyond it.

use alloc::collections::BTreeMap;
use alloc::format;
use core::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::arith::{
    factor_biguint, is_prime_u64, primes_up_to, PrimeSet, ReducedRational,
};
use crate::error::{Error, Result};

/// A p-height: a natural number or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Height {
    Finite(u32),
    Infinite,
}

impl Height {
    pub fn is_infinite(self) -> bool {
        self == Height::Infinite
    }

    /// Whether a denominator exponent `v` is allowed by this height.
    pub fn admits(self, v: u64) -> bool {
        match self {
            Height::Finite(k) => v <= k as u64,
            Height::Infinite => true,
        }
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(k) => write!(f, "{k}"),
            Height::Infinite => f.write_str("inf"),
        }
    }
}

/// Eventually constant characteristic sequence in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharacteristicSequence {
    default: Height,
    exceptions: BTreeMap<u64, Height>,
}

impl CharacteristicSequence {
    /// Builds a canonical sequence; exceptions equal to the default are dropped.
    pub fn new(default: Height, exceptions: impl IntoIterator<Item = (u64, Height)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (p, h) in exceptions {
            if !is_prime_u64(p) {
                return Err(Error::domain(format!("exception key {p} is not prime")));
            }
            if map.insert(p, h).is_some() {
                return Err(Error::domain(format!("prime {p} listed twice")));
            }
        }
        map.retain(|_, h| *h != default);
        Ok(CharacteristicSequence {
            default,
            exceptions: map,
        })
    }

    /// ℤ.
    pub fn integers() -> Self {
        CharacteristicSequence {
            default: Height::Finite(0),
            exceptions: BTreeMap::new(),
        }
    }

    /// ℚ.
    pub fn rationals() -> Self {
        CharacteristicSequence {
            default: Height::Infinite,
            exceptions: BTreeMap::new(),
        }
    }

    /// The subring `R_S` where exactly the primes of `s` are inverted.
    pub fn ring_of(s: &PrimeSet) -> Self {
        let (default, other) = if s.is_finite() {
            (Height::Finite(0), Height::Infinite)
        } else {
            (Height::Infinite, Height::Finite(0))
        };
        CharacteristicSequence {
            default,
            exceptions: s.listed().iter().map(|&p| (p, other)).collect(),
        }
    }

    /// Seeded random sequence: each prime below `prime_bound` gets a height in
    /// `{0, 1, 2, 3, ∞}`, all larger primes get `default`.
    pub fn random(seed: u64, prime_bound: u64, default: Height) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let exceptions = primes_up_to(prime_bound).into_iter().map(|p| {
            let h = match rng.next_u32() % 5 {
                4 => Height::Infinite,
                k => Height::Finite(k),
            };
            (p, h)
        });
        Self::new(default, exceptions).expect("sieve output is prime")
    }

    pub fn default_height(&self) -> Height {
        self.default
    }

    pub fn exceptions(&self) -> impl Iterator<Item = (u64, Height)> + '_ {
        self.exceptions.iter().map(|(&p, &h)| (p, h))
    }

    /// `k_p`.
    pub fn height(&self, p: u64) -> Height {
        self.exceptions.get(&p).copied().unwrap_or(self.default)
    }

    /// Baer's criterion: equal defaults, and every disagreement finite on both sides.
    pub fn same_type(&self, other: &Self) -> bool {
        if self.default != other.default {
            return false;
        }
        let keys = self.exceptions.keys().chain(other.exceptions.keys());
        keys.into_iter().all(|&p| {
            let (a, b) = (self.height(p), other.height(p));
            a == b || (!a.is_infinite() && !b.is_infinite())
        })
    }

    /// Membership of a rational in the subgroup `H((k_p))`.
    pub fn contains(&self, q: &BigRational) -> bool {
        if q.is_zero() {
            return true;
        }
        let den = q.denom().magnitude();
        if den.is_one() {
            return true;
        }
        factor_biguint(den).into_iter().all(|(p, e)| match p.to_u64() {
            Some(p) => self.height(p).admits(e as u64),
            None => self.default.admits(e as u64),
        })
    }

    /// `S(H)`, the primes of infinite height.
    pub fn infinite_height_set(&self) -> PrimeSet {
        if self.default.is_infinite() {
            let finite = self.exceptions.keys().copied();
            PrimeSet::cofinite(finite).expect("keys are prime")
        } else {
            let infinite = self
                .exceptions
                .iter()
                .filter(|(_, h)| h.is_infinite())
                .map(|(&p, _)| p);
            PrimeSet::finite(infinite).expect("keys are prime")
        }
    }
}

impl fmt::Display for CharacteristicSequence {
    /// `default=<int|inf>; p1:k1, p2:k2`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "default={}", self.default)?;
        if !self.exceptions.is_empty() {
            let parts: alloc::vec::Vec<_> = self
                .exceptions
                .iter()
                .map(|(p, h)| format!("{p}:{h}"))
                .collect();
            write!(f, "; {}", parts.join(", "))?;
        }
        Ok(())
    }
}

/// How `x ↦ r·x` acts on the subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapMode {
    Automorphism,
    Endomorphism,
}

/// A subgroup of ℚ together with a compatible multiplier `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolenoidSystem {
    chi: CharacteristicSequence,
    r: ReducedRational,
    mode: MapMode,
    s: PrimeSet,
}

impl SolenoidSystem {
    pub fn chi(&self) -> &CharacteristicSequence {
        &self.chi
    }

    pub fn r(&self) -> &ReducedRational {
        &self.r
    }

    pub fn mode(&self) -> MapMode {
        self.mode
    }

    /// Cached `S(H)`.
    pub fn infinite_height_set(&self) -> &PrimeSet {
        &self.s
    }

    /// Convenience constructor for the ring `R_S` with multiplier `r`.
    pub fn over_ring(s: &PrimeSet, r: ReducedRational, mode: MapMode) -> Result<Self> {
        validate_system(CharacteristicSequence::ring_of(s), r, mode)
    }
}

fn prime_factors_u64(n: &BigUint) -> Result<alloc::vec::Vec<u64>> {
    if n.is_one() {
        return Ok(alloc::vec::Vec::new());
    }
    factor_biguint(n)
        .into_iter()
        .map(|(p, _)| {
            p.to_u64()
                .ok_or_else(|| Error::capability("prime factor of r beyond 64 bits"))
        })
        .collect()
}

/// Checks that `x ↦ r·x` is well defined on `H(chi)` in the requested mode.
///
/// Automorphisms need every prime of `num(r)·den(r)` at infinite height,
/// endomorphisms only the primes of `den(r)`.
pub fn validate_system(
    chi: CharacteristicSequence,
    r: ReducedRational,
    mode: MapMode,
) -> Result<SolenoidSystem> {
    if !r.is_map_parameter() {
        return Err(Error::domain(format!("map parameter {r} is not ergodic")));
    }
    let mut need = prime_factors_u64(r.denom().magnitude())?;
    if mode == MapMode::Automorphism {
        need.extend(prime_factors_u64(r.numer().magnitude())?);
        need.sort_unstable();
    }
    if let Some(&p) = need.iter().find(|&&p| !chi.height(p).is_infinite()) {
        let which = if r.denom().magnitude() % p == BigUint::zero() {
            "divides den(r)"
        } else {
            "divides num(r)"
        };
        return Err(Error::Validation {
            prime: p,
            reason: format!("{which} but has finite height {}", chi.height(p)),
        });
    }
    let s = chi.infinite_height_set();
    Ok(SolenoidSystem { chi, r, mode, s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use Height::{Finite, Infinite};

    fn seq(default: Height, ex: &[(u64, Height)]) -> CharacteristicSequence {
        CharacteristicSequence::new(default, ex.iter().copied()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn canonical_form_drops_default_exceptions() {
        let c = seq(Finite(1), &[(2, Finite(1)), (3, Finite(0))]);
        assert_eq!(c.exceptions().collect::<alloc::vec::Vec<_>>(), vec![(3, Finite(0))]);
        assert_eq!(c.to_string(), "default=1; 3:0");
        assert!(CharacteristicSequence::new(Finite(0), [(4, Infinite)]).is_err());
        assert!(CharacteristicSequence::new(Finite(0), [(2, Infinite), (2, Finite(1))]).is_err());
    }

    #[test]
    fn same_type_examples() {
        assert!(seq(Finite(1), &[(2, Finite(0))]).same_type(&seq(Finite(1), &[(3, Finite(5))])));
        assert!(!seq(Finite(0), &[]).same_type(&seq(Infinite, &[])));
        assert!(!seq(Finite(0), &[(2, Infinite)]).same_type(&seq(Finite(0), &[(2, Finite(3))])));
    }

    #[test]
    fn contains_examples() {
        let c = seq(Finite(1), &[(2, Finite(0))]);
        assert!(c.contains(&q(1, 3)));
        assert!(!c.contains(&q(1, 9)));
        assert!(!c.contains(&q(1, 2)));
        assert!(c.contains(&q(0, 1)));
        assert!(c.contains(&q(7, 15)));
    }

    #[test]
    fn infinite_height_set_examples() {
        let cof = seq(Infinite, &[(3, Finite(0)), (5, Finite(0))]);
        assert_eq!(cof.infinite_height_set(), PrimeSet::cofinite([3, 5]).unwrap());
        let z6 = seq(Finite(0), &[(2, Infinite), (3, Infinite)]);
        assert_eq!(z6.infinite_height_set(), PrimeSet::finite([2, 3]).unwrap());
        assert_eq!(CharacteristicSequence::integers().infinite_height_set(), PrimeSet::empty());
    }

    #[test]
    fn validation_examples() {
        let two = ReducedRational::from_integer(2);
        let z_half = seq(Finite(0), &[(2, Infinite)]);
        assert!(validate_system(z_half, two.clone(), MapMode::Automorphism).is_ok());
        let err = validate_system(CharacteristicSequence::integers(), two.clone(), MapMode::Automorphism);
        assert!(matches!(err, Err(Error::Validation { prime: 2, .. })));
        assert!(validate_system(CharacteristicSequence::integers(), two, MapMode::Endomorphism).is_ok());
        let half = ReducedRational::new(1, 2).unwrap();
        let err = validate_system(CharacteristicSequence::integers(), half, MapMode::Endomorphism);
        assert!(matches!(err, Err(Error::Validation { prime: 2, .. })));
    }

    #[test]
    fn random_sequences_are_reproducible() {
        let a = CharacteristicSequence::random(7, 50, Finite(0));
        let b = CharacteristicSequence::random(7, 50, Finite(0));
        assert_eq!(a, b);
        assert!(a.exceptions().all(|(p, _)| p <= 50));
    }
}
