use core::fmt;

use alloc::format;
use alloc::vec::Vec;

use super::primes::is_prime_u64;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimeSetKind {
    Finite,
    /// Every prime except the listed ones.
    Cofinite,
}

/// A finite or cofinite set of rational primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeSet {
    kind: PrimeSetKind,
    primes: Vec<u64>,
}

impl PrimeSet {
    fn build(kind: PrimeSetKind, primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut primes: Vec<u64> = primes.into_iter().collect();
        if let Some(&bad) = primes.iter().find(|&&p| !is_prime_u64(p)) {
            return Err(Error::domain(format!("{bad} is not prime")));
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(PrimeSet { kind, primes })
    }

    pub fn finite(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        Self::build(PrimeSetKind::Finite, primes)
    }

    pub fn cofinite(excluded: impl IntoIterator<Item = u64>) -> Result<Self> {
        Self::build(PrimeSetKind::Cofinite, excluded)
    }

    pub fn empty() -> Self {
        PrimeSet {
            kind: PrimeSetKind::Finite,
            primes: Vec::new(),
        }
    }

    pub fn kind(&self) -> PrimeSetKind {
        self.kind
    }

    pub fn is_finite(&self) -> bool {
        self.kind == PrimeSetKind::Finite
    }

    /// Members for a finite set, excluded primes for a cofinite one.
    pub fn listed(&self) -> &[u64] {
        &self.primes
    }

    pub fn contains(&self, p: u64) -> bool {
        let listed = self.primes.binary_search(&p).is_ok();
        match self.kind {
            PrimeSetKind::Finite => listed,
            PrimeSetKind::Cofinite => !listed && is_prime_u64(p),
        }
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = self
            .primes
            .iter()
            .map(|p| format!("{p}"))
            .collect::<Vec<_>>()
            .join(",");
        match self.kind {
            PrimeSetKind::Finite => write!(f, "{{{list}}}"),
            PrimeSetKind::Cofinite => write!(f, "P\\{{{list}}}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn canonical_order() {
        let s = PrimeSet::finite([7, 2, 3, 2]).unwrap();
        assert_eq!(s.listed(), &[2, 3, 7]);
        assert_eq!(s.to_string(), "{2,3,7}");
        assert!(PrimeSet::finite([4]).is_err());
    }

    #[test]
    fn cofinite_membership() {
        let s = PrimeSet::cofinite([3, 5]).unwrap();
        assert!(s.contains(2) && s.contains(7) && !s.contains(3) && !s.contains(9));
        assert_eq!(s.to_string(), "P\\{3,5}");
    }
}
