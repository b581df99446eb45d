use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    mobius_table, omega, primes_up_to, PrimeSet, PrimeSetKind, ReducedRational,
};
use crate::baer::{MapMode, SolenoidSystem};
use crate::error::{Error, Result};
use crate::orbits::FixedPointCounter;

/// Outcome of the test `0 ≤ Σ_{d|n} μ(n/d) a_d ≡ 0 (mod n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapVerdict {
    Ok,
    /// First failing `n` and the value of `Σ_{d|n} μ(n/d) a_d` there.
    Fail { n: usize, sum: BigInt },
}

impl MapVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, MapVerdict::Ok)
    }
}

/// Whether `a_1, ..., a_N` can count the periodic points of some map.
pub fn realizable_as_map(a: &[BigInt]) -> MapVerdict {
    let mu = mobius_table(a.len());
    for n in 1..=a.len() {
        let mut sum = BigInt::zero();
        for d in (1..=n).filter(|d| n % d == 0) {
            match mu[n / d] {
                1 => sum += &a[d - 1],
                -1 => sum -= &a[d - 1],
                _ => {}
            }
        }
        if sum.is_negative() || !sum.is_multiple_of(&BigInt::from(n)) {
            return MapVerdict::Fail { n, sum };
        }
    }
    MapVerdict::Ok
}

/// `F(m) | F(n)` whenever `m | n`.
pub fn is_divisibility_sequence(f: &[BigInt]) -> bool {
    (1..=f.len()).all(|m| {
        (2 * m..=f.len()).step_by(m).all(|n| {
            let (fm, fn_) = (&f[m - 1], &f[n - 1]);
            if fm.is_zero() {
                fn_.is_zero()
            } else {
                fn_.is_multiple_of(fm)
            }
        })
    })
}

/// Outcome of the two conditions characterising `|nᵏ − mᵏ|·∏_{p∈S}|nᵏ − mᵏ|_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnglandSmythVerdict {
    Ok,
    /// `a_k ∤ nᵏ − mᵏ`.
    NotDivisor { k: usize },
    /// `gcd(a_k, (nˡ − mˡ)/a_l) = g > 1`.
    SharedFactor { k: usize, l: usize, gcd: BigInt },
}

impl EnglandSmythVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, EnglandSmythVerdict::Ok)
    }
}

fn power_differences(n: &BigInt, m: &BigInt, upto: usize) -> Result<Vec<BigInt>> {
    if !n.gcd(m).is_one() {
        return Err(Error::domain("n and m must be coprime"));
    }
    if n.abs() == m.abs() {
        return Err(Error::domain("n = ±m makes nᵏ − mᵏ vanish"));
    }
    Ok((1..=upto as u32).map(|k| n.pow(k) - m.pow(k)).collect())
}

/// Checks `a_k | nᵏ − mᵏ` and `gcd(a_k, (nˡ − mˡ)/a_l) = 1` for `k ≠ l ≤ K`.
pub fn england_smyth_check(
    a: &[BigInt],
    n: &BigInt,
    m: &BigInt,
    bound: usize,
) -> Result<EnglandSmythVerdict> {
    let k_max = bound.min(a.len());
    if a[..k_max].iter().any(|x| !x.is_positive()) {
        return Err(Error::domain("terms must be positive"));
    }
    let diffs = power_differences(n, m, k_max)?;
    let mut cofactors = Vec::with_capacity(k_max);
    for k in 0..k_max {
        let (q, r) = diffs[k].abs().div_rem(&a[k]);
        if !r.is_zero() {
            return Ok(EnglandSmythVerdict::NotDivisor { k: k + 1 });
        }
        cofactors.push(q);
    }
    for k in 0..k_max {
        for l in 0..k_max {
            if k == l {
                continue;
            }
            let g = a[k].gcd(&cofactors[l]);
            if !g.is_one() {
                return Ok(EnglandSmythVerdict::SharedFactor {
                    k: k + 1,
                    l: l + 1,
                    gcd: g,
                });
            }
        }
    }
    Ok(EnglandSmythVerdict::Ok)
}

/// Recovers the finite set `S` with `a_k = |nᵏ − mᵏ|·∏_{p∈S}|nᵏ − mᵏ|_p`.
///
/// Only primes that actually divide some cofactor `(nˡ − mˡ)/a_l` are
/// returned; primes of `nm` never do. The set is checked by regenerating
/// every `a_k`.
pub fn s_set_recover(
    a: &[BigInt],
    n: &BigInt,
    m: &BigInt,
    prime_bound: u64,
    bound: usize,
) -> Result<PrimeSet> {
    let k_max = bound.min(a.len());
    let verdict = england_smyth_check(a, n, m, k_max)?;
    if !verdict.is_ok() {
        return Err(Error::domain(format!("conditions fail: {verdict:?}")));
    }
    let diffs = power_differences(n, m, k_max)?;
    let primes = primes_up_to(prime_bound);
    let mut found = Vec::new();
    for k in 0..k_max {
        let mut c = diffs[k].magnitude() / a[k].magnitude();
        for &p in &primes {
            if c.is_one() {
                break;
            }
            let pb = BigUint::from(p);
            if (&c % &pb).is_zero() {
                found.push(p);
                while (&c % &pb).is_zero() {
                    c /= &pb;
                }
            }
        }
    }
    let s = PrimeSet::finite(found)?;
    for k in 0..k_max {
        let mut x = diffs[k].magnitude().clone();
        for &p in s.listed() {
            let pb = BigUint::from(p);
            while (&x % &pb).is_zero() {
                x /= &pb;
            }
        }
        if &x != a[k].magnitude() {
            return Err(Error::Inconsistency(format!(
                "recovered S = {s} does not reproduce term {}; raise the prime bound",
                k + 1
            )));
        }
    }
    Ok(s)
}

/// Multipliers sharing the fixed-point sequence of a system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaClass {
    pub members: Vec<ReducedRational>,
    /// `2^{ω(a)} + 2^{ω(b)}` for the original `r = a/b`, reported for comparison.
    pub omega_count: BigUint,
}

/// Every `r' = a'/b'` built from primes of `S` with `max(|a'|, |b'|)` at most
/// `max(|a|, |b|) + slack` whose `F(n)` agrees with that of `sys` for `n ≤ N`.
pub fn zeta_class_enumerate(sys: &SolenoidSystem, upto: u64, slack: u64) -> Result<ZetaClass> {
    let s = sys.infinite_height_set();
    if s.kind() != PrimeSetKind::Finite || sys.mode() != MapMode::Automorphism {
        return Err(Error::domain("zeta classes are enumerated for finite-S automorphisms"));
    }
    let r = sys.r();
    let height = r
        .height()
        .to_u64()
        .and_then(|h| h.checked_add(slack))
        .ok_or_else(|| Error::capability("height bound beyond 64 bits"))?;
    let target = FixedPointCounter::new(sys)?;
    let target: Vec<BigUint> = (1..=upto).map(|n| target.exact(n)).collect::<Result<_>>()?;

    let units = s_units_up_to(s.listed(), height);
    let mut members = Vec::new();
    for &num in &units {
        for &den in &units {
            if num.gcd(&den) != 1 || (num == 1 && den == 1) {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = ReducedRational::new(BigInt::from(num) * sign, BigInt::from(den))?;
                let other = SolenoidSystem::over_ring(s, cand.clone(), MapMode::Automorphism)?;
                let fc = FixedPointCounter::new(&other)?;
                let mut same = true;
                for (n, t) in (1..=upto).zip(&target) {
                    if &fc.exact(n)? != t {
                        same = false;
                        break;
                    }
                }
                if same {
                    members.push(cand);
                }
            }
        }
    }
    members.sort();
    let omega_count = (BigUint::one() << omega(r.numer().magnitude()))
        + (BigUint::one() << omega(r.denom().magnitude()));
    Ok(ZetaClass {
        members,
        omega_count,
    })
}

/// Positive integers `≤ bound` whose prime factors all lie in `primes`.
fn s_units_up_to(primes: &[u64], bound: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &p in primes {
        let mut next = Vec::new();
        for &u in &out {
            let mut v = u;
            while let Some(w) = v.checked_mul(p).filter(|&w| w <= bound) {
                next.push(w);
                v = w;
            }
        }
        out.extend(next);
    }
    out.sort_unstable();
    out
}
