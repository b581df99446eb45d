//! Periodic points, closed orbits and the sums built from them for
//! `x ↦ r·x` on a one-solenoid.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    factor_biguint, ln_bigint_abs, mobius_table, PowerDifference, PrimeSet, PrimeSetKind,
};
use crate::baer::SolenoidSystem;
use crate::error::{Error, Result};

/// Precomputed data for evaluating `F(n)` of one system at many `n`.
#[derive(Debug, Clone)]
pub struct FixedPointCounter {
    a: BigInt,
    b: BigInt,
    kind: PrimeSetKind,
    /// Primes of `S` (finite case) or of the excluded set (cofinite case)
    /// that do not divide `ab`; the others never divide `aⁿ − bⁿ`.
    local: Vec<PowerDifference>,
    /// `ln max(|a|, |b|)`.
    h: f64,
    /// `min/max` of `a, b` as signed floats, for `ln|1 − tⁿ|`.
    ratio: f64,
}

impl FixedPointCounter {
    pub fn new(sys: &SolenoidSystem) -> Result<Self> {
        let a = sys.r().numer().clone();
        let b = sys.r().denom().clone();
        let s = sys.infinite_height_set();
        let ab = &a * &b;
        let mut local = Vec::new();
        for &p in s.listed() {
            if !ab.is_multiple_of(&BigInt::from(p)) {
                local.push(PowerDifference::new(&a, &b, p)?);
            }
        }
        let (big, small) = if a.abs() >= b.abs() { (&a, &b) } else { (&b, &a) };
        let h = ln_bigint_abs(big);
        let ratio = libm::exp(ln_bigint_abs(small) - h) * sign(small) * sign(big);
        Ok(FixedPointCounter {
            a,
            b,
            kind: s.kind(),
            local,
            h,
            ratio,
        })
    }

    /// Topological entropy `ln max(|a|, |b|)`.
    pub fn entropy(&self) -> f64 {
        self.h
    }

    /// `F(n)` exactly.
    pub fn exact(&self, n: u64) -> Result<BigUint> {
        if n == 0 {
            return Err(Error::domain("n must be positive"));
        }
        match self.kind {
            PrimeSetKind::Finite => {
                let e = u32::try_from(n).map_err(|_| Error::capability("n beyond 2^32"))?;
                let mut f = (self.a.pow(e) - self.b.pow(e)).magnitude().clone();
                for pd in &self.local {
                    let v = pd.valuation(n);
                    if v > 0 {
                        f /= BigUint::from(pd.prime()).pow(v as u32);
                    }
                }
                Ok(f)
            }
            PrimeSetKind::Cofinite => Ok(self
                .local
                .iter()
                .map(|pd| BigUint::from(pd.prime()).pow(pd.valuation(n) as u32))
                .product()),
        }
    }

    /// `ln F(n)` without forming `aⁿ − bⁿ`.
    pub fn ln(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::domain("n must be positive"));
        }
        let local: f64 = self
            .local
            .iter()
            .map(|pd| pd.valuation(n) as f64 * crate::arith::ln(pd.prime() as f64))
            .sum();
        Ok(match self.kind {
            PrimeSetKind::Finite => {
                let tn = powi(self.ratio, n);
                n as f64 * self.h + libm::log1p(-tn) - local
            }
            PrimeSetKind::Cofinite => local,
        })
    }
}

fn sign(x: &BigInt) -> f64 {
    if x.is_negative() {
        -1.0
    } else {
        1.0
    }
}

fn powi(x: f64, n: u64) -> f64 {
    if n > i32::MAX as u64 {
        return 0.0;
    }
    libm::pow(x, n as f64)
}

/// `F_T(n)`, the number of points of period dividing `n`.
pub fn fixed_points(sys: &SolenoidSystem, n: u64) -> Result<BigUint> {
    FixedPointCounter::new(sys)?.exact(n)
}

/// `F_T(1), ..., F_T(upto)`.
pub fn fixed_point_sequence(sys: &SolenoidSystem, upto: u64) -> Result<Vec<BigUint>> {
    let fc = FixedPointCounter::new(sys)?;
    (1..=upto).map(|n| fc.exact(n)).collect()
}

/// `ln F_T(n)` computed in floating point from valuations.
pub fn log_fixed_points(sys: &SolenoidSystem, n: u64) -> Result<f64> {
    FixedPointCounter::new(sys)?.ln(n)
}

/// Möbius inversion `O(n) = (1/n) Σ_{d|n} μ(n/d) F(d)`; `f[i]` holds `F(i + 1)`.
///
/// Fails if some `O(n)` is negative or not an integer.
pub fn orbits_from_fixed_points(f: &[BigUint]) -> Result<Vec<BigUint>> {
    let n_max = f.len();
    let mu = mobius_table(n_max);
    let mut acc = vec![BigInt::zero(); n_max + 1];
    for d in 1..=n_max {
        let fd = BigInt::from(f[d - 1].clone());
        let mut k = 1;
        while d * k <= n_max {
            match mu[k] {
                1 => acc[d * k] += &fd,
                -1 => acc[d * k] -= &fd,
                _ => {}
            }
            k += 1;
        }
    }
    let mut out = Vec::with_capacity(n_max);
    for (n, s) in acc.into_iter().enumerate().skip(1) {
        let (q, r) = s.div_rem(&BigInt::from(n));
        if !r.is_zero() || q.is_negative() {
            return Err(Error::invariant(format!(
                "orbit count at n = {n} is {s}/{n}, not a nonnegative integer"
            )));
        }
        out.push(q.magnitude().clone());
    }
    Ok(out)
}

/// `O_T(1), ..., O_T(upto)`, the number of closed orbits of each exact length.
pub fn orbit_counts(sys: &SolenoidSystem, upto: u64) -> Result<Vec<BigUint>> {
    if upto == 0 {
        return Err(Error::domain("need at least one term"));
    }
    orbits_from_fixed_points(&fixed_point_sequence(sys, upto)?)
}

/// The terms `O(n)·e^{−hn}` for `n = 1..=upto`, evaluated in log space.
pub fn mertens_terms(sys: &SolenoidSystem, upto: usize) -> Result<Vec<f64>> {
    let fc = FixedPointCounter::new(sys)?;
    let h = fc.entropy();
    let mu = mobius_table(upto);
    let mut terms = vec![0.0; upto + 1];
    for d in 1..=upto {
        let lf = fc.ln(d as u64)?;
        let mut k = 1;
        while d * k <= upto {
            let n = d * k;
            let e = lf - n as f64 * h;
            if e < -745.0 {
                // Later multiples only get smaller.
                break;
            }
            let m = mu[k];
            if m != 0 {
                terms[n] += f64::from(m) * libm::exp(e);
            }
            k += 1;
        }
    }
    terms.remove(0);
    for (i, t) in terms.iter_mut().enumerate() {
        *t /= (i + 1) as f64;
    }
    Ok(terms)
}

/// `M_T(N) = Σ_{n≤N} O_T(n)·e^{−hn}` with `h = ln max(|a|, |b|)`.
pub fn mertens_sum(sys: &SolenoidSystem, upto: usize) -> Result<f64> {
    if upto == 0 {
        return Err(Error::domain("need at least one term"));
    }
    Ok(mertens_terms(sys, upto)?.iter().sum())
}

/// `π_T(N) = Σ_{n≤N} O_T(n)`.
pub fn pi_sum(sys: &SolenoidSystem, upto: u64) -> Result<BigUint> {
    Ok(orbit_counts(sys, upto)?.into_iter().sum())
}

/// Everything computed up to one bound, indexed from `n = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitProfile {
    pub upto: u64,
    pub f: Vec<BigUint>,
    pub o: Vec<BigUint>,
    /// Running Mertens sums `M(1), ..., M(upto)`.
    pub m: Vec<f64>,
    /// Running orbit totals `π(1), ..., π(upto)`.
    pub pi: Vec<BigUint>,
}

pub fn orbit_profile(sys: &SolenoidSystem, upto: u64) -> Result<OrbitProfile> {
    if upto == 0 {
        return Err(Error::domain("need at least one term"));
    }
    let f = fixed_point_sequence(sys, upto)?;
    let o = orbits_from_fixed_points(&f)?;
    let m = mertens_terms(sys, upto as usize)?
        .into_iter()
        .scan(0.0, |acc, t| {
            *acc += t;
            Some(*acc)
        })
        .collect();
    let pi = o
        .iter()
        .scan(BigUint::zero(), |acc, x| {
            *acc += x;
            Some(acc.clone())
        })
        .collect();
    Ok(OrbitProfile { upto, f, o, m, pi })
}

/// Growth of `(1/n) ln F(n)` at `N` and over the window `[N/2, N]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthEstimate {
    pub at_n: f64,
    pub sup_window: f64,
    pub inf_window: f64,
}

pub fn growth_estimate(sys: &SolenoidSystem, upto: u64) -> Result<GrowthEstimate> {
    if upto < 10 {
        return Err(Error::domain("growth estimate needs N >= 10"));
    }
    let fc = FixedPointCounter::new(sys)?;
    let rate = |n: u64| fc.ln(n).map(|l| l / n as f64);
    let mut sup = f64::NEG_INFINITY;
    let mut inf = f64::INFINITY;
    for n in upto / 2..=upto {
        let g = rate(n)?;
        sup = sup.max(g);
        inf = inf.min(g);
    }
    Ok(GrowthEstimate {
        at_n: rate(upto)?,
        sup_window: sup,
        inf_window: inf,
    })
}

/// Largest `k` accepted by [`mersenne_prime_set`].
pub const MERSENNE_CAP: u32 = 40;

/// `{2}` together with every prime dividing `2ⁿ − 1` for some `n ≤ k`.
///
/// With this set `F(n) = 1` for `n ≤ k` for the map `x ↦ 2x`.
pub fn mersenne_prime_set(k: u32) -> Result<PrimeSet> {
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    if k > MERSENNE_CAP {
        return Err(Error::capability(format!(
            "k = {k} exceeds the factorization cap {MERSENNE_CAP}"
        )));
    }
    let mut primes = vec![2u64];
    for n in 2..=k {
        let m = (BigUint::one() << n as usize) - 1u32;
        for (p, _) in factor_biguint(&m) {
            primes.push(p.to_u64().expect("factors of 2^40 - 1 fit in u64"));
        }
    }
    PrimeSet::finite(primes)
}
