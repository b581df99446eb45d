//! Orbit Dirichlet series, Mertens slopes, polylogarithmic orbit growth and
//! the stage-by-stage construction of prescribed growth from products of
//! solenoid maps.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{mobius_table, PowerDifference, PrimeSetKind, ReducedRational};
use crate::baer::{MapMode, SolenoidSystem};
use crate::error::{Error, Result};
use crate::orbits::{mersenne_prime_set, mertens_terms, FixedPointCounter};

/// `F(1), ..., F(upto)` for a cofinite system as machine integers.
fn cofinite_fixed_points(sys: &SolenoidSystem, upto: usize) -> Result<Vec<u128>> {
    let s = sys.infinite_height_set();
    if s.kind() != PrimeSetKind::Cofinite {
        return Err(Error::domain(
            "this operation needs a cofinite set of infinite-height primes",
        ));
    }
    let a = sys.r().numer();
    let b = sys.r().denom();
    let ab = a * b;
    let mut local = Vec::new();
    for &p in s.listed() {
        if !ab.is_multiple_of(&BigInt::from(p)) {
            local.push(PowerDifference::new(a, b, p)?);
        }
    }
    (1..=upto as u64)
        .map(|n| {
            local.iter().try_fold(1u128, |acc, pd| {
                u32::try_from(pd.valuation(n))
                    .ok()
                    .and_then(|v| u128::from(pd.prime()).checked_pow(v))
                    .and_then(|x| acc.checked_mul(x))
                    .ok_or_else(|| Error::capability("fixed-point count overflows 128 bits"))
            })
        })
        .collect()
}

/// `O(1), ..., O(upto)` from machine-sized `F` by Möbius inversion.
fn small_orbits(f: &[u128]) -> Result<Vec<u128>> {
    let n_max = f.len();
    let mu = mobius_table(n_max);
    let mut acc = vec![0i128; n_max + 1];
    for d in 1..=n_max {
        let fd = i128::try_from(f[d - 1]).map_err(|_| Error::capability("count exceeds i128"))?;
        for k in 1..=n_max / d {
            acc[d * k] += i128::from(mu[k]) * fd;
        }
    }
    acc.iter()
        .enumerate()
        .skip(1)
        .map(|(n, &s)| {
            let n = n as i128;
            if s < 0 || s % n != 0 {
                Err(Error::invariant(format!(
                    "orbit count at n = {n} is {s}/{n}, not a nonnegative integer"
                )))
            } else {
                Ok((s / n) as u128)
            }
        })
        .collect()
}

/// A truncated orbit Dirichlet series with an estimate of what was dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirichletPartial {
    pub s: f64,
    pub upto: usize,
    /// `Σ_{n≤N} O(n)/nˢ`.
    pub partial: f64,
    /// Exponent `A` with `F(n) ≤ n^A` fitted on `(N/2, N]`.
    pub exponent: f64,
    /// `C·N^{A−s}/(s−A)` with `C = 2`; infinite when `s ≤ A`.
    pub tail_bound: f64,
}

/// Safety factor on the tail bound.
pub const TAIL_SAFETY: f64 = 2.0;

pub fn dirichlet_partial(sys: &SolenoidSystem, s: f64, upto: usize) -> Result<DirichletPartial> {
    if !(s > 1.0) {
        return Err(Error::domain("s must exceed 1"));
    }
    if upto == 0 {
        return Err(Error::domain("need at least one term"));
    }
    let f = cofinite_fixed_points(sys, upto)?;
    let o = small_orbits(&f)?;
    let partial = o
        .iter()
        .enumerate()
        .map(|(i, &x)| x as f64 * libm::pow((i + 1) as f64, -s))
        .sum();
    let exponent = (upto / 2 + 1..=upto)
        .filter(|&n| n >= 2)
        .map(|n| crate::arith::ln(f[n - 1] as f64) / crate::arith::ln(n as f64))
        .fold(0.0, f64::max);
    // O(n) ≤ F(n)/n ≤ n^{A−1}, and Σ_{n>N} n^{A−1−s} ≤ N^{A−s}/(s−A).
    let tail_bound = if s > exponent {
        TAIL_SAFETY * libm::pow(upto as f64, exponent - s) / (s - exponent)
    } else {
        f64::INFINITY
    };
    Ok(DirichletPartial {
        s,
        upto,
        partial,
        exponent,
        tail_bound,
    })
}

/// Closed form of the orbit Dirichlet series of `x ↦ 2x` on the ring where
/// every prime except 3 and 5 is inverted.
pub fn dirichlet_reference_3_5(s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::domain("the closed form has a pole at s = 0 and needs s > 0"));
    }
    let p = |b: f64, e: f64| libm::pow(b, -e);
    let t = s + 1.0;
    let three = 1.0 - p(3.0, s);
    let five = 1.0 - p(5.0, s);
    let first = 1.0 - p(2.0, t);
    let second = 3.0 * p(2.0, t) * (1.0 - p(3.0, t) - p(2.0, t) + p(6.0, t)) / three;
    let third =
        15.0 * p(4.0, t) * (1.0 - p(3.0, t) - p(5.0, t) + p(15.0, t)) / (three * five);
    Ok(first + second + third)
}

/// `(M(N) − M(N/10)) / ln 10`, an estimate of `k` in `M(N) = k ln N + C + O(1/N)`.
pub fn mertens_slope(sys: &SolenoidSystem, upto: usize) -> Result<f64> {
    if !sys.infinite_height_set().is_finite() {
        return Err(Error::domain("Mertens slopes need a finite set of infinite-height primes"));
    }
    if upto < 1000 {
        return Err(Error::domain("Mertens slope needs N >= 1000"));
    }
    let terms = mertens_terms(sys, upto)?;
    let tail: f64 = terms[upto / 10..].iter().sum();
    Ok(tail / core::f64::consts::LN_10)
}

/// Least-squares fit `ln π(n) ≈ K ln ln n + ln C` over `n ∈ [N/100, N]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolylogFit {
    pub k_hat: f64,
    pub c_hat: f64,
}

/// Fits `π(N) ≈ C (ln N)^K`; `K` estimates the order of the pole of the
/// orbit Dirichlet series at 0.
pub fn pi_polylog_fit(sys: &SolenoidSystem, upto: usize) -> Result<PolylogFit> {
    if upto < 10_000 {
        return Err(Error::domain("polylog fit needs N >= 10^4"));
    }
    let o = small_orbits(&cofinite_fixed_points(sys, upto)?)?;
    let mut pi = 0u128;
    let (mut n_pts, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let (mut lo, mut hi) = (u128::MAX, 0u128);
    for (i, &x) in o.iter().enumerate() {
        pi += x;
        let n = i + 1;
        if n < upto / 100 {
            continue;
        }
        lo = lo.min(pi);
        hi = hi.max(pi);
        let u = crate::arith::ln(crate::arith::ln(n as f64));
        let v = crate::arith::ln(pi as f64);
        n_pts += 1.0;
        sx += u;
        sy += v;
        sxx += u * u;
        sxy += u * v;
    }
    if lo == hi {
        return Ok(PolylogFit {
            k_hat: 0.0,
            c_hat: hi as f64,
        });
    }
    let k_hat = (n_pts * sxy - sx * sy) / (n_pts * sxx - sx * sx);
    let intercept = (sy - k_hat * sx) / n_pts;
    Ok(PolylogFit {
        k_hat,
        c_hat: libm::exp(intercept),
    })
}

/// Product of copies of `x ↦ 2x` on `ℤ[1/S_k]`, `k = 1, 2, ...`, chosen so
/// that `F(n)` tracks a prescribed sequence `θ`.
#[derive(Debug, Clone)]
pub struct GrowthConstruction {
    /// Copies of stage `k`'s component, `k = 1..`.
    pub multiplicities: Vec<u64>,
    /// Stage `k` is `x ↦ 2x` on `ℤ[1/S_k]` with `S_k` from [`mersenne_prime_set`].
    pub component_systems: Vec<SolenoidSystem>,
    /// `F(1), ..., F(N)` of the product.
    pub f_product: Vec<BigUint>,
    /// `θ_n ≤ F(n) ≤ 2ⁿ θ_n` for `n = 2, ..., N`.
    pub sandwich: Vec<bool>,
}

impl GrowthConstruction {
    pub fn all_sandwiched(&self) -> bool {
        self.sandwich.iter().all(|&b| b)
    }
}

/// Builds the product stage by stage: stage `k` fixes the exponent of its
/// component at `n = k + 1`, where it first has more than one fixed point,
/// using the least multiplicity that lifts `F(k + 1)` to at least `θ_{k+1}`.
///
/// `theta[i]` is `θ_{i+2}`.
pub fn growth_construction(theta: &[BigUint]) -> Result<GrowthConstruction> {
    if theta.iter().any(Zero::is_zero) {
        return Err(Error::domain("every target must be at least 1"));
    }
    let top = theta.len() + 1;
    let stages = theta.len();
    if stages > crate::orbits::MERSENNE_CAP as usize {
        return Err(Error::capability(format!(
            "at most {} stages are supported",
            crate::orbits::MERSENNE_CAP
        )));
    }
    let two = ReducedRational::from_integer(2);
    let mut component_systems = Vec::with_capacity(stages);
    let mut tables: Vec<Vec<BigUint>> = Vec::with_capacity(stages);
    for k in 1..=stages as u32 {
        let sys = SolenoidSystem::over_ring(&mersenne_prime_set(k)?, two.clone(), MapMode::Automorphism)?;
        let fc = FixedPointCounter::new(&sys)?;
        tables.push((1..=top as u64).map(|n| fc.exact(n)).collect::<Result<_>>()?);
        component_systems.push(sys);
    }
    let mut multiplicities = Vec::with_capacity(stages);
    let mut f_product = vec![BigUint::one(); top];
    for (k, table) in tables.iter().enumerate() {
        let n = k + 2;
        let target = &theta[k];
        let base = &table[n - 1];
        let mut m = 0u64;
        let mut value = f_product[n - 1].clone();
        if !base.is_one() {
            while &value < target {
                value *= base;
                m += 1;
            }
        }
        let e = u32::try_from(m).map_err(|_| Error::capability("multiplicity too large"))?;
        for (slot, fv) in f_product.iter_mut().zip(table) {
            if !fv.is_one() {
                *slot *= fv.pow(e);
            }
        }
        multiplicities.push(m);
    }
    let sandwich = theta
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let f = &f_product[i + 1];
            f >= t && *f <= t << (i + 2)
        })
        .collect();
    Ok(GrowthConstruction {
        multiplicities,
        component_systems,
        f_product,
        sandwich,
    })
}

/// `θ_n = 2^{n²}` for `n = 2..=upto`.
pub fn square_exponent_targets(upto: u32) -> Vec<BigUint> {
    (2..=upto).map(|n| BigUint::one() << (n * n) as usize).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeSet;
    use num_traits::ToPrimitive;

    fn excluding(e: &[u64], r: i64) -> SolenoidSystem {
        let s = PrimeSet::cofinite(e.iter().copied()).unwrap();
        SolenoidSystem::over_ring(&s, ReducedRational::from_integer(r), MapMode::Automorphism)
            .unwrap()
    }

    fn ring(p: &[u64], r: i64) -> SolenoidSystem {
        let s = PrimeSet::finite(p.iter().copied()).unwrap();
        SolenoidSystem::over_ring(&s, ReducedRational::from_integer(r), MapMode::Automorphism)
            .unwrap()
    }

    #[test]
    fn trivial_dirichlet_values() {
        assert_eq!(dirichlet_partial(&excluding(&[3], 2), 2.0, 1).unwrap().partial, 1.0);
        for s in [1.5, 2.0, 7.0] {
            assert_eq!(dirichlet_partial(&excluding(&[], 2), s, 500).unwrap().partial, 1.0);
        }
        assert!(dirichlet_partial(&ring(&[2], 2), 2.0, 10).is_err());
        assert!(dirichlet_partial(&excluding(&[3], 2), 1.0, 10).is_err());
    }

    #[test]
    fn small_orbit_counts_match_exact_route() {
        let sys = excluding(&[3, 5], 2);
        let f = cofinite_fixed_points(&sys, 60).unwrap();
        let exact = crate::orbits::orbit_counts(&sys, 60).unwrap();
        let small = small_orbits(&f).unwrap();
        for (x, y) in small.iter().zip(&exact) {
            assert_eq!(*x, y.to_u128().unwrap());
        }
        assert_eq!(&f[..4], &[1, 3, 1, 15]);
    }

    #[test]
    fn closed_form_matches_partial_sum() {
        let d = dirichlet_partial(&excluding(&[3, 5], 2), 3.0, 20_000).unwrap();
        let r = dirichlet_reference_3_5(3.0).unwrap();
        assert!((d.partial - r).abs() < 1e-6, "{} vs {}", d.partial, r);
        assert!(d.tail_bound < 1e-4);
        assert!((dirichlet_reference_3_5(60.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(dirichlet_reference_3_5(1.0).unwrap().is_finite());
        assert!(dirichlet_reference_3_5(0.0).is_err());
    }

    #[test]
    fn slope_for_doubling_on_dyadic_rationals() {
        let k = mertens_slope(&ring(&[2], 2), 10_000).unwrap();
        assert!((k - 1.0).abs() < 0.01, "{k}");
        assert!(mertens_slope(&ring(&[2], 2), 999).is_err());
    }

    #[test]
    fn degenerate_polylog_fit() {
        let fit = pi_polylog_fit(&excluding(&[], 2), 10_000).unwrap();
        assert_eq!(fit.k_hat, 0.0);
        assert_eq!(fit.c_hat, 1.0);
    }

    #[test]
    fn growth_small_cases() {
        let g = growth_construction(&[BigUint::from(9u32)]).unwrap();
        assert_eq!(g.multiplicities, vec![2]);
        assert_eq!(g.f_product[1], BigUint::from(9u32));
        assert!(g.all_sandwiched());
        let ones = vec![BigUint::one(); 6];
        let g = growth_construction(&ones).unwrap();
        assert!(g.multiplicities.iter().all(|&m| m == 0));
        assert!(g.f_product.iter().all(One::is_one));
        assert!(growth_construction(&[BigUint::zero()]).is_err());
    }

    #[test]
    fn square_exponent_targets_fail_at_zsigmondy_gap() {
        let g = growth_construction(&square_exponent_targets(12)).unwrap();
        // 2⁶ − 1 has no new prime factor, so stage 5 cannot lift F(6).
        assert_eq!(g.multiplicities[4], 0);
        assert!(!g.sandwich[4]);
        assert!(g.sandwich[0] && g.sandwich[1]);
    }
}
