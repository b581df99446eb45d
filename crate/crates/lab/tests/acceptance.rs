//! Acceptance run. Prints one PASS/FAIL line per criterion with its runtime
//! and exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use solenoid_core::arith::{
    mobius, primes_up_to, product_formula_check, valuation_bigint, valuation_of_power_difference,
};
use solenoid_core::baer::validate_system;
use solenoid_core::conjugacy::{
    conjugate_over_ring, determinant_form, intertwiner_lattice, BinaryQuadraticForm,
    ConjugacyDecision,
};
use solenoid_core::dirichlet::{
    dirichlet_partial, dirichlet_reference_3_5, growth_construction, mertens_slope,
    pi_polylog_fit, square_exponent_targets,
};
use solenoid_core::mahler::{is_cyclotomic_product, mahler_measure};
use solenoid_core::orbits::{fixed_point_sequence, mersenne_prime_set, orbits_from_fixed_points};
use solenoid_core::zeta::{
    group_realizable_bruteforce, is_divisibility_sequence, rational_zeta_integer_map,
    realizable_as_map, toral_fixed_points, toral_zeta, zeta_series,
};
use solenoid_core::{
    CharacteristicSequence, Height, IntPolynomial, IntegerMatrix, MapMode, PrimeSet,
    ReducedRational, SolenoidSystem,
};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ring_system(s: PrimeSet, r: i64) -> Result<SolenoidSystem, String> {
    SolenoidSystem::over_ring(&s, ReducedRational::from_integer(r), MapMode::Automorphism)
        .map_err(err)
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn as_int(v: &[BigUint]) -> Vec<BigInt> {
    v.iter().cloned().map(BigInt::from).collect()
}

fn c1() -> Check {
    let rows: [[u64; 5]; 4] = [[1, 3, 7, 15, 31], [1, 1, 7, 5, 31], [1, 1, 1, 5, 31], [1, 1, 1, 1, 31]];
    for (k, row) in (1..=4).zip(rows) {
        let sys = ring_system(mersenne_prime_set(k).map_err(err)?, 2)?;
        let f = fixed_point_sequence(&sys, 5).map_err(err)?;
        let want: Vec<BigUint> = row.iter().map(|&x| BigUint::from(x)).collect();
        ensure(f == want, || format!("S_{k}: got {f:?}"))?;
    }
    Ok(())
}

fn c2() -> Check {
    for (a, num, den) in [(2i64, [1i64, -1], [1i64, -2]), (-2, [1, 1], [1, -2])] {
        let z = rational_zeta_integer_map(a).map_err(err)?;
        ensure(
            z.numerator() == &IntPolynomial::from_i64(&num)
                && z.denominator() == &IntPolynomial::from_i64(&den),
            || format!("a = {a}: got {z}"),
        )?;
        // F(n) = |aⁿ − 1| on ℤ.
        let f: Vec<BigInt> = (1..=20u32).map(|n| (BigInt::from(a).pow(n) - BigInt::one()).abs()).collect();
        let series = zeta_series(&f);
        ensure(z.expand(series.order()) == series, || format!("a = {a}: expansion differs"))?;
    }
    Ok(())
}

/// `|det(Aⁿ − I)|` by direct integer determinants.
fn det_oracle(a: &IntegerMatrix, n: u64) -> Result<BigUint, String> {
    let p = a.pow(n).map_err(err)?;
    let d = p.sub(&IntegerMatrix::identity(a.rows())).map_err(err)?;
    Ok(d.det().map_err(err)?.magnitude().clone())
}

fn c3() -> Check {
    for a in [
        IntegerMatrix::from_i64(&[&[2, 1], &[1, 1]]),
        IntegerMatrix::from_i64(&[&[3, 10], &[1, 3]]),
    ] {
        let z = toral_zeta(&a, 20).map_err(err)?;
        let mut f = Vec::new();
        for n in 1..=20 {
            let oracle = det_oracle(&a, n)?;
            ensure(toral_fixed_points(&a, n).map_err(err)? == oracle, || format!("F({n})"))?;
            f.push(BigInt::from(oracle));
        }
        let series = zeta_series(&f);
        ensure(z.expand(series.order()) == series, || format!("{z} does not re-expand"))?;
    }
    Ok(())
}

/// Average of `∏_{p ∈ odd} p^{−v_p(2ⁿ − 1)}` over `n ≤ m`, valuations read off
/// `2ⁿ mod p^k` directly.
fn density_oracle(odd: &[u64], m: u64) -> f64 {
    let mut total = 0.0;
    for n in 1..=m {
        let mut w = 1.0;
        for &p in odd {
            let mut pk = p;
            while pk <= u64::MAX / p / p {
                let r = BigUint::from(2u32).modpow(&BigUint::from(n), &BigUint::from(pk));
                if r != BigUint::one() {
                    break;
                }
                w /= p as f64;
                pk *= p;
            }
        }
        total += w;
    }
    total / m as f64
}

fn c4() -> Check {
    // 2 is a unit of ℤ[1/6] but not of ℤ[1/21].
    let cases = [
        (vec![2u64, 3], MapMode::Automorphism, 5.0 / 8.0, vec![3u64]),
        (vec![3, 7], MapMode::Endomorphism, 269.0 / 576.0, vec![3, 7]),
    ];
    for (s, mode, target, odd) in cases {
        let start = Instant::now();
        let ring = PrimeSet::finite(s.clone()).map_err(err)?;
        let sys = SolenoidSystem::over_ring(&ring, ReducedRational::from_integer(2), mode)
            .map_err(err)?;
        let slope = mertens_slope(&sys, 100_000).map_err(err)?;
        let density = density_oracle(&odd, 200_000);
        ensure(start.elapsed() < Duration::from_secs(60), || {
            format!("S = {s:?} took {:?}", start.elapsed())
        })?;
        ensure((slope - target).abs() <= 0.01, || {
            format!("S = {s:?}: slope {slope} vs {target}")
        })?;
        ensure((density - target).abs() <= 5e-4, || {
            format!("S = {s:?}: oracle density {density} vs {target}")
        })?;
        ensure((slope - density).abs() <= 5e-4, || {
            format!("S = {s:?}: slope {slope} vs oracle density {density}")
        })?;
        println!("    S = {s:?}: slope {slope:.6}, oracle {density:.6}, constant {target:.6}");
    }
    Ok(())
}

fn c5() -> Check {
    let sys = ring_system(PrimeSet::cofinite([3, 5]).map_err(err)?, 2)?;
    let d = dirichlet_partial(&sys, 3.0, 100_000).map_err(err)?;
    let reference = dirichlet_reference_3_5(3.0).map_err(err)?;
    println!("    partial {:.9}, reference {reference:.9}, tail bound {:.3e}", d.partial, d.tail_bound);
    ensure((d.partial - reference).abs() <= 1e-3, || {
        format!("partial {} vs reference {reference}", d.partial)
    })
}

fn c6() -> Check {
    for (excluded, k) in [(vec![3u64, 5], 2.0), (vec![3], 1.0)] {
        let sys = ring_system(PrimeSet::cofinite(excluded.clone()).map_err(err)?, 2)?;
        let fit = pi_polylog_fit(&sys, 1_000_000).map_err(err)?;
        println!("    excluded {excluded:?}: K_hat {:.4}", fit.k_hat);
        ensure(fit.k_hat.round() == k, || {
            format!("excluded {excluded:?}: K_hat {} does not round to {k}", fit.k_hat)
        })?;
    }
    Ok(())
}

/// A valid automorphism system from a seeded characteristic and a multiplier
/// built from its infinite-height primes below 20.
fn random_system(rng: &mut ChaCha8Rng) -> SolenoidSystem {
    loop {
        let default = if rng.next_u32().is_multiple_of(2) { Height::Finite(0) } else { Height::Infinite };
        let chi = CharacteristicSequence::random(rng.next_u64(), 20, default);
        let units: Vec<u64> = primes_up_to(20)
            .into_iter()
            .filter(|&p| chi.height(p).is_infinite())
            .collect();
        if units.is_empty() {
            continue;
        }
        let mut a = BigInt::one();
        let mut b = BigInt::one();
        for &p in &units {
            match rng.next_u32() % 5 {
                0 => a *= p,
                1 => b *= p,
                2 => a *= p * p,
                _ => {}
            }
        }
        if rng.next_u32().is_multiple_of(2) {
            a = -a;
        }
        let Ok(r) = ReducedRational::map_parameter(a, b) else { continue };
        if let Ok(sys) = validate_system(chi, r, MapMode::Automorphism) {
            return sys;
        }
    }
}

fn c7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..20 {
        let sys = random_system(&mut rng);
        let f = as_int(&fixed_point_sequence(&sys, 100).map_err(err)?);
        ensure(realizable_as_map(&f).is_ok(), || {
            format!("system {i} (r = {}, S = {}) rejected", sys.r(), sys.infinite_height_set())
        })?;
    }
    // Coefficients of log(e^{−z²}/(1 − 2z)) times n: F(n) = 2ⁿ − 2·[n = 2].
    let f: Vec<BigInt> = (1..=10u32)
        .map(|n| BigInt::from(2).pow(n) - if n == 2 { 2 } else { 0 })
        .collect();
    ensure(f[..4] == ints(&[2, 2, 8, 16])[..], || format!("{f:?}"))?;
    match realizable_as_map(&f) {
        solenoid_core::zeta::MapVerdict::Fail { n: 4, .. } => Ok(()),
        other => Err(format!("expected failure at n = 4, got {other:?}")),
    }
}

fn c8() -> Check {
    let pattern = [1u64, 1, 1, 1, 6];
    let group = group_realizable_bruteforce(&pattern, 6).map_err(err)?;
    ensure(group.is_none(), || format!("unexpected group witness {group:?}"))?;
    // One fixed point and a 5-cycle on six points.
    let sigma = [0usize, 2, 3, 4, 5, 1];
    let mut counts = Vec::new();
    for n in 1..=60 {
        let fixed = (0..6)
            .filter(|&x| {
                let mut y = x;
                for _ in 0..n {
                    y = sigma[y];
                }
                y == x
            })
            .count();
        ensure(fixed as u64 == pattern[(n - 1) % 5], || format!("permutation F({n}) = {fixed}"))?;
        counts.push(BigInt::from(fixed));
    }
    ensure(realizable_as_map(&counts).is_ok(), || "periodic pattern rejected as a map".into())
}

fn c9() -> Check {
    let lehmer = IntPolynomial::from_descending_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
    let m = mahler_measure(&lehmer).map_err(err)?;
    ensure((m - 0.1623576).abs() <= 1e-4, || format!("Lehmer: {m}"))?;
    let mut low_degree = 0;
    for k in 1..=12u64 {
        let phi = IntPolynomial::cyclotomic(k);
        ensure(is_cyclotomic_product(&phi).map_err(err)?, || format!("Φ_{k} not detected"))?;
        let m = mahler_measure(&phi).map_err(err)?;
        ensure(m.abs() < 1e-9, || format!("m(Φ_{k}) = {m}"))?;
        if phi.degree().unwrap_or(0) <= 4 {
            low_degree += 1;
        }
    }
    ensure(low_degree == 9, || format!("{low_degree} cyclotomics of degree ≤ 4"))?;
    ensure(!is_cyclotomic_product(&lehmer).map_err(err)?, || "Lehmer detected as cyclotomic".into())?;
    let golden = IntPolynomial::from_descending_i64(&[1, -1, -1]);
    let m = mahler_measure(&golden).map_err(err)?;
    let oracle = ((1.0 + 5f64.sqrt()) / 2.0).ln();
    ensure((m - oracle).abs() <= 1e-6 && (m - 0.4812118).abs() <= 1e-6, || {
        format!("m(x² − x − 1) = {m}")
    })
}

fn c10() -> Check {
    let a = IntegerMatrix::from_i64(&[&[3, 10], &[1, 3]]);
    let b = IntegerMatrix::from_i64(&[&[3, 5], &[2, 3]]);
    let lat = intertwiner_lattice(&a, &b).map_err(err)?;
    ensure(lat.rank() == 2, || format!("rank {}", lat.rank()))?;
    let form = determinant_form(&lat).map_err(err)?;
    ensure(
        form.equivalence_within(&BinaryQuadraticForm::new(2, 0, -5), 5).is_some(),
        || format!("form {form} not equivalent to 2x² − 5y²"),
    )?;
    // Exhaustive oracle: every lattice point with coordinates in [−20, 20]
    // intertwines and has determinant given by the form; none is a unit.
    let mut det_not_multiple_of_5 = false;
    for x in -20i64..=20 {
        for y in -20i64..=20 {
            let q = lat.combine(&ints(&[x, y]));
            ensure(q.mul(&a).map_err(err)? == b.mul(&q).map_err(err)?, || format!("({x},{y})"))?;
            let det = q.det().map_err(err)?;
            ensure(det == form.eval(&x.into(), &y.into()), || format!("det at ({x},{y})"))?;
            ensure(det.abs() != BigInt::one(), || format!("unit at ({x},{y})"))?;
            det_not_multiple_of_5 |= !(&det % BigInt::from(5)).is_zero();
        }
    }
    println!(
        "    note: intertwiner determinants are {}all divisible by 5 (det 2 at (1,0))",
        if det_not_multiple_of_5 { "not " } else { "" }
    );
    match conjugate_over_ring(&a, &b, &PrimeSet::empty(), 30).map_err(err)? {
        ConjugacyDecision::Obstructed { prime: 5, .. } => {}
        other => return Err(format!("over ℤ: {other:?}")),
    }
    match conjugate_over_ring(&a, &b, &PrimeSet::finite([2]).map_err(err)?, 30).map_err(err)? {
        ConjugacyDecision::Conjugate { witness, det, .. } => {
            ensure(witness.mul(&a).map_err(err)? == b.mul(&witness).map_err(err)?, || {
                "witness does not intertwine".into()
            })?;
            ensure(witness.det().map_err(err)? == det, || "witness det".into())?;
            ensure(det.abs().to_u64().is_some_and(|d| d.is_power_of_two()), || {
                format!("det {det} is not a unit of ℤ[1/2]")
            })?;
        }
        other => return Err(format!("over ℤ[1/2]: {other:?}")),
    }
    let q = lat.combine(&ints(&[19, 12]));
    let det = q.det().map_err(err)?;
    ensure(det.abs() == BigInt::from(2), || format!("det at (19,12) is {det}"))?;
    ensure(q.mul(&a).map_err(err)? == b.mul(&q).map_err(err)?, || "(19,12) does not intertwine".into())
}

fn c11() -> Check {
    let theta = square_exponent_targets(12);
    let g = growth_construction(&theta).map_err(err)?;
    let bad: Vec<usize> = g
        .sandwich
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i + 2)
        .collect();
    // Independent check of the flags from the exact products.
    for (i, t) in theta.iter().enumerate() {
        let n = i + 2;
        let f = &g.f_product[n - 1];
        let ok = f >= t && f <= &(t << n);
        ensure(ok == g.sandwich[i], || format!("flag at n = {n} disagrees with F/θ"))?;
    }
    ensure(bad.is_empty(), || format!("sandwich fails at n = {bad:?}"))
}

fn c12() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let primes = primes_up_to(50);
    // Lifting the exponent against direct valuations.
    let mut triples = 0;
    while triples < 200 {
        let a = BigInt::from(rng.next_u32() % 200) - BigInt::from(100);
        let b = BigInt::from(rng.next_u32() % 200) - BigInt::from(100);
        let p = primes[rng.next_u32() as usize % primes.len()];
        let ab: BigInt = &a * &b;
        if ab.is_zero() || a.abs() == b.abs() || !num_integer::Integer::gcd(&a, &b).is_one() || (&ab % BigInt::from(p)).is_zero() {
            continue;
        }
        triples += 1;
        for n in 1..=40u32 {
            let direct = valuation_bigint(&(a.pow(n) - b.pow(n)), p);
            let lte = valuation_of_power_difference(&a, &b, p, n as u64).map_err(err)?;
            ensure(direct == lte, || format!("v_{p}({a}^{n} − {b}^{n})"))?;
        }
    }
    // Möbius round-trip and divisibility on 20 systems.
    let mut systems = Vec::new();
    for _ in 0..20 {
        systems.push(random_system(&mut rng));
    }
    for sys in &systems {
        let f = fixed_point_sequence(sys, 60).map_err(err)?;
        let o = orbits_from_fixed_points(&f).map_err(err)?;
        for n in 1..=60usize {
            let s: BigUint = (1..=n).filter(|d| n % d == 0).map(|d| &o[d - 1] * BigUint::from(d)).sum();
            ensure(s == f[n - 1], || format!("Möbius round-trip at n = {n}"))?;
            let back: BigInt = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| BigInt::from(mobius((n / d) as u64).unwrap_or(0)) * BigInt::from(f[d - 1].clone()))
                .sum();
            ensure(back == BigInt::from(&o[n - 1] * BigUint::from(n)), || format!("n·O({n})"))?;
        }
        ensure(is_divisibility_sequence(&as_int(&f)), || format!("r = {} not divisibility", sys.r()))?;
    }
    // Fixed points see exactly the finite-height primes, on 10 finite-S systems.
    let mut finite = 0;
    while finite < 10 {
        let sys = random_system(&mut rng);
        if !sys.infinite_height_set().is_finite() {
            continue;
        }
        finite += 1;
        let f = fixed_point_sequence(&sys, 100).map_err(err)?;
        let ab = (sys.r().numer() * sys.r().denom()).abs();
        for p in primes_up_to(100) {
            let divides = f.iter().any(|x| (x % p).is_zero());
            let expected = !sys.infinite_height_set().contains(p) && !(&ab % p).is_zero();
            ensure(divides == expected, || format!("prime {p} for r = {}", sys.r()))?;
        }
    }
    // same_type axioms on 10³ sequences.
    let seqs: Vec<CharacteristicSequence> = (0..1000)
        .map(|i| {
            let d = if i % 2 == 0 { Height::Finite(0) } else { Height::Infinite };
            CharacteristicSequence::random(rng.next_u64(), 13, d)
        })
        .collect();
    for i in 0..seqs.len() {
        let (x, y, z) = (&seqs[i], &seqs[(i * 7 + 1) % 1000], &seqs[(i * 13 + 5) % 1000]);
        ensure(x.same_type(x), || "reflexivity".into())?;
        ensure(x.same_type(y) == y.same_type(x), || "symmetry".into())?;
        ensure(!(x.same_type(y) && y.same_type(z)) || x.same_type(z), || "transitivity".into())?;
    }
    // Product formula on 10³ rationals.
    for _ in 0..1000 {
        let n = BigInt::from(rng.next_u64() >> 24) - BigInt::from(1i64 << 39);
        let d = BigInt::from((rng.next_u64() >> 24) + 1);
        if n.is_zero() {
            continue;
        }
        let q = BigRational::new(n, d);
        ensure(product_formula_check(&q).map_err(err)?, || format!("product formula at {q}"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 12] = [
        ("1 fixed-point tables", c1, Duration::from_secs(1)),
        ("2 zeta closed forms", c2, Duration::from_secs(1)),
        ("3 toral zeta", c3, Duration::from_secs(5)),
        ("4 Mertens constants", c4, Duration::from_secs(120)),
        ("5 Dirichlet cross-check", c5, Duration::from_secs(30)),
        ("6 pole-order recovery", c6, Duration::from_secs(120)),
        ("7 realizability", c7, Duration::from_secs(5)),
        ("8 group obstruction", c8, Duration::from_secs(5)),
        ("9 Mahler measures", c9, Duration::from_secs(5)),
        ("10 conjugacy", c10, Duration::from_secs(10)),
        ("11 growth construction", c11, Duration::from_secs(5)),
        ("12 property suites", c12, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(()) if elapsed <= limit => "PASS".to_string(),
            Ok(()) => format!("FAIL (over the {limit:?} limit)"),
            Err(e) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("{verdict} criterion {name} [{:.3}s]", elapsed.as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
