//! Entropy of `x ↦ r·x`, logarithmic Mahler measure, exact detection of
//! cyclotomic products and small-measure searches.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{One, ToPrimitive};

use crate::arith::{euler_phi, factor_biguint, ln_biguint, ReducedRational};
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::poly::IntPolynomial;
use crate::zeta::{toral_char_poly, toral_fixed_points};

/// `h = ln max(|a|, |b|)` together with the integer inside the logarithm.
#[derive(Debug, Clone, PartialEq)]
pub struct Entropy {
    pub value: f64,
    pub exact_arg: BigUint,
}

/// Entropy of `x ↦ r·x` as the sum over all places of `log⁺|r|_v`.
///
/// The place sum is formed exactly as `max(1, |r|)·∏_p max(1, |r|_p)` and
/// checked against `max(|a|, |b|)`.
pub fn abramov_entropy(r: &ReducedRational) -> Result<Entropy> {
    if !r.is_map_parameter() {
        return Err(Error::domain("entropy needs |r| not in {0, 1}"));
    }
    let a = r.numer().magnitude();
    let b = r.denom().magnitude();
    // |r|_p > 1 exactly for p | b, where it equals p^{v_p(b)}.
    let mut places = BigUint::one();
    if !b.is_one() {
        for (p, e) in factor_biguint(b) {
            places *= p.pow(e);
        }
    }
    let archimedean_num = a.max(b);
    // max(1, |a|/b)·∏ = max(b, |a|)/b · b
    let total = archimedean_num * &places / b;
    let exact_arg = r.height();
    if total != exact_arg {
        return Err(Error::invariant(format!(
            "place sum {total} differs from max(|a|, |b|) = {exact_arg}"
        )));
    }
    Ok(Entropy {
        value: ln_biguint(&exact_arg),
        exact_arg,
    })
}

/// Whether a monic `f` is a product of cyclotomic polynomials.
///
/// Exact: divides out every `Φ_k` with `φ(k) ≤ deg f` as often as possible
/// and checks that 1 remains.
pub fn is_cyclotomic_product(f: &IntPolynomial) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::domain("cyclotomic test needs a monic polynomial"));
    }
    let mut rest = f.clone();
    let d = f.degree().unwrap_or(0) as u64;
    // φ(k) ≥ √(k/2), so φ(k) ≤ d forces k ≤ 2d².
    for k in 1..=2 * d * d + 2 {
        if rest.degree() == Some(0) {
            break;
        }
        if euler_phi(k) > rest.degree().unwrap_or(0) as u64 {
            continue;
        }
        let phi = IntPolynomial::cyclotomic(k);
        while let Some(q) = rest.div_exact(&phi) {
            rest = q;
        }
    }
    Ok(rest == IntPolynomial::one())
}

/// Logarithmic Mahler measure `ln|lead| + Σ ln⁺|λ|`.
///
/// Constant multiples of cyclotomic products get `ln|c|` exactly; everything
/// else goes through [`mahler_measure_numeric`].
pub fn mahler_measure(f: &IntPolynomial) -> Result<f64> {
    if f.is_zero() {
        return Err(Error::domain("Mahler measure of the zero polynomial"));
    }
    let content = f.content();
    let pp = f.primitive_part();
    if pp.is_monic() && is_cyclotomic_product(&pp)? {
        return Ok(ln_biguint(content.magnitude()));
    }
    mahler_measure_numeric(f)
}

/// Mahler measure from numerically computed roots, with no exact shortcut.
///
/// The polynomial is split into square-free factors first so that every root
/// handed to the eigenvalue solver is simple.
pub fn mahler_measure_numeric(f: &IntPolynomial) -> Result<f64> {
    if f.is_zero() {
        return Err(Error::domain("Mahler measure of the zero polynomial"));
    }
    let mut m = ln_biguint(f.content().magnitude());
    for (g, mult) in f.squarefree_decomposition() {
        m += mult as f64 * squarefree_measure(&g)?;
    }
    Ok(m)
}

fn squarefree_measure(g: &IntPolynomial) -> Result<f64> {
    let lead = ln_biguint(g.leading().expect("nonconstant").magnitude());
    let roots = polynomial_roots(g)?;
    Ok(lead
        + roots
            .iter()
            .map(|z| crate::arith::ln(z.norm()).max(0.0))
            .sum::<f64>())
}

/// All complex roots of `g` with multiplicity: eigenvalues of the companion
/// matrix, then a few Newton steps on `g` itself.
pub fn polynomial_roots(g: &IntPolynomial) -> Result<Vec<Complex64>> {
    let d = g.degree().unwrap_or(0);
    if d == 0 {
        return Ok(Vec::new());
    }
    let c = g.to_f64_coeffs();
    if c.iter().any(|x| !x.is_finite()) {
        return Err(Error::capability("coefficients exceed floating-point range"));
    }
    let lead = c[d];
    let mut h = vec![vec![Complex64::new(0.0, 0.0); d]; d];
    for i in 1..d {
        h[i][i - 1] = Complex64::new(1.0, 0.0);
    }
    for (i, row) in h.iter_mut().enumerate() {
        row[d - 1] = Complex64::new(-c[i] / lead, 0.0);
    }
    let mut roots = hessenberg_eigenvalues(h)?;
    for z in roots.iter_mut() {
        *z = polish(&c, *z);
    }
    Ok(roots)
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    let r = z.norm();
    for &ci in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ci;
        scale = scale * r + ci.abs();
    }
    (p, dp, scale)
}

fn polish(c: &[f64], mut z: Complex64) -> Complex64 {
    for _ in 0..8 {
        let (p, dp, scale) = horner(c, z);
        if p.norm() <= 1e-15 * scale || dp.norm() == 0.0 {
            break;
        }
        let next = z - p / dp;
        if horner(c, next).0.norm() >= p.norm() {
            break;
        }
        z = next;
    }
    z
}

/// Eigenvalues of an upper Hessenberg matrix by shifted QR with Givens
/// rotations and deflation.
fn hessenberg_eigenvalues(mut h: Vec<Vec<Complex64>>) -> Result<Vec<Complex64>> {
    let n = h.len();
    let mut out = Vec::with_capacity(n);
    let mut hi = n;
    let mut iter = 0;
    while hi > 0 {
        let top = hi - 1;
        if top == 0 {
            out.push(h[0][0]);
            break;
        }
        let mut l = top;
        while l > 0 {
            let s = h[l][l].norm() + h[l - 1][l - 1].norm();
            if h[l][l - 1].norm() <= f64::EPSILON * s.max(f64::MIN_POSITIVE) {
                h[l][l - 1] = Complex64::new(0.0, 0.0);
                break;
            }
            l -= 1;
        }
        if l == top {
            out.push(h[top][top]);
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > 500 {
            return Err(Error::invariant("eigenvalue iteration did not converge"));
        }
        let mu = if iter % 11 == 0 {
            h[top][top] + h[top][top - 1].norm()
        } else {
            wilkinson_shift(h[top - 1][top - 1], h[top - 1][top], h[top][top - 1], h[top][top])
        };
        for k in l..=top {
            h[k][k] -= mu;
        }
        let mut rots = Vec::with_capacity(top - l);
        for k in l..top {
            let (x, y) = (h[k][k], h[k + 1][k]);
            let r = libm::hypot(x.norm(), y.norm());
            let (c, s) = if r == 0.0 {
                (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
            } else {
                (x / r, y / r)
            };
            for j in k..=top {
                let (a, b) = (h[k][j], h[k + 1][j]);
                h[k][j] = c.conj() * a + s.conj() * b;
                h[k + 1][j] = -s * a + c * b;
            }
            rots.push((c, s));
        }
        for (idx, (c, s)) in rots.into_iter().enumerate() {
            let k = l + idx;
            for row in h.iter_mut().take((k + 2).min(top) + 1).skip(l) {
                let (a, b) = (row[k], row[k + 1]);
                row[k] = a * c + b * s;
                row[k + 1] = -a * s.conj() + b * c.conj();
            }
        }
        for k in l..=top {
            h[k][k] += mu;
        }
    }
    Ok(out)
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_tr = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (half_tr * half_tr - det).sqrt();
    let (m1, m2) = (half_tr + disc, half_tr - disc);
    if (m1 - d).norm() < (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// Largest number of candidates [`lehmer_scan`] will enumerate.
pub const LEHMER_BUDGET: u64 = 10_000_000;

/// Monic polynomials of degree `1..=max_degree` with the lower coefficients in
/// `[−H, H]`, nonzero constant term, one representative per orbit of
/// `f(x) ↦ (−1)^d f(−x)` and `f ↦ ±x^d f(1/x)`.
///
/// A zero constant term is skipped because `x·g` has the measure of `g`.
pub fn lehmer_candidates(max_degree: usize, max_height: u64) -> Result<Vec<IntPolynomial>> {
    let width = 2 * max_height + 1;
    let mut total: u64 = 0;
    for d in 1..=max_degree {
        let count = u32::try_from(d)
            .ok()
            .and_then(|d| width.checked_pow(d))
            .ok_or_else(|| Error::capability("candidate count overflows"))?;
        total = total.saturating_add(count);
    }
    if total > LEHMER_BUDGET {
        return Err(Error::capability(format!(
            "{total} candidates exceed the budget {LEHMER_BUDGET}"
        )));
    }
    let h = max_height as i64;
    let mut out = Vec::new();
    for d in 1..=max_degree {
        let mut coeffs = vec![-h; d];
        loop {
            if coeffs[0] != 0 {
                let mut full = coeffs.clone();
                full.push(1);
                if is_canonical(&full) {
                    out.push(IntPolynomial::from_i64(&full));
                }
            }
            // Odometer over the lower coefficients.
            let mut i = 0;
            while i < d && coeffs[i] == h {
                coeffs[i] = -h;
                i += 1;
            }
            if i == d {
                break;
            }
            coeffs[i] += 1;
        }
    }
    Ok(out)
}

fn is_canonical(c: &[i64]) -> bool {
    let d = c.len() - 1;
    let flip = |v: &[i64]| -> Vec<i64> {
        v.iter()
            .enumerate()
            .map(|(i, &x)| if (d - i) % 2 == 1 { -x } else { x })
            .collect()
    };
    let key = |v: &[i64]| -> Vec<i64> { v.iter().rev().copied().collect() };
    let mut orbit = vec![flip(c)];
    if c[0].abs() == 1 {
        let rev: Vec<i64> = c.iter().rev().map(|&x| x * c[0]).collect();
        orbit.push(flip(&rev));
        orbit.push(rev);
    }
    let own = key(c);
    orbit.iter().all(|o| own <= key(o))
}

/// `Some(m(f))` if `0 < m(f) < threshold`.
pub fn lehmer_measure(f: &IntPolynomial, threshold: f64) -> Result<Option<f64>> {
    if threshold <= 0.0 {
        return Ok(None);
    }
    // Cheap screen on raw roots; repeated roots only cost ~1e-8 here.
    let rough: f64 = polynomial_roots(f)?
        .iter()
        .map(|z| crate::arith::ln(z.norm()).max(0.0))
        .sum();
    if rough > threshold + 1e-3 {
        return Ok(None);
    }
    if is_cyclotomic_product(f)? {
        return Ok(None);
    }
    let m = mahler_measure_numeric(f)?;
    Ok((m > 0.0 && m < threshold).then_some(m))
}

/// All canonical candidates with `0 < m(f) < threshold`, in enumeration order.
pub fn lehmer_scan(
    max_degree: usize,
    max_height: u64,
    threshold: f64,
) -> Result<Vec<(IntPolynomial, f64)>> {
    let mut out = Vec::new();
    for f in lehmer_candidates(max_degree, max_height)? {
        if let Some(m) = lehmer_measure(&f, threshold)? {
            out.push((f, m));
        }
    }
    Ok(out)
}

/// Mahler measure of the characteristic polynomial against the growth rate
/// of periodic points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToralEntropy {
    pub mahler: f64,
    pub growth: f64,
    pub gap: f64,
}

pub fn toral_entropy_check(a: &IntegerMatrix, upto: u64) -> Result<ToralEntropy> {
    if upto == 0 {
        return Err(Error::domain("N must be positive"));
    }
    let chi = toral_char_poly(a)?;
    let mahler = mahler_measure(&chi)?;
    let growth = ln_biguint(&toral_fixed_points(a, upto)?) / upto as f64;
    Ok(ToralEntropy {
        mahler,
        growth,
        gap: (mahler - growth).abs(),
    })
}

/// `b·x − a`, the polynomial whose measure is the entropy of `x ↦ (a/b)x`.
pub fn linear_polynomial(r: &ReducedRational) -> IntPolynomial {
    IntPolynomial::new(vec![-r.numer().clone(), r.denom().clone()])
}

/// Converts a polynomial to `i64` coefficients when they fit.
pub fn small_coeffs(f: &IntPolynomial) -> Option<Vec<i64>> {
    f.coeffs().iter().map(BigInt::to_i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lehmer() -> IntPolynomial {
        IntPolynomial::from_descending_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    }

    #[test]
    fn entropy_examples() {
        let e = abramov_entropy(&ReducedRational::new(3, 2).unwrap()).unwrap();
        assert_eq!(e.exact_arg, BigUint::from(3u32));
        assert!((e.value - crate::arith::ln(3.0)).abs() < 1e-15);
        let e = abramov_entropy(&ReducedRational::from_integer(-2)).unwrap();
        assert!((e.value - crate::arith::ln(2.0)).abs() < 1e-15);
        assert!(abramov_entropy(&ReducedRational::from_integer(1)).is_err());
        let r = ReducedRational::new(-12, 35).unwrap();
        assert_eq!(abramov_entropy(&r).unwrap().exact_arg, BigUint::from(35u32));
    }

    #[test]
    fn measures() {
        assert!((mahler_measure(&lehmer()).unwrap() - 0.162_357_612_007_738_3).abs() < 1e-10);
        let x2 = IntPolynomial::from_i64(&[-2, 1]);
        assert!((mahler_measure(&x2).unwrap() - crate::arith::ln(2.0)).abs() < 1e-14);
        let golden = IntPolynomial::from_descending_i64(&[1, -1, -1]);
        assert!((mahler_measure(&golden).unwrap() - 0.481_211_825_059_603_4).abs() < 1e-12);
        assert_eq!(mahler_measure(&IntPolynomial::from_i64(&[1, 1, 1])).unwrap(), 0.0);
        let c = IntPolynomial::from_i64(&[-6]);
        assert!((mahler_measure(&c).unwrap() - crate::arith::ln(6.0)).abs() < 1e-15);
        assert!(mahler_measure(&IntPolynomial::zero()).is_err());
    }

    #[test]
    fn repeated_roots_are_handled() {
        let g = IntPolynomial::from_i64(&[-1, -1, 1]);
        let f = &(&g * &g) * &g;
        assert!((mahler_measure(&f).unwrap() - 3.0 * 0.481_211_825_059_603_4).abs() < 1e-11);
        let f = f.scale(&BigInt::from(-5));
        let expect = crate::arith::ln(5.0) + 3.0 * 0.481_211_825_059_603_4;
        assert!((mahler_measure(&f).unwrap() - expect).abs() < 1e-11);
    }

    #[test]
    fn cyclotomic_detection() {
        assert!(is_cyclotomic_product(&IntPolynomial::from_i64(&[1, 1, 1, 1, 1])).unwrap());
        assert!(!is_cyclotomic_product(&IntPolynomial::from_descending_i64(&[1, -1, -1])).unwrap());
        let f = &IntPolynomial::from_i64(&[1, 1, 1]) * &IntPolynomial::from_i64(&[-1, 1]);
        assert!(is_cyclotomic_product(&f).unwrap());
        assert!(is_cyclotomic_product(&IntPolynomial::from_i64(&[1, 2])).is_err());
    }

    #[test]
    fn roots_of_lehmer() {
        let roots = polynomial_roots(&lehmer()).unwrap();
        assert_eq!(roots.len(), 10);
        let big: Vec<f64> = roots.iter().map(|z| z.norm()).filter(|&r| r > 1.0 + 1e-9).collect();
        assert_eq!(big.len(), 1);
        assert!((big[0] - 1.176_280_818_259_917).abs() < 1e-12);
    }

    #[test]
    fn scan_examples() {
        let hits = lehmer_scan(10, 1, 0.17).unwrap();
        let canon = |f: &IntPolynomial| small_coeffs(f).unwrap();
        assert!(hits.iter().any(|(f, _)| canon(f) == canon(&lehmer())
            || canon(f) == canon(&lehmer().negate_variable())));
        assert!(lehmer_scan(2, 1, 0.05).unwrap().is_empty());
        assert!(lehmer_scan(4, 1, 0.0).unwrap().is_empty());
        assert!(matches!(lehmer_scan(20, 3, 0.1), Err(Error::Capability(_))));
    }

    #[test]
    fn toral_entropy() {
        let cat = IntegerMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let e = toral_entropy_check(&cat, 50).unwrap();
        assert!((e.mahler - crate::arith::ln((3.0 + libm::sqrt(5.0)) / 2.0)).abs() < 1e-12);
        assert!(e.gap <= 0.05);
        let m = IntegerMatrix::from_i64(&[&[3, 10], &[1, 3]]);
        let e = toral_entropy_check(&m, 50).unwrap();
        assert!((e.mahler - crate::arith::ln(3.0 + libm::sqrt(10.0))).abs() < 1e-12);
        assert!(e.gap <= 0.05);
    }

    #[test]
    fn entropy_is_a_measure() {
        for (a, b) in [(3, 2), (-7, 5), (2, 9), (10, 1)] {
            let r = ReducedRational::new(a, b).unwrap();
            let h = abramov_entropy(&r).unwrap().value;
            assert!((mahler_measure(&linear_polynomial(&r)).unwrap() - h).abs() < 1e-12);
            assert!((abramov_entropy(&r.recip().unwrap()).unwrap().value - h).abs() < 1e-15);
        }
    }
}
