//! Zeta series `exp Σ F(n) zⁿ/n`, rational zeta functions and the tests that
//! decide whether a sequence can count periodic points.

mod group;
mod realize;

use core::fmt;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::euler_phi;
use crate::baer::SolenoidSystem;
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::orbits::FixedPointCounter;
use crate::poly::{qpoly, IntPolynomial};

pub use group::{group_realizable_bruteforce, GroupComponent, GroupWitness, GROUP_ORDER_CAP};
pub use realize::{
    england_smyth_check, is_divisibility_sequence, realizable_as_map, s_set_recover,
    zeta_class_enumerate, EnglandSmythVerdict, MapVerdict, ZetaClass,
};

/// Exact coefficients `c_0, ..., c_N` of a power series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPowerSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedPowerSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        TruncatedPowerSeries { coeffs }
    }

    /// Highest power of `z` carried.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficients `ℓ_1, ..., ℓ_N` of the formal logarithm; needs `c_0 = 1`.
    pub fn log_coefficients(&self) -> Result<Vec<BigRational>> {
        if self.coeffs.first().is_none_or(|c| !c.is_one()) {
            return Err(Error::domain("formal logarithm needs constant term 1"));
        }
        let c = &self.coeffs;
        // n·c_n = Σ_{j=1..n} j·ℓ_j·c_{n−j}
        let mut l: Vec<BigRational> = vec![BigRational::zero()];
        for n in 1..c.len() {
            let mut s = BigRational::from_integer(BigInt::from(n)) * &c[n];
            for j in 1..n {
                s -= BigRational::from_integer(BigInt::from(j)) * &l[j] * &c[n - j];
            }
            l.push(s / BigRational::from_integer(BigInt::from(n)));
        }
        l.remove(0);
        Ok(l)
    }

    /// The sequence `F(n) = n·ℓ_n` whose zeta series this is.
    pub fn fixed_point_counts(&self) -> Result<Vec<BigRational>> {
        Ok(self
            .log_coefficients()?
            .into_iter()
            .enumerate()
            .map(|(i, l)| l * BigRational::from_integer(BigInt::from(i + 1)))
            .collect())
    }
}

/// `exp(Σ_{n≤N} F[n] zⁿ/n)` to order `N`; `f[i]` holds `F(i + 1)`.
pub fn zeta_series(f: &[BigInt]) -> TruncatedPowerSeries {
    let mut c = vec![BigRational::one()];
    for k in 1..=f.len() {
        let mut s = BigRational::zero();
        for j in 1..=k {
            s += BigRational::from_integer(&f[j - 1] * BigInt::one()) * &c[k - j];
        }
        c.push(s / BigRational::from_integer(BigInt::from(k)));
    }
    TruncatedPowerSeries::new(c)
}

/// A quotient of integer polynomials in `z` with no common factor, the
/// denominator nonvanishing at 0 and both constant terms positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionOverZ {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl RationalFunctionOverZ {
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Result<Self> {
        if den.coeff(0).is_zero() {
            return Err(Error::domain("denominator vanishes at z = 0"));
        }
        let (n, d) = (qpoly::from_int(&num), qpoly::from_int(&den));
        Ok(Self::from_qpolys(&n, &d))
    }

    fn from_qpolys(num: &qpoly::QPoly, den: &qpoly::QPoly) -> Self {
        let g = qpoly::gcd(num, den);
        let n = qpoly::div_rem(num, &g).0;
        let d = qpoly::div_rem(den, &g).0;
        let lcm = n
            .iter()
            .chain(&d)
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let to_int = |p: &qpoly::QPoly| -> Vec<BigInt> {
            p.iter().map(|c| (c * &lcm).to_integer()).collect()
        };
        let (mut ni, mut di) = (to_int(&n), to_int(&d));
        let mut content = ni.iter().chain(&di).fold(BigInt::zero(), |g, c| g.gcd(c));
        if di[0].is_negative() {
            content = -content;
        }
        for c in ni.iter_mut().chain(di.iter_mut()) {
            *c /= &content;
        }
        RationalFunctionOverZ {
            num: IntPolynomial::new(ni),
            den: IntPolynomial::new(di),
        }
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.den
    }

    /// Power series coefficients `c_0, ..., c_order`.
    pub fn expand(&self, order: usize) -> TruncatedPowerSeries {
        let d0 = BigRational::from_integer(self.den.coeff(0));
        let mut out: Vec<BigRational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut s = BigRational::from_integer(self.num.coeff(n));
            for i in 1..=n.min(self.den.degree().unwrap_or(0)) {
                s -= BigRational::from_integer(self.den.coeff(i)) * &out[n - i];
            }
            out.push(s / &d0);
        }
        TruncatedPowerSeries::new(out)
    }
}

fn fmt_in_z(p: &IntPolynomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    let mut first = true;
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        match (first, c.is_negative()) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        if !mag.is_one() || i == 0 {
            write!(f, "{mag}")?;
        }
        match i {
            0 => {}
            1 => f.write_str("z")?,
            _ => write!(f, "z^{i}")?,
        }
    }
    Ok(())
}

impl fmt::Display for RationalFunctionOverZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        fmt_in_z(&self.num, f)?;
        f.write_str(")/(")?;
        fmt_in_z(&self.den, f)?;
        f.write_str(")")
    }
}

/// Zeta function of `x ↦ a·x` on the circle.
pub fn rational_zeta_integer_map(a: i64) -> Result<RationalFunctionOverZ> {
    if a.unsigned_abs() < 2 {
        return Err(Error::domain("|a| must be at least 2"));
    }
    let m = i64::try_from(a.unsigned_abs()).map_err(|_| Error::capability("|a| overflows"))?;
    let num = if a > 0 {
        IntPolynomial::from_i64(&[1, -1])
    } else {
        IntPolynomial::from_i64(&[1, 1])
    };
    RationalFunctionOverZ::new(num, IntPolynomial::from_i64(&[1, -m]))
}

/// Shortest linear recurrence of a sequence over ℚ (Berlekamp–Massey).
///
/// Returns `(c, L)` with `c_0 = 1`, `c.len() = L + 1` and
/// `Σ_{i=0..L} c_i s_{n−i} = 0` for `L ≤ n < s.len()`.
pub fn linear_recurrence(s: &[BigRational]) -> (Vec<BigRational>, usize) {
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut last = BigRational::one();
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=l.min(c.len() - 1) {
            d += &c[i] * &s[n - i];
        }
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let coef = &d / &last;
        let prev = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + shift] -= &coef * bi;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = prev;
            last = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.resize(l + 1, BigRational::zero());
    (c, l)
}

/// Rational function `P/C` with the given expansion, `C` from
/// [`linear_recurrence`] and `P = C·S mod z^L`.
fn rational_from_sequence(s: &[BigRational]) -> (RationalFunctionOverZ, usize) {
    let (c, l) = linear_recurrence(s);
    let mut p = vec![BigRational::zero(); l];
    for (n, pn) in p.iter_mut().enumerate() {
        for i in 0..=n.min(c.len() - 1) {
            *pn += &c[i] * &s[n - i];
        }
    }
    let f = RationalFunctionOverZ::from_qpolys(&qpoly::trim(p), &qpoly::trim(c));
    (f, l)
}

/// Characteristic polynomial of a toral automorphism, after checking that
/// `det A = ±1` and that no eigenvalue is a root of unity.
pub fn toral_char_poly(a: &IntegerMatrix) -> Result<IntPolynomial> {
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::domain("toral map needs a nonempty square matrix"));
    }
    if !a.det()?.abs().is_one() {
        return Err(Error::domain("det A must be ±1 for an automorphism"));
    }
    let chi = a.char_poly()?;
    let d = a.rows() as u64;
    // φ(k) ≥ √(k/2), so φ(k) ≤ d forces k ≤ 2d².
    for k in 1..=2 * d * d + 2 {
        if euler_phi(k) <= d && chi.div_exact(&IntPolynomial::cyclotomic(k)).is_some() {
            return Err(Error::domain(format!(
                "eigenvalue is a root of unity of order {k}; the map is not ergodic"
            )));
        }
    }
    Ok(chi)
}

/// `|det(Aⁿ − I)|`, the number of points of period dividing `n`.
pub fn toral_fixed_points(a: &IntegerMatrix, n: u64) -> Result<BigUint> {
    toral_char_poly(a)?;
    signed_toral_count(a, n).map(|d| d.magnitude().clone())
}

fn signed_toral_count(a: &IntegerMatrix, n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    a.pow(n)?.sub(&IntegerMatrix::identity(a.rows()))?.det()
}

/// Rational zeta function of an ergodic toral automorphism, reconstructed
/// from `F(1..=N)` and verified against every one of those terms.
pub fn toral_zeta(a: &IntegerMatrix, upto: usize) -> Result<RationalFunctionOverZ> {
    toral_char_poly(a)?;
    let d = a.rows() as u32;
    let bound = 1usize
        .checked_shl(d + 1)
        .filter(|&b| b <= 1 << 16)
        .ok_or_else(|| Error::capability("dimension too large for recurrence fitting"))?;
    if upto < 2 * bound {
        return Err(Error::domain(format!("need N >= {} terms", 2 * bound)));
    }
    let signed: Vec<BigInt> = (1..=upto as u64)
        .map(|n| signed_toral_count(a, n))
        .collect::<Result<_>>()?;
    let absolute: Vec<BigInt> = signed.iter().map(|x| x.abs()).collect();

    if let Some(f) = fit_zeta(&absolute, bound) {
        return Ok(f);
    }
    // |det(Aⁿ − I)| = s₀·s₁ⁿ·det(Aⁿ − I) with fixed signs s₀, s₁, so the
    // absolute zeta function is ζ_signed(s₁z)^{s₀}.
    let s0 = if signed[0].is_negative() { -1 } else { 1 };
    let s1 = if signed[1].is_negative() == signed[0].is_negative() { 1 } else { -1 };
    let consistent = signed.iter().enumerate().all(|(i, x)| {
        let expect = s0 * if (i + 1) % 2 == 1 { s1 } else { 1 };
        (x.is_negative() && expect == -1) || (!x.is_negative() && expect == 1)
    });
    if consistent {
        if let Some(g) = fit_zeta(&signed, bound) {
            let sub = |p: &IntPolynomial| {
                if s1 == 1 {
                    p.clone()
                } else {
                    p.negate_variable()
                }
            };
            let (n, dn) = (sub(g.numerator()), sub(g.denominator()));
            let f = if s0 == 1 {
                RationalFunctionOverZ::new(n, dn)?
            } else {
                RationalFunctionOverZ::new(dn, n)?
            };
            if verify_zeta(&f, &absolute) {
                return Ok(f);
            }
        }
    }
    Err(Error::Reconstruction(format!(
        "no verified rational zeta function with recurrence order <= {bound}"
    )))
}

fn fit_zeta(f: &[BigInt], bound: usize) -> Option<RationalFunctionOverZ> {
    let series = zeta_series(f);
    let (g, l) = rational_from_sequence(series.coeffs());
    if l > bound || 2 * l > series.coeffs().len() {
        return None;
    }
    verify_zeta(&g, f).then_some(g)
}

/// Re-expands `g` and checks its logarithmic derivative against `f`.
fn verify_zeta(g: &RationalFunctionOverZ, f: &[BigInt]) -> bool {
    g.expand(f.len())
        .fixed_point_counts()
        .is_ok_and(|counts| {
            counts
                .iter()
                .zip(f)
                .all(|(c, x)| c.is_integer() && &c.to_integer() == x)
        })
}

/// One evaluation of the truncated series `Σ_{n≤N} F(n) zⁿ/n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub radius: f64,
    /// Fraction of a full turn.
    pub angle: f64,
    pub re: f64,
    pub im: f64,
    pub magnitude: f64,
}

/// Evaluates the truncated logarithm of the zeta function on rays
/// `z = ρ·e^{2πiθ}`. Purely a numerical probe.
pub fn boundary_profile(
    sys: &SolenoidSystem,
    radii: &[f64],
    angles: &[f64],
    truncation: u64,
) -> Result<Vec<BoundaryPoint>> {
    if !sys.infinite_height_set().is_finite() {
        return Err(Error::domain("boundary probe expects a finite prime set"));
    }
    if radii.iter().any(|&r| !(r > 0.0 && r.is_finite())) {
        return Err(Error::domain("radii must be positive"));
    }
    let fc = FixedPointCounter::new(sys)?;
    let ln_f: Vec<f64> = (1..=truncation).map(|n| fc.ln(n)).collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(radii.len() * angles.len());
    for &radius in radii {
        let lr = crate::arith::ln(radius);
        for &angle in angles {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, lf) in ln_f.iter().enumerate() {
                let n = (i + 1) as f64;
                let mag = libm::exp(lf + n * lr) / n;
                let t = core::f64::consts::TAU * libm::fmod(angle * n, 1.0);
                acc += Complex64::new(mag * libm::cos(t), mag * libm::sin(t));
            }
            out.push(BoundaryPoint {
                radius,
                angle,
                re: acc.re,
                im: acc.im,
                magnitude: libm::hypot(acc.re, acc.im),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::arith::{PrimeSet, ReducedRational};
    use crate::baer::MapMode;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rat(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn series_examples() {
        assert_eq!(zeta_series(&ints(&[1, 1, 1, 1])).coeffs(), rat(&[1, 1, 1, 1, 1]).as_slice());
        let s = zeta_series(&ints(&[1, 3, 7, 15]));
        assert_eq!(s.coeffs(), rat(&[1, 1, 2, 4, 8]).as_slice());
        let f = s.fixed_point_counts().unwrap();
        assert_eq!(f, rat(&[1, 3, 7, 15]));
    }

    #[test]
    fn integer_map_zeta() {
        let f = rational_zeta_integer_map(2).unwrap();
        assert_eq!(f.to_string(), "(1 - z)/(1 - 2z)");
        assert_eq!(rational_zeta_integer_map(-2).unwrap().to_string(), "(1 + z)/(1 - 2z)");
        assert_eq!(rational_zeta_integer_map(3).unwrap().to_string(), "(1 - z)/(1 - 3z)");
        assert!(rational_zeta_integer_map(1).is_err());
        assert!(rational_zeta_integer_map(-1).is_err());
    }

    #[test]
    fn berlekamp_massey_fibonacci() {
        let (c, l) = linear_recurrence(&rat(&[0, 1, 1, 2, 3, 5, 8, 13]));
        assert_eq!(l, 2);
        assert_eq!(c, rat(&[1, -1, -1]));
        let (g, _) = rational_from_sequence(&rat(&[1, 1, 2, 4, 8, 16]));
        assert_eq!(g, rational_zeta_integer_map(2).unwrap());
    }

    #[test]
    fn toral_counts() {
        let cat = IntegerMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(toral_fixed_points(&cat, 2).unwrap(), BigUint::from(5u32));
        assert_eq!(toral_fixed_points(&cat, 3).unwrap(), BigUint::from(16u32));
        let m = IntegerMatrix::from_i64(&[&[3, 10], &[1, 3]]);
        assert_eq!(toral_fixed_points(&m, 1).unwrap(), BigUint::from(6u32));
        let rot = IntegerMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        assert!(toral_fixed_points(&rot, 1).is_err());
        assert!(toral_zeta(&IntegerMatrix::from_i64(&[&[1]]), 20).is_err());
    }

    #[test]
    fn toral_zeta_reexpands() {
        for m in [
            IntegerMatrix::from_i64(&[&[2, 1], &[1, 1]]),
            IntegerMatrix::from_i64(&[&[0, 1], &[1, 1]]),
            IntegerMatrix::from_i64(&[&[3, 10], &[1, 3]]),
        ] {
            let z = toral_zeta(&m, 20).unwrap();
            let counts = z.expand(20).fixed_point_counts().unwrap();
            for n in 1..=20u64 {
                let f = toral_fixed_points(&m, n).unwrap();
                assert_eq!(counts[n as usize - 1], BigRational::from_integer(f.into()), "{m} n={n}");
            }
        }
        let cat = toral_zeta(&IntegerMatrix::from_i64(&[&[2, 1], &[1, 1]]), 20).unwrap();
        assert_eq!(cat.denominator(), &IntPolynomial::from_i64(&[1, -3, 1]));
    }

    #[test]
    fn boundary_probe_inside_disc_is_stable() {
        let s = PrimeSet::finite([2]).unwrap();
        let sys = SolenoidSystem::over_ring(&s, ReducedRational::from_integer(2), MapMode::Automorphism)
            .unwrap();
        let a = boundary_profile(&sys, &[0.25], &[0.0], 200).unwrap();
        // log ζ(1/4) = log((3/4)/(1/2))
        assert!((a[0].re - crate::arith::ln(1.5)).abs() < 1e-12);
    }
}
