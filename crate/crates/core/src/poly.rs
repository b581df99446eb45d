//! Dense univariate polynomials with integer coefficients.
//!
//! Coefficients are stored lowest degree first. Division and gcd go through
//! rational coefficients and come back as primitive integer polynomials.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{divisors, mobius};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// From coefficients `c_0, c_1, ...`.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// From coefficients written highest degree first, as in `x² − x − 1 ↦ [1, −1, −1]`.
    pub fn from_descending_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `xᵏ`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Largest absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| {
                acc * z + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)
            })
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// `x^deg · f(1/x)`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// `f(−x)`.
    pub fn negate_variable(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Exact quotient over ℤ, if `divisor` divides `self` there.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = qpoly::div_rem(&qpoly::from_int(self), &qpoly::from_int(divisor));
        if !r.is_empty() {
            return None;
        }
        q.iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }

    /// Primitive gcd over ℚ with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        qpoly::to_primitive(&qpoly::gcd(&qpoly::from_int(self), &qpoly::from_int(other)))
    }

    /// Yun's square-free decomposition of the primitive part: `[(g_i, i)]` with
    /// `primitive_part(self) = ± ∏ g_iⁱ`, each `g_i` square-free, nonconstant.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPolynomial, usize)> {
        let mut out = Vec::new();
        let f = self.primitive_part();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let fq = qpoly::from_int(&f);
        let fdq = qpoly::derivative(&fq);
        let a = qpoly::gcd(&fq, &fdq);
        let mut b = qpoly::div_rem(&fq, &a).0;
        let mut c = qpoly::div_rem(&fdq, &a).0;
        let mut i = 1;
        while qpoly::degree(&b).unwrap_or(0) > 0 {
            let d = qpoly::sub(&c, &qpoly::derivative(&b));
            let g = qpoly::gcd(&b, &d);
            if qpoly::degree(&g).unwrap_or(0) > 0 {
                out.push((qpoly::to_primitive(&g), i));
            }
            b = qpoly::div_rem(&b, &g).0;
            c = qpoly::div_rem(&d, &g).0;
            i += 1;
        }
        out
    }

    /// The `k`-th cyclotomic polynomial, `∏_{d|k} (x^d − 1)^{μ(k/d)}`.
    pub fn cyclotomic(k: u64) -> Self {
        assert!(k >= 1);
        let mut num = IntPolynomial::one();
        let mut den = IntPolynomial::one();
        for d in divisors(k) {
            let xd1 = &IntPolynomial::monomial(d as usize) - &IntPolynomial::one();
            match mobius(k / d).expect("k/d ≥ 1") {
                1 => num = &num * &xd1,
                -1 => den = &den * &xd1,
                _ => {}
            }
        }
        num.div_exact(&den).expect("cyclotomic quotient is exact")
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Polynomials over ℚ as plain coefficient vectors, trimmed of trailing zeros.
pub(crate) mod qpoly {
    use super::*;

    pub type QPoly = Vec<BigRational>;

    pub fn trim(mut p: QPoly) -> QPoly {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn from_int(p: &IntPolynomial) -> QPoly {
        p.coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }

    pub fn degree(p: &QPoly) -> Option<usize> {
        p.len().checked_sub(1)
    }

    pub fn sub(a: &QPoly, b: &QPoly) -> QPoly {
        let n = a.len().max(b.len());
        let zero = BigRational::zero();
        trim(
            (0..n)
                .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(a: &QPoly, b: &QPoly) -> QPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn derivative(p: &QPoly) -> QPoly {
        trim(
            p.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn div_rem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
        let b = trim(b.clone());
        assert!(!b.is_empty(), "polynomial division by zero");
        let mut r = trim(a.clone());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead = b.last().unwrap().clone();
        let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() / &lead;
            for (i, bc) in b.iter().enumerate() {
                r[shift + i] -= &c * bc;
            }
            q[shift] = c;
            r.pop();
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn monic(p: &QPoly) -> QPoly {
        match p.last() {
            Some(l) => {
                let l = l.clone();
                p.iter().map(|c| c / &l).collect()
            }
            None => Vec::new(),
        }
    }

    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
        while !b.is_empty() {
            let r = div_rem(&a, &b).1;
            a = b;
            b = r;
        }
        monic(&a)
    }

    /// Scales to coprime integer coefficients with positive leading term.
    pub fn to_primitive(p: &QPoly) -> IntPolynomial {
        if p.is_empty() {
            return IntPolynomial::zero();
        }
        let lcm = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = p.iter().map(|c| (c * &lcm).to_integer()).collect();
        IntPolynomial::new(ints).primitive_part()
    }
}
