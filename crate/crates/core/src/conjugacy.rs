//! Intertwiners `QA = BQ`, determinant forms and conjugacy of integer
//! matrices over ℤ, over rings `ℤ[1/p₁, ..., 1/pₙ]` and over ℚ.

use core::fmt;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{primes_up_to, PrimeSet};
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::poly::{qpoly, IntPolynomial};

/// The free abelian group `{Q ∈ M_d(ℤ) : QA = BQ}` with a Hermite-reduced basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntertwinerLattice {
    pub basis: Vec<IntegerMatrix>,
}

impl IntertwinerLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `Σ xᵢ Qᵢ`.
    pub fn combine(&self, coords: &[BigInt]) -> IntegerMatrix {
        let d = self.basis.first().map_or(0, IntegerMatrix::rows);
        let mut acc = IntegerMatrix::zero(d, d);
        for (q, x) in self.basis.iter().zip(coords) {
            if !x.is_zero() {
                acc = acc.add(&q.scale(x)).expect("same shape");
            }
        }
        acc
    }
}

fn same_square_shape(a: &IntegerMatrix, b: &IntegerMatrix) -> Result<usize> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::domain("matrices must be square of the same size"));
    }
    Ok(a.rows())
}

pub fn intertwiner_lattice(a: &IntegerMatrix, b: &IntegerMatrix) -> Result<IntertwinerLattice> {
    let d = same_square_shape(a, b)?;
    // Row (i, j) of the system is the (i, j) entry of QA − BQ; unknown
    // Q_{ik} sits in column i·d + k.
    let mut sys = IntegerMatrix::zero(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            let row = i * d + j;
            for k in 0..d {
                let c = sys.get(row, i * d + k) + a.get(k, j);
                sys.set(row, i * d + k, c);
                let c = sys.get(row, k * d + j) - b.get(i, k);
                sys.set(row, k * d + j, c);
            }
        }
    }
    let basis = sys
        .integer_kernel()
        .into_iter()
        .map(|v| IntegerMatrix::new(d, d, v).expect("d² entries"))
        .collect();
    Ok(IntertwinerLattice { basis })
}

/// `αx² + βxy + γy²` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryQuadraticForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl BinaryQuadraticForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        BinaryQuadraticForm {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// The form `f(px + qy, rx + sy)`.
    pub fn transform(&self, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) -> Self {
        let two = BigInt::from(2);
        BinaryQuadraticForm {
            a: self.eval(p, r),
            b: &two * &self.a * p * q + &self.b * (p * s + q * r) + &two * &self.c * r * s,
            c: self.eval(q, s),
        }
    }

    /// A matrix `U ∈ GL₂(ℤ)` with entries in `[−bound, bound]` taking `self`
    /// to `other`, if one exists.
    pub fn equivalence_within(&self, other: &Self, bound: i64) -> Option<IntegerMatrix> {
        if self.discriminant() != other.discriminant() {
            return None;
        }
        let range = || (-bound..=bound).map(BigInt::from);
        for p in range() {
            for r in range() {
                if self.eval(&p, &r) != other.a {
                    continue;
                }
                for q in range() {
                    for s in range() {
                        if !(&p * &s - &q * &r).abs().is_one() {
                            continue;
                        }
                        if &self.transform(&p, &q, &r, &s) == other {
                            return IntegerMatrix::from_rows(vec![vec![p, q], vec![r, s]]).ok();
                        }
                    }
                }
            }
        }
        None
    }
}

impl fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [(&self.a, "x^2"), (&self.b, "xy"), (&self.c, "y^2")];
        let mut first = true;
        for (c, m) in terms {
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
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            f.write_str(m)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `det(xQ₁ + yQ₂)` for a rank-2 lattice of 2×2 matrices.
pub fn determinant_form(lat: &IntertwinerLattice) -> Result<BinaryQuadraticForm> {
    if lat.rank() != 2 || lat.basis[0].rows() != 2 {
        return Err(Error::capability(
            "determinant forms are implemented for rank-2 lattices of 2x2 matrices",
        ));
    }
    let (q1, q2) = (&lat.basis[0], &lat.basis[1]);
    let a = q1.det()?;
    let c = q2.det()?;
    let b = q1.add(q2)?.det()? - &a - &c;
    Ok(BinaryQuadraticForm { a, b, c })
}

/// Result of deciding conjugacy over `ℤ[1/S]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConjugacyDecision {
    /// `witness·A = B·witness` and `det` is a unit of the ring. `coords` are
    /// the lattice coordinates of the witness when it came from the search.
    Conjugate {
        witness: IntegerMatrix,
        det: BigInt,
        coords: Option<Vec<BigInt>>,
    },
    /// No intertwiner has a unit determinant modulo `modulus = prime^k`.
    Obstructed {
        prime: u64,
        modulus: u64,
        reason: String,
    },
    /// Neither a witness with coordinates up to `bound` nor a local obstruction.
    Unknown { bound: u64 },
}

impl ConjugacyDecision {
    pub fn is_conjugate(&self) -> bool {
        matches!(self, ConjugacyDecision::Conjugate { .. })
    }
}

/// Largest number of lattice points the witness search visits.
pub const WITNESS_BUDGET: u64 = 10_000_000;

/// Largest prime used for local obstructions.
pub const LOCAL_PRIME_LIMIT: u64 = 50;

fn is_ring_unit(x: &BigInt, allowed: &[u64]) -> bool {
    if x.is_zero() {
        return false;
    }
    let mut m = x.magnitude().clone();
    for &p in allowed {
        let p = num_bigint::BigUint::from(p);
        while (&m % &p).is_zero() {
            m /= &p;
        }
    }
    m.is_one()
}

/// Coordinate vectors in `[−bound, bound]^r` ordered by sup norm, then
/// lexicographically.
fn shell_points(rank: usize, bound: u64) -> impl Iterator<Item = Vec<i64>> {
    let b = bound as i64;
    (0..=b).flat_map(move |s| {
        let width = (2 * s + 1) as u64;
        let total = width.pow(rank as u32);
        (0..total).filter_map(move |mut idx| {
            let mut v = vec![0i64; rank];
            for slot in v.iter_mut().rev() {
                *slot = (idx % width) as i64 - s;
                idx /= width;
            }
            (v.iter().map(|x| x.abs()).max().unwrap_or(0) == s).then_some(v)
        })
    })
}

/// Decides conjugacy of `A` and `B` over `ℤ[1/p : p ∈ allowed]` by witness
/// search on the intertwiner lattice, then local obstructions mod `q` and `q²`.
pub fn conjugate_over_ring(
    a: &IntegerMatrix,
    b: &IntegerMatrix,
    allowed: &PrimeSet,
    bound: u64,
) -> Result<ConjugacyDecision> {
    let d = same_square_shape(a, b)?;
    if !allowed.is_finite() {
        return Err(Error::domain("allowed primes must form a finite set"));
    }
    if a.char_poly()? != b.char_poly()? {
        return Err(Error::domain("characteristic polynomials differ"));
    }
    if a == b {
        return Ok(ConjugacyDecision::Conjugate {
            witness: IntegerMatrix::identity(d),
            det: BigInt::one(),
            coords: None,
        });
    }
    let lat = intertwiner_lattice(a, b)?;
    let r = lat.rank();
    if r == 0 {
        return Ok(ConjugacyDecision::Unknown { bound });
    }
    let points = (2 * bound + 1)
        .checked_pow(r as u32)
        .filter(|&n| n <= WITNESS_BUDGET)
        .ok_or_else(|| {
            Error::capability(format!(
                "witness search over rank {r} with bound {bound} exceeds {WITNESS_BUDGET} points"
            ))
        })?;
    let _ = points;
    for v in shell_points(r, bound) {
        let coords: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let q = lat.combine(&coords);
        let det = q.det()?;
        if is_ring_unit(&det, allowed.listed()) {
            if q.mul(a)? != b.mul(&q)? {
                return Err(Error::invariant("witness fails QA = BQ"));
            }
            return Ok(ConjugacyDecision::Conjugate {
                witness: q,
                det,
                coords: Some(coords),
            });
        }
    }
    if let Some((prime, modulus)) = local_obstruction(&lat, allowed.listed())? {
        return Ok(ConjugacyDecision::Obstructed {
            prime,
            modulus,
            reason: format!(
                "no intertwiner determinant is congruent to a unit of the ring mod {modulus}"
            ),
        });
    }
    Ok(ConjugacyDecision::Unknown { bound })
}

/// Largest residue grid `(q^k)^rank` examined for a local obstruction.
const LOCAL_GRID_LIMIT: u64 = 1 << 20;

/// First `(q, q^k)` with `q ≤ 50` outside `allowed`, `k ≤ 2`, such that no
/// lattice point has determinant in the image of the ring's units mod `q^k`.
fn local_obstruction(lat: &IntertwinerLattice, allowed: &[u64]) -> Result<Option<(u64, u64)>> {
    let r = lat.rank();
    let d = lat.basis[0].rows();
    for q in primes_up_to(LOCAL_PRIME_LIMIT) {
        if allowed.contains(&q) {
            continue;
        }
        for k in 1..=2u32 {
            let m = q.pow(k);
            let grid = match m.checked_pow(r as u32) {
                Some(g) if g <= LOCAL_GRID_LIMIT => g,
                _ => continue,
            };
            let units = unit_image(m, allowed);
            let reduced: Vec<Vec<u64>> = lat
                .basis
                .iter()
                .map(|b| {
                    b.entries()
                        .iter()
                        .map(|x| x.mod_floor(&BigInt::from(m)).to_u64().expect("residue"))
                        .collect()
                })
                .collect();
            let mut hit = false;
            for mut idx in 0..grid {
                let mut entries = vec![0u64; d * d];
                for basis in &reduced {
                    let x = idx % m;
                    idx /= m;
                    for (e, &bv) in entries.iter_mut().zip(basis) {
                        *e = (*e + x * bv) % m;
                    }
                }
                if units[det_mod(&entries, d, m) as usize] {
                    hit = true;
                    break;
                }
            }
            if !hit {
                return Ok(Some((q, m)));
            }
        }
    }
    Ok(None)
}

/// Membership table for the subgroup of `(ℤ/m)ˣ` generated by −1 and `allowed`.
fn unit_image(m: u64, allowed: &[u64]) -> Vec<bool> {
    let mut seen = vec![false; m as usize];
    let mut stack = vec![1 % m];
    seen[(1 % m) as usize] = true;
    let gens: Vec<u64> = core::iter::once(m - 1)
        .chain(allowed.iter().map(|&p| p % m))
        .collect();
    while let Some(x) = stack.pop() {
        for &g in &gens {
            let y = x * g % m;
            if !seen[y as usize] {
                seen[y as usize] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// Determinant modulo `m` by cofactor expansion (small `d` only).
fn det_mod(e: &[u64], d: usize, m: u64) -> u64 {
    match d {
        1 => e[0] % m,
        2 => (e[0] * e[3] % m + m - e[1] * e[2] % m) % m,
        _ => {
            let mut acc = 0u64;
            for j in 0..d {
                let mut minor = Vec::with_capacity((d - 1) * (d - 1));
                for i in 1..d {
                    for k in (0..d).filter(|&k| k != j) {
                        minor.push(e[i * d + k]);
                    }
                }
                let term = e[j] * det_mod(&minor, d - 1, m) % m;
                acc = if j % 2 == 0 { (acc + term) % m } else { (acc + m - term) % m };
            }
            acc
        }
    }
}

/// Largest dimension handled by [`rational_canonical_form`].
pub const RCF_MAX_DIM: usize = 6;

/// Invariant factors of `xI − A` over ℚ[x] (the nonconstant ones, each
/// dividing the next).
pub fn rational_canonical_form(a: &IntegerMatrix) -> Result<Vec<IntPolynomial>> {
    if !a.is_square() {
        return Err(Error::domain("matrix is not square"));
    }
    let d = a.rows();
    if d > RCF_MAX_DIM {
        return Err(Error::capability(format!(
            "invariant factors implemented up to dimension {RCF_MAX_DIM}"
        )));
    }
    let entry = |i: usize, j: usize| -> qpoly::QPoly {
        let c = BigRational::from_integer(-a.get(i, j));
        if i == j {
            qpoly::trim(vec![c, BigRational::one()])
        } else {
            qpoly::trim(vec![c])
        }
    };
    let m: Vec<Vec<qpoly::QPoly>> = (0..d).map(|i| (0..d).map(|j| entry(i, j)).collect()).collect();
    let mut divisors: Vec<qpoly::QPoly> = vec![vec![BigRational::one()]];
    for k in 1..=d {
        let mut g: qpoly::QPoly = Vec::new();
        for rows in subsets(d, k) {
            for cols in subsets(d, k) {
                let minor = poly_det(&m, &rows, &cols);
                g = if g.is_empty() { qpoly::monic(&minor) } else { qpoly::gcd(&g, &minor) };
            }
        }
        divisors.push(g);
    }
    let mut out = Vec::new();
    for k in 1..=d {
        let f = qpoly::div_rem(&divisors[k], &divisors[k - 1]).0;
        if qpoly::degree(&f).unwrap_or(0) > 0 {
            out.push(qpoly::to_primitive(&f));
        }
    }
    Ok(out)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Laplace expansion of the minor on `rows × cols`.
fn poly_det(m: &[Vec<qpoly::QPoly>], rows: &[usize], cols: &[usize]) -> qpoly::QPoly {
    if rows.len() == 1 {
        return m[rows[0]][cols[0]].clone();
    }
    let mut acc: qpoly::QPoly = Vec::new();
    for (j, &c) in cols.iter().enumerate() {
        let entry = &m[rows[0]][c];
        if entry.is_empty() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = qpoly::mul(entry, &poly_det(m, &rows[1..], &rest));
        acc = if j % 2 == 0 {
            qpoly::sub(&acc, &qpoly::sub(&Vec::new(), &term))
        } else {
            qpoly::sub(&acc, &term)
        };
    }
    acc
}

/// Conjugacy over ℚ via equality of invariant factors.
pub fn rationally_conjugate(a: &IntegerMatrix, b: &IntegerMatrix) -> Result<bool> {
    same_square_shape(a, b)?;
    Ok(rational_canonical_form(a)? == rational_canonical_form(b)?)
}

/// An intertwiner with nonzero determinant, found on the grid `{0..d}^rank`.
///
/// `det(Σ xᵢQᵢ)` has degree `d`, so if it is not identically zero it is
/// nonzero somewhere on that grid; `None` therefore proves `A ≁ B` over ℚ.
pub fn rational_witness(a: &IntegerMatrix, b: &IntegerMatrix) -> Result<Option<IntegerMatrix>> {
    let d = same_square_shape(a, b)?;
    let lat = intertwiner_lattice(a, b)?;
    let r = lat.rank();
    if r == 0 {
        return Ok(None);
    }
    let side = d as u64 + 1;
    let grid = side
        .checked_pow(r as u32)
        .filter(|&g| g <= WITNESS_BUDGET)
        .ok_or_else(|| Error::capability("rational witness grid too large"))?;
    for mut idx in 0..grid {
        let coords: Vec<BigInt> = (0..r)
            .map(|_| {
                let x = idx % side;
                idx /= side;
                BigInt::from(x)
            })
            .collect();
        let q = lat.combine(&coords);
        if !q.det()?.is_zero() {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

/// One ring in the tower `ℤ ⊂ ℤ[1/p₁] ⊂ ... ⊂ ℚ` with its partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetLevel {
    pub label: String,
    /// Inverted primes; `None` for ℚ.
    pub inverted: Option<Vec<u64>>,
    /// Matrix indices per class, classes ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
    /// Pairs left undecided at this level.
    pub unknown: Vec<(usize, usize)>,
    /// Pairs proved non-conjugate, with the obstructing modulus.
    pub obstructed: Vec<(usize, usize, u64)>,
}

/// A class at `from_level` contained in `to_class` one level up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PosetEdge {
    pub from_level: usize,
    pub from_class: usize,
    pub to_class: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyPoset {
    pub levels: Vec<PosetLevel>,
    pub edges: Vec<PosetEdge>,
}

impl ConjugacyPoset {
    /// First level at which matrices `i` and `j` share a class.
    pub fn merge_level(&self, i: usize, j: usize) -> Option<usize> {
        self.levels
            .iter()
            .position(|l| l.classes.iter().any(|c| c.contains(&i) && c.contains(&j)))
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn classes_of(parent: &mut [usize]) -> Vec<Vec<usize>> {
    let n = parent.len();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

fn ring_label(primes: &[u64]) -> String {
    if primes.is_empty() {
        return String::from("Z");
    }
    let inv: Vec<String> = primes.iter().map(|p| format!("1/{p}")).collect();
    format!("Z[{}]", inv.join(","))
}

/// Partitions `matrices` by conjugacy over `ℤ`, `ℤ[1/p₁]`, `ℤ[1/p₁,1/p₂]`, ...
/// and finally ℚ. Classes only ever merge going up.
pub fn poset_build(
    matrices: &[IntegerMatrix],
    prime_sequence: &[u64],
    bound: u64,
) -> Result<ConjugacyPoset> {
    let first = matrices.first().ok_or_else(|| Error::domain("no matrices given"))?;
    let chi = first.char_poly()?;
    for m in &matrices[1..] {
        same_square_shape(first, m)?;
        if m.char_poly()? != chi {
            return Err(Error::domain("matrices must share one characteristic polynomial"));
        }
    }
    let n = matrices.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut levels = Vec::new();
    for depth in 0..=prime_sequence.len() {
        let inverted = prime_sequence[..depth].to_vec();
        let ring = PrimeSet::finite(inverted.iter().copied())?;
        let mut unknown = Vec::new();
        let mut obstructed = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if find(&mut parent, i) == find(&mut parent, j) {
                    continue;
                }
                match conjugate_over_ring(&matrices[i], &matrices[j], &ring, bound)? {
                    ConjugacyDecision::Conjugate { .. } => {
                        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                    ConjugacyDecision::Obstructed { modulus, .. } => {
                        obstructed.push((i, j, modulus))
                    }
                    ConjugacyDecision::Unknown { .. } => unknown.push((i, j)),
                }
            }
        }
        levels.push(PosetLevel {
            label: ring_label(&inverted),
            inverted: Some(inverted),
            classes: classes_of(&mut parent),
            unknown,
            obstructed,
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            if find(&mut parent, i) == find(&mut parent, j) {
                continue;
            }
            let by_rcf = rationally_conjugate(&matrices[i], &matrices[j])?;
            if let Ok(w) = rational_witness(&matrices[i], &matrices[j]) {
                if w.is_some() != by_rcf {
                    return Err(Error::invariant(format!(
                        "invariant factors and intertwiner search disagree on ({i}, {j})"
                    )));
                }
            }
            if by_rcf {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    levels.push(PosetLevel {
        label: String::from("Q"),
        inverted: None,
        classes: classes_of(&mut parent),
        unknown: Vec::new(),
        obstructed: Vec::new(),
    });
    let mut edges = Vec::new();
    for (lvl, pair) in levels.windows(2).enumerate() {
        for (ci, class) in pair[0].classes.iter().enumerate() {
            let to = pair[1]
                .classes
                .iter()
                .position(|c| c.contains(&class[0]))
                .expect("partitions only coarsen");
            edges.push(PosetEdge {
                from_level: lvl,
                from_class: ci,
                to_class: to,
            });
        }
    }
    Ok(ConjugacyPoset { levels, edges })
}
