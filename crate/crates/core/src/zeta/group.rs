//! Exhaustive search for automorphisms of small finite abelian groups with a
//! prescribed periodic fixed-point sequence.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::arith::{factor_u64, valuation_u64};
use crate::error::{Error, Result};

/// Largest group order accepted.
pub const GROUP_ORDER_CAP: u64 = 64;

/// Partial assignments explored per primary component before giving up.
const SEARCH_BUDGET: u64 = 1 << 22;

/// An automorphism of `⊕ ℤ/mᵢ` (all `mᵢ` powers of `prime`) given by the
/// coordinates of the images of the standard generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupComponent {
    pub prime: u64,
    pub moduli: Vec<u64>,
    pub images: Vec<Vec<u64>>,
}

/// An automorphism of a finite abelian group, one component per prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupWitness {
    pub components: Vec<GroupComponent>,
}

/// Searches every abelian group of order `order` and every automorphism of it
/// for one whose fixed-point counts repeat `pattern` with period `pattern.len()`.
///
/// Fixed-point counts are multiplicative over primary components, so each
/// prime is searched separately.
pub fn group_realizable_bruteforce(pattern: &[u64], order: u64) -> Result<Option<GroupWitness>> {
    if pattern.is_empty() || pattern.contains(&0) {
        return Err(Error::domain("pattern must be a nonempty list of positive counts"));
    }
    if order == 0 {
        return Err(Error::domain("group order must be positive"));
    }
    if order > GROUP_ORDER_CAP {
        return Err(Error::capability(format!(
            "group order {order} exceeds the cap {GROUP_ORDER_CAP}"
        )));
    }
    if pattern.iter().any(|&f| !order.is_multiple_of(f)) {
        return Ok(None);
    }
    let mut components = Vec::new();
    for (p, e) in factor_u64(order) {
        let target: Vec<u64> = pattern
            .iter()
            .map(|&f| p.pow(valuation_u64(f, p)))
            .collect();
        let mut found = None;
        for part in partitions(e) {
            let group = PGroup::new(part.iter().map(|&l| p.pow(l)).collect());
            if let Some(images) = group.search(&target)? {
                found = Some(GroupComponent {
                    prime: p,
                    moduli: group.moduli.clone(),
                    images: images.iter().map(|&x| group.coords(x)).collect(),
                });
                break;
            }
        }
        match found {
            Some(c) => components.push(c),
            None => return Ok(None),
        }
    }
    Ok(Some(GroupWitness { components }))
}

/// Partitions of `n` into nonincreasing parts, largest first.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `⊕ ℤ/mᵢ` with elements encoded in mixed radix; at most 64 elements, so a
/// subset fits in a `u64` mask.
struct PGroup {
    moduli: Vec<u64>,
    size: usize,
    add: Vec<u8>,
}

impl PGroup {
    fn new(moduli: Vec<u64>) -> Self {
        let size = moduli.iter().product::<u64>() as usize;
        let mut g = PGroup {
            moduli,
            size,
            add: Vec::new(),
        };
        let mut add = vec![0u8; size * size];
        for x in 0..size {
            let cx = g.coords(x);
            for y in 0..size {
                let cy = g.coords(y);
                let sum: Vec<u64> = cx
                    .iter()
                    .zip(&cy)
                    .zip(&g.moduli)
                    .map(|((a, b), m)| (a + b) % m)
                    .collect();
                add[x * size + y] = g.index(&sum) as u8;
            }
        }
        g.add = add;
        g
    }

    fn coords(&self, mut x: usize) -> Vec<u64> {
        self.moduli
            .iter()
            .map(|&m| {
                let c = x as u64 % m;
                x /= m as usize;
                c
            })
            .collect()
    }

    fn index(&self, c: &[u64]) -> usize {
        c.iter()
            .zip(&self.moduli)
            .rev()
            .fold(0, |acc, (&ci, &m)| acc * m as usize + ci as usize)
    }

    fn plus(&self, x: usize, y: usize) -> usize {
        self.add[x * self.size + y] as usize
    }

    fn times(&self, k: u64, x: usize) -> usize {
        (0..k).fold(0, |acc, _| self.plus(acc, x))
    }

    fn element_order(&self, x: usize) -> u64 {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = self.plus(acc, x);
            k += 1;
        }
        k
    }

    /// Subgroup generated by the subgroup `sub` and `x`.
    fn extend(&self, sub: u64, x: usize) -> u64 {
        let mut out = 0u64;
        let mut kx = 0usize;
        for _ in 0..self.element_order(x) {
            for s in (0..self.size).filter(|&s| sub >> s & 1 == 1) {
                out |= 1 << self.plus(s, kx);
            }
            kx = self.plus(kx, x);
        }
        out
    }

    fn search(&self, target: &[u64]) -> Result<Option<Vec<usize>>> {
        let candidates: Vec<Vec<usize>> = self
            .moduli
            .iter()
            .map(|&m| (0..self.size).filter(|&x| self.times(m, x) == 0).collect())
            .collect();
        let mut images = Vec::with_capacity(self.moduli.len());
        let mut visited = 0u64;
        let found = self.dfs(&candidates, target, 1, &mut images, &mut visited)?;
        Ok(found.then_some(images))
    }

    fn dfs(
        &self,
        candidates: &[Vec<usize>],
        target: &[u64],
        sub: u64,
        images: &mut Vec<usize>,
        visited: &mut u64,
    ) -> Result<bool> {
        let i = images.len();
        if i == self.moduli.len() {
            return Ok(self.matches(images, target));
        }
        let want = self.moduli[..=i].iter().product::<u64>();
        for &x in &candidates[i] {
            *visited += 1;
            if *visited > SEARCH_BUDGET {
                return Err(Error::capability(format!(
                    "automorphism search of {:?} exceeds {SEARCH_BUDGET} steps",
                    self.moduli
                )));
            }
            let next = self.extend(sub, x);
            if u64::from(next.count_ones()) != want {
                continue;
            }
            images.push(x);
            if self.dfs(candidates, target, next, images, visited)? {
                return Ok(true);
            }
            images.pop();
        }
        Ok(false)
    }

    fn apply(&self, images: &[usize], x: usize) -> usize {
        self.coords(x)
            .iter()
            .zip(images)
            .fold(0, |acc, (&c, &img)| self.plus(acc, self.times(c, img)))
    }

    fn matches(&self, images: &[usize], target: &[u64]) -> bool {
        let perm: Vec<usize> = (0..self.size).map(|x| self.apply(images, x)).collect();
        let mut cycle = vec![0u64; self.size];
        for start in 0..self.size {
            if cycle[start] != 0 {
                continue;
            }
            let mut len = 1;
            let mut y = perm[start];
            while y != start {
                y = perm[y];
                len += 1;
            }
            let mut y = start;
            for _ in 0..len {
                cycle[y] = len;
                y = perm[y];
            }
        }
        let period = cycle
            .iter()
            .fold(target.len() as u64, |l, &c| l.lcm(&c));
        (1..=period).all(|n| {
            let fixed = cycle.iter().filter(|&&c| n % c == 0).count() as u64;
            fixed == target[((n - 1) % target.len() as u64) as usize]
        })
    }
}
