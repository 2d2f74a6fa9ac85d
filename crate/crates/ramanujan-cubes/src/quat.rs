//! Integer quaternions, norm-p generators and their images in finite
//! matrix groups modulo an odd prime `N1`.
//!
//! Quaternions follow the Hamilton convention `i² = j² = k² = −1`, `ij = k`.
//! The generators of norm `p` are normalized as `a0` odd and positive with
//! `a1, a2, a3` even, which gives exactly `p + 1` of them when `p ≡ 1 (mod 4)`.
//!
//! A splitting `(x, y)` with `x² + y² + 1 ≡ 0 (mod N1)` embeds the quaternions
//! into `2×2` matrices over `ℤ/N1`:
//!
//! ```text
//! a0 + a1 i + a2 j + a3 k  ↦  [ a0 + a1 x + a3 y   −a2 + a1 y − a3 x ]
//!                             [ a2 + a1 y − a3 x    a0 − a1 x − a3 y ]
//! ```
//!
//! # Examples
//!
//! ```
//! use ramanujan_cubes::quat::{embed, enumerate_generators, solve_residue, Quaternion};
//!
//! let gens = enumerate_generators(5).unwrap();
//! assert_eq!(gens.len(), 6);
//!
//! let r = solve_residue(13).unwrap();
//! assert_eq!((r.x, r.y), (5, 0));
//! assert_eq!(embed(Quaternion::new(1, 2, 0, 0), &r), [11, 0, 0, 4]);
//! ```

use std::collections::HashMap;
use std::fmt;
use std::ops::{Mul, Neg};

use serde::Serialize;

use crate::error::{Error, Result};

/// Lipschitz quaternion `a0 + a1 i + a2 j + a3 k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Quaternion {
    pub a0: i64,
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1, 0, 0, 0);

    pub const fn new(a0: i64, a1: i64, a2: i64, a3: i64) -> Self {
        Self { a0, a1, a2, a3 }
    }

    pub fn coeffs(&self) -> [i64; 4] {
        [self.a0, self.a1, self.a2, self.a3]
    }

    /// Reduced norm `a0² + a1² + a2² + a3²`.
    pub fn norm(&self) -> u64 {
        norm(*self)
    }

    /// Main involution `q ↦ q*`.
    pub fn conjugate(&self) -> Self {
        conjugate(*self)
    }

    /// Divide every coefficient by `d` if all of them are divisible.
    pub fn div_exact(&self, d: i64) -> Option<Self> {
        let c = self.coeffs();
        if c.iter().all(|a| a % d == 0) {
            Some(Self::new(c[0] / d, c[1] / d, c[2] / d, c[3] / d))
        } else {
            None
        }
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a0, self.a1, self.a2, self.a3)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, rhs: Quaternion) -> Quaternion {
        multiply(self, rhs)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        Quaternion::new(-self.a0, -self.a1, -self.a2, -self.a3)
    }
}

/// Reduced norm of `q`.
pub fn norm(q: Quaternion) -> u64 {
    let c = q.coeffs();
    c.iter().map(|a| (a * a) as u64).sum()
}

/// Main involution: `(a0, −a1, −a2, −a3)`.
pub fn conjugate(q: Quaternion) -> Quaternion {
    Quaternion::new(q.a0, -q.a1, -q.a2, -q.a3)
}

/// Hamilton product with `ij = k`.
pub fn multiply(p: Quaternion, q: Quaternion) -> Quaternion {
    Quaternion::new(
        p.a0 * q.a0 - p.a1 * q.a1 - p.a2 * q.a2 - p.a3 * q.a3,
        p.a0 * q.a1 + p.a1 * q.a0 + p.a2 * q.a3 - p.a3 * q.a2,
        p.a0 * q.a2 - p.a1 * q.a3 + p.a2 * q.a0 + p.a3 * q.a1,
        p.a0 * q.a3 + p.a1 * q.a2 - p.a2 * q.a1 + p.a3 * q.a0,
    )
}

/// Trial-division primality test, adequate for moduli and primes at desk scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// All quaternions of norm `p` with `a0` odd and positive and `a1, a2, a3` even,
/// sorted lexicographically.
///
/// Fails unless the count is `p + 1`, which always holds for `p ≡ 1 (mod 4)`.
pub fn enumerate_generators(p: u64) -> Result<Vec<Quaternion>> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let bound = (p as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    for a0 in (1..=bound).step_by(2) {
        for a1 in (-bound..=bound).filter(|a| a % 2 == 0) {
            for a2 in (-bound..=bound).filter(|a| a % 2 == 0) {
                for a3 in (-bound..=bound).filter(|a| a % 2 == 0) {
                    let q = Quaternion::new(a0, a1, a2, a3);
                    if q.norm() == p {
                        out.push(q);
                    }
                }
            }
        }
    }
    out.sort();
    let expected = (p + 1) as usize;
    if out.len() != expected {
        return Err(Error::GeneratorCount { p, found: out.len(), expected });
    }
    Ok(out)
}

/// Splitting datum `(x, y)` with `x² + y² + 1 ≡ 0 (mod n1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ResiduePair {
    pub n1: u64,
    pub x: u64,
    pub y: u64,
}

/// The solution of `x² + y² + 1 ≡ 0 (mod n1)` with least `y`, then least `x`.
///
/// When `−1` is a square this is `(√−1, 0)`, so `i` embeds diagonally.
pub fn solve_residue(n1: u64) -> Result<ResiduePair> {
    if n1 == 2 || !is_prime(n1) {
        return Err(Error::NotOddPrime(n1));
    }
    for y in 0..n1 {
        for x in 0..n1 {
            if (x * x + y * y + 1) % n1 == 0 {
                return Ok(ResiduePair { n1, x, y });
            }
        }
    }
    unreachable!("every odd prime admits a splitting")
}

/// A `2×2` matrix over `ℤ/N1` stored row-major as `[m00, m01, m10, m11]`.
pub type Mat2 = [u64; 4];

fn md(a: i64, n: u64) -> u64 {
    a.rem_euclid(n as i64) as u64
}

/// Image of `q` under the splitting `r`.
pub fn embed(q: Quaternion, r: &ResiduePair) -> Mat2 {
    let n = r.n1;
    let (x, y) = (r.x as i64, r.y as i64);
    let c = q.coeffs().map(|a| a.rem_euclid(n as i64));
    let [a0, a1, a2, a3] = c;
    [
        md(a0 + a1 * x + a3 * y, n),
        md(-a2 + a1 * y - a3 * x, n),
        md(a2 + a1 * y - a3 * x, n),
        md(a0 - a1 * x - a3 * y, n),
    ]
}

pub fn mat_mul(a: &Mat2, b: &Mat2, n: u64) -> Mat2 {
    [
        (a[0] * b[0] + a[1] * b[2]) % n,
        (a[0] * b[1] + a[1] * b[3]) % n,
        (a[2] * b[0] + a[3] * b[2]) % n,
        (a[2] * b[1] + a[3] * b[3]) % n,
    ]
}

pub fn mat_det(a: &Mat2, n: u64) -> u64 {
    (a[0] * a[3] % n + n - a[1] * a[2] % n) % n
}

pub fn mat_scale(a: &Mat2, s: u64, n: u64) -> Mat2 {
    a.map(|e| e * s % n)
}

/// Subgroup of `(ℤ/n)^×` generated by `gens`, sorted.
pub fn cyclic_span(gens: &[u64], n: u64) -> Vec<u64> {
    let mut seen = vec![false; n as usize];
    seen[1 % n as usize] = true;
    let mut stack = vec![1 % n];
    while let Some(a) = stack.pop() {
        for &g in gens {
            let b = a * (g % n) % n;
            if !seen[b as usize] {
                seen[b as usize] = true;
                stack.push(b);
            }
        }
    }
    (0..n).filter(|&a| seen[a as usize]).collect()
}

/// Least scalar multiple of `m` by an element of `scalars`, in the order
/// `(m00, m01, m10, m11)`.
pub fn canonical(m: &Mat2, scalars: &[u64], n: u64) -> Mat2 {
    scalars.iter().map(|&s| mat_scale(m, s, n)).min().expect("scalar group is nonempty")
}

/// One of the quotient groups `{g : det g ∈ A} / scalars`.
#[derive(Clone, Debug)]
pub struct ProjGroup {
    pub n1: u64,
    pub scalars: Vec<u64>,
    pub elements: Vec<Mat2>,
    index: HashMap<Mat2, u32>,
}

impl ProjGroup {
    fn new(n1: u64, dets: &[bool], scalars: Vec<u64>) -> Self {
        let n = n1;
        let mut elements = Vec::new();
        let mut index = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let m = [a, b, c, d];
                        if !dets[mat_det(&m, n) as usize] {
                            continue;
                        }
                        if canonical(&m, &scalars, n) == m {
                            index.insert(m, elements.len() as u32);
                            elements.push(m);
                        }
                    }
                }
            }
        }
        Self { n1, scalars, elements, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn canonical(&self, m: &Mat2) -> Mat2 {
        canonical(m, &self.scalars, self.n1)
    }

    /// Index of the class of `m`, if its determinant is admissible.
    pub fn index_of(&self, m: &Mat2) -> Option<u32> {
        self.index.get(&self.canonical(m)).copied()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let m = mat_mul(&self.elements[a as usize], &self.elements[b as usize], self.n1);
        self.index_of(&m).expect("closed under multiplication")
    }

    pub fn identity(&self) -> u32 {
        self.index_of(&[1, 0, 0, 1]).expect("identity present")
    }

    pub fn inverse(&self, a: u32) -> u32 {
        let [p, q, r, s] = self.elements[a as usize];
        let n = self.n1;
        let det = mat_det(&[p, q, r, s], n);
        let di = mod_inverse(det, n);
        let m = [s * di % n, (n - q) * di % n, (n - r) * di % n, p * di % n];
        self.index_of(&m).expect("closed under inverse")
    }
}

/// Inverse of `a` modulo the prime `n`.
pub fn mod_inverse(a: u64, n: u64) -> u64 {
    let mut r = 1;
    let mut b = a % n;
    let mut e = n - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % n;
        }
        b = b * b % n;
        e >>= 1;
    }
    r
}

/// The pair `H′ → H` together with a section `s : H → H′`.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    pub primes: Vec<u64>,
    pub residue: ResiduePair,
    /// Subgroup of `(ℤ/N1)^×` generated by the primes.
    pub det_group: Vec<u64>,
    /// `H = {det ∈ A} / ⟨p_j, −1⟩`.
    pub h: ProjGroup,
    /// `H′ = {det ∈ A} / ⟨p_j⟩`.
    pub h_prime: ProjGroup,
    /// Quotient map `H′ → H`.
    pub quotient: Vec<u32>,
    /// Section `H → H′`.
    pub section: Vec<u32>,
}

impl FiniteGroupTable {
    pub fn n1(&self) -> u64 {
        self.residue.n1
    }

    /// Order of the kernel of `H′ → H`.
    pub fn kernel_order(&self) -> usize {
        self.h_prime.len() / self.h.len()
    }

    /// The class of `−m` in `H′`.
    pub fn negate_prime(&self, a: u32) -> u32 {
        let n = self.n1();
        let m = mat_scale(&self.h_prime.elements[a as usize], n - 1, n);
        self.h_prime.index_of(&m).expect("closed under negation")
    }

    /// A copy whose section is replaced by `−s(h)` wherever `flip(h)` holds.
    pub fn perturbed(&self, flip: impl Fn(u32) -> bool) -> Self {
        let mut t = self.clone();
        for h in 0..t.section.len() as u32 {
            if flip(h) {
                t.section[h as usize] = self.negate_prime(self.section[h as usize]);
            }
        }
        t
    }
}

/// Enumerate `H` and `H′` for the given primes and modulus `n1`.
pub fn build_group(primes: &[u64], n1: u64) -> Result<FiniteGroupTable> {
    let residue = solve_residue(n1)?;
    if primes.iter().any(|&p| p % n1 == 0) {
        return Err(Error::InvalidModulus { n1, primes: primes.to_vec() });
    }
    let det_group = cyclic_span(primes, n1);
    let mut dets = vec![false; n1 as usize];
    for &a in &det_group {
        dets[a as usize] = true;
    }
    let b_prime = cyclic_span(primes, n1);
    let mut with_neg = primes.to_vec();
    with_neg.push(n1 - 1);
    let b = cyclic_span(&with_neg, n1);
    let h = ProjGroup::new(n1, &dets, b);
    let h_prime = ProjGroup::new(n1, &dets, b_prime);
    let quotient = h_prime.elements.iter().map(|m| h.index_of(m).expect("same determinants")).collect();
    let section = h.elements.iter().map(|m| h_prime.index_of(m).expect("same determinants")).collect();
    Ok(FiniteGroupTable { primes: primes.to_vec(), residue, det_group, h, h_prime, quotient, section })
}
