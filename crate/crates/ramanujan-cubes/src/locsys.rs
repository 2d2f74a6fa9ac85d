//! Metrized local systems on cubical complexes.
//!
//! A local system stores one unitary matrix `L_e : L(o(e)) → L(t(e))` per
//! oriented edge, with constant fiber dimension. The arithmetic systems use
//! the weight-`k` symmetric power of the standard representation of the
//! unit quaternions, twisted by a sign `ε` that measures the failure of the
//! section `s : H → H′` to be multiplicative:
//!
//! ```text
//! s(v) · ϖ̄′_{j,i} = ε · s(v · ϖ̄_{j,i})   in H′,
//! L_e = ε^k · ρ_k(ϖ_{j,i})^{-1}          for the edge e = (v, i).
//! ```
//!
//! The inverse makes the system flat under right multiplication: the two
//! paths around a square compose to `ρ_k(ϖ ϖ′)^{-1}` for the two
//! factorizations of the same quaternion.
//!
//! # Examples
//!
//! ```
//! use ramanujan_cubes::locsys::symm_rep;
//! use ramanujan_cubes::linalg::unitarity_defect;
//! use ramanujan_cubes::quat::Quaternion;
//!
//! let rho = symm_rep(Quaternion::new(1, 2, 0, 0), 2).unwrap();
//! assert_eq!(rho.nrows(), 3);
//! assert!(unitarity_defect(&rho) < 1e-12);
//! ```

use serde::Serialize;

use crate::arith::ArithComplex;
use crate::complex::CubicalComplex;
use crate::error::{Error, Result};
use crate::linalg::{op_norm, unitarity_defect, CMat, C64, ONE, ZERO};
use crate::quat::{cyclic_span, mat_mul, FiniteGroupTable, Quaternion};

/// How a local system was produced.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum SystemKind {
    Trivial,
    Symmetric { k: u32, real_gauge: bool },
    Product,
}

/// A unitary local system with constant fiber dimension.
#[derive(Clone, Debug)]
pub struct LocalSystem {
    pub dim: usize,
    /// `transitions[j][e]` for the oriented direction-`j` edge `e`.
    pub transitions: Vec<Vec<CMat>>,
    pub kind: SystemKind,
}

impl LocalSystem {
    /// The trivial system of dimension `dim`.
    pub fn trivial(x: &CubicalComplex, dim: usize) -> Self {
        let id = CMat::identity(dim, dim);
        let transitions = (0..x.g()).map(|j| vec![id.clone(); x.oriented_count(1 << j)]).collect();
        Self { dim, transitions, kind: SystemKind::Trivial }
    }

    pub fn transition(&self, j: usize, e: u32) -> &CMat {
        &self.transitions[j][e as usize]
    }

    /// Largest `‖L L† − I‖` entry over all transitions.
    pub fn unitarity_defect(&self) -> f64 {
        self.transitions.iter().flatten().map(unitarity_defect).fold(0.0, f64::max)
    }

    /// Largest `‖L_ē L_e − I‖` entry over all oriented edges.
    pub fn inverse_defect(&self, x: &CubicalComplex) -> f64 {
        let id = CMat::identity(self.dim, self.dim);
        let mut worst: f64 = 0.0;
        for (j, ts) in self.transitions.iter().enumerate() {
            for (e, l) in ts.iter().enumerate() {
                let back = &ts[x.inv(1 << j, j, e as u32) as usize];
                let d = (back * l - &id).iter().map(|v| v.norm()).fold(0.0, f64::max);
                worst = worst.max(d);
            }
        }
        worst
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Complex `2×2` image of `q`: `[[a0 + a1 i, a2 + a3 i], [−a2 + a3 i, a0 − a1 i]]`.
pub fn quaternion_matrix(q: Quaternion) -> [[C64; 2]; 2] {
    let c = |a: i64, b: i64| C64::new(a as f64, b as f64);
    [[c(q.a0, q.a1), c(q.a2, q.a3)], [c(-q.a2, q.a3), c(q.a0, -q.a1)]]
}

/// `Symm^k` of a `2×2` matrix in the orthonormal basis `√C(k,m) x^m y^(k−m)`.
///
/// The matrix acts by `x ↦ αx + γy`, `y ↦ βx + δy`, which is a homomorphism.
pub fn symmetric_power(g: [[C64; 2]; 2], k: u32) -> CMat {
    let [[a, b], [c, d]] = g;
    let n = k as usize + 1;
    let mut out = CMat::zeros(n, n);
    for m in 0..=k {
        // (αx + γy)^m (βx + δy)^(k−m), coefficient of x^t y^(k−t)
        let mut poly = vec![ZERO; n];
        for s in 0..=m {
            let first = a.powu(s) * c.powu(m - s) * binomial(m, s);
            for u in 0..=(k - m) {
                let second = b.powu(u) * d.powu(k - m - u) * binomial(k - m, u);
                poly[(s + u) as usize] += first * second;
            }
        }
        let scale = binomial(k, m).sqrt();
        for t in 0..=k {
            out[(t as usize, m as usize)] = poly[t as usize] * scale / binomial(k, t).sqrt();
        }
    }
    out
}

/// The unitary `Symm^k` action of `q / √Nm(q)`.
pub fn symm_rep(q: Quaternion, k: u32) -> Result<CMat> {
    let nm = q.norm();
    if nm == 0 {
        return Err(Error::Config("symm_rep of the zero quaternion".into()));
    }
    let s = (nm as f64).sqrt();
    let mut g = quaternion_matrix(q);
    for row in &mut g {
        for v in row.iter_mut() {
            *v /= s;
        }
    }
    Ok(symmetric_power(g, k))
}

/// Whether `Symm^k` factors through the local system: `k` even, or `−1`
/// outside the subgroup of `(ℤ/2N1)^×` generated by the primes.
pub fn central_condition_check(primes: &[u64], n1: u64, k: u32) -> bool {
    if k % 2 == 0 {
        return true;
    }
    let m = 2 * n1;
    !cyclic_span(primes, m).contains(&(m - 1))
}

/// Unitary `U` with `U† ρ_k(q) U` real for every quaternion `q`, for even `k`.
///
/// `ρ_k(q)` commutes with the antiunitary `J v = W⁻¹ v̄`, `W = ρ_k([[0,1],[−1,0]])`,
/// and `J² = 1` for even `k`; the columns of `U` span its fixed vectors.
pub fn real_gauge(k: u32) -> Option<CMat> {
    if k % 2 == 1 {
        return None;
    }
    let n = k as usize + 1;
    let w = symmetric_power([[ZERO, ONE], [-ONE, ZERO]], k);
    let w_inv = w.adjoint();
    let j = |v: &nalgebra::DVector<C64>| &w_inv * v.map(|z| z.conj());
    let mut basis: Vec<nalgebra::DVector<C64>> = Vec::new();
    for m in 0..n {
        let e = nalgebra::DVector::from_fn(n, |i, _| if i == m { ONE } else { ZERO });
        let je = j(&e);
        let i = C64::new(0.0, 1.0);
        for cand in [&e + &je, (&e - &je) * i] {
            let mut v = cand;
            for b in &basis {
                let proj = b.dotc(&v);
                v -= b * proj;
            }
            let nv = v.norm();
            if nv > 1e-8 && basis.len() < n {
                basis.push(v / C64::new(nv, 0.0));
            }
        }
    }
    assert_eq!(basis.len(), n);
    Some(CMat::from_columns(&basis))
}

fn section_sign(group: &FiniteGroupTable, h: u32, emb: &[u64; 4], next: u32) -> i32 {
    let n = group.n1();
    let s = group.h_prime.elements[group.section[h as usize] as usize];
    let moved = group.h_prime.index_of(&mat_mul(&s, emb, n)).expect("closed");
    let target = group.section[next as usize];
    if moved == target {
        1
    } else if group.negate_prime(moved) == target {
        -1
    } else {
        unreachable!("s(v)·ϖ̄′ and s(v·ϖ̄) lie over the same element of H")
    }
}

/// The signs `ε` of every oriented edge, `signs[j][e]`.
pub fn edge_signs(x: &ArithComplex, group: &FiniteGroupTable) -> Vec<Vec<i32>> {
    let emb: Vec<Vec<[u64; 4]>> = x
        .gens
        .gens
        .iter()
        .map(|l| l.iter().map(|q| crate::quat::embed(*q, &group.residue)).collect())
        .collect();
    (0..x.g())
        .map(|j| {
            let r = x.gens.r(j);
            (0..x.complex.oriented_count(1 << j))
                .map(|e| {
                    let (v, i) = (e / r, e % r);
                    let h = x.vertices[v].0;
                    let next = x.vertices[x.step[v][j][i] as usize].0;
                    section_sign(group, h, &emb[j][i], next)
                })
                .collect()
        })
        .collect()
}

/// The weight-`k` system on an arithmetic complex using the section of `x.group`.
pub fn build_symm_system(x: &ArithComplex, k: u32) -> Result<LocalSystem> {
    build_symm_system_with(x, &x.group, k, k % 2 == 0)
}

/// The weight-`k` system using the section of `group`, optionally conjugated
/// into a real form (even `k` only).
pub fn build_symm_system_with(x: &ArithComplex, group: &FiniteGroupTable, k: u32, real: bool) -> Result<LocalSystem> {
    if !central_condition_check(&x.config.primes, x.config.n1, k) {
        return Err(Error::CentralCondition { k, modulus: 2 * x.config.n1 });
    }
    let gauge = if real { real_gauge(k) } else { None };
    let signs = edge_signs(x, group);
    let mut transitions = Vec::with_capacity(x.g());
    for (j, js) in signs.iter().enumerate() {
        let reps: Vec<CMat> = x
            .gens
            .gens[j]
            .iter()
            .map(|q| {
                let m = symm_rep(q.conjugate(), k)?;
                Ok(match &gauge {
                    Some(u) => u.adjoint() * m * u,
                    None => m,
                })
            })
            .collect::<Result<_>>()?;
        let r = x.gens.r(j);
        let ts = js
            .iter()
            .enumerate()
            .map(|(e, &eps)| {
                let m = &reps[e % r];
                if eps == -1 && k % 2 == 1 {
                    -m
                } else {
                    m.clone()
                }
            })
            .collect();
        transitions.push(ts);
    }
    let dim = k as usize + 1;
    Ok(LocalSystem { dim, transitions, kind: SystemKind::Symmetric { k, real_gauge: gauge.is_some() } })
}

/// Outcome of the flatness check.
#[derive(Clone, Debug, Serialize)]
pub struct FlatnessReport {
    pub max_residual: f64,
    /// Oriented square `(direction mask, index)` attaining the maximum.
    pub witness: Option<(usize, u32)>,
    pub squares: usize,
}

/// Largest operator-norm gap `‖L_{top_j} L_{bot_j′} − L_{top_j′} L_{bot_j}‖` over squares.
pub fn verify_flatness(x: &CubicalComplex, l: &LocalSystem) -> FlatnessReport {
    let mut worst = 0.0;
    let mut witness = None;
    let mut squares = 0;
    for j in 0..x.g() {
        for jp in j + 1..x.g() {
            let dirs = 1 << j | 1 << jp;
            for s in 0..x.oriented_count(dirs) as u32 {
                squares += 1;
                // path along j then j′, against j′ then j
                let first_j = l.transition(j, x.bot(dirs, jp, s));
                let then_jp = l.transition(jp, x.top(dirs, j, s));
                let first_jp = l.transition(jp, x.bot(dirs, j, s));
                let then_j = l.transition(j, x.top(dirs, jp, s));
                let d = op_norm(&(then_jp * first_j - then_j * first_jp));
                if d > worst {
                    worst = d;
                    witness = Some((dirs, s));
                }
            }
        }
    }
    FlatnessReport { max_residual: worst, witness, squares }
}

/// `L1 ⊠ L2` on `X1 × X2`.
pub fn external_product(x1: &CubicalComplex, l1: &LocalSystem, x2: &CubicalComplex, l2: &LocalSystem) -> LocalSystem {
    let id1 = CMat::identity(l1.dim, l1.dim);
    let id2 = CMat::identity(l2.dim, l2.dim);
    let mut transitions = Vec::with_capacity(x1.g() + x2.g());
    let v2 = x2.vertex_count();
    for j in 0..x1.g() {
        let t = &l1.transitions[j];
        transitions.push((0..t.len() * v2).map(|e| t[e / v2].kronecker(&id2)).collect());
    }
    for j in 0..x2.g() {
        let t = &l2.transitions[j];
        let n = t.len();
        transitions.push((0..x1.vertex_count() * n).map(|e| id1.kronecker(&t[e % n])).collect());
    }
    LocalSystem { dim: l1.dim * l2.dim, transitions, kind: SystemKind::Product }
}
