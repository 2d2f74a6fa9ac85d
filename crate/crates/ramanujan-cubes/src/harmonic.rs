//! Cochains, boundary operators, Laplacians, star operators and their spectra.
//!
//! A cochain of type `I` is a completely alternating fiber-valued function on
//! oriented `I`-cubes, `s(inv_j σ) = −L_{σ,j} s(σ)`. It is stored on the
//! canonical orientations only; every other orientation is reached through
//! a frame `M_σ` with `s(σ) = M_σ s(canon σ)`. Since the frames are unitary
//! the canonical coordinates are orthonormal for the pre-Hilbert norm
//! `2^{−|I|} Σ_σ ‖s(σ)‖²`, so adjoints are conjugate transposes.
//!
//! With `L_{σ,j}` the transition along the direction-`j` edge at the origin
//! of `σ`:
//!
//! ```text
//! (∂_j s)(τ)  = L_{τ,j}^{-1} s(top_j τ) − s(bot_j τ)
//! (∂*_j t)(σ) = Σ_{top_j τ = σ} L_{τ,j} t(τ)
//! (S_{j,I} s)(σ) = Σ_{top_j τ = σ} L_{τ,j} s(bot_j τ)
//! □_{j,I} = ∂*_j ∂_j = r_j − S_{j,I}        (j ∉ I)
//! ```
//!
//! # Examples
//!
//! ```
//! use ramanujan_cubes::complex::CubicalComplex;
//! use ramanujan_cubes::harmonic::Harmonic;
//! use ramanujan_cubes::locsys::LocalSystem;
//!
//! let x = CubicalComplex::unit_cube(2);
//! let l = LocalSystem::trivial(&x, 1);
//! let h = Harmonic::new(&x, &l);
//! let d0 = h.total_d(0);
//! let d1 = h.total_d(1);
//! assert_eq!(d1.mul(&d0).max_abs(), 0.0);
//! assert_eq!(h.cohomology_dims(1e-8).unwrap(), vec![1, 0, 0]);
//! ```

use serde::Serialize;

use crate::complex::{CubicalComplex, Orientation};
use crate::error::{Error, Result};
use crate::linalg::{
    bipartite_spectrum, conjugate_gradient, dot, hermitian_eigen, hermitian_eigenvalues, norm, numerical_rank, numerical_rank_gram, CMat,
    Csr, CsrBuilder, C64, ONE, ZERO,
};
use crate::locsys::LocalSystem;

/// Canonical basis of `C^I(X, L)`.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    pub dirs: usize,
    pub fiber: usize,
    pub orientation: Orientation,
    /// `s(σ) = frame[σ] · s(canon σ)` for every oriented `σ`.
    pub frame: Vec<CMat>,
    /// Largest disagreement met while propagating frames around orbits.
    pub alternation_defect: f64,
}

impl CochainSpace {
    fn new(x: &CubicalComplex, l: &LocalSystem, dirs: usize) -> Self {
        let orientation = x.orientation(dirs);
        let n = x.oriented_count(dirs);
        let mut frame: Vec<Option<CMat>> = vec![None; n];
        let mut defect: f64 = 0.0;
        let id = CMat::identity(l.dim, l.dim);
        let js: Vec<usize> = (0..x.g()).filter(|j| dirs >> j & 1 == 1).collect();
        let mut stack = Vec::new();
        for &c in &orientation.canon {
            frame[c as usize] = Some(id.clone());
            stack.push(c);
            while let Some(s) = stack.pop() {
                let fs = frame[s as usize].clone().expect("visited");
                for &j in &js {
                    let t = x.inv(dirs, j, s);
                    let m = -(l.transition(j, x.edge_at(dirs, j, s)) * &fs);
                    match &frame[t as usize] {
                        Some(old) => {
                            defect = defect.max((old - &m).iter().map(|v| v.norm()).fold(0.0, f64::max));
                        }
                        None => {
                            frame[t as usize] = Some(m);
                            stack.push(t);
                        }
                    }
                }
            }
        }
        let frame = frame.into_iter().map(|f| f.expect("every cube lies in an orbit")).collect();
        Self { dirs, fiber: l.dim, orientation, frame, alternation_defect: defect }
    }

    pub fn cubes(&self) -> usize {
        self.orientation.canon.len()
    }

    pub fn len(&self) -> usize {
        self.cubes() * self.fiber
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Operators of a complex with coefficients in a local system.
pub struct Harmonic<'a> {
    pub x: &'a CubicalComplex,
    pub l: &'a LocalSystem,
    pub spaces: Vec<CochainSpace>,
}

fn sign_place(dirs: usize, j: usize) -> f64 {
    if (dirs & ((1 << j) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Smaller side above which ranks are taken from Gram eigenvalues.
pub const GRAM_RANK_THRESHOLD: usize = 1500;

/// Method used for Hodge projections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HodgeMethod {
    /// Dense eigendecompositions of `d d*` and `d* d`.
    Spectral,
    /// Conjugate gradients on the sparse normal equations.
    Iterative,
}

/// `c = harmonic + exact + coexact` with `exact ∈ im d` and `coexact ∈ im d*`.
#[derive(Clone, Debug)]
pub struct HodgeParts {
    pub harmonic: Vec<C64>,
    pub exact: Vec<C64>,
    pub coexact: Vec<C64>,
}

impl HodgeParts {
    /// Largest pairwise inner product modulus, relative to `‖c‖²`.
    pub fn orthogonality(&self) -> f64 {
        let scale = (norm(&self.harmonic).powi(2) + norm(&self.exact).powi(2) + norm(&self.coexact).powi(2)).max(1e-300);
        [
            dot(&self.harmonic, &self.exact),
            dot(&self.harmonic, &self.coexact),
            dot(&self.exact, &self.coexact),
        ]
        .iter()
        .map(|z| z.norm() / scale)
        .fold(0.0, f64::max)
    }

    /// `‖harmonic + exact + coexact − c‖ / ‖c‖`.
    pub fn reconstruction(&self, c: &[C64]) -> f64 {
        let diff: Vec<C64> = (0..c.len()).map(|i| self.harmonic[i] + self.exact[i] + self.coexact[i] - c[i]).collect();
        norm(&diff) / norm(c).max(1e-300)
    }
}

/// Outcome of comparing the nonzero spectra of `□_j` on `C^I` and `C^{I∪{j}}`.
#[derive(Clone, Debug, Serialize)]
pub struct TransferReport {
    pub j: usize,
    pub dirs: usize,
    pub mode: &'static str,
    pub nonzero_lower: usize,
    pub nonzero_upper: usize,
    /// Largest eigenvalue mismatch (full mode) or transfer residual (transfer mode).
    pub max_error: f64,
    pub passed: bool,
}

impl<'a> Harmonic<'a> {
    pub fn new(x: &'a CubicalComplex, l: &'a LocalSystem) -> Self {
        let spaces = (0..1usize << x.g()).map(|d| CochainSpace::new(x, l, d)).collect();
        Self { x, l, spaces }
    }

    pub fn space(&self, dirs: usize) -> &CochainSpace {
        &self.spaces[dirs]
    }

    /// Direction sets of size `i`, ascending.
    pub fn level(&self, i: usize) -> Vec<usize> {
        (0..1usize << self.x.g()).filter(|d| d.count_ones() as usize == i).collect()
    }

    pub fn level_dim(&self, i: usize) -> usize {
        self.level(i).iter().map(|&d| self.spaces[d].len()).sum()
    }

    fn check(&self, j: usize, dirs: usize) -> Result<usize> {
        if j >= self.x.g() || dirs >> j & 1 == 1 {
            return Err(Error::BadDirection { j, i: dirs });
        }
        Ok(dirs | 1 << j)
    }

    fn l_cube(&self, dirs: usize, j: usize, s: u32) -> &CMat {
        self.l.transition(j, self.x.edge_at(dirs, j, s))
    }

    fn l_cube_inv(&self, dirs: usize, j: usize, s: u32) -> &CMat {
        let e = self.x.edge_at(dirs, j, s);
        self.l.transition(j, self.x.inv(1 << j, j, e))
    }

    /// `∂_{j,I} : C^I → C^{I∪{j}}`.
    pub fn boundary(&self, j: usize, dirs: usize) -> Result<Csr> {
        let up = self.check(j, dirs)?;
        let (lo, hi) = (&self.spaces[dirs], &self.spaces[up]);
        let d = self.l.dim;
        let mut b = CsrBuilder::new(lo.len());
        for &tau in &hi.orientation.canon {
            let top = self.x.top(up, j, tau);
            let bot = self.x.bot(up, j, tau);
            let a = self.l_cube_inv(up, j, tau) * &lo.frame[top as usize];
            let m = -&lo.frame[bot as usize];
            let (ct, cb) = (lo.orientation.orbit[top as usize] as usize, lo.orientation.orbit[bot as usize] as usize);
            for r in 0..d {
                b.push_block_row(ct * d, &a, r);
                b.push_block_row(cb * d, &m, r);
                b.finish_row();
            }
        }
        Ok(b.build())
    }

    /// Sum over `τ` with `top_j τ` canonical of `block(τ)` placed at
    /// `(canon(top_j τ), column(τ))`.
    fn gather(&self, j: usize, dirs: usize, cols: usize, block: impl Fn(u32) -> (usize, CMat)) -> Result<Csr> {
        let up = self.check(j, dirs)?;
        let lo = &self.spaces[dirs];
        let d = self.l.dim;
        let mut rows: Vec<Vec<(usize, CMat)>> = vec![Vec::new(); lo.cubes()];
        for tau in 0..self.x.oriented_count(up) as u32 {
            let top = self.x.top(up, j, tau);
            let pos = lo.orientation.orbit[top as usize];
            if lo.orientation.canon[pos as usize] != top {
                continue;
            }
            rows[pos as usize].push(block(tau));
        }
        let mut b = CsrBuilder::new(cols);
        for row in rows {
            for r in 0..d {
                for (c, m) in &row {
                    b.push_block_row(c * d, m, r);
                }
                b.finish_row();
            }
        }
        Ok(b.build())
    }

    /// `∂*_{j,I} : C^{I∪{j}} → C^I`, assembled from its own formula.
    pub fn coboundary(&self, j: usize, dirs: usize) -> Result<Csr> {
        let up = self.check(j, dirs)?;
        let hi = &self.spaces[up];
        self.gather(j, dirs, hi.len(), |tau| {
            let m = self.l_cube(up, j, tau) * &hi.frame[tau as usize];
            (hi.orientation.orbit[tau as usize] as usize, m)
        })
    }

    /// Star operator `S_{j,I}` on `C^I`.
    pub fn star(&self, j: usize, dirs: usize) -> Result<Csr> {
        let up = self.check(j, dirs)?;
        let lo = &self.spaces[dirs];
        self.gather(j, dirs, lo.len(), |tau| {
            let bot = self.x.bot(up, j, tau);
            let m = self.l_cube(up, j, tau) * &lo.frame[bot as usize];
            (lo.orientation.orbit[bot as usize] as usize, m)
        })
    }

    /// Partial Laplacian `□_j` on `C^I`.
    pub fn laplacian(&self, j: usize, dirs: usize) -> Result<Csr> {
        if dirs >> j & 1 == 0 {
            Ok(self.coboundary(j, dirs)?.mul(&self.boundary(j, dirs)?))
        } else {
            let lower = dirs & !(1 << j);
            Ok(self.boundary(j, lower)?.mul(&self.coboundary(j, lower)?))
        }
    }

    /// `d_i : C^i → C^{i+1}` with signs `(−1)^{α_I(j)}`.
    pub fn total_d(&self, i: usize) -> Csr {
        self.total(i, false)
    }

    /// `d*_i : C^{i+1} → C^i`, assembled from the coboundary formula.
    pub fn total_dstar(&self, i: usize) -> Csr {
        self.total(i, true)
    }

    fn total(&self, i: usize, star: bool) -> Csr {
        let lower = self.level(i);
        let upper = self.level(i + 1);
        let ld: Vec<usize> = lower.iter().map(|&d| self.spaces[d].len()).collect();
        let ud: Vec<usize> = upper.iter().map(|&d| self.spaces[d].len()).collect();
        let mut pieces = Vec::new();
        for (ci, &dirs) in lower.iter().enumerate() {
            for j in (0..self.x.g()).filter(|j| dirs >> j & 1 == 0) {
                let ri = upper.iter().position(|&u| u == dirs | 1 << j).expect("upper level");
                let s = C64::new(sign_place(dirs, j), 0.0);
                if star {
                    pieces.push((ci, ri, self.coboundary(j, dirs).expect("admissible").scale(s)));
                } else {
                    pieces.push((ri, ci, self.boundary(j, dirs).expect("admissible").scale(s)));
                }
            }
        }
        if star {
            Csr::assemble(&ld, &ud, &pieces)
        } else {
            Csr::assemble(&ud, &ld, &pieces)
        }
    }

    /// `□_tot = d* d + d d*` on `C^i`.
    pub fn total_laplacian(&self, i: usize) -> Csr {
        let n = self.level_dim(i);
        let mut out = Csr::zeros(n, n);
        if i < self.x.g() {
            out = out.add(&self.total_dstar(i).mul(&self.total_d(i)), ONE, ONE);
        }
        if i > 0 {
            out = out.add(&self.total_d(i - 1).mul(&self.total_dstar(i - 1)), ONE, ONE);
        }
        out
    }

    /// `Σ_j □_j`, block diagonal over the direction sets of size `i`.
    pub fn sum_of_partial_laplacians(&self, i: usize) -> Csr {
        let blocks: Vec<Csr> = self
            .level(i)
            .iter()
            .map(|&dirs| {
                let n = self.spaces[dirs].len();
                (0..self.x.g()).fold(Csr::zeros(n, n), |acc, j| acc.add(&self.laplacian(j, dirs).expect("valid"), ONE, ONE))
            })
            .collect();
        Csr::block_diag(&blocks)
    }

    /// Split of `C^I` by the parity `p_j` of the origin, when `S_{j,I}`
    /// only connects opposite parities.
    pub fn bipartition(&self, j: usize, dirs: usize, s: &Csr) -> Option<(Vec<usize>, Vec<usize>)> {
        let p = self.x.parities()?;
        let sp = &self.spaces[dirs];
        let d = sp.fiber;
        let side: Vec<bool> = sp
            .orientation
            .canon
            .iter()
            .flat_map(|&c| std::iter::repeat_n(p[self.x.origin(dirs, c) as usize] >> j & 1 == 1, d))
            .collect();
        for r in 0..s.rows {
            if s.row(r).any(|(c, _)| side[c] == side[r]) {
                return None;
            }
        }
        let even = (0..side.len()).filter(|&i| !side[i]).collect();
        let odd = (0..side.len()).filter(|&i| side[i]).collect();
        Some((even, odd))
    }

    /// Eigenvalues of `S_{j,I}`, descending.
    pub fn star_spectrum(&self, j: usize, dirs: usize, max_dim: usize) -> Result<Vec<f64>> {
        let s = self.star(j, dirs)?;
        if s.rows > max_dim {
            return Err(Error::DimensionCap { dim: s.rows, cap: max_dim });
        }
        let dev = s.hermitian_deviation();
        if dev > 1e-10 {
            return Err(Error::NotHermitian(dev));
        }
        match self.bipartition(j, dirs, &s) {
            Some((even, odd)) => Ok(bipartite_spectrum(&s.submatrix(&even, &odd).to_dense())),
            None => hermitian_eigenvalues(&s.to_dense()),
        }
    }

    /// Eigenpairs of `□_j = r_j − S_{j,I}` on `C^I`, eigenvalues ascending.
    fn star_laplacian_eigen(&self, j: usize, dirs: usize) -> Result<(Vec<f64>, CMat)> {
        let s = self.star(j, dirs)?;
        let r = self.x.r()[j] as f64;
        let n = s.rows;
        if let Some((even, odd)) = self.bipartition(j, dirs, &s) {
            if even.len() == odd.len() {
                let b = s.submatrix(&even, &odd).to_dense();
                let (sq, v) = hermitian_eigen(&(b.adjoint() * &b))?;
                let mut vals = Vec::with_capacity(n);
                let mut vecs = CMat::zeros(n, n);
                let h = std::f64::consts::FRAC_1_SQRT_2;
                let mut col = 0;
                let mut kernel = Vec::new();
                for (k, &l2) in sq.iter().enumerate() {
                    let sigma = l2.max(0.0).sqrt();
                    if sigma <= 1e-9 * sq[0].max(1.0).sqrt() {
                        kernel.push(k);
                        continue;
                    }
                    let vk = v.column(k).into_owned();
                    let uk = (&b * &vk) / C64::new(sigma, 0.0);
                    for sign in [1.0, -1.0] {
                        for (i, &e) in even.iter().enumerate() {
                            vecs[(e, col)] = uk[i] * h;
                        }
                        for (i, &o) in odd.iter().enumerate() {
                            vecs[(o, col)] = vk[i] * sign * h;
                        }
                        vals.push(r - sign * sigma);
                        col += 1;
                    }
                }
                if kernel.is_empty() {
                    let mut order: Vec<usize> = (0..n).collect();
                    order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
                    let mut out = CMat::zeros(n, n);
                    for (k, &i) in order.iter().enumerate() {
                        out.set_column(k, &vecs.column(i));
                    }
                    return Ok((order.iter().map(|&i| vals[i]).collect(), out));
                }
            }
        }
        let lap = Csr::identity(n).scale(C64::new(r, 0.0)).add(&s, ONE, -ONE);
        let (mut vals, vecs) = hermitian_eigen(&lap.to_dense())?;
        vals.reverse();
        let mut out = vecs.clone();
        for k in 0..n {
            out.set_column(k, &vecs.column(n - 1 - k));
        }
        Ok((vals, out))
    }

    /// Compare nonzero spectra of `□_j` on `C^I` and on `C^{I∪{j}}`.
    ///
    /// Full mode diagonalizes both sides. Transfer mode, used when the upper
    /// side exceeds `full_limit`, diagonalizes the lower side only, maps each
    /// eigenvector through `∂_j`, and checks the eigen-residual upstairs,
    /// the norms `‖∂v‖² = λ`, and that the transferred eigenvalues exhaust
    /// the trace of `∂∂*`.
    pub fn eigenspace_transfer_check(&self, j: usize, dirs: usize, tol: f64, full_limit: usize) -> Result<TransferReport> {
        let up = self.check(j, dirs)?;
        let del = self.boundary(j, dirs)?;
        let dstar = self.coboundary(j, dirs)?;
        let upper = del.mul(&dstar);
        let zero_tol = 1e-8;
        if self.spaces[up].len().max(self.spaces[dirs].len()) <= full_limit {
            let lower = dstar.mul(&del);
            let nz = |m: &Csr| -> Result<Vec<f64>> {
                let mut v: Vec<f64> = hermitian_eigenvalues(&m.to_dense())?.into_iter().filter(|&x| x > zero_tol).collect();
                v.sort_by(f64::total_cmp);
                Ok(v)
            };
            let (a, b) = (nz(&lower)?, nz(&upper)?);
            let max_error = if a.len() == b.len() {
                a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
            } else {
                f64::INFINITY
            };
            return Ok(TransferReport {
                j,
                dirs,
                mode: "full",
                nonzero_lower: a.len(),
                nonzero_upper: b.len(),
                max_error,
                passed: max_error <= tol,
            });
        }
        let (vals, vecs) = self.star_laplacian_eigen(j, dirs)?;
        let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let mut worst: f64 = 0.0;
        let mut count = 0;
        let mut sum = 0.0;
        for (k, &lam) in vals.iter().enumerate() {
            if lam <= zero_tol {
                continue;
            }
            count += 1;
            sum += lam;
            let v: Vec<C64> = vecs.column(k).iter().copied().collect();
            let w = del.matvec(&v);
            worst = worst.max((norm(&w).powi(2) - lam).abs() / scale);
            let uw = upper.matvec(&w);
            let res: Vec<C64> = uw.iter().zip(&w).map(|(a, b)| a - b * lam).collect();
            worst = worst.max(norm(&res) / scale);
        }
        let trace = del.frobenius().powi(2);
        worst = worst.max((trace - sum).abs() / trace.max(1.0));
        Ok(TransferReport {
            j,
            dirs,
            mode: "transfer",
            nonzero_lower: count,
            nonzero_upper: count,
            max_error: worst,
            passed: worst <= tol,
        })
    }

    /// Numerical rank of `d_i`: singular values above `rel_tol` times the
    /// largest, or for large matrices Gram eigenvalues above `rel_tol` times
    /// the largest (see [`GRAM_RANK_THRESHOLD`]).
    pub fn rank_d(&self, i: usize, rel_tol: f64) -> Result<usize> {
        if i >= self.x.g() {
            return Ok(0);
        }
        let d = self.total_d(i);
        if d.rows.min(d.cols) > GRAM_RANK_THRESHOLD {
            numerical_rank_gram(&d, rel_tol)
        } else {
            Ok(numerical_rank(&d.to_dense(), rel_tol))
        }
    }

    /// `h^i = dim C^i − rank d_i − rank d_{i−1}` for `i = 0..=g`.
    pub fn cohomology_dims(&self, rel_tol: f64) -> Result<Vec<usize>> {
        let g = self.x.g();
        let ranks: Vec<usize> = (0..g).map(|i| self.rank_d(i, rel_tol)).collect::<Result<_>>()?;
        Ok((0..=g)
            .map(|i| {
                let out = if i < g { ranks[i] } else { 0 };
                let inc = if i > 0 { ranks[i - 1] } else { 0 };
                self.level_dim(i) - out - inc
            })
            .collect())
    }

    /// `Σ_i (−1)^i dim C^i`.
    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.x.g()).map(|i| if i % 2 == 0 { 1 } else { -1 } * self.level_dim(i) as i64).sum()
    }

    /// Hodge decomposition of `c ∈ C^i`.
    pub fn hodge_project(&self, i: usize, c: &[C64], method: HodgeMethod) -> Result<HodgeParts> {
        let n = self.level_dim(i);
        assert_eq!(c.len(), n);
        let zero = vec![ZERO; n];
        let g = self.x.g();
        let exact = if i == 0 {
            zero.clone()
        } else {
            let d = self.total_d(i - 1);
            let ds = self.total_dstar(i - 1);
            match method {
                HodgeMethod::Spectral => project_onto_range(&d.mul(&ds), c)?,
                HodgeMethod::Iterative => {
                    let rhs = ds.matvec(c);
                    let (b, _) = conjugate_gradient(|v| ds.matvec(&d.matvec(v)), &rhs, 1e-14, 20 * rhs.len() + 100);
                    d.matvec(&b)
                }
            }
        };
        let coexact = if i == g {
            zero
        } else {
            let d = self.total_d(i);
            let ds = self.total_dstar(i);
            match method {
                HodgeMethod::Spectral => project_onto_range(&ds.mul(&d), c)?,
                HodgeMethod::Iterative => {
                    let rhs = d.matvec(c);
                    let (y, _) = conjugate_gradient(|v| d.matvec(&ds.matvec(v)), &rhs, 1e-14, 20 * rhs.len() + 100);
                    ds.matvec(&y)
                }
            }
        };
        let harmonic = (0..n).map(|k| c[k] - exact[k] - coexact[k]).collect();
        Ok(HodgeParts { harmonic, exact, coexact })
    }
}

fn project_onto_range(m: &Csr, c: &[C64]) -> Result<Vec<C64>> {
    let (vals, vecs) = hermitian_eigen(&m.to_dense())?;
    let top = vals.first().copied().unwrap_or(0.0).max(0.0);
    let mut out = vec![ZERO; c.len()];
    for (k, &lam) in vals.iter().enumerate() {
        if lam <= 1e-8 * top.max(1.0) {
            continue;
        }
        let v = vecs.column(k);
        let coef: C64 = v.iter().zip(c).map(|(a, b)| a.conj() * b).sum();
        for (o, a) in out.iter_mut().zip(v.iter()) {
            *o += a * coef;
        }
    }
    Ok(out)
}

/// Class of one star eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EigenClass {
    #[serde(rename = "trivial+")]
    TrivialPlus,
    #[serde(rename = "trivial-")]
    TrivialMinus,
    #[serde(rename = "nontrivial")]
    Nontrivial,
}

impl EigenClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            EigenClass::TrivialPlus => "trivial+",
            EigenClass::TrivialMinus => "trivial-",
            EigenClass::Nontrivial => "nontrivial",
        }
    }
}

/// Ramanujan verdict for one star operator.
#[derive(Clone, Debug, Serialize)]
pub struct RamanujanVerdict {
    pub r: usize,
    pub plus_multiplicity: usize,
    pub minus_multiplicity: usize,
    /// Largest `|λ|` over nontrivial eigenvalues (0 when there are none).
    pub mu: f64,
    pub bound: f64,
    pub ramanujan: bool,
    pub spectral_gap: f64,
    #[serde(skip)]
    pub classes: Vec<EigenClass>,
}

/// Classify eigenvalues within `tol · r` of `±r` as trivial and compare the
/// rest against `2√(r−1) + tol`.
pub fn classify_ramanujan(eigs: &[f64], r: usize, tol: f64) -> RamanujanVerdict {
    let rf = r as f64;
    let classes: Vec<EigenClass> = eigs
        .iter()
        .map(|&l| {
            if (l - rf).abs() <= tol * rf {
                EigenClass::TrivialPlus
            } else if (l + rf).abs() <= tol * rf {
                EigenClass::TrivialMinus
            } else {
                EigenClass::Nontrivial
            }
        })
        .collect();
    let mu = eigs
        .iter()
        .zip(&classes)
        .filter(|(_, c)| **c == EigenClass::Nontrivial)
        .map(|(l, _)| l.abs())
        .fold(0.0, f64::max);
    let bound = 2.0 * (rf - 1.0).max(0.0).sqrt();
    RamanujanVerdict {
        r,
        plus_multiplicity: classes.iter().filter(|c| **c == EigenClass::TrivialPlus).count(),
        minus_multiplicity: classes.iter().filter(|c| **c == EigenClass::TrivialMinus).count(),
        mu,
        bound,
        ramanujan: mu <= bound + tol,
        spectral_gap: rf - mu,
        classes,
    }
}

/// Eigenvalues of `S_{j,I}` for a complex and local system.
pub fn star_spectrum(x: &CubicalComplex, l: &LocalSystem, j: usize, dirs: usize) -> Result<Vec<f64>> {
    Harmonic::new(x, l).star_spectrum(j, dirs, usize::MAX)
}
