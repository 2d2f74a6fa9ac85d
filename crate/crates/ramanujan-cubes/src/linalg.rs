//! Sparse complex matrices and dense Hermitian spectra.
//!
//! Operators are assembled as [`Csr`] matrices over `Complex64` and only
//! densified for eigen- and singular-value computations, which go through
//! `nalgebra`. Real matrices take the faster real symmetric path.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Compressed sparse rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Csr {
    pub rows: usize,
    pub cols: usize,
    pub indptr: Vec<usize>,
    pub indices: Vec<u32>,
    pub data: Vec<C64>,
}

/// Row-by-row builder; duplicate entries within a row are summed.
pub struct CsrBuilder {
    cols: usize,
    indptr: Vec<usize>,
    indices: Vec<u32>,
    data: Vec<C64>,
    row: Vec<(u32, C64)>,
}

impl CsrBuilder {
    pub fn new(cols: usize) -> Self {
        Self { cols, indptr: vec![0], indices: Vec::new(), data: Vec::new(), row: Vec::new() }
    }

    pub fn push(&mut self, col: usize, v: C64) {
        self.row.push((col as u32, v));
    }

    /// Add the block `m` with its top-left corner at column `col`.
    pub fn push_block_row(&mut self, col: usize, m: &CMat, r: usize) {
        for c in 0..m.ncols() {
            self.row.push(((col + c) as u32, m[(r, c)]));
        }
    }

    pub fn finish_row(&mut self) {
        self.row.sort_unstable_by_key(|e| e.0);
        let mut last: Option<u32> = None;
        for &(c, v) in &self.row {
            if last == Some(c) {
                *self.data.last_mut().expect("row has an entry") += v;
            } else {
                self.indices.push(c);
                self.data.push(v);
                last = Some(c);
            }
        }
        self.row.clear();
        self.indptr.push(self.indices.len());
    }

    pub fn build(self) -> Csr {
        let rows = self.indptr.len() - 1;
        Csr { rows, cols: self.cols, indptr: self.indptr, indices: self.indices, data: self.data }.pruned(0.0)
    }
}

impl Csr {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, indptr: vec![0; rows + 1], indices: Vec::new(), data: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![ONE; n])
    }

    pub fn diagonal(d: &[C64]) -> Self {
        Self {
            rows: d.len(),
            cols: d.len(),
            indptr: (0..=d.len()).collect(),
            indices: (0..d.len() as u32).collect(),
            data: d.to_vec(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.len()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, C64)> + '_ {
        (self.indptr[r]..self.indptr[r + 1]).map(move |k| (self.indices[k] as usize, self.data[k]))
    }

    /// Drop entries with modulus at most `tol`.
    pub fn pruned(self, tol: f64) -> Self {
        let mut b = CsrBuilder::new(self.cols);
        for r in 0..self.rows {
            for (c, v) in self.row(r) {
                if v.norm() > tol {
                    b.row.push((c as u32, v));
                }
            }
            b.row.sort_unstable_by_key(|e| e.0);
            for &(c, v) in &b.row {
                b.indices.push(c);
                b.data.push(v);
            }
            b.row.clear();
            b.indptr.push(b.indices.len());
        }
        Csr { rows: self.rows, cols: self.cols, indptr: b.indptr, indices: b.indices, data: b.data }
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = self.clone();
        m.data.iter_mut().for_each(|v| *v *= s);
        m
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut count = vec![0usize; self.cols + 1];
        for &c in &self.indices {
            count[c as usize + 1] += 1;
        }
        for i in 0..self.cols {
            count[i + 1] += count[i];
        }
        let indptr = count.clone();
        let mut next = count;
        let mut indices = vec![0u32; self.nnz()];
        let mut data = vec![ZERO; self.nnz()];
        for r in 0..self.rows {
            for (c, v) in self.row(r) {
                let k = next[c];
                indices[k] = r as u32;
                data[k] = v.conj();
                next[c] += 1;
            }
        }
        Csr { rows: self.cols, cols: self.rows, indptr, indices, data }
    }

    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|r| self.row(r).map(|(c, v)| v * x[c]).sum()).collect()
    }

    /// Sparse product `self · other`.
    pub fn mul(&self, other: &Csr) -> Csr {
        assert_eq!(self.cols, other.rows);
        let mut acc = vec![ZERO; other.cols];
        let mut mark = vec![false; other.cols];
        let mut touched = Vec::new();
        let mut b = CsrBuilder::new(other.cols);
        for r in 0..self.rows {
            for (k, v) in self.row(r) {
                for (c, w) in other.row(k) {
                    if !mark[c] {
                        mark[c] = true;
                        touched.push(c);
                    }
                    acc[c] += v * w;
                }
            }
            touched.sort_unstable();
            for &c in &touched {
                b.indices.push(c as u32);
                b.data.push(acc[c]);
                acc[c] = ZERO;
                mark[c] = false;
            }
            touched.clear();
            b.indptr.push(b.indices.len());
        }
        b.build()
    }

    /// `a·self + b·other`.
    pub fn add(&self, other: &Csr, a: C64, b: C64) -> Csr {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = CsrBuilder::new(self.cols);
        for r in 0..self.rows {
            for (c, v) in self.row(r) {
                out.push(c, a * v);
            }
            for (c, v) in other.row(r) {
                out.push(c, b * v);
            }
            out.finish_row();
        }
        out.build()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus of `self − other`.
    pub fn max_diff(&self, other: &Csr) -> f64 {
        self.add(other, ONE, -ONE).max_abs()
    }

    /// Largest entry modulus of `self − self†`.
    pub fn hermitian_deviation(&self) -> f64 {
        self.max_diff(&self.adjoint())
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.data.iter().all(|v| v.im.abs() <= tol)
    }

    pub fn to_dense(&self) -> CMat {
        let mut m = CMat::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for (c, v) in self.row(r) {
                m[(r, c)] += v;
            }
        }
        m
    }

    pub fn to_dense_real(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for (c, v) in self.row(r) {
                m[(r, c)] += v.re;
            }
        }
        m
    }

    /// Restriction to the given rows and columns, renumbered in order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Csr {
        let mut map = vec![u32::MAX; self.cols];
        for (i, &c) in cols.iter().enumerate() {
            map[c] = i as u32;
        }
        let mut b = CsrBuilder::new(cols.len());
        for &r in rows {
            for (c, v) in self.row(r) {
                if map[c] != u32::MAX {
                    b.push(map[c] as usize, v);
                }
            }
            b.finish_row();
        }
        b.build()
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[Csr]) -> Csr {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = CsrBuilder::new(cols);
        let mut off = 0;
        for blk in blocks {
            for r in 0..blk.rows {
                for (c, v) in blk.row(r) {
                    out.push(off + c, v);
                }
                out.finish_row();
            }
            off += blk.cols;
        }
        out.build()
    }

    /// Block matrix from `(row block, column block, matrix)` pieces.
    pub fn assemble(row_dims: &[usize], col_dims: &[usize], pieces: &[(usize, usize, Csr)]) -> Csr {
        let roff: Vec<usize> = std::iter::once(0).chain(row_dims.iter().scan(0, |s, d| {
            *s += d;
            Some(*s)
        })).collect();
        let coff: Vec<usize> = std::iter::once(0).chain(col_dims.iter().scan(0, |s, d| {
            *s += d;
            Some(*s)
        })).collect();
        let rows = roff[row_dims.len()];
        let cols = coff[col_dims.len()];
        let mut entries: Vec<Vec<(u32, C64)>> = vec![Vec::new(); rows];
        for (bi, bj, m) in pieces {
            assert_eq!((m.rows, m.cols), (row_dims[*bi], col_dims[*bj]));
            for r in 0..m.rows {
                for (c, v) in m.row(r) {
                    entries[roff[*bi] + r].push(((coff[*bj] + c) as u32, v));
                }
            }
        }
        let mut b = CsrBuilder::new(cols);
        for row in entries {
            for (c, v) in row {
                b.push(c as usize, v);
            }
            b.finish_row();
        }
        b.build()
    }
}

pub fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn check_hermitian(m: &CMat, tol: f64) -> Result<()> {
    let mut dev: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..=i {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    if dev > tol {
        return Err(Error::NotHermitian(dev));
    }
    Ok(())
}

fn is_real_dense(m: &CMat) -> bool {
    m.iter().all(|v| v.im == 0.0)
}

/// All eigenvalues of a Hermitian matrix, in descending order.
pub fn hermitian_eigenvalues(m: &CMat) -> Result<Vec<f64>> {
    check_hermitian(m, 1e-10)?;
    let mut eigs: Vec<f64> = if is_real_dense(m) {
        m.map(|v| v.re).symmetric_eigenvalues().iter().copied().collect()
    } else {
        m.clone().symmetric_eigenvalues().iter().copied().collect()
    };
    eigs.sort_by(|a, b| b.total_cmp(a));
    Ok(eigs)
}

/// Eigenvalues (descending) with orthonormal eigenvectors as columns.
pub fn hermitian_eigen(m: &CMat) -> Result<(Vec<f64>, CMat)> {
    check_hermitian(m, 1e-10)?;
    let (vals, vecs) = if is_real_dense(m) {
        let e = m.map(|v| v.re).symmetric_eigen();
        (e.eigenvalues.iter().copied().collect::<Vec<_>>(), e.eigenvectors.map(|v| C64::new(v, 0.0)))
    } else {
        let e = m.clone().symmetric_eigen();
        (e.eigenvalues.iter().copied().collect(), e.eigenvectors)
    };
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&a, &b| vals[b].total_cmp(&vals[a]));
    let sorted = order.iter().map(|&i| vals[i]).collect();
    let mut out = CMat::zeros(m.nrows(), m.ncols());
    for (k, &i) in order.iter().enumerate() {
        out.set_column(k, &vecs.column(i));
    }
    Ok((sorted, out))
}

/// Singular values in descending order.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = if is_real_dense(m) {
        m.map(|v| v.re).singular_values().iter().copied().collect()
    } else {
        m.singular_values().iter().copied().collect()
    };
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Number of singular values above `rel_tol` times the largest.
pub fn numerical_rank(m: &CMat, rel_tol: f64) -> usize {
    let s = singular_values(m);
    let top = s.first().copied().unwrap_or(0.0);
    s.iter().filter(|&&x| x > rel_tol * top && x > 0.0).count()
}

/// Rank from the eigenvalues of the smaller Gram matrix `A†A` or `AA†`,
/// counting those above `rel_tol` times the largest.
pub fn numerical_rank_gram(a: &Csr, rel_tol: f64) -> Result<usize> {
    let adj = a.adjoint();
    let gram = if a.cols <= a.rows { adj.mul(a) } else { a.mul(&adj) };
    let e = hermitian_eigenvalues(&gram.to_dense())?;
    let top = e.first().copied().unwrap_or(0.0);
    Ok(e.iter().filter(|&&x| x > rel_tol * top && x > 0.0).count())
}

/// Spectrum (descending) of `[[0, B], [B†, 0]]` from the singular values of `B`.
pub fn bipartite_spectrum(b: &CMat) -> Vec<f64> {
    let s = singular_values(b);
    let zeros = b.nrows().abs_diff(b.ncols());
    let mut eigs: Vec<f64> = s.iter().copied().chain(s.iter().map(|x| -x)).chain(std::iter::repeat_n(0.0, zeros)).collect();
    eigs.sort_by(|a, b| b.total_cmp(a));
    eigs
}

/// Conjugate-gradient solve of `A x = b` for Hermitian positive semidefinite `A`
/// and `b` in the range of `A`.
pub fn conjugate_gradient(apply: impl Fn(&[C64]) -> Vec<C64>, b: &[C64], tol: f64, max_iter: usize) -> (Vec<C64>, f64) {
    let n = b.len();
    let mut x = vec![ZERO; n];
    let mut r = b.to_vec();
    let mut p = r.clone();
    let bnorm = norm(b).max(f64::MIN_POSITIVE);
    let mut rr = dot(&r, &r).re;
    for _ in 0..max_iter {
        if rr.sqrt() <= tol * bnorm {
            break;
        }
        let ap = apply(&p);
        let pap = dot(&p, &ap).re;
        if pap <= 0.0 {
            break;
        }
        let alpha = rr / pap;
        for i in 0..n {
            x[i] += p[i] * alpha;
            r[i] -= ap[i] * alpha;
        }
        let rr_new = dot(&r, &r).re;
        let beta = rr_new / rr;
        for i in 0..n {
            p[i] = r[i] + p[i] * beta;
        }
        rr = rr_new;
    }
    (x, rr.sqrt() / bnorm)
}

/// Operator 2-norm of a small dense matrix.
pub fn op_norm(m: &CMat) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Largest entry modulus of `m m† − I`.
pub fn unitarity_defect(m: &CMat) -> f64 {
    let p = m * m.adjoint();
    let n = m.nrows();
    (&p - CMat::identity(n, n)).iter().map(|v| v.norm()).fold(0.0, f64::max)
}
