//! Dense complex linear algebra.
//!
//! Everything above this module goes through [`ComplexMatrix`]: a row-major
//! matrix of `Complex64`. SVD and Hermitian eigendecomposition are delegated to
//! `nalgebra`; results are post-processed into a canonical, deterministic form
//! (ascending order, fixed phases) so that downstream reports are bit-stable.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::RngExt;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shorthand for the complex zero.
pub const C0: Complex64 = Complex64::new(0.0, 0.0);
/// Shorthand for the complex one.
pub const C1: Complex64 = Complex64::new(1.0, 0.0);

/// Numerical thresholds shared by every computation.
///
/// `rank_eps` is relative: a singular value counts as zero when it is below
/// `rank_eps * sigma_max`. `check_eps` is an absolute bound on residuals of
/// normalized identities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rank_eps: f64,
    pub check_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rank_eps: 1e-9, check_eps: 1e-8 }
    }
}

impl Tolerance {
    pub fn new(rank_eps: f64, check_eps: f64) -> Result<Self> {
        if !(rank_eps > 0.0 && rank_eps.is_finite() && check_eps > 0.0 && check_eps.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "tolerances must be positive and finite (rank_eps={rank_eps}, check_eps={check_eps})"
            )));
        }
        Ok(Tolerance { rank_eps, check_eps })
    }
}

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, " ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![C0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C1;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn from_real(rows: usize, cols: usize, vals: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, vals.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Column vector.
    pub fn column(v: Vec<Complex64>) -> Self {
        let n = v.len();
        ComplexMatrix { rows: n, cols: 1, data: v }
    }

    /// Matrix unit `e_{ij}`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m[(i, j)] = C1;
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col_vec(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Reinterpret the row-major data with a new shape.
    pub fn reshape(&self, rows: usize, cols: usize) -> Result<Self> {
        Self::from_vec(rows, cols, self.data.clone())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        ComplexMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: Complex64, other: &ComplexMatrix) {
        assert_eq!(self.shape(), other.shape(), "axpy shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn checked_mul(&self, other: &ComplexMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        let n = other.cols;
        for i in 0..self.rows {
            let orow = &mut out.data[i * n..(i + 1) * n];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == C0 {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Hilbert-Schmidt inner product `Tr(self^* other)`, antilinear in `self`.
    pub fn inner(&self, other: &ComplexMatrix) -> Complex64 {
        assert_eq!(self.shape(), other.shape(), "inner product shape mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise distance; `f64::INFINITY` on shape mismatch.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        if self.shape() != other.shape() {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, eps: f64) -> bool {
        self.is_square() && self.max_abs_diff(&self.adjoint()) <= eps * self.max_abs().max(1.0)
    }

    /// Copy out the block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &ComplexMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)];
            }
        }
    }

    /// Columns `c0..c0+n`.
    pub fn columns(&self, c0: usize, n: usize) -> Self {
        self.block(0, c0, self.rows, n)
    }

    /// Place matrices side by side.
    pub fn hstack(parts: &[ComplexMatrix]) -> Result<Self> {
        let rows = parts.first().map_or(0, |p| p.rows);
        if parts.iter().any(|p| p.rows != rows) {
            return Err(Error::DimensionMismatch("hstack of matrices with different row counts".into()));
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c = 0;
        for p in parts {
            out.set_block(0, c, p);
            c += p.cols;
        }
        Ok(out)
    }

    /// Block-diagonal matrix.
    pub fn block_diag(parts: &[ComplexMatrix]) -> Self {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            out.set_block(r, c, p);
            r += p.rows;
            c += p.cols;
        }
        out
    }

    pub(crate) fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub(crate) fn from_nalgebra(m: &DMatrix<Complex64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    /// Panics on incompatible shapes; use [`ComplexMatrix::checked_mul`] for a `Result`.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Mul<Complex64> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Complex64) -> ComplexMatrix {
        self.scale(rhs)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl SubAssign<&ComplexMatrix> for ComplexMatrix {
    fn sub_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_re(-1.0)
    }
}

/// Kronecker product with row-major index order `(i k), (j l)`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac, br, bc) = (a.rows, a.cols, b.rows, b.cols);
    let mut out = ComplexMatrix::zeros(ar * br, ac * bc);
    let oc = ac * bc;
    for i in 0..ar {
        for j in 0..ac {
            let x = a.data[i * ac + j];
            if x == C0 {
                continue;
            }
            for k in 0..br {
                let dst = &mut out.data[(i * br + k) * oc + j * bc..(i * br + k) * oc + (j + 1) * bc];
                for (d, y) in dst.iter_mut().zip(&b.data[k * bc..(k + 1) * bc]) {
                    *d = x * y;
                }
            }
        }
    }
    out
}

/// Kronecker product of a list, left to right; the empty product is `1x1` identity.
pub fn kron_all(parts: &[&ComplexMatrix]) -> ComplexMatrix {
    parts.iter().fold(ComplexMatrix::identity(1), |acc, p| kron(&acc, p))
}

/// A basis of a space of linear maps between two fixed dimensions.
///
/// Basis elements are orthonormal for the Hilbert-Schmidt inner product
/// unless stated otherwise by the producer.
#[derive(Clone, Debug)]
pub struct MorphismSpace {
    pub rows: usize,
    pub cols: usize,
    pub basis: Vec<ComplexMatrix>,
}

impl MorphismSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Orthogonal projection of `x` onto the span (basis assumed orthonormal).
    pub fn project(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.rows, self.cols);
        for b in &self.basis {
            out.axpy(b.inner(x), b);
        }
        out
    }

    /// Distance of `x` from the span.
    pub fn residual(&self, x: &ComplexMatrix) -> f64 {
        (x - &self.project(x)).frobenius_norm()
    }

    /// Coordinates of `x` in the (orthonormal) basis.
    pub fn coordinates(&self, x: &ComplexMatrix) -> Vec<Complex64> {
        self.basis.iter().map(|b| b.inner(x)).collect()
    }
}

/// Make the first entry of significant modulus real and positive.
pub(crate) fn fix_phase(v: &mut [Complex64]) {
    let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return;
    }
    if let Some(z) = v.iter().copied().find(|z| z.norm() > 1e-8 * scale) {
        let ph = z.conj() / z.norm();
        for x in v.iter_mut() {
            *x *= ph;
        }
    }
}

struct Svd {
    /// Singular values, descending.
    values: Vec<f64>,
    /// Right singular vectors as columns, aligned with `values`, padded to a full basis.
    v: ComplexMatrix,
}

fn svd_full_right(a: &ComplexMatrix) -> Svd {
    let n = a.cols;
    // nalgebra returns a thin V; pad with zero rows so V is square.
    let padded = if a.rows < n {
        let mut p = ComplexMatrix::zeros(n, n);
        p.set_block(0, 0, a);
        p
    } else {
        a.clone()
    };
    let svd = padded.to_nalgebra().svd(false, true);
    let vt = svd.v_t.expect("right singular vectors requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&x, &y| svd.singular_values[y].total_cmp(&svd.singular_values[x]).then(x.cmp(&y)));
    let values = order.iter().map(|&k| svd.singular_values[k]).collect();
    let v = ComplexMatrix::from_fn(n, order.len(), |i, k| vt[(order[k], i)].conj());
    Svd { values, v }
}

/// Orthonormal basis of `{x : a x = 0}` as column vectors.
///
/// Vectors come in ascending singular-value order and each has its first
/// significant entry real positive.
pub fn null_space(a: &ComplexMatrix, tol: &Tolerance) -> MorphismSpace {
    let n = a.cols;
    if n == 0 {
        return MorphismSpace { rows: 0, cols: 1, basis: vec![] };
    }
    if a.rows == 0 || a.max_abs() == 0.0 {
        let basis = (0..n).map(|i| ComplexMatrix::unit(n, 1, i, 0)).collect();
        return MorphismSpace { rows: n, cols: 1, basis };
    }
    let svd = svd_full_right(a);
    let thr = tol.rank_eps * svd.values[0];
    let mut basis = Vec::new();
    for k in (0..n).rev() {
        if svd.values[k] <= thr {
            let mut v = svd.v.col_vec(k);
            fix_phase(&mut v);
            basis.push(ComplexMatrix::column(v));
        } else {
            break;
        }
    }
    MorphismSpace { rows: n, cols: 1, basis }
}

/// Numerical rank with the relative `rank_eps` threshold.
pub fn rank(a: &ComplexMatrix, tol: &Tolerance) -> usize {
    if a.rows == 0 || a.cols == 0 || a.max_abs() == 0.0 {
        return 0;
    }
    let sv = a.to_nalgebra().singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > tol.rank_eps * smax).count()
}

/// Null space of the vertically stacked blocks, without forming the stack.
///
/// Blocks are absorbed one at a time, each restricted to the null space of
/// the previous ones. The zero threshold is `rank_eps` times the Frobenius
/// norm of the whole stack, an upper bound for its largest singular value.
/// The result is an `n x r` matrix with orthonormal columns.
pub fn stacked_null_space(blocks: &[ComplexMatrix], n: usize, tol: &Tolerance) -> Result<ComplexMatrix> {
    let scale = blocks.iter().map(|b| b.frobenius_norm().powi(2)).sum::<f64>().sqrt();
    stacked_null_space_scaled(blocks, n, scale, tol)
}

/// As [`stacked_null_space`], with the zero threshold `rank_eps * scale`.
///
/// Use this when the blocks are differences of larger operators, so that a
/// system that is zero up to round-off is recognised as zero.
pub fn stacked_null_space_scaled(
    blocks: &[ComplexMatrix],
    n: usize,
    scale: f64,
    tol: &Tolerance,
) -> Result<ComplexMatrix> {
    if let Some(b) = blocks.iter().find(|b| b.cols != n) {
        return Err(Error::DimensionMismatch(format!("block has {} columns, expected {n}", b.cols)));
    }
    let mut basis = ComplexMatrix::identity(n);
    if scale == 0.0 {
        return Ok(basis);
    }
    let thr = tol.rank_eps * scale;
    for b in blocks {
        if basis.cols == 0 {
            break;
        }
        let m = b * &basis;
        if m.max_abs() <= thr * 1e-3 {
            continue;
        }
        let svd = svd_full_right(&m);
        let keep: Vec<usize> = (0..m.cols).filter(|&k| svd.values[k] <= thr).collect();
        let sub = ComplexMatrix::from_fn(m.cols, keep.len(), |i, k| svd.v[(i, keep[k])]);
        basis = &basis * &sub;
    }
    for k in 0..basis.cols {
        let mut v = basis.col_vec(k);
        fix_phase(&mut v);
        for (i, z) in v.into_iter().enumerate() {
            basis[(i, k)] = z;
        }
    }
    Ok(basis)
}

/// Hermitian eigendecomposition with eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermEig {
    pub values: Vec<f64>,
    /// Eigenvectors as columns, aligned with `values`.
    pub vectors: ComplexMatrix,
    /// Index ranges of eigenvalues equal within `rank_eps`.
    pub clusters: Vec<std::ops::Range<usize>>,
}

impl HermEig {
    /// Eigenvectors of one cluster as columns.
    pub fn cluster_vectors(&self, c: usize) -> ComplexMatrix {
        let r = &self.clusters[c];
        self.vectors.columns(r.start, r.len())
    }

    pub fn cluster_value(&self, c: usize) -> f64 {
        let r = &self.clusters[c];
        self.values[r.clone()].iter().sum::<f64>() / r.len() as f64
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Fails with `NotHermitian` if `|a - a^*| > check_eps |a|` (Frobenius).
/// Eigenvalues closer than `rank_eps * max(1, |lambda|_max)` form one cluster.
pub fn herm_eig(a: &ComplexMatrix, tol: &Tolerance) -> Result<HermEig> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!("herm_eig of a {}x{} matrix", a.rows, a.cols)));
    }
    let norm = a.frobenius_norm();
    let skew = (a - &a.adjoint()).frobenius_norm();
    if skew > tol.check_eps * norm.max(f64::MIN_POSITIVE) && skew > 0.0 {
        return Err(Error::NotHermitian { residual: skew / norm.max(f64::MIN_POSITIVE) });
    }
    let n = a.rows;
    let sym = (a + &a.adjoint()).scale_re(0.5);
    let eig = sym.to_nalgebra().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]).then(x.cmp(&y)));
    let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = ComplexMatrix::from_fn(n, n, |i, k| eig.eigenvectors[(i, order[k])]);
    for k in 0..n {
        let mut v = vectors.col_vec(k);
        fix_phase(&mut v);
        for (i, z) in v.into_iter().enumerate() {
            vectors[(i, k)] = z;
        }
    }
    let spread = values.iter().map(|x| x.abs()).fold(1.0, f64::max);
    let gap = tol.rank_eps * spread;
    let mut clusters = Vec::new();
    let mut start = 0;
    for k in 1..=n {
        if k == n || values[k] - values[k - 1] > gap {
            clusters.push(start..k);
            start = k;
        }
    }
    Ok(HermEig { values, vectors, clusters })
}

/// Basis of `{X : X g = g X for all g}`, orthonormal for the Hilbert-Schmidt product.
///
/// With no generators the result is the full matrix algebra of size 1x1.
pub fn commutant_basis(gens: &[ComplexMatrix], tol: &Tolerance) -> Result<MorphismSpace> {
    let n = match gens.first() {
        Some(g) => g.rows,
        None => 1,
    };
    if let Some(g) = gens.iter().find(|g| g.rows != n || g.cols != n) {
        return Err(Error::DimensionMismatch(format!(
            "commutant generators must all be {n}x{n}, found {}x{}",
            g.rows, g.cols
        )));
    }
    let id = ComplexMatrix::identity(n);
    let blocks: Vec<ComplexMatrix> = gens.iter().map(|g| &kron(&id, &g.transpose()) - &kron(g, &id)).collect();
    let scale = (2.0 * n as f64).sqrt() * gens.iter().map(|g| g.frobenius_norm().powi(2)).sum::<f64>().sqrt();
    let ns = stacked_null_space_scaled(&blocks, n * n, scale, tol)?;
    let basis = (0..ns.cols).map(|k| ComplexMatrix::column(ns.col_vec(k)).reshape(n, n).unwrap()).collect();
    Ok(MorphismSpace { rows: n, cols: n, basis })
}

/// Orthonormal basis (as columns) of the span of the given vectors.
pub fn orthonormal_span(vectors: &[Vec<Complex64>], n: usize, tol: &Tolerance) -> ComplexMatrix {
    if vectors.is_empty() {
        return ComplexMatrix::zeros(n, 0);
    }
    let m = ComplexMatrix::from_fn(n, vectors.len(), |i, k| vectors[k][i]);
    let svd = m.to_nalgebra().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let mut keep: Vec<usize> =
        (0..svd.singular_values.len()).filter(|&k| svd.singular_values[k] > tol.rank_eps * smax).collect();
    keep.sort_by(|&x, &y| svd.singular_values[y].total_cmp(&svd.singular_values[x]).then(x.cmp(&y)));
    ComplexMatrix::from_fn(n, keep.len(), |i, k| u[(i, keep[k])])
}

/// Matrix with entries uniform in the unit square, from a seeded generator.
pub fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

/// Random element of the span of `space`.
pub fn random_element(space: &MorphismSpace, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(space.rows, space.cols);
    for b in &space.basis {
        out.axpy(Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)), b);
    }
    out
}

/// Cosines of the principal angles between two column spans with orthonormal columns.
pub fn principal_cosines(a: &ComplexMatrix, b: &ComplexMatrix) -> Vec<f64> {
    if a.cols == 0 || b.cols == 0 {
        return vec![];
    }
    let m = &a.adjoint() * b;
    let mut sv: Vec<f64> = m.to_nalgebra().singular_values().iter().map(|s| s.min(1.0)).collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Square root of a positive semidefinite Hermitian matrix, and its pseudo-inverse.
pub fn psd_sqrt_pair(a: &ComplexMatrix, tol: &Tolerance) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let e = herm_eig(a, tol)?;
    let n = a.rows;
    let top = e.values.iter().cloned().fold(0.0, f64::max);
    let mut s = ComplexMatrix::zeros(n, n);
    let mut si = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        let lam = e.values[k];
        if lam < -tol.check_eps * top.max(1.0) {
            return Err(Error::NonFaithful(format!("matrix has negative eigenvalue {lam:e}")));
        }
        let v = ComplexMatrix::column(e.vectors.col_vec(k));
        let p = &v * &v.adjoint();
        let r = lam.max(0.0).sqrt();
        s.axpy(Complex64::new(r, 0.0), &p);
        if lam > tol.rank_eps * top {
            si.axpy(Complex64::new(1.0 / r, 0.0), &p);
        }
    }
    Ok((s, si))
}
