//! Dense complex linear algebra.
//!
//! Everything in the workbench is built from small dense complex matrices
//! (dimension at most a few dozen), so this module favours determinism and
//! clarity over speed. Decompositions are delegated to `nalgebra`; the gauge
//! choices on top of them (kernel pairing in [`polar`], eigenvalue
//! clustering in [`herm_spectrum`]) live here.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Dense complex matrix. Entries are stored column-major by `nalgebra`; all
/// constructors in this crate take row-major input.
pub type ComplexMatrix = DMatrix<C64>;

/// Absolute tolerance for matrix equality checks.
pub const MATRIX_EQ_TOL: f64 = 1e-9;
/// Rank decisions: singular values at or below this fraction of the largest
/// one count as zero.
pub const RANK_TOL: f64 = 1e-8;
/// Eigenvalues closer than this are merged into one cluster.
pub const CLUSTER_TOL: f64 = 1e-9;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `e^{iθ}`.
#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

/// Builds a matrix from row-major complex entries.
pub fn from_rows(rows: usize, cols: usize, entries: &[C64]) -> ComplexMatrix {
    assert_eq!(
        entries.len(),
        rows * cols,
        "entry count must equal rows*cols"
    );
    DMatrix::from_row_slice(rows, cols, entries)
}

/// Builds a matrix from row-major real entries.
pub fn from_real_rows(rows: usize, cols: usize, entries: &[f64]) -> ComplexMatrix {
    assert_eq!(
        entries.len(),
        rows * cols,
        "entry count must equal rows*cols"
    );
    DMatrix::from_fn(rows, cols, |i, j| c64(entries[i * cols + j], 0.0))
}

pub fn identity(n: usize) -> ComplexMatrix {
    DMatrix::identity(n, n)
}

pub fn zeros(rows: usize, cols: usize) -> ComplexMatrix {
    DMatrix::zeros(rows, cols)
}

pub fn diag(entries: &[C64]) -> ComplexMatrix {
    let n = entries.len();
    DMatrix::from_fn(n, n, |i, j| if i == j { entries[i] } else { ZERO })
}

/// Matrix unit `E_{ij}` of size `n` (zero-based indices).
pub fn unit(n: usize, i: usize, j: usize) -> ComplexMatrix {
    let mut m = zeros(n, n);
    m[(i, j)] = ONE;
    m
}

/// Kronecker product with the block convention `A ⊗ B = (a_ij B)`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (n, m) = a.shape();
    let (p, q) = b.shape();
    let mut out = zeros(n * p, m * q);
    for i in 0..n {
        for j in 0..m {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..p {
                for l in 0..q {
                    out[(i * p + k, j * q + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Left-to-right Kronecker product of a list; the empty list gives `[1]`.
pub fn kron_all<'a, I>(factors: I) -> ComplexMatrix
where
    I: IntoIterator<Item = &'a ComplexMatrix>,
{
    factors
        .into_iter()
        .fold(identity(1), |acc, f| kron(&acc, f))
}

/// Block-diagonal direct sum.
pub fn direct_sum(blocks: &[&ComplexMatrix]) -> ComplexMatrix {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = zeros(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        out.view_mut((r0, c0), b.shape()).copy_from(*b);
        r0 += b.nrows();
        c0 += b.ncols();
    }
    out
}

/// Permutation `P` with `P (A ⊗ B) Pᵀ = B ⊗ A` for `A` of size `p` and `B`
/// of size `q`. For `p = q = 2` this is the tensor flip `x ⊗ y ↦ y ⊗ x`.
pub fn tensor_swap(p: usize, q: usize) -> ComplexMatrix {
    let mut s = zeros(p * q, p * q);
    for i in 0..p {
        for k in 0..q {
            // e_i ⊗ e_k  ↦  e_k ⊗ e_i
            s[(k * p + i, i * q + k)] = ONE;
        }
    }
    s
}

/// Singular values in descending order.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut sv: Vec<f64> = a.clone().singular_values().iter().copied().collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Operator (spectral) norm: the largest singular value.
pub fn op_norm(a: &ComplexMatrix) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

pub fn frobenius(a: &ComplexMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs(a: &ComplexMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Operator norm of `a - b`; `f64::INFINITY` when shapes differ.
pub fn distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    op_norm(&(a - b))
}

/// `‖U*U − I‖` and `‖UU* − I‖`, whichever is larger.
pub fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    let n = u.nrows();
    let id = identity(n);
    let a = op_norm(&(u.adjoint() * u - &id));
    let b = op_norm(&(u * u.adjoint() - &id));
    a.max(b)
}

/// Conjugation `U* A U`.
pub fn conjugate(a: &ComplexMatrix, u: &ComplexMatrix) -> ComplexMatrix {
    u.adjoint() * a * u
}

/// Frobenius (trace) inner product `⟨A, B⟩ = tr(A* B)`.
pub fn trace_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

struct SortedSvd {
    u: ComplexMatrix,
    sigma: Vec<f64>,
    /// Columns are right singular vectors, ordered like `sigma`.
    v: ComplexMatrix,
}

/// Full SVD of a square matrix with singular values sorted descending.
fn sorted_svd_square(a: &ComplexMatrix) -> SortedSvd {
    let n = a.nrows();
    let svd = a.clone().svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^T");
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sv[j].total_cmp(&sv[i]).then(i.cmp(&j)));
    let mut u_sorted = zeros(n, n);
    let mut v_sorted = zeros(n, n);
    for (k, &idx) in order.iter().enumerate() {
        u_sorted.set_column(k, &u.column(idx));
        v_sorted.set_column(k, &v_t.row(idx).adjoint());
    }
    SortedSvd {
        u: u_sorted,
        sigma: order.iter().map(|&i| sv[i]).collect(),
        v: v_sorted,
    }
}

/// Gram–Schmidt over the images `P e_1, P e_2, …` of the standard basis,
/// keeping vectors in index order. Returns `dim` orthonormal columns.
fn index_ordered_basis(projector: &ComplexMatrix, dim: usize) -> Vec<nalgebra::DVector<C64>> {
    let n = projector.nrows();
    let mut basis: Vec<nalgebra::DVector<C64>> = Vec::with_capacity(dim);
    for i in 0..n {
        if basis.len() == dim {
            break;
        }
        let mut v = projector.column(i).into_owned();
        for _ in 0..2 {
            for b in &basis {
                let coeff = b.dotc(&v);
                v -= b * coeff;
            }
        }
        let norm = v.norm();
        if norm > 1e-6 {
            basis.push(v / c64(norm, 0.0));
        }
    }
    basis
}

/// Polar decomposition `A = U P` with `P = (A*A)^{1/2}`.
///
/// `U` is unitary: on `(ker A)^⊥` it is the partial isometry of the polar
/// decomposition, and on `ker A` it maps the index-ordered orthonormal basis
/// of `ker A` (Gram–Schmidt over the projected standard basis) onto the
/// index-ordered basis of `ker A*`.
pub fn polar(a: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "polar decomposition needs a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let n = a.nrows();
    let svd = sorted_svd_square(a);
    let smax = svd.sigma.first().copied().unwrap_or(0.0);
    let rank = svd
        .sigma
        .iter()
        .filter(|&&s| smax > 0.0 && s > RANK_TOL * smax)
        .count();

    let mut p = zeros(n, n);
    let mut u = zeros(n, n);
    for k in 0..rank {
        let vk = svd.v.column(k);
        let wk = svd.u.column(k);
        p += vk * vk.adjoint() * c64(svd.sigma[k], 0.0);
        u += wk * vk.adjoint();
    }
    if rank < n {
        let mut proj_ker = zeros(n, n);
        let mut proj_coker = zeros(n, n);
        for k in rank..n {
            let vk = svd.v.column(k);
            let wk = svd.u.column(k);
            proj_ker += vk * vk.adjoint();
            proj_coker += wk * wk.adjoint();
        }
        let ker = index_ordered_basis(&proj_ker, n - rank);
        let coker = index_ordered_basis(&proj_coker, n - rank);
        for (e, f) in ker.iter().zip(coker.iter()) {
            u += f * e.adjoint();
        }
    }
    Ok((u, p))
}

/// Eigenvalues (ascending) and matching orthonormal eigenvectors of a
/// Hermitian matrix.
pub fn herm_eigen(a: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    ensure_hermitian(a)?;
    let h = (a + a.adjoint()) * c64(0.5, 0.0);
    let eig = SymmetricEigen::new(h);
    let n = a.nrows();
    let vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]).then(i.cmp(&j)));
    let mut vecs = zeros(n, n);
    for (k, &idx) in order.iter().enumerate() {
        vecs.set_column(k, &eig.eigenvectors.column(idx));
    }
    Ok((order.iter().map(|&i| vals[i]).collect(), vecs))
}

fn ensure_hermitian(a: &ComplexMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "expected a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let defect = op_norm(&(a - a.adjoint()));
    if defect > 1e-10 * op_norm(a) {
        return Err(Error::NotHermitian { defect });
    }
    Ok(())
}

/// Groups sorted values whose consecutive gaps are at most `tol`. Returns
/// index ranges into `sorted`.
pub fn cluster_sorted(sorted: &[f64], tol: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || sorted[i] - sorted[i - 1] > tol {
            if i > start {
                out.push(start..i);
            }
            start = i;
        }
    }
    out
}

/// Spectrum of a Hermitian matrix as `(eigenvalue, multiplicity)` pairs,
/// ascending, clustered at [`CLUSTER_TOL`] with the cluster midpoint as
/// representative.
pub fn herm_spectrum(a: &ComplexMatrix) -> Result<Vec<(f64, usize)>> {
    let (vals, _) = herm_eigen(a)?;
    Ok(cluster_sorted(&vals, CLUSTER_TOL)
        .into_iter()
        .map(|r| {
            let lo = vals[r.start];
            let hi = vals[r.end - 1];
            (0.5 * (lo + hi), r.len())
        })
        .collect())
}

/// An orthonormal family of equally-shaped matrices under the trace inner
/// product.
#[derive(Debug, Clone)]
pub struct LinearSubspace {
    pub rows: usize,
    pub cols: usize,
    pub basis: Vec<ComplexMatrix>,
}

impl LinearSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the ambient matrix space.
    pub fn ambient_dim(&self) -> usize {
        self.rows * self.cols
    }

    /// Reinterprets column vectors as `rows x cols` matrices (column-major).
    pub fn reshape(self, rows: usize, cols: usize) -> LinearSubspace {
        assert_eq!(rows * cols, self.rows * self.cols);
        let basis = self
            .basis
            .into_iter()
            .map(|v| DMatrix::from_column_slice(rows, cols, v.as_slice()))
            .collect();
        LinearSubspace { rows, cols, basis }
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((trace_inner(a, b) - target).norm());
            }
        }
        worst
    }
}

/// Orthonormal basis (as column vectors) of the approximate null space of
/// `l`: right singular vectors whose singular value is at most
/// `tol · σ_max`, or the whole space when `σ_max = 0`.
pub fn null_space(l: &ComplexMatrix, tol: f64) -> LinearSubspace {
    null_space_scaled(l, tol, 0.0)
}

/// [`null_space`] with the threshold `tol · max(σ_max, scale)`, for
/// operators whose natural size is known independently of `l`.
pub fn null_space_scaled(l: &ComplexMatrix, tol: f64, scale: f64) -> LinearSubspace {
    let k = l.ncols();
    let m = l.nrows();
    let square = if m >= k {
        None
    } else {
        let mut padded = zeros(k, k);
        padded.view_mut((0, 0), (m, k)).copy_from(l);
        Some(padded)
    };
    let target = square.as_ref().unwrap_or(l);
    let smax = op_norm(target);
    if smax <= tol * scale || smax == 0.0 {
        let basis = (0..k)
            .map(|i| DMatrix::from_fn(k, 1, |r, _| if r == i { ONE } else { ZERO }))
            .collect();
        return LinearSubspace {
            rows: k,
            cols: 1,
            basis,
        };
    }
    let svd = target.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let mut basis = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= tol * smax.max(scale))
        .map(|(i, _)| {
            let col = v_t.row(i).adjoint();
            DMatrix::from_column_slice(k, 1, col.as_slice())
        })
        .collect::<Vec<ComplexMatrix>>();
    basis.sort_by(|a, b| {
        lexi_key(a)
            .partial_cmp(&lexi_key(b))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    LinearSubspace {
        rows: k,
        cols: 1,
        basis,
    }
}

// Deterministic ordering for null-space vectors: by the index of the first
// entry with non-negligible modulus.
fn lexi_key(v: &ComplexMatrix) -> usize {
    v.iter().position(|z| z.norm() > 1e-8).unwrap_or(usize::MAX)
}
