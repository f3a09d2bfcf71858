//! Dense complex linear algebra at desk scale.
//!
//! Everything downstream (states, gates, superoperators) is built on
//! [`ComplexMatrix`], a row-major dense matrix of `Complex64` entries.
//! Matrices here never exceed ~64×64 (the largest objects are vectorized
//! two-rail superoperators), so the kernel favours clarity over asymptotics:
//! no sparsity, no blocking, and a cyclic Jacobi sweep for the Hermitian
//! eigenproblem.

use num_complex::Complex64;
use thiserror::Error;

/// Hermiticity admission tolerance: max |m − m†| entry accepted as Hermitian.
pub const TOL_HERMITIAN: f64 = 1e-10;

/// Eigendecomposition reconstruction tolerance, ‖VΛV† − m‖_max.
pub const TOL_EIG: f64 = 1e-10;

/// Jacobi sweeps stop once the off-diagonal Frobenius mass falls below this
/// fraction of the matrix scale.
const JACOBI_OFF_TOL: f64 = 1e-14;

const MAX_JACOBI_SWEEPS: usize = 100;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("{context}: expected dimension {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not Hermitian: max |m - m\u{2020}| entry {deviation:.3e} exceeds {tolerance:.1e}")]
    NotHermitian { deviation: f64, tolerance: f64 },
    #[error("subsystem dims {dims:?} (product {product}) do not factor dimension {dim}")]
    ShapeMismatch {
        dims: Vec<usize>,
        product: usize,
        dim: usize,
    },
    #[error("tensor factor index {index} out of range (shape has {count} factors)")]
    FactorOutOfRange { index: usize, count: usize },
    #[error("subsystem dims must be positive, got {dims:?}")]
    EmptyShape { dims: Vec<usize> },
}

/// Ordered list of local dimensions of the tensor factors a matrix acts on.
///
/// The product of the dims equals the matrix dimension it annotates; factor 0
/// is the most significant index in the row-major basis ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsystemShape {
    dims: Vec<usize>,
}

impl SubsystemShape {
    pub fn new(dims: Vec<usize>) -> Result<Self, LinalgError> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(LinalgError::EmptyShape { dims });
        }
        Ok(Self { dims })
    }

    /// Shape of `n` qubits.
    pub fn qubits(n: usize) -> Self {
        Self { dims: vec![2; n] }
    }

    /// Single factor of dimension `d`.
    pub fn single(d: usize) -> Self {
        Self { dims: vec![d] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn factor_count(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Shape with factor `index` removed; the last factor collapses to dim 1.
    pub fn without(&self, index: usize) -> Self {
        let mut dims: Vec<usize> = self
            .dims
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != index)
            .map(|(_, &d)| d)
            .collect();
        if dims.is_empty() {
            dims.push(1);
        }
        Self { dims }
    }

    /// Tensor concatenation of two shapes.
    pub fn join(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self { dims }
    }

    fn check_factor(&self, index: usize) -> Result<(), LinalgError> {
        if index >= self.dims.len() {
            return Err(LinalgError::FactorOutOfRange {
                index,
                count: self.dims.len(),
            });
        }
        Ok(())
    }

    fn check_matrix(&self, m: &ComplexMatrix) -> Result<(), LinalgError> {
        if m.rows() != m.cols() || self.total_dim() != m.rows() {
            return Err(LinalgError::ShapeMismatch {
                dims: self.dims.clone(),
                product: self.total_dim(),
                dim: m.rows(),
            });
        }
        Ok(())
    }

    /// Decompose a flat basis index into per-factor indices.
    fn split_index(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (k, &d) in self.dims.iter().enumerate().rev() {
            out[k] = flat % d;
            flat /= d;
        }
        out
    }

    /// Recompose per-factor indices into a flat basis index.
    fn flatten_index(&self, parts: &[usize]) -> usize {
        let mut flat = 0;
        for (k, &d) in self.dims.iter().enumerate() {
            flat = flat * d + parts[k];
        }
        flat
    }
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                context: "entry count",
                expected: rows * cols,
                actual: data.len(),
            });
        }
        let m = Self { rows, cols, data };
        m.check_finite()?;
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::ONE;
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
        Self { rows, cols, data }
    }

    /// Build from nested rows of real numbers (imaginary parts zero).
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = if r > 0 { rows[0].len() } else { 0 };
        Self::from_fn(r, c, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    /// Column vector from a slice of amplitudes.
    pub fn column(amplitudes: &[Complex64]) -> Self {
        Self {
            rows: amplitudes.len(),
            cols: 1,
            data: amplitudes.to_vec(),
        }
    }

    /// Outer product |a⟩⟨b| of two amplitude vectors.
    pub fn outer(a: &[Complex64], b: &[Complex64]) -> Self {
        Self::from_fn(a.len(), b.len(), |i, j| a[i] * b[j].conj())
    }

    fn check_finite(&self) -> Result<(), LinalgError> {
        for (idx, z) in self.data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(LinalgError::NonFinite {
                    row: idx / self.cols,
                    col: idx % self.cols,
                });
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = value;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul inner dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![Complex64::ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::ZERO;
            for j in 0..self.cols {
                acc += self.data[i * self.cols + j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i))
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).conj())
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.at(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max |self − other| entry.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max |m_ij − conj(m_ji)| over all entries; zero for exactly Hermitian m.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self.at(i, j) - self.at(j, i).conj()).norm());
            }
        }
        dev
    }

    /// Replace by the Hermitian part (m + m†)/2. Cleans up roundoff drift on
    /// values that are Hermitian by construction.
    pub fn hermitize(&self) -> Self {
        self.add(&self.adjoint()).scale_re(0.5)
    }

    /// Kronecker product self ⊗ other.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.data[i1 * self.cols + j1];
                if a == Complex64::ZERO {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let r = i1 * other.rows + i2;
                        let c = j1 * other.cols + j2;
                        out.data[r * cols + c] = a * other.data[i2 * other.cols + j2];
                    }
                }
            }
        }
        out
    }
}

impl std::ops::Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::add(self, rhs)
    }
}

impl std::ops::Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::sub(self, rhs)
    }
}

impl std::ops::Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// Partial trace over tensor factor `traced` (0-indexed) of a square matrix
/// annotated by `shape`. The result acts on the remaining factors and has the
/// same trace as the input.
pub fn partial_trace(
    m: &ComplexMatrix,
    shape: &SubsystemShape,
    traced: usize,
) -> Result<ComplexMatrix, LinalgError> {
    shape.check_matrix(m)?;
    shape.check_factor(traced)?;
    let kept = shape.without(traced);
    let kept_dim = kept.total_dim();
    let d_t = shape.dims()[traced];
    let mut out = ComplexMatrix::zeros(kept_dim, kept_dim);
    for ri in 0..kept_dim {
        let row_parts = kept.split_index(ri);
        for rj in 0..kept_dim {
            let col_parts = kept.split_index(rj);
            let mut acc = Complex64::ZERO;
            for t in 0..d_t {
                let full_row = shape.flatten_index(&insert_at(&row_parts, traced, t));
                let full_col = shape.flatten_index(&insert_at(&col_parts, traced, t));
                acc += m.at(full_row, full_col);
            }
            out.set(ri, rj, acc);
        }
    }
    Ok(out)
}

/// Partial transpose on tensor factor `factor` (0-indexed).
pub fn partial_transpose(
    m: &ComplexMatrix,
    shape: &SubsystemShape,
    factor: usize,
) -> Result<ComplexMatrix, LinalgError> {
    shape.check_matrix(m)?;
    shape.check_factor(factor)?;
    let dim = shape.total_dim();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        let mut row_parts = shape.split_index(i);
        for j in 0..dim {
            let mut col_parts = shape.split_index(j);
            std::mem::swap(&mut row_parts[factor], &mut col_parts[factor]);
            let ti = shape.flatten_index(&row_parts);
            let tj = shape.flatten_index(&col_parts);
            std::mem::swap(&mut row_parts[factor], &mut col_parts[factor]);
            out.set(ti, tj, m.at(i, j));
        }
    }
    Ok(out)
}

/// Permutation matrix exchanging two tensor factors: P(|x⟩⊗|y⟩) = |y⟩⊗|x⟩
/// for factors of dimension `d0` and `d1`.
pub fn factor_exchange(d0: usize, d1: usize) -> ComplexMatrix {
    let dim = d0 * d1;
    let mut p = ComplexMatrix::zeros(dim, dim);
    for x in 0..d0 {
        for y in 0..d1 {
            p.set(y * d0 + x, x * d1 + y, Complex64::ONE);
        }
    }
    p
}

fn insert_at(parts: &[usize], pos: usize, value: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(parts.len() + 1);
    out.extend_from_slice(&parts[..pos]);
    out.push(value);
    out.extend_from_slice(&parts[pos..]);
    out
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, matching the eigenvalue order.
    pub eigenvectors: ComplexMatrix,
}

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// Rejects inputs whose hermiticity deviation exceeds [`TOL_HERMITIAN`].
/// Sweeps run until the off-diagonal Frobenius mass drops below 1e−14 of the
/// matrix scale; at the ≤64 dimensions used here this leaves reconstruction
/// residuals well under [`TOL_EIG`].
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<HermitianEigen, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::DimensionMismatch {
            context: "eig_hermitian input must be square",
            expected: m.rows(),
            actual: m.cols(),
        });
    }
    let dev = m.hermiticity_deviation();
    if dev > TOL_HERMITIAN {
        return Err(LinalgError::NotHermitian {
            deviation: dev,
            tolerance: TOL_HERMITIAN,
        });
    }

    let n = m.rows();
    let mut a = m.hermitize();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(1.0);

    for _sweep in 0..MAX_JACOBI_SWEEPS {
        if off_diagonal_norm(&a) <= JACOBI_OFF_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let lambda: Vec<f64> = (0..n).map(|i| a.at(i, i).re).collect();
    order.sort_by(|&i, &j| lambda[i].total_cmp(&lambda[j]));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| lambda[i]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v.at(i, order[j]));
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a.at(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation annihilating the (p, q) entry of Hermitian `a`,
/// accumulated into `v`. The unitary is D·J where D carries the phase of
/// a_pq and J is the classic real rotation on the phase-aligned 2×2 block.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let z = a.at(p, q);
    let r = z.norm();
    if r < 1e-300 {
        return;
    }
    let phase = z / r;
    let app = a.at(p, p).re;
    let aqq = a.at(q, q).re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.rows();
    let cp = Complex64::new(c, 0.0) * phase;
    let sp = Complex64::new(s, 0.0) * phase;
    let cr = Complex64::new(c, 0.0);
    let sr = Complex64::new(s, 0.0);

    // Column update: A ← A·V, V block [[c·φ, s·φ], [−s, c]].
    for k in 0..n {
        let akp = a.at(k, p);
        let akq = a.at(k, q);
        a.set(k, p, akp * cp - akq * sr);
        a.set(k, q, akp * sp + akq * cr);
    }
    // Row update: A ← V†·A.
    for k in 0..n {
        let apk = a.at(p, k);
        let aqk = a.at(q, k);
        a.set(p, k, apk * cp.conj() - aqk * sr);
        a.set(q, k, apk * sp.conj() + aqk * cr);
    }
    a.set(p, q, Complex64::ZERO);
    a.set(q, p, Complex64::ZERO);

    // Accumulate eigenvectors.
    for k in 0..n {
        let vkp = v.at(k, p);
        let vkq = v.at(k, q);
        v.set(k, p, vkp * cp - vkq * sr);
        v.set(k, q, vkp * sp + vkq * cr);
    }
}
