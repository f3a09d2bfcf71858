//! Qubit states, standard gates, and density-operator metrics.
//!
//! Basis ordering: |0⟩, |1⟩ per qubit, with tensor factor 0 (rail 1) as the
//! most significant index, so a two-qubit basis runs |00⟩, |01⟩, |10⟩, |11⟩.
//! State equality in tests is fidelity-based; global phase is never compared.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::linalg::{
    eig_hermitian, partial_trace, partial_transpose, ComplexMatrix, LinalgError, SubsystemShape,
};

/// Admission tolerance for state and gate invariants (norm, trace,
/// hermiticity, positivity, unitarity).
pub const TOL_STATE: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum StateError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("state vector is not normalized: \u{03a3}|amplitude|\u{00b2} = {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },
    #[error("density operator trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },
    #[error("density operator has negative eigenvalue {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },
    #[error("matrix is not unitary: max |U\u{2020}U - I| entry = {deviation:.3e}")]
    NotUnitary { deviation: f64 },
    #[error("operands have mismatched dimensions: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("operation requires a bipartite shape, got {factors} factors")]
    NotBipartite { factors: usize },
    #[error("unknown gate name '{name}'")]
    UnknownGate { name: String },
    #[error("control rail only applies to CNOT, not '{name}'")]
    ControlRailNotApplicable { name: String },
    #[error("cannot normalize a zero state vector")]
    ZeroVector,
}

/// Normalized pure state over a declared tensor factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
    shape: SubsystemShape,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>, shape: SubsystemShape) -> Result<Self, StateError> {
        if amplitudes.len() != shape.total_dim() {
            return Err(LinalgError::DimensionMismatch {
                context: "amplitude count",
                expected: shape.total_dim(),
                actual: amplitudes.len(),
            }
            .into());
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > TOL_STATE {
            return Err(StateError::NotNormalized { norm_sqr });
        }
        Ok(Self { amplitudes, shape })
    }

    /// Rescale arbitrary amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>, shape: SubsystemShape) -> Result<Self, StateError> {
        let norm: f64 = amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt();
        if norm < 1e-150 {
            return Err(StateError::ZeroVector);
        }
        let scaled = amplitudes.iter().map(|a| a / norm).collect();
        Self::new(scaled, shape)
    }

    /// Single qubit μ|0⟩ + ν|1⟩.
    pub fn qubit(mu: Complex64, nu: Complex64) -> Result<Self, StateError> {
        Self::new(vec![mu, nu], SubsystemShape::qubits(1))
    }

    /// Computational basis state |index⟩.
    pub fn basis(shape: SubsystemShape, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::ZERO; shape.total_dim()];
        amplitudes[index] = Complex64::ONE;
        Self { amplitudes, shape }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn shape(&self) -> &SubsystemShape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim());
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |⟨self|other⟩|².
    pub fn fidelity_with(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Self {
            amplitudes,
            shape: self.shape.join(&other.shape),
        }
    }

    /// |ψ⟩⟨ψ| as a density operator.
    pub fn projector(&self) -> DensityOperator {
        let matrix = ComplexMatrix::outer(&self.amplitudes, &self.amplitudes);
        DensityOperator::new(matrix, self.shape.clone())
            .expect("projector of a normalized state is a valid density operator")
    }
}

/// Positive semidefinite, unit-trace operator over a declared factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    shape: SubsystemShape,
}

impl DensityOperator {
    /// Validates hermiticity, unit trace and positivity (all within
    /// [`TOL_STATE`]) before admitting the matrix.
    pub fn new(matrix: ComplexMatrix, shape: SubsystemShape) -> Result<Self, StateError> {
        if matrix.rows() != matrix.cols() || matrix.rows() != shape.total_dim() {
            return Err(LinalgError::ShapeMismatch {
                dims: shape.dims().to_vec(),
                product: shape.total_dim(),
                dim: matrix.rows(),
            }
            .into());
        }
        let dev = matrix.hermiticity_deviation();
        if dev > TOL_STATE {
            return Err(LinalgError::NotHermitian {
                deviation: dev,
                tolerance: TOL_STATE,
            }
            .into());
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TOL_STATE || trace.im.abs() > TOL_STATE {
            return Err(StateError::TraceNotOne { trace: trace.re });
        }
        let eig = eig_hermitian(&matrix)?;
        let min = eig.eigenvalues[0];
        if min < -TOL_STATE {
            return Err(StateError::NotPositive {
                min_eigenvalue: min,
            });
        }
        Ok(Self { matrix, shape })
    }

    /// I/d on the given shape.
    pub fn maximally_mixed(shape: SubsystemShape) -> Self {
        let d = shape.total_dim();
        Self {
            matrix: ComplexMatrix::identity(d).scale_re(1.0 / d as f64),
            shape,
        }
    }

    pub fn from_pure(state: &PureState) -> Self {
        state.projector()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn shape(&self) -> &SubsystemShape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Reduced state after tracing out factor `traced`.
    pub fn reduced(&self, traced: usize) -> Result<Self, StateError> {
        let m = partial_trace(&self.matrix, &self.shape, traced)?;
        Self::new(m.hermitize(), self.shape.without(traced))
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eig_hermitian(&self.matrix)
            .expect("density operator is Hermitian by construction")
            .eigenvalues
    }
}

/// Unitary over a declared tensor factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryGate {
    matrix: ComplexMatrix,
    shape: SubsystemShape,
}

impl UnitaryGate {
    pub fn new(matrix: ComplexMatrix, shape: SubsystemShape) -> Result<Self, StateError> {
        if matrix.rows() != matrix.cols() || matrix.rows() != shape.total_dim() {
            return Err(LinalgError::ShapeMismatch {
                dims: shape.dims().to_vec(),
                product: shape.total_dim(),
                dim: matrix.rows(),
            }
            .into());
        }
        let gram = matrix.adjoint().matmul(&matrix);
        let dev = gram.max_abs_diff(&ComplexMatrix::identity(matrix.rows()));
        if dev > TOL_STATE {
            return Err(StateError::NotUnitary { deviation: dev });
        }
        Ok(Self { matrix, shape })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn shape(&self) -> &SubsystemShape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// U|ψ⟩.
    pub fn apply(&self, state: &PureState) -> Result<PureState, StateError> {
        if state.dim() != self.dim() {
            return Err(StateError::DimensionMismatch {
                left: self.dim(),
                right: state.dim(),
            });
        }
        let amplitudes = self.matrix.matvec(state.amplitudes());
        PureState::new(amplitudes, state.shape().clone())
    }

    /// U ρ U†.
    pub fn conjugate(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        self.matrix.matmul(rho).matmul(&self.matrix.adjoint())
    }

    /// U·other (circuit composition: `other` acts first).
    pub fn compose_after(&self, other: &Self) -> Result<Self, StateError> {
        if self.dim() != other.dim() {
            return Err(StateError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Self::new(self.matrix.matmul(&other.matrix), other.shape.clone())
    }
}

/// The four maximally entangled two-qubit states.
///
/// Sign conventions follow the source equations this library reproduces:
/// the phi pair is antiparallel, phi⁻ being the singlet.
///
/// - `PhiPlus`  = (|01⟩ + |10⟩)/√2
/// - `PhiMinus` = (|01⟩ − |10⟩)/√2 (singlet)
/// - `PsiPlus`  = (|00⟩ + |11⟩)/√2
/// - `PsiMinus` = (|00⟩ − |11⟩)/√2
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [
        BellKind::PhiPlus,
        BellKind::PhiMinus,
        BellKind::PsiPlus,
        BellKind::PsiMinus,
    ];

    /// Bell-measurement outcome order used by `teleport::bell_probabilities`:
    /// (|00⟩+|11⟩), (|00⟩−|11⟩), (|01⟩+|10⟩), (|01⟩−|10⟩).
    pub const MEASUREMENT_ORDER: [BellKind; 4] = [
        BellKind::PsiPlus,
        BellKind::PsiMinus,
        BellKind::PhiPlus,
        BellKind::PhiMinus,
    ];

    pub fn measurement_index(self) -> usize {
        Self::MEASUREMENT_ORDER
            .iter()
            .position(|&k| k == self)
            .unwrap()
    }
}

impl std::str::FromStr for BellKind {
    type Err = StateError;
    fn from_str(s: &str) -> Result<Self, StateError> {
        match s {
            "phi_plus" => Ok(BellKind::PhiPlus),
            "phi_minus" => Ok(BellKind::PhiMinus),
            "psi_plus" => Ok(BellKind::PsiPlus),
            "psi_minus" => Ok(BellKind::PsiMinus),
            other => Err(StateError::UnknownGate {
                name: other.to_string(),
            }),
        }
    }
}

/// The named two-qubit maximally entangled state.
pub fn bell_state(kind: BellKind) -> PureState {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let amplitudes = match kind {
        BellKind::PhiPlus => vec![Complex64::ZERO, h, h, Complex64::ZERO],
        BellKind::PhiMinus => vec![Complex64::ZERO, h, -h, Complex64::ZERO],
        BellKind::PsiPlus => vec![h, Complex64::ZERO, Complex64::ZERO, h],
        BellKind::PsiMinus => vec![h, Complex64::ZERO, Complex64::ZERO, -h],
    };
    PureState::new(amplitudes, SubsystemShape::qubits(2)).unwrap()
}

/// Which rail controls a CNOT.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rail {
    One,
    Two,
}

pub mod gates {
    //! Constructors for the standard gate set.

    use super::*;

    fn from_permutation(perm: &[usize], shape: SubsystemShape) -> UnitaryGate {
        let d = perm.len();
        let mut m = ComplexMatrix::zeros(d, d);
        for (input, &output) in perm.iter().enumerate() {
            m.set(output, input, Complex64::ONE);
        }
        UnitaryGate::new(m, shape).unwrap()
    }

    pub fn identity() -> UnitaryGate {
        UnitaryGate::new(ComplexMatrix::identity(2), SubsystemShape::qubits(1)).unwrap()
    }

    pub fn pauli_x() -> UnitaryGate {
        from_permutation(&[1, 0], SubsystemShape::qubits(1))
    }

    pub fn pauli_z() -> UnitaryGate {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]);
        UnitaryGate::new(m, SubsystemShape::qubits(1)).unwrap()
    }

    pub fn hadamard() -> UnitaryGate {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m = ComplexMatrix::from_real_rows(&[&[h, h], &[h, -h]]);
        UnitaryGate::new(m, SubsystemShape::qubits(1)).unwrap()
    }

    /// CNOT: flips the target qubit iff the control qubit is |1⟩.
    pub fn cnot(control: Rail) -> UnitaryGate {
        let perm = match control {
            Rail::One => [0, 1, 3, 2],
            Rail::Two => [0, 3, 2, 1],
        };
        from_permutation(&perm, SubsystemShape::qubits(2))
    }

    pub fn swap() -> UnitaryGate {
        from_permutation(&[0, 2, 1, 3], SubsystemShape::qubits(2))
    }
}

/// Gate lookup by name: one of I, X, Z, H, CNOT, SWAP (case-insensitive).
/// `control_rail` is accepted only for CNOT and defaults to rail 1.
pub fn standard_gate(name: &str, control_rail: Option<Rail>) -> Result<UnitaryGate, StateError> {
    let upper = name.to_ascii_uppercase();
    if upper != "CNOT" && control_rail.is_some() {
        return Err(StateError::ControlRailNotApplicable {
            name: name.to_string(),
        });
    }
    match upper.as_str() {
        "I" => Ok(gates::identity()),
        "X" => Ok(gates::pauli_x()),
        "Z" => Ok(gates::pauli_z()),
        "H" => Ok(gates::hadamard()),
        "CNOT" => Ok(gates::cnot(control_rail.unwrap_or(Rail::One))),
        "SWAP" => Ok(gates::swap()),
        _ => Err(StateError::UnknownGate {
            name: name.to_string(),
        }),
    }
}

/// Von Neumann entropy −Σ λ log₂ λ in bits, with 0·log 0 ≡ 0.
pub fn von_neumann_entropy(rho: &DensityOperator) -> f64 {
    rho.eigenvalues()
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .sum()
}

/// Purity Tr ρ².
pub fn purity(rho: &DensityOperator) -> f64 {
    rho.matrix().matmul(rho.matrix()).trace().re
}

/// Trace distance ½ Σ |λ_i(ρ − σ)|.
pub fn trace_distance(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64, StateError> {
    if rho.dim() != sigma.dim() {
        return Err(StateError::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    Ok(trace_distance_matrices(rho.matrix(), sigma.matrix()))
}

/// Trace distance of two Hermitian matrices (no state validation).
pub(crate) fn trace_distance_matrices(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let diff = a.sub(b).hermitize();
    let eig = eig_hermitian(&diff).expect("hermitized difference is Hermitian");
    0.5 * eig.eigenvalues.iter().map(|l| l.abs()).sum::<f64>()
}

/// Uhlmann fidelity (Tr √(√ρ σ √ρ))², computed spectrally.
pub fn fidelity(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64, StateError> {
    if rho.dim() != sigma.dim() {
        return Err(StateError::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    let sqrt_rho = matrix_sqrt_psd(rho.matrix())?;
    let inner = sqrt_rho.matmul(sigma.matrix()).matmul(&sqrt_rho).hermitize();
    let eig = eig_hermitian(&inner)?;
    let root_sum: f64 = eig
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .sum();
    Ok(root_sum * root_sum)
}

fn matrix_sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let eig = eig_hermitian(m)?;
    let n = m.rows();
    let v = &eig.eigenvectors;
    let sqrt_lambda = ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(eig.eigenvalues[i].max(0.0).sqrt(), 0.0)
        } else {
            Complex64::ZERO
        }
    });
    Ok(v.matmul(&sqrt_lambda).matmul(&v.adjoint()))
}

/// Negativity of a bipartite state: Σ |negative eigenvalues| of the partial
/// transpose. Requires a two-factor shape.
pub fn negativity(rho: &DensityOperator) -> Result<f64, StateError> {
    if rho.shape().factor_count() != 2 {
        return Err(StateError::NotBipartite {
            factors: rho.shape().factor_count(),
        });
    }
    let pt = partial_transpose(rho.matrix(), rho.shape(), 1)?;
    let eig = eig_hermitian(&pt)?;
    Ok(eig
        .eigenvalues
        .iter()
        .filter(|&&l| l < 0.0)
        .map(|&l| -l)
        .sum())
}

fn standard_normal(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Complex Ginibre matrix: i.i.d. N(0, 1/2) real and imaginary parts.
pub fn ginibre(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let half = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(standard_normal(rng) * half, standard_normal(rng) * half)
    })
}

/// Haar-distributed unitary: Ginibre sample followed by Gram-Schmidt QR,
/// whose positive-real R diagonal fixes the phase ambiguity.
pub fn haar_random_unitary(shape: SubsystemShape, rng: &mut impl Rng) -> UnitaryGate {
    let d = shape.total_dim();
    let g = ginibre(d, d, rng);
    let q = orthonormalize_columns(&g);
    UnitaryGate::new(q, shape).expect("orthonormalized columns form a unitary")
}

/// Haar-random pure state (Gaussian amplitudes, normalized).
pub fn random_pure_state(shape: SubsystemShape, rng: &mut impl Rng) -> PureState {
    let d = shape.total_dim();
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let amplitudes: Vec<Complex64> = (0..d)
        .map(|_| Complex64::new(standard_normal(rng) * half, standard_normal(rng) * half))
        .collect();
    PureState::normalized(amplitudes, shape).expect("Gaussian vector is nonzero a.s.")
}

/// Random full-rank density operator ρ = GG†/Tr(GG†) from a Ginibre sample.
pub fn random_density_operator(shape: SubsystemShape, rng: &mut impl Rng) -> DensityOperator {
    let d = shape.total_dim();
    let g = ginibre(d, d, rng);
    let gg = g.matmul(&g.adjoint()).hermitize();
    let rho = gg.scale_re(1.0 / gg.trace().re);
    DensityOperator::new(rho, shape).expect("Wishart matrix is PSD with unit trace")
}

/// Modified Gram-Schmidt with one reorthogonalization pass.
fn orthonormalize_columns(m: &ComplexMatrix) -> ComplexMatrix {
    let (rows, cols) = (m.rows(), m.cols());
    let mut q: Vec<Vec<Complex64>> = (0..cols)
        .map(|j| (0..rows).map(|i| m.at(i, j)).collect())
        .collect();
    for j in 0..cols {
        for _pass in 0..2 {
            for k in 0..j {
                let proj: Complex64 = (0..rows).map(|i| q[k][i].conj() * q[j][i]).sum();
                for i in 0..rows {
                    let correction = proj * q[k][i];
                    q[j][i] -= correction;
                }
            }
        }
        let norm: f64 = q[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut q[j] {
            *z /= norm;
        }
    }
    ComplexMatrix::from_fn(rows, cols, |i, j| q[j][i])
}
