//! Two boundary conditions for a qubit interacting with its own past through
//! a two-rail circuit.
//!
//! Wiring convention (fixed): rail 1 carries the chronology-respecting input,
//! rail 2 the looping state; the rail-1 output is identified with the rail-2
//! input, and the detector reads the rail-2 output. With `U` acting on
//! rail 1 ⊗ rail 2 this makes the crossed trace structure
//!
//! - consistency:  ρ = Tr₂[U(ρ_in ⊗ ρ)U†]   (rail-1-output marginal)
//! - output:       ρ_out = Tr₁[U(ρ_in ⊗ ρ)U†]
//!
//! The density-operator condition is solved two independent ways: by damped
//! fixed-point iteration from the maximally mixed state (the normative
//! semantics, which also resolves mixed inputs), and by vectorizing the
//! affine map and intersecting its eigenvalue-1 eigenspace with the
//! unit-trace Hermitian states, selecting the maximum-entropy member.
//!
//! The path-integral condition contracts the rail-1 output with the rail-2
//! input component-wise, yielding a generally non-unitary operator `C` on the
//! chronology-respecting system; histories are post-selected by renormalizing
//! C|ψ⟩, and a vanishing weight signals a forbidden (paradoxical) history.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{
    eig_hermitian, factor_exchange, partial_trace, ComplexMatrix, LinalgError, SubsystemShape,
};
use crate::quantum::{
    trace_distance_matrices, DensityOperator, PureState, StateError, UnitaryGate,
};

/// Default threshold on the consistency weight below which a post-selected
/// history is declared paradoxical.
pub const DEFAULT_PARADOX_EPS: f64 = 1e-12;

/// Residual-stagnation window for the oscillation detector.
const STALL_WINDOW: usize = 50;

/// Kernel admission threshold on eigenvalues of (L−I)†(L−I).
const KERNEL_EIG_TOL: f64 = 1e-13;

#[derive(Debug, Error)]
pub enum CtcError {
    #[error(
        "paradoxical history: consistency weight {weight:.3e} fell below {threshold:.1e} (no consistent trajectory)"
    )]
    Paradox { weight: f64, threshold: f64 },
    #[error(
        "fixed-point iteration did not converge after {iterations} iterations (last residual {residual:.3e})"
    )]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("wiring requires a two-rail unitary, got {factors} tensor factors")]
    NotTwoRails { factors: usize },
    #[error("rail dimensions must be equal, got {rail1} and {rail2}")]
    UnequalRails { rail1: usize, rail2: usize },
    #[error("state dimension {state} does not match rail dimension {rail}")]
    RailMismatch { state: usize, rail: usize },
    #[error("CTC must act on one factor of a bipartite state, got {factors} factors")]
    NotBipartite { factors: usize },
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Interaction unitary plus the fixed crossed-rail convention.
#[derive(Debug, Clone)]
pub struct CtcWiring {
    gate: UnitaryGate,
}

impl CtcWiring {
    /// The gate must act on two rails of equal dimension (the same system
    /// cycles through the curve).
    pub fn new(gate: UnitaryGate) -> Result<Self, CtcError> {
        let dims = gate.shape().dims();
        if dims.len() != 2 {
            return Err(CtcError::NotTwoRails {
                factors: dims.len(),
            });
        }
        if dims[0] != dims[1] {
            return Err(CtcError::UnequalRails {
                rail1: dims[0],
                rail2: dims[1],
            });
        }
        Ok(Self { gate })
    }

    pub fn gate(&self) -> &UnitaryGate {
        &self.gate
    }

    pub fn rail_dim(&self) -> usize {
        self.gate.shape().dims()[0]
    }

    fn rail_shape(&self) -> SubsystemShape {
        SubsystemShape::single(self.rail_dim())
    }
}

/// Which solver produced a [`CtcSolution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    DeutschIterative,
    DeutschNullspace,
    Pctc,
}

impl std::fmt::Display for SolveMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolveMethod::DeutschIterative => write!(f, "deutsch_iterative"),
            SolveMethod::DeutschNullspace => write!(f, "deutsch_nullspace"),
            SolveMethod::Pctc => write!(f, "pctc"),
        }
    }
}

/// How the returned fixed point was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IterationStrategy {
    /// Plain iteration at the requested damping.
    Direct,
    /// Damping was halved after the residual stagnated.
    Damped,
    /// Cesàro window averaging of the iterates was needed.
    CesaroAveraged,
    /// Nullspace entropy ascent stalled; the iterative solution was used.
    IterativeFallback,
}

impl std::fmt::Display for IterationStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IterationStrategy::Direct => write!(f, "direct"),
            IterationStrategy::Damped => write!(f, "damped"),
            IterationStrategy::CesaroAveraged => write!(f, "cesaro_averaged"),
            IterationStrategy::IterativeFallback => write!(f, "iterative_fallback"),
        }
    }
}

/// A solved CTC interaction: the loop-borne state, the detector output, and
/// solver diagnostics.
#[derive(Debug, Clone)]
pub struct CtcSolution {
    /// The CTC-borne state ρ (for the post-selected method this slot repeats
    /// the output: that condition constrains histories, not a loop state).
    pub fixed_point: DensityOperator,
    /// Detector output ρ_out.
    pub output: DensityOperator,
    pub method: SolveMethod,
    pub iterations: usize,
    /// Consistency residual trace_distance(ρ, map(ρ)); zero by construction
    /// for the post-selected method.
    pub residual: f64,
    pub strategy: IterationStrategy,
    /// Affine dimension of the consistent-state set (nullspace solver only).
    pub fixed_point_set_dimension: Option<usize>,
    /// Relative likelihood of the consistent history (post-selected only).
    pub weight: Option<f64>,
}

/// Fixed-point solver controls.
#[derive(Debug, Clone, Copy)]
pub struct DeutschOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Mixing parameter λ ∈ (0, 1]: ρ ← (1−λ)ρ + λ·map(ρ).
    pub damping: f64,
}

impl Default for DeutschOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 10_000,
            damping: 1.0,
        }
    }
}

/// Precomputed pieces of the two-rail conjugation, shared by both marginals.
struct RailMap {
    u: ComplexMatrix,
    u_adj: ComplexMatrix,
    rho_in: ComplexMatrix,
    joint_shape: SubsystemShape,
}

impl RailMap {
    fn new(rho_in: &ComplexMatrix, w: &CtcWiring) -> Self {
        let u = w.gate().matrix().clone();
        let u_adj = u.adjoint();
        let d = w.rail_dim();
        Self {
            u,
            u_adj,
            rho_in: rho_in.clone(),
            joint_shape: SubsystemShape::new(vec![d, d]).unwrap(),
        }
    }

    fn evolved_joint(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let joint = self.rho_in.kron(rho);
        self.u.matmul(&joint).matmul(&self.u_adj)
    }

    /// Rail-1-output marginal: the consistency map.
    fn consistency(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        partial_trace(&self.evolved_joint(rho), &self.joint_shape, 1)
            .expect("joint shape matches by construction")
    }

    /// Rail-2-output marginal: the detector output.
    fn output(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        partial_trace(&self.evolved_joint(rho), &self.joint_shape, 0)
            .expect("joint shape matches by construction")
    }
}

fn check_rail_state(dim: usize, w: &CtcWiring) -> Result<(), CtcError> {
    if dim != w.rail_dim() {
        return Err(CtcError::RailMismatch {
            state: dim,
            rail: w.rail_dim(),
        });
    }
    Ok(())
}

/// Clean roundoff drift and validate a solver-produced state.
fn finalize_state(m: &ComplexMatrix, shape: SubsystemShape) -> Result<DensityOperator, CtcError> {
    let h = m.hermitize();
    let trace = h.trace().re;
    let normalized = h.scale_re(1.0 / trace);
    Ok(DensityOperator::new(normalized, shape)?)
}

/// One application of the consistency map: the rail-1-output marginal of
/// U(ρ_in ⊗ ρ)U†. The state ρ is a fixed point of the interaction exactly
/// when this returns ρ.
pub fn deutsch_map(
    rho_in: &DensityOperator,
    rho: &DensityOperator,
    w: &CtcWiring,
) -> Result<DensityOperator, CtcError> {
    check_rail_state(rho_in.dim(), w)?;
    check_rail_state(rho.dim(), w)?;
    let map = RailMap::new(rho_in.matrix(), w);
    finalize_state(&map.consistency(rho.matrix()), w.rail_shape())
}

struct IterationOutcome {
    fixed_point: ComplexMatrix,
    iterations: usize,
    strategy: IterationStrategy,
}

/// Damped fixed-point iteration with stagnation escalation: requested damping,
/// then half damping, then Cesàro averaging over doubling windows.
fn iterate_to_fixed_point(
    map: &dyn Fn(&ComplexMatrix) -> ComplexMatrix,
    start: ComplexMatrix,
    opts: &DeutschOptions,
) -> Result<IterationOutcome, CtcError> {
    let mut rho = start;
    let mut iterations = 0usize;
    let mut last_residual = f64::INFINITY;

    for (stage, lambda) in [opts.damping, opts.damping * 0.5].into_iter().enumerate() {
        let mut history: Vec<f64> = Vec::new();
        let mut stalled = false;
        while iterations < opts.max_iter && !stalled {
            let mapped = map(&rho);
            let next = if (lambda - 1.0).abs() < 1e-15 {
                mapped
            } else {
                rho.scale_re(1.0 - lambda).add(&mapped.scale_re(lambda))
            };
            iterations += 1;
            let residual = trace_distance_matrices(&next, &rho);
            rho = next;
            last_residual = residual;
            if residual < opts.tol {
                return Ok(IterationOutcome {
                    fixed_point: rho,
                    iterations,
                    strategy: if stage == 0 {
                        IterationStrategy::Direct
                    } else {
                        IterationStrategy::Damped
                    },
                });
            }
            history.push(residual);
            if history.len() > STALL_WINDOW {
                let before = history[history.len() - 1 - STALL_WINDOW];
                if residual >= before {
                    stalled = true;
                }
            }
        }
        if !stalled {
            // Budget exhausted without oscillation; escalating will not help.
            return Err(CtcError::NonConvergence {
                iterations,
                residual: last_residual,
            });
        }
    }

    cesaro_pass(map, rho, iterations, opts)
}

/// Cesàro averaging of plain iterates over doubling windows; the map is
/// affine, so the window mean of an oscillating orbit is itself a fixed
/// point once the window covers the cycle.
fn cesaro_pass(
    map: &dyn Fn(&ComplexMatrix) -> ComplexMatrix,
    start: ComplexMatrix,
    mut iterations: usize,
    opts: &DeutschOptions,
) -> Result<IterationOutcome, CtcError> {
    let mut rho = start;
    let mut last_residual = f64::INFINITY;
    let mut window = 64usize;
    while iterations < opts.max_iter {
        let mut sum = ComplexMatrix::zeros(rho.rows(), rho.cols());
        let mut count = 0usize;
        while count < window && iterations < opts.max_iter {
            rho = map(&rho);
            iterations += 1;
            count += 1;
            sum = sum.add(&rho);
        }
        let candidate = sum.scale_re(1.0 / count as f64);
        let residual = trace_distance_matrices(&map(&candidate), &candidate);
        last_residual = residual;
        if residual < opts.tol {
            return Ok(IterationOutcome {
                fixed_point: candidate,
                iterations,
                strategy: IterationStrategy::CesaroAveraged,
            });
        }
        window *= 2;
    }
    Err(CtcError::NonConvergence {
        iterations,
        residual: last_residual,
    })
}

/// Solve the consistency condition by iterating the equivalent circuit from
/// the maximally mixed state.
pub fn solve_deutsch_iterative(
    rho_in: &DensityOperator,
    w: &CtcWiring,
    opts: &DeutschOptions,
) -> Result<CtcSolution, CtcError> {
    check_rail_state(rho_in.dim(), w)?;
    let d = w.rail_dim();
    let rail_map = RailMap::new(rho_in.matrix(), w);
    let map = |m: &ComplexMatrix| rail_map.consistency(m);
    let start = ComplexMatrix::identity(d).scale_re(1.0 / d as f64);
    let outcome = iterate_to_fixed_point(&map, start, opts)?;

    let fixed_matrix = outcome.fixed_point;
    let residual = trace_distance_matrices(&rail_map.consistency(&fixed_matrix), &fixed_matrix);
    let fixed_point = finalize_state(&fixed_matrix, w.rail_shape())?;
    let output = finalize_state(&rail_map.output(fixed_point.matrix()), w.rail_shape())?;
    Ok(CtcSolution {
        fixed_point,
        output,
        method: SolveMethod::DeutschIterative,
        iterations: outcome.iterations,
        residual,
        strategy: outcome.strategy,
        fixed_point_set_dimension: None,
        weight: None,
    })
}

fn vec_index(i: usize, j: usize, d: usize) -> usize {
    i * d + j
}

fn unvec(v: &[Complex64], d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |i, j| v[vec_index(i, j, d)])
}

/// Hilbert-Schmidt inner product Tr(A·B); real for Hermitian A, B.
fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.matmul(b).trace().re
}

/// Real Gram-Schmidt over Hermitian matrices; drops near-dependent vectors.
fn orthonormalize_hermitian(candidates: Vec<ComplexMatrix>) -> Vec<ComplexMatrix> {
    let mut basis: Vec<ComplexMatrix> = Vec::new();
    for mut cand in candidates {
        for b in &basis {
            let coef = hs_inner(b, &cand);
            cand = cand.sub(&b.scale_re(coef));
        }
        let norm = cand.frobenius_norm();
        if norm > 1e-8 {
            basis.push(cand.scale_re(1.0 / norm));
        }
    }
    basis
}

fn entropy_bits(m: &ComplexMatrix) -> f64 {
    eig_hermitian(&m.hermitize())
        .expect("hermitized matrix")
        .eigenvalues
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .sum()
}

/// Project onto the affine slice M₀ + span{dirs}.
fn project_to_slice(
    x: &ComplexMatrix,
    m0: &ComplexMatrix,
    dirs: &[ComplexMatrix],
) -> ComplexMatrix {
    let mut out = m0.clone();
    let delta = x.sub(m0);
    for d in dirs {
        out = out.add(&d.scale_re(hs_inner(d, &delta)));
    }
    out
}

/// Alternate eigenvalue clipping with slice projection until the point is
/// both PSD and on the fixed slice.
fn psd_repair(x: &ComplexMatrix, m0: &ComplexMatrix, dirs: &[ComplexMatrix]) -> ComplexMatrix {
    let mut current = project_to_slice(x, m0, dirs);
    for _ in 0..100 {
        let h = current.hermitize();
        let eig = eig_hermitian(&h).expect("hermitized matrix");
        if eig.eigenvalues[0] >= -1e-12 {
            return h;
        }
        let n = h.rows();
        let v = &eig.eigenvectors;
        let clipped = ComplexMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(eig.eigenvalues[i].max(0.0), 0.0)
            } else {
                Complex64::ZERO
            }
        });
        let mut repaired = v.matmul(&clipped).matmul(&v.adjoint());
        let trace = repaired.trace().re;
        if trace > 1e-12 {
            repaired = repaired.scale_re(1.0 / trace);
        }
        current = project_to_slice(&repaired, m0, dirs);
    }
    current.hermitize()
}

/// Gradient of the von Neumann entropy (in bits): −(log₂ρ + I/ln 2).
fn entropy_gradient(rho: &ComplexMatrix) -> ComplexMatrix {
    let eig = eig_hermitian(&rho.hermitize()).expect("hermitized matrix");
    let n = rho.rows();
    let v = &eig.eigenvectors;
    let diag = ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            let l = eig.eigenvalues[i].max(1e-300);
            Complex64::new(-(l.log2() + std::f64::consts::LOG2_E), 0.0)
        } else {
            Complex64::ZERO
        }
    });
    v.matmul(&diag).matmul(&v.adjoint()).hermitize()
}

/// Maximize entropy over the PSD part of the affine fixed slice by projected
/// gradient ascent with eigenvalue-clipping repair. Returns `None` if no
/// feasible point is found.
fn max_entropy_member(m0: &ComplexMatrix, dirs: &[ComplexMatrix]) -> Option<ComplexMatrix> {
    let mut rho = psd_repair(m0, m0, dirs);
    let eig = eig_hermitian(&rho).ok()?;
    if eig.eigenvalues[0] < -1e-9 {
        return None;
    }
    if dirs.is_empty() {
        return Some(rho);
    }
    let mut entropy = entropy_bits(&rho);
    for _ in 0..300 {
        let grad = entropy_gradient(&rho);
        let mut projected = ComplexMatrix::zeros(rho.rows(), rho.cols());
        for d in dirs {
            projected = projected.add(&d.scale_re(hs_inner(d, &grad)));
        }
        let gnorm = projected.frobenius_norm();
        if gnorm < 1e-9 {
            break;
        }
        let direction = projected.scale_re(1.0 / gnorm);
        let mut step = 0.5;
        let mut improved = false;
        while step > 1e-8 {
            let trial = psd_repair(&rho.add(&direction.scale_re(step)), m0, dirs);
            let trial_entropy = entropy_bits(&trial);
            if trial_entropy > entropy + 1e-14 {
                rho = trial;
                entropy = trial_entropy;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    Some(rho)
}

/// Solve the consistency condition through the vectorized superoperator:
/// kernel of (L − I), Hermitian unit-trace slice, maximum-entropy member.
/// Serves as an independent check on the iterative route and certifies
/// whether the fixed point is unique.
pub fn solve_deutsch_nullspace(
    rho_in: &DensityOperator,
    w: &CtcWiring,
    opts: &DeutschOptions,
) -> Result<CtcSolution, CtcError> {
    check_rail_state(rho_in.dim(), w)?;
    let d = w.rail_dim();
    let dd = d * d;
    let rail_map = RailMap::new(rho_in.matrix(), w);

    // Column k = vec(map(E_k)) over the matrix-unit basis.
    let mut l_op = ComplexMatrix::zeros(dd, dd);
    for s in 0..d {
        for t in 0..d {
            let mut unit = ComplexMatrix::zeros(d, d);
            unit.set(s, t, Complex64::ONE);
            let image = rail_map.consistency(&unit);
            let col = vec_index(s, t, d);
            for i in 0..d {
                for j in 0..d {
                    l_op.set(vec_index(i, j, d), col, image.at(i, j));
                }
            }
        }
    }

    let a = l_op.sub(&ComplexMatrix::identity(dd));
    let h = a.adjoint().matmul(&a).hermitize();
    let eig = eig_hermitian(&h)?;
    let scale = eig.eigenvalues.last().copied().unwrap_or(0.0).max(1.0);
    let kernel: Vec<Vec<Complex64>> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|&(_, &l)| l <= KERNEL_EIG_TOL * scale)
        .map(|(k, _)| (0..dd).map(|i| eig.eigenvectors.at(i, k)).collect())
        .collect();

    // Hermitian basis of the fixed subspace (closed under the adjoint since
    // the map preserves hermiticity).
    let mut candidates = Vec::new();
    for v in &kernel {
        let x = unvec(v, d);
        let xa = x.adjoint();
        candidates.push(x.add(&xa).scale_re(0.5));
        candidates.push(x.sub(&xa).scale(Complex64::new(0.0, -0.5)));
    }
    let basis = orthonormalize_hermitian(candidates);

    // The trace functional restricted to the span is represented by P.
    let mut p = ComplexMatrix::zeros(d, d);
    for b in &basis {
        p = p.add(&b.scale_re(b.trace().re));
    }
    let trace_p = p.trace().re;

    let solution_core = if trace_p > 1e-10 {
        let m0 = p.scale_re(1.0 / trace_p);
        let p_hat = p.scale_re(1.0 / p.frobenius_norm());
        let traceless: Vec<ComplexMatrix> = basis
            .iter()
            .map(|b| b.sub(&p_hat.scale_re(hs_inner(&p_hat, b))))
            .collect();
        let dirs = orthonormalize_hermitian(traceless);
        let dim = dirs.len();
        max_entropy_member(&m0, &dirs).map(|candidate| (candidate, dim))
    } else {
        None
    };

    let (candidate, dim, mut strategy) = match solution_core {
        Some((candidate, dim)) => (candidate, dim, IterationStrategy::Direct),
        None => {
            // Degenerate kernel numerics; fall back to the iterative route.
            let fallback = solve_deutsch_iterative(rho_in, w, opts)?;
            (
                fallback.fixed_point.matrix().clone(),
                0,
                IterationStrategy::IterativeFallback,
            )
        }
    };

    // Polish: damped map iterations contract kernel-estimation noise in the
    // non-fixed directions without moving the fixed components.
    let mut polished = candidate;
    let mut residual = trace_distance_matrices(&rail_map.consistency(&polished), &polished);
    for _ in 0..500 {
        if residual <= opts.tol {
            break;
        }
        let mapped = rail_map.consistency(&polished);
        polished = polished.scale_re(0.5).add(&mapped.scale_re(0.5));
        residual = trace_distance_matrices(&rail_map.consistency(&polished), &polished);
    }

    let final_matrix = if residual <= 10.0 * opts.tol {
        polished
    } else {
        let fallback = solve_deutsch_iterative(rho_in, w, opts)?;
        residual = fallback.residual;
        strategy = IterationStrategy::IterativeFallback;
        fallback.fixed_point.matrix().clone()
    };

    let fixed_point = finalize_state(&final_matrix, w.rail_shape())?;
    let output = finalize_state(&rail_map.output(fixed_point.matrix()), w.rail_shape())?;
    Ok(CtcSolution {
        fixed_point,
        output,
        method: SolveMethod::DeutschNullspace,
        iterations: 0,
        residual,
        strategy,
        fixed_point_set_dimension: Some(dim),
        weight: None,
    })
}

/// The effective (generally non-unitary) operator of the path-integral
/// condition: ⟨b|C|a⟩ = Σ_j ⟨j, b| U |a, j⟩, rescaled so that Tr(C†C) equals
/// the rail dimension (SWAP wiring then gives exactly the identity and
/// consistency weight 1). A zero matrix is a legal return: no input has a
/// consistent history.
pub fn pctc_operator(w: &CtcWiring) -> ComplexMatrix {
    let d = w.rail_dim();
    let u = w.gate().matrix();
    let mut c = ComplexMatrix::zeros(d, d);
    for b in 0..d {
        for a in 0..d {
            let mut acc = Complex64::ZERO;
            for j in 0..d {
                acc += u.at(j * d + b, a * d + j);
            }
            c.set(b, a, acc);
        }
    }
    let fro = c.frobenius_norm();
    if fro > 1e-12 {
        c.scale_re((d as f64).sqrt() / fro)
    } else {
        ComplexMatrix::zeros(d, d)
    }
}

/// Post-selected evolution of a pure state: C|ψ⟩ renormalized, plus the
/// pre-normalization weight ‖C|ψ⟩‖² (the relative likelihood of the
/// consistent history).
pub fn apply_pctc(
    state: &PureState,
    w: &CtcWiring,
    paradox_eps: f64,
) -> Result<(PureState, f64), CtcError> {
    check_rail_state(state.dim(), w)?;
    let c = pctc_operator(w);
    let mapped = c.matvec(state.amplitudes());
    let weight: f64 = mapped.iter().map(|z| z.norm_sqr()).sum();
    if weight < paradox_eps {
        return Err(CtcError::Paradox {
            weight,
            threshold: paradox_eps,
        });
    }
    let scale = weight.sqrt();
    let amplitudes = mapped.iter().map(|z| z / scale).collect();
    Ok((PureState::new(amplitudes, state.shape().clone())?, weight))
}

/// Post-selected evolution of a density operator: CρC†/Tr(CρC†) with weight
/// Tr(CρC†).
pub fn apply_pctc_density(
    rho: &DensityOperator,
    w: &CtcWiring,
    paradox_eps: f64,
) -> Result<(DensityOperator, f64), CtcError> {
    check_rail_state(rho.dim(), w)?;
    let c = pctc_operator(w);
    let mapped = c.matmul(rho.matrix()).matmul(&c.adjoint());
    let weight = mapped.trace().re;
    if weight < paradox_eps {
        return Err(CtcError::Paradox {
            weight,
            threshold: paradox_eps,
        });
    }
    Ok((finalize_state(&mapped, rho.shape().clone())?, weight))
}

/// Post-selected solve packaged like the fixed-point solvers, for uniform
/// reporting.
pub fn solve_pctc(
    rho_in: &DensityOperator,
    w: &CtcWiring,
    paradox_eps: f64,
) -> Result<CtcSolution, CtcError> {
    let (output, weight) = apply_pctc_density(rho_in, w, paradox_eps)?;
    Ok(CtcSolution {
        fixed_point: output.clone(),
        output,
        method: SolveMethod::Pctc,
        iterations: 0,
        residual: 0.0,
        strategy: IterationStrategy::Direct,
        fixed_point_set_dimension: None,
        weight: Some(weight),
    })
}

/// Boundary condition selector for the channel extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CtcMethod {
    Deutsch,
    Pctc,
}

impl std::str::FromStr for CtcMethod {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "deutsch" => Ok(CtcMethod::Deutsch),
            "pctc" => Ok(CtcMethod::Pctc),
            other => Err(format!(
                "unknown method '{other}' (expected deutsch or pctc)"
            )),
        }
    }
}

/// Result of sending one arm of a joint state through the CTC.
#[derive(Debug, Clone)]
pub struct EntangledCtcResult {
    pub joint_output: DensityOperator,
    /// Fixed point of the consistency condition (Deutsch path only).
    pub ctc_state: Option<DensityOperator>,
    /// Consistency weight (post-selected path only).
    pub weight: Option<f64>,
    pub iterations: usize,
    pub residual: f64,
}

/// Pass tensor factor `ctc_factor` of a bipartite state through the CTC.
///
/// Deutsch path: the consistency condition is solved with the reduced state
/// of the travelling arm, and the resulting linear channel
/// σ ↦ Tr₁[U(σ ⊗ ρ*)U†] is applied to that factor of the joint state.
/// Post-selected path: (I ⊗ C) acts on the joint state, which is then
/// renormalized.
pub fn extend_to_entangled(
    joint: &DensityOperator,
    ctc_factor: usize,
    w: &CtcWiring,
    method: CtcMethod,
    opts: &DeutschOptions,
    paradox_eps: f64,
) -> Result<EntangledCtcResult, CtcError> {
    let dims = joint.shape().dims().to_vec();
    if dims.len() != 2 {
        return Err(CtcError::NotBipartite {
            factors: dims.len(),
        });
    }
    if ctc_factor > 1 {
        return Err(LinalgError::FactorOutOfRange {
            index: ctc_factor,
            count: 2,
        }
        .into());
    }
    check_rail_state(dims[ctc_factor], w)?;

    if ctc_factor == 0 {
        // Exchange factors, act on the second, exchange back.
        let p = factor_exchange(dims[0], dims[1]);
        let swapped_shape = SubsystemShape::new(vec![dims[1], dims[0]]).unwrap();
        let swapped = DensityOperator::new(
            p.matmul(joint.matrix()).matmul(&p.adjoint()).hermitize(),
            swapped_shape,
        )?;
        let result = extend_to_entangled(&swapped, 1, w, method, opts, paradox_eps)?;
        let p_back = factor_exchange(dims[1], dims[0]);
        let joint_output = DensityOperator::new(
            p_back
                .matmul(result.joint_output.matrix())
                .matmul(&p_back.adjoint())
                .hermitize(),
            joint.shape().clone(),
        )?;
        return Ok(EntangledCtcResult {
            joint_output,
            ..result
        });
    }

    let d_spectator = dims[0];
    let d = dims[1];
    match method {
        CtcMethod::Deutsch => {
            let arm = joint.reduced(0)?;
            let solution = solve_deutsch_iterative(&arm, w, opts)?;
            let rail_map = RailMap::new(arm.matrix(), w);
            let rho_star = solution.fixed_point.matrix();
            // Apply the output channel blockwise over spectator matrix units.
            let total = d_spectator * d;
            let mut out = ComplexMatrix::zeros(total, total);
            for i in 0..d_spectator {
                for j in 0..d_spectator {
                    let block = ComplexMatrix::from_fn(d, d, |a, b| {
                        joint.matrix().at(i * d + a, j * d + b)
                    });
                    let evolved = rail_map
                        .u
                        .matmul(&block.kron(rho_star))
                        .matmul(&rail_map.u_adj);
                    let mapped =
                        partial_trace(&evolved, &rail_map.joint_shape, 0).expect("shape fixed");
                    for a in 0..d {
                        for b in 0..d {
                            out.set(i * d + a, j * d + b, mapped.at(a, b));
                        }
                    }
                }
            }
            Ok(EntangledCtcResult {
                joint_output: finalize_state(&out, joint.shape().clone())?,
                ctc_state: Some(solution.fixed_point),
                weight: None,
                iterations: solution.iterations,
                residual: solution.residual,
            })
        }
        CtcMethod::Pctc => {
            let c = pctc_operator(w);
            let c_full = ComplexMatrix::identity(d_spectator).kron(&c);
            let mapped = c_full.matmul(joint.matrix()).matmul(&c_full.adjoint());
            let weight = mapped.trace().re;
            if weight < paradox_eps {
                return Err(CtcError::Paradox {
                    weight,
                    threshold: paradox_eps,
                });
            }
            Ok(EntangledCtcResult {
                joint_output: finalize_state(&mapped, joint.shape().clone())?,
                ctc_state: None,
                weight: Some(weight),
                iterations: 0,
                residual: 0.0,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{
        bell_state, fidelity, gates, haar_random_unitary, purity, random_density_operator,
        random_pure_state, trace_distance, BellKind, Rail,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cnot_wiring() -> CtcWiring {
        CtcWiring::new(gates::cnot(Rail::One)).unwrap()
    }

    fn swap_wiring() -> CtcWiring {
        CtcWiring::new(gates::swap()).unwrap()
    }

    /// X applied to rail 1 after SWAP: the self-inconsistent bit-flip loop.
    fn grandfather_wiring() -> CtcWiring {
        let x_on_rail1 = UnitaryGate::new(
            gates::pauli_x().matrix().kron(&ComplexMatrix::identity(2)),
            SubsystemShape::qubits(2),
        )
        .unwrap();
        CtcWiring::new(x_on_rail1.compose_after(&gates::swap()).unwrap()).unwrap()
    }

    fn qubit_density(diag0: f64, diag1: f64) -> DensityOperator {
        DensityOperator::new(
            ComplexMatrix::from_real_rows(&[&[diag0, 0.0], &[0.0, diag1]]),
            SubsystemShape::qubits(1),
        )
        .unwrap()
    }

    #[test]
    fn cnot_collision_fixed_point_is_confirmed_by_the_map() {
        let (alpha, beta) = (0.6, 0.8);
        let rho_in = PureState::qubit(c(alpha, 0.0), c(beta, 0.0))
            .unwrap()
            .projector();
        let rho = qubit_density(alpha * alpha, beta * beta);
        let mapped = deutsch_map(&rho_in, &rho, &cnot_wiring()).unwrap();
        assert!(trace_distance(&mapped, &rho).unwrap() < 1e-12);
    }

    #[test]
    fn swap_makes_the_map_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let w = swap_wiring();
        let rho_in = random_density_operator(SubsystemShape::qubits(1), &mut rng);
        for _ in 0..5 {
            let rho = random_density_operator(SubsystemShape::qubits(1), &mut rng);
            let mapped = deutsch_map(&rho_in, &rho, &w).unwrap();
            assert!(trace_distance(&mapped, &rho).unwrap() < 1e-12);
        }
    }

    #[test]
    fn cnot_on_balanced_input_fixes_maximally_mixed() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let rho_in = PureState::qubit(c(h, 0.0), c(h, 0.0)).unwrap().projector();
        let mixed = DensityOperator::maximally_mixed(SubsystemShape::qubits(1));
        let mapped = deutsch_map(&rho_in, &mixed, &cnot_wiring()).unwrap();
        assert!(trace_distance(&mapped, &mixed).unwrap() < 1e-12);
    }

    #[test]
    fn iterative_solver_reproduces_cnot_worked_solution() {
        let opts = DeutschOptions::default();
        let w = cnot_wiring();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10 {
            let psi = random_pure_state(SubsystemShape::qubits(1), &mut rng);
            let (alpha, beta) = (psi.amplitudes()[0], psi.amplitudes()[1]);
            let solution = solve_deutsch_iterative(&psi.projector(), &w, &opts).unwrap();
            let a2 = alpha.norm_sqr();
            let b2 = beta.norm_sqr();
            let expected_fp = qubit_density(a2, b2);
            let expected_out = qubit_density(a2 * a2 + b2 * b2, 2.0 * a2 * b2);
            assert!(trace_distance(&solution.fixed_point, &expected_fp).unwrap() < 1e-9);
            assert!(trace_distance(&solution.output, &expected_out).unwrap() < 1e-9);
            assert!(solution.residual < 1e-9);
        }

        // Balanced amplitudes: fixed point I/2, fully dephased output.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = PureState::qubit(c(h, 0.0), c(h, 0.0)).unwrap();
        let solution = solve_deutsch_iterative(&psi.projector(), &w, &opts).unwrap();
        let mixed = DensityOperator::maximally_mixed(SubsystemShape::qubits(1));
        assert!(trace_distance(&solution.fixed_point, &mixed).unwrap() < 1e-10);
        assert!(trace_distance(&solution.output, &mixed).unwrap() < 1e-10);
    }

    #[test]
    fn swap_wiring_returns_the_input_unchanged() {
        let opts = DeutschOptions::default();
        let w = swap_wiring();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let rho_in = random_density_operator(SubsystemShape::qubits(1), &mut rng);
            let solution = solve_deutsch_iterative(&rho_in, &w, &opts).unwrap();
            let mixed = DensityOperator::maximally_mixed(SubsystemShape::qubits(1));
            assert!(trace_distance(&solution.fixed_point, &mixed).unwrap() < 1e-10);
            assert!(trace_distance(&solution.output, &rho_in).unwrap() < 1e-10);
        }
    }

    #[test]
    fn grandfather_gate_fixed_point_is_maximally_mixed() {
        let opts = DeutschOptions::default();
        let w = grandfather_wiring();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let rho_in = random_density_operator(SubsystemShape::qubits(1), &mut rng);
        let solution = solve_deutsch_iterative(&rho_in, &w, &opts).unwrap();
        let mixed = DensityOperator::maximally_mixed(SubsystemShape::qubits(1));
        assert!(trace_distance(&solution.fixed_point, &mixed).unwrap() < 1e-10);

        // The consistency map for this gate is ρ ↦ XρX.
        let rho = random_density_operator(SubsystemShape::qubits(1), &mut rng);
        let mapped = deutsch_map(&rho_in, &rho, &w).unwrap();
        let x = gates::pauli_x();
        let conjugated =
            DensityOperator::new(x.conjugate(rho.matrix()), SubsystemShape::qubits(1)).unwrap();
        assert!(trace_distance(&mapped, &conjugated).unwrap() < 1e-12);

        // Direct evaluation of the output equation at the fixed point: the
        // swapped rail hands the input through to the detector unchanged.
        assert!(trace_distance(&solution.output, &rho_in).unwrap() < 1e-10);
    }

    #[test]
    fn nullspace_solver_handles_the_degenerate_and_unique_cases() {
        let opts = DeutschOptions::default();
        let mixed = DensityOperator::maximally_mixed(SubsystemShape::qubits(1));

        // Balanced CNOT input: one free real direction, entropy picks I/2.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = PureState::qubit(c(h, 0.0), c(h, 0.0)).unwrap();
        let solution = solve_deutsch_nullspace(&psi.projector(), &cnot_wiring(), &opts).unwrap();
        assert_eq!(solution.fixed_point_set_dimension, Some(1));
        assert!(trace_distance(&solution.fixed_point, &mixed).unwrap() < 1e-8);

        // SWAP: every state is fixed (3 free directions on a qubit).
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let rho_in = random_density_operator(SubsystemShape::qubits(1), &mut rng);
        let solution = solve_deutsch_nullspace(&rho_in, &swap_wiring(), &opts).unwrap();
        assert_eq!(solution.fixed_point_set_dimension, Some(3));
        assert!(trace_distance(&solution.fixed_point, &mixed).unwrap() < 1e-8);

        // CNOT on |1⟩: unique fixed point |1⟩⟨1|.
        let one = PureState::qubit(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let solution = solve_deutsch_nullspace(&one.projector(), &cnot_wiring(), &opts).unwrap();
        assert_eq!(solution.fixed_point_set_dimension, Some(0));
        let expected = qubit_density(0.0, 1.0);
        assert!(trace_distance(&solution.fixed_point, &expected).unwrap() < 1e-9);
    }

    #[test]
    fn solvers_agree_when_the_fixed_point_is_unique() {
        let opts = DeutschOptions::default();
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let mut unique_cases = 0;
        for _ in 0..25 {
            let gate = haar_random_unitary(SubsystemShape::qubits(2), &mut rng);
            let w = CtcWiring::new(gate).unwrap();
            let rho_in = random_pure_state(SubsystemShape::qubits(1), &mut rng).projector();
            let iterative = solve_deutsch_iterative(&rho_in, &w, &opts).unwrap();
            assert!(iterative.residual <= 10.0 * opts.tol);
            let nullspace = solve_deutsch_nullspace(&rho_in, &w, &opts).unwrap();
            if nullspace.fixed_point_set_dimension == Some(0) {
                unique_cases += 1;
                let gap = trace_distance(&iterative.fixed_point, &nullspace.fixed_point).unwrap();
                assert!(gap < 1e-6, "solver disagreement {gap:.3e}");
            }
        }
        assert!(unique_cases > 0);
    }

    #[test]
    fn pctc_operator_worked_examples() {
        // CNOT: both basis trajectories land on |0⟩.
        let c_op = pctc_operator(&cnot_wiring());
        let expected = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 0.0]]);
        assert!(c_op.max_abs_diff(&expected) < 1e-12);

        // SWAP: straight-through wiring.
        let c_op = pctc_operator(&swap_wiring());
        assert!(c_op.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);

        // Grandfather gate: no consistent history at all.
        let c_op = pctc_operator(&grandfather_wiring());
        assert!(c_op.max_abs() < 1e-12);
    }

    #[test]
    fn pctc_output_is_the_ground_state_when_consistent() {
        let w = cnot_wiring();
        let zero = PureState::basis(SubsystemShape::qubits(1), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..10 {
            let psi = random_pure_state(SubsystemShape::qubits(1), &mut rng);
            let sum = psi.amplitudes()[0] + psi.amplitudes()[1];
            if sum.norm() < 0.1 {
                continue;
            }
            let (out, weight) = apply_pctc(&psi, &w, DEFAULT_PARADOX_EPS).unwrap();
            assert!(out.fidelity_with(&zero) > 1.0 - 1e-12);
            assert!((weight - sum.norm_sqr()).abs() < 1e-12);
        }
    }

    #[test]
    fn pctc_raises_paradox_on_annihilated_input() {
        let w = cnot_wiring();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let minus = PureState::qubit(c(h, 0.0), c(-h, 0.0)).unwrap();
        match apply_pctc(&minus, &w, DEFAULT_PARADOX_EPS) {
            Err(CtcError::Paradox { weight, .. }) => assert!(weight < 1e-15),
            other => panic!("expected paradox, got {other:?}"),
        }
        // The grandfather gate suppresses every input.
        let zero = PureState::basis(SubsystemShape::qubits(1), 0);
        assert!(matches!(
            apply_pctc(&zero, &grandfather_wiring(), DEFAULT_PARADOX_EPS),
            Err(CtcError::Paradox { .. })
        ));
    }

    #[test]
    fn pctc_swap_passes_any_state_with_unit_weight() {
        let w = swap_wiring();
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let psi = random_pure_state(SubsystemShape::qubits(1), &mut rng);
        let (out, weight) = apply_pctc(&psi, &w, DEFAULT_PARADOX_EPS).unwrap();
        assert!(out.fidelity_with(&psi) > 1.0 - 1e-12);
        assert!((weight - 1.0).abs() < 1e-12);

        let rho = random_density_operator(SubsystemShape::qubits(1), &mut rng);
        let (out, weight) = apply_pctc_density(&rho, &w, DEFAULT_PARADOX_EPS).unwrap();
        assert!(trace_distance(&out, &rho).unwrap() < 1e-12);
        assert!((weight - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entangled_extension_contrasts_the_two_conditions() {
        let opts = DeutschOptions::default();
        let w = cnot_wiring();
        let joint = bell_state(BellKind::PhiPlus).projector();

        // Post-selected: the joint state collapses to |+⟩ ⊗ |0⟩ and the
        // spectator marginal becomes pure.
        let pctc =
            extend_to_entangled(&joint, 1, &w, CtcMethod::Pctc, &opts, DEFAULT_PARADOX_EPS)
                .unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = PureState::qubit(c(h, 0.0), c(h, 0.0)).unwrap();
        let zero = PureState::basis(SubsystemShape::qubits(1), 0);
        let expected = plus.tensor(&zero).projector();
        assert!(fidelity(&pctc.joint_output, &expected).unwrap() > 1.0 - 1e-10);
        let marginal = pctc.joint_output.reduced(1).unwrap();
        assert!(purity(&marginal) > 0.999);
        assert!(fidelity(&marginal, &plus.projector()).unwrap() > 1.0 - 1e-10);

        // Density-operator condition: complete decoherence, spectator
        // marginal untouched at I/2.
        let deutsch =
            extend_to_entangled(&joint, 1, &w, CtcMethod::Deutsch, &opts, DEFAULT_PARADOX_EPS)
                .unwrap();
        let mixed4 = DensityOperator::maximally_mixed(SubsystemShape::qubits(2));
        assert!(trace_distance(&deutsch.joint_output, &mixed4).unwrap() < 1e-10);
        let marginal = deutsch.joint_output.reduced(1).unwrap();
        let mixed2 = DensityOperator::maximally_mixed(SubsystemShape::qubits(1));
        assert!(trace_distance(&marginal, &mixed2).unwrap() < 1e-10);
    }

    #[test]
    fn entangled_extension_factorizes_on_product_states() {
        let opts = DeutschOptions::default();
        let w = cnot_wiring();
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let spectator = random_density_operator(SubsystemShape::qubits(1), &mut rng);
        let arm = PureState::qubit(c(0.6, 0.0), c(0.8, 0.0)).unwrap();
        let joint = DensityOperator::new(
            spectator.matrix().kron(arm.projector().matrix()),
            SubsystemShape::qubits(2),
        )
        .unwrap();

        for method in [CtcMethod::Deutsch, CtcMethod::Pctc] {
            let result =
                extend_to_entangled(&joint, 1, &w, method, &opts, DEFAULT_PARADOX_EPS).unwrap();
            let single = match method {
                CtcMethod::Deutsch => {
                    solve_deutsch_iterative(&arm.projector(), &w, &opts)
                        .unwrap()
                        .output
                }
                CtcMethod::Pctc => {
                    apply_pctc_density(&arm.projector(), &w, DEFAULT_PARADOX_EPS)
                        .unwrap()
                        .0
                }
            };
            let expected = DensityOperator::new(
                spectator.matrix().kron(single.matrix()),
                SubsystemShape::qubits(2),
            )
            .unwrap();
            assert!(trace_distance(&result.joint_output, &expected).unwrap() < 1e-9);
        }
    }

    #[test]
    fn entangled_extension_on_the_first_factor_mirrors_the_second() {
        let opts = DeutschOptions::default();
        let w = cnot_wiring();
        let joint = bell_state(BellKind::PhiPlus).projector();
        let on_second =
            extend_to_entangled(&joint, 1, &w, CtcMethod::Pctc, &opts, DEFAULT_PARADOX_EPS)
                .unwrap();
        let on_first =
            extend_to_entangled(&joint, 0, &w, CtcMethod::Pctc, &opts, DEFAULT_PARADOX_EPS)
                .unwrap();
        // The Bell state is exchange-symmetric, so the two outputs are
        // factor mirrors of each other.
        let p = factor_exchange(2, 2);
        let mirrored = p
            .matmul(on_first.joint_output.matrix())
            .matmul(&p.adjoint());
        assert!(mirrored.max_abs_diff(on_second.joint_output.matrix()) < 1e-10);
    }

    #[test]
    fn deutsch_channel_is_nonlinear_in_the_input() {
        let opts = DeutschOptions::default();
        let w = cnot_wiring();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let sigma1 = PureState::basis(SubsystemShape::qubits(1), 0).projector();
        let sigma2 = PureState::qubit(c(h, 0.0), c(h, 0.0)).unwrap().projector();
        let mix = DensityOperator::new(
            sigma1.matrix().add(sigma2.matrix()).scale_re(0.5),
            SubsystemShape::qubits(1),
        )
        .unwrap();

        let out_mix = solve_deutsch_iterative(&mix, &w, &opts).unwrap().output;
        let out1 = solve_deutsch_iterative(&sigma1, &w, &opts).unwrap().output;
        let out2 = solve_deutsch_iterative(&sigma2, &w, &opts).unwrap().output;
        let mixed_outputs = DensityOperator::new(
            out1.matrix().add(out2.matrix()).scale_re(0.5),
            SubsystemShape::qubits(1),
        )
        .unwrap();
        let gap = trace_distance(&out_mix, &mixed_outputs).unwrap();
        assert!(gap > 0.1, "nonlinearity gap {gap}");
    }

    #[test]
    fn returned_states_satisfy_density_invariants() {
        let opts = DeutschOptions::default();
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let gate = haar_random_unitary(SubsystemShape::qubits(2), &mut rng);
        let w = CtcWiring::new(gate).unwrap();
        let rho_in = random_density_operator(SubsystemShape::qubits(1), &mut rng);
        let solution = solve_deutsch_iterative(&rho_in, &w, &opts).unwrap();
        for state in [&solution.fixed_point, &solution.output] {
            let eigs = state.eigenvalues();
            assert!(eigs[0] >= -1e-10);
            let trace: f64 = eigs.iter().sum();
            assert!((trace - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn stagnation_escalates_to_damping() {
        // Synthetic affine map with spectrum {−1}: plain iteration flips
        // between two points forever, half damping lands exactly on the
        // fixed point diag(0.7, 0.3).
        let target = ComplexMatrix::from_real_rows(&[&[0.7, 0.0], &[0.0, 0.3]]);
        let reflect = {
            let target = target.clone();
            move |m: &ComplexMatrix| target.scale_re(2.0 * m.trace().re).sub(m)
        };
        let start = ComplexMatrix::identity(2).scale_re(0.5);
        let opts = DeutschOptions::default();
        let outcome = iterate_to_fixed_point(&reflect, start, &opts).unwrap();
        assert!(matches!(
            outcome.strategy,
            IterationStrategy::Damped | IterationStrategy::CesaroAveraged
        ));
        assert!(outcome.fixed_point.max_abs_diff(&target) < 1e-9);
    }

    #[test]
    fn cesaro_pass_averages_out_a_two_cycle() {
        // Plain iteration of the reflection flips between two points; the
        // window mean is the fixed point exactly.
        let target = ComplexMatrix::from_real_rows(&[&[0.7, 0.0], &[0.0, 0.3]]);
        let reflect = {
            let target = target.clone();
            move |m: &ComplexMatrix| target.scale_re(2.0 * m.trace().re).sub(m)
        };
        let start = ComplexMatrix::identity(2).scale_re(0.5);
        let opts = DeutschOptions::default();
        let outcome = cesaro_pass(&reflect, start, 0, &opts).unwrap();
        assert_eq!(outcome.strategy, IterationStrategy::CesaroAveraged);
        assert!(outcome.fixed_point.max_abs_diff(&target) < 1e-9);
    }

    /// Partial-swap wiring cos φ·I + i sin φ·SWAP: the map contracts toward
    /// ρ_in at rate sin²φ.
    fn partial_swap_wiring(phi: f64) -> CtcWiring {
        let u = ComplexMatrix::identity(4)
            .scale(c(phi.cos(), 0.0))
            .add(&gates::swap().matrix().scale(c(0.0, phi.sin())));
        CtcWiring::new(UnitaryGate::new(u, SubsystemShape::qubits(2)).unwrap()).unwrap()
    }

    #[test]
    fn slow_contraction_reports_nonconvergence() {
        // Rate 1 − 1e−6: a 2000-step budget runs out honestly.
        let w = partial_swap_wiring(std::f64::consts::FRAC_PI_2 - 1e-3);
        let rho_in = PureState::qubit(c(0.6, 0.0), c(0.8, 0.0))
            .unwrap()
            .projector();
        let opts = DeutschOptions {
            max_iter: 2_000,
            ..DeutschOptions::default()
        };
        match solve_deutsch_iterative(&rho_in, &w, &opts) {
            Err(CtcError::NonConvergence {
                iterations,
                residual,
            }) => {
                assert_eq!(iterations, 2_000);
                assert!(residual > 0.0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn mild_partial_swap_converges_to_the_input() {
        let w = partial_swap_wiring(std::f64::consts::FRAC_PI_2 - 0.05);
        let rho_in = PureState::qubit(c(0.6, 0.0), c(0.8, 0.0))
            .unwrap()
            .projector();
        let opts = DeutschOptions {
            max_iter: 50_000,
            ..DeutschOptions::default()
        };
        let solution = solve_deutsch_iterative(&rho_in, &w, &opts).unwrap();
        assert!(trace_distance(&solution.fixed_point, &rho_in).unwrap() < 1e-6);
        assert!(trace_distance(&solution.output, &rho_in).unwrap() < 1e-6);
    }
}
