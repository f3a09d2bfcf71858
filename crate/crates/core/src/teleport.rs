//! Retrodictive teleportation as a post-selected time machine.
//!
//! A qubit built from energy eigenstates, μ|0⟩ + ν|1⟩, picks up a phase
//! e^{−iωτ} on |1⟩ under free evolution. Alice prepares such a qubit at t_p,
//! Bell-measures it at t_m against one arm of an entangled pair created at
//! t_s, and when the measured Bell state matches the source state the
//! retrodicted chain places Alice's state in Bob's arm *before* she prepared
//! it. A bit-flipped loop has consistency weight zero: the measurement
//! outcome that closes the loop never occurs.

use num_complex::Complex64;
use thiserror::Error;

use crate::quantum::{bell_state, BellKind, PureState, StateError, UnitaryGate};
use crate::SubsystemShape;

#[derive(Debug, Error)]
pub enum TeleportError {
    #[error("timeline must satisfy t_s < t_p < t_m, got ({t_s}, {t_p}, {t_m})")]
    BadTimeline { t_s: f64, t_p: f64, t_m: f64 },
    #[error("expected a single-qubit state, got dimension {dim}")]
    NotSingleQubit { dim: usize },
    #[error("expected a two-qubit resource state, got dimension {dim}")]
    NotTwoQubitResource { dim: usize },
    #[error("loop gate must be 2\u{00d7}2, got dimension {dim}")]
    NotSingleQubitGate { dim: usize },
    #[error(transparent)]
    State(#[from] StateError),
}

/// A qubit of energy splitting ω together with its creation time.
#[derive(Debug, Clone)]
pub struct TimedQubit {
    state: PureState,
    omega: f64,
    created_at: f64,
}

impl TimedQubit {
    pub fn new(state: PureState, omega: f64, created_at: f64) -> Result<Self, TeleportError> {
        if state.dim() != 2 {
            return Err(TeleportError::NotSingleQubit { dim: state.dim() });
        }
        Ok(Self {
            state,
            omega,
            created_at,
        })
    }

    pub fn state(&self) -> &PureState {
        &self.state
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn created_at(&self) -> f64 {
        self.created_at
    }
}

/// Source, preparation, and measurement times, strictly ordered.
#[derive(Debug, Clone, Copy)]
pub struct TeleportTimeline {
    pub t_s: f64,
    pub t_p: f64,
    pub t_m: f64,
}

impl TeleportTimeline {
    pub fn new(t_s: f64, t_p: f64, t_m: f64) -> Result<Self, TeleportError> {
        if !(t_s < t_p && t_p < t_m) {
            return Err(TeleportError::BadTimeline { t_s, t_p, t_m });
        }
        Ok(Self { t_s, t_p, t_m })
    }
}

/// Free evolution for an interval τ: μ|0⟩ + e^{−iωτ}ν|1⟩.
pub fn evolve(q: &TimedQubit, tau: f64) -> PureState {
    let amps = q.state.amplitudes();
    let phase = Complex64::from_polar(1.0, -q.omega * tau);
    PureState::new(vec![amps[0], phase * amps[1]], q.state.shape().clone())
        .expect("phase evolution preserves the norm")
}

/// Born probabilities of the four Bell outcomes when `prepared` is measured
/// against the resource arm sent to Alice (resource factor 0; factor 1 is
/// the retained arm).
///
/// Outcome order: (|00⟩+|11⟩), (|00⟩−|11⟩), (|01⟩+|10⟩), (|01⟩−|10⟩) — see
/// [`BellKind::MEASUREMENT_ORDER`].
pub fn bell_probabilities(
    prepared: &PureState,
    resource: &PureState,
) -> Result<[f64; 4], TeleportError> {
    if prepared.dim() != 2 {
        return Err(TeleportError::NotSingleQubit {
            dim: prepared.dim(),
        });
    }
    if resource.dim() != 4 {
        return Err(TeleportError::NotTwoQubitResource {
            dim: resource.dim(),
        });
    }
    let joint = prepared.tensor(resource); // qubits: prepared, alice arm, bob arm
    let mut probabilities = [0.0; 4];
    for (slot, &kind) in BellKind::MEASUREMENT_ORDER.iter().enumerate() {
        let bra = bell_state(kind);
        // Project qubits (0, 1); the unnormalized remainder lives on qubit 2.
        let mut p = 0.0;
        for y in 0..2 {
            let mut amplitude = Complex64::ZERO;
            for x0 in 0..2 {
                for x1 in 0..2 {
                    amplitude += bra.amplitudes()[x0 * 2 + x1].conj()
                        * joint.amplitudes()[x0 * 4 + x1 * 2 + y];
                }
            }
            p += amplitude.norm_sqr();
        }
        probabilities[slot] = p;
    }
    Ok(probabilities)
}

/// The state of the source arm before Alice prepared hers, retrodicted from
/// a (|01⟩+|10⟩)/√2 measurement outcome.
///
/// Chain: project ⟨α| onto the measured entangled state (giving μ*|1⟩+ν*|0⟩),
/// evolve that projection back to t_s, and project it onto the source pair:
/// the remaining arm carries μ e^{i(t_s−t_p)ω}|0⟩ + ν|1⟩.
pub fn retrodict_source(
    prepared: &TimedQubit,
    timeline: &TeleportTimeline,
) -> Result<PureState, TeleportError> {
    let amps = prepared.state.amplitudes();
    let (mu, nu) = (amps[0], amps[1]);
    let back_phase = Complex64::from_polar(1.0, (timeline.t_s - timeline.t_p) * prepared.omega);
    PureState::new(
        vec![mu * back_phase, nu],
        SubsystemShape::qubits(1),
    )
    .map_err(TeleportError::from)
}

/// Relative likelihood |Tr f / 2|² of the self-consistent history in which
/// the received qubit is passed through `f` and handed back for teleportation
/// into the past. Zero flags a suppressed (paradoxical) loop.
pub fn loop_consistency_weight(f: &UnitaryGate) -> Result<f64, TeleportError> {
    if f.dim() != 2 {
        return Err(TeleportError::NotSingleQubitGate { dim: f.dim() });
    }
    let half_trace = f.matrix().trace() / Complex64::new(2.0, 0.0);
    Ok(half_trace.norm_sqr())
}
