//! Simulation of qubits interacting with closed timelike curves, plus the
//! relativistic formulas that set the stage for them.
//!
//! Two boundary conditions for a two-rail CTC circuit are implemented side by
//! side: the density-operator consistency condition solved as a fixed point
//! (iteratively, and independently through the vectorized superoperator), and
//! the path-integral/post-selected rail contraction with renormalization.
//! A retrodictive-teleportation time machine, a small dense complex-matrix
//! kernel, and Unruh/Hawking/wormhole formulas round out the library; the
//! `scenarios` module packages the worked setups behind a uniform interface.
//!
//! Rail convention, fixed throughout: rail 1 carries the chronology-respecting
//! input, rail 2 the CTC-borne state; the CTC identifies the rail-1 output
//! with the rail-2 input and the detector reads the rail-2 output. The
//! uncrossed textbook wiring is obtained by composing the interaction with
//! SWAP.

pub mod ctc;
pub mod linalg;
pub mod quantum;
pub mod relativity;
pub mod scenarios;
pub mod teleport;

pub use num_complex::Complex64;

pub use linalg::{ComplexMatrix, LinalgError, SubsystemShape};
pub use quantum::{BellKind, DensityOperator, PureState, StateError, UnitaryGate};
