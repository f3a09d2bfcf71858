//! Thermality of horizons and the geometry that produces them.
//!
//! SI-facing formulas:
//!
//! - Unruh temperature  T = aħ/(2πkc) and its inverse a = 2πkcT/ħ
//! - Hawking temperature T_H = ħc³/(8πGMk)
//! - Morris-Thorne transit time τ = π a₀/v with lower bound √(a₀/b₀) s and
//!   tidal comfort condition (v/c)² ≤ a₀b₀/(10⁸ m)²
//!
//! Natural-units (c = ħ = k = 1) formulas:
//!
//! - Rindler ↔ Minkowski: t = a⁻¹e^{aξ}sinh(aη), z = a⁻¹e^{aξ}cosh(aη)
//!   (both signs flipped in the left wedge)
//! - per-frequency vacuum ladder Σₙ c·qⁿ|n⟩_R|n⟩_L with q = e^{−πω/a}; the
//!   traced wedge is thermal with n̄ = q²/(1−q²) = 1/(e^{2πω/a}−1)
//! - Schwarzschild stationary-clock factor √(1 − 2M/r), M in metres

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RelativityError {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("r = {r} m is inside or on the horizon at 2M = {horizon} m")]
    InsideHorizon { r: f64, horizon: f64 },
    #[error("speed must satisfy 0 < v < c, got {v} m/s")]
    SpeedOutOfRange { v: f64 },
    #[error("truncation must keep at least two ladder levels, got n_max = {n_max}")]
    TruncationTooShort { n_max: usize },
}

fn require_positive(name: &'static str, value: f64) -> Result<(), RelativityError> {
    if !(value > 0.0) || !value.is_finite() {
        return Err(RelativityError::NonPositive { name, value });
    }
    Ok(())
}

/// CODATA 2018 values, SI units.
#[derive(Debug, Clone, Copy)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Boltzmann constant, J/K.
    pub k_boltzmann: f64,
    /// Speed of light, m/s.
    pub c: f64,
    /// Newtonian gravitational constant, m³/(kg·s²).
    pub g_newton: f64,
}

pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    hbar: 1.054_571_817e-34,
    k_boltzmann: 1.380_649e-23,
    c: 299_792_458.0,
    g_newton: 6.674_30e-11,
};

/// Temperature perceived by an observer of proper acceleration `a` (m/s²).
pub fn unruh_temperature(a: f64) -> Result<f64, RelativityError> {
    require_positive("acceleration", a)?;
    let k = CODATA_2018;
    Ok(a * k.hbar / (2.0 * std::f64::consts::PI * k.k_boltzmann * k.c))
}

/// Acceleration producing Unruh temperature `t` (K); exact inverse of
/// [`unruh_temperature`].
pub fn unruh_acceleration(t: f64) -> Result<f64, RelativityError> {
    require_positive("temperature", t)?;
    let k = CODATA_2018;
    Ok(2.0 * std::f64::consts::PI * k.k_boltzmann * k.c * t / k.hbar)
}

/// Emission temperature of a black hole of mass `m_kg`.
pub fn hawking_temperature(m_kg: f64) -> Result<f64, RelativityError> {
    require_positive("mass", m_kg)?;
    let k = CODATA_2018;
    Ok(k.hbar * k.c.powi(3) / (8.0 * std::f64::consts::PI * k.g_newton * m_kg * k.k_boltzmann))
}

/// Which Rindler wedge a coordinate pair lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wedge {
    Right,
    Left,
}

/// Map Rindler coordinates (η, ξ) at acceleration parameter `a` to Minkowski
/// (t, z), natural units c = 1. The left wedge carries both signs flipped.
pub fn rindler_to_minkowski(
    eta: f64,
    xi: f64,
    a: f64,
    wedge: Wedge,
) -> Result<(f64, f64), RelativityError> {
    require_positive("acceleration parameter", a)?;
    let scale = (a * xi).exp() / a;
    let (t, z) = (scale * (a * eta).sinh(), scale * (a * eta).cosh());
    Ok(match wedge {
        Wedge::Right => (t, z),
        Wedge::Left => (-t, -z),
    })
}

/// One frequency of the vacuum expanded in wedge modes: the two-mode ladder
/// Σₙ c·qⁿ|n⟩_R|n⟩_L with q = e^{−πω/a}, truncated at `n_max` and
/// renormalized. `tail_mass` records the discarded weight (worth flagging
/// above 1e−9).
#[derive(Debug, Clone)]
pub struct TwoModeSqueezedState {
    q: f64,
    n_max: usize,
    amplitudes: Vec<f64>,
    tail_mass: f64,
}

impl TwoModeSqueezedState {
    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Renormalized ladder amplitudes c·qⁿ, n = 0..=n_max.
    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    /// Fraction of squared norm discarded by the truncation, q^{2(n_max+1)}.
    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn truncation_ok(&self) -> bool {
        self.tail_mass <= 1e-9
    }

    /// Untruncated normalization constant √(1−q²).
    pub fn closed_form_normalization(&self) -> f64 {
        (1.0 - self.q * self.q).sqrt()
    }

    /// Occupation distribution of one wedge after tracing the other:
    /// p_n = |amplitude_n|² (diagonal, thermal up to truncation).
    pub fn reduced_probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a * a).collect()
    }

    /// Mean occupation of the truncated reduced state.
    pub fn mean_occupation(&self) -> f64 {
        self.reduced_probabilities()
            .iter()
            .enumerate()
            .map(|(n, p)| n as f64 * p)
            .sum()
    }

    /// Closed-form mean occupation n̄ = q²/(1−q²) = 1/(e^{2πω/a}−1).
    pub fn mean_occupation_closed_form(&self) -> f64 {
        let q2 = self.q * self.q;
        q2 / (1.0 - q2)
    }

    /// Entanglement entropy across the wedges, −Σ pₙ log₂ pₙ (bits).
    pub fn entanglement_entropy_bits(&self) -> f64 {
        self.reduced_probabilities()
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.log2())
            .sum()
    }

    /// Closed-form thermal entropy (n̄+1)log₂(n̄+1) − n̄ log₂ n̄ (bits).
    pub fn thermal_entropy_closed_form(&self) -> f64 {
        let n = self.mean_occupation_closed_form();
        if n <= 0.0 {
            return 0.0;
        }
        (n + 1.0) * (n + 1.0).log2() - n * n.log2()
    }

    /// Bhattacharyya fidelity (Σ√(pₙ rₙ))² between the traced wedge state and
    /// the untruncated geometric distribution rₙ = (1−q²)q^{2n}.
    pub fn thermal_fidelity(&self) -> f64 {
        let q2 = self.q * self.q;
        let root_sum: f64 = self
            .reduced_probabilities()
            .iter()
            .enumerate()
            .map(|(n, p)| (p * (1.0 - q2) * q2.powi(n as i32)).sqrt())
            .sum();
        root_sum * root_sum
    }
}

/// Build the per-frequency vacuum ladder at `omega_over_a` = ω/a.
pub fn vacuum_mode_state(
    omega_over_a: f64,
    n_max: usize,
) -> Result<TwoModeSqueezedState, RelativityError> {
    require_positive("omega_over_a", omega_over_a)?;
    if n_max < 1 {
        return Err(RelativityError::TruncationTooShort { n_max });
    }
    let q = (-std::f64::consts::PI * omega_over_a).exp();
    let raw: Vec<f64> = (0..=n_max).map(|n| q.powi(n as i32)).collect();
    let norm_sqr: f64 = raw.iter().map(|a| a * a).sum();
    let norm = norm_sqr.sqrt();
    let amplitudes = raw.iter().map(|a| a / norm).collect();
    // Geometric tail of the squared amplitudes relative to the full sum.
    let q2 = q * q;
    let tail_mass = q2.powi(n_max as i32 + 1);
    Ok(TwoModeSqueezedState {
        q,
        n_max,
        amplitudes,
        tail_mass,
    })
}

/// Proper-time factor √(1 − 2M/r) of a stationary clock at reduced
/// circumference `r`, with the mass `m_geometric` in metres.
pub fn schwarzschild_dilation(m_geometric: f64, r: f64) -> Result<f64, RelativityError> {
    require_positive("geometric mass", m_geometric)?;
    require_positive("radius", r)?;
    let horizon = 2.0 * m_geometric;
    if r <= horizon {
        return Err(RelativityError::InsideHorizon { r, horizon });
    }
    Ok((1.0 - horizon / r).sqrt())
}

/// Static traversable wormhole: throat radius b₀, transition-shell thickness
/// a₀ (both metres), and the traveller's radial speed v (m/s).
#[derive(Debug, Clone, Copy)]
pub struct WormholeGeometry {
    pub b0: f64,
    pub a0: f64,
    pub v: f64,
}

impl WormholeGeometry {
    pub fn new(b0: f64, a0: f64, v: f64) -> Result<Self, RelativityError> {
        require_positive("throat radius b0", b0)?;
        require_positive("shell thickness a0", a0)?;
        if !(v > 0.0 && v < CODATA_2018.c) {
            return Err(RelativityError::SpeedOutOfRange { v });
        }
        Ok(Self { b0, a0, v })
    }

    /// Shape function: b₀(1 − (r − b₀)/a₀)² across the shell, zero outside,
    /// b₀ at the throat.
    pub fn shape_function(&self, r: f64) -> f64 {
        if r <= self.b0 {
            self.b0
        } else if r < self.b0 + self.a0 {
            let x = 1.0 - (r - self.b0) / self.a0;
            self.b0 * x * x
        } else {
            0.0
        }
    }
}

/// Transit quantities for a radial traversal.
#[derive(Debug, Clone, Copy)]
pub struct WormholeTransit {
    /// τ = π a₀ / v, seconds (traveller and static observers agree for v ≪ c).
    pub tau_seconds: f64,
    /// The comfort floor √(a₀/b₀) seconds; the formula above cannot beat it
    /// without violating the tidal condition.
    pub lower_bound_seconds: f64,
    /// (v/c)² ≤ a₀b₀/(10⁸ m)²: negligible tidal forces for the traveller.
    pub tidal_ok: bool,
}

pub fn wormhole_transit(g: &WormholeGeometry) -> WormholeTransit {
    let c = CODATA_2018.c;
    let beta = g.v / c;
    WormholeTransit {
        tau_seconds: std::f64::consts::PI * g.a0 / g.v,
        lower_bound_seconds: (g.a0 / g.b0).sqrt(),
        tidal_ok: beta * beta <= g.a0 * g.b0 / 1e16,
    }
}
