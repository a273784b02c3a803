//! Well geometry, quantum numbers and the transverse-momentum kinematics
//! shared by every solver in this crate.
//!
//! Everything is expressed in natural units: hbar = v_F = 1, lengths in
//! units of the well half-width, so energies, momenta and potential
//! strengths are all dimensionless. The scalar potential enters as
//! V(x) = -v0 inside the well and the vector potential as A(x) = -a0
//! inside, which shifts the kinetic y-momentum to k + a0 there.

use thiserror::Error;

/// Marker for the natural-unit convention used across the crate:
/// hbar = v_F = 1, A(x) = -e*Atilde/hbar, V(x) = Vtilde/(hbar v_F),
/// E = epsilon/(hbar v_F). All public quantities are dimensionless.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitSystem;

impl UnitSystem {
    /// One-line description suitable for output metadata.
    pub const NOTE: &'static str =
        "natural units: hbar = v_F = 1, lengths in well half-widths, all quantities dimensionless";
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ModelError {
    #[error("half_width must be positive, got {0}")]
    InvalidHalfWidth(f64),
}

/// Which field defines the square well.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WellKind {
    /// Scalar potential V(x) = -v0 for |x| < h, 0 outside.
    Electric,
    /// Vector potential A(x) = -a0 for |x| < h, 0 outside.
    Magnetic,
}

impl WellKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            WellKind::Electric => "electric",
            WellKind::Magnetic => "magnetic",
        }
    }
}

/// A square well (strength > 0) or barrier (strength < 0) of half-width h.
///
/// The three regions are I (x < -h), II (|x| < h) and III (x > h).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellConfig {
    pub kind: WellKind,
    /// v0 for electric wells, a0 for magnetic wells.
    pub strength: f64,
    /// Region boundaries sit at x = +-half_width.
    pub half_width: f64,
}

impl WellConfig {
    pub fn new(kind: WellKind, strength: f64, half_width: f64) -> Result<Self, ModelError> {
        if !(half_width > 0.0) {
            return Err(ModelError::InvalidHalfWidth(half_width));
        }
        Ok(Self { kind, strength, half_width })
    }

    /// Electric well of depth v0 with the default half-width 1.
    pub fn electric(v0: f64) -> Self {
        Self { kind: WellKind::Electric, strength: v0, half_width: 1.0 }
    }

    /// Magnetic well of strength a0 with the default half-width 1.
    pub fn magnetic(a0: f64) -> Self {
        Self { kind: WellKind::Magnetic, strength: a0, half_width: 1.0 }
    }

    pub fn with_half_width(mut self, half_width: f64) -> Result<Self, ModelError> {
        if !(half_width > 0.0) {
            return Err(ModelError::InvalidHalfWidth(half_width));
        }
        self.half_width = half_width;
        Ok(self)
    }

    /// Effective energy inside region II: E + v0 for electric wells
    /// (the potential shifts the dispersion), E for magnetic wells.
    pub fn inner_energy(&self, energy: f64) -> f64 {
        match self.kind {
            WellKind::Electric => energy + self.strength,
            WellKind::Magnetic => energy,
        }
    }

    /// Kinetic y-momentum inside region II: k + a0 for magnetic wells
    /// (minimal coupling), k for electric wells.
    pub fn inner_qy(&self, k: f64) -> f64 {
        match self.kind {
            WellKind::Electric => k,
            WellKind::Magnetic => k + self.strength,
        }
    }
}

/// Conserved quantum numbers of a y-translation-invariant state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumNumbers {
    pub energy: f64,
    /// Conserved y-momentum (eigenvalue of -i d/dy).
    pub k: f64,
}

impl QuantumNumbers {
    pub fn new(energy: f64, k: f64) -> Self {
        Self { energy, k }
    }
}

/// Real (oscillatory) vs imaginary (decaying) transverse momentum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentumCharacter {
    Propagating,
    Evanescent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Outer,
    Inner,
}

/// Magnitude of the transverse momentum in one region together with its
/// branch. For Propagating, value^2 = e_eff^2 - q_y^2; for Evanescent,
/// value^2 = q_y^2 - e_eff^2. The value is always >= 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransverseMomentum {
    pub value: f64,
    pub character: MomentumCharacter,
    pub region: Region,
}

impl TransverseMomentum {
    fn from_dispersion(e_eff: f64, q_y: f64, region: Region) -> Self {
        let diff = e_eff * e_eff - q_y * q_y;
        if diff >= 0.0 {
            Self { value: diff.sqrt(), character: MomentumCharacter::Propagating, region }
        } else {
            Self { value: (-diff).sqrt(), character: MomentumCharacter::Evanescent, region }
        }
    }

    pub fn is_propagating(&self) -> bool {
        self.character == MomentumCharacter::Propagating
    }
}

/// Transverse momentum in regions I/III: sqrt(E^2 - k^2) propagating for
/// |E| > |k|, otherwise the decay constant sqrt(k^2 - E^2).
///
/// |E| = |k| comes back as Propagating with value 0; scattering and bound
/// solvers treat that as a regime boundary and reject it.
pub fn outer_momentum(qn: QuantumNumbers) -> TransverseMomentum {
    TransverseMomentum::from_dispersion(qn.energy, qn.k, Region::Outer)
}

/// Transverse momentum in region II, with the well-kind-dependent
/// effective energy and kinetic y-momentum.
pub fn inner_momentum(qn: QuantumNumbers, well: &WellConfig) -> TransverseMomentum {
    TransverseMomentum::from_dispersion(well.inner_energy(qn.energy), well.inner_qy(qn.k), Region::Inner)
}
