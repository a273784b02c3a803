//! Classical trajectories and quantum spectra of massless Dirac particles
//! in square electric and magnetic waveguides.
//!
//! The crate is organized around the three-region geometry of a square
//! well: [`model`] carries the shared kinematics, [`classical`] the ray
//! picture (regimes, refraction, trajectories, bound-region diagrams),
//! [`scattering`] the quantum transmission problem with its closed-form
//! validators, [`bound`] the bound/edge spectrum and spinor profiles, and
//! [`symmetry`] the discrete symmetry maps used to cross-check everything.

pub mod bound;
pub mod classical;
pub mod model;
pub mod scattering;
pub mod symmetry;

pub use bound::{
    bound_determinant, find_bound_states, join_resonance_bound_data, sample_wavefunction,
    spectral_curves, BoundError, BoundState, JoinData, ResonanceLocus, SpectralCurve,
    SpinorSample, StateCharacter, SweepParameter,
};
pub use classical::{
    classify, classify_electric, classify_magnetic, electric_angles, magnetic_angles,
    max_angle_sine, region_mask, trace_ray, AnglePair, BoundDrift, ClassicalError,
    ClassicalRegime, FixedParam, RayPath, RegionLabel, RegionMask, Termination,
};
pub use model::{
    inner_momentum, outer_momentum, ModelError, MomentumCharacter, QuantumNumbers, Region,
    TransverseMomentum, UnitSystem, WellConfig, WellKind,
};
pub use scattering::{
    closed_form_t_electric, closed_form_t_magnetic, matching_residual, resonance_energies,
    solve_scattering, transmission_vs_angle, BasisSpinor, ScatterError, ScatteringResult,
    TransmissionCurve, TransmissionSample,
};
pub use symmetry::{
    apply, max_dirac_residual, overlap_modulus, spectrum_map, SpectrumParams, SymmetryError,
    SymmetryOp,
};
