//! The discrete symmetries of the waveguide Hamiltonian as concrete maps
//! on sampled spinors and on spectra. These back the property-test suites:
//! every transform sends verified eigenstates to eigenstates of the mapped
//! parameters, and every spectrum map predicts the recomputed spectrum.

use num_complex::Complex64;
use thiserror::Error;

use crate::bound::SpinorSample;
use crate::model::{WellConfig, WellKind};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SymmetryError {
    #[error("reflection ops need a grid symmetric about x = 0")]
    AsymmetricGrid,
    #[error("empty sample list")]
    EmptySamples,
    #[error("dirac residual needs a uniform grid of at least five points")]
    NonUniformGrid,
}

/// The five symmetry operations. Reflection-containing ops act on the
/// spatial profile; the parameter-flipping ops act on (k, strength, E).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryOp {
    /// sigma_y R_x: maps a solution onto a solution of the same well at
    /// the same (E, k). Both well kinds.
    ReflectX,
    /// sigma_x R_x: magnetic wells, E -> -E at the same (k, a0).
    ChiralMagnetic,
    /// sigma_x with k -> -k and a0 -> -a0: magnetic wells, same E.
    SignFlipMagnetic,
    /// sigma_z with v0 -> -v0: electric wells, E -> -E at the same k.
    ChargeConjElectric,
    /// sigma_y with k -> -k: electric wells, same E. On the reduced
    /// x-profile the momentum flip conjugates the suppressed e^{iky}
    /// factor, so this acts as sigma_y composed with complex conjugation
    /// (an antiunitary map; it squares to -1).
    KFlipElectric,
}

impl SymmetryOp {
    pub const ALL: [SymmetryOp; 5] = [
        SymmetryOp::ReflectX,
        SymmetryOp::ChiralMagnetic,
        SymmetryOp::SignFlipMagnetic,
        SymmetryOp::ChargeConjElectric,
        SymmetryOp::KFlipElectric,
    ];

    fn reflects(&self) -> bool {
        matches!(self, SymmetryOp::ReflectX | SymmetryOp::ChiralMagnetic)
    }
}

fn pauli(op: SymmetryOp, psi1: Complex64, psi2: Complex64) -> (Complex64, Complex64) {
    let i = Complex64::i();
    match op {
        // sigma_y
        SymmetryOp::ReflectX => (-i * psi2, i * psi1),
        // sigma_y after conjugation (k -> -k flips the e^{iky} factor)
        SymmetryOp::KFlipElectric => (-i * psi2.conj(), i * psi1.conj()),
        // sigma_x
        SymmetryOp::ChiralMagnetic | SymmetryOp::SignFlipMagnetic => (psi2, psi1),
        // sigma_z
        SymmetryOp::ChargeConjElectric => (psi1, -psi2),
    }
}

fn grid_is_symmetric(samples: &[SpinorSample]) -> bool {
    let n = samples.len();
    samples
        .iter()
        .zip(samples.iter().rev())
        .take(n / 2 + 1)
        .all(|(a, b)| (a.x + b.x).abs() < 1e-12)
}

/// Apply the symmetry operation to a sampled spinor. Reflection ops
/// require x and -x to both be grid points.
pub fn apply(op: SymmetryOp, samples: &[SpinorSample]) -> Result<Vec<SpinorSample>, SymmetryError> {
    if samples.is_empty() {
        return Err(SymmetryError::EmptySamples);
    }
    if op.reflects() && !grid_is_symmetric(samples) {
        return Err(SymmetryError::AsymmetricGrid);
    }
    let n = samples.len();
    Ok((0..n)
        .map(|idx| {
            let src = if op.reflects() { &samples[n - 1 - idx] } else { &samples[idx] };
            let (psi1, psi2) = pauli(op, src.psi1, src.psi2);
            SpinorSample { x: samples[idx].x, psi1, psi2 }
        })
        .collect())
}

/// Parameter set a spectrum was computed at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumParams {
    pub k: f64,
    pub strength: f64,
}

/// Predict the image of a bound spectrum under the symmetry: the expected
/// eigenvalue multiset (sorted ascending) and the parameters it belongs to.
pub fn spectrum_map(
    op: SymmetryOp,
    spectrum: &[f64],
    params: SpectrumParams,
) -> (Vec<f64>, SpectrumParams) {
    let negated_sorted = |s: &[f64]| {
        let mut v: Vec<f64> = s.iter().map(|e| -e).collect();
        v.sort_by(|a, b| a.partial_cmp(b).expect("finite spectrum"));
        v
    };
    match op {
        SymmetryOp::ReflectX => (spectrum.to_vec(), params),
        SymmetryOp::ChiralMagnetic => (negated_sorted(spectrum), params),
        SymmetryOp::SignFlipMagnetic => (
            spectrum.to_vec(),
            SpectrumParams { k: -params.k, strength: -params.strength },
        ),
        SymmetryOp::ChargeConjElectric => (
            negated_sorted(spectrum),
            SpectrumParams { k: params.k, strength: -params.strength },
        ),
        SymmetryOp::KFlipElectric => (
            spectrum.to_vec(),
            SpectrumParams { k: -params.k, strength: params.strength },
        ),
    }
}

/// Maximum residual of the stationary Dirac-Weyl equation evaluated with
/// central differences on a uniform grid, relative to the largest spinor
/// component. Grid points within two steps of the walls are excluded (the
/// derivative is discontinuous at the potential steps).
pub fn max_dirac_residual(
    samples: &[SpinorSample],
    energy: f64,
    k: f64,
    well: &WellConfig,
) -> Result<f64, SymmetryError> {
    if samples.len() < 5 {
        return Err(SymmetryError::NonUniformGrid);
    }
    let step = samples[1].x - samples[0].x;
    if step <= 0.0
        || samples
            .windows(2)
            .any(|w| ((w[1].x - w[0].x) - step).abs() > 1e-9 * step.max(1.0))
    {
        return Err(SymmetryError::NonUniformGrid);
    }
    let h = well.half_width;
    let (v_in, qy_in) = match well.kind {
        WellKind::Electric => (-well.strength, k),
        WellKind::Magnetic => (0.0, k + well.strength),
    };
    let scale = samples
        .iter()
        .map(|s| s.psi1.norm().max(s.psi2.norm()))
        .fold(0.0_f64, f64::max)
        .max(f64::MIN_POSITIVE);

    let i = Complex64::i();
    let mut worst: f64 = 0.0;
    for idx in 1..samples.len() - 1 {
        let x = samples[idx].x;
        // skip the stencils straddling a wall
        if (x.abs() - h).abs() <= 2.0 * step {
            continue;
        }
        let inside = x.abs() < h;
        let (v, qy) = if inside { (v_in, qy_in) } else { (0.0, k) };
        let d1 = (samples[idx + 1].psi1 - samples[idx - 1].psi1) / (2.0 * step);
        let d2 = (samples[idx + 1].psi2 - samples[idx - 1].psi2) / (2.0 * step);
        let s = &samples[idx];
        let r1 = -i * d2 - i * qy * s.psi2 + (v - energy) * s.psi1;
        let r2 = -i * d1 + i * qy * s.psi1 + (v - energy) * s.psi2;
        worst = worst.max(r1.norm()).max(r2.norm());
    }
    Ok(worst / scale)
}

/// Overlap modulus |<a, b>| / (|a| |b|) of two sampled spinors on the same
/// grid; 1 means equality up to a global phase.
pub fn overlap_modulus(a: &[SpinorSample], b: &[SpinorSample]) -> f64 {
    let mut dot = Complex64::new(0.0, 0.0);
    let mut na = 0.0;
    let mut nb = 0.0;
    for (sa, sb) in a.iter().zip(b) {
        dot += sa.psi1.conj() * sb.psi1 + sa.psi2.conj() * sb.psi2;
        na += sa.psi1.norm_sqr() + sa.psi2.norm_sqr();
        nb += sb.psi1.norm_sqr() + sb.psi2.norm_sqr();
    }
    dot.norm() / (na.sqrt() * nb.sqrt())
}
