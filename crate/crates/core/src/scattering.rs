//! Quantum scattering across the well: pseudospinor matching at the walls,
//! reflection/transmission amplitudes, closed-form validators, transmission
//! curves and resonance loci.
//!
//! The scattering ansatz is Psi_I = Psi+ + r Psi-, Psi_II = A Psi_II+ +
//! B Psi_II-, Psi_III = t Psi_III+, with both spinor components continuous
//! at x = -h and x = +h. That gives a 4x4 complex linear system in
//! (r, A, B, t) which is solved directly with partial pivoting; the closed
//! forms below are validators of that solve, not the engine.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use thiserror::Error;

use crate::model::{
    inner_momentum, outer_momentum, MomentumCharacter, QuantumNumbers, TransverseMomentum,
    WellConfig, WellKind,
};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ScatterError {
    /// |E| <= |k|: no asymptotic plane waves exist in regions I/III.
    #[error("no propagating outer wave: |E| = {energy_abs} <= |k| = {k_abs}")]
    NoPropagatingOuter { energy_abs: f64, k_abs: f64 },
    /// The matching matrix is numerically singular (e.g. the inner
    /// effective energy vanishes and the spinor basis degenerates).
    #[error("singular matching matrix, reciprocal pivot ratio {rcond:.3e}")]
    SingularMatching { rcond: f64 },
    #[error("invalid angle grid: {0}")]
    InvalidAngleGrid(&'static str),
    #[error("k must be nonzero for an angle sweep")]
    ZeroK,
    #[error("n_max must be at least 1")]
    InvalidResonanceCount,
}

/// One exponential spinor solution e^{lambda x} (1, w)^T of the free Dirac
/// equation in a region with effective energy e_eff and kinetic y-momentum
/// q_y. `exponent` is lambda (+-i k_x propagating, +-kappa evanescent) and
/// `lower` is w = (-i lambda + i q_y)/e_eff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisSpinor {
    pub exponent: Complex64,
    pub lower: Complex64,
}

impl BasisSpinor {
    /// Basis solution with sign = +1 or -1 selecting e^{+lambda x} or
    /// e^{-lambda x} within the propagating/evanescent branch.
    pub fn new(e_eff: f64, q_y: f64, momentum: &TransverseMomentum, sign: f64) -> Self {
        let exponent = match momentum.character {
            MomentumCharacter::Propagating => Complex64::new(0.0, sign * momentum.value),
            MomentumCharacter::Evanescent => Complex64::new(sign * momentum.value, 0.0),
        };
        let lower = (-Complex64::i() * exponent + Complex64::new(0.0, q_y)) / e_eff;
        BasisSpinor { exponent, lower }
    }

    /// Both spinor components at position x.
    pub fn eval(&self, x: f64) -> (Complex64, Complex64) {
        let phase = (self.exponent * x).exp();
        (phase, self.lower * phase)
    }
}

/// Reflection and transmission amplitudes plus the derived coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringResult {
    pub r: Complex64,
    pub t: Complex64,
}

impl ScatteringResult {
    /// R = |r|.
    pub fn reflection(&self) -> f64 {
        self.r.norm()
    }

    /// T = |t| (the plotted transmission coefficient).
    pub fn transmission(&self) -> f64 {
        self.t.norm()
    }

    /// |r|^2 + |t|^2; equals 1 because the outer momenta on both sides
    /// coincide.
    pub fn probability_check(&self) -> f64 {
        self.r.norm_sqr() + self.t.norm_sqr()
    }
}

fn require_outer_propagating(qn: QuantumNumbers) -> Result<f64, ScatterError> {
    let outer = outer_momentum(qn);
    if !outer.is_propagating() || outer.value == 0.0 {
        return Err(ScatterError::NoPropagatingOuter {
            energy_abs: qn.energy.abs(),
            k_abs: qn.k.abs(),
        });
    }
    Ok(outer.value)
}

/// The four basis spinors of the scattering problem:
/// (outer+, outer-, inner+, inner-).
fn scattering_basis(
    qn: QuantumNumbers,
    well: &WellConfig,
) -> (BasisSpinor, BasisSpinor, BasisSpinor, BasisSpinor) {
    let outer = outer_momentum(qn);
    let inner = inner_momentum(qn, well);
    let e_in = well.inner_energy(qn.energy);
    let qy_in = well.inner_qy(qn.k);
    (
        BasisSpinor::new(qn.energy, qn.k, &outer, 1.0),
        BasisSpinor::new(qn.energy, qn.k, &outer, -1.0),
        BasisSpinor::new(e_in, qy_in, &inner, 1.0),
        BasisSpinor::new(e_in, qy_in, &inner, -1.0),
    )
}

fn check_finite(m: &Matrix4<Complex64>) -> bool {
    m.iter().all(|c| c.re.is_finite() && c.im.is_finite())
}

/// Reciprocal pivot-ratio estimate from the LU factors; ~0 means singular.
fn pivot_rcond(m: &Matrix4<Complex64>) -> f64 {
    let lu = m.lu();
    let u = lu.u();
    let pivots: Vec<f64> = (0..4).map(|i| u[(i, i)].norm()).collect();
    let max = pivots.iter().cloned().fold(0.0_f64, f64::max);
    let min = pivots.iter().cloned().fold(f64::INFINITY, f64::min);
    if max == 0.0 {
        0.0
    } else {
        min / max
    }
}

/// Solve the 4x4 matching system for (r, A, B, t) and return the full
/// coefficient set. Internal; `solve_scattering` exposes (r, t).
pub(crate) fn solve_matching(
    qn: QuantumNumbers,
    well: &WellConfig,
) -> Result<(ScatteringResult, Complex64, Complex64), ScatterError> {
    require_outer_propagating(qn)?;
    let h = well.half_width;
    let (op, om, ip, im) = scattering_basis(qn, well);

    let (op_u_l, op_l_l) = op.eval(-h); // incident wave at x = -h
    let (om_u_l, om_l_l) = om.eval(-h);
    let (ip_u_l, ip_l_l) = ip.eval(-h);
    let (im_u_l, im_l_l) = im.eval(-h);
    let (ip_u_r, ip_l_r) = ip.eval(h);
    let (im_u_r, im_l_r) = im.eval(h);
    let (op_u_r, op_l_r) = op.eval(h);

    let zero = Complex64::new(0.0, 0.0);
    #[rustfmt::skip]
    let m = Matrix4::new(
        om_u_l, -ip_u_l, -im_u_l, zero,
        om_l_l, -ip_l_l, -im_l_l, zero,
        zero,    ip_u_r,  im_u_r, -op_u_r,
        zero,    ip_l_r,  im_l_r, -op_l_r,
    );
    if !check_finite(&m) {
        return Err(ScatterError::SingularMatching { rcond: 0.0 });
    }
    let b = Vector4::new(-op_u_l, -op_l_l, zero, zero);
    let rcond = pivot_rcond(&m);
    match m.lu().solve(&b) {
        Some(sol) if rcond > 1e-14 => Ok((
            ScatteringResult { r: sol[0], t: sol[3] },
            sol[1],
            sol[2],
        )),
        _ => Err(ScatterError::SingularMatching { rcond }),
    }
}

/// Solve the scattering problem by direct matching at x = +-h. The inner
/// basis (propagating or evanescent) is selected automatically from the
/// inner dispersion.
pub fn solve_scattering(
    qn: QuantumNumbers,
    well: &WellConfig,
) -> Result<ScatteringResult, ScatterError> {
    solve_matching(qn, well).map(|(res, _, _)| res)
}

/// Maximum continuity violation of the solved coefficients at the walls,
/// relative to the largest component magnitude there. Diagnostic used by
/// the verification suites.
pub fn matching_residual(qn: QuantumNumbers, well: &WellConfig) -> Result<f64, ScatterError> {
    let (res, a, b) = solve_matching(qn, well)?;
    let h = well.half_width;
    let (op, om, ip, im) = scattering_basis(qn, well);
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    // region I vs II at -h, region II vs III at +h
    for (x, lhs, rhs) in [
        (-h, vec![(Complex64::new(1.0, 0.0), op), (res.r, om)], vec![(a, ip), (b, im)]),
        (h, vec![(a, ip), (b, im)], vec![(res.t, op)]),
    ] {
        let sum = |terms: &[(Complex64, BasisSpinor)]| {
            terms.iter().fold((Complex64::default(), Complex64::default()), |acc, (c, s)| {
                let (u, l) = s.eval(x);
                (acc.0 + c * u, acc.1 + c * l)
            })
        };
        let (lu, ll) = sum(&lhs);
        let (ru, rl) = sum(&rhs);
        worst = worst.max((lu - ru).norm()).max((ll - rl).norm());
        scale = scale.max(lu.norm()).max(ll.norm()).max(ru.norm()).max(rl.norm());
    }
    Ok(worst / scale.max(1.0))
}

/// Shared closed-form evaluator. `coupling` is the denominator coefficient
/// E_in*E_out - qy_in*qy_out; the evanescent branch is the analytic
/// continuation k'_x -> i*kappa of the propagating one.
fn closed_form_t(qn: QuantumNumbers, well: &WellConfig) -> Result<Complex64, ScatterError> {
    let kx = require_outer_propagating(qn)?;
    let h = well.half_width;
    let e_in = well.inner_energy(qn.energy);
    let qy_in = well.inner_qy(qn.k);
    let coupling = e_in * qn.energy - qy_in * qn.k;
    let inner = inner_momentum(qn, well);
    let phase = Complex64::new(0.0, -2.0 * kx * h).exp();
    let i = Complex64::i();
    match inner.character {
        MomentumCharacter::Propagating => {
            let kp = inner.value;
            let den = kx * kp * (2.0 * kp * h).cos() - i * coupling * (2.0 * kp * h).sin();
            Ok(phase * kx * kp / den)
        }
        MomentumCharacter::Evanescent => {
            let kap = inner.value;
            let den = kx * kap * (2.0 * kap * h).cosh() - i * coupling * (2.0 * kap * h).sinh();
            Ok(phase * kx * kap / den)
        }
    }
}

/// Closed-form magnetic transmission amplitude
/// t = e^{-2 i k_x h} k_x k'_x / (k_x k'_x cos(2 k'_x h) - i (E^2 - k(k+a0)) sin(2 k'_x h))
/// with cosh/sinh replacing cos/sin (and kappa replacing k'_x) in the
/// tunnelling regime |k| < |E| < |k + a0|.
pub fn closed_form_t_magnetic(
    qn: QuantumNumbers,
    a0: f64,
    half_width: f64,
) -> Result<Complex64, ScatterError> {
    let well = WellConfig { kind: WellKind::Magnetic, strength: a0, half_width };
    closed_form_t(qn, &well)
}

/// Closed-form electric transmission amplitude. The denominator coupling
/// coefficient is E(E + v0) - k^2, obtained from the matching solve via the
/// 2x2 transfer reduction (the electric and magnetic denominators share the
/// structure E_in*E_out - qy_in*qy_out); it reduces to k_x^2 at v0 = 0 and
/// yields |t| = 1 identically at k = 0.
pub fn closed_form_t_electric(
    qn: QuantumNumbers,
    v0: f64,
    half_width: f64,
) -> Result<Complex64, ScatterError> {
    let well = WellConfig { kind: WellKind::Electric, strength: v0, half_width };
    closed_form_t(qn, &well)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmissionSample {
    pub alpha: f64,
    pub energy: f64,
    pub r: Complex64,
    pub t: Complex64,
    /// Whether a classical particle at this angle crosses the well
    /// (real inner momentum).
    pub classically_allowed: bool,
}

impl TransmissionSample {
    pub fn transmission(&self) -> f64 {
        self.t.norm()
    }
    pub fn reflection(&self) -> f64 {
        self.r.norm()
    }
    pub fn probability_check(&self) -> f64 {
        self.r.norm_sqr() + self.t.norm_sqr()
    }
}

/// Transmission versus incidence angle at fixed k.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionCurve {
    pub samples: Vec<TransmissionSample>,
    /// Classical transmission limit angle (radians), where defined:
    /// sin(alpha_max) = k/(k + a0) for magnetic wells. None when every
    /// angle is classically transmitted (electric wells, shallow ratios).
    pub classical_limit: Option<f64>,
}

/// Sweep the incidence angle alpha in (0, pi/2); each angle fixes the
/// energy through sin(alpha) = k/E.
pub fn transmission_vs_angle(
    k: f64,
    well: &WellConfig,
    alpha_grid: &[f64],
) -> Result<TransmissionCurve, ScatterError> {
    if k == 0.0 {
        return Err(ScatterError::ZeroK);
    }
    if alpha_grid.is_empty() {
        return Err(ScatterError::InvalidAngleGrid("empty grid"));
    }
    if alpha_grid
        .iter()
        .any(|&a| !(a > 0.0 && a < std::f64::consts::FRAC_PI_2))
    {
        return Err(ScatterError::InvalidAngleGrid("angles must lie strictly inside (0, pi/2)"));
    }
    let samples = alpha_grid
        .iter()
        .map(|&alpha| {
            let energy = k / alpha.sin();
            let qn = QuantumNumbers::new(energy, k);
            let res = solve_scattering(qn, well)?;
            let classically_allowed = inner_momentum(qn, well).is_propagating();
            Ok(TransmissionSample { alpha, energy, r: res.r, t: res.t, classically_allowed })
        })
        .collect::<Result<Vec<_>, ScatterError>>()?;
    let classical_limit = match well.kind {
        WellKind::Magnetic => {
            let ratio = k / (k + well.strength);
            (ratio.is_finite() && ratio.abs() <= 1.0).then(|| ratio.asin())
        }
        WellKind::Electric => None,
    };
    Ok(TransmissionCurve { samples, classical_limit })
}

/// Resonant energies where the inner phase satisfies 2 k'_x h = n pi, so
/// |t| = 1. Magnetic: E_n = +-sqrt((n pi / 2h)^2 + (k+a0)^2); electric:
/// E_n = -v0 +- sqrt((n pi / 2h)^2 + k^2). Only values observable as
/// scattering resonances (|E_n| > |k|) are returned, sorted ascending.
pub fn resonance_energies(
    k: f64,
    well: &WellConfig,
    n_max: usize,
) -> Result<Vec<f64>, ScatterError> {
    if n_max < 1 {
        return Err(ScatterError::InvalidResonanceCount);
    }
    let h = well.half_width;
    let mut out = Vec::new();
    for n in 1..=n_max {
        let kp = n as f64 * std::f64::consts::PI / (2.0 * h);
        let (center, shift) = match well.kind {
            WellKind::Magnetic => (0.0, (kp * kp + (k + well.strength).powi(2)).sqrt()),
            WellKind::Electric => (-well.strength, (kp * kp + k * k).sqrt()),
        };
        for e in [center + shift, center - shift] {
            if e.abs() > k.abs() {
                out.push(e);
            }
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite energies"));
    Ok(out)
}
