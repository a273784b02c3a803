//! Classical regimes, refraction angles, ray trajectories and bound-region
//! diagrams for relativistic massless charges in square wells.
//!
//! A particle with energy E and conserved y-momentum k moves on straight
//! segments inside each region (the fields vanish away from the walls) and
//! either refracts or reflects at x = +-h. The regime classification comes
//! from comparing |E| against the kinetic y-momenta of the outer and inner
//! regions.

use rayon::prelude::*;
use thiserror::Error;

use crate::model::{
    inner_momentum, outer_momentum, QuantumNumbers, TransverseMomentum, WellConfig, WellKind,
};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ClassicalError {
    /// A defining inequality holds with equality; the configuration sits on
    /// a measure-zero separatrix where a momentum vanishes.
    #[error("regime boundary: {0}")]
    BoundaryCase(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    /// |sin| of the requested angle exceeds 1: the trajectory cannot enter
    /// the adjacent region (total reflection).
    #[error("no refraction: |{0}| > 1")]
    NoRefraction(f64),
    /// The limiting-angle ratio exceeds 1 in modulus: every incidence angle
    /// is allowed, there is no limit to report.
    #[error("no limiting angle: |{0}| > 1")]
    NoLimit(f64),
    #[error("classically forbidden configuration: {0}")]
    Forbidden(&'static str),
    #[error("zero velocity: effective energy vanishes in the occupied region")]
    ZeroVelocity,
    #[error("empty grid")]
    EmptyGrid,
    #[error("grid must be strictly increasing")]
    NonMonotonicGrid,
}

/// Direction of the y-drift of a magnetically trapped trajectory,
/// fixed by the sign of k + a0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundDrift {
    Downward,
    Upward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicalRegime {
    /// The particle crosses the well: |E| exceeds both kinetic y-momenta.
    Scattering,
    /// Motion confined to region II. Magnetic wells carry the drift
    /// direction (sign of k + a0); electric wells have none.
    Bound { drift: Option<BoundDrift> },
    /// The particle reflects at the wall: |k| < |E| < |k + a0|.
    /// Never produced by an electric well.
    TotalReflection,
    /// No real momentum in any region.
    Forbidden,
}

impl ClassicalRegime {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClassicalRegime::Scattering => "scattering",
            ClassicalRegime::Bound { .. } => "bound",
            ClassicalRegime::TotalReflection => "total_reflection",
            ClassicalRegime::Forbidden => "forbidden",
        }
    }

    pub fn is_bound(&self) -> bool {
        matches!(self, ClassicalRegime::Bound { .. })
    }
}

/// Regime of an electric square well: scattering for |E| > |k|, bound for
/// |E| < |k| < |E + v0|, forbidden when both momenta are imaginary.
/// Electric wells never totally reflect.
pub fn classify_electric(qn: QuantumNumbers, v0: f64) -> Result<ClassicalRegime, ClassicalError> {
    let e = qn.energy.abs();
    let k = qn.k.abs();
    let e_in = (qn.energy + v0).abs();
    if e == k {
        return Err(ClassicalError::BoundaryCase("|E| = |k|"));
    }
    if e > k {
        return Ok(ClassicalRegime::Scattering);
    }
    if e_in == k {
        return Err(ClassicalError::BoundaryCase("|E + v0| = |k|"));
    }
    if e_in > k {
        Ok(ClassicalRegime::Bound { drift: None })
    } else {
        Ok(ClassicalRegime::Forbidden)
    }
}

/// Regime of a magnetic square well from |E| against |k| (outer) and
/// |k + a0| (inner).
pub fn classify_magnetic(qn: QuantumNumbers, a0: f64) -> Result<ClassicalRegime, ClassicalError> {
    let e = qn.energy.abs();
    let k = qn.k.abs();
    let q_in = (qn.k + a0).abs();
    if e == k {
        return Err(ClassicalError::BoundaryCase("|E| = |k|"));
    }
    if e == q_in {
        return Err(ClassicalError::BoundaryCase("|E| = |k + a0|"));
    }
    if e > k && e > q_in {
        Ok(ClassicalRegime::Scattering)
    } else if e > k {
        Ok(ClassicalRegime::TotalReflection)
    } else if e > q_in {
        let drift = if qn.k + a0 < 0.0 { BoundDrift::Downward } else { BoundDrift::Upward };
        Ok(ClassicalRegime::Bound { drift: Some(drift) })
    } else {
        Ok(ClassicalRegime::Forbidden)
    }
}

/// Dispatch on the well kind.
pub fn classify(qn: QuantumNumbers, well: &WellConfig) -> Result<ClassicalRegime, ClassicalError> {
    match well.kind {
        WellKind::Electric => classify_electric(qn, well.strength),
        WellKind::Magnetic => classify_magnetic(qn, well.strength),
    }
}

/// Incidence angle alpha (region I) and refraction angle alpha' (region II),
/// both signed like k. Angles are measured from the x-axis normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnglePair {
    pub alpha: f64,
    pub alpha_prime: f64,
}

/// Snell-like refraction of an electric well: sin(a) = k/E,
/// sin(a') = k/(E + v0), so E sin(a) = (E + v0) sin(a') exactly.
pub fn electric_angles(qn: QuantumNumbers, v0: f64) -> Result<AnglePair, ClassicalError> {
    if !(qn.energy > 0.0) {
        return Err(ClassicalError::Precondition("electric_angles requires E > 0"));
    }
    if qn.energy < qn.k.abs() {
        return Err(ClassicalError::Precondition("electric_angles requires |E| >= |k|"));
    }
    let sin_alpha = qn.k / qn.energy;
    let sin_prime = qn.k / (qn.energy + v0);
    if sin_prime.abs() > 1.0 {
        return Err(ClassicalError::NoRefraction(sin_prime));
    }
    Ok(AnglePair { alpha: sin_alpha.asin(), alpha_prime: sin_prime.asin() })
}

/// Asymmetric refraction of a magnetic well: sin(a) = k/E,
/// sin(a') = (k + a0)/E. The two angles may have opposite signs.
pub fn magnetic_angles(qn: QuantumNumbers, a0: f64) -> Result<AnglePair, ClassicalError> {
    if !(qn.energy > 0.0) {
        return Err(ClassicalError::Precondition("magnetic_angles requires E > 0"));
    }
    if qn.energy < qn.k.abs() {
        return Err(ClassicalError::Precondition("magnetic_angles requires |E| >= |k|"));
    }
    let sin_alpha = qn.k / qn.energy;
    let sin_prime = (qn.k + a0) / qn.energy;
    if sin_prime.abs() > 1.0 {
        return Err(ClassicalError::NoRefraction(sin_prime));
    }
    Ok(AnglePair { alpha: sin_alpha.asin(), alpha_prime: sin_prime.asin() })
}

/// Sine of the limiting angle: the maximum refraction angle k/(k + v0)
/// inside an electric well, or the maximum incidence angle k/(k + a0)
/// still transmitted through a magnetic well.
pub fn max_angle_sine(k: f64, strength: f64, kind: WellKind) -> Result<f64, ClassicalError> {
    let denom = k + strength;
    if denom == 0.0 {
        return Err(ClassicalError::Precondition("k + strength must be nonzero"));
    }
    // Same ratio for both kinds; only its interpretation differs.
    let _ = kind;
    let ratio = k / denom;
    if ratio.abs() > 1.0 {
        return Err(ClassicalError::NoLimit(ratio));
    }
    Ok(ratio)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionLabel {
    I,
    II,
    III,
}

impl RegionLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegionLabel::I => "I",
            RegionLabel::II => "II",
            RegionLabel::III => "III",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    ExitedRight,
    ExitedLeft,
    TruncatedAtLength,
}

/// Piecewise-linear trajectory. Interior vertices sit exactly on the walls
/// x = +-h; each segment carries the label of the region it crosses.
#[derive(Debug, Clone, PartialEq)]
pub struct RayPath {
    pub vertices: Vec<(f64, f64)>,
    pub segment_regions: Vec<RegionLabel>,
    pub terminated: Termination,
}

struct RegionState {
    label: RegionLabel,
    /// |p_x| in this region (>= 0).
    px: f64,
    /// Kinetic y-momentum of this region.
    qy: f64,
    /// |p| = |effective energy|.
    speed_norm: f64,
}

fn region_of(x: f64, h: f64) -> RegionLabel {
    if x < -h {
        RegionLabel::I
    } else if x > h {
        RegionLabel::III
    } else {
        RegionLabel::II
    }
}

fn region_kinematics(
    label: RegionLabel,
    qn: QuantumNumbers,
    well: &WellConfig,
) -> Result<RegionState, ClassicalError> {
    let (e_eff, qy) = match label {
        RegionLabel::II => (well.inner_energy(qn.energy), well.inner_qy(qn.k)),
        _ => (qn.energy, qn.k),
    };
    let p = e_eff.abs();
    if p == 0.0 {
        return Err(ClassicalError::ZeroVelocity);
    }
    let px2 = e_eff * e_eff - qy * qy;
    if px2 < 0.0 {
        return Err(ClassicalError::Forbidden("no real momentum in the start region"));
    }
    Ok(RegionState { label, px: px2.sqrt(), qy, speed_norm: p })
}

/// Whether a classical particle can enter the region on the given side of
/// the wall; false means the wall acts as a mirror (p_x flips sign).
fn can_enter(label: RegionLabel, qn: QuantumNumbers, well: &WellConfig) -> bool {
    let mom: TransverseMomentum = match label {
        RegionLabel::II => inner_momentum(qn, well),
        _ => outer_momentum(qn),
    };
    mom.is_propagating() && mom.value > 0.0
}

/// Trace the event-driven ray through the three regions.
///
/// The velocity in each region is (s*|p_x|, q_y)/|p| with s = +-1, unit
/// speed for a massless particle. At a wall the ray refracts into the next
/// region when a real momentum exists there and bounces (s -> -s)
/// otherwise. Terminates on leaving the well outward or when the polyline
/// length reaches `max_path_length`.
pub fn trace_ray(
    qn: QuantumNumbers,
    well: &WellConfig,
    start: (f64, f64),
    max_path_length: f64,
) -> Result<RayPath, ClassicalError> {
    if !(max_path_length > 0.0) {
        return Err(ClassicalError::Precondition("max_path_length must be positive"));
    }
    match classify(qn, well)? {
        ClassicalRegime::Forbidden => {
            return Err(ClassicalError::Forbidden("both regions are classically inaccessible"))
        }
        _ => {}
    }
    let h = well.half_width;
    let mut state = region_kinematics(region_of(start.0, h), qn, well)?;
    let mut sign = 1.0_f64;
    let (mut x, mut y) = start;
    let mut remaining = max_path_length;
    let mut vertices = vec![(x, y)];
    let mut segment_regions = Vec::new();

    // Each full crossing of region II costs at least 2h of path, so the
    // segment count is bounded by the length budget; the cap is a guard.
    for _ in 0..100_000 {
        let vx = sign * state.px / state.speed_norm;
        let vy = state.qy / state.speed_norm;
        let target = if vx > 0.0 {
            match state.label {
                RegionLabel::I => Some(-h),
                RegionLabel::II => Some(h),
                RegionLabel::III => None,
            }
        } else if vx < 0.0 {
            match state.label {
                RegionLabel::I => None,
                RegionLabel::II => Some(-h),
                RegionLabel::III => Some(h),
            }
        } else {
            None
        };

        let (dist, exit) = match target {
            Some(t) => ((t - x) / vx, false),
            None => (f64::INFINITY, vx != 0.0),
        };

        if dist >= remaining {
            x += vx * remaining;
            y += vy * remaining;
            vertices.push((x, y));
            segment_regions.push(state.label);
            let terminated = if exit && state.label != RegionLabel::II {
                if vx > 0.0 {
                    Termination::ExitedRight
                } else {
                    Termination::ExitedLeft
                }
            } else {
                Termination::TruncatedAtLength
            };
            return Ok(RayPath { vertices, segment_regions, terminated });
        }

        // advance to the wall
        let t = target.expect("finite distance implies a wall target");
        if dist > 0.0 {
            y += vy * dist;
            x = t;
            remaining -= dist;
            vertices.push((x, y));
            segment_regions.push(state.label);
        } else {
            x = t;
        }

        let next_label = match (state.label, vx > 0.0) {
            (RegionLabel::I, true) => RegionLabel::II,
            (RegionLabel::II, true) => RegionLabel::III,
            (RegionLabel::II, false) => RegionLabel::I,
            (RegionLabel::III, false) => RegionLabel::II,
            _ => unreachable!("outward motion in an outer region has no wall"),
        };
        if can_enter(next_label, qn, well) {
            state = region_kinematics(next_label, qn, well)?;
        } else {
            sign = -sign;
        }
    }
    Ok(RayPath { vertices, segment_regions, terminated: Termination::TruncatedAtLength })
}

/// Which of (strength, k) is held fixed while the mask spans (E, other).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixedParam {
    Strength(f64),
    K(f64),
}

/// Boolean bound-region mask over an (E, other) grid, sampled at the grid
/// points themselves. `bound[i][j]` corresponds to (e_grid[i], other_grid[j]).
#[derive(Debug, Clone, PartialEq)]
pub struct RegionMask {
    pub e_grid: Vec<f64>,
    pub other_grid: Vec<f64>,
    pub bound: Vec<Vec<bool>>,
}

fn check_grid(grid: &[f64]) -> Result<(), ClassicalError> {
    if grid.is_empty() {
        return Err(ClassicalError::EmptyGrid);
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ClassicalError::NonMonotonicGrid);
    }
    Ok(())
}

/// Rasterize the classically bound region of the parameter plane.
/// Boundary cases (measure-zero separatrices) count as unbound.
pub fn region_mask(
    kind: WellKind,
    fixed: FixedParam,
    e_grid: &[f64],
    other_grid: &[f64],
) -> Result<RegionMask, ClassicalError> {
    check_grid(e_grid)?;
    check_grid(other_grid)?;
    let bound: Vec<Vec<bool>> = e_grid
        .par_iter()
        .map(|&e| {
            other_grid
                .iter()
                .map(|&other| {
                    let (k, strength) = match fixed {
                        FixedParam::Strength(s) => (other, s),
                        FixedParam::K(k) => (k, other),
                    };
                    let qn = QuantumNumbers::new(e, k);
                    let regime = match kind {
                        WellKind::Electric => classify_electric(qn, strength),
                        WellKind::Magnetic => classify_magnetic(qn, strength),
                    };
                    matches!(regime, Ok(r) if r.is_bound())
                })
                .collect()
        })
        .collect();
    Ok(RegionMask { e_grid: e_grid.to_vec(), other_grid: other_grid.to_vec(), bound })
}
