//! Test-only oracles, independent of the library's solver paths.
//!
//! The bound-state oracle evaluates the reduced matching condition derived
//! by eliminating the interior coefficients with a 2x2 transfer step:
//!
//!   Delta(E) = C sin(2 k' h) - k' q_x cos(2 k' h)    (oscillatory interior)
//!   Delta(E) = C sinh(2 K h) - K  q_x cosh(2 K h)    (decaying interior)
//!
//! with C = E_in E_out - qy_in qy_out, q_x = sqrt(k^2 - E^2). Its zeros are
//! the bound eigenvalues. Nothing here touches the 4x4 determinant code.

#![allow(dead_code)]

use waveguide_core::{WellConfig, WellKind};

/// Reduced bound condition; None on split points where it is undefined.
pub fn reduced_bound_condition(energy: f64, k: f64, well: &WellConfig) -> Option<f64> {
    if energy == 0.0 || energy.abs() >= k.abs() {
        return None;
    }
    let h = well.half_width;
    let e_in = well.inner_energy(energy);
    let qy_in = well.inner_qy(k);
    if e_in == 0.0 {
        return None;
    }
    let qx = (k * k - energy * energy).sqrt();
    let coupling = e_in * energy - qy_in * k;
    let inner_sq = e_in * e_in - qy_in * qy_in;
    if inner_sq == 0.0 {
        return None;
    }
    Some(if inner_sq > 0.0 {
        let kp = inner_sq.sqrt();
        coupling * (2.0 * kp * h).sin() - kp * qx * (2.0 * kp * h).cos()
    } else {
        let kap = (-inner_sq).sqrt();
        coupling * (2.0 * kap * h).sinh() - kap * qx * (2.0 * kap * h).cosh()
    })
}

/// Scan-and-bisect eigenvalue finder built on the reduced condition only.
pub fn oracle_bound_energies(k: f64, well: &WellConfig, points_per_window: usize) -> Vec<f64> {
    let band = k.abs();
    let mut edges = vec![-band, band];
    edges.push(0.0);
    match well.kind {
        WellKind::Magnetic => {
            let q = (k + well.strength).abs();
            edges.push(q);
            edges.push(-q);
        }
        WellKind::Electric => {
            edges.push(-well.strength + band);
            edges.push(-well.strength - band);
            edges.push(-well.strength);
        }
    }
    edges.retain(|e| e.abs() <= band);
    edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
    edges.dedup();

    let mut roots = Vec::new();
    for w in edges.windows(2) {
        let width = w[1] - w[0];
        if width <= 0.0 {
            continue;
        }
        let inset = (width * 1e-9).max(1e-12);
        let (lo, hi) = (w[0] + inset, w[1] - inset);
        if lo >= hi {
            continue;
        }
        let step = (hi - lo) / (points_per_window - 1) as f64;
        let mut prev: Option<(f64, f64)> = None;
        for i in 0..points_per_window {
            let e = lo + step * i as f64;
            let Some(d) = reduced_bound_condition(e, k, well) else {
                prev = None;
                continue;
            };
            if d == 0.0 {
                roots.push(e);
                prev = None;
                continue;
            }
            if let Some((pe, pd)) = prev {
                if pd.signum() != d.signum() {
                    let (mut a, mut b, mut fa) = (pe, e, pd);
                    for _ in 0..128 {
                        if b - a < 1e-12 {
                            break;
                        }
                        let m = 0.5 * (a + b);
                        let fm = reduced_bound_condition(m, k, well).unwrap();
                        if fm == 0.0 {
                            break;
                        }
                        if fm.signum() == fa.signum() {
                            a = m;
                            fa = fm;
                        } else {
                            b = m;
                        }
                    }
                    roots.push(0.5 * (a + b));
                }
            }
            prev = Some((e, d));
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots
}

/// Uniform grid helper.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| lo + step * i as f64).collect()
}

/// Symmetric grid about 0 with an odd number of points.
pub fn symmetric_grid(half_span: f64, n_half: usize) -> Vec<f64> {
    let step = half_span / n_half as f64;
    (-(n_half as i64)..=n_half as i64).map(|i| i as f64 * step).collect()
}
