//! Transmission and reflection through sampled scattering potentials.
//!
//! A purely outgoing wave ψ = e^{ikx} is imposed on the far side and Numerov
//! integrates back to the incidence edge, where ψ = A·e^{ikx} + B·e^{−ikx}
//! gives T = 1/|A|² and R = |B|²/|A|².

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerov::{self, Direction};
use crate::potential::PotentialTable;

/// Largest |V| tolerated at the grid edges.
pub const EDGE_TOLERANCE: f64 = 1e-8;
/// T above this at a local maximum marks a candidate resonance.
pub const PEAK_THRESHOLD: f64 = 0.999;
/// Candidate peaks narrower than this half-width are called sharp.
pub const SHARP_HALF_WIDTH: f64 = 0.1;
/// R below this is numerical noise of the matching; such dips are not minima.
pub const R_NOISE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Incidence {
    FromLeft,
    FromRight,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringPoint {
    pub energy: f64,
    pub r: f64,
    pub t: f64,
    pub unitarity_residual: f64,
}

pub fn rt_coefficients(potential: &PotentialTable, energy: f64) -> Result<ScatteringPoint> {
    rt_coefficients_from(potential, energy, Incidence::FromLeft)
}

pub fn rt_coefficients_from(
    potential: &PotentialTable,
    energy: f64,
    incidence: Incidence,
) -> Result<ScatteringPoint> {
    if !(energy > 0.0) {
        return Err(Error::EnergyNonPositive(energy));
    }
    let edge = potential.edge_magnitude();
    if !(edge <= EDGE_TOLERANCE) {
        return Err(Error::EdgeNotFlat(edge));
    }
    let mirrored;
    let table = match incidence {
        Incidence::FromLeft => potential,
        Incidence::FromRight => {
            mirrored = potential.reversed();
            &mirrored
        }
    };
    let grid = table.grid;
    let n = grid.len();
    if n < 5 {
        return Err(Error::GridMismatch("need at least five nodes".into()));
    }
    let h = grid.step();
    let k = energy.sqrt();
    let outgoing = |x: f64| Complex64::from_polar(1.0, k * x);
    let wave = numerov::integrate(
        table,
        energy,
        Direction::Backward,
        outgoing(grid.x(n - 1)),
        outgoing(grid.x(n - 2)),
    )?;
    let psi = &wave.values;
    // one-sided five-point derivative, O(h⁴)
    let dpsi = (psi[0] * -25.0 + psi[1] * 48.0 - psi[2] * 36.0 + psi[3] * 16.0 - psi[4] * 3.0)
        / (12.0 * h);
    let x0 = grid.x(0);
    let ik = Complex64::new(0.0, k);
    let a = (psi[0] + dpsi / ik) * 0.5 * Complex64::from_polar(1.0, -k * x0);
    let b = (psi[0] - dpsi / ik) * 0.5 * Complex64::from_polar(1.0, k * x0);
    let a2 = a.norm_sqr();
    let t = 1.0 / a2;
    let r = b.norm_sqr() / a2;
    if !(t.is_finite() && r.is_finite()) {
        return Err(Error::NonFinite(format!("R/T at E = {energy}")));
    }
    Ok(ScatteringPoint {
        energy,
        r,
        t,
        unitarity_residual: (r + t - 1.0).abs(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransmissionPeak {
    pub energy: f64,
    pub t: f64,
    /// Half of the full width at T = T_peak/2; infinite if T never halves on both sides.
    pub half_width: f64,
}

impl TransmissionPeak {
    pub fn is_sharp(&self) -> bool {
        self.half_width < SHARP_HALF_WIDTH
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatteringCurve {
    pub points: Vec<ScatteringPoint>,
    /// Interior local maxima of T above the peak threshold.
    pub candidate_peaks: Vec<TransmissionPeak>,
}

impl ScatteringCurve {
    pub fn sharp_peaks(&self) -> Vec<TransmissionPeak> {
        self.candidate_peaks
            .iter()
            .copied()
            .filter(|p| p.is_sharp())
            .collect()
    }

    pub fn max_unitarity_residual(&self) -> f64 {
        self.points
            .iter()
            .map(|p| p.unitarity_residual)
            .fold(0.0, f64::max)
    }
}

/// `n` log-spaced energies in `[lo, hi]`.
pub fn log_energies(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| match i {
            0 => lo,
            i if i + 1 == n => hi,
            i => (a + (b - a) * i as f64 / (n - 1) as f64).exp(),
        })
        .collect()
}

/// 400 log-spaced energies in [1e−3, 20].
pub fn default_energy_grid() -> Vec<f64> {
    log_energies(1e-3, 20.0, 400)
}

pub fn scan(potential: &PotentialTable, energies: &[f64]) -> Result<ScatteringCurve> {
    if energies.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParams(
            "scan energies must be ascending".into(),
        ));
    }
    let points = energies
        .par_iter()
        .map(|&e| rt_coefficients(potential, e))
        .collect::<Result<Vec<_>>>()?;
    let candidate_peaks = transmission_peaks(&points);
    Ok(ScatteringCurve {
        points,
        candidate_peaks,
    })
}

fn transmission_peaks(points: &[ScatteringPoint]) -> Vec<TransmissionPeak> {
    let mut peaks = Vec::new();
    for i in 1..points.len().saturating_sub(1) {
        let t = points[i].t;
        if !(t > points[i - 1].t && t >= points[i + 1].t && t > PEAK_THRESHOLD) {
            continue;
        }
        let half = 0.5 * t;
        let crossing = |j: usize, k: usize| {
            // linear interpolation of the T = half crossing between j and k
            let (p, q) = (points[j], points[k]);
            p.energy + (half - p.t) * (q.energy - p.energy) / (q.t - p.t)
        };
        let left = (1..=i)
            .rev()
            .find(|&j| points[j - 1].t <= half)
            .map(|j| crossing(j - 1, j));
        let right = (i..points.len() - 1)
            .find(|&j| points[j + 1].t <= half)
            .map(|j| crossing(j, j + 1));
        let half_width = match (left, right) {
            (Some(l), Some(r)) => 0.5 * (r - l),
            _ => f64::INFINITY,
        };
        peaks.push(TransmissionPeak {
            energy: points[i].energy,
            t,
            half_width,
        });
    }
    peaks
}

/// Interior local minima of R, refined by golden-section search to ΔE ≤ 1e−4.
/// Dips whose neighbours both sit below [`R_NOISE_FLOOR`] are skipped.
pub fn find_r_minima(
    potential: &PotentialTable,
    curve: &ScatteringCurve,
) -> Result<Vec<(f64, f64)>> {
    let pts = &curve.points;
    let mut out = Vec::new();
    for i in 1..pts.len().saturating_sub(1) {
        if !(pts[i].r < pts[i - 1].r && pts[i].r < pts[i + 1].r) {
            continue;
        }
        if pts[i - 1].r.max(pts[i + 1].r) < R_NOISE_FLOOR {
            continue;
        }
        out.push(golden_section(
            potential,
            pts[i - 1].energy,
            pts[i + 1].energy,
            1e-4,
        )?);
    }
    Ok(out)
}

fn golden_section(
    potential: &PotentialTable,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let r = |e: f64| rt_coefficients(potential, e).map(|p| p.r);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (r(c)?, r(d)?);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = r(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = r(d)?;
        }
    }
    let e = 0.5 * (a + b);
    Ok((e, r(e)?))
}
