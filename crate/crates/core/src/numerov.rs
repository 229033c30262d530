//! Numerov integration of ψ″ = (V − E)ψ on uniform grids.
//!
//! The recurrence is
//! ψₙ₊₁(1 + h²fₙ₊₁/12) = 2ψₙ(1 − 5h²fₙ/12) − ψₙ₋₁(1 + h²fₙ₋₁/12)
//! with f = E − V, which is O(h⁴) accurate globally. Values are complex so the
//! same engine serves bound-state shooting (real data) and scattering.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::potential::PotentialTable;

/// Magnitude above which the running solution is rescaled.
pub const RESCALE_THRESHOLD: f64 = 1e100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Start at `x_min` and march towards `x_max`.
    Forward,
    /// Start at `x_max` and march towards `x_min`.
    Backward,
}

/// Solution sampled on a grid.
///
/// The true solution is `values[i] * exp(log_scale)`; `log_scale` is nonzero only
/// when the integration had to renormalize to avoid overflow.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveTable {
    pub grid: Grid,
    pub values: Vec<Complex64>,
    pub log_scale: f64,
}

impl WaveTable {
    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }
}

/// Integrate over the whole grid of `potential` at energy `energy`.
///
/// `psi0`, `psi1` are the values on the first two nodes in the marching direction.
pub fn integrate(
    potential: &PotentialTable,
    energy: f64,
    direction: Direction,
    psi0: Complex64,
    psi1: Complex64,
) -> Result<WaveTable> {
    let grid = potential.grid;
    let h = grid.step();
    let mut f: Vec<f64> = potential.values.iter().map(|v| energy - v).collect();
    if direction == Direction::Backward {
        f.reverse();
    }
    let (mut values, log_scale) = march(&f, h, psi0, psi1);
    if direction == Direction::Backward {
        values.reverse();
    }
    if let Some(i) = values
        .iter()
        .position(|z| !(z.re.is_finite() && z.im.is_finite()))
    {
        return Err(Error::NonFinite(format!(
            "Numerov solution at x = {}",
            grid.x(i)
        )));
    }
    Ok(WaveTable {
        grid,
        values,
        log_scale,
    })
}

/// Forward Numerov march over `f = E − V` sampled with step `h`.
///
/// Returns the solution (same length as `f`) and the accumulated natural-log
/// rescale factor.
pub fn march(f: &[f64], h: f64, psi0: Complex64, psi1: Complex64) -> (Vec<Complex64>, f64) {
    let n = f.len();
    assert!(n >= 2, "Numerov needs at least two nodes");
    let c = h * h / 12.0;
    let mut psi = Vec::with_capacity(n);
    psi.push(psi0);
    psi.push(psi1);
    let mut log_scale = 0.0;
    for i in 1..n - 1 {
        let next = (psi[i] * (2.0 * (1.0 - 5.0 * c * f[i])) - psi[i - 1] * (1.0 + c * f[i - 1]))
            / (1.0 + c * f[i + 1]);
        psi.push(next);
        let mag = next.norm();
        if mag > RESCALE_THRESHOLD {
            for z in psi.iter_mut() {
                *z /= mag;
            }
            log_scale += mag.ln();
        }
    }
    (psi, log_scale)
}
