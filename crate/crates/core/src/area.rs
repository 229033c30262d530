//! Area integrals of sampled potentials and the negative-area bound-state criterion.

use serde::{Deserialize, Serialize};

use crate::ansatz::HbsAnsatz;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::partner::build_pair;
use crate::potential::PotentialTable;

/// |I| at or below this is reported as zero area.
pub const SIGN_TOLERANCE: f64 = 1e-9;
/// Largest |W| tolerated at the domain edges for the area identity.
pub const EDGE_W_TOLERANCE: f64 = 1e-6;

/// Composite Simpson rule on a uniform grid with an odd number of samples.
pub fn simpson(grid: &Grid, values: &[f64]) -> Result<f64> {
    let n = values.len();
    if n != grid.len() {
        return Err(Error::GridMismatch(format!(
            "{n} samples for a grid of {} points",
            grid.len()
        )));
    }
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::GridMismatch(format!(
            "Simpson needs an odd number of samples >= 3, got {n}"
        )));
    }
    let interior: f64 = values[1..n - 1]
        .iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 0 { 4.0 * v } else { 2.0 * v })
        .sum();
    Ok(grid.step() / 3.0 * (values[0] + interior + values[n - 1]))
}

pub fn area_integral(potential: &PotentialTable) -> Result<f64> {
    simpson(&potential.grid, &potential.values)
}

/// ∫(1 + x²)|V| dx over the sampled window only.
pub fn weighted_moment(potential: &PotentialTable) -> Result<f64> {
    let grid = potential.grid;
    let integrand: Vec<f64> = potential
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let x = grid.x(i);
            (1.0 + x * x) * v.abs()
        })
        .collect();
    simpson(&grid, &integrand)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AreaSign {
    Negative,
    Zero,
    Positive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatePrediction {
    AtLeastOneBoundState,
    NoUnconditionalGuarantee,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AreaReport {
    #[serde(rename = "I")]
    pub integral: f64,
    /// Finite over the sampled window; a sanity indicator, not a membership proof.
    #[serde(rename = "I_weighted")]
    pub weighted_integral: f64,
    pub sign: AreaSign,
    pub prediction: BoundStatePrediction,
}

pub fn simon_classify(potential: &PotentialTable) -> Result<AreaReport> {
    let integral = area_integral(potential)?;
    let weighted_integral = weighted_moment(potential)?;
    let sign = if integral.abs() <= SIGN_TOLERANCE {
        AreaSign::Zero
    } else if integral < 0.0 {
        AreaSign::Negative
    } else {
        AreaSign::Positive
    };
    let prediction = if sign == AreaSign::Negative {
        BoundStatePrediction::AtLeastOneBoundState
    } else {
        BoundStatePrediction::NoUnconditionalGuarantee
    };
    Ok(AreaReport {
        integral,
        weighted_integral,
        sign,
        prediction,
    })
}

/// ∫V₋, ∫V₊ and ∫W² over the grid. With W(±∞) = 0 the boundary terms drop
/// out and all three coincide.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AreaIdentity {
    pub lhs_minus: f64,
    pub lhs_plus: f64,
    pub rhs: f64,
}

impl AreaIdentity {
    pub fn max_discrepancy(&self) -> f64 {
        (self.lhs_minus - self.rhs)
            .abs()
            .max((self.lhs_plus - self.rhs).abs())
            .max((self.lhs_minus - self.lhs_plus).abs())
    }
}

pub fn w2_identity(ansatz: &HbsAnsatz, grid: &Grid) -> Result<AreaIdentity> {
    let pair = build_pair(ansatz, grid)?;
    let left = pair.w[0].abs();
    let right = pair.w[pair.w.len() - 1].abs();
    if left > EDGE_W_TOLERANCE || right > EDGE_W_TOLERANCE {
        return Err(Error::BoundaryNotDecayed { left, right });
    }
    Ok(AreaIdentity {
        lhs_minus: simpson(grid, &pair.v_minus)?,
        lhs_plus: simpson(grid, &pair.v_plus)?,
        rhs: simpson(grid, &pair.w_squared())?,
    })
}
