//! Scattering potentials as continuous functions and as sampled tables.

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::interp;

/// A real potential V(x) that can be sampled anywhere on the real line.
pub trait Potential: Sync {
    fn value(&self, x: f64) -> f64;

    fn sample(&self, grid: &Grid) -> PotentialTable {
        PotentialTable {
            grid: *grid,
            values: grid.sample(|x| self.value(x)),
        }
    }
}

/// Closure-backed potential.
pub struct FnPotential<F>(pub F);

impl<F: Fn(f64) -> f64 + Sync> Potential for FnPotential<F> {
    fn value(&self, x: f64) -> f64 {
        (self.0)(x)
    }
}

/// A potential sampled on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialTable {
    pub grid: Grid,
    pub values: Vec<f64>,
}

impl PotentialTable {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} samples for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            values: vec![0.0; grid.len()],
            grid,
        }
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    /// Mirror image V(-x) on the mirrored grid.
    pub fn reversed(&self) -> Self {
        let grid = Grid::new(-self.grid.x_max(), -self.grid.x_min(), self.grid.len())
            .expect("mirrored grid is valid");
        let mut values = self.values.clone();
        values.reverse();
        Self { grid, values }
    }

    /// Largest magnitude among the two end samples.
    pub fn edge_magnitude(&self) -> f64 {
        self.values[0]
            .abs()
            .max(self.values[self.values.len() - 1].abs())
    }

    /// Index and value of the minimum sample.
    pub fn argmin(&self) -> (usize, f64) {
        self.values
            .iter()
            .copied()
            .enumerate()
            .fold(
                (0, f64::INFINITY),
                |best, (i, v)| if v < best.1 { (i, v) } else { best },
            )
    }
}

/// Cubic interpolation inside the table, zero outside (scattering-well tails).
impl Potential for PotentialTable {
    fn value(&self, x: f64) -> f64 {
        interp::cubic_uniform(&self.grid, &self.values, x).unwrap_or(0.0)
    }

    fn sample(&self, grid: &Grid) -> PotentialTable {
        if *grid == self.grid {
            return self.clone();
        }
        PotentialTable {
            grid: *grid,
            values: grid.sample(|x| self.value(x)),
        }
    }
}

impl<P: Potential + ?Sized> Potential for &P {
    fn value(&self, x: f64) -> f64 {
        (**self).value(x)
    }

    fn sample(&self, grid: &Grid) -> PotentialTable {
        (**self).sample(grid)
    }
}
