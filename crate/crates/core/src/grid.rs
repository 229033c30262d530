use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Half-width of the default working domain.
pub const DEFAULT_EXTENT: f64 = 12.0;
/// Default step on the working domain.
pub const DEFAULT_STEP: f64 = 0.005;

/// Uniform grid with an odd number of points, so composite Simpson applies directly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_min >= x_max {
            return Err(Error::InvalidParams(format!(
                "grid bounds must be finite with x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < 3 || n_points.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!(
                "grid needs an odd number of points >= 3, got {n_points}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
        })
    }

    /// Grid on `[-extent, extent]`.
    pub fn symmetric(extent: f64, n_points: usize) -> Result<Self> {
        Self::new(-extent, extent, n_points)
    }

    /// Symmetric grid whose step is at most `step` (point count rounded up to odd).
    pub fn symmetric_with_step(extent: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::InvalidParams(format!(
                "step must be positive, got {step}"
            )));
        }
        let mut n = (2.0 * extent / step).ceil() as usize + 1;
        if n.is_multiple_of(2) {
            n += 1;
        }
        Self::symmetric(extent, n)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    /// Abscissa of node `i`. Symmetric grids give exactly antisymmetric nodes.
    pub fn x(&self, i: usize) -> f64 {
        let m = (self.n_points - 1) as f64;
        let i = i as f64;
        (self.x_min * (m - i) + self.x_max * i) / m
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }

    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        (0..self.n_points).map(|i| f(self.x(i))).collect()
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.x_min && x <= self.x_max
    }
}

impl Default for Grid {
    fn default() -> Self {
        Self::symmetric_with_step(DEFAULT_EXTENT, DEFAULT_STEP).expect("default grid is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_has_4801_points() {
        let g = Grid::default();
        assert_eq!(g.len(), 4801);
        assert!((g.step() - 0.005).abs() < 1e-15);
        assert_eq!(g.x(0), -12.0);
        assert_eq!(g.x(4800), 12.0);
        assert_eq!(g.x(2400), 0.0);
    }

    #[test]
    fn symmetric_nodes_are_exact_mirrors() {
        let g = Grid::symmetric(7.3, 1001).unwrap();
        for i in 0..g.len() {
            assert_eq!(g.x(i), -g.x(g.len() - 1 - i));
        }
    }

    #[test]
    fn rejects_even_or_tiny_counts() {
        assert!(Grid::new(0.0, 1.0, 4).is_err());
        assert!(Grid::new(0.0, 1.0, 1).is_err());
        assert!(Grid::new(1.0, 0.0, 5).is_err());
    }
}
