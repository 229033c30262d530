use serde::{Deserialize, Serialize};

/// One bound state found by a solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    pub energy: f64,
    pub nodes: usize,
    /// Matching-function value at the reported energy.
    pub residual: f64,
    /// Half-width of the domain the state was converged on (infinite for analytic solvers).
    pub domain_used: f64,
}

/// Bound states in ascending energy order.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Spectrum {
    pub states: Vec<BoundState>,
    /// Energy window that was searched, `(lowest, highest)`.
    pub window: (f64, f64),
}

impl Spectrum {
    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn energies(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.energy).collect()
    }

    pub fn node_counts(&self) -> Vec<usize> {
        self.states.iter().map(|s| s.nodes).collect()
    }

    pub fn ground(&self) -> Option<&BoundState> {
        self.states.first()
    }

    /// Node counts read 0, 1, 2, … in energy order.
    pub fn is_oscillation_ordered(&self) -> bool {
        self.states.iter().enumerate().all(|(i, s)| s.nodes == i)
            && self.states.windows(2).all(|w| w[0].energy < w[1].energy)
    }
}
