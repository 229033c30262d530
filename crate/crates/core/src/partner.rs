//! Supersymmetric partner potentials V± = W² ± W′ built from an HBS ansatz.

use serde::{Deserialize, Serialize};

use crate::ansatz::{Family, HbsAnsatz};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::interp;
use crate::potential::{Potential, PotentialTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Minus => "minus",
            Side::Plus => "plus",
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "minus" | "-" | "vminus" => Ok(Side::Minus),
            "plus" | "+" | "vplus" => Ok(Side::Plus),
            other => Err(Error::InvalidParams(format!(
                "unknown partner side '{other}'"
            ))),
        }
    }
}

/// Sampled W, W′, V₋ and V₊ on a shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PartnerPair {
    pub grid: Grid,
    pub w: Vec<f64>,
    pub w_prime: Vec<f64>,
    pub v_minus: Vec<f64>,
    pub v_plus: Vec<f64>,
    pub ansatz: HbsAnsatz,
}

/// Samples the partner pair of a nodeless ansatz on `grid`.
pub fn build_pair(ansatz: &HbsAnsatz, grid: &Grid) -> Result<PartnerPair> {
    let report = ansatz.validate_nodeless(grid);
    if report.count() > 0 {
        return Err(Error::NodeDetected(format!(
            "psi* changes sign at {:?}",
            report.nodes
        )));
    }
    let n = grid.len();
    let mut pair = PartnerPair {
        grid: *grid,
        w: Vec::with_capacity(n),
        w_prime: Vec::with_capacity(n),
        v_minus: Vec::with_capacity(n),
        v_plus: Vec::with_capacity(n),
        ansatz: ansatz.clone(),
    };
    for i in 0..n {
        let s = ansatz.superpotential(grid.x(i))?;
        let w2 = s.w * s.w;
        pair.w.push(s.w);
        pair.w_prime.push(s.w_prime);
        pair.v_minus.push(w2 - s.w_prime);
        pair.v_plus.push(w2 + s.w_prime);
    }
    for i in 0..n {
        let gap = pair.v_plus[i] - pair.v_minus[i] - 2.0 * pair.w_prime[i];
        assert!(
            gap.abs() <= 1e-14 * (1.0 + pair.w[i] * pair.w[i] + pair.w_prime[i].abs()),
            "V+ - V- != 2W' at x = {}",
            grid.x(i)
        );
    }
    Ok(pair)
}

impl PartnerPair {
    pub fn side(&self, side: Side) -> &[f64] {
        match side {
            Side::Minus => &self.v_minus,
            Side::Plus => &self.v_plus,
        }
    }

    pub fn table(&self, side: Side) -> PotentialTable {
        PotentialTable {
            grid: self.grid,
            values: self.side(side).to_vec(),
        }
    }

    pub fn w_squared(&self) -> Vec<f64> {
        self.w.iter().map(|w| w * w).collect()
    }

    /// max |ψ*″ − V₋ψ*| / max |ψ*″| over the grid.
    pub fn zero_energy_residual(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for (i, vm) in self.v_minus.iter().enumerate() {
            let s = self.ansatz.eval_state(self.grid.x(i))?;
            worst = worst.max((s.psi_second - vm * s.psi).abs());
            scale = scale.max(s.psi_second.abs());
        }
        Ok(if scale > 0.0 { worst / scale } else { worst })
    }

    /// Largest |V(x) − V(−x)| over both partners.
    pub fn max_asymmetry(&self) -> f64 {
        let n = self.grid.len();
        (0..n)
            .map(|i| {
                let j = n - 1 - i;
                (self.v_minus[i] - self.v_minus[j])
                    .abs()
                    .max((self.v_plus[i] - self.v_plus[j]).abs())
            })
            .fold(0.0, f64::max)
    }
}

/// V₋ or V₊ (times `factor`) evaluated pointwise from the analytic W, W′.
#[derive(Debug, Clone, PartialEq)]
pub struct PartnerPotential {
    ansatz: HbsAnsatz,
    side: Side,
    factor: f64,
}

impl PartnerPotential {
    pub fn new(ansatz: HbsAnsatz, side: Side) -> Self {
        Self {
            ansatz,
            side,
            factor: 1.0,
        }
    }

    /// c·V± for c > 0.
    pub fn scaled(mut self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::NonPositiveScale(c));
        }
        self.factor *= c;
        Ok(self)
    }

    /// −V±.
    pub fn negated(mut self) -> Self {
        self.factor = -self.factor;
        self
    }

    pub fn factor(&self) -> f64 {
        self.factor
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn ansatz(&self) -> &HbsAnsatz {
        &self.ansatz
    }
}

impl Potential for PartnerPotential {
    fn value(&self, x: f64) -> f64 {
        match self.ansatz.superpotential(x) {
            Ok(s) => {
                let w2 = s.w * s.w;
                let v = match self.side {
                    Side::Minus => w2 - s.w_prime,
                    Side::Plus => w2 + s.w_prime,
                };
                self.factor * v
            }
            // Tabulated seeds are taken as flat beyond their table.
            Err(Error::OutOfTable { .. }) => 0.0,
            Err(_) => f64::NAN,
        }
    }
}

/// Closed-form partners of ψ* = A + tanh x:
/// V₋ = −2 sech²x tanh x / (A + tanh x), V₊ = 2 sech²x (1 + A tanh x) / (A + tanh x)².
pub fn tanh_closed_form(offset: f64, x: f64) -> Result<(f64, f64)> {
    if !(offset.abs() > 1.0) {
        return Err(Error::NodeDetected(format!(
            "A + tanh x has a node for |A| <= 1 (A = {offset})"
        )));
    }
    let t = x.tanh();
    let c = x.cosh();
    let s2 = 1.0 / (c * c);
    let d = offset + t;
    Ok((-2.0 * s2 * t / d, 2.0 * s2 * (1.0 + offset * t) / (d * d)))
}

/// g = ½ ln((A − 1)/(A + 1)), the point where V₊(g − x) = V₋(x) for the tanh seed.
pub fn mirror_point(offset: f64) -> Result<f64> {
    if !(offset.abs() > 1.0) {
        return Err(Error::DomainError(format!(
            "(A - 1)/(A + 1) must be positive, got A = {offset}"
        )));
    }
    Ok(0.5 * ((offset - 1.0) / (offset + 1.0)).ln())
}

/// max |V₊(g − x) − V₋(x)| over grid nodes x for which g − x stays on the grid,
/// with V₊ interpolated cubically between nodes.
pub fn mirror_residual(offset: f64, grid: &Grid) -> Result<f64> {
    let g = mirror_point(offset)?;
    let pair = build_pair(&HbsAnsatz::with_offset(Family::Tanh, offset)?, grid)?;
    let mut worst: f64 = 0.0;
    for i in 0..grid.len() {
        if let Some(vp) = interp::cubic_uniform(grid, &pair.v_plus, g - grid.x(i)) {
            worst = worst.max((vp - pair.v_minus[i]).abs());
        }
    }
    Ok(worst)
}

/// c·V± sampled on the pair's grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledPotential {
    pub side: Side,
    pub c: f64,
    pub grid: Grid,
    pub values: Vec<f64>,
}

impl ScaledPotential {
    pub fn table(&self) -> PotentialTable {
        PotentialTable {
            grid: self.grid,
            values: self.values.clone(),
        }
    }
}

pub fn scale(pair: &PartnerPair, side: Side, c: f64) -> Result<ScaledPotential> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::NonPositiveScale(c));
    }
    Ok(ScaledPotential {
        side,
        c,
        grid: pair.grid,
        values: pair.side(side).iter().map(|v| c * v).collect(),
    })
}
