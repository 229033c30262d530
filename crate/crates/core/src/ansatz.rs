//! Half-bound-state ansätze ψ*(x) = A + F(x) and the superpotential W = −ψ*′/ψ*.
//!
//! Every built-in family has closed-form first and second derivatives. `F` is
//! evaluated at `u = x / width`, so `width = 1` reproduces the bare functions
//! e^{−x²}, tanh x, erf x and x·e^{−x²}.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::interp;

/// |ψ*| below this is treated as a node when forming W.
pub const NODE_FLOOR: f64 = 1e-12;

/// Extremum of u·e^{−u²}, reached at u = ±1/√2.
pub fn xgauss_extremum() -> f64 {
    (2.0 * E).sqrt().recip()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gaussian,
    Tanh,
    Erf,
    #[serde(rename = "xgauss")]
    XGauss,
    /// F ≡ 0; gives W ≡ 0 and vanishing partners.
    Constant,
    Tabulated,
}

impl Family {
    pub const BUILT_IN: [Family; 4] = [Family::Gaussian, Family::Tanh, Family::Erf, Family::XGauss];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gaussian => "gaussian",
            Family::Tanh => "tanh",
            Family::Erf => "erf",
            Family::XGauss => "xgauss",
            Family::Constant => "constant",
            Family::Tabulated => "tabulated",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gaussian" | "gauss" => Ok(Family::Gaussian),
            "tanh" => Ok(Family::Tanh),
            "erf" => Ok(Family::Erf),
            "xgauss" | "x-gauss" => Ok(Family::XGauss),
            "constant" => Ok(Family::Constant),
            "tabulated" => Ok(Family::Tabulated),
            other => Err(Error::InvalidParams(format!(
                "unknown ansatz family '{other}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnsatzParams {
    #[serde(default = "default_width")]
    pub width: f64,
}

fn default_width() -> f64 {
    1.0
}

impl Default for AnsatzParams {
    fn default() -> Self {
        Self { width: 1.0 }
    }
}

/// Sampled F, F′, F″ for the tabulated family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub x: Vec<f64>,
    pub f: Vec<f64>,
    pub df: Vec<f64>,
    pub ddf: Vec<f64>,
}

impl Table {
    fn validate(&self) -> Result<()> {
        let n = self.x.len();
        if n < 2 || self.f.len() != n || self.df.len() != n || self.ddf.len() != n {
            return Err(Error::InvalidParams(
                "table needs at least two rows and equal column lengths".into(),
            ));
        }
        if self.x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParams(
                "table x must be strictly increasing".into(),
            ));
        }
        let all = self
            .x
            .iter()
            .chain(&self.f)
            .chain(&self.df)
            .chain(&self.ddf);
        if all.into_iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams(
                "table contains non-finite entries".into(),
            ));
        }
        Ok(())
    }
}

/// ψ* and its first two derivatives at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateValue {
    pub psi: f64,
    pub psi_prime: f64,
    pub psi_second: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpotentialSample {
    pub x: f64,
    pub w: f64,
    pub w_prime: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeReport {
    /// Locations of sign changes of ψ*, refined by bisection.
    pub nodes: Vec<f64>,
    /// Smallest |ψ*| among the samples.
    pub min_abs_psi: f64,
}

impl NodeReport {
    pub fn count(&self) -> usize {
        self.nodes.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAnsatz")]
pub struct HbsAnsatz {
    family: Family,
    offset: f64,
    #[serde(default)]
    params: AnsatzParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<Table>,
}

#[derive(Deserialize)]
struct RawAnsatz {
    family: Family,
    offset: f64,
    #[serde(default)]
    params: AnsatzParams,
    #[serde(default)]
    table: Option<Table>,
}

impl TryFrom<RawAnsatz> for HbsAnsatz {
    type Error = Error;

    fn try_from(raw: RawAnsatz) -> Result<Self> {
        match raw.family {
            Family::Tabulated => {
                let table = raw.table.ok_or_else(|| {
                    Error::InvalidParams("tabulated ansatz requires a table".into())
                })?;
                HbsAnsatz::tabulated(raw.offset, table)
            }
            family => HbsAnsatz::new(family, raw.offset, raw.params),
        }
    }
}

impl HbsAnsatz {
    /// Validated built-in ansatz. Offsets that put a zero in the range of ψ*
    /// (including ψ*(±∞) = 0) are rejected.
    pub fn new(family: Family, offset: f64, params: AnsatzParams) -> Result<Self> {
        let ansatz = Self::new_unchecked(family, offset, params)?;
        if let Some(reason) = ansatz.range_contains_zero() {
            return Err(Error::NodeDetected(reason));
        }
        Ok(ansatz)
    }

    /// Built-in ansatz with the default width.
    pub fn with_offset(family: Family, offset: f64) -> Result<Self> {
        Self::new(family, offset, AnsatzParams::default())
    }

    /// Built-in ansatz without the nodelessness check, for node reports.
    pub fn new_unchecked(family: Family, offset: f64, params: AnsatzParams) -> Result<Self> {
        if family == Family::Tabulated {
            return Err(Error::InvalidParams(
                "use HbsAnsatz::tabulated for tabulated ansätze".into(),
            ));
        }
        if !offset.is_finite() {
            return Err(Error::InvalidParams(format!(
                "offset must be finite, got {offset}"
            )));
        }
        if !(params.width.is_finite() && params.width > 0.0) {
            return Err(Error::InvalidParams(format!(
                "width must be positive, got {}",
                params.width
            )));
        }
        Ok(Self {
            family,
            offset,
            params,
            table: None,
        })
    }

    /// Tabulated ansatz; F, F′ and F″ are interpolated with cubic Hermite pieces.
    pub fn tabulated(offset: f64, table: Table) -> Result<Self> {
        table.validate()?;
        if !offset.is_finite() {
            return Err(Error::InvalidParams(format!(
                "offset must be finite, got {offset}"
            )));
        }
        let ansatz = Self {
            family: Family::Tabulated,
            offset,
            params: AnsatzParams::default(),
            table: Some(table),
        };
        if let Some(reason) = ansatz.range_contains_zero() {
            return Err(Error::NodeDetected(reason));
        }
        Ok(ansatz)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn params(&self) -> AnsatzParams {
        self.params
    }

    pub fn table(&self) -> Option<&Table> {
        self.table.as_ref()
    }

    /// Limits of F at −∞ and +∞.
    pub fn asymptotes(&self) -> (f64, f64) {
        match self.family {
            Family::Gaussian | Family::XGauss | Family::Constant => (0.0, 0.0),
            Family::Tanh | Family::Erf => (-1.0, 1.0),
            Family::Tabulated => {
                let t = self.table.as_ref().expect("tabulated ansatz has a table");
                (t.f[0], t.f[t.f.len() - 1])
            }
        }
    }

    fn range_contains_zero(&self) -> Option<String> {
        let a = self.offset;
        let (c1, c2) = self.asymptotes();
        if a + c1 == 0.0 || a + c2 == 0.0 {
            return Some(format!("psi*(+-inf) = 0 for offset {a}"));
        }
        let hit = match self.family {
            // F in (0, 1]
            Family::Gaussian => (-1.0..=0.0).contains(&a),
            // F in (-1, 1)
            Family::Tanh | Family::Erf => a > -1.0 && a < 1.0,
            Family::XGauss => a.abs() <= xgauss_extremum(),
            Family::Constant => false,
            Family::Tabulated => {
                let t = self.table.as_ref().expect("tabulated ansatz has a table");
                let first = (a + t.f[0]).signum();
                t.f.iter()
                    .any(|f| (a + f) == 0.0 || (a + f).signum() != first)
            }
        };
        hit.then(|| {
            format!(
                "{} ansatz with offset {a} vanishes somewhere",
                self.family.name()
            )
        })
    }

    /// ψ*, ψ*′ and ψ*″ at `x`.
    pub fn eval_state(&self, x: f64) -> Result<StateValue> {
        let w = self.params.width;
        let u = x / w;
        let (f, df, ddf) = match self.family {
            Family::Gaussian => {
                let g = (-u * u).exp();
                (g, -2.0 * u * g, (4.0 * u * u - 2.0) * g)
            }
            Family::Tanh => {
                let t = u.tanh();
                let s2 = sech2(u);
                (t, s2, -2.0 * t * s2)
            }
            Family::Erf => {
                let g = 2.0 / PI.sqrt() * (-u * u).exp();
                (libm::erf(u), g, -2.0 * u * g)
            }
            Family::XGauss => {
                let g = (-u * u).exp();
                (
                    u * g,
                    (1.0 - 2.0 * u * u) * g,
                    (4.0 * u * u * u - 6.0 * u) * g,
                )
            }
            Family::Constant => (0.0, 0.0, 0.0),
            Family::Tabulated => {
                let t = self.table.as_ref().expect("tabulated ansatz has a table");
                let out = || Error::OutOfTable {
                    x,
                    lo: t.x[0],
                    hi: t.x[t.x.len() - 1],
                };
                let (f, _) = interp::hermite(&t.x, &t.f, &t.df, x).ok_or_else(out)?;
                let (df, ddf) = interp::hermite(&t.x, &t.df, &t.ddf, x).ok_or_else(out)?;
                return Ok(StateValue {
                    psi: self.offset + f,
                    psi_prime: df,
                    psi_second: ddf,
                });
            }
        };
        Ok(StateValue {
            psi: self.offset + f,
            psi_prime: df / w,
            psi_second: ddf / (w * w),
        })
    }

    /// W = −ψ*′/ψ* and W′ = −ψ*″/ψ* + (ψ*′/ψ*)², with the default node floor.
    pub fn superpotential(&self, x: f64) -> Result<SuperpotentialSample> {
        self.superpotential_with_floor(x, NODE_FLOOR)
    }

    pub fn superpotential_with_floor(&self, x: f64, floor: f64) -> Result<SuperpotentialSample> {
        let s = self.eval_state(x)?;
        if !(s.psi.abs() >= floor) {
            return Err(Error::DivisionNearNode { x, psi: s.psi });
        }
        let log_derivative = s.psi_prime / s.psi;
        Ok(SuperpotentialSample {
            x,
            w: -log_derivative,
            w_prime: -s.psi_second / s.psi + log_derivative * log_derivative,
        })
    }

    /// Counts sign changes of ψ* over the grid, refining each by bisection.
    pub fn validate_nodeless(&self, domain: &Grid) -> NodeReport {
        let psi = |x: f64| self.eval_state(x).map(|s| s.psi).unwrap_or(f64::NAN);
        let mut nodes = Vec::new();
        let mut min_abs = f64::INFINITY;
        let mut last: Option<(f64, f64)> = None;
        for i in 0..domain.len() {
            let x = domain.x(i);
            let p = psi(x);
            if !p.is_finite() {
                continue;
            }
            min_abs = min_abs.min(p.abs());
            if p == 0.0 {
                continue;
            }
            if let Some((xl, pl)) = last {
                if pl.signum() != p.signum() {
                    nodes.push(bisect_sign_change(&psi, xl, x, pl));
                }
            }
            last = Some((x, p));
        }
        NodeReport {
            nodes,
            min_abs_psi: min_abs,
        }
    }
}

fn sech2(u: f64) -> f64 {
    let c = u.cosh();
    (c * c).recip()
}

fn bisect_sign_change<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
    let sign_lo = f_lo.signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
