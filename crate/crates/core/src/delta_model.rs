//! Dirac-delta arrays: the zero-energy triple-delta solution and a
//! transfer-matrix bound-state finder.
//!
//! Conventions: ψ″ + [E − V]ψ = 0 with V = −Σ Uⱼ δ(x − xⱼ), so Uⱼ > 0 is a
//! well and the derivative jumps by ψ′(xⱼ⁺) − ψ′(xⱼ⁻) = −Uⱼ ψ(xⱼ).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::{BoundState, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Delta {
    pub position: f64,
    /// Positive for a well.
    pub strength: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Delta>", into = "Vec<Delta>")]
pub struct DeltaArray {
    deltas: Vec<Delta>,
}

impl TryFrom<Vec<Delta>> for DeltaArray {
    type Error = Error;

    fn try_from(deltas: Vec<Delta>) -> Result<Self> {
        DeltaArray::new(deltas)
    }
}

impl From<DeltaArray> for Vec<Delta> {
    fn from(a: DeltaArray) -> Self {
        a.deltas
    }
}

impl DeltaArray {
    pub fn new(deltas: Vec<Delta>) -> Result<Self> {
        if deltas.is_empty() {
            return Err(Error::InvalidParams(
                "delta array needs at least one delta".into(),
            ));
        }
        if deltas
            .iter()
            .any(|d| !(d.position.is_finite() && d.strength.is_finite()))
        {
            return Err(Error::InvalidParams(
                "delta positions and strengths must be finite".into(),
            ));
        }
        if deltas.windows(2).any(|w| !(w[1].position > w[0].position)) {
            return Err(Error::InvalidParams(
                "delta positions must be strictly increasing".into(),
            ));
        }
        Ok(Self { deltas })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(position, strength)| Delta { position, strength })
                .collect(),
        )
    }

    pub fn deltas(&self) -> &[Delta] {
        &self.deltas
    }

    /// Sum of the well strengths.
    pub fn total_well_strength(&self) -> f64 {
        self.deltas.iter().map(|d| d.strength.max(0.0)).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseLabel {
    /// u1·a > 1: three wells, the HBS has two nodes.
    ThreeWells,
    /// 0 < u1·a < 1: wells at ±a, barrier at 0, nodeless HBS.
    OuterWellsCentralBarrier,
    /// u1·a < 0: barriers at ±a, well at 0, nodeless HBS.
    OuterBarriersCentralWell,
    /// u1 = 0: no deltas at all, ψ* is constant.
    Free,
}

impl CaseLabel {
    pub fn node_count(self) -> usize {
        match self {
            CaseLabel::ThreeWells => 2,
            _ => 0,
        }
    }

    pub fn roman(self) -> &'static str {
        match self {
            CaseLabel::ThreeWells => "i",
            CaseLabel::OuterWellsCentralBarrier => "ii",
            CaseLabel::OuterBarriersCentralWell => "iii",
            CaseLabel::Free => "free",
        }
    }
}

fn check_triple(u1: f64, a: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite() && u1.is_finite()) {
        return Err(Error::InvalidParams(format!(
            "need finite u1 and a > 0, got u1 = {u1}, a = {a}"
        )));
    }
    if u1 * a == 1.0 {
        return Err(Error::ConstraintPole);
    }
    Ok(())
}

pub fn classify_case(u1: f64, a: f64) -> Result<CaseLabel> {
    check_triple(u1, a)?;
    let p = u1 * a;
    Ok(if p > 1.0 {
        CaseLabel::ThreeWells
    } else if p > 0.0 {
        CaseLabel::OuterWellsCentralBarrier
    } else if p < 0.0 {
        CaseLabel::OuterBarriersCentralWell
    } else {
        CaseLabel::Free
    })
}

/// Piecewise-linear zero-energy state of −u1δ(x+a) − u2δ(x) − u1δ(x−a),
/// normalized so that ψ = A = 1 on both tails.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaHbs {
    pub u1: f64,
    pub u2: f64,
    pub a: f64,
    /// Tail value A.
    pub amplitude: f64,
    /// ψ = b·x + c on [−a, 0).
    pub b: f64,
    pub c: f64,
    /// ψ = d·x + f on [0, a).
    pub d: f64,
    pub f: f64,
}

/// Solves continuity plus the three jump conditions; u2 is fixed by
/// u2 = 2u1/(u1·a − 1).
pub fn solve_hbs(u1: f64, a: f64) -> Result<DeltaHbs> {
    check_triple(u1, a)?;
    let amplitude = 1.0;
    let u2 = 2.0 * u1 / (u1 * a - 1.0);
    let c = (1.0 - u1 * a) * amplitude;
    Ok(DeltaHbs {
        u1,
        u2,
        a,
        amplitude,
        b: -u1 * amplitude,
        c,
        d: -(u1 + u2 - u1 * u2 * a) * amplitude,
        f: c,
    })
}

impl DeltaHbs {
    pub fn eval(&self, x: f64) -> f64 {
        if x < -self.a || x >= self.a {
            self.amplitude
        } else if x < 0.0 {
            self.b * x + self.c
        } else {
            self.d * x + self.f
        }
    }

    /// Left and right derivative at `x`.
    pub fn slopes(&self, x: f64) -> (f64, f64) {
        let slope = |x: f64| {
            if x < -self.a || x >= self.a {
                0.0
            } else if x < 0.0 {
                self.b
            } else {
                self.d
            }
        };
        let eps = self.a * 1e-9;
        (slope(x - eps), slope(x))
    }

    /// Zeros of ψ*, found segment by segment.
    pub fn nodes(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for (slope, icpt, lo, hi) in [
            (self.b, self.c, -self.a, 0.0),
            (self.d, self.f, 0.0, self.a),
        ] {
            if slope != 0.0 {
                let x = -icpt / slope;
                let (vlo, vhi) = (slope * lo + icpt, slope * hi + icpt);
                if x > lo && x < hi && vlo.signum() != vhi.signum() {
                    out.push(x);
                }
            }
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.nodes().len()
    }

    pub fn array(&self) -> DeltaArray {
        DeltaArray::from_pairs(&[(-self.a, self.u1), (0.0, self.u2), (self.a, self.u1)])
            .expect("a > 0 gives increasing positions")
    }

    /// Largest violation of continuity or of the derivative jumps.
    pub fn matching_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (x, u) in [(-self.a, self.u1), (0.0, self.u2), (self.a, self.u1)] {
            let left = if x == -self.a {
                self.amplitude
            } else if x == 0.0 {
                self.c
            } else {
                self.d * self.a + self.f
            };
            let right = self.eval(x);
            let (dl, dr) = self.slopes(x);
            worst = worst.max((left - right).abs());
            worst = worst.max((dr - dl + u * right).abs());
        }
        worst
    }
}

/// Search settings for [`delta_bound_states`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaSearch {
    /// Lowest energy searched; defaults to −(Σ well strengths)².
    pub e_lo: Option<f64>,
    /// States must lie below −epsilon.
    pub epsilon: f64,
    pub n_scan: usize,
    pub kappa_tol: f64,
}

impl Default for DeltaSearch {
    fn default() -> Self {
        Self {
            e_lo: None,
            epsilon: 1e-9,
            n_scan: 400,
            kappa_tol: 1e-12,
        }
    }
}

/// Propagation state in the basis g = ψ + ψ′/κ, s = ψ − ψ′/κ, so that a free
/// stretch of length d maps (g, s) → (g·e^{κd}, s·e^{−κd}).
struct Propagation {
    /// ψ at each delta, each in its own running normalization (signs are exact).
    psi_at: Vec<f64>,
    g: f64,
    s: f64,
}

fn propagate(array: &DeltaArray, kappa: f64) -> Propagation {
    // ψ = e^{κx} on the far left: ψ′/κ = ψ.
    let (mut g, mut s) = (2.0, 0.0);
    let mut psi_at = Vec::with_capacity(array.deltas.len());
    let mut prev: Option<f64> = None;
    for delta in &array.deltas {
        if let Some(x0) = prev {
            // g·e^{κd} and s·e^{−κd}, both divided by e^{κd}
            s *= (-2.0 * kappa * (delta.position - x0)).exp();
        }
        let psi = 0.5 * (g + s);
        psi_at.push(psi);
        let kick = delta.strength / kappa * psi;
        g -= kick;
        s += kick;
        let norm = g.abs().max(s.abs());
        if norm > 0.0 {
            g /= norm;
            s /= norm;
        }
        prev = Some(delta.position);
    }
    Propagation { psi_at, g, s }
}

/// Normalized coefficient of the growing exponential right of the last delta.
/// Zero exactly at a bound state; bounded and continuous in κ.
pub fn growth_coefficient(array: &DeltaArray, kappa: f64) -> f64 {
    let p = propagate(array, kappa);
    p.g / p.g.hypot(p.s)
}

fn sign_changes(values: &[f64]) -> usize {
    let mut count = 0;
    let mut last = 0.0f64;
    for &v in values {
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            count += 1;
        }
        last = v;
    }
    count
}

/// All bound states of a delta array in the window `[e_lo, −epsilon]`.
///
/// The growth coefficient is scanned on log-spaced κ and each sign change is
/// bisected to the κ tolerance. Finding no bracket yields an empty spectrum.
pub fn delta_bound_states(array: &DeltaArray, search: &DeltaSearch) -> Spectrum {
    let total = array.total_well_strength();
    let e_lo = search.e_lo.unwrap_or(-(total * total));
    let kappa_min = search.epsilon.max(0.0).sqrt().max(1e-5);
    let window = (e_lo, -search.epsilon);
    let kappa_max = (-e_lo).max(0.0).sqrt();
    if !(kappa_max > kappa_min) || search.n_scan < 2 {
        return Spectrum {
            states: Vec::new(),
            window,
        };
    }

    let ratio = (kappa_max / kappa_min).ln() / (search.n_scan - 1) as f64;
    let kappas: Vec<f64> = (0..search.n_scan)
        .map(|i| {
            if i + 1 == search.n_scan {
                kappa_max
            } else {
                kappa_min * (ratio * i as f64).exp()
            }
        })
        .collect();
    let values: Vec<f64> = kappas
        .iter()
        .map(|&k| growth_coefficient(array, k))
        .collect();

    let mut states = Vec::new();
    for i in 0..kappas.len() - 1 {
        let (mut lo, mut hi) = (kappas[i], kappas[i + 1]);
        let (mut flo, fhi) = (values[i], values[i + 1]);
        let root = if flo == 0.0 {
            lo
        } else if fhi == 0.0 {
            // picked up as `flo == 0` of the next interval
            continue;
        } else if flo.signum() != fhi.signum() {
            while hi - lo > search.kappa_tol {
                let mid = 0.5 * (lo + hi);
                let fm = growth_coefficient(array, mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        } else {
            continue;
        };
        let p = propagate(array, root);
        states.push(BoundState {
            energy: -root * root,
            nodes: sign_changes(&p.psi_at),
            residual: p.g / p.g.hypot(p.s),
            domain_used: f64::INFINITY,
        });
    }
    states.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Spectrum { states, window }
}
