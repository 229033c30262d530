//! Deterministic CSV and JSON renderings of the toolkit's results.
//!
//! Floats are written with 12 significant digits in scientific notation,
//! independent of locale.

use serde::Serialize;

use crate::area::AreaReport;
use crate::delta_model::{CaseLabel, DeltaHbs};
use crate::partner::PartnerPair;
use crate::scattering::ScatteringCurve;
use crate::spectrum::Spectrum;

pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.11e}")
    }
}

fn csv(header: &str, rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn pair_csv(pair: &PartnerPair) -> String {
    csv(
        "x,W,Wprime,Vminus,Vplus",
        (0..pair.grid.len()).map(|i| {
            [
                pair.grid.x(i),
                pair.w[i],
                pair.w_prime[i],
                pair.v_minus[i],
                pair.v_plus[i],
            ]
            .into_iter()
            .map(fmt_float)
            .collect()
        }),
    )
}

pub fn spectrum_csv(spectrum: &Spectrum) -> String {
    csv(
        "index,E,nodes,residual,domain_used",
        spectrum.states.iter().enumerate().map(|(i, s)| {
            vec![
                i.to_string(),
                fmt_float(s.energy),
                s.nodes.to_string(),
                fmt_float(s.residual),
                fmt_float(s.domain_used),
            ]
        }),
    )
}

pub fn curve_csv(curve: &ScatteringCurve) -> String {
    csv(
        "E,R,T,residual",
        curve.points.iter().map(|p| {
            [p.energy, p.r, p.t, p.unitarity_residual]
                .into_iter()
                .map(fmt_float)
                .collect()
        }),
    )
}

pub fn area_json(report: &AreaReport) -> String {
    to_json(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct DeltaReport {
    #[serde(flatten)]
    pub hbs: DeltaHbs,
    pub case: CaseLabel,
    pub node_count: usize,
    pub nodes: Vec<f64>,
    pub bound_state_energies: Vec<f64>,
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}
