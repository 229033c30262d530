//! Bound states of scattering wells by two-sided Numerov shooting.
//!
//! For a trial E < 0 with κ = √(−E) the solution is started as e^{+κx} at the
//! left edge and as e^{−κx} at the right edge and both are marched to the
//! matching node (the minimum of V). The matching function
//!
//! Δ(E) = (ψ_L′ψ_R − ψ_Lψ_R′) / (κ N_L N_R),  N = √(ψ² + (ψ′/κ)²),
//!
//! is the sine of the angle between the two solutions in the (ψ, ψ′/κ) plane.
//! It is bounded, continuous in E and vanishes exactly at eigenvalues.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::numerov::{march, WaveTable};
use crate::potential::{Potential, PotentialTable};
use crate::spectrum::{BoundState, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundOptions {
    pub grid: Grid,
    /// Lowest trial energy; defaults to min(V) + 1e−9.
    pub e_min: Option<f64>,
    /// Search ceiling; states shallower than this are not reported.
    pub e_max: f64,
    pub n_scan: usize,
    pub energy_tol: f64,
    /// Re-converge shallow states on a domain of half-width ≥ 10/κ.
    pub extend_domain: bool,
    pub max_points: usize,
    /// Coarsest step accepted when extending the domain.
    pub max_step: f64,
    pub edge_tolerance: f64,
}

impl Default for BoundOptions {
    fn default() -> Self {
        Self {
            grid: Grid::default(),
            e_min: None,
            e_max: -1e-9,
            n_scan: 400,
            energy_tol: 1e-10,
            extend_domain: true,
            max_points: 200_001,
            max_step: 0.05,
            edge_tolerance: 1e-6,
        }
    }
}

/// A sampled potential together with its matching node.
struct Shooter {
    table: PotentialTable,
    matching: usize,
}

impl Shooter {
    fn new(table: PotentialTable) -> Self {
        let n = table.values.len();
        let (m, _) = table.argmin();
        Self {
            matching: m.clamp(2, n - 3),
            table,
        }
    }

    fn half_width(&self) -> f64 {
        self.table
            .grid
            .x_min()
            .abs()
            .min(self.table.grid.x_max().abs())
    }

    /// Left solution on [0, m+1] and right solution on [m−1, n−1].
    fn shoot(&self, energy: f64) -> (Vec<Complex64>, Vec<Complex64>) {
        let h = self.table.grid.step();
        let kappa = (-energy).sqrt();
        let m = self.matching;
        let start = Complex64::new(1.0, 0.0);
        let next = Complex64::new((kappa * h).exp(), 0.0);

        let f_left: Vec<f64> = self.table.values[..=m + 1]
            .iter()
            .map(|v| energy - v)
            .collect();
        let (left, _) = march(&f_left, h, start, next);

        let f_right: Vec<f64> = self.table.values[m - 1..]
            .iter()
            .rev()
            .map(|v| energy - v)
            .collect();
        let (mut right, _) = march(&f_right, h, start, next);
        right.reverse();
        (left, right)
    }

    fn mismatch(&self, energy: f64) -> f64 {
        let h = self.table.grid.step();
        let kappa = (-energy).sqrt();
        let m = self.matching;
        let (left, right) = self.shoot(energy);
        // right[k] lives at node m − 1 + k
        let (l, dl) = (left[m].re, (left[m + 1].re - left[m - 1].re) / (2.0 * h));
        let (r, dr) = (right[1].re, (right[2].re - right[0].re) / (2.0 * h));
        let nl = l.hypot(dl / kappa);
        let nr = r.hypot(dr / kappa);
        (dl * r - l * dr) / (kappa * nl * nr)
    }

    /// Left and right solutions joined continuously at the matching node.
    fn stitched(&self, energy: f64) -> WaveTable {
        let h = self.table.grid.step();
        let m = self.matching;
        let (left, right) = self.shoot(energy);
        let (l, r) = (left[m].re, right[1].re);
        let (dl, dr) = (
            (left[m + 1].re - left[m - 1].re) / (2.0 * h),
            (right[2].re - right[0].re) / (2.0 * h),
        );
        // Match whichever of ψ, ψ′/κ is larger; ψ may sit on a node at m.
        let kappa = (-energy).sqrt();
        let ratio = if l.abs() >= dl.abs() / kappa {
            l / r
        } else {
            dl / dr
        };
        let mut values = Vec::with_capacity(self.table.values.len());
        values.extend_from_slice(&left[..m]);
        values.extend(right[1..].iter().map(|z| z * ratio));
        WaveTable {
            grid: self.table.grid,
            values,
            log_scale: 0.0,
        }
    }

    fn bisect(&self, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
        let mut f_lo = self.mismatch(lo);
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let fm = self.mismatch(mid);
            if fm == 0.0 {
                return mid;
            }
            if fm.signum() == f_lo.signum() {
                lo = mid;
                f_lo = fm;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

fn check_edges(table: &PotentialTable, tolerance: f64) -> Result<()> {
    let edge = table.edge_magnitude();
    if !(edge <= tolerance) {
        return Err(Error::EdgeNotFlat(edge));
    }
    if let Some(v) = table.values.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("potential sample {v}")));
    }
    Ok(())
}

/// Scaled Wronskian mismatch of the potential table at `energy < 0`,
/// matched at the minimum of V.
pub fn mismatch(potential: &PotentialTable, energy: f64) -> Result<f64> {
    if !(energy < 0.0) {
        return Err(Error::DomainError(format!(
            "bound-state energies must be negative, got {energy}"
        )));
    }
    let value = Shooter::new(potential.clone()).mismatch(energy);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(format!("mismatch at E = {energy}")))
    }
}

/// Strict sign changes of the real part, ignoring samples below 1e−12·max|ψ|.
pub fn count_nodes(wave: &WaveTable) -> usize {
    let peak = wave.values.iter().map(|z| z.re.abs()).fold(0.0, f64::max);
    let floor = 1e-12 * peak;
    let mut count = 0;
    let mut last = 0.0f64;
    for z in &wave.values {
        let v = z.re;
        if v.abs() < floor || v == 0.0 {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            count += 1;
        }
        last = v;
    }
    count
}

/// All bound states of `potential` between the search floor and the ceiling.
pub fn find_bound_states<P: Potential + ?Sized>(
    potential: &P,
    options: &BoundOptions,
) -> Result<Spectrum> {
    let table = potential.sample(&options.grid);
    check_edges(&table, options.edge_tolerance)?;
    let shooter = Shooter::new(table);
    let (_, v_min) = shooter.table.argmin();
    let e_min = options.e_min.unwrap_or(v_min + 1e-9);
    let e_max = options.e_max;
    let window = (e_min, e_max);
    if !(e_min < e_max) || !(e_max < 0.0) || options.n_scan < 2 {
        return Ok(Spectrum {
            states: Vec::new(),
            window,
        });
    }

    // log-spaced in |E| so near-threshold states are bracketed
    let (ln_hi, ln_lo) = ((-e_min).ln(), (-e_max).ln());
    let n = options.n_scan;
    let energies: Vec<f64> = (0..n)
        .map(|i| match i {
            0 => e_min,
            i if i + 1 == n => e_max,
            i => -(ln_hi + (ln_lo - ln_hi) * i as f64 / (n - 1) as f64).exp(),
        })
        .collect();
    let values: Vec<f64> = energies.par_iter().map(|&e| shooter.mismatch(e)).collect();
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("mismatch at E = {}", energies[i])));
    }

    let brackets: Vec<(f64, f64)> = (0..n - 1)
        .filter(|&i| values[i] != 0.0 && values[i].signum() != values[i + 1].signum())
        .map(|i| (energies[i], energies[i + 1]))
        .collect();

    let mut states = brackets
        .par_iter()
        .map(|&(lo, hi)| converge(potential, &shooter, lo, hi, options))
        .collect::<Result<Vec<_>>>()?;
    states.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(Spectrum { states, window })
}

fn converge<P: Potential + ?Sized>(
    potential: &P,
    shooter: &Shooter,
    lo: f64,
    hi: f64,
    options: &BoundOptions,
) -> Result<BoundState> {
    let energy = shooter.bisect(lo, hi, options.energy_tol);
    let kappa = (-energy).sqrt();
    let extent = shooter.half_width();

    if options.extend_domain && 8.0 / kappa > extent {
        let required = (10.0 / kappa).max(extent);
        let step = options
            .grid
            .step()
            .max(2.0 * required / (options.max_points - 1) as f64);
        if step > options.max_step {
            return Err(Error::DomainTooSmall {
                decay_length: 1.0 / kappa,
                required,
            });
        }
        let grid = Grid::symmetric_with_step(required, step)?;
        let wide = Shooter::new(potential.sample(&grid));
        let (mut a, mut b) = (lo, hi);
        let mut fa = wide.mismatch(a);
        let mut fb = wide.mismatch(b);
        // the root moves slightly with the domain; widen until it is bracketed again
        let mut tries = 0;
        while fa.signum() == fb.signum() && tries < 20 {
            let span = b - a;
            a = (a - span).max(wide.table.argmin().1 + 1e-12);
            b = (b + span).min(options.e_max);
            fa = wide.mismatch(a);
            fb = wide.mismatch(b);
            tries += 1;
        }
        if fa.signum() != fb.signum() {
            let energy = wide.bisect(a, b, options.energy_tol);
            return Ok(BoundState {
                energy,
                nodes: count_nodes(&wide.stitched(energy)),
                residual: wide.mismatch(energy),
                domain_used: wide.half_width(),
            });
        }
    }

    Ok(BoundState {
        energy,
        nodes: count_nodes(&shooter.stitched(energy)),
        residual: shooter.mismatch(energy),
        domain_used: extent,
    })
}
