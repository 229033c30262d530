//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p susy-hbs --test acceptance`. Exits nonzero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use susy_hbs::ansatz::{Family, HbsAnsatz};
use susy_hbs::area::{area_integral, w2_identity};
use susy_hbs::bound_solver::{find_bound_states, BoundOptions};
use susy_hbs::delta_model::{delta_bound_states, solve_hbs, DeltaArray, DeltaSearch};
use susy_hbs::numerov::march;
use susy_hbs::partner::{build_pair, mirror_residual, scale, PartnerPotential, Side};
use susy_hbs::reproduce::{
    eigenvalue_tolerance, reflection_minima, ASYMMETRIC_SEEDS, GAUSSIAN_OFFSETS,
};
use susy_hbs::scattering::{default_energy_grid, scan, ScatteringCurve};
use susy_hbs::Grid;

const SIDES: [Side; 2] = [Side::Minus, Side::Plus];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn gaussian(offset: f64) -> HbsAnsatz {
    HbsAnsatz::with_offset(Family::Gaussian, offset).unwrap()
}

fn all_seeds() -> Vec<HbsAnsatz> {
    let mut seeds: Vec<HbsAnsatz> = GAUSSIAN_OFFSETS.iter().map(|&a| gaussian(a)).collect();
    seeds.extend(
        ASYMMETRIC_SEEDS
            .iter()
            .map(|&(f, a)| HbsAnsatz::with_offset(f, a).unwrap()),
    );
    seeds
}

fn criterion_1() -> Outcome {
    let refs = [
        (Side::Minus, [-0.2432, -0.07344, -0.3127]),
        (Side::Plus, [-0.5837, -0.2151, -0.0924]),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (side, values) in refs {
        for (&offset, &reference) in GAUSSIAN_OFFSETS.iter().zip(&values) {
            let pot = PartnerPotential::new(gaussian(offset), side).negated();
            let e0 = find_bound_states(&pot, &BoundOptions::default())
                .ok()
                .and_then(|s| s.ground().map(|g| g.energy))
                .unwrap_or(f64::NAN);
            let ok = (e0 - reference).abs() <= eigenvalue_tolerance(reference);
            pass &= ok;
            parts.push(format!("-V{}(A={offset}) {e0:.5}", side.name()));
        }
    }
    Outcome::new(pass, parts.join(", "))
}

fn criterion_2() -> Outcome {
    let mut nonempty = Vec::new();
    for seed in all_seeds() {
        for side in SIDES {
            let spectrum = find_bound_states(
                &PartnerPotential::new(seed.clone(), side),
                &BoundOptions::default(),
            );
            match spectrum {
                Ok(s) if s.is_empty() => {}
                Ok(s) => nonempty.push(format!(
                    "{} A={} V{}: {:?}",
                    seed.family().name(),
                    seed.offset(),
                    side.name(),
                    s.energies()
                )),
                Err(e) => nonempty.push(format!(
                    "{} A={} V{}: {e}",
                    seed.family().name(),
                    seed.offset(),
                    side.name()
                )),
            }
        }
    }
    if nonempty.is_empty() {
        Outcome::new(true, "12 partner potentials, all spectra empty")
    } else {
        Outcome::new(false, nonempty.join("; "))
    }
}

fn criterion_3() -> Outcome {
    let grid = Grid::default();
    let mut pass = true;
    let mut parts = Vec::new();
    for (&offset, reference) in GAUSSIAN_OFFSETS.iter().zip([1.38, 0.56, 0.64]) {
        let id = w2_identity(&gaussian(offset), &grid).unwrap();
        let ok = [id.lhs_minus, id.lhs_plus, id.rhs]
            .iter()
            .all(|v| (v - reference).abs() <= 0.02)
            && id.max_discrepancy() <= 1e-8;
        pass &= ok;
        parts.push(format!(
            "A={offset}: {:.5} (gap {:.1e})",
            id.rhs,
            id.max_discrepancy()
        ));
    }
    Outcome::new(pass, parts.join(", "))
}

fn criterion_4() -> Outcome {
    let opts = BoundOptions::default();
    let seed = gaussian(0.5);
    let e_minus = find_bound_states(
        &PartnerPotential::new(seed.clone(), Side::Minus)
            .scaled(1.1)
            .unwrap(),
        &opts,
    )
    .ok()
    .and_then(|s| s.ground().map(|g| g.energy))
    .unwrap_or(f64::NAN);
    let e_plus = find_bound_states(
        &PartnerPotential::new(seed.clone(), Side::Plus)
            .scaled(1.1)
            .unwrap(),
        &opts,
    )
    .ok()
    .and_then(|s| s.ground().map(|g| g.energy))
    .unwrap_or(f64::NAN);
    let pair = build_pair(&seed, &Grid::default()).unwrap();
    let area = area_integral(&scale(&pair, Side::Plus, 1.1).unwrap().table()).unwrap();
    let pass = (e_minus + 0.01990).abs() <= 5e-4
        && (e_plus + 0.00063).abs() <= 3e-4
        && (area - 1.52112).abs() <= 0.02;
    Outcome::new(
        pass,
        format!("E0(1.1V-) {e_minus:.6}, E0(1.1V+) {e_plus:.6}, area(1.1V+) {area:.5}"),
    )
}

fn criterion_5() -> Outcome {
    let worst = mirror_residual(2.0, &Grid::default()).unwrap();
    Outcome::new(
        worst <= 1e-8,
        format!("max |V+(g-x) - V-(x)| = {worst:.2e}"),
    )
}

fn criterion_6() -> Outcome {
    let search = DeltaSearch::default();
    let mut pass = true;
    let mut parts = Vec::new();
    for (u1, expected) in [(2.0, 2usize), (0.5, 0), (-2.0, 0)] {
        let hbs = solve_hbs(u1, 1.0).unwrap();
        let states = delta_bound_states(&hbs.array(), &search);
        pass &= hbs.node_count() == expected && states.len() == expected;
        parts.push(format!(
            "u1={u1}: {} nodes, {} states",
            hbs.node_count(),
            states.len()
        ));
    }
    let mut worst: f64 = 0.0;
    for u in [0.1, 0.5, 1.0, 2.0, 7.5] {
        let s = delta_bound_states(&DeltaArray::from_pairs(&[(0.0, u)]).unwrap(), &search);
        let e = s.ground().map_or(f64::NAN, |g| g.energy);
        worst = worst.max((e + u * u / 4.0).abs());
        pass &= s.len() == 1;
    }
    pass &= worst <= 1e-10;
    parts.push(format!("single delta |E + U^2/4| <= {worst:.1e}"));
    Outcome::new(pass, parts.join(", "))
}

fn curves(seed: &HbsAnsatz) -> Vec<ScatteringCurve> {
    let pair = build_pair(seed, &Grid::default()).unwrap();
    SIDES
        .iter()
        .map(|&s| scan(&pair.table(s), &default_energy_grid()).unwrap())
        .collect()
}

/// Split into unitarity/no-sharp-peak and the R-minimum part; returns both lines.
fn criterion_7() -> (Outcome, Outcome, Vec<String>) {
    let mut residual: f64 = 0.0;
    let mut sharp = Vec::new();
    for seed in all_seeds() {
        let cs = curves(&seed);
        for c in &cs {
            residual = residual.max(c.max_unitarity_residual());
        }
        if seed.family() == Family::Gaussian {
            for (c, side) in cs.iter().zip(SIDES) {
                for p in c.sharp_peaks() {
                    sharp.push(format!(
                        "A={} V{} at E={:.4}",
                        seed.offset(),
                        side.name(),
                        p.energy
                    ));
                }
            }
        }
    }
    let pair = build_pair(&gaussian(0.5), &Grid::default()).unwrap();
    for s in [Side::Minus, Side::Plus] {
        let table = scale(&pair, s, 1.1).unwrap().table();
        residual = residual.max(
            scan(&table, &default_energy_grid())
                .unwrap()
                .max_unitarity_residual(),
        );
    }
    let first = Outcome::new(
        residual <= 1e-6 && sharp.is_empty(),
        format!(
            "max |R+T-1| = {residual:.2e}, sharp peaks: {}",
            if sharp.is_empty() {
                "none".to_string()
            } else {
                sharp.join("; ")
            }
        ),
    );

    let targets = [(4.7, 0.25e-3), (5.2, 0.16e-3), (15.2, 0.16e-5)];
    let mut pass = true;
    let mut parts = Vec::new();
    let mut stretch = Vec::new();
    for (&offset, &(target, r_ref)) in GAUSSIAN_OFFSETS.iter().zip(&targets) {
        let minima = reflection_minima(&gaussian(offset)).unwrap();
        let best = minima
            .iter()
            .filter(|(_, e, _)| (e - target).abs() <= 1.0)
            .min_by(|a, b| a.2.total_cmp(&b.2));
        match best {
            Some(&(side, e, r)) if r < 1e-2 => {
                parts.push(format!(
                    "A={offset}: V{} R={r:.2e} at E={e:.3}",
                    side.name()
                ));
                let within = r / r_ref <= 10.0 && r_ref / r <= 10.0;
                stretch.push(format!(
                    "A={offset}: R={r:.2e} vs {r_ref:.2e} ({})",
                    if within { "within 10x" } else { "outside 10x" }
                ));
            }
            _ => {
                pass = false;
                let found: Vec<String> = minima
                    .iter()
                    .map(|(s, e, r)| format!("V{} E={e:.3} R={r:.1e}", s.name()))
                    .collect();
                parts.push(format!(
                    "A={offset}: none near E={target} (minima: {})",
                    if found.is_empty() {
                        "none".into()
                    } else {
                        found.join(", ")
                    }
                ));
                stretch.push(format!("A={offset}: no candidate near E={target}"));
            }
        }
    }
    for &(family, offset) in &ASYMMETRIC_SEEDS {
        let seed = HbsAnsatz::with_offset(family, offset).unwrap();
        let found: Vec<String> = reflection_minima(&seed)
            .unwrap()
            .iter()
            .map(|(s, e, r)| format!("V{} E={e:.3} R={r:.2e}", s.name()))
            .collect();
        stretch.push(format!(
            "{} A={offset} minima: {}",
            family.name(),
            if found.is_empty() {
                "none".into()
            } else {
                found.join(", ")
            }
        ));
    }
    (Outcome::new(pass, parts.join("; ")), first, stretch)
}

fn sine_error(h: f64) -> f64 {
    let n = (10.0 / h).round() as usize + 1;
    let f = vec![1.0; n];
    let (psi, _) = march(
        &f,
        h,
        Complex64::new(0.0, 0.0),
        Complex64::new(h.sin(), 0.0),
    );
    psi.iter()
        .enumerate()
        .map(|(i, z)| (z.re - (i as f64 * h).sin()).abs())
        .fold(0.0, f64::max)
}

fn criterion_8() -> Outcome {
    let grid = Grid::default();
    let mut pass = true;
    let mut parts = Vec::new();

    let mut zero_res: f64 = 0.0;
    for seed in all_seeds() {
        zero_res = zero_res.max(
            build_pair(&seed, &grid)
                .unwrap()
                .zero_energy_residual()
                .unwrap(),
        );
    }
    pass &= zero_res <= 1e-10;
    parts.push(format!("zero-energy residual {zero_res:.1e}"));

    let h = 1e-5;
    let mut fd: f64 = 0.0;
    for seed in all_seeds() {
        let xs: Vec<f64> = (0..200)
            .map(|i| -6.0 + 12.0 * (i as f64 + 0.37) / 200.0)
            .collect();
        let scale_psi = xs
            .iter()
            .map(|&x| seed.eval_state(x).unwrap().psi_prime.abs())
            .fold(0.0, f64::max);
        let scale_dpsi = xs
            .iter()
            .map(|&x| seed.eval_state(x).unwrap().psi_second.abs())
            .fold(0.0, f64::max);
        for &x in &xs {
            let s = seed.eval_state(x).unwrap();
            let (lo, hi) = (
                seed.eval_state(x - h).unwrap(),
                seed.eval_state(x + h).unwrap(),
            );
            fd = fd.max(((hi.psi - lo.psi) / (2.0 * h) - s.psi_prime).abs() / scale_psi);
            fd = fd
                .max(((hi.psi_prime - lo.psi_prime) / (2.0 * h) - s.psi_second).abs() / scale_dpsi);
        }
    }
    pass &= fd <= 1e-6;
    parts.push(format!("derivative FD {fd:.1e}"));

    let ratio = sine_error(0.1) / sine_error(0.05);
    pass &= ratio >= 14.0;
    parts.push(format!("Numerov ratio {ratio:.2}"));

    let mut agree = true;
    for u1 in [2.0, 0.5, -2.0, 3.0, 1.5] {
        let hbs = solve_hbs(u1, 1.0).unwrap();
        agree &=
            delta_bound_states(&hbs.array(), &DeltaSearch::default()).len() == hbs.node_count();
    }
    pass &= agree;
    parts.push(format!("delta nodes = states: {agree}"));

    let pair = build_pair(&gaussian(0.5), &grid).unwrap();
    let base = area_integral(&pair.table(Side::Minus)).unwrap();
    let mut lin: f64 = 0.0;
    for c in [0.3, 1.1, 2.0, 7.0] {
        let scaled = area_integral(&scale(&pair, Side::Minus, c).unwrap().table()).unwrap();
        lin = lin.max((scaled - c * base).abs() / (c * base).abs());
    }
    pass &= lin <= 1e-12;
    parts.push(format!("I(cV) linearity {lin:.1e}"));

    Outcome::new(pass, parts.join(", "))
}

fn report(id: &str, outcome: &Outcome) {
    println!(
        "criterion {id}: {} - {}",
        if outcome.pass { "PASS" } else { "FAIL" },
        outcome.detail
    );
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut all = true;
    for (id, f) in [
        ("1", criterion_1 as fn() -> Outcome),
        ("2", criterion_2),
        ("3", criterion_3),
        ("4", criterion_4),
        ("5", criterion_5),
        ("6", criterion_6),
    ] {
        let o = f();
        report(id, &o);
        all &= o.pass;
    }
    let (minima, unitarity, stretch) = criterion_7();
    report("7a (unitarity, no sharp peaks)", &unitarity);
    report("7b (R minima near 4.7/5.2/15.2)", &minima);
    for line in &stretch {
        println!("  stretch: {line}");
    }
    all &= unitarity.pass && minima.pass;
    let o = criterion_8();
    report("8", &o);
    all &= o.pass;
    println!("elapsed {:.1} s", start.elapsed().as_secs_f64());
    if all {
        println!("acceptance: all criteria PASS");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: at least one criterion FAILED");
        ExitCode::FAILURE
    }
}
