use std::path::PathBuf;

use serde::Serialize;
use susy_hbs::area::{simon_classify, AreaReport};
use susy_hbs::bound_solver::{find_bound_states, BoundOptions};
use susy_hbs::delta_model::{
    classify_case, delta_bound_states, solve_hbs, Delta, DeltaArray, DeltaSearch,
};
use susy_hbs::export::{self, fmt_float, DeltaReport};
use susy_hbs::grid::{DEFAULT_EXTENT, DEFAULT_STEP};
use susy_hbs::partner::{build_pair, PartnerPotential, Side};
use susy_hbs::reproduce::{figure_artifacts, reproduce_all, rows_csv, Figure, RowGroup};
use susy_hbs::scattering::{find_r_minima, log_energies, scan, TransmissionPeak};
use susy_hbs::spectrum::BoundState;
use susy_hbs::{AnsatzParams, Grid, HbsAnsatz, PotentialTable};

use crate::output::{emit, write_all, Artifact};
use crate::scenario::{Format, Scenario, Task};
use crate::{AnsatzArgs, Cli, CliError, Command, PotentialArgs, WindowArgs};

/// Everything a task needs, after merging flags over the scenario file.
pub struct Settings {
    task: Task,
    ansatz: Option<HbsAnsatz>,
    delta: Option<DeltaArray>,
    grid: Grid,
    side: Side,
    negate: bool,
    scale: f64,
    e_min: Option<f64>,
    e_max: Option<f64>,
    n_energies: Option<usize>,
    extend_domain: bool,
    u1: Option<f64>,
    a: Option<f64>,
    figure: Option<String>,
    only: Vec<String>,
    out: Option<PathBuf>,
    format: Option<Format>,
}

fn resolve_grid(half_width: Option<f64>, n: Option<usize>) -> Result<Grid, CliError> {
    if let Some(l) = half_width {
        if !(l > 0.0 && l.is_finite()) {
            return Err(CliError::Usage(format!(
                "--grid-L must be positive, got {l}"
            )));
        }
    }
    Ok(match (half_width, n) {
        (None, None) => Grid::default(),
        (Some(l), None) => Grid::symmetric_with_step(l, DEFAULT_STEP)?,
        (l, Some(n)) => Grid::symmetric(l.unwrap_or(DEFAULT_EXTENT), n)?,
    })
}

fn resolve_ansatz(
    flags: &AnsatzArgs,
    file: Option<HbsAnsatz>,
) -> Result<Option<HbsAnsatz>, CliError> {
    if flags.family.is_none() && flags.offset.is_none() && flags.width.is_none() {
        return Ok(file);
    }
    let family = flags
        .family
        .or(file.as_ref().map(|a| a.family()))
        .ok_or_else(|| CliError::Usage("--family is required".into()))?;
    let offset = match (flags.offset, &file) {
        (Some(o), _) => o,
        (None, Some(a)) => a.offset(),
        (None, None) => return Err(CliError::Usage("--offset is required".into())),
    };
    let mut params = file.as_ref().map(|a| a.params()).unwrap_or_default();
    if let Some(w) = flags.width {
        params = AnsatzParams { width: w };
    }
    Ok(Some(HbsAnsatz::new(family, offset, params)?))
}

fn parse_delta_list(text: &str) -> Result<DeltaArray, CliError> {
    let bad = |item: &str| {
        CliError::Usage(format!(
            "--delta expects position:strength pairs, got '{item}'"
        ))
    };
    let deltas = text
        .split(',')
        .map(|item| {
            let (x, u) = item.split_once(':').ok_or_else(|| bad(item))?;
            Ok(Delta {
                position: x.trim().parse().map_err(|_| bad(item))?,
                strength: u.trim().parse().map_err(|_| bad(item))?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(DeltaArray::new(deltas)?)
}

impl Settings {
    pub fn resolve(cli: &Cli, task: Task, scenario: Scenario) -> Result<Self, CliError> {
        let o = scenario.options;
        let empty_ansatz = AnsatzArgs::default();
        let empty_potential = PotentialArgs::default();
        let empty_window = WindowArgs::default();
        let (ansatz_flags, pot, window) = match &cli.command {
            Some(Command::Partner { ansatz }) => (ansatz, &empty_potential, &empty_window),
            Some(Command::Bound {
                ansatz,
                potential,
                window,
                ..
            })
            | Some(Command::Scatter {
                ansatz,
                potential,
                window,
                ..
            }) => (ansatz, potential, window),
            Some(Command::Area { ansatz, potential }) => (ansatz, potential, &empty_window),
            _ => (&empty_ansatz, &empty_potential, &empty_window),
        };
        let mut s = Settings {
            task,
            ansatz: resolve_ansatz(ansatz_flags, scenario.ansatz)?,
            delta: scenario.delta,
            grid: resolve_grid(
                cli.grid_l.or(scenario.grid.half_width),
                cli.grid_n.or(scenario.grid.n_points),
            )?,
            side: pot.side.or(o.side).unwrap_or(Side::Minus),
            negate: pot.negate || o.negate.unwrap_or(false),
            scale: pot.scale.or(o.scale).unwrap_or(1.0),
            e_min: window.e_min.or(o.e_min),
            e_max: window.e_max.or(o.e_max),
            n_energies: o.n_energies,
            extend_domain: o.extend_domain.unwrap_or(true),
            u1: o.u1,
            a: o.a,
            figure: o.figure,
            only: o.only,
            out: cli.out.clone().or(scenario.out),
            format: cli.format.or(scenario.format),
        };
        match &cli.command {
            Some(Command::Bound {
                no_extend: true, ..
            }) => s.extend_domain = false,
            Some(Command::Scatter {
                n_energies: Some(n),
                ..
            }) => s.n_energies = Some(*n),
            Some(Command::Delta { u1, a, delta }) => {
                s.u1 = u1.or(s.u1);
                s.a = a.or(s.a);
                if let Some(text) = delta {
                    s.delta = Some(parse_delta_list(text)?);
                }
            }
            Some(Command::Reproduce { figure, only }) => {
                s.figure = figure.clone().or(s.figure);
                if !only.is_empty() {
                    s.only = only.clone();
                }
            }
            _ => {}
        }
        if !(s.scale > 0.0 && s.scale.is_finite()) {
            return Err(CliError::Usage(format!(
                "--scale must be positive, got {}",
                s.scale
            )));
        }
        Ok(s)
    }

    fn require_ansatz(&self) -> Result<&HbsAnsatz, CliError> {
        self.ansatz.as_ref().ok_or_else(|| {
            CliError::Usage("an ansatz is required (--family/--offset or scenario)".into())
        })
    }

    fn factor(&self) -> f64 {
        if self.negate {
            -self.scale
        } else {
            self.scale
        }
    }

    fn table(&self) -> Result<PotentialTable, CliError> {
        let pair = build_pair(self.require_ansatz()?, &self.grid)?;
        Ok(pair.table(self.side).scaled(self.factor()))
    }
}

pub fn execute(s: Settings) -> Result<(), CliError> {
    match s.task {
        Task::Partner => partner(&s),
        Task::Bound => bound(&s),
        Task::Scatter => scatter(&s),
        Task::Area => area(&s),
        Task::Delta => delta(&s),
        Task::Reproduce => reproduce(&s),
    }
}

#[derive(Serialize)]
struct PairColumns<'a> {
    x: Vec<f64>,
    #[serde(rename = "W")]
    w: &'a [f64],
    #[serde(rename = "Wprime")]
    w_prime: &'a [f64],
    #[serde(rename = "Vminus")]
    v_minus: &'a [f64],
    #[serde(rename = "Vplus")]
    v_plus: &'a [f64],
}

fn partner(s: &Settings) -> Result<(), CliError> {
    let pair = build_pair(s.require_ansatz()?, &s.grid)?;
    let text = match s.format.unwrap_or(Format::Csv) {
        Format::Csv => export::pair_csv(&pair),
        Format::Json => export::to_json(&PairColumns {
            x: pair.grid.points(),
            w: &pair.w,
            w_prime: &pair.w_prime,
            v_minus: &pair.v_minus,
            v_plus: &pair.v_plus,
        }),
    };
    emit(s.out.as_deref(), text)
}

fn bound(s: &Settings) -> Result<(), CliError> {
    let mut pot = PartnerPotential::new(s.require_ansatz()?.clone(), s.side).scaled(s.scale)?;
    if s.negate {
        pot = pot.negated();
    }
    let defaults = BoundOptions::default();
    let opts = BoundOptions {
        grid: s.grid,
        e_min: s.e_min,
        e_max: s.e_max.unwrap_or(defaults.e_max),
        extend_domain: s.extend_domain,
        ..defaults
    };
    if !(opts.e_max < 0.0) || opts.e_min.is_some_and(|lo| !(lo < opts.e_max)) {
        return Err(CliError::Usage(
            "bound-state window must satisfy e-min < e-max < 0".into(),
        ));
    }
    let spectrum = find_bound_states(&pot, &opts)?;
    let text = match s.format.unwrap_or(Format::Csv) {
        Format::Csv => export::spectrum_csv(&spectrum),
        Format::Json => export::to_json(&spectrum),
    };
    emit(s.out.as_deref(), text)
}

#[derive(Serialize)]
struct Minimum {
    energy: f64,
    r: f64,
}

#[derive(Serialize)]
struct ScatterReport<'a> {
    points: &'a [susy_hbs::scattering::ScatteringPoint],
    candidate_peaks: &'a [TransmissionPeak],
    sharp_peaks: Vec<TransmissionPeak>,
    r_minima: Vec<Minimum>,
    max_unitarity_residual: f64,
}

fn scatter(s: &Settings) -> Result<(), CliError> {
    let lo = s.e_min.unwrap_or(1e-3);
    let hi = s.e_max.unwrap_or(20.0);
    let n = s.n_energies.unwrap_or(400);
    if !(lo > 0.0 && hi > lo && hi.is_finite() && n >= 2) {
        return Err(CliError::Usage(format!(
            "scattering needs 0 < e-min < e-max and at least 2 energies (got {lo}, {hi}, {n})"
        )));
    }
    let table = s.table()?;
    let curve = scan(&table, &log_energies(lo, hi, n))?;
    let text = match s.format.unwrap_or(Format::Csv) {
        Format::Csv => export::curve_csv(&curve),
        Format::Json => {
            let r_minima = find_r_minima(&table, &curve)?
                .into_iter()
                .map(|(energy, r)| Minimum { energy, r })
                .collect();
            export::to_json(&ScatterReport {
                points: &curve.points,
                candidate_peaks: &curve.candidate_peaks,
                sharp_peaks: curve.sharp_peaks(),
                r_minima,
                max_unitarity_residual: curve.max_unitarity_residual(),
            })
        }
    };
    emit(s.out.as_deref(), text)
}

fn area_csv(r: &AreaReport) -> String {
    let json = serde_json::to_value(r).expect("plain data serializes");
    let word = |k: &str| json[k].as_str().unwrap_or_default().to_string();
    format!(
        "I,I_weighted,sign,prediction\n{},{},{},{}\n",
        fmt_float(r.integral),
        fmt_float(r.weighted_integral),
        word("sign"),
        word("prediction")
    )
}

fn area(s: &Settings) -> Result<(), CliError> {
    let report = simon_classify(&s.table()?)?;
    let text = match s.format.unwrap_or(Format::Json) {
        Format::Json => export::area_json(&report),
        Format::Csv => area_csv(&report),
    };
    emit(s.out.as_deref(), text)
}

#[derive(Serialize)]
struct ArrayReport<'a> {
    deltas: &'a DeltaArray,
    total_well_strength: f64,
    bound_states: &'a [BoundState],
}

fn delta(s: &Settings) -> Result<(), CliError> {
    let format = s.format.unwrap_or(Format::Json);
    let search = DeltaSearch::default();
    let text = match (s.u1, &s.delta) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "give either --u1/--a or a delta array, not both".into(),
            ))
        }
        (Some(u1), None) => {
            let a = s.a.unwrap_or(1.0);
            let hbs = solve_hbs(u1, a)?;
            let spectrum = delta_bound_states(&hbs.array(), &search);
            match format {
                Format::Json => export::to_json(&DeltaReport {
                    hbs,
                    case: classify_case(u1, a)?,
                    node_count: hbs.node_count(),
                    nodes: hbs.nodes(),
                    bound_state_energies: spectrum.energies(),
                }),
                Format::Csv => export::spectrum_csv(&spectrum),
            }
        }
        (None, Some(array)) => {
            let spectrum = delta_bound_states(array, &search);
            match format {
                Format::Json => export::to_json(&ArrayReport {
                    deltas: array,
                    total_well_strength: array.total_well_strength(),
                    bound_states: &spectrum.states,
                }),
                Format::Csv => export::spectrum_csv(&spectrum),
            }
        }
        (None, None) => {
            return Err(CliError::Usage(
                "delta needs --u1 (and --a) or --delta".into(),
            ))
        }
    };
    emit(s.out.as_deref(), text)
}

fn reproduce(s: &Settings) -> Result<(), CliError> {
    if let Some(id) = &s.figure {
        let figure: Figure = id.parse()?;
        let dir = s.out.clone().unwrap_or_else(|| PathBuf::from("."));
        if !dir.is_dir() {
            return Err(CliError::Numerical(format!(
                "output directory {} does not exist",
                dir.display()
            )));
        }
        let artifacts: Vec<Artifact> = figure_artifacts(figure)?
            .into_iter()
            .map(|(name, contents)| Artifact {
                path: dir.join(name),
                contents,
            })
            .collect();
        write_all(&artifacts)?;
        for a in &artifacts {
            println!("{}", a.path.display());
        }
        return Ok(());
    }
    let only = s
        .only
        .iter()
        .map(|g| g.parse::<RowGroup>())
        .collect::<Result<Vec<_>, _>>()?;
    let rows = reproduce_all(&only)?;
    let text = match s.format.unwrap_or(Format::Csv) {
        Format::Csv => rows_csv(&rows),
        Format::Json => export::to_json(&rows),
    };
    emit(s.out.as_deref(), text)?;
    match rows.iter().filter(|r| !r.pass).count() {
        0 => Ok(()),
        n => Err(CliError::RowsFailed(n)),
    }
}
