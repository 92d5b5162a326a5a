//! Experiment dispatch: expands sweeps, runs the requested analysis, and
//! writes deterministic CSV artifacts plus a manifest.

use crate::config::{
    apply_overrides, expand_sweep, ExperimentConfig, Kind, SweepEntry,
};
use omi::fock::{
    covariance_from_fock, discrete_entanglement, lindblad_evolve, FockConfig, FockState,
};
use omi::gaussian::{
    entanglement_vs_time, evolve, initial_state, log_negativity, stationary_covariance,
};
use omi::model::{
    eigenmode_analysis, stability_check, CouplingSchedule, InterfaceModel,
};
use omi::spectra::{
    dark_mode_excitation, integrated_internal_covariance, output_entanglement_spectrum,
    FilterSpec,
};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

/// Failure classes mapped to process exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Exit 2: configuration or validation problem.
    Config(String),
    /// Exit 3: model unstable where stability is required.
    Unstable(String),
    /// Exit 4: truncation-unreliable results (outputs are kept and flagged).
    Truncation(String),
    /// Exit 1: I/O or other environment problem.
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Io(_) => 1,
            Failure::Config(_) => 2,
            Failure::Unstable(_) => 3,
            Failure::Truncation(_) => 4,
        }
    }
    pub fn message(&self) -> &str {
        match self {
            Failure::Config(m) | Failure::Unstable(m) | Failure::Truncation(m) | Failure::Io(m) => m,
        }
    }
}

fn lift(e: omi::Error, ctx: &str) -> Failure {
    match &e {
        omi::Error::Unstable { .. } => Failure::Unstable(format!("{ctx}: {e}")),
        omi::Error::TruncationUnreliable { .. } | omi::Error::DimensionCap { .. } => {
            Failure::Truncation(format!("{ctx}: {e}"))
        }
        _ => Failure::Config(format!("{ctx}: {e}")),
    }
}

/// One CSV artifact before it is written out.
struct Table {
    /// File name suffix appended to the output stem (may be empty).
    suffix: String,
    comments: Vec<String>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    truncation_unreliable: bool,
}

impl Table {
    fn new(suffix: impl Into<String>, columns: Vec<&'static str>) -> Self {
        Table {
            suffix: suffix.into(),
            comments: Vec::new(),
            columns,
            rows: Vec::new(),
            truncation_unreliable: false,
        }
    }

    fn to_bytes(&self) -> Vec<u8> {
        let mut s = String::new();
        for c in &self.comments {
            let _ = writeln!(s, "# {c}");
        }
        if self.truncation_unreliable {
            let _ = writeln!(s, "# truncation_unreliable = true");
        }
        let _ = writeln!(s, "{}", self.columns.join(","));
        for r in &self.rows {
            let _ = writeln!(s, "{}", r.join(","));
        }
        s.into_bytes()
    }
}

/// Shortest round-trip decimal representation.
fn fmt(x: f64) -> String {
    format!("{x}")
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n.max(2) - 1) as f64)
        .collect()
}

fn model_comments(model: &InterfaceModel<f64>) -> Vec<String> {
    let mut out = vec![
        format!("variant = {:?}", model.variant),
        format!("g1 = {}", fmt(model.g1)),
        format!("g2 = {}", fmt(model.g2)),
        format!("kappa1 = {}", fmt(model.kappa1)),
        format!("kappa2 = {}", fmt(model.kappa2)),
        format!("gamma_m = {}", fmt(model.gamma_m)),
        format!("n_th = {}", fmt(model.n_th)),
        format!("n_0 = {}", fmt(model.n_0)),
    ];
    if let (Some(g0), Some(r)) = (model.g0(), model.squeezing_parameter()) {
        out.push(format!("g0 = {}", fmt(g0)));
        out.push(format!("r = {}", fmt(r)));
    }
    out
}

fn require_grid<'a>(
    cfg: &'a ExperimentConfig,
    what: &str,
) -> Result<&'a crate::config::GridSection, Failure> {
    cfg.grid
        .as_ref()
        .ok_or_else(|| Failure::Config(format!("grid: section required for {what}")))
}

fn grid_field<T: Copy>(v: Option<T>, key: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Config(format!("grid: missing key {key}")))
}

fn time_grid(cfg: &ExperimentConfig) -> Result<Vec<f64>, Failure> {
    let g = require_grid(cfg, "time grids")?;
    let t_max = grid_field(g.t_max, "t_max")?;
    let n = grid_field(g.t_points, "t_points")?;
    if t_max <= 0.0 || n < 2 {
        return Err(Failure::Config("grid: need t_max > 0 and t_points >= 2".into()));
    }
    Ok(linspace(0.0, t_max, n))
}

// ---------------------------------------------------------------------------
// experiment kinds
// ---------------------------------------------------------------------------

fn run_time_series(
    cfg: &ExperimentConfig,
    model: &InterfaceModel<f64>,
) -> Result<Vec<Table>, Failure> {
    let schedule = cfg
        .schedule
        .as_ref()
        .ok_or_else(|| Failure::Config("schedule: section required for time_series".into()))?
        .build(model)
        .map_err(Failure::Config)?;
    let grid = time_grid(cfg)?;
    let series =
        entanglement_vs_time(model, &schedule, &grid).map_err(|e| lift(e, "time_series"))?;
    let mut t = Table::new("", vec!["t", "e_n"]);
    t.comments = model_comments(model);
    for (ti, ei) in series.times.iter().zip(&series.e_n) {
        t.rows.push(vec![fmt(*ti), fmt(*ei)]);
    }
    Ok(vec![t])
}

fn run_spectrum(
    model: &InterfaceModel<f64>,
    grid: &crate::config::GridSection,
) -> Result<Vec<Table>, Failure> {
    let dw = grid_field(grid.delta_omega, "delta_omega")?;
    let filter = match &grid.omega_centers {
        Some(centers) => FilterSpec::rect(dw, centers.clone()),
        None => FilterSpec::rect_span(
            dw,
            grid_field(grid.omega_min, "omega_min")?,
            grid_field(grid.omega_max, "omega_max")?,
            grid_field(grid.omega_points, "omega_points")?,
        ),
    }
    .map_err(|e| lift(e, "spectrum filter"))?;

    let sp =
        output_entanglement_spectrum(model, &filter).map_err(|e| lift(e, "spectrum"))?;
    let em = eigenmode_analysis(model).map_err(|e| lift(e, "eigenmode analysis"))?;
    let g0 = model.g0().unwrap_or_else(|| model.g1.max(model.g2));

    let mut t = Table::new(
        "",
        vec!["omega_n", "e_n", "width_estimate", "dark_amp_abs", "bright_amp_abs"],
    );
    t.comments = model_comments(model);
    t.comments.push(format!("delta_omega = {}", fmt(dw)));
    t.comments.push(format!("pair_convention = {}", sp.pair_convention));
    for (w, e) in sp.omega.iter().zip(&sp.e_n_out) {
        // linewidth of the resonance this row sits closest to
        let width = if w.abs() < 0.5 * g0 {
            2.0 * em.delta_lambda1.abs()
        } else {
            2.0 * em.delta_lambda2.abs()
        };
        let exc = dark_mode_excitation(model, *w).map_err(|e| lift(e, "mode excitation"))?;
        t.rows.push(vec![
            fmt(*w),
            fmt(*e),
            fmt(width),
            fmt(exc.dark_amp_per_input.norm()),
            fmt(exc.bright_sym_amp_per_input.norm()),
        ]);
    }

    // filter-bandwidth sensitivity at the three resonance centers
    let mut bw = Table::new(
        "_bandwidth",
        vec!["delta_omega", "e_n_center", "e_n_plus", "e_n_minus"],
    );
    bw.comments = model_comments(model);
    for rel in [0.01, 0.02, 0.05, 0.1] {
        let dwb = (rel * g0).min(g0 / 10.0);
        let f = FilterSpec::rect(dwb, vec![0.0, g0, -g0])
            .map_err(|e| lift(e, "bandwidth filter"))?;
        let s = output_entanglement_spectrum(model, &f)
            .map_err(|e| lift(e, "bandwidth scan"))?;
        bw.rows.push(vec![
            fmt(dwb),
            fmt(s.e_n_out[0]),
            fmt(s.e_n_out[1]),
            fmt(s.e_n_out[2]),
        ]);
    }
    Ok(vec![t, bw])
}

fn run_stationary(
    cfg: &ExperimentConfig,
    model: &InterfaceModel<f64>,
) -> Result<Vec<Table>, Failure> {
    let stat = stationary_covariance(model).map_err(|e| lift(e, "stationary"))?;
    let en = log_negativity(&stat, (0, 2)).map_err(|e| lift(e, "stationary E_N"))?;
    let integrate = cfg
        .grid
        .as_ref()
        .and_then(|g| g.integrate_spectra)
        .unwrap_or(false);
    let integrated = if integrate {
        let g0 = model.g0().unwrap_or_else(|| model.g1.max(model.g2));
        let w = cfg
            .grid
            .as_ref()
            .and_then(|g| g.half_width)
            .unwrap_or(20.0 * g0.max(1.0));
        Some(integrated_internal_covariance(model, w).map_err(|e| lift(e, "integration"))?)
    } else {
        None
    };

    let cols = if integrated.is_some() {
        vec!["i", "j", "sigma", "sigma_integrated", "abs_diff"]
    } else {
        vec!["i", "j", "sigma"]
    };
    let mut t = Table::new("", cols);
    t.comments = model_comments(model);
    t.comments.push(format!("e_n_cavities = {}", fmt(en)));
    let nu = stat.symplectic_eigenvalues();
    t.comments.push(format!(
        "symplectic_eigenvalues = {} {} {}",
        fmt(nu[0]),
        fmt(nu[1]),
        fmt(nu[2])
    ));
    for i in 0..6 {
        for j in i..6 {
            let mut row = vec![i.to_string(), j.to_string(), fmt(stat.sigma[(i, j)])];
            if let Some(integ) = &integrated {
                row.push(fmt(integ[(i, j)]));
                row.push(fmt((integ[(i, j)] - stat.sigma[(i, j)]).abs()));
            }
            t.rows.push(row);
        }
    }
    Ok(vec![t])
}

fn run_eigenmodes(
    cfg: &ExperimentConfig,
    section: &crate::config::ModelSection,
    model: &InterfaceModel<f64>,
) -> Result<Vec<Table>, Failure> {
    let grid = require_grid(cfg, "eigenmodes")?;
    let r_min = grid_field(grid.r_min, "r_min")?;
    let r_max = grid_field(grid.r_max, "r_max")?;
    let n = grid_field(grid.r_points, "r_points")?;
    let g0 = model
        .g0()
        .ok_or_else(|| Failure::Config("eigenmodes: requires a two_tone model".into()))?;

    let mut t = Table::new(
        "",
        vec!["r", "delta_lambda1", "delta_lambda2", "mechanical_leakage"],
    );
    t.comments = model_comments(model);
    for r in linspace(r_min, r_max, n) {
        let m = InterfaceModel::two_tone(
            g0,
            r,
            section.kappa1,
            section.kappa2,
            section.gamma_m,
            section.n_th,
            section.n_0,
        )
        .map_err(|e| lift(e, "eigenmodes model"))?;
        let em = eigenmode_analysis(&m).map_err(|e| lift(e, "eigenmode analysis"))?;
        t.rows.push(vec![
            fmt(r),
            fmt(em.delta_lambda1),
            fmt(em.delta_lambda2),
            fmt(em.mechanical_leakage),
        ]);
    }
    Ok(vec![t])
}

fn run_stability_scan(
    cfg: &ExperimentConfig,
    section: &crate::config::ModelSection,
    model: &InterfaceModel<f64>,
) -> Result<Vec<Table>, Failure> {
    let grid = require_grid(cfg, "stability_scan")?;
    let g2s = linspace(
        grid_field(grid.g2_min, "g2_min")?,
        grid_field(grid.g2_max, "g2_max")?,
        grid_field(grid.g2_points, "g2_points")?,
    );
    let k2s = linspace(
        grid_field(grid.kappa2_min, "kappa2_min")?,
        grid_field(grid.kappa2_max, "kappa2_max")?,
        grid_field(grid.kappa2_points, "kappa2_points")?,
    );
    let mut t = Table::new(
        "",
        vec!["g2", "kappa2", "stable", "approx_condition", "margin"],
    );
    t.comments = model_comments(model);
    for &g2 in &g2s {
        for &k2 in &k2s {
            let m = InterfaceModel::new(
                model.variant,
                model.g1,
                g2,
                section.kappa1,
                k2,
                section.gamma_m,
                section.n_th,
                section.n_0,
            )
            .map_err(|e| lift(e, "stability model"))?;
            let rep = stability_check(&m);
            t.rows.push(vec![
                fmt(g2),
                fmt(k2),
                (rep.stable as u8).to_string(),
                (rep.approx_condition_holds as u8).to_string(),
                fmt(rep.margin),
            ]);
        }
    }
    Ok(vec![t])
}

fn run_discrete(
    cfg: &ExperimentConfig,
    model: &InterfaceModel<f64>,
) -> Result<Vec<Table>, Failure> {
    let schedule = cfg
        .schedule
        .as_ref()
        .ok_or_else(|| Failure::Config("schedule: section required for discrete".into()))?
        .build(model)
        .map_err(Failure::Config)?;
    let dims = cfg
        .discrete
        .as_ref()
        .ok_or_else(|| Failure::Config("discrete: section required".into()))?
        .dims;
    let n_pts = cfg
        .grid
        .as_ref()
        .and_then(|g| g.t_points)
        .unwrap_or(21);
    let config = FockConfig::new((dims[0], dims[1], dims[2])).map_err(|e| lift(e, "dims"))?;
    let state0 = FockState::<f64>::cavity_fock_mech_thermal(config, 1, 0, model.n_0)
        .map_err(|e| lift(e, "initial state"))?;
    let grid = linspace(0.0, schedule.t_final, n_pts.max(2));
    let traj =
        lindblad_evolve(&state0, model, &schedule, &grid).map_err(|e| lift(e, "evolution"))?;

    let mut t = Table::new(
        "",
        vec![
            "t",
            "e_n",
            "fidelity_plus",
            "conditional_fidelity_plus",
            "single_excitation_weight",
        ],
    );
    t.comments = model_comments(model);
    t.comments
        .push(format!("dims = {} {} {}", dims[0], dims[1], dims[2]));
    t.comments.push(format!("t_final = {}", fmt(schedule.t_final)));
    for st in &traj {
        let ent = discrete_entanglement(st).map_err(|e| lift(e, "state analysis"))?;
        t.rows.push(vec![
            fmt(st.t),
            fmt(ent.e_n),
            fmt(ent.fidelity_plus),
            fmt(ent.conditional_fidelity_plus),
            fmt(ent.single_excitation_weight),
        ]);
        t.truncation_unreliable |= st.truncation_unreliable;
    }
    Ok(vec![t])
}

fn run_oracle_crosscheck(
    cfg: &ExperimentConfig,
    model: &InterfaceModel<f64>,
) -> Result<Vec<Table>, Failure> {
    let schedule = cfg
        .schedule
        .as_ref()
        .ok_or_else(|| Failure::Config("schedule: section required for oracle_crosscheck".into()))?
        .build(model)
        .map_err(Failure::Config)?;
    let dims = cfg
        .discrete
        .as_ref()
        .ok_or_else(|| Failure::Config("discrete: section (dims) required".into()))?
        .dims;
    let grid = time_grid(cfg)?;

    let gauss = evolve(&initial_state(model), model, &schedule, &grid)
        .map_err(|e| lift(e, "moment evolution"))?;
    let config = FockConfig::new((dims[0], dims[1], dims[2])).map_err(|e| lift(e, "dims"))?;
    let state0 = FockState::<f64>::cavity_fock_mech_thermal(config, 0, 0, model.n_0)
        .map_err(|e| lift(e, "initial state"))?;
    let traj =
        lindblad_evolve(&state0, model, &schedule, &grid).map_err(|e| lift(e, "evolution"))?;

    let mut t = Table::new("", vec!["t", "e_n_gaussian", "e_n_fock", "abs_diff"]);
    t.comments = model_comments(model);
    t.comments
        .push(format!("dims = {} {} {}", dims[0], dims[1], dims[2]));
    for (gs, fs) in gauss.iter().zip(&traj) {
        let en_g = log_negativity(gs, (0, 2)).map_err(|e| lift(e, "E_N"))?;
        let cs = covariance_from_fock(fs).map_err(|e| lift(e, "moments"))?;
        let en_f = log_negativity(&cs, (0, 2)).map_err(|e| lift(e, "E_N"))?;
        t.rows.push(vec![
            fmt(gs.t),
            fmt(en_g),
            fmt(en_f),
            fmt((en_g - en_f).abs()),
        ]);
        t.truncation_unreliable |= fs.truncation_unreliable;
    }
    Ok(vec![t])
}

/// One summary row: revival peaks of both schemes plus the stationary value.
fn revival_summary_row(
    cfg: &ExperimentConfig,
    model: &InterfaceModel<f64>,
) -> Result<Vec<String>, Failure> {
    let g0 = model
        .g0()
        .ok_or_else(|| Failure::Config("revival_summary: requires a two_tone model".into()))?;
    let t1 = std::f64::consts::PI / g0;

    let peak = |schedule: &CouplingSchedule<f64>, center: f64| -> Result<f64, Failure> {
        let grid = linspace(0.0, 1.25 * center, (1.25 * center / 2e-3).ceil() as usize);
        let series =
            entanglement_vs_time(model, schedule, &grid).map_err(|e| lift(e, "revival"))?;
        Ok(series
            .times
            .iter()
            .zip(&series.e_n)
            .filter(|(t, _)| (**t - center).abs() <= 0.25 * center)
            .map(|(_, e)| *e)
            .fold(0.0, f64::max))
    };

    let constant = CouplingSchedule::constant(model.g1, model.g2, 1.25 * t1)
        .map_err(|e| lift(e, "constant schedule"))?;
    let peak_constant = peak(&constant, t1)?;

    let lambda = cfg
        .schedule
        .as_ref()
        .and_then(|s| s.lambda)
        .ok_or_else(|| Failure::Config("schedule: lambda required for revival_summary".into()))?;
    let adiabatic = CouplingSchedule::adiabatic_squeeze(g0, lambda, 2.5 * t1)
        .map_err(|e| lift(e, "adiabatic schedule"))?;
    let peak_adiabatic = peak(&adiabatic, 2.0 * t1)?;

    let stat = stationary_covariance(model).map_err(|e| lift(e, "stationary"))?;
    let en_stat = log_negativity(&stat, (0, 2)).map_err(|e| lift(e, "stationary E_N"))?;

    Ok(vec![
        fmt(model.n_th),
        fmt(peak_constant),
        fmt(peak_adiabatic),
        fmt(en_stat),
    ])
}

// ---------------------------------------------------------------------------
// orchestration
// ---------------------------------------------------------------------------

struct Artifact {
    name: String,
    bytes: Vec<u8>,
    truncation_unreliable: bool,
}

fn entry_artifacts(
    cfg: &ExperimentConfig,
    entry: &SweepEntry,
    multi: bool,
) -> Result<Vec<Artifact>, Failure> {
    let (msec, grid) = apply_overrides(&cfg.model, &cfg.grid, entry).map_err(Failure::Config)?;
    let model = msec.build().map_err(Failure::Config)?;
    let cfg_local = ExperimentConfig {
        grid,
        ..cfg.clone()
    };

    let tables = match cfg.experiment.kind {
        Kind::TimeSeries => run_time_series(&cfg_local, &model)?,
        Kind::Spectrum => {
            let g = require_grid(&cfg_local, "spectrum")?.clone();
            run_spectrum(&model, &g)?
        }
        Kind::Stationary => run_stationary(&cfg_local, &model)?,
        Kind::Eigenmodes => run_eigenmodes(&cfg_local, &msec, &model)?,
        Kind::StabilityScan => run_stability_scan(&cfg_local, &msec, &model)?,
        Kind::Discrete => run_discrete(&cfg_local, &model)?,
        Kind::OracleCrosscheck => run_oracle_crosscheck(&cfg_local, &model)?,
        Kind::RevivalSummary => unreachable!("handled separately"),
    };

    let stem = &cfg.experiment.output;
    Ok(tables
        .into_iter()
        .map(|mut t| {
            let mut comments = vec![
                format!("experiment = {}", cfg.experiment.kind.name()),
                format!("sweep_entry = {}", if multi { &entry.label } else { "none" }),
            ];
            comments.append(&mut t.comments);
            t.comments = comments;
            let name = if multi {
                format!("{stem}_{}{}.csv", entry.label, t.suffix)
            } else {
                format!("{stem}{}.csv", t.suffix)
            };
            Artifact {
                name,
                bytes: t.to_bytes(),
                truncation_unreliable: t.truncation_unreliable,
            }
        })
        .collect())
}

fn atomic_write(dir: &Path, name: &str, bytes: &[u8]) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Io(format!("{name}: {e}"));
    std::fs::create_dir_all(dir).map_err(io)?;
    let tmp = dir.join(format!("{name}.tmp"));
    let dst = dir.join(name);
    {
        let mut f = std::fs::File::create(&tmp).map_err(io)?;
        f.write_all(bytes).map_err(io)?;
        f.sync_all().map_err(io)?;
    }
    std::fs::rename(&tmp, &dst).map_err(io)?;
    Ok(())
}

pub struct RunOptions {
    pub out_dir: PathBuf,
    pub parallel: usize,
    pub strict_truncation: bool,
}

/// Execute a config; returns the list of written artifact names.
pub fn run(config_text: &str, opts: &RunOptions) -> Result<Vec<String>, Failure> {
    let cfg = crate::config::parse(config_text).map_err(Failure::Config)?;
    let entries = expand_sweep(&cfg.sweep).map_err(Failure::Config)?;
    let multi = entries.len() > 1;

    let mut artifacts: Vec<Artifact> = Vec::new();
    if cfg.experiment.kind == Kind::RevivalSummary {
        // summary runs collapse the sweep into one row per entry
        let mut t = Table::new(
            "",
            vec!["n_th", "peak_constant_t1", "peak_adiabatic_t2", "stationary_e_n"],
        );
        t.comments = vec![format!("experiment = {}", cfg.experiment.kind.name())];
        let rows: Result<Vec<Vec<String>>, Failure> = maybe_parallel(
            opts.parallel,
            &entries,
            |entry| {
                let (msec, _) =
                    apply_overrides(&cfg.model, &cfg.grid, entry).map_err(Failure::Config)?;
                let model = msec.build().map_err(Failure::Config)?;
                revival_summary_row(&cfg, &model)
            },
        );
        t.rows = rows?;
        artifacts.push(Artifact {
            name: format!("{}.csv", cfg.experiment.output),
            bytes: t.to_bytes(),
            truncation_unreliable: false,
        });
    } else {
        let per_entry: Result<Vec<Vec<Artifact>>, Failure> =
            maybe_parallel(opts.parallel, &entries, |entry| {
                entry_artifacts(&cfg, entry, multi)
            });
        artifacts = per_entry?.into_iter().flatten().collect();
    }

    // write artifacts plus a manifest with content hashes
    let mut names = Vec::new();
    let mut manifest = String::new();
    let _ = writeln!(manifest, "config_sha256 = \"{}\"", hex_digest(config_text.as_bytes()));
    let _ = writeln!(manifest, "experiment = \"{}\"", cfg.experiment.kind.name());
    let mut any_truncation = false;
    for a in &artifacts {
        atomic_write(&opts.out_dir, &a.name, &a.bytes)?;
        let _ = writeln!(manifest, "\n[[outputs]]");
        let _ = writeln!(manifest, "name = \"{}\"", a.name);
        let _ = writeln!(manifest, "sha256 = \"{}\"", hex_digest(&a.bytes));
        let _ = writeln!(manifest, "truncation_unreliable = {}", a.truncation_unreliable);
        any_truncation |= a.truncation_unreliable;
        names.push(a.name.clone());
    }
    let manifest_name = format!("{}_manifest.toml", cfg.experiment.output);
    atomic_write(&opts.out_dir, &manifest_name, manifest.as_bytes())?;
    names.push(manifest_name);

    // truncation-unreliable oracle results are an error; other kinds fail
    // only under --strict-truncation (outputs are kept either way)
    if any_truncation && (opts.strict_truncation || cfg.experiment.kind == Kind::OracleCrosscheck)
    {
        return Err(Failure::Truncation(
            "results flagged truncation-unreliable (outputs kept)".into(),
        ));
    }
    Ok(names)
}

fn maybe_parallel<I: Sync, O: Send>(
    parallel: usize,
    items: &[I],
    f: impl Fn(&I) -> Result<O, Failure> + Sync,
) -> Result<Vec<O>, Failure> {
    if parallel > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(parallel)
            .build()
            .map_err(|e| Failure::Io(format!("thread pool: {e}")))?;
        pool.install(|| items.par_iter().map(|i| f(i)).collect())
    } else {
        items.iter().map(f).collect()
    }
}

fn hex_digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
