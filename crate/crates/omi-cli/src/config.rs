//! Strict TOML experiment configuration: unknown keys are rejected and all
//! parameters are validated before any computation starts.

use omi::model::{CouplingSchedule, InterfaceModel, Variant};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentSection,
    pub model: ModelSection,
    #[serde(default)]
    pub schedule: Option<ScheduleSection>,
    #[serde(default)]
    pub grid: Option<GridSection>,
    #[serde(default)]
    pub discrete: Option<DiscreteSection>,
    #[serde(default)]
    pub sweep: Option<SweepSection>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSection {
    pub kind: Kind,
    /// Output file stem; CSV files are derived from it.
    pub output: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    TimeSeries,
    Spectrum,
    Stationary,
    Eigenmodes,
    StabilityScan,
    Discrete,
    OracleCrosscheck,
    /// One summary row per sweep value: transient revival peaks (constant and
    /// adiabatic scheme) plus the stationary entanglement.
    RevivalSummary,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::TimeSeries => "time_series",
            Kind::Spectrum => "spectrum",
            Kind::Stationary => "stationary",
            Kind::Eigenmodes => "eigenmodes",
            Kind::StabilityScan => "stability_scan",
            Kind::Discrete => "discrete",
            Kind::OracleCrosscheck => "oracle_crosscheck",
            Kind::RevivalSummary => "revival_summary",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub variant: VariantName,
    /// Two-tone parametrization: g1 = g0 cosh r, g2 = g0 sinh r.
    #[serde(default)]
    pub g0: Option<f64>,
    #[serde(default)]
    pub r: Option<f64>,
    /// Explicit couplings (required for double_beamsplitter).
    #[serde(default)]
    pub g1: Option<f64>,
    #[serde(default)]
    pub g2: Option<f64>,
    pub kappa1: f64,
    pub kappa2: f64,
    pub gamma_m: f64,
    pub n_th: f64,
    pub n_0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariantName {
    TwoTone,
    DoubleBeamsplitter,
}

impl ModelSection {
    pub fn build(&self) -> Result<InterfaceModel<f64>, String> {
        match self.variant {
            VariantName::TwoTone => {
                if self.g1.is_some() || self.g2.is_some() {
                    return Err(
                        "model: two_tone takes g0/r, not explicit g1/g2".to_string()
                    );
                }
                let g0 = self.g0.ok_or("model: missing key g0")?;
                let r = self.r.ok_or("model: missing key r")?;
                InterfaceModel::two_tone(
                    g0,
                    r,
                    self.kappa1,
                    self.kappa2,
                    self.gamma_m,
                    self.n_th,
                    self.n_0,
                )
                .map_err(|e| format!("model: {e}"))
            }
            VariantName::DoubleBeamsplitter => {
                if self.g0.is_some() || self.r.is_some() {
                    return Err(
                        "model: double_beamsplitter takes explicit g1/g2, not g0/r".to_string()
                    );
                }
                let g1 = self.g1.ok_or("model: missing key g1")?;
                let g2 = self.g2.ok_or("model: missing key g2")?;
                InterfaceModel::new(
                    Variant::DoubleBeamsplitter,
                    g1,
                    g2,
                    self.kappa1,
                    self.kappa2,
                    self.gamma_m,
                    self.n_th,
                    self.n_0,
                )
                .map_err(|e| format!("model: {e}"))
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleSection {
    pub kind: ScheduleName,
    #[serde(default)]
    pub t_final: Option<f64>,
    /// Sweep rate for adiabatic_squeeze / beamsplitter_swap.
    #[serde(default)]
    pub lambda: Option<f64>,
    /// Resonance index for beamsplitter_swap (t_final derived).
    #[serde(default)]
    pub n: Option<u32>,
    /// Use the exact rotating-frame resonance rate (even n).
    #[serde(default)]
    pub exact_resonance: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleName {
    Constant,
    AdiabaticSqueeze,
    BeamsplitterSwap,
}

impl ScheduleSection {
    pub fn build(&self, model: &InterfaceModel<f64>) -> Result<CouplingSchedule<f64>, String> {
        let wrap = |r: omi::Result<CouplingSchedule<f64>>| r.map_err(|e| format!("schedule: {e}"));
        match self.kind {
            ScheduleName::Constant => {
                let t_final = self.t_final.ok_or("schedule: missing key t_final")?;
                wrap(CouplingSchedule::constant(model.g1, model.g2, t_final))
            }
            ScheduleName::AdiabaticSqueeze => {
                let g0 = model
                    .g0()
                    .ok_or("schedule: adiabatic_squeeze requires a two_tone model")?;
                let lambda = self.lambda.ok_or("schedule: missing key lambda")?;
                let t_final = self.t_final.ok_or("schedule: missing key t_final")?;
                wrap(CouplingSchedule::adiabatic_squeeze(g0, lambda, t_final))
            }
            ScheduleName::BeamsplitterSwap => {
                let n = self.n.ok_or("schedule: missing key n")?;
                let g0 = model.g1.max(model.g2);
                if self.exact_resonance.unwrap_or(false) {
                    wrap(CouplingSchedule::beamsplitter_exact(g0, n))
                } else {
                    wrap(CouplingSchedule::beamsplitter_resonant(g0, n))
                }
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    // time grids
    #[serde(default)]
    pub t_max: Option<f64>,
    #[serde(default)]
    pub t_points: Option<usize>,
    // spectrum grids
    #[serde(default)]
    pub omega_min: Option<f64>,
    #[serde(default)]
    pub omega_max: Option<f64>,
    #[serde(default)]
    pub omega_points: Option<usize>,
    #[serde(default)]
    pub omega_centers: Option<Vec<f64>>,
    #[serde(default)]
    pub delta_omega: Option<f64>,
    // squeezing-parameter grid (eigenmodes)
    #[serde(default)]
    pub r_min: Option<f64>,
    #[serde(default)]
    pub r_max: Option<f64>,
    #[serde(default)]
    pub r_points: Option<usize>,
    // stability-scan grid
    #[serde(default)]
    pub g2_min: Option<f64>,
    #[serde(default)]
    pub g2_max: Option<f64>,
    #[serde(default)]
    pub g2_points: Option<usize>,
    #[serde(default)]
    pub kappa2_min: Option<f64>,
    #[serde(default)]
    pub kappa2_max: Option<f64>,
    #[serde(default)]
    pub kappa2_points: Option<usize>,
    // stationary-run spectral cross-check
    #[serde(default)]
    pub integrate_spectra: Option<bool>,
    #[serde(default)]
    pub half_width: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscreteSection {
    pub dims: [usize; 3],
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    /// Name of the swept scalar parameter.
    #[serde(default)]
    pub parameter: Option<String>,
    #[serde(default)]
    pub values: Option<Vec<f64>>,
    /// Alternatively, explicit override sets (several parameters at once).
    #[serde(default)]
    pub sets: Option<Vec<std::collections::BTreeMap<String, f64>>>,
    /// Tie the initial mechanical occupation to a swept n_th.
    #[serde(default)]
    pub link_n0: Option<bool>,
}

/// One resolved sweep entry: label plus (parameter, value) overrides.
#[derive(Debug, Clone)]
pub struct SweepEntry {
    pub label: String,
    pub overrides: Vec<(String, f64)>,
}

const SWEEPABLE: &[&str] = &[
    "n_th", "n_0", "kappa1", "kappa2", "gamma_m", "g0", "r", "g1", "g2", "delta_omega",
];

pub fn expand_sweep(sweep: &Option<SweepSection>) -> Result<Vec<SweepEntry>, String> {
    let Some(sweep) = sweep else {
        return Ok(vec![SweepEntry {
            label: String::new(),
            overrides: Vec::new(),
        }]);
    };
    match (&sweep.parameter, &sweep.values, &sweep.sets) {
        (Some(name), Some(values), None) => {
            if !SWEEPABLE.contains(&name.as_str()) {
                return Err(format!(
                    "sweep: unknown parameter {name}; expected one of {SWEEPABLE:?}"
                ));
            }
            if values.is_empty() {
                return Err("sweep: values must be non-empty".into());
            }
            let link = sweep.link_n0.unwrap_or(false);
            if link && name != "n_th" {
                return Err("sweep: link_n0 requires parameter = \"n_th\"".into());
            }
            Ok(values
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    let mut overrides = vec![(name.clone(), v)];
                    if link {
                        overrides.push(("n_0".into(), v));
                    }
                    SweepEntry {
                        label: format!("{i:02}_{name}_{v}"),
                        overrides,
                    }
                })
                .collect())
        }
        (None, None, Some(sets)) => {
            if sets.is_empty() {
                return Err("sweep: sets must be non-empty".into());
            }
            let mut out = Vec::new();
            for (i, set) in sets.iter().enumerate() {
                let mut overrides = Vec::new();
                for (k, &v) in set {
                    if !SWEEPABLE.contains(&k.as_str()) {
                        return Err(format!(
                            "sweep: unknown parameter {k}; expected one of {SWEEPABLE:?}"
                        ));
                    }
                    overrides.push((k.clone(), v));
                }
                out.push(SweepEntry {
                    label: format!("{i:02}"),
                    overrides,
                });
            }
            Ok(out)
        }
        _ => Err(
            "sweep: provide either parameter + values, or sets (not both, not neither)".into(),
        ),
    }
}

/// Apply sweep overrides to a copy of the model/grid sections.
pub fn apply_overrides(
    model: &ModelSection,
    grid: &Option<GridSection>,
    entry: &SweepEntry,
) -> Result<(ModelSection, Option<GridSection>), String> {
    let mut m = model.clone();
    let mut g = grid.clone();
    for (name, v) in &entry.overrides {
        match name.as_str() {
            "n_th" => m.n_th = *v,
            "n_0" => m.n_0 = *v,
            "kappa1" => m.kappa1 = *v,
            "kappa2" => m.kappa2 = *v,
            "gamma_m" => m.gamma_m = *v,
            "g0" => m.g0 = Some(*v),
            "r" => m.r = Some(*v),
            "g1" => m.g1 = Some(*v),
            "g2" => m.g2 = Some(*v),
            "delta_omega" => {
                g.get_or_insert_with(GridSection::default).delta_omega = Some(*v);
            }
            other => return Err(format!("sweep: unknown parameter {other}")),
        }
    }
    Ok((m, g))
}

pub fn parse(text: &str) -> Result<ExperimentConfig, String> {
    toml::from_str(text).map_err(|e| format!("config: {e}"))
}
