//! Embedded experiment presets reproducing the reference figures and checks.

pub struct Preset {
    pub name: &'static str,
    pub summary: &'static str,
    pub config: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fig2a",
        summary: "transient cavity entanglement vs time, constant couplings, n_th sweep",
        config: r#"
[experiment]
kind = "time_series"
output = "fig2a"

[model]
variant = "two_tone"
g0 = 3.0
r = 1.0
kappa1 = 0.3
kappa2 = 0.2
gamma_m = 0.001
n_th = 0.0
n_0 = 0.0

[schedule]
kind = "constant"
t_final = 5.5

[grid]
t_max = 5.5
t_points = 551

[sweep]
parameter = "n_th"
values = [0.0, 10.0, 100.0, 1000.0]
link_n0 = true
"#,
    },
    Preset {
        name: "fig2b",
        summary: "transient entanglement vs time, adiabatic cosh/sinh sweep, n_th sweep",
        config: r#"
[experiment]
kind = "time_series"
output = "fig2b"

[model]
variant = "two_tone"
g0 = 3.0
r = 1.0
kappa1 = 0.3
kappa2 = 0.2
gamma_m = 0.001
n_th = 0.0
n_0 = 0.0

[schedule]
kind = "adiabatic_squeeze"
lambda = 0.06
t_final = 4.4

[grid]
t_max = 4.4
t_points = 441

[sweep]
parameter = "n_th"
values = [0.0, 10.0, 100.0, 1000.0]
link_n0 = true
"#,
    },
    Preset {
        name: "fig2c",
        summary: "revival peaks (constant at t1, adiabatic at t2) and stationary E_N vs n_th",
        config: r#"
[experiment]
kind = "revival_summary"
output = "fig2c"

[model]
variant = "two_tone"
g0 = 3.0
r = 1.0
kappa1 = 0.3
kappa2 = 0.2
gamma_m = 0.001
n_th = 1.0
n_0 = 1.0

[schedule]
kind = "adiabatic_squeeze"
lambda = 0.06
t_final = 2.2

[sweep]
parameter = "n_th"
values = [1.0, 10.0, 100.0, 1000.0, 10000.0]
link_n0 = true
"#,
    },
    Preset {
        name: "fig2d",
        summary: "first-revival shape vs initial mechanical occupation at hot bath",
        config: r#"
[experiment]
kind = "time_series"
output = "fig2d"

[model]
variant = "two_tone"
g0 = 3.0
r = 1.0
kappa1 = 0.3
kappa2 = 0.2
gamma_m = 0.001
n_th = 1000.0
n_0 = 0.0

[schedule]
kind = "constant"
t_final = 1.6

[grid]
t_max = 1.6
t_points = 801

[sweep]
parameter = "n_0"
values = [0.0, 10.0, 100.0, 1000.0]
"#,
    },
    Preset {
        name: "fig3a",
        summary: "output entanglement spectrum, kappa = (0.3, 0.2), n_th sweep",
        config: r#"
[experiment]
kind = "spectrum"
output = "fig3a"

[model]
variant = "two_tone"
g0 = 3.0
r = 1.0
kappa1 = 0.3
kappa2 = 0.2
gamma_m = 0.001
n_th = 0.0
n_0 = 0.0

[grid]
omega_min = -4.5
omega_max = 4.5
omega_points = 181
delta_omega = 0.15

[sweep]
parameter = "n_th"
values = [0.0, 10.0, 100.0, 1000.0]
link_n0 = true
"#,
    },
    Preset {
        name: "fig3b",
        summary: "output entanglement spectrum, kappa = (0.2, 0.3), n_th sweep",
        config: r#"
[experiment]
kind = "spectrum"
output = "fig3b"

[model]
variant = "two_tone"
g0 = 3.0
r = 1.0
kappa1 = 0.2
kappa2 = 0.3
gamma_m = 0.001
n_th = 0.0
n_0 = 0.0

[grid]
omega_min = -4.5
omega_max = 4.5
omega_points = 181
delta_omega = 0.15

[sweep]
parameter = "n_th"
values = [0.0, 10.0, 100.0, 1000.0]
link_n0 = true
"#,
    },
    Preset {
        name: "fig3c",
        summary: "robust vs fragile spectral peaks as a function of n_th",
        config: r#"
[experiment]
kind = "spectrum"
output = "fig3c"

[model]
variant = "two_tone"
g0 = 3.0
r = 1.0
kappa1 = 0.3
kappa2 = 0.2
gamma_m = 0.001
n_th = 1.0
n_0 = 1.0

[grid]
omega_centers = [0.0, 3.0, -3.0]
delta_omega = 0.15

[sweep]
parameter = "n_th"
values = [1.0, 10.0, 100.0, 1000.0]
link_n0 = true
"#,
    },
    Preset {
        name: "fig3d",
        summary: "damping shifts of the interface eigenmodes vs squeezing parameter",
        config: r#"
[experiment]
kind = "eigenmodes"
output = "fig3d"

[model]
variant = "two_tone"
g0 = 3.0
r = 1.0
kappa1 = 0.3
kappa2 = 0.2
gamma_m = 0.001
n_th = 0.0
n_0 = 0.0

[grid]
r_min = 0.2
r_max = 1.6
r_points = 29

[[sweep.sets]]
kappa1 = 0.3
kappa2 = 0.2

[[sweep.sets]]
kappa1 = 0.2
kappa2 = 0.3
"#,
    },
    Preset {
        name: "eq8_check",
        summary: "undamped transient entanglement through one full revival period",
        config: r#"
[experiment]
kind = "time_series"
output = "eq8_check"

[model]
variant = "two_tone"
g0 = 3.0
r = 1.0
kappa1 = 0.0
kappa2 = 0.0
gamma_m = 0.0
n_th = 0.0
n_0 = 0.0

[schedule]
kind = "constant"
t_final = 2.1

[grid]
t_max = 2.1
t_points = 211
"#,
    },
    Preset {
        name: "eq9_check",
        summary: "undamped adiabatic sweep entanglement accumulation",
        config: r#"
[experiment]
kind = "time_series"
output = "eq9_check"

[model]
variant = "two_tone"
g0 = 3.0
r = 1.0
kappa1 = 0.0
kappa2 = 0.0
gamma_m = 0.0
n_th = 0.0
n_0 = 0.0

[schedule]
kind = "adiabatic_squeeze"
lambda = 0.03
t_final = 8.4

[grid]
t_max = 8.4
t_points = 421
"#,
    },
    Preset {
        name: "eq12_check",
        summary: "lossless single-photon double-beamsplitter sweep to the Bell state",
        config: r#"
[experiment]
kind = "discrete"
output = "eq12_check"

[model]
variant = "double_beamsplitter"
g1 = 1.0
g2 = 1.0
kappa1 = 0.0
kappa2 = 0.0
gamma_m = 0.0
n_th = 0.0
n_0 = 0.0

[schedule]
kind = "beamsplitter_swap"
n = 2
exact_resonance = true

[grid]
t_points = 25

[discrete]
dims = [3, 6, 3]
"#,
    },
    Preset {
        name: "parseval_check",
        summary: "stationary covariance vs frequency-integrated internal spectra",
        config: r#"
[experiment]
kind = "stationary"
output = "parseval_check"

[model]
variant = "two_tone"
g0 = 3.0
r = 1.0
kappa1 = 0.3
kappa2 = 0.2
gamma_m = 0.001
n_th = 5.0
n_0 = 5.0

[grid]
integrate_spectra = true
half_width = 60.0
"#,
    },
];

pub fn find(name: &str) -> Result<&'static Preset, String> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| {
        let names: Vec<&str> = PRESETS.iter().map(|p| p.name).collect();
        format!("unknown preset {name}; available: {}", names.join(", "))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_parse_and_validate() {
        assert_eq!(PRESETS.len(), 12);
        for p in PRESETS {
            let cfg = crate::config::parse(p.config)
                .unwrap_or_else(|e| panic!("preset {}: {e}", p.name));
            let entries = crate::config::expand_sweep(&cfg.sweep)
                .unwrap_or_else(|e| panic!("preset {}: {e}", p.name));
            for entry in &entries {
                let (m, _g) = crate::config::apply_overrides(&cfg.model, &cfg.grid, entry)
                    .unwrap_or_else(|e| panic!("preset {}: {e}", p.name));
                let model = m.build().unwrap_or_else(|e| panic!("preset {}: {e}", p.name));
                if let Some(s) = &cfg.schedule {
                    s.build(&model)
                        .unwrap_or_else(|e| panic!("preset {}: {e}", p.name));
                }
            }
        }
    }
}
