//! Built-in experiment presets, one per replicable figure. Panels within a
//! figure share the root seed so they differ only in the parameter under
//! study; values not quoted in the sources are preset choices noted inline.

use actuation_core::{Axis, ModelKind, ScenarioConfig, SweepSpec};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum PresetRun {
    Scenario(ScenarioConfig),
    Sweep(SweepSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedRun {
    pub name: String,
    pub run: PresetRun,
}

pub const FIGURE_IDS: [&str; 6] = ["fig4", "fig5", "fig6", "fig8", "fig9", "fig10"];

fn scenario(name: String, cfg: ScenarioConfig) -> NamedRun {
    NamedRun { name, run: PresetRun::Scenario(cfg) }
}

fn frange(start: f64, step: f64, count: usize) -> Vec<f64> {
    (0..count).map(|i| start + step * i as f64).collect()
}

/// The stability-regime baseline shared by the contact and weighting
/// figures: no production bias, strong endpoint preference.
fn stable_base(seed: u64) -> ScenarioConfig {
    ScenarioConfig { seed, lambda: 0.0, a: 0.01, ..ScenarioConfig::default() }
}

pub fn preset_runs(figure: &str, seed: u64) -> Result<Vec<NamedRun>> {
    match figure {
        // single-population change trajectory under a production bias
        "fig4" => Ok(vec![scenario("fig4".into(), ScenarioConfig {
            seed,
            lambda: 2.0,
            ..ScenarioConfig::default()
        })]),

        // adaptive landscape over production bias and endpoint-bias strength
        "fig5" => Ok(vec![NamedRun {
            name: "fig5".into(),
            run: PresetRun::Sweep(SweepSpec {
                base: ScenarioConfig { seed, ..ScenarioConfig::default() },
                axes: vec![
                    Axis { param: "lambda".into(), values: frange(0.0, 0.25, 17) },
                    Axis { param: "a".into(), values: frange(0.005, 0.005, 20) },
                ],
                t_max: 2500,
                replicates: 1,
                window: 50,
                delta: 0.5,
            }),
        }]),

        // variant weighting at increasing reference weights
        "fig6" => Ok([1.0, 1.05, 1.1, 1.5]
            .into_iter()
            .map(|w| {
                scenario(format!("fig6_w{w}"), ScenarioConfig {
                    model: ModelKind::M2VariantWeight,
                    t: 250,
                    w,
                    ..stable_base(seed)
                })
            })
            .collect()),

        // two groups in contact; prob pairs cover the stable, asymmetric,
        // and symmetric-merge regimes (panel values beyond the quoted 0.05
        // and 0.06 are preset choices)
        "fig8" => Ok([(0.01, 0.01), (0.05, 0.005), (0.06, 0.06), (0.1, 0.1)]
            .into_iter()
            .map(|(a_prob, b_prob)| {
                scenario(format!("fig8_ap{a_prob}_bp{b_prob}"), ScenarioConfig {
                    model: ModelKind::M1Contact,
                    t: 50,
                    a_prob,
                    b_prob,
                    ..stable_base(seed)
                })
            })
            .collect()),

        // group weighting; the two contact levels reflect the sources'
        // differing quoted values (0.03 in text, 0.3 in the panel grid)
        "fig9" => {
            let mut runs = Vec::new();
            for p in [0.03, 0.3] {
                for (a_weight, b_weight) in [(0.5, 0.2), (0.5, 0.5), (0.2, 1.0), (1.0, 1.0)] {
                    runs.push(scenario(
                        format!("fig9_p{p}_aw{a_weight}_bw{b_weight}"),
                        ScenarioConfig {
                            model: ModelKind::M3GroupWeight,
                            t: 250,
                            a_prob: p,
                            b_prob: p,
                            a_weight,
                            b_weight,
                            ..stable_base(seed)
                        },
                    ));
                }
            }
            Ok(runs)
        }

        // individual weighting over correlation strength and weight ceiling
        "fig10" => Ok(vec![NamedRun {
            name: "fig10".into(),
            run: PresetRun::Sweep(SweepSpec {
                base: ScenarioConfig {
                    model: ModelKind::M4IndividualWeight,
                    ..stable_base(seed)
                },
                axes: vec![
                    Axis { param: "rho".into(), values: vec![0.0, 0.25, 0.5, 0.75, 1.0] },
                    Axis { param: "w_max".into(), values: vec![10.0, 100.0, 1000.0] },
                ],
                t_max: 500,
                replicates: 1,
                window: 50,
                delta: 0.5,
            }),
        }]),

        other => Err(CliError::Usage(format!(
            "unknown figure \"{other}\"; known: {}",
            FIGURE_IDS.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_validates() {
        for id in FIGURE_IDS {
            for named in preset_runs(id, 7).unwrap() {
                match named.run {
                    PresetRun::Scenario(cfg) => cfg.validate().unwrap(),
                    PresetRun::Sweep(spec) => spec.validate().unwrap(),
                }
            }
        }
    }

    #[test]
    fn fig4_panel_parameters() {
        let runs = preset_runs("fig4", 9).unwrap();
        assert_eq!(runs.len(), 1);
        let PresetRun::Scenario(cfg) = &runs[0].run else { panic!("expected scenario") };
        assert_eq!((cfg.a, cfg.lambda, cfg.t, cfg.m, cfg.n), (0.02, 2.0, 100, 500, 100));
        assert_eq!(cfg.seed, 9);
    }

    #[test]
    fn fig6_panels_cover_quoted_weights() {
        let runs = preset_runs("fig6", 7).unwrap();
        let ws: Vec<f64> = runs
            .iter()
            .map(|r| match &r.run {
                PresetRun::Scenario(cfg) => cfg.w,
                _ => panic!("expected scenarios"),
            })
            .collect();
        assert_eq!(ws, vec![1.0, 1.05, 1.1, 1.5]);
    }

    #[test]
    fn fig5_grid_matches_documented_resolution() {
        let runs = preset_runs("fig5", 7).unwrap();
        let PresetRun::Sweep(spec) = &runs[0].run else { panic!("expected sweep") };
        assert_eq!(spec.axes[0].values.len(), 17);
        assert_eq!(spec.axes[0].values[16], 4.0);
        assert_eq!(spec.axes[1].values.len(), 20);
        assert!((spec.axes[1].values[19] - 0.1).abs() < 1e-12);
        assert_eq!(spec.t_max, 2500);
    }

    #[test]
    fn unknown_figure_is_rejected() {
        let err = preset_runs("fig7", 7).unwrap_err().to_string();
        assert!(err.contains("fig7") && err.contains("fig10"), "{err}");
    }
}
