//! Dispatches a run to its scenario or suite and collects report rows.

use qreality::scenarios::{
    apparatus_reality_check, irreality_generation, measurement_entropy_bookkeeping, scattering_scenario,
    two_qubit_information_flow,
};
use qreality::{rng_for_sample, rng_from_seed, Assertion, Intensity, ScenarioResult};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::ConfigError;
use crate::report::{Report, ReportRow};
use crate::suites::{self, SUITES};
use crate::sweep::sweep_epsilon;

/// Deterministic scenarios, run once.
pub const SCENARIOS: [&str; 7] = [
    "two_qubit_information_flow",
    "irreality_generation",
    "scattering",
    "apparatus_reality_check",
    "measurement_entropy_bookkeeping",
    "epsilon_sweep",
    "limit_laws",
];

pub fn known_names() -> Vec<&'static str> {
    SCENARIOS
        .iter()
        .copied()
        .chain(SUITES.iter().map(|(n, _)| *n))
        .collect()
}

fn unknown(name: &str) -> ConfigError {
    ConfigError::UnknownScenario {
        name: name.to_string(),
        known: known_names().join(", "),
    }
}

/// Fails fast on names and settings the run cannot use.
pub fn check(cfg: &RunConfig) -> Result<(), ConfigError> {
    if !known_names().contains(&cfg.scenario.as_str()) {
        return Err(unknown(&cfg.scenario));
    }
    cfg.validate()?;
    if suites::needs_bipartite(&cfg.scenario) && cfg.dims.len() < 2 {
        return Err(ConfigError::invalid("dims", "this suite needs at least two subsystems"));
    }
    Ok(())
}

pub fn run(cfg: &RunConfig) -> Result<Report, ConfigError> {
    check(cfg)?;
    let name = cfg.scenario.as_str();
    let model = |source| ConfigError::Model {
        scenario: name.to_string(),
        source,
    };
    let mut report = Report::default();
    let push_all = |report: &mut Report, assertions: &[Assertion], sample: Option<usize>| {
        for a in assertions {
            report.rows.push(ReportRow::from_assertion(name, a, sample));
        }
    };
    let push_result = |report: &mut Report, r: ScenarioResult| push_all(report, &r.assertions, None);
    let tol = &cfg.tolerances;

    if let Some(sample) = suites::suite(name) {
        let per_sample: Vec<Vec<Assertion>> = (0..cfg.samples)
            .into_par_iter()
            .map(|i| sample(cfg, i, &mut rng_for_sample(cfg.seed, i as u64)))
            .collect::<qreality::Result<_>>()
            .map_err(model)?;
        for (i, assertions) in per_sample.iter().enumerate() {
            push_all(&mut report, assertions, Some(i));
        }
    } else {
        match name {
            "two_qubit_information_flow" => {
                push_result(&mut report, two_qubit_information_flow(tol).map_err(model)?);
            }
            "irreality_generation" => {
                let grid = if cfg.epsilon.is_empty() {
                    vec![0.5]
                } else {
                    cfg.epsilon.clone()
                };
                let sampled = grid.len() > 1;
                for (k, eps) in grid.into_iter().enumerate() {
                    let eps = Intensity::new(eps).map_err(model)?;
                    let r = irreality_generation(eps, cfg.outcome, tol).map_err(model)?;
                    push_all(&mut report, &r.assertions, sampled.then_some(k));
                }
            }
            "scattering" => push_result(&mut report, scattering_scenario(&cfg.scattering, tol).map_err(model)?),
            "apparatus_reality_check" => {
                push_result(&mut report, apparatus_reality_check(&cfg.detector, tol).map_err(model)?);
            }
            "measurement_entropy_bookkeeping" => {
                push_result(
                    &mut report,
                    measurement_entropy_bookkeeping(&cfg.detector, tol).map_err(model)?,
                );
            }
            "epsilon_sweep" => {
                let sweep = sweep_epsilon(cfg).map_err(model)?;
                for (k, a) in &sweep.assertions {
                    report.rows.push(ReportRow::from_assertion(name, a, Some(*k)));
                }
                report.table = Some(sweep.rows);
            }
            "limit_laws" => {
                let assertions = suites::limit_laws(cfg, &mut rng_from_seed(cfg.seed)).map_err(model)?;
                push_all(&mut report, &assertions, None);
            }
            _ => return Err(unknown(name)),
        }
    }

    if cfg.inject_failure {
        report.rows.push(ReportRow::from_assertion(
            name,
            &Assertion::identity("injected_failure", "0 = 1", 0.0, 1.0, 0.0),
            None,
        ));
    }
    report.sort();
    Ok(report)
}
