//! Reality change and ledger deltas along an intensity grid.

use std::f64::consts::FRAC_1_SQRT_2;

use qreality::{
    binary_entropy, complementarity_ledger, random_observable, random_state_with, reality_change, rng_from_seed,
    Assertion, CVector, DensityMatrix, Dims, Intensity, MonitoringMap, Observable, PureState, Purity, Result, C64,
};
use serde::Serialize;

use crate::config::{RunConfig, SweepState};

/// Grid used when the configuration gives none.
pub const DEFAULT_GRID: [f64; 10] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub epsilon: f64,
    pub delta_r: f64,
    pub lower_bound: f64,
    pub fannes_bound: f64,
    pub delta_info_s: f64,
    pub delta_info_x: f64,
    pub delta_mutual_sx: f64,
}

pub struct Sweep {
    pub rows: Vec<SweepRow>,
    /// Assertions tagged with the grid position they belong to.
    pub assertions: Vec<(usize, Assertion)>,
}

fn sweep_input(cfg: &RunConfig) -> Result<(DensityMatrix, Observable)> {
    match cfg.sweep_state {
        SweepState::Plus => {
            let h = C64::new(FRAC_1_SQRT_2, 0.0);
            let plus = PureState::normalized(CVector::from_vec(vec![h, h]), Dims::new(vec![2])?)?;
            Ok((plus.to_density(), Observable::pauli_z(0)))
        }
        SweepState::Random => {
            let mut rng = rng_from_seed(cfg.seed);
            let rho = random_state_with(&mut rng, &cfg.dims, Purity::Mixed(cfg.dims.total()))?;
            let obs = random_observable(&mut rng, 0, cfg.dims.as_slice()[0]);
            Ok((rho, obs))
        }
    }
}

pub fn sweep_epsilon(cfg: &RunConfig) -> Result<Sweep> {
    let grid: Vec<f64> = if cfg.epsilon.is_empty() {
        DEFAULT_GRID.to_vec()
    } else {
        cfg.epsilon.clone()
    };
    let (rho, obs) = sweep_input(cfg)?;
    let tol = &cfg.tolerances;
    let mut rows = Vec::with_capacity(grid.len());
    let mut assertions = Vec::new();
    for (k, &eps) in grid.iter().enumerate() {
        let e = Intensity::new(eps)?;
        let r = reality_change(&obs, e, &rho)?;
        let l = complementarity_ledger(
            &MonitoringMap {
                observable: obs.clone(),
                intensity: e,
            },
            &rho,
        )?;
        rows.push(SweepRow {
            epsilon: eps,
            delta_r: r.delta_r,
            lower_bound: r.lower_bound,
            fannes_bound: r.fannes_bound,
            delta_info_s: l.delta_info_s,
            delta_info_x: l.delta_info_x,
            delta_mutual_sx: l.delta_mutual_sx,
        });
        let mut push = |a: Assertion| assertions.push((k, a));
        push(Assertion::at_least(
            "lower_bound",
            "Delta R(A) >= eps J(A|rho)",
            r.delta_r,
            r.lower_bound,
            tol.tol_ineq_slack,
        ));
        push(Assertion::at_most(
            "fannes_bound",
            "Delta R(A) <= eps tau ln(d-1) + H(eps tau)",
            r.delta_r,
            r.fannes_bound,
            tol.tol_ineq_slack,
        ));
        push(Assertion::identity(
            "reality_zero_sum",
            "Delta I_S + Delta R(A) = 0",
            l.reality_zero_sum(),
            0.0,
            tol.tol_identity,
        ));
        if cfg.sweep_state == SweepState::Plus {
            push(Assertion::identity(
                "closed_form",
                "Delta R(sigma_z) = H(eps/2) on |+>",
                r.delta_r,
                binary_entropy(eps / 2.0),
                tol.tol_identity,
            ));
        }
        if eps == 1.0 {
            push(Assertion::identity(
                "saturation",
                "Delta R(A) = J(A|rho) at eps = 1",
                r.delta_r,
                r.irreality_before,
                tol.tol_identity,
            ));
        }
        if eps == 0.0 {
            push(Assertion::identity(
                "identity_channel",
                "Delta R(A) = 0 at eps = 0",
                r.delta_r,
                0.0,
                tol.tol_identity,
            ));
        }
    }
    // Monotonicity in eps, checked along the grid sorted by intensity.
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| rows[a].epsilon.total_cmp(&rows[b].epsilon));
    for pair in order.windows(2) {
        let (lo, hi) = (rows[pair[0]], rows[pair[1]]);
        assertions.push((
            pair[1],
            Assertion::at_least(
                "monotone_in_eps",
                "Delta R(A) nondecreasing in eps",
                hi.delta_r,
                lo.delta_r,
                tol.tol_ineq_slack,
            ),
        ));
    }
    Ok(Sweep { rows, assertions })
}
