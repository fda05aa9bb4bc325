//! Randomised assertion suites. Sample `i` draws from stream `i` of the
//! configured seed, so results do not depend on scheduling.

use qreality::channels::{apply_weak_collapse, RevealedMeasurement};
use qreality::{
    apply_local_kraus, apply_monitoring, apply_monitoring_n, complementarity_ledger, information_ledger,
    irreality_decomposition, iterate_monitoring, kraus_completeness, monitoring_kraus, monotonicity_check,
    outcome_probability, random_observable, random_state_with, reality_change, tripartite_ssa_experiment,
    unrevealed_average, weak_collapse_difference, Assertion, Bipartition, CMatrix, DensityMatrix, DephasingMap, Dims,
    Intensity, MonitoringMap, Observable, Purity, Result, SeededRng, Tolerances,
};
use rand::Rng;

use crate::config::RunConfig;

pub type SampleFn = fn(&RunConfig, usize, &mut SeededRng) -> Result<Vec<Assertion>>;

/// Names and entry points of every sampled suite.
pub const SUITES: [(&str, SampleFn); 6] = [
    ("reality_bounds_suite", reality_bounds),
    ("map_algebra_suite", map_algebra),
    ("monotonicity_suite", monotonicity),
    ("ssa_suite", ssa),
    ("decomposition_suite", decomposition),
    ("complementarity_suite", complementarity),
];

pub fn suite(name: &str) -> Option<SampleFn> {
    SUITES.iter().find(|(n, _)| *n == name).map(|(_, f)| *f)
}

/// Suites that need at least two subsystems.
pub fn needs_bipartite(name: &str) -> bool {
    matches!(name, "decomposition_suite")
}

/// State of uniformly random rank, pure when the rank is 1.
fn any_state(rng: &mut SeededRng, dims: &Dims) -> Result<DensityMatrix> {
    let rank = rng.random_range(1..=dims.total());
    mixed(rng, dims, rank)
}

fn mixed(rng: &mut SeededRng, dims: &Dims, rank: usize) -> Result<DensityMatrix> {
    let purity = if rank == 1 { Purity::Pure } else { Purity::Mixed(rank) };
    random_state_with(rng, dims, purity)
}

fn intensity(cfg: &RunConfig, sample: usize, rng: &mut SeededRng) -> Intensity {
    let eps = if cfg.epsilon.is_empty() {
        rng.random::<f64>()
    } else {
        cfg.epsilon[sample % cfg.epsilon.len()]
    };
    Intensity::new(eps).expect("grid validated, draws lie in [0, 1)")
}

fn observable_on(rng: &mut SeededRng, dims: &Dims, target: usize) -> Observable {
    random_observable(rng, target, dims.as_slice()[target])
}

fn any_observable(rng: &mut SeededRng, dims: &Dims) -> Observable {
    let target = rng.random_range(0..dims.len());
    observable_on(rng, dims, target)
}

fn gap(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    qreality::linalg::max_abs_diff(a.matrix(), b.matrix())
}

fn zero(id: &str, anchor: &str, measured: f64, tol: &Tolerances) -> Assertion {
    Assertion::identity(id, anchor, measured, 0.0, tol.tol_identity)
}

fn reality_bounds(cfg: &RunConfig, sample: usize, rng: &mut SeededRng) -> Result<Vec<Assertion>> {
    let rho = any_state(rng, &cfg.dims)?;
    let obs = any_observable(rng, &cfg.dims);
    let eps = intensity(cfg, sample, rng);
    let r = reality_change(&obs, eps, &rho)?;
    let slack = cfg.tolerances.tol_ineq_slack;
    Ok(vec![
        Assertion::at_least(
            "lower_bound",
            "Delta R(A) >= eps J(A|rho)",
            r.delta_r,
            r.lower_bound,
            slack,
        ),
        Assertion::at_most(
            "fannes_bound",
            "Delta R(A) <= eps tau ln(d-1) + H(eps tau)",
            r.delta_r,
            r.fannes_bound,
            slack,
        ),
    ])
}

fn map_algebra(cfg: &RunConfig, sample: usize, rng: &mut SeededRng) -> Result<Vec<Assertion>> {
    let tol = &cfg.tolerances;
    let rho = any_state(rng, &cfg.dims)?;
    let obs = any_observable(rng, &cfg.dims);
    let eps = intensity(cfg, sample, rng);
    let delta = Intensity::new(rng.random::<f64>())?;
    let n = rng.random_range(1..=10u64);

    let phi = DephasingMap::new(obs.clone());
    let m = MonitoringMap {
        observable: obs.clone(),
        intensity: eps,
    };
    let dephased = phi.apply(&rho)?;
    let monitored = m.apply(&rho)?;

    // Collapse on the likeliest outcome so the normalisation is well defined.
    let mut outcome = 0;
    let mut best = f64::NEG_INFINITY;
    for a in 0..obs.dim() {
        let p = outcome_probability(&obs, a, &rho)?;
        if p > best {
            (outcome, best) = (a, p);
        }
    }
    let collapse = |i: Intensity| RevealedMeasurement {
        observable: obs.clone(),
        outcome,
        intensity: i,
    };
    let twice = apply_weak_collapse(&collapse(eps), &apply_weak_collapse(&collapse(delta), &rho)?)?;
    let merged = apply_weak_collapse(&collapse(eps.compose(delta)), &rho)?;

    let kraus = monitoring_kraus(&m);
    let k = obs.dim();
    let completeness = qreality::linalg::max_abs_diff(&kraus_completeness(&kraus), &CMatrix::identity(k, k));

    Ok(vec![
        zero(
            "dephasing_idempotent",
            "Phi_A Phi_A = Phi_A",
            gap(&phi.apply(&dephased)?, &dephased),
            tol,
        ),
        zero(
            "monitoring_after_dephasing",
            "M^eps_A Phi_A = Phi_A",
            gap(&m.apply(&dephased)?, &dephased),
            tol,
        ),
        zero(
            "dephasing_after_monitoring",
            "Phi_A M^eps_A = Phi_A",
            gap(&phi.apply(&monitored)?, &dephased),
            tol,
        ),
        zero(
            "weak_collapse_composition",
            "C^eps C^delta = C^(eps + delta - eps delta)",
            gap(&twice, &merged),
            tol,
        ),
        zero(
            "weak_collapse_difference",
            "C^eps - C^delta = (eps - delta)(C - 1)",
            weak_collapse_difference(eps, delta, &obs, outcome, &rho)?.gap(),
            tol,
        ),
        zero(
            "monitoring_iteration",
            "(M^eps)^n = M^(1 - (1 - eps)^n)",
            gap(
                &apply_monitoring_n(&m, n, &rho)?,
                &apply_monitoring(&iterate_monitoring(&m, n)?, &rho)?,
            ),
            tol,
        ),
        zero(
            "revealed_average",
            "sum_a p_a C^eps_a|A = M^eps_A",
            gap(&unrevealed_average(&obs, eps, &rho)?, &monitored),
            tol,
        ),
        zero("kraus_completeness", "sum_i K_i^dagger K_i = 1", completeness, tol),
        zero(
            "kraus_action",
            "sum_i K_i rho K_i^dagger = M^eps_A(rho)",
            gap(&apply_local_kraus(&kraus, obs.target(), &rho)?, &monitored),
            tol,
        ),
    ])
}

fn monotonicity(cfg: &RunConfig, sample: usize, rng: &mut SeededRng) -> Result<Vec<Assertion>> {
    let rho = any_state(rng, &cfg.dims)?;
    let a = observable_on(rng, &cfg.dims, 0);
    let o = any_observable(rng, &cfg.dims);
    let eps = intensity(cfg, sample, rng);
    let (before, after) = monotonicity_check(&a, &o, eps, &rho)?;
    Ok(vec![Assertion::at_most(
        "irreality_monotone",
        "J(A|M^eps_O(rho)) <= J(A|rho)",
        after,
        before,
        cfg.tolerances.tol_ineq_slack,
    )])
}

fn ssa(cfg: &RunConfig, sample: usize, rng: &mut SeededRng) -> Result<Vec<Assertion>> {
    let tol = &cfg.tolerances;
    let rho = any_state(rng, &cfg.dims)?;
    let a = observable_on(rng, &cfg.dims, 0);
    let aprime = observable_on(rng, &cfg.dims, 0);
    let eps = intensity(cfg, sample, rng);
    let delta = Intensity::new(rng.random::<f64>())?;
    let r = tripartite_ssa_experiment(&a, eps, &aprime, delta, &rho)?;
    Ok(vec![
        Assertion::at_least(
            "ssa_slack",
            "S(SX) + S(SY) - S(SXY) - S(S) >= 0",
            r.ssa_slack,
            0.0,
            tol.tol_ineq_slack,
        ),
        zero("joint_entropy", "S(rho_SXY) = S(rho)", r.joint_entropy_gap, tol),
        zero(
            "reduced_state",
            "rho_S = M^eps_A M^delta_A'(rho)",
            r.reduced_state_gap,
            tol,
        ),
    ])
}

fn decomposition(cfg: &RunConfig, _sample: usize, rng: &mut SeededRng) -> Result<Vec<Assertion>> {
    let tol = &cfg.tolerances;
    let rho = any_state(rng, &cfg.dims)?;
    let a = observable_on(rng, &cfg.dims, 0);
    let cut = Bipartition::split_at(1, cfg.dims.len());
    let b = irreality_decomposition(&a, &rho, &cut)?;
    let l = information_ledger(&rho, &cut)?;
    Ok(vec![
        zero(
            "decomposition_sum_rule",
            "J(A|rho) = J(A|rho_A) + D_A(rho)",
            b.sum_gap(),
            tol,
        ),
        zero(
            "ledger_local_mutual",
            "I = I_A + I_B + I_A:B",
            l.local_mutual_gap(),
            tol,
        ),
        zero("ledger_conditional", "I = I_B + I_A|B", l.conditional_gap(), tol),
    ])
}

fn complementarity(cfg: &RunConfig, sample: usize, rng: &mut SeededRng) -> Result<Vec<Assertion>> {
    let tol = &cfg.tolerances;
    let d = cfg.dims.total();
    let rank = rng.random_range(2.min(d)..=d);
    let rho = mixed(rng, &cfg.dims, rank)?;
    let psi = mixed(rng, &cfg.dims, 1)?;
    let obs = any_observable(rng, &cfg.dims);
    let eps = intensity(cfg, sample, rng);
    let m = MonitoringMap {
        observable: obs,
        intensity: eps,
    };
    let l = complementarity_ledger(&m, &rho)?;
    let p = complementarity_ledger(&m, &psi)?;
    Ok(vec![
        zero(
            "information_zero_sum",
            "Delta(I_S:X + I_X) + Delta J(A) = 0",
            l.information_zero_sum(),
            tol,
        ),
        zero(
            "reality_zero_sum",
            "Delta I_S + Delta R(A) = 0",
            l.reality_zero_sum(),
            tol,
        ),
        Assertion::identity(
            "entanglement_identity",
            "Delta R(A) = E for pure rho_S",
            p.delta_reality,
            p.entanglement.unwrap_or(f64::NAN),
            tol.tol_identity,
        ),
    ])
}

/// Iterated and subdivided monitoring approach full dephasing and
/// `M^(1 - 1/e)` respectively.
pub fn limit_laws(cfg: &RunConfig, rng: &mut SeededRng) -> Result<Vec<Assertion>> {
    const ITERATIONS: u64 = 50;
    const PIECES: u64 = 10_000;
    let rho = any_state(rng, &cfg.dims)?;
    let obs = any_observable(rng, &cfg.dims);
    let half = MonitoringMap {
        observable: obs.clone(),
        intensity: Intensity::new(0.5)?,
    };
    let dephased = DephasingMap::new(obs.clone()).apply(&rho)?;
    let iterated = apply_monitoring_n(&half, ITERATIONS, &rho)?;

    let piece = MonitoringMap {
        observable: obs.clone(),
        intensity: Intensity::new(1.0 / PIECES as f64)?,
    };
    let subdivided = Intensity::ONE.subdivided(PIECES);
    let limit = 1.0 - (-1.0f64).exp();
    let limit_map = MonitoringMap {
        observable: obs,
        intensity: Intensity::new(limit)?,
    };
    // Deviation from the limit is about e^-1 / (2n).
    let convergence = 1.0 / PIECES as f64;
    Ok(vec![
        Assertion::identity(
            "iterated_monitoring",
            "(M^0.5_A)^50 = Phi_A",
            gap(&iterated, &dephased),
            0.0,
            cfg.tolerances.tol_identity,
        ),
        Assertion::identity(
            "subdivided_intensity",
            "1 - (1 - 1/n)^n -> 1 - 1/e",
            subdivided.value(),
            limit,
            convergence,
        ),
        Assertion::identity(
            "subdivided_monitoring",
            "(M^(1/n)_A)^n -> M^(1 - 1/e)_A",
            gap(
                &apply_monitoring_n(&piece, PIECES, &rho)?,
                &apply_monitoring(&limit_map, &rho)?,
            ),
            0.0,
            convergence,
        ),
    ])
}
