//! Information ledgers, irreality and its local/discord split, and the
//! reality-change bounds under monitoring.

use serde::Serialize;

use crate::channels::{self, apply_monitoring, DephasingMap, Intensity, MonitoringMap, RevealedMeasurement};
use crate::dims::Dims;
use crate::error::{Error, Result};
use crate::observable::{unbiasedness_defect, Observable};
use crate::state::{binary_entropy, partial_trace, trace_distance, von_neumann_entropy, DensityMatrix};

/// Trace distance below which a state counts as invariant under dephasing.
pub const REALITY_STATE_TOL: f64 = 1e-9;

/// Largest `| |<a|b>|^2 - 1/d |` accepted for mutually unbiased bases.
pub const UNBIASED_TOL: f64 = 1e-9;

/// `I(rho) = ln d - S(rho)`.
pub fn information(rho: &DensityMatrix) -> f64 {
    (rho.dim() as f64).ln() - von_neumann_entropy(rho)
}

/// Split of the subsystems of a state into two nonempty groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    first: Vec<usize>,
    second: Vec<usize>,
}

impl Bipartition {
    pub fn new(first: Vec<usize>, second: Vec<usize>) -> Self {
        Bipartition { first, second }
    }

    /// `{0..k} | {k..n}`.
    pub fn split_at(k: usize, n: usize) -> Self {
        Bipartition {
            first: (0..k).collect(),
            second: (k..n).collect(),
        }
    }

    pub fn first(&self) -> &[usize] {
        &self.first
    }

    pub fn second(&self) -> &[usize] {
        &self.second
    }

    pub fn validate(&self, dims: &Dims) -> Result<()> {
        if self.first.is_empty() || self.second.is_empty() {
            return Err(Error::InvalidBipartition("both blocks must be nonempty".into()));
        }
        let mut all: Vec<usize> = self.first.iter().chain(&self.second).copied().collect();
        all.sort_unstable();
        let expected: Vec<usize> = (0..dims.len()).collect();
        if all != expected {
            return Err(Error::InvalidBipartition(format!(
                "blocks {:?} | {:?} do not partition {} subsystems",
                self.first,
                self.second,
                dims.len()
            )));
        }
        Ok(())
    }
}

/// Every term of `I = I_A + I_B + I_{A:B} = I_B + I_{A|B}`, in nats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InformationLedger {
    pub total: f64,
    pub local_first: f64,
    pub local_second: f64,
    pub mutual: f64,
    /// `I_{A|B} = ln d_A - S_{A|B}` with `S_{A|B} = S(rho) - S(rho_B)`.
    pub conditional_first_given_second: f64,
}

impl InformationLedger {
    /// `|I - (I_A + I_B + I_{A:B})|`.
    pub fn local_mutual_gap(&self) -> f64 {
        (self.total - (self.local_first + self.local_second + self.mutual)).abs()
    }

    /// `|I - (I_B + I_{A|B})|`.
    pub fn conditional_gap(&self) -> f64 {
        (self.total - (self.local_second + self.conditional_first_given_second)).abs()
    }
}

pub fn information_ledger(rho: &DensityMatrix, bipartition: &Bipartition) -> Result<InformationLedger> {
    bipartition.validate(rho.dims())?;
    let rho_a = partial_trace(rho, bipartition.first())?;
    let rho_b = partial_trace(rho, bipartition.second())?;
    let s = von_neumann_entropy(rho);
    let s_a = von_neumann_entropy(&rho_a);
    let s_b = von_neumann_entropy(&rho_b);
    let ln_da = (rho_a.dim() as f64).ln();
    Ok(InformationLedger {
        total: information(rho),
        local_first: information(&rho_a),
        local_second: information(&rho_b),
        mutual: s_a + s_b - s,
        conditional_first_given_second: ln_da - (s - s_b),
    })
}

/// `I_{A:B}(rho) = S(rho_A) + S(rho_B) - S(rho)`.
pub fn mutual_information(rho: &DensityMatrix, bipartition: &Bipartition) -> Result<f64> {
    information_ledger(rho, bipartition).map(|l| l.mutual)
}

/// `J(A|rho) = S(Phi_A(rho)) - S(rho)`.
pub fn irreality(obs: &Observable, rho: &DensityMatrix) -> Result<f64> {
    let dephased = DephasingMap::new(obs.clone()).apply(rho)?;
    Ok(von_neumann_entropy(&dephased) - von_neumann_entropy(rho))
}

/// `T(Phi_A(rho), rho) < REALITY_STATE_TOL`.
pub fn is_reality_state(obs: &Observable, rho: &DensityMatrix) -> Result<bool> {
    Ok(dephasing_distance(obs, rho)? < REALITY_STATE_TOL)
}

/// `tau = T(Phi_A(rho), rho)`.
pub fn dephasing_distance(obs: &Observable, rho: &DensityMatrix) -> Result<f64> {
    let dephased = DephasingMap::new(obs.clone()).apply(rho)?;
    trace_distance(&dephased, rho)
}

/// `J(A|rho) = J(A|rho_A) + D_A(rho)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IrrealityBreakdown {
    pub irreality: f64,
    pub local_irreality: f64,
    /// Mutual-information drop `I_{A:B}(rho) - I_{A:B}(Phi_A(rho))`; the
    /// one-way discord without minimisation over bases.
    pub discord_like: f64,
}

impl IrrealityBreakdown {
    pub fn sum_gap(&self) -> f64 {
        (self.irreality - self.local_irreality - self.discord_like).abs()
    }
}

pub fn irreality_decomposition(
    obs: &Observable,
    rho: &DensityMatrix,
    bipartition: &Bipartition,
) -> Result<IrrealityBreakdown> {
    bipartition.validate(rho.dims())?;
    obs.check_against(rho.dims())?;
    let mut first = bipartition.first().to_vec();
    first.sort_unstable();
    let local_target = first.iter().position(|&s| s == obs.target()).ok_or_else(|| {
        Error::InvalidBipartition(format!(
            "observable acts on subsystem {} outside the first block {:?}",
            obs.target(),
            bipartition.first()
        ))
    })?;
    let dephased = DephasingMap::new(obs.clone()).apply(rho)?;
    let rho_a = partial_trace(rho, &first)?;
    let local_obs = obs.clone().on(local_target);
    let before = mutual_information(rho, bipartition)?;
    let after = mutual_information(&dephased, bipartition)?;
    Ok(IrrealityBreakdown {
        irreality: von_neumann_entropy(&dephased) - von_neumann_entropy(rho),
        local_irreality: irreality(&local_obs, &rho_a)?,
        discord_like: before - after,
    })
}

/// `T ln(d - 1) + H(T)`: continuity bound on `|S(rho) - S(sigma)|` at trace
/// distance `T` in dimension `d`.
pub fn fannes_bound(t: f64, d: usize) -> f64 {
    let t = t.clamp(0.0, 1.0);
    let log_term = if d > 1 { ((d - 1) as f64).ln() } else { 0.0 };
    t * log_term + binary_entropy(t)
}

/// `d sqrt(T / e)`, a looser closed-form estimate of [`fannes_bound`].
pub fn simple_upper_estimate(t: f64, d: usize) -> f64 {
    d as f64 * (t.max(0.0) / std::f64::consts::E).sqrt()
}

/// Reality change of `A` under `M^eps_A` with its two-sided bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RealityChangeReport {
    /// `J(A|rho) - J(A|M^eps(rho))`.
    pub delta_r: f64,
    /// `S(M^eps(rho)) - S(rho)`; equal to `delta_r` because `Phi_A M^eps = Phi_A`.
    pub delta_r_entropic: f64,
    /// `eps J(A|rho)`.
    pub lower_bound: f64,
    /// `T(Phi_A(rho), rho)`.
    pub tau: f64,
    /// `eps tau ln(d - 1) + H(eps tau)`.
    pub fannes_bound: f64,
    /// `d sqrt(eps tau / e)`.
    pub simple_estimate: f64,
    pub irreality_before: f64,
}

impl RealityChangeReport {
    pub fn formula_gap(&self) -> f64 {
        (self.delta_r - self.delta_r_entropic).abs()
    }

    /// `delta_r - lower_bound`, nonnegative when the bound holds.
    pub fn lower_slack(&self) -> f64 {
        self.delta_r - self.lower_bound
    }

    /// `fannes_bound - delta_r`, nonnegative when the bound holds.
    pub fn upper_slack(&self) -> f64 {
        self.fannes_bound - self.delta_r
    }
}

pub fn reality_change(obs: &Observable, eps: Intensity, rho: &DensityMatrix) -> Result<RealityChangeReport> {
    let monitored = apply_monitoring(
        &MonitoringMap {
            observable: obs.clone(),
            intensity: eps,
        },
        rho,
    )?;
    let dephaser = DephasingMap::new(obs.clone());
    let dephased = dephaser.apply(rho)?;
    let dephased_after = dephaser.apply(&monitored)?;
    let s = von_neumann_entropy(rho);
    let s_m = von_neumann_entropy(&monitored);
    let before = von_neumann_entropy(&dephased) - s;
    let after = von_neumann_entropy(&dephased_after) - s_m;
    let tau = trace_distance(&dephased, rho)?;
    let t = eps.value() * tau;
    Ok(RealityChangeReport {
        delta_r: before - after,
        delta_r_entropic: s_m - s,
        lower_bound: eps.value() * before,
        tau,
        fannes_bound: fannes_bound(t, rho.dim()),
        simple_estimate: simple_upper_estimate(t, rho.dim()),
        irreality_before: before,
    })
}

/// Irreality of `A'` created by a revealed measurement of an unbiased `A` on a
/// reality state of `A'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneratedIrreality {
    /// `J(A'|C^eps_{a|A} rho)`.
    pub irreality: f64,
    /// `eps tau~ ln(d - 1) + H(eps tau~)` with `tau~ = 1 - 1/d_A`.
    pub bound: f64,
    pub tau_tilde: f64,
    pub simple_estimate: f64,
    /// `J(A'|M^eps_A rho)`, the unrevealed counterpart.
    pub unrevealed_irreality: f64,
}

pub fn generated_irreality(
    obs_a: &Observable,
    obs_aprime: &Observable,
    outcome: usize,
    eps: Intensity,
    rho_reality: &DensityMatrix,
) -> Result<GeneratedIrreality> {
    obs_a.check_against(rho_reality.dims())?;
    obs_aprime.check_against(rho_reality.dims())?;
    if obs_a.target() != obs_aprime.target() {
        return Err(Error::InvalidParameter {
            name: "obs_aprime",
            reason: "both observables must act on the same subsystem".into(),
        });
    }
    let deviation = unbiasedness_defect(obs_a, obs_aprime)?;
    if deviation > UNBIASED_TOL {
        return Err(Error::NotUnbiased { deviation });
    }
    let distance = dephasing_distance(obs_aprime, rho_reality)?;
    if distance >= REALITY_STATE_TOL {
        return Err(Error::NotARealityState { distance });
    }
    let revealed = RevealedMeasurement {
        observable: obs_a.clone(),
        outcome,
        intensity: eps,
    };
    obs_a.check_outcome(outcome)?;
    let post = channels::apply_weak_collapse(&revealed, rho_reality)?;
    let monitored = apply_monitoring(
        &MonitoringMap {
            observable: obs_a.clone(),
            intensity: eps,
        },
        rho_reality,
    )?;
    let tau_tilde = 1.0 - 1.0 / obs_a.dim() as f64;
    let t = eps.value() * tau_tilde;
    Ok(GeneratedIrreality {
        irreality: irreality(obs_aprime, &post)?,
        bound: fannes_bound(t, rho_reality.dim()),
        tau_tilde,
        simple_estimate: simple_upper_estimate(t, rho_reality.dim()),
        unrevealed_irreality: irreality(obs_aprime, &monitored)?,
    })
}

/// `(J(A|rho), J(A|M^eps_O(rho)))`; the second never exceeds the first.
pub fn monotonicity_check(
    obs_a: &Observable,
    obs_o: &Observable,
    eps: Intensity,
    rho: &DensityMatrix,
) -> Result<(f64, f64)> {
    let before = irreality(obs_a, rho)?;
    let monitored = apply_monitoring(
        &MonitoringMap {
            observable: obs_o.clone(),
            intensity: eps,
        },
        rho,
    )?;
    Ok((before, irreality(obs_a, &monitored)?))
}
