use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::dims::Dims;
use crate::error::{Error, Result};
use crate::linalg::{real, CVector};
use crate::observable::Observable;
use crate::quantifiers::irreality;
use crate::state::{binary_entropy, partial_trace, von_neumann_entropy, DensityMatrix, PureState};
use crate::tolerance::Tolerances;

use super::{Assertion, ScenarioResult};

/// Overlaps at or above `1 - DEGENERATE_OVERLAP` leave the two packets
/// indistinguishable.
pub const DEGENERATE_OVERLAP: f64 = 1e-12;

/// Elastic collision of a particle of mass `m` on a molecule of mass `M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringParams {
    /// `xi = m / M`.
    pub xi: f64,
    /// `v_0 / Delta v`.
    pub velocity_ratio: f64,
}

impl ScatteringParams {
    pub fn new(xi: f64, velocity_ratio: f64) -> Result<Self> {
        for (name, v) in [("xi", xi), ("velocity_ratio", velocity_ratio)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be finite and strictly positive, got {v}"),
                });
            }
        }
        Ok(ScatteringParams { xi, velocity_ratio })
    }

    /// `alpha = 2 / (1 + xi)`.
    pub fn alpha(&self) -> f64 {
        2.0 / (1.0 + self.xi)
    }
}

/// `(O_part, O_mol)`: overlaps between the scattered and unscattered packets
/// of particle and molecule.
pub fn scattering_overlaps(p: &ScatteringParams) -> (f64, f64) {
    let r = p.velocity_ratio / (1.0 + p.xi);
    let o_part = (-0.5 * r * r).exp();
    let o_mol = (-0.5 * (r * p.xi).powi(2)).exp();
    (o_part, o_mol)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringOutcome {
    /// Joint particle ⊗ molecule state in the per-subsystem packet frames.
    pub state: DensityMatrix,
    pub overlaps: (f64, f64),
    /// `S(rho_part)`.
    pub entanglement: f64,
    /// `J(label|rho_part)` for the particle packet-label observable.
    pub local_irreality: f64,
}

/// Packets `|u_1>, |u_2>` with `<u_1|u_2> = o`, written in the symmetric
/// orthonormal frame obtained from the square root of their Gram matrix.
fn frame_vectors(o: f64) -> [[f64; 2]; 2] {
    let (plus, minus) = ((1.0 + o).sqrt(), (1.0 - o).sqrt());
    let c = 0.5 * (plus + minus);
    let s = 0.5 * (plus - minus);
    [[c, s], [s, c]]
}

/// Normalised `|p_0>|0> + |(1 - alpha) p_0>|alpha p_0>`, its particle
/// entanglement and the irreality of the particle's packet label.
pub fn scattering_state(p: &ScatteringParams) -> Result<ScatteringOutcome> {
    let (o_part, o_mol) = scattering_overlaps(p);
    for overlap in [o_part, o_mol] {
        if overlap >= 1.0 - DEGENERATE_OVERLAP {
            return Err(Error::DegenerateGram { overlap });
        }
    }
    let [u1, u2] = frame_vectors(o_part);
    let [w1, w2] = frame_vectors(o_mol);
    let amplitudes: Vec<_> = (0..4)
        .map(|k| {
            let (i, j) = (k / 2, k % 2);
            real(u1[i] * w1[j] + u2[i] * w2[j])
        })
        .collect();
    let joint = PureState::normalized(CVector::from_vec(amplitudes), Dims::qubits(2))?;
    let state = joint.to_density();
    let particle = partial_trace(&state, &[0])?;
    let label = Observable::computational(0, 2);
    Ok(ScatteringOutcome {
        entanglement: von_neumann_entropy(&particle),
        local_irreality: irreality(&label, &particle)?,
        state,
        overlaps: (o_part, o_mol),
    })
}

/// Entanglement of a two-branch state `(|a_1 b_1> + |a_2 b_2>)/N` from the
/// branch overlaps alone.
fn two_branch_entanglement(o_part: f64, o_mol: f64) -> f64 {
    let norm2 = 2.0 + 2.0 * o_part * o_mol;
    let det = (1.0 - o_part * o_part) * (1.0 - o_mol * o_mol) / (norm2 * norm2);
    let lambda = 0.5 * (1.0 - (1.0 - 4.0 * det).max(0.0).sqrt());
    binary_entropy(lambda)
}

pub fn scattering_scenario(p: &ScatteringParams, tol: &Tolerances) -> Result<ScenarioResult> {
    let outcome = scattering_state(p)?;
    let (o_part, o_mol) = outcome.overlaps;
    let closed_form = two_branch_entanglement(o_part, o_mol);

    let mut out = ScenarioResult::new("scattering", tol);
    out.record("xi", p.xi);
    out.record("velocity_ratio", p.velocity_ratio);
    out.record("alpha", p.alpha());
    out.record("overlap_particle", o_part);
    out.record("overlap_molecule", o_mol);
    out.record("entanglement", outcome.entanglement);
    out.record("local_irreality", outcome.local_irreality);

    let t = tol.tol_identity;
    out.assert(Assertion::identity(
        "joint_pure",
        "S(rho_part,mol) = 0",
        von_neumann_entropy(&outcome.state),
        0.0,
        t,
    ));
    out.assert(Assertion::identity(
        "entanglement_closed_form",
        "E = H((1 - sqrt(1 - 4 det rho_part)) / 2)",
        outcome.entanglement,
        closed_form,
        t,
    ));
    out.assert(Assertion::identity(
        "label_balance",
        "E + J(label|rho_part) = ln 2",
        outcome.entanglement + outcome.local_irreality,
        LN_2,
        t,
    ));
    Ok(out)
}
