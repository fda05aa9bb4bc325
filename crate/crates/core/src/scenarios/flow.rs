use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

use crate::dims::Dims;
use crate::error::Result;
use crate::linalg::{max_abs_diff, real, CMatrix, CVector, ONE};
use crate::quantifiers::{information_ledger, Bipartition};
use crate::state::{partial_trace, von_neumann_entropy, DensityMatrix, PureState};
use crate::tolerance::Tolerances;

use super::{Assertion, ScenarioResult};

/// `|0>_A |+>_B` is carried by a CNOT (control `B`, target `A`) into the Bell
/// state `(|00> + |11>)/sqrt 2`. The total information `2 ln 2` is conserved
/// while its local share moves entirely into mutual information.
pub fn two_qubit_information_flow(tol: &Tolerances) -> Result<ScenarioResult> {
    let dims = Dims::qubits(2);
    let h = real(FRAC_1_SQRT_2);
    let initial = PureState::new(CVector::from_vec(vec![h, h, real(0.0), real(0.0)]), dims.clone(), tol)?;
    let bell = PureState::new(CVector::from_vec(vec![h, real(0.0), real(0.0), h]), dims.clone(), tol)?;

    let mut cnot = CMatrix::zeros(4, 4);
    for a in 0..2 {
        for b in 0..2 {
            cnot[(((a ^ b) << 1) | b, (a << 1) | b)] = ONE;
        }
    }
    let evolved = DensityMatrix::from_raw(&cnot * initial.to_density().matrix() * cnot.adjoint(), dims.clone());
    let target = bell.to_density();

    let cut = Bipartition::split_at(1, 2);
    let before = information_ledger(&initial.to_density(), &cut)?;
    let after = information_ledger(&evolved, &cut)?;
    let entanglement = von_neumann_entropy(&partial_trace(&evolved, &[0])?);

    let mut out = ScenarioResult::new("two_qubit_information_flow", tol);
    out.record("total_information_initial", before.total);
    out.record("total_information_final", after.total);
    out.record("local_information_initial", before.local_first + before.local_second);
    out.record("local_information_final", after.local_first + after.local_second);
    out.record("mutual_information_initial", before.mutual);
    out.record("mutual_information_final", after.mutual);
    out.record("entanglement_final", entanglement);
    out.record("bell_state_gap", max_abs_diff(evolved.matrix(), target.matrix()));

    let ln4 = 2.0 * LN_2;
    let t = tol.tol_identity;
    out.assert(Assertion::identity(
        "total_information_initial",
        "I(psi_0) = 2 ln 2",
        before.total,
        ln4,
        t,
    ));
    out.assert(Assertion::identity(
        "total_information_final",
        "I(psi_t) = 2 ln 2",
        after.total,
        ln4,
        t,
    ));
    out.assert(Assertion::identity(
        "mutual_information_initial",
        "I_A:B(psi_0) = 0",
        before.mutual,
        0.0,
        t,
    ));
    out.assert(Assertion::identity(
        "mutual_information_final",
        "I_A:B(psi_t) = 2 ln 2",
        after.mutual,
        ln4,
        t,
    ));
    out.assert(Assertion::identity(
        "local_information_final",
        "I_A(psi_t) + I_B(psi_t) = 0",
        after.local_first + after.local_second,
        0.0,
        t,
    ));
    out.assert(Assertion::identity(
        "entanglement_final",
        "S(rho_A(t)) = ln 2",
        entanglement,
        LN_2,
        t,
    ));
    Ok(out)
}
