use std::f64::consts::LN_2;

use crate::channels::Intensity;
use crate::dims::Dims;
use crate::error::Result;
use crate::observable::Observable;
use crate::quantifiers::generated_irreality;
use crate::state::{binary_entropy, DensityMatrix};
use crate::tolerance::Tolerances;

use super::{Assertion, ScenarioResult};

/// Revealed weak collapse of `sigma_z` on the maximally mixed qubit, which is
/// a reality state of the unbiased `sigma_x`.
pub fn irreality_generation(eps: Intensity, outcome: usize, tol: &Tolerances) -> Result<ScenarioResult> {
    let rho = DensityMatrix::maximally_mixed(Dims::new(vec![2])?);
    let g = generated_irreality(&Observable::pauli_z(0), &Observable::pauli_x(0), outcome, eps, &rho)?;
    let closed_form = LN_2 - binary_entropy(eps.value() / 2.0);

    let mut out = ScenarioResult::new("irreality_generation", tol);
    out.record("epsilon", eps.value());
    out.record("generated_irreality", g.irreality);
    out.record("bound", g.bound);
    out.record("simple_estimate", g.simple_estimate);
    out.record("unrevealed_irreality", g.unrevealed_irreality);

    out.assert(Assertion::identity(
        "generated_closed_form",
        "J(X|C^eps_a|Z 1/2) = ln 2 - H(eps/2)",
        g.irreality,
        closed_form,
        tol.tol_identity,
    ));
    out.assert(Assertion::at_most(
        "generated_bound",
        "J(X|C^eps_a|Z 1/2) <= eps tau~ ln(d-1) + H(eps tau~)",
        g.irreality,
        g.bound,
        tol.tol_ineq_slack,
    ));
    out.assert(Assertion::identity(
        "unrevealed_zero",
        "J(X|M^eps_Z 1/2) = 0",
        g.unrevealed_irreality,
        0.0,
        tol.tol_identity,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_intensity_example() {
        let r = irreality_generation(Intensity::new(0.5).unwrap(), 0, &Tolerances::DEFAULT).unwrap();
        assert!(r.all_passed(), "{:#?}", r.assertions);
        assert!((r.value("generated_irreality").unwrap() - 0.130_812).abs() < 1e-6);
        assert!((r.value("bound").unwrap() - 0.562_335_144_618_808_4).abs() < 1e-12);
    }
}
