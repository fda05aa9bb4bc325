//! Dephasing, projective and weak collapse, and monitoring maps.
//!
//! Maps are descriptors applied to states; they never mutate their input.
//! Composition laws are available both as descriptor arithmetic
//! ([`Intensity::compose`], [`iterate_monitoring`]) and at state level.

use serde::{Deserialize, Serialize};

use crate::dims::Dims;
use crate::error::{Error, Result};
use crate::linalg::{self, local_conjugate, CMatrix};
use crate::observable::Observable;
use crate::state::DensityMatrix;
use crate::tolerance::Tolerances;

/// Measurement intensity `eps` in the closed interval `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Intensity(f64);

impl Intensity {
    pub const ZERO: Intensity = Intensity(0.0);
    pub const ONE: Intensity = Intensity(1.0);

    pub fn new(eps: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&eps) {
            Ok(Intensity(eps))
        } else {
            Err(Error::InvalidIntensity(eps))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Intensity of two maps of the same family applied in sequence:
    /// `eps + delta - eps delta`.
    pub fn compose(self, other: Intensity) -> Intensity {
        let (e, d) = (self.0, other.0);
        Intensity((e + d - e * d).clamp(0.0, 1.0))
    }

    /// Intensity of `n` repetitions: `1 - (1 - eps)^n`.
    pub fn iterate(self, n: u64) -> Intensity {
        Intensity((1.0 - (1.0 - self.0).powf(n as f64)).clamp(0.0, 1.0))
    }

    /// Intensity of `n` repetitions at `eps / n`. Tends to `1 - exp(-eps)`.
    pub fn subdivided(self, n: u64) -> Intensity {
        assert!(n >= 1, "subdivision count must be positive");
        Intensity(self.0 / n as f64).iterate(n)
    }
}

impl TryFrom<f64> for Intensity {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self> {
        Intensity::new(v)
    }
}

impl From<Intensity> for f64 {
    fn from(i: Intensity) -> f64 {
        i.0
    }
}

/// Full projective dephasing in the eigenbasis of an observable.
#[derive(Debug, Clone, PartialEq)]
pub struct DephasingMap {
    pub observable: Observable,
}

impl DephasingMap {
    pub fn new(observable: Observable) -> Self {
        DephasingMap { observable }
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        apply_dephasing(self, rho)
    }
}

/// Weak or projective measurement with a known outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct RevealedMeasurement {
    pub observable: Observable,
    pub outcome: usize,
    pub intensity: Intensity,
}

impl RevealedMeasurement {
    pub fn new(observable: Observable, outcome: usize, intensity: f64) -> Result<Self> {
        observable.check_outcome(outcome)?;
        Ok(RevealedMeasurement {
            observable,
            outcome,
            intensity: Intensity::new(intensity)?,
        })
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        apply_weak_collapse(self, rho)
    }
}

/// Unrevealed measurement of tunable intensity.
#[derive(Debug, Clone, PartialEq)]
pub struct MonitoringMap {
    pub observable: Observable,
    pub intensity: Intensity,
}

impl MonitoringMap {
    pub fn new(observable: Observable, intensity: f64) -> Result<Self> {
        Ok(MonitoringMap {
            observable,
            intensity: Intensity::new(intensity)?,
        })
    }

    pub fn eps(&self) -> f64 {
        self.intensity.value()
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        apply_monitoring(self, rho)
    }

    /// `M^delta` followed by `self`, for the same observable.
    pub fn after(&self, first: &MonitoringMap) -> Result<MonitoringMap> {
        if !self
            .observable
            .same_projectors(&first.observable, Tolerances::DEFAULT.tol_ortho)
        {
            return Err(Error::InvalidParameter {
                name: "observable",
                reason: "monitorings compose into one only for the same observable".into(),
            });
        }
        Ok(MonitoringMap {
            observable: self.observable.clone(),
            intensity: self.intensity.compose(first.intensity),
        })
    }
}

/// Two routes to the same matrix, kept side by side for law checks.
#[derive(Debug, Clone, PartialEq)]
pub struct MapDifference {
    pub lhs: CMatrix,
    pub rhs: CMatrix,
}

impl MapDifference {
    pub fn gap(&self) -> f64 {
        linalg::max_abs_diff(&self.lhs, &self.rhs)
    }
}

fn digit(index: usize, stride: usize, d: usize) -> usize {
    (index / stride) % d
}

/// Keeps entries `(i, j)` whose target digits satisfy `keep`.
fn mask_by_digit(m: &CMatrix, target: usize, dims: &Dims, keep: impl Fn(usize, usize) -> bool) -> CMatrix {
    let d = dims.as_slice()[target];
    let stride = dims.strides()[target];
    let mut out = m.clone();
    for j in 0..m.ncols() {
        let dj = digit(j, stride, d);
        let mut col = out.column_mut(j);
        for i in 0..m.nrows() {
            if !keep(digit(i, stride, d), dj) {
                col[i] = linalg::ZERO;
            }
        }
    }
    out
}

/// Rotates into the observable's eigenbasis, masks, and rotates back.
fn in_eigenbasis(obs: &Observable, dims: &Dims, m: &CMatrix, keep: impl Fn(usize, usize) -> bool) -> CMatrix {
    if obs.is_computational() {
        return mask_by_digit(m, obs.target(), dims, keep);
    }
    let b = obs.basis();
    let rotated = local_conjugate(&b.adjoint(), obs.target(), dims, m);
    let masked = mask_by_digit(&rotated, obs.target(), dims, keep);
    local_conjugate(b, obs.target(), dims, &masked)
}

pub(crate) fn dephase_matrix(obs: &Observable, dims: &Dims, m: &CMatrix) -> CMatrix {
    in_eigenbasis(obs, dims, m, |a, b| a == b)
}

/// `(|a><a| ⊗ 1) m (|a><a| ⊗ 1)`.
pub(crate) fn project_matrix(obs: &Observable, outcome: usize, dims: &Dims, m: &CMatrix) -> CMatrix {
    in_eigenbasis(obs, dims, m, |a, b| a == outcome && b == outcome)
}

/// `Phi_A(rho) = sum_a (A_a ⊗ 1) rho (A_a ⊗ 1)`.
pub fn apply_dephasing(phi: &DephasingMap, rho: &DensityMatrix) -> Result<DensityMatrix> {
    phi.observable.check_against(rho.dims())?;
    let m = dephase_matrix(&phi.observable, rho.dims(), rho.matrix());
    Ok(DensityMatrix::from_raw(m, rho.dims().clone()))
}

/// Outcome probability `p_a = Tr[(A_a ⊗ 1) rho]`.
pub fn outcome_probability(obs: &Observable, outcome: usize, rho: &DensityMatrix) -> Result<f64> {
    obs.check_against(rho.dims())?;
    obs.check_outcome(outcome)?;
    Ok(outcome_probability_unchecked(obs, outcome, rho))
}

fn outcome_probability_unchecked(obs: &Observable, outcome: usize, rho: &DensityMatrix) -> f64 {
    let dims = rho.dims();
    let target = obs.target();
    let d = dims.as_slice()[target];
    let stride = dims.strides()[target];
    let v = obs.basis().column(outcome);
    // Tr[(P ⊗ 1) rho] = sum over rest of <a|rho_rest|a>.
    let outer = rho.dim() / (d * stride);
    let mut p = 0.0;
    for hi in 0..outer {
        for lo in 0..stride {
            let base = hi * d * stride + lo;
            for i in 0..d {
                for j in 0..d {
                    let r = rho.matrix()[(base + i * stride, base + j * stride)];
                    p += (v[i].conj() * r * v[j]).re;
                }
            }
        }
    }
    p
}

/// Projective collapse onto outcome `a`, returning the post-measurement state
/// and the outcome probability.
pub fn apply_collapse(obs: &Observable, outcome: usize, rho: &DensityMatrix) -> Result<(DensityMatrix, f64)> {
    let p = outcome_probability(obs, outcome, rho)?;
    if p <= Tolerances::DEFAULT.tol_trace {
        return Err(Error::ZeroProbabilityOutcome {
            outcome,
            probability: p,
        });
    }
    let m = project_matrix(obs, outcome, rho.dims(), rho.matrix()).unscale(p);
    Ok((DensityMatrix::from_raw(m, rho.dims().clone()), p))
}

/// `C^eps_{a|A}(rho) = (1 - eps) rho + eps C_{a|A}(rho)`.
pub fn apply_weak_collapse(m: &RevealedMeasurement, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let (collapsed, _) = apply_collapse(&m.observable, m.outcome, rho)?;
    let eps = m.intensity.value();
    let out = rho.matrix().scale(1.0 - eps) + collapsed.matrix().scale(eps);
    Ok(DensityMatrix::from_raw(out, rho.dims().clone()))
}

/// Effective intensity of `C^eps` after `C^delta`.
pub fn compose_weak_collapses(eps: Intensity, delta: Intensity) -> Intensity {
    eps.compose(delta)
}

/// `C^eps(rho) - C^delta(rho)` next to `(eps - delta)[C(rho) - rho]`.
pub fn weak_collapse_difference(
    eps: Intensity,
    delta: Intensity,
    obs: &Observable,
    outcome: usize,
    rho: &DensityMatrix,
) -> Result<MapDifference> {
    let at = |i: Intensity| RevealedMeasurement {
        observable: obs.clone(),
        outcome,
        intensity: i,
    };
    let lhs = apply_weak_collapse(&at(eps), rho)?.into_matrix() - apply_weak_collapse(&at(delta), rho)?.into_matrix();
    let (collapsed, _) = apply_collapse(obs, outcome, rho)?;
    let rhs = (collapsed.matrix() - rho.matrix()).scale(eps.value() - delta.value());
    Ok(MapDifference { lhs, rhs })
}

/// `M^eps_A(rho) = (1 - eps) rho + eps Phi_A(rho)`.
pub fn apply_monitoring(m: &MonitoringMap, rho: &DensityMatrix) -> Result<DensityMatrix> {
    m.observable.check_against(rho.dims())?;
    let eps = m.eps();
    let dephased = dephase_matrix(&m.observable, rho.dims(), rho.matrix());
    let out = rho.matrix().scale(1.0 - eps) + dephased.scale(eps);
    Ok(DensityMatrix::from_raw(out, rho.dims().clone()))
}

/// Local Kraus operators `{sqrt(1 - eps) 1, sqrt(eps) A_a}` on the target
/// subsystem. Operators with zero weight are omitted.
pub fn monitoring_kraus(m: &MonitoringMap) -> Vec<CMatrix> {
    let eps = m.eps();
    let d = m.observable.dim();
    let mut ops = Vec::with_capacity(d + 1);
    if eps < 1.0 {
        ops.push(CMatrix::identity(d, d).scale((1.0 - eps).sqrt()));
    }
    if eps > 0.0 {
        for a in 0..d {
            let p = m.observable.projector(a).expect("outcome in range");
            ops.push(p.scale(eps.sqrt()));
        }
    }
    ops
}

/// `sum_k K_k rho K_k^dagger` for operators local to subsystem `target`.
pub fn apply_local_kraus(ops: &[CMatrix], target: usize, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let d = rho.dims().dim(target)?;
    let mut out = CMatrix::zeros(rho.dim(), rho.dim());
    for k in ops {
        if k.nrows() != d || k.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: vec![d, d],
                found: vec![k.nrows(), k.ncols()],
            });
        }
        out += local_conjugate(k, target, rho.dims(), rho.matrix());
    }
    Ok(DensityMatrix::from_raw(out, rho.dims().clone()))
}

/// `sum_k K_k^dagger K_k`.
pub fn kraus_completeness(ops: &[CMatrix]) -> CMatrix {
    let d = ops.first().map_or(0, |k| k.ncols());
    ops.iter().fold(CMatrix::zeros(d, d), |acc, k| acc + k.adjoint() * k)
}

/// Outcome-averaged weak collapse `sum_a p_a C^eps_{a|A}(rho)`.
///
/// Outcomes at or below the collapse threshold contribute their limiting
/// unnormalized term `(1 - eps) p_a rho + eps A_a rho A_a`.
pub fn unrevealed_average(obs: &Observable, eps: Intensity, rho: &DensityMatrix) -> Result<DensityMatrix> {
    obs.check_against(rho.dims())?;
    let mut out = CMatrix::zeros(rho.dim(), rho.dim());
    for a in 0..obs.dim() {
        let p = outcome_probability_unchecked(obs, a, rho);
        if p > Tolerances::DEFAULT.tol_trace {
            let m = RevealedMeasurement {
                observable: obs.clone(),
                outcome: a,
                intensity: eps,
            };
            out += apply_weak_collapse(&m, rho)?.matrix().scale(p);
        } else {
            let projected = project_matrix(obs, a, rho.dims(), rho.matrix());
            out += rho.matrix().scale((1.0 - eps.value()) * p) + projected.scale(eps.value());
        }
    }
    Ok(DensityMatrix::from_raw(out, rho.dims().clone()))
}

/// `[M^eps]^n = M^{1 - (1 - eps)^n}`.
pub fn iterate_monitoring(m: &MonitoringMap, n: u64) -> Result<MonitoringMap> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: "iteration count must be at least 1".into(),
        });
    }
    Ok(MonitoringMap {
        observable: m.observable.clone(),
        intensity: m.intensity.iterate(n),
    })
}

/// Applies `m` to `rho` `n` times in sequence.
pub fn apply_monitoring_n(m: &MonitoringMap, n: u64, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let mut state = rho.clone();
    for _ in 0..n {
        state = apply_monitoring(m, &state)?;
    }
    Ok(state)
}

/// `M^eps(rho) - M^delta(rho)` next to `(eps - delta)[Phi_A(rho) - rho]`.
pub fn monitoring_difference(
    eps: Intensity,
    delta: Intensity,
    obs: &Observable,
    rho: &DensityMatrix,
) -> Result<MapDifference> {
    let at = |i: Intensity| MonitoringMap {
        observable: obs.clone(),
        intensity: i,
    };
    let lhs = apply_monitoring(&at(eps), rho)?.into_matrix() - apply_monitoring(&at(delta), rho)?.into_matrix();
    let dephased = dephase_matrix(obs, rho.dims(), rho.matrix());
    let rhs = (dephased - rho.matrix()).scale(eps.value() - delta.value());
    Ok(MapDifference { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, real, CVector};
    use crate::random::{random_state_with, rng_from_seed, Purity};
    use crate::state::{tensor, PureState};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn qubit() -> Dims {
        Dims::new(vec![2]).unwrap()
    }

    fn plus() -> DensityMatrix {
        let v = CVector::from_vec(vec![real(FRAC_1_SQRT_2), real(FRAC_1_SQRT_2)]);
        PureState::new(v, qubit(), &Tolerances::DEFAULT).unwrap().to_density()
    }

    fn bell() -> DensityMatrix {
        let mut v = CVector::zeros(4);
        v[0] = real(FRAC_1_SQRT_2);
        v[3] = real(FRAC_1_SQRT_2);
        PureState::new(v, Dims::qubits(2), &Tolerances::DEFAULT)
            .unwrap()
            .to_density()
    }

    fn eps(x: f64) -> Intensity {
        Intensity::new(x).unwrap()
    }

    fn sorted_eigs(rho: &DensityMatrix) -> Vec<f64> {
        rho.eigenvalues()
    }

    #[test]
    fn dephasing_examples() {
        let z = DephasingMap::new(Observable::pauli_z(0));
        let out = z.apply(&plus()).unwrap();
        assert!(max_abs_diff(out.matrix(), DensityMatrix::maximally_mixed(qubit()).matrix()) < 1e-15);

        let zero = DensityMatrix::basis_state(qubit(), 0).unwrap();
        assert_eq!(z.apply(&zero).unwrap(), zero);

        let out = z.apply(&bell()).unwrap();
        let mut expected = CMatrix::zeros(4, 4);
        expected[(0, 0)] = real(0.5);
        expected[(3, 3)] = real(0.5);
        assert!(max_abs_diff(out.matrix(), &expected) < 1e-15);
    }

    #[test]
    fn dephasing_rejects_mismatched_observable() {
        let z = DephasingMap::new(Observable::pauli_z(1));
        assert!(matches!(z.apply(&plus()), Err(Error::InvalidSubsystemIndex { .. })));
        let f = DephasingMap::new(crate::observable::fourier_basis(3));
        assert!(matches!(f.apply(&plus()), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn collapse_examples() {
        let z = Observable::pauli_z(0);
        let (out, p) = apply_collapse(&z, 0, &plus()).unwrap();
        assert_abs_diff_eq!(p, 0.5, epsilon = 1e-15);
        assert!(max_abs_diff(out.matrix(), DensityMatrix::basis_state(qubit(), 0).unwrap().matrix()) < 1e-15);

        let (out, p) = apply_collapse(&z, 0, &bell()).unwrap();
        assert_abs_diff_eq!(p, 0.5, epsilon = 1e-15);
        let ket00 = DensityMatrix::basis_state(Dims::qubits(2), 0).unwrap();
        assert!(max_abs_diff(out.matrix(), ket00.matrix()) < 1e-15);

        let zero = DensityMatrix::basis_state(qubit(), 0).unwrap();
        assert!(matches!(
            apply_collapse(&z, 1, &zero),
            Err(Error::ZeroProbabilityOutcome { outcome: 1, .. })
        ));
    }

    #[test]
    fn weak_collapse_examples() {
        let rho = plus();
        let m0 = RevealedMeasurement::new(Observable::pauli_z(0), 0, 0.0).unwrap();
        assert!(max_abs_diff(m0.apply(&rho).unwrap().matrix(), rho.matrix()) < 1e-15);

        let m1 = RevealedMeasurement::new(Observable::pauli_z(0), 0, 1.0).unwrap();
        let zero = DensityMatrix::basis_state(qubit(), 0).unwrap();
        assert!(max_abs_diff(m1.apply(&rho).unwrap().matrix(), zero.matrix()) < 1e-15);

        let half = DensityMatrix::maximally_mixed(qubit());
        let mx = RevealedMeasurement::new(Observable::pauli_x(0), 0, 0.5).unwrap();
        let out = mx.apply(&half).unwrap();
        let expected = half.matrix().scale(0.5) + plus().matrix().scale(0.5);
        assert!(max_abs_diff(out.matrix(), &expected) < 1e-15);
        let e = sorted_eigs(&out);
        assert_abs_diff_eq!(e[0], 0.25, epsilon = 1e-14);
        assert_abs_diff_eq!(e[1], 0.75, epsilon = 1e-14);

        assert!(RevealedMeasurement::new(Observable::pauli_z(0), 2, 0.5).is_err());
        assert!(RevealedMeasurement::new(Observable::pauli_z(0), 0, 1.5).is_err());
    }

    #[test]
    fn weak_collapse_composition() {
        assert_eq!(compose_weak_collapses(eps(0.5), eps(0.5)).value(), 0.75);
        assert_eq!(compose_weak_collapses(eps(0.3), Intensity::ZERO).value(), 0.3);

        let obs = Observable::pauli_z(0);
        let rho = plus();
        let step = RevealedMeasurement::new(obs.clone(), 0, 0.3).unwrap();
        let mut state = rho.clone();
        for _ in 0..20 {
            state = step.apply(&state).unwrap();
        }
        let total = eps(0.3).iterate(20).value();
        assert_abs_diff_eq!(total, 1.0 - 0.7f64.powi(20), epsilon = 1e-15);
        assert_abs_diff_eq!(total, 0.999_202, epsilon = 1e-6);
        let (collapsed, _) = apply_collapse(&obs, 0, &rho).unwrap();
        assert!(max_abs_diff(state.matrix(), collapsed.matrix()) < 1e-3);
    }

    #[test]
    fn weak_collapse_difference_examples() {
        let obs = Observable::pauli_z(0);
        let rho = plus();
        let same = weak_collapse_difference(eps(0.4), eps(0.4), &obs, 0, &rho).unwrap();
        assert!(crate::linalg::max_abs(&same.lhs) < 1e-15);

        let ends = weak_collapse_difference(Intensity::ONE, Intensity::ZERO, &obs, 0, &rho).unwrap();
        assert!(ends.gap() < 1e-15);

        let d = weak_collapse_difference(eps(0.7), eps(0.2), &obs, 0, &rho).unwrap();
        let zero = DensityMatrix::basis_state(qubit(), 0).unwrap();
        let expected = (zero.matrix() - rho.matrix()).scale(0.5);
        assert!(max_abs_diff(&d.lhs, &expected) < 1e-15);
        assert!(d.gap() < 1e-15);
    }

    #[test]
    fn monitoring_examples() {
        let z = Observable::pauli_z(0);
        let full = MonitoringMap::new(z.clone(), 1.0).unwrap();
        assert!(
            max_abs_diff(
                full.apply(&plus()).unwrap().matrix(),
                DensityMatrix::maximally_mixed(qubit()).matrix()
            ) < 1e-15
        );

        let half = MonitoringMap::new(z.clone(), 0.5).unwrap();
        let e = sorted_eigs(&half.apply(&plus()).unwrap());
        assert_abs_diff_eq!(e[0], 0.25, epsilon = 1e-14);
        assert_abs_diff_eq!(e[1], 0.75, epsilon = 1e-14);

        let real_state = DensityMatrix::diagonal(qubit(), &[0.3, 0.7], &Tolerances::DEFAULT).unwrap();
        for x in [0.0, 0.2, 0.9, 1.0] {
            let m = MonitoringMap::new(z.clone(), x).unwrap();
            assert!(max_abs_diff(m.apply(&real_state).unwrap().matrix(), real_state.matrix()) < 1e-15);
        }
    }

    #[test]
    fn kraus_examples() {
        let z = Observable::pauli_z(0);
        let k0 = monitoring_kraus(&MonitoringMap::new(z.clone(), 0.0).unwrap());
        assert_eq!(k0, vec![CMatrix::identity(2, 2)]);

        let k1 = monitoring_kraus(&MonitoringMap::new(z.clone(), 1.0).unwrap());
        assert_eq!(k1.len(), 2);
        assert_eq!(k1[0], z.projector(0).unwrap());
        assert_eq!(k1[1], z.projector(1).unwrap());

        let m = MonitoringMap::new(z, 0.5).unwrap();
        let k = monitoring_kraus(&m);
        assert!(max_abs_diff(&kraus_completeness(&k), &CMatrix::identity(2, 2)) < 1e-14);
        let via_kraus = apply_local_kraus(&k, 0, &plus()).unwrap();
        assert!(max_abs_diff(via_kraus.matrix(), m.apply(&plus()).unwrap().matrix()) < 1e-15);
    }

    #[test]
    fn unrevealed_average_examples() {
        let z = Observable::pauli_z(0);
        let rho = plus();
        let avg = unrevealed_average(&z, Intensity::ONE, &rho).unwrap();
        assert!(max_abs_diff(avg.matrix(), DensityMatrix::maximally_mixed(qubit()).matrix()) < 1e-15);
        let avg = unrevealed_average(&z, Intensity::ZERO, &rho).unwrap();
        assert!(max_abs_diff(avg.matrix(), rho.matrix()) < 1e-15);

        // Zero-probability outcome takes the limiting branch.
        let zero = DensityMatrix::basis_state(qubit(), 0).unwrap();
        let avg = unrevealed_average(&z, eps(0.4), &zero).unwrap();
        assert!(max_abs_diff(avg.matrix(), zero.matrix()) < 1e-15);
    }

    #[test]
    fn unrevealed_average_matches_monitoring_on_random_pairs() {
        let dims = Dims::qubits(2);
        let mut rng = rng_from_seed(17);
        let mut worst = 0.0f64;
        for k in 0..200 {
            let rho = random_state_with(&mut rng, &dims, Purity::Mixed(4)).unwrap();
            let obs = crate::random::random_observable(&mut rng, k % 2, 2);
            let e = eps(rand::Rng::random::<f64>(&mut rng));
            let avg = unrevealed_average(&obs, e, &rho).unwrap();
            let mon = apply_monitoring(
                &MonitoringMap {
                    observable: obs,
                    intensity: e,
                },
                &rho,
            )
            .unwrap();
            worst = worst.max(max_abs_diff(avg.matrix(), mon.matrix()));
        }
        assert!(worst < 1e-12, "worst gap {worst:e}");
    }

    #[test]
    fn iteration_examples() {
        let z = Observable::pauli_z(0);
        let m = MonitoringMap::new(z.clone(), 0.3).unwrap();
        assert_abs_diff_eq!(iterate_monitoring(&m, 2).unwrap().eps(), 0.51, epsilon = 1e-15);
        assert!(iterate_monitoring(&m, 0).is_err());

        let half = MonitoringMap::new(z.clone(), 0.5).unwrap();
        let fifty = iterate_monitoring(&half, 50).unwrap();
        assert_abs_diff_eq!(fifty.eps(), 1.0, epsilon = 1e-15);
        let rho = plus();
        let sequential = apply_monitoring_n(&half, 50, &rho).unwrap();
        let dephased = apply_dephasing(&DephasingMap::new(z.clone()), &rho).unwrap();
        assert!(max_abs_diff(sequential.matrix(), dephased.matrix()) < 1e-12);

        assert_abs_diff_eq!(
            Intensity::ONE.subdivided(10_000).value(),
            1.0 - (-1.0f64).exp(),
            epsilon = 1e-4
        );
        assert_abs_diff_eq!(
            Intensity::ONE.subdivided(1_000_000).value(),
            0.632_120_558_828_557_7,
            epsilon = 1e-6
        );
    }

    #[test]
    fn composition_of_monitorings() {
        let z = Observable::pauli_z(0);
        let a = MonitoringMap::new(z.clone(), 0.3).unwrap();
        let b = MonitoringMap::new(z.clone(), 0.6).unwrap();
        let ab = a.after(&b).unwrap();
        assert_abs_diff_eq!(ab.eps(), 0.3 + 0.6 - 0.18, epsilon = 1e-15);
        let rho = plus();
        let seq = a.apply(&b.apply(&rho).unwrap()).unwrap();
        assert!(max_abs_diff(seq.matrix(), ab.apply(&rho).unwrap().matrix()) < 1e-15);
        assert!(a
            .after(&MonitoringMap::new(Observable::pauli_x(0), 0.2).unwrap())
            .is_err());
    }

    #[test]
    fn monitoring_difference_examples() {
        let z = Observable::pauli_z(0);
        let rho = plus();
        let same = monitoring_difference(eps(0.3), eps(0.3), &z, &rho).unwrap();
        assert!(crate::linalg::max_abs(&same.lhs) < 1e-15);

        let half = DensityMatrix::maximally_mixed(qubit());
        let dephased = apply_dephasing(&DephasingMap::new(z.clone()), &rho).unwrap();
        let tau = crate::state::trace_distance(&dephased, &rho).unwrap();
        assert_abs_diff_eq!(tau, 0.5, epsilon = 1e-14);
        for k in 1..=9 {
            let e = k as f64 / 10.0;
            let m = MonitoringMap::new(z.clone(), e).unwrap();
            let t = crate::state::trace_distance(&m.apply(&rho).unwrap(), &rho).unwrap();
            assert_abs_diff_eq!(t, 0.5 * e, epsilon = 1e-14);
        }

        let d = monitoring_difference(eps(0.8), eps(0.1), &z, &half).unwrap();
        assert!(crate::linalg::max_abs(&d.lhs) < 1e-15);
        assert!(d.gap() < 1e-15);
    }

    #[test]
    fn collapse_algebra() {
        let z = Observable::pauli_z(0);
        let x = Observable::pauli_x(0);
        let rho = tensor(&plus(), &DensityMatrix::maximally_mixed(qubit())).unwrap();
        let (c0, _) = apply_collapse(&z, 0, &rho).unwrap();
        // A second collapse on a different outcome of the same observable has no weight.
        assert!(outcome_probability(&z, 1, &c0).unwrap().abs() < 1e-15);
        // Repeatability.
        let (again, p) = apply_collapse(&z, 0, &c0).unwrap();
        assert_abs_diff_eq!(p, 1.0, epsilon = 1e-14);
        assert!(max_abs_diff(again.matrix(), c0.matrix()) < 1e-14);
        // A later collapse of another observable overrides the first.
        let (cx, _) = apply_collapse(&x, 1, &c0).unwrap();
        let unbiased = DensityMatrix::maximally_mixed(Dims::qubits(2));
        let (direct, _) = apply_collapse(&x, 1, &unbiased).unwrap();
        assert!(max_abs_diff(cx.matrix(), direct.matrix()) < 1e-14);
    }
}
