//! Spin measured by a periodic array of `N` detectors. The spin shifts the
//! particle position by `±n` sites and the detector at the particle's site is
//! left excited, giving a pure state on spin ⊗ position ⊗ apparatus with
//! dimensions `[2, N, N]`. Spin index 0 is `|+>`, the `+1` eigenstate of
//! `sigma_z`. Apparatus index `k` is the one-excitation state `|1_k>`.

use std::collections::BTreeSet;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::channels::{apply_dephasing, DephasingMap};
use crate::dims::Dims;
use crate::error::{Error, Result};
use crate::linalg::{max_abs, real, CMatrix, CVector, C64};
use crate::observable::Observable;
use crate::quantifiers::{information_ledger, irreality, Bipartition};
use crate::state::{shannon_entropy, von_neumann_entropy, DensityMatrix, PureState};
use crate::tolerance::Tolerances;

use super::{Assertion, ScenarioResult};

/// Largest probability mass a truncated packet may drop.
pub const PACKET_TAIL_THRESHOLD: f64 = 1e-12;

const SPIN: usize = 0;
const POSITION: usize = 1;
const APPARATUS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorArraySpec {
    pub n_sites: usize,
    /// Standard deviation of `|psi|^2` in grid units; 0 gives a point packet.
    pub packet_width_sites: f64,
    pub shift_sites: usize,
    pub alpha: C64,
    pub beta: C64,
}

impl Default for DetectorArraySpec {
    fn default() -> Self {
        DetectorArraySpec {
            n_sites: 32,
            packet_width_sites: 2.0,
            shift_sites: 8,
            alpha: real(FRAC_1_SQRT_2),
            beta: real(FRAC_1_SQRT_2),
        }
    }
}

impl DetectorArraySpec {
    pub fn validate(&self, tol: &Tolerances) -> Result<()> {
        if self.n_sites < 4 {
            return Err(invalid(
                "n_sites",
                format!("need at least 4 sites, got {}", self.n_sites),
            ));
        }
        if !(self.packet_width_sites.is_finite() && self.packet_width_sites >= 0.0) {
            return Err(invalid(
                "packet_width_sites",
                format!("must be finite and nonnegative, got {}", self.packet_width_sites),
            ));
        }
        if self.shift_sites == 0 || self.shift_sites >= self.n_sites {
            return Err(invalid(
                "shift_sites",
                format!("must lie in 1..{}, got {}", self.n_sites, self.shift_sites),
            ));
        }
        let deviation = (self.alpha.norm_sqr() + self.beta.norm_sqr() - 1.0).abs();
        if deviation > tol.tol_norm {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(())
    }

    pub fn dims(&self) -> Result<Dims> {
        Dims::new(vec![2, self.n_sites, self.n_sites])
    }

    /// Sites reached by the `+n` and `-n` branches.
    fn branch_sites(&self, profile: &PacketProfile) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let w = profile.half_width as i64;
        let sites = |shift: i64| (-w..=w).map(|j| wrap(j + shift, self.n_sites)).collect();
        (sites(self.shift_sites as i64), sites(-(self.shift_sites as i64)))
    }
}

fn invalid(name: &'static str, reason: String) -> Error {
    Error::InvalidParameter { name, reason }
}

fn wrap(site: i64, n: usize) -> usize {
    site.rem_euclid(n as i64) as usize
}

/// Discrete Gaussian `|psi|^2` on offsets `-W..=W`, with `W` the smallest
/// half-width whose dropped tail is below [`PACKET_TAIL_THRESHOLD`].
#[derive(Debug, Clone, PartialEq)]
pub struct PacketProfile {
    pub weights: Vec<f64>,
    pub half_width: usize,
    /// Mass of the untruncated packet outside `-W..=W`.
    pub tail_mass: f64,
}

impl PacketProfile {
    /// Weight at a periodic offset from the packet centre.
    pub fn weight_at(&self, offset: i64, n_sites: usize) -> f64 {
        let d = wrap(offset, n_sites);
        let w = self.half_width;
        if d <= w {
            self.weights[w + d]
        } else if n_sites - d <= w {
            self.weights[w - (n_sites - d)]
        } else {
            0.0
        }
    }
}

pub fn packet_profile(sigma: f64, n_sites: usize) -> Result<PacketProfile> {
    if sigma == 0.0 {
        return Ok(PacketProfile {
            weights: vec![1.0],
            half_width: 0,
            tail_mass: 0.0,
        });
    }
    let reach = (40.0 * sigma).ceil() as usize + 1;
    let terms: Vec<f64> = (0..=reach)
        .map(|j| (-((j * j) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    // tails[w] = sum_{j > w} terms[j], accumulated from the small end.
    let mut tails = vec![0.0; reach + 1];
    for w in (0..reach).rev() {
        tails[w] = tails[w + 1] + terms[w + 1];
    }
    let total = terms[0] + 2.0 * tails[0];
    let tail = |w: usize| 2.0 * tails[w] / total;

    let half_width = (0..=reach).find(|&w| tail(w) < PACKET_TAIL_THRESHOLD).unwrap_or(reach);
    let support = 2 * half_width + 1;
    if support > n_sites {
        return Err(Error::PacketTooWide {
            tail_mass: tail((n_sites - 1) / 2),
            support,
            sites: n_sites,
        });
    }
    let kept = total - 2.0 * tails[half_width];
    let weights = (0..support).map(|i| terms[i.abs_diff(half_width)] / kept).collect();
    Ok(PacketProfile {
        weights,
        half_width,
        tail_mass: tail(half_width),
    })
}

/// `sum_k psi(z_k) (alpha |+>|z_{k+n}>|1_{k+n}> + beta |->|z_{k-n}>|1_{k-n}>)`
/// with the packet centred on site 0.
pub fn detector_array_state(spec: &DetectorArraySpec, tol: &Tolerances) -> Result<PureState> {
    Ok(build(spec, tol)?.0)
}

fn build(spec: &DetectorArraySpec, tol: &Tolerances) -> Result<(PureState, PacketProfile)> {
    spec.validate(tol)?;
    let dims = spec.dims()?;
    let profile = packet_profile(spec.packet_width_sites, spec.n_sites)?;
    let n = spec.n_sites;
    let shift = spec.shift_sites as i64;
    let w = profile.half_width as i64;
    let mut amplitudes = CVector::zeros(dims.total());
    for (j, weight) in (-w..=w).zip(&profile.weights) {
        let psi = weight.sqrt();
        for (spin, coeff, site) in [(0, spec.alpha, wrap(j + shift, n)), (1, spec.beta, wrap(j - shift, n))] {
            amplitudes[spin * n * n + site * n + site] += coeff * psi;
        }
    }
    Ok((PureState::new(amplitudes, dims, tol)?, profile))
}

/// The detector-site observable `Lambda = sum_i i |1_i><1_i|`.
fn site_observable(target: usize, n: usize) -> Observable {
    Observable::computational(target, n)
}

/// Traces out spin and position and checks that the apparatus is diagonal in
/// the detector-site basis with the expected weights.
pub fn apparatus_reality_check(spec: &DetectorArraySpec, tol: &Tolerances) -> Result<ScenarioResult> {
    let (psi, profile) = build(spec, tol)?;
    let n = spec.n_sites;
    let rho_a = psi.reduced(&[APPARATUS])?;
    rho_a.check(tol)?;

    let m = rho_a.matrix();
    let off_diagonal = max_abs(&CMatrix::from_fn(
        n,
        n,
        |i, j| if i == j { real(0.0) } else { m[(i, j)] },
    ));
    let lambda_irreality = irreality(&site_observable(0, n), &rho_a)?;
    let (a2, b2) = (spec.alpha.norm_sqr(), spec.beta.norm_sqr());
    let shift = spec.shift_sites as i64;
    let weight_gap = (0..n)
        .map(|j| {
            let expected = a2 * profile.weight_at(j as i64 - shift, n) + b2 * profile.weight_at(j as i64 + shift, n);
            (m[(j, j)].re - expected).abs()
        })
        .fold(0.0, f64::max);
    let (plus, minus) = spec.branch_sites(&profile);

    let mut out = ScenarioResult::new("apparatus_reality_check", tol);
    out.record("n_sites", n as f64);
    out.record("packet_half_width", profile.half_width as f64);
    out.record("packet_tail_mass", profile.tail_mass);
    out.record("branches_disjoint", f64::from(u8::from(plus.is_disjoint(&minus))));
    out.record("state_norm", psi.vector().norm());
    out.record("apparatus_max_off_diagonal", off_diagonal);
    out.record("apparatus_irreality", lambda_irreality);
    out.record("apparatus_weight_gap", weight_gap);

    let t = tol.tol_identity;
    out.assert(Assertion::identity(
        "apparatus_diagonal",
        "<1_i|rho_A|1_j> = 0 for i != j",
        off_diagonal,
        0.0,
        t,
    ));
    out.assert(Assertion::identity(
        "apparatus_weights",
        "<1_j|rho_A|1_j> = |alpha|^2 |psi(z_{j-n})|^2 + |beta|^2 |psi(z_{j+n})|^2",
        weight_gap,
        0.0,
        t,
    ));
    out.assert(Assertion::identity(
        "lambda_real",
        "J(Lambda|rho_A) = 0",
        lambda_irreality,
        0.0,
        t,
    ));
    Ok(out)
}

/// Entropy bookkeeping for the internal observer, who reads the detector
/// array, against the external one, who only knows that it was read.
pub fn measurement_entropy_bookkeeping(spec: &DetectorArraySpec, tol: &Tolerances) -> Result<ScenarioResult> {
    let (psi, profile) = build(spec, tol)?;
    let n = spec.n_sites;
    let d_s = 2 * n;
    let sigma = psi.to_density();
    let lambda = site_observable(APPARATUS, n);
    let dephased = apply_dephasing(&DephasingMap::new(lambda), &sigma)?;

    let rho_a = psi.reduced(&[APPARATUS])?;
    let p: Vec<f64> = (0..n).map(|a| rho_a.matrix()[(a, a)].re.max(0.0)).collect();
    let h = shannon_entropy(&p)?;

    let s_dims = Dims::new(vec![2, n])?;
    let mut s_bar_conditional = 0.0;
    for (a, &pa) in p.iter().enumerate() {
        if pa == 0.0 {
            continue;
        }
        let v = CVector::from_fn(d_s, |k, _| psi.vector()[k * n + a] / real(pa.sqrt()));
        let conditional = DensityMatrix::from_raw(&v * v.adjoint(), s_dims.clone());
        s_bar_conditional += pa * von_neumann_entropy(&conditional);
    }

    let s_initial = von_neumann_entropy(&sigma);
    let s_dephased = von_neumann_entropy(&dephased);
    let ledger = information_ledger(&dephased, &Bipartition::new(vec![SPIN, POSITION], vec![APPARATUS]))?;
    let i_conditional = ledger.conditional_first_given_second;
    let i_bar = (d_s as f64).ln() - s_bar_conditional;
    let delta_s = s_dephased - s_initial;
    // The collapsed apparatus states are pure, so the internal observer's
    // final ignorance is the conditional term alone.
    let delta_s_bar = s_bar_conditional - s_initial;

    let (plus, minus) = spec.branch_sites(&profile);
    let mut out = ScenarioResult::new("measurement_entropy_bookkeeping", tol);
    out.record("n_sites", n as f64);
    out.record("packet_half_width", profile.half_width as f64);
    out.record("branches_disjoint", f64::from(u8::from(plus.is_disjoint(&minus))));
    out.record("outcome_entropy", h);
    out.record("entropy_initial", s_initial);
    out.record("entropy_dephased", s_dephased);
    out.record("mean_conditional_entropy", s_bar_conditional);
    out.record("conditional_information", i_conditional);
    out.record("mean_conditional_information", i_bar);
    out.record("delta_s", delta_s);
    out.record("delta_s_bar", delta_s_bar);

    let t = tol.tol_identity;
    out.assert(Assertion::identity(
        "joint_entropy_theorem",
        "S(Phi_Lambda(sigma_AS)) = H(p) + sum_a p_a S(sigma_S|a)",
        s_dephased,
        h + s_bar_conditional,
        t,
    ));
    out.assert(Assertion::identity(
        "average_information",
        "I-bar_S|A = I_S|A(Phi_Lambda(sigma_AS))",
        i_bar,
        i_conditional,
        t,
    ));
    out.assert(Assertion::identity(
        "entropy_split",
        "Delta S = H(p) + Delta S-bar",
        delta_s,
        h + delta_s_bar,
        t,
    ));
    out.assert(Assertion::at_least(
        "external_entropy_gain",
        "Delta S >= 0",
        delta_s,
        0.0,
        tol.tol_ineq_slack,
    ));
    out.assert(Assertion::at_most(
        "internal_entropy_loss",
        "Delta S-bar <= 0",
        delta_s_bar,
        0.0,
        tol.tol_ineq_slack,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn disjoint() -> DetectorArraySpec {
        DetectorArraySpec {
            n_sites: 32,
            packet_width_sites: 1.0,
            shift_sites: 8,
            ..DetectorArraySpec::default()
        }
    }

    #[test]
    fn profile_truncation() {
        let p = packet_profile(2.0, 32).unwrap();
        assert_eq!(p.weights.len(), 2 * p.half_width + 1);
        assert!(p.tail_mass < PACKET_TAIL_THRESHOLD);
        assert!((p.weights.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        let narrower = packet_profile(2.0, 32).map(|p| p.half_width - 1).unwrap();
        let reach = (-((narrower + 1) as f64).powi(2) / 8.0).exp();
        assert!(reach > 1e-13);
        assert!(matches!(packet_profile(4.0, 32), Err(Error::PacketTooWide { .. })));
        assert_eq!(packet_profile(0.0, 4).unwrap().weights, vec![1.0]);
    }

    #[test]
    fn default_state_is_normalised() {
        let psi = detector_array_state(&DetectorArraySpec::default(), &Tolerances::DEFAULT).unwrap();
        assert_eq!(psi.dims().as_slice(), &[2, 32, 32]);
        assert!((psi.vector().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_branch_support() {
        let spec = DetectorArraySpec {
            alpha: real(1.0),
            beta: real(0.0),
            ..DetectorArraySpec::default()
        };
        let psi = detector_array_state(&spec, &Tolerances::DEFAULT).unwrap();
        let n = spec.n_sites;
        let w = packet_profile(2.0, n).unwrap().half_width as i64;
        for (k, z) in psi.vector().iter().enumerate() {
            if z.norm() > 0.0 {
                let (spin, pos, app) = (k / (n * n), (k / n) % n, k % n);
                assert_eq!(spin, 0);
                assert_eq!(pos, app);
                let offset = (pos as i64 - 8).rem_euclid(n as i64);
                assert!(offset <= w || offset >= n as i64 - w);
            }
        }
        let r = apparatus_reality_check(&spec, &Tolerances::DEFAULT).unwrap();
        assert!(r.all_passed(), "{:#?}", r.assertions);
    }

    #[test]
    fn conditioning_on_a_site_fixes_the_spin() {
        let spec = disjoint();
        let psi = detector_array_state(&spec, &Tolerances::DEFAULT).unwrap();
        let n = spec.n_sites;
        let site = spec.shift_sites + 1;
        let down: f64 = (0..n).map(|p| psi.vector()[n * n + p * n + site].norm_sqr()).sum();
        let up: f64 = (0..n).map(|p| psi.vector()[p * n + site].norm_sqr()).sum();
        assert!(up > 0.0 && down == 0.0);
    }

    #[test]
    fn apparatus_is_real_for_default_spec() {
        let r = apparatus_reality_check(&DetectorArraySpec::default(), &Tolerances::DEFAULT).unwrap();
        assert!(r.all_passed(), "{:#?}", r.assertions);
        assert!(r.value("apparatus_max_off_diagonal").unwrap() < 1e-12);
        assert_eq!(r.value("branches_disjoint"), Some(0.0));
    }

    #[test]
    fn disjoint_branches_split_the_weight() {
        let spec = disjoint();
        let r = apparatus_reality_check(&spec, &Tolerances::DEFAULT).unwrap();
        assert_eq!(r.value("branches_disjoint"), Some(1.0));
        let rho_a = detector_array_state(&spec, &Tolerances::DEFAULT)
            .unwrap()
            .reduced(&[2])
            .unwrap();
        let profile = packet_profile(1.0, 32).unwrap();
        let plus: f64 = (0..32)
            .filter(|&j| profile.weight_at(j - 8, 32) > 0.0)
            .map(|j| rho_a.matrix()[(j as usize, j as usize)].re)
            .sum();
        assert!((plus - 0.5).abs() < 1e-14);
        assert!((rho_a.matrix()[(8, 8)].re - 0.5 * profile.weights[profile.half_width]).abs() < 1e-15);

        let b = measurement_entropy_bookkeeping(&spec, &Tolerances::DEFAULT).unwrap();
        assert!(b.all_passed(), "{:#?}", b.assertions);
        let within = shannon_entropy(&profile.weights).unwrap();
        assert!((b.value("delta_s").unwrap() - (LN_2 + within)).abs() < 1e-10);
        assert!(b.value("delta_s_bar").unwrap().abs() < 1e-10);
    }

    #[test]
    fn single_branch_bookkeeping() {
        let spec = DetectorArraySpec {
            alpha: real(0.0),
            beta: real(1.0),
            ..disjoint()
        };
        let b = measurement_entropy_bookkeeping(&spec, &Tolerances::DEFAULT).unwrap();
        assert!(b.all_passed());
        let within = shannon_entropy(&packet_profile(1.0, 32).unwrap().weights).unwrap();
        assert!((b.value("delta_s").unwrap() - within).abs() < 1e-10);
    }

    #[test]
    fn point_packet_is_an_ideal_measurement() {
        let spec = DetectorArraySpec {
            n_sites: 8,
            packet_width_sites: 0.0,
            shift_sites: 2,
            ..DetectorArraySpec::default()
        };
        let b = measurement_entropy_bookkeeping(&spec, &Tolerances::DEFAULT).unwrap();
        assert!(b.all_passed());
        assert!((b.value("delta_s").unwrap() - LN_2).abs() < 1e-12);
        assert!(b.value("delta_s_bar").unwrap().abs() < 1e-12);
    }

    #[test]
    fn default_bookkeeping_passes() {
        let b = measurement_entropy_bookkeeping(&DetectorArraySpec::default(), &Tolerances::DEFAULT).unwrap();
        assert!(b.all_passed(), "{:#?}", b.assertions);
    }

    #[test]
    fn invalid_specs() {
        let tol = Tolerances::DEFAULT;
        let bad = |f: fn(&mut DetectorArraySpec)| {
            let mut s = DetectorArraySpec::default();
            f(&mut s);
            s.validate(&tol).is_err()
        };
        assert!(bad(|s| s.n_sites = 3));
        assert!(bad(|s| s.shift_sites = 0));
        assert!(bad(|s| s.packet_width_sites = -1.0));
        assert!(bad(|s| s.alpha = real(1.0)));
        let huge = DetectorArraySpec {
            n_sites: 64,
            ..DetectorArraySpec::default()
        };
        assert!(matches!(
            detector_array_state(&huge, &tol),
            Err(Error::DimensionOverflow { .. })
        ));
    }
}
