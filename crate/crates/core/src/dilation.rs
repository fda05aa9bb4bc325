//! Finite-ancilla unitary realisations of monitoring, the information and
//! reality zero-sum ledger, and the three-party strong-subadditivity check.
//!
//! The ancilla has one level per Kraus operator of `M^eps_A`: level 0 carries
//! the `sqrt(1 - eps) 1` branch and doubles as the ready state `|x_0>`, level
//! `a + 1` carries `sqrt(eps) A_a`.

use serde::Serialize;

use crate::channels::{apply_monitoring, Intensity, MonitoringMap};
use crate::dims::{Dims, DEFAULT_MAX_DIM};
use crate::error::{Error, Result};
use crate::linalg::{self, embed_operator, max_abs_diff, orthonormal_complement, CMatrix, CVector};
use crate::observable::Observable;
use crate::quantifiers::{information, irreality};
use crate::state::{partial_trace, tensor_with_limit, von_neumann_entropy, DensityMatrix};

/// Unitary on system ⊗ ancilla whose reduced action on the system, from the
/// ancilla ready state, is a monitoring map.
#[derive(Debug, Clone, PartialEq)]
pub struct DilationUnitary {
    pub unitary: CMatrix,
    pub system_dims: Dims,
    pub ancilla_dim: usize,
    pub ready_index: usize,
    pub source: MonitoringMap,
}

/// Builds `U` with `U(|psi> ⊗ |0>) = sum_i K_i |psi> ⊗ |i>`.
pub fn build_dilation(m: &MonitoringMap, system_dims: &Dims) -> Result<DilationUnitary> {
    m.observable.check_against(system_dims)?;
    let d_s = system_dims.total();
    let d_x = m.observable.dim() + 1;
    system_dims.concat(&Dims::new(vec![d_x])?, DEFAULT_MAX_DIM)?;

    let eps = m.eps();
    let mut kraus = Vec::with_capacity(d_x);
    kraus.push(CMatrix::identity(d_s, d_s).scale((1.0 - eps).sqrt()));
    for a in 0..m.observable.dim() {
        let local = m.observable.projector(a)?.scale(eps.sqrt());
        kraus.push(embed_operator(&local, &[m.observable.target()], system_dims)?);
    }

    let n = d_s * d_x;
    // Isometry columns: V e_s = sum_x K_x e_s ⊗ e_x.
    let isometry = CMatrix::from_fn(n, d_s, |row, s| {
        let (s_out, x) = (row / d_x, row % d_x);
        kraus[x][(s_out, s)]
    });
    let complement = orthonormal_complement(&isometry);
    let mut unitary = CMatrix::zeros(n, n);
    let mut extra = complement.column_iter();
    for col in 0..n {
        let (s, x) = (col / d_x, col % d_x);
        if x == 0 {
            unitary.set_column(col, &isometry.column(s));
        } else {
            let c = extra.next().expect("complement has d_s (d_x - 1) columns");
            unitary.set_column(col, &c);
        }
    }
    Ok(DilationUnitary {
        unitary,
        system_dims: system_dims.clone(),
        ancilla_dim: d_x,
        ready_index: 0,
        source: m.clone(),
    })
}

impl DilationUnitary {
    pub fn joint_dims(&self) -> Dims {
        let mut d = self.system_dims.as_slice().to_vec();
        d.push(self.ancilla_dim);
        Dims::new(d).expect("checked at construction")
    }

    pub fn ready_state(&self) -> DensityMatrix {
        DensityMatrix::basis_state(Dims::new(vec![self.ancilla_dim]).expect("d_x >= 3"), self.ready_index)
            .expect("ready index in range")
    }

    /// `U (rho ⊗ |x_0><x_0|) U^dagger`.
    pub fn evolve(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dims() != &self.system_dims {
            return Err(Error::DimensionMismatch {
                expected: self.system_dims.as_slice().to_vec(),
                found: rho.dims().as_slice().to_vec(),
            });
        }
        let joint = tensor_with_limit(rho, &self.ready_state(), DEFAULT_MAX_DIM)?;
        let out = &self.unitary * joint.matrix() * self.unitary.adjoint();
        DensityMatrix::from_raw(out, self.joint_dims()).relabel(self.joint_dims())
    }

    /// Reduced system state after the joint evolution.
    pub fn channel(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let system: Vec<usize> = (0..self.system_dims.len()).collect();
        partial_trace(&self.evolve(rho)?, &system)
    }

    pub fn unitarity_defect(&self) -> f64 {
        linalg::unitarity_defect(&self.unitary)
    }

    /// `max |Tr_X[U (rho ⊗ x_0) U^dagger] - M^eps(rho)|`.
    pub fn channel_gap(&self, rho: &DensityMatrix) -> Result<f64> {
        let via_dilation = self.channel(rho)?;
        let direct = apply_monitoring(&self.source, rho)?;
        Ok(max_abs_diff(via_dilation.matrix(), direct.matrix()))
    }

    /// The isometry `V = U |x_0>` as a `(d_S d_X) x d_S` matrix.
    pub fn isometry(&self) -> CMatrix {
        let d_s = self.system_dims.total();
        let cols: Vec<CVector> = (0..d_s)
            .map(|s| {
                self.unitary
                    .column(s * self.ancilla_dim + self.ready_index)
                    .into_owned()
            })
            .collect();
        CMatrix::from_columns(&cols)
    }
}

/// Changes in every term of the information/irreality budget of system and
/// ancilla across one dilated monitoring.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplementarityLedger {
    pub delta_mutual_sx: f64,
    pub delta_info_x: f64,
    pub delta_irreality: f64,
    pub delta_info_s: f64,
    pub delta_reality: f64,
    /// `S(rho_X(t))`, reported only for pure inputs where it is the
    /// system-ancilla entanglement.
    pub entanglement: Option<f64>,
    /// `S(rho_SX(t)) - S(rho_SX(0))`.
    pub joint_entropy_drift: f64,
}

impl ComplementarityLedger {
    /// `Delta(I_{S:X} + I_X) + Delta J`.
    pub fn information_zero_sum(&self) -> f64 {
        self.delta_mutual_sx + self.delta_info_x + self.delta_irreality
    }

    /// `Delta I_S + Delta R`.
    pub fn reality_zero_sum(&self) -> f64 {
        self.delta_info_s + self.delta_reality
    }

    /// `|Delta R - E|` for pure inputs.
    pub fn entanglement_gap(&self) -> Option<f64> {
        self.entanglement.map(|e| (self.delta_reality - e).abs())
    }
}

/// Purity deviation under which an input counts as pure for the ledger.
const PURE_INPUT_TOL: f64 = 1e-10;

pub fn complementarity_ledger(m: &MonitoringMap, rho_s: &DensityMatrix) -> Result<ComplementarityLedger> {
    let dilation = build_dilation(m, rho_s.dims())?;
    let system: Vec<usize> = (0..rho_s.dims().len()).collect();
    let ancilla = [rho_s.dims().len()];

    let joint0 = tensor_with_limit(rho_s, &dilation.ready_state(), DEFAULT_MAX_DIM)?;
    let joint_t = dilation.evolve(rho_s)?;
    let s_t = partial_trace(&joint_t, &system)?;
    let x_t = partial_trace(&joint_t, &ancilla)?;
    let x_0 = dilation.ready_state();

    let mutual = |s: &DensityMatrix, x: &DensityMatrix, sx: &DensityMatrix| {
        von_neumann_entropy(s) + von_neumann_entropy(x) - von_neumann_entropy(sx)
    };
    let delta_mutual_sx = mutual(&s_t, &x_t, &joint_t) - mutual(rho_s, &x_0, &joint0);
    let delta_info_x = information(&x_t) - information(&x_0);
    let delta_irreality = irreality(&m.observable, &s_t)? - irreality(&m.observable, rho_s)?;
    let delta_info_s = information(&s_t) - information(rho_s);
    let entanglement = ((rho_s.purity() - 1.0).abs() < PURE_INPUT_TOL).then(|| von_neumann_entropy(&x_t));

    Ok(ComplementarityLedger {
        delta_mutual_sx,
        delta_info_x,
        delta_irreality,
        delta_info_s,
        delta_reality: -delta_irreality,
        entanglement,
        joint_entropy_drift: von_neumann_entropy(&joint_t) - von_neumann_entropy(&joint0),
    })
}

/// Entropies of the sequentially dilated state `rho_SXY` and the quantities
/// derived from them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SsaReport {
    pub s_sxy: f64,
    pub s_s: f64,
    pub s_sx: f64,
    pub s_sy: f64,
    /// `S(SX) + S(SY) - S(SXY) - S(S)`; nonnegative by strong subadditivity.
    pub ssa_slack: f64,
    /// `|S(SXY) - S(rho)|`.
    pub joint_entropy_gap: f64,
    /// `max |rho_S - M^eps_A M^delta_A'(rho)|`.
    pub reduced_state_gap: f64,
    /// `|S(SX) - S(M^delta_A'(rho))|`.
    pub sx_entropy_gap: f64,
    /// `|S(SY) - S(M^eps_A(rho))|`; zero when `A` and `A'` share an
    /// eigenbasis, generally nonzero otherwise.
    pub sy_entropy_gap: f64,
    /// `max |M^eps_A M^delta_A'(rho) - M^delta_A' M^eps_A(rho)|`; nonzero for
    /// incompatible `A`, `A'`, in which case `delta_r_aprime` may be negative.
    pub commutation_gap: f64,
    /// `J(A'|rho) - J(A'|M^eps_A(rho))`.
    pub delta_r_aprime: f64,
}

/// Monitors `A'` at intensity `delta` through ancilla `Y`, then `A` at
/// intensity `eps` through ancilla `X`, and checks strong subadditivity of
/// the resulting `S ⊗ X ⊗ Y` state.
pub fn tripartite_ssa_experiment(
    obs_a: &Observable,
    eps: Intensity,
    obs_aprime: &Observable,
    delta: Intensity,
    rho: &DensityMatrix,
) -> Result<SsaReport> {
    let map_a = MonitoringMap {
        observable: obs_a.clone(),
        intensity: eps,
    };
    let map_aprime = MonitoringMap {
        observable: obs_aprime.clone(),
        intensity: delta,
    };
    let u_sx = build_dilation(&map_a, rho.dims())?;
    let u_sy = build_dilation(&map_aprime, rho.dims())?;

    let n_s = rho.dims().len();
    let (x, y) = (n_s, n_s + 1);
    let mut joint_dims = rho.dims().as_slice().to_vec();
    joint_dims.push(u_sx.ancilla_dim);
    joint_dims.push(u_sy.ancilla_dim);
    let joint_dims = Dims::new(joint_dims)?;

    let system: Vec<usize> = (0..n_s).collect();
    let with = |extra: usize| -> Vec<usize> { system.iter().copied().chain(std::iter::once(extra)).collect() };

    let initial = tensor_with_limit(
        &tensor_with_limit(rho, &u_sx.ready_state(), DEFAULT_MAX_DIM)?,
        &u_sy.ready_state(),
        DEFAULT_MAX_DIM,
    )?;
    let full_sy = embed_operator(&u_sy.unitary, &with(y), &joint_dims)?;
    let full_sx = embed_operator(&u_sx.unitary, &with(x), &joint_dims)?;
    let total = &full_sx * &full_sy;
    let sxy = DensityMatrix::from_raw(&total * initial.matrix() * total.adjoint(), joint_dims);

    let s_sxy = von_neumann_entropy(&sxy);
    let rho_s = partial_trace(&sxy, &system)?;
    let s_s = von_neumann_entropy(&rho_s);
    let s_sx = von_neumann_entropy(&partial_trace(&sxy, &with(x))?);
    let s_sy = von_neumann_entropy(&partial_trace(&sxy, &with(y))?);

    let after_aprime = apply_monitoring(&map_aprime, rho)?;
    let both = apply_monitoring(&map_a, &after_aprime)?;
    let after_a = apply_monitoring(&map_a, rho)?;

    Ok(SsaReport {
        s_sxy,
        s_s,
        s_sx,
        s_sy,
        ssa_slack: s_sx + s_sy - s_sxy - s_s,
        joint_entropy_gap: (s_sxy - von_neumann_entropy(rho)).abs(),
        reduced_state_gap: max_abs_diff(rho_s.matrix(), both.matrix()),
        sx_entropy_gap: (s_sx - von_neumann_entropy(&after_aprime)).abs(),
        sy_entropy_gap: (s_sy - von_neumann_entropy(&after_a)).abs(),
        commutation_gap: max_abs_diff(both.matrix(), apply_monitoring(&map_aprime, &after_a)?.matrix()),
        delta_r_aprime: irreality(obs_aprime, rho)? - irreality(obs_aprime, &after_a)?,
    })
}
