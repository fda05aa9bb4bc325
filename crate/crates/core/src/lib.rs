//! Dense numerics for dephasing, weak collapse, monitoring, irreality and
//! the information ledgers built on von Neumann entropy.
//!
//! States are [`DensityMatrix`] values tagged with subsystem [`Dims`] in
//! Kronecker order, subsystem 0 most significant. Entropies are in nats.

pub mod channels;
pub mod dilation;
pub mod dims;
pub mod error;
pub mod linalg;
pub mod observable;
pub mod quantifiers;
pub mod random;
pub mod scenarios;
pub mod state;
pub mod tolerance;

pub use channels::{
    apply_collapse, apply_dephasing, apply_local_kraus, apply_monitoring, apply_monitoring_n, apply_weak_collapse,
    compose_weak_collapses, iterate_monitoring, kraus_completeness, monitoring_difference, monitoring_kraus,
    outcome_probability, unrevealed_average, weak_collapse_difference, DephasingMap, Intensity, MapDifference,
    MonitoringMap, RevealedMeasurement,
};
pub use dilation::{
    build_dilation, complementarity_ledger, tripartite_ssa_experiment, ComplementarityLedger, DilationUnitary,
    SsaReport,
};
pub use dims::{Dims, DEFAULT_MAX_DIM};
pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, C64};
pub use observable::{fourier_basis, unbiasedness_defect, Observable};
pub use quantifiers::{
    dephasing_distance, fannes_bound, generated_irreality, information, information_ledger, irreality,
    irreality_decomposition, is_reality_state, monotonicity_check, mutual_information, reality_change,
    simple_upper_estimate, Bipartition, GeneratedIrreality, InformationLedger, IrrealityBreakdown, RealityChangeReport,
};
pub use random::{
    random_observable, random_state, random_state_with, random_unitary, rng_for_sample, rng_from_seed, Purity,
    SeededRng,
};
pub use scenarios::{Assertion, Check, ScenarioResult};
pub use state::{
    binary_entropy, partial_trace, shannon_entropy, tensor, trace_distance, von_neumann_entropy,
    von_neumann_entropy_with, DensityMatrix, PureState,
};
pub use tolerance::Tolerances;
