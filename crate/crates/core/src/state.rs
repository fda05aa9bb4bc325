//! Density matrices and pure states over composite spaces, with the entropic
//! and metric primitives everything else is built from.

use crate::dims::{Dims, DEFAULT_MAX_DIM};
use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_eigenvalues, real, CMatrix, CVector, C64, ZERO};
use crate::tolerance::Tolerances;

/// Hermitian, unit-trace, positive semidefinite matrix tagged with its
/// subsystem structure.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    dims: Dims,
}

impl DensityMatrix {
    /// Validates `m` as a state. Equivalent to [`validate_state`].
    pub fn new(m: CMatrix, dims: Dims, tol: &Tolerances) -> Result<Self> {
        validate_state(m, dims, tol)
    }

    /// Wraps a matrix produced by a trace-preserving map without re-checking.
    pub(crate) fn from_raw(matrix: CMatrix, dims: Dims) -> Self {
        debug_assert_eq!(matrix.nrows(), dims.total());
        DensityMatrix { matrix, dims }
    }

    pub fn maximally_mixed(dims: Dims) -> Self {
        let n = dims.total();
        let m = CMatrix::identity(n, n).unscale(n as f64);
        DensityMatrix::from_raw(m, dims)
    }

    /// `|index><index|` in the computational basis.
    pub fn basis_state(dims: Dims, index: usize) -> Result<Self> {
        PureState::basis(dims, index).map(|p| p.to_density())
    }

    /// Diagonal state with the given probabilities.
    pub fn diagonal(dims: Dims, probabilities: &[f64], tol: &Tolerances) -> Result<Self> {
        if probabilities.len() != dims.total() {
            return Err(Error::DimensionMismatch {
                expected: vec![dims.total()],
                found: vec![probabilities.len()],
            });
        }
        let n = dims.total();
        let m = CMatrix::from_fn(n, n, |i, j| if i == j { real(probabilities[i]) } else { ZERO });
        validate_state(m, dims, tol)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// `Tr rho^2`.
    pub fn purity(&self) -> f64 {
        // Tr(rho rho) = sum |rho_ij|^2 for Hermitian rho.
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|z| z.re).sum()
    }

    /// Re-checks every state invariant and returns the first violation.
    pub fn check(&self, tol: &Tolerances) -> Result<()> {
        check_invariants(&self.matrix, tol)
    }

    /// Same state with new subsystem labels of equal total dimension.
    pub fn relabel(self, dims: Dims) -> Result<Self> {
        if dims.total() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: vec![self.dim()],
                found: vec![dims.total()],
            });
        }
        Ok(DensityMatrix::from_raw(self.matrix, dims))
    }
}

/// Validates a raw matrix as a density matrix over `dims`.
///
/// The returned matrix is the Hermitian part `(m + m^dagger)/2`.
pub fn validate_state(m: CMatrix, dims: Dims, tol: &Tolerances) -> Result<DensityMatrix> {
    let n = dims.total();
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: vec![n, n],
            found: vec![m.nrows(), m.ncols()],
        });
    }
    let deviation = linalg::hermiticity_defect(&m);
    if deviation > tol.tol_herm {
        return Err(Error::NotHermitian { deviation });
    }
    let sym = (&m + m.adjoint()).unscale(2.0);
    check_invariants(&sym, tol)?;
    Ok(DensityMatrix::from_raw(sym, dims))
}

fn check_invariants(m: &CMatrix, tol: &Tolerances) -> Result<()> {
    let deviation = linalg::hermiticity_defect(m);
    if deviation > tol.tol_herm {
        return Err(Error::NotHermitian { deviation });
    }
    let trace: C64 = m.diagonal().iter().sum();
    let deviation = (trace - real(1.0)).norm();
    if deviation > tol.tol_trace {
        return Err(Error::TraceNotOne { deviation });
    }
    let min_eigenvalue = hermitian_eigenvalues(m).first().copied().unwrap_or(0.0);
    if min_eigenvalue < -tol.tol_psd {
        return Err(Error::NotPositive { min_eigenvalue });
    }
    Ok(())
}

/// Unit vector over a composite space.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    vector: CVector,
    dims: Dims,
}

impl PureState {
    pub fn new(vector: CVector, dims: Dims, tol: &Tolerances) -> Result<Self> {
        if vector.len() != dims.total() {
            return Err(Error::DimensionMismatch {
                expected: vec![dims.total()],
                found: vec![vector.len()],
            });
        }
        let deviation = (vector.norm() - 1.0).abs();
        if deviation > tol.tol_norm {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(PureState { vector, dims })
    }

    /// Normalizes `vector` first. Fails only on a zero vector.
    pub fn normalized(vector: CVector, dims: Dims) -> Result<Self> {
        let norm = vector.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { deviation: 1.0 });
        }
        PureState::new(vector.unscale(norm), dims, &Tolerances::DEFAULT)
    }

    pub fn basis(dims: Dims, index: usize) -> Result<Self> {
        let n = dims.total();
        if index >= n {
            return Err(Error::InvalidOutcome {
                outcome: index,
                count: n,
            });
        }
        let mut v = CVector::zeros(n);
        v[index] = real(1.0);
        Ok(PureState { vector: v, dims })
    }

    pub fn vector(&self) -> &CVector {
        &self.vector
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_raw(&self.vector * self.vector.adjoint(), self.dims.clone())
    }

    /// Reduced state on `keep`, computed from the amplitudes without forming
    /// the full projector.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let plan = TracePlan::new(&self.dims, keep)?;
        let k = plan.kept_total;
        let mut out = CMatrix::zeros(k, k);
        for t in 0..plan.traced_total {
            for j in 0..k {
                let bj = self.vector[plan.full_index(j, t)];
                if bj.re == 0.0 && bj.im == 0.0 {
                    continue;
                }
                let bj = bj.conj();
                for i in 0..k {
                    out[(i, j)] += self.vector[plan.full_index(i, t)] * bj;
                }
            }
        }
        Ok(DensityMatrix::from_raw(out, plan.kept_dims))
    }
}

/// Kronecker product `a ⊗ b` with concatenated subsystem labels.
pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    tensor_with_limit(a, b, DEFAULT_MAX_DIM)
}

pub fn tensor_with_limit(a: &DensityMatrix, b: &DensityMatrix, max_total: usize) -> Result<DensityMatrix> {
    let dims = a.dims.concat(&b.dims, max_total)?;
    Ok(DensityMatrix::from_raw(a.matrix.kronecker(&b.matrix), dims))
}

/// Index bookkeeping for tracing out the complement of `keep`.
struct TracePlan {
    kept_dims: Dims,
    kept_total: usize,
    traced_total: usize,
    table: Vec<usize>,
}

impl TracePlan {
    fn new(dims: &Dims, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::InvalidSubsystemIndex { index: 0, count: 0 });
        }
        let keep = dims.check_subset(keep)?;
        let traced: Vec<usize> = (0..dims.len()).filter(|s| !keep.contains(s)).collect();
        let kept_dims = dims.select(&keep)?;
        let kept_total = kept_dims.total();
        let traced_total: usize = traced.iter().map(|&s| dims.as_slice()[s]).product();
        let strides = dims.strides();
        let mut table = vec![0usize; kept_total * traced_total];
        for i in 0..kept_total {
            let mut base = 0;
            let mut rem = i;
            for &s in keep.iter().rev() {
                let d = dims.as_slice()[s];
                base += (rem % d) * strides[s];
                rem /= d;
            }
            for t in 0..traced_total {
                let mut off = 0;
                let mut rem = t;
                for &s in traced.iter().rev() {
                    let d = dims.as_slice()[s];
                    off += (rem % d) * strides[s];
                    rem /= d;
                }
                table[i * traced_total + t] = base + off;
            }
        }
        Ok(TracePlan {
            kept_dims,
            kept_total,
            traced_total,
            table,
        })
    }

    #[inline]
    fn full_index(&self, kept: usize, traced: usize) -> usize {
        self.table[kept * self.traced_total + traced]
    }
}

/// Reduced state over the subsystems in `keep`, in their original order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let plan = TracePlan::new(&rho.dims, keep)?;
    if plan.traced_total == 1 {
        return Ok(rho.clone());
    }
    let k = plan.kept_total;
    let out = CMatrix::from_fn(k, k, |i, j| {
        (0..plan.traced_total)
            .map(|t| rho.matrix[(plan.full_index(i, t), plan.full_index(j, t))])
            .sum()
    });
    Ok(DensityMatrix::from_raw(out, plan.kept_dims))
}

/// `-sum p ln p` over a spectrum, clamping to `[0, 1]` and dropping values at
/// or below `floor`.
pub fn entropy_of_spectrum(values: &[f64], floor: f64) -> f64 {
    values
        .iter()
        .map(|&l| l.clamp(0.0, 1.0))
        .filter(|&l| l > floor)
        .map(|l| -l * l.ln())
        .sum::<f64>()
        .max(0.0)
}

/// `S(rho) = -Tr rho ln rho`, in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    von_neumann_entropy_with(rho, &Tolerances::DEFAULT)
}

pub fn von_neumann_entropy_with(rho: &DensityMatrix, tol: &Tolerances) -> f64 {
    entropy_of_spectrum(&rho.eigenvalues(), tol.eig_zero_floor)
}

/// Shannon entropy of a distribution, in nats, with `0 ln 0 = 0`.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    if p.is_empty() {
        return Err(Error::NotADistribution("empty distribution".into()));
    }
    if let Some(bad) = p.iter().find(|&&x| !x.is_finite() || x < 0.0) {
        return Err(Error::NotADistribution(format!("negative or non-finite entry {bad}")));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > Tolerances::DEFAULT.tol_trace {
        return Err(Error::NotADistribution(format!("entries sum to {sum}")));
    }
    Ok(p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln()).sum())
}

/// `H(t) = -t ln t - (1-t) ln(1-t)`, with the argument clamped to `[0, 1]`.
pub fn binary_entropy(t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    let term = |x: f64| if x > 0.0 { -x * x.ln() } else { 0.0 };
    term(t) + term(1.0 - t)
}

/// Hermitian-matrix trace norm over two: `1/2 sum |eig(a - b)|`.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dims != b.dims {
        return Err(Error::DimensionMismatch {
            expected: a.dims.as_slice().to_vec(),
            found: b.dims.as_slice().to_vec(),
        });
    }
    Ok(trace_norm_half(&(&a.matrix - &b.matrix)))
}

pub(crate) fn trace_norm_half(diff: &CMatrix) -> f64 {
    0.5 * hermitian_eigenvalues(diff).iter().map(|l| l.abs()).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

    fn qubit() -> Dims {
        Dims::new(vec![2]).unwrap()
    }

    pub(crate) fn plus() -> DensityMatrix {
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

    #[test]
    fn validation_examples() {
        let tol = Tolerances::DEFAULT;
        let mixed = CMatrix::identity(2, 2).unscale(2.0);
        assert!(validate_state(mixed, qubit(), &tol).is_ok());
        assert!(validate_state(plus().into_matrix(), qubit(), &tol).is_ok());

        let bad = CMatrix::identity(2, 2).scale(0.6);
        match validate_state(bad, qubit(), &tol) {
            Err(Error::TraceNotOne { deviation }) => assert_abs_diff_eq!(deviation, 0.2, epsilon = 1e-12),
            other => panic!("expected TraceNotOne, got {other:?}"),
        }
    }

    #[test]
    fn validation_names_each_violation() {
        let tol = Tolerances::DEFAULT;
        let mut m = CMatrix::identity(2, 2).unscale(2.0);
        m[(0, 1)] = C64::new(0.0, 0.1);
        assert!(matches!(
            validate_state(m, qubit(), &tol),
            Err(Error::NotHermitian { .. })
        ));

        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![real(1.5), real(-0.5)]));
        match validate_state(m, qubit(), &tol) {
            Err(Error::NotPositive { min_eigenvalue }) => assert_abs_diff_eq!(min_eigenvalue, -0.5, epsilon = 1e-12),
            other => panic!("expected NotPositive, got {other:?}"),
        }

        let m = CMatrix::identity(3, 3).unscale(3.0);
        assert!(matches!(
            validate_state(m, qubit(), &tol),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn tensor_examples() {
        let half = DensityMatrix::maximally_mixed(qubit());
        let quarter = tensor(&half, &half).unwrap();
        assert_eq!(quarter.dims().as_slice(), &[2, 2]);
        assert!(linalg::max_abs_diff(quarter.matrix(), &CMatrix::identity(4, 4).unscale(4.0)) < 1e-15);

        let zero = DensityMatrix::basis_state(qubit(), 0).unwrap();
        let one = DensityMatrix::basis_state(qubit(), 1).unwrap();
        let zo = tensor(&zero, &one).unwrap();
        let expected = DensityMatrix::basis_state(Dims::qubits(2), 1).unwrap();
        assert_eq!(zo.matrix(), expected.matrix());

        let s = von_neumann_entropy(&tensor(&plus(), &half).unwrap());
        assert_abs_diff_eq!(s, LN_2, epsilon = 1e-12);
    }

    #[test]
    fn tensor_overflow() {
        let big = DensityMatrix::maximally_mixed(Dims::new(vec![64]).unwrap());
        let other = DensityMatrix::maximally_mixed(Dims::new(vec![65]).unwrap());
        assert!(matches!(tensor(&big, &other), Err(Error::DimensionOverflow { .. })));
    }

    #[test]
    fn partial_trace_examples() {
        let reduced = partial_trace(&bell(), &[0]).unwrap();
        assert!(linalg::max_abs_diff(reduced.matrix(), &CMatrix::identity(2, 2).unscale(2.0)) < 1e-15);

        let zero = DensityMatrix::basis_state(qubit(), 0).unwrap();
        let prod = tensor(&zero, &plus()).unwrap();
        let second = partial_trace(&prod, &[1]).unwrap();
        assert!(linalg::max_abs_diff(second.matrix(), plus().matrix()) < 1e-15);

        let all = partial_trace(&prod, &[0, 1]).unwrap();
        assert_eq!(all, prod);

        assert!(matches!(
            partial_trace(&prod, &[2]),
            Err(Error::InvalidSubsystemIndex { .. })
        ));
        assert!(partial_trace(&prod, &[]).is_err());
    }

    #[test]
    fn pure_reduction_matches_dense_partial_trace() {
        let dims = Dims::new(vec![2, 3, 2]).unwrap();
        let v = CVector::from_fn(12, |i, _| C64::new((i as f64).sin(), (i as f64 * 0.7).cos()));
        let psi = PureState::normalized(v, dims).unwrap();
        for keep in [vec![0], vec![1], vec![2], vec![0, 2], vec![1, 2]] {
            let a = psi.reduced(&keep).unwrap();
            let b = partial_trace(&psi.to_density(), &keep).unwrap();
            assert_eq!(a.dims(), b.dims());
            assert!(linalg::max_abs_diff(a.matrix(), b.matrix()) < 1e-14);
        }
    }

    #[test]
    fn entropy_examples() {
        assert_abs_diff_eq!(von_neumann_entropy(&plus()), 0.0, epsilon = 1e-12);
        let half = DensityMatrix::maximally_mixed(qubit());
        assert_abs_diff_eq!(von_neumann_entropy(&half), LN_2, epsilon = 1e-14);
        let d = DensityMatrix::diagonal(qubit(), &[0.75, 0.25], &Tolerances::DEFAULT).unwrap();
        // -0.75 ln 0.75 - 0.25 ln 0.25
        assert_abs_diff_eq!(von_neumann_entropy(&d), 0.562_335_144_618_808_4, epsilon = 1e-12);
    }

    #[test]
    fn shannon_examples() {
        assert_eq!(shannon_entropy(&[1.0, 0.0]).unwrap(), 0.0);
        assert_abs_diff_eq!(shannon_entropy(&[0.5, 0.5]).unwrap(), LN_2, epsilon = 1e-15);
        assert_abs_diff_eq!(
            shannon_entropy(&[0.25, 0.75]).unwrap(),
            0.562_335_144_618_808_4,
            epsilon = 1e-12
        );
        assert!(matches!(shannon_entropy(&[0.5, 0.6]), Err(Error::NotADistribution(_))));
        assert!(matches!(shannon_entropy(&[1.5, -0.5]), Err(Error::NotADistribution(_))));
        assert_abs_diff_eq!(binary_entropy(0.25), 0.562_335_144_618_808_4, epsilon = 1e-12);
    }

    #[test]
    fn trace_distance_examples() {
        let p = plus();
        assert_eq!(trace_distance(&p, &p).unwrap(), 0.0);
        let zero = DensityMatrix::basis_state(qubit(), 0).unwrap();
        let one = DensityMatrix::basis_state(qubit(), 1).unwrap();
        assert_abs_diff_eq!(trace_distance(&zero, &one).unwrap(), 1.0, epsilon = 1e-14);
        let half = DensityMatrix::maximally_mixed(qubit());
        assert_abs_diff_eq!(trace_distance(&p, &half).unwrap(), 0.5, epsilon = 1e-14);
        assert!(matches!(
            trace_distance(&p, &bell()),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
