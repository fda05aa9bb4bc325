use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::dims::Dims;
use crate::error::{Error, Result};
use crate::linalg::{max_abs_diff, real, CMatrix, CVector, C64};
use crate::tolerance::Tolerances;

/// Nondegenerate-basis observable on one subsystem: `A = sum_a a |a><a|`.
///
/// The eigenbasis is stored as the columns of a unitary matrix. Repeated
/// eigenvalues are allowed; every map still works with the rank-1 projectors
/// `|a><a|`.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    target: usize,
    eigenvalues: Vec<f64>,
    basis: CMatrix,
    computational: bool,
}

impl Observable {
    pub fn new(target: usize, eigenvalues: Vec<f64>, basis: CMatrix, tol: &Tolerances) -> Result<Self> {
        let d = basis.nrows();
        if d < 2 || basis.ncols() != d || eigenvalues.len() != d {
            return Err(Error::DimensionMismatch {
                expected: vec![d, d, d],
                found: vec![basis.nrows(), basis.ncols(), eigenvalues.len()],
            });
        }
        if let Some(bad) = eigenvalues.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "eigenvalues",
                reason: format!("non-finite eigenvalue {bad}"),
            });
        }
        let deviation = max_abs_diff(&(basis.adjoint() * &basis), &CMatrix::identity(d, d));
        if deviation > tol.tol_ortho {
            return Err(Error::NotOrthonormal { deviation });
        }
        let computational = basis == CMatrix::identity(d, d);
        Ok(Observable {
            target,
            eigenvalues,
            basis,
            computational,
        })
    }

    /// Diagonal observable with eigenvalues `0, 1, ..., d-1`.
    pub fn computational(target: usize, d: usize) -> Self {
        let eig = (0..d).map(|k| k as f64).collect();
        Observable::new(target, eig, CMatrix::identity(d, d), &Tolerances::DEFAULT)
            .expect("identity basis is orthonormal")
    }

    /// `sigma_z`, with `|0>` the `+1` eigenvector.
    pub fn pauli_z(target: usize) -> Self {
        Observable::new(target, vec![1.0, -1.0], CMatrix::identity(2, 2), &Tolerances::DEFAULT)
            .expect("identity basis is orthonormal")
    }

    /// `sigma_x`, with `|+>` the `+1` eigenvector.
    pub fn pauli_x(target: usize) -> Self {
        let h = real(FRAC_1_SQRT_2);
        let basis = CMatrix::from_row_slice(2, 2, &[h, h, h, -h]);
        Observable::new(target, vec![1.0, -1.0], basis, &Tolerances::DEFAULT).expect("Hadamard basis is orthonormal")
    }

    /// Same observable moved to another subsystem.
    pub fn on(mut self, target: usize) -> Self {
        self.target = target;
        self
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Eigenvectors as columns.
    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn eigenvector(&self, outcome: usize) -> Result<CVector> {
        self.check_outcome(outcome)?;
        Ok(self.basis.column(outcome).into_owned())
    }

    /// Local projector `|a><a|`.
    pub fn projector(&self, outcome: usize) -> Result<CMatrix> {
        let v = self.eigenvector(outcome)?;
        Ok(&v * v.adjoint())
    }

    /// `sum_a a |a><a|` as a local matrix.
    pub fn matrix(&self) -> CMatrix {
        let diag = CVector::from_iterator(self.dim(), self.eigenvalues.iter().map(|&x| real(x)));
        &self.basis * CMatrix::from_diagonal(&diag) * self.basis.adjoint()
    }

    pub(crate) fn is_computational(&self) -> bool {
        self.computational
    }

    pub(crate) fn check_outcome(&self, outcome: usize) -> Result<()> {
        if outcome >= self.dim() {
            return Err(Error::InvalidOutcome {
                outcome,
                count: self.dim(),
            });
        }
        Ok(())
    }

    /// Checks that the observable fits subsystem `target` of `dims`.
    pub fn check_against(&self, dims: &Dims) -> Result<()> {
        let d = dims.dim(self.target)?;
        if d != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: vec![d],
                found: vec![self.dim()],
            });
        }
        Ok(())
    }

    /// Same target and the same set of eigenprojectors, in order.
    pub fn same_projectors(&self, other: &Observable, tol: f64) -> bool {
        if self.target != other.target || self.dim() != other.dim() {
            return false;
        }
        (0..self.dim()).all(|a| {
            let overlap = self.basis.column(a).dotc(&other.basis.column(a)).norm();
            (overlap - 1.0).abs() <= tol
        })
    }
}

/// Discrete Fourier basis `v_k[j] = exp(2 pi i jk/d)/sqrt(d)` on subsystem 0,
/// with eigenvalues `0..d-1`. Unbiased with respect to the computational basis.
pub fn fourier_basis(d: usize) -> Observable {
    assert!(d >= 2, "Fourier basis needs d >= 2");
    let norm = (d as f64).sqrt();
    let basis = CMatrix::from_fn(d, d, |j, k| {
        let phase = 2.0 * PI * ((j * k) % d) as f64 / d as f64;
        C64::from_polar(1.0 / norm, phase)
    });
    let eig = (0..d).map(|k| k as f64).collect();
    Observable::new(0, eig, basis, &Tolerances::DEFAULT).expect("Fourier basis is orthonormal")
}

/// `max_{a,b} | |<a|b>|^2 - 1/d |` between two eigenbases.
pub fn unbiasedness_defect(a: &Observable, b: &Observable) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: vec![a.dim()],
            found: vec![b.dim()],
        });
    }
    let inv = 1.0 / a.dim() as f64;
    let overlaps = a.basis.adjoint() * &b.basis;
    Ok(overlaps.iter().map(|z| (z.norm_sqr() - inv).abs()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qubit_fourier_is_hadamard_up_to_phase() {
        let f = fourier_basis(2);
        let x = Observable::pauli_x(0);
        for k in 0..2 {
            let overlap = f.basis().column(k).dotc(&x.basis().column(k)).norm();
            assert!((overlap - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn fourier_is_unbiased_and_orthonormal() {
        for d in 2..=7 {
            let f = fourier_basis(d);
            let z = Observable::computational(0, d);
            assert!(unbiasedness_defect(&f, &z).unwrap() < 1e-14);
        }
        let f3 = fourier_basis(3);
        let gram = f3.basis().adjoint() * f3.basis();
        assert!(max_abs_diff(&gram, &CMatrix::identity(3, 3)) < 1e-12);
    }

    #[test]
    fn rejects_non_orthonormal_basis() {
        let basis = CMatrix::from_row_slice(2, 2, &[real(1.0), real(1.0), real(0.0), real(1.0)]);
        let err = Observable::new(0, vec![0.0, 1.0], basis, &Tolerances::DEFAULT).unwrap_err();
        assert!(matches!(err, Error::NotOrthonormal { .. }));
    }

    #[test]
    fn projectors_resolve_identity() {
        let f = fourier_basis(4);
        let sum = (0..4).fold(CMatrix::zeros(4, 4), |acc, a| acc + f.projector(a).unwrap());
        assert!(max_abs_diff(&sum, &CMatrix::identity(4, 4)) < 1e-14);
        assert!(f.projector(4).is_err());
    }
}
