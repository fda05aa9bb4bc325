//! Dense complex helpers shared by the state, channel and dilation modules.

use nalgebra::{Complex, DMatrix, DVector};

use crate::dims::Dims;
use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

#[inline]
pub(crate) fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// The matrix is first split into the connected components of its exact
/// nonzero pattern; each component is diagonalised on its own. The spectrum is
/// unchanged by this permutation, and the states built by the detector model
/// (dimension in the thousands, block size at most a few dozen) stay cheap.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    assert!(m.is_square(), "eigenvalues of a non-square matrix");
    let mut values = Vec::with_capacity(m.nrows());
    for block in connected_blocks(m) {
        if block.len() == 1 {
            values.push(m[(block[0], block[0])].re);
            continue;
        }
        let sub = CMatrix::from_fn(block.len(), block.len(), |i, j| m[(block[i], block[j])]);
        values.extend(sub.symmetric_eigenvalues().iter().copied());
    }
    values.sort_by(|a, b| a.total_cmp(b));
    values
}

fn connected_blocks(m: &CMatrix) -> Vec<Vec<usize>> {
    let n = m.nrows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for j in 0..n {
        let col = m.column(j);
        for i in (j + 1)..n {
            let z = col[i];
            if z.re != 0.0 || z.im != 0.0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in max_abs_diff");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Largest entrywise modulus.
pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub(crate) fn hermiticity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for j in 0..n {
        for i in j..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// `max |U^dagger U - 1|`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let g = u.adjoint() * u;
    max_abs_diff(&g, &CMatrix::identity(u.ncols(), u.ncols()))
}

/// Applies a single-subsystem operator from the left: `(1 ⊗ op ⊗ 1) m`.
pub(crate) fn local_left(op: &CMatrix, target: usize, dims: &Dims, m: &CMatrix) -> CMatrix {
    let d = dims.as_slice()[target];
    debug_assert_eq!(op.nrows(), d);
    let stride = dims.strides()[target];
    let outer = m.nrows() / (d * stride);
    let mut out = CMatrix::zeros(m.nrows(), m.ncols());
    let mut x = vec![ZERO; d];
    for c in 0..m.ncols() {
        let src = m.column(c);
        let mut dst = out.column_mut(c);
        for hi in 0..outer {
            for lo in 0..stride {
                let base = hi * d * stride + lo;
                for (b, xb) in x.iter_mut().enumerate() {
                    *xb = src[base + b * stride];
                }
                if x.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
                    continue;
                }
                for a in 0..d {
                    let mut acc = ZERO;
                    for (b, xb) in x.iter().enumerate() {
                        acc += op[(a, b)] * xb;
                    }
                    dst[base + a * stride] = acc;
                }
            }
        }
    }
    out
}

/// `(1 ⊗ u ⊗ 1) m (1 ⊗ u ⊗ 1)^dagger` for an operator on one subsystem.
pub(crate) fn local_conjugate(u: &CMatrix, target: usize, dims: &Dims, m: &CMatrix) -> CMatrix {
    let left = local_left(u, target, dims, m);
    local_left(u, target, dims, &left.adjoint()).adjoint()
}

/// Lifts `op`, acting on `subsystems` (in that order), to the full space
/// described by `dims`. Identity on every other factor.
pub fn embed_operator(op: &CMatrix, subsystems: &[usize], dims: &Dims) -> Result<CMatrix> {
    let sorted = dims.check_subset(subsystems)?;
    if sorted.len() != subsystems.len() {
        return Err(Error::InvalidSubsystemIndex {
            index: subsystems[0],
            count: dims.len(),
        });
    }
    let local_dims: Vec<usize> = subsystems.iter().map(|&s| dims.as_slice()[s]).collect();
    let local_total: usize = local_dims.iter().product();
    if op.nrows() != local_total || op.ncols() != local_total {
        return Err(Error::DimensionMismatch {
            expected: vec![local_total, local_total],
            found: vec![op.nrows(), op.ncols()],
        });
    }
    let total = dims.total();
    let strides = dims.strides();
    let (local_idx, rest_idx): (Vec<usize>, Vec<usize>) = (0..total)
        .map(|i| {
            let mut local = 0;
            for (k, &s) in subsystems.iter().enumerate() {
                let digit = (i / strides[s]) % dims.as_slice()[s];
                local = local * local_dims[k] + digit;
            }
            let mut rest = i;
            for &s in subsystems {
                let digit = (i / strides[s]) % dims.as_slice()[s];
                rest -= digit * strides[s];
            }
            (local, rest)
        })
        .unzip();
    Ok(CMatrix::from_fn(total, total, |i, j| {
        if rest_idx[i] == rest_idx[j] {
            op[(local_idx[i], local_idx[j])]
        } else {
            ZERO
        }
    }))
}

/// Extends a set of orthonormal columns to an orthonormal basis. Returns the
/// added columns only.
pub(crate) fn orthonormal_complement(columns: &CMatrix) -> CMatrix {
    let n = columns.nrows();
    let mut basis: Vec<CVector> = columns.column_iter().map(|c| c.into_owned()).collect();
    let mut added = Vec::with_capacity(n - basis.len());
    let mut used = vec![false; n];
    while basis.len() < n {
        // Greedy: pick the standard basis vector with the largest residual.
        let mut best: Option<(usize, CVector, f64)> = None;
        for (i, &taken) in used.iter().enumerate() {
            if taken {
                continue;
            }
            let mut v = CVector::zeros(n);
            v[i] = ONE;
            for _ in 0..2 {
                for b in &basis {
                    let proj = b.dotc(&v);
                    v.axpy(-proj, b, ONE);
                }
            }
            let norm = v.norm();
            if best.as_ref().map_or(true, |(_, _, bn)| norm > *bn) {
                best = Some((i, v, norm));
            }
        }
        let (i, mut v, norm) = best.expect("complement exists while rank < n");
        used[i] = true;
        v.unscale_mut(norm);
        // One more pass against round-off.
        for b in &basis {
            let proj = b.dotc(&v);
            v.axpy(-proj, b, ONE);
        }
        let norm = v.norm();
        v.unscale_mut(norm);
        basis.push(v.clone());
        added.push(v);
    }
    if added.is_empty() {
        CMatrix::zeros(n, 0)
    } else {
        CMatrix::from_columns(&added)
    }
}
