//! Seeded Haar sampling of states, unitaries and observables.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dims::Dims;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, C64};
use crate::observable::Observable;
use crate::state::DensityMatrix;
use crate::tolerance::Tolerances;

/// Generator used for every seeded draw in the crate.
pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `index` of the generator seeded by `seed`, so that
/// samples can be drawn in any order.
pub fn rng_for_sample(seed: u64, index: u64) -> SeededRng {
    let mut rng = rng_from_seed(seed);
    rng.set_stream(index);
    rng
}

/// Kind of random state to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Purity {
    /// Haar-uniform pure state.
    Pure,
    /// Reduction of a Haar pure state on `dims ⊗ [rank]`.
    Mixed(usize),
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_state(dims: &Dims, seed: u64, purity: Purity) -> Result<DensityMatrix> {
    random_state_with(&mut rng_from_seed(seed), dims, purity)
}

pub fn random_state_with<R: Rng + ?Sized>(rng: &mut R, dims: &Dims, purity: Purity) -> Result<DensityMatrix> {
    let n = dims.total();
    let rank = match purity {
        Purity::Pure => 1,
        Purity::Mixed(r) if r >= 1 && r <= n => r,
        Purity::Mixed(r) => return Err(Error::InvalidRank { rank: r, total: n }),
    };
    // Columns of `g` are the purification branches; g g^dagger / Tr is the
    // reduced state of a Haar vector on n * rank amplitudes.
    let g = CMatrix::from_fn(n, rank, |_, _| gaussian(rng));
    let norm_sqr: f64 = g.iter().map(|z| z.norm_sqr()).sum();
    let m = (&g * g.adjoint()).unscale(norm_sqr);
    let m = (&m + m.adjoint()).unscale(2.0);
    DensityMatrix::new(m, dims.clone(), &Tolerances::DEFAULT)
}

/// Haar unit vector of length `n`.
pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CVector {
    let v = CVector::from_fn(n, |_, _| gaussian(rng));
    let norm = v.norm();
    v.unscale(norm)
}

/// Haar-random unitary: QR of a complex Gaussian matrix with the phases of
/// `R`'s diagonal moved into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let g = CMatrix::from_fn(d, d, |_, _| gaussian(rng));
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for k in 0..d {
        let rkk = r[(k, k)];
        let phase = if rkk.norm() > 0.0 {
            rkk / rkk.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        let mut col = q.column_mut(k);
        col *= phase;
    }
    q
}

/// Observable on `target` with a Haar-random eigenbasis and distinct
/// eigenvalues `0..d-1`.
pub fn random_observable<R: Rng + ?Sized>(rng: &mut R, target: usize, d: usize) -> Observable {
    let u = random_unitary(rng, d);
    let eig = (0..d).map(|k| k as f64).collect();
    Observable::new(target, eig, u, &Tolerances::DEFAULT).expect("QR factor is unitary")
}
