#![allow(dead_code)]

use proptest::prelude::*;
use qreality::random::random_observable;
use qreality::{random_state_with, rng_from_seed, DensityMatrix, Dims, Observable, Purity, SeededRng};

pub const SHAPES: [&[usize]; 5] = [&[2], &[3], &[2, 2], &[2, 3], &[3, 2]];

pub fn dims_of(k: usize) -> Dims {
    Dims::new(SHAPES[k % SHAPES.len()].to_vec()).unwrap()
}

/// A random state of random rank, a random observable on a random
/// subsystem, and the generator they were drawn from.
pub struct Draw {
    pub rng: SeededRng,
    pub dims: Dims,
    pub rho: DensityMatrix,
    pub obs: Observable,
}

pub fn draw(seed: u64, shape: usize) -> Draw {
    let mut rng = rng_from_seed(seed);
    let dims = dims_of(shape);
    let rank = 1 + (seed as usize) % dims.total();
    let purity = if rank == 1 { Purity::Pure } else { Purity::Mixed(rank) };
    let rho = random_state_with(&mut rng, &dims, purity).unwrap();
    let target = (seed as usize / 7) % dims.len();
    let obs = random_observable(&mut rng, target, dims.as_slice()[target]);
    Draw { rng, dims, rho, obs }
}

pub fn seeds() -> impl Strategy<Value = (u64, usize)> {
    (any::<u64>(), 0..SHAPES.len())
}
