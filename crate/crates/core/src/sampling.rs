//! Seeded generators of exact rational momenta.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::momentum::{ratio, MomentumVector};

/// Half-width of the default sampling box `[-2, 2]ᵐ`.
pub const DEFAULT_BOUND: i64 = 2;
/// Largest denominator drawn for sampled coordinates.
pub const DEFAULT_MAX_DEN: i64 = 8;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform-ish rational in `[-bound, bound]` with denominator at most `max_den`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> num_rational::BigRational {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(-bound * den..=bound * den);
    ratio(num, den)
}

#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    dimension: usize,
    bound: i64,
    max_den: i64,
}

impl Sampler {
    pub fn new(dimension: usize, seed: u64) -> Self {
        Sampler {
            rng: seeded_rng(seed),
            dimension,
            bound: DEFAULT_BOUND,
            max_den: DEFAULT_MAX_DEN,
        }
    }

    pub fn with_box(mut self, bound: i64, max_den: i64) -> Self {
        assert!(bound >= 0 && max_den >= 1);
        self.bound = bound;
        self.max_den = max_den;
        self
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn momentum(&mut self) -> MomentumVector {
        let coords = (0..self.dimension)
            .map(|_| random_rational(&mut self.rng, self.bound, self.max_den))
            .collect();
        MomentumVector::new(coords)
    }

    pub fn tuple(&mut self, arity: usize) -> Vec<MomentumVector> {
        (0..arity).map(|_| self.momentum()).collect()
    }

    pub fn tuples(&mut self, arity: usize, count: usize) -> Vec<Vec<MomentumVector>> {
        (0..count).map(|_| self.tuple(arity)).collect()
    }

    pub fn pairs(&mut self, count: usize) -> Vec<(MomentumVector, MomentumVector)> {
        (0..count)
            .map(|_| (self.momentum(), self.momentum()))
            .collect()
    }

    pub fn triples(
        &mut self,
        count: usize,
    ) -> Vec<(MomentumVector, MomentumVector, MomentumVector)> {
        (0..count)
            .map(|_| (self.momentum(), self.momentum(), self.momentum()))
            .collect()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}
