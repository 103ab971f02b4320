//! Seeded sampling estimate of Pr{γ(X) ≤ n}.
//!
//! Generator: Xoshiro256++ initialised from the 64-bit seed with
//! SplitMix64. Samples are cut into shards of [`SHARD_SIZE`]; shard `k`
//! draws from the seeded generator advanced by `k` calls to `jump()`
//! (2^128 steps each). Each sample is the low `n` bits of one `next_u64`,
//! bit `i − 1` being position `i`. The estimate therefore depends only on
//! `(n, samples, seed)`, never on how shards are spread over threads.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitstring::{mask, BitString, MAX_LEN};
use crate::error::{check_range, Error, Result};

pub const SHARD_SIZE: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailEstimate {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    /// Samples with γ ≤ n.
    pub hits: u64,
    pub estimate: f64,
    pub standard_error: f64,
}

impl TailEstimate {
    fn from_hits(n: usize, samples: u64, seed: u64, hits: u64) -> Self {
        let estimate = hits as f64 / samples as f64;
        let standard_error = (estimate * (1.0 - estimate) / samples as f64).sqrt();
        TailEstimate { n, samples, seed, hits, estimate, standard_error }
    }

    /// `|estimate − exact| ≤ k · standard_error`.
    pub fn within(&self, exact: f64, k: f64) -> bool {
        (self.estimate - exact).abs() <= k * self.standard_error
    }
}

pub fn monte_carlo_tail(n: usize, samples: u64, seed: u64) -> Result<TailEstimate> {
    check_range("n", n, 1, MAX_LEN)?;
    if samples == 0 {
        return Err(Error::invalid("samples must be at least 1"));
    }
    let shards = samples.div_ceil(SHARD_SIZE);
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut starts = Vec::with_capacity(shards as usize);
    for _ in 0..shards {
        starts.push(rng.clone());
        rng.jump();
    }
    let m = mask(n);
    let hits: u64 = starts
        .into_par_iter()
        .enumerate()
        .map(|(k, mut rng)| {
            let begin = k as u64 * SHARD_SIZE;
            let count = SHARD_SIZE.min(samples - begin);
            (0..count)
                .filter(|_| BitString::raw(n, rng.next_u64() & m).gamma() <= n)
                .count() as u64
        })
        .sum();
    Ok(TailEstimate::from_hits(n, samples, seed, hits))
}
